"""Splitting of x^2 + 8 over F_13 above t0 = 11, two ways."""

from itertower.fungraph import (build_graph, component_structure, degree_one_column, degree_table,
                                dot_export, graph_sequence_period, quotient_graph, splitting_crosscheck)

G = build_graph("x^2+8", 13)
for c in component_structure(G):
    print(f"cycle {c.cycle} with {len(c.vertices)} vertices, longest arm {c.max_tail}")
sp = graph_sequence_period(G)
print(f"graphs of the iterates repeat with period {sp.period} from n = {sp.stabilization_index}\n")

# factor degrees by distinct-degree factorization
print(degree_table("x^2+8", 13, 11, 7).to_text())

# roots only, read off the graph; cheap far beyond where DDF is practical
print("\ndegree-1 counts to n = 20:", degree_one_column("x^2+8", 13, 11, 20))

check = splitting_crosscheck("x^2+8", 13, 11, 7, 4)
print(f"path counts agree with DDF on {len(check.cells)} cells: {check.agree}")

Q = quotient_graph(build_graph("x^2+8", 13, 2))
print(f"\nF_169 has {Q.size} Frobenius orbits; DOT for the quotient graph starts:")
print("\n".join(dot_export(Q).splitlines()[:4]))
