"""Walk through the discriminant tower of x^2 - 2.

Run with ``python demos/tower_x2m2.py``.
"""

from itertower.discrim import (disc_at, disc_tower_direct, disc_tower_recursive, eisenstein_check,
                               monogenic_x2m2, ramified_set, root_disc_sequence, wild_report)
from itertower.parsing import parse_poly

phi = parse_poly("x^2-2")

print("Tower discriminants D_n(t), recursive route checked against the direct one:")
for n in range(1, 4):
    rec = disc_tower_recursive(phi, n)
    assert rec.value == disc_tower_direct(phi, n).value
    print(f"  D_{n}(t) = {rec.value.format('t')}")

print("\nSpecializing at t0 = 1:")
for n in range(1, 5):
    print(f"  disc Phi_{n}(x, 1) = {disc_at(phi, n, 1)}")

# the post-critical set is {-2, 2}, so S grows with the primes of t0 - 2 and t0 + 2
for t0 in (0, 1, 5, -7):
    print(f"S for t0 = {t0}: {list(ramified_set(phi, t0).primes)}")

print("\nWild ramification at 2 (bound n * 2^n):")
for n in range(1, 5):
    r = wild_report(phi, 2, 1, n)
    print(f"  n = {n}: v_2 = {r.v_disc}, bound {r.bound}")

print("\nRoot discriminants at t0 = 1:")
for rd in root_disc_sequence(phi, 1, 5):
    print(f"  n = {rd.n}: rd = {rd.rd}, 2-part = {rd.p_parts[2]}")

cert = eisenstein_check(phi, 1, 3)
print(f"\nPhi_3(x, 1) is Eisenstein at {cert.p} after x -> x + {cert.shift}")
print(monogenic_x2m2(1, 3).claim)
