"""Which small polynomials are post-critically finite?"""

from fractions import Fraction

from itertower.algebra import Poly, X
from itertower.dynamics import (PCF, cfsr_normalized, cfsr_verify, chebyshev, is_pcf,
                                post_critical_set, quad_normal_form)

# every quadratic is conjugate to x^2 - r; only r = 0, 1, 2 give PCF maps over Q
for r in range(-3, 5):
    phi = X ** 2 - r
    v = is_pcf(phi)
    extra = ""
    if isinstance(v, PCF):
        extra = "  post-critical set {" + ", ".join(map(str, post_critical_set(phi))) + "}"
    print(f"{phi.format()}: {v.verdict}{extra}")

for a, b, c in ((1, -4, 4), (2, 1, 0)):
    r = quad_normal_form(a, b, c)
    print(f"{Poly([c, b, a]).format()} is conjugate to {(X ** 2 - r).format()}")

print()
for d in range(2, 6):
    C = chebyshev(d)
    print(f"C_{d} = {C.format()}: {is_pcf(C).verdict}")

for d in (2, 3, 4):
    phi = cfsr_normalized(d)
    rep = cfsr_verify(phi)
    print(f"{phi.format()}: identity {rep.identity_holds}, verdict {is_pcf(phi).verdict}")

v = is_pcf(X ** 2 + Fraction(1, 4))
print(f"\nx^2 + 1/4 escapes {v.witness.prime}-adically: {v.witness.to_json()}")
