"""Orbifold covers induced by branch data.

Each branching point becomes a cone point of order lcm(local degrees)
downstairs; each preimage becomes a cone point of order lcm / local degree.
The Euler characteristics then differ by exactly the degree, and the
geometry of the two orbifolds often settles realizability."""
from fractions import Fraction

from hurwitz import parse_candidate
from hurwitz.core import SPHERE
from hurwitz.orbifold import Orbifold, chi_orb, criterion_orbifold, induced_orbifold_cover
from hurwitz.validation import validate_candidate

for text in ["o0 <-[4]- o0 : 2,2|2,2|3,1", "o0 <-[4]- o0 : 2,2|2,2|2,2", "o0 <-[5]- o0 : 2,2,1|4,1|4,1"]:
    c = parse_candidate(text)
    up, down = induced_orbifold_cover(c)
    print(f"{c}\n  {up} [{up.chi_orb}, {up.geometry}] over {down} [{down.chi_orb}, {down.geometry}]")
    assert chi_orb(up) == c.degree * chi_orb(down)
    res = criterion_orbifold(c)
    print("  ->", res.verdict.kind if res else "no conclusion", "|", res.detail if res else "")

# The Euclidean orbifold S2(2,4,4) covers itself in degree d = 4k+1 exactly
# when d is a sum of two squares.
print(Orbifold.parse("S2(2,4,4)").chi_orb == Fraction(0))
for k in range(1, 7):
    d = 4 * k + 1
    c = validate_candidate(SPHERE, SPHERE, d, [(2,) * (2 * k) + (1,), (4,) * k + (1,), (4,) * k + (1,)])
    res = criterion_orbifold(c)
    print(f"  d={d:>2}: {res.verdict.kind:<12} {res.detail}")
