"""Smoke test for the Python extension.

Build and install it first:

    pip install -e crates/py --no-build-isolation
    python3 python/smoke_test.py
"""

from fractions import Fraction

import delpezzo as dp


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok: {what}")


O = dp.ChernCharacter.parse("O")
check(dp.euler_pairing(O, dp.ChernCharacter.parse("O(1,0)")) == 2, "chi(O, O(1,0)) = 2")
check(dp.euler_pairing(dp.ChernCharacter.parse("O", "blp2"), dp.ChernCharacter.parse("O_E(E)", "blp2")) == 0, "chi(O, O_E(E)) = 0 on the blow-up")

v = dp.ChernCharacter("p1xp1", 2, (1, Fraction(-1, 2)), "-3/4")
check(v.c1 == (Fraction(1), Fraction(-1, 2)) and v.ch2 == Fraction(-3, 4), "exact round trip")
check((v + -v).rank == 0, "addition and negation")
check(O.twist(1, 1) == dp.ChernCharacter.parse("O(1,1)"), "twist matches literal")
try:
    dp.ChernCharacter("p1xp1", 1, (0.5, 0), 0)
    check(False, "floats rejected")
except TypeError:
    check(True, "floats rejected")

w = dp.Wall(O, dp.ChernCharacter.parse("O(-1,-1)[1]"))
check(w.equation == "t^2*a^2*b + t^2*a*b^2 + x^2*b + y^2*a + x*b + y*a", "wall equation")
check(w.classify() == "ellipse", "wall classification")
sigma = dp.StabilityPoint("p1xp1", 2, 1, Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 8))
check(w.side(sigma) in ("inside", "outside"), "side of a wall")
re, im = sigma.charge(O)
check(isinstance(re, Fraction) and im > 0, "central charge of O in the upper half plane")

e = dp.Collection.line_bundles([(0, 0), (1, 0), (0, 1), (1, 1)])
check(str(e.tilt(4)) == str(dp.Collection.fixture("E'")), "tilt at 4 gives E'")
f = dp.Collection.fixture("F'")
arrows, _ = f.quiver()
check(arrows[0] == [0, 4, 0, 0], "quiver of F'")
check(f.dimension_vector(dp.ChernCharacter.parse("O(1,1)")) == [4, 7, 2, 2], "dimension vector")
theta = f.king_weights(dp.ChernCharacter.parse("O(1,1)"), sigma)
check(len(theta) == 4 and all(isinstance(t, Fraction) for t in theta), "King weights")

inside = dp.StabilityPoint("blp2", 1, 2, Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 16))
check(dp.in_region("F'", inside), "point inside F' on the blow-up")
check(not dp.in_region("F'", inside, twist=(3, 3)), "twisted region excludes it")
ok, failures = dp.Collection.fixture("F'", "blp2").rotatable(inside)
check(ok and failures == [], "rotatability at the same point")

report = dp.cover("p1xp1", 2, 1, (-1, 1, -1, 1), Fraction(1, 2))
check(report["covered"] and len(report["results"]) == 25, "coverage of a 5x5 grid")

try:
    dp.Wall(O, O)
    check(False, "proportional classes rejected")
except ValueError as err:
    check("proportional" in str(err), "proportional classes rejected")

print("all smoke checks passed")
