"""Weierstrass preparation, extended Euclid, resultants and the recipe."""

import json
import math
import random
from fractions import Fraction

import pytest
import sympy

from cmlink.poly import Ring
from cmlink.weier import (
    NotRegularError,
    current_recipe,
    extended_euclid,
    resultant_sylvester,
    weierstrass_ready,
)

S = Ring(("X", "Z"), ("Y",))
U = Ring(("x",), ("s", "t"))
R3 = Ring(("x", "y", "z"))


def test_weierstrass_plain_power():
    f = R3.poly("x^3")
    wf = weierstrass_ready(f, 0)
    assert wf.degree == 3
    assert wf.weierstrass == f
    assert wf.unit == R3.one()


def test_weierstrass_with_unit():
    # (1 - Y) X^2 + 2 X Z + Z^2: unit coefficient 1 - Y, monic part follows
    f = S.poly("X^2 - Y*X^2 + 2*X*Z + Z^2")
    wf = weierstrass_ready(f, 0)
    assert wf.degree == 2
    assert wf.unit * wf.weierstrass == f
    assert wf.weierstrass.coefficient_in(0, 2) == S.one()
    # lower coefficients of the Weierstrass polynomial vanish at the origin
    for k in range(2):
        c = wf.weierstrass.coefficient_in(0, k)
        assert c.is_zero() or not c.constant_term_at_origin()


def test_weierstrass_rejections():
    with pytest.raises(ValueError):
        weierstrass_ready(R3.zero(), 0)
    with pytest.raises(ValueError):
        weierstrass_ready(R3.one() + R3.poly("x"), 0)  # nonzero at the origin
    with pytest.raises(NotRegularError):
        weierstrass_ready(R3.poly("y^2"), 0)  # no occurrence of x
    with pytest.raises(NotRegularError) as exc:
        weierstrass_ready(R3.poly("x^2*y"), 0)  # leading coeff vanishes at 0
    assert exc.value.witness is not None
    with pytest.raises(NotRegularError):
        weierstrass_ready(R3.poly("x^2 + x"), 0)  # lower coeff is a unit


def test_euclid_coprime_linear():
    P, Q = U.poly("x - s"), U.poly("x - t")
    g, a, b = extended_euclid(P, Q, 0)
    assert g.degree_in(0) == 0 and not g.is_zero()
    assert a * P + b * Q == g


def test_euclid_shared_factor():
    P = U.poly("(x - s)*(x + t)")
    Q = U.poly("(x - s)*(x - 1)")
    g, a, b = extended_euclid(P, Q, 0)
    assert g.degree_in(0) >= 1
    assert a * P + b * Q == g


def test_euclid_rational_case():
    P, Q = R3.poly("x^2 - 1"), R3.poly("x - 1")
    g, a, b = extended_euclid(P, Q, 0)
    assert a * P + b * Q == g
    assert g.degree_in(0) == 1  # gcd is a multiple of x - 1


def test_resultant_linear_pair():
    P, Q = U.poly("x - s"), U.poly("x - t")
    res = resultant_sylvester(P, Q, 0)
    # res vanishes exactly on s = t
    assert res == U.poly("t - s") or res == U.poly("s - t")


def test_resultant_vanishes_iff_common_factor():
    assert resultant_sylvester(R3.poly("x^2 - 1"), R3.poly("x - 1"), 0).is_zero()
    assert not resultant_sylvester(R3.poly("x^2 - 1"), R3.poly("x - 2"), 0).is_zero()
    with pytest.raises(ValueError):
        resultant_sylvester(R3.poly("y"), R3.poly("x"), 0)


def test_resultant_agrees_with_euclid_sample():
    rng = random.Random(9)
    for _ in range(10):
        coeffs = [
            [rng.randint(-2, 2) for _ in range(3)] for _ in range(2)
        ]
        P = U.poly("x^2") + U.poly("x").scale(coeffs[0][0]) + U.poly("s").scale(
            coeffs[0][1]
        ) + U.constant(Fraction(coeffs[0][2]))
        Q = U.poly("x^2") + U.poly("x*t").scale(coeffs[1][0]) + U.constant(
            Fraction(coeffs[1][1])
        )
        g, a, b = extended_euclid(P, Q, 0)
        res = resultant_sylvester(P, Q, 0)
        assert a * P + b * Q == g
        if g.degree_in(0) >= 1:
            assert res.is_zero()
        else:
            assert not res.is_zero()
            assert not g.is_zero()


def test_recipe_linear_pair():
    R2 = Ring(("x", "y"))
    rec = current_recipe(R2.poly("x"), R2.poly("y"))
    assert rec.n1 == 1 and rec.n2 == 1
    assert rec.r2 == rec.ring.poly("y")
    assert rec.a * rec.g1 + rec.b * rec.g2 == rec.r2
    assert rec.gamma == 2
    assert rec.c1 == Fraction(math.factorial(2))
    assert rec.c2 == Fraction(2)


def test_recipe_pure_powers():
    R2 = Ring(("x", "y"))
    rec = current_recipe(R2.poly("x^2"), R2.poly("y^3"))
    assert rec.n1 == 2 and rec.n2 == 3
    assert rec.r2 == rec.ring.poly("y^3")
    assert rec.gamma == 4
    assert rec.c1 == Fraction(math.factorial(8))
    assert rec.c2 == Fraction(math.factorial(8), math.factorial(3))
    # g2 has no occurrence of the first variable, so no Sylvester audit
    assert rec.sylvester_ratio is None


def test_recipe_curve_complete_intersection():
    f1 = R3.poly("z^2 - x^2*y")
    f2 = R3.poly("x^4 - 2*x*y*z + y^3")
    rec = current_recipe(f1, f2)
    assert rec.n1 == 2
    assert rec.n2 == 8
    assert rec.gamma == 9
    assert rec.c1 == Fraction((-1) ** 18 * math.factorial(18))
    assert rec.c2 == -Fraction((-1) ** 8) * rec.c1 / math.factorial(8)
    # Bezout identity and independence from the first variable
    assert rec.a * rec.g1 + rec.b * rec.g2 == rec.r2
    assert not rec.r2.involves(0)
    # the Weierstrass forms reconstruct g1 and r2 up to their units
    assert rec.p1.coefficient_in(0, rec.n1) == rec.ring.one()
    assert rec.p2.coefficient_in(1, rec.n2) == rec.ring.one()


def test_recipe_constant_invariants():
    # C2 * N2! * (-1)^N2 == -C1 always
    R2 = Ring(("x", "y"))
    for f1, f2 in [("x", "y"), ("x^2", "y^3"), ("x^2 + y^3", "y^2")]:
        rec = current_recipe(R2.poly(f1), R2.poly(f2))
        assert rec.c2 * math.factorial(rec.n2) * (-1) ** rec.n2 == -rec.c1
        assert rec.gamma == rec.n2 + 1
        assert rec.a * rec.g1 + rec.b * rec.g2 == rec.r2


def test_recipe_rejects_non_complete_intersection():
    with pytest.raises(ValueError):
        current_recipe(R3.poly("x*y"), R3.poly("x*z"))


def test_recipe_json_shape():
    R2 = Ring(("x", "y"))
    rec = current_recipe(R2.poly("x"), R2.poly("y"))
    payload = json.loads(rec.to_json())
    expected_keys = [
        "ring",
        "first_change",
        "second_change",
        "change",
        "g1",
        "g2",
        "P1",
        "N1",
        "r2",
        "P2",
        "N2",
        "a",
        "b",
        "gamma",
        "C1",
        "C2",
        "sylvester_ratio",
    ]
    assert list(payload) == expected_keys
    assert payload["N1"] == 1 and payload["N2"] == 1
