"""Koszul complexes, free resolutions and exactness checking."""

import json
import math
import random
from fractions import Fraction

import pytest

from cmlink.complexes import (
    ChainComplex,
    ComplexError,
    KoszulComplex,
    free_resolution,
    is_cohen_macaulay,
    koszul_complex,
    verify_exactness,
)
from cmlink.groebner import Ideal
from cmlink.modules import PolyMatrix
from cmlink.poly import Polynomial, Ring

R = Ring(("x", "y", "z"))
x, y, z = R.gens()

CURVE = ["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"]


def random_poly(rng, max_deg=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(3))
        c = rng.randint(-3, 3)
        if c:
            terms[e] = Fraction(c)
    return Polynomial(R, terms) if terms else R.one()


def test_koszul_ranks_are_binomial():
    for p in (1, 2, 3, 4):
        f = [R.poly("x") + R.constant(Fraction(i)) for i in range(p)]
        K = koszul_complex(f)
        assert K.ranks() == [math.comb(p, k) for k in range(p + 1)]


def test_koszul_squares_to_zero_random_tuples():
    rng = random.Random(1)
    for p in (2, 3, 4):
        for _ in range(3):
            f = [random_poly(rng) for _ in range(p)]
            K = KoszulComplex(f)
            for a, b in zip(K.differentials, K.differentials[1:]):
                assert (a * b).is_zero()


def test_koszul_two_elements_explicit():
    f, g = R.poly("x"), R.poly("y")
    K = koszul_complex([f, g])
    assert K.differentials[0].rows == [[f, g]]
    # contraction convention: d2 column is (-g, f)
    assert K.differentials[1].column(0) == [-g, f]


def test_koszul_rejects_bad_input():
    with pytest.raises(ComplexError):
        koszul_complex([])
    with pytest.raises(ComplexError):
        koszul_complex([x, R.zero()])


def test_chain_complex_shape_and_composition_checks():
    d1 = PolyMatrix([[x, y]], R)
    bad = PolyMatrix([[x], [y], [z]], R)
    with pytest.raises(ComplexError):
        ChainComplex([d1, bad])
    not_complex = PolyMatrix([[x], [y]], R)
    with pytest.raises(ComplexError):
        ChainComplex([d1, not_complex])
    # the same data is accepted with the check disabled
    C = ChainComplex([d1, not_complex], check_composition=False)
    assert C.ranks() == [1, 2, 1]


def test_curve_resolution_minimal_exact_cm():
    J = Ideal.from_strings(R, CURVE)
    res = free_resolution(J, minimalize=True)
    assert res.ranks() == [1, 3, 2]
    assert res.minimal
    report = verify_exactness(res)
    assert report.exact
    cm, codim, length = is_cohen_macaulay(J)
    assert cm and codim == 2 and length == 2


def test_complete_intersection_resolution_is_koszul_shaped():
    J = Ideal.from_strings(R, ["z^2 - x^2*y", "x^4 + y^3 - 2*x*y*z"])
    res = free_resolution(J, minimalize=True)
    assert res.ranks() == [1, 2, 1]
    assert verify_exactness(res).exact
    cm, codim, length = is_cohen_macaulay(J)
    assert cm and codim == 2 and length == 2


def test_non_cohen_macaulay_detected():
    J = Ideal.from_strings(R, ["x*z", "y*z"])
    cm, codim, length = is_cohen_macaulay(J)
    assert not cm
    assert codim == 1
    assert length == 2


def test_exactness_failure_is_reported_not_raised():
    d = PolyMatrix([[x]], R)
    C = ChainComplex([d, d], check_composition=False)
    report = verify_exactness(C)
    assert not report.exact
    payload = json.loads(report.to_json())
    assert payload["exact"] is False
    assert payload["failures"]
    assert all(
        {"degree", "reason", "witness"} <= set(f) for f in payload["failures"]
    )


def test_resolution_json_shape():
    J = Ideal.from_strings(R, CURVE)
    res = free_resolution(J)
    payload = json.loads(res.to_json())
    assert payload["ranks"] == res.ranks()
    assert payload["ring"] == "ring x,y,z over QQ"
    assert len(payload["differentials"]) == res.length
