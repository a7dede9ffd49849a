"""Polynomial arithmetic: exactness, pinned examples, algebraic laws."""

import random
from fractions import Fraction

import pytest

from oscvar.poly import Poly, SpaceMismatchError, parse_poly, xy_space, z_space


SP = xy_space(3)


def P(text):
    return parse_poly(SP, text)


def test_add_examples():
    assert (P("x1") + P("-x1")).is_zero()
    assert P("x1*x2") + P("x1*x2") == P("2*x1*x2")
    assert P("y1 + x1*x2*y2") + P("-y1") == P("x1*x2*y2")


def test_mul_examples():
    f = P("x1*x3 - y1*y3")
    assert f * P("1") == f
    assert f * f == P("x1^2*x3^2 - 2*x1*x3*y1*y3 + y1^2*y3^2")
    assert P("x1") * P("y1") == P("x1*y1")


def test_diff_examples():
    assert P("x1^2*x2").diff(SP.x(1)) == P("2*x1*x2")
    assert P("x1*x2").diff(SP.y(2)).is_zero()
    assert P("x1*y1 + y1^2").diff(SP.y(1)) == P("x1 + 2*y1")


def test_substitute_examples():
    f = P("x1*x3 - y1*y3")
    got = f.substitute(
        {SP.x(1): Poly.zero(SP), SP.y(1): Poly.constant(SP, 1)}, SP
    )
    assert got == P("-y3")

    zs = z_space((4, 5), (1, 2))
    xy5 = xy_space(5)
    img = {
        zs.z(j, i): parse_poly(xy5, f"x{i}*x{j}")
        for j in (4, 5)
        for i in (1, 2)
    }
    assert parse_poly(zs, "z4_1").substitute(img, xy5) == parse_poly(xy5, "x1*x4")
    minor = parse_poly(zs, "z4_1*z5_2 - z4_2*z5_1")
    assert minor.substitute(img, xy5).is_zero()


def test_space_mismatch_rejected():
    other = xy_space(4)
    with pytest.raises(SpaceMismatchError):
        P("x1") + parse_poly(other, "x1")
    with pytest.raises(SpaceMismatchError):
        P("x1") * parse_poly(other, "x1")


def test_render_canonical_order_and_signs():
    f = P("y1") + P("-3/2*x1^2*x2*y3")
    assert f.render() == "-3/2*x1^2*x2*y3 + y1"
    assert Poly.zero(SP).render() == "0"
    assert P("x1 - x2").render() == "x1 - x2"


def test_parse_roundtrip_random():
    rng = random.Random(7)
    for _ in range(60):
        terms = {}
        for _ in range(rng.randint(0, 6)):
            m = tuple(rng.randint(0, 3) for _ in range(SP.nvars))
            c = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
            if c:
                terms[m] = terms.get(m, 0) + c
        f = Poly.from_terms(SP, terms)
        assert parse_poly(SP, f.render()) == f


def test_ring_laws_random():
    rng = random.Random(11)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(0, 5)):
            m = tuple(rng.randint(0, 2) for _ in range(SP.nvars))
            terms[m] = rng.randint(-5, 5)
        return Poly.from_terms(SP, terms)

    for _ in range(40):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_diff_commutes():
    rng = random.Random(3)
    for _ in range(30):
        terms = {
            tuple(rng.randint(0, 3) for _ in range(SP.nvars)): rng.randint(-4, 4)
            for _ in range(4)
        }
        f = Poly.from_terms(SP, terms)
        for u in range(SP.nvars):
            for v in range(u + 1, SP.nvars):
                assert f.diff(u).diff(v) == f.diff(v).diff(u)


def test_zero_coefficients_never_stored():
    f = P("x1") + P("-x1")
    assert f.terms == {}
    g = P("x1*x2") * Poly.constant(SP, 0)
    assert g.terms == {}


def test_power_and_scale():
    assert P("x1 + y1") ** 2 == P("x1^2 + 2*x1*y1 + y1^2")
    assert P("x1").scale(Fraction(1, 2)) == P("1/2*x1")
