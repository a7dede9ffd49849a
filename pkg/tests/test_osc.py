"""Representation operators: pinned values, bracket, degrees, weights."""

import itertools
import random

import pytest

from oscvar.osc import (
    Config,
    apply_generator,
    apply_generator_terms,
    classify_irreducible,
    commutator_in_basis,
    dfun,
    dfun_monomial,
    dprime,
    enumerate_TN_level,
    generators,
    grading,
    highest_weight_formula,
    laplace,
    project_T,
    project_T_monomial,
    weight,
)
from oscvar.poly import Poly, parse_poly

CFG = Config(3, 1, 2, -1, -1)
SP = CFG.space


def P(text):
    return parse_poly(SP, text)


def test_generator_action_examples():
    one = Poly.constant(SP, 1)
    assert apply_generator(CFG, ("e", 2, 1), one) == P("-x1*x2")
    assert apply_generator(CFG, ("e", 3, 1), one) == P("y1*y3 - x1*x3")
    assert apply_generator(CFG, ("h", 1), P("x1")) == P("-2*x1")


def test_generator_index_validation():
    with pytest.raises(ValueError):
        apply_generator(CFG, ("e", 0, 1), P("x1"))
    with pytest.raises(ValueError):
        apply_generator(CFG, ("h", 3), P("x1"))


def test_laplace_examples():
    assert laplace(CFG, Poly.constant(SP, 1)).is_zero()
    assert laplace(CFG, P("x1*y1")) == P("x1^2")
    assert laplace(CFG, P("y1 + x1*x2*y2")).is_zero()


def test_projection_examples():
    assert project_T(CFG, P("x1")) == P("x1")
    assert project_T(CFG, P("y1")) == P("y1 + x1*x2*y2")
    assert laplace(CFG, project_T(CFG, P("y1"))).is_zero()
    with pytest.raises(ValueError):
        project_T(Config(3, 2, 2), P("x1"))


def test_dfun_examples():
    assert dfun(CFG, P("x1*y3")) == 0
    assert dfun(CFG, P("x1^2*x2*y3")) == 1
    assert dfun(CFG, P("x1*y3") * P("x1*x3 - y1*y3")) == 2
    with pytest.raises(ValueError):
        dfun(CFG, Poly.zero(SP))
    with pytest.raises(ValueError):
        dfun(CFG, P("x1*y3 + x1"))  # mixed bidegree


def test_dfun_product_rule_random():
    # multiplying by an alternating quadratic raises the degree by exactly 2
    rng = random.Random(2)
    quad = P("x1*x3 - y1*y3")
    for k in range(4):
        for m in enumerate_TN_level(CFG, k):
            f = Poly.monomial(SP, m)
            assert dfun(CFG, f * quad) == dfun(CFG, f) + 2
    del rng


def test_dprime_examples():
    cfg = Config(3, 2, 3, 2, 1)
    sp = cfg.space
    assert dprime(cfg, parse_poly(sp, "x3^2*y1")) == 0
    assert dprime(cfg, parse_poly(sp, "x1*x2*y1")) == 2
    assert dprime(cfg, parse_poly(sp, "y1*y2")) == 0


def test_enumerate_level_examples():
    assert enumerate_TN_level(CFG, 0) == [(1, 0, 0, 0, 0, 1)]
    lvl1 = {Poly.monomial(SP, m).render() for m in enumerate_TN_level(CFG, 1)}
    assert lvl1 == {"x1^2*x2*y3", "x1*y2*y3^2"}
    assert enumerate_TN_level(CFG, -1) == []


def test_weight_examples():
    cfg5 = Config(5, 1, 3, -1, -1)
    sp5 = cfg5.space
    v = parse_poly(sp5, "x1*y4")
    assert weight(cfg5, v) == (-2, 0, -2, 1)
    assert weight(cfg5, v) == highest_weight_formula(cfg5, 1, 1)
    for r in range(1, 5):
        assert apply_generator(cfg5, ("e", r, r + 1), v).is_zero()
    # x_i and y_i differ in weight exactly when i sits in the middle block
    assert weight(CFG, P("x2 + y2")) is None
    # first-block pairs share their weight, so this one is a weight vector
    assert weight(cfg5, parse_poly(sp5, "x1 + y1")) is not None
    # the constant function still has a well-defined (shifted) weight
    assert weight(CFG, Poly.constant(SP, 1)) == (-1, -1)


def test_classify_examples():
    assert classify_irreducible(Config(3, 1, 2, -1, -1)) is True
    assert classify_irreducible(Config(4, 1, 2, 1, 1)) is False
    assert classify_irreducible(Config(3, 1, 3, 2, 1)) is True
    assert classify_irreducible(Config(4, 2, 2, -1, -1)) is True
    assert classify_irreducible(Config(5, 1, 3, -1, 1)) is False


def test_bracket_fidelity_small():
    cfg = Config(3, 1, 2)
    gens = generators(3)
    mons = []
    for d in range(3):
        for combo in itertools.combinations_with_replacement(range(6), d):
            m = [0] * 6
            for pos in combo:
                m[pos] += 1
            mons.append(tuple(m))
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            cb = commutator_in_basis(gens[a], gens[b], 3)
            for m in mons:
                base = {m: 1}
                lhs = apply_generator_terms(cfg, gens[a], apply_generator_terms(cfg, gens[b], base))
                for mm, cc in apply_generator_terms(
                    cfg, gens[b], apply_generator_terms(cfg, gens[a], base)
                ).items():
                    s = lhs.get(mm, 0) - cc
                    if s:
                        lhs[mm] = s
                    elif mm in lhs:
                        del lhs[mm]
                rhs = {}
                for coeff, g in cb:
                    for mm, cc in apply_generator_terms(cfg, g, base).items():
                        s = rhs.get(mm, 0) + coeff * cc
                        if s:
                            rhs[mm] = s
                        elif mm in rhs:
                            del rhs[mm]
                assert lhs == rhs


def test_action_preserves_bidegree():
    for k in range(3):
        for m in enumerate_TN_level(CFG, k):
            f = Poly.monomial(SP, m)
            for g in generators(3):
                img = apply_generator(CFG, g, f)
                for mm in img.terms:
                    assert grading(CFG, mm) == (CFG.l1, CFG.l2)


def _L_class(cfg, i, j):
    inJ1 = j <= cfg.n1
    inJ2i = cfg.n1 < i <= cfg.n2
    inJ2j = cfg.n1 < j <= cfg.n2
    inJ3 = i > cfg.n2
    if inJ3 and inJ1:
        return 3
    if (inJ2i and inJ1) or (inJ3 and inJ2j):
        return 1  # the two one-step families
    return 0


def test_degree_increments_by_family():
    for k in range(4):
        for m in enumerate_TN_level(CFG, k):
            f = Poly.monomial(SP, m)
            d0 = dfun(CFG, f)
            for i in range(1, 4):
                for j in range(1, 4):
                    if i == j:
                        continue
                    img = apply_generator(CFG, ("e", i, j), f)
                    if img.is_zero():
                        continue
                    bound = {3: 2, 1: 1, 0: 0}[_L_class(CFG, i, j)]
                    assert dfun(CFG, img) <= d0 + bound


def test_projection_preserves_degree_and_commutes():
    cfg = Config(4, 1, 3, -1, -1)
    mid = cfg.n1 + 1
    for k in range(4):
        for m in enumerate_TN_level(cfg, k):
            f = Poly.monomial(cfg.space, m)
            tf = project_T_monomial(cfg, m)
            assert dfun(cfg, tf) == dfun_monomial(cfg, m)
            for i in range(1, 5):
                for j in range(1, 5):
                    if i == j or mid in (i, j):
                        continue
                    lhs = project_T(cfg, apply_generator(cfg, ("e", i, j), f))
                    rhs = apply_generator(cfg, ("e", i, j), tf)
                    assert lhs == rhs
