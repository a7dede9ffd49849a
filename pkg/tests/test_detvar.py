"""z-ring evaluations, minors, 3-chains, G-sets, graded kernel equalities."""

import itertools
import random

import pytest

from oscvar.detvar import (
    GMonomial,
    enumerate_gset,
    extended_ring,
    has_3chain,
    minor_generators,
    phi,
    phi_x,
    phi_y,
    restricted_ring,
    verify_gset_independence,
    verify_minor2_kernel,
    verify_minor3_kernel,
)
from oscvar.osc import Config
from oscvar.poly import Poly, parse_poly

CFG = Config(5, 2, 3)  # J1 = {1,2}, J3 = {4,5}
ZR = restricted_ring(CFG)
EXT = extended_ring(CFG)


def Z(text):
    return parse_poly(ZR, text)


def test_phi_examples():
    assert str(phi_x(CFG, Z("z4_1"))) == "x1*x4"
    assert phi_x(CFG, Z("z4_1*z5_2 - z4_2*z5_1")).is_zero()
    assert str(phi_y(CFG, Z("z4_1^2"))) == "y1^2*y4^2"
    assert str(phi(CFG, Poly.variable(EXT, EXT.z(6, 1)))) == "x1"
    assert str(phi(CFG, Poly.variable(EXT, EXT.z(4, 0)))) == "y4"
    assert str(phi(CFG, Poly.variable(EXT, EXT.z(4, 1)))) == "x1*x4 - y1*y4"


def test_phi_rejects_extended_input():
    with pytest.raises(ValueError):
        phi_x(CFG, Poly.variable(EXT, EXT.z(6, 1)))


def test_phi_multiplicative_random():
    rng = random.Random(23)

    def rand_zpoly(space):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            m = tuple(rng.randint(0, 2) for _ in range(space.nvars))
            terms[m] = rng.randint(-5, 5)
        return Poly.from_terms(space, terms)

    for _ in range(15):
        a, b = rand_zpoly(ZR), rand_zpoly(ZR)
        assert phi_x(CFG, a * b) == phi_x(CFG, a) * phi_x(CFG, b)
        assert phi_y(CFG, a * b) == phi_y(CFG, a) * phi_y(CFG, b)
        c, d = rand_zpoly(EXT), rand_zpoly(EXT)
        assert phi(CFG, c * d) == phi(CFG, c) * phi(CFG, d)


def test_minor_generator_counts_and_conventions():
    assert len(minor_generators(ZR, 2)) == 1
    assert minor_generators(ZR, 2)[0] == Z("z4_1*z5_2 - z4_2*z5_1")
    assert minor_generators(ZR, 3) == []  # t exceeds both set sizes
    big = extended_ring(Config(9, 4, 5))
    assert len(minor_generators(big, 3, rows=[6, 7, 8, 9], cols=[1, 2, 3, 4])) == 16


def test_minor_generators_annihilated_by_phi():
    for g in minor_generators(ZR, 2):
        assert phi_x(CFG, g).is_zero()
        assert phi_y(CFG, g).is_zero()
    for g in minor_generators(EXT, 3):
        assert phi(CFG, g).is_zero()


def test_excluded_corner_is_zero_in_minors():
    # minors through the (n+1, 0) corner drop the corner term
    ms = minor_generators(EXT, 3, rows=[4, 5, 6], cols=[0, 1, 2])
    corner = [m for m in ms if all(len(k) for k in m.terms)]
    assert ms  # nonempty family
    for m in ms:
        assert phi(CFG, m).is_zero()


def test_chain_examples():
    assert has_3chain([(5, 1), (6, 2), (7, 3)])
    assert not has_3chain([(7, 1), (6, 2), (5, 3)])
    assert not has_3chain([(5, 1), (5, 2), (6, 3)])
    assert not has_3chain([])
    # repeats never extend a chain: strict inequalities
    assert not has_3chain([(1, 1), (1, 1), (2, 2), (2, 2)])


def _brute_3chain(pairs):
    for a, b, c in itertools.combinations(sorted(pairs), 3):
        if a[0] < b[0] < c[0] and a[1] < b[1] < c[1]:
            return True
    return False


def test_chain_detection_agrees_with_bruteforce():
    rng = random.Random(31)
    for _ in range(300):
        size = rng.randint(0, 10)
        pairs = [(rng.randint(0, 7), rng.randint(0, 7)) for _ in range(size)]
        assert has_3chain(pairs) == _brute_3chain(pairs)


def test_gset_examples():
    g1 = enumerate_gset(CFG, 1, 0, 0, (1,), ())
    assert g1 == [GMonomial((1,), (), ())]
    g2 = enumerate_gset(CFG, 0, 0, 2, (1, 2), (4, 5))
    assert {g.z_part for g in g2} == {((4, 1), (5, 2)), ((4, 2), (5, 1))}

    # a request where every assignment forces a 3-chain
    cfg = Config(7, 3, 4)  # J1 = {1,2,3}, J3 = {5,6,7}
    forced = enumerate_gset(cfg, 0, 0, 3, (1, 2, 3), (5, 6, 7))
    assert all(not has_3chain(g.index_pairs(cfg.n)) for g in forced)
    assert len(forced) == 5  # six pairings minus the single increasing one

    with pytest.raises(ValueError):
        enumerate_gset(CFG, 1, 0, 1, (1,), (4,))


def test_gset_revalidation():
    cfg = Config(7, 3, 4)
    rng = random.Random(5)
    for _ in range(20):
        k1, k2, k3 = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
        I1 = tuple(sorted(rng.choice(list(cfg.J1)) for _ in range(k1 + k3)))
        I3 = tuple(sorted(rng.choice(list(cfg.J3)) for _ in range(k2 + k3)))
        for g in enumerate_gset(cfg, k1, k2, k3, I1, I3):
            assert g.column_multiset() == I1
            assert g.row_multiset() == I3
            assert not has_3chain(g.index_pairs(cfg.n))
            assert g.x_part == tuple(sorted(g.x_part))
            assert g.z_part == tuple(sorted(g.z_part))


def test_minor2_kernel_small_sizes():
    rep = verify_minor2_kernel(CFG, 3)
    assert rep["all_equal"]
    assert rep["levels"][1]["dim_kernel_x"] == 0
    assert rep["levels"][2]["dim_kernel_x"] == 1
    # single-column block: the evaluation is injective
    rep1 = verify_minor2_kernel(Config(4, 1, 2), 3)
    assert rep1["all_equal"]
    assert all(d["dim_kernel_x"] == 0 for d in rep1["levels"])


def test_minor3_kernel_small():
    rep = verify_minor3_kernel(CFG, 3)
    assert rep["all_equal"]
    assert rep["levels"][0]["dim_kernel"] == 0
    assert rep["levels"][1]["dim_kernel"] == 0
    assert rep["levels"][2]["dim_kernel"] == 0
    assert rep["levels"][3]["dim_kernel"] == rep["levels"][3]["dim_ideal"] > 0


def test_gset_independence_small():
    rep = verify_gset_independence(CFG, 3)
    assert rep["all_independent"]
    assert rep["tuples_nonempty"] > 0
