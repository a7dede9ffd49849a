"""Graded annihilator kernels, minor operators, growth estimates."""

import random
from fractions import Fraction

import pytest

from oscvar.annihilator import (
    apply_sym,
    apply_sym_monomial,
    cartan_combination,
    classify_minor3,
    compute_annihilator_piece,
    degree1_report,
    delta_ops,
    expected_gkdim,
    gen_index_map,
    gkdim_estimate,
    in_L,
    minor_symbol,
    act,
    operator_identically_zero,
    predicted_level_preservers,
    sym_membership,
    sym_mul,
)
from oscvar.filtration import build_tower
from oscvar.linalg import echelon_from, span_equal
from oscvar.osc import Config, apply_generator_terms, diagonal_value, generators
from oscvar.poly import Poly

CFG = Config(3, 1, 2, -1, -1)


def test_L_membership():
    assert in_L(CFG, 2, 1) and in_L(CFG, 3, 2) and in_L(CFG, 3, 1)
    assert not in_L(CFG, 1, 2) and not in_L(CFG, 2, 3) and not in_L(CFG, 1, 3)


def test_degree1_kernel_small():
    tower = build_tower(CFG, 3, "explicit")
    rep = degree1_report(tower, 4)
    assert rep["equal"] and rep["stabilized"]
    assert rep["dim_computed"] == 5
    assert rep["cartan_part"] == 2 and rep["root_part"] == 3


def test_act_examples():
    tower = build_tower(CFG, 2, "explicit")
    gmap = gen_index_map(CFG)
    assert all(r.is_zero() for r in act({(gmap[("e", 1, 2)],): 1}, tower, 0))
    assert all(r.is_zero() for r in act({(gmap[("h", 1)],): 1}, tower, 0))
    res = act({(gmap[("e", 2, 1)],): 1}, tower, 0)
    assert [str(r) for r in res] == ["-x1^2*x2*y3"]
    shallow = build_tower(CFG, 1, "explicit")
    with pytest.raises(ValueError):
        act({(gmap[("e", 2, 1)],) * 3: 1}, shallow, 0)


def test_residue_is_ordering_independent():
    # the fixed factor ordering is a convention: residues modulo the lower
    # level agree for any application order (20 random degree-2/3 words)
    cfg = Config(4, 1, 3, -1, -1)
    tower = build_tower(cfg, 4, "explicit")
    gens = generators(cfg.n)
    rng = random.Random(41)
    for _ in range(20):
        p = rng.choice([2, 3])
        key = tuple(sorted(rng.randrange(len(gens)) for _ in range(p)))
        k = rng.choice([0, 1])
        target = tower.levels[k + p - 1]
        for row in list(tower.levels[k].rows.values())[:3]:
            img1 = apply_sym_monomial(cfg, key, row, gens)
            other = list(key)
            rng.shuffle(other)
            img2 = row
            for idx in other:
                img2 = apply_generator_terms(cfg, gens[idx], img2)
            r1 = target.reduce(Poly(cfg.space, img1))
            r2 = target.reduce(Poly(cfg.space, img2))
            assert r1 == r2


def test_cartan_combination_eigenvalue():
    # acting by the traceless projection of a diagonal unit multiplies a
    # monomial by d_j(m) - (sum_s d_s(m)) / n
    cfg = Config(4, 1, 3, -1, -1)
    gens = generators(cfg.n)
    m = (1, 2, 0, 0, 0, 0, 1, 2)
    total = sum(diagonal_value(cfg, s, m) for s in range(1, cfg.n + 1))
    for j in range(1, cfg.n + 1):
        sym = cartan_combination(cfg, j)
        img = apply_sym(cfg, sym, {m: 1}, gens)
        want = Fraction(diagonal_value(cfg, j, m) * cfg.n - total, cfg.n)
        if want:
            assert img == {m: want}
        else:
            assert img == {}


def test_delta_op_counts():
    cfg6 = Config(6, 2, 4)
    assert [op.label() for op in delta_ops(cfg6, "minor2-L1")] == ["D[3,4;1,2]"]
    assert delta_ops(CFG, "minor2-L1") == []
    assert len(delta_ops(cfg6, "minor3")) == 16
    assert len(delta_ops(Config(6, 3, 3), "minor3-J3J1")) == 1


def test_minor_symbol_antisymmetry():
    cfg = Config(6, 2, 4)
    a = minor_symbol(cfg, (3, 4), (1, 2))
    b = minor_symbol(cfg, (4, 3), (1, 2))
    assert a == {k: -v for k, v in b.items()}


def test_classify_minor3_grid():
    cfg = Config(6, 2, 4)
    # all sorted triples have smallest row and largest column in J2 here
    cases = {classify_minor3(cfg, op.rows, op.cols) for op in delta_ops(cfg, "minor3")}
    assert cases == {2, 3, 4, 5}
    cfg2 = Config(6, 2, 3)
    assert classify_minor3(cfg2, (4, 5, 6), (1, 2, 3)) == 1
    cfg3 = Config(5, 1, 4)
    assert classify_minor3(cfg3, (2, 3, 4), (1, 2, 3)) == 6


def test_vanishing_case_identity():
    cfg = Config(6, 2, 3)
    op = [
        o for o in delta_ops(cfg, "minor3") if classify_minor3(cfg, o.rows, o.cols) == 1
    ][0]
    assert operator_identically_zero(cfg, op.terms, 3)


def test_degree2_piece_and_fallback_agree():
    cfg = Config(5, 1, 3, -1, 1)
    tower = build_tower(cfg, 3, "explicit")
    fast = compute_annihilator_piece(
        tower, 2, 3, known_level_preservers=predicted_level_preservers(cfg)
    )
    full = compute_annihilator_piece(tower, 2, 3)
    assert fast.dim == full.dim
    fast_span = echelon_from(None, [dict(v) for v in fast.basis_sym()])
    full_span = echelon_from(None, [dict(v) for v in full.basis_sym()])
    assert span_equal(fast_span, full_span)
    # a wrong preserver list must not corrupt the result (fallback path)
    wrong = compute_annihilator_piece(tower, 2, 3, known_level_preservers=[0, 1, 2, 3])
    wrong_span = echelon_from(None, [dict(v) for v in wrong.basis_sym()])
    assert span_equal(wrong_span, full_span)


def test_squared_minor_membership_positive_low():
    cfg = Config(5, 1, 3, 1, -1)
    tower = build_tower(cfg, 3, "explicit")
    (op,) = delta_ops(cfg, "minor2-L2")
    sq = sym_mul(op.terms, op.terms)
    assert sym_membership(sq, tower) is True
    assert sym_membership(op.terms, tower) is False  # the unsquared one is not inside


def test_new_pivot_row_reduction_is_lossless():
    # the stacked systems constrain only rows whose pivot is new at their
    # level; compare with the naive all-rows system
    from oscvar.linalg import kernel_of_columns

    cfg = Config(3, 1, 2, -1, -1)
    tower = build_tower(cfg, 3, "explicit")
    gens = generators(cfg.n)
    piece = compute_annihilator_piece(tower, 1, 4)

    eq_ids: dict = {}
    columns = []
    for gi in range(len(gens)):
        col: dict = {}
        for k in range(4):
            target = tower.levels[k]
            for piv in sorted(target.rows):
                img = apply_generator_terms(cfg, gens[gi], target.rows[piv])
                if not img:
                    continue
                res, scale = target.reduce_scaled(img)
                for m, v in res.items():
                    eq = eq_ids.setdefault((k, piv, m), len(eq_ids))
                    col[(eq,)] = Fraction(v, scale)
        columns.append(col)
    naive = kernel_of_columns(columns)
    fast_span = echelon_from(None, [dict(v) for v in piece.basis_sym()])
    naive_span = echelon_from(None, [{(i,): c for i, c in vec.items()} for vec in naive])
    assert span_equal(fast_span, naive_span)


def test_gk_estimates():
    tower = build_tower(CFG, 8, "explicit")
    # frozen sequence, cross-checked against the brute-force route below
    assert tower.dims == [(k + 1) * (k + 2) * (k + 3) // 6 for k in range(9)]
    est, confident = gkdim_estimate(tower)
    assert (est, confident) == (3, True)
    assert expected_gkdim(CFG) == 3
    assert expected_gkdim(Config(4, 2, 2, -1, -1)) == 4
    assert expected_gkdim(Config(3, 1, 3, 2, 1)) == 2
    with pytest.raises(ValueError):
        gkdim_estimate(build_tower(CFG, 3, "explicit"))
