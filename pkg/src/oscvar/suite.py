"""The standing verification matrix.

One function per claim family, each producing check records consumed by
both the CLI ``suite`` command and the acceptance test module.  Every
check is exact: a pass means an identity or a two-sided span equality held
with rational arithmetic, never approximately.
"""

from __future__ import annotations

import itertools
import time

from .annihilator import (
    classify_minor3,
    degree1_report,
    delta_ops,
    expected_gkdim,
    gkdim_estimate,
    operator_identically_zero,
    sym_membership,
    verify_degree2,
    verify_degree3,
    verify_variety_presentation,
)
from .detvar import (
    verify_gset_independence,
    verify_minor2_kernel,
    verify_minor3_kernel,
)
from .filtration import (
    build_tower,
    compare_towers,
    operator_chain_identity,
)
from .osc import (
    Config,
    apply_generator,
    apply_generator_terms,
    commutator_in_basis,
    enumerate_TN_level,
    generators,
    highest_weight_formula,
    laplace,
    project_T_monomial,
    weight,
)
from .poly import Poly
from .reports import CheckRecord


def _record(name, anchor, passed, payload, t0, reason=""):
    status = "pass" if passed else "fail"
    return CheckRecord(name, anchor, status, payload, time.time() - t0, reason)


def _all_monomials(n, maxdeg):
    nv = 2 * n
    for d in range(maxdeg + 1):
        for combo in itertools.combinations_with_replacement(range(nv), d):
            m = [0] * nv
            for pos in combo:
                m[pos] += 1
            yield tuple(m)


# -- 1: commutator fidelity --------------------------------------------------


def check_bracket_fidelity(params_list, maxdeg=4) -> CheckRecord:
    t0 = time.time()
    counts = {}
    violations = 0
    for params in params_list:
        cfg = Config(*params)
        gens = generators(cfg.n)
        comm = {
            (a, b): commutator_in_basis(gens[a], gens[b], cfg.n)
            for a in range(len(gens))
            for b in range(a + 1, len(gens))
        }
        nmon = 0
        for m in _all_monomials(cfg.n, maxdeg):
            nmon += 1
            base = {m: 1}
            first = [apply_generator_terms(cfg, g, base) for g in gens]
            for (a, b), cb in comm.items():
                acc = dict(apply_generator_terms(cfg, gens[a], first[b]))
                for mm, cc in apply_generator_terms(cfg, gens[b], first[a]).items():
                    s = acc.get(mm, 0) - cc
                    if s:
                        acc[mm] = s
                    elif mm in acc:
                        del acc[mm]
                for coeff, g in cb:
                    for mm, cc in apply_generator_terms(cfg, g, base).items():
                        s = acc.get(mm, 0) - coeff * cc
                        if s:
                            acc[mm] = s
                        elif mm in acc:
                            del acc[mm]
                if acc:
                    violations += 1
        counts[str(params)] = {"monomials": nmon, "pairs": len(comm)}
    return _record(
        "bracket-fidelity",
        "commutator-identity",
        violations == 0,
        {"configs": counts, "violations": violations, "max_degree": maxdeg},
        t0,
    )


# -- 2: harmonicity of projections -------------------------------------------


def check_harmonicity(params_list, dmax=6) -> CheckRecord:
    t0 = time.time()
    payload = {}
    bad = 0
    for params in params_list:
        cfg = Config(*params)
        per_level = []
        for k in range(dmax + 1):
            mons = enumerate_TN_level(cfg, k)
            per_level.append(len(mons))
            for m in mons:
                if laplace(cfg, project_T_monomial(cfg, m)):
                    bad += 1
        payload[cfg.short()] = {"level_sizes": per_level}
    return _record(
        "harmonicity",
        "projection-kills-laplacian",
        bad == 0,
        {**payload, "failures": bad, "dmax": dmax},
        t0,
    )


# -- 3: ladder identities -----------------------------------------------------


def _ladder_v0_choices(cfg):
    sp = cfg.space
    mid = cfg.n1 + 1
    xs = [sp.x(i) for i in cfg.J1] + [sp.x(r) for r in cfg.J2 if r != mid]
    ys = [sp.y(i) for i in cfg.J1] + [sp.y(r) for r in cfg.J2 if r != mid]
    x_ring = [sp.x(i) for i in cfg.J1] + [sp.x(r) for r in cfg.J2 if r != mid] + [
        sp.y(j) for j in cfg.J3
    ]
    y_ring = [sp.x(i) for i in cfg.J1] + [sp.y(r) for r in cfg.J2 if r != mid] + [
        sp.y(j) for j in cfg.J3
    ]
    out = []
    for ring in (x_ring, y_ring):
        for d in range(3):
            for combo in itertools.combinations_with_replacement(ring, d):
                m = [0] * sp.nvars
                for pos in combo:
                    m[pos] += 1
                out.append(Poly.monomial(sp, m))
    seen = set()
    uniq = []
    for p in out:
        key = next(iter(p.terms))
        if key not in seen:
            seen.add(key)
            uniq.append(p)
    return uniq


def check_ladder_identities(params=(4, 1, 3), kmax=3) -> CheckRecord:
    t0 = time.time()
    cfg = Config(*params)
    v0s = _ladder_v0_choices(cfg)
    i1_choices = list(cfg.J1)
    i3_choices = list(cfg.J3)
    checked = 0
    failures = 0
    for k in range(kmax + 1):
        for aux in range(k + 1):
            for v0 in v0s:
                for variant, n1len, n3len in (
                    ("x", k, aux),
                    ("y", aux, k),
                    ("cx", 0, k - aux),
                    ("cy", k - aux, 0),
                ):
                    for i1s in itertools.product(i1_choices, repeat=n1len):
                        for i3s in itertools.product(i3_choices, repeat=n3len):
                            checked += 1
                            if not operator_chain_identity(
                                cfg, variant, k, aux, list(i1s), list(i3s), v0
                            ):
                                failures += 1
    return _record(
        "ladder-identities",
        "operator-product-vs-projection",
        failures == 0,
        {"cfg": cfg.short(), "kmax": kmax, "checked": checked, "failures": failures},
        t0,
    )


# -- 4: dual-method tower agreement -------------------------------------------


def check_tower_agreement(matrix) -> list[CheckRecord]:
    out = []
    for params, kmax in matrix:
        t0 = time.time()
        rep = compare_towers(Config(*params), kmax)
        out.append(
            _record(
                f"tower-agreement{params}",
                "filtration-span-equality",
                rep["all_equal"] and rep["nested"],
                {
                    "kmax": kmax,
                    "dims": [r["dim_bruteforce"] for r in rep["levels"]],
                    "method": rep["explicit_method"],
                    "nested": rep["nested"],
                },
                t0,
            )
        )
    return out


# -- 5/6/7: determinantal kernels and independence ----------------------------


def _zcfg(a: int, b: int) -> Config:
    """A configuration with |J1| = a, |J3| = b (middle block a singleton)."""
    return Config(a + b + 1, a, a + 1)


def check_minor2_kernels(sizes=(1, 2, 3), rmax=4) -> CheckRecord:
    t0 = time.time()
    results = {}
    ok = True
    for a in sizes:
        for b in sizes:
            rep = verify_minor2_kernel(_zcfg(a, b), rmax)
            ok = ok and rep["all_equal"]
            results[f"|J1|={a},|J3|={b}"] = [
                (d["degree"], d["dim_kernel_x"], d["dim_ideal"])
                for d in rep["levels"]
            ]
    return _record(
        "quadratic-kernel",
        "two-minor-ideal-equals-kernel",
        ok,
        {"rmax": rmax, "dims": results},
        t0,
    )


def check_gset_independence(bound=4) -> CheckRecord:
    t0 = time.time()
    rep = verify_gset_independence(_zcfg(3, 3), bound)
    return _record(
        "gset-independence",
        "chain-free-images-independent",
        rep["all_independent"],
        {
            "bound": bound,
            "tuples_checked": rep["tuples_checked"],
            "tuples_nonempty": rep["tuples_nonempty"],
            "failures": rep["failures"][:5],
        },
        t0,
    )


def check_minor3_kernels(sizes=((1, 1), (2, 2), (2, 3), (3, 3)), kmax=3) -> CheckRecord:
    t0 = time.time()
    results = {}
    ok = True
    for a, b in sizes:
        rep = verify_minor3_kernel(_zcfg(a, b), kmax)
        ok = ok and rep["all_equal"]
        results[f"|J1'|={a + 1},|J3'|={b + 1}"] = [
            (d["degree"], d["dim_kernel"], d["dim_ideal"]) for d in rep["levels"]
        ]
    return _record(
        "cubic-kernel",
        "three-minor-ideal-equals-kernel",
        ok,
        {"kmax": kmax, "dims": results},
        t0,
    )


# -- 8: degree-1 annihilator --------------------------------------------------


def check_degree1_kernels(matrix) -> list[CheckRecord]:
    out = []
    for params, kmax in matrix:
        t0 = time.time()
        cfg = Config(*params)
        tower = build_tower(cfg, kmax - 1, "explicit")
        rep = degree1_report(tower, kmax)
        out.append(
            _record(
                f"degree1-kernel{params}",
                "level-preserver-span",
                rep["equal"] and rep["stabilized"],
                {
                    "kmax": kmax,
                    "dim": rep["dim_computed"],
                    "cartan": rep["cartan_part"],
                    "off_L_roots": rep["root_part"],
                    "stabilized": rep["stabilized"],
                },
                t0,
            )
        )
    return out


# -- 9: degree-2 annihilator --------------------------------------------------


def check_degree2_kernels(matrix) -> list[CheckRecord]:
    out = []
    for params, kmax in matrix:
        t0 = time.time()
        cfg = Config(*params)
        tower = build_tower(cfg, kmax, "explicit")
        i1 = degree1_report(tower, kmax)
        rep = verify_degree2(tower, kmax, i1)
        out.append(
            _record(
                f"degree2-kernel{params}",
                "minor2-family-exactness",
                rep["exact_mod_degree1"] and rep["all_member"] and rep["i1_equal"],
                {
                    "kmax": kmax,
                    "pure_computed": rep["dim_pure_computed"],
                    "pure_predicted": rep["dim_pure_predicted"],
                    "membership": rep["membership"],
                    "power_membership": rep["power_membership"],
                    "stabilized": rep["piece"].stabilized,
                },
                t0,
            )
        )
    return out


# -- 10: degree-3 annihilator -------------------------------------------------


def check_degree3_cases(params=(6, 2, 4, -1, -1), kmax=3, identity_maxdeg=4) -> CheckRecord:
    t0 = time.time()
    cfg = Config(*params)
    tower = build_tower(cfg, kmax, "explicit")
    i1 = degree1_report(tower, kmax)
    rep = verify_degree3(tower, kmax, identity_maxdeg=identity_maxdeg, i1=i1)
    return _record(
        f"degree3-cases{params}",
        "minor3-case-membership",
        rep["all_cases_pass"] and rep["i1_equal"],
        {"kmax": kmax, "cases": rep["cases"]},
        t0,
    )


def check_degree3_exactness(params=(5, 2, 3, -1, -1), kmax=3) -> CheckRecord:
    t0 = time.time()
    cfg = Config(*params)
    tower = build_tower(cfg, kmax, "explicit")
    i1 = degree1_report(tower, kmax)
    rep = verify_degree3(tower, kmax, identity_maxdeg=3, i1=i1)
    return _record(
        f"degree3-exactness{params}",
        "minor3-family-exactness",
        rep["exact_mod_lower"] and rep["all_cases_pass"] and rep["i1_equal"],
        {
            "kmax": kmax,
            "pure_computed": rep["dim_pure_computed"],
            "pure_predicted": rep["dim_pure_predicted"],
            "cases": rep["cases"],
        },
        t0,
    )


def check_degree3_identity_supplement(params=(6, 2, 3), maxdeg=4) -> CheckRecord:
    """The vanishing-case identity on a block layout where it is non-vacuous."""
    t0 = time.time()
    cfg = Config(*params)
    ops = [
        op
        for op in delta_ops(cfg, "minor3")
        if classify_minor3(cfg, op.rows, op.cols) == 1
    ]
    ok = bool(ops) and all(
        operator_identically_zero(cfg, op.terms, maxdeg) for op in ops
    )
    return _record(
        "degree3-identity-supplement",
        "minor3-vanishing-case",
        ok,
        {"cfg": cfg.short(), "ops": [op.label() for op in ops], "maxdeg": maxdeg},
        t0,
    )


def check_degree3_case6_supplement(params=(5, 1, 4, -1, -1), kmax=3) -> CheckRecord:
    """Residue membership for the all-middle-block case, non-vacuous here."""
    t0 = time.time()
    cfg = Config(*params)
    tower = build_tower(cfg, kmax, "explicit")
    ops = [
        op
        for op in delta_ops(cfg, "minor3")
        if classify_minor3(cfg, op.rows, op.cols) == 6
    ]
    ok = bool(ops) and all(sym_membership(op.terms, tower) for op in ops[:2])
    return _record(
        "degree3-case6-supplement",
        "minor3-case-membership",
        ok,
        {"cfg": cfg.short(), "count": len(ops), "checked": min(2, len(ops))},
        t0,
    )


# -- 11: the associated-variety presentation ----------------------------------


def check_presentations(matrix) -> list[CheckRecord]:
    out = []
    for params, kmax in matrix:
        t0 = time.time()
        rep = verify_variety_presentation(Config(*params), kmax)
        out.append(
            _record(
                f"variety-presentation{params}",
                "determinantal-intersection",
                rep["overall"],
                {
                    "kmax": kmax,
                    "regime": rep["regime"],
                    "checks": [
                        {k: v for k, v in c.items() if k != "dims"}
                        for c in rep["checks"]
                    ],
                    "generators_checked": len(rep["member_results"]),
                },
                t0,
            )
        )
    return out


# -- 12: growth degree ---------------------------------------------------------


def check_gk_growth(matrix) -> list[CheckRecord]:
    out = []
    for params, kmax in matrix:
        t0 = time.time()
        cfg = Config(*params)
        tower = build_tower(cfg, kmax, "explicit")
        est, confident = gkdim_estimate(tower)
        want = expected_gkdim(cfg)
        out.append(
            _record(
                f"gk-growth{params}",
                "hilbert-growth-degree",
                est == want and confident,
                {
                    "kmax": kmax,
                    "dims": tower.dims,
                    "estimate": est,
                    "expected": want,
                    "confident": confident,
                },
                t0,
            )
        )
    return out


# -- 13: highest weight ---------------------------------------------------------


def check_highest_weight(params=(5, 1, 3), m1=1, m2=1) -> CheckRecord:
    t0 = time.time()
    cfg = Config(params[0], params[1], params[2], -m1, -m2)
    sp = cfg.space
    mono = [0] * sp.nvars
    mono[sp.x(cfg.n1)] = m1
    mono[sp.y(cfg.n2 + 1)] = m2
    vec = project_T_monomial(cfg, tuple(mono))
    killed = all(
        apply_generator(cfg, ("e", r, r + 1), vec).is_zero()
        for r in range(1, cfg.n)
    )
    wt = weight(cfg, vec)
    want = highest_weight_formula(cfg, m1, m2)
    return _record(
        "highest-weight",
        "weight-of-corner-vector",
        killed and wt == want,
        {
            "cfg": cfg.short(),
            "vector": vec.render(),
            "weight": list(wt) if wt else None,
            "expected": list(want),
            "raising-annihilates": killed,
        },
        t0,
    )


# -- the full matrix -----------------------------------------------------------


def run_suite(budget_seconds: float | None = None, progress=None) -> list[CheckRecord]:
    """The complete verification matrix.

    A finite time budget below ten minutes swaps the n = 6 configurations
    for n = 5 ones that keep one nonempty minor family on each of the two
    mixed blocks; everything else is unchanged.
    """
    small = budget_seconds is not None and budget_seconds < 600
    deg2_matrix = (
        [((5, 2, 4, -1, -1), 3), ((5, 1, 3, -1, 1), 3), ((5, 1, 3, 1, -1), 3),
         ((4, 1, 3, -1, 1), 3)]
        if small
        else [((6, 2, 4, -1, -1), 3), ((5, 1, 3, -1, 1), 3), ((5, 1, 3, 1, -1), 3),
              ((4, 1, 3, -1, 1), 3)]
    )
    deg3_cases_cfg = ((5, 2, 3, -1, -1), 3) if small else ((6, 2, 4, -1, -1), 3)
    present_matrix = [
        ((4, 2, 2, -1, -1), 4),
        ((5, 2, 2, -1, -2), 4),
        ((3, 2, 3, 2, 1), 4),
        ((4, 3, 4, 1, 1), 4),
    ] + ([] if small else [((6, 2, 4, -1, -1), 3)])

    stages = [
        lambda: [check_bracket_fidelity([(3, 1, 2), (4, 1, 3), (4, 2, 2), (5, 2, 3)])],
        lambda: [
            check_harmonicity([(3, 1, 2, -1, -1), (4, 1, 3, -1, -1), (4, 1, 3, -1, 1)])
        ],
        lambda: [check_ladder_identities((4, 1, 3), 3)],
        lambda: check_tower_agreement(
            [
                ((3, 1, 2, -1, -1), 5),
                ((3, 1, 2, -1, 0), 5),
                ((4, 1, 3, -1, -1), 4),
                ((4, 1, 3, -1, 1), 4),
                ((3, 2, 3, 2, 1), 4),
                ((4, 3, 4, 1, 1), 4),
            ]
        ),
        lambda: [check_minor2_kernels()],
        lambda: [check_gset_independence()],
        lambda: [check_minor3_kernels()],
        lambda: check_degree1_kernels(
            [
                ((3, 1, 2, -1, -1), 4),
                ((4, 1, 3, -1, 1), 4),
                ((3, 2, 3, 2, 1), 4),
                ((6, 2, 4, -1, -1), 4),
            ]
            if not small
            else [
                ((3, 1, 2, -1, -1), 4),
                ((4, 1, 3, -1, 1), 4),
                ((3, 2, 3, 2, 1), 4),
                ((5, 2, 4, -1, -1), 4),
            ]
        ),
        lambda: check_degree2_kernels(deg2_matrix),
        lambda: [
            check_degree3_cases(deg3_cases_cfg[0], deg3_cases_cfg[1]),
            check_degree3_exactness((5, 2, 3, -1, -1), 3),
            check_degree3_identity_supplement(),
            check_degree3_case6_supplement(),
        ],
        lambda: check_presentations(present_matrix),
        lambda: check_gk_growth(
            [((3, 1, 2, -1, -1), 8), ((4, 2, 2, -1, -1), 8), ((3, 1, 3, 2, 1), 8)]
        ),
        lambda: [check_highest_weight()],
    ]
    records: list[CheckRecord] = []
    start = time.time()
    for stage in stages:
        if budget_seconds is not None and time.time() - start > budget_seconds:
            records.append(
                CheckRecord(
                    "suite-budget",
                    "time-budget",
                    "skipped",
                    {},
                    0.0,
                    "time budget exhausted before this stage",
                )
            )
            break
        for rec in stage():
            records.append(rec)
            if progress is not None:
                progress(rec)
    return records
