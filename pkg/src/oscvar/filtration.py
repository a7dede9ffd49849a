"""Filtrations of the harmonic module by enveloping-algebra degree.

The base space M_0 depends on the parameter regime:

  * n1 < n2 with l1 <= 0 or l2 <= 0: the T-image of one block-degree cell,
    picked by the sign pattern of (l1, l2);
  * n1 < n2 = n with l1, l2 > 0: the T-images with zero x-degree over J1;
  * n1 = n2 with l1, l2 <= 0: the monomials X_{J1}^{m1} Y_{J3}^{m2};
  * n1 = n2 with l1 <= 0 < l2 (and 1 < n1): products of the quadratics
    (x_p y_q - x_q y_p) over J1 against X_{J1}^{m1}; the regime with the
    roles of l1 and l2 swapped is handled through the x/y mirror symmetry.

Each level M_k = U_k(sl(n))(M_0) is materialized as an echelon basis, two
independent ways: brute-force closure under all generators, and the
explicit spanning sets (T-images of bounded weighted degree together with
products by the alternating quadratics P).  Their exact agreement is the
central span oracle of this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .linalg import EchelonBasis, echelon_from, span_equal
from .osc import (
    Config,
    apply_generator,
    apply_generator_terms,
    enumerate_block_sums,
    enumerate_TN_level,
    generators,
    project_T_monomial,
)
from .poly import Poly, parse_poly


class UnsupportedRegimeError(ValueError):
    """Raised for parameter regimes with no explicit base-space recipe."""


@dataclass
class FiltrationTower:
    """Nested spans M_0 <= M_1 <= ... <= M_kmax with their dimensions."""

    cfg: Config
    method: str  # "bruteforce" | "explicit" | "explicit-dprime" | "product-span"
    levels: list[EchelonBasis] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [b.dim for b in self.levels]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def check_nested(self) -> bool:
        return all(
            self.levels[k + 1].contains_span(self.levels[k])
            for k in range(self.depth)
        )


def alternating_set(cfg: Config) -> list[Poly]:
    """The quadratics x_{i1} x_{i3} - y_{i1} y_{i3}, one per J1 x J3 pair.

    Each equals minus the representation image of E_{i3,i1} acting on the
    constants, and multiplication by it raises the filtration level by one.
    """
    sp = cfg.space
    out = []
    for i1 in cfg.J1:
        for i3 in cfg.J3:
            m1 = [0] * sp.nvars
            m1[sp.x(i1)] = 1
            m1[sp.x(i3)] = 1
            m2 = [0] * sp.nvars
            m2[sp.y(i1)] = 1
            m2[sp.y(i3)] = 1
            out.append(Poly(sp, {tuple(m1): 1, tuple(m2): -1}))
    return out


def _regime(cfg: Config) -> str:
    if cfg.n1 < cfg.n2:
        if cfg.l1 <= 0 or cfg.l2 <= 0:
            return "T-cell"
        if cfg.n2 == cfg.n:
            return "dprime"
        raise UnsupportedRegimeError(
            f"no base-space recipe for {cfg.short()} (l1,l2>0 with n2<n)"
        )
    # n1 == n2
    if cfg.l1 <= 0 and cfg.l2 <= 0:
        return "product"
    if cfg.l1 + cfg.l2 <= 0 and cfg.l2 > 0:
        return "product-skew"
    if cfg.l1 + cfg.l2 <= 0 and cfg.l1 > 0:
        return "product-skew-mirror"
    raise UnsupportedRegimeError(
        f"no base-space recipe for {cfg.short()} (n1=n2 with l1+l2>0)"
    )


class _TCache:
    """Per-configuration cache of harmonic projections of monomials."""

    def __init__(self, cfg: Config):
        self.cfg = cfg
        self.images: dict = {}

    def __call__(self, m: tuple) -> Poly:
        img = self.images.get(m)
        if img is None:
            img = project_T_monomial(self.cfg, m)
            self.images[m] = img
        return img


def _dprime_level(cfg: Config, t: int) -> list[tuple]:
    """Monomials of the graded piece with J1 x-degree exactly t (n2 = n)."""
    out = []
    for b1 in range(cfg.l2 + 1):
        out.extend(
            enumerate_block_sums(cfg, t, cfg.l1 + t, 0, b1, cfg.l2 - b1, 0)
        )
    return out


def _mirror_poly(p: Poly, cfg: Config) -> Poly:
    """The x/y mirror x_i <-> y_{n+1-i}: an algebra isomorphism that maps the
    setup with (n1, l1, l2) to the one with (n - n1, l2, l1)."""
    n = cfg.n
    sp = cfg.space
    out = {}
    for m, c in p.terms.items():
        t = [0] * (2 * n)
        for i in range(1, n + 1):
            t[sp.y(n + 1 - i)] = m[sp.x(i)]
            t[sp.x(n + 1 - i)] = m[sp.y(i)]
        out[tuple(t)] = c
    return Poly(sp, out)


def _skew_base(cfg: Config) -> list[Poly]:
    """Base vectors prod (x_p y_q - x_q y_p)^{k_pq} * X_{J1}^{m1} for the
    n1 = n2, l1 <= 0 < l2 regime."""
    if cfg.n1 < 2:
        raise UnsupportedRegimeError(
            f"{cfg.short()}: skew products need at least two J1 indices"
        )
    sp = cfg.space
    m1, m2 = -cfg.l1 - cfg.l2, cfg.l2
    pairs = list(itertools.combinations(cfg.J1, 2))
    skews = []
    for p, q in pairs:
        t1 = [0] * sp.nvars
        t1[sp.x(p)] = 1
        t1[sp.y(q)] = 1
        t2 = [0] * sp.nvars
        t2[sp.x(q)] = 1
        t2[sp.y(p)] = 1
        skews.append(Poly(sp, {tuple(t1): 1, tuple(t2): -1}))
    out = []
    for combo in itertools.combinations_with_replacement(range(len(pairs)), m2):
        prod = Poly.constant(sp, 1)
        for idx in combo:
            prod = prod * skews[idx]
        for xm in _compositions_over(cfg.J1, m1):
            mono = [0] * sp.nvars
            for i, e in xm:
                mono[sp.x(i)] = e
            out.append(prod * Poly.monomial(sp, mono))
    return out


def _compositions_over(indices, total):
    idx = list(indices)
    from .osc import _compositions

    for comp in _compositions(total, len(idx)):
        yield list(zip(idx, comp))


def _product_base(cfg: Config) -> list[Poly]:
    """Monomials X_{J1}^{m1} Y_{J3}^{m2} for the n1 = n2, l1, l2 <= 0 regime."""
    sp = cfg.space
    m1, m2 = -cfg.l1, -cfg.l2
    out = []
    for xm in _compositions_over(cfg.J1, m1):
        for ym in _compositions_over(cfg.J3, m2):
            mono = [0] * sp.nvars
            for i, e in xm:
                mono[sp.x(i)] = e
            for j, e in ym:
                mono[sp.y(j)] = e
            out.append(Poly.monomial(sp, mono))
    return out


def base_space_vectors(cfg: Config) -> list[Poly]:
    """Spanning vectors of M_0 for the applicable regime."""
    regime = _regime(cfg)
    if regime == "T-cell":
        l1, l2 = cfg.l1, cfg.l2
        if l1 <= 0 and l2 <= 0:
            cell = (-l1, 0, 0, 0, 0, -l2)
        elif l1 <= 0 <= l2:
            cell = (-l1, 0, 0, 0, l2, 0)
        else:  # l1 >= 0 >= l2
            cell = (0, l1, 0, 0, 0, -l2)
        tproj = _TCache(cfg)
        return [tproj(m) for m in enumerate_block_sums(cfg, *cell)]
    if regime == "dprime":
        tproj = _TCache(cfg)
        return [tproj(m) for m in _dprime_level(cfg, 0)]
    if regime == "product":
        return _product_base(cfg)
    if regime == "product-skew":
        return _skew_base(cfg)
    # product-skew-mirror
    mirrored = Config(cfg.n, cfg.n - cfg.n1, cfg.n - cfg.n1, cfg.l2, cfg.l1)
    return [_mirror_poly(p, cfg) for p in _skew_base(mirrored)]


def build_M0(cfg: Config, warn=None) -> EchelonBasis:
    """Echelon basis of the base space M_0.

    Emits a warning through ``warn`` (a callable taking a string) when the
    configuration fails the irreducibility classification; the tower is
    still built.
    """
    from .osc import classify_irreducible

    if warn is not None and not classify_irreducible(cfg):
        warn(f"{cfg.short()} fails the irreducibility classification")
    return echelon_from(cfg.space, base_space_vectors(cfg))


def bruteforce_level(cfg: Config, prev: EchelonBasis) -> EchelonBasis:
    """span(prev) + images of its rows under all n^2 - 1 generators."""
    nxt = prev.copy()
    gens = generators(cfg.n)
    for row in prev.rows.values():
        for g in gens:
            img = apply_generator_terms(cfg, g, row)
            if img:
                nxt.insert(img)
    return nxt


def _pset_products(cfg: Config, size: int, cache: dict) -> list[Poly]:
    """All products of ``size`` alternating quadratics (with repetition)."""
    if size == 0:
        return [Poly.constant(cfg.space, 1)]
    got = cache.get(size)
    if got is not None:
        return got
    pset = cache["pset"]
    out = []
    for combo in itertools.combinations_with_replacement(range(len(pset)), size):
        key = ("prod", combo)
        p = cache.get(key)
        if p is None:
            p = cache.get(("prod", combo[:-1]))
            if p is None:
                p = Poly.constant(cfg.space, 1)
                for idx in combo[:-1]:
                    p = p * pset[idx]
                cache[("prod", combo[:-1])] = p
            p = p * pset[combo[-1]]
            cache[key] = p
        out.append(p)
    cache[size] = out
    return out


def explicit_level(cfg: Config, k: int, cache: dict | None = None) -> EchelonBasis:
    """Level k of the explicit tower, built from its own spanning set.

    Passing the same ``cache`` across calls shares projection images and
    quadratic products between levels.
    """
    if cache is None:
        cache = _explicit_cache(cfg)
    regime = cache["regime"]
    basis = EchelonBasis(cfg.space)
    if regime == "T-cell":
        tproj = cache["tproj"]
        levels = cache["tn"]
        while len(levels) <= k:
            levels.append(enumerate_TN_level(cfg, len(levels)))
        for j in range(k + 1):
            for m in levels[j]:
                basis.insert(tproj(m))
        for i in range(1, k + 1):
            prods = _pset_products(cfg, i, cache)
            for m in levels[k - i]:
                tm = tproj(m)
                for p in prods:
                    basis.insert(tm * p)
        return basis
    if regime == "dprime":
        tproj = cache["tproj"]
        levels = cache["tn"]
        while len(levels) <= k:
            levels.append(_dprime_level(cfg, len(levels)))
        for t in range(k + 1):
            for m in levels[t]:
                basis.insert(tproj(m))
        return basis
    # n1 = n2 product spans: M_k = M_0 * P^{<=k}
    base = cache["base"]
    for i in range(k + 1):
        prods = _pset_products(cfg, i, cache)
        for b in base:
            for p in prods:
                basis.insert(b * p)
    return basis


def _explicit_cache(cfg: Config) -> dict:
    regime = _regime(cfg)
    cache: dict = {"regime": regime, "pset": alternating_set(cfg), "tn": []}
    if regime in ("T-cell", "dprime"):
        cache["tproj"] = _TCache(cfg)
    else:
        cache["base"] = base_space_vectors(cfg)
    return cache


def build_tower(cfg: Config, kmax: int, method: str = "explicit") -> FiltrationTower:
    """Construct M_0 .. M_kmax by the requested method."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if method == "bruteforce":
        levels = [build_M0(cfg)]
        for _ in range(kmax):
            levels.append(bruteforce_level(cfg, levels[-1]))
        return FiltrationTower(cfg, "bruteforce", levels)
    if method != "explicit":
        raise ValueError(f"unknown tower method {method!r}")
    cache = _explicit_cache(cfg)
    levels = [explicit_level(cfg, k, cache) for k in range(kmax + 1)]
    name = {"T-cell": "explicit", "dprime": "explicit-dprime"}.get(
        cache["regime"], "product-span"
    )
    return FiltrationTower(cfg, name, levels)


def compare_towers(cfg: Config, kmax: int) -> dict:
    """Brute-force vs explicit towers: exact two-sided equality per level.

    This is the dual-route oracle for the filtration description; the two
    constructions share no code beyond the base space.
    """
    brute = build_tower(cfg, kmax, "bruteforce")
    explicit = build_tower(cfg, kmax, "explicit")
    per_level = []
    for k in range(kmax + 1):
        eq = span_equal(brute.levels[k], explicit.levels[k])
        per_level.append(
            {
                "k": k,
                "dim_bruteforce": brute.levels[k].dim,
                "dim_explicit": explicit.levels[k].dim,
                "equal": eq,
            }
        )
    return {
        "cfg": cfg.short(),
        "explicit_method": explicit.method,
        "levels": per_level,
        "all_equal": all(r["equal"] for r in per_level),
        "nested": explicit.check_nested() and brute.check_nested(),
    }


def hilbert_sequence(tower: FiltrationTower) -> list[int]:
    """Graded dimensions dim M_0, dim M_1 - dim M_0, ..."""
    dims = tower.dims
    return [dims[0]] + [dims[k] - dims[k - 1] for k in range(1, len(dims))]


def p_order(cfg: Config, k: int, f: Poly, cache: dict | None = None) -> int:
    """Minimal number of alternating-quadratic factors needed to express f
    inside level k; 0 iff f lies in the span of the T-images alone.

    Raises ValueError when f is not in M_k at all.
    """
    if _regime(cfg) != "T-cell":
        raise UnsupportedRegimeError("P-order is defined in the T-image regime")
    if cache is None:
        cache = _explicit_cache(cfg)
    levels = cache["tn"]
    while len(levels) <= k:
        levels.append(enumerate_TN_level(cfg, len(levels)))
    tproj = cache["tproj"]
    span = EchelonBasis(cfg.space)
    for j in range(k + 1):
        for m in levels[j]:
            span.insert(tproj(m))
    if span.contains(f):
        return 0
    for s in range(1, k + 1):
        prods = _pset_products(cfg, s, cache)
        for m in levels[k - s]:
            tm = tproj(m)
            for p in prods:
                span.insert(tm * p)
        if span.contains(f):
            return s
    raise ValueError("polynomial does not lie in the requested level")


# ---------------------------------------------------------------------------
# ladder identities: ordered products of raising/lowering operators versus
# scaled harmonic projections
# ---------------------------------------------------------------------------


def _apply_chain(cfg: Config, ops: list[tuple], v: Poly) -> Poly:
    """Apply root operators right-to-left (ops[0] acts last)."""
    out = v
    for ij in reversed(ops):
        out = apply_generator(cfg, ("e",) + ij, out)
    return out


def _subring_ok(cfg: Config, v0: Poly, allow_x_mid: bool) -> bool:
    """v0 must avoid x_{n1+1}, y_{n1+1} and use only one of x/y over the rest
    of the middle block."""
    sp = cfg.space
    mid = cfg.n1 + 1
    uses_x_mid = uses_y_mid = False
    for m in v0.terms:
        if m[sp.x(mid)] or m[sp.y(mid)]:
            return False
        for r in cfg.J2:
            if r == mid:
                continue
            if m[sp.x(r)]:
                uses_x_mid = True
            if m[sp.y(r)]:
                uses_y_mid = True
    return not (uses_x_mid and uses_y_mid)


def operator_chain_identity(
    cfg: Config,
    variant: str,
    k: int,
    aux: int,
    i1_idx: list[int],
    i3_idx: list[int],
    v0: Poly,
) -> bool:
    """Check one ladder identity relating an ordered product of E-operators
    to a scaled projection of a decorated monomial.

    Variants: "x" and "y" are the two mixed ladders (aux = number of J3
    resp. J1 indices consumed); "cx" and "cy" are the one-sided corollary
    forms (aux = leftover exponent at n1+1).  Index and regime
    preconditions are enforced.
    """
    if cfg.n1 >= cfg.n2:
        raise UnsupportedRegimeError("ladder identities require n1 < n2")
    if not _subring_ok(cfg, v0, True):
        raise ValueError("v0 lies outside the admissible subring")
    if aux < 0 or aux > k:
        raise ValueError("need 0 <= aux <= k")
    sp = cfg.space
    mid = cfg.n1 + 1
    if any(i not in cfg.J1 for i in i1_idx) or any(j not in cfg.J3 for j in i3_idx):
        raise ValueError("ladder indices outside J1/J3")

    def mono(pairs) -> Poly:
        m = [0] * sp.nvars
        for pos in pairs:
            m[pos] += 1
        return Poly.monomial(sp, m)

    from .osc import project_T

    if variant == "x":
        k13 = aux
        if len(i1_idx) != k or len(i3_idx) != k13:
            raise ValueError("index list lengths must be (k, k13)")
        deco = mono(
            [sp.x(i) for i in i1_idx]
            + [sp.x(j) for j in i3_idx]
            + [sp.x(mid)] * (k - k13)
        )
        lhs = project_T(cfg, v0 * deco).scale(
            Fraction((-1) ** k * factorial(k), factorial(k - k13))
        )
        ops = [(j, mid) for j in reversed(i3_idx)] + [(mid, i) for i in i1_idx]
        return lhs == _apply_chain(cfg, ops, v0)
    if variant == "y":
        # sign: one -1 per lowering factor, of which there are k21 here
        # (the printed form carries (-1)^k, which fails already at k21 = 0)
        k21 = aux
        if len(i1_idx) != k21 or len(i3_idx) != k:
            raise ValueError("index list lengths must be (k21, k)")
        deco = mono(
            [sp.y(i) for i in i1_idx]
            + [sp.y(j) for j in i3_idx]
            + [sp.y(mid)] * (k - k21)
        )
        lhs = project_T(cfg, v0 * deco).scale(
            Fraction((-1) ** k21 * factorial(k), factorial(k - k21))
        )
        ops = [(mid, i) for i in i1_idx] + [(j, mid) for j in i3_idx]
        return lhs == _apply_chain(cfg, ops, v0)
    if variant == "cx":
        alpha = aux
        if len(i3_idx) != k - alpha:
            raise ValueError("need k - alpha J3 indices")
        deco = mono([sp.x(j) for j in i3_idx] + [sp.x(mid)] * alpha)
        lhs = project_T(cfg, v0 * deco).scale(
            Fraction(factorial(k), factorial(alpha))
        )
        ops = [(j, mid) for j in reversed(i3_idx)]
        seed = v0 * mono([sp.x(mid)] * k)
        return lhs == _apply_chain(cfg, ops, seed)
    if variant == "cy":
        # k - beta lowering factors, hence the (-1)^{k-beta} sign
        beta = aux
        if len(i1_idx) != k - beta:
            raise ValueError("need k - beta J1 indices")
        deco = mono([sp.y(i) for i in i1_idx] + [sp.y(mid)] * beta)
        lhs = project_T(cfg, v0 * deco).scale(
            Fraction((-1) ** (k - beta) * factorial(k), factorial(beta))
        )
        ops = [(mid, i) for i in i1_idx]
        seed = v0 * mono([sp.y(mid)] * k)
        return lhs == _apply_chain(cfg, ops, seed)
    raise ValueError(f"unknown ladder variant {variant!r}")


# ---------------------------------------------------------------------------
# tower interchange format
# ---------------------------------------------------------------------------


def tower_to_dict(tower: FiltrationTower, include_rows: bool = True) -> dict:
    cfg = tower.cfg
    out = {
        "config": {
            "n": cfg.n,
            "n1": cfg.n1,
            "n2": cfg.n2,
            "l1": cfg.l1,
            "l2": cfg.l2,
        },
        "method": tower.method,
        "dims": tower.dims,
    }
    if include_rows:
        out["levels"] = [
            [row.render() for row in basis.sorted_rows()] for basis in tower.levels
        ]
    return out


def tower_from_dict(data: dict) -> FiltrationTower:
    try:
        c = data["config"]
        cfg = Config(c["n"], c["n1"], c["n2"], c["l1"], c["l2"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed tower dump: {exc}") from exc
    if "levels" not in data:
        raise ValueError("tower dump has no basis rows (dumped without rows?)")
    levels = []
    for rows in data["levels"]:
        basis = EchelonBasis(cfg.space)
        for text in rows:
            basis.insert(parse_poly(cfg.space, text))
        levels.append(basis)
    tower = FiltrationTower(cfg, data.get("method", "loaded"), levels)
    if tower.dims != data["dims"]:
        raise ValueError("tower dump dimensions do not match its rows")
    return tower
