"""Determinantal machinery: z-rings, evaluation maps, minors, 3-chains.

For index blocks J1 and J3 of a configuration, the restricted ring carries
one variable z_{j,i} per (j, i) in J3 x J1, and two evaluations

    phi_x(z_{j,i}) = x_i x_j,      phi_y(z_{j,i}) = y_i y_j.

The extended ring adds a column 0 and a row n+1 (minus the corner (n+1,0))
with the conventions z_{n+1,i} = x_i and z_{j,0} = y_j, and the combined
evaluation

    phi(z_{j,i}) = x_i x_j - y_i y_j,  phi(z_{n+1,i}) = x_i,
    phi(z_{j,0}) = y_j.

The kernel of phi_x (and of phi_y) is the ideal of 2x2 minors of the
restricted matrix; the kernel of phi is the ideal of 3x3 minors of the
extended matrix.  Both statements are verified degree by degree by exact
rank computations.

A multiset of index pairs contains a 3-chain when some triple is strictly
increasing in both coordinates; monomials whose full pair multiset is
3-chain-free (the G-sets below) map to linearly independent polynomials
under phi, which is the combinatorial engine behind the annihilator
computations.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass

from .linalg import EchelonBasis, kernel_of_map, span_equal
from .osc import Config
from .poly import Poly, Space, xy_space, z_space


def restricted_ring(cfg: Config) -> Space:
    if not cfg.J1 or not cfg.J3:
        raise ValueError("restricted z ring needs nonempty J1 and J3")
    return z_space(tuple(cfg.J3), tuple(cfg.J1))


def extended_ring(cfg: Config) -> Space:
    rows = tuple(cfg.J3) + (cfg.n + 1,)
    cols = (0,) + tuple(cfg.J1)
    return z_space(rows, cols, frozenset({(cfg.n + 1, 0)}))


def _is_extended(space: Space) -> bool:
    return 0 in space.cols


def phi_x(cfg: Config, p: Poly) -> Poly:
    """Evaluation z_{j,i} -> x_i x_j on the restricted ring."""
    return _phi_pair(cfg, p, use_x=True)


def phi_y(cfg: Config, p: Poly) -> Poly:
    """Evaluation z_{j,i} -> y_i y_j on the restricted ring."""
    return _phi_pair(cfg, p, use_x=False)


def _phi_pair(cfg: Config, p: Poly, use_x: bool) -> Poly:
    sp = p.space
    if sp.kind != "z" or _is_extended(sp):
        raise ValueError("phi_x/phi_y expect the restricted z ring")
    target = xy_space(cfg.n)
    images = {}
    for j in sp.rows:
        for i in sp.cols:
            m = [0] * target.nvars
            if use_x:
                m[target.x(i)] = 1
                m[target.x(j)] = 1
            else:
                m[target.y(i)] = 1
                m[target.y(j)] = 1
            images[sp.z(j, i)] = Poly.monomial(target, m)
    return p.substitute(images, target)


def phi(cfg: Config, p: Poly) -> Poly:
    """Combined evaluation on the extended ring."""
    sp = p.space
    if sp.kind != "z":
        raise ValueError("phi expects a z ring")
    target = xy_space(cfg.n)
    images = {}
    for j in sp.rows:
        for i in sp.cols:
            if (j, i) in sp.excluded:
                continue
            if j == cfg.n + 1:
                images[sp.z(j, i)] = Poly.variable(target, target.x(i))
            elif i == 0:
                images[sp.z(j, i)] = Poly.variable(target, target.y(j))
            else:
                m1 = [0] * target.nvars
                m1[target.x(i)] = 1
                m1[target.x(j)] = 1
                m2 = [0] * target.nvars
                m2[target.y(i)] = 1
                m2[target.y(j)] = 1
                images[sp.z(j, i)] = Poly(
                    target, {tuple(m1): 1, tuple(m2): -1}
                )
    return p.substitute(images, target)


def minor_generators(space: Space, t: int, rows=None, cols=None) -> list[Poly]:
    """All t x t minors of the z matrix over the given row and column sets.

    Excluded matrix entries count as literal zero.  Row/column subsets are
    enumerated in lexicographic order, so the generator list is
    deterministic.  Empty when t exceeds either set size.
    """
    rows = tuple(space.rows) if rows is None else tuple(sorted(rows))
    cols = tuple(space.cols) if cols is None else tuple(sorted(cols))
    if t > len(rows) or t > len(cols) or t < 1:
        return []
    out = []
    for rsub in itertools.combinations(rows, t):
        for csub in itertools.combinations(cols, t):
            det = Poly.zero(space)
            for perm in itertools.permutations(range(t)):
                if any((rsub[a], csub[perm[a]]) in space.excluded for a in range(t)):
                    continue
                sign = _perm_sign(perm)
                m = [0] * space.nvars
                for a in range(t):
                    m[space.z(rsub[a], csub[perm[a]])] += 1
                det = det + Poly.monomial(space, m, sign)
            if det:
                out.append(det)
    return out


def _perm_sign(perm) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# 3-chains
# ---------------------------------------------------------------------------


def has_3chain(pairs) -> bool:
    """True iff some triple of pairs is strictly increasing in both
    coordinates.

    Sorting by (first asc, second desc) reduces the question to a strictly
    increasing subsequence of length 3 in the second coordinate, found by
    patience sorting.
    """
    seq = [p[1] for p in sorted(pairs, key=lambda p: (p[0], -p[1]))]
    tails: list = []
    for v in seq:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
            if len(tails) >= 3:
                return True
        else:
            tails[pos] = v
    return False


# ---------------------------------------------------------------------------
# G-sets: 3-chain-free monomials with prescribed index multisets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GMonomial:
    """A monomial of the extended ring in canonical sorted-factor form.

    ``x_part`` and ``y_part`` are sorted index multisets (columns resp.
    rows); ``z_part`` is the sorted multiset of (row, col) pairs.
    """

    x_part: tuple
    y_part: tuple
    z_part: tuple

    def column_multiset(self) -> tuple:
        return tuple(sorted(self.x_part + tuple(i for _, i in self.z_part)))

    def row_multiset(self) -> tuple:
        return tuple(sorted(self.y_part + tuple(j for j, _ in self.z_part)))

    def index_pairs(self, n: int) -> tuple:
        """The full pair multiset: x factors count as row n+1, y factors as
        column 0."""
        return (
            tuple((n + 1, i) for i in self.x_part)
            + self.z_part
            + tuple((j, 0) for j in self.y_part)
        )

    def to_poly(self, space: Space) -> Poly:
        n_plus = max(space.rows)
        m = [0] * space.nvars
        for i in self.x_part:
            m[space.z(n_plus, i)] += 1
        for j in self.y_part:
            m[space.z(j, 0)] += 1
        for j, i in self.z_part:
            m[space.z(j, i)] += 1
        return Poly.monomial(space, m)


def _sub_multisets(ms: tuple, k: int):
    """Distinct size-k sub-multisets (as sorted tuples) with complements."""
    seen = set()
    idx = range(len(ms))
    for combo in itertools.combinations(idx, k):
        sub = tuple(ms[i] for i in combo)
        if sub in seen:
            continue
        seen.add(sub)
        rest = list(ms)
        for i in reversed(combo):
            del rest[i]
        yield sub, tuple(rest)


def _pairings(rows: tuple, cols: tuple):
    """Distinct multisets of (row, col) pairs matching the two multisets."""
    if not rows:
        yield ()
        return
    r = rows[0]
    rest_rows = rows[1:]
    used = set()
    for pos, c in enumerate(cols):
        if c in used:
            continue
        used.add(c)
        rest_cols = cols[:pos] + cols[pos + 1 :]
        for tail in _pairings(rest_rows, rest_cols):
            yield tuple(sorted(((r, c),) + tail))


def enumerate_gset(
    cfg: Config, k1: int, k2: int, k3: int, i1_multiset, i3_multiset
) -> list[GMonomial]:
    """The 3-chain-free monomials with x/y/z factor counts (k1, k2, k3),
    column multiset i1_multiset and row multiset i3_multiset."""
    I1 = tuple(sorted(i1_multiset))
    I3 = tuple(sorted(i3_multiset))
    if len(I1) != k1 + k3 or len(I3) != k2 + k3:
        raise ValueError("index multiset sizes must be (k1+k3, k2+k3)")
    out = []
    seen = set()
    for x_part, z_cols in _sub_multisets(I1, k1):
        for y_part, z_rows in _sub_multisets(I3, k2):
            for z_part in _pairings(z_rows, z_cols):
                g = GMonomial(x_part, y_part, z_part)
                if g in seen:
                    continue
                seen.add(g)
                if not has_3chain(g.index_pairs(cfg.n)):
                    out.append(g)
    out.sort(key=lambda g: (g.x_part, g.y_part, g.z_part))
    return out


# ---------------------------------------------------------------------------
# kernel and independence verifications
# ---------------------------------------------------------------------------


def _degree_monomials(space: Space, r: int) -> list[Poly]:
    out = []
    for combo in itertools.combinations_with_replacement(range(space.nvars), r):
        m = [0] * space.nvars
        for pos in combo:
            m[pos] += 1
        out.append(Poly.monomial(space, m))
    return out


def _ideal_piece(space: Space, gens: list[Poly], degree: int) -> EchelonBasis:
    """Echelon basis of the degree-``degree`` piece of the ideal generated
    by homogeneous ``gens`` (generator times complementary monomial)."""
    basis = EchelonBasis(space)
    for g in gens:
        d = g.total_degree()
        if d > degree:
            continue
        for m in _degree_monomials(space, degree - d):
            basis.insert(g * m)
    return basis


def _kernel_basis(space: Space, domain: list[Poly], image_of) -> EchelonBasis:
    vectors = kernel_of_map(domain, image_of)
    basis = EchelonBasis(space)
    for vec in vectors:
        acc: dict = {}
        for idx, c in vec.items():
            for m, v in domain[idx].terms.items():
                s = acc.get(m, 0) + c * v
                if s:
                    acc[m] = s
                elif m in acc:
                    del acc[m]
        basis.insert(acc)
    return basis


def verify_minor2_kernel(cfg: Config, rmax: int) -> dict:
    """Degreewise check that ker phi_x = ker phi_y = the 2-minor ideal."""
    sp = restricted_ring(cfg)
    minors = minor_generators(sp, 2)
    per_degree = []
    for r in range(rmax + 1):
        domain = _degree_monomials(sp, r)
        ideal = _ideal_piece(sp, minors, r)
        kx = _kernel_basis(sp, domain, lambda p: phi_x(cfg, p))
        ky = _kernel_basis(sp, domain, lambda p: phi_y(cfg, p))
        per_degree.append(
            {
                "degree": r,
                "dim_domain": len(domain),
                "dim_kernel_x": kx.dim,
                "dim_kernel_y": ky.dim,
                "dim_ideal": ideal.dim,
                "equal": span_equal(kx, ideal) and span_equal(ky, ideal),
            }
        )
    return {
        "J1": list(cfg.J1),
        "J3": list(cfg.J3),
        "levels": per_degree,
        "all_equal": all(d["equal"] for d in per_degree),
    }


def verify_minor3_kernel(cfg: Config, kmax: int) -> dict:
    """Degreewise check that ker phi = the 3-minor ideal of the extended
    matrix."""
    sp = extended_ring(cfg)
    minors = minor_generators(sp, 3)
    per_degree = []
    for k in range(kmax + 1):
        domain = _degree_monomials(sp, k)
        ideal = _ideal_piece(sp, minors, k)
        kern = _kernel_basis(sp, domain, lambda p: phi(cfg, p))
        per_degree.append(
            {
                "degree": k,
                "dim_domain": len(domain),
                "dim_kernel": kern.dim,
                "dim_ideal": ideal.dim,
                "equal": span_equal(kern, ideal),
            }
        )
    return {
        "J1_ext": [0] + list(cfg.J1),
        "J3_ext": list(cfg.J3) + [cfg.n + 1],
        "levels": per_degree,
        "all_equal": all(d["equal"] for d in per_degree),
    }


def verify_gset_independence(cfg: Config, total_bound: int) -> dict:
    """rank(phi(G-set)) = |G-set| for every factor-count split and every
    index multiset pair within the bound."""
    sp = extended_ring(cfg)
    checked = 0
    nonempty = 0
    failures = []
    for total in range(1, total_bound + 1):
        for k1 in range(total + 1):
            for k2 in range(total - k1 + 1):
                k3 = total - k1 - k2
                for I1 in itertools.combinations_with_replacement(
                    cfg.J1, k1 + k3
                ):
                    for I3 in itertools.combinations_with_replacement(
                        cfg.J3, k2 + k3
                    ):
                        gset = enumerate_gset(cfg, k1, k2, k3, I1, I3)
                        checked += 1
                        if not gset:
                            continue
                        nonempty += 1
                        basis = EchelonBasis(xy_space(cfg.n))
                        rank = sum(
                            basis.insert(phi(cfg, g.to_poly(sp))) for g in gset
                        )
                        if rank != len(gset):
                            failures.append(
                                {
                                    "k": [k1, k2, k3],
                                    "I1": list(I1),
                                    "I3": list(I3),
                                    "rank": rank,
                                    "size": len(gset),
                                }
                            )
    return {
        "bound": total_bound,
        "tuples_checked": checked,
        "tuples_nonempty": nonempty,
        "failures": failures,
        "all_independent": not failures,
    }
