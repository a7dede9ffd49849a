"""The twisted oscillator representation of sl(n) on the xy polynomial ring.

Fixing 1 <= n1 <= n2 <= n splits the index range into three blocks
J1 = [1..n1], J2 = [n1+1..n2], J3 = [n2+1..n].  The representation acts by

    pi(E_ij) = X_ij - Y_ji

where X and Y are the block-dependent first/second order operators: on the
x side,

    X_ij = -x_j d_{x_i} - delta_ij   (i, j in J1)
    X_ij = d_{x_i} d_{x_j}           (i in J1, j beyond)
    X_ij = -x_i x_j                  (i beyond, j in J1)
    X_ij = x_i d_{x_j}               (i, j beyond J1)

and on the y side symmetrically with the split at n2:

    Y_ij = y_i d_{y_j}               (i, j in J1 u J2)
    Y_ij = -y_i y_j                  (i in J1 u J2, j in J3)
    Y_ij = d_{y_i} d_{y_j}           (i in J3, j in J1 u J2)
    Y_ij = -y_j d_{y_i} - delta_ij   (i, j in J3).

The Cartan generators h_r = E_rr - E_{r+1,r+1} act diagonally on monomials
(the constant shifts included), so weights are computed directly from
exponents.

The twisted Laplacian is

    L = sum_{i in J1} x_i d_{y_i} - sum_{r in J2} d_{x_r} d_{y_r}
        + sum_{s in J3} y_s d_{x_s},

and for n1 < n2 the projection T sends a monomial m to the terminating
series

    T(m) = sum_i (x_{n1+1} y_{n1+1})^i D^i (m)
                 / prod_{r=1..i} (a+r)(b+r),

where D = L + d_{x_{n1+1}} d_{y_{n1+1}} and a, b are the n1+1 exponents of
m.  T(m) is harmonic (killed by L) whenever a*b = 0.

Monomials carry a signed bidegree <l1, l2>: the x-variables over J1 and the
y-variables over J3 count -1, all others +1.  The weighted degree

    dfun(m) = 2*sum_{J3} alpha + sum_{J2} alpha + 2*sum_{J1} beta
              + sum_{J2} beta - (l1 + |l1| + l2 + |l2|)/2

measures filtration level; dprime(m) = sum_{J1} alpha is its analogue for
the all-positive regime with n2 = n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, Space, xy_space

# Generators are small tagged tuples:
#   ("e", i, j)  root vector E_ij, i != j
#   ("h", r)     Cartan element E_rr - E_{r+1,r+1}
Generator = tuple


@dataclass(frozen=True)
class Config:
    """Block parameters (n, n1, n2) and the signed bidegree (l1, l2)."""

    n: int
    n1: int
    n2: int
    l1: int = 0
    l2: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if not 1 <= self.n1 <= self.n2 <= self.n:
            raise ValueError("need 1 <= n1 <= n2 <= n")

    @property
    def space(self) -> Space:
        return xy_space(self.n)

    @property
    def J1(self) -> range:
        return range(1, self.n1 + 1)

    @property
    def J2(self) -> range:
        return range(self.n1 + 1, self.n2 + 1)

    @property
    def J3(self) -> range:
        return range(self.n2 + 1, self.n + 1)

    def short(self) -> str:
        return f"(n={self.n},n1={self.n1},n2={self.n2},l1={self.l1},l2={self.l2})"


def generators(n: int) -> list[Generator]:
    """Basis of sl(n): Cartan elements first, then root vectors by index."""
    gens: list[Generator] = [("h", r) for r in range(1, n)]
    gens += [("e", i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return gens


def generator_name(g: Generator) -> str:
    if g[0] == "h":
        return f"h{g[1]}"
    return f"E{g[1]}_{g[2]}"


# ---------------------------------------------------------------------------
# generator actions on raw term dicts (hot path)
# ---------------------------------------------------------------------------


def _add_term(out: dict, m: tuple, c) -> None:
    s = out.get(m, 0) + c
    if s:
        out[m] = s
    elif m in out:
        del out[m]


def _root_terms(cfg: Config, i: int, j: int, terms: dict) -> dict:
    """Terms of pi(E_ij) applied to a term dict (i != j)."""
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    xi, xj = i - 1, j - 1
    yi, yj = n + i - 1, n + j - 1
    out: dict = {}
    for m, c in terms.items():
        # x side, row i, column j
        if i <= n1:
            if j <= n1:  # -x_j d_{x_i}
                e = m[xi]
                if e:
                    t = list(m)
                    t[xi] -= 1
                    t[xj] += 1
                    _add_term(out, tuple(t), -e * c)
            else:  # d_{x_i} d_{x_j}
                e = m[xi] * m[xj]
                if e:
                    t = list(m)
                    t[xi] -= 1
                    t[xj] -= 1
                    _add_term(out, tuple(t), e * c)
        else:
            if j <= n1:  # -x_i x_j
                t = list(m)
                t[xi] += 1
                t[xj] += 1
                _add_term(out, tuple(t), -c)
            else:  # x_i d_{x_j}
                e = m[xj]
                if e:
                    t = list(m)
                    t[xj] -= 1
                    t[xi] += 1
                    _add_term(out, tuple(t), e * c)
        # y side, row j, column i, subtracted
        if j <= n2:
            if i <= n2:  # y_j d_{y_i}
                e = m[yi]
                if e:
                    t = list(m)
                    t[yi] -= 1
                    t[yj] += 1
                    _add_term(out, tuple(t), -e * c)
            else:  # -y_j y_i
                t = list(m)
                t[yj] += 1
                t[yi] += 1
                _add_term(out, tuple(t), c)
        else:
            if i <= n2:  # d_{y_j} d_{y_i}
                e = m[yj] * m[yi]
                if e:
                    t = list(m)
                    t[yj] -= 1
                    t[yi] -= 1
                    _add_term(out, tuple(t), -e * c)
            else:  # -y_i d_{y_j}
                e = m[yj]
                if e:
                    t = list(m)
                    t[yj] -= 1
                    t[yi] += 1
                    _add_term(out, tuple(t), e * c)
    return out


def diagonal_value(cfg: Config, r: int, m: tuple) -> int:
    """Eigenvalue of pi(E_rr) on the monomial m (constant shifts included)."""
    n = cfg.n
    a, b = m[r - 1], m[n + r - 1]
    if r <= cfg.n1:
        return -a - b - 1
    if r <= cfg.n2:
        return a - b
    return a + b + 1


def cartan_eigenvalue(cfg: Config, r: int, m: tuple) -> int:
    return diagonal_value(cfg, r, m) - diagonal_value(cfg, r + 1, m)


def _cartan_terms(cfg: Config, r: int, terms: dict) -> dict:
    out = {}
    for m, c in terms.items():
        e = cartan_eigenvalue(cfg, r, m)
        if e:
            out[m] = e * c
    return out


def apply_generator(cfg: Config, g: Generator, f: Poly) -> Poly:
    """Exact image of f under the representation of the generator g."""
    if f.space != cfg.space:
        raise ValueError("polynomial not in the xy space of this configuration")
    if g[0] == "h":
        r = g[1]
        if not 1 <= r <= cfg.n - 1:
            raise ValueError(f"Cartan index {r} out of range")
        return Poly(f.space, _cartan_terms(cfg, r, f.terms))
    _, i, j = g
    if i == j or not (1 <= i <= cfg.n and 1 <= j <= cfg.n):
        raise ValueError(f"root index pair ({i},{j}) out of range")
    return Poly(f.space, _root_terms(cfg, i, j, f.terms))


def apply_generator_terms(cfg: Config, g: Generator, terms: dict) -> dict:
    if g[0] == "h":
        return _cartan_terms(cfg, g[1], terms)
    return _root_terms(cfg, g[1], g[2], terms)


# ---------------------------------------------------------------------------
# Laplacian and the projection T
# ---------------------------------------------------------------------------


def _laplace_like_terms(cfg: Config, terms: dict, skip_mid: int | None) -> dict:
    """Apply sum_{J1} x_i d_{y_i} - sum_{J2} d_{x_r} d_{y_r} + sum_{J3} y_s d_{x_s},

    omitting the middle summand at index ``skip_mid`` when given.
    """
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    out: dict = {}
    for m, c in terms.items():
        for i in range(1, n1 + 1):
            e = m[n + i - 1]
            if e:
                t = list(m)
                t[n + i - 1] -= 1
                t[i - 1] += 1
                _add_term(out, tuple(t), e * c)
        for r in range(n1 + 1, n2 + 1):
            if r == skip_mid:
                continue
            e = m[r - 1] * m[n + r - 1]
            if e:
                t = list(m)
                t[r - 1] -= 1
                t[n + r - 1] -= 1
                _add_term(out, tuple(t), -e * c)
        for s in range(n2 + 1, n + 1):
            e = m[s - 1]
            if e:
                t = list(m)
                t[s - 1] -= 1
                t[n + s - 1] += 1
                _add_term(out, tuple(t), e * c)
    return out


def laplace(cfg: Config, f: Poly) -> Poly:
    """The twisted Laplacian; its kernel is the harmonic subspace."""
    return Poly(f.space, _laplace_like_terms(cfg, f.terms, None))


def project_T_monomial(cfg: Config, m: tuple) -> Poly:
    """Harmonic projection of a single monomial (requires n1 < n2).

    The defining series terminates because each application of the reduced
    operator strictly decreases sum_{J1} beta + sum_{J2'} alpha
    + sum_{J3} alpha.
    """
    if cfg.n1 >= cfg.n2:
        raise ValueError("projection T is defined only for n1 < n2")
    n, mid = cfg.n, cfg.n1 + 1
    xpos, ypos = mid - 1, n + mid - 1
    a, b = m[xpos], m[ypos]
    out = {m: Fraction(1)}
    cur = {m: 1}
    denom = 1
    i = 0
    while cur:
        i += 1
        cur = _laplace_like_terms(cfg, cur, mid)
        if not cur:
            break
        denom *= (a + i) * (b + i)
        for mm, cc in cur.items():
            t = list(mm)
            t[xpos] += i
            t[ypos] += i
            _add_term(out, tuple(t), Fraction(cc, denom))
    return Poly(cfg.space, out)


def project_T(cfg: Config, f: Poly) -> Poly:
    """Linear extension of the monomial projection."""
    out = Poly.zero(cfg.space)
    for m, c in f.terms.items():
        out = out + project_T_monomial(cfg, m).scale(c)
    return out


# ---------------------------------------------------------------------------
# gradings and degree functions
# ---------------------------------------------------------------------------


def grading(cfg: Config, m: tuple) -> tuple[int, int]:
    """Signed bidegree <l1, l2> of a monomial."""
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    l1 = sum(m[n1:n]) - sum(m[:n1])
    l2 = sum(m[n : n + n2]) - sum(m[n + n2 :])
    return (l1, l2)


def _dfun_offset(cfg: Config) -> int:
    l1, l2 = cfg.l1, cfg.l2
    return (l1 + abs(l1) + l2 + abs(l2)) // 2


def dfun_monomial(cfg: Config, m: tuple) -> int:
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    val = (
        2 * sum(m[n2:n])
        + sum(m[n1:n2])
        + 2 * sum(m[n : n + n1])
        + sum(m[n + n1 : n + n2])
    )
    return val - _dfun_offset(cfg)


def dfun(cfg: Config, f: Poly) -> int:
    """Weighted filtration degree: max over monomials, all in one bidegree."""
    if not f.terms:
        raise ValueError("degree of the zero polynomial is undefined")
    want = (cfg.l1, cfg.l2)
    best = None
    for m in f.terms:
        if grading(cfg, m) != want:
            raise ValueError(
                f"monomial outside the <{cfg.l1},{cfg.l2}> graded piece"
            )
        v = dfun_monomial(cfg, m)
        if best is None or v > best:
            best = v
    return best


def dprime(cfg: Config, f: Poly) -> int:
    """Max over monomials of the x-degree over the first block."""
    if not f.terms:
        raise ValueError("degree of the zero polynomial is undefined")
    return max(sum(m[: cfg.n1]) for m in f.terms)


# ---------------------------------------------------------------------------
# enumeration of constrained monomial levels
# ---------------------------------------------------------------------------


def _compositions(total: int, k: int):
    """All k-tuples of nonnegative integers summing to total."""
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def enumerate_block_sums(
    cfg: Config, a1: int, a2: int, a3: int, b1: int, b2: int, b3: int
) -> list[tuple]:
    """Monomials with prescribed per-block degree sums and a*b = 0 at n1+1.

    Sums (a1, a2, a3) constrain the x exponents over J1, J2, J3 and
    (b1, b2, b3) the y exponents; monomials where both n1+1 exponents are
    positive are excluded.  Deterministic order.
    """
    if min(a1, a2, a3, b1, b2, b3) < 0:
        return []
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    s1, s2, s3 = n1, n2 - n1, n - n2
    mid = 0  # position of x_{n1+1} within the J2 block
    out = []
    for xa in _compositions(a1, s1):
        for xb in _compositions(a2, s2):
            for xc in _compositions(a3, s3):
                for ya in _compositions(b1, s1):
                    for yb in _compositions(b2, s2):
                        if s2 and xb[mid] and yb[mid]:
                            continue
                        for yc in _compositions(b3, s3):
                            out.append(xa + xb + xc + ya + yb + yc)
    return out


def enumerate_TN_level(cfg: Config, k: int) -> list[tuple]:
    """All monomials of the <l1, l2> piece with dfun = k and a*b = 0 at n1+1.

    The four weighted budgets 2*a3 + a2 + 2*b1 + b2 = k + offset are
    enumerated exhaustively; the bidegree then pins a1 and b3.
    """
    if cfg.n1 >= cfg.n2:
        raise ValueError("TN levels require n1 < n2")
    target = k + _dfun_offset(cfg)
    if target < 0:
        return []
    out = []
    for a3 in range(target // 2 + 1):
        for b1 in range((target - 2 * a3) // 2 + 1):
            rem = target - 2 * a3 - 2 * b1
            for a2 in range(rem + 1):
                b2 = rem - a2
                a1 = a2 + a3 - cfg.l1
                b3 = b1 + b2 - cfg.l2
                if a1 < 0 or b3 < 0:
                    continue
                out.extend(enumerate_block_sums(cfg, a1, a2, a3, b1, b2, b3))
    return out


# ---------------------------------------------------------------------------
# weights and the irreducibility classifier
# ---------------------------------------------------------------------------


def weight(cfg: Config, f: Poly):
    """Cartan eigenvalue tuple of f, or None if f is not a weight vector.

    The Cartan generators act diagonally on monomials, so f is a
    simultaneous eigenvector iff all its monomials share every eigenvalue.
    """
    if not f.terms:
        raise ValueError("the zero polynomial has no weight")
    mons = iter(f.terms)
    first = next(mons)
    wt = tuple(cartan_eigenvalue(cfg, r, first) for r in range(1, cfg.n))
    for m in mons:
        for r in range(1, cfg.n):
            if cartan_eigenvalue(cfg, r, m) != wt[r - 1]:
                return None
    return wt


def highest_weight_formula(cfg: Config, m1: int, m2: int) -> tuple[int, ...]:
    """Predicted weight of x_{n1}^{m1} y_{n2+1}^{m2} in the negative regime.

    In fundamental-weight coordinates: m1 at n1-1, -(m1+1) at n1,
    -(m2+1) at n2, and m2 at n2+1 unless n2 = n-1.
    """
    coeffs = [0] * cfg.n  # slot r-1 holds the lambda_r coefficient
    if cfg.n1 - 1 >= 1:
        coeffs[cfg.n1 - 2] += m1
    coeffs[cfg.n1 - 1] += -(m1 + 1)
    coeffs[cfg.n2 - 1] += -(m2 + 1)
    if cfg.n2 + 1 <= cfg.n - 1:
        coeffs[cfg.n2] += m2
    return tuple(coeffs[: cfg.n - 1])


def classify_irreducible(cfg: Config) -> bool:
    """Decide whether the harmonic piece is infinite-dimensional irreducible.

    Literal decision table over (n1, n2, l1, l2); overlapping sub-cases are
    joined by logical or.
    """
    n, n1, n2, l1, l2 = cfg.n, cfg.n1, cfg.n2, cfg.l1, cfg.l2
    if n1 + 1 < n2:
        if l1 + l2 <= n1 - n2 + 1:
            return True
        if n2 == n and l1 >= 0 and l2 == 0:
            return True
        if n2 == n and l2 >= 0 and l1 >= n1 - n + 2:
            return True
        return False
    if n1 + 1 == n2:
        return l1 + l2 <= 0 or (n2 == n and 0 <= l2 <= l1)
    # n1 == n2
    if l1 + l2 > 0:
        return False
    if l2 <= 0 and n1 < n - 1 and n >= 3:
        return True
    if l1 <= 0 and 1 < n1 < n and n >= 3:
        return True
    if l1 <= 0 and l2 <= 0 and n1 == 1 and n == 2:
        return True
    return False


# ---------------------------------------------------------------------------
# structure constants (for bracket checks and symbol calculus)
# ---------------------------------------------------------------------------


def generator_matrix(g: Generator, n: int) -> dict:
    """The generator as a sparse matrix {(row, col): coeff}."""
    if g[0] == "h":
        r = g[1]
        return {(r, r): 1, (r + 1, r + 1): -1}
    return {(g[1], g[2]): 1}


def matrix_commutator(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, j), c1 in a.items():
        for (k, l), c2 in b.items():
            if j == k:
                _add_term(out, (i, l), c1 * c2)
            if l == i:
                _add_term(out, (k, j), -c1 * c2)
    return out


def matrix_to_generators(mat: dict, n: int) -> list[tuple]:
    """Express a traceless matrix in the generator basis as (coeff, gen)."""
    out = []
    diag = [0] * (n + 1)
    for (i, j), c in mat.items():
        if i == j:
            diag[i] = c
        elif c:
            out.append((c, ("e", i, j)))
    if sum(diag):
        raise ValueError("matrix is not traceless")
    acc = 0
    for r in range(1, n):
        acc += diag[r]
        if acc:
            out.append((acc, ("h", r)))
    return out


def commutator_in_basis(g: Generator, h: Generator, n: int) -> list[tuple]:
    return matrix_to_generators(
        matrix_commutator(generator_matrix(g, n), generator_matrix(h, n)), n
    )
