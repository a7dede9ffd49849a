"""Fraction-free exact linear algebra over spans of sparse polynomials.

An :class:`EchelonBasis` keeps a row-echelon presentation of a polynomial
span: one row per pivot (leading) monomial, rows stored as primitive
integer coefficient dictionaries.  Reduction uses integer
cross-multiplication with content stripping, which bounds coefficient
blowup without ever leaving exact arithmetic.  Rows are not inter-reduced
on insertion (that keeps them sparse); the fully reduced canonical rows,
which are independent of insertion order, are computed on demand by
``canonical_rows``.

``kernel_of_map`` performs the dual computation: exact row reduction of an
image matrix with combination tracking, emitting a basis of the kernel in
coefficient space.

Keys of the coefficient dictionaries are exponent tuples ordered by
graded lex; any equal-length int tuples work, which the annihilator module
uses to run the same machinery over symbol monomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .poly import Poly, Space, SpaceMismatchError, order_key


def _content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _primitive(row: dict, lead) -> dict:
    """Divide by the content and normalize the leading coefficient positive."""
    g = _content(row)
    if row[lead] < 0:
        g = -g
    if g != 1:
        row = {m: v // g for m, v in row.items()}
    return row


def _int_terms(terms: dict) -> tuple[dict, int]:
    """Clear denominators; returns (integer row, multiplier used)."""
    lcm = 1
    for c in terms.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            d = c.denominator
            lcm = lcm * d // gcd(lcm, d)
    if lcm == 1:
        return {m: int(c) for m, c in terms.items()}, 1
    return {m: int(c * lcm) for m, c in terms.items()}, lcm


def _eliminate(row: dict, pivot_row: dict, mon) -> dict:
    """Return lead*row - c*pivot_row scaled to kill ``mon`` (integer rows)."""
    c = row[mon]
    lead = pivot_row[mon]
    g = gcd(c, lead)
    mr = lead // g
    mp = c // g
    if mr == 1:
        out = dict(row)
    else:
        out = {m: mr * v for m, v in row.items()}
    for m, v in pivot_row.items():
        s = out.get(m, 0) - mp * v
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


class EchelonBasis:
    """A row-echelon basis of a span of polynomials in one space."""

    __slots__ = ("space", "rows")

    def __init__(self, space: Space | None):
        self.space = space
        self.rows: dict = {}  # pivot monomial -> primitive integer row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.space)
        other.rows = dict(self.rows)  # rows are never mutated in place
        return other

    def _reduce_leading(self, row: dict) -> dict:
        """Eliminate pivot monomials from the leading position downward.

        The result is zero iff the input lies in the span; otherwise its
        leading monomial is a fresh pivot.
        """
        rows = self.rows
        while row:
            lead = max(row, key=order_key)
            prow = rows.get(lead)
            if prow is None:
                return row
            row = _eliminate(row, prow, lead)
        return row

    def insert(self, p) -> bool:
        """Grow the span by ``p``; True iff the dimension increased.

        ``p`` may be a Poly or a raw coefficient dict.
        """
        if isinstance(p, Poly):
            if self.space is not None and p.space != self.space:
                raise SpaceMismatchError("inserting into a basis over another space")
            terms = p.terms
        else:
            terms = p
        if not terms:
            return False
        row, _ = _int_terms(terms)
        row = self._reduce_leading(row)
        if not row:
            return False
        lead = max(row, key=order_key)
        self.rows[lead] = _primitive(row, lead)
        return True

    def extend(self, polys: Iterable) -> int:
        added = 0
        for p in polys:
            if self.insert(p):
                added += 1
        return added

    def contains(self, p) -> bool:
        terms = p.terms if isinstance(p, Poly) else p
        if not terms:
            return True
        row, _ = _int_terms(terms)
        return not self._reduce_leading(row)

    def contains_span(self, other: "EchelonBasis") -> bool:
        return all(self.contains(row) for row in other.rows.values())

    def reduce_scaled(self, terms: dict) -> tuple[dict, int]:
        """Fraction-free normal form: (integer row r, scale s > 0) with
        r / s the unique representative of the coset having no pivot
        monomials.  Repeatedly eliminates the largest pivot monomial
        present; eliminations only introduce strictly smaller monomials,
        so the process terminates.
        """
        row, scale = _int_terms(terms)
        rows = self.rows
        while row:
            hits = [m for m in row if m in rows]
            if not hits:
                break
            mon = max(hits, key=order_key)
            c = row[mon]
            prow = rows[mon]
            lead = prow[mon]
            g = gcd(c, lead)
            mr, mp = lead // g, c // g
            if mr < 0:
                mr, mp = -mr, -mp
            if mr != 1:
                row = {m: mr * v for m, v in row.items()}
                scale *= mr
            for m, v in prow.items():
                s = row.get(m, 0) - mp * v
                if s:
                    row[m] = s
                elif m in row:
                    del row[m]
            if row:
                g = gcd(_content(row), scale)
                if g > 1:
                    row = {m: v // g for m, v in row.items()}
                    scale //= g
        return row, scale

    def reduce(self, p: Poly) -> Poly:
        """The unique normal form of ``p`` modulo the span (no rescaling)."""
        if self.space is not None and p.space != self.space:
            raise SpaceMismatchError("reducing against a basis over another space")
        row, scale = self.reduce_scaled(p.terms)
        if scale == 1:
            return Poly(self.space, row)
        return Poly(self.space, {m: Fraction(v, scale) for m, v in row.items()})

    def canonical_rows(self) -> list[dict]:
        """Fully inter-reduced primitive rows in decreasing pivot order.

        This reduced form depends only on the span, not on insertion
        order, and is the form used in dumps and golden comparisons.
        """
        pivots = sorted(self.rows, key=order_key)  # ascending
        reduced: dict = {}
        for piv in pivots:
            row = self.rows[piv]
            while True:
                hits = [m for m in row if m != piv and m in reduced]
                if not hits:
                    break
                for mon in sorted(hits, key=order_key, reverse=True):
                    if mon in row:
                        row = _eliminate(row, reduced[mon], mon)
            reduced[piv] = _primitive(row, piv)
        return [reduced[piv] for piv in reversed(pivots)]

    def sorted_rows(self) -> list:
        """Canonical rows as Polys, in decreasing pivot order."""
        return [Poly(self.space, row) for row in self.canonical_rows()]

    def __iter__(self):
        return iter(self.sorted_rows())

    def __repr__(self):
        return f"EchelonBasis(dim={self.dim})"


def span_equal(a: EchelonBasis, b: EchelonBasis) -> bool:
    """Exact two-sided span equality."""
    if a.dim != b.dim:
        return False
    return b.contains_span(a) and a.contains_span(b)


def echelon_from(space: Space | None, polys: Iterable) -> EchelonBasis:
    basis = EchelonBasis(space)
    basis.extend(polys)
    return basis


def kernel_of_columns(columns: Sequence[dict]) -> list[dict]:
    """Kernel of the matrix whose j-th column is ``columns[j]``.

    Columns are sparse dicts over equal-length tuple (or comparable) keys
    with int or Fraction values.  Returns primitive integer vectors c (as
    sparse dicts {column index: coeff}) with sum_j c_j col_j = 0, in a
    deterministic order, computed by exact row reduction with combination
    tracking.
    """
    pivots: dict = {}  # key -> (reduced column, tracking vector)
    kernel: list[dict] = []
    for idx, col in enumerate(columns):
        row, mult = _int_terms(col) if col else ({}, 1)
        track = {idx: mult}
        while row:
            lead = max(row, key=order_key)
            hit = pivots.get(lead)
            if hit is None:
                break
            prow, ptrack = hit
            c = row[lead]
            plead = prow[lead]
            g = gcd(c, plead)
            mr, mp = plead // g, c // g
            if mr != 1:
                row = {m: mr * v for m, v in row.items()}
                track = {m: mr * v for m, v in track.items()}
            for m, v in prow.items():
                s = row.get(m, 0) - mp * v
                if s:
                    row[m] = s
                elif m in row:
                    del row[m]
            for m, v in ptrack.items():
                s = track.get(m, 0) - mp * v
                if s:
                    track[m] = s
                elif m in track:
                    del track[m]
        if row:
            lead = max(row, key=order_key)
            g = gcd(_content(row), _content(track))
            if row[lead] < 0:
                g = -g
            if g != 1:
                row = {m: v // g for m, v in row.items()}
                track = {m: v // g for m, v in track.items()}
            pivots[lead] = (row, track)
        else:
            g = _content(track)
            if track[max(track)] < 0:
                g = -g
            if g != 1:
                track = {m: v // g for m, v in track.items()}
            kernel.append(track)
    return kernel


def kernel_of_map(
    domain: Sequence[Poly], image_of: Callable[[Poly], Poly]
) -> list[dict]:
    """Kernel of a linear map given by images of a finite domain basis.

    Returns primitive integer coefficient vectors c (as sparse dicts
    {domain index: coeff}) with image_of(sum c_i domain[i]) = 0.  The
    caller asserts linearity of ``image_of`` on the span.
    """
    return kernel_of_columns([image_of(b).terms for b in domain])
