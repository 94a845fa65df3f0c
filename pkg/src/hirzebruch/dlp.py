"""Drezet-Le Potier bounding functions on F_0 and F_1.

A mu_H-stable sheaf W whose H_m-slope differs from that of a stable
exceptional bundle V by at most -K.H_m/2 = m + e/2 + 1 satisfies
Delta(W) >= DLP_{H_m,V}(nu(W)) where, with d = nu - nu(V),

    DLP_{H_m,V}(nu) = P(d)  - Delta(V)   if  d.H_m < 0,
                      P(-d) - Delta(V)   if  d.H_m > 0,
                      max of the two     if  d.H_m = 0  (soft convention).

DLP^{<r} takes the maximum over all mu_{H_m}-stable exceptional bundles of
rank < r inside the strip; DLP^1 restricts to line bundles.  The supremum is
an honest maximum: any contribution >= c > 0 forces the fiber component of d
into (-X, X) with X = max(1, 2/(2m+e)), which makes the twist search finite.

Polarizations with e >= 2 are rejected here; reduce to F_0/F_1 first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple

from .lattice import (
    ChernCharacter,
    DivisorClass,
    Rat,
    ceil_frac,
    check_polarization,
    floor_frac,
    hilbert_P,
)


@dataclass(frozen=True)
class DlpValue:
    """A DLP bound: `value` is None for an empty supremum (think -infinity).

    The witness (rank, a, b) is the twisted exceptional attaining the value;
    `equal_slope` marks a maximum reached on the d.H_m = 0 branch away from
    nu = nu(V), where the defining convention is soft.
    """

    value: Optional[Fraction]
    witness: Optional[Tuple[int, int, int]] = None
    equal_slope: bool = False

    def is_finite(self) -> bool:
        return self.value is not None


class InsufficientTable(ValueError):
    """The exceptional table does not cover the requested ranks."""


def _check_del_pezzo(e: int) -> None:
    if e not in (0, 1):
        raise ValueError(
            "DLP functions are only computed on F_0 and F_1 (got e=%r); "
            "translate e >= 2 queries through the reduction map first" % (e,)
        )


def strip_halfwidth(m: Rat, e: int) -> Fraction:
    """-(1/2) K . H_m = m + e/2 + 1."""
    return Fraction(m) + Fraction(e, 2) + 1


def dlp_single(v: ChernCharacter, nu: DivisorClass, m: Rat, e: int) -> Optional[Fraction]:
    """DLP_{H_m, v}(nu); None when nu is outside the strip of v."""
    _check_del_pezzo(e)
    m = check_polarization(m)
    d = nu - v.nu()
    t = d.hm_degree(m)
    s = strip_halfwidth(m, e)
    if abs(t) > s:
        return None
    dv = v.delta(e)
    if t < 0:
        return hilbert_P(d, e) - dv
    if t > 0:
        return hilbert_P(-d, e) - dv
    return max(hilbert_P(d, e), hilbert_P(-d, e)) - dv


class _Contributor:
    """A slope class of stable exceptionals: base slope mod Z^2 plus data."""

    __slots__ = ("rank", "na", "nb", "delta", "lo", "hi")

    def __init__(self, rank, na, nb, delta, lo, hi):
        self.rank = rank
        self.na = Fraction(na)
        self.nb = Fraction(nb)
        self.delta = Fraction(delta)
        self.lo = lo        # Fraction (0 allowed)
        self.hi = hi        # Fraction or None (= +infinity)

    def stable_at(self, m: Fraction) -> bool:
        if m <= self.lo:
            return False
        return self.hi is None or m < self.hi


def _line_contributor() -> _Contributor:
    return _Contributor(1, 0, 0, Fraction(0), Fraction(0), None)


def _swap_interval(lo: Fraction, hi: Optional[Fraction]) -> Tuple[Fraction, Optional[Fraction]]:
    # F_0 fiber swap sends H_m to a multiple of H_{1/m}.
    new_lo = Fraction(0) if hi is None else 1 / hi
    new_hi = None if lo == 0 else 1 / lo
    return new_lo, new_hi


def _contributors(table, e: int, below_rank: int) -> List[_Contributor]:
    if table is None:
        raise InsufficientTable("an exceptional table is required for rank bounds > 2")
    if getattr(table, "e", e) != e:
        raise ValueError("table is for e=%r, query is for e=%r" % (table.e, e))
    if table.max_rank < below_rank - 1:
        raise InsufficientTable(
            "table covers ranks <= %d but DLP^{<%d} needs %d"
            % (table.max_rank, below_rank, below_rank - 1)
        )
    out = []
    seen = set()
    for rec in table.records:
        if rec.r == 1 or rec.r >= below_rank:
            continue
        r = rec.r
        dv = rec.delta()
        variants = [((rec.a, rec.b), (rec.lo, rec.hi)), ((-rec.a, -rec.b), (rec.lo, rec.hi))]
        if e == 0:
            swapped = _swap_interval(rec.lo, rec.hi)
            variants += [((rec.b, rec.a), swapped), ((-rec.b, -rec.a), swapped)]
        for (a, b), (lo, hi) in variants:
            na, nb = Fraction(a, r), Fraction(b, r)
            key = (r, na - floor_frac(na), nb - floor_frac(nb), lo, hi)
            if key in seen:
                continue
            seen.add(key)
            out.append(_Contributor(r, na, nb, dv, lo, hi))
    return out


def _offsets(nu: DivisorClass, con: _Contributor, m: Fraction, e: int) -> Iterator[Tuple[Fraction, Fraction]]:
    # All d = nu - (twist of con) with |d.H_m| <= s and fiber part in [-X, X];
    # anything scoring above the always-positive base value lies in this box.
    s = strip_halfwidth(m, e)
    X = max(Fraction(1), Fraction(2, 1) / (2 * m + e))
    x0 = nu.a - con.na
    y0 = nu.b - con.nb
    for kx in range(ceil_frac(-X - x0), floor_frac(X - x0) + 1):
        x = x0 + kx
        y_lo = -s - x * m
        y_hi = s - x * m
        for ky in range(ceil_frac(y_lo - y0), floor_frac(y_hi - y0) + 1):
            yield x, y0 + ky


def _scan(nu: DivisorClass, contributors: Iterable[_Contributor], m: Fraction, e: int) -> DlpValue:
    best: Optional[Fraction] = None
    best_wit: Optional[Tuple[int, int, int]] = None
    best_eq = False
    for con in contributors:
        if not con.stable_at(m):
            continue
        for x, y in _offsets(nu, con, m, e):
            t = x * m + y
            equal = False
            if t < 0:
                val = hilbert_P(DivisorClass(x, y), e) - con.delta
            elif t > 0:
                val = hilbert_P(DivisorClass(-x, -y), e) - con.delta
            else:
                val = max(hilbert_P(DivisorClass(x, y), e), hilbert_P(DivisorClass(-x, -y), e)) - con.delta
                equal = (x, y) != (0, 0)
            wa = con.rank * (nu.a - x)
            wb = con.rank * (nu.b - y)
            assert wa.denominator == 1 and wb.denominator == 1
            wit = (con.rank, wa.numerator, wb.numerator)
            if best is None or val > best:
                best, best_wit, best_eq = val, wit, equal
            elif val == best and wit < best_wit:
                best_wit, best_eq = wit, equal
    return DlpValue(best, best_wit, best_eq)


def dlp_line_bundles(nu: DivisorClass, m: Rat, e: int) -> DlpValue:
    """DLP^1_{H_m}(nu): the line-bundle-only bound (always finite)."""
    _check_del_pezzo(e)
    m = check_polarization(m)
    return _scan(nu, [_line_contributor()], m, e)


def dlp_below_rank(nu: DivisorClass, m: Rat, e: int, r: int, table=None) -> DlpValue:
    """DLP^{<r}_{H_m}(nu) over mu_{H_m}-stable exceptionals of rank < r.

    `table` must cover ranks < r (only consulted when r > 2).  Returns an
    empty DlpValue when r <= 1.
    """
    _check_del_pezzo(e)
    m = check_polarization(m)
    if not isinstance(r, int) or r < 1:
        raise ValueError("rank cutoff must be a positive integer")
    if r == 1:
        return DlpValue(None)
    contributors = [_line_contributor()]
    if r > 2:
        contributors += _contributors(table, e, r)
    return _scan(nu, contributors, m, e)


def dlp_grid(
    e: int,
    m: Rat,
    square: Tuple[Rat, Rat, Rat, Rat],
    steps: int,
    rank_cutoff: int,
    table=None,
    jobs: int = 1,
    with_witnesses: bool = False,
):
    """Row-major grid of DLP^{<rank_cutoff} values over a slope square.

    `square` is (eps0, eps1, phi0, phi1); `steps` subdivisions give steps+1
    samples per axis (steps = 0 samples the single corner).  Rows follow eps.
    """
    _check_del_pezzo(e)
    m = check_polarization(m)
    if steps < 0:
        raise ValueError("steps must be >= 0")
    e0, e1, p0, p1 = (Fraction(t) for t in square)
    if steps == 0:
        eps_vals, phi_vals = [e0], [p0]
    else:
        eps_vals = [e0 + (e1 - e0) * Fraction(i, steps) for i in range(steps + 1)]
        phi_vals = [p0 + (p1 - p0) * Fraction(j, steps) for j in range(steps + 1)]

    def row(ev: Fraction):
        return [dlp_below_rank(DivisorClass(ev, pv), m, e, rank_cutoff, table) for pv in phi_vals]

    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, eps_vals))
    else:
        rows = [row(ev) for ev in eps_vals]
    if with_witnesses:
        return eps_vals, phi_vals, rows
    return eps_vals, phi_vals, [[cell.value for cell in r] for r in rows]
