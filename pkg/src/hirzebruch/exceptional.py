"""Exceptional bundles on F_0 and F_1: enumeration and stability intervals.

A potentially exceptional character (chi(v,v) = 1) of rank r with
c1 = aE + bF has Delta = 1/2 - 1/(2 r^2), gcd(r, a) = 1 (r odd when e is
even) and b determined mod r by

    2 a b = a^2 e + a e r - r^2 - 1  (mod 2r).

A potentially exceptional character is exceptional iff
Delta >= DLP^{<r}_{-K}(nu), decided by induction on the rank.  For an
exceptional bundle V of rank >= 2 the stability interval

    I_V = { m > 0 : V is mu_{H_m}-stable }

is the connected component of R_{>0} minus

    S_V = { m_{V,W} : W exceptional, r(W) < r(V), chi(W,V) > 0, m_{V,W} in I_W }

containing the anticanonical parameter 1 - e/2, where m_{V,W} = -y/x for
nu(V) - nu(W) = xE + yF.  Line-bundle sentinels bracket 1 - e/2, which cuts
the search for S_V down to a finite slope region.

Characters are normalized to the ranges 0 <= a < r/2, a <= b < r (e = 0,
using the fiber swap) and 0 <= a <= r/2, 0 <= b < r (e = 1), so tables are
reproducible byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from . import dlp
from .lattice import (
    ChernCharacter,
    DivisorClass,
    Rat,
    ceil_frac,
    check_surface,
    euler_pair,
    floor_frac,
    format_rational,
    hilbert_P,
    parse_rational,
)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError("expected an integer, got %s" % (x,))
    return x.numerator

Witness = Tuple[int, int, int]  # (rank, a, b)


class CacheError(RuntimeError):
    """Exceptional-table cache could not be read or written."""


def exceptional_delta(r: int) -> Fraction:
    return Fraction(1, 2) - Fraction(1, 2 * r * r)


def exceptional_character(r: int, a: int, b: int, e: int) -> ChernCharacter:
    """The unique character with chi(v,v) = 1, rank r and c1 = aE + bF."""
    c1 = DivisorClass(a, b)
    nu2 = Fraction(2 * a * b - e * a * a, r * r)
    ch2 = r * (nu2 / 2 - exceptional_delta(r))
    return ChernCharacter(r, c1, ch2)


@dataclass(frozen=True)
class ExceptionalRecord:
    r: int
    a: int
    b: int
    lo: Fraction                    # 0 allowed (F_1 left-blank rows)
    hi: Optional[Fraction]          # None = +infinity
    w0: Optional[Witness] = None
    w1: Optional[Witness] = None

    def delta(self) -> Fraction:
        return exceptional_delta(self.r)

    def character(self, e: int) -> ChernCharacter:
        return exceptional_character(self.r, self.a, self.b, e)

    def interval(self) -> Tuple[Fraction, Optional[Fraction]]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class ExceptionalTable:
    e: int
    max_rank: int
    records: Tuple[ExceptionalRecord, ...]

    def row(self, r: int, a: int, b: int) -> Optional[ExceptionalRecord]:
        for rec in self.records:
            if (rec.r, rec.a, rec.b) == (r, a, b):
                return rec
        return None


def is_stable_at(record: ExceptionalRecord, m: Rat) -> bool:
    """mu_{H_m}-stability: m strictly inside the open interval."""
    m = Fraction(m)
    if m <= record.lo:
        return False
    return record.hi is None or m < record.hi


# ---------------------------------------------------------------------------
# candidate enumeration

def solve_congruence_b(r: int, a: int, e: int) -> Optional[int]:
    """b in [0, r) with 2ab = a^2 e + a e r - r^2 - 1 (mod 2r), if solvable."""
    if r == 1:
        return 0
    if gcd(a, r) != 1:
        return None
    num = a * a * e + a * e * r - r * r - 1
    if num % 2 != 0:
        return None
    inv = pow(a, -1, r)
    b = (inv * (num // 2)) % r
    # the mod-r reduction is equivalent to the mod-2r congruence
    assert (2 * a * b - num) % (2 * r) == 0
    return b


def canonical_pair(r: int, a: int, b: int, e: int) -> Tuple[int, int]:
    """Normalize (a, b) mod twists, duals and (e=0) the fiber swap."""
    a %= r
    b %= r
    if r == 1:
        return (0, 0)
    cands = [(a, b), ((-a) % r, (-b) % r)]
    if e == 0:
        cands += [(b, a), ((-b) % r, (-a) % r)]
        ok = [c for c in cands if 2 * c[0] < r and c[0] <= c[1]]
    else:
        ok = [c for c in cands if 2 * c[0] <= r]
    if not ok:
        raise AssertionError("no canonical representative for (%d, %d, %d)" % (r, a, b))
    return min(ok)


def potential_characters(e: int, rmax: int) -> List[ChernCharacter]:
    """Canonical potentially exceptional characters of rank <= rmax."""
    check_surface(e)
    if e not in (0, 1):
        raise ValueError("enumerate on F_0 or F_1 (reduce e >= 2 first), got e=%d" % e)
    out = [exceptional_character(1, 0, 0, e)]
    for r in range(2, rmax + 1):
        if e == 0 and r % 2 == 0:
            continue
        seen = set()
        for a in range(1, r // 2 + 1):
            b = solve_congruence_b(r, a, e)
            if b is None:
                continue
            seen.add(canonical_pair(r, a, b, e))
        for a, b in sorted(seen):
            out.append(exceptional_character(r, a, b, e))
    return out


# ---------------------------------------------------------------------------
# exceptionality and stability intervals

def is_exceptional(v: ChernCharacter, e: int, table: Optional[ExceptionalTable] = None) -> bool:
    """Decide whether the potentially exceptional character v is exceptional.

    Criterion: Delta(v) >= DLP^{<r}_{-K}(nu(v)), all lower-rank exceptionals
    being anticanonically stable.  Raises on chi(v,v) != 1.
    """
    check_surface(e)
    if e not in (0, 1):
        raise ValueError("exceptionality is decided on F_0/F_1; reduce e >= 2 first")
    if euler_pair(v, v, e) != 1:
        raise ValueError("character is not potentially exceptional (chi(v,v) != 1)")
    if v.r == 1:
        return True
    if table is None or table.max_rank < v.r - 1:
        table = build_table(e, v.r - 1, base=table)
    anch = 1 - Fraction(e, 2)
    bound = dlp.dlp_below_rank(v.nu(), anch, e, v.r, table)
    return bound.value is None or v.delta(e) >= bound.value


def _variants(rec: ExceptionalRecord, e: int):
    """Slope classes of all bundles in rec's twist/dual/swap orbit, with intervals."""
    out = [((rec.a, rec.b), (rec.lo, rec.hi)), ((-rec.a, -rec.b), (rec.lo, rec.hi))]
    if e == 0:
        lo = Fraction(0) if rec.hi is None else 1 / rec.hi
        hi = None if rec.lo == 0 else 1 / rec.lo
        out += [((rec.b, rec.a), (lo, hi)), ((-rec.b, -rec.a), (lo, hi))]
    seen, uniq = set(), []
    for (a, b), iv in out:
        key = (Fraction(a, rec.r) % 1, Fraction(b, rec.r) % 1, iv)
        if key not in seen:
            seen.add(key)
            uniq.append(((a, b), iv))
    return uniq


def _in_open(m: Fraction, iv: Tuple[Fraction, Optional[Fraction]]) -> bool:
    lo, hi = iv
    return m > lo and (hi is None or m < hi)


def stability_interval(
    v: ChernCharacter, e: int, table: ExceptionalTable
) -> Tuple[Fraction, Fraction, Optional[Witness], Optional[Witness]]:
    """Stability interval (lo, hi) of an exceptional v of rank >= 2, with the
    destabilizing bundles (rank, c1) realizing each finite endpoint.

    Only the component of 1 - e/2 is certified: line-bundle sentinels M0, M1
    bracket it, and all exceptional walls inside (M0, M1) are enumerated over
    the bounded opposite-sign slope region.
    """
    r = v.r
    if r < 2:
        raise ValueError("stability_interval wants rank >= 2 (line bundles are always stable)")
    if table.max_rank < r - 1:
        raise ValueError("table must cover ranks < %d" % r)
    nu = v.nu()
    eps, phi = nu.a, nu.b
    if eps.denominator == 1 or phi.denominator == 1:
        raise ValueError("exceptional slopes of rank >= 2 have non-integral coordinates")
    dv = v.delta(e)
    anch = 1 - Fraction(e, 2)

    walls = {}

    def record_wall(m: Fraction, wit: Witness) -> None:
        if m == anch:
            raise AssertionError("anticanonical stability violated at %s by %r" % (m, wit))
        if m not in walls or wit < walls[m]:
            walls[m] = wit

    # upper sentinel: vertical strip x in (-1,0), y > 0
    xv = eps - ceil_frac(eps)
    y = phi - floor_frac(phi)
    while True:
        if hilbert_P(DivisorClass(xv, y), e) > dv and -y / xv > anch:
            m1_sent = -y / xv
            record_wall(m1_sent, (1, _as_int(eps - xv), _as_int(phi - y)))
            break
        y += 1
    # lower sentinel: horizontal strip (e = 0 only; 0 works for e = 1)
    if e == 0:
        yh = phi - ceil_frac(phi)
        x = eps - floor_frac(eps)
        while True:
            if hilbert_P(DivisorClass(x, yh), e) > dv and -yh / x < 1:
                m0_sent = -yh / x
                record_wall(m0_sent, (1, _as_int(eps - x), _as_int(phi - yh)))
                break
            x += 1
    else:
        m0_sent = Fraction(0)

    contributors = [((1, 0, 0), (Fraction(0), None), Fraction(0))]
    for rec in table.records:
        if rec.r == 1 or rec.r >= r:
            continue
        for (a, b), iv in _variants(rec, e):
            contributors.append(((rec.r, a, b), iv, rec.delta()))

    for (rw, na, nb), iv, dw in contributors:
        sa, sb = Fraction(na, rw), Fraction(nb, rw)
        tx = eps - sa
        ty = phi - sb
        # vertical strip: x in (-1, 0), y in (m0|x|, m1|x|)
        x = tx - ceil_frac(tx)
        if x != 0:
            y_lo = m0_sent * (-x)
            y_hi = m1_sent * (-x)
            base = ty - floor_frac(ty - y_lo)
            yy = base if base > y_lo else base + 1
            while yy < y_hi:
                m = -yy / x
                if hilbert_P(DivisorClass(x, yy), e) > dv + dw and _in_open(m, iv):
                    record_wall(m, (rw, _as_int(rw * (eps - x)), _as_int(rw * (phi - yy))))
                yy += 1
        # horizontal strip: y in (-1, 0), x in (|y|/m1, |y|/m0)
        yh = ty - ceil_frac(ty)
        if yh != 0:
            x_lo = (-yh) / m1_sent
            if m0_sent > 0:
                x_hi = (-yh) / m0_sent
            else:
                x_hi = 2 * (yh + 1)  # P > 0 forces this when e = 1
            base = tx - floor_frac(tx - x_lo)
            xx = base if base > x_lo else base + 1
            while xx < x_hi:
                m = -yh / xx
                if hilbert_P(DivisorClass(xx, yh), e) > dv + dw and _in_open(m, iv):
                    record_wall(m, (rw, _as_int(rw * (eps - xx)), _as_int(rw * (phi - yh))))
                xx += 1

    below = [m for m in walls if m < anch]
    above = [m for m in walls if m > anch]
    if not above:
        raise AssertionError("no upper wall found; sentinel construction is broken")
    hi = min(above)
    lo = max(below) if below else Fraction(0)
    w0 = walls[lo] if lo > 0 else None
    w1 = walls[hi]
    return lo, hi, w0, w1


def build_table(e: int, rmax: int, base: Optional[ExceptionalTable] = None) -> ExceptionalTable:
    """Complete table of exceptional bundles of rank <= rmax with intervals.

    Deterministic; staged by rank since DLP^{<r} needs all lower ranks.  An
    existing table is extended rather than recomputed.
    """
    check_surface(e)
    if e not in (0, 1):
        raise ValueError("tables exist for F_0 and F_1; reduce e >= 2 first")
    if rmax < 1:
        raise ValueError("rmax must be >= 1")
    records: List[ExceptionalRecord] = []
    done = 0
    if base is not None:
        if base.e != e:
            raise ValueError("base table is for a different surface")
        records = list(base.records)
        done = base.max_rank
    if done < 1:
        records.append(ExceptionalRecord(1, 0, 0, Fraction(0), None))
        done = 1
    anch = 1 - Fraction(e, 2)
    for r in range(done + 1, rmax + 1):
        if e == 0 and r % 2 == 0:
            continue
        partial = ExceptionalTable(e, r - 1, tuple(records))
        pairs = set()
        for a in range(1, r // 2 + 1):
            b = solve_congruence_b(r, a, e)
            if b is not None:
                pairs.add(canonical_pair(r, a, b, e))
        for a, b in sorted(pairs):
            v = exceptional_character(r, a, b, e)
            bound = dlp.dlp_below_rank(v.nu(), anch, e, r, partial)
            if bound.value is not None and v.delta(e) < bound.value:
                continue
            lo, hi, w0, w1 = stability_interval(v, e, partial)
            records.append(ExceptionalRecord(r, a, b, lo, hi, w0, w1))
    records.sort(key=lambda rec: (rec.r, rec.a, rec.b))
    return ExceptionalTable(e, max(rmax, done), tuple(records))


# ---------------------------------------------------------------------------
# cache format: one JSON object per line

def record_to_json(rec: ExceptionalRecord, e: int) -> str:
    obj = {
        "e": e,
        "r": rec.r,
        "a": rec.a,
        "b": rec.b,
        "lo": format_rational(rec.lo),
        "hi": format_rational(rec.hi),
        "w0": list(rec.w0) if rec.w0 else None,
        "w1": list(rec.w1) if rec.w1 else None,
    }
    return json.dumps(obj, separators=(", ", ": "))


def record_from_json(line: str) -> Tuple[int, ExceptionalRecord]:
    obj = json.loads(line)
    hi = None if obj["hi"] == "inf" else parse_rational(obj["hi"])
    rec = ExceptionalRecord(
        int(obj["r"]),
        int(obj["a"]),
        int(obj["b"]),
        parse_rational(obj["lo"]),
        hi,
        tuple(obj["w0"]) if obj.get("w0") else None,
        tuple(obj["w1"]) if obj.get("w1") else None,
    )
    return int(obj["e"]), rec


def save_table(table: ExceptionalTable, path: str) -> None:
    try:
        with open(path, "w") as fh:
            for rec in table.records:
                fh.write(record_to_json(rec, table.e) + "\n")
    except OSError as exc:
        raise CacheError("cannot write cache %s: %s" % (path, exc))


def load_table(path: str, e: int) -> ExceptionalTable:
    """Load a cache; raises CacheError on unreadable or inconsistent content."""
    try:
        with open(path) as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        raise CacheError("cannot read cache %s: %s" % (path, exc))
    records = []
    try:
        for ln in lines:
            ee, rec = record_from_json(ln)
            if ee != e:
                raise ValueError("row for e=%d in a cache opened for e=%d" % (ee, e))
            records.append(rec)
    except (ValueError, KeyError, TypeError) as exc:
        raise CacheError("corrupt cache %s: %s" % (path, exc))
    if not records:
        raise CacheError("cache %s is empty" % path)
    records.sort(key=lambda rec: (rec.r, rec.a, rec.b))
    covered = max(rec.r for rec in records)
    return ExceptionalTable(e, covered, tuple(records))
