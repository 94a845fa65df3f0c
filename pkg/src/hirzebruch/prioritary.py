"""Existence of F- and H_n-prioritary sheaves on F_e.

For an integral character v = (r, nu, Delta) with Delta >= 0 and
nu = eps E + phi F, the stack of F- and H_n-prioritary sheaves is nonempty
exactly when chi(v(-L_0 - H_n)) <= 0, where

    psi = phi + e (ceil(eps) - eps)/2 - Delta / (eps - floor(eps)),
    L_0 = ceil(eps) E + ceil(psi) F.

Equivalently Delta >= delta_n^p(nu), a sharp threshold computed from the
direct sum O(-E+(n-1)F)^A + O^B + O(-F)^C whose slope matches nu after
normalizing nu by twists and duals into the triangle with vertices
(-1, n-1), (0, 0), (0, -1).  Integral eps is degenerate: every n works.

Also here: Gaeta resolution exponents relative to L_0, the generic
prioritary index, and the Betti numbers of a general prioritary sheaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .lattice import (
    ChernCharacter,
    DivisorClass,
    E,
    F,
    IntegralityError,
    canonical_divisor,
    ceil_frac,
    check_surface,
    euler_char,
    floor_frac,
    line_bundle,
    polarization_divisor,
    serre_dual,
    twist,
)


class BogomolovViolation(ValueError):
    """Operation requires Delta >= 0."""


@dataclass(frozen=True)
class GaetaExponents:
    alpha: int
    beta: int
    gamma: int
    delta: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class PrioritaryReport:
    l0: DivisorClass
    psi: Optional[Fraction]          # None when eps is an integer
    rho_gen: Optional[int]           # None encodes +infinity
    degenerate_epsilon: bool
    zero_discriminant: bool
    e: int
    nu: DivisorClass

    def delta_p_at(self, n: int) -> Fraction:
        return delta_p(self.nu, n, self.e)


def _require_delta(v: ChernCharacter, e: int) -> Fraction:
    d = v.delta(e)
    if d < 0:
        raise BogomolovViolation("Delta = %s < 0" % (d,))
    return d


def l0_and_psi(v: ChernCharacter, e: int):
    """Return (L_0, psi, degenerate) for v; psi is None when eps is integral.

    In the degenerate case L_0 = eps E + ceil(phi - Delta) F, the largest
    F-coefficient keeping chi(v(-L_0)) > 0, matching the generic rule.
    """
    check_surface(e)
    d = _require_delta(v, e)
    nu = v.nu()
    eps, phi = nu.a, nu.b
    if eps.denominator == 1:
        b0 = ceil_frac(phi - d)
        return DivisorClass(eps, b0), None, True
    psi = phi + Fraction(e, 2) * (ceil_frac(eps) - eps) - d / (eps - floor_frac(eps))
    return DivisorClass(ceil_frac(eps), ceil_frac(psi)), psi, False


def bracket_points(v: ChernCharacter, e: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """Lattice points (a0,b0) = L_0 and (a1,b1) = -L_0(Serre dual of v).

    (a0,b0) sits just below the left hyperbola branch of chi(v(-L_{a,b})) = 0
    and (a1,b1) just above the right one; the prioritary bound reads
    n <= b1 - b0 - e - 1.
    """
    l0, _, degenerate = l0_and_psi(v, e)
    if degenerate:
        raise ValueError("bracket points need non-integral eps")
    l0d, _, _ = l0_and_psi(serre_dual(v, e), e)
    return (int(l0.a), int(l0.b)), (int(-l0d.a), int(-l0d.b))


def gaeta_exponents(v: ChernCharacter, e: int) -> GaetaExponents:
    """Euler-characteristic exponents of the L_0-resolution of a general sheaf.

    alpha = -chi(v(-L0-E-F)), beta = -chi(v(-L0-E)), gamma = -chi(v(-L0-F)),
    delta = chi(v(-L0)); when alpha >= 0 these are the ranks in
    0 -> L0(-E-(e+1)F)^alpha -> L0(-E-eF)^beta + L0(-F)^gamma + L0^delta -> V -> 0.
    """
    l0, _, _ = l0_and_psi(v, e)

    def chi_tw(shift: DivisorClass) -> int:
        c = euler_char(twist(v, -(l0 + shift), e), e)
        if c.denominator != 1:
            raise ValueError("character is not integral")
        return int(c)

    return GaetaExponents(
        alpha=-chi_tw(E + F),
        beta=-chi_tw(E),
        gamma=-chi_tw(F),
        delta=chi_tw(DivisorClass(0, 0)),
    )


def gaeta_character(exps: GaetaExponents, l0: DivisorClass, e: int) -> ChernCharacter:
    """K-class beta ch(L0(-E-eF)) + gamma ch(L0(-F)) + delta ch(L0) - alpha ch(L0(-E-(e+1)F))."""
    t = lambda d: line_bundle(l0 + d, e)
    out = t(-E - DivisorClass(0, e)).scale(exps.beta)
    out = out + t(-F).scale(exps.gamma) + t(DivisorClass(0, 0)).scale(exps.delta)
    return out - t(-E - DivisorClass(0, e + 1)).scale(exps.alpha)


def prioritary_nonempty(v: ChernCharacter, n: int, e: int) -> bool:
    """Is the stack of F- and H_n-prioritary sheaves of character v nonempty?

    True iff Delta >= 0 and chi(v(-L_0 - H_n)) <= 0; integral eps always
    passes, and Delta < 0 always fails (Bogomolov).
    """
    check_surface(e)
    if not isinstance(n, int):
        raise ValueError("prioritary index must be an integer, got %r" % (n,))
    if v.delta(e) < 0:
        return False
    l0, _, degenerate = l0_and_psi(v, e)
    if degenerate:
        return True
    hn = polarization_divisor(n, e)
    return euler_char(twist(v, -(l0 + hn), e), e) <= 0


def generic_prioritary_index(v: ChernCharacter, e: int) -> Optional[int]:
    """Largest n with an F- and H_n-prioritary sheaf of character v; None = +inf.

    For non-integral eps this is
    floor(Delta/((ceil eps - eps)(eps - floor eps)) - e/2 + 1 - (ceil psi - psi)).
    """
    check_surface(e)
    d = _require_delta(v, e)
    nu = v.nu()
    eps = nu.a
    if eps.denominator == 1:
        return None
    _, psi, _ = l0_and_psi(v, e)
    gap = (ceil_frac(eps) - eps) * (eps - floor_frac(eps))
    return floor_frac(d / gap - Fraction(e, 2) + 1 - (ceil_frac(psi) - psi))


def prioritary_report(v: ChernCharacter, e: int) -> PrioritaryReport:
    d = _require_delta(v, e)
    l0, psi, degenerate = l0_and_psi(v, e)
    return PrioritaryReport(
        l0=l0,
        psi=psi,
        rho_gen=generic_prioritary_index(v, e),
        degenerate_epsilon=degenerate,
        zero_discriminant=(d == 0),
        e=e,
        nu=v.nu(),
    )


# ---------------------------------------------------------------------------
# the sharp prioritary discriminant bound delta_n^p

def _normalize_into_triangle(eps: Fraction, phi: Fraction, n: int) -> Tuple[Fraction, Fraction]:
    # Move (eps, phi) by integer twists and/or dualization into the closed
    # triangle with vertices (-1, n-1), (0, 0), (0, -1).  A sign always works:
    # the two phi-windows have lengths frac(eps) and 1 - frac(eps) and are
    # complementary closed arcs mod 1.
    for sigma in (1, -1):
        et = sigma * eps
        pt = sigma * phi
        et = et - ceil_frac(et)  # in (-1, 0)
        lo = -1 - n * et
        hi = -(n - 1) * et
        t = ceil_frac(lo - pt)
        if pt + t <= hi:
            return et, pt + t
    raise AssertionError("triangle normalization failed for (%s, %s)" % (eps, phi))


def delta_p(nu: DivisorClass, n: int, e: int) -> Fraction:
    """Sharp lower bound on Delta for F- and H_n-prioritary sheaves of slope nu.

    Computed from the triangle construction: with (eps, phi) normalized into
    the triangle, barycentric weights l1 = -eps, l3 = -((n-1)eps + phi),
    l2 = 1 - l1 - l3 give delta_n^p = max(l1 (l2 (e+2n-2) + l3 (e+2n))/2, 0).
    Invariant under twists and duals of nu; zero for integral eps.
    """
    check_surface(e)
    if not isinstance(n, int):
        raise ValueError("prioritary index must be an integer, got %r" % (n,))
    eps, phi = Fraction(nu.a), Fraction(nu.b)
    if eps.denominator == 1:
        return Fraction(0)
    et, pt = _normalize_into_triangle(eps, phi, n)
    l1 = -et
    l3 = -((n - 1) * et + pt)
    l2 = 1 - l1 - l3
    assert l1 > 0 and l2 >= 0 and l3 >= 0
    value = l1 * (l2 * (e + 2 * n - 2) + l3 * (e + 2 * n)) / 2
    return max(value, Fraction(0))


# ---------------------------------------------------------------------------
# Betti numbers of the general prioritary sheaf

def _h0_line(a: int, b: int, e: int) -> int:
    # h^0(O(aE+bF)) via pushforward to P^1: sum of h^0(O_{P^1}(b - ie)).
    if a < 0:
        return 0
    return sum(max(b - i * e + 1, 0) for i in range(a + 1))


def _rank_one_cohomology(v: ChernCharacter, e: int) -> Tuple[int, int, int]:
    # General rank-1 sheaf = O(c1) tensor the ideal of Delta general points.
    n = v.delta(e)
    if n.denominator != 1 or n < 0:
        raise ValueError("rank-1 character must have integral Delta >= 0")
    n = int(n)
    a, b = int(v.c1.a), int(v.c1.b)
    k = canonical_divisor(e)
    h0 = max(_h0_line(a, b, e) - n, 0)
    h2 = _h0_line(int(k.a) - a, int(k.b) - b, e)
    chi = int(euler_char(v, e))
    h1 = h0 + h2 - chi
    assert h1 >= 0
    return (h0, h1, h2)


def general_cohomology(v: ChernCharacter, e: int) -> Tuple[int, int, int]:
    """Betti numbers (h0, h1, h2) of a general prioritary sheaf of character v.

    Requires v integral with r >= 1 and Delta >= 0.  Cases on nu.F: at -1 only
    h1 survives; above -1, h2 = 0 and h0 is found after repeatedly twisting by
    -E while nu.E < -1; below -1 (rank >= 2) Serre duality swaps h0 and h2.
    """
    check_surface(e)
    if v.r < 1:
        raise ValueError("general_cohomology needs positive rank")
    if not v.is_integral(e):
        raise IntegralityError("character %r is not integral" % (v,))
    d = v.delta(e)
    if d < 0:
        raise BogomolovViolation("Delta = %s < 0" % (d,))
    if v.r == 1:
        return _rank_one_cohomology(v, e)
    nu = v.nu()
    nu_dot_f = nu.a
    chi = euler_char(v, e)
    assert chi.denominator == 1
    chi = int(chi)
    if nu_dot_f < -1:
        h0, h1, h2 = general_cohomology(serre_dual(v, e), e)
        return (h2, h1, h0)
    if nu_dot_f == -1:
        return (0, -chi, 0)
    w = v
    while True:
        nw = w.nu()
        if nw.a <= -1:          # nu.F <= -1: no sections
            h0 = 0
            break
        if -e * nw.a + nw.b >= -1:  # nu.E >= -1: at most one nonzero group
            cw = euler_char(w, e)
            h0 = max(int(cw), 0)
            break
        w = twist(w, -E, e)     # h^0 is unchanged by this twist here
    return (h0, h0 - chi, 0)
