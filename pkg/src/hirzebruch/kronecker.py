"""Orthogonal Kronecker pairs and the closed-form sharp Bogomolov value.

Fix e in {0, 1} and an integer ell >= 3, and put k = ell - e,
N = 2(k-1) + e, M = 2(ell+1) - e.  From the exceptional collection
O(-E-ell F), O, O(F), O(E-(ell-1-e)F) build

    0 -> O(E-(k-1)F)^b -> K -> O(F)^a -> 0        (extension)
    0 -> O(-E-ell F)^c -> O^d -> L -> 0           (cokernel)

with positive integers a, b, c, d subject to

    psi_N^{-1} < b/a < psi_N,   2 ell - e + 1 < d/c < psi_M,

where psi_N = (N + sqrt(N^2-4))/2.  Then chi(K, L) = 0, and at the unique
wall m_V in (1 - e/2, k) where the H_m-slopes of K and L agree, the sum
character v = k + l has generic H_{m_V + eps}-filtration exactly (k, l).

On the triangle R spanned by the slope segments of the two families, the
sharp threshold for mu_{H_m}-stable sheaves of slope nu = (x0, y0) is the
closed rational expression implemented by `delta_closed_form`.

psi_N and psi_M are never evaluated as radicals: every comparison is a sign
test of p + q sqrt(D) (or its biquadratic analogue) in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .lattice import (
    ChernCharacter,
    DivisorClass,
    E,
    F,
    Rat,
    euler_pair,
    line_bundle,
    mu,
)


class KroneckerDomainError(ValueError):
    """Parameters or slopes outside the admissible Kronecker region."""


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_with_sqrt(p: Fraction, q: Fraction, D: int) -> int:
    """Exact sign of p + q*sqrt(D) for an integer D >= 0."""
    if D < 0:
        raise ValueError("negative radicand")
    if q == 0 or D == 0:
        return _sign(p)
    if p == 0:
        return _sign(q)
    sp, sq = _sign(p), _sign(q)
    if sp == sq:
        return sp
    t = p * p - q * q * D
    if t == 0:
        return 0
    return sp if t > 0 else sq


def _sign_biquadratic(g0, g1, h0, h1, A: int, B: int) -> int:
    """Exact sign of (g0 + g1 sqrt(A)) + (h0 + h1 sqrt(A)) sqrt(B)."""
    sG = sign_with_sqrt(g0, g1, A)
    if h0 == 0 and h1 == 0:
        return sG
    sH = sign_with_sqrt(h0, h1, A)
    if sH == 0:
        return sG
    if sG == 0:
        return sH
    if sG == sH:
        return sG
    # opposite signs: compare G^2 with H^2 B inside Q(sqrt A)
    k0 = g0 * g0 + g1 * g1 * A - (h0 * h0 + h1 * h1 * A) * B
    k1 = 2 * g0 * g1 - 2 * h0 * h1 * B
    sK = sign_with_sqrt(k0, k1, A)
    if sK == 0:
        return 0
    return sG if sK > 0 else sH


def in_psi_interval(q: Fraction, n: int) -> bool:
    """q in (psi_N^{-1}, psi_N), tested as q^2 - N q + 1 < 0."""
    return q * q - n * q + 1 < 0


@dataclass(frozen=True)
class KroneckerParams:
    e: int
    ell: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.e not in (0, 1):
            raise KroneckerDomainError("e must be 0 or 1")
        if self.ell < 3:
            raise KroneckerDomainError("ell must be at least 3")
        if min(self.a, self.b, self.c, self.d) < 1:
            raise KroneckerDomainError("exponents a, b, c, d must be positive")

    @property
    def k(self) -> int:
        return self.ell - self.e

    @property
    def n_arrows(self) -> int:
        return 2 * (self.k - 1) + self.e

    @property
    def m_arrows(self) -> int:
        return 2 * (self.ell + 1) - self.e

    def is_admissible(self) -> bool:
        ba = Fraction(self.b, self.a)
        dc = Fraction(self.d, self.c)
        return (
            in_psi_interval(ba, self.n_arrows)
            and dc > 2 * self.ell - self.e + 1
            and in_psi_interval(dc, self.m_arrows)
        )

    def require_admissible(self) -> None:
        if not self.is_admissible():
            raise KroneckerDomainError("parameters %r are not admissible" % (self,))


def kronecker_characters(p: KroneckerParams) -> Tuple[ChernCharacter, ChernCharacter, ChernCharacter]:
    """Characters (k, l, v = k + l) of the extension, the cokernel and their sum."""
    p.require_admissible()
    e, ell, k = p.e, p.ell, p.k
    k_char = line_bundle(E - F.scale(k - 1), e).scale(p.b) + line_bundle(F, e).scale(p.a)
    l_char = line_bundle(DivisorClass(0, 0), e).scale(p.d) - line_bundle(-E - F.scale(ell), e).scale(p.c)
    assert euler_pair(k_char, l_char, e) == 0
    return k_char, l_char, k_char + l_char


def wall_m_v(p: KroneckerParams) -> Fraction:
    """The unique m with mu_{H_m}(K) = mu_{H_m}(L); lies in (1 - e/2, k)."""
    p.require_admissible()
    k_char, l_char, _ = kronecker_characters(p)
    # both slopes are linear in m: solve a1 m + b1 = a2 m + b2 over the rationals
    a1 = Fraction(k_char.c1.a, k_char.r)
    b1 = Fraction(k_char.c1.b, k_char.r)
    a2 = Fraction(l_char.c1.a, l_char.r)
    b2 = Fraction(l_char.c1.b, l_char.r)
    m = (b2 - b1) / (a1 - a2)
    anch = 1 - Fraction(p.e, 2)
    assert anch < m < p.k, "wall %s escaped (1 - e/2, k)" % (m,)
    assert m < wall_m_l(p)
    assert mu(k_char, m) == mu(l_char, m)
    return m


def wall_m_l(p: KroneckerParams) -> Fraction:
    """m_L = d/c - ell - 1, where O(F) starts destabilizing the cokernel."""
    return Fraction(p.d, p.c) - p.ell - 1


# ---------------------------------------------------------------------------
# the triangle R and the closed form

@dataclass(frozen=True)
class TriangleR:
    """Region of slopes covered by the construction, vertices P2, P3, P4.

    Two sides are rational (y = ell x through P3, P4 and y = -k x + 1 through
    P2, P4); the third joins P2 and P3 with quadratic-irrational coordinates,
    so membership of a rational point is a biquadratic sign test.
    """

    e: int
    ell: int

    def __post_init__(self):
        if self.e not in (0, 1):
            raise KroneckerDomainError("e must be 0 or 1")
        if self.ell < 3:
            raise KroneckerDomainError("ell must be at least 3")

    @property
    def k(self) -> int:
        return self.ell - self.e

    def _side_p2p3_sign(self, x0: Fraction, y0: Fraction) -> int:
        # Orientation sign of nu against the line P2 P3, cleared of the
        # denominators (1+u)(w-1) > 0 where u = psi_N, w = psi_M:
        #   D = A + B u + C w + D uw  with the coefficients below.
        k, ell = self.k, self.ell
        n, mm = 2 * (k - 1) + self.e, 2 * (ell + 1) - self.e
        ca = y0 - (ell + 1) * x0 - 1
        cb = 2 * y0 + (k - 1) * (1 + x0) + ell * (1 - x0)
        cc = x0
        cd = -(y0 + (k - 1) * x0)
        # substitute u = (n + sqrt(n^2-4))/2, w = (mm + sqrt(mm^2-4))/2
        alpha = ca + Fraction(cb * n, 2) + Fraction(cc * mm, 2) + Fraction(cd * n * mm, 4)
        beta = Fraction(cb, 2) + Fraction(cd * mm, 4)
        gamma = Fraction(cc, 2) + Fraction(cd * n, 4)
        delta = Fraction(cd, 4)
        return _sign_biquadratic(alpha, beta, gamma, delta, n * n - 4, mm * mm - 4)

    def contains(self, nu: DivisorClass, closed: bool = False) -> bool:
        x0, y0 = Fraction(nu.a), Fraction(nu.b)
        t1 = y0 - self.ell * x0
        t2 = y0 + self.k * x0 - 1
        side = self._side_p2p3_sign(x0, y0)
        p4 = DivisorClass(Fraction(1, self.k + self.ell), Fraction(self.ell, self.k + self.ell))
        ref = self._side_p2p3_sign(p4.a, p4.b)
        assert ref != 0
        if closed:
            return t1 <= 0 and t2 <= 0 and (side == 0 or side == ref)
        return t1 < 0 and t2 < 0 and side == ref


def delta_closed_form(nu: DivisorClass, m: Rat, e: int, ell: int) -> Fraction:
    """Sharp Bogomolov value delta_m(nu) for nu in R when the slope -m line
    through nu crosses both open construction segments.

    Raises KroneckerDomainError when the geometric preconditions fail.
    """
    tri = TriangleR(e, ell)
    k = tri.k
    m = Fraction(m)
    x0, y0 = Fraction(nu.a), Fraction(nu.b)
    if m == k:
        raise KroneckerDomainError("the slope -m line is parallel to the K-side")
    x1 = (y0 + m * x0 - 1) / (m - k)
    x2 = (y0 + m * x0) / (m + ell)
    if x1 == 1:
        raise KroneckerDomainError("degenerate intersection with the K-segment")
    q1 = x1 / (1 - x1)
    if not in_psi_interval(q1, 2 * (k - 1) + e):
        raise KroneckerDomainError("line misses the open extension segment")
    if x2 <= 0:
        raise KroneckerDomainError("line misses the open cokernel segment")
    q2 = (1 + x2) / x2
    if not (q2 > 2 * ell - e + 1 and in_psi_interval(q2, 2 * (ell + 1) - e)):
        raise KroneckerDomainError("line misses the open cokernel segment")
    if x1 == x2:
        raise KroneckerDomainError("degenerate crossing")
    lam = (x0 - x2) / (x1 - x2)
    if not 0 < lam < 1:
        raise KroneckerDomainError("slope lies outside the triangle on this line")
    s = k + ell
    value = (
        -Fraction(e, 2) * x0 * x0
        + x0 * y0
        + Fraction(y0, s)
        + (ell - Fraction(1, 2) - Fraction(e, 2) - Fraction(e, 2 * s)) * x0
        + (m - k) * (y0 - ell * x0) / (s * s * (y0 + m * x0 - Fraction(m + ell, s)))
    )
    return value


def params_for_slope(nu: DivisorClass, m: Rat, e: int, ell: int) -> KroneckerParams:
    """Smallest positive-integer parameters realizing the wall m at slope nu."""
    tri = TriangleR(e, ell)
    k = tri.k
    m = Fraction(m)
    x0, y0 = Fraction(nu.a), Fraction(nu.b)
    if m == k:
        raise KroneckerDomainError("the slope -m line is parallel to the K-side")
    ba = -(y0 + m * x0 - 1) / (y0 + m * x0 + k - m - 1)
    dc = (y0 + m * x0 + m + ell) / (y0 + m * x0)
    p = KroneckerParams(
        e,
        ell,
        a=ba.denominator,
        b=ba.numerator,
        c=dc.denominator,
        d=dc.numerator,
    )
    p.require_admissible()
    return p


def wall_crossing_epsilon(p: KroneckerParams, max_exponent: int = 9) -> Fraction:
    """Largest eps = 10^-j (j <= max_exponent) for which the engine confirms the
    generic H_{m_V + eps}-filtration (k, l); the chosen eps is part of the
    reported result."""
    from .existence import hn_generic

    k_char, l_char, v_char = kronecker_characters(p)
    m_v = wall_m_v(p)
    for j in range(1, max_exponent + 1):
        eps = Fraction(1, 10 ** j)
        dec = hn_generic(v_char, m_v + eps, p.e)
        if dec is not None and dec.factors == (k_char, l_char):
            return eps
    raise KroneckerDomainError(
        "no eps of the form 10^-j (j <= %d) confirms the wall crossing" % max_exponent
    )
