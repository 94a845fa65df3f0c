"""Walk through the two Kronecker wall-crossing stories on F_0 and F_1.

An orthogonal pair (K, L) built from an exceptional collection ties in
H_m-slope at a unique wall m_V.  Just past the wall the general sheaf of
character v = ch K + ch L has Harder-Narasimhan factors exactly (ch K, ch L),
so no semistable sheaves exist there even though the rank-bounded
Drezet-Le Potier bound would still allow them: the sharp threshold exceeds
every exceptional-bundle bound, and on the triangle of such slopes it is
given by a closed formula.
"""

from hirzebruch import (
    KroneckerParams,
    build_table,
    delta_closed_form,
    delta_estimate,
    dlp_below_rank,
    hn_generic,
    kronecker_characters,
    moduli_nonempty,
    wall_crossing_epsilon,
    wall_m_v,
)


def fmt(v, e):
    a, b = int(v.c1.a), int(v.c1.b)
    return "(r=%d, c1=%dE%+dF, Delta=%s)" % (v.r, a, b, v.delta(e))


def story(params):
    e = params.e
    k, l, v = kronecker_characters(params)
    m = wall_m_v(params)
    eps = wall_crossing_epsilon(params)
    table = build_table(e, v.r - 1)
    print(f"\n=== F_{e}, ell = {params.ell}, exponents (a,b,c,d) = "
          f"({params.a},{params.b},{params.c},{params.d}) ===")
    print("extension character K =", fmt(k, e))
    print("cokernel  character L =", fmt(l, e))
    print("sum       character v =", fmt(v, e))
    print("slopes tie at the wall m_V =", m)
    dec = hn_generic(v, m + eps, e)
    print(f"filtration at m_V + {eps}: ",
          " > ".join(fmt(f, e) for f in dec.factors))
    print("verdict just past the wall:", moduli_nonempty(v, m + eps, e).verdict)
    dlp = dlp_below_rank(v.nu(), m, e, v.r, table).value
    bracket = delta_estimate(v.nu(), m, e, v.r, table)
    closed = delta_closed_form(v.nu(), m, e, params.ell)
    print(f"DLP^{{<{v.r}}} at the wall = {dlp}, but the sharp threshold is "
          f"{closed} (estimator upper bound {bracket.upper})")


if __name__ == "__main__":
    story(KroneckerParams(0, 3, 1, 1, 2, 15))
    story(KroneckerParams(1, 3, 1, 1, 2, 13))
