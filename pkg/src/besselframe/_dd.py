"""Double-double arithmetic and the pure-Python series kernel.

A double-double number is a pair ``(hi, lo)`` of floats with ``|lo| <= ulp(hi)/2``
representing ``hi + lo`` (about 106 bits). Only the handful of operations the
series kernel needs are provided.
"""

_SPLIT = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def two_prod(a, b):
    p = a * b
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e += t
    s, e = fast_two_sum(s, e)
    e += f
    return fast_two_sum(s, e)


def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e += ah * bl + al * bh
    return fast_two_sum(p, e)


def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = dd_mul(q1, 0.0, bh, bl)
    rh, rl = dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = dd_mul(q2, 0.0, bh, bl)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = fast_two_sum(q1, q2)
    return dd_add(q1, q2, q3, 0.0)


def dd(x):
    """Promote a float to a double-double pair."""
    return (float(x), 0.0)


def add(a, b):
    return dd_add(a[0], a[1], b[0], b[1])


def sub(a, b):
    return dd_add(a[0], a[1], -b[0], -b[1])


def mul(a, b):
    return dd_mul(a[0], a[1], b[0], b[1])


def div(a, b):
    return dd_div(a[0], a[1], b[0], b[1])


def neg(a):
    return (-a[0], -a[1])


def to_float(a):
    return a[0] + a[1]


def hyp_sum(zh, zl, th, tl, num, den, tol, rel, max_terms):
    """Sum ``t_0 + t_1 + ...`` where ``t_{k+1} = t_k * z * prod(k+b) / prod(k+a)``.

    ``num`` and ``den`` are flat tuples ``(hi0, lo0, hi1, lo1, ...)`` of the
    parameters ``b`` and ``a``. Summation stops at the first omitted index ``K``
    once every factor is positive from ``K`` on, the uniform ratio bound
    ``rho_K`` is below one, and the tail bound (``|t_K|`` for ``z < 0``,
    ``t_K / (1 - rho_K)`` for ``z > 0``) is at most ``tol/2`` (times ``|S|`` when
    ``rel``).

    Returns ``(s_hi, s_lo, tail_bound, terms_used, weighted_abs)``;
    ``terms_used`` is ``-1`` when ``max_terms`` is exhausted. ``weighted_abs`` is
    ``sum (k+1)|t_k|``, the input of the caller's rounding bound.
    """
    nb = len(num) // 2
    na = len(den) // 2
    npair = nb if nb < na else na
    sh = 0.0
    sl = 0.0
    wabs = 0.0
    azh = abs(zh) * (1.0 + 1e-15)
    for k in range(max_terms):
        sh, sl = dd_add(sh, sl, th, tl)
        wabs += (k + 1) * abs(th)
        fk = float(k)
        rh, rl = zh, zl
        for i in range(nb):
            fh, fl = dd_add(fk, 0.0, num[2 * i], num[2 * i + 1])
            rh, rl = dd_mul(rh, rl, fh, fl)
        qh, ql = 1.0, 0.0
        for j in range(na):
            fh, fl = dd_add(fk, 0.0, den[2 * j], den[2 * j + 1])
            qh, ql = dd_mul(qh, ql, fh, fl)
        rh, rl = dd_div(rh, rl, qh, ql)
        th, tl = dd_mul(th, tl, rh, rl)
        if th == 0.0:
            return sh, sl, 0.0, k + 1, wabs
        kk = float(k + 1)
        rho = azh
        ok = True
        for i in range(npair):
            fb = kk + num[2 * i]
            fa = kk + den[2 * i]
            if fb <= 0.0 or fa <= 0.0:
                ok = False
                break
            if fb > fa:
                rho *= fb / fa
        if not ok or nb > na:
            continue
        for j in range(npair, na):
            fa = kk + den[2 * j]
            if fa <= 0.0:
                ok = False
                break
            rho /= fa
        rho *= 1.0 + 1e-14
        if not ok or rho >= 1.0:
            continue
        at = abs(th)
        bound = at if zh < 0.0 else at / (1.0 - rho)
        thr = 0.5 * tol * (abs(sh) if rel else 1.0)
        if bound <= thr:
            return sh, sl, bound * (1.0 + 1e-15), k + 1, wabs
    return sh, sl, float("inf"), -1, wabs
