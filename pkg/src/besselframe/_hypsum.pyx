# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernel; mirrors ``besselframe._dd.hyp_sum`` operation for operation."""

from libc.math cimport fabs, INFINITY

cdef enum:
    MAXP = 8


cdef inline void _two_sum(double a, double b, double* s, double* e) nogil:
    cdef double bb
    s[0] = a + b
    bb = s[0] - a
    e[0] = (a - (s[0] - bb)) + (b - bb)


cdef inline void _fast_two_sum(double a, double b, double* s, double* e) nogil:
    s[0] = a + b
    e[0] = b - (s[0] - a)


cdef inline void _two_prod(double a, double b, double* p, double* e) nogil:
    cdef double c, ah, al, bh, bl
    p[0] = a * b
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    e[0] = ((ah * bh - p[0]) + ah * bl + al * bh) + al * bl


cdef inline void _dd_add(double ah, double al, double bh, double bl,
                         double* rh, double* rl) nogil:
    cdef double s, e, t, f
    _two_sum(ah, bh, &s, &e)
    _two_sum(al, bl, &t, &f)
    e += t
    _fast_two_sum(s, e, &s, &e)
    e += f
    _fast_two_sum(s, e, rh, rl)


cdef inline void _dd_mul(double ah, double al, double bh, double bl,
                         double* rh, double* rl) nogil:
    cdef double p, e
    _two_prod(ah, bh, &p, &e)
    e += ah * bl + al * bh
    _fast_two_sum(p, e, rh, rl)


cdef inline void _dd_div(double ah, double al, double bh, double bl,
                         double* rh, double* rl) nogil:
    cdef double q1, q2, q3, ph, pl, xh, xl
    q1 = ah / bh
    _dd_mul(q1, 0.0, bh, bl, &ph, &pl)
    _dd_add(ah, al, -ph, -pl, &xh, &xl)
    q2 = xh / bh
    _dd_mul(q2, 0.0, bh, bl, &ph, &pl)
    _dd_add(xh, xl, -ph, -pl, &xh, &xl)
    q3 = xh / bh
    _fast_two_sum(q1, q2, &q1, &q2)
    _dd_add(q1, q2, q3, 0.0, rh, rl)


def hyp_sum(double zh, double zl, double th, double tl, tuple num, tuple den,
            double tol, bint rel, int max_terms):
    cdef double nh[MAXP]
    cdef double nl[MAXP]
    cdef double ah[MAXP]
    cdef double al[MAXP]
    cdef int nb = len(num) // 2
    cdef int na = len(den) // 2
    cdef int npair, i, j, k
    cdef double sh = 0.0, sl = 0.0, wabs = 0.0, azh
    cdef double rh, rl, qh, ql, fh, fl, fk, kk, rho, fb, fa, at, bound, thr
    cdef bint ok
    if nb > MAXP or na > MAXP:
        raise ValueError("too many series parameters")
    for i in range(nb):
        nh[i] = num[2 * i]
        nl[i] = num[2 * i + 1]
    for j in range(na):
        ah[j] = den[2 * j]
        al[j] = den[2 * j + 1]
    npair = nb if nb < na else na
    azh = fabs(zh) * (1.0 + 1e-15)
    for k in range(max_terms):
        _dd_add(sh, sl, th, tl, &sh, &sl)
        wabs += (k + 1) * fabs(th)
        fk = <double>k
        rh = zh
        rl = zl
        for i in range(nb):
            _dd_add(fk, 0.0, nh[i], nl[i], &fh, &fl)
            _dd_mul(rh, rl, fh, fl, &rh, &rl)
        qh = 1.0
        ql = 0.0
        for j in range(na):
            _dd_add(fk, 0.0, ah[j], al[j], &fh, &fl)
            _dd_mul(qh, ql, fh, fl, &qh, &ql)
        _dd_div(rh, rl, qh, ql, &rh, &rl)
        _dd_mul(th, tl, rh, rl, &th, &tl)
        if th == 0.0:
            return sh, sl, 0.0, k + 1, wabs
        kk = <double>(k + 1)
        rho = azh
        ok = True
        for i in range(npair):
            fb = kk + nh[i]
            fa = kk + ah[i]
            if fb <= 0.0 or fa <= 0.0:
                ok = False
                break
            if fb > fa:
                rho *= fb / fa
        if not ok or nb > na:
            continue
        for j in range(npair, na):
            fa = kk + ah[j]
            if fa <= 0.0:
                ok = False
                break
            rho /= fa
        rho *= 1.0 + 1e-14
        if not ok or rho >= 1.0:
            continue
        at = fabs(th)
        bound = at if zh < 0.0 else at / (1.0 - rho)
        thr = 0.5 * tol * (fabs(sh) if rel else 1.0)
        if bound <= thr:
            return sh, sl, bound * (1.0 + 1e-15), k + 1, wabs
    return sh, sl, INFINITY, -1, wabs
