# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice row sums in double-double (~106-bit) arithmetic.

Same contract as ``_lattice_py.many_row_sums``; offsets arrive as
``(re_hi, re_lo, im_hi, im_lo)`` tuples already centred on the nearest
integer, results leave in the same form.  Must not be built with
-ffast-math or FP contraction: the error-free transforms rely on IEEE
rounding of every operation.
"""


cdef struct dd:
    double hi
    double lo

cdef struct cdd:
    dd re
    dd im

cdef enum:
    MAXTERMS = 24


cdef inline dd two_sum(double a, double b) noexcept nogil:
    cdef dd r
    cdef double s = a + b
    cdef double bb = s - a
    r.hi = s
    r.lo = (a - (s - bb)) + (b - bb)
    return r


cdef inline dd quick_two_sum(double a, double b) noexcept nogil:
    cdef dd r
    cdef double s = a + b
    r.hi = s
    r.lo = b - (s - a)
    return r


cdef inline dd dd_add(dd a, dd b) noexcept nogil:
    cdef dd s = two_sum(a.hi, b.hi)
    cdef dd t = two_sum(a.lo, b.lo)
    s.lo += t.hi
    s = quick_two_sum(s.hi, s.lo)
    s.lo += t.lo
    return quick_two_sum(s.hi, s.lo)


cdef inline dd dd_neg(dd a) noexcept nogil:
    cdef dd r
    r.hi = -a.hi
    r.lo = -a.lo
    return r


cdef inline dd dd_sub(dd a, dd b) noexcept nogil:
    return dd_add(a, dd_neg(b))


cdef inline dd split(double a) noexcept nogil:
    # Dekker split; software fma is far slower without -mfma
    cdef dd r
    cdef double t = 134217729.0 * a
    r.hi = t - (t - a)
    r.lo = a - r.hi
    return r


cdef inline dd two_prod(double a, double b) noexcept nogil:
    cdef dd r
    cdef dd x = split(a)
    cdef dd y = split(b)
    r.hi = a * b
    r.lo = ((x.hi * y.hi - r.hi) + x.hi * y.lo + x.lo * y.hi) + x.lo * y.lo
    return r


cdef inline dd dd_mul(dd a, dd b) noexcept nogil:
    cdef dd p = two_prod(a.hi, b.hi)
    p.lo += a.hi * b.lo + a.lo * b.hi
    return quick_two_sum(p.hi, p.lo)


cdef inline dd dd_mul_d(dd a, double b) noexcept nogil:
    cdef dd p = two_prod(a.hi, b)
    p.lo += a.lo * b
    return quick_two_sum(p.hi, p.lo)


cdef inline dd dd_div(dd a, dd b) noexcept nogil:
    cdef double q1 = a.hi / b.hi
    cdef dd r = dd_sub(a, dd_mul_d(b, q1))
    cdef double q2 = r.hi / b.hi
    r = dd_sub(r, dd_mul_d(b, q2))
    cdef double q3 = r.hi / b.hi
    cdef dd q = quick_two_sum(q1, q2)
    return dd_add(q, dd_from(q3))


cdef inline dd dd_from(double x) noexcept nogil:
    cdef dd r
    r.hi = x
    r.lo = 0.0
    return r


cdef inline cdd c_add(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = dd_add(a.re, b.re)
    r.im = dd_add(a.im, b.im)
    return r


cdef inline cdd c_sub(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = dd_sub(a.re, b.re)
    r.im = dd_sub(a.im, b.im)
    return r


cdef inline cdd c_mul(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im))
    r.im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))
    return r


cdef inline cdd c_scale(cdd a, dd s) noexcept nogil:
    cdef cdd r
    r.re = dd_mul(a.re, s)
    r.im = dd_mul(a.im, s)
    return r


cdef inline cdd c_recip(cdd a) noexcept nogil:
    cdef dd n = dd_add(dd_mul(a.re, a.re), dd_mul(a.im, a.im))
    cdef dd inv = dd_div(dd_from(1.0), n)
    cdef cdd r
    r.re = dd_mul(a.re, inv)
    r.im = dd_neg(dd_mul(a.im, inv))
    return r


cdef inline cdd c_real(double x) noexcept nogil:
    cdef cdd r
    r.re = dd_from(x)
    r.im = dd_from(0.0)
    return r


cdef inline cdd c_ipow(cdd a, int n) noexcept nogil:
    cdef cdd r = c_real(1.0)
    cdef int i
    for i in range(n):
        r = c_mul(r, a)
    return r


cdef cdd hurwitz_tail(int s, cdd a, dd* coeffs, int nterms) noexcept nogil:
    # zeta(s, a) ~ a^(1-s)/(s-1) + a^-s/2 + sum_j c_j a^(-s-2j+1)
    cdef cdd r = c_recip(a)
    cdef cdd r2 = c_mul(r, r)
    cdef cdd acc = c_real(0.0)
    cdef cdd lead
    cdef int j
    for j in range(nterms - 1, -1, -1):
        acc = c_mul(acc, r2)
        acc.re = dd_add(acc.re, coeffs[j])
    acc = c_mul(acc, r)
    lead = c_scale(a, dd_div(dd_from(1.0), dd_from(s - 1)))
    lead.re = dd_add(lead.re, dd_from(0.5))
    return c_mul(c_ipow(r, s), c_add(lead, acc))


cdef void row(cdd w0, int N, bint exclude_zero, dd* c2, dd* c3, dd* c4, dd* c6,
              int nterms, cdd* out) noexcept nogil:
    cdef cdd s2 = c_real(0.0)
    cdef cdd s3 = c_real(0.0)
    cdef cdd s4 = c_real(0.0)
    cdef cdd s6 = c_real(0.0)
    cdef cdd t, t2, t4, lo, hi
    cdef int m
    for m in range(-N, N + 1):
        if exclude_zero and m == 0:
            continue
        t = c_recip(c_sub(w0, c_real(<double>m)))
        t2 = c_mul(t, t)
        t4 = c_mul(t2, t2)
        s2 = c_add(s2, t2)
        s3 = c_add(s3, c_mul(t2, t))
        s4 = c_add(s4, t4)
        s6 = c_add(s6, c_mul(t4, t2))
    lo = c_sub(c_real(<double>(N + 1)), w0)
    hi = c_add(c_real(<double>(N + 1)), w0)
    s2 = c_add(s2, c_add(hurwitz_tail(2, lo, c2, nterms), hurwitz_tail(2, hi, c2, nterms)))
    s3 = c_add(s3, c_sub(hurwitz_tail(3, hi, c3, nterms), hurwitz_tail(3, lo, c3, nterms)))
    s4 = c_add(s4, c_add(hurwitz_tail(4, lo, c4, nterms), hurwitz_tail(4, hi, c4, nterms)))
    s6 = c_add(s6, c_add(hurwitz_tail(6, lo, c6, nterms), hurwitz_tail(6, hi, c6, nterms)))
    out[0] = s2
    out[1] = s3
    out[2] = s4
    out[3] = s6


cdef cdd _unpack(tuple t):
    cdef cdd r
    r.re.hi = t[0]
    r.re.lo = t[1]
    r.im.hi = t[2]
    r.im.lo = t[3]
    return r


cdef tuple _pack(cdd z):
    return (z.re.hi, z.re.lo, z.im.hi, z.im.lo)


def many_row_sums(list offsets, int N, object exclude_zero_at, list coefficients):
    """Row sums ``(S_2, S_3, S_4, S_6)`` for each centred offset.

    ``coefficients`` holds four lists (s = 2, 3, 4, 6) of ``(hi, lo)``
    Euler-Maclaurin coefficients.
    """
    cdef dd tables[4][MAXTERMS]
    cdef int nterms = len(coefficients[0])
    cdef int i, j
    cdef cdd out[4]
    cdef cdd w0
    cdef int skip = -1 if exclude_zero_at is None else exclude_zero_at
    if nterms > MAXTERMS:
        raise ValueError("too many Euler-Maclaurin terms")
    for i in range(4):
        for j in range(nterms):
            tables[i][j].hi = coefficients[i][j][0]
            tables[i][j].lo = coefficients[i][j][1]
    result = []
    for i in range(len(offsets)):
        w0 = _unpack(offsets[i])
        with nogil:
            row(w0, N, i == skip, tables[0], tables[1], tables[2], tables[3], nterms, out)
        result.append((_pack(out[0]), _pack(out[1]), _pack(out[2]), _pack(out[3])))
    return result
