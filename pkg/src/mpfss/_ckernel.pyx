# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled curve kernel; see ``_pykernel`` for the reference semantics."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

import sys

cdef extern from "_ec_core.h":
    ctypedef struct ec_fe:
        uint64_t v[4]
    ctypedef struct ec_sc:
        uint64_t v[4]
    ctypedef struct ec_curve:
        int n
        int nwin
        ec_fe p
        ec_fe pm2
        uint64_t pinv
        ec_fe one
        ec_fe r2
        ec_fe a
        int a_m3
    ctypedef struct ec_aff:
        ec_fe x
        ec_fe y
        int inf
    ctypedef struct ec_jac:
        ec_fe X
        ec_fe Y
        ec_fe Z

    void ec_to_mont(const ec_curve *c, ec_fe *r, const ec_fe *a)
    void ec_from_mont(const ec_curve *c, ec_fe *r, const ec_fe *a)
    int ec_add_aff(const ec_curve *c, const ec_aff *a, const ec_aff *b, ec_aff *out)
    int ec_multi_mul(const ec_curve *c, ec_aff *out, long count, const ec_aff *pts, const ec_sc *ks)
    int ec_grid_eval(const ec_curve *c, long ncols, long k, const ec_aff *bases,
                     long nrows, const ec_sc *sc, long npoints, ec_aff *out)
    int ec_vec_add(const ec_curve *c, long count, const ec_aff *a, const ec_aff *b, ec_aff *out)
    int ec_progression(const ec_curve *c, const ec_aff *start, const ec_aff *step,
                       long count, ec_aff *out)

if sys.byteorder != "little":  # limb layout below assumes it
    raise ImportError("compiled kernel requires a little-endian host")


cdef inline void _load(object v, uint64_t *out):
    cdef bytes raw = v.to_bytes(32, "little")
    memcpy(out, <const char *>raw, 32)


cdef inline object _store(const uint64_t *limbs):
    return int.from_bytes((<const char *>limbs)[:32], "little")


cdef class CurveCore:
    """Arithmetic on y^2 = x^3 + a*x + b over F_p for a group of prime order."""

    cdef ec_curve c
    cdef readonly object p, a, b, order

    def __init__(self, p, a, b, order):
        if p % 2 == 0 or p.bit_length() > 256 or order.bit_length() > 256:
            raise ValueError("modulus must be odd and at most 256 bits")
        self.p, self.a, self.b, self.order = p, a % p, b % p, order
        n = (p.bit_length() + 63) // 64
        R = 1 << (64 * n)
        memset(&self.c, 0, sizeof(ec_curve))
        self.c.n = n
        self.c.nwin = (order.bit_length() + 3) // 4
        _load(p, self.c.p.v)
        _load(p - 2, self.c.pm2.v)
        self.c.pinv = (-pow(p, -1, 1 << 64)) % (1 << 64)
        _load(R % p, self.c.one.v)
        _load(R * R % p, self.c.r2.v)
        cdef ec_fe tmp
        memset(&tmp, 0, sizeof(ec_fe))
        _load(self.a, tmp.v)
        ec_to_mont(&self.c, &self.c.a, &tmp)
        self.c.a_m3 = self.a == p - 3

    cdef int _aff_in(self, object P, ec_aff *out) except -1:
        cdef ec_fe t
        memset(out, 0, sizeof(ec_aff))
        if P is None:
            out.inf = 1
            return 0
        x, y = P
        memset(&t, 0, sizeof(ec_fe))
        _load(x, t.v)
        ec_to_mont(&self.c, &out.x, &t)
        memset(&t, 0, sizeof(ec_fe))
        _load(y, t.v)
        ec_to_mont(&self.c, &out.y, &t)
        return 0

    cdef object _aff_out(self, const ec_aff *a):
        cdef ec_fe x, y
        if a.inf:
            return None
        ec_from_mont(&self.c, &x, &a.x)
        ec_from_mont(&self.c, &y, &a.y)
        return (_store(x.v), _store(y.v))

    cdef void _sc_in(self, object k, ec_sc *out):
        memset(out, 0, sizeof(ec_sc))
        _load(k % self.order, out.v)

    def add(self, P, Q):
        cdef ec_aff a, b, r
        self._aff_in(P, &a)
        self._aff_in(Q, &b)
        if ec_add_aff(&self.c, &a, &b, &r) < 0:
            raise MemoryError()
        return self._aff_out(&r)

    def neg(self, P):
        if P is None:
            return None
        return (P[0], (-P[1]) % self.p)

    def mul(self, P, k):
        return self.muln((P,), (k,))

    def muln(self, points, scalars):
        cdef long n = len(points)
        if len(scalars) != n:
            raise ValueError("points and scalars differ in length")
        cdef ec_aff *pts = <ec_aff *>malloc(sizeof(ec_aff) * (n if n else 1))
        cdef ec_sc *ks = <ec_sc *>malloc(sizeof(ec_sc) * (n if n else 1))
        cdef ec_aff r
        cdef long i
        try:
            if not pts or not ks:
                raise MemoryError()
            for i in range(n):
                self._aff_in(points[i], &pts[i])
                self._sc_in(scalars[i], &ks[i])
            if ec_multi_mul(&self.c, &r, n, pts, ks) < 0:
                raise MemoryError()
            return self._aff_out(&r)
        finally:
            free(pts)
            free(ks)

    def grid_eval(self, col_bases, row_scalars, long npoints):
        """Point x = row*ncols + col gets prod_j col_bases[col][j]^row_scalars[row][j]."""
        cdef long ncols = len(col_bases)
        cdef long nrows = len(row_scalars)
        if npoints <= 0:
            return []
        if ncols == 0 or npoints > ncols * nrows:
            raise ValueError("grid does not cover the requested points")
        cdef long k = len(col_bases[0])
        cdef ec_aff *bases = <ec_aff *>malloc(sizeof(ec_aff) * ncols * k)
        cdef ec_sc *sc = <ec_sc *>malloc(sizeof(ec_sc) * nrows * k)
        cdef ec_aff *out = <ec_aff *>malloc(sizeof(ec_aff) * npoints)
        cdef long i, j
        try:
            if not bases or not sc or not out:
                raise MemoryError()
            for i in range(ncols):
                col = col_bases[i]
                if len(col) != k:
                    raise ValueError("ragged base rows")
                for j in range(k):
                    self._aff_in(col[j], &bases[i * k + j])
            for i in range(nrows):
                row = row_scalars[i]
                if len(row) != k:
                    raise ValueError("ragged scalar rows")
                for j in range(k):
                    self._sc_in(row[j], &sc[i * k + j])
            if ec_grid_eval(&self.c, ncols, k, bases, nrows, sc, npoints, out) < 0:
                raise MemoryError()
            return [self._aff_out(&out[i]) for i in range(npoints)]
        finally:
            free(bases)
            free(sc)
            free(out)

    def vec_add(self, Ps, Qs):
        cdef long n = len(Ps)
        if len(Qs) != n:
            raise ValueError("vectors differ in length")
        if n == 0:
            return []
        cdef ec_aff *a = <ec_aff *>malloc(sizeof(ec_aff) * n)
        cdef ec_aff *b = <ec_aff *>malloc(sizeof(ec_aff) * n)
        cdef ec_aff *out = <ec_aff *>malloc(sizeof(ec_aff) * n)
        cdef long i
        try:
            if not a or not b or not out:
                raise MemoryError()
            for i in range(n):
                self._aff_in(Ps[i], &a[i])
                self._aff_in(Qs[i], &b[i])
            if ec_vec_add(&self.c, n, a, b, out) < 0:
                raise MemoryError()
            return [self._aff_out(&out[i]) for i in range(n)]
        finally:
            free(a)
            free(b)
            free(out)

    def progression(self, start, step, long count):
        """[start + j*step for j in range(count)]"""
        if count <= 0:
            return []
        cdef ec_aff s, d
        cdef ec_aff *out = <ec_aff *>malloc(sizeof(ec_aff) * count)
        cdef long i
        try:
            if not out:
                raise MemoryError()
            self._aff_in(start, &s)
            self._aff_in(step, &d)
            if ec_progression(&self.c, &s, &d, count, out) < 0:
                raise MemoryError()
            return [self._aff_out(&out[i]) for i in range(count)]
        finally:
            free(out)
