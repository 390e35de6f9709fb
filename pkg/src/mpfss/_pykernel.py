"""Pure-Python curve kernel.

Same interface and results as the compiled ``_ckernel.CurveCore``; used when
the extension is unavailable or ``MPFSS_PURE_PYTHON`` is set.  Points are
affine ``(x, y)`` tuples with ``None`` for the point at infinity.
"""

from __future__ import annotations

from typing import Optional, Sequence

Point = Optional[tuple[int, int]]

_WBITS = 4
_WSIZE = 1 << _WBITS


class CurveCore:
    """Arithmetic on y^2 = x^3 + a*x + b over F_p for a group of prime order."""

    def __init__(self, p: int, a: int, b: int, order: int):
        if p % 2 == 0 or p.bit_length() > 256 or order.bit_length() > 256:
            raise ValueError("modulus must be odd and at most 256 bits")
        self.p, self.a, self.b, self.order = p, a % p, b % p, order
        self._nwin = (order.bit_length() + _WBITS - 1) // _WBITS

    # Jacobian (X, Y, Z); Z == 0 is the identity.

    def _dbl(self, P):
        X, Y, Z = P
        p = self.p
        if Z == 0 or Y == 0:
            return (1, 1, 0)
        XX = X * X % p
        YY = Y * Y % p
        YYYY = YY * YY % p
        ZZ = Z * Z % p
        S = 2 * ((X + YY) ** 2 - XX - YYYY) % p
        M = (3 * XX + self.a * ZZ * ZZ) % p
        T = (M * M - 2 * S) % p
        Y3 = (M * (S - T) - 8 * YYYY) % p
        Z3 = ((Y + Z) ** 2 - YY - ZZ) % p
        return (T, Y3, Z3)

    def _madd(self, P, Q: Point):
        if Q is None:
            return P
        X1, Y1, Z1 = P
        if Z1 == 0:
            return (Q[0], Q[1], 1)
        p = self.p
        Z1Z1 = Z1 * Z1 % p
        U2 = Q[0] * Z1Z1 % p
        S2 = Q[1] * Z1 * Z1Z1 % p
        H = (U2 - X1) % p
        r = (S2 - Y1) % p
        if H == 0:
            return self._dbl(P) if r == 0 else (1, 1, 0)
        HH = H * H % p
        I = 4 * HH % p
        J = H * I % p
        r = 2 * r % p
        V = X1 * I % p
        X3 = (r * r - J - 2 * V) % p
        Y3 = (r * (V - X3) - 2 * Y1 * J) % p
        Z3 = ((Z1 + H) ** 2 - Z1Z1 - HH) % p
        return (X3, Y3, Z3)

    def _affine(self, P) -> Point:
        X, Y, Z = P
        if Z == 0:
            return None
        p = self.p
        zi = pow(Z, -1, p)
        z2 = zi * zi % p
        return (X * z2 % p, Y * z2 * zi % p)

    def _batch_affine(self, pts) -> list[Point]:
        p = self.p
        prefix = []
        acc = 1
        for X, Y, Z in pts:
            prefix.append(acc)
            if Z:
                acc = acc * Z % p
        inv = pow(acc, -1, p)
        out: list[Point] = [None] * len(pts)
        for i in range(len(pts) - 1, -1, -1):
            X, Y, Z = pts[i]
            if Z == 0:
                continue
            zi = inv * prefix[i] % p
            inv = inv * Z % p
            z2 = zi * zi % p
            out[i] = (X * z2 % p, Y * z2 * zi % p)
        return out

    def _multiples(self, P: Point) -> list[Point]:
        tab = [(P[0], P[1], 1) if P is not None else (1, 1, 0)]
        for _ in range(_WSIZE - 2):
            tab.append(self._madd(tab[-1], P))
        return self._batch_affine(tab)

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        return self._affine(self._madd((P[0], P[1], 1), Q))

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], (-P[1]) % self.p)

    def mul(self, P: Point, k: int) -> Point:
        return self.muln((P,), (k,))

    def muln(self, points: Sequence[Point], scalars: Sequence[int]) -> Point:
        if len(points) != len(scalars):
            raise ValueError("points and scalars differ in length")
        tabs = [self._multiples(P) for P in points]
        ks = [k % self.order for k in scalars]
        R = (1, 1, 0)
        for w in range(self._nwin - 1, -1, -1):
            for _ in range(_WBITS):
                R = self._dbl(R)
            shift = w * _WBITS
            for tab, k in zip(tabs, ks):
                d = (k >> shift) & (_WSIZE - 1)
                if d:
                    R = self._madd(R, tab[d - 1])
        return self._affine(R)

    def grid_eval(self, col_bases, row_scalars, npoints: int) -> list[Point]:
        """Point x = row*ncols + col gets prod_j col_bases[col][j]^row_scalars[row][j]."""
        ncols = len(col_bases)
        if npoints <= 0:
            return []
        if ncols == 0 or npoints > ncols * len(row_scalars):
            raise ValueError("grid does not cover the requested points")
        k = len(col_bases[0])
        tabs = [[self._multiples(B) for B in col] for col in col_bases]
        out = []
        for x in range(npoints):
            row, col = divmod(x, ncols)
            ks = [s % self.order for s in row_scalars[row]]
            if len(ks) != k:
                raise ValueError("ragged scalar rows")
            R = (1, 1, 0)
            for w in range(self._nwin - 1, -1, -1):
                for _ in range(_WBITS):
                    R = self._dbl(R)
                shift = w * _WBITS
                for tab, s in zip(tabs[col], ks):
                    d = (s >> shift) & (_WSIZE - 1)
                    if d:
                        R = self._madd(R, tab[d - 1])
            out.append(R)
        return self._batch_affine(out)

    def vec_add(self, Ps: Sequence[Point], Qs: Sequence[Point]) -> list[Point]:
        if len(Ps) != len(Qs):
            raise ValueError("vectors differ in length")
        acc = [
            self._madd((P[0], P[1], 1) if P is not None else (1, 1, 0), Q)
            for P, Q in zip(Ps, Qs)
        ]
        return self._batch_affine(acc)

    def progression(self, start: Point, step: Point, count: int) -> list[Point]:
        """[start + j*step for j in range(count)]"""
        if count <= 0:
            return []
        R = (start[0], start[1], 1) if start is not None else (1, 1, 0)
        acc = [R]
        for _ in range(count - 1):
            R = self._madd(R, step)
            acc.append(R)
        return self._batch_affine(acc)
