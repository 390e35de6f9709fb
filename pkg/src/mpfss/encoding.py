"""Mapping small integers into the group and back.

ExponentCodec sends beta to beta*G.  It is additively homomorphic, and decoding
is a bounded discrete log (baby-step giant-step).  PointCodec embeds beta in the
x-coordinate with a one-byte counter.  Decoding is a division, but only the
identity can be added to an encoding without destroying it.
"""

from __future__ import annotations

from collections import OrderedDict
from math import isqrt

from .errors import EncodingFailure, OutOfRangeError, RangeError
from .group import Element, GroupContext

EXPONENT = 1
POINT = 2


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


class ExponentCodec:
    codec_id = EXPONENT

    def __init__(self, ctx: GroupContext, bound: int = 1 << 20, cache_size: int = 4096, chunk: int = 64):
        if bound < 1:
            raise RangeError("bound must be positive")
        self.ctx = ctx
        self.bound = bound
        self.m = _ceil_sqrt(bound)
        self.chunk = chunk
        self.cache_size = cache_size
        self._cache: OrderedDict = OrderedDict()
        self._baby: dict | None = None
        self.table_ops = 0
        self.last_ops = 0
        self.total_ops = 0

    @property
    def param(self) -> int:
        return self.bound

    def _table(self) -> dict:
        if self._baby is None:
            core = self.ctx.core
            pts = core.progression(None, self.ctx.generator, self.m + 1)
            self._giant = core.neg(pts.pop())  # -m*G
            self._baby = {pt: j for j, pt in enumerate(pts)}
            self.table_ops = self.m
        return self._baby

    def encode(self, beta: int) -> Element:
        if not 0 <= beta < self.bound:
            raise RangeError(f"beta={beta} outside [0, {self.bound})")
        return self.ctx.exp_g(beta)

    def decode(self, e: Element) -> int:
        self.last_ops = 0
        if e is None:
            return 0
        hit = self._cache.get(e)
        if hit is not None:
            self._cache.move_to_end(e)
            return hit
        beta = self._bsgs(e)
        self._cache[e] = beta
        if len(self._cache) > self.cache_size:
            self._cache.popitem(last=False)
        return beta

    def _bsgs(self, e) -> int:
        baby = self._table()
        core = self.ctx.core
        m = self.m
        ops = 0  # group additions
        cur = e
        i = 0
        while i < m:
            n = min(self.chunk, m - i)
            pts = core.progression(cur, self._giant, n + 1)
            ops += n
            for k in range(n):
                j = baby.get(pts[k])
                if j is not None:
                    self.last_ops = ops
                    self.total_ops += ops
                    beta = (i + k) * m + j
                    if beta >= self.bound:
                        raise OutOfRangeError(f"discrete log {beta} exceeds bound {self.bound}")
                    return beta
            cur = pts[n]
            i += n
        self.last_ops = ops
        self.total_ops += ops
        raise OutOfRangeError(f"no discrete log below {self.bound}")

    def decode_many(self, elems) -> list[int]:
        return [self.decode(e) for e in elems]


class PointCodec:
    codec_id = POINT

    def __init__(self, ctx: GroupContext, padding: int = 256):
        if padding < 1:
            raise RangeError("padding must be positive")
        self.ctx = ctx
        self.padding = padding
        self.max_beta = (ctx.p // padding) - 1

    @property
    def param(self) -> int:
        return self.padding

    def encode(self, beta: int) -> Element:
        if beta == 0:
            return None
        if not 0 < beta <= self.max_beta:
            raise RangeError(f"beta={beta} outside [0, {self.max_beta}]")
        base = beta * self.padding
        for c in range(self.padding):
            pt = self.ctx.lift_x(base + c)
            if pt is not None:
                return pt
        raise EncodingFailure(f"no curve point for beta={beta}")

    def decode(self, e: Element) -> int:
        if e is None:
            return 0
        return e[0] // self.padding

    def decode_many(self, elems) -> list[int]:
        pad = self.padding
        return [0 if e is None else e[0] // pad for e in elems]


def make_codec(kind, ctx: GroupContext, param: int | None = None):
    if kind in ("exponent", EXPONENT):
        return ExponentCodec(ctx, param or (1 << 20))
    if kind in ("point", POINT):
        return PointCodec(ctx, param or 256)
    raise ValueError(f"unknown encoding {kind!r}")
