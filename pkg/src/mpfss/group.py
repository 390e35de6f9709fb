"""Prime-order elliptic-curve groups, scalar arithmetic and serialization.

Elements are affine ``(x, y)`` tuples, with ``None`` for the identity.  Plain
tuples keep the hot paths (full-domain evaluation, decoding) free of wrapper
allocation; every operation goes through a :class:`GroupContext`.

Two groups are provided: NIST P-256 (the default) and ``TEST32``, a 32-bit
prime-order curve used to run exhaustive correctness grids quickly.  TEST32
offers no security whatsoever.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import kernel
from .errors import DecodeError, InvalidScalar

Element = Optional[tuple[int, int]]

P256_ID = 1
TEST32_ID = 2


def scalar_inverse(a: int, q: int) -> int:
    """Inverse of ``a`` modulo the prime ``q``."""
    a %= q
    if a == 0:
        raise InvalidScalar("zero has no inverse")
    return pow(a, -1, q)


@dataclass(frozen=True)
class GroupContext:
    group_id: int
    name: str
    p: int
    a: int
    b: int
    order: int
    generator: tuple[int, int]
    core: object = field(repr=False, compare=False, hash=False)

    @property
    def security_lambda(self) -> int:
        # ceil(log2 q) for a prime q that is not a power of two
        return self.order.bit_length()

    @property
    def field_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    @property
    def scalar_bytes(self) -> int:
        return (self.order.bit_length() + 7) // 8

    @property
    def element_bytes(self) -> int:
        return 1 + self.field_bytes

    identity = None

    # group law

    def exp(self, base: Element, e: int) -> Element:
        if base is None:
            return None
        return self.core.mul(base, e % self.order)

    def exp_g(self, e: int) -> Element:
        return self.core.mul(self.generator, e % self.order)

    def multi_exp(self, bases: Sequence[Element], exps: Sequence[int]) -> Element:
        return self.core.muln(bases, exps)

    def mul(self, x: Element, y: Element) -> Element:
        return self.core.add(x, y)

    def prod(self, elems: Iterable[Element]) -> Element:
        acc = None
        for e in elems:
            acc = self.core.add(acc, e)
        return acc

    def inverse(self, x: Element) -> Element:
        return self.core.neg(x)

    def is_on_curve(self, pt: Element) -> bool:
        if pt is None:
            return True
        x, y = pt
        p = self.p
        return 0 <= x < p and 0 <= y < p and (y * y - (x * x * x + self.a * x + self.b)) % p == 0

    def sqrt(self, r: int) -> Optional[int]:
        """A square root of ``r`` mod p, or None.  Both moduli are 3 mod 4."""
        r %= self.p
        y = pow(r, (self.p + 1) // 4, self.p)
        return y if y * y % self.p == r else None

    def lift_x(self, x: int) -> Optional[tuple[int, int]]:
        """The point with abscissa ``x`` and the smaller of its two ordinates."""
        if not 0 <= x < self.p:
            return None
        y = self.sqrt(x * x * x + self.a * x + self.b)
        if y is None:
            return None
        return (x, min(y, self.p - y))

    # randomness

    def random_scalar(self, rng: random.Random, nonzero: bool = True) -> int:
        return rng.randrange(1 if nonzero else 0, self.order)

    def random_generator(self, rng: random.Random) -> tuple[int, int]:
        return self.exp_g(self.random_scalar(rng))

    # bytes

    def serialize(self, e: Element) -> bytes:
        n = self.field_bytes
        if e is None:
            return bytes(1 + n)
        x, y = e
        return bytes((2 | (y & 1),)) + x.to_bytes(n, "big")

    def deserialize(self, data: bytes) -> Element:
        n = self.field_bytes
        if len(data) != 1 + n:
            raise DecodeError(f"expected {1 + n} bytes, got {len(data)}")
        tag = data[0]
        x = int.from_bytes(data[1:], "big")
        if tag == 0:
            if x:
                raise DecodeError("non-canonical identity encoding")
            return None
        if tag not in (2, 3):
            raise DecodeError(f"bad point tag {tag:#x}")
        if x >= self.p:
            raise DecodeError("x-coordinate out of range")
        y = self.sqrt(x * x * x + self.a * x + self.b)
        if y is None:
            raise DecodeError("x-coordinate not on the curve")
        if y & 1 != tag & 1:
            y = self.p - y
        if y & 1 != tag & 1:  # y == 0
            raise DecodeError("non-canonical point encoding")
        return (x, y)

    def scalar_to_bytes(self, s: int) -> bytes:
        return (s % self.order).to_bytes(self.scalar_bytes, "big")

    def scalar_from_bytes(self, data: bytes) -> int:
        if len(data) != self.scalar_bytes:
            raise DecodeError("bad scalar width")
        s = int.from_bytes(data, "big")
        if s >= self.order:
            raise DecodeError("scalar not reduced")
        return s


def _make(group_id, name, p, a, b, order, gen) -> GroupContext:
    return GroupContext(group_id, name, p, a % p, b, order, gen, kernel.CurveCore(p, a, b, order))


P256 = _make(
    P256_ID,
    "P-256",
    0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    -3,
    0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
    (
        0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
        0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
    ),
)

# y^2 = x^3 - 3x + 31 over the largest 32-bit prime that is 3 mod 4; the
# group order is prime, so every non-identity point generates it.
TEST32 = _make(TEST32_ID, "TEST32", 4294967291, -3, 31, 4294959973, (2, 2120051858))

GROUPS = {P256_ID: P256, TEST32_ID: TEST32}
_BY_NAME = {g.name.lower(): g for g in GROUPS.values()}
_BY_NAME["p256"] = P256


def get_group(key) -> GroupContext:
    if isinstance(key, GroupContext):
        return key
    try:
        if isinstance(key, str):
            return _BY_NAME[key.lower()]
        return GROUPS[key]
    except KeyError:
        raise DecodeError(f"unknown group {key!r}") from None
