"""Binary key and share files.

Layout (all integers little-endian)::

    header   magic "MPFSS", version, group, scheme, N, p, m, nu, party,
             prss flag, codec, codec parameter, 16-byte key id      (49 bytes)
    body     DPF/DCF: u32-length-prefixed sub-key sections (a, b[, c]),
                      then g_1 h_1 ... g_nu h_nu [u] as compressed points
             sub-DPF/sub-DCF: the sections only
             trivial: N scalars, or a 32-byte seed
             share file: u64 start, u64 count, then count points

A sub-key section holds each truth table in turn; a table is the party's
components in canonical subset order.  Under PRSS every component except the
designated explicit one is a 32-byte seed.  Scalars are big-endian at the
group's scalar width.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass, replace
from typing import Sequence, Union

from .ddhfss import DcfKey, DpfKey
from .errors import DecodeError, ParameterMismatch
from .group import GroupContext, get_group
from .sharing import (
    SEED_BYTES,
    CnfPartyView,
    PrssCompressedView,
    explicit_subset,
    held_subsets,
)
from .subfss import SubDcfKey, SubDpfKey, SubGrid
from .trivial import TrivialKey

MAGIC = b"MPFSS"
VERSION = 1
HEADER = struct.Struct("<5sBBBQBBIBBBQ16s")
HEADER_BYTES = HEADER.size

DPF, DCF, SUBDPF, SUBDCF, TRIVIAL = 1, 2, 3, 4, 5
SHARE_FLAG = 0x80
SCHEME_NAMES = {DPF: "dpf", DCF: "dcf", SUBDPF: "subdpf", SUBDCF: "subdcf", TRIVIAL: "trivial"}

AnyKey = Union[DpfKey, DcfKey, SubDpfKey, SubDcfKey, TrivialKey]


@dataclass(frozen=True)
class Header:
    group_id: int
    scheme: int
    N: int
    p: int
    m: int
    nu: int
    party: int
    prss: bool
    codec: int = 0
    codec_param: int = 0
    key_id: bytes = bytes(16)
    version: int = VERSION

    def pack(self) -> bytes:
        return HEADER.pack(
            MAGIC, self.version, self.group_id, self.scheme, self.N, self.p, self.m,
            self.nu, self.party, int(self.prss), self.codec, self.codec_param, self.key_id,
        )

    @classmethod
    def unpack(cls, data: bytes) -> "Header":
        if len(data) < HEADER_BYTES:
            raise DecodeError("truncated header")
        (magic, ver, gid, scheme, N, p, m, nu, party, prss, codec, cparam, kid) = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise DecodeError("bad magic")
        if ver != VERSION:
            raise DecodeError(f"unsupported format version {ver}")
        return cls(gid, scheme, N, p, m, nu, party, bool(prss), codec, cparam, kid, ver)

    def same_invocation(self, other: "Header") -> bool:
        strip = dict(party=0)
        return replace(self, **strip) == replace(other, **strip)


# sub-key sections


def _table_bytes(view, ctx: GroupContext, out: list) -> None:
    sb = ctx.scalar_bytes
    if isinstance(view, PrssCompressedView):
        for pl in view.payloads:
            if isinstance(pl, bytes):
                out.append(pl)
            else:
                out.append(b"".join(v.to_bytes(sb, "big") for v in pl))
    else:
        for comp in view.components:
            out.append(b"".join(v.to_bytes(sb, "big") for v in comp))


class _Reader:
    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise DecodeError("truncated body")
        b = self.data[self.pos : self.pos + n]
        self.pos += n
        return b

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]

    def done(self) -> None:
        if self.pos != len(self.data):
            raise DecodeError("trailing bytes")


def _read_table(r: _Reader, ctx, p, m, party, w, prss):
    sb = ctx.scalar_bytes
    q = ctx.order
    T0 = explicit_subset(p, m)

    def vec():
        raw = r.take(sb * w)
        vals = tuple(int.from_bytes(raw[i : i + sb], "big") for i in range(0, len(raw), sb))
        if any(v >= q for v in vals):
            raise DecodeError("scalar not reduced")
        return vals

    comps = []
    for T in held_subsets(p, m, party):
        if prss and T != T0:
            comps.append(r.take(SEED_BYTES))
        else:
            comps.append(vec())
    if prss:
        return PrssCompressedView(party, p, m, q, w, tuple(comps))
    return CnfPartyView(party, p, m, q, tuple(comps))


def _section(views, ctx) -> bytes:
    parts: list = []
    for v in views:
        _table_bytes(v, ctx, parts)
    body = b"".join(parts)
    return struct.pack("<I", len(body)) + body


def _read_section(r: _Reader, ctx, p, m, party, w, prss, ntables):
    n = r.u32()
    sub = _Reader(r.take(n))
    views = [_read_table(sub, ctx, p, m, party, w, prss) for _ in range(ntables)]
    sub.done()
    return views


def _views(k):
    return (k.view_a, k.view_b, k.view_c) if isinstance(k, SubDcfKey) else (k.view_a, k.view_b)


def _is_prss(view) -> bool:
    return isinstance(view, PrssCompressedView)


# public API


def key_header(key: AnyKey, ctx: GroupContext) -> Header:
    if isinstance(key, DpfKey):
        v = key.key_a.view_a
        scheme = DCF if isinstance(key, DcfKey) else DPF
        return Header(ctx.group_id, scheme, key.N, v.p, v.m, key.nu, key.party, _is_prss(v))
    if isinstance(key, (SubDpfKey, SubDcfKey)):
        v = key.view_a
        scheme = SUBDCF if isinstance(key, SubDcfKey) else SUBDPF
        return Header(ctx.group_id, scheme, key.grid.M, v.p, v.m, key.grid.w, key.party, _is_prss(v))
    if isinstance(key, TrivialKey):
        return Header(ctx.group_id, TRIVIAL, key.N, key.p, 0, 0, key.party, key.prss)
    raise TypeError(f"cannot serialize {type(key).__name__}")


def dump_key(key: AnyKey, ctx: GroupContext | None = None, **header_fields) -> bytes:
    ctx = ctx or getattr(key, "ctx", None)
    if ctx is None:
        raise ValueError("group context required")
    hdr = replace(key_header(key, ctx), **header_fields)
    out = [hdr.pack()]
    if isinstance(key, DpfKey):
        out.append(_section(_views(key.key_a), ctx))
        out.append(_section(_views(key.key_b), ctx))
        if isinstance(key, DcfKey):
            out.append(_section(_views(key.key_c), ctx))
        for g, h in zip(key.g, key.h):
            out.append(ctx.serialize(g))
            out.append(ctx.serialize(h))
        if isinstance(key, DcfKey):
            out.append(ctx.serialize(key.u))
    elif isinstance(key, (SubDpfKey, SubDcfKey)):
        out.append(_section(_views(key), ctx))
    else:
        pl = key.payload
        if isinstance(pl, bytes):
            out.append(pl)
        else:
            sb = ctx.scalar_bytes
            out.append(b"".join(v.to_bytes(sb, "big") for v in pl))
    return b"".join(out)


def dump_key_set(keys: Sequence[AnyKey], ctx: GroupContext | None = None,
                 rng: random.Random | None = None, **header_fields) -> list[bytes]:
    """Serialize one invocation's keys under a shared fresh key id."""
    rng = rng or random.SystemRandom()
    kid = rng.randbytes(16)
    return [dump_key(k, ctx, key_id=kid, **header_fields) for k in keys]


def load_key(data: bytes) -> tuple[Header, AnyKey]:
    hdr = Header.unpack(data)
    if hdr.scheme & SHARE_FLAG:
        raise DecodeError("this is a share file")
    ctx = get_group(hdr.group_id)
    r = _Reader(data, HEADER_BYTES)
    p, m, party, prss = hdr.p, hdr.m, hdr.party, hdr.prss
    if not 1 <= party <= p:
        raise DecodeError("party index out of range")
    if hdr.scheme in (DPF, DCF):
        nu = hdr.nu
        M = nu * nu
        grid = SubGrid(M)
        a = _read_section(r, ctx, p, m, party, nu, prss, 2)
        b = _read_section(r, ctx, p, m, party, nu, prss, 2)
        ka, kb = SubDpfKey(party, grid, *a), SubDpfKey(party, grid, *b)
        if hdr.scheme == DCF:
            c = _read_section(r, ctx, p, m, party, nu, prss, 3)
            kc = SubDcfKey(party, grid, *c)
        es = ctx.element_bytes
        gs, hs = [], []
        for _ in range(nu):
            gs.append(ctx.deserialize(r.take(es)))
            hs.append(ctx.deserialize(r.take(es)))
        if hdr.scheme == DCF:
            u = ctx.deserialize(r.take(es))
            key = DcfKey(party, hdr.N, nu, ctx, ka, kb, tuple(gs), tuple(hs), key_c=kc, u=u)
        else:
            key = DpfKey(party, hdr.N, nu, ctx, ka, kb, tuple(gs), tuple(hs))
    elif hdr.scheme in (SUBDPF, SUBDCF):
        grid = SubGrid(hdr.N)
        if grid.w != hdr.nu:
            raise DecodeError("grid width does not match the domain")
        n = 3 if hdr.scheme == SUBDCF else 2
        views = _read_section(r, ctx, p, m, party, hdr.nu, prss, n)
        key = (SubDcfKey if n == 3 else SubDpfKey)(party, grid, *views)
    elif hdr.scheme == TRIVIAL:
        if prss and party < p:
            payload = r.take(SEED_BYTES)
        else:
            sb = ctx.scalar_bytes
            raw = r.take(sb * hdr.N)
            payload = tuple(int.from_bytes(raw[i : i + sb], "big") for i in range(0, len(raw), sb))
        key = TrivialKey(party, hdr.N, p, ctx.order, payload, prss)
    else:
        raise DecodeError(f"unknown scheme tag {hdr.scheme}")
    r.done()
    return hdr, key


def check_key_set(headers: Sequence[Header]) -> None:
    if not headers:
        raise ParameterMismatch("no keys")
    h0 = headers[0]
    for h in headers[1:]:
        if not h.same_invocation(h0):
            raise ParameterMismatch("keys come from different invocations")
    parties = sorted(h.party for h in headers)
    if parties != list(range(1, h0.p + 1)):
        raise ParameterMismatch("need exactly one key per party")


# share files


def dump_shares(hdr: Header, ctx: GroupContext, start: int, elems) -> bytes:
    h = replace(hdr, scheme=hdr.scheme | SHARE_FLAG)
    out = [h.pack(), struct.pack("<QQ", start, len(elems))]
    out.extend(ctx.serialize(e) for e in elems)
    return b"".join(out)


def load_shares(data: bytes) -> tuple[Header, int, list]:
    hdr = Header.unpack(data)
    if not hdr.scheme & SHARE_FLAG:
        raise DecodeError("not a share file")
    ctx = get_group(hdr.group_id)
    r = _Reader(data, HEADER_BYTES)
    start, count = r.u64(), r.u64()
    es = ctx.element_bytes
    elems = [ctx.deserialize(r.take(es)) for _ in range(count)]
    r.done()
    return replace(hdr, scheme=hdr.scheme & ~SHARE_FLAG), start, elems
