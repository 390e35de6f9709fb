import random
from dataclasses import replace

import pytest

from mpfss import keyfile
from mpfss.ddhfss import dcf_gen, dpf_gen, eval_all
from mpfss.errors import DecodeError, ParameterMismatch
from mpfss.group import P256, TEST32
from mpfss.subfss import subdcf_eval_all, subdcf_gen, subdpf_eval_all, subdpf_gen
from mpfss.trivial import trivial_eval, trivial_gen


def roundtrip(keys, ctx, **fields):
    blobs = keyfile.dump_key_set(keys, ctx, random.Random(0), **fields)
    return blobs, [keyfile.load_key(b) for b in blobs]


def test_header_layout():
    h = keyfile.Header(2, keyfile.DCF, 10**9, 5, 2, 1000, 3, True, 1, 1 << 20, bytes(range(16)))
    raw = h.pack()
    assert len(raw) == keyfile.HEADER_BYTES == 49
    assert raw[:6] == b"MPFSS\x01"
    assert raw[6:8] == bytes([2, keyfile.DCF])
    assert raw[8:16] == (10**9).to_bytes(8, "little")
    assert keyfile.Header.unpack(raw) == h


@pytest.mark.parametrize("bad", [b"MPFSX", b"MPFSS\x02"])
def test_header_rejects(bad):
    raw = keyfile.Header(1, 1, 8, 3, 1, 2, 1, False).pack()
    with pytest.raises(DecodeError):
        keyfile.Header.unpack(bad + raw[len(bad):])
    with pytest.raises(DecodeError):
        keyfile.Header.unpack(raw[:20])


@pytest.mark.parametrize("prss", [False, True])
@pytest.mark.parametrize("gen", [dpf_gen, dcf_gen])
def test_ddh_roundtrip(gen, prss):
    ctx = TEST32
    keys = gen(50, 17, ctx.exp_g(4), 5, 2, ctx, random.Random(1), prss=prss)
    blobs, loaded = roundtrip(keys, ctx, codec=1, codec_param=99)
    for k, (hdr, k2) in zip(keys, loaded):
        assert hdr.prss == prss and hdr.codec_param == 99 and hdr.party == k.party
        assert eval_all(k2) == eval_all(k)
        assert keyfile.dump_key(k2, ctx, key_id=hdr.key_id, codec=1, codec_param=99) == blobs[k.party - 1]
    # public part is byte-identical across parties
    nu = keys[0].nu
    tail = (2 * nu + (gen is dcf_gen)) * ctx.element_bytes
    assert len({b[-tail:] for b in blobs}) == 1
    keyfile.check_key_set([h for h, _ in loaded])


def test_dpf_size_layout():
    # N = 10^6 on P-256: two sections of two tables, C(4,2) = 6 vectors of nu = 100 scalars
    keys = dpf_gen(10**6, 5, P256.generator, 5, 2, P256, random.Random(2))
    blob = keyfile.dump_key(keys[0])
    assert len(blob) - 49 == 2 * (4 + 2 * 6 * 100 * 32) + 2 * 100 * 33


@pytest.mark.parametrize("prss", [False, True])
def test_sub_and_trivial_roundtrip(prss):
    ctx = P256
    q = ctx.order
    r = random.Random(3)
    for gen, ev in ((subdpf_gen, subdpf_eval_all), (subdcf_gen, subdcf_eval_all)):
        keys = gen(30, 11, 7, 3, 1, q, r, prss)
        _, loaded = roundtrip(keys, ctx)
        assert [ev(k2) for _, k2 in loaded] == [ev(k) for k in keys]
    keys = trivial_gen(20, 4, 9, 3, q, r, prss)
    _, loaded = roundtrip(keys, ctx)
    for k, (h, k2) in zip(keys, loaded):
        assert h.prss == prss
        assert [trivial_eval(k2, x) for x in range(20)] == [trivial_eval(k, x) for x in range(20)]


def test_load_rejects_corruption():
    ctx = TEST32
    blob = keyfile.dump_key(dpf_gen(8, 1, ctx.generator, 3, 1, ctx, random.Random(4))[0])
    with pytest.raises(DecodeError):
        keyfile.load_key(blob[:-1])
    with pytest.raises(DecodeError):
        keyfile.load_key(blob + b"\x00")
    bad = bytearray(blob)
    bad[7] = 99  # scheme tag
    with pytest.raises(DecodeError):
        keyfile.load_key(bytes(bad))
    bad = bytearray(blob)
    bad[6] = 77  # group id
    with pytest.raises(DecodeError):
        keyfile.load_key(bytes(bad))


def test_check_key_set():
    ctx = TEST32
    r = random.Random(5)
    a = keyfile.dump_key_set(dpf_gen(8, 1, ctx.generator, 3, 1, ctx, r), ctx, r)
    b = keyfile.dump_key_set(dpf_gen(8, 1, ctx.generator, 3, 1, ctx, r), ctx, r)
    ha = [keyfile.Header.unpack(x) for x in a]
    hb = [keyfile.Header.unpack(x) for x in b]
    keyfile.check_key_set(ha)
    with pytest.raises(ParameterMismatch):
        keyfile.check_key_set([ha[0], hb[1], ha[2]])
    with pytest.raises(ParameterMismatch):
        keyfile.check_key_set(ha[:2])
    with pytest.raises(ParameterMismatch):
        keyfile.check_key_set([ha[0], ha[0], ha[2]])
    with pytest.raises(ParameterMismatch):
        keyfile.check_key_set([])


def test_share_files():
    ctx = P256
    hdr = keyfile.Header(ctx.group_id, keyfile.DPF, 10, 3, 1, 3, 2, False)
    elems = [None, ctx.generator, ctx.exp_g(5)]
    data = keyfile.dump_shares(hdr, ctx, 4, elems)
    h2, start, got = keyfile.load_shares(data)
    assert (h2, start, got) == (hdr, 4, elems)
    with pytest.raises(DecodeError):
        keyfile.load_key(data)
    with pytest.raises(DecodeError):
        keyfile.load_shares(data[:-3])
    with pytest.raises(DecodeError):
        keyfile.load_shares(replace(hdr).pack())
