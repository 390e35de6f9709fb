import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpfss.errors import DecodeError, InvalidScalar
from mpfss.group import P256, TEST32, get_group, scalar_inverse

GROUPS = [TEST32, P256]
ids = lambda g: g.name  # noqa: E731


def test_scalar_inverse_small_field():
    assert scalar_inverse(3, 11) == 4
    assert scalar_inverse(1, 11) == 1
    with pytest.raises(InvalidScalar):
        scalar_inverse(0, 11)
    with pytest.raises(InvalidScalar):
        scalar_inverse(11, 11)


@given(st.integers(min_value=1, max_value=P256.order - 1))
def test_scalar_inverse_p256(a):
    assert a * scalar_inverse(a, P256.order) % P256.order == 1


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
def test_context_invariants(ctx):
    from sympy import isprime

    assert isprime(ctx.order)
    assert ctx.generator is not None and ctx.is_on_curve(ctx.generator)
    assert ctx.security_lambda == (ctx.order - 1).bit_length()
    assert ctx.exp(ctx.generator, ctx.order) is None


def test_p256_sizes():
    assert P256.security_lambda == 256
    assert len(P256.serialize(P256.generator)) == 33
    assert len(P256.serialize(None)) == 33
    assert P256.scalar_bytes == 32


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
def test_exp_edge_cases(ctx):
    g = ctx.generator
    assert ctx.exp(g, 0) is None
    assert ctx.exp(None, 12345) is None
    assert ctx.exp(g, ctx.order - 1) == ctx.inverse(g)
    assert ctx.mul(g, None) == g
    assert ctx.mul(ctx.exp_g(2), ctx.exp_g(3)) == ctx.exp_g(5)


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
@given(a=st.integers(min_value=0), b=st.integers(min_value=0))
def test_exp_homomorphism(ctx, a, b):
    q = ctx.order
    assert ctx.mul(ctx.exp_g(a), ctx.exp_g(b)) == ctx.exp_g((a + b) % q)


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
@given(a=st.integers(min_value=1))
def test_exp_inverse_roundtrip(ctx, a):
    q = ctx.order
    if a % q == 0:
        return
    g = ctx.generator
    assert ctx.exp(ctx.exp(g, a), scalar_inverse(a, q)) == g


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
@given(seed=st.integers(), k=st.integers(min_value=2, max_value=6))
def test_product_order_free(ctx, seed, k):
    r = random.Random(seed)
    elems = [ctx.random_generator(r) for _ in range(k)]
    shuffled = elems[:]
    r.shuffle(shuffled)
    assert ctx.prod(elems) == ctx.prod(shuffled)


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
@given(seed=st.integers())
def test_correction_kernel(ctx, seed):
    r = random.Random(seed)
    q = ctx.order
    g_d = ctx.random_generator(r)
    rr = ctx.random_scalar(r)
    h = ctx.exp(g_d, -scalar_inverse(rr, q))
    assert ctx.mul(ctx.exp(h, rr), g_d) is None


def test_random_generator_no_collisions():
    r = random.Random(5)
    seen = {P256.random_generator(r) for _ in range(1000)}
    assert len(seen) == 1000
    assert None not in seen


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
@given(seed=st.integers())
def test_serialize_roundtrip(ctx, seed):
    x = ctx.random_generator(random.Random(seed))
    data = ctx.serialize(x)
    assert len(data) == ctx.element_bytes
    assert ctx.deserialize(data) == x
    assert ctx.deserialize(ctx.serialize(None)) is None


@pytest.mark.parametrize("ctx", GROUPS, ids=ids)
def test_deserialize_rejects(ctx):
    good = ctx.serialize(ctx.generator)
    with pytest.raises(DecodeError):
        ctx.deserialize(good[:-1])
    with pytest.raises(DecodeError):
        ctx.deserialize(b"\x04" + good[1:])
    with pytest.raises(DecodeError):
        ctx.deserialize(b"\x00" + good[1:])
    with pytest.raises(DecodeError):
        ctx.deserialize(b"\x02" + (ctx.p).to_bytes(ctx.field_bytes, "big"))
    # find an abscissa with no point
    x = 0
    while ctx.lift_x(x) is not None:
        x += 1
    with pytest.raises(DecodeError):
        ctx.deserialize(b"\x02" + x.to_bytes(ctx.field_bytes, "big"))


def test_scalar_bytes_roundtrip():
    s = P256.order - 1
    assert P256.scalar_from_bytes(P256.scalar_to_bytes(s)) == s
    with pytest.raises(DecodeError):
        P256.scalar_from_bytes(P256.order.to_bytes(32, "big"))


def test_get_group():
    assert get_group("p256") is P256
    assert get_group("P-256") is P256
    assert get_group(2) is TEST32
    with pytest.raises(DecodeError):
        get_group("secp256k1")
