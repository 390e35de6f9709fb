import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpfss.encoding import EXPONENT, POINT, ExponentCodec, PointCodec, make_codec
from mpfss.errors import OutOfRangeError, RangeError
from mpfss.group import P256, TEST32


@pytest.fixture(scope="module")
def exp_codec():
    return ExponentCodec(P256)


@pytest.fixture(scope="module")
def small_codec():
    return ExponentCodec(TEST32, bound=1000, cache_size=8, chunk=5)


def test_exponent_basics(exp_codec):
    c = exp_codec
    assert c.m == 1024
    assert c.encode(0) is None
    assert c.encode(1) == P256.generator
    assert P256.mul(c.encode(2), c.encode(3)) == c.encode(5)
    assert c.decode(None) == 0
    with pytest.raises(RangeError):
        c.encode(1 << 20)
    with pytest.raises(RangeError):
        c.encode(-1)


def test_exponent_out_of_range(exp_codec):
    with pytest.raises(OutOfRangeError):
        exp_codec.decode(P256.exp_g(1 << 20))
    with pytest.raises(OutOfRangeError):
        exp_codec.decode(P256.exp_g(P256.order - 1))


@given(beta=st.integers(0, (1 << 20) - 1))
def test_exponent_roundtrip(exp_codec, beta):
    assert exp_codec.decode(exp_codec.encode(beta)) == beta
    assert exp_codec.table_ops + exp_codec.last_ops <= 2 * exp_codec.m + 1


@given(a=st.integers(0, 1 << 19), b=st.integers(0, (1 << 19) - 1))
def test_exponent_homomorphic(exp_codec, a, b):
    assert exp_codec.decode(P256.mul(exp_codec.encode(a), exp_codec.encode(b))) == a + b


def test_small_bound_exhaustive(small_codec):
    c = small_codec
    assert c.m == 32
    for beta in range(1000):
        assert c.decode(c.encode(beta)) == beta
        assert c.table_ops + c.last_ops <= 2 * c.m + 1
    with pytest.raises(OutOfRangeError):
        c.decode(TEST32.exp_g(1000))
    with pytest.raises(OutOfRangeError):
        c.decode(TEST32.exp_g(1023))  # inside the m^2 grid, outside the bound


def test_cache_is_bounded(small_codec):
    for beta in range(50):
        small_codec.decode(small_codec.encode(beta))
    assert len(small_codec._cache) <= 8
    e = small_codec.encode(49)
    assert small_codec.decode(e) == 49 and small_codec.last_ops == 0


@pytest.fixture(scope="module")
def point_codec():
    return PointCodec(P256)


def test_point_basics(point_codec):
    c = point_codec
    assert c.encode(0) is None
    assert c.decode(None) == 0
    e = c.encode(12345)
    assert P256.is_on_curve(e)
    assert 12345 * 256 <= e[0] < 12346 * 256
    assert e[1] <= P256.p - e[1]
    with pytest.raises(RangeError):
        c.encode(c.max_beta + 1)
    with pytest.raises(RangeError):
        c.encode(-3)


def test_point_least_counter(point_codec):
    e = point_codec.encode(777)
    for c in range(e[0] - 777 * 256):
        assert P256.lift_x(777 * 256 + c) is None


@given(beta=st.integers(1, (1 << 200)))
def test_point_roundtrip(point_codec, beta):
    e = point_codec.encode(beta)
    assert point_codec.decode(e) == beta
    assert point_codec.decode(P256.mul(e, point_codec.encode(0))) == beta


def test_point_not_homomorphic(point_codec):
    # witness that two nonzero encodings do not combine
    r = random.Random(11)
    for _ in range(20):
        b1, b2 = r.randrange(1, 1 << 30), r.randrange(1, 1 << 30)
        d = point_codec.decode(P256.mul(point_codec.encode(b1), point_codec.encode(b2)))
        if d not in (b1, b2, b1 + b2):
            return
    pytest.fail("no witness found")


def test_point_codec_small_group():
    c = PointCodec(TEST32, padding=16)
    for beta in range(1, 200):
        assert c.decode(c.encode(beta)) == beta


def test_make_codec():
    assert make_codec("exponent", TEST32, 100).bound == 100
    assert make_codec(EXPONENT, TEST32).bound == 1 << 20
    assert make_codec(POINT, TEST32).padding == 256
    assert make_codec("point", TEST32, 16).param == 16
    with pytest.raises(ValueError):
        make_codec("other", TEST32)
