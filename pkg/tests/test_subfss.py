import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpfss.errors import DomainError, MajorityViolation
from mpfss.group import P256
from mpfss.sharing import cnf_open
from mpfss.subfss import (
    SubGrid,
    additive_decode,
    subdcf_eval,
    subdcf_eval_all,
    subdcf_gen,
    subdpf_eval,
    subdpf_eval_all,
    subdpf_gen,
)

PM = [(3, 1), (4, 1), (5, 2)]


def decode_dpf(keys, M, q):
    return [additive_decode([subdpf_eval(k, x) for k in keys], q) for x in range(M)]


def decode_dcf(keys, M, q):
    return [additive_decode([subdcf_eval(k, x) for k in keys], q) for x in range(M)]


def test_grid():
    g = SubGrid(10)
    assert g.w == 4
    assert g.pos(9) == (2, 1)
    with pytest.raises(DomainError):
        g.pos(10)
    with pytest.raises(DomainError):
        g.pos(-1)
    assert SubGrid(16).w == 4 and SubGrid(17).w == 5


@given(M=st.integers(1, 200))
def test_grid_row_major(M):
    g = SubGrid(M)
    assert g.w * g.w >= M
    assert sorted(range(M), key=g.pos) == list(range(M))


def test_dpf_example_f5():
    keys = subdpf_gen(4, 3, 2, 3, 1, 5, random.Random(0))
    assert cnf_open([k.view_a for k in keys]) == [0, 2]
    assert cnf_open([k.view_b for k in keys]) == [0, 1]
    assert decode_dpf(keys, 4, 5) == [0, 0, 0, 2]


def test_dpf_beta_zero():
    keys = subdpf_gen(9, 4, 0, 3, 1, 5, random.Random(0))
    assert decode_dpf(keys, 9, 5) == [0] * 9


def test_dpf_key_size():
    p, m, M = 5, 2, 30
    keys = subdpf_gen(M, 7, 3, p, m, P256.order, random.Random(0))
    for k in keys:
        assert sum(len(c) for v in (k.view_a, k.view_b) for c in v.components) == 2 * 6 * 6


def test_dcf_example_f5():
    keys = subdcf_gen(4, 2, 1, 3, 1, 5, random.Random(0))
    assert cnf_open([k.view_a for k in keys]) == [0, 1]
    assert cnf_open([k.view_b for k in keys]) == [1, 0]
    assert cnf_open([k.view_c for k in keys]) == [1, 0]
    assert decode_dcf(keys, 4, 5) == [1, 1, 1, 0]


def test_dcf_edges():
    q = 7
    keys = subdcf_gen(10, 9, 3, 3, 1, q, random.Random(1))
    assert decode_dcf(keys, 10, q) == [3] * 10
    keys = subdcf_gen(10, -1, 3, 3, 1, q, random.Random(1))
    assert decode_dcf(keys, 10, q) == [0] * 10
    for k in keys:
        assert all(v == 0 for v in cnf_open([kk.view_a for kk in keys]))


@pytest.mark.parametrize("gen", [subdpf_gen, subdcf_gen])
def test_gen_errors(gen):
    with pytest.raises(DomainError):
        gen(4, 4, 1, 3, 1, 5, random.Random(0))
    with pytest.raises(DomainError):
        gen(4, -2, 1, 3, 1, 5, random.Random(0))
    with pytest.raises(MajorityViolation):
        gen(4, 1, 1, 4, 2, 5, random.Random(0))


def test_eval_out_of_range():
    k = subdpf_gen(4, 1, 1, 3, 1, 5, random.Random(0))[0]
    with pytest.raises(DomainError):
        subdpf_eval(k, 4)
    k = subdcf_gen(4, 1, 1, 3, 1, 5, random.Random(0))[0]
    with pytest.raises(DomainError):
        subdcf_eval(k, -1)


def test_additive_decode():
    assert additive_decode([1, 2, 3], 5) == 1
    assert additive_decode([0, 0, 0], 5) == 0


@given(
    M=st.integers(1, 64), pm=st.sampled_from(PM), seed=st.integers(), prss=st.booleans(),
    q=st.sampled_from([5, 97, P256.order]), data=st.data(),
)
def test_oracle_equivalence(M, pm, seed, prss, q, data):
    p, m = pm
    r = random.Random(seed)
    alpha = data.draw(st.integers(0, M - 1))
    beta = r.randrange(q)
    keys = subdpf_gen(M, alpha, beta, p, m, q, r, prss)
    want = [beta if x == alpha else 0 for x in range(M)]
    assert decode_dpf(keys, M, q) == want
    full = [subdpf_eval_all(k) for k in keys]
    assert [sum(c) % q for c in zip(*full)] == want

    dalpha = data.draw(st.integers(-1, M - 1))
    keys = subdcf_gen(M, dalpha, beta, p, m, q, r, prss)
    want = [beta if x <= dalpha else 0 for x in range(M)]
    assert decode_dcf(keys, M, q) == want
    full = [subdcf_eval_all(k) for k in keys]
    assert [sum(c) % q for c in zip(*full)] == want


def test_eval_all_matches_pointwise():
    r = random.Random(3)
    for k in subdcf_gen(20, 13, 4, 5, 2, 11, r, prss=True):
        assert subdcf_eval_all(k) == [subdcf_eval(k, x) for x in range(20)]
        assert subdcf_eval_all(k, 5) == [subdcf_eval(k, x) for x in range(5)]
