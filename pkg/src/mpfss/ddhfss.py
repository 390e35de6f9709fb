"""DDH-based multi-party DPF and DCF with cube-root key size.

The domain ``[0, N)`` is viewed as a ``nu^2 x nu`` grid, ``nu = ceil(N^(1/3))``,
with ``x = gamma * nu + delta``.  Two sub-DPF keys over the ``nu^2`` rows
share ``r`` and ``1`` at the target row; each column ``delta`` carries a public
pair ``(g_delta, h_delta)`` with ``h_delta = g_delta^(-1/r)``, except that the
target column also absorbs ``g_beta^(1/r)``.  A party's output share is
``h^{[s_a]} * g^{[s_b]}``; the product of all shares is ``g_beta`` at ``alpha``
and the identity elsewhere.

The DCF adds a sub-DCF key sharing ``s`` on the rows strictly below the target
row and a public ``u = g_beta^(1/s)``, and puts the ``g_beta`` factor into
every column up to the target column.

Group elements are the affine tuples of :mod:`mpfss.group`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DomainError, ParameterMismatch
from .group import Element, GroupContext, scalar_inverse
from .sharing import check_majority
from .subfss import (
    SubDcfKey,
    SubDpfKey,
    subdcf_eval,
    subdcf_eval_all,
    subdcf_gen,
    subdpf_eval,
    subdpf_eval_all,
    subdpf_gen,
)


def cube_width(N: int) -> int:
    """Smallest nu with nu^3 >= N."""
    if N < 1:
        raise DomainError("domain must be non-empty")
    nu = max(1, round(N ** (1 / 3)))
    while nu**3 < N:
        nu += 1
    while nu > 1 and (nu - 1) ** 3 >= N:
        nu -= 1
    return nu


@dataclass(frozen=True)
class GridPos:
    gamma: int
    delta: int


def grid_pos(x: int, nu: int) -> GridPos:
    if not 0 <= x < nu**3:
        raise DomainError(f"x={x} outside [0, {nu**3})")
    g, d = divmod(x, nu)
    return GridPos(g, d)


@dataclass(frozen=True)
class DpfKey:
    party: int
    N: int
    nu: int
    ctx: GroupContext
    key_a: SubDpfKey
    key_b: SubDpfKey
    g: tuple[Element, ...]
    h: tuple[Element, ...]

    @property
    def p(self) -> int:
        return self.key_a.view_a.p

    @property
    def m(self) -> int:
        return self.key_a.view_a.m


@dataclass(frozen=True)
class DcfKey(DpfKey):
    key_c: SubDcfKey = None
    u: Element = None


AnyKey = Union[DpfKey, DcfKey]


def _check_alpha(N: int, alpha: int) -> None:
    if not 0 <= alpha < N:
        raise DomainError(f"alpha={alpha} outside [0, {N})")


def _corrections(ctx, nu, r_inv, target, g_beta, rng, self_check):
    """Column pairs; ``target(delta)`` says whether the column carries g_beta."""
    q = ctx.order
    core = ctx.core
    ks = [ctx.random_scalar(rng) for _ in range(nu)]
    g = [ctx.exp_g(k) for k in ks]
    # h = g_delta^(-r_inv) computed from the known exponent
    h = [ctx.exp_g(-k * r_inv % q) for k in ks]
    if g_beta is not None:
        gb = ctx.exp(g_beta, r_inv)
        h = [core.add(hd, gb) if target(d) else hd for d, hd in enumerate(h)]
    if self_check:
        for d in range(nu):
            if g_beta is None or not target(d):
                if h[d] != ctx.exp(g[d], -r_inv):
                    raise RuntimeError(f"correction point {d} failed the self-check")
    return tuple(g), tuple(h)


def dpf_gen(
    N: int,
    alpha: int,
    g_beta: Element,
    p: int,
    m: int,
    ctx: GroupContext,
    rng: random.Random | None = None,
    prss: bool = False,
    self_check: bool = False,
) -> list[DpfKey]:
    """Keys for x -> g_beta if x == alpha else identity."""
    rng = rng or random.SystemRandom()
    check_majority(p, m)
    _check_alpha(N, alpha)
    nu = cube_width(N)
    pos = grid_pos(alpha, nu)
    q = ctx.order
    r = ctx.random_scalar(rng)
    r_inv = scalar_inverse(r, q)
    ka = subdpf_gen(nu * nu, pos.gamma, r, p, m, q, rng, prss)
    kb = subdpf_gen(nu * nu, pos.gamma, 1, p, m, q, rng, prss)
    g, h = _corrections(ctx, nu, r_inv, lambda d: d == pos.delta, g_beta, rng, self_check)
    return [DpfKey(i + 1, N, nu, ctx, ka[i], kb[i], g, h) for i in range(p)]


def dcf_gen(
    N: int,
    alpha: int,
    g_beta: Element,
    p: int,
    m: int,
    ctx: GroupContext,
    rng: random.Random | None = None,
    prss: bool = False,
    self_check: bool = False,
) -> list[DcfKey]:
    """Keys for x -> g_beta if x <= alpha else identity."""
    rng = rng or random.SystemRandom()
    check_majority(p, m)
    _check_alpha(N, alpha)
    nu = cube_width(N)
    pos = grid_pos(alpha, nu)
    q = ctx.order
    r = ctx.random_scalar(rng)
    r_inv = scalar_inverse(r, q)
    s = ctx.random_scalar(rng)
    s_inv = scalar_inverse(s, q)
    ka = subdpf_gen(nu * nu, pos.gamma, r, p, m, q, rng, prss)
    kb = subdpf_gen(nu * nu, pos.gamma, 1, p, m, q, rng, prss)
    kc = subdcf_gen(nu * nu, pos.gamma - 1, s, p, m, q, rng, prss)
    g, h = _corrections(ctx, nu, r_inv, lambda d: d <= pos.delta, g_beta, rng, self_check)
    u = ctx.exp(g_beta, s_inv)
    return [
        DcfKey(i + 1, N, nu, ctx, ka[i], kb[i], g, h, key_c=kc[i], u=u) for i in range(p)
    ]


def _check_x(key: AnyKey, x: int) -> GridPos:
    if not 0 <= x < key.N:
        raise DomainError(f"x={x} outside [0, {key.N})")
    return grid_pos(x, key.nu)


def dpf_eval(key: DpfKey, x: int) -> Element:
    pos = _check_x(key, x)
    sa = subdpf_eval(key.key_a, pos.gamma)
    sb = subdpf_eval(key.key_b, pos.gamma)
    return key.ctx.multi_exp((key.h[pos.delta], key.g[pos.delta]), (sa, sb))


def dcf_eval(key: DcfKey, x: int) -> Element:
    pos = _check_x(key, x)
    sa = subdpf_eval(key.key_a, pos.gamma)
    sb = subdpf_eval(key.key_b, pos.gamma)
    sc = subdcf_eval(key.key_c, pos.gamma)
    return key.ctx.multi_exp((key.h[pos.delta], key.g[pos.delta], key.u), (sa, sb, sc))


def eval_key(key: AnyKey, x: int) -> Element:
    return dcf_eval(key, x) if isinstance(key, DcfKey) else dpf_eval(key, x)


def eval_all(key: AnyKey) -> list[Element]:
    """Shares for every x in [0, N), in order."""
    rows = -(-key.N // key.nu)
    sa = subdpf_eval_all(key.key_a, rows)
    sb = subdpf_eval_all(key.key_b, rows)
    if isinstance(key, DcfKey):
        sc = subdcf_eval_all(key.key_c, rows)
        bases = [(h, g, key.u) for h, g in zip(key.h, key.g)]
        scal = list(zip(sa, sb, sc))
    else:
        bases = list(zip(key.h, key.g))
        scal = list(zip(sa, sb))
    return key.ctx.core.grid_eval(bases, scal, key.N)


dpf_eval_all = dcf_eval_all = eval_all


def ddh_decode(ctx: GroupContext, shares: Sequence[Element]) -> Element:
    return ctx.prod(shares)


def ddh_decode_all(ctx: GroupContext, share_lists: Sequence[Sequence[Element]]) -> list[Element]:
    """Pointwise product of several parties' full-domain shares."""
    if not share_lists:
        return []
    n = len(share_lists[0])
    acc = list(share_lists[0])
    for lst in share_lists[1:]:
        if len(lst) != n:
            raise ParameterMismatch("share vectors differ in length")
        acc = ctx.core.vec_add(acc, lst)
    return acc
