"""Honest-majority sub-DPF and sub-DCF with additive scalar outputs.

The domain ``[0, M)`` is laid out on a ``w x w`` grid with ``w = ceil(sqrt(M))``.
A point function ``beta * [x == alpha]`` factors as ``f_a(row) * f_b(col)``
with ``f_a`` the row indicator scaled by ``beta`` and ``f_b`` the column
indicator.  Both truth tables are CNF-shared and multiplied locally.

The comparison ``beta * [x <= alpha]`` adds ``f_c(row) = beta * [row < row*]``
and uses ``f_b(col) = [col <= col*]``.  ``alpha = -1`` yields the zero
function.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

from .errors import DomainError
from .sharing import (
    View,
    check_majority,
    cnf_collapse_all,
    cnf_collapse_local,
    cnf_mul_local,
    cnf_mul_outer,
    share_table,
)


@dataclass(frozen=True)
class SubGrid:
    M: int

    def __post_init__(self):
        if self.M < 1:
            raise DomainError("domain must be non-empty")

    @property
    def w(self) -> int:
        r = isqrt(self.M)
        return r if r * r == self.M else r + 1

    def check(self, x: int) -> None:
        if not 0 <= x < self.M:
            raise DomainError(f"x={x} outside [0, {self.M})")

    def pos(self, x: int) -> tuple[int, int]:
        self.check(x)
        return divmod(x, self.w)


@dataclass(frozen=True)
class SubDpfKey:
    party: int
    grid: SubGrid
    view_a: View
    view_b: View


@dataclass(frozen=True)
class SubDcfKey:
    party: int
    grid: SubGrid
    view_a: View
    view_b: View
    view_c: View


def _tables_point(grid: SubGrid, alpha: int, beta: int, q: int):
    g, d = grid.pos(alpha)
    fa = [0] * grid.w
    fb = [0] * grid.w
    fa[g] = beta % q
    fb[d] = 1
    return fa, fb


def subdpf_gen(
    M: int, alpha: int, beta: int, p: int, m: int, q: int, rng: random.Random, prss: bool = False
) -> list[SubDpfKey]:
    check_majority(p, m)
    grid = SubGrid(M)
    fa, fb = _tables_point(grid, alpha, beta, q)
    va = share_table(fa, p, m, q, rng, prss)
    vb = share_table(fb, p, m, q, rng, prss)
    return [SubDpfKey(i + 1, grid, va[i], vb[i]) for i in range(p)]


def subdpf_eval(key: SubDpfKey, x: int) -> int:
    r, c = key.grid.pos(x)
    return cnf_mul_local(key.view_a, r, key.view_b, c)


def subdpf_eval_all(key: SubDpfKey, count: int | None = None) -> list[int]:
    """Shares for x in [0, count), default the whole domain."""
    count = key.grid.M if count is None else count
    table = cnf_mul_outer(key.view_a.expand(), key.view_b.expand())
    w = key.grid.w
    return [table[x // w][x % w] for x in range(count)]


def subdcf_gen(
    M: int, alpha: int, beta: int, p: int, m: int, q: int, rng: random.Random, prss: bool = False
) -> list[SubDcfKey]:
    check_majority(p, m)
    grid = SubGrid(M)
    w = grid.w
    fa, fb, fc = [0] * w, [0] * w, [0] * w
    if alpha != -1:
        g, d = grid.pos(alpha)
        fa[g] = beta % q
        for j in range(d + 1):
            fb[j] = 1
        for j in range(g):
            fc[j] = beta % q
    va = share_table(fa, p, m, q, rng, prss)
    vb = share_table(fb, p, m, q, rng, prss)
    vc = share_table(fc, p, m, q, rng, prss)
    return [SubDcfKey(i + 1, grid, va[i], vb[i], vc[i]) for i in range(p)]


def subdcf_eval(key: SubDcfKey, x: int) -> int:
    r, c = key.grid.pos(x)
    q = key.view_a.q
    return (cnf_mul_local(key.view_a, r, key.view_b, c) + cnf_collapse_local(key.view_c, r)) % q


def subdcf_eval_all(key: SubDcfKey, count: int | None = None) -> list[int]:
    count = key.grid.M if count is None else count
    table = cnf_mul_outer(key.view_a.expand(), key.view_b.expand())
    fc = cnf_collapse_all(key.view_c.expand())
    q = key.view_a.q
    w = key.grid.w
    return [(table[x // w][x % w] + fc[x // w]) % q for x in range(count)]


def additive_decode(shares, q: int) -> int:
    return sum(shares) % q
