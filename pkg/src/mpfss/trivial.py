"""Baseline: additively share the whole truth table."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError
from .sharing import Payload, additive_share, prg_expand


@dataclass(frozen=True)
class TrivialKey:
    party: int
    N: int
    p: int
    q: int
    payload: Payload
    prss: bool = False

    @cached_property
    def table(self) -> tuple[int, ...]:
        if isinstance(self.payload, bytes):
            return prg_expand(self.payload, self.N, self.q)
        return self.payload


def trivial_gen(N: int, alpha: int, beta: int, p: int, q: int, rng: random.Random,
                prss: bool = False, comparison: bool = False) -> list[TrivialKey]:
    if not 0 <= alpha < N:
        raise DomainError(f"alpha={alpha} outside [0, {N})")
    if comparison:
        table = [beta if x <= alpha else 0 for x in range(N)]
    else:
        table = [0] * N
        table[alpha] = beta
    parts = additive_share(table, p, q, rng, prss)
    return [TrivialKey(i + 1, N, p, q, pl, prss) for i, pl in enumerate(parts)]


def trivial_eval(key: TrivialKey, x: int) -> int:
    if not 0 <= x < key.N:
        raise DomainError(f"x={x} outside [0, {key.N})")
    return key.table[x]
