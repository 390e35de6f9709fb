"""Additive and replicated (CNF) secret sharing over a prime field.

A CNF sharing of a vector splits it into one additive component per
``m``-subset ``T`` of the parties; party ``i`` receives every component whose
subset excludes ``i``.  With ``2m < p`` any product of two components is known
to at least one party, which gives one round-free multiplication.

Subsets are 1-based sorted tuples enumerated in lexicographic order, and that
order is part of the key-file format.  Work is assigned to the smallest party
index eligible for it.

PRSS compression replaces all components but one with short seeds.  The
designated explicit subset is the lexicographically last one.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence, Union

from .errors import (
    DecodeError,
    IncompleteShares,
    InconsistentShares,
    MajorityViolation,
    ParameterMismatch,
)

Subset = tuple[int, ...]
Vector = tuple[int, ...]

SEED_BYTES = 32
PRG_VERSION = 1


def check_majority(p: int, m: int) -> None:
    if p < 1 or m < 0 or 2 * m >= p:
        raise MajorityViolation(f"need 2m < p, got p={p}, m={m}")


@lru_cache(maxsize=None)
def subsets(p: int, m: int) -> tuple[Subset, ...]:
    return tuple(combinations(range(1, p + 1), m))


@lru_cache(maxsize=None)
def held_subsets(p: int, m: int, party: int) -> tuple[Subset, ...]:
    return tuple(T for T in subsets(p, m) if party not in T)


def assignee(p: int, excluded) -> int:
    """Smallest party index outside ``excluded``."""
    for i in range(1, p + 1):
        if i not in excluded:
            return i
    raise MajorityViolation("every party is excluded")


@lru_cache(maxsize=None)
def mul_plan(p: int, m: int, party: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Cross terms party computes, as (i, (j, ...)) positions into its held list.

    Grouped by the left factor so that the sum can be evaluated as
    sum_i a_i * (b_j + b_j' + ...).
    """
    held = held_subsets(p, m, party)
    plan = []
    for i, T1 in enumerate(held):
        js = tuple(
            j for j, T2 in enumerate(held) if assignee(p, set(T1) | set(T2)) == party
        )
        if js:
            plan.append((i, js))
    return tuple(plan)


@lru_cache(maxsize=None)
def collapse_plan(p: int, m: int, party: int) -> tuple[int, ...]:
    held = held_subsets(p, m, party)
    return tuple(i for i, T in enumerate(held) if assignee(p, T) == party)


@dataclass(frozen=True)
class CnfSharing:
    p: int
    m: int
    q: int
    components: tuple[Vector, ...]  # aligned with subsets(p, m)

    @property
    def length(self) -> int:
        return len(self.components[0])

    def secret(self) -> list[int]:
        q = self.q
        return [sum(col) % q for col in zip(*self.components)]

    def view(self, party: int) -> "CnfPartyView":
        comps = tuple(
            c for T, c in zip(subsets(self.p, self.m), self.components) if party not in T
        )
        return CnfPartyView(party, self.p, self.m, self.q, comps)

    def views(self) -> list["CnfPartyView"]:
        return [self.view(i) for i in range(1, self.p + 1)]


@dataclass(frozen=True)
class CnfPartyView:
    party: int
    p: int
    m: int
    q: int
    components: tuple[Vector, ...]  # aligned with held_subsets(p, m, party)

    @property
    def subsets(self) -> tuple[Subset, ...]:
        return held_subsets(self.p, self.m, self.party)

    @property
    def length(self) -> int:
        return len(self.components[0])

    def component(self, T: Subset) -> Vector:
        return self.components[self.subsets.index(tuple(T))]

    def expand(self) -> "CnfPartyView":
        return self


def _check_secret(secret: Sequence[int]) -> None:
    if len(secret) < 1:
        raise ValueError("cannot share an empty vector")


def cnf_deal(secret: Sequence[int], p: int, m: int, q: int, rng: random.Random) -> CnfSharing:
    """Uniform components, with the last subset fixed so the sum is the secret."""
    check_majority(p, m)
    _check_secret(secret)
    n = len(secret)
    k = len(subsets(p, m))
    comps = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k - 1)]
    last = [s % q for s in secret]
    for c in comps:
        last = [(x - y) % q for x, y in zip(last, c)]
    comps.append(tuple(last))
    return CnfSharing(p, m, q, tuple(comps))


def cnf_share(secret: Sequence[int], p: int, m: int, q: int, rng: random.Random) -> list[CnfPartyView]:
    return cnf_deal(secret, p, m, q, rng).views()


def cnf_open(views: Sequence[CnfPartyView]) -> list[int]:
    if not views:
        raise IncompleteShares("no views given")
    p, m, q = views[0].p, views[0].m, views[0].q
    found: dict[Subset, Vector] = {}
    for v in views:
        v = v.expand()
        if (v.p, v.m, v.q) != (p, m, q):
            raise ParameterMismatch("views from different sharings")
        for T, c in zip(v.subsets, v.components):
            prev = found.setdefault(T, c)
            if prev != c:
                raise InconsistentShares(f"replicas of component {T} disagree")
    missing = [T for T in subsets(p, m) if T not in found]
    if missing:
        raise IncompleteShares(f"no view holds component {missing[0]}")
    return [sum(col) % q for col in zip(*(found[T] for T in subsets(p, m)))]


def _same_params(a, b) -> None:
    if (a.p, a.m, a.q, a.party) != (b.p, b.m, b.q, b.party):
        raise ParameterMismatch("views belong to different parties or parameters")


def cnf_mul_local(view_a: CnfPartyView, idx_a: int, view_b: CnfPartyView, idx_b: int) -> int:
    """This party's additive share of a[idx_a] * b[idx_b]."""
    _same_params(view_a, view_b)
    A, B = view_a.components, view_b.components
    total = 0
    for i, js in mul_plan(view_a.p, view_a.m, view_a.party):
        a = A[i][idx_a]
        if a:
            total += a * sum(B[j][idx_b] for j in js)
    return total % view_a.q


def cnf_collapse_local(view: CnfPartyView, idx: int) -> int:
    """This party's additive share of the secret at idx."""
    C = view.components
    return sum(C[i][idx] for i in collapse_plan(view.p, view.m, view.party)) % view.q


def cnf_mul_outer(view_a: CnfPartyView, view_b: CnfPartyView) -> list[list[int]]:
    """Shares of a[r] * b[c] for every (r, c), as a row-major table."""
    _same_params(view_a, view_b)
    q = view_a.q
    A, B = view_a.components, view_b.components
    w = len(B[0])
    terms = []
    for i, js in mul_plan(view_a.p, view_a.m, view_a.party):
        bsum = [sum(col) % q for col in zip(*(B[j] for j in js))]
        terms.append((A[i], bsum))
    out = []
    for r in range(len(A[0])):
        row = [0] * w
        for a_vec, bsum in terms:
            a = a_vec[r]
            if a:
                row = [(x + a * y) for x, y in zip(row, bsum)]
        out.append([x % q for x in row])
    return out


def cnf_collapse_all(view: CnfPartyView) -> list[int]:
    q = view.q
    C = view.components
    idx = collapse_plan(view.p, view.m, view.party)
    if not idx:
        return [0] * view.length
    return [sum(col) % q for col in zip(*(C[i] for i in idx))]


# PRSS


def prg_expand(seed: bytes, length: int, q: int, version: int = PRG_VERSION) -> Vector:
    """Element j is a 512-bit SHAKE-256 output of seed || j, reduced mod q."""
    if version != PRG_VERSION:
        raise DecodeError(f"unknown PRG version {version}")
    out = []
    for j in range(length):
        h = hashlib.shake_256(seed + j.to_bytes(8, "little")).digest(64)
        out.append(int.from_bytes(h, "little") % q)
    return tuple(out)


Payload = Union[bytes, Vector]


@dataclass(frozen=True)
class PrssCompressedView:
    party: int
    p: int
    m: int
    q: int
    length: int
    payloads: tuple[Payload, ...]  # aligned with held_subsets(p, m, party)
    version: int = PRG_VERSION

    @property
    def subsets(self) -> tuple[Subset, ...]:
        return held_subsets(self.p, self.m, self.party)

    @cached_property
    def _expanded(self) -> CnfPartyView:
        comps = []
        for pl in self.payloads:
            if isinstance(pl, bytes):
                comps.append(prg_expand(pl, self.length, self.q, self.version))
            else:
                comps.append(tuple(pl))
        return CnfPartyView(self.party, self.p, self.m, self.q, tuple(comps))

    def expand(self) -> CnfPartyView:
        return self._expanded

    @property
    def components(self) -> tuple[Vector, ...]:
        return self._expanded.components


View = Union[CnfPartyView, PrssCompressedView]


def explicit_subset(p: int, m: int) -> Subset:
    return subsets(p, m)[-1]


def prss_deal(
    secret: Sequence[int], p: int, m: int, q: int, rng: random.Random
) -> list[PrssCompressedView]:
    check_majority(p, m)
    _check_secret(secret)
    n = len(secret)
    subs = subsets(p, m)
    seeds = [rng.randbytes(SEED_BYTES) for _ in range(len(subs) - 1)]
    explicit = [s % q for s in secret]
    for seed in seeds:
        explicit = [(x - y) % q for x, y in zip(explicit, prg_expand(seed, n, q))]
    payload: dict[Subset, Payload] = dict(zip(subs, seeds))
    payload[subs[-1]] = tuple(explicit)
    return [
        PrssCompressedView(i, p, m, q, n, tuple(payload[T] for T in held_subsets(p, m, i)))
        for i in range(1, p + 1)
    ]


def prss_compress(sharing: CnfSharing, rng: random.Random) -> list[PrssCompressedView]:
    """Re-deal the shared secret with seed-derived components."""
    return prss_deal(sharing.secret(), sharing.p, sharing.m, sharing.q, rng)


def prss_expand(view: PrssCompressedView) -> CnfPartyView:
    return view.expand()


def share_table(
    secret: Sequence[int], p: int, m: int, q: int, rng: random.Random, prss: bool = False
) -> list[View]:
    if prss:
        return prss_deal(secret, p, m, q, rng)
    return cnf_share(secret, p, m, q, rng)


# plain additive sharing


def additive_share(
    secret: Sequence[int], p: int, q: int, rng: random.Random, prss: bool = False
) -> list[Payload]:
    """Party i < p gets a random vector (or its seed); party p gets the rest."""
    if p < 1:
        raise MajorityViolation("need at least one party")
    _check_secret(secret)
    n = len(secret)
    if prss:
        parts: list[Payload] = [rng.randbytes(SEED_BYTES) for _ in range(p - 1)]
        vecs = [prg_expand(s, n, q) for s in parts]
    else:
        vecs = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(p - 1)]
        parts = list(vecs)
    last = [s % q for s in secret]
    for v in vecs:
        last = [(x - y) % q for x, y in zip(last, v)]
    parts.append(tuple(last))
    return parts


def additive_open(parts: Sequence[Payload], length: int, q: int) -> list[int]:
    vecs = [prg_expand(pl, length, q) if isinstance(pl, bytes) else pl for pl in parts]
    return [sum(col) % q for col in zip(*vecs)]
