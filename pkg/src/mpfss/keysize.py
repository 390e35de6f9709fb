"""Key-size accounting: measured serializations and analytic baselines.

Measured sizes count the body of each party's key file in bits; the fixed
49-byte header is excluded.  Public correction points are counted once per
party, since every party receives its own copy.  Totals sum over parties.

Analytic estimators use unit constants: they reproduce growth rates, not the
absolute sizes of the original implementations.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import astuple, dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Iterable, Sequence

from .ddhfss import dcf_gen, dpf_gen
from .errors import MajorityViolation, ParameterMismatch
from .group import P256, GroupContext
from .keyfile import HEADER_BYTES, Header, check_key_set, dump_key_set
from .sharing import check_majority
from .subfss import subdcf_gen, subdpf_gen
from .trivial import trivial_gen

MEASURED = ("ours-dpf", "ours-dcf", "bunn-it", "bunn-it-dcf", "trivial")
ANALYTIC = (
    "trivial",
    "boyle2015-dpf",
    "boyle2015-dcf",
    "riposte-ddh",
    "bunn-prg",
    "goel2025",
    "kumar-dcf",
)
CRT_SCHEMES = ("boyle2015-dpf", "boyle2015-dcf", "bunn-prg")

CSV_HEADER = ("scheme", "kind", "N", "p", "m", "q_bits", "lambda", "prss", "per_party_bits", "total_bits")


@dataclass(frozen=True)
class BenchmarkRow:
    scheme: str
    kind: str  # measured | analytic | analytic-crt
    N: int
    p: int
    m: int
    q_bits: int
    lam: int
    prss: bool
    per_party_bits: int
    total_bits: int

    def sort_key(self):
        return (self.scheme, self.N, self.p, self.q_bits)


# measurement


def measure_key_bits(blobs: Sequence[bytes], prss: bool | None = None) -> tuple[list[int], int]:
    """Per-party and total body sizes in bits for one invocation's key files."""
    headers = [Header.unpack(b) for b in blobs]
    check_key_set(headers)
    if prss is not None and any(h.prss != bool(prss) for h in headers):
        raise ParameterMismatch("PRSS flag differs from the key files")
    per = [8 * (len(b) - HEADER_BYTES) for b in blobs]
    return per, sum(per)


def generate_keys(scheme: str, N: int, p: int, m: int, ctx: GroupContext, prss: bool,
                  rng: random.Random):
    alpha = rng.randrange(N)
    q = ctx.order
    if scheme == "ours-dpf":
        return dpf_gen(N, alpha, ctx.random_generator(rng), p, m, ctx, rng, prss=prss)
    if scheme == "ours-dcf":
        return dcf_gen(N, alpha, ctx.random_generator(rng), p, m, ctx, rng, prss=prss)
    beta = rng.randrange(1, q)
    if scheme == "bunn-it":
        return subdpf_gen(N, alpha, beta, p, m, q, rng, prss)
    if scheme == "bunn-it-dcf":
        return subdcf_gen(N, alpha, beta, p, m, q, rng, prss)
    if scheme == "trivial":
        return trivial_gen(N, alpha, beta, p, q, rng, prss)
    raise ValueError(f"no implementation of {scheme!r}")


def measure_scheme(scheme: str, N: int, p: int, m: int, ctx: GroupContext = P256,
                   prss: bool = True, rng: random.Random | None = None) -> BenchmarkRow:
    rng = rng or random.SystemRandom()
    check_majority(p, m)
    keys = generate_keys(scheme, N, p, m, ctx, prss, rng)
    per, total = measure_key_bits(dump_key_set(keys, ctx, rng), prss)
    return BenchmarkRow(scheme, "measured", N, p, m, ctx.order.bit_length(),
                        ctx.security_lambda, prss, max(per), total)


# analytic estimators


def _ceil_root(n: int, k: int) -> int:
    """ceil(n ** (1/k)) for n >= 0, exactly."""
    if n < 2:
        return n
    r = isqrt(n) if k == 2 else int(round(n ** (1.0 / k)))
    while r**k < n:
        r += 1
    while r > 0 and (r - 1) ** k >= n:
        r -= 1
    return r


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def estimate_bits(scheme: str, N: int, p: int, m: int, q_bits: int, lam: int,
                  prss: bool = True, modulus: int | None = None) -> int:
    """Closed-form total key size in bits (estimate, constants unknown).

    ``q`` is ``modulus`` when given and ``2**q_bits`` otherwise.
    """
    if N < 1 or p < 1:
        raise ValueError("N and p must be positive")
    q = modulus if modulus is not None else 1 << q_bits
    sqrtN = _ceil_root(N, 2)
    if scheme == "trivial":
        plain = p * N * q_bits
        # a dealer sends explicit shares when seeds would be longer
        return min(plain, N * q_bits + (p - 1) * lam) if prss else plain
    if scheme in ("boyle2015-dpf", "boyle2015-dcf"):
        # q^((p-1)/2), rounded up when p is even
        return p * sqrtN * _ceil_root(q ** (p - 1), 2) * (q_bits + lam)
    if scheme == "riposte-ddh":
        return p * sqrtN * (lam + 256)
    if scheme == "bunn-prg":
        if 2 * m >= p:
            raise MajorityViolation(f"need 2m < p, got p={p}, m={m}")
        return p * _ceil_root(N, 4) * _ceil_root(q ** (p**m), 2) * comb(p - 1, m) * (lam + q_bits)
    if scheme == "goel2025":
        return p * sqrtN * p**3 * lam**3 * (q_bits + lam)
    if scheme == "kumar-dcf":
        half = Fraction(p - 1, 2)
        # 2^((p-1)/2), kept exact for odd p
        if half.denominator == 1:
            f = Fraction(2) ** int(half)
        else:
            f = Fraction(_ceil_root(2 ** (p - 1), 2))
        return _ceil(p * sqrtN * (lam / f + f * q_bits))
    raise ValueError(f"no estimator for {scheme!r}")


def crt_decompose(modulus: int) -> list[int]:
    """Prime-power factors of modulus, ascending (trial division)."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    out = []
    n = modulus
    d = 2
    while d * d <= n:
        if n % d == 0:
            f = 1
            while n % d == 0:
                n //= d
                f *= d
            out.append(f)
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def crt_estimate_bits(scheme: str, N: int, p: int, m: int, modulus: int, lam: int,
                      prss: bool = True) -> int:
    """Sum of per-factor estimates over the prime-power factors of modulus."""
    return sum(
        estimate_bits(scheme, N, p, m, f.bit_length(), lam, prss, modulus=f)
        for f in crt_decompose(modulus)
    )


def estimate_row(scheme: str, N: int, p: int, m: int, q_bits: int, lam: int,
                 prss: bool = True, modulus: int | None = None, crt: bool = False) -> BenchmarkRow:
    if crt:
        total = crt_estimate_bits(scheme, N, p, m, modulus, lam, prss)
    else:
        total = estimate_bits(scheme, N, p, m, q_bits, lam, prss, modulus)
    kind = "analytic-crt" if crt else "analytic"
    return BenchmarkRow(scheme, kind, N, p, m, q_bits, lam, prss, -(-total // p), total)


# sweeps


def default_m(p: int) -> int:
    return (p - 1) // 2


def sweep(
    Ns: Iterable[int],
    ps: Iterable[int],
    measured: Iterable[str] = ("ours-dpf", "bunn-it"),
    analytic: Iterable[str] = ("trivial", "riposte-ddh"),
    ctx: GroupContext = P256,
    prss: bool = True,
    rng: random.Random | None = None,
    measure_limits: dict[str, int] | None = None,
) -> list[BenchmarkRow]:
    """Rows for every (N, p) and scheme; m defaults to floor((p-1)/2).

    ``measure_limits`` caps N per measured scheme (e.g. trivial keys grow
    linearly); above the cap the analytic form is used when one exists.
    """
    rng = rng or random.SystemRandom()
    limits = {"trivial": 10**5, **(measure_limits or {})}
    q_bits, lam = ctx.order.bit_length(), ctx.security_lambda
    rows = []
    measured = list(measured)
    analytic = [s for s in analytic if s not in measured]
    for p in ps:
        m = default_m(p)
        for N in Ns:
            for s in measured:
                if N <= limits.get(s, N):
                    rows.append(measure_scheme(s, N, p, m, ctx, prss, rng))
                elif s in ANALYTIC:
                    rows.append(estimate_row(s, N, p, m, q_bits, lam, prss))
            for s in analytic:
                rows.append(estimate_row(s, N, p, m, q_bits, lam, prss))
    return sorted(rows, key=BenchmarkRow.sort_key)


def moduli_sweep(moduli: Iterable[int], N: int, p: int, lam: int = 256, prss: bool = True,
                 schemes: Sequence[str] = ("trivial", "boyle2015-dpf", "bunn-prg", "riposte-ddh"),
                 crt: bool = False) -> list[BenchmarkRow]:
    """Estimates as a function of the output modulus.

    With ``crt`` the PRG rows of composite moduli are CRT-split and tagged
    ``analytic-crt``; q_bits alone does not tell 210 from 211.
    """
    m = default_m(p)
    rows = set()
    for q in moduli:
        qb = q.bit_length()
        split = crt and len(crt_decompose(q)) > 1
        for s in schemes:
            use_crt = split and s in CRT_SCHEMES
            rows.add(estimate_row(s, N, p, m, qb, lam, prss, modulus=q, crt=use_crt))
    return sorted(rows, key=lambda r: (r.sort_key(), r.kind, r.total_bits))


def primorials(count: int) -> list[int]:
    out, acc, n = [], 1, 2
    while len(out) < count:
        if all(n % d for d in range(2, isqrt(n) + 1)):
            acc *= n
            out.append(acc)
        n += 1
    return out


def rows_to_csv(rows: Iterable[BenchmarkRow], fh=None) -> str:
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(rows, key=lambda r: (r.sort_key(), r.kind, r.total_bits)):
        vals = list(astuple(r))
        vals[7] = int(vals[7])
        w.writerow(vals)
    return buf.getvalue() if fh is None else ""


def rows_from_csv(text: str) -> list[BenchmarkRow]:
    rd = csv.reader(io.StringIO(text))
    head = next(rd)
    if tuple(head) != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    out = []
    for rec in rd:
        s, k, N, p, m, qb, lam, prss, per, tot = rec
        out.append(BenchmarkRow(s, k, int(N), int(p), int(m), int(qb), int(lam), bool(int(prss)),
                                int(per), int(tot)))
    return out

