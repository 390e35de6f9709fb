"""Command-line interface: ``mpfss keygen|eval|decode|bench|histogram``.

Exit status is 0 on success, 2 on invalid input and 1 on runtime failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import keyfile, keysize
from .ddhfss import dcf_gen, ddh_decode_all, dpf_gen, eval_all, eval_key
from .encoding import EXPONENT, POINT, make_codec
from .errors import (
    DecodeError,
    DomainError,
    EncodingFailure,
    IncompleteShares,
    InconsistentShares,
    InvalidScalar,
    MajorityViolation,
    OutOfRangeError,
    ParameterMismatch,
    RangeError,
)
from .group import get_group
from .histogram import private_histogram

VALIDATION = (
    DecodeError, DomainError, InvalidScalar, MajorityViolation, ParameterMismatch,
    RangeError, IncompleteShares, InconsistentShares,
)

CODECS = {"exponent": EXPONENT, "point": POINT}


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _rng(seed):
    # seeded runs are reproducible, not secret
    return random.Random(seed) if seed is not None else random.SystemRandom()


def _int_list(text: str) -> list[int]:
    return [int(float(t)) for t in text.split(",") if t]


def _range(text: str, N: int) -> tuple[int, int]:
    if text is None:
        return 0, N
    if ":" in text:
        a, b = text.split(":", 1)
        return int(a or 0), int(b or N)
    x = int(text)
    return x, x + 1


def cmd_keygen(a) -> None:
    ctx = get_group(a.group)
    codec = make_codec(a.encoding, ctx, a.bound if a.encoding == "exponent" else None)
    g_beta = codec.encode(a.beta)
    rng = _rng(a.seed)
    gen = dcf_gen if a.scheme == "dcf" else dpf_gen
    keys = gen(a.N, a.alpha, g_beta, a.parties, a.corrupt, ctx, rng, prss=a.prss)
    blobs = keyfile.dump_key_set(keys, ctx, rng, codec=codec.codec_id, codec_param=codec.param)
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    per, total = keysize.measure_key_bits(blobs)
    for i, b in enumerate(blobs, 1):
        path = out / f"key_{i}.bin"
        path.write_bytes(b)
        print(f"{path}\t{per[i - 1]} bits")
    print(f"total\t{total} bits")


def cmd_eval(a) -> None:
    data = Path(a.key).read_bytes()
    hdr, key = keyfile.load_key(data)
    if hdr.scheme not in (keyfile.DPF, keyfile.DCF):
        raise DecodeError("eval expects a DPF or DCF key file")
    start, stop = _range(a.x, key.N)
    if not 0 <= start < stop <= key.N:
        raise DomainError(f"points [{start}, {stop}) outside [0, {key.N})")
    if start == 0 and stop == key.N:
        shares = eval_all(key)
    else:
        shares = [eval_key(key, x) for x in range(start, stop)]
    Path(a.out).write_bytes(keyfile.dump_shares(hdr, key.ctx, start, shares))
    print(f"{a.out}\t{len(shares)} shares")


def cmd_decode(a) -> None:
    loaded = [keyfile.load_shares(Path(f).read_bytes()) for f in a.shares]
    headers = [h for h, _, _ in loaded]
    keyfile.check_key_set(headers)
    starts = {(s, len(e)) for _, s, e in loaded}
    if len(starts) != 1:
        raise ParameterMismatch("share files cover different points")
    hdr = headers[0]
    start, _ = starts.pop()
    ctx = get_group(hdr.group_id)
    codec_id = CODECS[a.encoding] if a.encoding else hdr.codec
    param = a.bound if a.bound is not None else (hdr.codec_param or None)
    codec = make_codec(codec_id, ctx, param)
    combined = ddh_decode_all(ctx, [e for _, _, e in loaded])
    lines = []
    for k, e in enumerate(combined):
        try:
            v = codec.decode(e)
        except OutOfRangeError as exc:
            raise OutOfRangeError(f"point {start + k}: {exc}") from None
        lines.append(f"{start + k}\t{v}")
    text = "\n".join(lines) + "\n"
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bench(a) -> None:
    ctx = get_group(a.group)
    rng = _rng(a.seed)
    rows = []
    if a.Ns:
        limits = {s: a.measure_max_N for s in keysize.MEASURED if s != "trivial"}
        rows += keysize.sweep(
            _int_list(a.Ns), _int_list(a.ps), a.measured.split(","), a.analytic.split(","),
            ctx, a.prss, rng, limits,
        )
    if a.moduli:
        mods = _int_list(a.moduli)
        if a.primorials:
            mods += keysize.primorials(a.primorials)
        for p in _int_list(a.ps):
            rows += keysize.moduli_sweep(mods, a.moduli_N, p, ctx.security_lambda, a.prss, crt=a.crt)
    text = keysize.rows_to_csv(rows)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_histogram(a) -> None:
    ctx = get_group(a.group)
    rng = _rng(a.seed)
    if a.values:
        values = _int_list(a.values)
    else:
        values = [rng.randrange(a.N) for _ in range(a.clients)]
    hist = private_histogram(values, a.N, a.parties, a.corrupt, ctx, rng, a.bound, a.prss)
    plain = [0] * a.N
    for v in values:
        plain[v] += 1
    for b, c in enumerate(hist):
        print(f"{b}\t{c}")
    if hist != plain:
        raise CliError("decoded histogram differs from the plaintext count", 1)


def _common(sp):
    sp.add_argument("--group", default="p256", help="p256 (default) or test32")
    sp.add_argument("--seed", type=int, default=None, help="deterministic randomness")
    sp.add_argument("--prss", action=argparse.BooleanOptionalAction, default=False)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mpfss", description="Multi-party DDH-based DPF/DCF toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    k = sub.add_parser("keygen", help="generate one key file per party")
    k.add_argument("--scheme", choices=("dpf", "dcf"), default="dpf")
    k.add_argument("--N", type=int, required=True)
    k.add_argument("--alpha", type=int, required=True)
    k.add_argument("--beta", type=int, required=True)
    k.add_argument("--parties", type=int, default=3)
    k.add_argument("--corrupt", type=int, default=None, help="default floor((p-1)/2)")
    k.add_argument("--encoding", choices=tuple(CODECS), default="exponent")
    k.add_argument("--bound", type=int, default=1 << 20)
    k.add_argument("--out", default="keys")
    _common(k)
    k.set_defaults(func=cmd_keygen)

    e = sub.add_parser("eval", help="evaluate a key file")
    e.add_argument("--key", required=True)
    e.add_argument("--x", default=None, help="a point or a range a:b (default: whole domain)")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("decode", help="combine one share file per party")
    d.add_argument("shares", nargs="+")
    d.add_argument("--encoding", choices=tuple(CODECS), default=None, help="default: from the files")
    d.add_argument("--bound", type=int, default=None)
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_decode)

    b = sub.add_parser("bench", help="key-size sweep as CSV")
    b.add_argument("--Ns", default="100,1000,10000,100000,1000000")
    b.add_argument("--ps", default="5")
    b.add_argument("--measured", default="ours-dpf,bunn-it")
    b.add_argument("--analytic", default="trivial,riposte-ddh")
    b.add_argument("--measure-max-N", type=int, default=10**9)
    b.add_argument("--moduli", default="", help="output moduli for the estimator sweep")
    b.add_argument("--primorials", type=int, default=0, help="append the first k primorials")
    b.add_argument("--moduli-N", type=int, default=10**6)
    b.add_argument("--crt", action="store_true")
    b.add_argument("--out", default=None)
    _common(b)
    b.set_defaults(func=cmd_bench, prss=True)

    h = sub.add_parser("histogram", help="private histogram demo")
    h.add_argument("--clients", type=int, default=100)
    h.add_argument("--N", type=int, default=32, help="number of bins")
    h.add_argument("--values", default=None, help="comma-separated client values")
    h.add_argument("--parties", type=int, default=3)
    h.add_argument("--corrupt", type=int, default=None)
    h.add_argument("--bound", type=int, default=1 << 20)
    _common(h)
    h.set_defaults(func=cmd_histogram)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    if getattr(a, "corrupt", 0) is None:
        a.corrupt = (a.parties - 1) // 2
    try:
        a.func(a)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except VALIDATION as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OutOfRangeError, EncodingFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
