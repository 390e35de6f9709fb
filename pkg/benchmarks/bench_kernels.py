"""Compare the compiled and pure-Python curve kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--group p256|test32|all]

Both backends run the same operations on the same inputs; the script checks
that their results agree before reporting timings.
"""

import argparse
import random
import sys
import time

from mpfss import _pykernel
from mpfss.group import P256, TEST32

try:
    from mpfss import _ckernel
except ImportError:
    _ckernel = None


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads(ctx, rng):
    q = ctx.order
    pts = [ctx.random_generator(rng) for _ in range(24)]
    ks = [rng.randrange(q) for _ in range(24)]
    bases = [(pts[i], pts[i + 10]) for i in range(10)]
    scal = [(rng.randrange(q), rng.randrange(q)) for _ in range(100)]
    vec = [ctx.random_generator(rng) for _ in range(200)]
    return [
        ("mul", lambda core: core.mul(pts[0], ks[0])),
        ("muln x3", lambda core: core.muln(pts[:3], ks[:3])),
        ("grid 10x100 (k=2)", lambda core: core.grid_eval(bases, scal, 1000)),
        ("vec_add 200", lambda core: core.vec_add(vec, vec[::-1])),
        ("progression 1000", lambda core: core.progression(pts[0], pts[1], 1000)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--group", default="all", choices=("p256", "test32", "all"))
    a = ap.parse_args(argv)
    if _ckernel is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    groups = {"p256": [P256], "test32": [TEST32], "all": [TEST32, P256]}[a.group]
    print(f"{'group':8} {'operation':20} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for ctx in groups:
        cores = {
            "c": _ckernel.CurveCore(ctx.p, ctx.a, ctx.b, ctx.order),
            "py": _pykernel.CurveCore(ctx.p, ctx.a, ctx.b, ctx.order),
        }
        for name, fn in workloads(ctx, random.Random(7)):
            tc, rc = _time(lambda: fn(cores["c"]), a.repeat)
            tp, rp = _time(lambda: fn(cores["py"]), a.repeat)
            if rc != rp:
                print(f"MISMATCH in {name} on {ctx.name}", file=sys.stderr)
                return 1
            print(f"{ctx.name:8} {name:20} {tc:10.5f} {tp:10.5f} {tp / tc:8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
