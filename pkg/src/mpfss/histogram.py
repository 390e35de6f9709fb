"""Private histogram over DPF keys with exponent encoding.

Each client shares the point function ``bin -> 1``.  Every server multiplies,
pointwise, the full-domain shares of all clients' keys it holds.  The product
over servers of those aggregates is ``count * G`` in each bin, so one bounded
discrete log per bin recovers the histogram.
"""

from __future__ import annotations

import random
from typing import Sequence

from .ddhfss import ddh_decode_all, dpf_gen, eval_all
from .encoding import ExponentCodec
from .errors import DomainError
from .group import P256, GroupContext


def private_histogram(values: Sequence[int], bins: int, p: int, m: int,
                      ctx: GroupContext = P256, rng: random.Random | None = None,
                      bound: int = 1 << 20, prss: bool = False) -> list[int]:
    rng = rng or random.SystemRandom()
    codec = ExponentCodec(ctx, bound)
    one = codec.encode(1)
    core = ctx.core
    server_acc = [[None] * bins for _ in range(p)]
    for v in values:
        if not 0 <= v < bins:
            raise DomainError(f"client value {v} outside [0, {bins})")
        keys = dpf_gen(bins, v, one, p, m, ctx, rng, prss=prss)
        for i, k in enumerate(keys):
            server_acc[i] = core.vec_add(server_acc[i], eval_all(k))
    combined = ddh_decode_all(ctx, server_acc)
    return codec.decode_many(combined)
