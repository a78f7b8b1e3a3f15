"""Integer recurrence sequences that parametrize the defective-pair families.

Eight sequences, all second order with constant coefficients:

    phi     Fibonacci numbers, extended down to index -2
    psi     Lucas numbers, extended down to index -2
    pi      Pell numbers, extended down to index -1
    rho     half companion Pell numbers, extended down to index -1
    zeta0..zeta3   the four s(k+1) = 4 s(k) - s(k-1) sequences used for
                   index 12, each extended down to index -1

The negative-index seeds are the unique downward continuation of each
recurrence; family formulas evaluate them at small negative indices, so
they are part of the contract, not an implementation convenience.

All values are exact (unbounded) integers.  Elements grow exponentially:
phi(100) no longer fits in 64 bits.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum


class SequenceId(str, Enum):
    PHI = "phi"
    PSI = "psi"
    PI = "pi"
    RHO = "rho"
    ZETA0 = "zeta0"
    ZETA1 = "zeta1"
    ZETA2 = "zeta2"
    ZETA3 = "zeta3"


class IndexBelowMinimumError(ValueError):
    """Requested index precedes the first defined element of the sequence."""


@dataclass(frozen=True)
class SequenceSpec:
    """One recurrence s(k+1) = coeff_a * s(k) + coeff_b * s(k-1) with its seeds.

    seed0 and seed1 are the values at min_index and min_index + 1.
    """

    id: SequenceId
    coeff_a: int
    coeff_b: int
    min_index: int
    seed0: int
    seed1: int


SPECS: dict[SequenceId, SequenceSpec] = {
    SequenceId.PHI: SequenceSpec(SequenceId.PHI, 1, 1, -2, -1, 1),
    SequenceId.PSI: SequenceSpec(SequenceId.PSI, 1, 1, -2, 3, -1),
    SequenceId.PI: SequenceSpec(SequenceId.PI, 2, 1, -1, 1, 0),
    SequenceId.RHO: SequenceSpec(SequenceId.RHO, 2, 1, -1, -1, 1),
    SequenceId.ZETA0: SequenceSpec(SequenceId.ZETA0, 4, -1, -1, -1, 0),
    SequenceId.ZETA1: SequenceSpec(SequenceId.ZETA1, 4, -1, -1, 2, 1),
    SequenceId.ZETA2: SequenceSpec(SequenceId.ZETA2, 4, -1, -1, 1, 1),
    SequenceId.ZETA3: SequenceSpec(SequenceId.ZETA3, 4, -1, -1, -1, 1),
}

ZETAS = (SequenceId.ZETA0, SequenceId.ZETA1, SequenceId.ZETA2, SequenceId.ZETA3)

# Shared append-only memo.  Fills are idempotent (values are deterministic),
# extension is serialized by a lock, and readers never see a torn list under
# the GIL, so concurrent use behaves as if the cache were absent.
_cache: dict[SequenceId, list[int]] = {}
_cache_lock = threading.Lock()
_cache_enabled = True


def set_cache_enabled(enabled: bool) -> None:
    """Toggle the shared memo.  Results are identical either way."""
    global _cache_enabled
    _cache_enabled = enabled


def seq_eval(seq: SequenceId, k: int) -> int:
    """Exact k-th element of the sequence."""
    spec = SPECS[seq]
    if k < spec.min_index:
        raise IndexBelowMinimumError(
            f"{seq.value} is defined for k >= {spec.min_index}, got k={k}"
        )
    i = k - spec.min_index
    if not _cache_enabled:
        lo, hi = spec.seed0, spec.seed1
        if i == 0:
            return lo
        for _ in range(i - 1):
            lo, hi = hi, spec.coeff_a * hi + spec.coeff_b * lo
        return hi
    vals = _cache.setdefault(seq, [spec.seed0, spec.seed1])
    if len(vals) <= i:
        with _cache_lock:
            while len(vals) <= i:
                vals.append(spec.coeff_a * vals[-1] + spec.coeff_b * vals[-2])
    return vals[i]


def seq_range(seq: SequenceId, k_from: int, k_to: int) -> list[int]:
    """Elements k_from..k_to inclusive (k_from <= k_to required)."""
    if k_to < k_from:
        raise ValueError(f"empty range: k_from={k_from} > k_to={k_to}")
    spec = SPECS[seq]
    if k_from < spec.min_index:
        raise IndexBelowMinimumError(
            f"{seq.value} is defined for k >= {spec.min_index}, got k_from={k_from}"
        )
    return [seq_eval(seq, k) for k in range(k_from, k_to + 1)]
