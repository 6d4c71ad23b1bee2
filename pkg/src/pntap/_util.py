"""Small shared helpers: compensated sums, segmenting, deterministic text."""
from __future__ import annotations

import math

import numpy as np

# Fixed internal block size for chunked reductions.  Independent of any user
# configuration so that summation order — hence output bytes — never varies.
_BLOCK = 1 << 19


def fsum(values) -> float:
    """math.fsum over an array-like (exact compensated summation)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size <= _BLOCK:
        return math.fsum(arr)
    # fsum of per-block fsums: still exact (fsum is exact on exact inputs).
    return math.fsum(
        math.fsum(arr[i : i + _BLOCK]) for i in range(0, arr.size, _BLOCK)
    )


def cfsum(values) -> complex:
    """Compensated sum of a complex array (real and imaginary parts apart)."""
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        return complex(fsum(arr.real), fsum(arr.imag))
    return complex(fsum(arr), 0.0)


def segments(lo: int, hi: int, size: int):
    """Yield (a, b) half-open chunks covering [lo, hi)."""
    a = lo
    while a < hi:
        b = min(a + size, hi)
        yield a, b
        a = b


def fmt(value) -> str:
    """Deterministic text for report files: shortest round-trip floats."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        return f"{fmt(value.real)}{'+' if value.imag >= 0 else '-'}{fmt(abs(value.imag))}j"
    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    return repr(float(value))


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
