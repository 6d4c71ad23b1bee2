"""Segmented sieves and exact evaluators for the basic arithmetic functions.

One build pass produces, for every n ≤ N,

    mobius[n]              μ(n) ∈ {−1, 0, 1}
    totient[n]             φ(n)
    spf[n] / gpf[n]        smallest / greatest prime factor; P⁺(1) = 1 and
                           P⁻(1) is a large integer sentinel, so the sifting
                           predicate "spf[n] > y" reads literally as
                           "n has no prime factor ≤ y" (n = 1 included)
    mangoldt_p/_k[n]       the pair (p, k) when n = p^k, else (0, 0);
                           Λ(n) = log p is taken lazily in binary64 so that
                           ψ-type sums accumulate exact log p values with
                           compensated summation (math.fsum)

The sieve walks primes p ≤ √N over fixed-size segments (numpy slice writes,
no per-n Python).  Within a segment the product of the small prime powers
dividing n is tracked; the quotient n / smallpart is then either 1 or the
single prime factor exceeding √N, which settles μ, φ, and P⁺ in one
vectorised step.

Tables serialise to a little-endian binary cache with magic ``PNTAP1``.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from ._util import fsum, segments
from .exceptions import CapacityError, TableRangeError

DEFAULT_SEGMENT_SIZE = 1 << 20
DEFAULT_MEMORY_BUDGET = 8 << 30  # bytes; ~30 B/n transient worst case

_CACHE_MAGIC = b"PNTAP1"
_CACHE_VERSION = 1


def _small_primes(bound: int) -> np.ndarray:
    """Primes ≤ bound by a plain boolean sieve (used for p ≤ √N only)."""
    if bound < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(bound + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


@dataclass
class Factorization:
    """n = ∏ p_i^{e_i} with the p_i strictly increasing."""

    n: int
    factors: list[tuple[int, int]]

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


@dataclass
class ArithmeticTables:
    limit: int
    mobius: np.ndarray
    totient: np.ndarray
    spf: np.ndarray
    gpf: np.ndarray
    mangoldt_p: np.ndarray
    mangoldt_k: np.ndarray
    # Derived, rebuilt on load:
    primes: np.ndarray = field(default=None, repr=False)
    prime_powers: np.ndarray = field(default=None, repr=False)
    prime_power_logs: np.ndarray = field(default=None, repr=False)

    @property
    def spf_sentinel(self) -> int:
        """The P⁻(1) marker: larger than any actual prime factor."""
        return int(np.iinfo(self.spf.dtype).max)

    def _derive(self) -> None:
        pp = np.nonzero(self.mangoldt_p)[0]
        self.prime_powers = pp.astype(np.int64)
        self.prime_power_logs = np.log(self.mangoldt_p[pp].astype(np.float64))
        self.primes = self.prime_powers[self.mangoldt_k[pp] == 1]

    def check_range(self, n) -> None:
        if not 1 <= n <= self.limit:
            raise TableRangeError(f"n={n} outside table range [1, {self.limit}]")

    def factor(self, n: int) -> Factorization:
        """Factor n ≤ limit by walking the smallest-prime-factor table."""
        self.check_range(n)
        n = int(n)
        m, factors = n, []
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n, factors)

    def mangoldt(self, n: int) -> float:
        """Λ(n) as binary64: log p when n = p^k, else 0.0."""
        self.check_range(n)
        p = int(self.mangoldt_p[n])
        return math.log(p) if p else 0.0

    def primes_between(self, y: float, x: float) -> np.ndarray:
        """Primes p with y < p ≤ x (table-backed; x must be ≤ limit)."""
        if x > self.limit:
            raise TableRangeError(f"x={x} beyond table limit {self.limit}")
        lo = np.searchsorted(self.primes, y, side="right")
        hi = np.searchsorted(self.primes, x, side="right")
        return self.primes[lo:hi]


def build_tables(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> ArithmeticTables:
    """Sieve all tables on [1, limit]."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if segment_size < 64:
        raise ValueError("segment_size too small")
    # Peak: four index-dtype arrays + two byte arrays + segment transients.
    idx_dtype = np.int32 if limit < 2**31 - 1 else np.int64
    itemsize = np.dtype(idx_dtype).itemsize
    estimate = (limit + 1) * (4 * itemsize + 2) + segment_size * 32
    if estimate > memory_budget:
        raise CapacityError(
            f"limit={limit} needs ~{estimate} bytes, budget is {memory_budget}"
        )

    size = limit + 1
    mobius = np.zeros(size, dtype=np.int8)
    totient = np.zeros(size, dtype=idx_dtype)
    spf = np.zeros(size, dtype=idx_dtype)
    gpf = np.zeros(size, dtype=idx_dtype)
    mangoldt_p = np.zeros(size, dtype=idx_dtype)
    mangoldt_k = np.zeros(size, dtype=np.uint8)

    sieve_primes = _small_primes(math.isqrt(limit))
    prime_chunks = []

    for lo, hi in segments(2, size, segment_size):
        seg = hi - lo
        nvals = np.arange(lo, hi, dtype=np.int64)
        smallpart = np.ones(seg, dtype=np.int64)
        phi = nvals.copy()
        mob = np.ones(seg, dtype=np.int8)
        spf_seg = np.zeros(seg, dtype=np.int64)
        gpf_seg = np.zeros(seg, dtype=np.int64)

        for p in sieve_primes:
            p = int(p)
            start = lo + (-lo) % p
            if start >= hi:
                continue
            sl = slice(start - lo, seg, p)
            phi[sl] = phi[sl] // p * (p - 1)
            mob[sl] = -mob[sl]
            gpf_seg[sl] = p
            smallpart[sl] *= p
            q = p * p
            while q < hi:
                qstart = lo + (-lo) % q
                if qstart < hi:
                    qsl = slice(qstart - lo, seg, q)
                    smallpart[qsl] *= p
                    if q == p * p:
                        mob[qsl] = 0
                q *= p

        for p in sieve_primes[::-1]:
            p = int(p)
            start = lo + (-lo) % p
            if start < hi:
                spf_seg[start - lo :: p] = p

        big = nvals // smallpart
        large = big > 1  # exactly one prime factor > √limit
        mob[large] = -mob[large]
        phi[large] = phi[large] // big[large] * (big[large] - 1)
        gpf_seg[large] = big[large]
        fresh = spf_seg == 0  # untouched by p ≤ √limit ⇒ n itself is prime
        spf_seg[fresh] = nvals[fresh]

        mobius[lo:hi] = mob
        totient[lo:hi] = phi.astype(idx_dtype)
        spf[lo:hi] = spf_seg.astype(idx_dtype)
        gpf[lo:hi] = gpf_seg.astype(idx_dtype)
        prime_chunks.append(nvals[spf_seg == nvals].astype(np.int64))

    mobius[1] = 1
    totient[1] = 1
    gpf[1] = 1
    spf[1] = np.iinfo(idx_dtype).max

    primes = (
        np.concatenate(prime_chunks) if prime_chunks else np.empty(0, np.int64)
    )
    if primes.size:
        mangoldt_p[primes] = primes.astype(idx_dtype)
        mangoldt_k[primes] = 1
    for p in sieve_primes:
        p = int(p)
        q, e = p * p, 2
        while q <= limit:
            mangoldt_p[q] = p
            mangoldt_k[q] = e
            q *= p
            e += 1

    tables = ArithmeticTables(
        limit=limit,
        mobius=mobius,
        totient=totient,
        spf=spf,
        gpf=gpf,
        mangoldt_p=mangoldt_p,
        mangoldt_k=mangoldt_k,
    )
    tables._derive()
    return tables


def chebyshev_psi(x: float, tables: ArithmeticTables, reverse: bool = False) -> float:
    """ψ(x) = Σ_{p^k ≤ x} log p, compensated.

    ``reverse`` re-sums in descending order — an order-insensitivity probe,
    not a speedup.
    """
    if x < 1:
        return 0.0
    if x > tables.limit:
        raise TableRangeError(f"x={x} beyond table limit {tables.limit}")
    hi = np.searchsorted(tables.prime_powers, math.floor(x), side="right")
    logs = tables.prime_power_logs[:hi]
    return fsum(logs[::-1] if reverse else logs)


def theta_sum(u: float, tables: ArithmeticTables) -> float:
    """θ(u) = Σ_{p ≤ u} log p, compensated."""
    if u < 2:
        return 0.0
    if u > tables.limit:
        raise TableRangeError(f"u={u} beyond table limit {tables.limit}")
    hi = np.searchsorted(tables.primes, math.floor(u), side="right")
    return fsum(np.log(tables.primes[:hi].astype(np.float64)))


def dirichlet_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f∗g)[n] = Σ_{ab=n} f[a]g[b] on value arrays indexed by n (index 0 unused).

    Exact when both inputs are integer arrays (int64 accumulation).
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape or f.ndim != 1 or f.size < 2:
        raise ValueError("f and g must be equal-length 1-d arrays with size >= 2")
    n = f.size - 1
    dtype = np.result_type(f.dtype, g.dtype)
    if dtype.kind in "iu":
        dtype = np.int64
    out = np.zeros(n + 1, dtype=dtype)
    for a in range(1, n + 1):
        fa = f[a]
        if fa == 0:
            continue
        m = n // a
        out[a :: a][: m] += fa * g[1 : m + 1]
    return out


def tau_r(n: int, r: int, tables: ArithmeticTables | None = None, approximate: bool = False):
    """r-fold divisor function: τ_r(n) = ∏_i C(e_i + r − 1, r − 1), exact.

    Counts ordered r-tuples with product n.  Python integers do not
    overflow, so exact mode always succeeds; ``approximate=True`` returns a
    binary64 value instead for callers that want floats.
    """
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    if tables is not None and n <= tables.limit:
        factors = tables.factor(n).factors
    else:
        factors = _trial_factor(n)
    out = 1
    for _, e in factors:
        out *= math.comb(e + r - 1, r - 1)
    return float(out) if approximate else out


def _trial_factor(n: int) -> list[tuple[int, int]]:
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def save_tables(tables: ArithmeticTables, path) -> None:
    """Write the core arrays to a little-endian versioned cache file."""
    named = [
        ("mobius", tables.mobius, "<i1"),
        ("totient", tables.totient, "<i8"),
        ("spf", tables.spf, "<i8"),
        ("gpf", tables.gpf, "<i8"),
        ("mangoldt_p", tables.mangoldt_p, "<i8"),
        ("mangoldt_k", tables.mangoldt_k, "<u1"),
    ]
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<IQ I", _CACHE_VERSION, tables.limit, len(named)))
        for name, arr, code in named:
            data = np.ascontiguousarray(arr, dtype=code).tobytes()
            raw = name.encode("ascii")
            fh.write(struct.pack("<H", len(raw)))
            fh.write(raw)
            code_b = code.encode("ascii")
            fh.write(struct.pack("<H", len(code_b)))
            fh.write(code_b)
            fh.write(struct.pack("<Q", len(data)))
            fh.write(data)


def load_tables(path) -> ArithmeticTables:
    with open(path, "rb") as fh:
        magic = fh.read(6)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"not a table cache (magic {magic!r})")
        version, limit, count = struct.unpack("<IQ I", fh.read(struct.calcsize("<IQ I")))
        if version != _CACHE_VERSION:
            raise ValueError(f"unsupported cache version {version}")
        arrays = {}
        for _ in range(count):
            (name_len,) = struct.unpack("<H", fh.read(2))
            name = fh.read(name_len).decode("ascii")
            (code_len,) = struct.unpack("<H", fh.read(2))
            code = fh.read(code_len).decode("ascii")
            (nbytes,) = struct.unpack("<Q", fh.read(8))
            arrays[name] = np.frombuffer(fh.read(nbytes), dtype=code).copy()
    idx_dtype = np.int32 if limit < 2**31 - 1 else np.int64
    tables = ArithmeticTables(
        limit=int(limit),
        mobius=arrays["mobius"].astype(np.int8),
        totient=arrays["totient"].astype(idx_dtype),
        spf=arrays["spf"].astype(idx_dtype),
        gpf=arrays["gpf"].astype(idx_dtype),
        mangoldt_p=arrays["mangoldt_p"].astype(idx_dtype),
        mangoldt_k=arrays["mangoldt_k"].astype(np.uint8),
    )
    # Restore the sentinel exactly (dtype max may differ across widths).
    tables.spf[1] = np.iinfo(idx_dtype).max
    tables._derive()
    return tables
