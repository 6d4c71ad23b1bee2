"""Unit-disc multiplicative functions and the pretentious distance.

A function is described by its values on prime powers (|f(p^k)| ≤ 1,
enforced), with f(1) = 1 by the empty product.  The distance between two
such functions over a prime window is

    D(f, g; y, x)² = Σ_{y < p ≤ x} (1 − Re f(p)·conj(g(p))) / p ,

accumulated with compensated summation.  Each term lies in [0, 2/p], so D²
is nonnegative, symmetric, monotone in x, and additive over a split of the
prime window.  The triangle-style inequality

    D(1, f; y, x) + D(1, g; y, x) ≥ D(1, f·g; y, x)

is the property the fuzz harness drives at; slacks below −1e−12 indicate a
broken implementation, not geometry.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._util import fsum
from .arith import ArithmeticTables
from .characters import DirichletCharacter

_UNIT_DISC_TOL = 1e-9


def _check_disc(value: complex, where: str) -> complex:
    if abs(value) > 1 + _UNIT_DISC_TOL:
        raise ValueError(f"{where} left the unit disc: |{value}| > 1")
    return value


class MultiplicativeFunction:
    """Base: subclasses supply prime-power values; evaluation is generic."""

    label = "f"
    completely_multiplicative = False

    def prime_power_value(self, p: int, k: int) -> complex:
        raise NotImplementedError

    # -- generic evaluation -------------------------------------------

    def value(self, n: int, tables: ArithmeticTables) -> complex:
        if n == 1:
            return 1.0 + 0j
        out = 1.0 + 0j
        for p, e in tables.factor(n).factors:
            out *= _check_disc(self.prime_power_value(p, e), self.label)
        return out

    def prime_values(self, primes: np.ndarray) -> np.ndarray:
        """f at an array of primes; subclasses vectorise where it pays."""
        return np.array(
            [_check_disc(self.prime_power_value(int(p), 1), self.label) for p in primes],
            dtype=np.complex128,
        )

    def values_up_to(self, limit: int, tables: ArithmeticTables) -> np.ndarray:
        """f(0..limit) (index 0 unused, f(1) = 1) by a prime-power sweep.

        Generic fallback: for each prime power q = p^e ≤ limit, the values
        at q·m with P⁻(m) > p are vals[m]·f(p^e).  Primes run descending so
        the cofactor values (built from larger primes only) already exist.
        """
        vals = np.zeros(limit + 1, dtype=np.complex128)
        vals[1] = 1.0
        spf = tables.spf[: limit + 1]
        for p in tables.primes[tables.primes <= limit][::-1]:
            p = int(p)
            q, e = p, 1
            while q <= limit:
                fpe = _check_disc(self.prime_power_value(p, e), self.label)
                m = np.arange(1, limit // q + 1)
                cop = m[(spf[m] > p)]  # includes m = 1 via the sentinel
                vals[q * cop] = vals[cop] * fpe
                q *= p
                e += 1
        return vals


class ConstantOne(MultiplicativeFunction):
    label = "one"
    completely_multiplicative = True

    def prime_power_value(self, p, k):
        return 1.0 + 0j

    def prime_values(self, primes):
        return np.ones(len(primes), dtype=np.complex128)

    def values_up_to(self, limit, tables):
        out = np.ones(limit + 1, dtype=np.complex128)
        out[0] = 0.0
        return out


class Mobius(MultiplicativeFunction):
    label = "mu"

    def prime_power_value(self, p, k):
        return complex(-1.0 if k == 1 else 0.0)

    def prime_values(self, primes):
        return np.full(len(primes), -1.0 + 0j)

    def values_up_to(self, limit, tables):
        return tables.mobius[: limit + 1].astype(np.complex128)


class CharacterFunction(MultiplicativeFunction):
    completely_multiplicative = True

    def __init__(self, chi: DirichletCharacter):
        self.chi = chi
        self.label = f"chi:{chi.modulus}:{chi.index}"

    def prime_power_value(self, p, k):
        v = self.chi(p)
        return v**k

    def prime_values(self, primes):
        table = self.chi.value_table()
        return table[np.asarray(primes) % self.chi.modulus]

    def values_up_to(self, limit, tables):
        return self.chi.values_up_to(limit)


class ArchimedeanTwist(MultiplicativeFunction):
    """n ↦ n^{it}, evaluated as e^{it·log n} in binary64."""

    completely_multiplicative = True

    def __init__(self, t: float):
        self.t = float(t)
        self.label = f"nit:{self.t:g}"

    def prime_power_value(self, p, k):
        return cmath.exp(1j * self.t * k * math.log(p))

    def value(self, n, tables=None):
        return cmath.exp(1j * self.t * math.log(n))

    def prime_values(self, primes):
        return np.exp(1j * self.t * np.log(np.asarray(primes, dtype=np.float64)))

    def values_up_to(self, limit, tables=None):
        n = np.arange(limit + 1, dtype=np.float64)
        n[0] = 1.0
        out = np.exp(1j * self.t * np.log(n))
        out[0] = 0.0
        return out


class ProductFunction(MultiplicativeFunction):
    """Pointwise product f·g (multiplicative again; values multiply)."""

    def __init__(self, f: MultiplicativeFunction, g: MultiplicativeFunction):
        self.f = f
        self.g = g
        self.label = f"{f.label}*{g.label}"
        self.completely_multiplicative = (
            f.completely_multiplicative and g.completely_multiplicative
        )

    def prime_power_value(self, p, k):
        return self.f.prime_power_value(p, k) * self.g.prime_power_value(p, k)

    def prime_values(self, primes):
        return self.f.prime_values(primes) * self.g.prime_values(primes)

    def values_up_to(self, limit, tables):
        return self.f.values_up_to(limit, tables) * self.g.values_up_to(limit, tables)


class ConjugateFunction(MultiplicativeFunction):
    def __init__(self, f: MultiplicativeFunction):
        self.f = f
        self.label = f"conj({f.label})"
        self.completely_multiplicative = f.completely_multiplicative

    def prime_power_value(self, p, k):
        return self.f.prime_power_value(p, k).conjugate()

    def prime_values(self, primes):
        return np.conj(self.f.prime_values(primes))

    def values_up_to(self, limit, tables):
        return np.conj(self.f.values_up_to(limit, tables))


class RandomUnitDisc(MultiplicativeFunction):
    """Seeded completely multiplicative function, uniform on the unit disc
    at each prime ≤ the construction bound."""

    completely_multiplicative = True

    def __init__(self, seed: int, tables: ArithmeticTables):
        self.seed = int(seed)
        self.label = f"random:{self.seed}"
        self._primes = tables.primes
        rng = np.random.default_rng(self.seed)
        r = np.sqrt(rng.uniform(size=self._primes.size))
        theta = rng.uniform(0.0, 2.0 * np.pi, size=self._primes.size)
        self._values = r * np.exp(1j * theta)

    def prime_power_value(self, p, k):
        idx = np.searchsorted(self._primes, p)
        if idx >= self._primes.size or self._primes[idx] != p:
            raise ValueError(f"{p} is not a prime within the construction bound")
        return complex(self._values[idx]) ** k

    def prime_values(self, primes):
        idx = np.searchsorted(self._primes, primes)
        return self._values[idx]


@dataclass
class DistanceValue:
    f_label: str
    g_label: str
    y: float
    x: float
    squared: float

    @property
    def value(self) -> float:
        return math.sqrt(max(self.squared, 0.0))


def squared_distance(
    f: MultiplicativeFunction,
    g: MultiplicativeFunction,
    y: float,
    x: float,
    tables: ArithmeticTables,
) -> DistanceValue:
    """D(f, g; y, x)² over y < p ≤ x (compensated summation)."""
    if not 1 <= y <= x:
        raise ValueError("need 1 <= y <= x")
    primes = tables.primes_between(y, x)
    if primes.size == 0:
        return DistanceValue(f.label, g.label, y, x, 0.0)
    fv = np.asarray(f.prime_values(primes))
    gv = np.asarray(g.prime_values(primes))
    terms = (1.0 - (fv * np.conj(gv)).real) / primes.astype(np.float64)
    return DistanceValue(f.label, g.label, y, x, fsum(terms))


def distance(f, g, y, x, tables) -> float:
    return squared_distance(f, g, y, x, tables).value


def triangle_check(f, g, y, x, tables) -> tuple[float, float, float]:
    """(lhs, rhs, slack) for D(1,f) + D(1,g) ≥ D(1, f·g)."""
    one = ConstantOne()
    lhs = distance(one, f, y, x, tables) + distance(one, g, y, x, tables)
    rhs = distance(one, ProductFunction(f, g), y, x, tables)
    return lhs, rhs, lhs - rhs


def squared_distance_chi_mu_twist(chi, t, y, x, tables) -> float:
    """D(χ, μ·n^{it}; y, x)² — the shape driving the character sum bounds."""
    g = ProductFunction(Mobius(), ArchimedeanTwist(t))
    return squared_distance(CharacterFunction(chi), g, y, x, tables).squared
