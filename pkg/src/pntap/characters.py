"""Dirichlet characters mod q with exact root-of-unity algebra.

The unit group (ℤ/qℤ)* is split through the CRT into cyclic factors:

  * one factor of order φ(p^e) per odd prime power p^e ∥ q, generated by a
    primitive root chosen once per prime (the smallest that is primitive
    mod p², hence primitive mod every p^e — keeping generators consistent
    between a modulus and its conductor quotients);
  * for 2^e ∥ q: nothing (e ≤ 1), the order-2 factor ⟨3⟩ (e = 2), or
    ⟨−1⟩ × ⟨5⟩ of orders 2 and 2^{e−2} (e ≥ 3).

A character is an exponent vector (m_j) against those generators, and every
value is carried as an integer exponent a modulo the group exponent
L = lcm_j d_j, meaning χ(n) = e^{2πi·a/L}.  All group algebra —
multiplicativity, orthogonality, conductors, primitive parts — is done on
integers; floats appear only when a caller asks for complex values.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=None)
def _canonical_root(p: int) -> int:
    """Smallest primitive root mod p that is also primitive mod p²."""
    rs = [r for r, _ in _factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // r, p) != 1 for r in rs):
            break
        g += 1
    if p * p < 1 << 62 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass
class CyclicFactor:
    prime: int
    power: int  # the component modulus p^e (or 2^e)
    generator: int
    order: int
    dlog: np.ndarray  # length `power`; exponent of n mod power, −1 off units


def _odd_factor(p: int, e: int) -> CyclicFactor:
    q = p**e
    order = q // p * (p - 1)
    g = _canonical_root(p) % q
    dlog = np.full(q, -1, dtype=np.int64)
    acc = 1
    for k in range(order):
        dlog[acc] = k
        acc = acc * g % q
    return CyclicFactor(p, q, g, order, dlog)


def _two_factors(e: int) -> list[CyclicFactor]:
    if e <= 1:
        return []
    q = 1 << e
    if e == 2:
        dlog = np.full(4, -1, dtype=np.int64)
        dlog[1], dlog[3] = 0, 1
        return [CyclicFactor(2, 4, 3, 2, dlog)]
    half = 1 << (e - 2)
    sign = np.full(q, -1, dtype=np.int64)
    five = np.full(q, -1, dtype=np.int64)
    acc = 1
    for b in range(half):
        sign[acc], five[acc] = 0, b
        sign[q - acc], five[q - acc] = 1, b
        acc = acc * 5 % q
    return [
        CyclicFactor(2, q, q - 1, 2, sign),
        CyclicFactor(2, q, 5, half, five),
    ]


class CharacterGroup:
    """The full character group mod q; build through :func:`character_group`."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus
        self.factors: list[CyclicFactor] = []
        for p, e in _factorize(modulus):
            if p == 2:
                self.factors.extend(_two_factors(e))
            else:
                self.factors.append(_odd_factor(p, e))
        self.exponent = math.lcm(*(f.order for f in self.factors)) if self.factors else 1
        self.phi = math.prod(f.order for f in self.factors)
        residues = np.arange(modulus, dtype=np.int64)
        self.unit_mask = np.gcd(residues, modulus) == 1 if modulus > 1 else np.ones(1, bool)
        # Per-factor discrete logs re-indexed mod q, for vectorised tables.
        self._dlog_mod_q = [f.dlog[residues % f.power] for f in self.factors]

    # -- enumeration ---------------------------------------------------

    def character(self, exponents) -> "DirichletCharacter":
        exponents = tuple(int(m) % f.order for m, f in zip(exponents, self.factors))
        if len(exponents) != len(self.factors):
            raise ValueError("exponent vector length mismatch")
        return DirichletCharacter(self, exponents)

    def character_by_index(self, index: int) -> "DirichletCharacter":
        if not 0 <= index < self.phi:
            raise ValueError(f"character index {index} outside [0, {self.phi})")
        exps = []
        rem = index
        for f in reversed(self.factors):
            rem, m = divmod(rem, f.order)
            exps.append(m)
        return self.character(tuple(reversed(exps)))

    def characters(self):
        for i in range(self.phi):
            yield self.character_by_index(i)

    @property
    def principal(self) -> "DirichletCharacter":
        return self.character((0,) * len(self.factors))

    def real_characters(self) -> list["DirichletCharacter"]:
        # χ is real iff χ² = χ₀, i.e. every exponent is 0 or order/2; build
        # the 2^#factors candidates directly instead of scanning all φ(q).
        choices = [(0,) if f.order % 2 else (0, f.order // 2) for f in self.factors]
        out = [self.character(exps) for exps in itertools.product(*choices)]
        out.sort(key=lambda chi: chi.index)
        return out

    # -- exact sums ----------------------------------------------------

    def orthogonality_sum(self, a: int, b: int) -> int:
        """Σ_χ χ(a) conj(χ(b)), exactly, via per-factor geometric sums.

        Equals φ(q) when a ≡ b (mod q) and 0 otherwise.
        """
        if math.gcd(a, self.modulus) != 1 or math.gcd(b, self.modulus) != 1:
            raise ValueError("orthogonality sum needs gcd(a, q) = gcd(b, q) = 1")
        total = 1
        for f in self.factors:
            k = int(f.dlog[a % f.power]) - int(f.dlog[b % f.power])
            total *= f.order if k % f.order == 0 else 0
        return total


@lru_cache(maxsize=2048)
def character_group(modulus: int) -> CharacterGroup:
    return CharacterGroup(modulus)


class DirichletCharacter:
    """χ mod q as an exponent vector against the group's generators."""

    def __init__(self, group: CharacterGroup, exponents: tuple[int, ...]):
        self.group = group
        self.exponents = exponents
        self._tables: dict[str, np.ndarray] = {}

    # -- structure -----------------------------------------------------

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def index(self) -> int:
        idx = 0
        for f, m in zip(self.group.factors, self.exponents):
            idx = idx * f.order + m
        return idx

    @property
    def order(self) -> int:
        return math.lcm(
            *(f.order // math.gcd(f.order, m) for f, m in zip(self.group.factors, self.exponents))
        ) if self.group.factors else 1

    @property
    def is_principal(self) -> bool:
        return all(m == 0 for m in self.exponents)

    @property
    def delta(self) -> int:
        """1 on the principal character, else 0."""
        return 1 if self.is_principal else 0

    @property
    def is_real(self) -> bool:
        return all(2 * m % f.order == 0 for f, m in zip(self.group.factors, self.exponents))

    @property
    def conductor(self) -> int:
        cond = 1
        for (kind, p, c, _m) in self._component_conductors():
            cond *= p**c
        return cond

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def _component_conductors(self):
        """Per-component (kind, p, conductor-exponent, reduced-exponent) data.

        kind is "odd", "four", or "two" (the ⟨−1⟩×⟨5⟩ pair, handled as one
        component whose reduced exponent is the (sign, five) pair).
        """
        out = []
        factors = self.group.factors
        i = 0
        while i < len(factors):
            f = factors[i]
            if f.prime != 2:
                m = self.exponents[i]
                d = f.order // math.gcd(f.order, m)
                if d == 1:
                    out.append(("odd", f.prime, 0, 0))
                else:
                    v = 0
                    while d % f.prime == 0:
                        d //= f.prime
                        v += 1
                    out.append(("odd", f.prime, v + 1, m))
                i += 1
            elif f.power == 4:
                m = self.exponents[i]
                out.append(("four", 2, 0 if m == 0 else 2, m))
                i += 1
            else:
                a, b = self.exponents[i], self.exponents[i + 1]
                half = factors[i + 1].order
                d5 = half // math.gcd(half, b)
                if d5 == 1:
                    out.append(("two", 2, 0 if a == 0 else 2, (a, b)))
                else:
                    out.append(("two", 2, d5.bit_length() + 1, (a, b)))
                i += 2
        return out

    def primitive_part(self) -> "DirichletCharacter":
        """The primitive character mod conductor inducing χ.

        Works component-wise: the same canonical generators appear in the
        conductor's group, so each exponent just rescales by the order
        ratio (exact division, guaranteed by the conductor choice).
        """
        target = character_group(self.conductor)
        comp = {p: (kind, m) for kind, p, _c, m in self._component_conductors()}
        exps: list[int] = []
        i = 0
        while i < len(target.factors):
            f = target.factors[i]
            kind, m = comp[f.prime]
            if kind == "odd":
                src = next(x for x in self.group.factors if x.prime == f.prime)
                exps.append(m * f.order // src.order)
                i += 1
            elif f.power == 4:  # target 2-part is the single mod-4 factor
                exps.append(m if kind == "four" else m[0])
                i += 1
            else:  # target 2-part is the ⟨−1⟩, ⟨5⟩ pair
                a, b = m
                src_half = next(
                    x.order for x in self.group.factors if x.prime == 2 and x.generator == 5
                )
                exps.append(a)
                exps.append(b * target.factors[i + 1].order // src_half)
                i += 2
        return target.character(tuple(exps))

    # -- values --------------------------------------------------------

    def root_exponent(self, n: int):
        """χ(n) as the integer a with χ(n) = e^{2πi·a/L}, or None off units."""
        n = n % self.modulus
        if not self.group.unit_mask[n]:
            return None
        L = self.group.exponent
        total = 0
        for f, m in zip(self.group.factors, self.exponents):
            total += m * (L // f.order) * int(f.dlog[n % f.power])
        return total % L

    def value_fraction(self, n: int):
        """(a, L) with χ(n) = e^{2πi·a/L} in lowest terms, or None."""
        a = self.root_exponent(n)
        if a is None:
            return None
        L = self.group.exponent
        g = math.gcd(a, L)
        return (a // g, L // g) if a else (0, 1)

    def __call__(self, n: int) -> complex:
        a = self.root_exponent(n)
        if a is None:
            return 0j
        L = self.group.exponent
        if 2 * a % L == 0:
            return complex(1.0 if a == 0 else -1.0, 0.0)
        return cmath.exp(2j * cmath.pi * a / L)

    def exponent_table(self) -> np.ndarray:
        """Length-q int64 array of root exponents, −1 on non-units."""
        if "exp" not in self._tables:
            L = self.group.exponent
            total = np.zeros(self.modulus, dtype=np.int64)
            for dlog_q, f, m in zip(self.group._dlog_mod_q, self.group.factors, self.exponents):
                total += m * (L // f.order) * np.where(dlog_q >= 0, dlog_q, 0)
            total %= L
            total[~self.group.unit_mask] = -1
            self._tables["exp"] = total
        return self._tables["exp"]

    def value_table(self) -> np.ndarray:
        """Length-q complex128 array of χ on residues (0 on non-units)."""
        if "val" not in self._tables:
            expt = self.exponent_table()
            L = self.group.exponent
            vals = np.exp(2j * np.pi * np.maximum(expt, 0) / L)
            vals[expt < 0] = 0.0
            self._tables["val"] = vals
        return self._tables["val"]

    def int_table(self) -> np.ndarray:
        """Length-q int8 array in {−1, 0, 1}; real characters only."""
        if not self.is_real:
            raise ValueError("integer value table requires a real character")
        if "int" not in self._tables:
            expt = self.exponent_table()
            out = np.zeros(self.modulus, dtype=np.int8)
            out[expt == 0] = 1
            out[expt > 0] = -1  # the only non-trivial real value is −1
            self._tables["int"] = out
        return self._tables["int"]

    def values_up_to(self, limit: int) -> np.ndarray:
        """χ(1..limit) as complex128, index = n (index 0 unused)."""
        table = self.value_table()
        n = np.arange(limit + 1, dtype=np.int64)
        return table[n % self.modulus]

    def __repr__(self) -> str:
        return f"chi(mod {self.modulus}, index {self.index})"

    def describe(self) -> dict:
        return {
            "modulus": self.modulus,
            "index": self.index,
            "exponents": list(self.exponents),
            "order": self.order,
            "conductor": self.conductor,
            "principal": self.is_principal,
            "real": self.is_real,
            "primitive": self.is_primitive,
        }


def real_character_census(q: int) -> tuple[int, int]:
    """(number of real characters mod q, the 2·τ₂(q) ceiling)."""
    group = character_group(q)
    count = sum(1 for chi in group.characters() if chi.is_real)
    tau2 = 1
    for _, e in _factorize(q):
        tau2 *= e + 1
    if q == 1:
        tau2 = 1
    return count, 2 * tau2
