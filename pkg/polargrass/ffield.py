# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from polargrass.errors import (
    DivisionByZero,
    NonPrimeCharacteristic,
    ReducibleModulus,
    UnsupportedSize,
    WrongCharacteristic,
)

# Scalars are integer reps in [0, q): base-p digits of the residue polynomial,
# little-endian.
Scalar = int
FieldArray = Union[int, np.ndarray]

MAX_DEFAULT_ORDER = 512
MAX_TABLE_ORDER = 1 << 16

# Coefficient lists are little-endian and include the leading 1.
DEFAULT_MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _digits(rep: int, p: int, e: int) -> List[int]:
    out = []
    for _ in range(e):
        out.append(rep % p)
        rep //= p
    return out


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo the monic polynomial m over GF(p)."""
    dm = len(m) - 1
    r = list(a)
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            for j in range(dm + 1):
                r[i - dm + j] = (r[i - dm + j] - c * m[j]) % p
    r = r[:dm]
    return r + [0] * (dm - len(r))


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(modulus, list(lower) + [1], p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^e) given by an explicit irreducible modulus.

    Elements are plain ints (see ``Scalar``). Every arithmetic method accepts
    ints or numpy integer arrays and broadcasts like numpy; 0-d results come
    back as Python ints.
    """

    p: int
    e: int
    modulus: Tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeCharacteristic(f"Characteristic {self.p} is not prime")
        if self.e < 1:
            raise UnsupportedSize(f"Extension degree has to be >= 1, got {self.e}")
        if (
            len(self.modulus) != self.e + 1
            or self.modulus[-1] != 1
            or any(c < 0 or c >= self.p for c in self.modulus)
        ):
            raise ValueError(
                f"Modulus {list(self.modulus)} is not a monic degree-{self.e} polynomial over GF({self.p})"
            )
        if not _is_irreducible(self.modulus, self.p):
            raise ReducibleModulus(
                f"Modulus {list(self.modulus)} is reducible over GF({self.p})"
            )
        q = self.p**self.e
        if q > MAX_TABLE_ORDER:
            raise UnsupportedSize(f"GF({q}) exceeds the table limit {MAX_TABLE_ORDER}")
        object.__setattr__(self, "q", q)

    def __str__(self) -> str:
        return f"GF({self.q})"

    @property
    def even(self) -> bool:
        return self.p == 2

    def to_poly(self, rep: Scalar) -> List[int]:
        return _digits(rep, self.p, self.e)

    def from_poly(self, coeffs: Sequence[int]) -> Scalar:
        rep = 0
        for c in reversed(list(coeffs)):
            rep = rep * self.p + (c % self.p)
        return rep

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def _poly_mul(self, a: Scalar, b: Scalar) -> Scalar:
        da, db = self.to_poly(a), self.to_poly(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.from_poly(_poly_mod(prod, self.modulus, self.p))

    @cached_property
    def _tables(self) -> Tuple[np.ndarray, np.ndarray]:
        """Antilog table exp[i] = g^i (length q-1) and log table (log[0] unused)."""
        order = self.q - 1
        for g in range(1, self.q):
            powers = [1]
            x = g
            while x != 1 and len(powers) < order:
                powers.append(x)
                x = self._poly_mul(x, g)
            if x == 1 and len(powers) == order:
                break
        else:
            raise RuntimeError(f"Failed to find a primitive element of {self}")
        exp = np.array(powers, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        logging.debug(f"Built log/antilog tables for {self} with generator {g}")
        return exp, log

    @staticmethod
    def _out(r) -> FieldArray:
        if np.ndim(r) == 0:
            return int(r)
        return np.asarray(r, dtype=np.int64)

    def _digitwise(self, a, b, sign: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.e):
            da = (a // pw) % self.p
            db = (b // pw) % self.p
            res += ((da + sign * db) % self.p) * pw
            pw *= self.p
        return res

    def add(self, a: FieldArray, b: FieldArray) -> FieldArray:
        if self.p == 2:
            return self._out(np.bitwise_xor(a, b))
        if self.e == 1:
            return self._out(np.add(a, b) % self.p)
        return self._out(self._digitwise(a, b, 1))

    def sub(self, a: FieldArray, b: FieldArray) -> FieldArray:
        if self.p == 2:
            return self._out(np.bitwise_xor(a, b))
        if self.e == 1:
            return self._out(np.subtract(a, b) % self.p)
        return self._out(self._digitwise(a, b, -1))

    def neg(self, a: FieldArray) -> FieldArray:
        return self.sub(0, a)

    def mul(self, a: FieldArray, b: FieldArray) -> FieldArray:
        if self.e == 1:
            return self._out(np.multiply(a, b) % self.p)
        exp, log = self._tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = exp[(log[a] + log[b]) % (self.q - 1)]
        return self._out(np.where((a == 0) | (b == 0), 0, r))

    def inv(self, a: FieldArray) -> FieldArray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"0 has no inverse in {self}")
        exp, log = self._tables
        return self._out(exp[(-log[a]) % (self.q - 1)])

    def div(self, a: FieldArray, b: FieldArray) -> FieldArray:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldArray, k: int) -> FieldArray:
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return self._out(np.ones_like(a))
        if k < 0:
            return self.pow(self.inv(a), -k)
        exp, log = self._tables
        r = exp[(log[a] * k) % (self.q - 1)]
        return self._out(np.where(a == 0, 0, r))

    def sqrt(self, a: FieldArray) -> FieldArray:
        """Square root in characteristic 2, b = a^(q/2)."""
        if self.p != 2:
            raise WrongCharacteristic(f"Square roots are only unique in characteristic 2, not in {self}")
        return self.pow(a, self.q // 2)


def default_modulus(p: int, e: int) -> Tuple[int, ...]:
    if (p, e) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, e)]
    if e == 1:
        return (0, 1)
    if p**e > MAX_DEFAULT_ORDER:
        raise UnsupportedSize(
            f"GF({p}^{e}) needs an explicit modulus above order {MAX_DEFAULT_ORDER}"
        )
    # first irreducible monic polynomial by increasing lower-coefficient rep
    for c in range(p**e):
        candidate = tuple(_digits(c, p, e)) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise RuntimeError(f"Failed to find an irreducible polynomial of degree {e} over GF({p})")


def field_make(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Build and validate GF(p^e).

    Args:
        p (int): prime characteristic.
        e (int): extension degree.
        modulus (list[int], optional): little-endian coefficients of a monic
            irreducible polynomial of degree e. Defaults to the built-in table.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"Characteristic {p} is not prime")
    if modulus is None:
        modulus = default_modulus(p, e)
    return FieldSpec(p=p, e=e, modulus=tuple(int(c) for c in modulus))


@lru_cache(maxsize=None)
def field_for_order(q: int) -> FieldSpec:
    """Default field of order q; q must be a prime power."""
    if q < 2:
        raise NonPrimeCharacteristic(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"q={q} is not a prime power")
    return field_make(p, e)


def sqrt_char2(f: FieldSpec, a: FieldArray) -> FieldArray:
    return f.sqrt(a)
