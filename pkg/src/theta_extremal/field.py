"""Arithmetic in GF(q), q = p^e, on dense integer codes.

An element is coded as ``sum(c_i * p**i)`` where ``c_0 + c_1 x + ... + c_{e-1} x^{e-1}``
is its polynomial representative modulo the field's monic irreducible modulus.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import NotPrimePower, SizeLimit

MAX_Q = 1 << 16
TABLE_LIMIT = 64


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and _smallest_prime_factor(n) == n


def prime_power(q: int) -> tuple[int, int]:
    """``(p, e)`` with ``q == p**e``; raises NotPrimePower otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = _smallest_prime_factor(q)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


# polynomials over GF(p): coefficient lists, constant term first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _code(digits: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(digits))


def is_irreducible(poly: list[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides ``poly``."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            cand = _digits(low, p, d) + [1]
            if not poly_mod(poly, cand, p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``e`` over GF(p)."""
    for low in range(p**e):
        poly = _digits(low, p, e) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("irreducible polynomials exist in every degree")


class Field:
    """GF(q). Elements are ints ``0..q-1``; 0 and 1 are the field's zero and one."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None = None):
        self.p = p
        self.e = e
        self.q = p**e
        if e > 1 and modulus is None:
            modulus = least_irreducible(p, e)
        if e > 1 and not is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = tuple(modulus) if modulus is not None else None

    def __repr__(self) -> str:
        return f"Field(q={self.q})"

    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def add_table(self) -> np.ndarray:
        if self.q > TABLE_LIMIT:
            raise SizeLimit("tables are only precomputed for q <= 64")
        return np.array([[self._add(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.q > TABLE_LIMIT:
            raise SizeLimit("tables are only precomputed for q <= 64")
        return np.array([[self._mul(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self._neg(a) for a in range(self.q)], dtype=np.int64)

    @property
    def tabulated(self) -> bool:
        return self.q <= TABLE_LIMIT

    def _add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        return _code([(x + y) % p for x, y in zip(_digits(a, p, self.e), _digits(b, p, self.e))], p)

    def _neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        p = self.p
        return _code([-x % p for x in _digits(a, p, self.e)], p)

    def _mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        p, e = self.p, self.e
        prod = poly_mul(_trim(_digits(a, p, e)), _trim(_digits(b, p, e)), p)
        r = poly_mod(prod, list(self.modulus), p)
        return _code(r + [0] * (e - len(r)), p)

    def add(self, a: int, b: int) -> int:
        if self.tabulated:
            return int(self.add_table[a, b])
        return self._add(a, b)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a]) if self.tabulated else self._neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.tabulated:
            return int(self.mul_table[a, b])
        return self._mul(a, b)

    def pow(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def element(self, coeffs: list[int]) -> int:
        """Element from polynomial coefficients (constant term first)."""
        r = poly_mod(list(coeffs), list(self.modulus), self.p) if self.e > 1 else [sum(coeffs) % self.p]
        return _code(r + [0] * (self.e - len(r)), self.p)

    def coefficients(self, a: int) -> list[int]:
        return _digits(a, self.p, self.e)

    def rank(self, rows: list[list[int]]) -> int:
        """Rank of a matrix over this field by Gaussian elimination."""
        m = [list(r) for r in rows]
        rank = 0
        ncols = len(m[0]) if m else 0
        for col in range(ncols):
            piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = self.inv(m[rank][col])
            m[rank] = [self.mul(inv, x) for x in m[rank]]
            for i in range(len(m)):
                if i != rank and m[i][col]:
                    c = m[i][col]
                    m[i] = [self.sub(x, self.mul(c, y)) for x, y in zip(m[i], m[rank])]
            rank += 1
        return rank


def make_field(q: int) -> Field:
    if q > MAX_Q:
        raise SizeLimit(f"q={q} exceeds the supported limit {MAX_Q}")
    p, e = prime_power(q)
    return Field(p, e)
