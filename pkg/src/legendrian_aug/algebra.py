"""Exact arithmetic: finite fields, integer Laurent polynomials, rationals.

Field elements are encoded as integers ``sum c_i p**i`` where ``c_i`` are the
coefficients of the polynomial representative (constant term first).  Small
fields carry full addition and multiplication tables so the counting kernels
can work on plain integer arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DegreeZero, DivByZero, NegativeExponentError, NotPrime, ParityError

__all__ = [
    "Fq",
    "FqElem",
    "field_make",
    "field_arith",
    "prime_power",
    "LaurentPoly",
    "laurent_arith",
    "rhs_exact",
    "rhs_float",
]

TABLE_LIMIT = 1024


def _is_prime(n):
    if n < 2:
        return False
    for f in range(2, math.isqrt(n) + 1):
        if n % f == 0:
            return False
    return True


def prime_power(q):
    """Split q = p**k, raising NotPrime when q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1 or not _is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return p, k


# -- polynomials over GF(p), coefficient lists with constant term first ------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_divmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quo[shift] = f
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _trim(a)
    return _trim(quo), a


def _is_irreducible(poly, p):
    k = len(poly) - 1
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=deg):
            if not _poly_mod(poly, list(tail) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def _lex_least_irreducible(p, k):
    for low in _lex_tuples(p, k):
        poly = list(low) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


def _lex_tuples(p, k):
    """(c0, ..., c_{k-1}) in lexicographic order with c0 most significant."""
    return product(range(p), repeat=k)


class Fq:
    """The field GF(p**k) with the lexicographically least monic modulus."""

    def __init__(self, p, k):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise DegreeZero(f"extension degree must be at least 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = _lex_least_irreducible(p, k)
        self._add = self._mul = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # coding helpers
    def to_coeffs(self, code):
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def from_coeffs(self, coeffs):
        code = 0
        for c in reversed(list(coeffs) + [0] * (self.k - len(coeffs))):
            code = code * self.p + c % self.p
        return code

    def _slow_add(self, a, b):
        return self.from_coeffs([(x + y) % self.p for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def _slow_mul(self, a, b):
        prod = _poly_mul(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), self.p)
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), self.p))

    def _build_tables(self):
        q = self.q
        if self.k == 1:
            idx = np.arange(q, dtype=np.int64)
            self._add = ((idx[:, None] + idx[None, :]) % q).astype(np.int32)
            self._mul = ((idx[:, None] * idx[None, :]) % q).astype(np.int32)
        else:
            digits = np.array([self.to_coeffs(c) for c in range(q)], dtype=np.int64)
            weights = self.p ** np.arange(self.k, dtype=np.int64)
            s = (digits[:, None, :] + digits[None, :, :]) % self.p
            self._add = (s @ weights).astype(np.int32)
            mul = np.zeros((q, q), dtype=np.int32)
            for a in range(q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = self._slow_mul(a, b)
            self._mul = mul
        self._neg = np.array([int(np.nonzero(self._add[a] == 0)[0][0]) for a in range(q)], dtype=np.int32)
        inv = np.zeros(q, dtype=np.int32)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self._mul[a] == 1)[0][0])
        self._inv = inv
        self._add.setflags(write=False)
        self._mul.setflags(write=False)
        self._neg.setflags(write=False)
        self._inv.setflags(write=False)

    # integer-code arithmetic
    def add(self, a, b):
        return int(self._add[a, b]) if self._add is not None else self._slow_add(a, b)

    def mul(self, a, b):
        return int(self._mul[a, b]) if self._mul is not None else self._slow_mul(a, b)

    def neg(self, a):
        if self._add is not None:
            return int(self._neg[a])
        return self.from_coeffs([(-x) % self.p for x in self.to_coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        if a == 0:
            raise DivByZero("zero has no inverse")
        if self._add is not None:
            return int(self._inv[a])
        return self.from_coeffs(self._egcd_inverse(self.to_coeffs(a)))

    def _egcd_inverse(self, coeffs):
        """Inverse of a polynomial representative by the extended Euclidean algorithm."""
        p = self.p
        r0, r1 = list(self.modulus), _trim(coeffs)
        s0, s1 = [], [1]
        while r1:
            quo, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        return [x * c % p for x in s0]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        out = 1
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def from_int(self, n):
        return n % self.p

    @property
    def tables(self):
        """(add, mul, neg, inv) lookup arrays; only for q <= TABLE_LIMIT."""
        if self._add is None:
            raise ValueError(f"no tables for q = {self.q}")
        return self._add, self._mul, self._neg, self._inv

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def elem(self, code):
        return FqElem(self, code)

    def format(self, code):
        if self.k == 1:
            return str(code)
        terms = []
        for i, c in reversed(list(enumerate(self.to_coeffs(code)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"Fq({self.p}, {self.k})"


@lru_cache(maxsize=64)
def field_make(p, k=1):
    """GF(p**k); pass ``k`` explicitly, or a prime power as ``p`` with k omitted."""
    if k == 1 and not _is_prime(p) and p > 1:
        p, k = prime_power(p)
    return Fq(p, k)


class FqElem:
    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = int(code)

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FqElem(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FqElem(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FqElem(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FqElem(self.field, self.field.sub(b, self.code))

    def inv(self):
        return FqElem(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FqElem(self.field, self.field.div(self.code, b))

    def __pow__(self, n):
        return FqElem(self.field, self.field.pow(self.code, n))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return isinstance(other, FqElem) and self.field == other.field and self.code == other.code

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FqElem({self.field.format(self.code)} in GF({self.field.q}))"


def field_arith(a, b, op):
    """Dispatch form of the element operations; ``b`` is ignored for inv/neg."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials in z with integer coefficients


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        for e, n in (coeffs or {}).items():
            if n:
                c[int(e)] = int(n)
        self._c = c

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls({exponent: coeff})

    @classmethod
    def from_terms(cls, terms):
        out = {}
        for e, n in terms:
            out[e] = out.get(e, 0) + n
        return cls(out)

    @classmethod
    def from_json(cls, obj):
        return cls.from_terms((int(e), int(n)) for e, n in obj["terms"])

    def to_json(self):
        return {"terms": [[e, self._c[e]] for e in sorted(self._c)]}

    @property
    def terms(self):
        return sorted(self._c.items())

    def coeff(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    @property
    def degree(self):
        """Largest exponent, or None for the zero polynomial."""
        return max(self._c) if self._c else None

    @property
    def low_degree(self):
        return min(self._c) if self._c else None

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self._c)
        for e, n in other._c.items():
            out[e] = out.get(e, 0) + n
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -n for e, n in self._c.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        out = {}
        for e1, n1 in self._c.items():
            for e2, n2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + n1 * n2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._c.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({e * n: c ** (-n)})
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by z**k."""
        return LaurentPoly({e + k: n for e, n in self._c.items()})

    def evaluate(self, z):
        return sum((n * z**e for e, n in self._c.items()), Fraction(0) if isinstance(z, (int, Fraction)) else 0.0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, n in sorted(self._c.items(), reverse=True):
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                parts.append(str(n))
            elif n == 1:
                parts.append(mono)
            elif n == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{n}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.to_json()['terms']})"


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def laurent_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _checked_shift(R, c):
    S = R.shift(c)
    if S.is_zero():
        return S
    if S.low_degree < 0:
        raise NegativeExponentError(f"z^{c} R has exponent {S.low_degree}")
    parities = {e % 2 for e, _ in S.terms}
    if len(parities) != 1:
        raise ParityError(f"z^{c} R mixes exponent parities: {S}")
    return S


def rhs_exact(R, c, q):
    """q^{-(d+c)/2} z^c R(z) at z = q^{1/2} - q^{-1/2}, exactly.

    Each monomial z^e expands binomially into powers q^{(e-2k)/2}; the
    normalizer shifts every exponent by -(d+c)/2, and the single-parity
    condition keeps all resulting exponents integral.
    """
    S = _checked_shift(R, c)
    if S.is_zero():
        return Fraction(0)
    top = S.degree  # = deg R + c
    q = Fraction(q)
    total = Fraction(0)
    for e, n in S.terms:
        for k in range(e + 1):
            total += n * math.comb(e, k) * (-1) ** k * q ** ((e - 2 * k - top) // 2)
    return total


def rhs_float(R, c, q):
    """Floating-point probe of the same quantity; never used for equality tests."""
    S = _checked_shift(R, c)
    if S.is_zero():
        return 0.0
    z = math.sqrt(q) - 1 / math.sqrt(q)
    return q ** (-S.degree / 2) * sum(n * z**e for e, n in S.terms)
