"""Exact coefficient arithmetic: rationals and elements of cyclotomic fields.

Rationals are :class:`fractions.Fraction`. A :class:`CycloNumber` of order
``n`` stores the coefficients of ``1, zeta, ..., zeta^(phi(n)-1)`` where
``zeta`` is a primitive ``n``-th root of unity, reduced modulo the ``n``-th
cyclotomic polynomial so that equality is coefficient equality.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "CycloNumber"]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


# ---------------------------------------------------------------------------
# dense univariate helpers, coefficient lists low degree first

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def upoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division over the rationals; ``b`` must be nonzero."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    _trim(r)
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r.pop()
        _trim(r)
    return _trim(q), r


def _integral(p: Sequence) -> tuple[int, ...]:
    out = []
    for c in p:
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError("non-integral cyclotomic coefficient")
        out.append(int(c))
    return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the ``n``-th cyclotomic polynomial, low degree first.

    Obtained by exact division of ``x^n - 1`` by ``Phi_d`` for every proper
    divisor ``d`` of ``n``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {n!r}")
    num = [-1] + [0] * (n - 1) + [1]
    den: list = [1]
    for d in divisors(n)[:-1]:
        den = upoly_mul(den, cyclotomic_polynomial(d))
    q, r = upoly_divmod(num, den)
    assert not r
    return _integral(q)


def _xgcd_inverse(a: Sequence, modulus: Sequence) -> list:
    """Inverse of ``a`` modulo ``modulus`` in Q[x]; raises if they share a factor."""
    r0, r1 = [Fraction(c) for c in modulus], _trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = upoly_mul(q, s1)
        s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                            for i in range(max(len(s0), len(qs)))])
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    return [c / r0[0] for c in s0]


def _solve(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction] | None:
    """Solve ``sum_k c_k * columns[k] = target`` exactly; ``None`` if inconsistent."""
    rows, cols = len(target), len(columns)
    m = [[columns[k][i] for k in range(cols)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][-1] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


class CycloNumber:
    """Immutable element of Q(zeta_n).

    >>> z = CycloNumber.zeta(3)
    >>> z * z * z == 1
    True
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence = ()):
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"order must be a positive integer, got {order!r}")
        phi = cyclotomic_polynomial(order)
        c = [Fraction(v) for v in coeffs]
        if len(c) >= len(phi):
            _, c = upoly_divmod(c, phi)
        c = list(c) + [Fraction(0)] * (len(phi) - 1 - len(c))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        """``zeta_n ** k`` for any integer ``k``."""
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def from_rational(cls, q, n: int = 1) -> "CycloNumber":
        return cls(n, [q])

    # -- structure -------------------------------------------------------
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, n: int) -> "CycloNumber":
        """Image in Q(zeta_n) under ``zeta_m -> zeta_n^(n/m)``."""
        m = self.order
        if n % m:
            raise ValueError(f"cannot embed order {m} into order {n}: {m} does not divide {n}")
        if n == m:
            return self
        step = n // m
        out = [Fraction(0)] * (len(self.coeffs) - 1) * step + [Fraction(0)]
        for k, c in enumerate(self.coeffs):
            out[k * step] += c
        return CycloNumber(n, out)

    def project(self, m: int) -> "CycloNumber":
        """Preimage in Q(zeta_m) of this element, if it lies in the image of :meth:`embed`."""
        n = self.order
        if n % m:
            raise ValueError(f"order {m} does not divide {n}")
        basis = [list(CycloNumber.zeta(m, k).embed(n).coeffs) for k in range(totient(m))]
        sol = _solve(basis, list(self.coeffs))
        if sol is None:
            raise ValueError(f"{self} does not lie in Q(zeta_{m})")
        return CycloNumber(m, sol)

    def minimal(self) -> "CycloNumber":
        """Representation in the smallest cyclotomic field containing this element."""
        for d in divisors(self.order):
            try:
                return self.project(d)
            except ValueError:
                continue
        return self  # pragma: no cover - d = order always succeeds

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _common(a: Scalar, b: Scalar) -> tuple["CycloNumber", "CycloNumber"]:
        if not isinstance(a, CycloNumber):
            a = CycloNumber(b.order, [a])
        if not isinstance(b, CycloNumber):
            b = CycloNumber(a.order, [b])
        if a.order != b.order:
            n = lcm(a.order, b.order)
            a, b = a.embed(n), b.embed(n)
        return a, b

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        a, b = self._common(self, other)
        return CycloNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.order, [c * other for c in self.coeffs])
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(self, other)
        return CycloNumber(a.order, upoly_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self == 0:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        return CycloNumber(self.order, _xgcd_inverse(self.coeffs, cyclotomic_polynomial(self.order)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return CycloNumber(self.order, [c / other for c in self.coeffs])
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = CycloNumber(self.order, [1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        m = self.minimal()
        return hash((m.order, m.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycloNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        from .multipoly import format_scalar
        return format_scalar(self)


def cyclo_arith(a: Scalar, b: Scalar, op: str) -> CycloNumber:
    """Dispatch ``add``/``sub``/``mul``/``div`` after promoting both operands."""
    a, b = CycloNumber._common(
        a if isinstance(a, CycloNumber) else CycloNumber(1, [a]),
        b if isinstance(b, CycloNumber) else CycloNumber(1, [b]),
    )
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def embed(a: CycloNumber, n: int) -> CycloNumber:
    return a.embed(n)
