"""Sparse multivariate polynomials over Q or Q(zeta_N), with a parser and printer.

Variables carry a role and an index tuple, written ``x[2][1]``, ``w[1][2]``,
``u[3]`` or plainly ``x``, ``t``. Roles fix a total variable order, which in
turn fixes the graded-lex term order used by :func:`format`.

Grammar accepted by :func:`parse`::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | VAR | 'zeta' INT | 'zeta{' INT '}' | '(' expr ')'
    VAR    := IDENT ('[' INT ']')*

Division is only allowed by a nonzero constant; there is no implicit
multiplication.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Union

from .exactnum import CycloNumber, lcm

# base coordinates first, then the tower of cover variables, then twist coordinates
ROLE_ORDER = ("x", "s", "t", "u", "w", "z", "U", "Z")
INDEXED_ROLES = frozenset(ROLE_ORDER)


@total_ordering
@dataclass(frozen=True)
class VarName:
    role: str
    indices: tuple[int, ...] = ()

    @property
    def key(self):
        try:
            rank = ROLE_ORDER.index(self.role)
        except ValueError:
            rank = len(ROLE_ORDER)
        return (rank, self.role, self.indices)

    def __lt__(self, other):
        if not isinstance(other, VarName):
            return NotImplemented
        return self.key < other.key

    def __str__(self):
        return self.role + "".join(f"[{i}]" for i in self.indices)

    def __repr__(self):
        return f"V({self})"


def var(role: str, *indices: int) -> VarName:
    return VarName(role, tuple(indices))


def as_var(v: Union[str, VarName]) -> VarName:
    if isinstance(v, VarName):
        return v
    return parse_var(v)


_VAR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)((?:\[\d+\])*)$")


def parse_var(text: str) -> VarName:
    m = _VAR_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a variable name: {text!r}")
    return VarName(m.group(1), tuple(int(i) for i in re.findall(r"\d+", m.group(2))))


# A monomial is a tuple of (VarName, exponent) pairs sorted by variable, exponents > 0.
Monomial = tuple
ONE: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial):
    """Sort key putting graded-lex larger monomials first."""
    return (-mono_degree(m), tuple((v.key, -e) for v, e in m))


def _norm_coeff(c):
    if isinstance(c, CycloNumber):
        return c.to_rational() if c.is_rational() else c
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class MultiPoly:
    """Immutable sparse polynomial ``{monomial: coefficient}``.

    ``domain`` is the cyclotomic order ``N`` of the coefficient field
    Q(zeta_N); ``1`` means the rationals. Rational coefficients are stored as
    :class:`~fractions.Fraction` whatever the domain; irrational ones are
    :class:`CycloNumber` of order exactly ``domain``.
    """

    __slots__ = ("terms", "domain")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, domain: int = 1):
        clean = {}
        dom = domain
        for m, c in (terms or {}).items():
            c = _norm_coeff(c)
            if c == 0:
                continue
            if isinstance(c, CycloNumber):
                dom = lcm(dom, c.order)
            clean[m] = c
        if dom > 1:
            clean = {m: (c.embed(dom) if isinstance(c, CycloNumber) and c.order != dom else c)
                     for m, c in clean.items()}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "domain", dom)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, domain: int = 1) -> "MultiPoly":
        return cls({ONE: c}, domain)

    @classmethod
    def variable(cls, v: Union[str, VarName]) -> "MultiPoly":
        return cls({((as_var(v), 1),): 1})

    @classmethod
    def monomial(cls, powers: Mapping[VarName, int], coeff=1) -> "MultiPoly":
        mono = tuple(sorted((as_var(v), e) for v, e in powers.items() if e))
        return cls({mono: coeff})

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_term(self):
        return self.terms.get(ONE, Fraction(0))

    def variables(self) -> set[VarName]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, v: VarName | None = None) -> int:
        if not self.terms:
            return -1
        if v is None:
            return max(mono_degree(m) for m in self.terms)
        return max(dict(m).get(v, 0) for m in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]))

    def leading_term(self) -> tuple[Monomial, object]:
        return self.sorted_terms()[0]

    def __len__(self):
        return len(self.terms)

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _lift(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction, CycloNumber)):
            return MultiPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MultiPoly(out, lcm(self.domain, other.domain))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.domain)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return MultiPoly(out, lcm(self.domain, other.domain))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
        result, base = MultiPoly.const(1, self.domain), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return exact_divide(self, other)
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return MultiPoly({m: c / other for m, c in self.terms.items()}, self.domain)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[m] for m, c in self.terms.items())

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __repr__(self):
        return f"MultiPoly({format(self)!r})"

    def __str__(self):
        return format(self)

    def subs(self, sigma: Mapping) -> "MultiPoly":
        return substitute(self, sigma)


def as_poly(x) -> MultiPoly:
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, VarName):
        return MultiPoly.variable(x)
    return MultiPoly._lift(x)


class NonDivisibleError(ArithmeticError):
    def __init__(self, message: str, quotient: MultiPoly, remainder: MultiPoly):
        super().__init__(message)
        self.quotient = quotient
        self.remainder = remainder


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    da = dict(a)
    for v, e in b:
        if da.get(v, 0) < e:
            return None
        da[v] -= e
    return tuple(sorted((v, e) for v, e in da.items() if e))


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient ``q`` with ``a == q * b``; raises :class:`NonDivisibleError` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lm, lc = b.leading_term()
    q = MultiPoly()
    r = a
    rem = MultiPoly()
    while not r.is_zero():
        m, c = r.leading_term()
        qm = _mono_div(m, lm)
        if qm is None:
            rem = rem + MultiPoly({m: c})
            r = r - MultiPoly({m: c})
            continue
        t = MultiPoly({qm: c / lc})
        q = q + t
        r = r - t * b
    if not rem.is_zero():
        raise NonDivisibleError(f"{format(b)} does not divide {format(a)}", q, rem)
    return q


def arith(a, b, op: str) -> MultiPoly:
    a = as_poly(a)
    if op == "add":
        return a + as_poly(b)
    if op == "sub":
        return a - as_poly(b)
    if op == "mul":
        return a * as_poly(b)
    if op == "pow":
        return a ** b
    if op == "exact_divide":
        return exact_divide(a, as_poly(b))
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: MultiPoly, sigma: Mapping) -> MultiPoly:
    """Simultaneous substitution of polynomials for variables."""
    images = {as_var(v): as_poly(q) for v, q in sigma.items()}
    if not images:
        return p
    out = MultiPoly(domain=p.domain)
    power_cache: dict = {}
    for m, c in p.terms.items():
        kept = []
        term = MultiPoly.const(c, p.domain)
        for v, e in m:
            if v in images:
                key = (v, e)
                if key not in power_cache:
                    power_cache[key] = images[v] ** e
                term = term * power_cache[key]
            else:
                kept.append((v, e))
        out = out + term * MultiPoly({tuple(kept): 1})
    return out


def substitute_fractions(p: MultiPoly, sigma: Mapping) -> tuple[MultiPoly, MultiPoly]:
    """Substitute ``v -> num/den`` simultaneously and clear denominators.

    Returns ``(cleared, multiplier)`` where ``cleared = p(num/den) * multiplier``
    and ``multiplier`` is the product of ``den_v ** deg_v(p)``.
    """
    fr = {as_var(v): (as_poly(n), as_poly(d)) for v, (n, d) in sigma.items()}
    for v, (_, d) in fr.items():
        if d.is_zero():
            raise ZeroDivisionError(f"zero denominator for {v}")
    top = {v: max(p.degree(v), 0) for v in fr}
    out = MultiPoly(domain=p.domain)
    for m, c in p.terms.items():
        kept = []
        term = MultiPoly.const(c, p.domain)
        seen = set()
        for v, e in m:
            if v in fr:
                n, d = fr[v]
                term = term * n ** e * d ** (top[v] - e)
                seen.add(v)
            else:
                kept.append((v, e))
        for v in fr:
            if v not in seen and top[v]:
                term = term * fr[v][1] ** top[v]
        out = out + term * MultiPoly({tuple(kept): 1})
    mult = MultiPoly.const(1)
    for v, (_, d) in fr.items():
        mult = mult * d ** top[v]
    return out, mult


# ---------------------------------------------------------------------------
# printing

def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    """Canonical text of a coefficient; cyclotomic values as sums of ``zetaN^k``."""
    if not isinstance(c, CycloNumber):
        return _format_rational(Fraction(c))
    poly = MultiPoly({((VarName(f"zeta{c.order}"), k),) if k else ONE: a
                      for k, a in enumerate(c.coeffs)})
    return format(poly)


def _is_compound(c) -> bool:
    return isinstance(c, CycloNumber) and sum(1 for a in c.coeffs if a) > 1


def _format_mono(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


def format(p: MultiPoly) -> str:
    """Deterministic text, terms in graded-lex order on the fixed variable order."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for m, c in p.sorted_terms():
        if isinstance(c, CycloNumber) and not _is_compound(c):
            k, a = next((k, a) for k, a in enumerate(c.coeffs) if a)
            neg = a < 0
            z = f"zeta{c.order}" + ("" if k == 1 else f"^{k}")
            mag = z if abs(a) == 1 else f"{_format_rational(abs(a))}*{z}"
            body = mag + ("*" + _format_mono(m) if m else "")
        elif _is_compound(c):
            neg = False
            body = f"({format_scalar(c)})" + ("*" + _format_mono(m) if m else "")
        else:
            neg = c < 0
            a = abs(c)
            if not m:
                body = _format_rational(a)
            elif a == 1:
                body = _format_mono(m)
            else:
                body = f"{_format_rational(a)}*{_format_mono(m)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing

class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset}: {text!r}")
        self.text = text
        self.offset = offset


class UnknownRoleWarning(UserWarning):
    pass


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<zeta>zeta(?:\{\d+\}|\d+))|(?P<var>[A-Za-z_][A-Za-z_0-9]*(?:\[\d+\])*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[offset]!r}", text, offset)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, domain: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.domain = domain

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.text, tok[2])

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.error("division only by a nonzero constant", op)
                p = p / q.constant_term()
        return p

    def unary(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("exponent must be a nonnegative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, val, off = tok = self.take()
        if kind == "int":
            return MultiPoly.const(int(val), self.domain)
        if kind == "zeta":
            n = int(val[4:].strip("{}"))
            if n < 1:
                self.error("zeta order must be positive", tok)
            return MultiPoly.const(CycloNumber.zeta(n), self.domain)
        if kind == "var":
            v = parse_var(val)
            if v.indices and v.role not in INDEXED_ROLES:
                warnings.warn(f"variable {val!r} has unknown role {v.role!r}", UnknownRoleWarning,
                              stacklevel=4)
            return MultiPoly.variable(v)
        if kind == "op" and val == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected {val!r}" if val else "unexpected end of input", tok)


def parse(text: str, domain: int = 1) -> MultiPoly:
    """Parse polynomial text; see the module docstring for the grammar."""
    p = _Parser(text, domain).parse()
    return p if p.domain == lcm(p.domain, domain) else MultiPoly(p.terms, lcm(p.domain, domain))
