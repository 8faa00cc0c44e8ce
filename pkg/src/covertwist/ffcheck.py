"""Finite-field oracle: sample honest points of the cover mod p and push them to the twist.

Independent of the rewriting engine: everything here is evaluation of
polynomials at integer tuples modulo a small prime.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .construct import AbelianCoverSpec, Construction, CoverSpec, DihedralCoverSpec
from .multipoly import MultiPoly, VarName, var

DEFAULT_BUDGET = 10 ** 7


class BadPrimeError(ValueError):
    pass


class ExhaustedError(RuntimeError):
    pass


class ZeroDenominatorAtSample(ZeroDivisionError):
    pass


class BudgetExceededError(RuntimeError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, o):
        if isinstance(o, PrimeFieldElement):
            if o.modulus != self.modulus:
                raise ValueError("moduli differ")
            return o.value
        return int(o)

    def __add__(self, o):
        return PrimeFieldElement(self.value + self._other(o), self.modulus)

    def __sub__(self, o):
        return PrimeFieldElement(self.value - self._other(o), self.modulus)

    def __mul__(self, o):
        return PrimeFieldElement(self.value * self._other(o), self.modulus)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k: int):
        return PrimeFieldElement(pow(self.value, k, self.modulus), self.modulus)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return PrimeFieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, o):
        return self * PrimeFieldElement(self._other(o), self.modulus).inverse()

    def __eq__(self, o):
        if isinstance(o, int):
            return self.value == o % self.modulus
        return isinstance(o, PrimeFieldElement) and (self.value, self.modulus) == (o.value, o.modulus)

    def __hash__(self):
        return hash((self.value, self.modulus))


def reduce_scalar(c, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise BadPrimeError(f"coefficient {c} has denominator divisible by {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def evaluate_mod_p(poly: MultiPoly, point: Mapping[VarName, int], p: int) -> int:
    if poly.domain != 1:
        raise ValueError("only rational polynomials can be reduced mod p")
    total = 0
    for m, c in poly.terms.items():
        t = reduce_scalar(c, p)
        for v, e in m:
            try:
                t = t * pow(point[v], e, p) % p
            except KeyError:
                raise KeyError(f"no value for {v}") from None
        total += t
    return total % p


@dataclass(frozen=True)
class FFSample:
    p: int
    assignment: Mapping[VarName, int]


def _check_prime(spec: CoverSpec, p: int) -> None:
    if not is_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    orders = spec.factors if isinstance(spec, AbelianCoverSpec) else (2, spec.n)
    for n in orders:
        if n % p == 0:
            raise BadPrimeError(f"p = {p} divides the cover degree {n}")
    polys = [lay.f for lay in spec.layers] if isinstance(spec, AbelianCoverSpec) else [spec.f, spec.g]
    for f in polys:
        for c in f.terms.values():
            reduce_scalar(c, p)


def _roots(value: int, n: int, p: int) -> list[int]:
    return [w for w in range(p) if pow(w, n, p) == value % p]


def _solve_copy(spec: CoverSpec, i, p: int, rng: random.Random) -> dict[VarName, int] | None:
    """One random attempt at an honest point of copy ``i`` (``None`` for the generic copy)."""
    a: dict[VarName, int] = {}
    if isinstance(spec, AbelianCoverSpec):
        for e in range(1, spec.ell + 1):
            a[var("x", i, e) if i is not None else spec.base_vars()[e - 1]] = rng.randrange(p)
        for j, lay in enumerate(spec.layers, start=1):
            roots = _roots(evaluate_mod_p(spec.f_at(j, i), a, p), lay.n, p)
            if not roots:
                return None
            a[var("w", i, j) if i is not None else var("w", j)] = rng.choice(roots)
        return a
    xv, uv, zv = (var("x", i), var("u", i), var("z", i)) if i is not None else (var("x"), var("u"), var("z"))
    a[xv] = rng.randrange(p)
    roots = _roots(evaluate_mod_p(spec.f, {var("x"): a[xv]}, p), 2, p)
    if not roots:
        return None
    a[uv] = rng.choice(roots)
    roots = _roots(evaluate_mod_p(spec.g, {var("x"): a[xv], var("u"): a[uv]}, p), spec.n, p)
    if not roots:
        return None
    a[zv] = rng.choice(roots)
    return a


def sample_cover_point(spec: CoverSpec, p: int, trials: int = 100,
                       rng: random.Random | None = None) -> FFSample:
    """Random honest point on every copy (and one generic copy) mod ``p``.

    Each copy gets up to ``trials`` random base points; radicals are solved
    by exhaustive root search. Raises :class:`ExhaustedError` when some copy
    finds no point within the budget.
    """
    _check_prime(spec, p)
    rng = rng or random.Random(0)
    a: dict[VarName, int] = {}
    for i in list(range(1, max(spec.m, 2) + 1)) + [None]:
        for _ in range(trials):
            got = _solve_copy(spec, i, p, rng)
            if got is not None:
                a.update(got)
                break
        else:
            raise ExhaustedError(f"no point on copy {i} mod {p} in {trials} trials")
    return FFSample(p, a)


def sample_is_valid(sample: FFSample, con: Construction) -> bool:
    """Every cover relation vanishes at the sample."""
    eqs = con.relations.equations()
    return all(evaluate_mod_p(e, sample.assignment, sample.p) == 0 for e in eqs)


def _extend(sample: FFSample, con: Construction) -> dict[VarName, int]:
    """Values of quotient coordinates and curve coordinates at the sample."""
    a = dict(sample.assignment)
    pending = dict(con.expand)
    for g in con.quotient.generators:
        pending.setdefault(g.name, g.definition)
    for v, poly in pending.items():
        try:
            a[v] = evaluate_mod_p(poly, a, sample.p)
        except KeyError:
            continue
    return a


def _eval_fraction(num: MultiPoly, den: MultiPoly, a, p: int) -> int:
    d = evaluate_mod_p(den, a, p)
    if d == 0:
        raise ZeroDenominatorAtSample(f"denominator {den} vanishes at the sample")
    return evaluate_mod_p(num, a, p) * pow(d, -1, p) % p


def check_twist_point_ff(sample: FFSample, con: Construction) -> bool:
    """Evaluate every constructed point at the sample and test the twist equations mod p."""
    p = sample.p
    a = _extend(sample, con)
    twist = con.twist.variety
    for pt in con.points:
        vals = dict(a)
        for v, (n, d) in zip(pt.variables, pt.coordinates):
            vals[v] = _eval_fraction(n, d, a, p)
        if any(evaluate_mod_p(eq, vals, p) for eq in twist.equations):
            return False
    return True


def check_trivialization_ff(sample: FFSample, con: Construction) -> bool:
    """Instance equations with ``Z[i][j] = w[i+1][j]/w[1][j]`` (and the generic copy) vanish mod p."""
    p = sample.p
    a = _extend(sample, con)
    vals = dict(a)
    for v, (n, d) in list(con.twist.instance_trivialization.items()) + list(con.twist.trivialization.items()):
        vals[v] = _eval_fraction(n, d, a, p)
    eqs = list(con.twist.instances) + list(con.twist.variety.equations)
    if con.spec.m < 2:
        eqs = []
    return all(evaluate_mod_p(eq, vals, p) == 0 for eq in eqs)


def enumerate_solutions(eqs: Sequence[MultiPoly], p: int, variables: Sequence[VarName],
                        budget: int = DEFAULT_BUDGET) -> tuple[int, list[tuple[int, ...]]]:
    """All tuples over F_p (in the order of ``variables``) where every equation vanishes."""
    variables = list(variables)
    if p ** len(variables) > budget:
        raise BudgetExceededError(f"{p}^{len(variables)} tuples exceed the budget of {budget}")
    sols = []
    for tup in itertools.product(range(p), repeat=len(variables)):
        a = dict(zip(variables, tup))
        if all(evaluate_mod_p(e, a, p) == 0 for e in eqs):
            sols.append(tup)
    return len(sols), sols


@dataclass
class PrimeSummary:
    p: int
    valid: int
    passed: int
    rejected: int

    @property
    def ratio(self) -> float:
        return self.passed / self.valid if self.valid else 1.0


def run_oracle(con: Construction, p: int, samples: int, seed: int = 0,
               max_attempts: int | None = None) -> PrimeSummary:
    """Draw ``samples`` valid samples mod ``p`` and count those passing both point and trivialization checks."""
    rng = random.Random(f"{seed}:{p}")
    _check_prime(con.spec, p)
    max_attempts = max_attempts if max_attempts is not None else 50 * max(samples, 1)
    valid = passed = rejected = 0
    attempts = 0
    while valid < samples and attempts < max_attempts:
        attempts += 1
        try:
            s = sample_cover_point(con.spec, p, trials=50, rng=rng)
        except ExhaustedError:
            continue
        try:
            ok = check_twist_point_ff(s, con) and check_trivialization_ff(s, con)
        except ZeroDenominatorAtSample:
            rejected += 1
            continue
        valid += 1
        passed += ok
    return PrimeSummary(p, valid, passed, rejected)
