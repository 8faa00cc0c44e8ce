"""Normal forms modulo a triangular system of pure-power relations ``head^e = rhs``.

Every ``rhs`` lives strictly below its head in a stratification of the
variables, and the heads are monic pure powers. Such a system is already a
Groebner basis for an elimination order, so exponent-division rewriting
decides ideal membership: ``p`` lies in the ideal iff its normal form is 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .multipoly import ONE, Monomial, MultiPoly, VarName, as_poly, as_var


class RelationSystemError(ValueError):
    pass


@dataclass(frozen=True)
class CoverRelation:
    head: VarName
    exponent: int
    rhs: MultiPoly

    def __post_init__(self):
        object.__setattr__(self, "head", as_var(self.head))
        object.__setattr__(self, "rhs", as_poly(self.rhs))
        if self.exponent < 2:
            raise RelationSystemError(f"relation exponent for {self.head} must be >= 2")

    def as_equation(self) -> MultiPoly:
        return MultiPoly.variable(self.head) ** self.exponent - self.rhs

    def __str__(self):
        return f"{self.head}^{self.exponent} = {self.rhs}"


@dataclass(frozen=True, eq=False)
class CoverRelationSystem:
    """Stratified relations with pairwise distinct heads.

    ``levels`` may be omitted; each head is then placed one level above the
    highest variable of its right-hand side, non-head variables at level 0.
    """

    relations: tuple[CoverRelation, ...]
    levels: Mapping[VarName, int] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        rels = tuple(self.relations)
        object.__setattr__(self, "relations", rels)
        heads = [r.head for r in rels]
        if len(set(heads)) != len(heads):
            raise RelationSystemError("relation heads must be pairwise distinct")
        by_head = {r.head: r for r in rels}
        levels = dict(self.levels) if self.levels else _compute_levels(by_head)
        for r in rels:
            lh = levels.get(r.head, 0)
            for v in r.rhs.variables():
                if levels.get(v, 0) >= lh:
                    raise RelationSystemError(
                        f"{v} in the right-hand side of {r.head} is not below it "
                        f"(levels {levels.get(v, 0)} >= {lh})"
                    )
        object.__setattr__(self, "levels", levels)

    @property
    def by_head(self) -> dict[VarName, CoverRelation]:
        return {r.head: r for r in self.relations}

    def heads(self) -> list[VarName]:
        return [r.head for r in self.relations]

    def level(self, v: VarName) -> int:
        return self.levels.get(v, 0)

    def extended(self, more: Iterable[CoverRelation]) -> "CoverRelationSystem":
        return CoverRelationSystem(self.relations + tuple(more))

    def equations(self) -> list[MultiPoly]:
        return [r.as_equation() for r in self.relations]

    def measure(self, m: Monomial) -> tuple[int, ...]:
        """Head exponents summed per level, highest level first.

        Every rewriting step strictly decreases this tuple lexicographically.
        """
        top = max(self.levels.values(), default=0)
        acc = [0] * top
        for v, e in m:
            lv = self.level(v)
            if lv and v in self.by_head:
                acc[top - lv] += e
        return tuple(acc)


def _compute_levels(by_head: dict[VarName, CoverRelation]) -> dict[VarName, int]:
    levels: dict[VarName, int] = {}
    visiting: set[VarName] = set()

    def visit(v: VarName) -> int:
        if v in levels:
            return levels[v]
        if v not in by_head:
            return 0
        if v in visiting:
            raise RelationSystemError(f"cyclic dependency through {v}")
        visiting.add(v)
        lv = 1 + max((visit(u) for u in by_head[v].rhs.variables()), default=0)
        visiting.discard(v)
        levels[v] = lv
        return lv

    for h in by_head:
        visit(h)
    return levels


def _reducible(m: Monomial, rels: dict[VarName, CoverRelation]) -> list[VarName]:
    return [v for v, e in m if v in rels and e >= rels[v].exponent]


def _rewrite_step(m: Monomial, head: VarName, rel: CoverRelation) -> MultiPoly:
    d = dict(m)
    q, r = divmod(d[head], rel.exponent)
    if r:
        d[head] = r
    else:
        del d[head]
    rest = MultiPoly({tuple(sorted(d.items())): 1})
    return rel.rhs ** q * rest


def _accumulate(acc: dict, poly: MultiPoly, coeff) -> None:
    for m, c in poly.terms.items():
        v = c * coeff
        if m in acc:
            v = acc[m] + v
        acc[m] = v


def _reduce_monomial(m: Monomial, R: CoverRelationSystem, rels, on_step) -> MultiPoly:
    cache = R._cache
    if m in cache:
        return cache[m]
    cands = _reducible(m, rels)
    if not cands:
        result = MultiPoly({m: 1})
    else:
        head = max(cands, key=R.level)
        step = _rewrite_step(m, head, rels[head])
        if on_step is not None:
            on_step(m, step)
        acc: dict = {}
        for mm, c in step.terms.items():
            _accumulate(acc, _reduce_monomial(mm, R, rels, on_step), c)
        result = MultiPoly(acc)
    if on_step is None:
        cache[m] = result
    return result


def normal_form(p, R: CoverRelationSystem, rng: random.Random | None = None,
                on_step: Callable[[Monomial, MultiPoly], None] | None = None) -> MultiPoly:
    """Unique representative of ``p`` with every head exponent below its relation exponent.

    By default the highest-level reducible head is rewritten first and results
    are memoised per monomial. Passing ``rng`` picks the head to rewrite at
    random instead, which is how confluence is tested. ``on_step`` receives
    each ``(monomial, replacement)`` rewrite.
    """
    p = as_poly(p)
    rels = R.by_head
    if rng is None:
        acc: dict = {}
        for m, c in p.terms.items():
            _accumulate(acc, _reduce_monomial(m, R, rels, on_step), c)
        return MultiPoly(acc, p.domain)

    work = dict(p.terms)
    done: dict = {}
    while work:
        m = rng.choice(sorted(work, key=repr))
        c = work.pop(m)
        cands = _reducible(m, rels)
        if not cands:
            _accumulate(done, MultiPoly({m: 1}), c)
            continue
        head = rng.choice(cands)
        step = _rewrite_step(m, head, rels[head])
        if on_step is not None:
            on_step(m, step)
        _accumulate(work, step, c)
        work = {k: v for k, v in work.items() if v != 0}
    return MultiPoly(done, p.domain)


def is_zero_mod(p, R: CoverRelationSystem) -> bool:
    return normal_form(p, R).is_zero()


def is_reduced(p: MultiPoly, R: CoverRelationSystem) -> bool:
    rels = R.by_head
    return all(not _reducible(m, rels) for m in p.terms)
