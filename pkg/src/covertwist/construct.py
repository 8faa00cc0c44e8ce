"""Fiber products, quotients, twists and rational points for abelian and dihedral covers.

Variable conventions:

* abelian cover of ``ell``-space: copy ``i`` has base coordinates ``x[i][e]``
  and radicals ``w[i][j]`` with ``w[i][j]^{n_j} = f_j(x[i][.])``; the quotient
  by the diagonal group has coordinates ``z[i][j]``; the twist is written in
  generic coordinates ``x`` (or ``x1..xl``) and ``Z[j]`` over the function
  field of the quotient, with ``x[1][.]`` as constants. Its ``i``-indexed
  instances use ``Z[i][j]``.
* dihedral cover of the line: copy ``i`` has ``x[i]``, ``u[i]`` with
  ``u[i]^2 = f(x[i])`` and ``z[i]`` with ``z[i]^n = g(x[i], u[i])``. The
  quotient coordinates are ``U[i]``, ``Z[i]``; the twist lives in ``x, s, U, Z``
  where ``s`` is the coordinate of the intermediate curve, identified with
  ``x`` (and ``t`` with ``u`` when ``g`` involves ``u``).

The exponents of the invariant generators (``a``), of the quotient relations
(``c``) and of the twist equations (``t``) are derived by search against the
invariance test and the rewriting decision procedure, and are reported next
to the closed forms they are expected to match.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .coverring import CoverRelation, CoverRelationSystem, is_zero_mod, normal_form
from .galois import KummerAction, diagonal_kummer_action, dihedral_layer_actions, is_invariant
from .multipoly import MultiPoly, VarName, as_poly, format, substitute, substitute_fractions, var

log = logging.getLogger(__name__)


class SpecError(ValueError):
    """Malformed cover specification."""


class ExponentDerivationError(ArithmeticError):
    """No exponent in the search range makes the identity hold."""


# ---------------------------------------------------------------------------
# specifications

@dataclass(frozen=True)
class Layer:
    n: int
    f: MultiPoly

    def __post_init__(self):
        object.__setattr__(self, "f", as_poly(self.f))


def abelian_base_vars(ell: int) -> list[VarName]:
    return [var("x")] if ell == 1 else [var(f"x{e}") for e in range(1, ell + 1)]


@dataclass(frozen=True)
class AbelianCoverSpec:
    """Cover of affine ``ell``-space by ``w_j^{n_j} = f_j(x)``, ``n_1 | ... | n_r``, ``m`` copies."""

    ell: int
    layers: tuple[Layer, ...]
    m: int = 2

    kind = "abelian"

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(
            lay if isinstance(lay, Layer) else Layer(*lay) for lay in self.layers))

    @property
    def factors(self) -> tuple[int, ...]:
        return tuple(lay.n for lay in self.layers)

    @property
    def r(self) -> int:
        return len(self.layers)

    @property
    def degree(self) -> int:
        out = 1
        for n in self.factors:
            out *= n
        return out

    def d(self, j: int) -> int:
        """``n_j / n_1`` for the 1-based layer index ``j``."""
        return self.factors[j - 1] // self.factors[0]

    def base_vars(self) -> list[VarName]:
        return abelian_base_vars(self.ell)

    def _accepted_base(self) -> dict[VarName, int]:
        acc = {v: e for e, v in enumerate(self.base_vars(), start=1)}
        if self.ell == 1:
            acc[var("x1")] = 1
        return acc

    def problems(self) -> list[str]:
        out = []
        if not isinstance(self.ell, int) or self.ell < 1:
            out.append(f"ell must be a positive integer, got {self.ell!r}")
        if not isinstance(self.m, int) or self.m < 1:
            out.append(f"m must be a positive integer, got {self.m!r}")
        if not self.layers:
            out.append("at least one layer is required")
        for j, lay in enumerate(self.layers, start=1):
            if not isinstance(lay.n, int) or lay.n < 2:
                out.append(f"layer {j}: n must be an integer >= 2, got {lay.n!r}")
            if lay.f.is_zero():
                out.append(f"layer {j}: f is the zero polynomial")
            if lay.f.domain != 1:
                out.append(f"layer {j}: f must have rational coefficients")
            if isinstance(self.ell, int) and self.ell >= 1:
                extra = lay.f.variables() - set(self._accepted_base())
                if extra:
                    names = ", ".join(sorted(str(v) for v in extra))
                    allowed = ", ".join(str(v) for v in self.base_vars())
                    out.append(f"layer {j}: f uses {names}; only base variables {allowed} are allowed")
        ns = self.factors
        for j, (a, b) in enumerate(zip(ns, ns[1:]), start=1):
            if isinstance(a, int) and isinstance(b, int) and a >= 1 and b % a:
                out.append(f"divisibility chain violated: n_{j} = {a} does not divide n_{j + 1} = {b}")
        return out

    def validate(self) -> "AbelianCoverSpec":
        probs = self.problems()
        if probs:
            raise SpecError("; ".join(probs))
        return self

    def degenerate_layers(self) -> list[int]:
        return [j for j, lay in enumerate(self.layers, start=1) if lay.f.is_constant()]

    def f_at(self, j: int, i: Optional[int]) -> MultiPoly:
        """``f_j`` in copy ``i``'s base coordinates (generic coordinates for ``None``)."""
        f = self.layers[j - 1].f
        sigma = {}
        for v, e in self._accepted_base().items():
            if i is None:
                sigma[v] = self.base_vars()[e - 1]
            else:
                sigma[v] = var("x", i, e)
        return substitute(f, sigma)

    def with_m(self, m: int) -> "AbelianCoverSpec":
        return AbelianCoverSpec(self.ell, self.layers, m)

    def echo(self) -> dict:
        return {"kind": "abelian", "ell": self.ell, "m": self.m,
                "layers": [{"n": lay.n, "f": format(lay.f)} for lay in self.layers]}


U_VAR = var("u")
X_VAR = var("x")


@dataclass(frozen=True)
class DihedralCoverSpec:
    """D_n cover of the line: ``u^2 = f(x)``, ``z^n = g(x, u)``, ``m`` copies."""

    n: int
    f: MultiPoly
    g: MultiPoly
    m: int = 2

    kind = "dihedral"

    def __post_init__(self):
        f = as_poly(self.f)
        g = as_poly(self.g)
        if not f.is_zero() and U_VAR in g.variables() and f.variables() <= {X_VAR}:
            g = normal_form(g, CoverRelationSystem((CoverRelation(U_VAR, 2, f),)))
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    @property
    def degree(self) -> int:
        return 2 * self.n

    @property
    def g_uses_u(self) -> bool:
        return U_VAR in self.g.variables()

    def problems(self) -> list[str]:
        out = []
        if not isinstance(self.n, int) or self.n < 2:
            out.append(f"n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.m, int) or self.m < 1:
            out.append(f"m must be a positive integer, got {self.m!r}")
        if self.f.is_zero():
            out.append("f is the zero polynomial")
        if self.g.is_zero():
            out.append("g is zero after reduction modulo u^2 = f")
        if self.f.variables() - {X_VAR}:
            out.append("f may only use the variable x")
        if self.g.variables() - {X_VAR, U_VAR}:
            out.append("g may only use the variables x and u")
        if self.f.domain != 1 or self.g.domain != 1:
            out.append("f and g must have rational coefficients")
        return out

    def validate(self) -> "DihedralCoverSpec":
        probs = self.problems()
        if probs:
            raise SpecError("; ".join(probs))
        return self

    def with_m(self, m: int) -> "DihedralCoverSpec":
        return DihedralCoverSpec(self.n, self.f, self.g, m)

    def echo(self) -> dict:
        return {"kind": "dihedral", "n": self.n, "m": self.m, "f": format(self.f), "g": format(self.g)}


CoverSpec = Union[AbelianCoverSpec, DihedralCoverSpec]


# ---------------------------------------------------------------------------
# results

@dataclass(frozen=True)
class PresentedVariety:
    """Affine presentation: the ``equations`` vanish on the variety.

    ``constants`` are variables of the base field the variety is defined over
    (for twists: coordinates of the first copy, which are elements of the
    function field of the quotient).
    """

    name: str
    variables: tuple[VarName, ...]
    equations: tuple[MultiPoly, ...]
    relations: Optional[CoverRelationSystem] = None
    constants: tuple[VarName, ...] = ()

    def __post_init__(self):
        allowed = set(self.variables) | set(self.constants)
        for eq in self.equations:
            stray = eq.variables() - allowed
            if stray:
                raise ValueError(f"{self.name}: equation {eq} uses undeclared {sorted(map(str, stray))}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "variables": [str(v) for v in self.variables],
            "constants": [str(v) for v in self.constants],
            "equations": [format(e) for e in self.equations],
        }


Fraction_ = tuple[MultiPoly, MultiPoly]


@dataclass(frozen=True)
class SymbolicPoint:
    label: str
    variables: tuple[VarName, ...]
    coordinates: tuple[Fraction_, ...]

    def __post_init__(self):
        coords = tuple((as_poly(n), as_poly(d)) for n, d in self.coordinates)
        for n, d in coords:
            if d.is_zero():
                raise ValueError(f"{self.label}: zero denominator")
        object.__setattr__(self, "coordinates", coords)

    def as_substitution(self) -> dict:
        return dict(zip(self.variables, self.coordinates))

    def render(self) -> list[str]:
        out = []
        for n, d in self.coordinates:
            if d == 1:
                out.append(format(n))
            else:
                num = format(n) if len(n) == 1 else f"({format(n)})"
                den = format(d) if len(d) == 1 else f"({format(d)})"
                out.append(f"{num}/{den}")
        return out

    def to_dict(self) -> dict:
        return {"label": self.label, "variables": [str(v) for v in self.variables],
                "coordinates": self.render()}


@dataclass(frozen=True)
class QuotientGenerator:
    name: VarName
    definition: MultiPoly
    layer: int


@dataclass(frozen=True)
class LayerExponents:
    """Derived exponents of one layer next to the closed forms they are compared with."""

    layer: str
    n: int
    a: int
    a_expected: int
    c: int
    c_expected: int
    t: int
    t_expected: int
    candidates: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return (self.a, self.c, self.t) == (self.a_expected, self.c_expected, self.t_expected)

    def to_dict(self) -> dict:
        return {"layer": self.layer, "n": self.n,
                "a": self.a, "a_closed": self.a_expected,
                "c": self.c, "c_closed": self.c_expected,
                "t": self.t, "t_closed": self.t_expected,
                "agrees": self.agrees}


@dataclass(frozen=True)
class QuotientPresentation:
    variety: PresentedVariety
    generators: tuple[QuotientGenerator, ...]
    c: tuple[int, ...]
    c_expected: tuple[int, ...]


@dataclass(frozen=True)
class TwistPresentation:
    variety: PresentedVariety
    instances: tuple[MultiPoly, ...]
    instance_trivialization: dict
    trivialization: dict
    t: tuple[int, ...]
    t_expected: tuple[int, ...]


@dataclass(frozen=True)
class Construction:
    """Everything built from one spec, plus the maps verification needs.

    ``relations`` covers all copies and the generic cover point; ``expand``
    rewrites quotient coordinates and intermediate-curve coordinates as
    elements of the function field of the product.
    """

    spec: CoverSpec
    cover: PresentedVariety
    product: PresentedVariety
    quotient: QuotientPresentation
    twist: TwistPresentation
    points: tuple[SymbolicPoint, ...]
    relations: CoverRelationSystem
    expand: dict
    actions: tuple[KummerAction, ...]
    exponents: tuple[LayerExponents, ...]
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.echo(),
            "cover": self.cover.to_dict(),
            "product": self.product.to_dict(),
            "quotient": {**self.quotient.variety.to_dict(),
                         "generators": {str(g.name): format(g.definition)
                                        for g in self.quotient.generators}},
            "twist": {**self.twist.variety.to_dict(),
                      "instances": [format(e) for e in self.twist.instances]},
            "points": [p.to_dict() for p in self.points],
            "exponents": [e.to_dict() for e in self.exponents],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# exponent search

def search_exponent(candidates: Sequence[int], holds: Callable[[int], bool], what: str) -> tuple[int, list[int]]:
    good = [k for k in candidates if holds(k)]
    if not good:
        raise ExponentDerivationError(f"no exponent in {list(candidates)} satisfies {what}")
    return good[0], good


def cleared_reduces(eq: MultiPoly, sub: dict, R: CoverRelationSystem, expand: dict | None = None) -> MultiPoly:
    """Normal form of ``eq`` after a fractional substitution, cleared and expanded."""
    cleared, _ = substitute_fractions(eq, sub)
    if expand:
        cleared = substitute(cleared, expand)
    return normal_form(cleared, R)


# ---------------------------------------------------------------------------
# abelian covers

def _abelian_relations(spec: AbelianCoverSpec, copies: Sequence[int], generic: bool = True) -> CoverRelationSystem:
    rels = []
    for i in copies:
        for j, lay in enumerate(spec.layers, start=1):
            rels.append(CoverRelation(var("w", i, j), lay.n, spec.f_at(j, i)))
    if generic:
        for j, lay in enumerate(spec.layers, start=1):
            rels.append(CoverRelation(var("w", j), lay.n, spec.f_at(j, None)))
    return CoverRelationSystem(tuple(rels))


def abelian_action(spec: AbelianCoverSpec, copies: Sequence[int] | None = None) -> KummerAction:
    copies = range(1, max(spec.m, 2) + 1) if copies is None else copies
    return diagonal_kummer_action(spec.factors, copies, label="G")


def cover_presentation(spec: AbelianCoverSpec) -> PresentedVariety:
    spec.validate()
    R = _abelian_relations(spec, (), generic=True)
    ws = [var("w", j) for j in range(1, spec.r + 1)]
    return PresentedVariety("cover", tuple(spec.base_vars()) + tuple(ws), tuple(R.equations()), R)


def fiber_product(spec: AbelianCoverSpec) -> PresentedVariety:
    """``w[i][j]^{n_j} - f_j(x[i][.])`` for every copy ``i`` and layer ``j``."""
    spec.validate()
    copies = range(1, spec.m + 1)
    R = _abelian_relations(spec, copies, generic=False)
    variables = [var("x", i, e) for i in copies for e in range(1, spec.ell + 1)]
    variables += [var("w", i, j) for i in copies for j in range(1, spec.r + 1)]
    return PresentedVariety(f"U_{spec.m}", tuple(variables), tuple(R.equations()), R)


def generator_exponent(spec: AbelianCoverSpec, j: int) -> tuple[int, list[int]]:
    """Exponent ``a`` making ``w[1][j]^a * w[2][j]`` invariant under the diagonal action."""
    n = spec.factors[j - 1]
    action = abelian_action(spec, (1, 2))
    return search_exponent(
        range(1, n),
        lambda a: is_invariant(MultiPoly.monomial({var("w", 1, j): a, var("w", 2, j): 1}), action),
        f"invariance of w[1][{j}]^a*w[2][{j}]",
    )


def invariant_generators(spec: AbelianCoverSpec) -> list[QuotientGenerator]:
    spec.validate()
    if spec.m < 2:
        raise SpecError("invariant generators need m >= 2")
    gens = []
    for j in range(1, spec.r + 1):
        a, _ = generator_exponent(spec, j)
        for i in range(1, spec.m):
            gens.append(QuotientGenerator(
                var("z", i, j), MultiPoly.monomial({var("w", 1, j): a, var("w", i + 1, j): 1}), j))
    return gens


def _quotient_exponent(spec: AbelianCoverSpec, j: int, definition: MultiPoly, R) -> tuple[int, list[int]]:
    n = spec.factors[j - 1]
    lhs = definition ** n
    f1, f2 = spec.f_at(j, 1), spec.f_at(j, 2)
    return search_exponent(range(0, 2 * n + 1), lambda c: is_zero_mod(lhs - f1 ** c * f2, R),
                           f"the quotient relation of layer {j}")


def _twist_exponent(spec: AbelianCoverSpec, j: int, R) -> tuple[int, list[int]]:
    n = spec.factors[j - 1]
    Zv = var("Z", 1, j)
    f1, f2 = spec.f_at(j, 1), spec.f_at(j, 2)
    sub = {Zv: (MultiPoly.variable(var("w", 2, j)), MultiPoly.variable(var("w", 1, j)))}
    return search_exponent(
        range(0, 2 * n + 1),
        lambda t: cleared_reduces(f1 ** t * MultiPoly.variable(Zv) ** n - f2, sub, R).is_zero(),
        f"the twist equation of layer {j}",
    )


def quotient_presentation(spec: AbelianCoverSpec) -> QuotientPresentation:
    """``z[i][j]^{n_j} - f_j(x[1])^{c_j} f_j(x[i+1])`` with ``c_j`` derived."""
    spec.validate()
    if spec.m < 2:
        raise SpecError("the quotient presentation needs m >= 2")
    R = _abelian_relations(spec, range(1, spec.m + 1))
    gens = invariant_generators(spec)
    cs = []
    for j in range(1, spec.r + 1):
        first = next(g for g in gens if g.layer == j)
        c, _ = _quotient_exponent(spec, j, first.definition, R)
        cs.append(c)
    eqs = []
    for g in gens:
        i, j = g.name.indices
        n = spec.factors[j - 1]
        eqs.append(MultiPoly.variable(g.name) ** n - spec.f_at(j, 1) ** cs[j - 1] * spec.f_at(j, i + 1))
    variables = [var("x", i, e) for i in range(1, spec.m + 1) for e in range(1, spec.ell + 1)]
    variables += [g.name for g in gens]
    expected = tuple(n - spec.d(j) for j, n in enumerate(spec.factors, start=1))
    V = PresentedVariety(f"V_{spec.m}", tuple(variables), tuple(eqs))
    return QuotientPresentation(V, tuple(gens), tuple(cs), expected)


def twist_presentation(spec: AbelianCoverSpec) -> TwistPresentation:
    """``f_j(x[1])^{t_j} Z[j]^{n_j} - f_j(x)`` with ``t_j`` derived, plus its ``i``-indexed instances."""
    spec.validate()
    if spec.m < 2:
        raise SpecError("the twist presentation needs m >= 2")
    R = _abelian_relations(spec, range(1, spec.m + 1))
    ts = [_twist_exponent(spec, j, R)[0] for j in range(1, spec.r + 1)]
    generic, instances = [], []
    inst_triv, triv = {}, {}
    for j, lay in enumerate(spec.layers, start=1):
        f1 = spec.f_at(j, 1)
        generic.append(f1 ** ts[j - 1] * MultiPoly.variable(var("Z", j)) ** lay.n - spec.f_at(j, None))
        triv[var("Z", j)] = (MultiPoly.variable(var("w", j)), MultiPoly.variable(var("w", 1, j)))
        for i in range(1, spec.m):
            Zij = var("Z", i, j)
            instances.append(f1 ** ts[j - 1] * MultiPoly.variable(Zij) ** lay.n - spec.f_at(j, i + 1))
            inst_triv[Zij] = (MultiPoly.variable(var("w", i + 1, j)), MultiPoly.variable(var("w", 1, j)))
    variables = tuple(spec.base_vars()) + tuple(var("Z", j) for j in range(1, spec.r + 1))
    constants = tuple(var("x", 1, e) for e in range(1, spec.ell + 1))
    V = PresentedVariety("twist", variables, tuple(generic), None, constants)
    expected = tuple(spec.d(j) for j in range(1, spec.r + 1))
    return TwistPresentation(V, tuple(instances), inst_triv, triv, tuple(ts), expected)


def rational_points(spec: AbelianCoverSpec) -> list[SymbolicPoint]:
    """``P_1 = (x[1][.], 1, ..., 1)`` and ``P_{i+1} = (x[i+1][.], w[i+1][j]/w[1][j])``."""
    spec.validate()
    variables = tuple(spec.base_vars()) + tuple(var("Z", j) for j in range(1, spec.r + 1))
    one = MultiPoly.const(1)
    pts = []
    for i in range(1, spec.m + 1):
        coords = [(MultiPoly.variable(var("x", i, e)), one) for e in range(1, spec.ell + 1)]
        for j in range(1, spec.r + 1):
            if i == 1:
                coords.append((one, one))
            else:
                coords.append((MultiPoly.variable(var("w", i, j)), MultiPoly.variable(var("w", 1, j))))
        pts.append(SymbolicPoint(f"P{i}", variables, tuple(coords)))
    return pts


def build_abelian(spec: AbelianCoverSpec) -> Construction:
    spec.validate()
    notes = []
    for j in spec.degenerate_layers():
        notes.append(f"layer {j}: f_{j} is constant, the layer is degenerate (disconnected or trivial)")
    m_eff = max(spec.m, 2)
    work = spec if spec.m >= 2 else spec.with_m(2)
    if spec.m < 2:
        notes.append("m = 1: no quotient or twist equations; exponents derived on an auxiliary pair of copies")
    R = _abelian_relations(spec, range(1, m_eff + 1))
    quotient = quotient_presentation(work)
    twist = twist_presentation(work)
    if spec.m < 2:
        quotient = QuotientPresentation(
            PresentedVariety("V_1", tuple(var("x", 1, e) for e in range(1, spec.ell + 1)), ()),
            (), quotient.c, quotient.c_expected)
        twist = TwistPresentation(twist.variety, (), {}, twist.trivialization, twist.t, twist.t_expected)
    exps = []
    n1 = spec.factors[0]
    for j, n in enumerate(spec.factors, start=1):
        a, a_all = generator_exponent(spec, j)
        first = MultiPoly.monomial({var("w", 1, j): a, var("w", 2, j): 1})
        _, c_all = _quotient_exponent(work, j, first, R)
        _, t_all = _twist_exponent(work, j, R)
        exps.append(LayerExponents(
            layer=f"j={j}", n=n, a=a, a_expected=n1 - 1,
            c=quotient.c[j - 1], c_expected=quotient.c_expected[j - 1],
            t=twist.t[j - 1], t_expected=twist.t_expected[j - 1],
            candidates={"a": a_all, "c": c_all, "t": t_all}))
    for e in exps:
        if any(len(v) > 1 for v in e.candidates.values()):
            notes.append(f"layer {e.layer}: exponent not unique {e.candidates}; smallest taken")
    return Construction(
        spec=spec,
        cover=cover_presentation(spec),
        product=fiber_product(spec),
        quotient=quotient,
        twist=twist,
        points=tuple(rational_points(spec)),
        relations=R,
        expand={},
        actions=(abelian_action(spec),),
        exponents=tuple(exps),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# dihedral covers

S_VAR, T_VAR = var("s"), var("t")


def _dihedral_g(spec: DihedralCoverSpec, i: Optional[int], *, curve: bool) -> MultiPoly:
    """``g`` at copy ``i``; ``curve=True`` writes it in the intermediate-curve coordinates ``s``/``t``."""
    if curve:
        xs, us = (S_VAR, T_VAR) if i is None else (var("s", i), var("t", i))
    else:
        xs, us = (X_VAR, U_VAR) if i is None else (var("x", i), var("u", i))
    return substitute(spec.g, {X_VAR: MultiPoly.variable(xs), U_VAR: MultiPoly.variable(us)})


def _dihedral_f(spec: DihedralCoverSpec, i: Optional[int]) -> MultiPoly:
    return spec.f if i is None else substitute(spec.f, {X_VAR: MultiPoly.variable(var("x", i))})


def _dihedral_relations(spec: DihedralCoverSpec, copies: Sequence[int]) -> CoverRelationSystem:
    rels = []
    for i in list(copies) + [None]:
        u = U_VAR if i is None else var("u", i)
        z = var("z") if i is None else var("z", i)
        rels.append(CoverRelation(u, 2, _dihedral_f(spec, i)))
        rels.append(CoverRelation(z, spec.n, _dihedral_g(spec, i, curve=False)))
    return CoverRelationSystem(tuple(rels))


def _identification(spec: DihedralCoverSpec, copies: Sequence[int]) -> dict:
    out = {S_VAR: MultiPoly.variable(X_VAR), T_VAR: MultiPoly.variable(U_VAR)}
    for i in copies:
        out[var("s", i)] = MultiPoly.variable(var("x", i))
        out[var("t", i)] = MultiPoly.variable(var("u", i))
    return out


@dataclass(frozen=True)
class DihedralArtifacts:
    product: PresentedVariety
    quotient: QuotientPresentation
    twist: TwistPresentation
    points: tuple[SymbolicPoint, ...]
    construction: Construction


def dihedral_pipeline(spec: DihedralCoverSpec) -> DihedralArtifacts:
    """Product, quotient relations for ``U[i]``/``Z[i]``, twist and points of a dihedral cover."""
    spec.validate()
    n, m = spec.n, spec.m
    m_eff = max(m, 2)
    copies = range(1, m_eff + 1)
    R = _dihedral_relations(spec, copies)
    expand = _identification(spec, copies)
    layers = dihedral_layer_actions(n, copies)
    notes = []
    if spec.f.is_constant() or spec.g.is_constant():
        notes.append("f or g is constant: degenerate layer")
    if spec.g_uses_u:
        notes.append("g involves u: the Z-layer identifies s with x and t with u; "
                     "its verification is convention-dependent")
    if m < 2:
        notes.append("m = 1: no quotient or twist equations; exponents derived on an auxiliary pair of copies")

    # layer data: (label, order, action, radical role, quotient role, twist coordinate, base poly at copy i)
    u_layer = ("u", 2, layers.tau, "u", "U", var("U"),
               lambda i: _dihedral_f(spec, i), lambda i: _dihedral_f(spec, i))
    z_layer = ("z", n, layers.sigma, "z", "Z", var("Z"),
               lambda i: _dihedral_g(spec, i, curve=False), lambda i: _dihedral_g(spec, i, curve=True))

    gens, quot_eqs, cs, exps = [], [], [], []
    generic_eqs, instances, inst_triv, triv, ts = [], [], {}, {}, []
    for label, order, action, rad, qrole, tw, base_L, base_curve in (u_layer, z_layer):
        r1, r2 = var(rad, 1), var(rad, 2)
        a, a_all = search_exponent(
            range(1, order),
            lambda a: is_invariant(MultiPoly.monomial({r1: a, r2: 1}), action),
            f"invariance of {rad}[1]^a*{rad}[2]")
        first = MultiPoly.monomial({r1: a, r2: 1})
        lhs = first ** order
        c, c_all = search_exponent(
            range(0, 2 * order + 1),
            lambda c: is_zero_mod(lhs - base_L(1) ** c * base_L(2), R),
            f"the {label}-layer quotient relation")
        sub = {var(qrole, 1): (MultiPoly.variable(r2), MultiPoly.variable(r1))}
        t, t_all = search_exponent(
            range(0, 2 * order + 1),
            lambda t: cleared_reduces(base_curve(1) ** t * MultiPoly.variable(var(qrole, 1)) ** order
                                      - base_curve(2), sub, R, expand).is_zero(),
            f"the {label}-layer twist equation")
        cs.append(c)
        ts.append(t)
        a_exp = 1 if label == "u" else n - 1
        exps.append(LayerExponents(label, order, a, a_exp, c, a_exp, t, 1,
                                   {"a": a_all, "c": c_all, "t": t_all}))
        for i in range(1, m):
            q = var(qrole, i)
            d = MultiPoly.monomial({r1: a, var(rad, i + 1): 1})
            gens.append(QuotientGenerator(q, d, 1 if label == "u" else 2))
            expand[q] = d
            quot_eqs.append(MultiPoly.variable(q) ** order - base_curve(1) ** c * base_curve(i + 1))
            inst = base_curve(1) ** t * MultiPoly.variable(q) ** order - base_curve(i + 1)
            instances.append(inst)
            inst_triv[q] = (MultiPoly.variable(var(rad, i + 1)), MultiPoly.variable(r1))
        generic_eqs.append(base_curve(1) ** t * MultiPoly.variable(tw) ** order - base_curve(None))
        triv[tw] = (MultiPoly.variable(var(rad)), MultiPoly.variable(r1))

    uses_t = spec.g_uses_u
    copy_vars = [var("x", i) for i in range(1, m + 1)]
    prod_vars = copy_vars + [var("u", i) for i in range(1, m + 1)] + [var("z", i) for i in range(1, m + 1)]
    prod_rels = _dihedral_relations(spec, range(1, m + 1))
    prod_eqs = [r.as_equation() for r in prod_rels.relations if r.head.indices]
    product = PresentedVariety(f"C_{m}", tuple(prod_vars), tuple(prod_eqs))

    curve_consts = [var("s", i) for i in range(1, m + 1)] + ([var("t", i) for i in range(1, m + 1)] if uses_t else [])
    qvars = tuple(copy_vars) + tuple(g.name for g in gens)
    quotient = QuotientPresentation(
        PresentedVariety(f"Y_{m}", qvars, tuple(quot_eqs), None, tuple(curve_consts)),
        tuple(gens), tuple(cs), (1, n - 1))

    tvars = (X_VAR, S_VAR) + ((T_VAR,) if uses_t else ()) + (var("U"), var("Z"))
    tconsts = (var("x", 1), var("s", 1)) + ((var("t", 1),) if uses_t else ())
    twist = TwistPresentation(
        PresentedVariety("C_a", tvars, tuple(generic_eqs), None, tconsts),
        tuple(instances), inst_triv, triv, tuple(ts), (1, 1))

    one = MultiPoly.const(1)
    pts = []
    for i in range(1, m + 1):
        coords = [(MultiPoly.variable(var("x", i)), one), (MultiPoly.variable(var("s", i)), one)]
        if uses_t:
            coords.append((MultiPoly.variable(var("t", i)), one))
        if i == 1:
            coords += [(one, one), (one, one)]
        else:
            coords += [(MultiPoly.variable(var("U", i - 1)), _dihedral_f(spec, 1)),
                       (MultiPoly.variable(var("Z", i - 1)), _dihedral_g(spec, 1, curve=True))]
        pts.append(SymbolicPoint(f"P{i}", tvars, tuple(coords)))

    cover_rels = _dihedral_relations(spec, ())
    cover = PresentedVariety("C", (X_VAR, U_VAR, var("z")), tuple(cover_rels.equations()), cover_rels)
    for e in exps:
        if any(len(v) > 1 for v in e.candidates.values()):
            notes.append(f"layer {e.layer}: exponent not unique {e.candidates}; smallest taken")
    construction = Construction(
        spec=spec, cover=cover, product=product, quotient=quotient, twist=twist,
        points=tuple(pts), relations=R, expand=expand,
        actions=(layers.sigma, layers.tau), exponents=tuple(exps), notes=tuple(notes))
    return DihedralArtifacts(product, quotient, twist, tuple(pts), construction)


def build(spec: CoverSpec) -> Construction:
    if isinstance(spec, DihedralCoverSpec):
        return dihedral_pipeline(spec).construction
    return build_abelian(spec)
