"""Finite group actions on cover rings.

Generators act by Kummer scaling: generator ``g_j`` multiplies every copy of
the layer-``j`` radical ``w[i][j]`` by the same primitive root ``zeta_{n_j}``
(the diagonal subgroup of the product of copies). Base coordinates are fixed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .exactnum import CycloNumber, lcm
from .multipoly import MultiPoly, VarName, as_poly


class UndefinedActionError(KeyError):
    pass


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Invariant factors ``n_1 | n_2 | ... | n_r``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if any(n < 1 for n in self.factors):
            raise GroupTableError("invariant factors must be positive")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise GroupTableError(f"divisibility chain broken: {a} does not divide {b}")

    @property
    def order(self) -> int:
        out = 1
        for n in self.factors:
            out *= n
        return out

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.factors)))

    def table(self) -> "GroupElementTable":
        return cyclic_product_table(self.factors)


@dataclass(frozen=True)
class KummerAction:
    """Scaling data: ``scalings[j][v] = a`` means ``g_j: v -> zeta_{orders[j]}^a * v``.

    Variables whose role is in ``fixed_roles`` are fixed by every generator;
    any other variable must appear in every generator's scaling map.
    """

    orders: tuple[int, ...]
    scalings: tuple[Mapping[VarName, int], ...]
    fixed_roles: frozenset = frozenset({"x", "s", "t"})
    label: str = ""

    @property
    def modulus(self) -> int:
        out = 1
        for n in self.orders:
            out = lcm(out, n)
        return out

    def domain(self) -> set[VarName]:
        return {v for sc in self.scalings for v in sc}

    def weight(self, g: Sequence[int], v: VarName) -> int:
        """Exponent ``k`` with ``g(v) = zeta_N^k * v`` for ``N = modulus``."""
        if v.role in self.fixed_roles:
            return 0
        N = self.modulus
        k = 0
        for j, e in enumerate(g):
            if not e:
                continue
            try:
                a = self.scalings[j][v]
            except KeyError:
                raise UndefinedActionError(f"action {self.label or ''} undefined on {v}") from None
            k += e * a * (N // self.orders[j])
        return k % N

    def generators(self) -> list[tuple[int, ...]]:
        r = len(self.orders)
        return [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]


def apply_action(g: Sequence[int], p, action: KummerAction) -> MultiPoly:
    """Image of ``p`` under the group element ``prod_j g_j^{g[j]}``."""
    p = as_poly(p)
    N = action.modulus
    weights: dict[VarName, int] = {}
    out = {}
    for m, c in p.terms.items():
        k = 0
        for v, e in m:
            if v not in weights:
                weights[v] = action.weight(g, v)
            k += weights[v] * e
        k %= N
        out[m] = c if k == 0 else c * CycloNumber.zeta(N, k)
    return MultiPoly(out, p.domain)


def is_invariant(p, action: KummerAction) -> bool:
    p = as_poly(p)
    return all(apply_action(g, p, action) == p for g in action.generators())


def invariance_witness(p, action: KummerAction) -> MultiPoly | None:
    """``g(p) - p`` for the first generator moving ``p``, else ``None``."""
    p = as_poly(p)
    for g in action.generators():
        d = apply_action(g, p, action) - p
        if not d.is_zero():
            return d
    return None


def diagonal_kummer_action(factors: Sequence[int], copies: Iterable[int], *,
                           generic: bool = True, label: str = "G") -> KummerAction:
    """Diagonal action on ``w[i][j]`` for the given copies (and generic ``w[j]``)."""
    factors = tuple(factors)
    copies = list(copies)
    scalings = []
    for j in range(len(factors)):
        sc = {}
        for jj in range(1, len(factors) + 1):
            a = 1 if jj == j + 1 else 0
            for i in copies:
                sc[VarName("w", (i, jj))] = a
            if generic:
                sc[VarName("w", (jj,))] = a
        scalings.append(sc)
    return KummerAction(factors, tuple(scalings), label=label)


# ---------------------------------------------------------------------------
# abstract groups

@dataclass(frozen=True, eq=False)
class GroupElementTable:
    elements: tuple
    mul: Mapping[tuple, Hashable]
    identity: Hashable
    name: str = ""

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        eset = set(els)
        if self.identity not in eset:
            raise GroupTableError("identity not among the elements")
        for a in els:
            if self(self.identity, a) != a or self(a, self.identity) != a:
                raise GroupTableError(f"identity law fails at {a!r}")
            if not any(self(a, b) == self.identity for b in els):
                raise GroupTableError(f"{a!r} has no inverse")
        triples = itertools.product(els, repeat=3)
        if len(els) > 24:
            rng = random.Random(0)
            triples = ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(4000))
        for a, b, c in triples:
            if self(self(a, b), c) != self(a, self(b, c)):
                raise GroupTableError(f"associativity fails at {(a, b, c)!r}")

    def __call__(self, a, b):
        try:
            return self.mul[(a, b)]
        except KeyError:
            raise GroupTableError(f"product {a!r}*{b!r} undefined") from None

    def inverse(self, a):
        return next(b for b in self.elements if self(a, b) == self.identity)

    def power(self, a, k: int):
        out = self.identity
        for _ in range(k):
            out = self(out, a)
        return out

    def __len__(self):
        return len(self.elements)


def cyclic_product_table(factors: Sequence[int]) -> GroupElementTable:
    factors = tuple(factors)
    els = list(itertools.product(*(range(n) for n in factors)))
    mul = {(a, b): tuple((x + y) % n for x, y, n in zip(a, b, factors)) for a in els for b in els}
    name = " x ".join(f"Z/{n}" for n in factors) or "1"
    return GroupElementTable(tuple(els), mul, tuple(0 for _ in factors), name)


def dihedral_table(n: int) -> GroupElementTable:
    """D_n of order 2n; element ``(k, s)`` stands for ``sigma^k tau^s``."""
    els = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        (k1, s1), (k2, s2) = a, b
        # tau sigma^k = sigma^-k tau
        return ((k1 + (-k2 if s1 else k2)) % n, (s1 + s2) % 2)

    table = {(a, b): mul(a, b) for a in els for b in els}
    return GroupElementTable(tuple(els), table, (0, 0), f"D_{n}")


def dihedral_relations_hold(D: GroupElementTable, n: int) -> bool:
    """``sigma^n = tau^2 = 1`` and ``tau sigma tau = sigma^-1`` in the table."""
    sigma, tau = (1 % n, 0), (0, 1)
    e = D.identity
    return (D.power(sigma, n) == e and D.power(tau, 2) == e
            and D(D(tau, sigma), tau) == D.inverse(sigma)
            and all(D.power(sigma, k) != e for k in range(1, n)))


def cocycle_check(G: GroupElementTable, a: Mapping, compose: Callable) -> bool:
    """Cocycle condition for a trivially acted-on target: ``a(gh) = a(g) o a(h)``."""
    for g in G.elements:
        for h in G.elements:
            if a[G(g, h)] != compose(a[g], a[h]):
                return False
    return True


def action_automorphisms(action: KummerAction, G: GroupElementTable,
                         probes: Sequence[VarName]) -> tuple[dict, Callable]:
    """Ring automorphisms of ``action`` recorded by their images of ``probes``.

    Returns the labelling ``g -> images`` and composition of such labels; both
    are computed on the ring, not read off the group table.
    """
    probes = list(probes)

    def images(g):
        return tuple(apply_action(g, MultiPoly.variable(v), action) for v in probes)

    def compose(A, B):
        sigma = dict(zip(probes, A))
        return tuple(b.subs(sigma) for b in B)

    return {g: images(g) for g in G.elements}, compose


@dataclass(frozen=True)
class DihedralLayers:
    n: int
    sigma: KummerAction
    tau: KummerAction
    sigma_order_ok: bool
    tau_order_ok: bool
    table: GroupElementTable
    table_relations_ok: bool

    @property
    def ok(self) -> bool:
        return self.sigma_order_ok and self.tau_order_ok and self.table_relations_ok


def _order_on(action: KummerAction, g, v: VarName, expected: int) -> bool:
    p = MultiPoly.variable(v)
    q = p
    for k in range(1, expected + 1):
        q = apply_action(g, q, action)
        if q == p:
            return k == expected
    return False


def dihedral_layer_actions(n: int, copies: Iterable[int] = (1,)) -> DihedralLayers:
    """sigma scales ``z[i]`` by ``zeta_n`` and fixes ``u[i]``; tau negates ``u[i]``.

    tau's action on ``z`` is left undefined; the relation ``tau sigma tau =
    sigma^-1`` is checked on the abstract group table only.
    """
    if n < 2:
        raise ValueError("dihedral order n must be >= 2")
    copies = list(copies)
    sig = {}
    ta = {}
    for i in copies:
        sig[VarName("z", (i,))] = 1
        sig[VarName("u", (i,))] = 0
        ta[VarName("u", (i,))] = 1
    sig[VarName("z")] = 1
    sig[VarName("u")] = 0
    ta[VarName("u")] = 1
    sigma = KummerAction((n,), (sig,), label="sigma")
    tau = KummerAction((2,), (ta,), label="tau")
    probe_z = VarName("z", (copies[0],)) if copies else VarName("z")
    probe_u = VarName("u", (copies[0],)) if copies else VarName("u")
    D = dihedral_table(n)
    return DihedralLayers(
        n=n,
        sigma=sigma,
        tau=tau,
        sigma_order_ok=_order_on(sigma, (1,), probe_z, n) and is_invariant(MultiPoly.variable(probe_u), sigma),
        tau_order_ok=_order_on(tau, (1,), probe_u, 2),
        table=D,
        table_relations_ok=dihedral_relations_hold(D, n),
    )
