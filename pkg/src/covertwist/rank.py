"""Mordell-Weil rank and group-shape predictions for twisted Albanese varieties.

The endomorphism rank and the rational torsion are inputs; nothing here
computes them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianVarietyDescriptor:
    label: str
    rk_end: int
    torsion: tuple[int, ...] = ()
    assert_no_extra_factor: bool = True
    dimension: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if not isinstance(self.rk_end, int) or self.rk_end < 1:
            raise ValueError(f"rk_end must be a positive integer, got {self.rk_end!r}")
        if any(not isinstance(t, int) or t < 2 for t in self.torsion):
            raise ValueError(f"torsion orders must be integers >= 2, got {list(self.torsion)}")
        if self.dimension is not None and self.dimension < 1:
            raise ValueError("dimension must be positive")


# user conventions, not computed facts
GENERIC_ELLIPTIC = AbelianVarietyDescriptor("generic elliptic", rk_end=1, dimension=1)
CM_ELLIPTIC = AbelianVarietyDescriptor("CM elliptic", rk_end=2, dimension=1)
PRESETS = {"generic_elliptic": GENERIC_ELLIPTIC, "cm_elliptic": CM_ELLIPTIC}


@dataclass(frozen=True)
class MWPrediction:
    rank: int
    copies: int
    rk_end: int
    torsion: tuple[int, ...]
    torsion_level: int
    label: str
    lower_bound: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def free_generators(self) -> int:
        return self.copies * self.rk_end

    @property
    def shape(self) -> str:
        tors = " x ".join(f"Z/{t}" for t in self.torsion) or "0"
        return f"End_k({self.label})^{self.copies} + {self.label}[{self.torsion_level}](k) = {tors}"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "lower_bound": self.lower_bound, "shape": self.shape,
                "copies": self.copies, "rk_end": self.rk_end, "torsion": list(self.torsion),
                "torsion_level": self.torsion_level, "notes": list(self.notes)}


_LOWER = ("the Prym may contain further factors isogenous to {label}; "
          "the rank is a lower bound")


def predict_mw_rank(A: AbelianVarietyDescriptor, m: int) -> int:
    """``m * rk End_k(A)``; a lower bound unless no extra isogenous factor is asserted."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not A.assert_no_extra_factor:
        log.warning(_LOWER.format(label=A.label))
    return m * A.rk_end


def predict_mw_group(A: AbelianVarietyDescriptor, m: int, n: int) -> MWPrediction:
    """Shape ``End_k(A)^m + A[n](k)`` of the twisted group of rational points."""
    notes = ["Prym of the m-fold product over its diagonal quotient is isogenous to A^m"]
    if not A.assert_no_extra_factor:
        notes.append("contains at least: " + _LOWER.format(label=A.label))
    return MWPrediction(
        rank=predict_mw_rank(A, m), copies=m, rk_end=A.rk_end, torsion=A.torsion,
        torsion_level=n, label=A.label, lower_bound=not A.assert_no_extra_factor, notes=tuple(notes))


def dihedral_jacobian_rank(J: AbelianVarietyDescriptor, m: int) -> int:
    """Rank of the twisted Jacobian of a dihedral cover of the line; Prym(C_m/Y_m) = Jac(C)^m."""
    return predict_mw_rank(J, m)


def dihedral_jacobian_group(J: AbelianVarietyDescriptor, m: int, n: int) -> MWPrediction:
    pred = predict_mw_group(J, m, 2 * n)
    return MWPrediction(**{**pred.__dict__,
                           "notes": pred.notes + ("Jacobian of a D_n cover of the line: torsion at level 2n",)})
