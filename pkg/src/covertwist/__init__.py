"""Twists of abelian and dihedral covers of projective space: constructions and exact checks."""
from .construct import AbelianCoverSpec, DihedralCoverSpec, Layer, build
from .exactnum import CycloNumber, cyclotomic_polynomial
from .multipoly import MultiPoly, VarName, format, parse, var
from .verify import full_verification

__all__ = [
    "AbelianCoverSpec", "DihedralCoverSpec", "Layer", "build",
    "CycloNumber", "cyclotomic_polynomial",
    "MultiPoly", "VarName", "format", "parse", "var",
    "full_verification",
]
