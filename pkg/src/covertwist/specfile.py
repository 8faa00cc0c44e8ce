"""JSON spec files.

Abelian::

    {"kind": "abelian", "ell": 1, "m": 3,
     "layers": [{"n": 2, "f": "x^3 + 1"}],
     "descriptor": {"rk_end": 1, "torsion": [2], "assert_no_extra_factor": true}}

Dihedral::

    {"kind": "dihedral", "n": 3, "f": "x^3 - x", "g": "x^2 + 1", "m": 2}

The ``descriptor`` block is optional; ``preset`` may name one of
:data:`covertwist.rank.PRESETS` instead of giving ``rk_end``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .construct import AbelianCoverSpec, CoverSpec, DihedralCoverSpec, Layer, SpecError
from .multipoly import PolySyntaxError, parse
from .rank import PRESETS, AbelianVarietyDescriptor


@dataclass(frozen=True)
class SpecFile:
    cover: CoverSpec
    descriptor: Optional[AbelianVarietyDescriptor] = None


def _poly(text, where: str):
    if not isinstance(text, str):
        raise SpecError(f"{where}: polynomial must be a string, got {text!r}")
    try:
        return parse(text)
    except PolySyntaxError as exc:
        raise SpecError(f"{where}: {exc}") from None


def _int(d: dict, key: str, where: str, default=None) -> int:
    v = d.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SpecError(f"{where}: {key} must be an integer, got {v!r}")
    return v


def _descriptor(d: dict, label: str) -> AbelianVarietyDescriptor:
    if not isinstance(d, dict):
        raise SpecError("descriptor must be an object")
    if "preset" in d:
        try:
            base = PRESETS[d["preset"]]
        except KeyError:
            raise SpecError(f"unknown descriptor preset {d['preset']!r}; known: {sorted(PRESETS)}") from None
        d = {"rk_end": base.rk_end, "label": base.label, **{k: v for k, v in d.items() if k != "preset"}}
    try:
        return AbelianVarietyDescriptor(
            label=d.get("label", label),
            rk_end=d.get("rk_end"),
            torsion=tuple(d.get("torsion", ())),
            assert_no_extra_factor=bool(d.get("assert_no_extra_factor", True)),
            dimension=d.get("dimension"),
        )
    except (TypeError, ValueError) as exc:
        raise SpecError(f"descriptor: {exc}") from None


def spec_from_dict(data: dict, m: int | None = None) -> SpecFile:
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    kind = data.get("kind")
    if kind == "abelian":
        layers_raw = data.get("layers")
        if not isinstance(layers_raw, list) or not layers_raw:
            raise SpecError("abelian spec needs a nonempty 'layers' list")
        layers = tuple(Layer(_int(lay, "n", f"layer {j}"), _poly(lay.get("f"), f"layer {j} f"))
                       for j, lay in enumerate(layers_raw, start=1))
        cover = AbelianCoverSpec(_int(data, "ell", "spec", 1), layers,
                                 m if m is not None else _int(data, "m", "spec", 2))
        label = "Alb(X)"
    elif kind == "dihedral":
        cover = DihedralCoverSpec(_int(data, "n", "spec"), _poly(data.get("f"), "f"), _poly(data.get("g"), "g"),
                                  m if m is not None else _int(data, "m", "spec", 2))
        label = "Jac(C)"
    else:
        raise SpecError(f"kind must be 'abelian' or 'dihedral', got {kind!r}")
    cover.validate()
    desc = _descriptor(data["descriptor"], label) if data.get("descriptor") is not None else None
    return SpecFile(cover, desc)


def load_spec(path: str | Path, m: int | None = None) -> SpecFile:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON: {exc}") from None
    return spec_from_dict(data, m)
