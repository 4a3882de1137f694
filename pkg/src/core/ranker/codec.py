# src/core/ranker/codec.py
"""
Self-describing text format for scoring models; floats are written with ``float.hex`` so a
reload reproduces every parameter bit for bit.

    ranktest-model v1
    kind linear|fixed|mlp|boosted
    dim_in <int>
    quadratic 0|1
    standardized 0|1
    mean <hex> ...            (standardized only)
    scale <hex> ...           (standardized only)
    weights <hex> ... / bias <hex> [/ label <text>]       linear, fixed
    hidden <int> / w1 ... / b1 ... / w2 ... / b2 <hex>     mlp
    stumps <k> then k lines: stump <feature> <thr> <left> <right> <weight>
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from src.core.errors import InvalidInput
from src.core.ranker.models import Array, FeatureMap, FixedModel, LinearModel, MlpModel, ScoringModel, Stump, StumpEnsemble

_MAGIC = "ranktest-model v1"


def _hex(values: Array | list[float]) -> str:
    return " ".join(float(v).hex() for v in np.asarray(values, dtype=np.float64).ravel())


def _unhex(text: str) -> Array:
    return np.array([float.fromhex(t) for t in text.split()], dtype=np.float64)


def dumps_model(model: ScoringModel) -> str:
    fm = model.features
    lines = [
        _MAGIC,
        f"kind {model.kind}",
        f"dim_in {fm.dim_in}",
        f"quadratic {int(fm.quadratic)}",
        f"standardized {int(fm.standardized)}",
    ]
    if fm.mean is not None and fm.scale is not None:
        lines += [f"mean {_hex(fm.mean)}", f"scale {_hex(fm.scale)}"]

    if isinstance(model, LinearModel):
        lines += [f"weights {_hex(model.weights)}", f"bias {float(model.bias).hex()}"]
        if isinstance(model, FixedModel):
            lines.append(f"label {model.label}")
    elif isinstance(model, MlpModel):
        lines += [
            f"hidden {model.b1.size}",
            f"w1 {_hex(model.w1)}",
            f"b1 {_hex(model.b1)}",
            f"w2 {_hex(model.w2)}",
            f"b2 {float(model.b2).hex()}",
        ]
    elif isinstance(model, StumpEnsemble):
        lines.append(f"stumps {len(model.stumps)}")
        lines += [
            f"stump {s.feature} {float(s.threshold).hex()} {float(s.left).hex()} {float(s.right).hex()} {float(s.weight).hex()}"
            for s in model.stumps
        ]
    else:
        raise InvalidInput(f"cannot serialize model of type {type(model).__name__}")
    return "\n".join(lines) + "\n"


def loads_model(text: str) -> ScoringModel:
    rows = text.splitlines()
    if not rows or rows[0].strip() != _MAGIC:
        raise InvalidInput("not a ranktest model file")
    fields: dict[str, str] = {}
    stumps: list[Stump] = []
    try:
        for row in rows[1:]:
            key, _, rest = row.partition(" ")
            if key == "stump":
                f, thr, left, right, weight = rest.split()
                stumps.append(
                    Stump(int(f), float.fromhex(thr), float.fromhex(left), float.fromhex(right), float.fromhex(weight))
                )
            elif key:
                fields[key] = rest

        features = FeatureMap(
            dim_in=int(fields["dim_in"]),
            quadratic=fields["quadratic"] == "1",
            mean=_unhex(fields["mean"]) if fields["standardized"] == "1" else None,
            scale=_unhex(fields["scale"]) if fields["standardized"] == "1" else None,
        )
        kind = fields["kind"]
        if kind == "linear":
            return LinearModel(features=features, weights=_unhex(fields["weights"]), bias=float.fromhex(fields["bias"]))
        if kind == "fixed":
            return FixedModel(
                features=features,
                weights=_unhex(fields["weights"]),
                bias=float.fromhex(fields["bias"]),
                label=fields.get("label", "oracle"),
            )
        if kind == "mlp":
            hidden = int(fields["hidden"])
            return MlpModel(
                features=features,
                w1=_unhex(fields["w1"]).reshape(hidden, features.dim_out),
                b1=_unhex(fields["b1"]),
                w2=_unhex(fields["w2"]),
                b2=float.fromhex(fields["b2"]),
            )
        if kind == "boosted":
            if len(stumps) != int(fields["stumps"]):
                raise ValueError(f"expected {fields['stumps']} stumps, found {len(stumps)}")
            return StumpEnsemble(features=features, stumps=tuple(stumps))
    except (KeyError, ValueError) as e:
        raise InvalidInput(f"malformed model file: {e}") from e
    raise InvalidInput(f"unknown model kind {kind!r}")


def save_model(model: ScoringModel, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_model(model), encoding="utf-8")
    return path


def load_model(path: Path) -> ScoringModel:
    return loads_model(path.read_text(encoding="utf-8"))


__all__ = ["dumps_model", "loads_model", "save_model", "load_model"]
