"""Matrix interchange format.

A JSON text document with two fields: ``shape``, a list of [dimA, dimB]
pairs, and ``entries``, the row-major list of [re, im] pairs.  Choi
documents add ``input_factors``, the list of input factor indices.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .choi import ChoiOperator
from .operators import DensityOperator, FactorShape, LabeledOperator, density_from_matrix


def operator_to_document(x: LabeledOperator) -> dict:
    flat = x.entries.reshape(-1)
    return {
        "shape": [[a, b] for a, b in x.shape.factors],
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def operator_from_document(doc: dict) -> LabeledOperator:
    try:
        shape = FactorShape(tuple((int(a), int(b)) for a, b in doc["shape"]))
        pairs = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed operator document: {exc}") from exc
    n = shape.total_dim
    if len(pairs) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(pairs)}")
    flat = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    return LabeledOperator(shape, flat.reshape(n, n))


def choi_to_document(choi: ChoiOperator) -> dict:
    doc = operator_to_document(choi.op)
    doc["input_factors"] = list(choi.input_factors)
    return doc


def choi_from_document(doc: dict) -> ChoiOperator:
    op = operator_from_document(doc)
    try:
        ins = tuple(int(i) for i in doc["input_factors"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed Choi document: {exc}") from exc
    outs = tuple(i for i in range(op.shape.n_factors) if i not in ins)
    return ChoiOperator(op, ins, outs)


def save_operator(x: LabeledOperator, path: str | Path) -> None:
    Path(path).write_text(json.dumps(operator_to_document(x)))


def load_operator(path: str | Path) -> LabeledOperator:
    return operator_from_document(json.loads(Path(path).read_text()))


def load_density(path: str | Path, **tols) -> DensityOperator:
    op = load_operator(path)
    return density_from_matrix(op.entries, op.shape, **tols)


def save_choi(choi: ChoiOperator, path: str | Path) -> None:
    Path(path).write_text(json.dumps(choi_to_document(choi)))


def load_choi(path: str | Path) -> ChoiOperator:
    return choi_from_document(json.loads(Path(path).read_text()))
