"""JSON documents for operator specs and exported matrices.

Spec documents look like ``{"class": "weyl", "params": {"z": [1.0, 0.0]}}``;
complex numbers are ``[re, im]`` pairs. Matrices are written as
``{"dim": N, "layout": "row-major", "entries": [[re, im], ...]}``. Python's
float repr round-trips exactly, so export and re-import are bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import PreconditionError, SpecError
from .operators import (
    Hausdorff,
    Parity,
    Shift,
    SingularIntegral,
    Toeplitz,
    ToeplitzType,
    TruncatedOperator,
    Volterra,
    WeightedComposition,
    Weyl,
    adjoint,
    build,
    compose,
    identity,
)
from .symbols import (
    _c,
    _pair,
    analytic_from_dict,
    line_profile_from_dict,
    measure_from_dict,
    symbol_from_dict,
)

CLASSES = ("toeplitz", "weyl", "weighted-composition", "singular-integral", "volterra",
           "toeplitz-type", "hausdorff", "shift", "parity", "identity", "zero", "product", "adjoint")


def spec_from_dict(doc: dict):
    """Parse a spec document. Composite classes (identity, zero, product,
    adjoint) come back as plain dicts and are resolved by ``build_from_dict``."""
    if not isinstance(doc, dict) or "class" not in doc:
        raise SpecError("spec document needs a 'class' field")
    cls = doc["class"]
    p = doc.get("params", {})
    if not isinstance(p, dict):
        raise SpecError("'params' must be a mapping")
    try:
        if cls == "toeplitz":
            return Toeplitz(symbol_from_dict(p["symbol"]))
        if cls == "weyl":
            return Weyl(_c(p["z"]))
        if cls == "weighted-composition":
            return WeightedComposition(analytic_from_dict(p["psi"]), _c(p.get("a", 0.0)), _c(p.get("lambda", 1.0)))
        if cls == "singular-integral":
            return SingularIntegral(line_profile_from_dict(p["m"]), str(p.get("method", "multiplier")))
        if cls == "volterra":
            return Volterra(analytic_from_dict(p["gprime"]), _c(p.get("a", 0.0)), _c(p.get("lambda", 1.0)))
        if cls == "toeplitz-type":
            return ToeplitzType(symbol_from_dict(p["symbol"]), int(p.get("j", 0)))
        if cls == "hausdorff":
            return Hausdorff(measure_from_dict(p["rho"]))
        if cls == "shift":
            return Shift(int(p.get("k", 1)))
        if cls == "parity":
            return Parity()
        if cls in ("identity", "zero"):
            return {"class": cls}
        if cls == "product":
            return {"class": cls, "factors": [spec_from_dict(f) for f in p["factors"]]}
        if cls == "adjoint":
            return {"class": cls, "of": spec_from_dict(p["of"])}
    except PreconditionError:
        raise
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SpecError(f"malformed params for class {cls!r}: {exc!r}") from exc
    raise SpecError(f"unknown operator class {cls!r}")


def build_from_dict(spec, N: int) -> TruncatedOperator:
    if isinstance(spec, dict):
        cls = spec["class"]
        if cls == "identity":
            return identity(N)
        if cls == "zero":
            return TruncatedOperator(np.zeros((N, N)))
        if cls == "product":
            ops = [build_from_dict(f, N) for f in spec["factors"]]
            if not ops:
                return identity(N)
            out = ops[0]
            for B in ops[1:]:
                out = compose(out, B)
            return out
        if cls == "adjoint":
            return adjoint(build_from_dict(spec["of"], N))
        raise SpecError(f"unknown operator class {cls!r}")
    return build(spec, N)


def spec_to_dict(spec) -> dict:
    if isinstance(spec, dict):
        cls = spec["class"]
        if cls == "product":
            return {"class": cls, "params": {"factors": [spec_to_dict(f) for f in spec["factors"]]}}
        if cls == "adjoint":
            return {"class": cls, "params": {"of": spec_to_dict(spec["of"])}}
        return {"class": cls, "params": {}}
    if isinstance(spec, Toeplitz):
        p = {"symbol": spec.symbol.to_dict()}
    elif isinstance(spec, Weyl):
        p = {"z": _pair(spec.z)}
    elif isinstance(spec, (WeightedComposition, Volterra)):
        key = "psi" if isinstance(spec, WeightedComposition) else "gprime"
        fn = spec.psi if key == "psi" else spec.gprime
        p = {key: fn.to_dict(), "a": _pair(spec.a), "lambda": _pair(spec.lam)}
    elif isinstance(spec, SingularIntegral):
        p = {"m": spec.m.to_dict(), "method": spec.method}
    elif isinstance(spec, ToeplitzType):
        p = {"symbol": spec.symbol.to_dict(), "j": spec.j}
    elif isinstance(spec, Hausdorff):
        p = {"rho": spec.rho.to_dict()}
    elif isinstance(spec, Shift):
        p = {"k": spec.k}
    elif isinstance(spec, Parity):
        p = {}
    else:
        raise SpecError(f"cannot serialize {type(spec).__name__}")
    return {"class": spec.kind, "params": p}


def load_spec(path):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file {path} is not valid JSON: {exc}") from exc
    return spec_from_dict(doc)


def matrix_to_dict(A) -> dict:
    M = A.entries if isinstance(A, TruncatedOperator) else np.asarray(A)
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise PreconditionError("matrix export needs a square matrix")
    flat = M.ravel(order="C")
    return {"dim": int(M.shape[0]), "layout": "row-major",
            "entries": [[float(v.real), float(v.imag)] for v in flat]}


def matrix_from_dict(doc: dict) -> np.ndarray:
    try:
        N = int(doc["dim"])
        if doc.get("layout") != "row-major":
            raise SpecError("only row-major layout is supported")
        e = np.asarray(doc["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed matrix document: {exc!r}") from exc
    if e.shape != (N * N, 2):
        raise SpecError(f"matrix document needs {N * N} [re, im] pairs")
    return (e[:, 0] + 1j * e[:, 1]).reshape(N, N)


def write_matrix(A, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(A)))


def read_matrix(path) -> np.ndarray:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read matrix file {path}: {exc}") from exc
    return matrix_from_dict(doc)
