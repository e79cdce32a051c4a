"""TOML/JSON documents for algebras, r-matrices, doubles and derived objects.

Algebra::

    {"kind": "algebra", "name": "...", "dim": 3, "basis": ["X", "Y", "Z"],
     "params": ["kappa"],
     "brackets": [{"i": "X", "j": "Y", "coeffs": {"Z": "kappa**2"}}]}

r-matrix (wedge terms coeff * i ^ j)::

    {"kind": "rmatrix", "algebra": <algebra doc | catalog id>,
     "terms": [{"i": "P1", "j": "J1", "coeff": "1/2"}]}

Double specification::

    {"kind": "double", "dim": 3, "basis": [...], "dual_basis": [...],
     "params": [...], "c": [<bracket items>], "f": [<bracket items>]}

Scalars are strings parsed as rational expressions in the declared params.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Mapping

from .algebra import Bivector, LieAlgebra, StructureError, Tensor, Trivector, Vector
from .bialgebra import Cocommutator
from .catalog import BasisIso, CatalogLookupError, PoissonTarget
from .double import DoubleSpec
from .scalars import DEFAULT_PARAMETERS, format_scalar, parse_scalar, scalar_field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def read_document(path: str | Path) -> dict:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".toml":
        return tomllib.loads(text)
    return json.loads(text)


def _field(params):
    extra = [p for p in params or () if p not in DEFAULT_PARAMETERS]
    return scalar_field(extra)


def _params_of(field) -> list[str]:
    return [str(s) for s in field.symbols if str(s) not in DEFAULT_PARAMETERS]


def _scalar(value, field):
    if isinstance(value, bool):
        raise SchemaError("booleans are not scalars")
    if isinstance(value, float):
        raise SchemaError(f"inexact scalar {value!r}; write it as a string such as \"1/2\"")
    if isinstance(value, int):
        return field(value)
    return parse_scalar(str(value), field)


def _used_parameters(scalars) -> list[str]:
    names = set()
    for s in scalars:
        names |= {str(x) for x in s.as_expr().free_symbols}
    return sorted(names)


# --------------------------------------------------------------------------
# algebras


def algebra_from_dict(doc: Mapping) -> LieAlgebra:
    try:
        basis = list(doc["basis"])
        items = doc.get("brackets", [])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"algebra document lacks {exc}") from exc
    if "dim" in doc and doc["dim"] != len(basis):
        raise SchemaError(f"dim {doc['dim']} does not match {len(basis)} basis names")
    field = _field(doc.get("params"))
    brackets: dict = {}
    for item in items:
        key = (item["i"], item["j"])
        coeffs = {k: _scalar(v, field) for k, v in item.get("coeffs", {}).items()}
        if key in brackets:
            raise SchemaError(f"bracket {key} listed twice")
        brackets[key] = coeffs
    metadata = dict(doc.get("metadata", {}))
    return LieAlgebra(basis, brackets, name=doc.get("name", ""), field=field, metadata=metadata)


def algebra_to_dict(L: LieAlgebra) -> dict:
    items = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            row = L.structure(i, j)
            if row:
                items.append({
                    "i": L.basis[i],
                    "j": L.basis[j],
                    "coeffs": {L.basis[k]: format_scalar(v) for k, v in sorted(row.items())},
                })
    scalars = [v for *_, v in L.structure_items()]
    doc = {
        "kind": "algebra",
        "name": L.name,
        "dim": L.dim,
        "basis": list(L.basis),
        "params": sorted(set(_used_parameters(scalars)) | set(_params_of(L.field))),
        "brackets": items,
    }
    meta = {k: list(v) for k, v in L.metadata.items() if k in ("h", "t")}
    if meta:
        doc["metadata"] = meta
    return doc


def _resolve_algebra(ref) -> LieAlgebra:
    if isinstance(ref, str):
        from . import catalog

        payload = catalog.get(ref).payload
        if not isinstance(payload, LieAlgebra):
            raise SchemaError(f"catalog entry {ref!r} is not an algebra")
        return payload
    return algebra_from_dict(ref)


# --------------------------------------------------------------------------
# multivectors and tensors


def _alternating_to_dict(x, kind: str, letters: str) -> dict:
    L = x.algebra
    terms = []
    for key, v in sorted(x.terms.items()):
        item = {letter: L.basis[i] for letter, i in zip(letters, key)}
        item["coeff"] = format_scalar(v)
        terms.append(item)
    return {"kind": kind, "algebra": algebra_to_dict(L), "terms": terms}


def _alternating_from_dict(doc: Mapping, cls, letters: str, L: LieAlgebra | None = None):
    L = L or _resolve_algebra(doc["algebra"])
    terms: dict = {}
    for item in doc.get("terms", []):
        key = tuple(item[letter] for letter in letters)
        terms[key] = terms.get(key, 0) + _scalar(item["coeff"], L.field)
    return cls.from_terms(L, terms)


def rmatrix_from_dict(doc: Mapping, L: LieAlgebra | None = None) -> Bivector:
    return _alternating_from_dict(doc, Bivector, "ij", L)


def tensor_to_dict(T: Tensor) -> dict:
    L = T.algebra
    return {
        "kind": "tensor",
        "algebra": algebra_to_dict(L),
        "rank": T.rank,
        "terms": [
            {"indices": [L.basis[i] for i in key], "coeff": format_scalar(v)}
            for key, v in sorted(T.terms.items())
        ],
    }


def tensor_from_dict(doc: Mapping) -> Tensor:
    L = _resolve_algebra(doc["algebra"])
    terms = {tuple(item["indices"]): _scalar(item["coeff"], L.field) for item in doc.get("terms", [])}
    return L.tensor(terms, rank=int(doc["rank"]))


def vector_to_dict(X: Vector) -> dict:
    return {
        "kind": "vector",
        "algebra": algebra_to_dict(X.algebra),
        "coeffs": {name: format_scalar(c) for name, c in X.terms().items()},
    }


def cocommutator_to_dict(delta: Cocommutator) -> dict:
    L = delta.algebra
    images = []
    for name, img in zip(L.basis, delta.images):
        images.append({
            "generator": name,
            "terms": [
                {"i": L.basis[a], "j": L.basis[b], "coeff": format_scalar(v)}
                for (a, b), v in sorted(img.terms.items())
            ],
        })
    return {"kind": "cocommutator", "algebra": algebra_to_dict(L), "images": images}


def cocommutator_from_dict(doc: Mapping) -> Cocommutator:
    L = _resolve_algebra(doc["algebra"])
    images = {}
    for item in doc.get("images", []):
        images[item["generator"]] = rmatrix_from_dict({"terms": item.get("terms", [])}, L)
    return Cocommutator.from_images(L, images)


# --------------------------------------------------------------------------
# doubles, Poisson targets, isomorphisms


def double_spec_from_dict(doc: Mapping) -> DoubleSpec:
    field = _field(doc.get("params"))
    names = list(doc["basis"])
    dim = int(doc.get("dim", len(names)))

    def block(items):
        out = {}
        for item in items:
            out[(item["i"], item["j"])] = {k: _scalar(v, field) for k, v in item.get("coeffs", {}).items()}
        return out

    return DoubleSpec(
        dim,
        block(doc.get("c", [])),
        block(doc.get("f", [])),
        g_names=names,
        dual_names=doc.get("dual_basis"),
        field=field,
    )


def double_spec_to_dict(spec: DoubleSpec) -> dict:
    g, y = spec.names()

    def block(table):
        items = []
        for i in range(spec.dim):
            for j in range(i + 1, spec.dim):
                if table[i][j]:
                    items.append({"i": g[i], "j": g[j],
                                  "coeffs": {g[k]: format_scalar(v) for k, v in sorted(table[i][j].items())}})
        return items

    return {
        "kind": "double",
        "dim": spec.dim,
        "basis": list(g),
        "dual_basis": list(y),
        "params": _params_of(spec.field),
        "c": block(spec.c_table()),
        "f": block(spec.f_table()),
    }


def poisson_to_dict(target: PoissonTarget) -> dict:
    return {
        "kind": "poisson",
        "coordinates": list(target.coordinates),
        "params": list(target.parameters),
        "brackets": [{"i": i, "j": j, "expr": str(e)} for (i, j), e in target.brackets.items()],
        "presets": {k: dict(v) for k, v in target.presets.items()},
    }


def poisson_from_dict(doc: Mapping) -> PoissonTarget:
    return PoissonTarget(
        tuple(doc["coordinates"]),
        {(b["i"], b["j"]): b["expr"] for b in doc.get("brackets", [])},
        tuple(doc.get("params", ())),
        {k: dict(v) for k, v in doc.get("presets", {}).items()},
    )


def iso_to_dict(iso: BasisIso) -> dict:
    return {
        "kind": "iso",
        "name": iso.name,
        "source": algebra_to_dict(iso.source),
        "target": algebra_to_dict(iso.target),
        "images": {g: {k: format_scalar(v) for k, v in img.terms().items()}
                   for g, img in zip(iso.source.basis, iso.images)},
    }


def iso_from_dict(doc: Mapping) -> BasisIso:
    S, T = _resolve_algebra(doc["source"]), _resolve_algebra(doc["target"])
    images = {g: {k: _scalar(v, T.field) for k, v in img.items()} for g, img in doc["images"].items()}
    return BasisIso(S, T, images, name=doc.get("name", ""))


# --------------------------------------------------------------------------
# dispatch


def to_dict(obj: Any) -> dict:
    if isinstance(obj, LieAlgebra):
        doc = algebra_to_dict(obj)
    elif isinstance(obj, Bivector):
        doc = _alternating_to_dict(obj, "rmatrix", "ij")
    elif isinstance(obj, Trivector):
        doc = _alternating_to_dict(obj, "trivector", "ijk")
    elif isinstance(obj, Tensor):
        doc = tensor_to_dict(obj)
    elif isinstance(obj, Vector):
        doc = vector_to_dict(obj)
    elif isinstance(obj, Cocommutator):
        doc = cocommutator_to_dict(obj)
    elif isinstance(obj, DoubleSpec):
        doc = double_spec_to_dict(obj)
    elif isinstance(obj, PoissonTarget):
        doc = poisson_to_dict(obj)
    elif isinstance(obj, BasisIso):
        doc = iso_to_dict(obj)
    else:
        raise SchemaError(f"no document form for {type(obj).__name__}")
    return {"schema": SCHEMA_VERSION, **doc}


def from_dict(doc: Mapping) -> Any:
    kind = doc.get("kind")
    if kind is None:
        kind = "algebra" if "brackets" in doc else "rmatrix" if "terms" in doc else None
    loaders = {
        "algebra": algebra_from_dict,
        "rmatrix": rmatrix_from_dict,
        "trivector": lambda d: _alternating_from_dict(d, Trivector, "ijk"),
        "tensor": tensor_from_dict,
        "cocommutator": cocommutator_from_dict,
        "double": double_spec_from_dict,
        "poisson": poisson_from_dict,
        "iso": iso_from_dict,
    }
    if kind == "vector":
        L = _resolve_algebra(doc["algebra"])
        return L.vector({k: _scalar(v, L.field) for k, v in doc.get("coeffs", {}).items()})
    if kind not in loaders:
        raise SchemaError(f"unknown document kind {kind!r}")
    try:
        return loaders[kind](doc)
    except CatalogLookupError as exc:
        raise SchemaError(exc.args[0]) from exc
    except KeyError as exc:
        raise SchemaError(f"{kind} document lacks field {exc}") from exc
    except StructureError as exc:
        raise SchemaError(str(exc)) from exc


def load(path: str | Path) -> Any:
    return from_dict(read_document(path))


def dumps(obj: Any, indent: int = 2) -> str:
    return json.dumps(to_dict(obj), indent=indent, ensure_ascii=False)
