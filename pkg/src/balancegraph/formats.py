"""JSON encodings for graphs, labelings, certificates, structures and decisions.

Scalars are always written as canonical strings; on input plain integers are
accepted too.
"""

from __future__ import annotations

import json
from typing import Any

from .bridge import AlternatingStructure, ImageDecision
from .defects import DefectCertificate
from .engine import Decision
from .fields import Field, FieldError, Scalar
from .graph import GraphError, WeightedGraph
from .groups import ClassTwoGroup, CommutatorDecision


class FormatError(ValueError):
    pass


def _require(obj: dict, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing key {key!r}")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        raise FormatError(f"key {key!r} has the wrong type")
    return value


def field_from_json(obj) -> Field:
    kind = _require(obj, "type", str)
    try:
        if kind == "Fp":
            return Field.prime(_require(obj, "p", int))
        if kind == "Q":
            return Field.rationals()
    except FieldError as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown field type {kind!r}")


def field_to_json(F: Field) -> dict:
    return {"type": "Fp", "p": F.p} if F.is_finite else {"type": "Q"}


def scalar_from_json(value, F: Field) -> Scalar:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(f"scalar must be a string or integer, got {value!r}")
    try:
        return F(value)
    except FieldError as exc:
        raise FormatError(str(exc)) from exc


def graph_from_json(obj) -> WeightedGraph:
    F = field_from_json(_require(obj, "field", dict))
    n = _require(obj, "vertices", int)
    edges = []
    for e in _require(obj, "edges", list):
        edges.append((_require(e, "u", int), _require(e, "v", int), scalar_from_json(_require(e, "weight"), F)))
    try:
        return WeightedGraph(F, n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def graph_to_json(g: WeightedGraph) -> dict:
    return {
        "field": field_to_json(g.field),
        "vertices": g.n,
        "edges": [{"u": u, "v": v, "weight": str(w)} for (u, v), w in g.edges.items()],
    }


def labeling_from_json(obj, F: Field):
    out = []
    for pair in _require(obj, "labels", list):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError("each label must be a two-element list")
        out.append((scalar_from_json(pair[0], F), scalar_from_json(pair[1], F)))
    return tuple(out)


def labeling_to_json(labels) -> list:
    return [[str(a), str(b)] for a, b in labels]


def certificate_to_json(cert: DefectCertificate) -> dict:
    out: dict[str, Any] = {
        "family": cert.code,
        "vertices": list(cert.vertices),
        "edges": [{"u": u, "v": v, "weight": str(w)} for u, v, w in cert.edges],
    }
    if cert.m is not None:
        out["m"] = cert.m
    return out


def decision_to_json(dec: Decision) -> dict:
    return {
        "status": dec.status.value,
        "labeling": None if dec.labeling is None else labeling_to_json(dec.labeling),
        "certificate": None if dec.certificate is None else certificate_to_json(dec.certificate),
        "diagnostics": dec.diagnostics,
    }


def structure_from_json(obj) -> AlternatingStructure:
    F = field_from_json(_require(obj, "field", dict))
    n = _require(obj, "generators", int)
    m = _require(obj, "target_dim", int)
    brackets = {}
    for entry in _require(obj, "brackets", list):
        i, j = _require(entry, "i", int), _require(entry, "j", int)
        if (i, j) in brackets:
            raise FormatError(f"duplicate bracket ({i},{j})")
        brackets[(i, j)] = [scalar_from_json(v, F) for v in _require(entry, "value", list)]
    try:
        return AlternatingStructure(F, n, m, brackets)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def element_from_json(obj, F: Field) -> tuple[Scalar, ...]:
    return tuple(scalar_from_json(v, F) for v in _require(obj, "value", list))


def _vector(v) -> list[str]:
    return [str(t) for t in v]


def image_decision_to_json(dec: ImageDecision, limit: int = 10) -> dict:
    certs = []
    for pres, cert in dec.certificates[:limit]:
        certs.append({"support": list(pres.support), "certificate": certificate_to_json(cert)})
    return {
        "status": dec.status,
        "witness": None if dec.witness is None else {"a": _vector(dec.witness[0]), "b": _vector(dec.witness[1])},
        "certificate": certs[0]["certificate"] if certs else None,
        "certificates": certs,
        "refuted_presentations": len(dec.certificates),
        "diagnostics": dec.diagnostics,
    }


def group_from_json(obj) -> ClassTwoGroup:
    comms = {}
    for entry in _require(obj, "commutators", list):
        i, j = _require(entry, "i", int), _require(entry, "j", int)
        exps = _require(entry, "exponents", list)
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in exps):
            raise FormatError("exponents must be integers")
        comms[(i, j)] = tuple(exps)
    exponent_p = obj.get("exponent_p", True)
    if not isinstance(exponent_p, bool):
        raise FormatError("exponent_p must be a boolean")
    try:
        return ClassTwoGroup(
            _require(obj, "p", int),
            _require(obj, "generators", int),
            _require(obj, "central_rank", int),
            comms,
            exponent_p,
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def target_from_json(obj) -> tuple[int, ...]:
    exps = _require(obj, "exponents", list)
    if not all(isinstance(e, int) and not isinstance(e, bool) for e in exps):
        raise FormatError("exponents must be integers")
    return tuple(exps)


def commutator_decision_to_json(dec: CommutatorDecision) -> dict:
    out = image_decision_to_json(dec.image)
    out["witness"] = None if dec.alpha is None else {"alpha": list(dec.alpha), "beta": list(dec.beta)}
    return out


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
