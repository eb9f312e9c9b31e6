"""Constructive decision procedure for consistent labelings.

Components with at most four vertices are decided completely: trees and
cycles are always labelable, and the three four-vertex shapes that contain a
cycle plus a chord (``Gamma1``..``Gamma3``) are labeled from explicit tables
unless a defect certificate applies.  Larger components are handled by the
defect detectors, the brute-force oracle over small prime fields, or reported
as ``unknown``.

Every labeling returned here has passed :func:`verify_labeling` and every
certificate has passed :func:`validate_certificate`.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field as dc_field
from typing import Any

from . import defects
from .defects import DefectCertificate, make_certificate, validate_certificate
from .fields import Scalar
from .graph import (
    GraphError,
    Labeling,
    Permutation,
    WeightedGraph,
    all_permutations,
    apply_permutation,
    connected_components,
    induced_subgraph,
    is_cycle,
    is_tree,
    null_vertices,
    permute_labeling,
    verify_labeling,
)
from .oracle import DEFAULT_BUDGET, oracle_label

__all__ = [
    "Status",
    "Decision",
    "EngineConfig",
    "ShapeClass",
    "CANONICAL_SHAPES",
    "classify_shape",
    "label_tree",
    "label_cycle",
    "table1",
    "table2",
    "table3",
    "table4",
    "label_four",
    "decide",
]


class Status(str, enum.Enum):
    LABELABLE = "labelable"
    NOT_LABELABLE = "not_labelable"
    NOT_LABELABLE_ORACLE = "not_labelable_oracle"
    UNKNOWN = "unknown"

    @property
    def refuted(self) -> bool:
        return self in (Status.NOT_LABELABLE, Status.NOT_LABELABLE_ORACLE)


@dataclass
class Decision:
    status: Status
    labeling: Labeling | None = None
    certificate: DefectCertificate | None = None
    diagnostics: dict[str, Any] = dc_field(default_factory=dict)


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for :func:`decide`.

    ``budget`` bounds the oracle's ``p^(2n)`` search space; ``use_oracle``
    disables the oracle backstop entirely.  ``seed`` randomizes the free
    table parameters and never changes a decision.
    """

    budget: int = DEFAULT_BUDGET
    max_m: int | None = None
    seed: int | None = None
    use_oracle: bool = True


CANONICAL_SHAPES: dict[str, frozenset[tuple[int, int]]] = {
    "Gamma1": frozenset({(1, 2), (1, 3), (2, 3), (3, 4)}),
    "Gamma2": frozenset({(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)}),
    "Gamma3": frozenset({(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)}),
    "Gamma4": frozenset({(1, 2), (2, 3), (3, 4), (1, 4)}),
    "Gamma5": frozenset({(1, 2), (2, 3), (3, 4)}),
    "Gamma6": frozenset({(1, 2), (1, 3), (1, 4)}),
    "Path3": frozenset({(1, 2), (2, 3)}),
    "Triangle": frozenset({(1, 2), (1, 3), (2, 3)}),
    "SingleEdge": frozenset({(1, 2)}),
    "Edgeless": frozenset(),
}

_SHAPES_BY_SIZE = {
    1: ["Edgeless"],
    2: ["SingleEdge"],
    3: ["Path3", "Triangle"],
    4: ["Gamma1", "Gamma2", "Gamma3", "Gamma4", "Gamma5", "Gamma6"],
}


@dataclass(frozen=True)
class ShapeClass:
    name: str
    normalizer: Permutation

    @property
    def is_tree(self) -> bool:
        return self.name in ("Gamma5", "Gamma6", "Path3", "SingleEdge", "Edgeless")


def _first_perm(g: WeightedGraph, target: frozenset, predicate=None) -> Permutation | None:
    """Lexicographically first sigma sending ``g`` onto the edge set ``target``."""
    for sigma in all_permutations(g.n):
        h = apply_permutation(g, sigma)
        if h.edge_keys() == target and (predicate is None or predicate(h)):
            return sigma
    return None


def classify_shape(g: WeightedGraph) -> ShapeClass:
    if not 1 <= g.n <= 4:
        raise GraphError(f"shape classification needs 1..4 vertices, got {g.n}")
    if len(connected_components(g)) != 1:
        raise GraphError("shape classification needs a connected graph")
    for name in _SHAPES_BY_SIZE[g.n]:
        if len(CANONICAL_SHAPES[name]) != len(g):
            continue
        sigma = _first_perm(g, CANONICAL_SHAPES[name])
        if sigma is not None:
            return ShapeClass(name, sigma)
    raise AssertionError(f"unclassified connected graph {g!r}")


def _pull_back(labels: Labeling, sigma: Permutation) -> Labeling:
    """Labeling of ``g`` from one of ``apply_permutation(g, sigma)``."""
    return tuple(labels[sigma(i) - 1] for i in range(1, sigma.n + 1))


def _solve_against(parent: tuple[Scalar, Scalar], s: Scalar) -> tuple[Scalar, Scalar]:
    """A nonzero pair ``x`` with ``det(parent, x) = s``; ``parent`` is nonzero."""
    ap, bp = parent
    zero = s.field.zero
    if bp:
        x = (-s / bp, zero)
    else:
        x = (zero, s / ap)
    if not x[0] and not x[1]:
        x = parent
    return x


def label_tree(g: WeightedGraph) -> Labeling:
    """Root the tree at vertex 1 with label (0, 1) and solve outward.

    Each child solves its single balance equation against its parent; when
    the particular solution is (0, 0) the parent's label is used instead, so
    every label stays nonzero.
    """
    if not is_tree(g):
        raise GraphError("label_tree needs a connected acyclic graph")
    F = g.field
    labels: dict[int, tuple[Scalar, Scalar]] = {1: (F.zero, F.one)}
    queue = [1]
    while queue:
        parent = queue.pop(0)
        for child in sorted(g.neighbors(parent)):
            if child in labels:
                continue
            labels[child] = _solve_against(labels[parent], g.signed_weight(parent, child))
            queue.append(child)
    return tuple(labels[v] for v in g.vertices)


def _cycle_order(g: WeightedGraph) -> list[int]:
    order = [1]
    prev, cur = None, 1
    nxt = min(g.neighbors(1))
    while nxt != 1:
        order.append(nxt)
        prev, cur = cur, nxt
        nxt = next(v for v in g.neighbors(cur) if v != prev)
    return order


def label_cycle(g: WeightedGraph) -> Labeling:
    """Consistent labeling of a cycle of any length ``k >= 3``.

    Walk the cycle ``x_1 .. x_k`` starting at an edge with nonzero weight
    ``s_1``.  Put ``x_1 = (0, 1)``, ``x_2 = (-s_1, 0)``, give every middle
    vertex first coordinate 1 (possible because the previous first
    coordinate is nonzero), and close with ``a_k = s_k`` and
    ``b_k = (s_{k-1} + s_k*b_{k-1}) / a_{k-1}``.  On the normalized
    triangle and 4-cycle this reproduces the closed forms
    ``(0,1), (-d12,0), (-d13, -d23/d12)`` and
    ``(0,1), (-d12,0), (1, -d23/d12), (-d14, d34 + d14*d23/d12)``.
    """
    if not is_cycle(g):
        raise GraphError("label_cycle needs a connected 2-regular graph")
    F = g.field
    order = _cycle_order(g)
    k = len(order)
    steps = [g.signed_weight(order[i], order[(i + 1) % k]) for i in range(k)]
    if not any(steps):
        return tuple((F.zero, F.zero) for _ in g.vertices)
    start = next(i for i, s in enumerate(steps) if s)
    order = order[start:] + order[:start]
    s = steps[start:] + steps[:start]
    xs = [(F.zero, F.one), (-s[0], F.zero)]
    for i in range(2, k - 1):
        a_prev, b_prev = xs[-1]
        xs.append((F.one, (s[i - 1] + b_prev) / a_prev))
    a_prev, b_prev = xs[-1]
    xs.append((s[k - 1], (s[k - 2] + s[k - 1] * b_prev) / a_prev))
    labels = dict(zip(order, xs))
    return tuple(labels[v] for v in g.vertices)


# Closed-form labelings of the normalized four-vertex shapes.  ``d`` maps the
# canonical pairs (i, j) to weights; missing pairs are read as absent.


def table1(d, beta1: Scalar, beta3: Scalar, beta4: Scalar) -> Labeling:
    """Gamma1 / Gamma2 with ``d13 != 0``; needs ``beta3 != 0``."""
    d12, d13, d23, d34 = d[(1, 2)], d[(1, 3)], d[(2, 3)], d[(3, 4)]
    zero = d13.field.zero
    return (
        (d13 / beta3, beta1),
        (d23 / beta3, (d12 + d23 / beta3 * beta1) / d13 * beta3),
        (zero, beta3),
        (-d34 / beta3, beta4),
    )


def table1_gamma2_beta4(d, beta1: Scalar, beta3: Scalar) -> Scalar:
    """The value of beta4 that also balances edge (1, 4) in Gamma2.

    Edge (1, 4) reads ``d13*beta4/beta3 + d34*beta1/beta3 = d14``, so the
    ``beta1`` term enters with a minus sign.
    """
    return (d[(1, 4)] - d[(3, 4)] * beta1 / beta3) / d[(1, 3)] * beta3


def table2(d, alpha4: Scalar, beta4: Scalar) -> Labeling:
    """4-cycle 1-2-3-4 with zero chord (1,3); needs ``d12*d34 + d23*d14 = 0``."""
    d12, d14, d34 = d[(1, 2)], d[(1, 4)], d[(3, 4)]
    zero = d12.field.zero
    return (
        (d14 / beta4, zero),
        (zero, d12 / d14 * beta4),
        (d34 / beta4, zero),
        (alpha4, beta4),
    )


def table2_k4_alpha4(d, beta4: Scalar) -> Scalar:
    """The value of alpha4 that also balances the second chord (2, 4)."""
    return -d[(2, 4)] / d[(1, 2)] * d[(1, 4)] / beta4


def table3(d, beta1: Scalar) -> Labeling:
    """K4 with nonzero weights satisfying the Plücker relation; ``beta1 != 0``."""
    d12, d13, d14, d24, d34 = d[(1, 2)], d[(1, 3)], d[(1, 4)], d[(2, 4)], d[(3, 4)]
    zero = d12.field.zero
    return (
        (zero, beta1),
        (-d12 / beta1, d24 / d14 * beta1),
        (-d13 / beta1, d34 / d14 * beta1),
        (-d14 / beta1, zero),
    )


def table4(d, beta1: Scalar) -> Labeling:
    """K4 whose zero weights form the triangle {1,2,4}; ``beta1 != 0``."""
    d13, d23, d34 = d[(1, 3)], d[(2, 3)], d[(3, 4)]
    zero = d13.field.zero
    return (
        (zero, beta1),
        (zero, d23 / d13 * beta1),
        (-d13 / beta1, beta1),
        (zero, -d34 / d13 * beta1),
    )


class _Params:
    """Free table parameters: canonical (0 or 1) unless an RNG is supplied."""

    def __init__(self, field, rng: random.Random | None):
        self.field = field
        self.rng = rng
        self.chosen: dict[str, Scalar] = {}

    def _draw(self, nonzero: bool) -> Scalar:
        F = self.field
        while True:
            if F.is_finite:
                v = F(self.rng.randrange(F.p))
            else:
                v = F(self.rng.randint(-9, 9)) / self.rng.randint(1, 5)
            if v or not nonzero:
                return v

    def any(self, name: str) -> Scalar:
        v = self.field.zero if self.rng is None else self._draw(False)
        self.chosen[name] = v
        return v

    def unit(self, name: str) -> Scalar:
        v = self.field.one if self.rng is None else self._draw(True)
        self.chosen[name] = v
        return v

    def fixed(self, name: str, value: Scalar) -> Scalar:
        self.chosen[name] = value
        return value


def _triangle_defect_vertices(h: WeightedGraph) -> tuple[int, ...] | None:
    """A (4)_A pattern inside a four-vertex graph: vertex x with zero edges
    to y < z, nonzero (y, z), and a nonzero edge to the remaining vertex."""
    for x in h.vertices:
        others = [v for v in h.vertices if v != x]
        for y in others:
            for z in others:
                if y >= z:
                    continue
                (w,) = [v for v in others if v not in (y, z)]
                try:
                    make_certificate(h, "mA", (x, y, z, w), 4)
                except defects.CertificateError:
                    continue
                return (x, y, z, w)
    return None


def _zero_edges(h: WeightedGraph) -> list[tuple[int, int]]:
    return [e for e, w in h.edges.items() if not w]


def _label_gamma1(h, params):
    d = h.edges
    if d[(1, 3)]:
        return "1", table1(d, params.any("beta1"), params.unit("beta3"), params.any("beta4")), None
    if d[(2, 3)]:
        tau = Permutation.transposition(4, 1, 2)
        d2 = apply_permutation(h, tau).edges
        labels = table1(d2, params.any("beta1"), params.unit("beta3"), params.any("beta4"))
        return "1-swap12", _pull_back(labels, tau), None
    return "1-defect", None, ("mA", (3, 1, 2, 4))


def _label_gamma2(h, params):
    d = h.edges
    if d[(1, 3)]:
        beta1, beta3 = params.any("beta1"), params.unit("beta3")
        beta4 = params.fixed("beta4", table1_gamma2_beta4(d, beta1, beta3))
        return "2a", table1(d, beta1, beta3, beta4), None
    # (1,3) is the zero chord; a zero side edge leaves a (4)_A triangle.
    if not d[(1, 2)]:
        return "2-defect", None, ("mA", (1, 2, 3, 4))
    if not d[(2, 3)]:
        return "2-defect", None, ("mA", (3, 1, 2, 4))
    if not d[(1, 4)]:
        return "2-defect", None, ("mA", (1, 3, 4, 2))
    if not d[(3, 4)]:
        return "2-defect", None, ("mA", (3, 1, 4, 2))
    if d[(1, 2)] * d[(3, 4)] + d[(2, 3)] * d[(1, 4)]:
        return "2b-defect", None, ("4B", (1, 2, 3, 4))
    beta4 = params.unit("beta4")
    alpha4 = params.any("alpha4")
    return "2b", table2(d, alpha4, beta4), None


_K4 = CANONICAL_SHAPES["Gamma3"]


def _label_gamma3(h, params):
    d = h.edges
    zeros = _zero_edges(h)
    if not zeros:
        plucker = d[(1, 2)] * d[(3, 4)] - d[(1, 3)] * d[(2, 4)] + d[(1, 4)] * d[(2, 3)]
        if plucker:
            return "3a-defect", None, ("4C", (1, 2, 3, 4))
        return "3a", table3(d, params.unit("beta1")), None

    if len(zeros) == 1 or (len(zeros) == 2 and not set(zeros[0]) & set(zeros[1])):
        want = {(1, 3)} if len(zeros) == 1 else {(1, 3), (2, 4)}
        case = "3b" if len(zeros) == 1 else "3c"
        tau = _first_perm(h, _K4, lambda h2: set(_zero_edges(h2)) == want)
        h2 = apply_permutation(h, tau)
        d2 = h2.edges
        if d2[(1, 2)] * d2[(3, 4)] + d2[(2, 3)] * d2[(1, 4)]:
            return case + "-defect", None, ("4B", tuple(tau.inverse()(i) for i in (1, 2, 3, 4)))
        beta4 = params.unit("beta4")
        if case == "3b":
            alpha4 = params.fixed("alpha4", table2_k4_alpha4(d2, beta4))
        else:
            alpha4 = params.fixed("alpha4", d2[(1, 2)].field.zero)
        return case, _pull_back(table2(d2, alpha4, beta4), tau), None

    if len(zeros) == 3 and len({v for e in zeros for v in e}) == 3:
        tau = _first_perm(h, _K4, lambda h2: set(_zero_edges(h2)) == {(1, 2), (2, 4), (1, 4)})
        d2 = apply_permutation(h, tau).edges
        return "3d", _pull_back(table4(d2, params.unit("beta1")), tau), None

    if len(zeros) > 4:
        raise GraphError("K4 with more than four zero weights has a null vertex")
    case = {2: "3c-defect", 3: "3d-defect", 4: "3e-defect"}[len(zeros)]
    quad = _triangle_defect_vertices(h)
    if quad is None:
        raise GraphError("zero pattern without a triangle defect implies a null vertex")
    return case, None, ("mA", quad)


def label_four(g: WeightedGraph, rng: random.Random | None = None) -> Decision:
    """Decide a connected four-vertex graph without null vertices."""
    if g.n != 4 or len(connected_components(g)) != 1:
        raise GraphError("label_four needs a connected graph on four vertices")
    if null_vertices(g):
        raise GraphError("label_four needs a graph without null vertices")
    shape = classify_shape(g)
    sigma = shape.normalizer
    h = apply_permutation(g, sigma)
    params = _Params(g.field, rng)
    if shape.is_tree:
        case, labels, defect = "tree", label_tree(h), None
    elif shape.name == "Gamma4":
        case, labels, defect = "cycle", label_cycle(h), None
    else:
        handler = {"Gamma1": _label_gamma1, "Gamma2": _label_gamma2, "Gamma3": _label_gamma3}
        case, labels, defect = handler[shape.name](h, params)
    diagnostics = {
        "shape": shape.name,
        "case": case,
        "parameters": {k: str(v) for k, v in params.chosen.items()},
    }
    if labels is not None:
        result = _pull_back(labels, sigma)
        if verify_labeling(g, result):
            raise AssertionError(f"case {case} produced an inconsistent labeling for {g!r}")
        return Decision(Status.LABELABLE, labeling=result, diagnostics=diagnostics)
    family, positions = defect
    back = sigma.inverse()
    cert = make_certificate(g, family, tuple(back(v) for v in positions), 4 if family == "mA" else None)
    return Decision(Status.NOT_LABELABLE, certificate=cert, diagnostics=diagnostics)


def _decide_component(sub: WeightedGraph, config: EngineConfig, rng) -> Decision:
    if sub.n == 1:
        F = sub.field
        return Decision(Status.LABELABLE, ((F.zero, F.zero),), diagnostics={"shape": "Edgeless"})
    if is_tree(sub):
        return Decision(Status.LABELABLE, label_tree(sub), diagnostics={"shape": "Tree", "case": "tree"})
    if is_cycle(sub):
        return Decision(Status.LABELABLE, label_cycle(sub), diagnostics={"shape": "Cycle", "case": "cycle"})
    if sub.n == 4:
        return label_four(sub, rng)
    certs = defects.detect_all(sub, config.max_m)
    if certs:
        return Decision(
            Status.NOT_LABELABLE,
            certificate=certs[0],
            diagnostics={"shape": "Large", "case": "defect", "certificates": len(certs)},
        )
    F = sub.field
    if config.use_oracle and F.is_finite and F.p ** (2 * sub.n) <= config.budget:
        labels = oracle_label(sub, config.budget)
        if labels is None:
            return Decision(Status.NOT_LABELABLE_ORACLE, diagnostics={"shape": "Large", "case": "oracle"})
        return Decision(Status.LABELABLE, labels, diagnostics={"shape": "Large", "case": "oracle"})
    return Decision(Status.UNKNOWN, diagnostics={"shape": "Large", "case": "unclassified"})


def decide(g: WeightedGraph, config: EngineConfig | None = None) -> Decision:
    """Decide whether ``g`` has a consistent labeling.

    Null vertices get (0, 0); the rest splits into connected components that
    are decided independently.  The result is labelable iff every component
    is, refuted if any component is refuted, and unknown otherwise.
    """
    config = config or EngineConfig()
    rng = random.Random(config.seed) if config.seed is not None else None
    F = g.field
    nulls = null_vertices(g)
    live, live_ids = induced_subgraph(g, [v for v in g.vertices if v not in nulls])
    labels: list[tuple[Scalar, Scalar]] = [(F.zero, F.zero)] * g.n
    parts = []
    refutation: Decision | None = None
    oracle_refutation: Decision | None = None
    unknown = False
    for comp in connected_components(live):
        sub, local_ids = induced_subgraph(live, comp)
        ids = tuple(live_ids[i - 1] for i in local_ids)
        dec = _decide_component(sub, config, rng)
        info = {"vertices": list(ids), "status": dec.status.value, **dec.diagnostics}
        parts.append(info)
        if dec.status is Status.LABELABLE:
            for local, vertex in enumerate(ids, start=1):
                labels[vertex - 1] = dec.labeling[local - 1]
        elif dec.status is Status.NOT_LABELABLE:
            if refutation is None:
                cert = dec.certificate
                lifted = make_certificate(
                    g, cert.family, tuple(ids[v - 1] for v in cert.vertices), cert.m
                )
                refutation = Decision(Status.NOT_LABELABLE, certificate=lifted)
        elif dec.status is Status.NOT_LABELABLE_ORACLE:
            oracle_refutation = oracle_refutation or dec
        else:
            unknown = True

    diagnostics: dict[str, Any] = {"null_vertices": sorted(nulls), "components": parts}
    if len(parts) == 1:
        for key in ("shape", "case", "parameters"):
            if key in parts[0]:
                diagnostics[key] = parts[0][key]
    if refutation is not None:
        if not validate_certificate(g, refutation.certificate):
            raise AssertionError("lifted certificate failed to re-validate")
        return Decision(Status.NOT_LABELABLE, certificate=refutation.certificate, diagnostics=diagnostics)
    if oracle_refutation is not None:
        return Decision(Status.NOT_LABELABLE_ORACLE, diagnostics=diagnostics)
    if unknown:
        return Decision(Status.UNKNOWN, diagnostics=diagnostics)
    result = tuple(labels)
    if verify_labeling(g, result):
        raise AssertionError(f"assembled labeling is inconsistent for {g!r}")
    return Decision(Status.LABELABLE, labeling=result, diagnostics=diagnostics)
