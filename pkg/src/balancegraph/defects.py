"""Detectors for the three defect families that rule out consistent labelings.

A defect is a (not necessarily induced) weighted subgraph with a fixed shape
and a zero / nonzero / polynomial condition on its weights.  Pattern weights
are read through the order sign rule: for pattern positions ``k < l`` mapped
to ambient vertices ``x_k, x_l`` the pattern weight is
``g.signed_weight(x_k, x_l)``.

Families
--------
``mA``  bad cycle ``i_1 .. i_r`` (``r = (m+2)/2``) whose edges are all 0
        except ``(i_{r-1}, i_r)``, plus one pendant ``i_{j+r}`` with a
        nonzero edge at each ``i_j``, ``j <= r-2``.
``4B``  4-cycle ``1-2-3-4`` with nonzero weights and a zero chord ``(1,3)``,
        where ``D12*D34 + D14*D23 != 0``.
``4C``  ``K4`` with nonzero weights violating the Plücker relation
        ``D12*D34 - D13*D24 + D14*D23 = 0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import Scalar
from .graph import WeightedGraph

__all__ = [
    "DefectCertificate",
    "CertificateError",
    "MAX_CERTIFICATES",
    "pattern_edges",
    "make_certificate",
    "validate_certificate",
    "detect_mA",
    "detect_4B",
    "detect_4C",
    "detect_all",
]

MAX_CERTIFICATES = 100


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class DefectCertificate:
    """Witness that a graph has no consistent labeling.

    ``vertices`` lists ambient vertex ids in pattern order; ``edges`` holds
    ``(u, v, weight)`` for each pattern edge, oriented in pattern order with
    the sign-adjusted weight.
    """

    family: str
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, Scalar], ...]
    m: int | None = None

    @property
    def code(self) -> str:
        if self.family == "mA":
            return f"{self.m}A" if self.m == 4 else "mA"
        return self.family


def pattern_edges(family: str, m: int | None = None) -> tuple[list, list]:
    """Zero-weight and nonzero-weight pattern positions for ``family``."""
    if family == "mA":
        if m is None or m < 4 or m % 2:
            raise CertificateError(f"family mA needs an even m >= 4, got {m!r}")
        r = (m + 2) // 2
        zeros = [(j, j + 1) for j in range(1, r - 1)] + [(1, r)]
        nonzeros = [(r - 1, r)] + [(j, j + r) for j in range(1, r - 1)]
        return zeros, nonzeros
    if family == "4B":
        return [(1, 3)], [(1, 2), (1, 4), (2, 3), (3, 4)]
    if family == "4C":
        return [], [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    raise CertificateError(f"unknown defect family {family!r}")


def _polynomial(family: str, D) -> Scalar | None:
    if family == "4B":
        return D[(1, 2)] * D[(3, 4)] + D[(1, 4)] * D[(2, 3)]
    if family == "4C":
        return D[(1, 2)] * D[(3, 4)] - D[(1, 3)] * D[(2, 4)] + D[(1, 4)] * D[(2, 3)]
    return None


def _check(g: WeightedGraph, family: str, vertices, m) -> tuple | None:
    zeros, nonzeros = pattern_edges(family, m)
    size = m if family == "mA" else 4
    if len(vertices) != size or len(set(vertices)) != size:
        return None
    if any(not (1 <= v <= g.n) for v in vertices):
        return None
    D = {}
    for k, l in zeros + nonzeros:
        w = g.signed_weight(vertices[k - 1], vertices[l - 1])
        if w is None:
            return None
        D[(k, l)] = w
    if any(D[e] for e in zeros) or not all(D[e] for e in nonzeros):
        return None
    poly = _polynomial(family, D)
    if poly is not None and not poly:
        return None
    return tuple(
        (vertices[k - 1], vertices[l - 1], D[(k, l)]) for k, l in sorted(zeros + nonzeros)
    )


def make_certificate(g: WeightedGraph, family: str, vertices, m: int | None = None) -> DefectCertificate:
    """Build a certificate for an explicit vertex tuple; raises if it does not hold."""
    vertices = tuple(vertices)
    if family == "mA" and m is None:
        m = len(vertices)
    edges = _check(g, family, vertices, m)
    if edges is None:
        raise CertificateError(f"{family} pattern does not hold on {vertices}")
    return DefectCertificate(family, vertices, edges, m if family == "mA" else None)


def validate_certificate(g: WeightedGraph, cert: DefectCertificate) -> bool:
    """Re-evaluate every condition of ``cert`` against ``g``."""
    try:
        edges = _check(g, cert.family, cert.vertices, cert.m)
    except CertificateError:
        return False
    return edges is not None and edges == cert.edges


def _zero_edge(g: WeightedGraph, u: int, v: int) -> bool:
    w = g.weight(min(u, v), max(u, v))
    return w is not None and not w


def _nonzero_edge(g: WeightedGraph, u: int, v: int) -> bool:
    w = g.weight(min(u, v), max(u, v))
    return w is not None and bool(w)


def detect_mA(g: WeightedGraph, max_m: int | None = None, limit: int = MAX_CERTIFICATES) -> list[DefectCertificate]:
    """Unfavorable proximities of bad cycles, for even ``m`` in ``4..max_m``.

    Each proximity is reported once: the zero path ``i_r, i_1, .., i_{r-1}``
    reads the same backwards, so only the orientation with
    ``i_{r-1} < i_r`` is kept.  Witnesses come out in lexicographic order.
    """
    if max_m is None:
        max_m = 2 * g.n - 2
    found: list[DefectCertificate] = []
    for m in range(4, min(max_m, g.n) + 1, 2):
        r = (m + 2) // 2
        for cycle in _zero_paths(g, r):
            for pendants in _pendants(g, cycle, r):
                found.append(make_certificate(g, "mA", cycle + pendants, m))
                if len(found) >= limit:
                    return found
    return found


def _zero_paths(g: WeightedGraph, r: int):
    """Tuples ``(i_1..i_r)``: zero path ``i_1..i_{r-1}``, zero ``(i_1,i_r)``, nonzero ``(i_{r-1},i_r)``."""
    path: list[int] = []

    def grow():
        if len(path) == r - 1:
            last = path[-1]
            for close in sorted(g.neighbors(path[0])):
                if close in path or close < last:
                    continue
                if _zero_edge(g, path[0], close) and _nonzero_edge(g, last, close):
                    yield tuple(path) + (close,)
            return
        for nxt in sorted(g.neighbors(path[-1])):
            if nxt not in path and _zero_edge(g, path[-1], nxt):
                path.append(nxt)
                yield from grow()
                path.pop()

    for start in g.vertices:
        path.append(start)
        yield from grow()
        path.pop()


def _pendants(g: WeightedGraph, cycle: tuple[int, ...], r: int):
    chosen: list[int] = []

    def pick(j: int):
        if j == r - 2:
            yield tuple(chosen)
            return
        anchor = cycle[j]
        for v in sorted(g.neighbors(anchor)):
            if v in cycle or v in chosen or not _nonzero_edge(g, anchor, v):
                continue
            chosen.append(v)
            yield from pick(j + 1)
            chosen.pop()

    yield from pick(0)


def detect_4B(g: WeightedGraph, limit: int = MAX_CERTIFICATES) -> list[DefectCertificate]:
    """4-cycles with a zero chord whose weights violate ``D12*D34 = -D14*D23``.

    The pattern is symmetric under swapping positions 1,3 and 2,4, so only
    tuples with ``w < y`` and ``x < z`` are reported.
    """
    found = []
    if len(g) < 5:
        return found
    for w, x, y, z in itertools.permutations(g.vertices, 4):
        if w > y or x > z:
            continue
        edges = _check(g, "4B", (w, x, y, z), None)
        if edges is not None:
            found.append(DefectCertificate("4B", (w, x, y, z), edges))
            if len(found) >= limit:
                break
    return found


def detect_4C(g: WeightedGraph, limit: int = MAX_CERTIFICATES) -> list[DefectCertificate]:
    """Nonzero ``K4`` subgraphs violating the Plücker relation.

    The signed Plücker expression only changes sign under relabeling, so one
    ordering per 4-subset suffices.
    """
    found = []
    if len(g) < 6:
        return found
    for quad in itertools.combinations(g.vertices, 4):
        edges = _check(g, "4C", quad, None)
        if edges is not None:
            found.append(DefectCertificate("4C", quad, edges))
            if len(found) >= limit:
                break
    return found


def detect_all(g: WeightedGraph, max_m: int | None = None) -> list[DefectCertificate]:
    return detect_mA(g, max_m) + detect_4B(g) + detect_4C(g)
