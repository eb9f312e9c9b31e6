"""Weighted ordered simple graphs and their balance equations.

A :class:`WeightedGraph` on vertices ``1..n`` stores each edge once under the
key ``(i, j)`` with ``i < j``.  The edge carries the balance equation
``a_i*b_j - a_j*b_i = d_ij``.  A weight-0 edge is an equation; an absent edge
is none.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .fields import Field, FieldError, Scalar

__all__ = [
    "GraphError",
    "Permutation",
    "WeightedGraph",
    "Labeling",
    "Violation",
    "graph_validate",
    "null_vertices",
    "connected_components",
    "apply_permutation",
    "permute_labeling",
    "weighted_isomorphic",
    "verify_labeling",
    "induced_subgraph",
    "is_tree",
    "is_cycle",
]

Labeling = tuple[tuple[Scalar, Scalar], ...]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{1..n}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise GraphError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """The composite ``other ∘ self`` (apply ``self`` first)."""
        return Permutation(tuple(other(self(i)) for i in range(1, self.n + 1)))


class WeightedGraph:
    """Immutable weighted ordered simple graph over a field.

    ``edges`` is either a mapping ``{(i, j): weight}`` or an iterable of
    ``(i, j, weight)`` triples.  Weights may be scalars of ``field`` or ints.
    Keys must satisfy ``1 <= i < j <= n``; reversed keys are rejected.
    """

    __slots__ = ("field", "n", "_edges", "_adj")

    def __init__(self, field: Field, n: int, edges=()):
        if not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a non-negative int, got {n!r}")
        items = edges.items() if isinstance(edges, Mapping) else ((u, v, w) for u, v, w in edges)
        store: dict[tuple[int, int], Scalar] = {}
        for entry in items:
            if isinstance(entry[0], tuple):
                (u, v), w = entry
            else:
                u, v, w = entry
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u},{v}) out of range 1..{n}")
            if u > v:
                raise GraphError(f"edge ({u},{v}) must be stored with u < v")
            if (u, v) in store:
                raise GraphError(f"duplicate edge ({u},{v})")
            try:
                store[(u, v)] = field(w)
            except FieldError as exc:
                raise GraphError(f"weight of edge ({u},{v}): {exc}") from exc
        self.field = field
        self.n = n
        self._edges = dict(sorted(store.items()))
        adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(s) for v, s in adj.items()}

    @property
    def edges(self) -> dict[tuple[int, int], Scalar]:
        return dict(self._edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edge_keys(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edges)

    def weight(self, u: int, v: int) -> Scalar | None:
        """Weight stored for the pair ``u < v``; ``None`` when absent."""
        return self._edges.get((u, v))

    def signed_weight(self, u: int, v: int) -> Scalar | None:
        """Weight read in the direction ``u -> v`` (negated when ``u > v``)."""
        if u < v:
            return self._edges.get((u, v))
        w = self._edges.get((v, u))
        return None if w is None else -w

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.field, self.n, tuple(self._edges.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"({u},{v})->{w}" for (u, v), w in self._edges.items())
        return f"WeightedGraph({self.field}, n={self.n}, {{{body}}})"


def graph_validate(g: WeightedGraph) -> None:
    """Re-check the structural invariants; raises :class:`GraphError`."""
    for (u, v), w in g._edges.items():
        if not (1 <= u < v <= g.n):
            raise GraphError(f"bad edge key ({u},{v})")
        if not isinstance(w, Scalar) or w.field != g.field:
            raise GraphError(f"weight of ({u},{v}) is not in {g.field}")


def null_vertices(g: WeightedGraph) -> frozenset[int]:
    """Vertices whose incident edges all carry weight 0 (isolated ones included)."""
    live = set()
    for (u, v), w in g._edges.items():
        if w:
            live.update((u, v))
    return frozenset(v for v in g.vertices if v not in live)


def connected_components(g: WeightedGraph) -> list[tuple[int, ...]]:
    """Vertex sets of the components, each sorted, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def apply_permutation(g: WeightedGraph, sigma: Permutation) -> WeightedGraph:
    """Relabel vertex ``i`` as ``sigma(i)``, negating weights whose endpoints swap order."""
    if sigma.n != g.n:
        raise GraphError(f"permutation on {sigma.n} points applied to graph on {g.n}")
    moved = {}
    for (u, v), w in g._edges.items():
        su, sv = sigma(u), sigma(v)
        moved[(su, sv) if su < sv else (sv, su)] = w if su < sv else -w
    return WeightedGraph(g.field, g.n, moved)


def permute_labeling(labels: Sequence[tuple[Scalar, Scalar]], sigma: Permutation) -> Labeling:
    """Labeling in which vertex ``sigma(i)`` carries the pair of vertex ``i``."""
    out = [None] * len(labels)
    for i, pair in enumerate(labels, start=1):
        out[sigma(i) - 1] = pair
    return tuple(out)


def _degree_signature(g: WeightedGraph) -> list[int]:
    return sorted(g.degree(v) for v in g.vertices)


def weighted_isomorphic(g1: WeightedGraph, g2: WeightedGraph) -> Permutation | None:
    """Find ``sigma`` with ``apply_permutation(g1, sigma) == g2``, or ``None``.

    Backtracking over images in ascending order, pruned by degree and by the
    edges already fixed; the first hit is the lexicographically smallest.
    """
    if g1.field != g2.field or g1.n != g2.n or len(g1) != len(g2):
        return None
    if _degree_signature(g1) != _degree_signature(g2):
        return None
    n = g1.n
    images = [0] * (n + 1)
    used = [False] * (n + 1)

    def consistent(i: int, t: int) -> bool:
        if g1.degree(i) != g2.degree(t):
            return False
        for j in range(1, i):
            s1 = g1.signed_weight(j, i)
            s2 = g2.signed_weight(images[j], t)
            if s1 != s2:
                return False
        return True

    def extend(i: int) -> bool:
        if i > n:
            return True
        for t in range(1, n + 1):
            if not used[t] and consistent(i, t):
                images[i] = t
                used[t] = True
                if extend(i + 1):
                    return True
                used[t] = False
        return False

    if extend(1):
        return Permutation(tuple(images[1:]))
    return None


@dataclass(frozen=True)
class Violation:
    u: int
    v: int
    lhs: Scalar
    weight: Scalar


def verify_labeling(g: WeightedGraph, labels: Sequence[tuple[Scalar, Scalar]]) -> list[Violation]:
    """Edges whose balance equation fails; empty iff the labeling is consistent."""
    if len(labels) != g.n:
        raise GraphError(f"labeling has {len(labels)} entries for {g.n} vertices")
    bad = []
    for (u, v), w in g._edges.items():
        (au, bu), (av, bv) = labels[u - 1], labels[v - 1]
        lhs = au * bv - av * bu
        if lhs != w:
            bad.append(Violation(u, v, lhs, w))
    return bad


def induced_subgraph(g: WeightedGraph, keep: Iterable[int]) -> tuple[WeightedGraph, tuple[int, ...]]:
    """Subgraph on ``keep`` renumbered ``1..k`` in increasing order.

    The renumbering preserves order, so weights are copied unchanged.  Returns
    the subgraph and the tuple of original vertex ids.
    """
    kept = tuple(sorted(set(keep)))
    index = {v: i for i, v in enumerate(kept, start=1)}
    sub = {
        (index[u], index[v]): w
        for (u, v), w in g._edges.items()
        if u in index and v in index
    }
    return WeightedGraph(g.field, len(kept), sub), kept


def is_tree(g: WeightedGraph) -> bool:
    return g.n >= 1 and len(g) == g.n - 1 and len(connected_components(g)) == 1


def is_cycle(g: WeightedGraph) -> bool:
    return (
        g.n >= 3
        and len(g) == g.n
        and all(g.degree(v) == 2 for v in g.vertices)
        and len(connected_components(g)) == 1
    )


def all_permutations(n: int) -> Iterable[Permutation]:
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)
