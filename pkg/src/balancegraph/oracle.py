"""Naive exhaustive ground truth over prime fields.

Nothing here calls into the labeling engine or the presentation machinery;
the arithmetic is done on raw residues so that agreement between the two is
evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .fields import Field, Scalar
from .graph import Labeling, WeightedGraph

__all__ = [
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "oracle_label",
    "oracle_image",
    "enumerate_graphs",
    "count_graphs",
]

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    pass


def _require_prime(field: Field) -> int:
    if field.kind != "Fp":
        raise ValueError(f"the oracle only runs over prime fields, not {field}")
    return field.p


def oracle_label(g: WeightedGraph, budget: int = DEFAULT_BUDGET) -> Labeling | None:
    """Lexicographically first consistent labeling of ``g``, or ``None``.

    Vertices are fixed in order 1..n.  When an earlier neighbour already has
    a nonzero label, the candidates for the current vertex are the p points
    of the line cut out by that balance equation; otherwise all p^2 pairs.
    """
    p = _require_prime(g.field)
    n = g.n
    if p ** (2 * n) > budget:
        raise BudgetExceededError(f"{p}^(2*{n}) labelings exceed budget {budget}")
    back: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for (u, v), w in g.edges.items():
        back[v].append((u, w.value))
    everything = [(a, b) for a in range(p) for b in range(p)]
    labels: list[tuple[int, int] | None] = [None] * (n + 1)

    def candidates(k: int):
        for j, s in back[k]:
            aj, bj = labels[j]
            if bj:
                inv = pow(bj, -1, p)
                # aj*b - a*bj = s  =>  a = (aj*b - s) / bj
                pts = [((aj * b - s) * inv % p, b) for b in range(p)]
                return sorted(pts)
            if aj:
                return [(a, s * pow(aj, -1, p) % p) for a in range(p)]
        return everything

    def fits(k: int, a: int, b: int) -> bool:
        for j, s in back[k]:
            aj, bj = labels[j]
            if (aj * b - a * bj - s) % p:
                return False
        return True

    def search(k: int) -> bool:
        if k > n:
            return True
        for a, b in candidates(k):
            if fits(k, a, b):
                labels[k] = (a, b)
                if search(k + 1):
                    return True
        labels[k] = None
        return False

    if not search(1):
        return None
    F = g.field
    return tuple((Scalar._raw(F, a), Scalar._raw(F, b)) for a, b in labels[1:])


def _solve_mod_p(columns: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """Solve ``sum_j b_j * columns[j] = rhs`` mod p by Gauss-Jordan elimination."""
    rows = len(rhs)
    cols = len(columns)
    aug = [[columns[j][i] % p for j in range(cols)] + [rhs[i] % p] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(aug[i][cols] for i in range(r, rows)):
        return None
    sol = [0] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return sol


def oracle_image(structure, target, budget: int = DEFAULT_BUDGET):
    """Search for ``(a, b)`` with ``B(a, b) = target`` by running over ``a``.

    ``a`` ranges over 0 and the vectors whose first nonzero coordinate is 1
    (scaling ``a`` can be pushed into ``b``); for each, ``B(a, .) = target``
    is a linear system in ``b``.  Returns coordinate tuples or ``None``.
    """
    p = _require_prime(structure.field)
    n, m = structure.n, structure.m
    if p**n * max(1, n * n * max(m, 1)) > budget:
        raise BudgetExceededError(f"{p}^{n} candidate vectors exceed budget {budget}")
    x = [t.value for t in target]
    if len(x) != m:
        raise ValueError(f"target has {len(x)} coordinates, structure has {m}")
    c = {}
    for (i, j), vec in structure.brackets.items():
        c[(i, j)] = [t.value for t in vec]
        c[(j, i)] = [(-t.value) % p for t in vec]
    F = structure.field
    if not any(x):
        return tuple(F.zero for _ in range(n)), tuple(F.zero for _ in range(n))
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            a = [0] * lead + [1] + list(tail)
            columns = []
            for j in range(n):
                col = [0] * m
                for i in range(n):
                    if a[i] and (i + 1, j + 1) in c:
                        cij = c[(i + 1, j + 1)]
                        for t in range(m):
                            col[t] += a[i] * cij[t]
                columns.append(col)
            b = _solve_mod_p(columns, x, p)
            if b is not None:
                return (
                    tuple(Scalar._raw(F, v) for v in a),
                    tuple(Scalar._raw(F, v % p) for v in b),
                )
    return None


def count_graphs(n: int, p: int) -> int:
    return (p + 1) ** (n * (n - 1) // 2)


def enumerate_graphs(n: int, p: int) -> Iterator[WeightedGraph]:
    """Every weighted graph on ``n`` ordered vertices over F_p.

    Each pair ``(i, j)`` is absent or carries one of the p weights, giving
    ``(p+1)^C(n,2)`` graphs in lexicographic order (absent < 0 < 1 < ...).
    """
    F = Field.prime(p)
    slots = list(itertools.combinations(range(1, n + 1), 2))
    choices = [None] + list(range(p))
    for combo in itertools.product(choices, repeat=len(slots)):
        yield WeightedGraph(F, n, {e: w for e, w in zip(slots, combo) if w is not None})
