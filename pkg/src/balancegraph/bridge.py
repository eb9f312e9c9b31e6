"""From alternating bilinear maps to weighted graphs and back.

An element ``x`` of ``W`` lies in the image of ``B: U x U -> W`` exactly when
some presentation ``x = sum d_ij B(u_i, u_j)`` yields a weighted graph with a
consistent labeling; the labels are then the coordinates of ``a`` and ``b``.
Presentations are taken relative to the supplied basis of ``U``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Iterator, Mapping, Sequence

from . import linalg
from .defects import DefectCertificate, detect_all, pattern_edges
from .engine import EngineConfig, Status, decide
from .fields import Field, Scalar
from .graph import WeightedGraph
from .oracle import DEFAULT_BUDGET, BudgetExceededError, oracle_image

Pair = tuple[int, int]
Vector = tuple[Scalar, ...]


class StructureError(ValueError):
    pass


class NotInSpanError(StructureError):
    """The target is not a combination of the bracket values."""


class AlternatingStructure:
    """Structure constants ``c_ij = B(u_i, u_j)`` for ``i < j``, valued in ``F^m``.

    Pairs whose vector is zero are dropped, so ``brackets`` only lists the
    pairs that give edges.
    """

    def __init__(self, field: Field, n: int, m: int, brackets: Mapping[Pair, Sequence] = ()):
        if n < 0 or m < 0:
            raise StructureError("generator count and target dimension must be non-negative")
        self.field = field
        self.n = n
        self.m = m
        store: dict[Pair, Vector] = {}
        for (i, j), vec in dict(brackets).items():
            if not (1 <= i < j <= n):
                raise StructureError(f"bracket pair ({i},{j}) must satisfy 1 <= i < j <= {n}")
            if len(vec) != m:
                raise StructureError(f"bracket ({i},{j}) has {len(vec)} coordinates, expected {m}")
            v = tuple(field(t) for t in vec)
            if any(v):
                store[(i, j)] = v
        self.brackets = dict(sorted(store.items()))

    def bracket(self, i: int, j: int) -> Vector:
        """``B(u_i, u_j)`` for any ordered pair of indices."""
        zero = tuple(self.field.zero for _ in range(self.m))
        if i == j:
            return zero
        if i < j:
            return self.brackets.get((i, j), zero)
        return tuple(-t for t in self.brackets.get((j, i), zero))

    def evaluate(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
        out = [self.field.zero] * self.m
        for (i, j), vec in self.brackets.items():
            coef = a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1]
            if coef:
                for t in range(self.m):
                    out[t] = out[t] + coef * vec[t]
        return tuple(out)

    def span_rank(self) -> int:
        return linalg.rank(self.field, [list(v) for v in self.brackets.values()], self.m)

    def __eq__(self, other):
        if not isinstance(other, AlternatingStructure):
            return NotImplemented
        return (self.field, self.n, self.m, self.brackets) == (other.field, other.n, other.m, other.brackets)

    def __repr__(self):
        return f"AlternatingStructure({self.field}, n={self.n}, m={self.m}, {len(self.brackets)} brackets)"


def _form_matrix(S: AlternatingStructure) -> list[list[Scalar]]:
    """Rows ``(k, t)``: the t-th coordinate of ``B(v, u_k)`` as a function of ``v``."""
    rows = []
    for k in range(1, S.n + 1):
        for t in range(S.m):
            rows.append([S.bracket(i, k)[t] for i in range(1, S.n + 1)])
    return rows


def radical(S: AlternatingStructure) -> list[list[Scalar]]:
    """Basis of ``{v : B(v, u) = 0 for all u}`` in generator coordinates."""
    return linalg.nullspace(S.field, _form_matrix(S), S.n)


@dataclass(frozen=True)
class Reduction:
    structure: AlternatingStructure
    kept: tuple[int, ...]

    def lift(self, v: Sequence[Scalar], n: int, field: Field) -> tuple[Scalar, ...]:
        out = [field.zero] * n
        for idx, value in zip(self.kept, v):
            out[idx - 1] = value
        return tuple(out)


def reduce(S: AlternatingStructure) -> Reduction:
    """Restrict ``B`` to the generators at pivot columns of the form matrix.

    Those generators span a complement of the radical, so the restriction has
    trivial radical and the same image as ``B``.
    """
    _, pivots = linalg.rref(S.field, _form_matrix(S), S.n)
    kept = tuple(c + 1 for c in pivots)
    index = {old: new for new, old in enumerate(kept, start=1)}
    brackets = {
        (index[i], index[j]): vec
        for (i, j), vec in S.brackets.items()
        if i in index and j in index
    }
    return Reduction(AlternatingStructure(S.field, len(kept), S.m, brackets), kept)


@dataclass(frozen=True)
class PresentationSpace:
    """All presentations ``d0 + sum t_k h_k`` over the pairs with nonzero bracket."""

    pairs: tuple[Pair, ...]
    particular: tuple[Scalar, ...]
    homogeneous: tuple[tuple[Scalar, ...], ...]

    @property
    def k(self) -> int:
        return len(self.homogeneous)

    def at(self, coefficients: Sequence) -> "Presentation":
        d = list(self.particular)
        for t, h in zip(coefficients, self.homogeneous):
            if t:
                d = [x + t * y for x, y in zip(d, h)]
        return Presentation.from_weights(dict(zip(self.pairs, d)))


@dataclass(frozen=True)
class Presentation:
    """Weights ``d_ij`` on bracket pairs plus the support ``I`` in increasing order.

    Vertex ``s`` of the presentation graph is generator ``support[s-1]``.
    """

    weights: dict
    support: tuple[int, ...]

    @classmethod
    def from_weights(cls, weights: Mapping[Pair, Scalar]) -> "Presentation":
        support = sorted({v for pair, w in weights.items() if w for v in pair})
        return cls(dict(weights), tuple(support))


def _coordinates(S: AlternatingStructure, x: Sequence) -> tuple[Scalar, ...]:
    if len(x) != S.m:
        raise StructureError(f"element has {len(x)} coordinates, structure has target dimension {S.m}")
    return tuple(S.field(t) for t in x)


def presentations_of(S: AlternatingStructure, x: Sequence) -> PresentationSpace:
    """Solve ``sum d_ij c_ij = x``; raises :class:`NotInSpanError` if impossible."""
    x = _coordinates(S, x)
    pairs = tuple(S.brackets)
    rows = [[S.brackets[p][t] for p in pairs] for t in range(S.m)]
    d0 = linalg.solve(S.field, rows, len(pairs), list(x))
    if d0 is None:
        raise NotInSpanError("element is outside the span of the bracket values")
    basis = linalg.nullspace(S.field, rows, len(pairs))
    return PresentationSpace(pairs, tuple(d0), tuple(tuple(h) for h in basis))


def graph_of(S: AlternatingStructure, pres: Presentation) -> WeightedGraph:
    """Graph on the support: an edge wherever the bracket is nonzero, weighted by ``d``."""
    index = {v: s for s, v in enumerate(pres.support, start=1)}
    edges = {
        (index[i], index[j]): pres.weights.get((i, j), S.field.zero)
        for (i, j) in S.brackets
        if i in index and j in index
    }
    return WeightedGraph(S.field, len(pres.support), edges)


def _full_graph(S: AlternatingStructure, weights: Mapping[Pair, Scalar]) -> WeightedGraph:
    """Presentation graph on every generator; solvable iff the support graph is."""
    return WeightedGraph(S.field, S.n, {p: weights.get(p, S.field.zero) for p in S.brackets})


def _lift_labels(pres: Presentation, labels, n: int, field: Field):
    a = [field.zero] * n
    b = [field.zero] * n
    for s, v in enumerate(pres.support, start=1):
        a[v - 1], b[v - 1] = labels[s - 1]
    return tuple(a), tuple(b)


@dataclass(frozen=True)
class ImageConfig:
    budget: int = DEFAULT_BUDGET
    range: int = 2
    max_presentations: int = 10_000
    use_oracle: bool = True


@dataclass
class ImageDecision:
    status: str  # "yes" | "no" | "unknown"
    witness: tuple[tuple[Scalar, ...], tuple[Scalar, ...]] | None = None
    certificates: list[tuple[Presentation, DefectCertificate]] = dc_field(default_factory=list)
    diagnostics: dict[str, Any] = dc_field(default_factory=dict)


def _enumerate(space: PresentationSpace, field: Field, config: ImageConfig) -> tuple[Iterator, bool]:
    """Coefficient tuples to try and whether they cover the whole space."""
    k = space.k
    if k == 0:
        return iter([()]), True
    if field.is_finite:
        total = field.p**k
        coeffs = itertools.product(range(field.p), repeat=k)
        if total <= config.max_presentations:
            return coeffs, True
        return itertools.islice(coeffs, config.max_presentations), False
    r = config.range
    box = (t for t in itertools.product(range(-r, r + 1), repeat=k) if any(t))
    return itertools.islice(itertools.chain([(0,) * k], box), config.max_presentations), False


def _quadratic_has_rational_root(a: Fraction, b: Fraction, c: Fraction) -> bool:
    if a == 0:
        return b != 0 or c == 0
    disc = b * b - 4 * a * c
    if disc < 0:
        return False
    num, den = disc.numerator, disc.denominator
    return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def _family_certificate(S: AlternatingStructure, space: PresentationSpace) -> DefectCertificate | None:
    """A certificate valid for every rational member of a one-parameter family.

    Pattern weights are affine in ``t``; zero conditions must vanish
    identically, nonzero conditions must be nonzero constants, and the
    quadratic condition must have no rational root.
    """
    F = S.field
    (h,) = space.homogeneous
    base = dict(zip(space.pairs, space.particular))
    slope = dict(zip(space.pairs, h))
    g0 = _full_graph(S, base)
    g1 = _full_graph(S, slope)
    for cert in detect_all(g0):
        zeros, nonzeros = pattern_edges(cert.family, cert.m)
        verts = cert.vertices

        def affine(k, l):
            u, v = verts[k - 1], verts[l - 1]
            return g0.signed_weight(u, v), g1.signed_weight(u, v)

        if any(affine(*e)[1] for e in zeros):
            continue
        if any(affine(*e)[1] for e in nonzeros):
            continue
        if cert.family in ("4B", "4C"):
            D = {e: affine(*e) for e in zeros + nonzeros}
            if cert.family == "4B":
                terms = [(1, (1, 2), (3, 4)), (1, (1, 4), (2, 3))]
            else:
                terms = [(1, (1, 2), (3, 4)), (-1, (1, 3), (2, 4)), (1, (1, 4), (2, 3))]
            qa = qb = qc = F.zero
            for sign, e, f in terms:
                (p0, p1), (q0, q1) = D[e], D[f]
                qa = qa + sign * p1 * q1
                qb = qb + sign * (p0 * q1 + p1 * q0)
                qc = qc + sign * p0 * q0
            if _quadratic_has_rational_root(qa.value, qb.value, qc.value):
                continue
        return cert
    return None


def decide_in_image(S: AlternatingStructure, x: Sequence, config: ImageConfig | None = None) -> ImageDecision:
    """Decide whether ``x = B(a, b)`` for some ``a, b`` in ``U``.

    Yes answers carry a witness checked by direct evaluation.  No answers
    come from refuting every presentation in an exhaustive enumeration, from
    a certificate valid on a whole rational line of presentations, or from
    the brute-force image oracle over a prime field.
    """
    config = config or ImageConfig()
    F = S.field
    x = _coordinates(S, x)
    red = reduce(S)
    R = red.structure
    diagnostics: dict[str, Any] = {
        "basis": "fixed",
        "reduced_generators": list(red.kept),
        "span_rank": R.span_rank(),
    }
    zero = tuple(F.zero for _ in range(S.n))
    if not any(x):
        diagnostics["case"] = "zero"
        return ImageDecision("yes", (zero, zero), diagnostics=diagnostics)
    space = presentations_of(R, x)
    diagnostics["homogeneous_dim"] = space.k

    def finish_yes(a_red, b_red, case):
        a = red.lift(a_red, S.n, F)
        b = red.lift(b_red, S.n, F)
        if S.evaluate(a, b) != x:
            raise AssertionError("reconstructed witness does not evaluate to the target")
        diagnostics["case"] = case
        return ImageDecision("yes", (a, b), diagnostics=diagnostics)

    engine_cfg = EngineConfig(budget=config.budget, use_oracle=config.use_oracle)
    coeffs, exhaustive = _enumerate(space, F, config)
    certificates = []
    examined = 0
    all_refuted = True
    for t in coeffs:
        pres = space.at(t)
        g = graph_of(R, pres)
        dec = decide(g, engine_cfg)
        examined += 1
        if dec.status is Status.LABELABLE:
            diagnostics["presentations_examined"] = examined
            diagnostics["presentation"] = [str(c) for c in t]
            a, b = _lift_labels(pres, dec.labeling, R.n, F)
            return finish_yes(a, b, "presentation")
        if dec.status is Status.NOT_LABELABLE:
            certificates.append((pres, dec.certificate))
        elif dec.status is not Status.NOT_LABELABLE_ORACLE:
            all_refuted = False
    diagnostics["presentations_examined"] = examined
    diagnostics["exhaustive"] = exhaustive
    if exhaustive and all_refuted:
        diagnostics["case"] = "all_presentations_refuted"
        return ImageDecision("no", certificates=certificates, diagnostics=diagnostics)

    if not F.is_finite and space.k == 1:
        cert = _family_certificate(R, space)
        if cert is not None:
            diagnostics["case"] = "family_certificate"
            pres = Presentation.from_weights(dict(zip(space.pairs, space.particular)))
            return ImageDecision("no", certificates=[(pres, cert)], diagnostics=diagnostics)

    if diagnostics["span_rank"] <= 3:
        a, b = witness_dim_le3(R, x)
        return finish_yes(a, b, "dim_le3")

    if F.is_finite and config.use_oracle:
        try:
            found = oracle_image(R, x, config.budget)
        except BudgetExceededError as exc:
            diagnostics["oracle"] = str(exc)
        else:
            if found is None:
                diagnostics["case"] = "oracle"
                return ImageDecision("no", certificates=certificates, diagnostics=diagnostics)
            return finish_yes(found[0], found[1], "oracle")
    diagnostics["case"] = "undecided"
    return ImageDecision("unknown", certificates=certificates, diagnostics=diagnostics)


# Constructive witnesses when the bracket values span at most three dimensions.


def _unit(n: int, i: int, F: Field, scale=None):
    v = [F.zero] * n
    v[i - 1] = F.one if scale is None else scale
    return v


def _star_witness(S: AlternatingStructure, x: Vector):
    """``x = B(u_s, b)`` for a single generator ``u_s``, if possible."""
    F = S.field
    for s in range(1, S.n + 1):
        others = [t for t in range(1, S.n + 1) if t != s]
        cols = [S.bracket(s, t) for t in others]
        if not any(any(c) for c in cols):
            continue
        rows = [[c[r] for c in cols] for r in range(S.m)]
        sol = linalg.solve(F, rows, len(others), list(x))
        if sol is not None:
            b = [F.zero] * S.n
            for t, coef in zip(others, sol):
                b[t - 1] = coef
            return tuple(_unit(S.n, s, F)), tuple(b)
    return None


def _basis_triples(S: AlternatingStructure, rank: int):
    """Bases of the bracket span made of bracket pairs, fewest support vertices first."""
    pairs = list(S.brackets)
    out = []
    for combo in itertools.combinations(pairs, rank):
        rows = [list(S.brackets[p]) for p in combo]
        if linalg.rank(S.field, rows, S.m) == rank:
            out.append(combo)
    out.sort(key=lambda c: (len({v for p in c for v in p}), c))
    return out


def _solve_in_basis(S, basis, x):
    rows = [[S.brackets[p][t] for p in basis] for t in range(S.m)]
    return linalg.solve(S.field, rows, len(basis), list(x))


def _try_weights(S, weights, x, engine_cfg):
    pres = Presentation.from_weights(weights)
    g = graph_of(S, pres)
    dec = decide(g, engine_cfg)
    if dec.status is Status.LABELABLE:
        a, b = _lift_labels(pres, dec.labeling, S.n, S.field)
        if S.evaluate(a, b) == x:
            return a, b
    return None


def _plucker_roots(S, base, r1, r2, F):
    """Values of ``t`` making ``base + t*r1 + r2`` satisfy the Plücker relation on its support."""
    w0 = {p: base.get(p, F.zero) + r2.get(p, F.zero) for p in set(base) | set(r2)}
    support = sorted({v for p, w in list(w0.items()) + list(r1.items()) if w for v in p})
    if len(support) != 4:
        return []
    i, j, k, l = support

    def coeff(p, q):
        return (w0.get((p, q), F.zero), r1.get((p, q), F.zero))

    terms = [(1, coeff(i, j), coeff(k, l)), (-1, coeff(i, k), coeff(j, l)), (1, coeff(i, l), coeff(j, k))]
    qa = qb = qc = F.zero
    for sign, (p0, p1), (q0, q1) in terms:
        qa = qa + sign * p1 * q1
        qb = qb + sign * (p0 * q1 + p1 * q0)
        qc = qc + sign * p0 * q0
    if not qa:
        return [-qc / qb] if qb else []
    if F.is_finite:
        return [t for t in F.elements() if not (qa * t * t + qb * t + qc)] if F.p <= 1000 else []
    disc = (qb * qb - 4 * qa * qc).value
    if disc < 0 or not _quadratic_has_rational_root(qa.value, qb.value, qc.value):
        return []
    root = Fraction(math.isqrt(disc.numerator), math.isqrt(disc.denominator))
    return [(-qb + F(root)) / (2 * qa), (-qb - F(root)) / (2 * qa)]


def _table5_witness(S: AlternatingStructure, x: Vector):
    """Five-generator pattern with basis ``{12, 23, 45}``, ``c13 = lam*c23`` and ``c34 = c1*c23``.

    The presentation ``a1*c12 + (a2 - c1 - lam)*c23 + c13 + c34 + a3*c45``
    is labeled by ``(1,0), (K,a1), (0,1), (-1,0), (0,-a3)`` with
    ``K = a2 - c1 - lam``.
    """
    F = S.field
    for roles in itertools.permutations(range(1, S.n + 1), 5):
        v1, v2, v3, v4, v5 = roles
        c12, c23, c45 = S.bracket(v1, v2), S.bracket(v2, v3), S.bracket(v4, v5)
        if not any(c23):
            continue
        rows = [[c12[t], c23[t], c45[t]] for t in range(S.m)]
        coords = linalg.solve(F, rows, 3, list(x))
        if coords is None or linalg.rank(F, [list(c12), list(c23), list(c45)], S.m) != 3:
            continue
        lam = _parallel_factor(S.bracket(v1, v3), c23, F)
        c1 = _parallel_factor(S.bracket(v3, v4), c23, F)
        if lam is None or c1 is None:
            continue
        a1, a2, a3 = coords
        K = a2 - c1 - lam
        labels = {v1: (F.one, F.zero), v2: (K, a1), v3: (F.zero, F.one), v4: (-F.one, F.zero), v5: (F.zero, -a3)}
        a = [F.zero] * S.n
        b = [F.zero] * S.n
        for v, (p, q) in labels.items():
            a[v - 1], b[v - 1] = p, q
        if S.evaluate(a, b) == x:
            return tuple(a), tuple(b)
    return None


def _parallel_factor(u: Vector, v: Vector, F: Field) -> Scalar | None:
    """``lam`` with ``u = lam*v`` (``v`` nonzero), or ``None``."""
    k = next(i for i, t in enumerate(v) if t)
    lam = u[k] / v[k]
    if all(ui == lam * vi for ui, vi in zip(u, v)):
        return lam
    return None


def witness_dim_le3(S: AlternatingStructure, x: Sequence) -> tuple[tuple[Scalar, ...], tuple[Scalar, ...]]:
    """``(a, b)`` with ``B(a, b) = x`` when the brackets span at most three dimensions.

    Tries, in order: a single generator against a combination (covers rank
    one, shared-index rank two and the three-pair star), the disjoint rank
    two combination, presentations in every bracket basis with rewrites
    along one or two linear relations, and the five-generator labeling.
    """
    F = S.field
    x = _coordinates(S, x)
    rank = S.span_rank()
    if rank > 3:
        raise StructureError(f"bracket span has dimension {rank} > 3")
    zero = tuple(F.zero for _ in range(S.n))
    if not any(x):
        return zero, zero
    if linalg.solve(F, [[S.brackets[p][t] for p in S.brackets] for t in range(S.m)], len(S.brackets), list(x)) is None:
        raise NotInSpanError("element is outside the span of the bracket values")

    found = _star_witness(S, x)
    if found:
        return found

    bases = _basis_triples(S, rank)
    if rank == 2:
        for (i1, i2), (i3, i4) in bases:
            a1, a2 = _solve_in_basis(S, ((i1, i2), (i3, i4)), x)
            a = _unit(S.n, i1, F, a1)
            a[i3 - 1] = a2
            b = _unit(S.n, i2, F)
            b[i4 - 1] = F.one
            if S.evaluate(a, b) == x:
                return tuple(a), tuple(b)

    engine_cfg = EngineConfig(use_oracle=False)
    for basis in bases:
        coords = _solve_in_basis(S, basis, x)
        base = dict(zip(basis, coords))
        found = _try_weights(S, base, x, engine_cfg)
        if found:
            return found
        # Each non-basis pair e gives the relation c_e - sum gamma_f c_f = 0.
        relations = []
        for e in S.brackets:
            if e in basis:
                continue
            gamma = _solve_in_basis(S, basis, S.brackets[e])
            rel = {e: F.one}
            for f, gm in zip(basis, gamma):
                rel[f] = rel.get(f, F.zero) - gm
            relations.append(rel)
        for rel in relations:
            for s in (F.one, -F.one):
                w = dict(base)
                for p, v in rel.items():
                    w[p] = w.get(p, F.zero) + s * v
                found = _try_weights(S, w, x, engine_cfg)
                if found:
                    return found
        for r1, r2 in itertools.permutations(relations, 2):
            for t in _plucker_roots(S, base, r1, r2, F):
                w = dict(base)
                for rel, s in ((r1, t), (r2, F.one)):
                    for p, v in rel.items():
                        w[p] = w.get(p, F.zero) + s * v
                found = _try_weights(S, w, x, engine_cfg)
                if found:
                    return found

    if rank == 3:
        found = _table5_witness(S, x)
        if found:
            return found
    raise AssertionError(f"no witness constructed for {x} in {S!r}")
