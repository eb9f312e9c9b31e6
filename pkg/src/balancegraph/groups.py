"""Commutators in class-2 groups of exponent p.

Such a group is described by generators ``g_1..g_m`` modulo the centre and
the exponent vectors of ``[g_i, g_j]`` over a basis ``z_1..z_k`` of the
derived subgroup.  Since
``[prod g_i^alpha_i, prod g_i^beta_i] = prod_{i<j} [g_i, g_j]^(alpha_i beta_j - alpha_j beta_i)``,
membership of ``g`` among single commutators is an image question for the
alternating map with structure constants equal to those exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bridge import AlternatingStructure, ImageConfig, ImageDecision, StructureError, decide_in_image
from .fields import Field, is_prime


class GroupError(StructureError):
    pass


@dataclass(frozen=True)
class ClassTwoGroup:
    p: int
    generators: int
    central_rank: int
    commutators: Mapping[tuple[int, int], tuple[int, ...]]
    exponent_p: bool = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise GroupError(f"p must be prime, got {self.p}")
        table = {}
        for (i, j), vec in dict(self.commutators).items():
            if not (1 <= i < j <= self.generators):
                raise GroupError(f"commutator pair ({i},{j}) out of range")
            if len(vec) != self.central_rank:
                raise GroupError(f"commutator ({i},{j}) needs {self.central_rank} exponents")
            table[(i, j)] = tuple(int(e) % self.p for e in vec)
        object.__setattr__(self, "commutators", dict(sorted(table.items())))


def group_to_structure(P: ClassTwoGroup) -> AlternatingStructure:
    if not P.exponent_p:
        raise GroupError("only groups of exponent p are supported")
    F = Field.prime(P.p)
    return AlternatingStructure(F, P.generators, P.central_rank, P.commutators)


def commutator_exponents(P: ClassTwoGroup, alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    """Exponent vector of ``[prod g_i^alpha_i, prod g_i^beta_i]`` via the product formula."""
    out = [0] * P.central_rank
    for (i, j), vec in P.commutators.items():
        e = alpha[i - 1] * beta[j - 1] - alpha[j - 1] * beta[i - 1]
        for t in range(P.central_rank):
            out[t] += e * vec[t]
    return tuple(v % P.p for v in out)


@dataclass
class CommutatorDecision:
    image: ImageDecision
    alpha: tuple[int, ...] | None = None
    beta: tuple[int, ...] | None = None

    @property
    def status(self) -> str:
        return self.image.status


def decide_commutator(P: ClassTwoGroup, target: Sequence[int], config: ImageConfig | None = None) -> CommutatorDecision:
    """Is the central element with exponents ``target`` a single commutator?"""
    if len(target) != P.central_rank:
        raise GroupError(f"target needs {P.central_rank} exponents, got {len(target)}")
    target = tuple(int(t) % P.p for t in target)
    S = group_to_structure(P)
    dec = decide_in_image(S, target, config)
    if dec.status != "yes":
        return CommutatorDecision(dec)
    a, b = dec.witness
    alpha = tuple(v.value for v in a)
    beta = tuple(v.value for v in b)
    if commutator_exponents(P, alpha, beta) != target:
        raise AssertionError("reconstructed commutator does not match the target")
    return CommutatorDecision(dec, alpha, beta)
