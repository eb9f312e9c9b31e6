import itertools
import random

import pytest

from balancegraph.bridge import AlternatingStructure, decide_in_image
from balancegraph.groups import ClassTwoGroup, GroupError, commutator_exponents, decide_commutator, group_to_structure

from conftest import F3


def example_group():
    return ClassTwoGroup(3, 4, 4, {(1, 2): (1, 0, 0, 0), (1, 3): (0, 1, 0, 0), (1, 4): (0, 0, 1, 0), (2, 3): (0, 0, 0, 1)})


def test_heisenberg():
    H = ClassTwoGroup(5, 2, 1, {(1, 2): (1,)})
    assert group_to_structure(H).brackets == {(1, 2): (group_to_structure(H).field(1),)}
    for t in range(5):
        dec = decide_commutator(H, (t,))
        assert dec.status == "yes"
        assert commutator_exponents(H, dec.alpha, dec.beta) == (t,)


def test_transcribed_example_matches_lie_structure():
    S = group_to_structure(example_group())
    e = lambda i: [1 if t == i else 0 for t in range(4)]
    assert S == AlternatingStructure(F3, 4, 4, {(1, 2): e(0), (1, 3): e(1), (1, 4): e(2), (2, 3): e(3)})
    dec = decide_commutator(example_group(), (0, 0, 1, 1))
    assert dec.status == "no" and dec.image.certificates[0][1].code == "4A"


def test_identity_and_abelian():
    dec = decide_commutator(example_group(), (0, 0, 0, 0))
    assert dec.status == "yes" and not any(dec.alpha) and not any(dec.beta)
    A = ClassTwoGroup(3, 3, 2, {})
    assert group_to_structure(A).brackets == {}


def test_invalid_groups():
    with pytest.raises(GroupError):
        ClassTwoGroup(4, 2, 1, {(1, 2): (1,)})
    with pytest.raises(GroupError):
        group_to_structure(ClassTwoGroup(3, 2, 1, {(1, 2): (1,)}, exponent_p=False))
    with pytest.raises(GroupError):
        ClassTwoGroup(3, 2, 1, {(2, 1): (1,)})
    with pytest.raises(GroupError):
        decide_commutator(example_group(), (1, 0))


def test_group_and_lie_agree():
    rng = random.Random(9)
    for _ in range(100):
        m = rng.randint(2, 4)
        k = rng.randint(1, 4)
        comms = {p: tuple(rng.randrange(3) for _ in range(k)) for p in itertools.combinations(range(1, m + 1), 2) if rng.random() < 0.7}
        P = ClassTwoGroup(3, m, k, comms)
        S = group_to_structure(P)
        if not S.brackets:
            continue
        coeffs = {p: rng.randrange(3) for p in S.brackets}
        g = tuple(sum(coeffs[p] * v.value for p, vec in S.brackets.items() for v in [vec[t]]) % 3 for t in range(k))
        assert decide_commutator(P, g).status == decide_in_image(S, [F3(t) for t in g]).status
