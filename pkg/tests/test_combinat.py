from math import factorial

import pytest

from qpfaff.combinat import (
    PerfectMatching,
    Permutation,
    crossing_number,
    double_factorial,
    enumerate_matchings,
    enumerate_permutations,
    inversions,
    matching_inversions,
    matching_sign,
    sign,
)
from qpfaff.errors import DomainError


def cycle_sign(images):
    """Sign via cycle decomposition: (-1)^(m - number of cycles)."""
    m = len(images)
    seen = [False] * m
    cycles = 0
    for start in range(m):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j] - 1
    return -1 if (m - cycles) % 2 else 1


@pytest.mark.parametrize("two_n,count", [(2, 1), (4, 3), (6, 15), (8, 105), (10, 945)])
def test_matching_counts(two_n, count):
    ms = list(enumerate_matchings(two_n))
    assert len(ms) == count == double_factorial(two_n - 1)
    assert len(set(ms)) == count


def test_lexicographic_and_deterministic():
    ms = [m.pairs for m in enumerate_matchings(6)]
    assert ms == sorted(ms)
    assert ms == [m.pairs for m in enumerate_matchings(6)]
    assert [m.pairs for m in enumerate_matchings(4)] == [
        ((1, 2), (3, 4)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 3)),
    ]


@pytest.mark.parametrize("bad", [0, 1, 3, -2])
def test_enumerate_matchings_domain(bad):
    with pytest.raises(DomainError):
        list(enumerate_matchings(bad))


@pytest.mark.parametrize(
    "pairs,inv,sgn,cross",
    [
        (((1, 2), (3, 4)), 0, 1, 0),
        (((1, 3), (2, 4)), 1, -1, 1),
        (((1, 4), (2, 3)), 2, 1, 0),
    ],
)
def test_inversion_calibration(pairs, inv, sgn, cross):
    pi = PerfectMatching(pairs)
    assert matching_inversions(pi) == inv
    assert matching_sign(pi) == sgn
    assert crossing_number(pi) == cross


@pytest.mark.parametrize("two_n", [2, 4, 6, 8])
def test_matching_sign_matches_cycle_decomposition(two_n):
    for pi in enumerate_matchings(two_n):
        assert matching_sign(pi) == cycle_sign(pi.word())


def test_matching_canonicalizes_and_validates():
    assert PerfectMatching(((3, 4), (2, 1))).pairs == ((1, 2), (3, 4))
    for bad in [((1, 2), (2, 3)), ((1, 1),), ((1, 3),), ((1, 2), (4, 5))]:
        with pytest.raises(DomainError):
            PerfectMatching(bad)


@pytest.mark.parametrize("m", range(0, 6))
def test_permutation_enumeration(m):
    perms = list(enumerate_permutations(m))
    assert len(perms) == factorial(m)
    assert [p.images for p in perms] == sorted(p.images for p in perms)
    for p in perms:
        brute = sum(1 for i in range(m) for j in range(i + 1, m) if p.images[i] > p.images[j])
        assert inversions(p) == brute
        assert sign(p) == cycle_sign(p.images)


def test_permutation_examples():
    assert inversions(Permutation((1, 2, 3, 4))) == 0 and sign(Permutation((1, 2, 3, 4))) == 1
    assert inversions(Permutation((4, 3, 2, 1))) == 6
    p = Permutation((2, 1, 4, 3))
    assert p.inversions() == 2 and p.sign() == 1
    assert p(1) == 2
    with pytest.raises(DomainError):
        Permutation((1, 1))
