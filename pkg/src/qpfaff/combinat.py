"""Perfect matchings and permutations with their inversion statistics."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence, Tuple

from .errors import DomainError


@dataclass(frozen=True)
class PerfectMatching:
    """Pairs ``(i, j)`` with ``i < j`` covering ``1..2n``, sorted by ``i``."""

    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((min(p), max(p)) for p in self.pairs))
        flat = sorted(x for p in pairs for x in p)
        if flat != list(range(1, len(flat) + 1)) or any(i == j for i, j in pairs):
            raise DomainError(f"{self.pairs} is not a perfect matching of 1..{len(flat)}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def size(self) -> int:
        return 2 * len(self.pairs)

    def word(self) -> Tuple[int, ...]:
        """The flattened word ``i1 j1 i2 j2 ...``."""
        return tuple(x for p in self.pairs for x in p)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"{self.images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def inversions(self) -> int:
        return inversions(self)

    def sign(self) -> int:
        return sign(self)


def _word_inversions(word: Sequence[int]) -> int:
    n = len(word)
    return sum(1 for a in range(n) for b in range(a + 1, n) if word[a] > word[b])


def enumerate_matchings(two_n: int) -> Iterator[PerfectMatching]:
    """All perfect matchings of ``1..two_n`` in lexicographic order."""
    if not isinstance(two_n, int) or two_n < 2 or two_n % 2:
        raise DomainError(f"need an even positive size, got {two_n!r}")

    def rec(items):
        if not items:
            yield ()
            return
        first, rest = items[0], items[1:]
        for k, partner in enumerate(rest):
            for tail in rec(rest[:k] + rest[k + 1 :]):
                yield ((first, partner),) + tail

    for pairs in rec(tuple(range(1, two_n + 1))):
        yield PerfectMatching(pairs)


def matching_inversions(pi: PerfectMatching) -> int:
    """Inversions of the flattened word ``i1 j1 i2 j2 ...``.

    Nested pairs count: ``{(1,4),(2,3)}`` gives 2.
    """
    return _word_inversions(pi.word())


def matching_sign(pi: PerfectMatching) -> int:
    return -1 if matching_inversions(pi) % 2 else 1


def crossing_number(pi: PerfectMatching) -> int:
    """Number of crossing chords ``i < k < j < l``; a diagnostic only."""
    pairs = pi.pairs
    count = 0
    for a in range(len(pairs)):
        i, j = pairs[a]
        for b in range(a + 1, len(pairs)):
            k, l = pairs[b]
            if i < k < j < l:
                count += 1
    return count


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def enumerate_permutations(m: int) -> Iterator[Permutation]:
    if m < 0:
        raise DomainError(f"need m >= 0, got {m}")
    for images in permutations(range(1, m + 1)):
        yield Permutation(images)


def inversions(sigma: Permutation) -> int:
    return _word_inversions(sigma.images)


def sign(sigma: Permutation) -> int:
    return -1 if inversions(sigma) % 2 else 1
