"""Free-group words and finite group presentations.

A word is a tuple of non-zero ints: ``k`` is generator ``k`` (1-based) and
``-k`` its inverse. Words are read left to right as paths are traversed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple


def reduce_word(word: Iterable[int]) -> Word:
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def mul_words(*words: Sequence[int]) -> Word:
    return reduce_word(x for w in words for x in w)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(reduce_word(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def word_power(word: Sequence[int], k: int) -> Word:
    if k < 0:
        return word_power(inverse_word(word), -k)
    return reduce_word(tuple(word) * k)


@dataclass(frozen=True)
class GroupPresentation:
    n_gens: int
    relators: tuple = ()
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        rels = []
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.n_gens:
                    raise ValueError(f"relator {r} uses a generator outside 1..{self.n_gens}")
            r = reduce_word(r)
            if r and r not in rels:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def check_word(self, word: Sequence[int]) -> Word:
        for x in word:
            if x == 0 or abs(x) > self.n_gens:
                raise ValueError(f"word {tuple(word)} uses a generator outside 1..{self.n_gens}")
        return reduce_word(word)

    @property
    def is_trivially_free(self) -> bool:
        return not self.relators


@dataclass(frozen=True)
class SubgroupSpec:
    """Subgroup of a presented group, given by generating words."""

    ambient: GroupPresentation
    words: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.ambient.check_word(w) for w in self.words))

    @classmethod
    def trivial(cls, P: GroupPresentation) -> "SubgroupSpec":
        return cls(P, ())

    @classmethod
    def whole(cls, P: GroupPresentation) -> "SubgroupSpec":
        return cls(P, tuple((k,) for k in range(1, P.n_gens + 1)))
