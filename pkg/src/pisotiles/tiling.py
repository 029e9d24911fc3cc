"""Fixed-point words and geometric line patches.

Only one-sided fixed points are used: a seed letter g and a power k with
``sigma^k(g)`` starting again with g make the iterates of ``sigma^k``
nested prefixes of a well defined infinite word.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .cps import CPS
from .errors import NegativeLetterError, NoSeedError
from .words import Word, _raw_word, compose

DEFAULT_MAX_POWER = 6


@dataclass(frozen=True)
class TilingPatch:
    """A finite left-to-right run of tiles starting at the origin.

    ``vertices[k]`` is the integer prefix abelianization whose physical
    projection is the left endpoint of segment k; the last vertex closes
    the patch on the right.
    """

    letters: tuple[int, ...]
    lefts: np.ndarray
    lengths: np.ndarray
    vertices: np.ndarray

    @property
    def total_length(self) -> float:
        return float(self.lefts[-1] + self.lengths[-1]) if len(self.letters) else 0.0

    def segments(self):
        for letter, left, length in zip(self.letters, self.lefts, self.lengths):
            yield letter, float(left), float(length)

    def export_text(self) -> str:
        """One ``letter left length`` row per tile (the CLI exchange format)."""
        lines = [
            f"{'abcdefghijklmnopqrstuvwxyz'[letter - 1]} {left:.12f} {length:.12f}"
            for letter, left, length in self.segments()
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def find_periodic_seed(sigma, max_power: int = DEFAULT_MAX_POWER):
    """Smallest k <= max_power and letter g with sigma^k(g) starting with g
    and growing; returns ``(letter, k)`` with letter as a 1-based index."""
    if not sigma.is_positive:
        raise NegativeLetterError("seeds are only defined for substitutions")
    rank = sigma.rank
    powers = sigma
    for k in range(1, max_power + 1):
        for g in range(1, rank + 1):
            image = powers.images[g - 1]
            if len(image) >= 2 and image.letters[0] == g:
                return g, k
        powers = compose(sigma, powers)
    raise NoSeedError(f"no letter restarts its image within power {max_power}")


def fixed_point_prefix(sigma, letter: int, k: int, min_length: int) -> Word:
    """Iterate sigma^k from the seed letter until the word has at least
    ``min_length`` letters; successive iterates must be nested prefixes."""
    step = sigma ** k
    word = Word((letter,), sigma.rank)
    if not step(word).startswith(word):
        raise NoSeedError(f"sigma^{k} does not restart letter {letter}")
    while len(word) < min_length:
        nxt = step(word)
        if len(nxt) <= len(word) or not nxt.startswith(word):
            raise NoSeedError("iteration stopped extending its prefix")
        word = nxt
    return word


def realize(word: Word, cps: CPS) -> TilingPatch:
    """Lay the tiles of a positive word left to right from the origin."""
    if not word.is_positive:
        raise NegativeLetterError("cannot realize a word with inverse letters")
    letters = word.letters
    lengths = np.array([cps.pi1[x - 1] for x in letters], dtype=float)
    lefts = np.concatenate(([0.0], np.cumsum(lengths)[:-1])) if letters else np.zeros(0)
    vertices = np.zeros((len(letters) + 1, 3), dtype=np.int64)
    for idx, x in enumerate(letters):
        vertices[idx + 1] = vertices[idx]
        vertices[idx + 1, x - 1] += 1
    return TilingPatch(letters=letters, lefts=lefts, lengths=lengths, vertices=vertices)


def subword_set(word: Word, k: int) -> set[Word]:
    """All contiguous length-k factors of a positive word."""
    if k < 1:
        raise ValueError("factor length must be >= 1")
    if not word.is_positive:
        raise NegativeLetterError("factor sets are defined for positive words")
    letters = word.letters
    return {
        _raw_word(letters[i:i + k], word.rank)
        for i in range(len(letters) - k + 1)
    }


def letter_frequencies(word: Word) -> tuple[float, ...]:
    counts = Counter(word.letters)
    n = len(word)
    return tuple(counts.get(g, 0) / n for g in range(1, word.rank + 1))
