"""Reduced words and endomorphisms of finitely generated free groups.

Letters are nonzero integers: ``+k`` is the k-th generator, ``-k`` its
inverse (1-based, so negation flips orientation).  Words are kept freely
reduced at all times, which makes free-group equality plain tuple
equality.  The text form uses one letter per generator, lowercase for
the generator and uppercase for its inverse (``bab^-1`` is ``"baB"``);
the empty word renders as ``"1"``.

Everything here works for any rank, with rank 3 as the default used
throughout the rest of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce as _fold

from .errors import NotFoundError, NotInvertibleError

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _free_reduce(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(int(x))
    return tuple(out)


def _concat(a, b):
    # both inputs reduced; cancellation can only happen at the junction
    i, j = len(a), 0
    while i > 0 and j < len(b) and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return a[:i] + b[j:]


def _invert(letters):
    return tuple(-x for x in reversed(letters))


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the identity."""

    letters: tuple[int, ...] = ()
    rank: int = 3

    def __post_init__(self):
        reduced = _free_reduce(self.letters)
        for x in reduced:
            if not 1 <= abs(x) <= self.rank:
                raise ValueError(f"letter {x} outside the rank-{self.rank} alphabet")
        object.__setattr__(self, "letters", reduced)

    @classmethod
    def parse(cls, text: str, rank: int = 3) -> "Word":
        """Parse text like ``"baB"``; ``"1"`` or ``""`` is the identity."""
        stripped = text.strip()
        if stripped in ("", "1"):
            return cls((), rank)
        letters = []
        for ch in stripped:
            if ch.isspace():
                continue
            idx = ALPHABET.find(ch.lower())
            if idx < 0 or idx >= rank:
                raise ValueError(f"unknown letter {ch!r} for rank {rank}")
            letters.append(-(idx + 1) if ch.isupper() else idx + 1)
        return cls(tuple(letters), rank)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return _raw_word(_concat(self.letters, other.letters), self.rank)

    def __invert__(self) -> "Word":
        return _raw_word(_invert(self.letters), self.rank)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        result = Word((), self.rank)
        for _ in range(abs(n)):
            result = result * base
        return result

    def reversed(self) -> "Word":
        """Letters in reverse order, signs unchanged (an involution)."""
        return _raw_word(tuple(reversed(self.letters)), self.rank)

    @property
    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def startswith(self, prefix: "Word") -> bool:
        return self.letters[: len(prefix.letters)] == prefix.letters

    def subword(self, start: int, stop: int) -> "Word":
        # a contiguous slice of a reduced word is reduced
        return _raw_word(self.letters[start:stop], self.rank)

    def abelianization(self) -> tuple[int, ...]:
        """Signed letter counts, one entry per generator."""
        counts = [0] * self.rank
        for x in self.letters:
            counts[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(counts)

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(
            ALPHABET[x - 1] if x > 0 else ALPHABET[-x - 1].upper() for x in self.letters
        )

    def __repr__(self):
        return f"Word.parse({str(self)!r}, rank={self.rank})"


def _raw_word(letters, rank):
    # bypass re-reduction for letter tuples that are already reduced
    w = object.__new__(Word)
    object.__setattr__(w, "letters", letters)
    object.__setattr__(w, "rank", rank)
    return w


def generator(index: int, rank: int = 3) -> Word:
    """The one-letter word for generator ``index`` (0-based)."""
    if not 0 <= index < rank:
        raise ValueError(f"generator index {index} out of range")
    return _raw_word((index + 1,), rank)


def reduce_letters(letters, rank: int = 3) -> Word:
    """Freely reduce an arbitrary signed-letter sequence into a Word."""
    return Word(tuple(letters), rank)


@dataclass(frozen=True, eq=False)
class Endomorphism:
    """A free-group endomorphism given by the images of the generators."""

    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        rank = len(images)
        for img in images:
            if img.rank != rank:
                raise ValueError("image rank does not match number of images")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_strings(cls, *texts: str) -> "Endomorphism":
        rank = len(texts)
        return cls(tuple(Word.parse(t, rank) for t in texts))

    @property
    def rank(self) -> int:
        return len(self.images)

    @property
    def is_positive(self) -> bool:
        return all(img.is_positive and img for img in self.images)

    @property
    def is_identity(self) -> bool:
        return all(img.letters == (i + 1,) for i, img in enumerate(self.images))

    def total_image_length(self) -> int:
        return sum(len(img) for img in self.images)

    def __call__(self, word: Word) -> Word:
        """Homomorphic image of ``word``, freely reduced."""
        if word.rank != self.rank:
            raise ValueError("rank mismatch")
        out = []
        for x in word.letters:
            img = self.images[abs(x) - 1].letters
            seq = img if x > 0 else _invert(img)
            for y in seq:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return _raw_word(tuple(out), self.rank)

    def __pow__(self, n: int) -> "Endomorphism":
        if n < 0:
            raise ValueError("use invert_automorphism for negative powers")
        result = identity(self.rank)
        for _ in range(n):
            result = compose(result, self)
        return result

    def reversed(self) -> "Endomorphism":
        """Reverse each image word in place (signs unchanged; an involution)."""
        return Endomorphism(tuple(img.reversed() for img in self.images))

    def abelianization(self):
        """Column ``j`` counts the signed letters of the image of generator ``j``."""
        from .algebra import IntMatrix3

        cols = [img.abelianization() for img in self.images]
        rows = tuple(tuple(cols[j][i] for j in range(self.rank)) for i in range(self.rank))
        if self.rank != 3:
            return rows
        return IntMatrix3(rows)

    def render_rules(self) -> str:
        """One ``letter -> image`` line per generator; the CLI file format."""
        return "\n".join(
            f"{ALPHABET[i]} -> {img}" for i, img in enumerate(self.images)
        ) + "\n"

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        return "[" + ", ".join(str(img) for img in self.images) + "]"

    def __repr__(self):
        imgs = ", ".join(repr(str(img)) for img in self.images)
        return f"{type(self).__name__}.from_strings({imgs})"


class Substitution(Endomorphism):
    """An endomorphism whose images are nonempty positive words."""

    def __post_init__(self):
        super().__post_init__()
        for i, img in enumerate(self.images):
            if not img:
                raise ValueError(f"image of {ALPHABET[i]} is empty")
            if not img.is_positive:
                raise ValueError(f"image of {ALPHABET[i]} contains inverse letters")


def identity(rank: int = 3) -> Endomorphism:
    return Endomorphism(tuple(generator(i, rank) for i in range(rank)))


def compose(*maps: Endomorphism) -> Endomorphism:
    """Composition ``compose(f, g, h) = f∘g∘h``, i.e. h applied first."""
    if not maps:
        raise ValueError("compose needs at least one map")

    def pair(f, g):
        return Endomorphism(tuple(f(img) for img in g.images))

    return _fold(pair, maps)


# --- elementary Nielsen automorphisms and bounded inversion ---------------

@dataclass(frozen=True)
class NielsenMove:
    """One elementary automorphism: a generator permutation, a single
    inversion, or multiplication of one generator by another on one side."""

    kind: str           # "perm" | "invert" | "mul"
    data: tuple

    def apply_images(self, images):
        """Right-compose: images of ``s ∘ move`` from the images of ``s``."""
        if self.kind == "perm":
            return tuple(images[p] for p in self.data)
        if self.kind == "invert":
            j = self.data[0]
            return images[:j] + (_invert(images[j]),) + images[j + 1:]
        i, j, left = self.data
        a, b = (images[j], images[i]) if left else (images[i], images[j])
        return images[:i] + (_concat(a, b),) + images[i + 1:]

    def endomorphism(self, rank: int) -> Endomorphism:
        imgs = [(k + 1,) for k in range(rank)]
        if self.kind == "perm":
            imgs = [(p + 1,) for p in self.data]
        elif self.kind == "invert":
            imgs[self.data[0]] = (-(self.data[0] + 1),)
        else:
            i, j, left = self.data
            imgs[i] = (j + 1, i + 1) if left else (i + 1, j + 1)
        return Endomorphism(tuple(_raw_word(t, rank) for t in imgs))

    def inverse_endomorphism(self, rank: int) -> Endomorphism:
        imgs = [(k + 1,) for k in range(rank)]
        if self.kind == "perm":
            inv = [0] * rank
            for k, p in enumerate(self.data):
                inv[p] = k
            imgs = [(q + 1,) for q in inv]
        elif self.kind == "invert":
            imgs[self.data[0]] = (-(self.data[0] + 1),)
        else:
            i, j, left = self.data
            imgs[i] = (-(j + 1), i + 1) if left else (i + 1, -(j + 1))
        return Endomorphism(tuple(_raw_word(t, rank) for t in imgs))


def nielsen_moves(rank: int = 3) -> tuple[NielsenMove, ...]:
    moves = []
    for perm in itertools.permutations(range(rank)):
        if perm != tuple(range(rank)):
            moves.append(NielsenMove("perm", perm))
    for j in range(rank):
        moves.append(NielsenMove("invert", (j,)))
    for i in range(rank):
        for j in range(rank):
            if i != j:
                moves.append(NielsenMove("mul", (i, j, False)))
                moves.append(NielsenMove("mul", (i, j, True)))
    return tuple(moves)


def _int_det3(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _abelianization_rows(images):
    rank = len(images)
    cols = []
    for img in images:
        col = [0] * rank
        for x in img:
            col[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(rank)) for i in range(rank))


def compose_moves(moves: list[NielsenMove], rank: int) -> Endomorphism:
    """The automorphism ``m1 ∘ m2 ∘ … ∘ mk`` (mk applied first)."""
    result = identity(rank)
    for m in moves:
        result = compose(result, m.endomorphism(rank))
    return result


def invert_moves(moves: list[NielsenMove], rank: int) -> Endomorphism:
    """Inverse of ``compose_moves(moves)``: the reversed chain of inverses."""
    result = identity(rank)
    for m in reversed(moves):
        result = compose(result, m.inverse_endomorphism(rank))
    return result


def _bfs_moves(start_images, goal_test, rank, max_depth, len_cap, max_states):
    """Breadth-first search over right-composition by elementary moves.

    Returns the move list m1..mk such that start ∘ m1 ∘ … ∘ mk hits the
    goal, or None if the budget runs out.  Deterministic: fixed move
    order, FIFO frontier.
    """
    if goal_test(start_images):
        return []
    moves = nielsen_moves(rank)
    seen = {start_images: None}
    frontier = [start_images]
    for _ in range(max_depth):
        next_frontier = []
        for state in frontier:
            for midx, move in enumerate(moves):
                nxt = move.apply_images(state)
                if nxt in seen or sum(len(t) for t in nxt) > len_cap:
                    continue
                seen[nxt] = (state, midx)
                if goal_test(nxt):
                    chain = []
                    cur = nxt
                    while seen[cur] is not None:
                        prev, k = seen[cur]
                        chain.append(moves[k])
                        cur = prev
                    chain.reverse()
                    return chain
                if len(seen) > max_states:
                    return None
                next_frontier.append(nxt)
        frontier = next_frontier
        if not frontier:
            break
    return None


def invert_automorphism(phi: Endomorphism, max_depth: int = 12,
                        max_states: int = 500_000) -> Endomorphism:
    """Exact inverse of a free-group automorphism by bounded Nielsen search.

    Raises NotInvertibleError when the abelianization determinant is not
    ±1, and NotFoundError when the bounded search fails (which does not
    prove non-invertibility, although all shallow automorphisms of
    interest are found well within the default depth).
    """
    rank = phi.rank
    rows = _abelianization_rows(tuple(img.letters for img in phi.images))
    if rank == 3 and _int_det3(rows) not in (1, -1):
        raise NotInvertibleError(f"abelianization determinant {_int_det3(rows)} is not ±1")

    start = tuple(img.letters for img in phi.images)
    identity_images = tuple((i + 1,) for i in range(rank))
    len_cap = max(phi.total_image_length() + 2, rank + 4)
    chain = _bfs_moves(start, lambda s: s == identity_images, rank,
                       max_depth, len_cap, max_states)
    if chain is None:
        raise NotFoundError(
            f"no inverse found within {max_depth} elementary moves",
            reason="search exhausted",
        )
    psi = compose_moves(chain, rank)
    if not (compose(phi, psi).is_identity and compose(psi, phi).is_identity):
        raise NotFoundError("reconstructed inverse failed verification")
    return psi
