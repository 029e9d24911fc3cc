"""Fractal window approximations for invertible Pisot substitutions.

The boundary of each subwindow is grown by iterating the boundary
endomorphism (the inverse substitution, read backwards) on the canonical
parallelogram seed paths, rendering the resulting closed words in
internal space and contracting the finished point set by ``a_w^n``.  A
point cloud of projected tile endpoints provides an independent oracle
for the same regions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .cps import CPS
from .errors import NegativeLetterError
from .tiling import find_periodic_seed, realize
from .words import Word, _raw_word, compose, invert_automorphism

MAX_ITERATIONS = 12  # boundary words grow geometrically; keep memory sane


def boundary_endomorphism(sigma, max_depth: int = 12):
    """Reverse of the exact inverse automorphism.

    Its abelianization is the exact integer inverse of the substitution
    matrix, so closed paths stay closed under iteration.
    """
    return invert_automorphism(sigma, max_depth=max_depth).reversed()


@dataclass(frozen=True)
class BoundaryPath:
    """A closed edge path in internal space: each letter g with sign s
    contributes the displacement s * star(e_g)."""

    letter: int
    word: Word
    base: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        if any(self.word.abelianization()):
            raise ValueError("boundary word does not abelianize to zero")


def canonical_seeds(cps: CPS) -> tuple[BoundaryPath, ...]:
    """Commutator seed paths: the subwindow for letter i starts as the
    parallelogram spanned by the star images of the other two basis
    vectors, based at the origin."""
    rank = 3
    seeds = []
    for i in range(1, rank + 1):
        j, k = [g for g in range(1, rank + 1) if g != i]
        word = _raw_word((j, k, -j, -k), rank)
        seeds.append(BoundaryPath(letter=i, word=word))
    return tuple(seeds)


def path_polyline(word: Word, cps: CPS, base=None) -> np.ndarray:
    """Prefix-sum rendering of a closed word; shape (len+1, 2)."""
    star = cps.star_basis()
    pts = np.zeros((len(word) + 1, 2))
    if base is not None:
        pts[0] = base
    for idx, x in enumerate(word.letters):
        step = star[abs(x) - 1] * (1.0 if x > 0 else -1.0)
        pts[idx + 1] = pts[idx] + step
    return pts


@dataclass(frozen=True)
class WindowApprox:
    """Closed polyline approximations of the three subwindows at one
    iteration depth, already rescaled by the internal contraction."""

    iteration: int
    polylines: tuple[np.ndarray, ...]   # indexed by letter - 1
    areas: tuple[float, ...]

    def polyline(self, letter: int) -> np.ndarray:
        return self.polylines[letter - 1]

    def area(self, letter: int) -> float:
        return self.areas[letter - 1]

    def max_segment(self) -> float:
        return max(geometry.max_segment_length(p) for p in self.polylines)


def iterate_window(sigma_b, seeds, n: int, cps: CPS) -> WindowApprox:
    """Apply the boundary endomorphism n times to every seed word and
    render the rescaled closed paths; n = 0 returns the seeds as they
    are (the canonical parallelograms)."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    if n > MAX_ITERATIONS:
        raise ValueError(f"iteration count {n} exceeds the bound {MAX_ITERATIONS}")
    contraction = np.linalg.matrix_power(cps.a_w, n)
    polylines = []
    areas = []
    for seed in sorted(seeds, key=lambda s: s.letter):
        word = seed.word
        for _ in range(n):
            word = sigma_b(word)
        if any(word.abelianization()):
            raise AssertionError("boundary iterate no longer closes")
        pts = path_polyline(word, cps) @ contraction.T
        pts += seed.base - pts[0]
        polylines.append(pts)
        areas.append(geometry.polygon_area(pts))
    return WindowApprox(iteration=n, polylines=tuple(polylines), areas=tuple(areas))


def polygon_area(polyline) -> float:
    """Absolute shoelace area of a closed polyline."""
    return geometry.polygon_area(polyline)


def point_cloud_window(sigma, cps: CPS, depth: int) -> dict[int, np.ndarray]:
    """Star images of the left endpoints of all tiles in a finite patch,
    grouped by tile letter: an independent approximation of the
    subwindows (up to translation)."""
    letter, k = find_periodic_seed(sigma)
    word = Word((letter,), sigma.rank)
    step = sigma ** k
    for _ in range(depth):
        word = step(word)
    patch = realize(word, cps)
    clouds = {}
    stars = patch.vertices[:-1] @ cps.pi2.T if len(word) else np.zeros((0, 2))
    letters = np.array(patch.letters)
    for g in range(1, sigma.rank + 1):
        clouds[g] = stars[letters == g] if len(word) else np.zeros((0, 2))
    return clouds


@dataclass(frozen=True)
class ContainmentReport:
    fractions: dict[int, float]
    counts: dict[int, int]
    epsilon: float
    empty_letters: tuple[int, ...]

    @property
    def worst_fraction(self) -> float:
        return min(self.fractions.values())


def containment_check(wa: WindowApprox, clouds: dict[int, np.ndarray],
                      eps: float) -> ContainmentReport:
    """Fraction of cloud points inside the matching subwindow polyline
    after centroid alignment (windows are defined up to translation)."""
    fractions = {}
    counts = {}
    empty = []
    for letter, cloud in sorted(clouds.items()):
        counts[letter] = len(cloud)
        if len(cloud) == 0:
            empty.append(letter)
            fractions[letter] = 1.0
            continue
        poly = wa.polyline(letter)
        shift = geometry.polygon_centroid(poly) - cloud.mean(axis=0)
        inside = geometry.points_in_polygon(poly, cloud + shift, eps)
        fractions[letter] = float(np.count_nonzero(inside)) / len(cloud)
    return ContainmentReport(
        fractions=fractions,
        counts=counts,
        epsilon=eps,
        empty_letters=tuple(empty),
    )
