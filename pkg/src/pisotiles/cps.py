"""Cut-and-project scheme built from verified Pisot data.

The physical projection of a lattice vector is its tile-length weighted
coordinate sum (a point on the expanding eigenline); the internal
projection consists of the Galois conjugates of that coordinate.  For a
complex conjugate pair the internal plane is identified with C via the
root with positive imaginary part, for a totally real cubic the two real
conjugate embeddings give the two internal coordinates.  Multiplication
by the substitution matrix acts on internal coordinates through the
contraction ``a_w``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import PisotData


def _frozen(arr):
    a = np.asarray(arr, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class CPS:
    pisot: PisotData
    pi1: np.ndarray          # (3,) row functional, pi1(e_i) = tile length i
    pi2: np.ndarray          # (2, 3) internal coordinates of the basis vectors
    a_v: float               # expansion along the physical line (= lambda)
    a_w: np.ndarray          # (2, 2) internal action of the matrix
    internal_kind: str       # "complex-pair" | "totally-real"

    def project_phys(self, vec) -> float:
        return float(self.pi1 @ np.asarray(vec, dtype=float))

    def star_map(self, vec) -> np.ndarray:
        return self.pi2 @ np.asarray(vec, dtype=float)

    def star_basis(self) -> np.ndarray:
        """Internal images of the standard basis vectors, shape (3, 2)."""
        return self.pi2.T.copy()


def build_cps(pd: PisotData) -> CPS:
    lengths = pd.left_eigenvector
    pi1 = [e.embed(pd.lam) for e in lengths]

    pair = any(abs(z.imag) > 1e-12 for z in pd.conjugates)
    if pair:
        mu = max(pd.conjugates, key=lambda z: z.imag)
        embedded = [e.embed(mu) for e in lengths]
        pi2 = [[z.real for z in embedded], [z.imag for z in embedded]]
        a_w = [[mu.real, -mu.imag], [mu.imag, mu.real]]
        kind = "complex-pair"
    else:
        mus = sorted(z.real for z in pd.conjugates)
        pi2 = [[e.embed(mu).real if isinstance(e.embed(mu), complex) else float(e.embed(mu))
                for e in lengths] for mu in mus]
        a_w = [[mus[0], 0.0], [0.0, mus[1]]]
        kind = "totally-real"

    cps = CPS(
        pisot=pd,
        pi1=_frozen(pi1),
        pi2=_frozen(pi2),
        a_v=pd.lam,
        a_w=_frozen(a_w),
        internal_kind=kind,
    )
    _check_intertwining(cps)
    return cps


def _check_intertwining(cps: CPS):
    m = np.array(cps.pisot.matrix.rows, dtype=float)
    left = cps.pi2 @ m
    right = cps.a_w @ cps.pi2
    if np.max(np.abs(left - right)) > 1e-9:
        raise AssertionError("internal action does not intertwine with the matrix")
    phys = cps.pi1 @ m - cps.a_v * cps.pi1
    if np.max(np.abs(phys)) > 1e-9:
        raise AssertionError("physical projection is not an eigenrow")
