"""Integer 3x3 matrix analysis and exact arithmetic in the cubic field.

Matrices stay plain Python integers so determinants, characteristic
polynomials and conjugacy checks are exact.  Eigenvectors are computed
over the field Q(lambda) (rational coefficients modulo the
characteristic cubic) via the adjugate of M - lambda*I, so that tile
lengths can be Galois-conjugated exactly; floating point enters only
when a field element is embedded at a chosen root.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NegativeEntryError,
    NotIrreducibleError,
    NotPisotError,
    NotPrimitiveError,
    NotUnimodularError,
)

PISOT_MARGIN = 1e-9
WIELANDT_BOUND = 5  # (n-1)^2 + 1 for n = 3


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _adj3(m):
    """Adjugate (transposed cofactor matrix); works over any commutative ring."""
    (a, b, c), (d, e, f), (g, h, i) = m
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def _mul3(m, n):
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


@dataclass(frozen=True)
class IntMatrix3:
    """A 3x3 integer matrix stored as a tuple of rows."""

    rows: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> "IntMatrix3":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def from_columns(cls, cols) -> "IntMatrix3":
        return cls(tuple(tuple(cols[j][i] for j in range(3)) for i in range(3)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "IntMatrix3") -> "IntMatrix3":
        return IntMatrix3(_mul3(self.rows, other.rows))

    def __pow__(self, n: int) -> "IntMatrix3":
        if n < 0:
            raise ValueError("negative matrix powers are not integer matrices in general")
        result = IntMatrix3.identity()
        for _ in range(n):
            result = result @ self
        return result

    def __mul__(self, scalar: int) -> "IntMatrix3":
        return IntMatrix3(tuple(tuple(scalar * x for x in row) for row in self.rows))

    __rmul__ = __mul__

    def transpose(self) -> "IntMatrix3":
        return IntMatrix3(tuple(tuple(self.rows[j][i] for j in range(3)) for i in range(3)))

    def det(self) -> int:
        return _det3(self.rows)

    def trace(self) -> int:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def adjugate(self) -> "IntMatrix3":
        return IntMatrix3(_adj3(self.rows))

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.rows for x in row)

    def is_positive(self) -> bool:
        return all(x > 0 for row in self.rows for x in row)

    def char_poly(self) -> "CubicPoly":
        """Exact coefficients of det(xI - M)."""
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        minors = (e * i - f * h) + (a * i - c * g) + (a * e - b * d)
        return CubicPoly(c0=-self.det(), c1=minors, c2=-self.trace())

    def apply(self, vec):
        return tuple(sum(self.rows[i][j] * vec[j] for j in range(3)) for i in range(3))

    def __str__(self):
        return "[" + ", ".join(str(list(r)) for r in self.rows) + "]"


def wielandt_exponent(m: IntMatrix3):
    """Smallest k <= 5 with all entries of M^k positive, else None.

    The classical bound (n-1)^2 + 1 makes 5 exhaustive for 3x3 matrices.
    """
    if not m.is_nonnegative():
        raise NegativeEntryError("primitivity is only defined for nonnegative matrices")
    power = m
    for k in range(1, WIELANDT_BOUND + 1):
        if power.is_positive():
            return k
        power = power @ m
    return None


def is_primitive(m: IntMatrix3) -> bool:
    return wielandt_exponent(m) is not None


@dataclass(frozen=True)
class CubicPoly:
    """Monic integer cubic x^3 + c2*x^2 + c1*x + c0."""

    c0: int
    c1: int
    c2: int

    def __call__(self, x):
        return ((x + self.c2) * x + self.c1) * x + self.c0

    def derivative(self, x):
        return (3 * x + 2 * self.c2) * x + self.c1

    def is_irreducible(self) -> bool:
        """No rational root; for a monic integer cubic it suffices to try
        the integer divisors of the constant term."""
        if self.c0 == 0:
            return False
        for d in range(1, abs(self.c0) + 1):
            if abs(self.c0) % d == 0 and (self(d) == 0 or self(-d) == 0):
                return False
        return True

    def real_root(self) -> float:
        """One real root, bracketed by bisection and polished by Newton."""
        bound = 1.0 + max(abs(self.c0), abs(self.c1), abs(self.c2))
        lo, hi = -bound, bound
        flo = self(lo)
        if flo > 0:  # monic cubic: negative at -inf, positive at +inf
            raise AssertionError("bad bracket")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self(mid) <= 0:
                lo = mid
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        for _ in range(8):
            d = self.derivative(x)
            if d == 0:
                break
            x -= self(x) / d
        return x

    def roots(self):
        """All three roots: the bracketed real root plus the deflated
        quadratic's pair (real or complex conjugate)."""
        r = self.real_root()
        # synthetic division by (x - r)
        p = 1.0
        q = self.c2 + r
        s = self.c1 + r * q
        disc = q * q - 4.0 * s
        sq = cmath.sqrt(disc)
        z1 = (-q + sq) / (2.0 * p)
        z2 = (-q - sq) / (2.0 * p)
        roots = [complex(r, 0.0), z1, z2]
        polished = []
        for z in roots:
            for _ in range(4):
                d = self.derivative(z)
                if abs(d) < 1e-14:
                    break
                z = z - self(z) / d
            polished.append(z)
        return tuple(polished)

    def __str__(self):
        parts = ["x^3"]
        for coeff, power in ((self.c2, "x^2"), (self.c1, "x"), (self.c0, "")):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if power and mag == 1:
                parts.append(f"{sign} {power}")
            elif power:
                parts.append(f"{sign} {mag}*{power}")
            else:
                parts.append(f"{sign} {mag}")
        return " ".join(parts)


# --- the cubic number field Q(lambda) --------------------------------------

def _poly_trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(a, b):
    """Quotient and remainder of Fraction-coefficient polynomials
    (ascending coefficient lists)."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coeff = a[i + len(b) - 1] * inv_lead
        q[i] = coeff
        for j, bj in enumerate(b):
            a[i + j] -= coeff * bj
    return _poly_trim(q), _poly_trim(a)


def _poly_ext_gcd(a, b):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = list(a), list(b)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]

    def sub_scaled(x, y, q):
        out = list(x) + [Fraction(0)] * max(0, len(y) + len(q) - 1 - len(x))
        for i, qi in enumerate(q):
            for j, yj in enumerate(y):
                out[i + j] -= qi * yj
        return _poly_trim(out)

    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub_scaled(u0, u1, q)
        v0, v1 = v1, sub_scaled(v0, v1, q)
    return r0, u0, v0


class CubicField:
    """Q(lambda) for a fixed monic cubic; elements are q0 + q1*lam + q2*lam^2."""

    def __init__(self, modulus: CubicPoly):
        self.modulus = modulus

    def element(self, q0=0, q1=0, q2=0) -> "FieldElement":
        return FieldElement(self, (Fraction(q0), Fraction(q1), Fraction(q2)))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    @property
    def lam(self):
        return self.element(0, 1)

    def __eq__(self, other):
        return isinstance(other, CubicField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"CubicField({self.modulus})"

    def _reduce(self, coeffs):
        """Reduce an ascending coefficient list modulo the cubic."""
        c0, c1, c2 = self.modulus.c0, self.modulus.c1, self.modulus.c2
        coeffs = list(coeffs) + [Fraction(0)] * max(0, 3 - len(coeffs))
        while len(coeffs) > 3:
            top = coeffs.pop()
            if top:
                d = len(coeffs)
                coeffs[d - 1] -= c2 * top
                coeffs[d - 2] -= c1 * top
                coeffs[d - 3] -= c0 * top
        return tuple(coeffs[:3])


@dataclass(frozen=True)
class FieldElement:
    field: CubicField
    coeffs: tuple[Fraction, Fraction, Fraction]

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * 5
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return FieldElement(self.field, self.field._reduce(prod))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def inverse(self) -> "FieldElement":
        """Extended Euclid against the modulus; exact."""
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero field element")
        mod = [Fraction(self.field.modulus.c0), Fraction(self.field.modulus.c1),
               Fraction(self.field.modulus.c2), Fraction(1)]
        g, u, _ = _poly_ext_gcd(_poly_trim(list(self.coeffs)), mod)
        if len(g) != 1:
            raise ZeroDivisionError("element shares a factor with a reducible modulus")
        scale = 1 / g[0]
        u = [c * scale for c in u]
        return FieldElement(self.field, self.field._reduce(u))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        raise TypeError(f"cannot coerce {type(other).__name__} into {self.field!r}")

    def embed(self, root):
        """Numeric value q0 + q1*r + q2*r^2 at a chosen root of the modulus."""
        q0, q1, q2 = self.coeffs
        return q0 + q1 * root + q2 * root * root

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        names = ("", "lam", "lam^2")
        parts = []
        for coeff, name in zip(self.coeffs, names):
            if coeff == 0:
                continue
            if not name:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}*{name}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"<{self} mod {self.field.modulus}>"


# --- Pisot verification -----------------------------------------------------

@dataclass(frozen=True)
class PisotData:
    """Everything the geometric construction needs from the matrix."""

    matrix: IntMatrix3
    charpoly: CubicPoly
    lam: float
    conjugates: tuple[complex, complex]
    field: CubicField
    left_eigenvector: tuple[FieldElement, ...]   # tile lengths, length(a) = 1
    right_eigenvector: tuple[FieldElement, ...]  # letter frequencies, sum = 1
    wielandt: int

    @property
    def tile_lengths_float(self) -> tuple[float, ...]:
        return tuple(float(e.embed(self.lam)) for e in self.left_eigenvector)

    @property
    def frequencies_float(self) -> tuple[float, ...]:
        return tuple(float(e.embed(self.lam)) for e in self.right_eigenvector)

    @property
    def conjugate_moduli(self) -> tuple[float, float]:
        return tuple(abs(z) for z in self.conjugates)


def _field_matrix(m: IntMatrix3, field: CubicField):
    """M - lam*I with entries in Q(lam)."""
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            e = field.element(m.rows[i][j])
            if i == j:
                e = e - field.lam
            row.append(e)
        rows.append(tuple(row))
    return tuple(rows)


def _nonzero_line(lines):
    for line in lines:
        if any(not e.is_zero() for e in line):
            return line
    raise AssertionError("adjugate of a rank-2 matrix cannot vanish")


def pisot_check(m: IntMatrix3) -> PisotData:
    """Verify primitive + unimodular + irreducible + Pisot and build the
    exact eigen data.  Raises the named error for the first failed check."""
    k = wielandt_exponent(m)
    if k is None:
        raise NotPrimitiveError("no power up to 5 is entrywise positive")
    if not m.is_unimodular():
        raise NotUnimodularError(f"determinant {m.det()} is not ±1")
    poly = m.char_poly()
    if not poly.is_irreducible():
        raise NotIrreducibleError(f"{poly} has a rational root")
    roots = poly.roots()
    lam_c = max(roots, key=lambda z: z.real)
    if abs(lam_c.imag) > PISOT_MARGIN or lam_c.real <= 1.0:
        raise NotPisotError("leading root is not a real number > 1")
    lam = lam_c.real
    conjugates = tuple(sorted((z for z in roots if z is not lam_c),
                              key=lambda z: z.imag))
    if any(abs(z) >= 1.0 - PISOT_MARGIN for z in conjugates):
        raise NotPisotError("a Galois conjugate has modulus >= 1")

    field = CubicField(poly)
    shifted = _field_matrix(m, field)
    adj = _adj3(shifted)
    right = _nonzero_line(tuple(tuple(adj[i][j] for i in range(3)) for j in range(3)))
    left = _nonzero_line(adj)

    left_norm = tuple(e / left[0] for e in left)
    total = right[0] + right[1] + right[2]
    right_norm = tuple(e / total for e in right)

    _assert_eigen(m, field, left_norm, right_norm)
    return PisotData(
        matrix=m,
        charpoly=poly,
        lam=lam,
        conjugates=conjugates,
        field=field,
        left_eigenvector=left_norm,
        right_eigenvector=right_norm,
        wielandt=k,
    )


def _assert_eigen(m, field, left, right):
    """Residuals lM - lam*l and Mv - lam*v must vanish exactly in Q(lam)."""
    lam = field.lam
    for j in range(3):
        acc = field.zero
        for i in range(3):
            acc = acc + left[i] * m.rows[i][j]
        if not (acc - lam * left[j]).is_zero():
            raise AssertionError("left eigenvector residual is nonzero")
    for i in range(3):
        acc = field.zero
        for j in range(3):
            acc = acc + right[j] * m.rows[i][j]
        if not (acc - lam * right[i]).is_zero():
            raise AssertionError("right eigenvector residual is nonzero")


def tile_lengths(pd: PisotData) -> tuple[FieldElement, ...]:
    """Left eigenvector normalised so tile a has length one."""
    return pd.left_eigenvector
