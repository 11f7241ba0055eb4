"""Numerical model of a smooth projective surface with torsion canonical class.

A surface enters the calculus only through numerical data: the
intersection form on its divisor lattice modulo torsion, the holomorphic
Euler characteristic chi(O), and the order of the canonical bundle in the
Picard group.  The canonical class is required to be numerically trivial
(true whenever it is torsion), which is exactly what removes the c1.K
term from Riemann-Roch and keeps every Euler pairing an exact integer
computation:

    chi(E, F) = r_E r_F chi(O) + r_E ch2_F + r_F ch2_E - c_E . c_F

Mukai vectors are the sqrt(td)-twisted Chern characters
(r, c, ch2 + r chi(O)/2); their pairing satisfies <v(E), v(F)> = -chi(E, F).
On a surface with odd chi(O) the twist is half-integral, which is why the
degree-4 component is stored as an exact rational throughout.

The "special" condition (invariance of a sheaf under twisting by the
canonical bundle) is numerically invisible here: a numerically trivial
twist never changes a Chern character, so the model treats it as always
satisfied and the sheaf-level content stays out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import BilinearForm, DimensionError, Matrix, as_rational


class InvariantError(ValueError):
    """A value violates one of the model's structural invariants."""


def _coerce_class_fields(obj, last_field):
    object.__setattr__(obj, "r", int(obj.r))
    object.__setattr__(obj, "c", tuple(int(x) for x in obj.c))
    object.__setattr__(obj, last_field, Fraction(getattr(obj, last_field)))


@dataclass(frozen=True)
class ChernCharacter:
    """The triple (rank, c1, ch2) of a class on a surface.

    ch2 may be half-integral; validity against a particular lattice
    (length of c1, parity of 2 ch2 + c1^2) is checked by
    NumericalSurface.character, the validating constructor.
    """

    r: int
    c: tuple
    ch2: Fraction

    def __post_init__(self):
        _coerce_class_fields(self, "ch2")


@dataclass(frozen=True)
class MukaiVector:
    """A sqrt(td)-twisted Chern character (r, c, ch2 + r chi(O)/2)."""

    r: int
    c: tuple
    s: Fraction

    def __post_init__(self):
        _coerce_class_fields(self, "s")


@dataclass(frozen=True)
class NumericalSurface:
    """Intersection lattice, chi(O) and canonical order of a surface.

    No canonical-class vector is stored: the model only admits surfaces
    whose canonical class is numerically trivial, so there is nothing to
    store.  canonical_order is the order of the canonical bundle in the
    Picard group (1 for K3 and abelian surfaces, 2 for Enriques,
    2, 3, 4 or 6 for bielliptic).
    """

    name: str
    num: BilinearForm
    chi_o: int
    canonical_order: int

    def __post_init__(self):
        if self.canonical_order < 1:
            raise InvariantError("canonical_order must be a positive integer")

    @property
    def dim(self) -> int:
        return self.num.dim

    def character(self, r, c, ch2) -> ChernCharacter:
        """Build a Chern character on this surface, enforcing the lattice
        length of c1 and the parity constraint 2 ch2 + c1^2 even (the
        integrality of c2)."""
        e = ChernCharacter(int(r), tuple(c), as_rational(ch2))
        if len(e.c) != self.dim:
            raise DimensionError(
                f"c1 has length {len(e.c)}, lattice of {self.name} has rank {self.dim}")
        parity = 2 * e.ch2 + self.num.pair(e.c, e.c)
        if parity.denominator != 1 or parity % 2:
            raise InvariantError(
                f"2*ch2 + c1^2 = {parity} must be an even integer on {self.name}")
        return e

    def point_class(self) -> ChernCharacter:
        return self.character(0, (0,) * self.dim, 1)

    def structure_class(self) -> ChernCharacter:
        return self.character(1, (0,) * self.dim, 0)

    def extended_dim(self) -> int:
        return self.dim + 2

    def mukai_gram(self) -> Matrix:
        """Gram matrix of the Mukai pairing on H^0 + Num + H^4 in the
        coordinates (r, c_1..c_d, s)."""
        d = self.dim
        rows = [[0] * (d + 2) for _ in range(d + 2)]
        rows[0][d + 1] = -1
        rows[d + 1][0] = -1
        for i in range(d):
            for j in range(d):
                rows[1 + i][1 + j] = self.num.gram[i, j]
        return Matrix(rows)

    def is_integral_class(self, r, c, s) -> bool:
        """Whether (r, c, s) is the character of an honest integral class:
        integer rank and divisor, and 2s + c^2 an even integer."""
        r = as_rational(r)
        s = as_rational(s)
        if not isinstance(r, int):
            return False
        cc = []
        for x in c:
            x = as_rational(x)
            if not isinstance(x, int):
                return False
            cc.append(x)
        parity = 2 * Fraction(s) + self.num.pair(tuple(cc), tuple(cc))
        return parity.denominator == 1 and parity % 2 == 0


def _rank_div_deg(v):
    # ChernCharacter carries ch2, MukaiVector and ExtendedVector carry s;
    # by construction all three live on the same graded lattice.
    deg = getattr(v, "ch2", None)
    if deg is None:
        deg = v.s
    return v.r, v.c, Fraction(deg)


def euler_pairing(surface: NumericalSurface, e, f) -> int:
    """chi(E, F) by Riemann-Roch on a surface with numerically trivial
    canonical class.  Raises if the result fails to be an integer, which
    can only happen for classes violating the parity invariant."""
    re, ce, se = _rank_div_deg(e)
    rf, cf, sf = _rank_div_deg(f)
    if len(ce) != surface.dim or len(cf) != surface.dim:
        raise DimensionError(f"class does not live on {surface.name}")
    chi = re * rf * surface.chi_o + re * sf + rf * se - surface.num.pair(ce, cf)
    if chi.denominator != 1:
        raise InvariantError(f"chi(E,F) = {chi} is not an integer")
    return int(chi)


def mukai_vector(surface: NumericalSurface, e: ChernCharacter) -> MukaiVector:
    """Twist a Chern character by sqrt(td): (r, c, ch2 + r chi(O)/2)."""
    re, ce, se = _rank_div_deg(e)
    if len(ce) != surface.dim:
        raise DimensionError(f"class does not live on {surface.name}")
    return MukaiVector(re, ce, se + Fraction(re * surface.chi_o, 2))


def mukai_pairing(surface: NumericalSurface, v, w):
    """<v, w> = c_v . c_w - r_v s_w - r_w s_v; satisfies
    <v(E), v(F)> = -chi(E, F)."""
    rv, cv, sv = _rank_div_deg(v)
    rw, cw, sw = _rank_div_deg(w)
    if len(cv) != surface.dim or len(cw) != surface.dim:
        raise DimensionError(f"class does not live on {surface.name}")
    value = surface.num.pair(cv, cw) - rv * sw - rw * sv
    return int(value) if value.denominator == 1 else value


def moduli_dim_expectation(surface: NumericalSurface, e) -> int:
    """Expected dimension 2 - chi(E, E) = <v, v> + 2 of a moduli space of
    sheaves with class e."""
    return 2 - euler_pairing(surface, e, e)
