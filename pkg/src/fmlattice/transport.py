"""Lifting and descending lattice isometries along canonical covers.

The derived-category statements become exact matrix equations here: a
transform between two surfaces is represented by the isometry it induces
on extended Mukai lattices, a cyclic group action by the lattice action
of its generator, and "commutes up to isomorphism of functors" collapses
to equality of matrices, because a lattice map has no automorphisms to
twist by.  That collapse is the central modeling choice of the package.

Three solvers live here.

check_equivariant finds the group automorphism mu (as exponents) with
g* o phi = phi o mu(g)* whenever one exists.

descend_isometry takes an isometry of cover lattices and produces the
unique candidate on base lattices pinned down by the pushforward square;
the candidate is accepted only if it is integral, satisfies both squares
exactly, and preserves the Mukai pairing.  Failures carry a witness (the
forced image of a pushforward vector that has no integral preimage).

lift_isometry solves the two commuting squares for an isometry of cover
lattices.  When the linear system determines the lift uniquely (always
the case when the covers' Num ranks equal their bases', as for every
built-in cover) the result is a list with zero or one verified entries.
An empty list does not contradict the sheaf-level lifting theorem; it
refutes the input being the cohomological action of an actual transform
compatible with the given transfers.  When the system is underdetermined
a LiftFamily descriptor is returned instead of an arbitrary
representative, since the leftover freedom is exactly composition with
deck transformations and should be visible to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .covers import CoverTransfer
from .lattice import DimensionError, Matrix, det, inverse, solve_affine
from .surfaces import NumericalSurface


@dataclass(frozen=True)
class GActionLattice:
    """The extended-lattice action of a generator of a cyclic group.

    The matrix must have the stated finite order, preserve the Mukai
    pairing and map the integral extended lattice into itself.
    """

    surface: NumericalSurface
    order: int
    gen: Matrix

    def __post_init__(self):
        if self.surface.canonical_order != 1:
            raise ValueError(
                f"group actions live on covers; {self.surface.name} has nontrivial canonical order")
        if self.order < 1:
            raise ValueError("order must be a positive integer")
        d = self.surface.extended_dim()
        if not (self.gen.is_square and self.gen.nrows == d):
            raise DimensionError(f"generator must be {d}x{d} for {self.surface.name}")
        if not self.gen.is_integral:
            raise ValueError("generator must map the integral extended lattice to itself")
        if self.gen.power(self.order) != Matrix.identity(d):
            raise ValueError(f"generator does not have order dividing {self.order}")
        m = self.surface.mukai_gram()
        if self.gen.T @ m @ self.gen != m:
            raise ValueError("generator does not preserve the Mukai pairing")

    def powers(self) -> list:
        result = [Matrix.identity(self.gen.nrows)]
        for _ in range(self.order - 1):
            result.append(result[-1] @ self.gen)
        return result


@dataclass(frozen=True)
class LatticeIsometry:
    """A pairing-preserving integral map between extended Mukai lattices."""

    source: NumericalSurface
    target: NumericalSurface
    mat: Matrix

    def __post_init__(self):
        ds, dt = self.source.extended_dim(), self.target.extended_dim()
        if ds != dt:
            raise DimensionError("source and target extended lattices must have equal rank")
        if (self.mat.nrows, self.mat.ncols) != (dt, ds):
            raise DimensionError("matrix shape does not match the extended lattices")
        if not self.mat.is_integral:
            raise ValueError("isometry must map integral classes to integral classes")
        if self.mat.T @ self.target.mukai_gram() @ self.mat != self.source.mukai_gram():
            raise ValueError("map does not preserve the Mukai pairings")


def identity_isometry(surface: NumericalSurface) -> LatticeIsometry:
    return LatticeIsometry(surface, surface, Matrix.identity(surface.extended_dim()))


def minus_one(surface: NumericalSurface) -> LatticeIsometry:
    return LatticeIsometry(surface, surface, -Matrix.identity(surface.extended_dim()))


def num_negation(surface: NumericalSurface) -> LatticeIsometry:
    """-1 on the divisor lattice, +1 on H^0 and H^4."""
    d = surface.dim
    diag = [1] + [-1] * d + [1]
    return LatticeIsometry(surface, surface, Matrix.diagonal(diag))


def tensor_twist(surface: NumericalSurface, divisor) -> LatticeIsometry:
    """Multiplication by exp(l) for a divisor class l, the lattice action of
    tensoring with a line bundle: (r, c, s) -> (r, c + r l, s + c.l + r l^2/2).

    Integral only when l^2 is even, which holds on every even lattice.
    """
    ell = tuple(int(x) for x in divisor)
    if len(ell) != surface.dim:
        raise DimensionError(f"divisor does not live on {surface.name}")
    g_ell = surface.num.gram.apply(ell)
    half_sq = Fraction(sum(a * b for a, b in zip(ell, g_ell)), 2)
    d = surface.dim
    rows = [[0] * (d + 2) for _ in range(d + 2)]
    rows[0][0] = 1
    for i in range(d):
        rows[1 + i][0] = ell[i]
        rows[1 + i][1 + i] = 1
    rows[d + 1][0] = half_sq
    for j in range(d):
        rows[d + 1][1 + j] = g_ell[j]
    rows[d + 1][d + 1] = 1
    return LatticeIsometry(surface, surface, Matrix(rows))


def check_order_compatibility(sx: NumericalSurface, sy: NumericalSurface) -> bool:
    """Surfaces related by a transform must have equal canonical orders."""
    return sx.canonical_order == sy.canonical_order


def check_equivariant(phi: LatticeIsometry, a_y: GActionLattice,
                      a_x: GActionLattice):
    """Exponents of the group automorphism mu with g* o phi = phi o mu(g)*.

    Returns the list [mu(g^0), .., mu(g^{n-1})] as exponents when an
    automorphism satisfying every equation exists, None otherwise.  When
    several exponents work (actions that are not faithful on the lattice)
    the identity automorphism is preferred.
    """
    if a_y.order != a_x.order:
        raise ValueError(
            f"group orders differ: {a_y.order} vs {a_x.order}")
    if phi.source != a_y.surface or phi.target != a_x.surface:
        raise ValueError("isometry does not connect the two action lattices")
    n = a_y.order
    if n == 1:
        return [0]
    pows_y = a_y.powers()
    lhs = a_x.gen @ phi.mat
    units = [k for k in range(1, n) if gcd(k, n) == 1]
    candidates = [k for k in units if lhs == phi.mat @ pows_y[k]]
    if not candidates:
        return None
    k = 1 if 1 in candidates else candidates[0]
    pows_x = a_x.powers()
    exponents = [(j * k) % n for j in range(n)]
    # the generator equation iterates to all of G; verify anyway
    for j in range(n):
        if pows_x[j] @ phi.mat != phi.mat @ pows_y[exponents[j]]:
            return None
    return exponents


@dataclass(frozen=True)
class DescentOutcome:
    """Result of descend_isometry: the isometry, or a named failure.

    witness, when present, is a pair (source_vector, image_vector) of
    integral extended vectors: the pushforward square forces the base map
    to send the first to the second, and no integral map can.
    """

    isometry: LatticeIsometry | None
    failure: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.isometry is not None


def _descent_witness(t_y: CoverTransfer, t_x: CoverTransfer,
                     phi_t: LatticeIsometry, candidate: Matrix):
    push_y = t_y.push_extended()
    forced = t_x.push_extended() @ phi_t.mat
    bad_col = next(j for j in range(candidate.ncols)
                   if not all(isinstance(x, int) for x in candidate.column(j)))
    for i in range(push_y.ncols):
        src = push_y.column(i)
        if src[bad_col]:
            return tuple(src), tuple(forced.column(i))
    return None


def descend_isometry(phi_t: LatticeIsometry, t_y: CoverTransfer,
                     t_x: CoverTransfer) -> DescentOutcome:
    """Descend an isometry of cover lattices to the base lattices.

    The pushforward square phi o push_Y = push_X o phi_t determines phi
    uniquely over Q (pushforward is surjective there); the candidate is
    returned only when it is integral and both squares hold exactly.
    """
    if t_y.degree != t_x.degree:
        raise ValueError(f"cover degrees differ: {t_y.degree} vs {t_x.degree}")
    if phi_t.source != t_y.cover or phi_t.target != t_x.cover:
        raise ValueError("isometry does not connect the two cover lattices")
    n = t_y.degree
    push_y, push_x = t_y.push_extended(), t_x.push_extended()
    pull_y, pull_x = t_y.pull_extended(), t_x.pull_extended()
    candidate = (push_x @ phi_t.mat @ pull_y).scale(Fraction(1, n))
    if not candidate.is_integral:
        witness = _descent_witness(t_y, t_x, phi_t, candidate)
        return DescentOutcome(None, "no integral solution", witness)
    if candidate @ push_y != push_x @ phi_t.mat:
        return DescentOutcome(None, "pushforward square has no solution")
    if pull_x @ candidate != phi_t.mat @ pull_y:
        return DescentOutcome(None, "pullback square fails")
    iso = LatticeIsometry(t_y.base, t_x.base, candidate)
    return DescentOutcome(iso)


@dataclass(frozen=True)
class LiftFamily:
    """Affine family of rational solutions of the two lifting squares.

    Returned when the linear system is underdetermined (possible only
    when both covers have strictly larger Num rank than their bases).
    Members are particular + sum t_i * directions[i]; integrality and
    pairing preservation cut out the actual lifts and are left to the
    caller, being nonlinear constraints.
    """

    particular: Matrix
    directions: tuple


def _solve_two_squares(phi: Matrix, pull_y: Matrix, pull_x: Matrix,
                       push_y: Matrix, push_x: Matrix):
    """Solve M @ pull_y = pull_x @ phi and push_x @ M = phi @ push_y for M."""
    nrows, ncols = pull_x.nrows, pull_y.nrows
    rhs_a = pull_x @ phi
    rhs_b = phi @ push_y
    rows = []
    rhs = []
    for i in range(nrows):
        for jj in range(pull_y.ncols):
            row = [0] * (nrows * ncols)
            for j in range(ncols):
                row[i * ncols + j] = pull_y[j, jj]
            rows.append(row)
            rhs.append(rhs_a[i, jj])
    for ii in range(push_x.nrows):
        for j in range(ncols):
            row = [0] * (nrows * ncols)
            for k in range(nrows):
                row[k * ncols + j] = push_x[ii, k]
            rows.append(row)
            rhs.append(rhs_b[ii, j])
    solved = solve_affine(Matrix(rows), tuple(rhs))
    if solved is None:
        return None
    x0, kernel = solved
    reshape = lambda flat: Matrix([list(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)])
    return reshape(x0), [reshape(k) for k in kernel]


def lift_isometry(phi: LatticeIsometry, t_y: CoverTransfer, t_x: CoverTransfer):
    """All integral pairing-preserving lifts of a base isometry, or a
    LiftFamily when the two squares leave rational freedom."""
    if t_y.degree != t_x.degree:
        raise ValueError(f"cover degrees differ: {t_y.degree} vs {t_x.degree}")
    if phi.source != t_y.base or phi.target != t_x.base:
        raise ValueError("isometry does not connect the two base lattices")
    pull_y, pull_x = t_y.pull_extended(), t_x.pull_extended()
    push_y, push_x = t_y.push_extended(), t_x.push_extended()

    if pull_y.is_square and det(pull_y) != 0:
        # pullback has finite-index image: the first square pins the lift
        candidate = pull_x @ phi.mat @ inverse(pull_y)
        directions = []
    else:
        solved = _solve_two_squares(phi.mat, pull_y, pull_x, push_y, push_x)
        if solved is None:
            return []
        candidate, directions = solved
        if directions:
            return LiftFamily(candidate, tuple(directions))

    if candidate @ pull_y != pull_x @ phi.mat:
        return []
    if push_x @ candidate != phi.mat @ push_y:
        return []
    if not candidate.is_integral:
        return []
    m_src = t_y.cover.mukai_gram()
    m_tgt = t_x.cover.mukai_gram()
    if candidate.T @ m_tgt @ candidate != m_src:
        return []
    return [LatticeIsometry(t_y.cover, t_x.cover, candidate)]
