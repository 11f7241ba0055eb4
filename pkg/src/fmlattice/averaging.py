"""Constructive averaging for cyclic group actions on rational vector spaces.

For a representation of Z_n with generator matrix g, put

    N = 1 + g + g^2 + .. + g^(n-1)      (the norm operator)
    B = 1 - g                            (the difference operator)

Then N B = B N = 0 and, over a field of characteristic zero, the kernel
of N equals the image of B.  That identity is the engine behind descent
of invariant morphisms: if B s lies in a g-stable subspace V, some k in V
has B k = B s, and t = s - k is an invariant representative of s modulo
V.  descend_invariant computes such a t constructively.

Everything is done over the exact rationals.  The kernel/image identity
for a matrix with rational entries is independent of the field extension,
and complex-only irreducibles (scalar action by a primitive root of
unity) are realized here as rational blocks: companion matrices of
cyclotomic polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import (
    DimensionError,
    Matrix,
    _exact,
    block_diagonal,
    hstack,
    kernel_basis,
    rank,
    solve_rational,
)
from .surfaces import InvariantError


@dataclass(frozen=True)
class CyclicRep:
    """A rational representation of Z_order of the given dimension."""

    order: int
    dim: int
    gen: Matrix

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be a positive integer")
        if not (self.gen.is_square and self.gen.nrows == self.dim):
            raise DimensionError("generator must be a square matrix of the stated dimension")
        if self.gen.power(self.order) != Matrix.identity(self.dim):
            raise ValueError(f"generator does not satisfy g^{self.order} = 1")


def norm_operator(rep: CyclicRep) -> Matrix:
    """Sum of all powers of the generator."""
    total = Matrix.identity(rep.dim)
    current = Matrix.identity(rep.dim)
    for _ in range(rep.order - 1):
        current = current @ rep.gen
        total = total + current
    return total


def difference_operator(rep: CyclicRep) -> Matrix:
    """Identity minus the generator."""
    return Matrix.identity(rep.dim) - rep.gen


@dataclass(frozen=True)
class KerImReport:
    holds: bool
    dim_ker_norm: int
    rank_difference: int


def verify_ker_im(rep: CyclicRep) -> KerImReport:
    """Check ker(norm) = im(difference) by explicit subspace comparison.

    N B = B N = 0 is asserted (it is an identity, so a failure means a
    corrupted representation); the subspace equality is decided by rank
    arithmetic plus explicit membership of a kernel basis in the column
    space of B.
    """
    n_op = norm_operator(rep)
    b_op = difference_operator(rep)
    zero = Matrix.zero(rep.dim, rep.dim)
    if n_op @ b_op != zero or b_op @ n_op != zero:
        raise InvariantError("norm and difference operators fail to annihilate each other")
    ker = kernel_basis(n_op)
    rank_b = rank(b_op)
    holds = len(ker) == rank_b
    if holds and ker:
        # columns of B already land in ker(norm); the reverse containment
        # is the explicit part: adjoining the kernel basis must not grow
        # the column space of B
        scaled = []
        for v in ker:
            lcm = 1
            for x in v:
                if isinstance(x, Fraction):
                    lcm = lcm * x.denominator // _igcd(lcm, x.denominator)
            scaled.append([int(x * lcm) for x in v])
        stacked = hstack(b_op, Matrix(scaled).T)
        holds = rank(stacked) == rank_b
    return KerImReport(holds, len(ker), rank_b)


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def descend_invariant(rep: CyclicRep, subspace, s) -> tuple:
    """An invariant representative of s modulo a g-stable subspace.

    subspace is given by spanning vectors.  Preconditions checked: the
    span is stable under the generator, and B s lies in it.  The result t
    satisfies B t = 0 and t - s in span(subspace).
    """
    vecs = [tuple(Fraction(x) for x in v) for v in subspace]
    if any(len(v) != rep.dim for v in vecs):
        raise DimensionError("subspace vectors must have the representation's dimension")
    if len(s) != rep.dim:
        raise DimensionError("vector must have the representation's dimension")
    s = tuple(Fraction(x) for x in s)
    b_op = difference_operator(rep)
    if not vecs:
        bs = b_op.apply(s)
        if any(bs):
            raise ValueError("B s does not lie in the subspace")
        return s
    span = Matrix.from_columns(vecs)
    for v in vecs:
        if solve_rational(span, rep.gen.apply(v)) is None:
            raise ValueError("subspace is not stable under the group generator")
    bs = b_op.apply(s)
    if solve_rational(span, bs) is None:
        raise ValueError("B s does not lie in the subspace")
    # Bs is in the subspace and killed by the norm, hence in B(subspace)
    coeffs = solve_rational(b_op @ span, bs)
    if coeffs is None:
        raise InvariantError("no subspace element maps to B s under B")
    k = span.apply(coeffs)
    t = tuple(_exact(a - b) for a, b in zip(s, k))
    if any(b_op.apply(t)):
        raise InvariantError("descended vector is not invariant")
    return t


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    # x^n - 1 divided by the cyclotomic polynomials of the proper divisors
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(_cyclotomic(d)))
    return tuple(poly)


def _polydiv_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coeff = num[k + len(den) - 1] // den[-1]
        out[k] = coeff
        for i, d in enumerate(den):
            num[k + i] -= coeff * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _companion(poly) -> Matrix:
    deg = len(poly) - 1
    rows = [[0] * deg for _ in range(deg)]
    for i in range(1, deg):
        rows[i][i - 1] = 1
    for i in range(deg):
        rows[i][deg - 1] = -poly[i]
    return Matrix(rows)


def _cycle_matrix(k: int) -> Matrix:
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        rows[(i + 1) % k][i] = 1
    return Matrix(rows)


def random_rep(rng: random.Random, max_order: int = 12, max_dim: int = 20) -> CyclicRep:
    """A random rational representation of a cyclic group, for test suites.

    Block-diagonal pieces (trivial lines, permutation cycles, cyclotomic
    companion blocks) are conjugated by a random integer change of basis:
    unimodular most of the time, giving integer matrices, and merely
    invertible otherwise, giving genuinely rational ones.
    """
    order = rng.randint(1, max_order)
    dim = rng.randint(1, max_dim)
    divisors = [k for k in range(1, order + 1) if order % k == 0]
    blocks = []
    filled = 0
    while filled < dim:
        remaining = dim - filled
        options = [Matrix([[1]])]
        for k in divisors:
            if 1 < k <= remaining:
                options.append(_cycle_matrix(k))
            deg = len(_cyclotomic(k)) - 1
            if 1 < k and deg <= remaining:
                options.append(_companion(_cyclotomic(k)))
        block = rng.choice(options)
        blocks.append(block)
        filled += block.nrows
    gen = block_diagonal(blocks)
    basis, basis_inv = _random_basis_pair(rng, dim, unimodular=rng.random() < 0.75)
    gen = basis @ gen @ basis_inv
    return CyclicRep(order, dim, gen)


def _random_basis_pair(rng: random.Random, n: int, unimodular: bool):
    """A random invertible integer matrix together with its exact inverse.

    The inverse is maintained through the same elementary operations, so
    no elimination is ever run.
    """
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.choice([-2, -1, 1, 2])
        rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
        for row in inv:  # right-multiply by the inverse operation
            row[j] -= q * row[i]
    if not unimodular and n > 1:
        i = rng.randrange(n)
        k = rng.choice([2, 3])
        rows[i] = [x * k for x in rows[i]]
        scale = Fraction(1, k)
        for row in inv:
            row[i] *= scale
    return Matrix(rows), Matrix(inv)
