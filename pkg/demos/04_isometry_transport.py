# Lifting and descending lattice isometries along canonical covers.
#
# The cohomological action of a transform between quotient surfaces and
# the action of its equivariant lift are related by two commuting
# squares with pullback and pushforward.  On lattices those squares are
# exact matrix equations, solvable by elimination; integrality is the
# honest obstruction.

from fmlattice import (
    LatticeIsometry,
    Matrix,
    builtin_catalog,
    check_equivariant,
    descend_isometry,
    identity_isometry,
    lift_isometry,
    num_negation,
    tensor_twist,
)

catalog = builtin_catalog()
t = catalog.covers["bielliptic_cover_2"]
product = catalog.surfaces["product_elliptic"]

# Negation on the divisor lattice descends: both squares close up over
# the integers and the descended map is again negation on Num.
outcome = descend_isometry(num_negation(product), t, t)
print("descend (-1 on Num):", outcome.isometry.mat)

# The fibre swap f1 <-> f2 preserves the Mukai pairing but cannot
# descend: the pushforward square forces the image of 2a to be b, and no
# integral map halves a lattice vector.
swap = LatticeIsometry(product, product, Matrix(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
outcome = descend_isometry(swap, t, t)
print("descend (f1 <-> f2):", outcome.failure, "witness:", outcome.witness)

# Lifting goes the other way.  Line-bundle twists on the base lift to
# line-bundle twists upstairs, and the lift/descend round trip is exact.
phi = tensor_twist(t.base, (0, 1))
lifts = lift_isometry(phi, t, t)
print()
print("lift of twist by b:", lifts[0].mat)
back = descend_isometry(lifts[0], t, t)
print("round trip equals the original:", back.isometry.mat == phi.mat)

# Some base isometries have no lift at all; an empty answer refutes the
# input being the lattice shadow of an actual transform compatible with
# these transfer matrices.
d = t.base.dim
rs_swap_rows = [[0] * (d + 2) for _ in range(d + 2)]
rs_swap_rows[0][d + 1] = 1
rs_swap_rows[d + 1][0] = 1
for i in range(d):
    rs_swap_rows[1 + i][1 + i] = -1
rs_swap = LatticeIsometry(t.base, t.base, Matrix(rs_swap_rows))
print("lifts of the rank/degree swap:", lift_isometry(rs_swap, t, t))

# Equivariance: which group automorphism intertwines an isometry with
# the two deck actions?  For the identity between two copies of the
# swap action the answer is the identity automorphism of Z_2.
swap_action = catalog.actions["swap"]
mu = check_equivariant(identity_isometry(product), swap_action, swap_action)
print()
print("equivariance exponents:", mu)
