# Euler pairings on surfaces with numerically trivial canonical class.
#
# A surface enters the calculus as (intersection lattice, chi(O),
# canonical order).  With the canonical class numerically trivial,
# Riemann-Roch collapses to
#
#     chi(E, F) = r_E r_F chi(O) + r_E ch2_F + r_F ch2_E - c_E . c_F
#
# and every pairing below is an exact integer.

from fmlattice import (
    BilinearForm,
    NumericalSurface,
    euler_pairing,
    moduli_dim_expectation,
    mukai_pairing,
    mukai_vector,
)

# A principally polarised abelian surface, sliced to the rank-1 lattice
# spanned by the polarisation l with l^2 = 2.
abelian = NumericalSurface("abelian_ppav", BilinearForm.from_rows([[2]]), chi_o=0,
                           canonical_order=1)

point = abelian.point_class()
print("chi(O_y, O_y) =", euler_pairing(abelian, point, point))

# The rank-4 class (4, 2l, 1).  Its self-pairing vanishes and the
# expected moduli dimension is 2: a fine two-dimensional moduli space.
e = abelian.character(4, (2,), 1)
print("chi(e, e)     =", euler_pairing(abelian, e, e))
print("moduli dim    =", moduli_dim_expectation(abelian, e))
print("chi(O, e)     =", euler_pairing(abelian, abelian.structure_class(), e))

# On a K3 slice chi(O) = 2; ideal sheaves of points have class (1,0,-1)
# and again sweep out a two-dimensional family (the surface itself).
k3 = NumericalSurface("k3", BilinearForm.from_rows([[4]]), chi_o=2, canonical_order=1)
ideal = k3.character(1, (0,), -1)
print()
print("K3: chi(I_x, I_x) =", euler_pairing(k3, ideal, ideal))
print("K3: moduli dim of (1,0,-1) =", moduli_dim_expectation(k3, ideal))
print("K3: moduli dim of O =", moduli_dim_expectation(k3, k3.structure_class()))

# Mukai vectors twist by sqrt(td): v = (r, c, ch2 + r chi(O)/2), and the
# Mukai pairing is minus the Euler pairing.
v = mukai_vector(k3, k3.structure_class())
print()
print("v(O_K3) =", (v.r, v.c, str(v.s)))
print("<v(O), v(O)> =", mukai_pairing(k3, v, v), "= -chi(O, O) =",
      -euler_pairing(k3, k3.structure_class(), k3.structure_class()))

# On an Enriques slice chi(O) = 1, so Mukai vectors of odd rank are
# honestly half-integral; the lattice stores exact rationals throughout.
enriques = NumericalSurface("enriques", BilinearForm.from_rows([[2]]), chi_o=1,
                            canonical_order=2)
w = mukai_vector(enriques, enriques.structure_class())
print("v(O_Enriques) =", (w.r, w.c, str(w.s)))
