# The gcd certificate for descent along a canonical cover.
#
# A moduli-type transform on the cover descends to the quotient exactly
# when the induced cyclic action on the moduli space is free, and
# freeness is equivalent to a gcd of Euler pairings being 1.  Euler
# pairings are linear in the test class, so a finite generating set of
# the base lattice certifies the gcd over everything.

from fmlattice import builtin_catalog, divisibility_obstruction, freeness_gcd

catalog = builtin_catalog()

# The rank-4 class (4, 2l, 1) on the product of elliptic curves descends
# to every bielliptic quotient: already chi(O, push e) = 1.
e = catalog.vectors["v_4_2l_1"].chern
print("rank-4 class (4,2l,1):")
for n in (2, 3, 4, 6):
    t = catalog.covers[f"bielliptic_cover_{n}"]
    cert = freeness_gcd(t, e)
    values = ", ".join(f"{label}={value}" for label, value in cert.values)
    print(f"  n={n}: {values}; gcd={cert.gcd}, free={cert.free}")

# The fibre of the classical Poincare kernel is a degree-zero line
# bundle.  It is fixed by the whole deck group, and the certificate sees
# that: every chi value is divisible by n, so the gcd is n, never 1.
poincare = catalog.vectors["poincare"].chern
print()
print("degree-zero line bundle (1,0,0):")
for n in (2, 3, 4, 6):
    t = catalog.covers[f"bielliptic_cover_{n}"]
    cert = freeness_gcd(t, poincare)
    values = ", ".join(f"{label}={value}" for label, value in cert.values)
    print(f"  n={n}: {values}; gcd={cert.gcd}, free={cert.free}")

# The converse obstruction: when the length-m orbit of a class sums to
# the pullback of an integral class, n/m divides every chi value.
t = catalog.covers["bielliptic_cover_2"]
print()
report = divisibility_obstruction(t, poincare, 1)
print(f"orbit length 1 of (1,0,0): applicable={report.applicable}, "
      f"divisor={report.divisor}, all_divisible={report.all_divisible}")

# For the free rank-4 class the orbit sum is not an integral pullback,
# so the obstruction has nothing to say -- consistent with gcd = 1.
report = divisibility_obstruction(t, e, 1)
print(f"orbit length 1 of (4,2l,1): applicable={report.applicable} "
      f"({report.reason})")
