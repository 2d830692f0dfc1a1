"""
Fusion rings: validation, dimensions, and the hypergroup basis
==============================================================

A fusion ring is described by integer structure constants N^c_{ab}
together with a unit and a duality involution.  From these we compute
Frobenius-Perron dimensions and the renormalized hypergroup coefficients
M^c_{ab} = (d_c / d_a d_b) N^c_{ab}, whose rows sum to one.
"""

import numpy as np

from tensorcat import (catalog_category, deligne_product, fp_dimensions,
                       hypergroup_coeffs, opposite_ring, validate_fusion_ring)

fib = catalog_category("fibonacci").ring
print("Fibonacci ring violations:", validate_fusion_ring(fib))

dims = fp_dimensions(fib)
print("dims:", dims.dims, " global dim:", dims.global_dim)

M = hypergroup_coeffs(fib, dims).M
print("hypergroup M^c_{tt}:", M[1, 1, :], " (row sums to", M[1, 1, :].sum(), ")")

# products multiply ranks and dimensions
ising = catalog_category("ising").ring
prod = deligne_product(fib, ising)
print("fibonacci x ising rank:", prod.rank,
      " dims:", np.round(fp_dimensions(prod).dims, 6))

# the opposite ring dualizes all three indices; on Z/3 this is a -> -a
z3 = catalog_category("vec_z3").ring
op = opposite_ring(z3)
print("vec_z3 opposite fusion of 1 x 1:", list(np.nonzero(op.N[1, 1])[0]))
