"""
Q-systems: canonical algebras and the symmetric enveloping algebra
==================================================================

A Q-system is a unitary Frobenius algebra object: associativity,
unitality, the Frobenius relations, and unitary separability, all checked
here by evaluating the corresponding diagram words.  x (x) dual(x) always
carries a canonical Q-system structure, and the diagonal of op(C) (x) C
carries the enveloping algebra of total dimension equal to the global
dimension.
"""

import numpy as np

from tensorcat import catalog_category
from tensorcat.algebra import (algebra_dim, canonical_algebra, is_commutative,
                               symmetric_enveloping, verify_qsystem)

fib = catalog_category("fibonacci")
A = canonical_algebra(fib, "t")
print("canonical algebra on t (x) t:")
for k, v in sorted(A.mu.items()):
    print("   mu", k, "=", np.round(v, 9))
rep = verify_qsystem(fib, A)
print("axiom residuals:", {k: float(f"{v:.2e}") for k, v in rep.residuals.items()})
print("dimension:", algebra_dim(fib, A), " (= d_t^2)")
print("commutative:", is_commutative(fib, A))

prod, S = symmetric_enveloping(fib)
print("\nsymmetric enveloping support:",
      [prod.ring.labels[c] for c in S.support])
print("dimension:", np.round(algebra_dim(prod, S), 9),
      " = global dim:", np.round(fib.dims.global_dim, 9))
print("passes all axioms:", verify_qsystem(prod, S).passed)
