"""
Characters of the fusion ring and Muger centralizers
====================================================

For a braided category the unnormalized S-matrix s~_{ab} is the trace of
the double braiding; gamma_a(b) = s~_{ab} / d_a is a character of the
fusion ring.  A label centralizes a subcategory exactly when its character
restricts to the dimension character, and every proper nondegenerately
braided subcategory admits such a label outside itself.
"""

import numpy as np

from tensorcat import catalog_category, deligne_product_data
from tensorcat.braided_analysis import (find_centralizing_object,
                                        gamma_characters, muger_centralizer,
                                        restriction_hom, s_matrix,
                                        verify_hypergroup_hom)

fib = catalog_category("fibonacci")
print("s~ =", np.round(s_matrix(fib).s.real, 6).tolist())
print("gamma_t(t) =", np.round(gamma_characters(fib).gamma[1, 1], 9))

# inside fibonacci x semion, the semion factor is exactly what centralizes
# the fibonacci factor
prod = deligne_product_data(fib, catalog_category("semion"))
fib_factor = (0, 2)
print("\ncentralizer of the fibonacci factor:",
      [prod.ring.labels[i] for i in muger_centralizer(prod, fib_factor)])

sr = restriction_hom(prod, fib_factor)
print("restriction map:", {prod.ring.labels[b]: prod.ring.labels[sr.f[b]]
                           for b in range(prod.ring.rank)})
print("hypergroup homomorphism violations:",
      len(verify_hypergroup_hom(prod, sr)))
found = find_centralizing_object(prod, fib_factor)
print("centralizing object outside the factor:", prod.ring.labels[found])
