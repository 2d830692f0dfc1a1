"""
Anyon condensation: local modules over a commutative Q-system
=============================================================

Condensing the electric boson 1+e in the toric code leaves exactly one
simple local module, and the underlying dimensions satisfy
sum FPdim^2 = global dim.  The magnetic module m+f survives as a module
but fails locality (it braids nontrivially with e).
"""

from tensorcat import catalog_category
from tensorcat.algebra import group_algebra
from tensorcat.local_modules import (condensation_identity_check,
                                     enumerate_local_modules,
                                     free_module_decomposition, is_local,
                                     local_fusion)

toric = catalog_category("toric_code")
A = group_algebra(toric, ("1", "e"))

print("modules induced from m:")
for mod in free_module_decomposition(toric, A, 2):
    print("   support", [toric.ring.labels[x] for x in mod.support],
          " local:", is_local(toric, A, mod))

cond = enumerate_local_modules(toric, A)
print("\nsimple local modules:",
      [[toric.ring.labels[x] for x in m.support] for m in cond.simples])

chk = condensation_identity_check(toric, A)
print("sum FPdim^2 =", chk["sum_fpdim_sq"], " global dim =", chk["global_dim"],
      " Lagrangian:", chk["lagrangian"])

_, mult = local_fusion(toric, A, cond.simples[0], cond.simples[0], condensed=cond)
print("the unique simple squares to itself:", list(mult) == [1])
