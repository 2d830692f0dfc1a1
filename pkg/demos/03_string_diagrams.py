"""
The string-diagram expression language
======================================

Morphism words are written with "." for composition (right to left),
"*" for horizontal tensoring, a postfix dagger, and the built-in atoms
id[...], braid[a,b], ibraid[a,b], cup[a], cap[a].  Evaluation produces
blockwise matrices in fusion-path bases; the spherical trace of a closed
loop of a is the quantum dimension d_a.
"""

import numpy as np

from tensorcat import catalog_category
from tensorcat.diagram_eval import categorical_trace, evaluate, parse_diagram, typecheck

fib = catalog_category("fibonacci")

loop = evaluate("cap[t] . cup[t]", fib)
print("loop of t:", categorical_trace(fib, loop), " (the golden ratio)")

expr = parse_diagram("(braid[t,t]*id[t]) . (id[t]*braid[t,t]) . (braid[t,t]*id[t])")
print("Yang-Baxter word types:", typecheck(expr, fib))
lhs = evaluate(expr, fib)
rhs = evaluate("(id[t]*braid[t,t]) . (braid[t,t]*id[t]) . (id[t]*braid[t,t])", fib)
dev = max(np.max(np.abs(lhs.block(fib.ring, c) - rhs.block(fib.ring, c)))
          for c in lhs.blocks)
print("Yang-Baxter deviation:", dev)

# the trace of the double braiding reproduces the S-matrix entry
tr = categorical_trace(fib, evaluate("braid[t,t] . braid[t,t]", fib))
print("tr(double braiding on [t,t]):", np.round(tr, 9), " = s~_tt")

# daggers are blockwise adjoints
v = evaluate("cup[t]† . cup[t]", fib)
print("cup† cup =", v.blocks[0][0, 0].real, " (= d_t)")
