"""
Running the restriction and T-map checks
========================================

An embedding U(p, q) x U(0, r) in U(p, q + r) is given by (p, q, r).
Each check returns a report with a verdict and, on failure, a vector
that witnesses it.
"""

from minktype import EmbeddingShape, check_omega_prim, check_tensor_inclusion, run_suite
from minktype.extalg import Multivector

e = EmbeddingShape(1, 1, 1)
rep = check_omega_prim(e)
print(rep.summary())
print("omega_prim =", Multivector.from_json(rep.witness["omega_prim"]))

# this one fails, and the residual shows why
rep = check_tensor_inclusion(e, 0, 0)
print(rep.summary())
print("residual =", Multivector.from_json(rep.witness["residual"]))

for r in run_suite(EmbeddingShape(2, 2, 1)):
    print(r.summary())
