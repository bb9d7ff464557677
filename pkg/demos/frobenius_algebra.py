"""
The algebra of cover counts
===========================

The graded algebra for Q8 passes every axiom check.  After one product
constant is changed, several checks fail and report a witness.
"""
from coloperad.frobenius import check_gfrobenius, drinfeld_module_check, dw_frobenius, state_sum
from coloperad.graphs import stable_graphs

A = dw_frobenius("Q8")
G = A.group
print("dimension", A.dim, "graded by", G.labels)

r = check_gfrobenius(A)
for axiom, result in r.details.items():
    print(f"  {axiom:20s} ok={result['ok']}  ({result['checked']} checks)")
print("Drinfeld double module:", drinfeld_module_check(A).ok)

# e_i * e_j = 8 e_ij
print("e_i * e_j =", {G.labels[k]: str(v) for k, v in A.mul({2: 1}, {4: 1}).items()})

# the three one-edge graphs of type (0,4) give one and the same form
forms = [state_sum(A, H) for H in stable_graphs(0, 4)[1:]]
print("one-edge forms agree:", forms[0] == forms[1] == forms[2])

A.product[(2, 4)] = {G.mul[2][4]: A.product[(2, 4)][G.mul[2][4]] + 1}
r = check_gfrobenius(A)
print("after perturbing one product constant:")
for axiom, result in r.details.items():
    if not result["ok"]:
        print(f"  {axiom}: {result['violation']} at {result['witness']}")
