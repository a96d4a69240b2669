"""Type B2 with six generators and one extra relation among the parameters.

Prints the truncated fundamental classes, the reparametrized compatibility
data and the two mutation identities.
"""
from torclus import groth
from torclus.cluster import check_compatibility, mutate_seed, principal_part, quiver_mutation_class
from torclus.textfmt import format_element

prof = groth.profile("B2_QFLAT")
be = groth.b2_backend()
for name, x in groth.b2_classes(be).items():
    print(f"{name} = {format_element(x)}")

seed = groth.b2_seed(be)
t1, t2 = groth.b2_parameters(be)
print("t1 =", t1)
print("t2 =", t2)
rep = check_compatibility(seed)
print("compatible:", rep.ok, " diagonal in (t1, t2):", rep.diagonal_in([t1, t2], be))
for k in (0, 1):
    print(f"mutation {k + 1}:", format_element(mutate_seed(seed, k).variables[k]))
print("principal quiver:", quiver_mutation_class(principal_part(seed))[1])
print(groth.b2_corpus().summary())
