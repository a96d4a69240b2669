"""A rank-one seed with two parameters t1, t2.

Mutate once, print the exchange relation, run the Serre-type cubic
identities and show that mutating twice returns the seed.
"""
from torclus import groth
from torclus.cluster import check_compatibility, exchange_graph, mutate_seed
from torclus.seedfile import dumps
from torclus.textfmt import format_element
from torclus.torus import star

seed = groth.two_param_seed()
print("initial seed:")
print(dumps(seed))

X1 = seed.variables[0]
s1 = mutate_seed(seed, 0)
X1p = s1.variables[0]
print("X1'       =", format_element(X1p))
print("X1' * X1  =", format_element(star(X1p, X1)))

rep = check_compatibility(seed)
print("compatible:", rep.ok, " diagonal:", [str(d) for d in rep.diagonal])
print("graph:", exchange_graph(seed).summary())
print("mutating twice gives the seed back:", mutate_seed(s1, 0) == seed)

for a in groth.two_param_serre_check().assertions:
    print(f"  {'ok ' if a.ok else 'BAD'} {a.id}")
