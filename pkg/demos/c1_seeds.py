"""Seeds built from the truncated classes of C1 in types A2, A3 and D4.

For each type: check compatibility, mutate at every node and compare with
the truncated fundamental classes, then count the exchange graph and
compare with the classical count.
"""
import sys

from torclus import groth
from torclus.cluster import check_compatibility, classical_graph, classical_specialize, exchange_graph, mutate_seed
from torclus.textfmt import format_element

labels = sys.argv[1:] or ["A2", "A3", "D4"]
for label in labels:
    prof, seed = groth.build_c1_seed(label)
    print(f"== {label}, heights {prof.xi.values}")
    rep = check_compatibility(seed)
    print("compatible:", rep.ok, " diagonal:", str(rep.diagonal[0]))
    for k, i in enumerate(prof.cartan.nodes):
        new = mutate_seed(seed, k).variables[k]
        print(f"  mutate at node {i} (height {prof.xi[i]}): {format_element(new)}")
    n = len(exchange_graph(seed).nodes)
    print(f"  seeds: {n} toroidal, {classical_graph(classical_specialize(seed))} classical")
    print(" ", groth.verify_c1_theorem(label, graph=False).summary())
