"""The five-seed exchange graph of the A2 example with two exchangeable variables.

Enumerates the graph, prints it as DOT and expands every cluster variable
as a Laurent polynomial in the initial cluster.
"""
from torclus import groth
from torclus.cluster import exchange_graph, laurent_report

seed = groth.c1ob_finite_seed()
g = exchange_graph(seed)
print(g.to_dot())
print(g.summary())

seen = set()
for s in g.nodes:
    for v in s.variables[: s.m]:
        rep = laurent_report(seed, v)
        text = rep.text()
        if text not in seen:
            seen.add(text)
            print(f"{text:40s} positive={rep.positive}")
