"""Fundamental classes of sl3 in the toroidal torus.

The star products of the three fundamental classes carry coefficients with
infinitely many parameters; modulo the relations R_k the commutators
collapse onto a single term.
"""
from torclus import groth
from torclus.cartan import cartan_data, n_sequence
from torclus.params import ParamMonomial, QuotientContext
from torclus.textfmt import format_element
from torclus.torus import star

d = cartan_data("A2")
print("N(1,0;1,2) ->", ParamMonomial(n_sequence(d, 1, 0, 1, 2)))
print("N(1,0;2,1) ->", ParamMonomial(n_sequence(d, 1, 0, 2, 1)))
print()

for ctx in (QuotientContext.none(), QuotientContext.standard()):
    be = groth.shared_backend("A2", ctx)
    V10 = groth.fundamental_class_thin("A2", 1, 0, be)
    V21 = groth.fundamental_class_thin("A2", 2, 1, be)
    print(f"[{ctx.kind}] V1(1) =", format_element(V10))
    print(f"[{ctx.kind}] V1(1) * V2(q) =", format_element(star(V10, V21)))
    print()

for name, x in groth.sl3_simple_classes().items():
    print(f"{name} = {format_element(x)}")
print()
print(groth.sl3_cq_corpus().summary())
