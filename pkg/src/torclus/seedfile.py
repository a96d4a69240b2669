"""JSON seed files.

A seed file looks like::

    {
      "type": "toroidal-seed",
      "backend": {"finite": {"1": [[...]], "2": [[...]]}}   or   {"cartan": "A2"},
      "quotient": "none" | "standard" | ["t[-4]^{1/2} t[-2]^{-1/2} ...", ...],
      "project": [-2, 0],
      "variables": ["X[1]", ...],
      "B": [[...], ...],
      "exchangeable": 1
    }

The quasi-commutation data is recomputed from the variables on load.
"""
from __future__ import annotations

import json
from pathlib import Path

from .cluster import ToroidalSeed
from .params import QuotientContext
from .textfmt import format_element, parse_element, parse_param_monomial
from .torus import CartanBackend, FiniteBackend


class SeedFileError(ValueError):
    pass


def _quotient(q) -> QuotientContext:
    if q is None or q == "none":
        return QuotientContext.none()
    if q == "standard":
        return QuotientContext.standard()
    if isinstance(q, list):
        return QuotientContext.custom([parse_param_monomial(s) for s in q])
    raise SeedFileError(f"bad quotient: {q!r}")


def _backend(doc: dict):
    b = doc.get("backend")
    ctx = _quotient(doc.get("quotient"))
    keep = doc.get("project")
    if not isinstance(b, dict) or len(b) != 1:
        raise SeedFileError("backend must be {'finite': {...}} or {'cartan': label}")
    if "cartan" in b:
        from .groth import shared_backend
        return shared_backend(b["cartan"], ctx, keep)
    if "finite" in b:
        lams = {int(a): L for a, L in b["finite"].items()}
        n = len(doc["variables"])
        return FiniteBackend(n, lams, ctx, keep)
    raise SeedFileError("unknown backend kind")


def seed_from_dict(doc: dict) -> ToroidalSeed:
    if doc.get("type", "toroidal-seed") != "toroidal-seed":
        raise SeedFileError(f"not a seed file: type={doc.get('type')!r}")
    for key in ("backend", "variables", "B"):
        if key not in doc:
            raise SeedFileError(f"missing field {key!r}")
    be = _backend(doc)
    vars_ = [parse_element(s, be) for s in doc["variables"]]
    B = doc["B"]
    m = doc.get("exchangeable", len(B[0]) if B else 0)
    if len(B) != len(vars_) or any(len(r) != m for r in B):
        raise SeedFileError("B must be n x m with m = exchangeable")
    return ToroidalSeed.build(be, vars_, B)


def seed_to_dict(seed: ToroidalSeed) -> dict:
    be = seed.backend
    if isinstance(be, CartanBackend):
        backend = {"cartan": be.cartan.label}
    else:
        backend = {"finite": {str(a): L for a, L in be.lambdas.items()}}
    ctx = be.ctx
    if ctx.kind == "none":
        quotient = "none"
    elif ctx.kind == "standard":
        quotient = "standard"
    else:
        quotient = [str(r) for r in ctx.relations]
    doc = {"type": "toroidal-seed", "backend": backend, "quotient": quotient}
    if be.keep is not None:
        doc["project"] = sorted(be.keep)
    doc["variables"] = [format_element(v) for v in seed.variables]
    doc["B"] = [list(r) for r in seed.B]
    doc["exchangeable"] = seed.m
    return doc


def dumps(seed: ToroidalSeed) -> str:
    doc = seed_to_dict(seed)
    lines = ["{"]
    items = list(doc.items())
    for idx, (k, v) in enumerate(items):
        comma = "," if idx < len(items) - 1 else ""
        if k in ("B", "variables") or (k == "backend" and "finite" in v):
            lines.append(f"  {json.dumps(k)}: {_block(v)}{comma}")
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _block(v) -> str:
    # one row or one variable per line keeps diffs readable
    if isinstance(v, list):
        return "[\n" + ",\n".join("    " + json.dumps(x) for x in v) + "\n  ]"
    inner = []
    for a, L in v["finite"].items():
        rows = ",\n".join("        " + json.dumps(r) for r in L)
        inner.append(f"    {json.dumps(a)}: [\n{rows}\n    ]")
    return '{"finite": {\n' + ",\n".join(inner) + "\n  }}"


def loads(text: str) -> ToroidalSeed:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SeedFileError(f"invalid JSON: {e}") from None
    return seed_from_dict(doc)


def builtin_seed(name: str) -> ToroidalSeed:
    from . import groth

    if name == "two-param":
        return groth.two_param_seed()
    if name == "c1ob-a2":
        return groth.c1ob_finite_seed()
    if name == "c1ob-a2-cartan":
        return groth.c1ob_cartan_seed()
    if name == "b2-qflat":
        return groth.b2_seed()
    if name.startswith("c1-"):
        return groth.build_c1_seed(name[3:])[1]
    raise SeedFileError(f"unknown builtin seed {name!r}")


BUILTIN_SEEDS = ("two-param", "c1ob-a2", "c1ob-a2-cartan", "b2-qflat", "c1-A2", "c1-A3", "c1-D4")


def load(source: str) -> ToroidalSeed:
    """Load from a path, or ``builtin:NAME`` for one of BUILTIN_SEEDS."""
    if source.startswith("builtin:"):
        return builtin_seed(source[len("builtin:"):])
    return loads(Path(source).read_text())
