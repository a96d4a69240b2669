"""Exact arithmetic for toroidal cluster algebras and toroidal Grothendieck rings."""
from .params import (
    DivergentSpecialization, ExpSeq, ONE, ParamLaurent, ParamMonomial, QuotientContext,
    pl_bar, pl_is_positive, pl_mul, pm_equal, pm_mul, pm_project, pm_specialize, tprod,
)
from .cartan import CartanData, UnknownType, cartan_data, ctilde, ctilde_typeA_closed, n_exponent, n_sequence
from .torus import (
    CartanBackend, FiniteBackend, Monomial, NotDivisible, NotQuasiCommuting, TorusElement,
    bar, commutator_factor, exact_divide_left, exact_divide_right, star, truncate,
)
from .textfmt import ParseError, format_element, parse_element, parse_param_laurent

__version__ = "0.1.0"
from .cluster import ToroidalSeed, exchange_graph, mutate_seed, mutate_word
from .seedfile import SeedFileError
