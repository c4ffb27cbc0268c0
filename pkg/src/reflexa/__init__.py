"""Exact computations with finitely generated modules over artinian local algebras."""

__version__ = "0.1.0"

from .fields import QQ, GF, Fp, PrimeField, RationalField, field_from_json
from .poly import PolyRing, Poly, parse_poly, PolySyntaxError, UnknownVariable
from .groebner import GroebnerBasis, buchberger, normal_form
from .algebra import (
    ArtinianAlgebra, AlgebraInvariants, NotFiniteDimensional, NotLocal,
    algebra_invariants, bnsi_certificate, quotient_basis,
)
from .verdict import Verdict, CERTIFIED_TRUE, CERTIFIED_FALSE, UNKNOWN
from .modules import (
    Module, ModuleMap, ModuleError, Presentation, canonical, cokernel, direct_sum, free,
    ideal, image, is_free, kernel, max_ideal, min_generators, minimal_presentation,
    quotient_ring, realize, residue_field, syzygy,
)
from .duality import (
    BudgetExceeded, Tower, aus_transpose, dual, dual_map, dual_tower, dual_triple,
    has_free_summand, hom_module, iterated_dual, natural_map, reflexivity_flags,
    third_dual_composite, trace_ideal,
)
from .resolution import (
    Resolution, betti_bound_checks, ext_display_report, ext_lengths, min_resolution,
)
from .classify import ClassReport, ConsistencyError, classify, classify_ring
from .specs import ModuleSpec, RingSpec, SpecError
from .corpus import random_modules, ring_spec
