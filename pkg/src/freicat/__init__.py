"""Exact computation with additive sets in finitely generated abelian groups."""

from .addset import AdditiveSet, aset, doubling, ksum_fibers, product_set, sigma, sumset, union_disjoint
from .cat import (
    Cone,
    ConeResult,
    MediatorError,
    NotNormalizedError,
    coequalizer0,
    coproduct0,
    disjoint_copair,
    equalizer0,
    product,
    pullback0,
    pushout0,
    structure_report,
    terminal_initial,
    verify_universal_property,
)
from .fgab import FgaGroup, GroupElement, GroupHom, Z, cyclic, direct_sum, free, quotient
from .freiman import (
    BudgetExceeded,
    FreimanMap,
    HomViolation,
    check_hom,
    compose,
    enumerate_homs,
    hom_violation,
    is_freiman_hom,
    is_freiman_iso,
    iter_homs,
)
from .intlat import hnf, lattice_membership, snf, solve_integer
from .universal import adjunction_eta, adjunction_theta, build_universal, extend_hom, functor_map

__version__ = "0.1.0"
