"""Degeneration data of degree-p Galois covers of semi-stable curves."""

from .arith import GaloisElement, Place, PrimeContext, RationalFunction
from .degdata import (
    DoubleDegData,
    GlobalDegData,
    SimpleDegData,
    canonical_encode,
    is_isomorphic,
)
from .fiber import conservation_check, realize_double, realize_global, realize_simple
from .galois import act, enum_double, enum_simple, equivariance_check, extract_degdata, orbit
from .torsor import BoundaryType, GroupKind, TorsorRep
from .validate import (
    check_double,
    check_global,
    check_simple,
    genus_double,
    genus_simple,
    genus_tail,
    kind_from_delta,
)

__version__ = "0.1.0"
