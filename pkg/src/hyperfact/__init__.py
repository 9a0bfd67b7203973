"""Nice partitions and inductive factorisations of hyperplane arrangements."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    Flat,
    Hyperplane,
    build_arrangement,
    deletion,
    flat_of,
    format_arrangement,
    localization,
    parse_arrangement,
    product,
    restriction,
    triple,
)
from .catalog import intermediate, paper_arrangement, root_system_arrangement, subsystem_restriction
from .exactfield import FieldMismatch, FieldSpec, Scalar
from .induction import (
    FactorizationCertificate,
    emit_induction_table,
    hereditarily_indfac,
    indfac_search,
    verify_certificate,
)
from .isomorphism import SizeLimitExceeded, lattice_isomorphic
from .lattice import Lattice, NoSplit, exponent_candidates, intersection_lattice, poincare_polynomial
from .modularity import ModularChain, chain_partition, is_modular, supersolvable
from .partition import Partition, hereditarily_nice, is_nice, nice_search

__version__ = "0.1.0"
