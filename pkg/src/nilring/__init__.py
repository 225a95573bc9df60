"""Finite-ring toolkit for nil-essential ideals."""

from .errors import NilringError
from .homs import ModuleHom, enumerate_module_homs, enumerate_ring_endomorphisms, preimage_ideal
from .ideals import Ideal, IdealLattice, Sidedness, enumerate_ideals, generate_ideal
from .localization import enumerate_multiplicative_sets, localize_ideal, localize_ring, multiplicative_closure
from .predicates import is_essential, is_nil_essential, is_nilpotent_ideal, jacobson_radical, socle
from .registry import REGISTRY, hunt_counterexample, run_check, run_suite
from .reports import CheckReport, HuntResult, replay_witness
from .ring import FiniteRing, RingHom, build_ring_from_tables, make_cyclic_ring, make_product_ring, make_quotient_ring, make_ut3_ring
from .specs import RingSpec, build_ring, load_corpus, parse_spec

__version__ = "0.1.0"
