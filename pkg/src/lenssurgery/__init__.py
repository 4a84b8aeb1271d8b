"""Lens space surgery data: Alexander polynomials, obstructions and family matching."""

from .alexander import (
    NoTorusRepresentative,
    SymmetricPoly,
    Verdict,
    check_alternating,
    check_ky_form,
    delta,
    delta_via_phi,
    delta_via_torus,
    genus,
)
from .dinvariant import TorsionSequence, check_pos, d_lens, torsion_sequence
from .estimator import LensSurgeryClassifier
from .families import FamilyMatch, match_all, match_berge, match_poincare
from .globalview import CyclicCoeffs, cyclic_lift, difference_class, find_blocks, find_runs, grid
from .harness import (
    ClassificationRecord,
    classify,
    enumerate_classes,
    export,
    import_records,
    verify_main_theorem,
)
from .modular import DualClass, canonical_k, dual_class
from .quadratic import QuadraticRelation, TauDecomposition, associated_relation, tau_decompose

enumerate = enumerate_classes  # noqa: A001

__version__ = "0.1.0"

__all__ = [
    "ClassificationRecord",
    "CyclicCoeffs",
    "DualClass",
    "FamilyMatch",
    "LensSurgeryClassifier",
    "NoTorusRepresentative",
    "QuadraticRelation",
    "SymmetricPoly",
    "TauDecomposition",
    "TorsionSequence",
    "Verdict",
    "associated_relation",
    "canonical_k",
    "check_alternating",
    "check_ky_form",
    "check_pos",
    "classify",
    "cyclic_lift",
    "d_lens",
    "delta",
    "delta_via_phi",
    "delta_via_torus",
    "difference_class",
    "dual_class",
    "enumerate_classes",
    "export",
    "find_blocks",
    "find_runs",
    "genus",
    "grid",
    "import_records",
    "match_all",
    "match_berge",
    "match_poincare",
    "tau_decompose",
    "torsion_sequence",
    "verify_main_theorem",
]
