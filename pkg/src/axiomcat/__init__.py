"""Verification workbench for path categories and display map categories."""
from __future__ import annotations

from pathlib import Path

from .dispcat import DispCat, check_display_axioms, check_root, check_split, fibration_closure, reindex, repletion
from .fincat import FiniteCategory, PullbackWitness, is_isomorphism, pullback, terminal_object, validate_category
from .pathcat import (PathCat, PathObjectWitness, check_dmpc_axioms, check_path_axioms,
                      check_saturation, check_two_out_of_six, find_path_object, homotopic,
                      homotopy_equivalences)
from .report import Report, Violation

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"



def bundled(name: str) -> Path:
    """Path of a bundled category file, e.g. ``bundled("trivial.cat")``."""
    return DATA_DIR / name


__all__ = [
    "DispCat",
    "FiniteCategory",
    "PathCat",
    "PathObjectWitness",
    "PullbackWitness",
    "Report",
    "Violation",
    "check_display_axioms",
    "check_dmpc_axioms",
    "check_path_axioms",
    "check_root",
    "check_saturation",
    "check_split",
    "check_two_out_of_six",
    "fibration_closure",
    "find_path_object",
    "homotopic",
    "homotopy_equivalences",
    "is_isomorphism",
    "pullback",
    "reindex",
    "repletion",
    "terminal_object",
    "validate_category",
    "DATA_DIR",
    "bundled",
    "__version__",
]
