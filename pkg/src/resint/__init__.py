"""Exact bigraded resolutions of residual intersections ``J = <z> + I_n(phi)``."""

from __future__ import annotations

from importlib import resources

from .bipoly import BiPoly, Bidegree, Field, RingSpec, parse_poly
from .bkm import BettiTable, ShiftMultiset, bkm_betti_table, bkm_shifts, kab_rank, reg_xy_from_table
from .diagonal import (
    DiagonalSpec,
    cm_certificate,
    depth_lower_bound,
    koszul_certificate,
    shifted_diag_is_cm,
    shifted_diag_reg,
)
from .en import LinearMatrixY, eagon_northcott
from .oracle import IdealSpec, betti_window, reg_window, tor_betti
from .rees import PresentationMatrix, SetupError, build_model, rees_certificates

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a bundled example file, e.g. ``data_path("banded_ideal.json")``."""
    return resources.files(__name__) / "data" / name


__all__ = [
    "BettiTable", "BiPoly", "Bidegree", "DiagonalSpec", "Field", "IdealSpec", "LinearMatrixY",
    "PresentationMatrix", "RingSpec", "SetupError", "ShiftMultiset", "betti_window",
    "bkm_betti_table", "bkm_shifts", "build_model", "cm_certificate", "data_path",
    "depth_lower_bound", "eagon_northcott", "kab_rank", "koszul_certificate", "parse_poly",
    "rees_certificates", "reg_window", "reg_xy_from_table", "shifted_diag_is_cm",
    "shifted_diag_reg", "tor_betti",
]
