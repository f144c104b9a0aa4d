"""scikit-learn style wrappers so the computations compose with pipelines and grid tools.

Inputs that are parameter grids (bidegrees, diagonals, Betti positions) are
2-D integer arrays validated with ``sklearn.utils.check_array``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .bipoly import Field, RingSpec
from .bkm import bkm_betti_table, bkm_shifts, reg_xy_from_table
from .diagonal import DiagonalSpec, depth_lower_bound, koszul_certificate
from .oracle import IdealSpec, KoszulTor, alternating_hilbert, betti_window, reg_window
from .rees import PresentationMatrix, build_model, rees_certificates


def check_int_grid(X, n_features: int, minimum: int | None = None, name: str = "X") -> np.ndarray:
    """Validate a 2-D integer array with ``n_features`` columns."""
    arr = check_array(X, dtype=None, ensure_2d=True, ensure_min_samples=1)
    if arr.shape[1] != n_features:
        raise ValueError(f"{name} must have {n_features} columns, got {arr.shape[1]}")
    if not np.all(np.equal(np.mod(arr, 1), 0)):
        raise ValueError(f"{name} must contain integers")
    arr = arr.astype(np.int64)
    if minimum is not None and np.any(arr < minimum):
        raise ValueError(f"{name} entries must be >= {minimum}")
    return arr


def check_ideal(X, field=None) -> IdealSpec:
    if isinstance(X, IdealSpec):
        return X if field is None else X.with_field(Field.parse(field))
    if isinstance(X, (dict, str)):
        return IdealSpec.from_json(X, None if field is None else Field.parse(field))
    raise TypeError(f"expected an IdealSpec or ideal JSON document, got {type(X).__name__}")


def check_presentation(X, field=None) -> PresentationMatrix:
    if isinstance(X, PresentationMatrix):
        return X
    if isinstance(X, (dict, str)):
        return PresentationMatrix.from_json(X, None if field is None else Field.parse(field))
    raise TypeError(f"expected a PresentationMatrix or JSON document, got {type(X).__name__}")


class BKMResolution(BaseEstimator):
    """Closed-form resolution of S/J; ``predict`` gives ``dim (S/J)_(u,v)`` for rows ``(u, v)``."""

    def __init__(self, n: int = 2, m: int = 2, p: int | None = None):
        self.n = n
        self.m = m
        self.p = p

    def fit(self, X=None, y=None):
        self.shifts_ = bkm_shifts(self.n, self.m)
        self.betti_table_ = bkm_betti_table(self.n, self.m)
        self.reg_x_, self.reg_y_ = reg_xy_from_table(self.betti_table_)
        return self

    def predict(self, X):
        check_is_fitted(self, "betti_table_")
        if self.p is None:
            raise ValueError("p is required to evaluate Hilbert values")
        grid = check_int_grid(X, 2, name="bidegrees")
        ring = RingSpec(self.n, self.p)
        return np.array([alternating_hilbert(self.betti_table_, ring, int(u), int(v)) for u, v in grid])


class DiagonalCertifier(BaseEstimator):
    """Koszul / depth certificates for ``(S/J)_Delta`` over rows ``(c, e)``."""

    def __init__(self, n: int = 2, m: int = 2, p: int = 3):
        self.n = n
        self.m = m
        self.p = p

    def fit(self, X=None, y=None):
        self.shifts_ = bkm_shifts(self.n, self.m)
        self.ring_ = RingSpec(self.n, self.p)
        return self

    def transform(self, X):
        """Columns: Koszul regularity bound, depth lower bound (``-1`` when withheld)."""
        check_is_fitted(self, "shifts_")
        grid = check_int_grid(X, 2, minimum=1, name="diagonals")
        out = np.empty((grid.shape[0], 2), dtype=np.int64)
        for k, (c, e) in enumerate(grid):
            delta = DiagonalSpec(int(c), int(e))
            out[k, 0] = koszul_certificate(self.shifts_, delta).reg_bound
            bound = depth_lower_bound(self.shifts_, delta, self.ring_).bound
            out[k, 1] = -1 if bound is None else bound
        return out

    def predict(self, X):
        """``True`` where Koszulness is certified."""
        return self.transform(X)[:, 0] <= 1


class TorBettiOracle(BaseEstimator):
    """Brute-force bigraded Betti numbers; ``predict`` takes rows ``(i, a, b)``."""

    def __init__(self, field=None, i_max: int = 4, a_max: int = 2, b_max: int = 4):
        self.field = field
        self.i_max = i_max
        self.a_max = a_max
        self.b_max = b_max

    def fit(self, X, y=None):
        self.ideal_ = check_ideal(X, self.field)
        self.tor_ = KoszulTor(self.ideal_)
        self.betti_table_ = betti_window(self.ideal_, self.i_max, self.a_max, self.b_max, tor=self.tor_)
        self.reg_ = reg_window(self.betti_table_)
        return self

    def predict(self, X):
        check_is_fitted(self, "tor_")
        grid = check_int_grid(X, 3, minimum=0, name="positions")
        return np.array([self.tor_.betti(int(i), int(a), int(b)) for i, a, b in grid])

    def score(self, X, y=None):
        """Fraction of window entries that agree with the closed-form table for ``(n, m) = y``."""
        check_is_fitted(self, "betti_table_")
        n, m = y
        expected = bkm_betti_table(n, m).restrict(self.i_max, self.a_max, self.b_max)
        keys = set(expected.entries) | set(self.betti_table_.entries)
        if not keys:
            return 1.0
        same = sum(expected.entries.get(k, 0) == self.betti_table_.entries.get(k, 0) for k in keys)
        return same / len(keys)


class ReesCertifier(BaseEstimator):
    """Fits a presentation matrix; ``predict`` maps rows ``(c, e)`` to ``[cm, koszul]`` flags."""

    def __init__(self, field=None, check_through: int = 4):
        self.field = field
        self.check_through = check_through

    def fit(self, X, y=None):
        Phi = check_presentation(X, self.field)
        self.model_ = build_model(Phi, self.check_through)
        self.assumptions_ = self.model_.ledger.unverified()
        return self

    def certificates(self, X) -> list[dict]:
        check_is_fitted(self, "model_")
        grid = check_int_grid(X, 2, minimum=1, name="diagonals")
        return [rees_certificates(self.model_, DiagonalSpec(int(c), int(e))) for c, e in grid]

    def predict(self, X):
        certs = self.certificates(X)
        return np.array(
            [[c["cm"]["verdict"] != "inconclusive", c["koszul"]["verdict"] != "inconclusive"] for c in certs]
        )
