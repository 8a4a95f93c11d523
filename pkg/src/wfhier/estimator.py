"""Estimator-style wrapper so the solver composes with sklearn pipelines."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .hierarchy import (extend, hierarchical_product, mass_profile,
                        moment_profile, stratum_mass_profile)
from .poly import SimplexPolynomial
from .simplex import FaceId


def check_simplex_points(X, n: int) -> np.ndarray:
    """Validate an array of interior chart points of the n-simplex."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != n:
        raise ValueError(f"points need {n} coordinates, got {X.shape[1]}")
    if (X < 0).any() or (X.sum(axis=1) > 1 + 1e-12).any():
        raise ValueError("points must lie in the closed simplex")
    return X


class HierarchicalSolver(BaseEstimator):
    """Fits the extended drift-diffusion solution to an initial density.

    Parameters follow sklearn conventions; fit accepts the initial density
    either as a SimplexPolynomial on the ambient chart or as polynomial
    text like "1/2 * x1^2 + 1".
    """

    def __init__(self, n=1, mode="rational", max_degree=10):
        self.n = n
        self.mode = mode
        self.max_degree = max_degree

    def fit(self, f, y=None):
        if isinstance(f, str):
            f = SimplexPolynomial.parse(f, self.n)
        self.solution_ = extend(f, self.n, mode=self.mode,
                                max_degree=self.max_degree)
        return self

    def _check_fitted(self):
        if not hasattr(self, "solution_"):
            raise RuntimeError("call fit before querying the solver")

    def predict(self, X):
        """Interior density u(x, t) for rows (t, x^1, ..., x^n)."""
        self._check_fitted()
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n + 1:
            raise ValueError(f"rows must be (t, x1..x{self.n})")
        pts = check_simplex_points(X[:, 1:], self.n)
        top = self.solution_.lattice.top
        fs = self.solution_.per_face[top]
        out = np.empty(len(X))
        for i, (t, pt) in enumerate(zip(X[:, 0], pts)):
            if t < 0:
                raise ValueError("times must be nonnegative")
            out[i] = float(fs.density_poly(float(t)).evaluate(tuple(pt)))
        return out

    def moment(self, alpha, t: float) -> float:
        self._check_fitted()
        return moment_profile(self.solution_, alpha).at(t)

    def mass(self, t: float) -> float:
        self._check_fitted()
        return mass_profile(self.solution_).at(t)

    def stratum_mass(self, k: int, t: float) -> float:
        self._check_fitted()
        return stratum_mass_profile(self.solution_, k).at(t)

    def expectation(self, phi, t: float) -> float:
        """Hierarchical product [U, phi] for an ambient-chart polynomial."""
        self._check_fitted()
        if isinstance(phi, str):
            phi = SimplexPolynomial.parse(phi, self.n)
        return hierarchical_product(self.solution_, phi, t)

    def face_density(self, indices, coords, t: float) -> float:
        self._check_fitted()
        face = FaceId(tuple(indices))
        fs = self.solution_.per_face[face]
        return float(fs.density_poly(t).evaluate(tuple(coords)))
