"""Scikit-learn style front end to the lift construction."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_states, check_random_state
from .exceptions import DimensionError, InputError
from .isometry import RayMap, is_isometry_sampled, wigner_lift


class WignerLift(TransformerMixin, BaseEstimator):
    """Learn the unitary or antiunitary operator behind a ray-space isometry.

    ``fit`` takes the ray map itself in place of a data matrix: the map is
    the only "training data" the construction needs, and it is queried on
    as many rays as required.  ``transform`` then applies the lifted
    operator to state vectors stored as rows.

    Parameters
    ----------
    reference : array_like, optional
        Reference vector of the construction; the first basis vector if None.
    isometry_trials : int, default=64
        Random ray pairs probed to confirm the map is an isometry.
    random_state : int or numpy Generator, optional
        Seeds the probes, the classifying triples, and the free phase of the
        reference image.
    tol : Tolerances, optional

    Attributes
    ----------
    matrix_ : ndarray of shape (dim, dim)
        Unitary part ``M`` of the lift.
    antiunitary_ : bool
        Whether the lift acts as ``v -> M conj(v)``.
    chi_ : ChiKind
    reference_, reference_image_ : ndarray
        The reference vector and its chosen image.
    isometry_deviation_ : float
        Largest overlap distortion seen while probing.
    lift_ : LiftedSymmetry
    n_features_in_ : int
        Hilbert-space dimension.

    Examples
    --------
    >>> import numpy as np
    >>> from raywig import MatrixRayMap, WignerLift, haar_unitary
    >>> U = haar_unitary(3, rng=0)
    >>> est = WignerLift(random_state=0).fit(MatrixRayMap(U))
    >>> bool(est.antiunitary_)
    False
    """

    def __init__(self, reference=None, isometry_trials=64, random_state=None, tol=None):
        self.reference = reference
        self.isometry_trials = isometry_trials
        self.random_state = random_state
        self.tol = tol

    def fit(self, X, y=None):
        if not isinstance(X, RayMap):
            raise InputError("WignerLift.fit expects a RayMap")
        rng = check_random_state(self.random_state)
        lift = wigner_lift(
            X,
            e=self.reference,
            rng=rng,
            isometry_trials=self.isometry_trials,
            tol=self.tol,
        )
        self.lift_ = lift
        self.matrix_ = lift.matrix
        self.antiunitary_ = lift.antiunitary
        self.chi_ = lift.chi
        self.reference_ = lift.reference
        self.reference_image_ = lift.reference_image
        self.isometry_deviation_ = is_isometry_sampled(
            X, self.isometry_trials, rng, tol=self.tol
        ).max_deviation
        self.n_features_in_ = lift.dim
        return self

    def _check_states(self, X):
        check_is_fitted(self, "matrix_")
        X = as_states(X)
        if X.shape[1] != self.n_features_in_:
            raise DimensionError(
                f"states have dim {X.shape[1]}, lift was fitted on dim {self.n_features_in_}"
            )
        return X

    def transform(self, X):
        """Apply the lift to each row of ``X``."""
        X = self._check_states(X)
        if self.antiunitary_:
            X = np.conj(X)
        return X @ self.matrix_.T

    def inverse_transform(self, X):
        X = self._check_states(X)
        Y = X @ np.conj(self.matrix_)
        return np.conj(Y) if self.antiunitary_ else Y

    def fit_transform(self, X, y=None, **fit_params):
        raise TypeError("fit takes a ray map and transform takes states; call them separately")
