"""Hot per-trial kernels with a numba fast path and a pure-numpy fallback.

The Monte Carlo engine funnels every trial through one deterministic kernel:
count the samples below the two boundary thresholds, look up the binomial-tail
bound, clamp the access probability.  Random draws happen outside (shared by
both backends), so for identical inputs the two implementations return
bit-identical outputs.

Backend selection: set COGCELL_BACKEND=numpy or COGCELL_BACKEND=numba; unset,
numba is used when importable.  `benchmarks/bench_backends.py` times the two
paths against each other.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

BACKEND_ENV = "COGCELL_BACKEND"
_BACKENDS = ("numba", "numpy")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def available_backends() -> tuple[str, ...]:
    return _BACKENDS if HAVE_NUMBA else ("numpy",)


def active_backend() -> str:
    """Resolve the backend from the environment, falling back when needed."""
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice and choice not in _BACKENDS:
        raise ValueError(f"{BACKEND_ENV} must be one of {_BACKENDS}, got {choice!r}")
    if choice == "numba" and not HAVE_NUMBA:
        warnings.warn("numba requested but not importable; using numpy", RuntimeWarning)
        return "numpy"
    if choice:
        return choice
    return "numba" if HAVE_NUMBA else "numpy"


# Case ids indexed by (inner state, outer state), state 0=below 1=interior 2=above;
# 0 marks combinations a sorted sample set cannot produce.
_CASE_TABLE = np.array([[1, 2, 3], [0, 4, 5], [0, 0, 6]], dtype=np.int64)


def _evaluate_trials_numpy(samples_db, t_in, t_out, tail, eta, region_area, interference_area):
    k_total = samples_db.shape[1]
    c_in = np.sum(samples_db <= t_in, axis=1)
    c_out = np.sum(samples_db <= t_out, axis=1)
    rho_up = tail[c_in] - tail[c_out + 1]
    if interference_area > 0.0:
        ap = np.minimum((eta * region_area) / (rho_up * interference_area), 1.0)
    else:
        ap = np.ones(samples_db.shape[0])
    state_in = np.where(c_in == 0, 0, np.where(c_in == k_total, 2, 1))
    state_out = np.where(c_out == 0, 0, np.where(c_out == k_total, 2, 1))
    case_id = _CASE_TABLE[state_in, state_out]
    return ap, case_id


@njit(cache=True)
def _evaluate_trials_numba(samples_db, t_in, t_out, tail, eta, region_area, interference_area):
    n, k_total = samples_db.shape
    ap = np.empty(n, dtype=np.float64)
    case_id = np.empty(n, dtype=np.int64)
    scaled = eta * region_area
    for i in range(n):
        c_in = 0
        c_out = 0
        for j in range(k_total):
            v = samples_db[i, j]
            if v <= t_in:
                c_in += 1
            if v <= t_out:
                c_out += 1
        rho_up = tail[c_in] - tail[c_out + 1]
        if interference_area > 0.0:
            x = scaled / (rho_up * interference_area)
            ap[i] = x if x < 1.0 else 1.0
        else:
            ap[i] = 1.0
        state_in = 0 if c_in == 0 else (2 if c_in == k_total else 1)
        state_out = 0 if c_out == 0 else (2 if c_out == k_total else 1)
        case_id[i] = _CASE_TABLE[state_in, state_out]
    return ap, case_id


def evaluate_trials(
    samples_db: np.ndarray,
    thresh_inner_db: float,
    thresh_outer_db: float,
    tail: np.ndarray,
    eta: float,
    region_area: float,
    interference_area: float,
    backend: str | None = None,
):
    """Per-trial access probability and case id for a batch of sample rows.

    `samples_db` is (n_trials, K); `tail` has K+2 entries, tail[c] the
    probability that a fair-coin binomial reaches c.  Thresholds are the SNRs
    whose distance estimates equal the region's inner and outer boundary.
    Returns float64 `ap` and int64 `case_id` arrays of length n_trials.
    """
    samples_db = np.ascontiguousarray(samples_db, dtype=np.float64)
    if samples_db.ndim != 2:
        raise ValueError("samples_db must be 2-D (trials x samples)")
    if tail.shape[0] != samples_db.shape[1] + 2:
        raise ValueError("tail table must have K + 2 entries")
    impl = backend if backend is not None else active_backend()
    if impl == "numba" and HAVE_NUMBA:
        ap, case_id = _evaluate_trials_numba(
            samples_db,
            float(thresh_inner_db),
            float(thresh_outer_db),
            np.ascontiguousarray(tail, dtype=np.float64),
            float(eta),
            float(region_area),
            float(interference_area),
        )
    elif impl in _BACKENDS:
        ap, case_id = _evaluate_trials_numpy(
            samples_db,
            float(thresh_inner_db),
            float(thresh_outer_db),
            np.asarray(tail, dtype=np.float64),
            float(eta),
            float(region_area),
            float(interference_area),
        )
    else:
        raise ValueError(f"unknown backend {impl!r}")
    if np.any(case_id == 0):
        raise RuntimeError("boundary counts out of order; sample rows not comparable")
    return ap, case_id
