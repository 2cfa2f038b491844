"""Seeded random instances for the verification suites.

Every generator takes a numpy Generator as its first argument and draws from
it in a fixed order, so an instance is fully determined by the rng state it
receives.  Preconditions of the target checks hold by construction: positive
sequences stay in (0, hi], expansive members are I + QQ†, contractive PD
members have spectrum inside (floor, 1], density matrices are normalized
spectra in a random basis.
"""

from __future__ import annotations

import numpy as np

from .matfun import hermitize, make_commuting_pair
from .scalar import SequencePair

__all__ = [
    "rand_unitary",
    "rand_pd",
    "rand_psd",
    "rand_expansive",
    "rand_contractive_pd",
    "rand_contraction",
    "rand_square",
    "rand_sequence",
    "rand_sequence_pair",
    "rand_commuting_pair",
    "rand_density",
    "rand_density_pair",
    "rand_pd_family",
    "rand_split_matching",
]


def _complex_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def rand_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish unitary: QR of a complex Gaussian with phase-fixed R diagonal."""
    Q, R = np.linalg.qr(_complex_gaussian(rng, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def rand_pd(rng: np.random.Generator, n: int, spectrum_range: tuple[float, float]) -> np.ndarray:
    """PD matrix with spectrum uniform in [lo, hi], random basis."""
    lo, hi = spectrum_range
    w = rng.uniform(lo, hi, n)
    U = rand_unitary(rng, n)
    return hermitize((U * w) @ U.conj().T)


def rand_psd(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    Q = np.sqrt(scale / n) * _complex_gaussian(rng, n)
    return hermitize(Q @ Q.conj().T)


def rand_expansive(rng: np.random.Generator, n: int) -> np.ndarray:
    """I + QQ†, so the spectrum sits in [1, 1 + ||Q||^2]."""
    amp = rng.uniform(0.3, 1.0)
    Q = (amp / np.sqrt(n)) * _complex_gaussian(rng, n)
    return hermitize(np.eye(n) + Q @ Q.conj().T)


def rand_contractive_pd(
    rng: np.random.Generator, n: int, floor: float = 0.05
) -> np.ndarray:
    """PD matrix below I: spectrum uniform in (floor, 1]."""
    w = 1.0 - (1.0 - floor) * rng.random(n)  # in (floor, 1]
    U = rand_unitary(rng, n)
    return hermitize((U * w) @ U.conj().T)


def rand_contraction(rng: np.random.Generator, n: int) -> np.ndarray:
    """General complex matrix with singular values in [0, 1]."""
    U, _, Vh = np.linalg.svd(_complex_gaussian(rng, n))
    s = rng.random(n)
    return (U * s) @ Vh


def rand_square(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Unstructured complex square matrix."""
    return scale * _complex_gaussian(rng, n)


def rand_sequence(rng: np.random.Generator, n: int, hi: float = 10.0) -> np.ndarray:
    """Entries in (0, hi]: strictly positive so log-type f never sees 0."""
    return hi * (1.0 - rng.random(n))


def rand_sequence_pair(rng: np.random.Generator, n: int, hi: float = 10.0) -> SequencePair:
    return SequencePair(tuple(rand_sequence(rng, n, hi)), tuple(rand_sequence(rng, n, hi)))


def rand_commuting_pair(
    rng: np.random.Generator,
    n: int,
    a_range: tuple[float, float],
    b_range: tuple[float, float],
) -> tuple[np.ndarray, np.ndarray]:
    U = rand_unitary(rng, n)
    wa = rng.uniform(a_range[0], a_range[1], n)
    wb = rng.uniform(b_range[0], b_range[1], n)
    return make_commuting_pair(U, wa, wb)


def _density_spectrum(rng: np.random.Generator, n: int) -> np.ndarray:
    w = rng.random(n) + 1e-3  # bounded away from 0 so log stays finite
    return w / w.sum()


def rand_density(rng: np.random.Generator, n: int) -> np.ndarray:
    w = _density_spectrum(rng, n)
    U = rand_unitary(rng, n)
    return hermitize((U * w) @ U.conj().T)


def rand_density_pair(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Commuting density pair with full support (shared eigenbasis)."""
    U = rand_unitary(rng, n)
    rho = hermitize((U * _density_spectrum(rng, n)) @ U.conj().T)
    sigma = hermitize((U * _density_spectrum(rng, n)) @ U.conj().T)
    return rho, sigma


def rand_pd_family(
    rng: np.random.Generator,
    m: int,
    n: int,
    spectrum_range: tuple[float, float],
    kind: str = "unconstrained",
) -> list[np.ndarray]:
    if kind == "expansive":
        return [rand_expansive(rng, n) for _ in range(m)]
    if kind == "contractive":
        return [rand_contractive_pd(rng, n) for _ in range(m)]
    if kind == "unconstrained":
        return [rand_pd(rng, n, spectrum_range) for _ in range(m)]
    raise ValueError(f"unknown family kind {kind!r}")


def rand_split_matching(
    rng: np.random.Generator, total: np.ndarray, m: int, spectrum_range: tuple[float, float]
) -> list[np.ndarray]:
    """PD family B_1..B_m with sum exactly total (congruence-normalized shares)."""
    n = total.shape[0]
    shares = [rand_pd(rng, n, spectrum_range) for _ in range(m)]
    S = sum(shares)
    w, U = np.linalg.eigh(S)
    S_inv_half = (U * (1.0 / np.sqrt(w))) @ U.conj().T
    wt, Ut = np.linalg.eigh(hermitize(total))
    T_half = (Ut * np.sqrt(wt)) @ Ut.conj().T
    carrier = T_half @ S_inv_half
    return [hermitize(carrier @ C @ carrier.conj().T) for C in shares]
