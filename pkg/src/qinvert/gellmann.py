"""Generalized Gell-Mann generators with a flat channel-oriented labeling.

For local dimension d the basis holds d^2 Hermitian matrices h_0..h_{d^2-1}
normalized to Tr(h_m h_n) = d delta_mn.  The flat index encodes the
generator type for 0 <= k < l < d:

    h_0           identity
    h_{l^2+2k}    x_{kl} = sqrt(d/2) (|k><l| + |l><k|)
    h_{l^2+2k+1}  y_{kl} = sqrt(d/2) (-i|k><l| + i|l><k|)
    h_{l^2+2l}    z_l   = sqrt(d/(l(l+1))) (-l|l><l| + sum_{k<l} |k><k|)

With this labeling the even offsets h_{l^2+2k} (k <= l) implement the
depolarizing-plus-identity channel and the odd offsets h_{l^2+2k+1}
(k < l) the single-party inversion channel; see :mod:`qinvert.inversion`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True, eq=False)
class GellMannBasis:
    d: int
    matrices: tuple[np.ndarray, ...]
    kinds: tuple[str, ...]


def _x(k: int, l: int, d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.complex128)
    m[k, l] = m[l, k] = math.sqrt(d / 2.0)
    return m


def _y(k: int, l: int, d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.complex128)
    m[k, l] = -1j * math.sqrt(d / 2.0)
    m[l, k] = 1j * math.sqrt(d / 2.0)
    return m


def _z(l: int, d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.complex128)
    scale = math.sqrt(d / (l * (l + 1.0)))
    for k in range(l):
        m[k, k] = scale
    m[l, l] = -l * scale
    return m


@lru_cache(maxsize=None)
def build_basis(d: int) -> GellMannBasis:
    """Construct (and cache) the basis for local dimension ``d``."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    matrices: list[np.ndarray | None] = [None] * (d * d)
    kinds: list[str] = [""] * (d * d)
    matrices[0] = np.eye(d, dtype=np.complex128)
    kinds[0] = "identity"
    for l in range(1, d):
        for k in range(l):
            matrices[l * l + 2 * k] = _x(k, l, d)
            kinds[l * l + 2 * k] = "x"
            matrices[l * l + 2 * k + 1] = _y(k, l, d)
            kinds[l * l + 2 * k + 1] = "y"
        matrices[l * l + 2 * l] = _z(l, d)
        kinds[l * l + 2 * l] = "z"
    for m in matrices:
        m.setflags(write=False)
    return GellMannBasis(d=d, matrices=tuple(matrices), kinds=tuple(kinds))


def plus_channel_indices(d: int) -> tuple[int, ...]:
    """Flat indices {l^2 + 2k : 0 <= k <= l < d}: identity, x and z types."""
    return tuple(l * l + 2 * k for l in range(d) for k in range(l + 1))


def minus_channel_indices(d: int) -> tuple[int, ...]:
    """Flat indices {l^2 + 2k + 1 : 0 <= k < l < d}: the y types."""
    return tuple(l * l + 2 * k + 1 for l in range(1, d) for k in range(l))


def trace_resolution(a: np.ndarray, basis: GellMannBasis) -> np.ndarray:
    """(1/d) sum_m h_m a h_m, which resolves to Tr(a) * identity."""
    _check_dim(a, basis)
    out = np.zeros_like(a, dtype=np.complex128)
    for h in basis.matrices:
        out += h @ a @ h
    return out / basis.d


def transpose_resolution(a: np.ndarray, basis: GellMannBasis) -> np.ndarray:
    """(1/d) sum_m h_m^T a h_m, which resolves to a^T."""
    _check_dim(a, basis)
    out = np.zeros_like(a, dtype=np.complex128)
    for h in basis.matrices:
        out += h.T @ a @ h
    return out / basis.d


def _check_dim(a: np.ndarray, basis: GellMannBasis) -> None:
    if a.shape != (basis.d, basis.d):
        raise ValueError(f"operator shape {a.shape} does not match d = {basis.d}")
