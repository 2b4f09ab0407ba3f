"""Deterministic state construction: named states, closed-form invariant
values for the pin-or-mix and pinned-GHZ witness families, seeded random
ensembles, and the local-measurement averaging scenario.

Randomness uses the counter-based Philox generator.  ``stream_rng(seed,
*key)`` derives independent streams through ``SeedSequence(seed,
spawn_key=key)``; ensemble member k always draws from stream ``(k,)``, so
ensembles are reproducible and may be generated in any order or in
parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dims import SubsystemDims, mask_size
from .invariants import c_t
from .states import DensityMatrix, PureState
from .tensor import block_product

RECIPE_KINDS = (
    "ghz",
    "bell_phi_plus",
    "w",
    "product_basis",
    "pinned_mix",
    "pinned_ghz",
    "bell_mixed_12",
    "bell_mixed_13",
    "haar_pure",
    "ginibre_mixed",
)


def stream_rng(seed: int, *key: int) -> np.random.Generator:
    """Philox generator for the sub-stream ``key`` of ``seed``."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=key))
    )


# ---------------------------------------------------------------------------
# named states


def ghz_state(n: int, d: int = 2) -> PureState:
    """(1/sqrt(d)) sum_k |k...k> on n parties of local dimension d."""
    dims = SubsystemDims((d,) * n)
    vec = np.zeros(dims.total, dtype=np.complex128)
    stride = (dims.total - 1) // (d - 1)
    for k in range(d):
        vec[k * stride] = 1.0 / math.sqrt(d)
    return PureState(vec, dims)


def bell_state() -> PureState:
    """The two-qubit state (|00> + |11>)/sqrt(2)."""
    return ghz_state(2, 2)


def w_state(n: int) -> PureState:
    """Equal superposition of the single-excitation basis states."""
    dims = SubsystemDims((2,) * n)
    vec = np.zeros(dims.total, dtype=np.complex128)
    for j in range(n):
        vec[1 << (n - 1 - j)] = 1.0 / math.sqrt(n)
    return PureState(vec, dims)


def basis_product_state(dims: SubsystemDims, excited: int = 0) -> PureState:
    """Computational basis product state |x_1...x_N> with x_j = 1 exactly
    for the parties in ``excited``."""
    dims.validate_mask(excited)
    index = 0
    for j in range(1, dims.n + 1):
        index *= dims.dims[j - 1]
        if excited >> (j - 1) & 1:
            index += 1
    vec = np.zeros(dims.total, dtype=np.complex128)
    vec[index] = 1.0
    return PureState(vec, dims)


def pinned_mix_state(n: int, pins: int, d: int = 2) -> DensityMatrix:
    """Product state with |0><0| on the pinned parties and the maximally
    mixed state elsewhere."""
    dims = SubsystemDims((d,) * n)
    dims.validate_mask(pins)
    mat = np.array([[1.0 + 0.0j]])
    for j in range(1, n + 1):
        if pins >> (j - 1) & 1:
            local = np.zeros((d, d), dtype=np.complex128)
            local[0, 0] = 1.0
        else:
            local = np.eye(d, dtype=np.complex128) / d
        mat = np.kron(mat, local)
    return DensityMatrix(mat, dims)


def pinned_ghz_state(n: int, pins: int) -> PureState:
    """GHZ correlations between party 1 and every un-pinned party, with
    the pinned parties (a subset of {2..n}) fixed to |0>."""
    dims = SubsystemDims((2,) * n)
    dims.validate_mask(pins)
    if pins & 0b1:
        raise ValueError("party 1 cannot be pinned")
    vec = np.zeros(dims.total, dtype=np.complex128)
    excited = dims.full_mask ^ pins
    lo = 0
    hi = 0
    for j in range(1, n + 1):
        lo *= 2
        hi *= 2
        if excited >> (j - 1) & 1:
            hi += 1
    vec[lo] = vec[hi] = 1.0 / math.sqrt(2.0)
    return PureState(vec, dims)


def assemble_product(
    dims: SubsystemDims, parts: dict[int, np.ndarray]
) -> DensityMatrix:
    """Product state from block density matrices keyed by party mask; the
    masks must partition the parties."""
    covered = 0
    for s in parts:
        covered |= s
    if covered != dims.full_mask:
        raise ValueError("product blocks must cover all parties")
    return DensityMatrix(block_product(parts, dims), dims)


def bell_pair_with_mixed_qubit(pair: tuple[int, int] = (1, 2)) -> DensityMatrix:
    """Three qubits: |Phi+><Phi+| on ``pair`` and the maximally mixed
    state on the remaining party."""
    a, b = sorted(pair)
    if not (1 <= a < b <= 3):
        raise ValueError(f"pair must name two of the three parties, got {pair}")
    dims = SubsystemDims((2, 2, 2))
    pair_mask = 1 << (a - 1) | 1 << (b - 1)
    bell = bell_state().density()
    mixed = np.eye(2, dtype=np.complex128) / 2.0
    return assemble_product(
        dims, {pair_mask: bell.matrix, dims.full_mask ^ pair_mask: mixed}
    )


# ---------------------------------------------------------------------------
# random ensembles


def haar_pure(dims: SubsystemDims, seed: int, member: int = 0) -> PureState:
    """Haar-random pure state via normalized complex Gaussians."""
    rng = stream_rng(seed, member)
    z = rng.normal(size=dims.total) + 1j * rng.normal(size=dims.total)
    return PureState(z / np.linalg.norm(z), dims)


def ginibre_mixed(
    dims: SubsystemDims, seed: int, member: int = 0, rank: int | None = None
) -> DensityMatrix:
    """Random density matrix G G^dag / Tr(G G^dag) with a D x rank complex
    Gaussian G (full rank by default)."""
    d = dims.total
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in 1..{d}, got {rank}")
    rng = stream_rng(seed, member)
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    mat = g @ g.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix(mat / np.trace(mat).real, dims)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian with phase fixing."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_local_unitary(dims: SubsystemDims, rng: np.random.Generator) -> np.ndarray:
    """Tensor product of independent Haar-random local unitaries."""
    u = np.array([[1.0 + 0.0j]])
    for d in dims.dims:
        u = np.kron(u, haar_unitary(d, rng))
    return u


def random_psd(
    dims: SubsystemDims, rng: np.random.Generator, trace_scale: float = 1.0
) -> np.ndarray:
    """Random PSD operator G G^dag rescaled to the requested trace."""
    d = dims.total
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    mat = g @ g.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return mat * (trace_scale / np.trace(mat).real)


# ---------------------------------------------------------------------------
# closed-form invariant values of the witness families


def pinned_mix_invariant(n: int, pins: int, t: int) -> float:
    """Closed-form squared invariant of the pin-or-mix qubit family:
    0 when the pins meet ``t``, else 4^|pins| 3^(n-|pins|-|t|) / 2^n."""
    if pins & t:
        return 0.0
    return 4 ** mask_size(pins) * 3 ** (n - mask_size(pins) - mask_size(t)) / 2**n


def pinned_ghz_invariant(n: int, pins: int, t: int) -> float:
    """Closed-form squared invariant of the pinned-GHZ family.

    Zero when the pins meet ``t`` and for every odd-size ``t`` (pure
    states lose all odd-parity invariants); for even-size ``t`` disjoint
    from the pins the value is [t empty] 2^(n-1) + 2^|pins|.
    """
    if pins & 0b1:
        raise ValueError("party 1 cannot be pinned")
    if pins & t or mask_size(t) % 2 == 1:
        return 0.0
    base = 2 ** (n - 1) if t == 0 else 0
    return float(base + 2 ** mask_size(pins))


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class StateRecipe:
    """Declarative description of a buildable state."""

    kind: str
    dims: SubsystemDims
    s: int | None = None
    seed: int | None = None
    rank: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in RECIPE_KINDS:
            raise ValueError(f"unknown recipe kind {self.kind!r}")
        if self.kind in ("haar_pure", "ginibre_mixed") and self.seed is None:
            raise ValueError(f"recipe {self.kind!r} requires a seed")
        if self.kind in ("pinned_mix", "pinned_ghz") and self.s is None:
            raise ValueError(f"recipe {self.kind!r} requires a party mask s")


def build(recipe: StateRecipe) -> DensityMatrix | PureState:
    """Construct the state described by ``recipe``; deterministic for a
    fixed seed."""
    dims = recipe.dims
    kind = recipe.kind
    if kind == "ghz":
        d = dims.dims[0]
        if any(dj != d for dj in dims.dims):
            raise ValueError("ghz requires equal local dimensions")
        return ghz_state(dims.n, d)
    if kind == "bell_phi_plus":
        if dims.dims != (2, 2):
            raise ValueError("bell_phi_plus requires dims [2, 2]")
        return bell_state()
    if kind == "w":
        if any(dj != 2 for dj in dims.dims):
            raise ValueError("w requires qubits")
        return w_state(dims.n)
    if kind == "product_basis":
        return basis_product_state(dims, recipe.s or 0)
    if kind == "pinned_mix":
        d = dims.dims[0]
        if any(dj != d for dj in dims.dims):
            raise ValueError("pinned_mix requires equal local dimensions")
        return pinned_mix_state(dims.n, recipe.s, d=d)
    if kind == "pinned_ghz":
        if any(dj != 2 for dj in dims.dims):
            raise ValueError("pinned_ghz requires qubits")
        return pinned_ghz_state(dims.n, recipe.s)
    if kind in ("bell_mixed_12", "bell_mixed_13"):
        if dims.dims != (2, 2, 2):
            raise ValueError(f"{kind} requires dims [2, 2, 2]")
        pair = (1, 2) if kind == "bell_mixed_12" else (1, 3)
        return bell_pair_with_mixed_qubit(pair)
    if kind == "haar_pure":
        return haar_pure(dims, recipe.seed)
    if kind == "ginibre_mixed":
        return ginibre_mixed(dims, recipe.seed, rank=recipe.rank)
    raise ValueError(f"unknown recipe kind {kind!r}")


# ---------------------------------------------------------------------------
# local-measurement averaging scenario


def measurement_kraus_pair(d_first: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Two-outcome POVM on the first party: |+><+| and |-><-| on the 0/1
    subspace, each completed by (1/sqrt 2) |j><j| on the levels j >= 2."""
    if d_first < 2:
        raise ValueError("the first party needs local dimension >= 2")
    plus = np.zeros((d_first, d_first), dtype=np.complex128)
    minus = np.zeros((d_first, d_first), dtype=np.complex128)
    plus[:2, :2] = 0.5 * np.array([[1, 1], [1, 1]])
    minus[:2, :2] = 0.5 * np.array([[1, -1], [-1, 1]])
    for j in range(2, d_first):
        plus[j, j] = minus[j, j] = 1.0 / math.sqrt(2.0)
    return plus, minus


def monotone_counterexample(d_first: int = 2) -> tuple[float, float]:
    """Average of the two-minus-sign invariant before and after a local
    two-outcome measurement on the first party of a three-party GHZ state.

    Returns ``(before, after_average)``; the average exceeds the initial
    value (sqrt 2 versus 1 for qubits), so the invariant cannot be an
    entanglement monotone.
    """
    dims = SubsystemDims((d_first, 2, 2))
    vec = np.zeros(dims.total, dtype=np.complex128)
    vec[0] = 1.0 / math.sqrt(2.0)
    vec[4 + 2 + 1] = 1.0 / math.sqrt(2.0)
    psi = PureState(vec, dims)
    t = 0b110
    before = c_t(psi.density(), t)
    after = 0.0
    eye_rest = np.eye(4, dtype=np.complex128)
    for k in measurement_kraus_pair(d_first):
        branch = np.kron(k, eye_rest) @ psi.vector
        prob = float(np.vdot(branch, branch).real)
        if prob <= 1e-15:
            continue
        outcome = PureState(branch / math.sqrt(prob), dims)
        after += prob * c_t(outcome.density(), t)
    return before, after
