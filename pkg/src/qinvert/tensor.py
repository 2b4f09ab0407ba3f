"""Dense operator algebra on multipartite tensor-product spaces.

Operators are plain complex ``ndarray``s of shape (D, D) accompanied by a
:class:`~qinvert.dims.SubsystemDims`.  Partial traces contract parties one
at a time in ascending party order, which fixes the floating-point
summation order and makes trace compositions reproducible.
"""

from __future__ import annotations

import numpy as np

from .dims import SubsystemDims, parties_from_mask

TOL_HERM = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def herm_defect(a: np.ndarray) -> float:
    """Largest absolute entry of a - a^dagger."""
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a: np.ndarray, tol: float = TOL_HERM) -> bool:
    return herm_defect(a) <= tol


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with ``a`` as the left (most significant) factor."""
    return np.kron(a, b)


def kron_all(ops) -> np.ndarray:
    out = np.asarray(ops[0])
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def partial_trace(mat: np.ndarray, dims: SubsystemDims, keep: int) -> np.ndarray:
    """Trace out the complement of ``keep``; the result lives on the kept
    parties in their original order.  ``keep = 0`` yields the 1x1 matrix
    holding the full trace."""
    dims.validate_mask(keep)
    if keep == dims.full_mask:
        return np.array(mat, dtype=np.complex128)
    tensor = np.asarray(mat, dtype=np.complex128).reshape(dims.dims + dims.dims)
    remaining = list(range(1, dims.n + 1))
    for p in parties_from_mask(dims.complement(keep)):
        i = remaining.index(p)
        tensor = np.trace(tensor, axis1=i, axis2=i + len(remaining))
        remaining.remove(p)
    d_keep = dims.block_dim(keep)
    return tensor.reshape(d_keep, d_keep)


def embed(op_s: np.ndarray, s: int, dims: SubsystemDims) -> np.ndarray:
    """Pad ``op_s`` (acting on the parties in ``s``, in party order) with
    identities on the complement and permute factors back into the global
    party order.  ``s = 0`` promotes a 1x1 operator to a multiple of the
    identity."""
    dims.validate_mask(s)
    d_total = dims.total
    op_s = np.asarray(op_s, dtype=np.complex128)
    if s == 0:
        if op_s.shape != (1, 1):
            raise ValueError(f"empty mask expects a 1x1 operator, got {op_s.shape}")
        return op_s[0, 0] * np.eye(d_total, dtype=np.complex128)
    d_s = dims.block_dim(s)
    if op_s.shape != (d_s, d_s):
        raise ValueError(
            f"operator shape {op_s.shape} does not match subsystem dimension {d_s}"
        )
    comp = dims.complement(s)
    padded = np.kron(op_s, np.eye(dims.block_dim(comp), dtype=np.complex128))
    if comp == 0:
        return padded
    order = parties_from_mask(s) + parties_from_mask(comp)
    ordered_dims = tuple(dims.dims[p - 1] for p in order)
    perm = [order.index(j) for j in range(1, dims.n + 1)]
    axes = perm + [p + dims.n for p in perm]
    tensor = padded.reshape(ordered_dims + ordered_dims)
    return tensor.transpose(axes).reshape(d_total, d_total)


def embed_single(op: np.ndarray, party: int, dims: SubsystemDims) -> np.ndarray:
    """Fast path of :func:`embed` for a single party (no permutation)."""
    if not 1 <= party <= dims.n:
        raise ValueError(f"party {party} out of range 1..{dims.n}")
    d = dims.dims[party - 1]
    if op.shape != (d, d):
        raise ValueError(f"operator shape {op.shape} does not match d_{party} = {d}")
    left = int(np.prod(dims.dims[: party - 1], initial=1))
    right = int(np.prod(dims.dims[party:], initial=1))
    out = op
    if left > 1:
        out = np.kron(np.eye(left, dtype=np.complex128), out)
    if right > 1:
        out = np.kron(out, np.eye(right, dtype=np.complex128))
    return np.asarray(out, dtype=np.complex128)


def block_product(parts: dict[int, np.ndarray], dims: SubsystemDims) -> np.ndarray:
    """Tensor product of block operators keyed by disjoint party masks,
    assembled in the global party order; uncovered parties get the
    identity."""
    seen = 0
    out = np.eye(dims.total, dtype=np.complex128)
    for s in sorted(parts):
        if s & seen:
            raise ValueError("blocks must act on disjoint party sets")
        seen |= s
        out = out @ embed(parts[s], s, dims)
    return out


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """Tr(a @ b) without forming the product."""
    return complex(np.einsum("ij,ji->", a, b))


def purity_value(mat: np.ndarray) -> float:
    """Tr(mat^2) as a real number (the input is assumed Hermitian)."""
    return trace_product(mat, mat).real


def subset_purities(mat: np.ndarray, dims: SubsystemDims) -> dict[int, float]:
    """Tr(rho_S^2) for every subset S, keyed by bitmask.

    The empty subset maps to (Tr rho)^2, the value the scalar reduction
    contributes to sign-alternating purity sums.
    """
    out: dict[int, float] = {}
    for s in dims.subset_masks():
        if s == 0:
            out[s] = float(np.trace(mat).real) ** 2
        else:
            out[s] = purity_value(partial_trace(mat, dims, s))
    return out


def min_eigenvalue(h: np.ndarray, tol_herm: float = TOL_HERM) -> float:
    """Smallest eigenvalue of a Hermitian operator."""
    defect = herm_defect(h)
    if defect > tol_herm:
        raise ValueError(f"operator is not Hermitian: max |h - h^dag| = {defect:.3e}")
    return float(np.linalg.eigvalsh(h)[0])
