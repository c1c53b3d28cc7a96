"""Dense complex operator algebra over labelled tensor factors.

Every operator carries an ordered list of factors, each factor a pair
(dimA, dimB) of local dimensions.  The flattened matrix index runs
row-major over (a0, b0, a1, b1, ...), so the B sides of all factors
together form the global A:B cut used by the partial transpose.  A
plain, non-bipartite subsystem is encoded as (d, 1).

All values are immutable after construction and every operation is a
pure function; concurrent use needs no synchronisation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Dense desk-scale budget: matrices with more than 2**16 entries are
# refused by the protocol and synthesis drivers (dimension <= 256).
MAX_ENTRIES = 2 ** 16

DEFAULT_HERM_TOL = 1e-9
DEFAULT_PSD_TOL = 1e-10


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds the dense-storage entry budget."""


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2


@dataclass(frozen=True)
class FactorShape:
    """Ordered list of (dimA, dimB) local dimension pairs."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        factors = tuple((int(a), int(b)) for a, b in self.factors)
        if not factors:
            raise ValueError("shape needs at least one factor")
        if any(a < 1 or b < 1 for a, b in factors):
            raise ValueError(f"factor dimensions must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def n_factors(self) -> int:
        return len(self.factors)

    @property
    def factor_dims(self) -> tuple[int, ...]:
        """Total dimension a*b of each factor."""
        return tuple(a * b for a, b in self.factors)

    @property
    def total_dim(self) -> int:
        return math.prod(self.factor_dims)

    def concat(self, other: FactorShape) -> FactorShape:
        return FactorShape(self.factors + other.factors)

    def copies(self, n: int) -> FactorShape:
        if n < 1:
            raise ValueError("copy count must be >= 1")
        return FactorShape(self.factors * n)


def plain_shape(d: int) -> FactorShape:
    """Shape of a single non-bipartite d-dimensional system."""
    return FactorShape(((d, 1),))


def bipartite_shape(d_a: int, d_b: int) -> FactorShape:
    return FactorShape(((d_a, d_b),))


@dataclass(frozen=True)
class LabeledOperator:
    """Square complex matrix together with its factor structure."""

    shape: FactorShape
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128, order="C")
        n = self.shape.total_dim
        if m.shape != (n, n):
            raise ValueError(f"entries have shape {m.shape}, expected ({n}, {n})")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.shape.total_dim

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.entries - self.entries.conj().T).max())

    def is_hermitian(self, tol: float = DEFAULT_HERM_TOL) -> bool:
        return self.hermiticity_defect() <= tol

    def __add__(self, other: LabeledOperator) -> LabeledOperator:
        _require_same_shape(self, other)
        return LabeledOperator(self.shape, self.entries + other.entries)

    def __sub__(self, other: LabeledOperator) -> LabeledOperator:
        _require_same_shape(self, other)
        return LabeledOperator(self.shape, self.entries - other.entries)

    def __mul__(self, scalar: complex) -> LabeledOperator:
        return LabeledOperator(self.shape, self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> LabeledOperator:
        return LabeledOperator(self.shape, -self.entries)


def identity_operator(shape: FactorShape) -> LabeledOperator:
    return LabeledOperator(shape, np.eye(shape.total_dim))


def _require_same_shape(a: LabeledOperator, b: LabeledOperator) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape.factors} vs {b.shape.factors}")


def _require_hermitian(x: LabeledOperator, tol: float = DEFAULT_HERM_TOL) -> None:
    defect = x.hermiticity_defect()
    if defect > tol:
        raise ValueError(f"operator is not Hermitian (defect {defect:.3e} > {tol:.1e})")


@dataclass(frozen=True)
class DensityOperator:
    """Unit-trace positive-semidefinite LabeledOperator.

    Validation tolerances: trace within ``trace_tol`` of one, Hermitian
    within ``trace_tol``, minimum eigenvalue >= -``psd_tol`` * trace.
    """

    op: LabeledOperator
    trace_tol: float = 1e-12
    psd_tol: float = DEFAULT_PSD_TOL

    def __post_init__(self) -> None:
        tr = self.op.trace()
        if abs(tr - 1.0) > self.trace_tol:
            raise ValueError(f"trace {tr} is not 1 within {self.trace_tol:.1e}")
        defect = self.op.hermiticity_defect()
        if defect > self.trace_tol:
            raise ValueError(f"not Hermitian: defect {defect:.3e}")
        lo = float(np.linalg.eigvalsh(hermitian_part(self.op.entries)).min())
        if lo < -self.psd_tol * abs(tr):
            raise ValueError(f"not positive semidefinite: min eigenvalue {lo:.3e}")

    @property
    def shape(self) -> FactorShape:
        return self.op.shape

    @property
    def dim(self) -> int:
        return self.op.dim

    @property
    def entries(self) -> np.ndarray:
        return self.op.entries


def density_from_matrix(entries: np.ndarray, shape: FactorShape, **tols) -> DensityOperator:
    return DensityOperator(LabeledOperator(shape, entries), **tols)


def density_from_vector(psi: np.ndarray, shape: FactorShape) -> DensityOperator:
    """Rank-1 density operator |psi><psi| / <psi|psi>."""
    v = np.asarray(psi, dtype=np.complex128).ravel()
    norm2 = float(np.vdot(v, v).real)
    if norm2 <= 0:
        raise ValueError("zero state vector")
    return density_from_matrix(np.outer(v, v.conj()) / norm2, shape)


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted in descending order."""

    eigenvalues: tuple[float, ...]

    @property
    def max(self) -> float:
        return self.eigenvalues[0]

    @property
    def min(self) -> float:
        return self.eigenvalues[-1]


@dataclass(frozen=True)
class PsdReport:
    """Outcome of a positive-semidefiniteness test with its witness."""

    ok: bool
    min_eigenvalue: float
    tol: float


# ---------------------------------------------------------------------------
# operations


def tensor(a: LabeledOperator, b: LabeledOperator) -> LabeledOperator:
    """Kronecker product; factor lists concatenate, traces multiply."""
    return LabeledOperator(a.shape.concat(b.shape), np.kron(a.entries, b.entries))


def tensor_all(ops: list[LabeledOperator]) -> LabeledOperator:
    out = ops[0]
    for x in ops[1:]:
        out = tensor(out, x)
    return out


def tensor_power(x: LabeledOperator, n: int) -> LabeledOperator:
    return tensor_all([x] * n)


def partial_trace(x: LabeledOperator, keep) -> LabeledOperator:
    """Trace out every factor not listed in ``keep``.

    Kept factors appear in their original order; the trace is preserved.
    """
    keep = sorted(set(int(i) for i in keep))
    k = x.shape.n_factors
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= k:
        raise ValueError(f"keep indices {keep} out of range for {k} factors")
    dims = list(x.shape.factor_dims)
    m = x.entries
    for idx in reversed(range(k)):
        if idx in keep:
            continue
        pre = math.prod(dims[:idx])
        post = math.prod(dims[idx + 1:])
        t = m.reshape(pre, dims[idx], post, pre, dims[idx], post)
        m = np.einsum("pdqrds->pqrs", t).reshape(pre * post, pre * post)
        del dims[idx]
    return LabeledOperator(FactorShape(tuple(x.shape.factors[i] for i in keep)), m)


def partial_transpose(x: LabeledOperator) -> LabeledOperator:
    """Transpose the B side of every factor (the global A:B cut).

    Involutive, trace-preserving, Hermiticity-preserving.
    """
    n = x.dim
    m = x.entries
    # running dims with the current factor's B index isolated
    for idx, (a, b) in enumerate(x.shape.factors):
        if b == 1:
            continue
        pre = math.prod(x.shape.factor_dims[:idx]) * a
        post = math.prod(x.shape.factor_dims[idx + 1:])
        t = m.reshape(pre, b, post, pre, b, post)
        m = t.transpose(0, 4, 2, 3, 1, 5).reshape(n, n)
    return LabeledOperator(x.shape, m)


def permute_factors(x: LabeledOperator, perm) -> LabeledOperator:
    """Reorder factors so that new position j holds old factor perm[j]."""
    perm = [int(p) for p in perm]
    k = x.shape.n_factors
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of range({k})")
    if 2 * k > 32:
        raise ResourceLimitError("too many factors to permute")
    dims = x.shape.factor_dims
    t = x.entries.reshape(dims + dims)
    axes = perm + [k + p for p in perm]
    n = x.dim
    out = t.transpose(axes).reshape(n, n)
    return LabeledOperator(FactorShape(tuple(x.shape.factors[p] for p in perm)), out)


def merge_factors(x: LabeledOperator) -> LabeledOperator:
    """Regroup all factors into a single (prod dimA, prod dimB) factor.

    Permutes the tensor axes so all A sides precede all B sides; the
    global A:B cut is unchanged.
    """
    facs = x.shape.factors
    k = len(facs)
    if 4 * k > 32:
        raise ResourceLimitError("too many factors to merge")
    dims = [d for a, b in facs for d in (a, b)]
    t = x.entries.reshape(dims + dims)
    a_axes = [2 * i for i in range(k)]
    b_axes = [2 * i + 1 for i in range(k)]
    row = a_axes + b_axes
    axes = row + [2 * k + ax for ax in row]
    n = x.dim
    da = math.prod(a for a, _ in facs)
    db = math.prod(b for _, b in facs)
    return LabeledOperator(bipartite_shape(da, db), t.transpose(axes).reshape(n, n))


def relabel(x: LabeledOperator, new_shape: FactorShape) -> LabeledOperator:
    """Reinterpret the factor structure without touching the entries.

    Valid only when the flattened index layout is unchanged, i.e. the
    sequences of non-trivial local dimensions agree.
    """
    old = [d for pair in x.shape.factors for d in pair if d > 1]
    new = [d for pair in new_shape.factors for d in pair if d > 1]
    if old != new or new_shape.total_dim != x.dim:
        raise ValueError(f"layout-incompatible relabel {x.shape.factors} -> {new_shape.factors}")
    return LabeledOperator(new_shape, x.entries)


def eig_hermitian(x: LabeledOperator, tol: float = DEFAULT_HERM_TOL) -> tuple[Spectrum, np.ndarray]:
    """Eigendecomposition of a Hermitian operator.

    Returns the spectrum sorted descending and the matrix of matching
    eigenvector columns.
    """
    _require_hermitian(x, tol)
    w, v = np.linalg.eigh(hermitian_part(x.entries))
    order = np.argsort(w)[::-1]
    return Spectrum(tuple(float(t) for t in w[order])), v[:, order]


def abs_operator(x: LabeledOperator) -> LabeledOperator:
    """Operator absolute value V diag(|lambda|) V^dagger of a Hermitian x."""
    spec, v = eig_hermitian(x)
    w = np.abs(np.array(spec.eigenvalues))
    return LabeledOperator(x.shape, hermitian_part((v * w) @ v.conj().T))


def trace_norm(x: LabeledOperator) -> float:
    """Sum of absolute eigenvalues (Hermitian inputs only)."""
    spec, _ = eig_hermitian(x)
    return float(np.abs(np.array(spec.eigenvalues)).sum())


def trace_distance(a: LabeledOperator, b: LabeledOperator) -> float:
    return 0.5 * trace_norm(a - b)


def is_psd(x: LabeledOperator, tol: float = DEFAULT_PSD_TOL) -> PsdReport:
    """Test min eigenvalue >= -tol * max(1, |trace|); reports the witness."""
    _require_hermitian(x)
    lo = float(np.linalg.eigvalsh(hermitian_part(x.entries)).min())
    scale = max(1.0, abs(x.trace()))
    return PsdReport(ok=lo >= -tol * scale, min_eigenvalue=lo, tol=tol)
