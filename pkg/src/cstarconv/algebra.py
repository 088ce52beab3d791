"""Finite-dimensional C*-algebras given by block-matrix data.

An algebra is a direct sum of full matrix blocks ``M_{n_1} + ... + M_{n_k}``.
Elements are tuples of per-block complex matrices; linear functionals are
encoded by dual block matrices via the trace pairing

    mu(a) = sum_i trace(rho_i @ a_i).

The canonical coordinate basis is the family of matrix units, blocks in
declared order and row-major within each block; every dense matrix in this
package (coproducts, translation operators, semigroup maps) acts on these
coordinates.  All values are immutable after construction and every
operation is a pure function, so everything is safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import PreconditionError, ShapeError

#: Default absolute tolerance for every numerical predicate in the package.
DEFAULT_TOL = 1e-9


def _frozen(array, dtype=np.complex128) -> np.ndarray:
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


def hermitian_defect(matrix: np.ndarray) -> float:
    """Max-abs deviation of a square matrix from its conjugate transpose."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def min_hermitian_eigenvalue(matrix: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian part of a square matrix."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0).min())


@dataclass(frozen=True)
class Algebra:
    """A finite multi-matrix C*-algebra, described by its block dimensions.

    Parameters
    ----------
    blocks : tuple of int
        Ordered block sizes ``(n_1, ..., n_k)``, each at least 1.

    Attributes
    ----------
    dim : int
        Coordinate dimension ``sum(n_i ** 2)`` (number of matrix units).
    rep_dim : int
        Dimension ``sum(n_i)`` of the faithful block-diagonal representation.
    """

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(n) for n in self.blocks)
        if len(blocks) == 0 or any(n < 1 for n in blocks):
            raise ShapeError(f"block dimensions must be positive, got {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @cached_property
    def dim(self) -> int:
        return int(sum(n * n for n in self.blocks))

    @cached_property
    def rep_dim(self) -> int:
        return int(sum(self.blocks))

    @cached_property
    def coord_offsets(self) -> tuple[int, ...]:
        """Start index of each block in the coordinate vector."""
        starts = np.concatenate([[0], np.cumsum([n * n for n in self.blocks])])
        return tuple(int(s) for s in starts[:-1])

    # -- constructors -----------------------------------------------------

    def element(self, blocks) -> "Element":
        """Wrap per-block matrices as an element, validating shapes."""
        mats = tuple(_frozen(b) for b in blocks)
        self._check_shapes(mats)
        return Element(mats)

    def functional(self, dual_blocks) -> "Functional":
        """Wrap per-block dual matrices as a functional, validating shapes."""
        mats = tuple(_frozen(b) for b in dual_blocks)
        self._check_shapes(mats)
        return Functional(mats)

    def zero(self) -> "Element":
        return Element(tuple(_frozen(np.zeros((n, n))) for n in self.blocks))

    def unit(self) -> "Element":
        return Element(tuple(_frozen(np.eye(n)) for n in self.blocks))

    def basis_element(self, block: int, row: int, col: int) -> "Element":
        """The matrix unit sitting at (row, col) of the given block."""
        mats = [np.zeros((n, n), dtype=np.complex128) for n in self.blocks]
        mats[block][row, col] = 1.0
        return Element(tuple(_frozen(m) for m in mats))

    def basis(self) -> list["Element"]:
        """All matrix units in canonical (block, row-major) order."""
        out = []
        for i, n in enumerate(self.blocks):
            for r in range(n):
                for s in range(n):
                    out.append(self.basis_element(i, r, s))
        return out

    def dual_basis(self) -> list["Functional"]:
        """Coordinate functionals: the k-th one reads off coordinate k."""
        return [
            self.functional_from_dual_coords(row)
            for row in np.eye(self.dim, dtype=np.complex128)
        ]

    # -- coordinates -------------------------------------------------------

    def to_coords(self, a: "Element") -> np.ndarray:
        """Coordinates of an element in the canonical matrix-unit basis."""
        self._check_shapes(a.blocks)
        return np.concatenate([b.ravel() for b in a.blocks])

    def from_coords(self, coords) -> "Element":
        coords = np.asarray(coords, dtype=np.complex128).ravel()
        if coords.size != self.dim:
            raise ShapeError(f"expected {self.dim} coordinates, got {coords.size}")
        mats = []
        for off, n in zip(self.coord_offsets, self.blocks):
            mats.append(_frozen(coords[off : off + n * n].reshape(n, n)))
        return Element(tuple(mats))

    def dual_coords(self, mu: "Functional") -> np.ndarray:
        """Row vector with ``mu(a) = dual_coords(mu) @ to_coords(a)``."""
        self._check_shapes(mu.dual_blocks)
        return np.concatenate([b.T.ravel() for b in mu.dual_blocks])

    def functional_from_dual_coords(self, coords) -> "Functional":
        coords = np.asarray(coords, dtype=np.complex128).ravel()
        if coords.size != self.dim:
            raise ShapeError(f"expected {self.dim} dual coordinates, got {coords.size}")
        mats = []
        for off, n in zip(self.coord_offsets, self.blocks):
            mats.append(_frozen(coords[off : off + n * n].reshape(n, n).T))
        return Functional(tuple(mats))

    def embed(self, a: "Element") -> np.ndarray:
        """Block-diagonal matrix of ``a`` in the faithful representation."""
        self._check_shapes(a.blocks)
        out = np.zeros((self.rep_dim, self.rep_dim), dtype=np.complex128)
        pos = 0
        for b, n in zip(a.blocks, self.blocks):
            out[pos : pos + n, pos : pos + n] = b
            pos += n
        return out

    # -- helpers -----------------------------------------------------------

    def _check_shapes(self, mats) -> None:
        if len(mats) != len(self.blocks):
            raise ShapeError(
                f"expected {len(self.blocks)} blocks, got {len(mats)}"
            )
        for i, (m, n) in enumerate(zip(mats, self.blocks)):
            if m.shape != (n, n):
                raise ShapeError(f"block {i} has shape {m.shape}, expected ({n}, {n})")


@dataclass(frozen=True, eq=False)
class Element:
    """An algebra element: one complex matrix per block."""

    blocks: tuple[np.ndarray, ...]

    def adjoint(self) -> "Element":
        return Element(tuple(_frozen(b.conj().T) for b in self.blocks))

    def __add__(self, other: "Element") -> "Element":
        return Element(tuple(_frozen(a + b) for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "Element") -> "Element":
        return Element(tuple(_frozen(a - b) for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "Element":
        return Element(tuple(_frozen(-a) for a in self.blocks))

    def __mul__(self, other):
        if isinstance(other, Element):
            return Element(
                tuple(_frozen(a @ b) for a, b in zip(self.blocks, other.blocks))
            )
        return Element(tuple(_frozen(complex(other) * a) for a in self.blocks))

    def __rmul__(self, scalar) -> "Element":
        return Element(tuple(_frozen(complex(scalar) * a) for a in self.blocks))


@dataclass(frozen=True, eq=False)
class Functional:
    """A linear functional, encoded by dual block matrices.

    Calling the functional on an :class:`Element` evaluates the trace
    pairing ``sum_i trace(rho_i @ a_i)``.
    """

    dual_blocks: tuple[np.ndarray, ...]

    def __call__(self, a: Element) -> complex:
        if len(a.blocks) != len(self.dual_blocks):
            raise ShapeError("functional and element block counts differ")
        return complex(
            sum(np.trace(r @ b) for r, b in zip(self.dual_blocks, a.blocks))
        )

    def adjoint(self) -> "Functional":
        """The functional ``a -> conj(mu(a*))``; fixed points are Hermitian."""
        return Functional(tuple(_frozen(r.conj().T) for r in self.dual_blocks))

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(
            tuple(_frozen(a + b) for a, b in zip(self.dual_blocks, other.dual_blocks))
        )

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(
            tuple(_frozen(a - b) for a, b in zip(self.dual_blocks, other.dual_blocks))
        )

    def __neg__(self) -> "Functional":
        return Functional(tuple(_frozen(-a) for a in self.dual_blocks))

    def __mul__(self, scalar) -> "Functional":
        return Functional(
            tuple(_frozen(complex(scalar) * a) for a in self.dual_blocks)
        )

    __rmul__ = __mul__


# ---------------------------------------------------------------------------
# Norms and positivity
# ---------------------------------------------------------------------------


def element_norm(algebra: Algebra, a: Element) -> float:
    """C*-norm of an element: the largest singular value over all blocks.

    Parameters
    ----------
    algebra : Algebra
        The owning algebra (used for shape validation).
    a : Element
        The element to measure.

    Returns
    -------
    float
        ``max_i sigma_max(a_i)``; satisfies ``norm(a* a) == norm(a) ** 2``.
    """
    algebra._check_shapes(a.blocks)
    return max(
        float(np.linalg.svd(b, compute_uv=False)[0]) if b.size else 0.0
        for b in a.blocks
    )


def functional_norm(mu: Functional) -> float:
    """Dual norm of a functional: the sum of per-block trace norms.

    This is the norm dual to the block operator norm, and agrees with
    ``sup { |mu(a)| : element_norm(a) <= 1 }``; the supremum is attained by
    :func:`functional_norm_witness`.
    """
    return float(
        sum(np.linalg.svd(r, compute_uv=False).sum() for r in mu.dual_blocks)
    )


def functional_norm_witness(algebra: Algebra, mu: Functional) -> Element:
    """A norm-one element ``a`` with ``mu(a) == functional_norm(mu)``.

    Per block the witness is the adjoint of the polar unitary of the dual
    matrix: with ``rho = U S Vh`` it is ``(V @ Uh)``, so that
    ``trace(rho @ a) = trace(S)``.
    """
    algebra._check_shapes(mu.dual_blocks)
    mats = []
    for rho in mu.dual_blocks:
        u, _, vh = np.linalg.svd(rho)
        mats.append(vh.conj().T @ u.conj().T)
    return Element(tuple(_frozen(m) for m in mats))


def is_hermitian(mu_or_element, tol: float = DEFAULT_TOL) -> bool:
    """Whether all (dual) blocks equal their conjugate transposes within tol."""
    blocks = getattr(mu_or_element, "dual_blocks", None)
    if blocks is None:
        blocks = mu_or_element.blocks
    return all(hermitian_defect(b) <= tol for b in blocks)


def is_positive(algebra: Algebra, a: Element, tol: float = DEFAULT_TOL) -> bool:
    """Whether a Hermitian element is positive semidefinite within tol.

    Raises
    ------
    PreconditionError
        If some block of ``a`` is not Hermitian within ``tol``.
    """
    algebra._check_shapes(a.blocks)
    defect = max(hermitian_defect(b) for b in a.blocks)
    if defect > tol:
        raise PreconditionError(
            f"element is not Hermitian within {tol} (defect {defect:.3e})"
        )
    return all(min_hermitian_eigenvalue(b) >= -tol for b in a.blocks)


def is_positive_functional(mu: Functional, tol: float = DEFAULT_TOL) -> bool:
    """Whether every dual block is positive semidefinite within tol."""
    return all(
        hermitian_defect(r) <= tol and min_hermitian_eigenvalue(r) >= -tol
        for r in mu.dual_blocks
    )


@dataclass(frozen=True)
class StateCheck:
    """Diagnostics of the state predicate for a functional."""

    hermitian_defect: float
    min_eigenvalue: float
    unit_value: complex

    def is_state(self, tol: float = DEFAULT_TOL) -> bool:
        return (
            self.hermitian_defect <= tol
            and self.min_eigenvalue >= -tol
            and abs(self.unit_value - 1.0) <= tol
        )

    def violation(self) -> float:
        """Largest deviation from the state conditions (0 for exact states)."""
        return max(
            self.hermitian_defect,
            max(0.0, -self.min_eigenvalue),
            abs(self.unit_value - 1.0),
        )


def state_check(mu: Functional) -> StateCheck:
    """Measure how far a functional is from being a state.

    A functional is a state iff every dual block is positive semidefinite
    and the value at the unit (the sum of the block traces) equals 1.
    """
    defect = max(hermitian_defect(r) for r in mu.dual_blocks)
    min_eig = min(min_hermitian_eigenvalue(r) for r in mu.dual_blocks)
    unit = complex(sum(np.trace(r) for r in mu.dual_blocks))
    return StateCheck(defect, min_eig, unit)


def is_state(mu: Functional, tol: float = DEFAULT_TOL) -> bool:
    return state_check(mu).is_state(tol)


# ---------------------------------------------------------------------------
# Tensor products (finite-dimensional minimal tensor product)
# ---------------------------------------------------------------------------


def tensor_algebra(a1: Algebra, a2: Algebra) -> Algebra:
    """Tensor product algebra: Kronecker blocks in lexicographic order."""
    return Algebra(tuple(n * m for n in a1.blocks for m in a2.blocks))


def tensor_element(a: Element, b: Element) -> Element:
    """Elementary tensor of two elements, block-pairwise Kronecker products.

    The convention is ``(X (x) Y)[(r1, r2), (s1, s2)] = X[r1, s1] * Y[r2, s2]``,
    i.e. exactly ``numpy.kron`` per block pair.
    """
    return Element(
        tuple(_frozen(np.kron(x, y)) for x in a.blocks for y in b.blocks)
    )


def tensor_functional(mu: Functional, nu: Functional) -> Functional:
    """Product functional with ``(mu (x) nu)(a (x) b) = mu(a) * nu(b)``."""
    return Functional(
        tuple(
            _frozen(np.kron(r, s))
            for r in mu.dual_blocks
            for s in nu.dual_blocks
        )
    )


# ---------------------------------------------------------------------------
# GNS construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GNSData:
    """Cyclic representation of a positive functional.

    Attributes
    ----------
    dimension : int
        Hilbert-space dimension (the rank of the Gram matrix).
    rep_matrices : np.ndarray
        Array of shape ``(algebra.dim, d, d)``: the representing matrix of
        each canonical basis element.
    cyclic_vector : np.ndarray
        Vector ``eta`` of length ``d`` with ``<eta, pi(a) eta> = omega(a)``.
    """

    dimension: int
    rep_matrices: np.ndarray
    cyclic_vector: np.ndarray

    def represent(self, algebra: Algebra, a: Element) -> np.ndarray:
        """The representing matrix of an arbitrary element."""
        coords = algebra.to_coords(a)
        return np.einsum("k,kij->ij", coords, self.rep_matrices)

    def vector_value(self, algebra: Algebra, a: Element) -> complex:
        """``<eta, pi(a) eta>``, which reproduces the source functional."""
        return complex(
            np.vdot(self.cyclic_vector, self.represent(algebra, a) @ self.cyclic_vector)
        )


def left_multiplication_matrix(algebra: Algebra, a: Element) -> np.ndarray:
    """Coordinate matrix of ``b -> a * b`` (block-diagonal Kronecker form)."""
    algebra._check_shapes(a.blocks)
    out = np.zeros((algebra.dim, algebra.dim), dtype=np.complex128)
    for off, n, blk in zip(algebra.coord_offsets, algebra.blocks, a.blocks):
        out[off : off + n * n, off : off + n * n] = np.kron(blk, np.eye(n))
    return out


def right_multiplication_matrix(algebra: Algebra, a: Element) -> np.ndarray:
    """Coordinate matrix of ``b -> b * a``."""
    algebra._check_shapes(a.blocks)
    out = np.zeros((algebra.dim, algebra.dim), dtype=np.complex128)
    for off, n, blk in zip(algebra.coord_offsets, algebra.blocks, a.blocks):
        out[off : off + n * n, off : off + n * n] = np.kron(np.eye(n), blk.T)
    return out


def gns(algebra: Algebra, omega: Functional, tol: float = DEFAULT_TOL) -> GNSData:
    """GNS construction for a positive functional.

    Builds the Gram matrix ``G[x, y] = omega(x* y)`` over the canonical
    basis, quotients by its numerical null space (eigenvalues below
    ``tol * max_eigenvalue``), and represents left multiplication on an
    orthonormal basis of the quotient.

    Parameters
    ----------
    algebra : Algebra
    omega : Functional
        Must be positive within ``tol``.
    tol : float
        Relative threshold for the null-space (rank) decision.

    Returns
    -------
    GNSData

    Raises
    ------
    PreconditionError
        If ``omega`` is not positive within ``tol``.
    """
    if not is_positive_functional(omega, tol):
        raise PreconditionError("GNS construction requires a positive functional")

    dim = algebra.dim
    basis = algebra.basis()
    gram = np.empty((dim, dim), dtype=np.complex128)
    for x, ex in enumerate(basis):
        star = ex.adjoint()
        for y, ey in enumerate(basis):
            gram[x, y] = omega(star * ey)
    gram = (gram + gram.conj().T) / 2.0

    eigvals, eigvecs = np.linalg.eigh(gram)
    top = float(eigvals.max(initial=0.0))
    keep = eigvals > tol * max(top, 0.0)
    if top <= 0.0:
        keep = np.zeros_like(keep)
    svals = eigvals[keep]
    vecs = eigvecs[:, keep]
    d = int(keep.sum())

    # to_space maps coordinates onto the quotient; from_space is its
    # right inverse on the non-null span.
    to_space = (np.sqrt(svals)[:, None]) * vecs.conj().T
    from_space = vecs / np.sqrt(svals)[None, :] if d else vecs

    reps = np.empty((dim, d, d), dtype=np.complex128)
    for k, ek in enumerate(basis):
        mult = left_multiplication_matrix(algebra, ek)
        reps[k] = to_space @ mult @ from_space
    eta = to_space @ algebra.to_coords(algebra.unit())
    return GNSData(d, _frozen(reps), _frozen(eta))
