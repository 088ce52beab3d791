"""Coproduct/counit structure on finite-dimensional C*-algebras.

A bialgebra here is an algebra together with a coproduct ``delta`` (a linear
map into the tensor square) and a counit character ``epsilon``, subject to
coassociativity and the counit laws.  Two construction families are
provided: functions on a finite monoid (commutative) and the group
C*-algebra of a finite group presented through a complete table of unitary
irreps (cocommutative).  ``mode="hyper"`` relaxes the coproduct from a
*-homomorphism to a completely positive unital map.

Internally most computations run over the *structure tensor* ``T[k, j, l]``:
the coefficient of ``e_k (x) e_j`` (Kronecker coordinates) in ``delta(e_l)``.
Convolution of functionals, translation operators and the cocommutativity
test are all contractions of this tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import Algebra, Element, Functional, tensor_element
from .errors import ConstructionError, ShapeError
from .groups import IrrepTable, SemigroupTable
from .maps import LinearMap, mixing_permutation, tensor_algebra, tensor_flip

_STRUCT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Bialgebra:
    """An algebra with coproduct and counit.

    Attributes
    ----------
    algebra : Algebra
    delta : LinearMap
        Coproduct, a map from ``algebra`` to its tensor square.
    epsilon : Functional
        Counit; must be a character.
    mode : str
        ``"hom"`` when the coproduct is a unital *-homomorphism,
        ``"hyper"`` when it is merely completely positive and unital.
    """

    algebra: Algebra
    delta: LinearMap
    epsilon: Functional
    mode: str = "hom"

    def __post_init__(self):
        if self.mode not in ("hom", "hyper"):
            raise ConstructionError(f"mode must be 'hom' or 'hyper', got {self.mode!r}")
        square = tensor_algebra(self.algebra, self.algebra)
        if (
            self.delta.source.blocks != self.algebra.blocks
            or self.delta.target.blocks != square.blocks
        ):
            raise ShapeError("coproduct must map the algebra into its tensor square")
        self.algebra._check_shapes(self.epsilon.dual_blocks)

    @cached_property
    def tensor_square(self) -> Algebra:
        return tensor_algebra(self.algebra, self.algebra)

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """Array ``T[k, j, l]``: Kronecker coefficient of ``delta(e_l)``."""
        dim = self.algebra.dim
        perm = mixing_permutation(self.algebra, self.algebra)
        kron_rows = np.empty((dim * dim, dim), dtype=np.complex128)
        kron_rows[perm] = self.delta.matrix
        tensor = kron_rows.reshape(dim, dim, dim)
        tensor.setflags(write=False)
        return tensor

    @cached_property
    def counit_coords(self) -> np.ndarray:
        out = self.algebra.dual_coords(self.epsilon)
        out.setflags(write=False)
        return out


@dataclass(frozen=True)
class ValidationReport:
    """Residuals of the bialgebra axioms (max-abs matrix deviations)."""

    coassoc_residual: float
    counit_residual: float
    character_residual: float
    unit_residual: float
    hom_residual: float | None
    cp_min_eig: float | None

    def passes(self, tol: float) -> bool:
        ok = (
            self.coassoc_residual <= tol
            and self.counit_residual <= tol
            and self.character_residual <= tol
            and self.unit_residual <= tol
        )
        if self.hom_residual is not None:
            ok = ok and self.hom_residual <= tol
        if self.cp_min_eig is not None:
            ok = ok and self.cp_min_eig >= -tol
        return ok

    def max_residual(self) -> float:
        vals = [
            self.coassoc_residual,
            self.counit_residual,
            self.character_residual,
            self.unit_residual,
        ]
        if self.hom_residual is not None:
            vals.append(self.hom_residual)
        if self.cp_min_eig is not None:
            vals.append(max(0.0, -self.cp_min_eig))
        return max(vals)


def validate_bialgebra(b: Bialgebra, tol: float = 1e-10) -> ValidationReport:
    """Measure all bialgebra axioms and return their residuals.

    Coassociativity and the counit laws are matrix identities on the
    structure tensor; the character law and (in ``hom`` mode) the
    homomorphism law are checked exhaustively over all pairs of canonical
    basis elements.  In ``hyper`` mode the homomorphism residual is replaced
    by the minimum Choi eigenvalue of the coproduct.
    """
    alg = b.algebra
    t3 = b.structure_tensor
    dim = alg.dim
    eye = np.eye(dim)

    left = np.einsum("kjl,abj->kabl", t3, t3)
    right = np.einsum("kjl,abk->abjl", t3, t3)
    coassoc = float(np.max(np.abs(left - right)))

    eps = b.counit_coords
    counit = max(
        float(np.max(np.abs(np.einsum("j,kjl->kl", eps, t3) - eye))),
        float(np.max(np.abs(np.einsum("k,kjl->jl", eps, t3) - eye))),
    )

    basis = alg.basis()
    values = np.array([b.epsilon(e) for e in basis])
    prods = np.empty((dim, dim), dtype=np.complex128)
    for x, ex in enumerate(basis):
        for y, ey in enumerate(basis):
            prods[x, y] = b.epsilon(ex * ey)
    character = float(np.max(np.abs(prods - np.outer(values, values))))
    character = max(character, abs(b.epsilon(alg.unit()) - 1.0))
    stars = np.array([b.epsilon(e.adjoint()) for e in basis])
    character = max(character, float(np.max(np.abs(stars - values.conj()))))

    square = b.tensor_square
    tensor_unit = square.to_coords(square.unit())
    unit_res = float(
        np.max(np.abs(b.delta.matrix @ alg.to_coords(alg.unit()) - tensor_unit))
    )

    hom_residual = None
    cp_min_eig = None
    if b.mode == "hom":
        hom = 0.0
        delta_elems = [square.from_coords(b.delta.matrix[:, x]) for x in range(dim)]
        for x, ex in enumerate(basis):
            dx_star = square.to_coords(delta_elems[x].adjoint())
            hom = max(
                hom,
                float(
                    np.max(np.abs(dx_star - b.delta.matrix @ alg.to_coords(ex.adjoint())))
                ),
            )
            for y, ey in enumerate(basis):
                lhs = square.to_coords(delta_elems[x] * delta_elems[y])
                rhs = b.delta.matrix @ alg.to_coords(ex * ey)
                hom = max(hom, float(np.max(np.abs(lhs - rhs))))
        hom_residual = hom
    else:
        from .semigroup import is_completely_positive

        cp_min_eig = min(is_completely_positive(b.delta, tol).min_choi_eigenvalues)

    return ValidationReport(coassoc, counit, character, unit_res, hom_residual, cp_min_eig)


# ---------------------------------------------------------------------------
# Construction: functions on a finite monoid
# ---------------------------------------------------------------------------


def function_bialgebra(monoid: SemigroupTable) -> Bialgebra:
    """The commutative bialgebra of complex functions on a finite monoid.

    The algebra is ``m`` one-dimensional blocks (one per point); the
    coproduct dualizes multiplication, ``delta(f)(g, h) = f(g h)``, and the
    counit evaluates at the identity element.
    """
    m = monoid.order
    alg = Algebra((1,) * m)
    square = tensor_algebra(alg, alg)
    delta = np.zeros((m * m, m), dtype=np.complex128)
    for g in range(m):
        for h in range(m):
            delta[g * m + h, monoid.table[g, h]] = 1.0
    eps = alg.functional(
        [np.array([[1.0 if g == monoid.identity else 0.0]]) for g in range(m)]
    )
    return Bialgebra(alg, LinearMap(alg, square, delta), eps)


# ---------------------------------------------------------------------------
# Construction: group C*-algebra of a finite group
# ---------------------------------------------------------------------------


def group_cstar_bialgebra(group: SemigroupTable, irreps: IrrepTable) -> Bialgebra:
    """The cocommutative bialgebra on the group C*-algebra of a finite group.

    The algebra is the direct sum of one matrix block per irrep.  The
    translation unitaries ``lam_g = (+)_pi pi(g)`` span the algebra; the
    coproduct and counit are fixed on this spanning set by
    ``delta(lam_g) = lam_g (x) lam_g`` and ``epsilon(lam_g) = 1`` and
    extended linearly through Fourier inversion
    ``coeff_g(E) = sum_pi (d_pi / |G|) trace(pi(g)^H E_pi)``.

    Raises
    ------
    ConstructionError
        If the irrep table is incomplete or fails validation.
    """
    irreps.validate(group)
    m = group.order
    alg = Algebra(irreps.dims)
    square = tensor_algebra(alg, alg)

    lam = np.empty((alg.dim, m), dtype=np.complex128)
    for g in range(m):
        lam[:, g] = np.concatenate([mats[g].ravel() for mats in irreps.matrices])

    fourier = np.empty((m, alg.dim), dtype=np.complex128)
    col = 0
    for d, mats in zip(irreps.dims, irreps.matrices):
        fourier[:, col : col + d * d] = (d / m) * mats.conj().reshape(m, d * d)
        col += d * d

    lam_pairs = np.empty((square.dim, m), dtype=np.complex128)
    for g in range(m):
        lam_g = alg.from_coords(lam[:, g])
        lam_pairs[:, g] = square.to_coords(tensor_element(lam_g, lam_g))
    delta = lam_pairs @ fourier

    eps_blocks = [np.zeros((d, d)) for d in irreps.dims]
    eps_blocks[irreps.trivial_index] = np.array([[1.0]])
    eps = alg.functional(eps_blocks)
    return Bialgebra(alg, LinearMap(alg, square, delta), eps)


def fourier_matrices(group: SemigroupTable, irreps: IrrepTable):
    """Spanning-set and inversion matrices of the group C*-algebra.

    Returns ``(lam, fourier)`` where column ``g`` of ``lam`` holds the
    coordinates of the translation unitary of ``g`` and ``fourier @ lam`` is
    the identity on group functions (and ``lam @ fourier`` the identity on
    coordinates).
    """
    m = group.order
    alg = Algebra(irreps.dims)
    lam = np.empty((alg.dim, m), dtype=np.complex128)
    for g in range(m):
        lam[:, g] = np.concatenate([mats[g].ravel() for mats in irreps.matrices])
    fourier = np.empty((m, alg.dim), dtype=np.complex128)
    col = 0
    for d, mats in zip(irreps.dims, irreps.matrices):
        fourier[:, col : col + d * d] = (d / m) * mats.conj().reshape(m, d * d)
        col += d * d
    return lam, fourier


# ---------------------------------------------------------------------------
# Discrete-type decomposition and symmetry predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiscreteDecomposition:
    """Splitting of a discrete-type bialgebra at the counit block.

    ``omega`` is the unit of the unique one-dimensional block supporting the
    counit and ``ideal_unit = 1 - omega`` the unit of the kernel ideal of
    the counit.
    """

    omega_index: int
    omega: Element
    ideal_unit: Element


def discrete_type_decomposition(
    b: Bialgebra, tol: float = _STRUCT_TOL
) -> DiscreteDecomposition:
    """Locate the one-dimensional block on which the counit lives.

    A character on a multi-matrix algebra is supported on a single 1x1
    block, where it takes the value 1.  If the counit data does not have
    this form the input is corrupted and an error is raised.
    """
    alg = b.algebra
    carrier = None
    for i, (n, rho) in enumerate(zip(alg.blocks, b.epsilon.dual_blocks)):
        weight = float(np.abs(rho).max())
        if weight <= tol:
            continue
        if n != 1 or abs(rho[0, 0] - 1.0) > tol or carrier is not None:
            raise ConstructionError(
                "counit is not a character supported on a single 1x1 block"
            )
        carrier = i
    if carrier is None:
        raise ConstructionError("counit vanishes everywhere")
    mats = [np.zeros((n, n)) for n in alg.blocks]
    mats[carrier] = np.array([[1.0]])
    omega = alg.element(mats)
    return DiscreteDecomposition(carrier, omega, alg.unit() - omega)


def flip(b: Bialgebra) -> LinearMap:
    """Tensor flip on the tensor square of the underlying algebra."""
    return tensor_flip(b.algebra)


def is_commutative(b: Bialgebra) -> bool:
    """True when the algebra is commutative, i.e. all blocks are 1x1."""
    return all(n == 1 for n in b.algebra.blocks)


def is_cocommutative(b: Bialgebra, tol: float = 1e-10) -> bool:
    """Whether the coproduct is invariant under the tensor flip."""
    return cocommutativity_residual(b) <= tol


def cocommutativity_residual(b: Bialgebra) -> float:
    t3 = b.structure_tensor
    return float(np.max(np.abs(t3 - t3.transpose(1, 0, 2))))
