"""Finite monoid tables, unitary irreducible representations, and fixtures.

Shipped fixtures: cyclic groups Z_n, the symmetric group S3, the dihedral
group of the square D4 (order 8) and the quaternion group Q8, each with a
complete table of unitary irreps.  No irrep-finding algorithm is attempted;
the nonabelian tables are hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import _frozen
from .errors import ConstructionError

_IRREP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SemigroupTable:
    """Cayley table of a finite monoid: ``table[g, h]`` is the index of g*h."""

    table: np.ndarray
    identity: int

    def __post_init__(self):
        table = np.array(self.table, dtype=np.intp)
        m = table.shape[0]
        if table.shape != (m, m):
            raise ConstructionError(f"multiplication table must be square, got {table.shape}")
        if table.min(initial=0) < 0 or table.max(initial=0) >= m:
            raise ConstructionError("table entries must be element indices")
        e = int(self.identity)
        if not (0 <= e < m):
            raise ConstructionError(f"identity index {e} out of range")
        if not (np.all(table[e] == np.arange(m)) and np.all(table[:, e] == np.arange(m))):
            raise ConstructionError("declared identity is not a two-sided unit")
        # exhaustive associativity check; m stays small at desk scale
        if not np.array_equal(table[table], table[:, table]):
            raise ConstructionError("multiplication table is not associative")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", e)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @cached_property
    def inverses(self) -> np.ndarray | None:
        """Two-sided inverses of all elements, or None if some are missing."""
        m, e = self.order, self.identity
        inv = np.full(m, -1, dtype=np.intp)
        for g in range(m):
            hits = np.where(self.table[g] == e)[0]
            for h in hits:
                if self.table[h, g] == e:
                    inv[g] = h
                    break
        if (inv < 0).any():
            return None
        inv.setflags(write=False)
        return inv

    @property
    def is_group(self) -> bool:
        return self.inverses is not None

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


@dataclass(frozen=True, eq=False)
class IrrepTable:
    """Unitary irreps of a finite group: one ``(|G|, d, d)`` array per irrep."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(_frozen(m) for m in self.matrices)
        for m in mats:
            if m.ndim != 3 or m.shape[1] != m.shape[2]:
                raise ConstructionError("each irrep must be a (|G|, d, d) array")
        object.__setattr__(self, "matrices", mats)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(m.shape[1]) for m in self.matrices)

    @cached_property
    def trivial_index(self) -> int | None:
        for i, m in enumerate(self.matrices):
            if m.shape[1] == 1 and np.allclose(m, 1.0, atol=_IRREP_TOL):
                return i
        return None

    def validate(self, group: SemigroupTable, tol: float = _IRREP_TOL) -> None:
        """Check unitarity, the homomorphism law, completeness and orthogonality.

        Raises
        ------
        ConstructionError
            On any failed structural check.
        """
        if not group.is_group:
            raise ConstructionError("irrep tables require a group")
        m = group.order
        if sum(d * d for d in self.dims) != m:
            raise ConstructionError(
                f"irrep dimensions {self.dims} do not satisfy sum(d^2) == |G| == {m}"
            )
        if self.trivial_index is None:
            raise ConstructionError("irrep table must contain the trivial representation")
        for p, mats in enumerate(self.matrices):
            if mats.shape[0] != m:
                raise ConstructionError(f"irrep {p} has {mats.shape[0]} matrices, expected {m}")
            d = mats.shape[1]
            if np.abs(mats[group.identity] - np.eye(d)).max() > tol:
                raise ConstructionError(f"irrep {p} does not map the identity to 1")
            eye = np.eye(d)
            for g in range(m):
                if np.abs(mats[g] @ mats[g].conj().T - eye).max() > tol:
                    raise ConstructionError(f"irrep {p} is not unitary at element {g}")
            for g in range(m):
                for h in range(m):
                    if np.abs(mats[g] @ mats[h] - mats[group.table[g, h]]).max() > tol:
                        raise ConstructionError(
                            f"irrep {p} violates the homomorphism law at ({g}, {h})"
                        )
        # Schur orthogonality of matrix-coefficient rows
        rows = self.coefficient_rows()
        gram = rows.conj() @ rows.T
        expected = np.diag(np.repeat([m / d for d in self.dims], [d * d for d in self.dims]))
        if np.abs(gram - expected).max() > tol * m:
            raise ConstructionError("matrix coefficients violate Schur orthogonality")

    def coefficient_rows(self) -> np.ndarray:
        """Matrix of shape (sum d^2, |G|): each row is one coefficient g -> pi(g)[r, s]."""
        return np.concatenate(
            [m.reshape(m.shape[0], -1).T for m in self.matrices], axis=0
        )


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> SemigroupTable:
    idx = np.arange(n)
    return SemigroupTable((idx[:, None] + idx[None, :]) % n, 0)


def cyclic_irreps(n: int) -> IrrepTable:
    g = np.arange(n)
    omega = np.exp(2j * np.pi / n)
    return IrrepTable(
        tuple((omega ** (j * g)).reshape(n, 1, 1) for j in range(n))
    )


_S3_PERMS = (
    (0, 1, 2),
    (1, 2, 0),
    (2, 0, 1),
    (0, 2, 1),
    (2, 1, 0),
    (1, 0, 2),
)


def s3_group() -> SemigroupTable:
    index = {p: i for i, p in enumerate(_S3_PERMS)}
    m = len(_S3_PERMS)
    table = np.empty((m, m), dtype=np.intp)
    for i, sigma in enumerate(_S3_PERMS):
        for j, tau in enumerate(_S3_PERMS):
            table[i, j] = index[tuple(sigma[tau[x]] for x in range(3))]
    return SemigroupTable(table, 0)


def s3_sign() -> np.ndarray:
    """Parity of each element in the fixed S3 ordering (+1 even, -1 odd)."""
    return np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


def s3_irreps() -> IrrepTable:
    m = len(_S3_PERMS)
    triv = np.ones((m, 1, 1), dtype=np.complex128)
    sign = s3_sign().reshape(m, 1, 1).astype(np.complex128)
    # orthonormal basis of the plane orthogonal to (1, 1, 1)
    basis = np.array(
        [
            [1 / np.sqrt(2), 1 / np.sqrt(6)],
            [-1 / np.sqrt(2), 1 / np.sqrt(6)],
            [0.0, -2 / np.sqrt(6)],
        ]
    )
    std = np.empty((m, 2, 2), dtype=np.complex128)
    for i, sigma in enumerate(_S3_PERMS):
        perm_mat = np.zeros((3, 3))
        for j in range(3):
            perm_mat[sigma[j], j] = 1.0
        std[i] = basis.T @ perm_mat @ basis
    return IrrepTable((triv, sign, std))


def d4_group() -> SemigroupTable:
    # elements r^a s^b indexed a + 4*b; s r s = r^{-1}
    def mul(x, y):
        a1, b1 = x % 4, x // 4
        a2, b2 = y % 4, y // 4
        a = (a1 + (a2 if b1 == 0 else -a2)) % 4
        return a + 4 * ((b1 + b2) % 2)

    table = np.array([[mul(x, y) for y in range(8)] for x in range(8)])
    return SemigroupTable(table, 0)


def d4_irreps() -> IrrepTable:
    rot = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=np.complex128)
    ref = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
    two = np.empty((8, 2, 2), dtype=np.complex128)
    chars = []
    for cr, cs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        chars.append(
            np.array(
                [cr ** (x % 4) * cs ** (x // 4) for x in range(8)], dtype=np.complex128
            ).reshape(8, 1, 1)
        )
    for x in range(8):
        a, b = x % 4, x // 4
        two[x] = np.linalg.matrix_power(rot, a) @ (ref if b else np.eye(2))
    return IrrepTable((*chars, two))


_Q8_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def q8_group() -> SemigroupTable:
    unit = {"1": 1, "-1": -1, "i": 1, "-i": -1, "j": 1, "-j": -1, "k": 1, "-k": -1}
    base = {n: n.lstrip("-") for n in _Q8_NAMES}
    prod = {
        ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
        ("i", "1"): ("i", 1), ("j", "1"): ("j", 1), ("k", "1"): ("k", 1),
        ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
        ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
        ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
        ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
    }
    index = {n: x for x, n in enumerate(_Q8_NAMES)}
    table = np.empty((8, 8), dtype=np.intp)
    for x, gx in enumerate(_Q8_NAMES):
        for y, gy in enumerate(_Q8_NAMES):
            b, s = prod[(base[gx], base[gy])]
            s *= unit[gx] * unit[gy]
            table[x, y] = index[b if s == 1 else "-" + b]
    return SemigroupTable(table, 0)


def q8_irreps() -> IrrepTable:
    two_gens = {
        "1": np.eye(2, dtype=np.complex128),
        "i": np.array([[1j, 0], [0, -1j]]),
        "j": np.array([[0.0, 1.0], [-1.0, 0.0]]),
        "k": np.array([[0.0, 1j], [1j, 0.0]]),
    }
    two = np.empty((8, 2, 2), dtype=np.complex128)
    for x, name in enumerate(_Q8_NAMES):
        sign = -1.0 if name.startswith("-") else 1.0
        two[x] = sign * two_gens[name.lstrip("-")]
    chars = []
    for ci, cj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        values = {"1": 1, "i": ci, "j": cj, "k": ci * cj}
        chars.append(
            np.array(
                [values[n.lstrip("-")] for n in _Q8_NAMES], dtype=np.complex128
            ).reshape(8, 1, 1)
        )
    return IrrepTable((*chars, two))


def builtin_group(name: str) -> tuple[SemigroupTable, IrrepTable]:
    """Resolve a fixture name: ``zn:<n>``, ``s3``, ``d4`` or ``q8``."""
    key = name.strip().lower()
    if key.startswith("zn:"):
        n = int(key.split(":", 1)[1])
        if n < 1:
            raise ConstructionError(f"cyclic order must be positive, got {n}")
        return cyclic_group(n), cyclic_irreps(n)
    if key == "s3":
        return s3_group(), s3_irreps()
    if key == "d4":
        return d4_group(), d4_irreps()
    if key == "q8":
        return q8_group(), q8_irreps()
    raise ConstructionError(f"unknown built-in group {name!r}")
