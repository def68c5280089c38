"""Finite groups, matrix groups, and affine transformation groups.

A finite group is defined by a multiplication table validated exhaustively
at load time.  A matrix group is a family predicate (general linear,
special linear, metric-preserving, or invertible affine) over a fixed
dimension, optionally together with an explicit store of elements; the
store may also be produced by closing a generating set under products.

Composition convention: ``compose(G, a, b)`` is the product ``a b``, the
map that applies ``b`` first and ``a`` second when elements act on points
from the left.  For matrix families this is the plain grid product.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    BasiskitError,
    CayleyTableError,
    DimensionMismatch,
    EnumerationCapExceeded,
    MembershipError,
    MixedGroups,
    Singular,
)
from .matrices import Matrix, Vector, vec_add, vec_eq, vector
from .scalars import APPROX, EXACT, Backend

__all__ = [
    "GroupElement",
    "FiniteGroup",
    "validate_cayley_table",
    "AffineTransform",
    "affine_apply",
    "MatrixGroup",
    "membership_check",
    "compose",
    "inverse",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "quaternion_group",
    "permutation_matrix",
    "rotation_2d",
    "boost_2d",
]

MAX_TABLE_SIZE = 256
DEFAULT_CLOSURE_CAP = 100_000


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element together with the group instance that owns it.

    Equality and hashing bind to the owning instance, so elements of two
    separately constructed groups never compare equal; mixing them in a
    product raises :class:`MixedGroups` instead of silently "working".
    """

    group: object = field(repr=False)
    payload: object

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.group is other.group
            and self.payload == other.payload
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.payload))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        return compose(self.group, self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inverse_element(self)

    def eq_to(self, other: "GroupElement") -> bool:
        """Backend-aware equality (exact for finite groups)."""
        if self.group is not other.group:
            raise MixedGroups("comparing elements of different groups")
        return self.group.payload_eq(self.payload, other.payload)

    @property
    def name(self) -> str:
        return self.group.payload_name(self.payload)

    def __repr__(self) -> str:
        return f"<{self.name}>"


class FiniteGroup:
    """A group given by its full multiplication table.

    Construct through :func:`validate_cayley_table`; the constructor here
    trusts its arguments.
    """

    def __init__(
        self,
        table: tuple,
        identity_index: int,
        inverses: tuple,
        names: Optional[tuple] = None,
    ):
        self.table = table
        self.identity_index = identity_index
        self.inverses = inverses
        self.names = names
        self._elements = tuple(GroupElement(self, i) for i in range(len(table)))

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> tuple:
        return self._elements

    def element(self, index: int) -> GroupElement:
        if not 0 <= index < self.order:
            raise BasiskitError(f"element index {index} out of range 0..{self.order - 1}")
        return self._elements[index]

    @property
    def identity(self) -> GroupElement:
        return self._elements[self.identity_index]

    def _own(self, a: GroupElement) -> int:
        if not isinstance(a, GroupElement) or a.group is not self:
            raise MixedGroups("element does not belong to this group")
        return a.payload

    def compose_elements(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self._elements[self.table[self._own(a)][self._own(b)]]

    def inverse_element(self, a: GroupElement) -> GroupElement:
        return self._elements[self.inverses[self._own(a)]]

    def payload_eq(self, p, q) -> bool:
        return p == q

    def payload_name(self, p) -> str:
        if self.names is not None:
            return self.names[p]
        return str(p)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def validate_cayley_table(
    table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None
) -> FiniteGroup:
    """Check a multiplication table against the group axioms.

    Runs every check and raises :class:`CayleyTableError` carrying one
    witness per violated axiom; associativity is checked over all triples
    and reports the lexicographically smallest failure.
    """
    n = len(table)
    if n == 0:
        raise CayleyTableError([("not-closed", "empty table")])
    if n > MAX_TABLE_SIZE:
        raise BasiskitError(
            f"table of size {n} exceeds the validation cap {MAX_TABLE_SIZE}"
        )
    violations = []

    closed = True
    for i, row in enumerate(table):
        if len(row) != n:
            violations.append(("not-closed", (i, "row-length", len(row))))
            closed = False
            break
        for j, value in enumerate(row):
            if not isinstance(value, int) or not 0 <= value < n:
                violations.append(("not-closed", (i, j, value)))
                closed = False
                break
        if not closed:
            break

    identity_index = None
    if closed:
        for e in range(n):
            if all(table[e][a] == a and table[a][e] == a for a in range(n)):
                identity_index = e
                break
        if identity_index is None:
            violations.append(("no-identity", None))

        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                violations.append(("not-associative", (a, b, c)))
                break

        inverses = [None] * n
        if identity_index is not None:
            for a in range(n):
                for b in range(n):
                    if table[a][b] == identity_index and table[b][a] == identity_index:
                        inverses[a] = b
                        break
                else:
                    violations.append(("not-invertible", a))
                    break

    if names is not None and len(names) != n:
        raise BasiskitError(f"expected {n} element names, got {len(names)}")

    if violations:
        raise CayleyTableError(violations)

    return FiniteGroup(
        tuple(tuple(row) for row in table),
        identity_index,
        tuple(inverses),
        tuple(names) if names is not None else None,
    )


@dataclass(frozen=True)
class AffineTransform:
    """Invertible affine map: a linear part and a translation."""

    linear: Matrix
    translation: Vector

    def __post_init__(self):
        if not self.linear.is_square:
            raise DimensionMismatch("affine linear part must be square")
        if len(self.translation) != self.linear.nrows:
            raise DimensionMismatch("translation length does not match linear part")

    @property
    def dim(self) -> int:
        return self.linear.nrows

    @property
    def backend(self) -> Backend:
        return self.linear.backend

    @classmethod
    def identity(cls, n: int, backend: Backend) -> "AffineTransform":
        return cls(Matrix.identity(n, backend), tuple(backend.zero() for _ in range(n)))

    def apply(self, point: Vector) -> Vector:
        """Image of a point: linear part applied columnwise, then shifted."""
        return vec_add(self.linear.matvec(point), self.translation)

    def after(self, other: "AffineTransform") -> "AffineTransform":
        """The composite applying ``other`` first, then ``self``."""
        return AffineTransform(
            self.linear.mul(other.linear),
            vec_add(self.linear.matvec(other.translation), self.translation),
        )

    def inverted(self) -> "AffineTransform":
        inv = self.linear.inverse()
        return AffineTransform(
            inv, tuple(-x for x in inv.matvec(self.translation))
        )

    def eq(self, other: "AffineTransform") -> bool:
        return self.linear.eq(other.linear) and vec_eq(
            self.translation, other.translation, self.backend
        )


def affine_apply(t: AffineTransform, point: Sequence) -> Vector:
    """Apply an affine transform to a point of the same dimension."""
    return t.apply(vector(point, t.backend))


class MatrixGroup:
    """A matrix family over a fixed dimension, with an optional element store.

    Families:

    - ``GL``: invertible matrices;
    - ``SL``: determinant one;
    - ``SO``: grids preserving the diagonal metric of the signature, i.e.
      ``M^T eta M = eta`` within the backend comparison;
    - ``AFFINE``: affine maps with invertible linear part.
    """

    def __init__(
        self,
        family: str,
        dim: int,
        backend: Backend,
        signature: Optional[tuple] = None,
        elements: Optional[Sequence] = None,
    ):
        if family not in ("GL", "SL", "SO", "AFFINE"):
            raise BasiskitError(f"unknown matrix family {family!r}")
        if dim < 1:
            raise BasiskitError("dimension must be positive")
        self.family = family
        self.dim = dim
        self.backend = backend
        if family == "SO":
            signature = (dim, 0) if signature is None else tuple(signature)
            if len(signature) != 2 or signature[0] + signature[1] != dim:
                raise BasiskitError(f"signature {signature} does not sum to {dim}")
            self.signature = signature
        else:
            if signature is not None:
                raise BasiskitError(f"family {family} takes no signature")
            self.signature = None
        if family == "AFFINE":
            self._identity_payload = AffineTransform.identity(dim, backend)
        else:
            self._identity_payload = Matrix.identity(dim, backend)
        self.store: Optional[tuple] = None
        if elements is not None:
            self.store = tuple(self.element(p) for p in elements)

    # -- family predicate ------------------------------------------------

    def metric_signs(self) -> tuple:
        p, q = self.signature
        return (1,) * p + (-1,) * q

    def membership(self, payload) -> tuple:
        """Test the family predicate; returns ``(ok, residual)``.

        The residual is the size of the defect for the families that have
        one: the max-norm of ``M^T eta M - eta`` for ``SO`` and
        ``|det - 1|`` for ``SL``.  It is 0.0 where the predicate is a
        plain invertibility test.
        """
        if self.family == "AFFINE":
            if not isinstance(payload, AffineTransform):
                return False, 0.0
            if payload.dim != self.dim or payload.backend != self.backend:
                return False, 0.0
            return self._invertible(payload.linear), 0.0
        if not isinstance(payload, Matrix):
            return False, 0.0
        if (
            not payload.is_square
            or payload.nrows != self.dim
            or payload.backend != self.backend
        ):
            return False, 0.0
        if self.family == "GL":
            return self._invertible(payload), 0.0
        if self.family == "SL":
            det = payload.det()
            residual = float(abs(det - self.backend.one()))
            return self.backend.eq(det, self.backend.one()), residual
        eta = Matrix.diagonal(self.metric_signs(), self.backend)
        gram = payload.transpose().mul(eta).mul(payload)
        residual = float(gram.max_diff(eta))
        return gram.eq(eta), residual

    def _invertible(self, m: Matrix) -> bool:
        det = m.det()
        if self.backend.is_exact:
            return det != 0
        return abs(det) > self.backend.tolerance

    # -- element handling --------------------------------------------------

    def element(self, payload) -> GroupElement:
        if self.family != "AFFINE" and isinstance(payload, (list, tuple)):
            payload = Matrix.from_rows(payload, self.backend)
        ok, residual = self.membership(payload)
        if not ok:
            raise MembershipError(
                f"value is not in {self.describe()} (residual {residual:.3g})",
                residual=residual,
            )
        return GroupElement(self, payload)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_payload)

    def elements(self) -> tuple:
        if self.store is None:
            raise BasiskitError(
                f"{self.describe()} has no stored elements to enumerate"
            )
        return self.store

    def _own(self, a: GroupElement):
        if not isinstance(a, GroupElement) or a.group is not self:
            raise MixedGroups("element does not belong to this group")
        return a.payload

    def compose_elements(self, a: GroupElement, b: GroupElement) -> GroupElement:
        pa, pb = self._own(a), self._own(b)
        if self.family == "AFFINE":
            return GroupElement(self, pa.after(pb))
        return GroupElement(self, pa.mul(pb))

    def inverse_element(self, a: GroupElement) -> GroupElement:
        p = self._own(a)
        try:
            inv = p.inverted() if self.family == "AFFINE" else p.inverse()
        except Singular as exc:
            raise MembershipError(f"stored element is not invertible: {exc}") from exc
        return GroupElement(self, inv)

    def payload_eq(self, p, q) -> bool:
        if self.family == "AFFINE":
            return p.eq(q)
        return p.eq(q)

    def payload_name(self, p) -> str:
        if self.family == "AFFINE":
            return f"affine({p.linear.entries}, {p.translation})"
        return f"matrix({p.entries})"

    def describe(self) -> str:
        if self.family == "SO":
            p, q = self.signature
            return f"SO({p},{q})" if q else f"SO({p})"
        return f"{self.family}({self.dim})"

    def __repr__(self) -> str:
        return f"MatrixGroup({self.describe()}, backend={self.backend.kind})"

    # -- construction helpers ----------------------------------------------

    @classmethod
    def general_linear(cls, dim: int, backend: Backend = EXACT, elements=None):
        return cls("GL", dim, backend, elements=elements)

    @classmethod
    def special_linear(cls, dim: int, backend: Backend = EXACT, elements=None):
        return cls("SL", dim, backend, elements=elements)

    @classmethod
    def metric_preserving(
        cls, p: int, q: int = 0, backend: Backend = APPROX, elements=None
    ):
        return cls("SO", p + q, backend, signature=(p, q), elements=elements)

    @classmethod
    def affine(cls, dim: int, backend: Backend = EXACT, elements=None):
        return cls("AFFINE", dim, backend, elements=elements)

    def close_over(self, generators: Sequence, cap: int = DEFAULT_CLOSURE_CAP) -> None:
        """Populate the store with the closure of ``generators``.

        Breadth-first products until nothing new appears; raises
        :class:`EnumerationCapExceeded` rather than truncating when the
        closure grows past ``cap``.
        """
        gens = [self.element(g) for g in generators]
        seen: list = [self.identity]
        if self.backend.is_exact:
            index = {self._identity_payload: 0}
        else:
            index = None
        frontier = [self.identity]
        while frontier:
            new_frontier = []
            for current in frontier:
                for g in gens:
                    candidate = self.compose_elements(current, g)
                    if index is not None:
                        if candidate.payload in index:
                            continue
                    else:
                        if any(candidate.eq_to(s) for s in seen):
                            continue
                    if len(seen) >= cap:
                        raise EnumerationCapExceeded(
                            f"closure exceeded the cap of {cap} elements"
                        )
                    if index is not None:
                        index[candidate.payload] = len(seen)
                    seen.append(candidate)
                    new_frontier.append(candidate)
            frontier = new_frontier
        self.store = tuple(seen)

    @classmethod
    def from_generators(
        cls,
        family: str,
        dim: int,
        backend: Backend,
        generators: Sequence,
        signature: Optional[tuple] = None,
        cap: int = DEFAULT_CLOSURE_CAP,
    ) -> "MatrixGroup":
        group = cls(family, dim, backend, signature=signature)
        group.close_over(generators, cap=cap)
        return group


def membership_check(group: MatrixGroup, payload) -> tuple:
    """Family predicate as a standalone operation: ``(ok, residual)``."""
    if isinstance(payload, GroupElement):
        payload = payload.payload
    return group.membership(payload)


def compose(group, a: GroupElement, b: GroupElement) -> GroupElement:
    """Product ``a b`` in ``group``; both elements must belong to it."""
    return group.compose_elements(a, b)


def inverse(group, a: GroupElement) -> GroupElement:
    return group.inverse_element(a)


# -- standard small groups ----------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    """Integers modulo ``n`` under addition."""
    if n < 1:
        raise BasiskitError("cyclic group needs n >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_cayley_table(table, names=[str(i) for i in range(n)])


def _perm_compose(p: tuple, q: tuple) -> tuple:
    """Composite permutation applying ``q`` first, then ``p``."""
    return tuple(p[q[x]] for x in range(len(p)))


def _perm_cycle_name(p: tuple) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        parts.append("(" + " ".join(str(x) for x in cycle) + ")")
    return "".join(parts) if parts else "e"


def _table_from_perms(perms: Sequence[tuple]) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    return validate_cayley_table(table, names=[_perm_cycle_name(p) for p in perms])


def symmetric_group(n: int) -> FiniteGroup:
    """All permutations of ``n`` points, in lexicographic order."""
    if not 1 <= n <= 5:
        raise BasiskitError("symmetric group supported for 1 <= n <= 5")
    return _table_from_perms(list(itertools.permutations(range(n))))


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular ``n``-gon (order ``2n``), as vertex permutations."""
    if n < 3:
        raise BasiskitError("dihedral group needs n >= 3")
    rotations = [tuple((x + k) % n for x in range(n)) for k in range(n)]
    reflections = [tuple((k - x) % n for x in range(n)) for k in range(n)]
    return _table_from_perms(rotations + reflections)


def quaternion_group() -> FiniteGroup:
    """The eight unit quaternions ``{+-1, +-i, +-j, +-k}``."""
    units = ["1", "i", "j", "k"]
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        sign, unit = prod[(a[1], b[1])]
        return (a[0] * b[0] * sign, unit)

    table = [[index[mul(a, b)] for b in elems] for a in elems]
    names = [("" if s > 0 else "-") + u for (s, u) in elems]
    return validate_cayley_table(table, names=names)


def permutation_matrix(perm: Sequence[int], backend: Backend = EXACT) -> Matrix:
    """Matrix sending basis column ``j`` to basis column ``perm[j]``."""
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for j, image in enumerate(perm):
        rows[image][j] = 1
    return Matrix.from_rows(rows, backend)


def rotation_2d(angle: float, backend: Backend = APPROX) -> Matrix:
    c, s = math.cos(angle), math.sin(angle)
    return Matrix.from_rows([[c, -s], [s, c]], backend)


def boost_2d(rapidity: float, backend: Backend = APPROX) -> Matrix:
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    return Matrix.from_rows([[ch, sh], [sh, ch]], backend)
