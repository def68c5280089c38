"""Bases, their manifolds, and coordinate machinery.

A basis is stored as a grid of rows, one row per basis vector.  The two
transformation kinds are kept strictly apart:

- *active*: a group element moves every basis vector (and the origin of
  an affine basis); vector coordinates relative to the moved basis are
  unchanged.
- *passive*: a grid recombines the basis vectors in place,
  ``e'_j = sum_i a[j][i] e_i``, i.e. new rows are ``grid @ rows``; the
  origin of an affine basis stays put, and vector coordinates transform
  through the inverse grid, ``v' = v @ grid^-1``.

With the group product realised as the plain grid product, applying the
coordinate transformation for ``a`` and then for ``b`` equals applying
the single transformation for the product ``b a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Optional, Sequence

from .errors import (
    BasiskitError,
    DegenerateBasis,
    DegenerateReference,
    DependentInput,
    GroupSpaceMismatch,
    MembershipError,
    NotInOrbit,
    NullVector,
    Singular,
)
from .groups import AffineTransform, GroupElement, MatrixGroup
from .matrices import Matrix, metric_dot, vec_eq, vec_max_diff, vector
from .representations import (
    Representation,
    Transformation,
    Verdict,
)
from .sampling import random_vector, sample_group_element
from .scalars import APPROX, Backend, approx

__all__ = [
    "VectorSpace",
    "Basis",
    "StandardCoordinates",
    "CoordinateVector",
    "GBasisReport",
    "CoordinateRepCheckReport",
    "BasisManifold",
    "active_transform",
    "passive_transform",
    "standard_coordinates",
    "change_of_basis",
    "vector_coordinates",
    "coordinate_transformation",
    "coordinate_representation_check",
    "gram_schmidt",
    "basis_metric_signs",
    "is_g_basis",
]

SPACE_KINDS = ("central_affine", "affine", "euclid", "pseudo_euclid")


@dataclass(frozen=True)
class VectorSpace:
    """A finite-dimensional space with a kind, backend, and optional metric."""

    kind: str
    dim: int
    backend: Backend
    signature: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in SPACE_KINDS:
            raise BasiskitError(f"unknown space kind {self.kind!r}")
        if self.dim < 1:
            raise BasiskitError("space dimension must be positive")
        if self.kind == "pseudo_euclid":
            sig = self.signature
            if sig is None or len(sig) != 2 or sig[0] + sig[1] != self.dim or sig[1] < 1:
                raise BasiskitError(
                    f"pseudo-euclid space of dimension {self.dim} needs a "
                    f"signature (p, q) with q >= 1, got {sig}"
                )
        elif self.kind == "euclid":
            if self.signature not in (None, (self.dim, 0)):
                raise BasiskitError("euclid signature must be (dim, 0)")
            object.__setattr__(self, "signature", (self.dim, 0))
        elif self.signature is not None:
            raise BasiskitError(f"{self.kind} space takes no signature")

    @property
    def has_metric(self) -> bool:
        return self.kind in ("euclid", "pseudo_euclid")

    def metric_signs(self) -> tuple:
        if not self.has_metric:
            raise BasiskitError(f"{self.kind} space has no metric")
        p, q = self.signature
        return (1,) * p + (-1,) * q


@dataclass(frozen=True)
class Basis:
    """Ordered independent vectors, with an origin point for affine spaces."""

    space: VectorSpace
    vectors: tuple
    origin: Optional[tuple] = None

    @classmethod
    def make(
        cls, space: VectorSpace, vectors: Sequence[Sequence], origin=None
    ) -> "Basis":
        rows = tuple(vector(v, space.backend) for v in vectors)
        if len(rows) != space.dim or any(len(r) != space.dim for r in rows):
            raise DegenerateBasis(
                f"expected {space.dim} vectors of length {space.dim}"
            )
        if space.kind == "affine":
            origin = (
                tuple(space.backend.zero() for _ in range(space.dim))
                if origin is None
                else vector(origin, space.backend)
            )
            if len(origin) != space.dim:
                raise DegenerateBasis("origin length does not match the space")
        elif origin is not None:
            raise BasiskitError(f"{space.kind} basis takes no origin")
        b = cls(space, rows, origin)
        det = b.rows().det()
        backend = space.backend
        if (backend.is_exact and det == 0) or (
            not backend.is_exact and abs(det) <= backend.tolerance
        ):
            raise DegenerateBasis("basis vectors are linearly dependent")
        return b

    def rows(self) -> Matrix:
        return Matrix(self.vectors, self.space.backend)

    def eq(self, other: "Basis") -> bool:
        if self.space != other.space:
            return False
        if not self.rows().eq(other.rows()):
            return False
        if self.origin is None and other.origin is None:
            return True
        return vec_eq(self.origin, other.origin, self.space.backend)


@dataclass(frozen=True)
class StandardCoordinates:
    """Row ``k`` holds the coordinates of basis vector ``e_k`` in the reference."""

    grid: Matrix
    basis: Basis
    reference: Basis

    def is_identity(self) -> bool:
        return self.grid.is_identity()


@dataclass(frozen=True)
class CoordinateVector:
    """Components of a vector relative to a basis."""

    components: tuple
    basis: Basis

    def reconstruct(self) -> tuple:
        """Ambient vector ``sum_k components[k] e_k``."""
        return self.basis.rows().vecmat(self.components)


def _linear_grid(g: GroupElement) -> Matrix:
    payload = g.payload
    if isinstance(payload, AffineTransform):
        return payload.linear
    if isinstance(payload, Matrix):
        return payload
    raise GroupSpaceMismatch(f"element {g!r} has no linear action on a space")


def _check_acts(g: GroupElement, space: VectorSpace) -> None:
    grid = _linear_grid(g)
    if grid.nrows != space.dim:
        raise GroupSpaceMismatch(
            f"element dimension {grid.nrows} does not match space dimension {space.dim}"
        )
    if grid.backend != space.backend:
        raise GroupSpaceMismatch("element and space use different scalar backends")
    if isinstance(g.payload, AffineTransform) and space.kind != "affine":
        raise GroupSpaceMismatch("affine elements act only on affine spaces")


def active_transform(b: Basis, g: GroupElement) -> Basis:
    """Move every basis vector by ``g``; affine elements also move the origin.

    Coordinates of a simultaneously moved vector relative to the moved
    basis are unchanged, which is the defining property of the active
    side.
    """
    _check_acts(g, b.space)
    grid = _linear_grid(g)
    new_rows = [grid.matvec(v) for v in b.vectors]
    new_origin = None
    if b.space.kind == "affine":
        new_origin = grid.matvec(b.origin)
        if isinstance(g.payload, AffineTransform):
            new_origin = tuple(
                x + t for x, t in zip(new_origin, g.payload.translation)
            )
    return Basis.make(b.space, new_rows, new_origin)


def passive_transform(b: Basis, a: GroupElement) -> Basis:
    """Recombine basis vectors in place: ``e'_j = sum_i a[j][i] e_i``.

    The origin of an affine basis is left where it is; only the vector
    part is recombined.
    """
    _check_acts(a, b.space)
    grid = _linear_grid(a)
    new_rows = grid.mul(b.rows())
    return Basis.make(b.space, new_rows.entries, b.origin)


def standard_coordinates(b: Basis, reference: Basis) -> StandardCoordinates:
    """Coordinates of each vector of ``b`` relative to ``reference``."""
    if b.space != reference.space:
        raise GroupSpaceMismatch("bases live in different spaces")
    try:
        ref_inv = reference.rows().inverse()
    except Singular as exc:
        raise DegenerateReference(str(exc)) from exc
    return StandardCoordinates(b.rows().mul(ref_inv), b, reference)


def change_of_basis(b1: Basis, b2: Basis, group: MatrixGroup) -> GroupElement:
    """The group element transporting ``b1`` to ``b2`` on the passive side.

    Solves ``rows(b2) = grid @ rows(b1)`` and wraps the grid as an
    element of ``group``; a grid outside the family means the bases are
    not connected by the structure group, reported as
    :class:`NotInOrbit`.  For an affine structure group the translation
    part is solved from the two origins.
    """
    if b1.space != b2.space:
        raise GroupSpaceMismatch("bases live in different spaces")
    if group.dim != b1.space.dim or group.backend != b1.space.backend:
        raise GroupSpaceMismatch("group does not act on this space")
    try:
        grid = b2.rows().mul(b1.rows().inverse())
    except Singular as exc:
        raise DegenerateReference(str(exc)) from exc
    if group.family == "AFFINE":
        if b1.space.kind != "affine":
            raise GroupSpaceMismatch("affine group acts on affine bases only")
        shift = tuple(
            x - y for x, y in zip(b2.origin, grid.matvec(b1.origin))
        )
        payload = AffineTransform(grid, shift)
    else:
        if b1.origin is not None and not vec_eq(
            b1.origin, b2.origin, b1.space.backend
        ):
            raise NotInOrbit(
                "linear transports cannot move the origin of an affine basis"
            )
        payload = grid
    try:
        return group.element(payload)
    except MembershipError as exc:
        raise NotInOrbit(
            f"transport grid is outside {group.describe()}: {exc}"
        ) from exc


def vector_coordinates(v: Sequence, b: Basis) -> CoordinateVector:
    """Solve ``v = sum_k x[k] e_k`` for the component row ``x``."""
    ambient = vector(v, b.space.backend)
    if len(ambient) != b.space.dim:
        raise GroupSpaceMismatch("vector length does not match the space")
    try:
        components = b.rows().inverse().vecmat(ambient)
    except Singular as exc:
        raise DegenerateBasis(str(exc)) from exc
    return CoordinateVector(components, b)


def coordinate_transformation(cv: CoordinateVector, a: GroupElement) -> CoordinateVector:
    """Components relative to the passively transformed basis.

    The basis rows gain the grid on the left, so components gain its
    inverse on the right: ``x' = x @ grid^-1``.  The represented ambient
    vector is unchanged.
    """
    _check_acts(a, cv.basis.space)
    grid = _linear_grid(a)
    new_components = grid.inverse().vecmat(cv.components)
    return CoordinateVector(new_components, passive_transform(cv.basis, a))


@dataclass(frozen=True)
class CoordinateRepCheckReport:
    composition: Verdict
    effectiveness: Verdict

    @property
    def passed(self) -> bool:
        return self.composition.passed and self.effectiveness.passed


def coordinate_representation_check(
    group: MatrixGroup,
    samples: int = 100,
    vectors_per_pair: int = 3,
    seed: int = 42,
) -> CoordinateRepCheckReport:
    """Verify the coordinate transformation behaves as a representation.

    Composition: transforming coordinates for ``a`` and then for ``b``
    must equal the single transformation for the product ``b a``.
    Effectiveness: every stored (or sampled) element other than the
    identity moves at least one Kronecker coordinate tuple.
    """
    rng = Random(seed)
    n = group.dim
    backend = group.backend
    if group.store is not None:
        pairs = [(a, b) for a in group.store for b in group.store]
        mode = f"exhaustive-pairs({len(pairs)})"
        elements = list(group.store)
    else:
        pairs = [
            (sample_group_element(group, rng), sample_group_element(group, rng))
            for _ in range(samples)
        ]
        mode = f"sampled(k={samples}, seed={seed})"
        elements = [a for a, _ in pairs]

    residual = 0.0
    checked = 0
    composition: Optional[Verdict] = None
    for a, b in pairs:
        grid_a, grid_b = _linear_grid(a), _linear_grid(b)
        once = grid_b.mul(grid_a).inverse()
        step_a, step_b = grid_a.inverse(), grid_b.inverse()
        for _ in range(vectors_per_pair):
            v = random_vector(rng, n, backend)
            stepped = step_b.vecmat(step_a.vecmat(v))
            direct = once.vecmat(v)
            checked += 1
            if not backend.is_exact:
                residual = max(residual, vec_max_diff(stepped, direct))
            if not vec_eq(stepped, direct, backend):
                composition = Verdict(
                    False, mode, checked, (a, b, v), residual
                )
                break
        if composition is not None:
            break
    if composition is None:
        composition = Verdict(True, mode, checked, None, residual)

    kron = [
        tuple(backend.one() if i == k else backend.zero() for i in range(n))
        for k in range(n)
    ]
    effectiveness: Optional[Verdict] = None
    eff_checked = 0
    for a in elements:
        grid = _linear_grid(a)
        inv = grid.inverse()
        moved = [inv.vecmat(e) for e in kron]
        fixes_all = all(vec_eq(m, e, backend) for m, e in zip(moved, kron))
        eff_checked += 1
        if fixes_all and not grid.is_identity():
            effectiveness = Verdict(False, mode, eff_checked, (a,))
            break
    if effectiveness is None:
        effectiveness = Verdict(True, mode, eff_checked, None)
    return CoordinateRepCheckReport(composition, effectiveness)


def gram_schmidt(
    vectors: Sequence[Sequence],
    signature: tuple,
    tolerance: float = 1e-9,
) -> Basis:
    """Orthonormalise float vectors against the diagonal metric of ``signature``.

    Processes the input in order without pivoting.  Each residue is the
    input vector minus its projections on the vectors already produced;
    a residue below ``tolerance`` in max norm raises
    :class:`DependentInput`, and a residue of vanishing scalar square in
    a pseudo-euclid metric raises :class:`NullVector`.  The output basis
    lives in the euclid or pseudo-euclid space of the signature, with
    each vector normalised to scalar square plus or minus one.

    For a mixed signature the vectors are regrouped at the end, positive
    squares first, so the gram matrix is the metric itself and not a
    permutation of it.  Within each sign the input order is kept; the
    sign counts always match the signature for independent inputs.
    """
    p, q = signature
    n = p + q
    backend = approx(tolerance)
    space = VectorSpace(
        "euclid" if q == 0 else "pseudo_euclid",
        n,
        backend,
        signature=None if q == 0 else (p, q),
    )
    signs = space.metric_signs()
    if len(vectors) != n:
        raise DegenerateBasis(f"expected {n} input vectors, got {len(vectors)}")
    produced: list = []
    produced_signs: list = []
    for i, raw in enumerate(vectors):
        v = vector(raw, backend)
        if len(v) != n:
            raise DegenerateBasis(f"input vector {i} has length {len(v)}")
        residue = list(v)
        for e, sigma in zip(produced, produced_signs):
            coeff = sigma * metric_dot(tuple(residue), e, signs)
            residue = [r - coeff * x for r, x in zip(residue, e)]
        if max(abs(r) for r in residue) <= tolerance:
            raise DependentInput(i)
        square = metric_dot(tuple(residue), tuple(residue), signs)
        if abs(square) <= tolerance:
            if q == 0:
                raise DependentInput(i)
            raise NullVector(i)
        sigma = 1 if square > 0 else -1
        norm = abs(square) ** 0.5
        produced.append(tuple(r / norm for r in residue))
        produced_signs.append(sigma)
    if q > 0:
        ordered = [v for v, s in zip(produced, produced_signs) if s > 0]
        ordered += [v for v, s in zip(produced, produced_signs) if s < 0]
        produced = ordered
    return Basis.make(space, produced)


def basis_metric_signs(b: Basis) -> tuple:
    """Scalar squares of the basis vectors under the space's metric."""
    signs = b.space.metric_signs()
    return tuple(metric_dot(v, v, signs) for v in b.vectors)


@dataclass(frozen=True)
class GBasisReport:
    passed: bool
    residual: float
    detail: str


def is_g_basis(b: Basis) -> GBasisReport:
    """Does the basis satisfy its space's structure-group relationship?

    Metric spaces demand the Gram matrix equal the metric exactly (in
    order); the affine kinds only demand independence, which holds by
    construction.
    """
    if not b.space.has_metric:
        return GBasisReport(True, 0.0, "independent")
    signs = b.space.metric_signs()
    eta = Matrix.diagonal(signs, b.space.backend)
    rows = b.rows()
    gram = rows.mul(eta).mul(rows.transpose())
    residual = float(gram.max_diff(eta))
    if gram.eq(eta):
        return GBasisReport(True, residual, "orthonormal")
    return GBasisReport(False, residual, "gram matrix differs from the metric")


class PassiveBasisTransformation(Transformation):
    """Passive recombination of bases, acting on a basis manifold carrier."""

    def __init__(self, carrier, grid: Matrix):
        det = grid.det()
        if (grid.backend.is_exact and det == 0) or (
            not grid.backend.is_exact and abs(det) <= grid.backend.tolerance
        ):
            raise Singular("passive grid is singular")
        self.carrier = carrier
        self.grid = grid

    def with_grid(self, grid: Matrix) -> "PassiveBasisTransformation":
        return PassiveBasisTransformation(self.carrier, grid)

    def apply(self, b: Basis) -> Basis:
        return Basis.make(b.space, self.grid.mul(b.rows()).entries, b.origin)

    def inverted(self) -> "PassiveBasisTransformation":
        return PassiveBasisTransformation(self.carrier, self.grid.inverse())

    def is_identity(self) -> bool:
        return self.grid.is_identity()


class BasisCarrier:
    """Carrier whose points are the bases of one manifold."""

    enumerable = False
    size = None

    def __init__(self, manifold: "BasisManifold"):
        self.manifold = manifold

    def contains(self, b) -> bool:
        if not isinstance(b, Basis) or b.space != self.manifold.reference.space:
            return False
        if self.manifold.group.family == "SO":
            return is_g_basis(b).passed
        return True

    def point_eq(self, b1: Basis, b2: Basis) -> bool:
        return b1.eq(b2)

    def sample(self, rng: Random) -> Basis:
        g = sample_group_element(self.manifold.group, rng)
        return passive_transform(self.manifold.reference, g)

    def __repr__(self) -> str:
        return f"BasisCarrier({self.manifold!r})"


class BasisManifold:
    """All bases reachable from a reference under a structure group."""

    def __init__(self, reference: Basis, group: MatrixGroup):
        space = reference.space
        if group.dim != space.dim or group.backend != space.backend:
            raise GroupSpaceMismatch("group does not act on the reference's space")
        if group.family == "AFFINE" and space.kind != "affine":
            raise GroupSpaceMismatch("affine structure group needs an affine space")
        if group.family == "SO":
            if not space.has_metric:
                raise GroupSpaceMismatch(
                    "metric-preserving structure group needs a metric space"
                )
            if group.signature != space.signature:
                raise GroupSpaceMismatch(
                    f"group signature {group.signature} differs from "
                    f"space signature {space.signature}"
                )
            report = is_g_basis(reference)
            if not report.passed:
                raise GroupSpaceMismatch(
                    f"reference basis is not orthonormal: {report.detail}"
                )
        self.reference = reference
        self.group = group

    def contains(self, b: Basis) -> bool:
        try:
            self.change_of_basis(self.reference, b)
            return True
        except (NotInOrbit, GroupSpaceMismatch):
            return False

    def change_of_basis(self, b1: Basis, b2: Basis) -> GroupElement:
        return change_of_basis(b1, b2, self.group)

    def transport_from_reference(self, b: Basis) -> GroupElement:
        return self.change_of_basis(self.reference, b)

    def representation(self) -> Representation:
        """The passive action as a left-side representation with a solver."""
        carrier = BasisCarrier(self)
        group = self.group

        def assign(a: GroupElement) -> PassiveBasisTransformation:
            return PassiveBasisTransformation(carrier, _linear_grid(a))

        return Representation(
            group,
            carrier,
            "left",
            assign,
            variance_claim="covariant",
            label=f"passive({group.describe()})",
            transport_solver=lambda u, v: change_of_basis(u, v, group),
        )

    def __repr__(self) -> str:
        return f"BasisManifold({self.group.describe()}, dim={self.reference.space.dim})"
