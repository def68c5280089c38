"""Geometrical objects: functor-valued coordinates over an anchor basis.

An object of type ``A`` holds a coordinate row ``w`` in an auxiliary
space ``W`` together with a basis of ``W`` and an anchor basis of the
underlying space.  A group element ``a`` acts through the grid ``A(a)``
of the functor:

- coordinates:   ``w' = w @ A(a)^-1``
- the W basis:   ``E' = A(a) @ E``  (passive recombination)
- the anchor:    passive transformation by ``a``

The representative ``w @ E`` is unchanged by construction, which is the
invariance principle this module exists to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Optional, Sequence

from .bases import Basis, change_of_basis, passive_transform
from .errors import (
    AnchorMismatch,
    BasiskitError,
    DimensionMismatch,
    EnumerationCapExceeded,
    GroupSpaceMismatch,
    InfeasibleExhaustive,
    Singular,
    TypeMismatch,
)
from .groups import GroupElement, MatrixGroup, compose
from .matrices import Matrix, vec_eq, vec_max_diff, vec_add, vec_scale, vector
from .representations import Verdict
from .sampling import random_vector, sample_group_element

__all__ = [
    "TypeAFunctor",
    "identity_functor",
    "fundamental_functor",
    "dual_functor",
    "tensor_power_functor",
    "direct_sum_functor",
    "table_functor",
    "functor_eval",
    "weight_dim",
    "GeometricalObject",
    "transform_object",
    "representative",
    "invariance_check",
    "object_orbit",
    "ObjectOrbit",
    "object_orbit_well_defined_check",
    "add_objects",
    "scale_object",
    "rebase",
    "vector_space_axioms_check",
]


@dataclass(frozen=True)
class TypeAFunctor:
    """Grid-valued assignment matching the group product: ``A(ab) = A(a) A(b)``."""

    tag: str
    power: Optional[int] = None
    parts: Optional[tuple] = None
    table: Optional[tuple] = None

    def __post_init__(self):
        if self.tag not in (
            "identity",
            "fundamental",
            "dual",
            "tensor_power",
            "direct_sum",
            "table",
        ):
            raise BasiskitError(f"unknown functor tag {self.tag!r}")
        if self.tag == "tensor_power" and (self.power is None or self.power < 1):
            raise BasiskitError("tensor power needs a positive exponent")
        if self.tag == "direct_sum" and not self.parts:
            raise BasiskitError("direct sum needs at least one part")

    def describe(self) -> str:
        if self.tag == "tensor_power":
            return f"tensor_power({self.power})"
        if self.tag == "direct_sum":
            return "direct_sum(" + ", ".join(p.describe() for p in self.parts) + ")"
        return self.tag


def identity_functor() -> TypeAFunctor:
    return TypeAFunctor("identity")


def fundamental_functor() -> TypeAFunctor:
    return TypeAFunctor("fundamental")


def dual_functor() -> TypeAFunctor:
    return TypeAFunctor("dual")


def tensor_power_functor(k: int) -> TypeAFunctor:
    return TypeAFunctor("tensor_power", power=k)


def direct_sum_functor(*parts: TypeAFunctor) -> TypeAFunctor:
    return TypeAFunctor("direct_sum", parts=tuple(parts))


def table_functor(group, grids: Sequence[Matrix]) -> TypeAFunctor:
    """Explicit grid per stored element, verified to respect the product.

    The homomorphism property ``A(ab) = A(a) A(b)`` and ``A(e) = 1`` are
    checked over all stored pairs before the functor is accepted.
    """
    elements = _stored_elements(group)
    if len(grids) != len(elements):
        raise BasiskitError(
            f"table has {len(grids)} grids for {len(elements)} elements"
        )
    m = grids[0].nrows
    for grid in grids:
        if not grid.is_square or grid.nrows != m:
            raise DimensionMismatch("table grids must be square and equally sized")
    functor = TypeAFunctor("table", table=tuple(grids))
    identity_grid = _table_lookup(functor, group, group.identity)
    if not identity_grid.is_identity():
        raise BasiskitError("table functor does not send the identity to the identity")
    for a in elements:
        for b in elements:
            left = _table_lookup(functor, group, compose(group, a, b))
            right = _table_lookup(functor, group, a).mul(
                _table_lookup(functor, group, b)
            )
            if not left.eq(right):
                raise BasiskitError(
                    f"table functor breaks the product at ({a!r}, {b!r})"
                )
    return functor


def _stored_elements(group) -> tuple:
    if hasattr(group, "table"):
        return group.elements()
    store = getattr(group, "store", None)
    if store is None:
        raise InfeasibleExhaustive("table functor needs stored elements")
    return store


def _table_lookup(functor: TypeAFunctor, group, g: GroupElement) -> Matrix:
    for i, h in enumerate(_stored_elements(group)):
        if g.eq_to(h):
            return functor.table[i]
    raise BasiskitError(f"element {g!r} is not in the stored enumeration")


def weight_dim(functor: TypeAFunctor, n: int) -> int:
    """Dimension of the auxiliary space ``W`` over an ``n``-dimensional base."""
    if functor.tag == "identity":
        return 1
    if functor.tag in ("fundamental", "dual"):
        return n
    if functor.tag == "tensor_power":
        return n ** functor.power
    if functor.tag == "direct_sum":
        return sum(weight_dim(p, n) for p in functor.parts)
    return functor.table[0].nrows


def functor_eval(functor: TypeAFunctor, g: GroupElement) -> Matrix:
    """The grid ``A(g)``."""
    payload = g.payload
    if functor.tag == "table":
        return _table_lookup(functor, g.group, g)
    if not isinstance(payload, Matrix):
        raise GroupSpaceMismatch(
            f"functor {functor.describe()} needs a matrix group element"
        )
    if functor.tag == "identity":
        return Matrix.identity(1, payload.backend)
    if functor.tag == "fundamental":
        return payload
    if functor.tag == "dual":
        return payload.inverse().transpose()
    if functor.tag == "tensor_power":
        result = payload
        for _ in range(functor.power - 1):
            result = result.kron(payload)
        return result
    result = functor_eval(functor.parts[0], g)
    for part in functor.parts[1:]:
        result = result.block_diag(functor_eval(part, g))
    return result


@dataclass(frozen=True)
class GeometricalObject:
    functor: TypeAFunctor
    coords: tuple
    anchor: Basis
    w_basis: Matrix

    @classmethod
    def make(
        cls,
        functor: TypeAFunctor,
        coords: Sequence,
        anchor: Basis,
        w_basis: Optional[Matrix] = None,
    ) -> "GeometricalObject":
        backend = anchor.space.backend
        m = weight_dim(functor, anchor.space.dim)
        row = vector(coords, backend)
        if len(row) != m:
            raise DimensionMismatch(
                f"functor {functor.describe()} over dimension "
                f"{anchor.space.dim} needs {m} coordinates, got {len(row)}"
            )
        if w_basis is None:
            w_basis = Matrix.identity(m, backend)
        else:
            if w_basis.nrows != m or w_basis.ncols != m:
                raise DimensionMismatch("auxiliary basis has the wrong size")
            det = w_basis.det()
            if (backend.is_exact and det == 0) or (
                not backend.is_exact and abs(det) <= backend.tolerance
            ):
                raise Singular("auxiliary basis is degenerate")
        return cls(functor, row, anchor, w_basis)

    def eq(self, other: "GeometricalObject") -> bool:
        backend = self.anchor.space.backend
        return (
            self.functor == other.functor
            and vec_eq(self.coords, other.coords, backend)
            and self.anchor.eq(other.anchor)
            and self.w_basis.eq(other.w_basis)
        )


def transform_object(obj: GeometricalObject, g: GroupElement) -> GeometricalObject:
    """Move the object by ``g``: coordinates, auxiliary basis, anchor together."""
    grid = functor_eval(obj.functor, g)
    new_coords = grid.inverse().vecmat(obj.coords)
    new_w = grid.mul(obj.w_basis)
    new_anchor = passive_transform(obj.anchor, g)
    return GeometricalObject(obj.functor, new_coords, new_anchor, new_w)


def representative(obj: GeometricalObject) -> tuple:
    """The invariant element of ``W``: coordinates contracted with the basis."""
    return obj.w_basis.vecmat(obj.coords)


def invariance_check(obj: GeometricalObject, g: GroupElement) -> Verdict:
    """Representative before and after the transformation must agree."""
    before = representative(obj)
    after = representative(transform_object(obj, g))
    backend = obj.anchor.space.backend
    residual = 0.0 if backend.is_exact else vec_max_diff(before, after)
    if vec_eq(before, after, backend):
        return Verdict(True, "direct", 1, None, residual)
    return Verdict(False, "direct", 1, (g, before, after), residual)


@dataclass(frozen=True)
class ObjectOrbit:
    base: GeometricalObject
    points: tuple
    witnesses: tuple  # (object, group element) pairs


def object_orbit(
    obj: GeometricalObject, group: MatrixGroup, cap: int = 100_000
) -> ObjectOrbit:
    """Images of the object under every stored element, deduplicated."""
    store = getattr(group, "store", None)
    if store is None:
        raise InfeasibleExhaustive("object orbit needs stored elements")
    if len(store) > cap:
        raise EnumerationCapExceeded(
            f"group store of {len(store)} exceeds the cap {cap}"
        )
    points: list = []
    witnesses: list = []
    for g in store:
        moved = transform_object(obj, g)
        if not any(moved.eq(p) for p in points):
            points.append(moved)
            witnesses.append((moved, g))
    return ObjectOrbit(obj, tuple(points), tuple(witnesses))


def object_orbit_well_defined_check(
    obj: GeometricalObject, group: MatrixGroup
) -> Verdict:
    """Re-enumerating the orbit from any of its points gives the same set."""
    base_orbit = object_orbit(obj, group)
    checked = 0
    for point in base_orbit.points:
        other = object_orbit(point, group)
        checked += 1
        if len(other.points) != len(base_orbit.points):
            return Verdict(False, "exhaustive", checked, (point,))
        for q in other.points:
            if not any(q.eq(p) for p in base_orbit.points):
                return Verdict(False, "exhaustive", checked, (point, q))
    return Verdict(True, "exhaustive", checked, None)


def _require_compatible(o1: GeometricalObject, o2: GeometricalObject) -> None:
    if o1.functor != o2.functor:
        raise TypeMismatch(
            f"functors differ: {o1.functor.describe()} vs {o2.functor.describe()}"
        )
    if not o1.anchor.eq(o2.anchor) or not o1.w_basis.eq(o2.w_basis):
        raise AnchorMismatch(
            "objects are anchored at different bases; rebase one of them first"
        )


def add_objects(o1: GeometricalObject, o2: GeometricalObject) -> GeometricalObject:
    """Componentwise sum; defined only at a shared anchor."""
    _require_compatible(o1, o2)
    return GeometricalObject(
        o1.functor, vec_add(o1.coords, o2.coords), o1.anchor, o1.w_basis
    )


def scale_object(c, obj: GeometricalObject) -> GeometricalObject:
    backend = obj.anchor.space.backend
    return GeometricalObject(
        obj.functor, vec_scale(backend.coerce(c), obj.coords), obj.anchor, obj.w_basis
    )


def rebase(
    obj: GeometricalObject, target: Basis, group: Optional[MatrixGroup] = None
) -> GeometricalObject:
    """Transport the object to a different anchor explicitly.

    The connecting element is solved on the passive side and applied as a
    full object transformation, so the representative is preserved.
    """
    if group is None:
        group = MatrixGroup.general_linear(
            obj.anchor.space.dim, obj.anchor.space.backend
        )
    a = change_of_basis(obj.anchor, target, group)
    return transform_object(obj, a)


def vector_space_axioms_check(
    functor: TypeAFunctor,
    anchor: Basis,
    group: MatrixGroup,
    samples: int = 100,
    seed: int = 42,
) -> Verdict:
    """Objects at a fixed anchor form a vector space; transforms are linear.

    Checks commutativity, associativity, zero, negatives, distributivity,
    and that ``transform`` commutes with sum and scalar multiple, on
    seeded random data.
    """
    rng = Random(seed)
    backend = anchor.space.backend
    m = weight_dim(functor, anchor.space.dim)
    zero = GeometricalObject.make(functor, [backend.zero()] * m, anchor)
    checked = 0
    for _ in range(samples):
        u = GeometricalObject.make(functor, random_vector(rng, m, backend), anchor)
        v = GeometricalObject.make(functor, random_vector(rng, m, backend), anchor)
        w = GeometricalObject.make(functor, random_vector(rng, m, backend), anchor)
        c = random_vector(rng, 1, backend)[0]
        g = sample_group_element(group, rng)
        laws = [
            ("commutative", add_objects(u, v), add_objects(v, u)),
            (
                "associative",
                add_objects(add_objects(u, v), w),
                add_objects(u, add_objects(v, w)),
            ),
            ("zero", add_objects(u, zero), u),
            ("negative", add_objects(u, scale_object(-1, u)), zero),
            (
                "distributive",
                scale_object(c, add_objects(u, v)),
                add_objects(scale_object(c, u), scale_object(c, v)),
            ),
            (
                "transform-additive",
                transform_object(add_objects(u, v), g),
                add_objects(transform_object(u, g), transform_object(v, g)),
            ),
            (
                "transform-homogeneous",
                transform_object(scale_object(c, u), g),
                scale_object(c, transform_object(u, g)),
            ),
        ]
        for name, lhs, rhs in laws:
            checked += 1
            if not lhs.eq(rhs):
                return Verdict(
                    False,
                    f"sampled(k={samples}, seed={seed})",
                    checked,
                    (name, u.coords, v.coords, c),
                )
    return Verdict(True, f"sampled(k={samples}, seed={seed})", checked, None)
