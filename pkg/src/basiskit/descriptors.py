"""JSON descriptors for groups, representations, bases and objects.

Exact scalars travel as ``"num/den"`` strings, float scalars as JSON
numbers.  Every descriptor this module can emit it can parse back to an
equal descriptor, which is what the command line round-trip relies on.
Malformed input raises :class:`~basiskit.errors.ParseError` uniformly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .bases import Basis, VectorSpace
from .errors import BasiskitError, CayleyTableError, MembershipError, ParseError
from .groups import (
    AffineTransform,
    FiniteGroup,
    GroupElement,
    MatrixGroup,
    validate_cayley_table,
)
from .matrices import Matrix
from .objects import GeometricalObject, TypeAFunctor
from .representations import (
    CoordCarrier,
    FiniteCarrier,
    LinearTransformation,
    MappingTransformation,
    Representation,
    SelfCarrier,
)
from .scalars import (
    EXACT,
    Backend,
    approx,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "load_json",
    "group_from_descriptor",
    "group_to_descriptor",
    "representation_from_descriptor",
    "basis_from_descriptor",
    "basis_to_descriptor",
    "object_from_descriptor",
    "object_to_descriptor",
    "element_from_descriptor",
    "element_to_descriptor",
    "functor_from_descriptor",
    "functor_to_descriptor",
    "to_jsonable",
]


def load_json(path: str):
    """Read a JSON document from a file path, or from the string itself
    when it starts with ``{`` or ``[`` (inline descriptors on the command
    line)."""
    if path.lstrip()[:1] in ("{", "["):
        try:
            return json.loads(path)
        except json.JSONDecodeError as exc:
            raise ParseError(f"inline value is not valid JSON: {exc}") from exc
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _need(d: dict, key: str, context: str):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"{context}: missing field {key!r}")
    return d[key]


def _vector_from(values, backend: Backend, context: str) -> tuple:
    if not isinstance(values, list):
        raise ParseError(f"{context}: expected a list of scalars")
    return tuple(scalar_from_json(v, backend) for v in values)


def _vector_out(values, backend: Backend) -> list:
    return [scalar_to_json(v, backend) for v in values]


def _matrix_from(rows, backend: Backend, context: str) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{context}: expected a list of rows")
    try:
        return Matrix.from_rows(
            [[scalar_from_json(x, backend) for x in row] for row in rows], backend
        )
    except BasiskitError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _matrix_out(m: Matrix) -> list:
    return [[scalar_to_json(x, m.backend) for x in row] for row in m.entries]


def _flat_matrix_from(values, dim: int, backend: Backend, context: str) -> Matrix:
    if not isinstance(values, list) or len(values) != dim * dim:
        raise ParseError(f"{context}: expected {dim * dim} row-major scalars")
    scalars = [scalar_from_json(v, backend) for v in values]
    rows = [scalars[i * dim : (i + 1) * dim] for i in range(dim)]
    return Matrix.from_rows(rows, backend)


def _flat_matrix_out(m: Matrix) -> list:
    return [scalar_to_json(x, m.backend) for row in m.entries for x in row]


# -- groups -------------------------------------------------------------------


def group_from_descriptor(
    d: dict,
    backend: Optional[Backend] = None,
    tolerance: float = 1e-9,
    cap: int = 100_000,
):
    kind = _need(d, "kind", "group")
    if kind == "finite":
        table = _need(d, "table", "finite group")
        if not isinstance(table, list):
            raise ParseError("finite group: table must be a list of rows")
        try:
            group = validate_cayley_table(table, names=d.get("names"))
        except CayleyTableError:
            raise
        except BasiskitError as exc:
            raise ParseError(f"finite group: {exc}") from exc
        declared = d.get("identity")
        if declared is not None and declared != group.identity_index:
            raise ParseError(
                f"finite group: declared identity {declared}, "
                f"table gives {group.identity_index}"
            )
        return group
    if kind in ("matrix", "affine"):
        dim = _need(d, "dim", f"{kind} group")
        if not isinstance(dim, int) or dim < 1:
            raise ParseError(f"{kind} group: bad dimension {dim!r}")
        if kind == "affine":
            family = "AFFINE"
            signature = None
        else:
            family = _need(d, "family", "matrix group")
            if family not in ("GL", "SL", "SO"):
                raise ParseError(f"matrix group: unknown family {family!r}")
            signature = d.get("signature")
            if signature is not None:
                signature = tuple(signature)
        if backend is None:
            backend = approx(tolerance) if family == "SO" else EXACT
        payloads = None
        if "elements" in d:
            payloads = [
                _element_payload(e, family, dim, backend, f"{kind} group element")
                for e in d["elements"]
            ]
        try:
            group = MatrixGroup(
                family, dim, backend, signature=signature, elements=payloads
            )
        except MembershipError:
            raise
        except BasiskitError as exc:
            raise ParseError(f"{kind} group: {exc}") from exc
        if "generators" in d:
            gens = [
                _element_payload(e, family, dim, backend, f"{kind} group generator")
                for e in d["generators"]
            ]
            group.close_over(gens, cap=cap)
        return group
    raise ParseError(f"group: unknown kind {kind!r}")


def _element_payload(e, family: str, dim: int, backend: Backend, context: str):
    if family == "AFFINE":
        linear = _matrix_from(_need(e, "P", context), backend, context)
        shift = _vector_from(_need(e, "R", context), backend, context)
        try:
            return AffineTransform(linear, shift)
        except BasiskitError as exc:
            raise ParseError(f"{context}: {exc}") from exc
    return _flat_matrix_from(e, dim, backend, context)


def group_to_descriptor(group) -> dict:
    if isinstance(group, FiniteGroup):
        d = {
            "kind": "finite",
            "table": [list(row) for row in group.table],
            "identity": group.identity_index,
        }
        if group.names is not None:
            d["names"] = list(group.names)
        return d
    if group.family == "AFFINE":
        d = {"kind": "affine", "dim": group.dim}
        if group.store is not None:
            d["elements"] = [
                {
                    "P": _matrix_out(g.payload.linear),
                    "R": _vector_out(g.payload.translation, group.backend),
                }
                for g in group.store
            ]
        return d
    d = {"kind": "matrix", "family": group.family, "dim": group.dim}
    if group.family == "SO":
        d["signature"] = list(group.signature)
    if group.store is not None:
        d["elements"] = [_flat_matrix_out(g.payload) for g in group.store]
    return d


# -- elements ----------------------------------------------------------------


def element_from_descriptor(d, group) -> GroupElement:
    """An element given inline: ``{"index": i}``, ``{"matrix": rows}``,
    or ``{"P": rows, "R": shift}``."""
    if isinstance(group, FiniteGroup):
        if isinstance(d, int):
            d = {"index": d}
        index = _need(d, "index", "element")
        if not isinstance(index, int):
            raise ParseError(f"element: bad index {index!r}")
        try:
            return group.element(index)
        except BasiskitError as exc:
            raise ParseError(f"element: {exc}") from exc
    if group.family == "AFFINE":
        payload = _element_payload(d, "AFFINE", group.dim, group.backend, "element")
    else:
        rows = _need(d, "matrix", "element")
        payload = _matrix_from(rows, group.backend, "element")
    return group.element(payload)


def element_to_descriptor(g: GroupElement) -> dict:
    payload = g.payload
    if isinstance(payload, int):
        d = {"index": payload}
        name = g.name
        if name != str(payload):
            d["name"] = name
        return d
    if isinstance(payload, AffineTransform):
        return {
            "P": _matrix_out(payload.linear),
            "R": _vector_out(payload.translation, payload.backend),
        }
    return {"matrix": _matrix_out(payload)}


# -- representations ----------------------------------------------------------


def representation_from_descriptor(
    d: dict,
    backend: Optional[Backend] = None,
    tolerance: float = 1e-9,
    cap: int = 100_000,
) -> Representation:
    from .representations import left_shift, right_shift

    group = group_from_descriptor(
        _need(d, "group", "representation"), backend, tolerance, cap
    )
    side = _need(d, "side", "representation")
    if side not in ("left", "right"):
        raise ParseError(f"representation: side must be left or right, got {side!r}")
    carrier_d = _need(d, "carrier", "representation")
    carrier_kind = _need(carrier_d, "kind", "carrier")
    assign_d = _need(d, "assign", "representation")
    assign_kind = _need(assign_d, "kind", "assign")

    if assign_kind in ("shift-left", "shift-right"):
        if carrier_kind != "self":
            raise ParseError("shift assignments need the self carrier")
        expected_side = "left" if assign_kind == "shift-left" else "right"
        if side != expected_side:
            raise ParseError(
                f"{assign_kind} is a {expected_side}-side representation"
            )
        rep = left_shift(group) if side == "left" else right_shift(group)
        rep.descriptor = d
        return rep

    if carrier_kind == "finite":
        size = _need(carrier_d, "size", "carrier")
        if not isinstance(size, int) or size < 1:
            raise ParseError(f"carrier: bad size {size!r}")
        carrier = FiniteCarrier(size)
    elif carrier_kind == "coords":
        dim = _need(carrier_d, "dim", "carrier")
        layout = _need(carrier_d, "layout", "carrier")
        if layout not in ("row", "column"):
            raise ParseError(f"carrier: unknown layout {layout!r}")
        cb = getattr(group, "backend", EXACT)
        carrier = CoordCarrier(dim, layout, cb)
    elif carrier_kind == "self":
        carrier = SelfCarrier(group)
    else:
        raise ParseError(f"carrier: unknown kind {carrier_kind!r}")

    if assign_kind == "trivial":
        def assign(g, _carrier=carrier):
            if isinstance(_carrier, CoordCarrier):
                return LinearTransformation(
                    _carrier, Matrix.identity(_carrier.dim, _carrier.backend)
                )
            return MappingTransformation(
                _carrier, {p: p for p in _carrier.points()}
            )

        rep = Representation(group, carrier, side, assign, label="trivial")
    elif assign_kind == "permutation-table":
        if not isinstance(group, FiniteGroup) or not isinstance(
            carrier, FiniteCarrier
        ):
            raise ParseError(
                "permutation-table needs a finite group and a finite carrier"
            )
        perms = _need(assign_d, "table", "assign")
        if not isinstance(perms, list) or len(perms) != group.order:
            raise ParseError(
                f"assign: expected {group.order} permutations"
            )
        for i, perm in enumerate(perms):
            if sorted(perm) != list(range(carrier.size)):
                raise ParseError(
                    f"assign: row {i} is not a permutation of the carrier"
                )
        mappings = [dict(enumerate(perm)) for perm in perms]

        def assign(g, _carrier=carrier, _mappings=mappings):
            return MappingTransformation(_carrier, _mappings[g.payload])

        rep = Representation(group, carrier, side, assign, label="permutation-table")
    elif assign_kind == "linear":
        if not isinstance(carrier, CoordCarrier):
            raise ParseError("linear assignment needs a coordinate carrier")
        if isinstance(group, FiniteGroup):
            grids_d = _need(assign_d, "matrices", "assign")
            if not isinstance(grids_d, list) or len(grids_d) != group.order:
                raise ParseError(f"assign: expected {group.order} matrices")
            grids = [
                _matrix_from(rows, carrier.backend, "assign matrix")
                for rows in grids_d
            ]
            for grid in grids:
                if grid.nrows != carrier.dim or grid.ncols != carrier.dim:
                    raise ParseError("assign: matrix size does not match carrier")

            def assign(g, _carrier=carrier, _grids=grids):
                return LinearTransformation(_carrier, _grids[g.payload])

        else:
            if group.dim != carrier.dim:
                raise ParseError(
                    "linear assignment: carrier dimension differs from the group's"
                )

            def assign(g, _carrier=carrier):
                return LinearTransformation(_carrier, g.payload)

        rep = Representation(group, carrier, side, assign, label="linear")
    else:
        raise ParseError(f"assign: unknown kind {assign_kind!r}")
    rep.descriptor = d
    return rep


def point_from_descriptor(raw, carrier):
    """Interpret an inline JSON value as a carrier point."""
    if isinstance(carrier, FiniteCarrier):
        if not isinstance(raw, int):
            raise ParseError(f"point: expected an integer index, got {raw!r}")
        if not 0 <= raw < carrier.size:
            raise ParseError(f"point: {raw} outside 0..{carrier.size - 1}")
        return raw
    if isinstance(carrier, CoordCarrier):
        return _vector_from(raw, carrier.backend, "point")
    if isinstance(carrier, SelfCarrier):
        return element_from_descriptor(raw, carrier.group)
    raise ParseError("point: this carrier has no JSON point form")


# -- spaces, bases ------------------------------------------------------------


def _space_from_descriptor(
    d: dict, backend: Optional[Backend], tolerance: float
) -> VectorSpace:
    kind = _need(d, "kind", "space")
    dim = _need(d, "dim", "space")
    signature = d.get("signature")
    if signature is not None:
        signature = tuple(signature)
    if backend is None:
        backend = approx(tolerance) if kind in ("euclid", "pseudo_euclid") else EXACT
    try:
        return VectorSpace(kind, dim, backend, signature=signature)
    except BasiskitError as exc:
        raise ParseError(f"space: {exc}") from exc


def basis_from_descriptor(
    d: dict, backend: Optional[Backend] = None, tolerance: float = 1e-9
) -> Basis:
    space = _space_from_descriptor(_need(d, "space", "basis"), backend, tolerance)
    vectors_d = _need(d, "vectors", "basis")
    if not isinstance(vectors_d, list):
        raise ParseError("basis: vectors must be a list")
    vectors = [_vector_from(v, space.backend, "basis vector") for v in vectors_d]
    origin = None
    if d.get("origin") is not None:
        origin = _vector_from(d["origin"], space.backend, "basis origin")
    try:
        return Basis.make(space, vectors, origin)
    except BasiskitError as exc:
        raise ParseError(f"basis: {exc}") from exc


def basis_to_descriptor(b: Basis) -> dict:
    backend = b.space.backend
    space_d = {"kind": b.space.kind, "dim": b.space.dim}
    if b.space.kind == "pseudo_euclid":
        space_d["signature"] = list(b.space.signature)
    d = {
        "space": space_d,
        "vectors": [_vector_out(v, backend) for v in b.vectors],
    }
    if b.origin is not None:
        d["origin"] = _vector_out(b.origin, backend)
    return d


# -- functors, objects ---------------------------------------------------------


def functor_from_descriptor(d: dict) -> TypeAFunctor:
    tag = _need(d, "tag", "functor")
    try:
        if tag == "tensor_power":
            return TypeAFunctor(tag, power=_need(d, "k", "functor"))
        if tag == "direct_sum":
            parts = _need(d, "parts", "functor")
            if not isinstance(parts, list):
                raise ParseError("functor: parts must be a list")
            return TypeAFunctor(
                tag, parts=tuple(functor_from_descriptor(p) for p in parts)
            )
        return TypeAFunctor(tag)
    except BasiskitError as exc:
        raise ParseError(f"functor: {exc}") from exc


def functor_to_descriptor(f: TypeAFunctor) -> dict:
    if f.tag == "tensor_power":
        return {"tag": f.tag, "k": f.power}
    if f.tag == "direct_sum":
        return {"tag": f.tag, "parts": [functor_to_descriptor(p) for p in f.parts]}
    return {"tag": f.tag}


def object_from_descriptor(
    d: dict, backend: Optional[Backend] = None, tolerance: float = 1e-9
) -> GeometricalObject:
    functor = functor_from_descriptor(_need(d, "functor", "object"))
    anchor = basis_from_descriptor(_need(d, "anchor", "object"), backend, tolerance)
    be = anchor.space.backend
    coords = _vector_from(_need(d, "coords", "object"), be, "object coords")
    w_basis = None
    if d.get("w_basis") is not None:
        w_basis = _matrix_from(d["w_basis"], be, "object w_basis")
    try:
        return GeometricalObject.make(functor, coords, anchor, w_basis)
    except BasiskitError as exc:
        raise ParseError(f"object: {exc}") from exc


def object_to_descriptor(obj: GeometricalObject) -> dict:
    backend = obj.anchor.space.backend
    d = {
        "functor": functor_to_descriptor(obj.functor),
        "coords": _vector_out(obj.coords, backend),
        "anchor": basis_to_descriptor(obj.anchor),
    }
    if not obj.w_basis.is_identity():
        d["w_basis"] = _matrix_out(obj.w_basis)
    return d


# -- generic serialization for reports ------------------------------------------


def to_jsonable(value):
    """Render arbitrary check artifacts (witnesses, points) for a report."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return scalar_to_json(value, EXACT)
    if isinstance(value, GroupElement):
        return element_to_descriptor(value)
    if isinstance(value, Matrix):
        return _matrix_out(value)
    if isinstance(value, AffineTransform):
        return {
            "P": _matrix_out(value.linear),
            "R": _vector_out(value.translation, value.backend),
        }
    if isinstance(value, Basis):
        return basis_to_descriptor(value)
    if isinstance(value, GeometricalObject):
        return object_to_descriptor(value)
    if isinstance(value, (tuple, list)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    return repr(value)
