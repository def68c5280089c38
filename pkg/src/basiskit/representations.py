"""Group representations: axioms, variance, orbits, transport and twins.

A representation assigns to every group element an invertible
transformation of a carrier.  The two composition laws are kept apart
throughout:

- left side:  ``f(ab) u = f(a)(f(b) u)``
- right side: ``u f(ab) = (u f(a)) f(b)``

Variance is a separate question and is classified by
:func:`check_variance`: a covariant assignment is a homomorphism, a
contravariant one an antihomomorphism.  Point mappings are classified
against map composition; matrix-valued assignments against the grid
product, which reproduces the classical row/column vector conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random
from typing import Callable, Optional

from .errors import (
    BasiskitError,
    CarrierMismatch,
    DimensionMismatch,
    EnumerationCapExceeded,
    GroupMismatch,
    InfeasibleExhaustive,
    MixedGroups,
    NoSolution,
    NotCovariant,
    NotSingleTransitive,
    SideMismatch,
    Singular,
)
from .groups import FiniteGroup, GroupElement, compose
from .matrices import Matrix, vec_eq, vec_max_diff
from .sampling import random_vector, sample_group_element
from .scalars import Backend

__all__ = [
    "FiniteCarrier",
    "CoordCarrier",
    "SelfCarrier",
    "ProductCarrier",
    "Transformation",
    "MappingTransformation",
    "LinearTransformation",
    "AffinePointTransformation",
    "PairTransformation",
    "FunctionTransformation",
    "compose_transformations",
    "transformations_equal",
    "Representation",
    "Verdict",
    "VarianceVerdict",
    "ClassificationReport",
    "Orbit",
    "OrbitPartitionReport",
    "SameSideWitness",
    "apply",
    "check_axioms",
    "check_variance",
    "inverse_law_check",
    "left_shift",
    "right_shift",
    "contragredient",
    "orbit",
    "orbit_well_defined_check",
    "direct_product",
    "kernel_of_inefficiency",
    "classify",
    "solve_transport",
    "shifts_commute_check",
    "twin_representation",
    "same_side_noncommuting_witness",
]

EXHAUSTIVE_WORK_CAP = 1_000_000
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 42


# -- carriers ------------------------------------------------------------


class FiniteCarrier:
    """Points ``0 .. size-1``."""

    enumerable = True

    def __init__(self, size: int):
        if size < 1:
            raise BasiskitError("carrier needs at least one point")
        self.size = size

    def points(self) -> tuple:
        return tuple(range(self.size))

    def contains(self, p) -> bool:
        return isinstance(p, int) and 0 <= p < self.size

    def point_eq(self, p, q) -> bool:
        return p == q

    def sample(self, rng: Random):
        return rng.randrange(self.size)

    def __repr__(self) -> str:
        return f"FiniteCarrier({self.size})"


class CoordCarrier:
    """Coordinate tuples of a fixed dimension, row or column layout."""

    enumerable = False
    size = None

    def __init__(self, dim: int, layout: str, backend: Backend):
        if layout not in ("row", "column"):
            raise BasiskitError(f"unknown layout {layout!r}")
        if dim < 1:
            raise BasiskitError("carrier needs positive dimension")
        self.dim = dim
        self.layout = layout
        self.backend = backend

    def points(self):
        raise InfeasibleExhaustive("coordinate carrier is not enumerable")

    def contains(self, p) -> bool:
        return isinstance(p, tuple) and len(p) == self.dim

    def point_eq(self, p, q) -> bool:
        return vec_eq(p, q, self.backend)

    def sample(self, rng: Random):
        return random_vector(rng, self.dim, self.backend)

    def __repr__(self) -> str:
        return f"CoordCarrier(dim={self.dim}, layout={self.layout})"


class SelfCarrier:
    """The group acting on its own elements."""

    def __init__(self, group):
        self.group = group

    @property
    def enumerable(self) -> bool:
        return _enumerable_elements(self.group) is not None

    @property
    def size(self) -> Optional[int]:
        elements = _enumerable_elements(self.group)
        return None if elements is None else len(elements)

    def points(self) -> tuple:
        elements = _enumerable_elements(self.group)
        if elements is None:
            raise InfeasibleExhaustive("group has no stored elements to enumerate")
        return elements

    def contains(self, p) -> bool:
        return isinstance(p, GroupElement) and p.group is self.group

    def point_eq(self, p, q) -> bool:
        return p.eq_to(q)

    def sample(self, rng: Random):
        return sample_group_element(self.group, rng)

    def __repr__(self) -> str:
        return f"SelfCarrier({self.group!r})"


class ProductCarrier:
    """Cartesian product of two carriers; points are pairs."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    @property
    def enumerable(self) -> bool:
        return self.left.enumerable and self.right.enumerable

    @property
    def size(self) -> Optional[int]:
        if not self.enumerable:
            return None
        return self.left.size * self.right.size

    def points(self) -> tuple:
        return tuple(
            itertools.product(self.left.points(), self.right.points())
        )

    def contains(self, p) -> bool:
        return (
            isinstance(p, tuple)
            and len(p) == 2
            and self.left.contains(p[0])
            and self.right.contains(p[1])
        )

    def point_eq(self, p, q) -> bool:
        return self.left.point_eq(p[0], q[0]) and self.right.point_eq(p[1], q[1])

    def sample(self, rng: Random):
        return (self.left.sample(rng), self.right.sample(rng))

    def __repr__(self) -> str:
        return f"ProductCarrier({self.left!r}, {self.right!r})"


# -- transformations -----------------------------------------------------


class Transformation:
    """Invertible map of a carrier."""

    carrier = None

    def apply(self, p):
        raise NotImplementedError

    def inverted(self) -> "Transformation":
        raise NotImplementedError

    def is_identity(self) -> bool:
        raise NotImplementedError


class MappingTransformation(Transformation):
    """Explicit bijection of an enumerable carrier."""

    def __init__(self, carrier, mapping: dict):
        if not carrier.enumerable:
            raise InfeasibleExhaustive("mapping needs an enumerable carrier")
        if len(mapping) != carrier.size:
            raise BasiskitError(
                f"mapping covers {len(mapping)} of {carrier.size} points"
            )
        if len(set(mapping.values())) != len(mapping):
            raise Singular("mapping is not injective")
        self.carrier = carrier
        self.mapping = dict(mapping)

    def apply(self, p):
        try:
            return self.mapping[p]
        except (KeyError, TypeError):
            pass
        for k, v in self.mapping.items():
            if self.carrier.point_eq(k, p):
                return v
        raise CarrierMismatch(f"point {p!r} is outside the mapping's domain")

    def inverted(self) -> "MappingTransformation":
        return MappingTransformation(
            self.carrier, {v: k for k, v in self.mapping.items()}
        )

    def is_identity(self) -> bool:
        return all(self.carrier.point_eq(k, v) for k, v in self.mapping.items())


class LinearTransformation(Transformation):
    """Invertible grid acting on a coordinate carrier.

    Column layout contracts ``u' = M u``; row layout ``u' = u M``.
    """

    def __init__(self, carrier: CoordCarrier, grid: Matrix):
        if grid.nrows != carrier.dim or grid.ncols != carrier.dim:
            raise DimensionMismatch(
                f"grid is {grid.nrows}x{grid.ncols}, carrier dimension {carrier.dim}"
            )
        if carrier.backend != grid.backend:
            grid = Matrix.from_rows(grid.rows_as_lists(), carrier.backend)
        det = grid.det()
        if (grid.backend.is_exact and det == 0) or (
            not grid.backend.is_exact and abs(det) <= grid.backend.tolerance
        ):
            raise Singular("transformation grid is singular")
        self.carrier = carrier
        self.grid = grid

    def apply(self, p):
        if self.carrier.layout == "column":
            return self.grid.matvec(p)
        return self.grid.vecmat(p)

    def inverted(self) -> "LinearTransformation":
        return LinearTransformation(self.carrier, self.grid.inverse())

    def is_identity(self) -> bool:
        return self.grid.is_identity()


class AffinePointTransformation(Transformation):
    """Affine map acting on a coordinate carrier's points."""

    def __init__(self, carrier: CoordCarrier, affine):
        if affine.dim != carrier.dim:
            raise DimensionMismatch("affine dimension does not match carrier")
        self.carrier = carrier
        self.affine = affine

    def apply(self, p):
        return self.affine.apply(p)

    def inverted(self) -> "AffinePointTransformation":
        return AffinePointTransformation(self.carrier, self.affine.inverted())

    def is_identity(self) -> bool:
        backend = self.affine.backend
        return self.affine.linear.is_identity() and all(
            backend.is_zero(x) for x in self.affine.translation
        )


class PairTransformation(Transformation):
    """Componentwise action on a product carrier."""

    def __init__(self, carrier: ProductCarrier, first: Transformation, second: Transformation):
        self.carrier = carrier
        self.first = first
        self.second = second

    def apply(self, p):
        return (self.first.apply(p[0]), self.second.apply(p[1]))

    def inverted(self) -> "PairTransformation":
        return PairTransformation(
            self.carrier, self.first.inverted(), self.second.inverted()
        )

    def is_identity(self) -> bool:
        return self.first.is_identity() and self.second.is_identity()


class FunctionTransformation(Transformation):
    """Opaque callable, with an optional explicit inverse."""

    def __init__(self, carrier, fn: Callable, inverse_fn: Optional[Callable] = None):
        self.carrier = carrier
        self.fn = fn
        self.inverse_fn = inverse_fn

    def apply(self, p):
        return self.fn(p)

    def inverted(self) -> "FunctionTransformation":
        if self.inverse_fn is None:
            raise BasiskitError("no inverse available for an opaque transformation")
        return FunctionTransformation(self.carrier, self.inverse_fn, self.fn)

    def is_identity(self) -> bool:
        if not self.carrier.enumerable:
            raise InfeasibleExhaustive(
                "cannot decide identity of an opaque map on a non-enumerable carrier"
            )
        return all(self.carrier.point_eq(self.fn(p), p) for p in self.carrier.points())


def compose_transformations(t1: Transformation, t2: Transformation) -> Transformation:
    """Map composition ``t1 after t2``: apply ``t2`` first."""
    if isinstance(t1, LinearTransformation) and isinstance(t2, LinearTransformation):
        if t1.carrier.layout == "column":
            return LinearTransformation(t1.carrier, t1.grid.mul(t2.grid))
        return LinearTransformation(t1.carrier, t2.grid.mul(t1.grid))
    if type(t1) is type(t2) and hasattr(t1, "with_grid"):
        # grid-bearing transformations whose action is grid times point
        # block: composition is the grid product
        return t1.with_grid(t1.grid.mul(t2.grid))
    if isinstance(t1, MappingTransformation) and isinstance(t2, MappingTransformation):
        return MappingTransformation(
            t1.carrier, {k: t1.apply(v) for k, v in t2.mapping.items()}
        )
    if isinstance(t1, AffinePointTransformation) and isinstance(
        t2, AffinePointTransformation
    ):
        return AffinePointTransformation(t1.carrier, t1.affine.after(t2.affine))
    if isinstance(t1, PairTransformation) and isinstance(t2, PairTransformation):
        return PairTransformation(
            t1.carrier,
            compose_transformations(t1.first, t2.first),
            compose_transformations(t1.second, t2.second),
        )
    return FunctionTransformation(t1.carrier, lambda p: t1.apply(t2.apply(p)))


def transformations_equal(t1: Transformation, t2: Transformation) -> bool:
    """Extensional equality; structural where the form allows it."""
    if type(t1) is type(t2) and hasattr(t1, "grid") and hasattr(t2, "grid"):
        return t1.grid.eq(t2.grid)
    if isinstance(t1, AffinePointTransformation) and isinstance(
        t2, AffinePointTransformation
    ):
        return t1.affine.eq(t2.affine)
    if isinstance(t1, PairTransformation) and isinstance(t2, PairTransformation):
        return transformations_equal(t1.first, t2.first) and transformations_equal(
            t1.second, t2.second
        )
    carrier = t1.carrier
    if not carrier.enumerable:
        raise InfeasibleExhaustive(
            "cannot compare opaque transformations on a non-enumerable carrier"
        )
    return all(
        carrier.point_eq(t1.apply(p), t2.apply(p)) for p in carrier.points()
    )


def _variance_product(t1: Transformation, t2: Transformation) -> Transformation:
    # Matrix-valued assignments are classified against the grid product,
    # which is layout independent; everything else against composition.
    if isinstance(t1, LinearTransformation) and isinstance(t2, LinearTransformation):
        return LinearTransformation(t1.carrier, t1.grid.mul(t2.grid))
    if type(t1) is type(t2) and hasattr(t1, "with_grid"):
        return t1.with_grid(t1.grid.mul(t2.grid))
    return compose_transformations(t1, t2)


# -- the representation type ----------------------------------------------


class Representation:
    """Assignment of transformations to group elements, with a side."""

    def __init__(
        self,
        group,
        carrier,
        side: str,
        assign: Callable[[GroupElement], Transformation],
        variance_claim: Optional[str] = None,
        label: str = "",
        transport_solver: Optional[Callable] = None,
        origin=None,
    ):
        if side not in ("left", "right"):
            raise BasiskitError(f"side must be 'left' or 'right', got {side!r}")
        self.group = group
        self.carrier = carrier
        self.side = side
        self._assign = assign
        self.variance_claim = variance_claim
        self.label = label or "representation"
        self.transport_solver = transport_solver
        self.origin = origin
        self._cache: dict = {}
        if not self.transformation(_identity_of(group)).is_identity():
            raise BasiskitError(
                f"{self.label}: the identity element is not assigned the identity map"
            )

    def transformation(self, g: GroupElement) -> Transformation:
        if not isinstance(g, GroupElement) or g.group is not self.group:
            raise MixedGroups("element does not belong to this representation's group")
        try:
            return self._cache[g]
        except (KeyError, TypeError):
            pass
        t = self._assign(g)
        try:
            self._cache[g] = t
        except TypeError:
            pass
        return t

    def apply(self, g: GroupElement, u):
        if not self.carrier.contains(u):
            raise CarrierMismatch(f"point {u!r} is not in the carrier")
        return self.transformation(g).apply(u)

    def __repr__(self) -> str:
        return f"Representation({self.label}, side={self.side})"


def _identity_of(group) -> GroupElement:
    return group.identity


def _enumerable_elements(group) -> Optional[tuple]:
    if isinstance(group, FiniteGroup):
        return group.elements()
    return getattr(group, "store", None)


def apply(rep: Representation, g: GroupElement, u):
    """Image of carrier point ``u`` under the transformation for ``g``."""
    return rep.apply(g, u)


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law check: what was checked, how, and any witness."""

    passed: bool
    mode: str
    checked: int
    counterexample: Optional[tuple] = None
    residual_max: float = 0.0
    detail: str = ""


@dataclass(frozen=True)
class VarianceVerdict:
    verdict: str
    mode: str
    homomorphism_witness: Optional[tuple] = None
    antihomomorphism_witness: Optional[tuple] = None
    checked: int = 0

    @property
    def covariant(self) -> bool:
        return self.verdict in ("covariant", "both")

    @property
    def contravariant(self) -> bool:
        return self.verdict in ("contravariant", "both")


@dataclass(frozen=True)
class ClassificationReport:
    axioms: Verdict
    variance: VarianceVerdict
    kernel: tuple
    effective: bool
    transitive: bool
    unreachable_pair: Optional[tuple]
    single_transitive: bool
    unique_transport: Optional[bool]
    uniqueness_agrees: Optional[bool]


@dataclass(frozen=True)
class Orbit:
    base: object
    points: tuple
    witnesses: tuple  # (point, group element) pairs, discovery order

    def witness_for(self, carrier, point) -> GroupElement:
        for p, g in self.witnesses:
            if carrier.point_eq(p, point):
                return g
        raise NoSolution(f"point {point!r} is not in the orbit")

    def contains(self, carrier, point) -> bool:
        return any(carrier.point_eq(p, point) for p in self.points)


@dataclass(frozen=True)
class OrbitPartitionReport:
    passed: bool
    orbits: tuple
    failure: Optional[tuple] = None


@dataclass(frozen=True)
class SameSideWitness:
    """Obstruction to a same-side commuting twin on a noncommutative group.

    At the point ``point = b`` (image of the origin under the left shift
    of ``b``), any transformation commuting with all left shifts is forced
    to produce ``required_value = b a``, realised by the conjugated element
    ``conjugate = b a b^-1``; the same-side guess produces
    ``same_side_value = a b`` instead.
    """

    a: GroupElement
    b: GroupElement
    origin: GroupElement
    point: GroupElement
    same_side_value: GroupElement
    required_value: GroupElement
    conjugate: GroupElement


# -- checks ------------------------------------------------------------------


def _plan(rep: Representation, sample, samples: int, seed: int, cost_fn):
    """Decide exhaustive vs sampled; returns (exhaustive, mode string)."""
    elements = _enumerable_elements(rep.group)
    enumerable = elements is not None and rep.carrier.enumerable
    if sample == "exhaustive":
        if not enumerable:
            raise InfeasibleExhaustive(
                "exhaustive check requested over a non-enumerable domain"
            )
        return True, "exhaustive", elements
    if sample == "auto":
        if enumerable and cost_fn(len(elements), rep.carrier.size) <= EXHAUSTIVE_WORK_CAP:
            return True, "exhaustive", elements
        return False, f"sampled(k={samples}, seed={seed})", elements
    if sample == "sampled":
        return False, f"sampled(k={samples}, seed={seed})", elements
    raise BasiskitError(f"unknown sampling mode {sample!r}")


def _point_residual(carrier, x, y) -> float:
    if isinstance(carrier, CoordCarrier) and not carrier.backend.is_exact:
        try:
            return vec_max_diff(x, y)
        except DimensionMismatch:
            return float("inf")
    if isinstance(carrier, ProductCarrier):
        return max(
            _point_residual(carrier.left, x[0], y[0]),
            _point_residual(carrier.right, x[1], y[1]),
        )
    return 0.0


def check_axioms(
    rep: Representation,
    sample: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """Verify the identity law and the side law on triples ``(a, b, u)``.

    Exhaustive over all triples when the group and carrier are enumerable
    and the work stays under the cap, otherwise over seeded samples.  The
    first failing triple in enumeration order is reported, which for the
    exhaustive sweep is the lexicographically smallest one.
    """
    exhaustive, mode, elements = _plan(
        rep, sample, samples, seed, lambda ng, nm: ng * ng * nm
    )
    carrier = rep.carrier
    if not rep.transformation(_identity_of(rep.group)).is_identity():
        return Verdict(False, mode, 1, ("identity",), detail="f(e) is not the identity")

    checked = 1
    residual = 0.0

    def law_holds(a, b, u):
        ab = compose(rep.group, a, b)
        lhs = rep.apply(ab, u)
        if rep.side == "left":
            rhs = rep.apply(a, rep.apply(b, u))
        else:
            rhs = rep.apply(b, rep.apply(a, u))
        return carrier.point_eq(lhs, rhs), _point_residual(carrier, lhs, rhs)

    if exhaustive:
        points = carrier.points()
        for a in elements:
            for b in elements:
                for u in points:
                    ok, r = law_holds(a, b, u)
                    checked += 1
                    residual = max(residual, r)
                    if not ok:
                        return Verdict(False, mode, checked, (a, b, u), residual)
    else:
        rng = Random(seed)
        for _ in range(samples):
            a = sample_group_element(rep.group, rng)
            b = sample_group_element(rep.group, rng)
            u = carrier.sample(rng)
            ok, r = law_holds(a, b, u)
            checked += 1
            residual = max(residual, r)
            if not ok:
                return Verdict(False, mode, checked, (a, b, u), residual)
    return Verdict(True, mode, checked, None, residual)


def check_variance(
    rep: Representation,
    sample: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> VarianceVerdict:
    """Classify the assignment as homomorphism, antihomomorphism, both or neither."""
    exhaustive, mode, elements = _plan(
        rep, sample, samples, seed, lambda ng, nm: ng * ng * max(nm or 1, 1)
    )
    if elements is None:
        # variance needs group pairs even in sampled mode
        rng = Random(seed)
        pairs = [
            (sample_group_element(rep.group, rng), sample_group_element(rep.group, rng))
            for _ in range(samples)
        ]
        mode = f"sampled(k={samples}, seed={seed})"
    elif exhaustive:
        pairs = list(itertools.product(elements, elements))
    else:
        rng = Random(seed)
        pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(samples)]

    homo_ok, anti_ok = True, True
    homo_witness, anti_witness = None, None
    for a, b in pairs:
        fa, fb = rep.transformation(a), rep.transformation(b)
        product = _variance_product(fa, fb)
        if homo_ok:
            ab = compose(rep.group, a, b)
            if not transformations_equal(rep.transformation(ab), product):
                homo_ok, homo_witness = False, (a, b)
        if anti_ok:
            ba = compose(rep.group, b, a)
            if not transformations_equal(rep.transformation(ba), product):
                anti_ok, anti_witness = False, (a, b)
        if not homo_ok and not anti_ok:
            break
    verdict = {
        (True, True): "both",
        (True, False): "covariant",
        (False, True): "contravariant",
        (False, False): "neither",
    }[(homo_ok, anti_ok)]
    return VarianceVerdict(verdict, mode, homo_witness, anti_witness, len(pairs))


def inverse_law_check(
    rep: Representation,
    sample: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """Verify ``f(g^-1)`` equals the map inverse of ``f(g)`` for every ``g``."""
    elements = _enumerable_elements(rep.group)
    if elements is None:
        rng = Random(seed)
        elements = [sample_group_element(rep.group, rng) for _ in range(samples)]
        mode = f"sampled(k={samples}, seed={seed})"
    else:
        mode = "exhaustive"
    checked = 0
    for g in elements:
        expected = rep.transformation(rep.group.inverse_element(g))
        actual = rep.transformation(g).inverted()
        checked += 1
        if not transformations_equal(expected, actual):
            return Verdict(False, mode, checked, (g,))
    return Verdict(True, mode, checked, None)


# -- shifts and derived representations ---------------------------------------


def left_shift(group) -> Representation:
    """``L(a): b -> a b`` on the group's own elements; left side."""
    carrier = SelfCarrier(group)
    if not carrier.enumerable:
        raise InfeasibleExhaustive("shift representations need enumerable elements")

    def assign(a: GroupElement) -> MappingTransformation:
        return MappingTransformation(
            carrier, {b: compose(group, a, b) for b in carrier.points()}
        )

    return Representation(
        group, carrier, "left", assign, variance_claim="covariant", label="left-shift"
    )


def right_shift(group) -> Representation:
    """``R(a): b -> b a`` on the group's own elements; right side."""
    carrier = SelfCarrier(group)
    if not carrier.enumerable:
        raise InfeasibleExhaustive("shift representations need enumerable elements")

    def assign(a: GroupElement) -> MappingTransformation:
        return MappingTransformation(
            carrier, {b: compose(group, b, a) for b in carrier.points()}
        )

    return Representation(
        group,
        carrier,
        "right",
        assign,
        variance_claim="contravariant",
        label="right-shift",
    )


def contragredient(rep: Representation, sample: str = "auto") -> Representation:
    """``h(a) = f(a^-1)``; flips variance and side.

    The input must classify as covariant or contravariant (abelian "both"
    qualifies); an unclassifiable assignment raises :class:`NotCovariant`.
    Applying the construction twice gives back the original assignment
    extensionally, which is why the contravariant direction is accepted.
    """
    vv = check_variance(rep, sample=sample)
    if vv.verdict == "neither":
        raise NotCovariant(
            "contragredient needs a homomorphic or antihomomorphic assignment"
        )
    flipped_claim = {
        "covariant": "contravariant",
        "contravariant": "covariant",
        "both": "both",
    }[vv.verdict]

    def assign(g: GroupElement) -> Transformation:
        return rep.transformation(rep.group.inverse_element(g))

    return Representation(
        rep.group,
        rep.carrier,
        "right" if rep.side == "left" else "left",
        assign,
        variance_claim=flipped_claim,
        label=f"contragredient({rep.label})",
    )


# -- orbits --------------------------------------------------------------------


def orbit(rep: Representation, base, cap: int = 100_000) -> Orbit:
    """All images of ``base`` with one witness element per point.

    Points keep discovery order (the group's element order), so the
    result is deterministic.
    """
    elements = _enumerable_elements(rep.group)
    if elements is None:
        raise InfeasibleExhaustive("orbit needs an enumerable group")
    if len(elements) > cap:
        raise EnumerationCapExceeded(
            f"group store of {len(elements)} exceeds the cap {cap}"
        )
    if not rep.carrier.contains(base):
        raise CarrierMismatch(f"base point {base!r} is not in the carrier")
    points: list = []
    witnesses: list = []
    for g in elements:
        w = rep.apply(g, base)
        if not any(rep.carrier.point_eq(w, p) for p in points):
            points.append(w)
            witnesses.append((w, g))
    return Orbit(base, tuple(points), tuple(witnesses))


def orbit_well_defined_check(rep: Representation) -> OrbitPartitionReport:
    """Orbits computed from any of their members coincide, and they partition.

    Recomputes the orbit from every reachable point and compares as sets;
    then checks that each carrier point lies in exactly one orbit.
    """
    if not rep.carrier.enumerable:
        raise InfeasibleExhaustive("orbit partition needs an enumerable carrier")
    carrier = rep.carrier
    all_points = carrier.points()
    orbits: list = []
    for u in all_points:
        if any(o.contains(carrier, u) for o in orbits):
            continue
        o = orbit(rep, u)
        for v in o.points:
            from_v = orbit(rep, v)
            if len(from_v.points) != len(o.points) or not all(
                from_v.contains(carrier, p) for p in o.points
            ):
                return OrbitPartitionReport(
                    False, tuple(o.points for o in orbits), ("orbit-mismatch", u, v)
                )
        orbits.append(o)
    for u in all_points:
        hits = sum(1 for o in orbits if o.contains(carrier, u))
        if hits != 1:
            return OrbitPartitionReport(
                False, tuple(o.points for o in orbits), ("coverage", u, hits)
            )
    return OrbitPartitionReport(True, tuple(o.points for o in orbits))


def direct_product(r1: Representation, r2: Representation) -> Representation:
    """Componentwise action on the product carrier."""
    if r1.group is not r2.group:
        raise GroupMismatch("direct product needs representations of one group")
    if r1.side != r2.side:
        raise SideMismatch(f"sides differ: {r1.side} vs {r2.side}")
    carrier = ProductCarrier(r1.carrier, r2.carrier)

    def assign(g: GroupElement) -> PairTransformation:
        return PairTransformation(carrier, r1.transformation(g), r2.transformation(g))

    claim = r1.variance_claim if r1.variance_claim == r2.variance_claim else None
    return Representation(
        r1.group,
        carrier,
        r1.side,
        assign,
        variance_claim=claim,
        label=f"product({r1.label}, {r2.label})",
    )


def kernel_of_inefficiency(rep: Representation) -> tuple:
    """Elements assigned the identity transformation, in element order."""
    elements = _enumerable_elements(rep.group)
    if elements is None:
        raise InfeasibleExhaustive("kernel needs an enumerable group")
    return tuple(g for g in elements if rep.transformation(g).is_identity())


def classify(rep: Representation) -> ClassificationReport:
    """Full classification: axioms, variance, kernel, transitivity.

    Single transitivity is decided as "transitive and effective", and
    independently cross-checked by counting transports for every ordered
    pair of carrier points; the report records whether the two agree.
    """
    elements = _enumerable_elements(rep.group)
    if elements is None or not rep.carrier.enumerable:
        raise InfeasibleExhaustive("classification needs enumerable group and carrier")
    axioms = check_axioms(rep)
    variance = check_variance(rep)
    kernel = kernel_of_inefficiency(rep)
    identity = _identity_of(rep.group)
    effective = len(kernel) == 1 and kernel[0].eq_to(identity)

    carrier = rep.carrier
    all_points = carrier.points()
    base_orbit = orbit(rep, all_points[0])
    transitive = True
    unreachable = None
    for v in all_points:
        if not base_orbit.contains(carrier, v):
            transitive = False
            unreachable = (all_points[0], v)
            break
    single = transitive and effective

    unique: Optional[bool] = None
    pair_cost = len(all_points) ** 2 * len(elements)
    if pair_cost <= EXHAUSTIVE_WORK_CAP:
        unique = True
        for u in all_points:
            for v in all_points:
                count = sum(
                    1 for g in elements if carrier.point_eq(rep.apply(g, u), v)
                )
                if count != 1:
                    unique = False
                    break
            if not unique:
                break
    agrees = None if unique is None else (unique == single)
    return ClassificationReport(
        axioms=axioms,
        variance=variance,
        kernel=kernel,
        effective=effective,
        transitive=transitive,
        unreachable_pair=unreachable,
        single_transitive=single,
        unique_transport=unique,
        uniqueness_agrees=agrees,
    )


def solve_transport(rep: Representation, u, v) -> GroupElement:
    """The unique ``g`` with ``f(g) u = v``.

    Uses the representation's structural solver when it has one (the
    basis manifold does), otherwise scans the stored elements; zero
    matches raise :class:`NoSolution`, several raise
    :class:`NotSingleTransitive`.
    """
    carrier = rep.carrier
    for point in (u, v):
        if not carrier.contains(point):
            raise CarrierMismatch(f"point {point!r} is not in the carrier")
    if rep.transport_solver is not None:
        g = rep.transport_solver(u, v)
        if not carrier.point_eq(rep.apply(g, u), v):
            raise NoSolution("structural solver produced a non-transport")
        return g
    elements = _enumerable_elements(rep.group)
    if elements is None:
        raise InfeasibleExhaustive("transport needs stored elements or a solver")
    matches = [g for g in elements if carrier.point_eq(rep.apply(g, u), v)]
    if not matches:
        raise NoSolution(f"no element carries {u!r} to {v!r}")
    if len(matches) > 1:
        raise NotSingleTransitive(
            f"{len(matches)} elements carry {u!r} to {v!r}"
        )
    return matches[0]


def shifts_commute_check(group, sample: str = "auto") -> Verdict:
    """Left and right shifts commute: ``a (c b) = (a c) b`` over all triples."""
    elements = _enumerable_elements(group)
    if elements is None:
        raise InfeasibleExhaustive("shift commutation needs enumerable elements")
    checked = 0
    for a in elements:
        for b in elements:
            for c in elements:
                lhs = compose(group, a, compose(group, c, b))
                rhs = compose(group, compose(group, a, c), b)
                checked += 1
                if not lhs.eq_to(rhs):
                    return Verdict(False, "exhaustive", checked, (a, b, c))
    return Verdict(True, "exhaustive", checked, None)


def twin_representation(rep: Representation, origin=None) -> Representation:
    """The opposite-side representation commuting with a single transitive one.

    Identifying each carrier point ``w`` with its unique transport
    ``c_w`` from the origin, the twin acts by composing on the other
    side: for a left representation ``h(a): w -> f(c_w a)(origin)``, for
    a right one ``h(a): w -> f(a c_w)(origin)``.  The chosen origin is
    recorded on the result.
    """
    report = classify(rep)
    if not report.single_transitive:
        raise NotSingleTransitive(
            f"twin needs a single transitive representation "
            f"(transitive={report.transitive}, effective={report.effective})"
        )
    carrier = rep.carrier
    points = carrier.points()
    if origin is None:
        origin = points[0]
    if not carrier.contains(origin):
        raise CarrierMismatch(f"origin {origin!r} is not in the carrier")
    transports = [(w, solve_transport(rep, origin, w)) for w in points]

    def assign(a: GroupElement) -> MappingTransformation:
        mapping = {}
        for w, c_w in transports:
            if rep.side == "left":
                moved = compose(rep.group, c_w, a)
            else:
                moved = compose(rep.group, a, c_w)
            mapping[w] = rep.apply(moved, origin)
        return MappingTransformation(carrier, mapping)

    return Representation(
        rep.group,
        carrier,
        "right" if rep.side == "left" else "left",
        assign,
        variance_claim="contravariant" if rep.side == "left" else "covariant",
        label=f"twin({rep.label})",
        origin=origin,
    )


def commutation_check(rep1: Representation, rep2: Representation) -> Verdict:
    """Pointwise commutation of two actions on one carrier.

    Exhaustively verifies ``f(a)(h(b)(w)) = h(b)(f(a)(w))`` over all
    element pairs and carrier points; this is the defining property the
    twin construction must satisfy.
    """
    if rep1.group is not rep2.group:
        raise MixedGroups("commutation check needs one common group")
    if rep1.carrier is not rep2.carrier:
        raise CarrierMismatch("commutation check needs one common carrier")
    elements = _enumerable_elements(rep1.group)
    if elements is None or not rep1.carrier.enumerable:
        raise InfeasibleExhaustive("commutation check needs enumerable domains")
    carrier = rep1.carrier
    points = carrier.points()
    checked = 0
    residual = 0.0
    for a in elements:
        for b in elements:
            for w in points:
                lhs = rep1.apply(a, rep2.apply(b, w))
                rhs = rep2.apply(b, rep1.apply(a, w))
                checked += 1
                residual = max(residual, _point_residual(carrier, lhs, rhs))
                if not carrier.point_eq(lhs, rhs):
                    return Verdict(False, "exhaustive", checked, (a, b, w), residual)
    return Verdict(True, "exhaustive", checked, None, residual)


def same_side_noncommuting_witness(group) -> Optional[SameSideWitness]:
    """Concrete obstruction to a same-side twin; ``None`` for abelian groups.

    Scans pairs in element order and returns the first ``(a, b)`` with
    ``a b != b a``, evaluated at the point ``b`` of the left shift's
    carrier with origin at the identity.
    """
    elements = _enumerable_elements(group)
    if elements is None:
        raise InfeasibleExhaustive("witness search needs enumerable elements")
    identity = _identity_of(group)
    for a in elements:
        for b in elements:
            ab = compose(group, a, b)
            ba = compose(group, b, a)
            if not ab.eq_to(ba):
                conjugate = compose(
                    group, compose(group, b, a), group.inverse_element(b)
                )
                return SameSideWitness(
                    a=a,
                    b=b,
                    origin=identity,
                    point=b,
                    same_side_value=ab,
                    required_value=ba,
                    conjugate=conjugate,
                )
    return None
