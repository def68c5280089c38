"""Built-in deterministic check battery.

Runs the whole pipeline over a fixed family of small groups: shift
representations on seven finite groups, coordinate transformations on
stored matrix groups, orthonormalisation, and the transformation law for
objects.  Everything is seeded, so two runs with the same seed emit
byte-identical JSON reports.
"""

from __future__ import annotations

import itertools
import math
from random import Random

from .bases import (
    Basis,
    VectorSpace,
    coordinate_representation_check,
    gram_schmidt,
    is_g_basis,
)
from .groups import (
    MatrixGroup,
    boost_2d,
    cyclic_group,
    dihedral_group,
    permutation_matrix,
    quaternion_group,
    rotation_2d,
    symmetric_group,
)
from .objects import (
    GeometricalObject,
    direct_sum_functor,
    dual_functor,
    fundamental_functor,
    identity_functor,
    invariance_check,
    tensor_power_functor,
    vector_space_axioms_check,
    weight_dim,
)
from .representations import (
    check_axioms,
    check_variance,
    classify,
    commutation_check,
    inverse_law_check,
    left_shift,
    orbit_well_defined_check,
    right_shift,
    shifts_commute_check,
    twin_representation,
    same_side_noncommuting_witness,
)
from .reports import CheckLine, RunReport
from .sampling import random_vector
from .scalars import EXACT, approx

__all__ = ["run_selftest", "finite_fixtures", "so2_octant", "s3_matrix_group"]


def finite_fixtures() -> list:
    return [
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
        ("Z4", cyclic_group(4)),
        ("Z6", cyclic_group(6)),
        ("S3", symmetric_group(3)),
        ("D4", dihedral_group(4)),
        ("Q8", quaternion_group()),
    ]


def so2_octant(tolerance: float = 1e-9) -> MatrixGroup:
    """Rotations by multiples of a quarter-right-angle, stored."""
    return MatrixGroup.metric_preserving(
        2,
        0,
        backend=approx(tolerance),
        elements=[rotation_2d(k * math.pi / 4) for k in range(8)],
    )


def so11_boosts(tolerance: float = 1e-9) -> MatrixGroup:
    return MatrixGroup.metric_preserving(
        1,
        1,
        backend=approx(tolerance),
        elements=[boost_2d(k * 0.5) for k in range(-2, 3)],
    )


def s3_matrix_group() -> MatrixGroup:
    """The six permutation matrices of three letters, stored in an exact GL(3)."""
    perms = sorted(itertools.permutations(range(3)))
    return MatrixGroup.general_linear(
        3, EXACT, elements=[permutation_matrix(p) for p in perms]
    )


def _shift_battery(report: RunReport, name: str, group) -> None:
    f = left_shift(group)
    h = right_shift(group)
    report.add_verdict(f"{name}/left-shift-axioms", check_axioms(f))
    report.add_verdict(f"{name}/right-shift-axioms", check_axioms(h))

    left_var = check_variance(f)
    report.add(
        CheckLine(
            f"{name}/left-shift-covariant",
            passed=left_var.covariant,
            mode=left_var.mode,
            checked=left_var.checked,
            detail=f"verdict {left_var.verdict}",
        )
    )
    right_var = check_variance(h)
    report.add(
        CheckLine(
            f"{name}/right-shift-contravariant",
            passed=right_var.contravariant,
            mode=right_var.mode,
            checked=right_var.checked,
            detail=f"verdict {right_var.verdict}",
        )
    )

    report.add_verdict(f"{name}/inverse-law", inverse_law_check(f))
    report.add_verdict(f"{name}/shifts-commute", shifts_commute_check(group))
    report.add_verdict(f"{name}/orbit-partition", orbit_well_defined_check(f))

    classification = classify(f)
    report.add(
        CheckLine(
            f"{name}/single-transitive",
            passed=bool(
                classification.single_transitive
                and classification.uniqueness_agrees is not False
            ),
            mode="exhaustive",
            detail="orbit reaches every element and the kernel is trivial",
        )
    )


def _twin_battery(report: RunReport, name: str, group) -> None:
    f = left_shift(group)
    h = twin_representation(f)
    report.add_verdict(f"{name}/twin-axioms", check_axioms(h))
    report.add_verdict(f"{name}/twin-commutes", commutation_check(f, h))
    var = check_variance(h)
    report.add(
        CheckLine(
            f"{name}/twin-contravariant",
            passed=var.contravariant,
            mode=var.mode,
            checked=var.checked,
            detail=f"verdict {var.verdict}",
        )
    )


def _invariance_battery(
    report: RunReport,
    label: str,
    group: MatrixGroup,
    anchor: Basis,
    functors,
    rng: Random,
    objects_per_element: int,
    tolerance: float,
) -> None:
    backend = anchor.space.backend
    for functor in functors:
        m = weight_dim(functor, anchor.space.dim)
        worst = 0.0
        failed = None
        checked = 0
        for g in group.elements():
            for _ in range(objects_per_element):
                coords = random_vector(rng, m, backend)
                obj = GeometricalObject.make(functor, coords, anchor)
                verdict = invariance_check(obj, g)
                checked += 1
                worst = max(worst, verdict.residual_max)
                if not verdict.passed and failed is None:
                    failed = verdict.counterexample
        passed = failed is None and (backend.is_exact or worst <= tolerance)
        report.add(
            CheckLine(
                f"{label}/invariance/{functor.describe()}",
                passed=passed,
                mode="stored-elements",
                checked=checked,
                counterexample=failed,
                residual=worst if not backend.is_exact else None,
            )
        )


def run_selftest(
    seed: int = 42, samples: int = 60, tolerance: float = 1e-9
) -> RunReport:
    report = RunReport("selftest")
    rng = Random(seed)

    fixtures = finite_fixtures()
    for name, group in fixtures:
        _shift_battery(report, name, group)
    for name, group in fixtures:
        if name in ("S3", "D4"):
            _twin_battery(report, name, group)

    witness = same_side_noncommuting_witness(symmetric_group(3))
    report.add(
        CheckLine(
            "S3/same-side-witness",
            passed=witness is not None
            and not witness.same_side_value.eq_to(witness.required_value),
            detail="same-side composite disagrees with the required one",
            counterexample=None
            if witness is None
            else {
                "a": witness.a,
                "b": witness.b,
                "point": witness.point,
                "same_side_value": witness.same_side_value,
                "required_value": witness.required_value,
                "conjugate": witness.conjugate,
            },
        )
    )

    so2 = so2_octant(tolerance)
    worst = max(so2.membership(g.payload)[1] for g in so2.elements())
    report.add(
        CheckLine(
            "SO2/membership-residual",
            passed=worst <= tolerance,
            checked=len(so2.elements()),
            residual=worst,
        )
    )
    coord = coordinate_representation_check(so2, seed=seed)
    report.add_verdict("SO2/coordinate-composition", coord.composition)
    report.add_verdict("SO2/coordinate-effectiveness", coord.effectiveness)

    so11 = so11_boosts(tolerance)
    worst = max(so11.membership(g.payload)[1] for g in so11.elements())
    report.add(
        CheckLine(
            "SO11/membership-residual",
            passed=worst <= tolerance,
            checked=len(so11.elements()),
            residual=worst,
        )
    )

    s3m = s3_matrix_group()
    coord = coordinate_representation_check(s3m, seed=seed)
    report.add_verdict("S3perm/coordinate-composition", coord.composition)
    report.add_verdict("S3perm/coordinate-effectiveness", coord.effectiveness)

    gs_inputs = [
        [rng.uniform(-3.0, 3.0) for _ in range(3)] for _ in range(3)
    ]
    while abs(_det3(gs_inputs)) < 0.1:
        gs_inputs = [[rng.uniform(-3.0, 3.0) for _ in range(3)] for _ in range(3)]
    gs_result = gram_schmidt(gs_inputs, (3, 0), tolerance)
    gcheck = is_g_basis(gs_result)
    report.add(
        CheckLine(
            "gram-schmidt/euclid-3",
            passed=gcheck.passed,
            residual=gcheck.residual,
            detail=gcheck.detail,
        )
    )

    space2 = VectorSpace("euclid", 2, approx(tolerance))
    anchor2 = Basis.make(space2, [[1.0, 0.0], [0.0, 1.0]])
    _invariance_battery(
        report,
        "SO2",
        so2,
        anchor2,
        [fundamental_functor(), dual_functor()],
        rng,
        objects_per_element=3,
        tolerance=tolerance,
    )

    space3 = VectorSpace("central_affine", 3, EXACT)
    anchor3 = Basis.make(space3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    _invariance_battery(
        report,
        "S3perm",
        s3m,
        anchor3,
        [
            identity_functor(),
            fundamental_functor(),
            dual_functor(),
            tensor_power_functor(2),
            direct_sum_functor(fundamental_functor(), dual_functor()),
        ],
        rng,
        objects_per_element=2,
        tolerance=tolerance,
    )

    gl3 = MatrixGroup.general_linear(3, EXACT)
    report.add_verdict(
        "objects/vector-space-axioms",
        vector_space_axioms_check(
            fundamental_functor(), anchor3, gl3, samples=samples, seed=seed
        ),
    )

    report.data = {
        "seed": seed,
        "samples": samples,
        "tolerance": tolerance,
        "fixtures": {name: group.order for name, group in fixtures},
    }
    return report


def _det3(rows) -> float:
    a, b, c = rows
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )
