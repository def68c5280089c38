"""Command line behaviour: outputs, exit codes, determinism."""

import json

import pytest

from basiskit.cli import main


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def shift_rep(tmp_path, side="left"):
    return write(
        tmp_path,
        f"shift_{side}.json",
        {
            "group": {"kind": "finite", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
            "side": side,
            "carrier": {"kind": "self"},
            "assign": {"kind": f"shift-{side}"},
        },
    )


def euclid_basis(tmp_path, name, vectors):
    return write(
        tmp_path,
        name,
        {"space": {"kind": "euclid", "dim": 2}, "vectors": vectors},
    )


def quarter_turn_group(tmp_path):
    return write(
        tmp_path,
        "so2_quarters.json",
        {
            "kind": "matrix",
            "family": "SO",
            "dim": 2,
            "signature": [2, 0],
            "elements": [
                [1, 0, 0, 1],
                [0, -1, 1, 0],
                [-1, 0, 0, -1],
                [0, 1, -1, 0],
            ],
        },
    )


def vector_object(tmp_path):
    return write(
        tmp_path,
        "vec.json",
        {
            "functor": {"tag": "fundamental"},
            "coords": [1, 0],
            "anchor": {
                "space": {"kind": "central_affine", "dim": 2},
                "vectors": [[1, 0], [0, 1]],
            },
        },
    )


# -- repcheck ----------------------------------------------------------------


def test_repcheck_passes(tmp_path, capsys):
    code = main(["repcheck", "--input", shift_rep(tmp_path), "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["schema"] == "basiskit/1"
    assert out["status"] == "pass"
    names = [line["name"] for line in out["checks"]]
    assert names == ["axioms", "inverse-law", "variance"]
    assert out["data"]["classification"]["single_transitive"] is True


def test_repcheck_text_report(tmp_path, capsys):
    code = main(["repcheck", "--input", shift_rep(tmp_path, "right")])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out
    assert "axioms" in out


def test_repcheck_catches_a_broken_assignment(tmp_path, capsys):
    path = write(
        tmp_path,
        "broken.json",
        {
            "group": {"kind": "finite", "table": [[0, 1], [1, 0]]},
            "side": "left",
            "carrier": {"kind": "finite", "size": 3},
            # the involution is sent to a 3-cycle, so f(gg) != f(g)f(g)
            "assign": {"kind": "permutation-table", "table": [[0, 1, 2], [1, 2, 0]]},
        },
    )
    code = main(["repcheck", "--input", path, "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["status"] == "fail"
    axioms = next(line for line in out["checks"] if line["name"] == "axioms")
    assert axioms["passed"] is False


# -- orbit -------------------------------------------------------------------


def test_orbit_listing(tmp_path, capsys):
    path = write(
        tmp_path,
        "swap.json",
        {
            "group": {"kind": "finite", "table": [[0, 1], [1, 0]]},
            "side": "left",
            "carrier": {"kind": "finite", "size": 3},
            "assign": {"kind": "permutation-table", "table": [[0, 1, 2], [1, 0, 2]]},
        },
    )
    code = main(["orbit", "--input", path, "--point", "0", "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["size"] == 2
    assert sorted(out["data"]["orbit_sizes"]) == [1, 2]


def test_orbit_whole_partition(tmp_path, capsys):
    code = main(["orbit", "--input", shift_rep(tmp_path), "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["orbit_count"] == 1


# -- basis subcommands ----------------------------------------------------------


def test_basis_transform(tmp_path, capsys):
    basis = euclid_basis(tmp_path, "e.json", [[1.0, 0.0], [0.0, 1.0]])
    group = quarter_turn_group(tmp_path)
    code = main(
        [
            "basis",
            "transform",
            "--input",
            basis,
            "--group",
            group,
            "--element",
            '{"matrix": [[0, -1], [1, 0]]}',
            "--report",
            "json",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["mode"] == "passive"
    assert out["data"]["result"]["vectors"] == [[0.0, -1.0], [1.0, 0.0]]


def test_basis_transform_active_checks_coordinates(tmp_path, capsys):
    basis = euclid_basis(tmp_path, "e.json", [[1.0, 0.0], [0.0, 1.0]])
    group = quarter_turn_group(tmp_path)
    code = main(
        [
            "basis",
            "transform",
            "--input",
            basis,
            "--group",
            group,
            "--element",
            '{"matrix": [[0, -1], [1, 0]]}',
            "--mode",
            "active",
            "--report",
            "json",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    check = out["checks"][0]
    assert check["name"] == "coordinates-preserved"
    assert check["passed"] is True
    assert check["checked"] == 3


def test_basis_change_connected(tmp_path, capsys):
    b1 = euclid_basis(tmp_path, "b1.json", [[1.0, 0.0], [0.0, 1.0]])
    b2 = euclid_basis(tmp_path, "b2.json", [[0.0, 1.0], [-1.0, 0.0]])
    group = write(
        tmp_path, "so2.json", {"kind": "matrix", "family": "SO", "dim": 2, "signature": [2, 0]}
    )
    code = main(
        ["basis", "change", "--source", b1, "--target", b2, "--group", group, "--report", "json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert [line["passed"] for line in out["checks"]] == [True, True]
    assert out["data"]["element"]["matrix"] == [[0.0, 1.0], [-1.0, 0.0]]


def test_basis_change_not_connected(tmp_path, capsys):
    b1 = euclid_basis(tmp_path, "b1.json", [[1.0, 0.0], [0.0, 1.0]])
    skew = euclid_basis(tmp_path, "skew.json", [[1.0, 1.0], [0.0, 1.0]])
    group = write(
        tmp_path, "so2.json", {"kind": "matrix", "family": "SO", "dim": 2, "signature": [2, 0]}
    )
    code = main(
        ["basis", "change", "--source", b1, "--target", skew, "--group", group, "--report", "json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["checks"][0]["name"] == "connected"
    assert out["checks"][0]["passed"] is False


def test_gram_schmidt_pass(tmp_path, capsys):
    path = write(
        tmp_path, "gs.json", {"signature": [2, 0], "vectors": [[1.0, 1.0], [0.0, 1.0]]}
    )
    code = main(["basis", "gram-schmidt", "--input", path, "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "pass"
    first = out["data"]["result"]["vectors"][0]
    assert first[0] == pytest.approx(0.7071067811865475)


def test_gram_schmidt_null_vector(tmp_path, capsys):
    path = write(
        tmp_path, "gs_null.json", {"signature": [1, 1], "vectors": [[1.0, 1.0], [0.0, 1.0]]}
    )
    code = main(["basis", "gram-schmidt", "--input", path, "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert "NullVector at input index 0" in out["checks"][0]["detail"]


def test_standard_coords(tmp_path, capsys):
    ref = write(
        tmp_path,
        "ref.json",
        {"space": {"kind": "central_affine", "dim": 2}, "vectors": [[2, 0], [0, 1]]},
    )
    b = write(
        tmp_path,
        "b.json",
        {"space": {"kind": "central_affine", "dim": 2}, "vectors": [[2, 2], [0, 3]]},
    )
    code = main(
        ["basis", "standard-coords", "--input", b, "--reference", ref, "--report", "json"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["grid"] == [[1, 2], [0, 3]]
    assert out["data"]["identity"] is False


def test_coordrep(tmp_path, capsys):
    group = quarter_turn_group(tmp_path)
    code = main(["basis", "coordrep", "--group", group, "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    names = [line["name"] for line in out["checks"]]
    assert names == ["coordinate-composition", "coordinate-effectiveness"]


# -- object ------------------------------------------------------------------


def test_object_transform_and_invariance(tmp_path, capsys):
    obj = vector_object(tmp_path)
    group = write(
        tmp_path,
        "gl2.json",
        {"kind": "matrix", "family": "GL", "dim": 2},
    )
    code = main(
        [
            "object",
            "--input",
            obj,
            "--group",
            group,
            "--element",
            '{"matrix": [[2, 1], [1, 1]]}',
            "--report",
            "json",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["representative"] == [1, 0]
    assert out["checks"][0]["name"] == "invariance"
    assert out["checks"][0]["passed"] is True


def test_object_orbit(tmp_path, capsys):
    obj = write(
        tmp_path,
        "vec_exact_turns.json",
        {
            "functor": {"tag": "fundamental"},
            "coords": [1, 0],
            "anchor": {
                "space": {"kind": "central_affine", "dim": 2},
                "vectors": [[1, 0], [0, 1]],
            },
        },
    )
    group = write(
        tmp_path,
        "turns.json",
        {
            "kind": "matrix",
            "family": "GL",
            "dim": 2,
            "generators": [[0, -1, 1, 0]],
        },
    )
    code = main(["object", "--input", obj, "--group", group, "--orbit", "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["orbit_size"] == 4
    assert out["checks"][0]["name"] == "invariance"
    assert out["checks"][1]["name"] == "orbit-well-defined"


def test_object_axioms_flag(tmp_path, capsys):
    obj = vector_object(tmp_path)
    group = write(
        tmp_path,
        "turns.json",
        {"kind": "matrix", "family": "GL", "dim": 2, "generators": [[0, -1, 1, 0]]},
    )
    code = main(
        [
            "object", "--input", obj, "--group", group,
            "--axioms", "--samples", "40", "--report", "json",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    axioms = next(l for l in out["checks"] if l["name"] == "vector-space-axioms")
    assert axioms["passed"] is True
    assert out["data"]["settings"]["samples"] == 40


def test_reports_echo_their_settings(tmp_path, capsys):
    code = main(["repcheck", "--input", shift_rep(tmp_path), "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    settings = out["data"]["settings"]
    assert settings["backend"] == "default"
    assert settings["tolerance"] == 1e-9
    assert settings["seed"] == 42


def test_trivial_representation_reports_its_kernel(tmp_path, capsys):
    path = write(
        tmp_path,
        "trivial.json",
        {
            "group": {"kind": "finite", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
            "side": "left",
            "carrier": {"kind": "finite", "size": 2},
            "assign": {"kind": "trivial"},
        },
    )
    code = main(["repcheck", "--input", path, "--report", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["data"]["classification"]["kernel_size"] == 3
    assert out["data"]["classification"]["effective"] is False


def test_runaway_closure_is_exit_1(tmp_path, capsys):
    group = write(
        tmp_path,
        "runaway.json",
        {"kind": "matrix", "family": "GL", "dim": 1, "generators": [[2]]},
    )
    code = main(["basis", "coordrep", "--group", group, "--cap", "50"])
    err = capsys.readouterr().err
    assert code == 1
    assert "50" in err


def test_object_element_needs_group(tmp_path, capsys):
    code = main(
        ["object", "--input", vector_object(tmp_path), "--element", '{"matrix": [[1,0],[0,1]]}']
    )
    assert code == 2
    assert "error" in capsys.readouterr().err


# -- selftest and failure plumbing ----------------------------------------------


def test_selftest_passes(capsys):
    code = main(["selftest", "--samples", "10"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out


def test_selftest_json_is_deterministic(capsys):
    assert main(["selftest", "--samples", "10", "--report", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["selftest", "--samples", "10", "--report", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == "basiskit/1"
    assert payload["data"]["seed"] == 42


def test_missing_file_is_exit_2(tmp_path, capsys):
    code = main(["repcheck", "--input", str(tmp_path / "nope.json")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_invalid_json_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code = main(["repcheck", "--input", str(bad)])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_membership_error_is_exit_2(tmp_path, capsys):
    group = write(
        tmp_path,
        "sl_bad.json",
        {"kind": "matrix", "family": "SL", "dim": 2, "elements": [[2, 0, 0, 1]]},
    )
    code = main(["basis", "coordrep", "--group", group])
    assert code == 2
    assert "error" in capsys.readouterr().err
