import json

import pytest

from superext.cli import main
from superext.files import (
    format_rat,
    load_algebra,
    load_extension,
    parse_rat,
)
from superext.errors import ParseError


H3 = {
    "name": "h3",
    "basis": [
        {"name": "x", "parity": 0},
        {"name": "y", "parity": 0},
        {"name": "z", "parity": 0},
    ],
    "brackets": [
        {"left": "x", "right": "y", "value": [{"basis": "z", "coeff": "1"}]}
    ],
}

BA1 = {
    "name": "ba1",
    "basis": [
        {"name": "x", "parity": 0},
        {"name": "y", "parity": 1},
        {"name": "z", "parity": 1},
    ],
    "brackets": [
        {"left": "x", "right": "y", "value": [{"basis": "z", "coeff": "1"}]}
    ],
}


def _write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


@pytest.fixture()
def h3_files(tmp_path):
    algebra = _write(tmp_path / "h3.json", H3)
    ext = _write(tmp_path / "h3.ext.json", {"algebra": "h3.json", "ideal": ["z"]})
    return algebra, ext


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


def test_parse_rat_forms():
    assert parse_rat("3") == 3
    assert parse_rat("-3/7") == parse_rat(-3) / 7
    assert format_rat(parse_rat("4/6")) == "2/3"
    with pytest.raises(ParseError):
        parse_rat("1.5")
    with pytest.raises(ParseError):
        parse_rat("1/0")
    with pytest.raises(ParseError):
        parse_rat(0.5)


def test_validate_ok(capsys, h3_files):
    algebra, _ = h3_files
    code, payload, _ = _run(capsys, ["validate", algebra])
    assert code == 0
    assert payload["ok"] is True


def test_validate_broken_antisymmetry(capsys, tmp_path):
    doc = dict(H3)
    doc["brackets"] = [
        {"left": "x", "right": "y", "value": [{"basis": "z", "coeff": "1"}]},
        {"left": "y", "right": "x", "value": [{"basis": "z", "coeff": "1"}]},
    ]
    path = _write(tmp_path / "broken.json", doc)
    code, payload, err = _run(capsys, ["validate", path])
    # a file contradicting super-antisymmetry is a semantic violation and
    # the report cites the offending pair
    assert code == 2
    assert "y" in err and "x" in err


def test_validate_module_file(capsys, tmp_path):
    module = {
        "algebra": {
            "name": "t",
            "basis": [{"name": "t", "parity": 0}],
            "brackets": [],
        },
        "space": [{"name": "v1", "parity": 0}, {"name": "v2", "parity": 0}],
        "action": [
            {"g": "t", "m": "v1", "value": [{"basis": "v1", "coeff": "1"}]},
            {"g": "t", "m": "v2", "value": [{"basis": "v2", "coeff": "1"}]},
        ],
    }
    path = _write(tmp_path / "mod.json", module)
    code, payload, _ = _run(capsys, ["validate", path])
    assert code == 0 and payload["kind"] == "module"


def test_validate_malformed_rational(capsys, tmp_path):
    doc = dict(H3)
    doc["brackets"] = [
        {"left": "x", "right": "y", "value": [{"basis": "z", "coeff": "1/0"}]}
    ]
    path = _write(tmp_path / "bad.json", doc)
    code, payload, err = _run(capsys, ["validate", path])
    assert code == 1
    assert "error" in err


def test_validate_semantic_violation(capsys, tmp_path):
    doc = {
        "name": "bad",
        "basis": [{"name": "x", "parity": 0}, {"name": "y", "parity": 1}],
        "brackets": [
            {"left": "x", "right": "y", "value": [{"basis": "x", "coeff": "1"}]}
        ],
    }
    path = _write(tmp_path / "parity.json", doc)
    code, payload, _ = _run(capsys, ["validate", path])
    assert code == 2
    assert payload["violation"]["rule"] == "parity"


def test_cohomology_degree_two(capsys, h3_files):
    _, ext = h3_files
    code, payload, _ = _run(capsys, ["cohomology", ext, "--degree", "2"])
    assert code == 0
    assert payload["h2_dim"] == 1
    assert payload["extension_class_is_zero"] is False


def test_cohomology_degree_one(capsys, h3_files):
    _, ext = h3_files
    code, payload, _ = _run(capsys, ["cohomology", ext, "--degree", "1"])
    assert code == 0
    assert payload["z1_dim"] == 2
    assert payload["inner_dim"] == 0


def test_extend_zero_map(capsys, h3_files, tmp_path):
    _, ext = h3_files
    phi = _write(tmp_path / "phi0.json",
                 {"domain": "a", "codomain": "a", "entries": []})
    code, payload, _ = _run(capsys, ["extend", ext, phi])
    assert code == 0
    assert payload["extended"] is True
    assert payload["witness"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_extend_identity_is_obstructed(capsys, h3_files, tmp_path):
    _, ext = h3_files
    phi = _write(tmp_path / "phi1.json", {
        "domain": "a", "codomain": "a",
        "entries": [{"from": "z", "to": "z", "coeff": "1"}],
    })
    code, payload, _ = _run(capsys, ["extend", ext, phi])
    assert code == 0
    assert payload["extended"] is False
    assert payload["obstruction"] == ["-1"]


def test_extend_rejects_wrong_domain(capsys, h3_files, tmp_path):
    _, ext = h3_files
    phi = _write(tmp_path / "phig.json",
                 {"domain": "g", "codomain": "g", "entries": []})
    code, _, err = _run(capsys, ["extend", ext, phi])
    assert code == 2


def test_lift_compatible_diagonal(capsys, h3_files, tmp_path):
    _, ext = h3_files
    psi = _write(tmp_path / "psi.json", {
        "domain": "g", "codomain": "g",
        "entries": [
            {"from": "x", "to": "x", "coeff": "2"},
            {"from": "y", "to": "y", "coeff": "1/2"},
        ],
    })
    code, payload, _ = _run(capsys, ["lift", ext, psi])
    assert code == 0
    assert payload["lifted"] is True
    assert payload["witness"] == [["2", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1"]]


def test_lift_incompatible_diagonal(capsys, h3_files, tmp_path):
    _, ext = h3_files
    psi = _write(tmp_path / "psi2.json", {
        "domain": "g", "codomain": "g",
        "entries": [
            {"from": "x", "to": "x", "coeff": "2"},
            {"from": "y", "to": "y", "coeff": "1"},
        ],
    })
    code, payload, _ = _run(capsys, ["lift", ext, psi])
    assert code == 0
    assert payload["lifted"] is False
    assert payload["obstruction"] == ["1"]


def test_lift_identity(capsys, h3_files, tmp_path):
    _, ext = h3_files
    psi = _write(tmp_path / "psiid.json", {
        "domain": "g", "codomain": "g",
        "entries": [
            {"from": "x", "to": "x", "coeff": "1"},
            {"from": "y", "to": "y", "coeff": "1"},
        ],
    })
    code, payload, _ = _run(capsys, ["lift", ext, psi])
    assert code == 0 and payload["lifted"] is True


def test_verify_five_term(capsys, h3_files):
    _, ext = h3_files
    code, payload, err = _run(capsys, ["verify", ext, "--suite", "five-term"])
    assert code == 0
    assert payload["passed"] is True
    assert "PASS" in err


def test_verify_all_suites_on_heisenberg(capsys, h3_files):
    _, ext = h3_files
    for suite in ("five-term", "thm1", "cor1", "thm2", "thm3"):
        code, payload, _ = _run(capsys, ["verify", ext, "--suite", suite])
        assert code == 0, (suite, payload)
        assert payload["passed"] is True


def test_verify_with_samples_and_note(capsys, tmp_path):
    algebra = _write(tmp_path / "ba1.json", BA1)
    ext = _write(tmp_path / "ba1.ext.json", {"algebra": "ba1.json", "ideal": ["z"]})
    samples = _write(tmp_path / "samples.json", {
        "maps": [{
            "domain": "g", "codomain": "g",
            "entries": [
                {"from": "x", "to": "x", "coeff": "2"},
                {"from": "y", "to": "y", "coeff": "3"},
            ],
        }],
    })
    code, payload, _ = _run(
        capsys, ["verify", ext, "--suite", "thm2", "--samples", samples])
    assert code == 0
    assert payload["passed"] is True
    assert any("not surjective" in note for note in payload["notes"])


def test_verify_seed_env_override(capsys, h3_files, monkeypatch):
    _, ext = h3_files
    monkeypatch.setenv("SUPEREXT_SEED", "12")
    code, payload, _ = _run(capsys, ["verify", ext, "--suite", "thm1", "--seed", "99"])
    assert code == 0 and payload["passed"] is True
    monkeypatch.setenv("SUPEREXT_SEED", "not-a-number")
    code, _, err = _run(capsys, ["verify", ext, "--suite", "thm1"])
    assert code == 1


def test_semidirect_round_trip(capsys, tmp_path):
    algebra = _write(tmp_path / "t.json", {
        "name": "t",
        "basis": [{"name": "t", "parity": 0}],
        "brackets": [],
    })
    module = _write(tmp_path / "m.json", {
        "algebra": "t.json",
        "space": [{"name": "v1", "parity": 0}, {"name": "v2", "parity": 0}],
        "action": [
            {"g": "t", "m": "v1", "value": [{"basis": "v1", "coeff": "1"}]},
            {"g": "t", "m": "v2", "value": [{"basis": "v2", "coeff": "1/2"}]},
        ],
    })
    out = tmp_path / "sd"
    code, payload, _ = _run(capsys, ["semidirect", algebra, module, "-o", str(out)])
    assert code == 0
    algebra_path, ext_path = payload["written"]
    reloaded = load_algebra(algebra_path)
    assert reloaded.dim == 3
    t, v1, v2 = 0, 1, 2
    assert reloaded.structure[t][v2][v2] == parse_rat("1/2")
    ext = load_extension(ext_path)
    assert ext.beta.is_zero()
    assert ext.dim_a == 2
    # bit-exact round trip of the emitted algebra
    from superext.files import dump_algebra

    emitted = json.loads((tmp_path / "sd.algebra.json").read_text())
    assert dump_algebra(reloaded, name=emitted["name"]) == emitted


def test_cohomology_of_split_extension_reports_zero_class(capsys, tmp_path):
    algebra = _write(tmp_path / "t.json", {
        "name": "t",
        "basis": [{"name": "t", "parity": 0}],
        "brackets": [],
    })
    module = _write(tmp_path / "m.json", {
        "algebra": "t.json",
        "space": [{"name": "v1", "parity": 0}, {"name": "v2", "parity": 0}],
        "action": [
            {"g": "t", "m": "v1", "value": [{"basis": "v1", "coeff": "1"}]},
            {"g": "t", "m": "v2", "value": [{"basis": "v2", "coeff": "1"}]},
        ],
    })
    out = tmp_path / "sd"
    code, payload, _ = _run(capsys, ["semidirect", algebra, module, "-o", str(out)])
    assert code == 0
    code, payload, _ = _run(capsys, ["cohomology", payload["written"][1]])
    assert code == 0
    assert payload["extension_class_is_zero"] is True


def test_semidirect_algebra_mismatch(capsys, tmp_path):
    algebra = _write(tmp_path / "u.json", {
        "name": "u",
        "basis": [{"name": "u", "parity": 0}],
        "brackets": [],
    })
    module = _write(tmp_path / "m2.json", {
        "algebra": {
            "name": "t",
            "basis": [{"name": "t", "parity": 0}],
            "brackets": [],
        },
        "space": [{"name": "v", "parity": 0}],
        "action": [],
    })
    code, payload, _ = _run(capsys, ["semidirect", algebra, module, "-o", str(tmp_path / "x")])
    assert code == 2


def test_missing_file_is_a_parse_error(capsys, tmp_path):
    code, _, err = _run(capsys, ["validate", str(tmp_path / "nope.json")])
    assert code == 1


def test_extension_with_unknown_ideal_name(capsys, tmp_path):
    algebra = _write(tmp_path / "h3b.json", H3)
    ext = _write(tmp_path / "bad.ext.json", {"algebra": "h3b.json", "ideal": ["w"]})
    code, _, err = _run(capsys, ["cohomology", ext])
    assert code == 1
