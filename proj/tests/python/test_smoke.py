from fractions import Fraction

import pytest

import okbody


def test_tangent_body():
    p = okbody.example("tangent-p2")
    body = p.body([0], 1, vertices=True, volume=True, lattice=True)
    assert body["volume"] == Fraction(1)
    assert len(body["vertices"]) == 7
    assert len(body["lattice_points"]) == 8
    assert body["is_big"]
    assert p.vol_class([0], 1) == 6
    assert p.h0([0], 1) == 8
    assert (0, 1, 0) in p.valuations([0], 1)


def test_check_and_context():
    p = okbody.example("tangent-p2")
    report = p.check([0], 2)
    assert report["passed"] and report["level_c_applicable"]
    ctx = p.context()["context"]
    assert ctx["u1"] == [1, 0]
    assert p.cone()["count"] == 6


def test_split_and_pullback():
    p = okbody.example("split-p1", 1, -1)
    assert p.validate()["status"] == "PASS"
    assert not p.is_big([2], 0)
    assert p.is_big([0], 1)


def test_errors():
    with pytest.raises(okbody.UnknownExample):
        okbody.example("nope")
    with pytest.raises(okbody.MalformedInput):
        okbody.Problem.from_json("{")
    with pytest.raises(okbody.InvalidInput):
        okbody.example("tangent-p2").body([0, 1], 1)


def test_cli_round_trip(tmp_path):
    path = tmp_path / "tp2.json"
    path.write_text(okbody.example("tangent-p2").to_json())
    assert okbody.load(path).name == okbody.example("tangent-p2").name
    out = okbody.run("body", str(path), "--class", "0;1", "--volume")
    assert out["bodies"][0]["vol_class"] == "6"
    with pytest.raises(RuntimeError) as info:
        okbody.run("validate", str(tmp_path / "missing.json"))
    assert info.value.exit_code == 1
