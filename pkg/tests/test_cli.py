import json

import pytest

import hyperlin.gallery as gallery
from hyperlin.ambient import affine_space
from hyperlin.blowup import BlowupChainSpec, impose_chain
from hyperlin.cli import JobError, main, run_job
from hyperlin.fields import rationals
from hyperlin.linsys import LinearSys


def write_job(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def base_job(**overrides):
    data = {
        "field": {"kind": "rationals"},
        "ambient": {"kind": "affine", "dim": 2},
        "system": {"degree": 3},
    }
    data.update(overrides)
    return data


def test_run_complete_system_summary(tmp_path, capsys):
    rc = main(["run", write_job(tmp_path, base_job())])
    out = capsys.readouterr().out
    assert rc == 0
    assert "A^2 over QQ, degree 3" in out
    assert "nsections: 10" in out


def test_run_impose_points_matches_library(tmp_path, capsys):
    job = base_job(
        field={"kind": "gf", "p": 7},
        ambient={"kind": "projective", "dim": 2},
        system={"degree": 3},
        operations=[
            {
                "op": "impose-points",
                "points": [[1, 1, 1], [1, 2, 4]],
                "multiplicities": [1, 2],
            }
        ],
    )
    rc = main(["run", write_job(tmp_path, job), "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    # 1 simple + 1 double point on cubics: 10 - 1 - 3 sections
    assert payload["nsections"] == 6
    assert payload["ambient"] == "P^2 over GF(7)"


def test_run_chain_job_lists_sections(tmp_path, capsys):
    job = base_job(
        system={"degree": 4},
        operations=[
            {
                "op": "impose-chain",
                "chains": [
                    {"point": [0, 0], "mults": [2, 2], "tangents": [[1, 1]]},
                    {
                        "point": [2, 3],
                        "mults": [2, 1, 1],
                        "tangents": [[1, 1], [1, 0]],
                    },
                ],
            }
        ],
        output={"sections": True},
    )
    rc = main(["run", write_job(tmp_path, job)])
    out = capsys.readouterr().out
    assert rc == 0

    A2 = affine_space(rationals(), 2)
    direct = impose_chain(
        LinearSys.complete(A2, 4),
        [
            BlowupChainSpec((0, 0), [2, 2], [(1, 1)]),
            BlowupChainSpec((2, 3), [2, 1, 1], [(1, 1), (1, 0)]),
        ],
    )
    assert "nsections: 4" in out
    for s in direct.sections():
        assert f"  {s}" in out


def test_run_trace_needs_saturated_flag(tmp_path, capsys):
    job = base_job(
        field={"kind": "gf", "p": 7},
        ambient={"kind": "projective", "dim": 2},
        system={"degree": 3},
        operations=[
            {"op": "trace", "generators": ["x^2+y^2+z^2"], "saturated": False}
        ],
    )
    rc = main(["run", write_job(tmp_path, job)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "saturated" in err


def test_run_trace_on_conic(tmp_path, capsys):
    job = base_job(
        field={"kind": "gf", "p": 7},
        ambient={"kind": "projective", "dim": 2},
        system={"degree": 3},
        operations=[
            {"op": "trace", "generators": ["x^2+y^2+z^2"], "saturated": True}
        ],
    )
    rc = main(["run", write_job(tmp_path, job), "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    # cubics modulo (conic)*(linears): 10 - 3
    assert payload["nsections"] == 7


def test_run_containment_op(tmp_path, capsys):
    job = base_job(
        operations=[{"op": "containment", "generators": ["x^2-y"]}],
    )
    rc = main(["run", write_job(tmp_path, job), "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    # cubics divisible by x^2 - y: (x^2 - y) * {1, x, y}
    assert payload["nsections"] == 3


def test_run_image_system_finds_the_conic(tmp_path, capsys):
    job = {
        "field": {"kind": "rationals"},
        "ambient": {"kind": "projective", "dim": 1, "names": ["s", "t"]},
        "system": {"degree": 2},
        "operations": [
            {
                "op": "image-system",
                "components": ["s^2", "s*t", "t^2"],
                "target": {"kind": "projective", "dim": 2, "names": ["a", "b", "c"]},
                "degree": 2,
            }
        ],
        "output": {"sections": True},
    }
    rc = main(["run", write_job(tmp_path, job)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "nsections: 1" in out
    assert "-b^2+a*c" in out


def test_run_matrix_system(tmp_path, capsys):
    job = base_job(
        field={"kind": "gf", "p": 5},
        system={
            "degree": 2,
            "monomials": ["x^2", "x*y", "y^2"],
            "matrix": [[1, 0, 4], [0, 1, 0]],
        },
    )
    rc = main(["run", write_job(tmp_path, job), "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["nsections"] == 2


def test_unknown_keys_are_rejected_with_location(tmp_path, capsys):
    job = base_job(
        operations=[{"op": "impose-points", "points": [[0, 0]], "mults": [1]}]
    )
    rc = main(["run", write_job(tmp_path, job)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "job.operations[0]" in err
    assert "mults" in err

    job = base_job(extra=1)
    rc = main(["run", write_job(tmp_path, job)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "unknown key(s): extra" in err


def test_missing_keys_are_reported(tmp_path, capsys):
    rc = main(["run", write_job(tmp_path, {"field": {"kind": "rationals"}})])
    err = capsys.readouterr().err
    assert rc == 2
    assert "missing key(s): ambient, system" in err

    job = base_job(operations=[{"op": "impose-points", "points": [[0, 0]]}])
    rc = main(["run", write_job(tmp_path, job)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "multiplicities" in err


def test_parse_errors_carry_their_path(tmp_path, capsys):
    job = base_job(
        operations=[{"op": "containment", "generators": ["x^2 + bogus"]}]
    )
    rc = main(["run", write_job(tmp_path, job)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "job.operations[0].generators[0]" in err

    job = base_job(
        system={"degree": 2, "monomials": ["x+y"], "matrix": [[1]]}
    )
    rc = main(["run", write_job(tmp_path, job)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "not a monomial" in err


def test_bad_field_and_ambient_kinds(tmp_path, capsys):
    rc = main(["run", write_job(tmp_path, base_job(field={"kind": "real"}))])
    assert rc == 2
    assert "job.field" in capsys.readouterr().err

    rc = main(["run", write_job(tmp_path, base_job(ambient={"kind": "torus", "dim": 2}))])
    assert rc == 2
    assert "job.ambient" in capsys.readouterr().err


def test_run_job_raises_job_error_directly():
    with pytest.raises(JobError, match=r"job\.system"):
        run_job({"field": {"kind": "rationals"},
                 "ambient": {"kind": "affine", "dim": 2},
                 "system": {}})


def test_missing_or_invalid_job_file(tmp_path, capsys):
    rc = main(["run", str(tmp_path / "nope.json")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = main(["run", str(bad)])
    assert rc == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_repro_pass_exits_zero(capsys):
    rc = main(["repro", "quadrifolium"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "result: PASS" in out
    assert gallery.QUADRIFOLIUM_STRING in out


def test_repro_mismatch_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(gallery, "QUADRIFOLIUM_STRING", "x^6+y^6")
    rc = main(["repro", "quadrifolium"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "result: FAIL" in out


def test_repro_tacnode_cusp(capsys):
    rc = main(["repro", "tacnode-cusp", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["ok"] is True
    assert payload["nsections"] == 4
    assert payload["tacnode"] == [2, 2]
    assert payload["cusp"] == [2, 1, 1]


def test_repro_unknown_name_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["repro", "septic-surprise"])
    assert exc.value.code == 2


def test_json_reports_are_byte_identical(capsys):
    main(["repro", "tacnode-cusp", "--json"])
    first = capsys.readouterr().out
    main(["repro", "tacnode-cusp", "--json"])
    second = capsys.readouterr().out
    assert first == second


def test_scan_cli_is_deterministic(capsys):
    argv = ["scan", "--family", "z6", "--q", "101", "--trials", "2",
            "--target", "cusps15", "--seed", "3"]
    rc = main(argv)
    first = capsys.readouterr().out
    assert rc == 0
    assert "scan z6 over GF(101)" in first
    main(argv)
    assert capsys.readouterr().out == first


def test_scan_cli_reports_matches(capsys):
    rc = main(["scan", "--family", "z5", "--q", "101", "--trials", "250",
               "--target", "nodes30", "--stop-after", "1", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["trials"] == 212
    assert len(payload["matches"]) == 1
    match = payload["matches"][0]
    assert match["trial"] == 211
    assert match["count"] == 30
    assert match["histogram"] == {"A1": 30}


def test_lift_job_validation(tmp_path, capsys):
    path = tmp_path / "lift.json"
    path.write_text(json.dumps({"task": "sextic-pencil-lift", "bogus": 1}))
    rc = main(["lift", "--job", str(path)])
    assert rc == 2
    assert "bogus" in capsys.readouterr().err

    path.write_text(json.dumps({"task": "quartic-lift"}))
    rc = main(["lift", "--job", str(path)])
    assert rc == 2
    assert "unknown lift task" in capsys.readouterr().err

    rc = main(["lift", "--primes", "59,sixty-one"])
    assert rc == 2
    assert "--primes" in capsys.readouterr().err
