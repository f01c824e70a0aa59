import json

from logderiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_derivations_conic(capsys):
    code, out, _ = run(
        capsys, "derivations", "x^2+y^2", "--vars", "x,y", "--u", "1,1", "--v", "0,0",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert len(report["generators"]) == 2
    assert report["degrees"] == [1, 1]


def test_derivations_factored_monomial(capsys):
    code, out, _ = run(
        capsys, "derivations", "x^2*y^3", "--vars", "x,y", "--factors", "x:2,y:3",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert sorted(report["generators"]) == ["x^2*d_x", "y^3*d_y"]


def test_constant_input_is_usage_error(capsys):
    code, _, err = run(capsys, "derivations", "5", "--vars", "x,y")
    assert code == 2
    assert "constant" in err


def test_parse_error_is_usage_error(capsys):
    code, _, err = run(capsys, "chi", "x^2+", "--vars", "x,y")
    assert code == 2


def test_bad_factorization_rejected(capsys):
    code, _, err = run(
        capsys, "derivations", "x^2*y^3", "--vars", "x,y", "--factors", "x:1,y:3"
    )
    assert code == 2
    assert "multiply out" in err


def test_chi_command_passes_and_reports(capsys):
    code, out, _ = run(
        capsys, "chi", "x^2+y^2", "--vars", "x,y", "--u", "1,1", "--v", "0,0",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["chi"] == 2 and report["expected"] == 2
    assert report["ok"] is True


def test_chi_with_inferred_weights(capsys):
    code, out, _ = run(
        capsys, "chi", "x^2*z+y^3+z^4", "--vars", "x,y,z", "--infer-weights",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["inputs"]["u"] == [9, 8, 6]
    assert report["ok"] is True


def test_hilbert_free_ring(capsys):
    code, out, _ = run(capsys, "hilbert", "--vars", "x,y", "--u", "1,2")
    assert code == 0
    assert "1/((1-t)(1-t^2))" in out


def test_hilbert_of_module(capsys):
    code, out, _ = run(
        capsys, "hilbert", "x^2+y^2", "--vars", "x,y", "--u", "1,1", "--v", "0,0",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["series"] == "2*t/((1-t)(1-t))"
    assert report["chi"] == 2


def test_betti_worked_example_homogenized_pipeline(capsys):
    code, out, _ = run(
        capsys, "homogenize", "x^2*z+y^3+z^4", "--vars", "x,y,z", "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["chi"] == 4
    assert sorted(report["shifts"][0]) == [1, 2, 3, 3]
    assert report["shifts"][1] == [5]


def test_homogenize_mix_negative_control(capsys):
    code, out, _ = run(
        capsys, "homogenize", "x^2*z+y^3+z^4", "--vars", "x,y,z", "--mix", "0,1",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["homogenization_is_resolution"] is False
    assert report["recomputed_from_scratch"] is True
    assert report["chi"] == 4


def test_saito_certificate(capsys, tmp_path):
    basis = tmp_path / "basis.txt"
    basis.write_text("x^2*d_x\ny^3*d_y\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "saito", "x^2*y^3", "--vars", "x,y", "--factors", "x:2,y:3",
        "--derivations", str(basis), "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["is_basis"] is True and report["constant"] == "1"


def test_saito_rotated_conic(capsys, tmp_path):
    basis = tmp_path / "basis.txt"
    basis.write_text("x*d_x + y*d_y\ny*d_x - x*d_y\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "saito", "x^2+y^2", "--vars", "x,y",
        "--derivations", str(basis), "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["is_basis"] is True and report["constant"] == "-1"


def test_saito_dependent_columns(capsys, tmp_path):
    basis = tmp_path / "basis.txt"
    basis.write_text("x^2*d_x\nx^2*d_x\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "saito", "x^2", "--vars", "x,y", "--factors", "x:2",
        "--derivations", str(basis), "--format", "json",
    )
    assert code == 1
    report = json.loads(out)
    assert report["is_basis"] is False


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--random", "3", "--seed", "0", "--format", "json")
    assert code == 0
    assert json.loads(out)["ok"] is True
    code, _, _ = run(capsys, "verify", "--random", "2", "--seed", "0", "--inject-fault")
    assert code == 1


def test_verify_empty_run_passes(capsys):
    code, out, _ = run(capsys, "verify", "--random", "0", "--format", "json")
    assert code == 0
    assert json.loads(out)["instances"] == []


def test_json_reports_are_deterministic(capsys):
    args = (
        "verify", "--random", "4", "--seed", "7", "--format", "json",
    )
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    args2 = ("chi", "x^2+y^2", "--vars", "x,y", "--u", "1,1", "--v", "0,0",
             "--format", "json")
    _, third, _ = run(capsys, *args2)
    _, fourth, _ = run(capsys, *args2)
    assert third == fourth
