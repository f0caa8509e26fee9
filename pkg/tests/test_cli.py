import subprocess
import sys

import pytest

from quiverext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_selfinjective_exterior(capsys):
    code, out, _ = run(capsys, "check-selfinjective", "exterior-2", "--records")
    assert code == 0
    assert "l = 2\ntau = (0)\nnu.x1 = -x1\nnu.x2 = -x2\n" in out
    assert "check.eta_identity = pass" in out


def test_check_selfinjective_a2_fails(capsys):
    code, out, _ = run(capsys, "check-selfinjective", "a2")
    assert code == 1 and "FAIL" in out


def test_extend_writes_parseable_presentation(capsys, tmp_path):
    src = tmp_path / "ext1.bq"
    code, out, _ = run(capsys, "extend", "exterior-1", "--twist", "sigma0")
    assert code == 0
    text = out.split("end\n")[0] + "end\n"
    src.write_text(text, encoding="utf-8")
    code, out, _ = run(capsys, "hilbert", str(src), "--records")
    assert code == 0 and out == "t0 = [[1]]\nt1 = [[2]]\nt2 = [[1]]\n"


def test_twist_from_file(capsys, tmp_path):
    auto = tmp_path / "neg.auto"
    auto.write_text("auto\narrow x1 -> -x1\nend\n", encoding="utf-8")
    code, out, _ = run(capsys, "extend", "exterior-1", "--twist", str(auto))
    assert code == 0 and "x1*α@0 + α@0*x1" in out


def test_hilbert_cyclic(capsys):
    code, out, _ = run(capsys, "hilbert", "cyclic-3-j2", "--records")
    assert out == "t0 = [[1,0,0],[0,1,0],[0,0,1]]\nt1 = [[0,0,1],[1,0,0],[0,1,0]]\n"


def test_complexity_exterior_three(capsys):
    code, out, _ = run(capsys, "complexity", "exterior-3")
    assert code == 0
    assert "complexity = 3\nmethod = exact-quasipolynomial\n" in out


def test_resolve_and_duals(capsys):
    code, out, _ = run(capsys, "resolve", "exterior-2", "--steps", "3", "--records")
    assert "betti3 = [[4]]" in out and "koszul = Koszul to degree 3" in out
    code, out, _ = run(capsys, "koszul-dual", "exterior-2")
    assert "  x1*x2 - x2*x1\n" in out
    code, out, _ = run(capsys, "yoneda", "polynomial-2")
    assert "  x1*x2 + x2*x1\n" in out


def test_as_extend_modes(capsys):
    code, out, _ = run(capsys, "as-extend", "polynomial-1", "--mode", "central", "--records")
    assert code == 0 and "check.central = pass" in out
    code, out, _ = run(capsys, "as-extend", "polynomial-1", "--mode", "cy", "--records")
    assert "info.formula_twist_graded_symmetric = no" in out
    code, out, _ = run(capsys, "as-extend", "polynomial-1", "--mode", "twist", "--twist", "epsilon")
    assert code == 0 and "x1*α@0 + α@0*x1" in out


def test_scan_twists_records(capsys):
    code, out, _ = run(capsys, "scan-twists", "polynomial-2", "--records")
    assert code == 0 and "nu0_eps0.graded_symmetric = yes" in out


@pytest.mark.parametrize("argv", [["verify", "no-such-input"], ["extend", "exterior-1", "--twist", "bogus"],
                                  ["as-extend", "exterior-2"], ["hilbert", "polynomial-2"]])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("quiverext: ")


def test_parse_error_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.bq"
    bad.write_text("vertices 0\narrow x : 0 -> 1\n", encoding="utf-8")
    code, _, err = run(capsys, "hilbert", str(bad))
    assert code == 2 and "undeclared vertex" in err


def test_argparse_usage_exits_two():
    proc = subprocess.run([sys.executable, "-m", "quiverext.cli", "extend"], capture_output=True)
    assert proc.returncode == 2


def test_verify_passes_on_exterior(capsys):
    code, out, _ = run(capsys, "verify", "exterior-2", "--records")
    assert code == 0 and "= fail" not in out
