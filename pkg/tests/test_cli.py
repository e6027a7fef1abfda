"""The command-line surface: subcommands, exit codes, JSON stability."""

import json
import subprocess
import sys

from nilpoisson.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog_list(capsys):
    code, out, _ = run_cli(capsys, "catalog", "list")
    assert code == 0
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == 5
    for family in ("torus", "heisenberg-ext", "double-heisenberg", "p4n2", "w4n6"):
        assert any(line.startswith(family) for line in lines)


def test_catalog_emit_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "catalog", "emit", "w4n6:0")
    assert code == 0
    spec_file = tmp_path / "w6.json"
    spec_file.write_text(out)
    code, out, _ = run_cli(capsys, "validate", str(spec_file))
    assert code == 0
    assert "step" in out and "2" in out


def test_validate_catalog_name(capsys):
    code, out, _ = run_cli(capsys, "validate", "p4n2:1")
    assert code == 0
    assert "valid" in out


def test_analyze_hodge_case_json(capsys):
    code, out, _ = run_cli(capsys, "analyze", "w4n6:0", "--poisson", "V^T2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["hn_lambda"]["1"] == 5
    assert payload["hodge"] is True
    assert payload["obstruction"]["kind"] == "trivial_action"


def test_analyze_json_is_byte_stable(capsys):
    _, first, _ = run_cli(capsys, "analyze", "w4n6:0", "--poisson", "V^T1", "--json")
    _, second, _ = run_cli(capsys, "analyze", "w4n6:0", "--poisson", "V^T1", "--json")
    assert first == second


def test_analyze_human_output(capsys):
    code, out, _ = run_cli(capsys, "analyze", "w4n6:0", "--poisson", "V^T1")
    assert code == 0
    assert "Hodge-type decomposition: False" in out
    assert "unsolvable" in out or "obstruction" in out


def test_analyze_without_poisson(capsys):
    code, out, _ = run_cli(capsys, "analyze", "torus:2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["degeneracy"] is True and payload["hodge"] is True


def test_obstruction_unsolvable_message(capsys):
    code, out, _ = run_cli(capsys, "obstruction", "w4n6:0", "--t", "T1")
    assert code == 0
    assert "unsolvable: spectral sequence does not degenerate" in out


def test_obstruction_trivial_message(capsys):
    code, out, _ = run_cli(capsys, "obstruction", "w4n6:0", "--t", "T2")
    assert code == 0
    assert "trivial action" in out


def test_obstruction_solvable_json(capsys):
    code, out, _ = run_cli(capsys, "obstruction", "heisenberg-ext:1", "--t", "T1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "solvable" and payload["unique"] is True
    assert payload["solution"] == {"T1": "-1"}


def test_deform_reports_kernel(capsys):
    code, out, _ = run_cli(capsys, "deform", "w4n6:0", "--poisson", "V^T2",
                           "--omega", "rho_bar^w1_bar", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["k1_kernel_dim"] == 4
    assert "delta" not in payload or True


def test_unknown_label_is_an_input_error(capsys):
    code, _, err = run_cli(capsys, "analyze", "w4n6:0", "--poisson", "V^Q9")
    assert code == 1
    assert "unknown generator label" in err


def test_missing_file_is_an_input_error(capsys):
    code, _, err = run_cli(capsys, "analyze", "/no/such/file.json")
    assert code == 1
    assert "neither" in err


def test_invalid_catalog_parameters(capsys):
    code, _, err = run_cli(capsys, "analyze", "w4n6:-1")
    assert code == 1


def test_bad_spec_file_location_in_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x"')
    code, _, err = run_cli(capsys, "validate", str(bad))
    assert code == 1
    assert "line" in err


def test_non_poisson_input_is_rejected(capsys):
    code, _, err = run_cli(capsys, "analyze", "three-step:1")
    assert code == 1


def test_expression_with_complex_coefficient(capsys):
    code, out, _ = run_cli(capsys, "analyze", "heisenberg-ext:2",
                           "--poisson", "(0-1/2i)V^T1 + V^T2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["hodge"] is True


def test_module_entry_point():
    """python -m nilpoisson works end to end."""
    proc = subprocess.run(
        [sys.executable, "-m", "nilpoisson", "analyze", "w4n6:0",
         "--poisson", "V^T2", "--json"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["hn_lambda"]["1"] == 5
