import json
import subprocess
import sys
from pathlib import Path

import pytest

from logcardy import io
from logcardy.catalog.construct import group_algebra
from logcardy.cli import main
from logcardy.linalg import Matrix
from logcardy.rep import trivial
from logcardy.scalar import QQ

GOLDEN = Path(__file__).with_name("golden")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def test_validate_catalog_entry(capsys):
    code, out, _ = run(capsys, "validate", "catalog:double_z2")
    assert code == 0 and "FAIL" not in out


def test_validate_broken_antipode_file(tmp_path, capsys):
    doc = io.hopf_to_doc(group_algebra(2, QQ))
    doc["antipode"] = [["0", "0"], ["0", "0"]]
    p = tmp_path / "broken.json"
    io.write(doc, p)
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1
    assert "[FAIL] antipode" in out
    code, data = run_json(capsys, "validate", str(p))
    failed = [c["name"] for r in data["reports"] for c in r["checks"] if not c["passed"]]
    assert "antipode" in failed


def test_validate_unknown_id(capsys):
    code, out, err = run(capsys, "validate", "catalog:nonexistent")
    assert code == 2 and "unknown catalog id" in err


@pytest.mark.parametrize("content", ["{broken", '{"schema_version": 1, "kind": "teapot"}', "[]"])
def test_parse_errors_exit_2(tmp_path, capsys, content):
    p = tmp_path / "x.json"
    p.write_text(content)
    assert run(capsys, "validate", str(p))[0] == 2


def test_usage_errors_exit_2(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate", "catalog:z2")[0] == 2
    assert run(capsys, "annulus", "catalog:fibonacci", "τ")[0] == 2
    assert run(capsys, "annulus", "catalog:fibonacci", "x", "y")[0] == 2
    assert run(capsys, "integrals", "catalog:fibonacci")[0] == 2
    assert run(capsys, "boundary-states", "catalog:double_z2")[0] == 2


def test_validate_module_file(tmp_path, dz2, capsys):
    H, S = dz2
    doc = io.module_to_doc(S[1], "catalog:double_z2")
    p = tmp_path / "m.json"
    io.write(doc, p)
    assert run(capsys, "validate", str(p))[0] == 0
    doc["action"][1] = [["2"]]
    io.write(doc, p)
    assert run(capsys, "validate", str(p))[0] == 1


def test_validate_modular_data(capsys):
    assert run(capsys, "validate", "catalog:ising")[0] == 0


def test_placeholder_braiding_fails_validation(capsys):
    code, out, _ = run(capsys, "validate", "catalog:taft2")
    assert code == 1 and "[FAIL] R intertwines coproduct" in out


def test_integrals(capsys):
    code, data = run_json(capsys, "integrals", "catalog:double_z2")
    assert code == 0 and data["normalized"]["pairing"] == "1"
    code, data = run_json(capsys, "integrals", "catalog:z2")
    assert code == 0 and "normalized" not in data


def test_boundary_states_double_z2(capsys):
    code, data = run_json(capsys, "boundary-states", "catalog:double_z2", "--all-simples")
    assert code == 0
    assert len(data["states"]) == 4 and data["independent"] and data["rank"] == 4
    assert not data["proper_subspace"]


def test_boundary_states_double_taft2(capsys):
    code, out, _ = run(capsys, "boundary-states", "catalog:double_taft2", "--all-simples")
    assert code == 0
    assert "independent: True" in out and "proper subspace: True" in out
    assert "dim C(H) = 5" in out


def test_boundary_state_of_trivial_module(capsys):
    code, data = run_json(capsys, "boundary-states", "catalog:double_z2", "1")
    assert data["states"][0]["outgoing"] == ["1", "1", "0", "0"]


def test_boundary_state_from_module_file(tmp_path, dz2, capsys):
    p = tmp_path / "t.json"
    io.write(io.module_to_doc(trivial(dz2[0])), p)
    code, data = run_json(capsys, "boundary-states", "catalog:double_z2", str(p))
    assert code == 0 and data["states"][0]["outgoing"] == ["1", "1", "0", "0"]


def test_annulus_fibonacci(capsys):
    code, out, _ = run(capsys, "annulus", "catalog:fibonacci", "τ", "τ")
    assert code == 0 and "1·χ_0 + 1·χ_τ" in out


def test_annulus_ising(capsys):
    code, out, _ = run(capsys, "annulus", "catalog:ising", "σ", "σ")
    assert code == 0 and "A[σ,σ] = 1·χ_0 + 1·χ_ψ" in out


def test_annulus_double_z2_table(capsys):
    code, data = run_json(capsys, "annulus", "catalog:double_z2")
    assert code == 0 and len(data["amplitudes"]) == 16
    assert all(sorted(r["coefficients"]) == [0, 0, 0, 1] and r["meataxe_agrees"] for r in data["amplitudes"])


def test_fusion(capsys):
    code, data = run_json(capsys, "fusion", "catalog:ising")
    assert data["N"][2][2] == [1, 1, 0]
    code, out, _ = run(capsys, "fusion", "catalog:double_taft2")
    assert "2a x 2a = 2·1 + 2·1a" in out


def test_report_double_taft2(capsys):
    code, data = run_json(capsys, "report", "catalog:double_taft2")
    assert code == 0
    assert data["hopf_link"]["singular"] and data["hopf_link"]["rank"] == 1
    assert data["character_span"]["proper_subspace"]
    assert "triplet" in data["commentary"]


def test_report_golden_su2_1(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["--format", "json", "--output", str(out), "report", "catalog:su2_1"]) == 0
    assert out.read_bytes() == (GOLDEN / "su2_1_report.json").read_bytes()


def test_report_is_deterministic(capsys):
    a = run(capsys, "--format", "json", "report", "catalog:double_z2")[1]
    b = run(capsys, "--format", "json", "report", "catalog:double_z2")[1]
    assert a == b


def test_report_text_tables(capsys):
    code, out, _ = run(capsys, "report", "catalog:fibonacci")
    assert code == 0
    assert "fusion:" in out and "τ x τ = 1·0 + 1·τ" in out
    assert "Hopf-link matrix, rank 2" in out


def test_subcommand_flags(tmp_path, capsys):
    out = tmp_path / "f.txt"
    assert main(["fusion", "catalog:z2", "--format", "json", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["N"][1][1] == [1, 0]


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "logcardy.cli", "validate", "catalog:nope"],
                       capture_output=True, text=True)
    assert r.returncode == 2
