"""End-to-end command-line behavior: outputs, exit codes, certificates."""
import os

import pytest

from hjlab import flag_semigroup
from hjlab.cli import main
from hjlab.tableio import format_semigroup_file


@pytest.fixture
def flag2(tmp_path):
    S, view, family = flag_semigroup(2)
    path = tmp_path / "flag2.sg"
    path.write_text(format_semigroup_file(S, view, family))
    return str(path)


# -- validate ----------------------------------------------------------------

def test_validate_good_file(flag2, capsys):
    assert main(["validate", flag2]) == 0
    out = capsys.readouterr().out
    assert "associativity: pass" in out
    assert "nice subsemigroup: pass" in out
    assert "retraction 2: pass" in out


def test_validate_broken_table(tmp_path, capsys):
    p = tmp_path / "bad.sg"
    p.write_text("semigroup 2\n0 0\n1 0\n")
    assert main(["validate", str(p)]) == 1
    out = capsys.readouterr().out
    assert "fail" in out and "triple" in out


def test_validate_retraction_without_t(tmp_path, capsys):
    p = tmp_path / "bad.sg"
    p.write_text("semigroup 2\n0 1\n1 1\nretraction: 0 1\n")
    assert main(["validate", str(p)]) == 2
    assert "T line" in capsys.readouterr().out


def test_validate_parse_error_position(tmp_path, capsys):
    p = tmp_path / "bad.sg"
    p.write_text("semigroup 2\n0 qq\n1 1\n")
    assert main(["validate", str(p)]) == 2
    assert "line 2" in capsys.readouterr().out


def test_validate_missing_file(capsys):
    assert main(["validate", "/nonexistent/x.sg"]) == 2
    assert "error" in capsys.readouterr().out


def test_validate_flags_bad_retraction(tmp_path, capsys):
    p = tmp_path / "s.sg"
    p.write_text("semigroup 4\n0 1 2 3\n1 1 3 3\n2 3 2 3\n3 3 3 3\nT: 0 2\nretraction: 0 0 0 0\n")
    assert main(["validate", str(p)]) == 1
    assert "retraction 0: fail" in capsys.readouterr().out


# -- witness -----------------------------------------------------------------

def test_witness_hj_mod2(tmp_path, capsys):
    cert = tmp_path / "w.cert"
    code = main(["witness", "--hj", "--alphabet", "2", "--coloring", "mod:2",
                 "-o", str(cert)])
    out = capsys.readouterr().out
    assert code == 0
    assert "witness: xx" in out
    assert "images: 00 11" in out
    assert main(["verify", str(cert)]) == 0


def test_witness_prints_certificate_without_output_path(capsys):
    assert main(["witness", "--hj", "--coloring", "mod:2"]) == 0
    out = capsys.readouterr().out
    assert "hjlab certificate v1" in out and "end" in out


def test_witness_exhausted_exits_1(capsys):
    assert main(["witness", "--hj", "--coloring", "mod:2", "--max-len", "1"]) == 1
    assert "exhausted" in capsys.readouterr().out


def test_witness_needs_exactly_one_instance(flag2, capsys):
    assert main(["witness", "--coloring", "mod:2"]) == 2
    assert main(["witness", "--hj", "--semigroup", flag2, "--coloring", "mod:2"]) == 2


def test_witness_finite_table_coloring(flag2, tmp_path, capsys):
    ctab = tmp_path / "c.txt"
    ctab.write_text("0 0\n2 1\n4 0\n")
    cert = tmp_path / "f.cert"
    code = main(["witness", "--semigroup", flag2,
                 "--coloring", f"table:{ctab}", "-o", str(cert)])
    out = capsys.readouterr().out
    assert code == 0
    # index 5 is the element (2,1) of the flag semigroup
    assert "witness: 5" in out
    assert "images: 4" in out
    assert main(["verify", str(cert)]) == 0


def test_witness_finite_rejects_non_table_coloring(flag2, capsys):
    assert main(["witness", "--semigroup", flag2, "--coloring", "mod:2"]) == 2


def test_witness_apres_goes_through_the_reduction(tmp_path, capsys):
    cert = tmp_path / "r.cert"
    code = main(["witness", "--hj", "--alphabet", "3",
                 "--coloring", "apres:2", "--max-len", "5", "-o", str(cert)])
    assert code == 0
    assert main(["verify", str(cert)]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


# -- hj / vdw -----------------------------------------------------------------

def test_hj_22(tmp_path, capsys):
    certs = tmp_path / "certs"
    assert main(["hj", "-n", "2", "-r", "2", "--max-N", "4",
                 "--cert-dir", str(certs)]) == 0
    out = capsys.readouterr().out
    assert "HJ(2,2) = 2" in out
    assert "N=1: SAT" in out and "N=2: UNSAT" in out
    files = sorted(os.listdir(certs))
    assert len(files) == 1
    assert main(["verify", str(certs / files[0])]) == 0


def test_hj_lower_bound_only(capsys):
    assert main(["hj", "-n", "3", "-r", "2", "--max-N", "2"]) == 1
    assert "HJ(3,2) > 2 (lower bound only)" in capsys.readouterr().out


def test_vdw_32(capsys):
    assert main(["vdw", "-k", "3", "-r", "2", "--max-M", "16"]) == 0
    out = capsys.readouterr().out
    assert "W(3,2) = 9" in out
    assert "M=9: UNSAT" in out


def test_vdw_budget_exit(capsys):
    code = main(["vdw", "-k", "3", "-r", "2", "--max-M", "9",
                 "--budget-nodes", "2"])
    out = capsys.readouterr().out
    assert code == 3
    assert "budget exceeded, not UNSAT" in out


def test_vdw_needs_max_m(capsys):
    assert main(["vdw", "-k", "3"]) == 2


def test_vdw_via_hj(tmp_path, capsys):
    certs = tmp_path / "c"
    assert main(["vdw", "-k", "3", "--via-hj", "--max-len", "5",
                 "--cert-dir", str(certs)]) == 0
    out = capsys.readouterr().out
    assert "witness word:" in out
    assert "progression:" in out
    cert_line = [ln for ln in out.splitlines() if ln.startswith("certificate:")][0]
    assert main(["verify", cert_line.split(": ", 1)[1]]) == 0


def test_no_symmetry_flag(capsys):
    assert main(["hj", "-n", "2", "-r", "2", "--max-N", "2", "--no-symmetry"]) == 0
    assert "HJ(2,2) = 2" in capsys.readouterr().out


# -- ultra --------------------------------------------------------------------

def test_ultra_check_prop_corpus(capsys):
    assert main(["ultra", "check-prop", "--corpus-order", "4", "--seed", "0",
                 "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert "tensor-power identity: pass" in out
    assert "0 failures" in out


def test_ultra_check_prop_single_semigroup(flag2, capsys):
    assert main(["ultra", "check-prop", "--semigroup", flag2, "--k", "3"]) == 0
    assert "pass" in capsys.readouterr().out


def test_ultra_lemma2(flag2, capsys):
    assert main(["ultra", "lemma2", "--semigroup", flag2, "--colors", "2"]) == 0
    out = capsys.readouterr().out
    assert "(a) every 2-coloring has a monochromatic image set: true" in out
    assert "(b) agreement ultrafilter with point in R: true" in out
    assert "equivalent: yes" in out


def test_ultra_lemma2_needs_structures(tmp_path, capsys):
    p = tmp_path / "t.sg"
    p.write_text("semigroup 2\n0 1\n1 1\n")
    assert main(["ultra", "lemma2", "--semigroup", str(p)]) == 2


def test_ultra_corpus(capsys):
    assert main(["ultra", "corpus", "--count", "10", "--max-order", "5",
                 "--seed", "1", "--k", "2,3"]) == 0
    out = capsys.readouterr().out
    assert "10 transformation semigroups" in out
    assert "tensor-power identity: pass" in out


# -- verify ---------------------------------------------------------------------

def test_verify_rejects_tampering(tmp_path, capsys):
    cert = tmp_path / "w.cert"
    main(["witness", "--hj", "--coloring", "mod:2", "-o", str(cert)])
    capsys.readouterr()
    text = cert.read_text().replace("witness: xx", "witness: x0")
    cert.write_text(text)
    assert main(["verify", str(cert)]) == 1
    assert "fail" in capsys.readouterr().out


def test_verify_missing_file(capsys):
    assert main(["verify", "/no/such.cert"]) == 2


def test_top_level_verify_flag(tmp_path, capsys):
    cert = tmp_path / "w.cert"
    main(["witness", "--hj", "--coloring", "mod:2", "-o", str(cert)])
    capsys.readouterr()
    assert main(["--verify", str(cert)]) == 0
