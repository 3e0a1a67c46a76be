"""End-to-end tests of the command line driver."""

import json
from pathlib import Path

from bbiso.blackbox import GroupHandle, PermBackend, ZmodBackend
from bbiso.cli import main
from bbiso.constructions import abelian, cyclic, sym3
from bbiso.groupfile import dump_group

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_group(tmp_path, name, G):
    path = tmp_path / name
    path.write_text(dump_group(G))
    return path


def test_classify_pseudo_square_free(capsys):
    code, out, err = run(capsys, "classify", "30")
    assert code == 0
    assert err == ""
    assert "n = 30" in out
    assert "in_d = true" in out


def test_classify_separability_failure(capsys):
    code, out, _ = run(capsys, "classify", "6")
    assert code == 0
    assert "in_dhat = false" in out


def test_classify_one(capsys):
    code, out, _ = run(capsys, "classify", "1")
    assert code == 0
    assert "in_d = true" in out
    assert "mu = 0" in out


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "6", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 6
    assert payload["in_dhat"] is False


def test_classify_malformed(capsys):
    code, out, err = run(capsys, "classify", "frog")
    assert code == 2
    assert out == ""
    assert "error" in err


def test_classify_nonpositive(capsys):
    code, out, _ = run(capsys, "classify", "0")
    assert code == 2
    assert out == ""


def test_density_trivial_limit(capsys):
    code, out, _ = run(capsys, "density", "--set", "d", "--limit", "1")
    assert code == 0
    assert "density = 1.0000" in out


def test_density_thousand(capsys):
    code, out, _ = run(capsys, "density", "--set", "d", "--limit", "1000")
    assert code == 0
    assert "count = 704" in out
    assert "density = 0.7040" in out


def test_density_dhat_json(capsys):
    code, out, _ = run(capsys, "density", "--set", "dhat", "--limit", "1000", "--json")
    assert code == 0
    assert json.loads(out)["count"] == 553


def test_density_bad_limit(capsys):
    code, out, _ = run(capsys, "density", "--set", "d", "--limit", "0")
    assert code == 2
    assert out == ""


def test_iso_abelian_positive(tmp_path, capsys):
    f1 = write_group(tmp_path, "a.json", cyclic(6))
    f2 = write_group(tmp_path, "b.json", abelian([2, 3]))
    code, out, _ = run(capsys, "iso", "--mode", "abelian", f1, f2)
    assert code == 0
    assert out == "isomorphic\n"


def test_iso_abelian_negative(tmp_path, capsys):
    f1 = write_group(tmp_path, "a.json", cyclic(8))
    f2 = write_group(tmp_path, "b.json", abelian([2, 4]))
    code, out, _ = run(capsys, "iso", "--mode", "abelian", f1, f2, "--threshold", "3")
    assert code == 1
    assert out == "not isomorphic\n"


def test_iso_abelian_default_threshold_inapplicable(tmp_path, capsys):
    f1 = write_group(tmp_path, "a.json", cyclic(8))
    f2 = write_group(tmp_path, "b.json", abelian([2, 4]))
    code, out, _ = run(capsys, "iso", "--mode", "abelian", f1, f2)
    assert code == 2
    assert out == ""


def test_iso_metacyclic_against_cyclic(capsys):
    code, out, _ = run(
        capsys,
        "iso",
        "--mode",
        "metacyclic",
        FIXTURES / "order21_perm.json",
        FIXTURES / "z21.json",
        "--threshold",
        "3",
    )
    assert code == 1
    assert out == "not isomorphic\n"


def test_iso_metacyclic_self(capsys):
    code, out, _ = run(
        capsys,
        "iso",
        "--mode",
        "metacyclic",
        FIXTURES / "order21_perm.json",
        FIXTURES / "order21_perm.json",
        "--threshold",
        "3",
        "--json",
    )
    assert code == 0
    assert json.loads(out)["isomorphic"] is True


def test_iso_bruteforce(tmp_path, capsys):
    f1 = write_group(tmp_path, "s3.json", sym3())
    f2 = write_group(tmp_path, "z6.json", cyclic(6))
    f3 = write_group(tmp_path, "z2z3.json", abelian([2, 3]))
    code, out, _ = run(capsys, "iso", "--mode", "bruteforce", f1, f2)
    assert (code, out) == (1, "not isomorphic\n")
    code, out, _ = run(capsys, "iso", "--mode", "bruteforce", f2, f3)
    assert (code, out) == (0, "isomorphic\n")


def test_iso_order_mismatch(tmp_path, capsys):
    f1 = write_group(tmp_path, "a.json", cyclic(6))
    f2 = write_group(tmp_path, "b.json", cyclic(8))
    code, out, err = run(capsys, "iso", "--mode", "abelian", f1, f2)
    assert code == 2
    assert out == ""
    assert "order mismatch" in err


def test_iso_missing_file(tmp_path, capsys):
    code, out, err = run(
        capsys, "iso", "--mode", "abelian", tmp_path / "no.json", tmp_path / "no2.json"
    )
    assert code == 2
    assert out == ""
    assert "error" in err


def test_iso_metacyclic_refusal_is_inapplicable(tmp_path, capsys):
    f2 = write_group(tmp_path, "z12.json", cyclic(12))
    code, out, err = run(
        capsys,
        "iso",
        "--mode",
        "metacyclic",
        FIXTURES / "sym3_times_z2.json",
        f2,
        "--threshold",
        "3",
    )
    assert code == 2
    assert out == ""
    assert "first input" in err


def test_recognize_order21(capsys):
    code, out, _ = run(
        capsys, "recognize", FIXTURES / "order21_perm.json", "--threshold", "3"
    )
    assert code == 0
    assert "c = 3, d = 7" in out


def test_recognize_json(capsys):
    code, out, _ = run(
        capsys,
        "recognize",
        FIXTURES / "order21_perm.json",
        "--threshold",
        "3",
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["metacyclic"] is True
    assert (payload["c"], payload["d"]) == (3, 7)
    assert payload["v"] in (2, 4)


def test_recognize_z15_default_threshold(capsys):
    code, out, _ = run(capsys, "recognize", FIXTURES / "z15.json")
    assert code == 0
    assert "c = 1, d = 15, v = 1" in out


def test_recognize_negative_verdict(capsys):
    code, out, _ = run(
        capsys, "recognize", FIXTURES / "sym3_times_z2.json", "--threshold", "3"
    )
    assert code == 1
    assert out.startswith("not coprime meta-cyclic")


def test_recognize_las_vegas_exhaustion(tmp_path, capsys):
    f = write_group(tmp_path, "v4.json", abelian([2, 2]))
    code, out, err = run(capsys, "recognize", f)
    assert code == 2
    assert out == ""
    assert "randomized search exhausted" in err


def test_recognize_matrix_fixture(capsys):
    code, out, _ = run(capsys, "recognize", FIXTURES / "gl3_541.json")
    assert code == 0
    assert "c = 108, d = 541" in out


def test_recognize_deterministic_stdout(capsys):
    args = ("recognize", FIXTURES / "order21_perm.json", "--threshold", "3", "--seed", "5")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_deconjugate_matrix_fixture(capsys):
    code, out, _ = run(capsys, "deconjugate", FIXTURES / "gl3_541.json")
    assert code == 0
    assert out == "316\n"


def test_deconjugate_commuting_pair(capsys):
    code, out, _ = run(capsys, "deconjugate", FIXTURES / "commuting_pair.json")
    assert code == 0
    assert out == "1\n"


def test_deconjugate_order21_file(capsys):
    code, out, _ = run(capsys, "deconjugate", FIXTURES / "order21_perm.json")
    assert code == 0
    assert out == "2\n"


def test_deconjugate_json(capsys):
    code, out, _ = run(capsys, "deconjugate", FIXTURES / "commuting_pair.json", "--json")
    assert code == 0
    assert json.loads(out) == {"a": 12, "b": 35, "v": 1}


def test_deconjugate_needs_two_generators(tmp_path, capsys):
    f = write_group(tmp_path, "one.json", cyclic(6))
    code, out, _ = run(capsys, "deconjugate", f)
    assert code == 2
    assert out == ""


def test_deconjugate_precondition_violation(tmp_path, capsys):
    G = GroupHandle.root(PermBackend(4), [(1, 0, 3, 2), (1, 2, 0, 3)])
    f = write_group(tmp_path, "a4pair.json", G)
    code, out, _ = run(capsys, "deconjugate", f)
    assert code == 2
    assert out == ""


def test_report_writes_files(tmp_path, capsys):
    out_dir = tmp_path / "rep"
    code, out, _ = run(capsys, "report", "--limits", "100,1000", "--out-dir", out_dir)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "set,limit,count,density"
    assert len(lines) == 5
    assert (out_dir / "density.csv").read_text() == out
    png = (out_dir / "density.png").read_bytes()
    assert png.startswith(b"\x89PNG")


def test_report_json(tmp_path, capsys):
    out_dir = tmp_path / "rep"
    code, out, _ = run(capsys, "report", "--limits", "100", "--out-dir", out_dir, "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 2
    assert payload["csv"].endswith("density.csv")


def test_report_bad_limits(tmp_path, capsys):
    code, out, _ = run(capsys, "report", "--limits", "0", "--out-dir", tmp_path)
    assert code == 2
    assert out == ""


def test_order_factors_fill(tmp_path, capsys):
    G = GroupHandle.root(ZmodBackend((541,)), [(1,)])
    f = write_group(tmp_path, "z541.json", G)
    code, out, _ = run(capsys, "recognize", f, "--order-factors", "541:1")
    assert code == 0
    assert "c = 1, d = 541" in out


def test_order_factors_conflict(capsys):
    code, out, _ = run(
        capsys, "recognize", FIXTURES / "z21.json", "--order-factors", "2:1"
    )
    assert code == 2
    assert out == ""


def test_order_factors_malformed(capsys):
    code, out, _ = run(
        capsys, "recognize", FIXTURES / "z21.json", "--order-factors", "banana"
    )
    assert code == 2
    assert out == ""


def test_unknown_order_filled_by_enumeration(tmp_path, capsys):
    G = GroupHandle.root(ZmodBackend((6,)), [(1,)])
    f = write_group(tmp_path, "z6.json", G)
    code, out, _ = run(capsys, "recognize", f)
    assert code == 0
    assert "c = 1, d = 6" in out


def test_enumeration_bound_exceeded(tmp_path, capsys):
    G = GroupHandle.root(ZmodBackend((541,)), [(1,)])
    f = write_group(tmp_path, "z541.json", G)
    code, out, err = run(capsys, "recognize", f, "--enumeration-bound", "10")
    assert code == 2
    assert out == ""
    assert "enumeration" in err


def test_bad_epsilon(capsys):
    code, out, _ = run(capsys, "classify", "5", "--epsilon", "2.0")
    assert code == 2
    assert out == ""


def test_bad_seed(capsys):
    code, out, _ = run(capsys, "classify", "5", "--seed", "-1")
    assert code == 2
    assert out == ""
