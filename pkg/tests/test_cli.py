import json
import subprocess
import sys

import pytest

from cherncert import jsonio
from cherncert.cli import main
from cherncert.geometry import standard_generic_tuple


def write(path, obj):
    jsonio.write_file(path, obj)
    return str(path)


@pytest.fixture
def generic_tuple_file(tmp_path):
    return write(tmp_path / "t.json", jsonio.torus_tuple_to_obj(standard_generic_tuple(2)))


class TestRelations:
    def test_all_pass(self, capsys):
        assert main(["relations", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert "relation instances hold" in out

    def test_zero_punctures_is_usage_error(self, capsys):
        assert main(["relations", "--n", "0"]) == 2

    def test_mutation_fails(self, capsys):
        assert main(["relations", "--n", "1", "--mutate"]) == 1
        assert "FAIL" in capsys.readouterr().out


class TestRewrite:
    def test_writes_verified_certificate(self, tmp_path):
        out = tmp_path / "cert.json"
        assert main(["rewrite", "--abc", "2", "0", "0", "--d", "1", "--out", str(out)]) == 0
        cert = jsonio.rewrite_cert_from_obj(jsonio.read_file(out))
        assert cert.abc == (2, 0, 0)

    def test_precondition_violation_is_usage_error(self, tmp_path, capsys):
        code = main(["rewrite", "--abc", "0", "0", "0", "--d", "1"])
        assert code == 2
        assert "3d-1" in capsys.readouterr().err


class TestDecompose:
    def test_full_cycle(self, tmp_path, capsys):
        exp = write(tmp_path / "exp.json", {"exponents": [[1, 1, 2, 11]]})
        out = tmp_path / "cert.json"
        assert main(["decompose", "--g", "2", "--n", "1", "--exponents", exp, "--out", str(out)]) == 0
        assert main(["verify", "--cert", str(out)]) == 0
        assert "valid" in capsys.readouterr().out

    def test_below_bound_quotes_the_bound(self, tmp_path, capsys):
        exp = write(tmp_path / "exp.json", {"exponents": [[1, 1, 2, 10]]})
        assert main(["decompose", "--g", "2", "--n", "1", "--exponents", exp]) == 2
        assert "11" in capsys.readouterr().err

    def test_tampered_certificate_detected(self, tmp_path, capsys):
        exp = write(tmp_path / "exp.json", {"exponents": [[1, 1, 2, 11]]})
        out = tmp_path / "cert.json"
        assert main(["decompose", "--g", "2", "--n", "1", "--exponents", exp, "--out", str(out)]) == 0
        obj = jsonio.read_file(out)
        obj["terms"][0]["coeff"]["terms"][0]["coeff"] = "2/1"
        write(out, obj)
        assert main(["verify", "--cert", str(out)]) == 1
        assert "INVALID" in capsys.readouterr().out

    def test_random_map_via_seed(self, tmp_path):
        out = tmp_path / "cert.json"
        assert main(["decompose", "--g", "2", "--n", "2", "--seed", "11", "--out", str(out)]) == 0
        cert = jsonio.decomposition_cert_from_obj(jsonio.read_file(out))
        assert cert.total_degree == 15

    def test_needs_exponents_or_seed(self, capsys):
        assert main(["decompose", "--g", "2", "--n", "1"]) == 2


class TestGeneric:
    def test_generic_tuple(self, tmp_path, capsys):
        path = write(tmp_path / "t.json", {"n": 1, "elements": [["1/7", "2/7", "4/7"]]})
        assert main(["generic", "--tuple", path]) == 0
        assert json.loads(capsys.readouterr().out)["generic"] is True

    def test_non_generic_tuple(self, tmp_path, capsys):
        path = write(tmp_path / "t.json", {"n": 1, "elements": [["0/1", "1/3", "2/3"]]})
        assert main(["generic", "--tuple", path]) == 1
        report = json.loads(capsys.readouterr().out)
        assert report["generic"] is False
        assert report["witnesses"] == [{"selection": [1], "sum": "0/1"}]


class TestVanishing:
    def test_three_lines_for_g2_n1(self, capsys):
        assert main(["vanishing", "--g", "2", "--n", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 3
        assert json.loads(lines[0]) == {"g": 2, "n": 1, "r": [4], "roots": [1]}

    def test_limit(self, capsys):
        assert main(["vanishing", "--g", "2", "--n", "2", "--limit", "5"]) == 0
        assert len(capsys.readouterr().out.strip().splitlines()) == 5


class TestSections:
    def test_full_flow(self, tmp_path, generic_tuple_file, capsys):
        zeta = write(tmp_path / "z.json", {"g": 2, "n": 2, "r": [2, 3], "roots": [1, 2]})
        out = tmp_path / "empt.json"
        code = main([
            "sections", "--g", "2", "--n", "2", "--zeta", zeta, "--l", "2",
            "--tuple", generic_tuple_file, "--out", str(out),
        ])
        assert code == 0
        assert main(["verify", "--cert", str(out)]) == 0

    def test_non_generic_tuple_fails_check(self, tmp_path, capsys):
        zeta = write(tmp_path / "z.json", {"g": 2, "n": 2, "r": [2, 3], "roots": [1, 2]})
        bad = write(
            tmp_path / "bad.json",
            {"n": 2, "elements": [["1/7", "2/7", "4/7"], ["6/7", "5/7", "3/7"]]},
        )
        code = main([
            "sections", "--g", "2", "--n", "2", "--zeta", zeta, "--l", "2", "--tuple", bad,
        ])
        assert code == 1

    def test_base_outside_support_is_usage_error(self, tmp_path, generic_tuple_file):
        zeta = write(tmp_path / "z.json", {"g": 2, "n": 2, "r": [0, 5], "roots": [1, 1]})
        code = main([
            "sections", "--g", "2", "--n", "2", "--zeta", zeta, "--l", "1",
            "--tuple", generic_tuple_file,
        ])
        assert code == 2


class TestRobustness:
    def test_malformed_json_is_usage_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        assert main(["generic", "--tuple", str(bad)]) == 2

    def test_missing_file_is_usage_error(self, capsys):
        assert main(["generic", "--tuple", "/nonexistent/t.json"]) == 2

    def test_unknown_arguments_exit_two(self, capsys):
        assert main(["relations", "--n", "1", "--frobnicate"]) == 2

    def test_wrong_certificate_shape(self, tmp_path, capsys):
        path = write(tmp_path / "x.json", {"surprise": True})
        assert main(["verify", "--cert", str(path)]) == 2

    def test_emitted_files_reserialize_byte_identically(self, tmp_path):
        exp = write(tmp_path / "exp.json", {"exponents": [[1, 1, 2, 11]]})
        out = tmp_path / "cert.json"
        main(["decompose", "--g", "2", "--n", "1", "--exponents", exp, "--out", str(out)])
        raw = out.read_bytes()
        cert = jsonio.decomposition_cert_from_obj(jsonio.read_file(out))
        assert jsonio.dumps(jsonio.decomposition_cert_to_obj(cert)).encode() == raw


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "cherncert", "relations", "--n", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "relation instances hold" in proc.stdout
