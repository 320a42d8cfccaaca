"""Tests for the eaoaqec command line"""

import json

import pytest

from eaoaqec import main, make_parser, read_code


def run(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    return info.value.code


class TestParser:
    """Tests for argument parsing"""

    def test_global_options(self):
        """Test that global options precede the command"""
        args = make_parser().parse_args(["--json", "-j", "2", "-c", "3", "params", "x.code"])
        assert args.json is True
        assert args.threads == 2
        assert args.cutoff == 3
        assert args.command == "params"

    def test_construct_options(self):
        """Test 1-based selections for construct"""
        args = make_parser().parse_args(
            ["construct", "gf", "x.code", "-p", "1", "2", "-r", "x", "x", "--no-distance"]
        )
        assert args.pairs == [1, 2]
        assert args.roles == ["x", "x"]
        assert args.no_distance is True

    def test_version(self, capsys):
        """Test -V"""
        assert run(["-V"]) == 0
        assert "eaoaqec" in capsys.readouterr().out


class TestCommands:
    """Tests for command output and exit codes"""

    def test_params_with_distance(self, capsys):
        """Test params on a catalog code"""
        assert run(["params", "catalog:subsystem_color_code", "--distance", "dressed"]) == 0
        assert capsys.readouterr().out.strip() == "[[15,1,3;6,0,1]]"

    def test_params_json(self, capsys):
        """Test the json report"""
        assert run(["--json", "params", "catalog:six_qubit_example"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema_version"] == 1
        assert report["command"] == "params"
        assert report["notation"] == "[[6,1;1,2,3]]"

    def test_validate(self, capsys):
        """Test that validate lists each check"""
        assert run(["validate", "catalog:six_qubit_example"]) == 0
        out = capsys.readouterr().out
        assert "ok  distinct-cosets" in out

    def test_validate_empty_file(self, tmp_path, capsys):
        """Test that an unusable file exits with 2"""
        path = tmp_path / "empty.code"
        path.write_text("")
        assert run(["validate", str(path)]) == 2
        assert capsys.readouterr().err.startswith("error: ")

    def test_distance(self, capsys):
        """Test the witness line"""
        assert run(["-c", "3", "distance", "catalog:color_code_hybrid_z131415"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "dressed distance 1, witness IIIIIIIIIIIZIII (coset-union)"

    def test_correctable(self, tmp_path, capsys):
        """Test an uncorrectable error set"""
        errors = tmp_path / "errors.txt"
        errors.write_text("IIIIII\nIIXIII\n")
        assert run(["correctable", "catalog:six_qubit_example", "-e", str(errors)]) == 1
        out = capsys.readouterr().out
        assert out.startswith("not correctable (eaoaqec)")
        assert "coset-union" in out

    def test_eacq_check(self, capsys):
        """Test the non-representable seven-qubit code"""
        assert run(["eacq-check", "catalog:seven_qubit_non_eacq"]) == 1
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "not representable (condition (8) fails)"

    def test_construct(self, tmp_path, capsys):
        """Test gauge fixing through the command line"""
        output = tmp_path / "gf.code"
        argv = [
            "-c", "4",
            "construct", "gf", "catalog:subsystem_color_code",
            "-p", "1", "2", "-r", "x", "x", "-o", str(output),
        ]
        assert run(argv) == 0
        assert "[[15,1,3;4,0,4]]" in capsys.readouterr().out
        assert read_code(output).c_b == 4

    def test_construct_zero_index(self, capsys):
        """Test that selections are 1-based"""
        argv = ["construct", "gf", "catalog:subsystem_color_code", "-p", "0", "--no-distance"]
        assert run(argv) == 2
        assert "1-based" in capsys.readouterr().err

    def test_reproduce(self, capsys):
        """Test the six-qubit example"""
        assert run(["reproduce", "six-qubit"]) == 0
        out = capsys.readouterr().out
        assert all(line.startswith("PASS") for line in out.splitlines())

    def test_catalog(self, capsys):
        """Test the catalog listing"""
        assert run(["catalog"]) == 0
        out = capsys.readouterr().out
        assert "seven_qubit_non_eacq" in out
        assert "[[7,5;0,1,4]]" in out

    def test_unknown_catalog_entry(self, capsys):
        """Test that unknown entries exit with 2"""
        assert run(["catalog", "nope"]) == 2
