import numpy as np
import pytest

from eaoaqec import (
    HAMMING_15,
    CatalogError,
    CodeFileError,
    ConstructionError,
    EaoaqecCode,
    catalog,
    catalog_names,
    dumps_code,
    format_pauli,
    hamming_ggf_request,
    loads_code,
    loads_operators,
    parse_code_file,
    parse_pauli,
    read_code,
    read_operators,
    request_from_dict,
    request_to_dict,
    shortened_hamming,
    validate,
    write_code,
)


SIX_QUBIT_TABLE = """\
# six-qubit example
[META]
name = six
n = 6
e = 2

[S]
S1  Z I I I I I | Z I
S2  X I I I I I | X I
S3  I Z I I I I | I Z
S4  I X I I I I | I X
S5  I I Z I I I | I I
S6  I I I Z I I | I I

[G]
GX1 I I I I X I
GZ1 I I I I Z I

[L]
LX1 I I I I I X
LZ1 I I I I I Z

[T]
T0  I I I I I I
T1  I I X I I I
T2  I I I X I I
"""


class TestReadCode:
    """Tests for parsing code tables"""

    def test_table(self):
        """Test a hand-written table with ebit columns"""
        code = loads_code(SIX_QUBIT_TABLE)
        assert code.name == "six"
        assert validate(code).passed
        assert code.parameters().format() == "[[6,1;1,2,3]]"

    def test_h_only(self):
        """Test that an [H] section is extended and completed"""
        code = loads_code("[H]\nH1 ZZ\n")
        assert code.parameters().format() == "[[2,1;0,0,1]]"
        assert validate(code).passed

    def test_comments_and_labels(self):
        """Test that comments are dropped and labels kept"""
        parsed = parse_code_file("[H]  # group\nH1 Z Z  # first\nH2 X X\n")
        assert [e.label for e in parsed.sections["H"]] == ["H1", "H2"]
        assert parsed.sections["H"][1].line == 3
        assert parsed.headers["H"] == 1

    def test_h_must_match_s(self):
        """Test that [H] is checked against the restriction of [S]"""
        text = "[META]\nn = 2\n[S]\nS1 ZZ\n[H]\nH1 XX\n"
        with pytest.raises(CodeFileError):
            loads_code(text)

    def test_file_round_trip(self, tmp_path):
        """Test write_code followed by read_code"""
        path = tmp_path / "six.code"
        write_code(catalog("six_qubit_example"), path)
        code = read_code(path)
        assert code.parameters().format() == "[[6,1;1,2,3]]"
        assert dumps_code(code) == dumps_code(catalog("six_qubit_example"))

    def test_one_qubit_round_trip(self):
        """Test that a lone XZ cell reloads as one qubit"""
        code = EaoaqecCode.from_group(
            [parse_pauli("Z")], transversal=[parse_pauli("I"), parse_pauli("XZ", 1)]
        )
        text = dumps_code(code)
        assert "T1  XZ" in text.splitlines()
        reloaded = loads_code(text)
        assert reloaded.num_qubits == 1
        assert [format_pauli(t, "table") for t in reloaded.transversal] == ["I", "XZ"]
        assert dumps_code(reloaded) == text

    def test_meta_width(self):
        """Test that [H] rows must have META n cells"""
        with pytest.raises(CodeFileError) as info:
            loads_code("[META]\nn = 3\n[H]\nH1 Z Z\n")
        assert info.value.line == 4

    def test_catalog_tables_reload(self):
        """Test that every catalog table reloads to the same table"""
        for name in catalog_names():
            text = dumps_code(catalog(name))
            code = loads_code(text)
            assert validate(code).passed, name
            assert dumps_code(code) == text, name

    def test_dump_layout(self):
        """Test the header, META block and ebit bar"""
        lines = dumps_code(catalog("six_qubit_example")).splitlines()
        assert lines[:5] == [
            "# eaoaqec code table",
            "[META]",
            "name = six_qubit_example",
            "n = 6",
            "e = 2",
        ]
        assert "S1   Z I I I I I | Z I" in lines


class TestCodeFileErrors:
    """Tests for positioned parse errors"""

    def test_unknown_symbol(self):
        """Test line and column of an unknown symbol"""
        with pytest.raises(CodeFileError) as info:
            loads_code("[META]\nn = 2\n[S]\nS1 Z Q\n")
        assert info.value.line == 4
        assert info.value.column == 6
        assert str(info.value).startswith("<string>:4:6: ")

    def test_path_in_message(self):
        """Test that the path prefixes the message"""
        with pytest.raises(CodeFileError) as info:
            loads_code("[X]\n", path="demo.code")
        assert str(info.value).startswith("demo.code:1:1: ")

    def test_empty(self):
        """Test that a code needs [S] or [H]"""
        with pytest.raises(CodeFileError):
            loads_code("")

    def test_unequal_lengths(self):
        """Test that operators in a section share a length"""
        with pytest.raises(CodeFileError) as info:
            loads_code("[H]\nH1 ZZ\nH2 XXX\n")
        assert info.value.line == 3

    def test_odd_gauge_count(self):
        """Test that [G] needs x, z pairs"""
        with pytest.raises(CodeFileError):
            loads_code("[H]\nH1 ZZI\n[G]\nG1 XXI\n")

    def test_meta_mismatch(self):
        """Test that META e is checked"""
        with pytest.raises(CodeFileError):
            loads_code("[META]\ne = 1\n[H]\nH1 ZZ\n")

    def test_content_before_section(self):
        """Test that operators need a section"""
        with pytest.raises(CodeFileError) as info:
            loads_code("H1 ZZ\n")
        assert info.value.line == 1

    def test_missing_file(self, tmp_path):
        """Test that unreadable files raise CodeFileError"""
        with pytest.raises(CodeFileError):
            read_code(tmp_path / "missing.code")


class TestOperators:
    """Tests for error set files"""

    def test_bare_lines(self, tmp_path):
        """Test one Pauli per line with comments"""
        path = tmp_path / "errors.txt"
        path.write_text("IIX\n# comment\n\nZZI\n")
        assert [str(op) for op in read_operators(path)] == ["IIX", "ZZI"]

    def test_e_section(self):
        """Test an [E] section"""
        ops = loads_operators("[E]\nE1 I I X\nE2 Z Z I\n")
        assert [str(op) for op in ops] == ["IIX", "ZZI"]

    def test_missing_e_section(self):
        """Test that a table without [E] is rejected"""
        with pytest.raises(CodeFileError):
            loads_operators("[H]\nH1 ZZ\n")

    def test_bad_symbol(self):
        """Test the position of a bad symbol"""
        with pytest.raises(CodeFileError) as info:
            loads_operators("IIX\nIQX\n")
        assert (info.value.line, info.value.column) == (2, 2)


class TestRequests:
    """Tests for construction request serialisation"""

    def test_round_trip(self):
        """Test that a general gauge fixing request survives json"""
        request = hamming_ggf_request(["T4"])
        restored = request_from_dict(request_to_dict(request))
        assert restored.kind == "ggf"
        assert restored.pair_indices == [0]
        assert restored.ea_pair_indices == [1]
        assert restored.transversal_policy == "explicit_list"
        assert restored.explicit_transversal == request.explicit_transversal
        assert restored.gauge_pairs == request.gauge_pairs

    def test_malformed(self):
        """Test that a request without kind is rejected"""
        with pytest.raises(ConstructionError):
            request_from_dict({})


class TestCatalog:
    """Tests for the code catalog"""

    @pytest.mark.parametrize(
        "name,params",
        [
            ("six_qubit_example", "[[6,1;1,2,3]]"),
            ("subsystem_color_code", "[[15,1;6,0,1]]"),
            ("color_code_hybrid_x5z6", "[[15,1;6,0,3]]"),
            ("color_code_hybrid_z131415", "[[15,1;6,0,2]]"),
            ("color_code_clean_qubits_input", "[[15,1;6,0,3]]"),
            ("seven_qubit_non_eacq", "[[7,5;0,1,4]]"),
            ("canonical_eacq_small", "[[5,2;0,1,8]]"),
            ("shortened_hamming_ea_subsystem", "[[10,1;3,2,1]]"),
        ],
    )
    def test_parameters(self, name, params):
        """Test the parameters of each entry"""
        code = catalog(name)
        assert code.name == name
        assert code.parameters().format() == params

    def test_unknown(self):
        """Test that unknown names raise CatalogError"""
        with pytest.raises(CatalogError):
            catalog("nope")

    def test_hamming_matrices(self):
        """Test the shortened Hamming check matrices"""
        assert HAMMING_15.shape == (4, 15)
        assert list(HAMMING_15[:, 0]) == [0, 0, 0, 1]
        h_hs, h_f = shortened_hamming()
        assert h_hs.shape == (4, 10)
        assert list(h_hs[2]) == [1, 1, 0, 0, 1, 1, 0, 0, 1, 1]
        assert list(h_f[2]) == [1, 0, 0, 1, 1, 0, 0, 1, 1, 0]
        assert np.array_equal(h_f[[0, 1, 3]], h_hs[[0, 1, 3]])
