"""Tests for gauge fixing, clean qubits, EA gauge fixing and general gauge fixing"""

import pytest
from hypothesis import given, settings, strategies as st
from unittest.mock import Mock

from eaoaqec import (
    ConstructionError,
    ConstructionRequest,
    EaoaqecCode,
    GaugeFixing,
    GeneratorSet,
    GGF_TABLE_ORDER,
    PauliOperator,
    catalog,
    clean_qubits,
    construct,
    css_clean_qubits,
    distance,
    dumps_code,
    ea_gauge_fix,
    find_valid_eq,
    format_pauli,
    gauge_fix,
    general_gauge_fix,
    hamming_ggf_request,
    hamming_regauge,
    in_centralizer,
    logging,
    parse_pauli,
)


@pytest.fixture
def color_code():
    """Create the [[15,1,3;6,0,1]] subsystem color code"""
    return catalog("subsystem_color_code")


@pytest.fixture
def hamming():
    """Create the shortened Hamming EA subsystem code"""
    return catalog("shortened_hamming_ea_subsystem")


def gf_request(pairs, roles=None, **options):
    return ConstructionRequest(kind="gf", pair_indices=pairs, roles=roles, **options)


class TestGaugeFixing:
    """Tests for gauge fixing"""

    def test_color_code(self, color_code):
        """Test [[15,1,3;6,0,1]] -> [[15,1,3;4,0,4]] fixing the first two pairs"""
        result = gauge_fix(color_code, gf_request([0, 1], ["x", "x"], cutoff=4))
        assert result.after.format() == "[[15,1,3;4,0,4]]"
        assert result.collisions == 0
        assert [format_pauli(t) for t in result.code.transversal] == [
            "I" * 15,
            "I" * 11 + "ZZZZ",
            "IIZIIIZIIIZIIIZ",
            "IIZIIIZIIIZZZZI",
        ]
        assert result.status("distance-not-decreased") == "pass"
        assert result.status("distance-equality") == "pass"

    def test_witness_branch(self, color_code):
        """Test that the fixed code's witness lies in one uncorrectable branch"""
        result = gauge_fix(color_code, gf_request([0, 1], ["x", "x"], with_distance=False))
        report = distance(result.code, cutoff=4)
        assert report.d == 3
        assert report.branch in ("normalizer-minus-gauge", "coset-union")
        assert report.branch == result.code.uncorrectable_set().tag(report.witness)

    def test_hybrid_code(self):
        """Test [[15,1,2;6,0,3]] -> [[15,1,2;4,0,12]]"""
        result = gauge_fix(
            catalog("color_code_hybrid_x5z6"), gf_request([0, 1], ["x", "x"], cutoff=4)
        )
        assert result.before.format() == "[[15,1,2;6,0,3]]"
        assert result.after.format() == "[[15,1,2;4,0,12]]"

    def test_default_role_promotes_z(self, color_code):
        """Test that the z-member becomes a stabilizer by default"""
        result = gauge_fix(color_code, gf_request([0], with_distance=False))
        promoted = color_code.gauge_pairs[0].z
        assert result.code.s_group.contains(promoted)
        assert result.after.r == 5
        assert result.after.c_b == 2
        assert result.status("distance-not-decreased") == "inconclusive"

    def test_explicit_transversal_outside_products(self, color_code):
        """Test that an explicit element outside T_0 G_XT fails"""
        request = gf_request(
            [0, 1],
            ["x", "x"],
            transversal_policy="explicit_list",
            explicit_transversal=[PauliOperator.from_support(15, {4: "X", 5: "Z"})],
            with_distance=False,
        )
        with pytest.raises(ConstructionError):
            gauge_fix(color_code, request)

    def test_explicit_transversal(self, color_code):
        """Test that a subset of the products is accepted"""
        z = color_code.gauge_pairs[0].z
        request = gf_request(
            [0, 1],
            ["x", "x"],
            transversal_policy="explicit_list",
            explicit_transversal=[z],
            with_distance=False,
        )
        assert gauge_fix(color_code, request).after.c_b == 2

    @pytest.mark.parametrize(
        "pairs,roles",
        [([0, 0], None), ([6], None), ([0], ["y"]), ([0, 1], ["x"])],
    )
    def test_bad_selection(self, color_code, pairs, roles):
        """Test that bad pair selections and roles are rejected"""
        with pytest.raises(ConstructionError):
            gauge_fix(color_code, gf_request(pairs, roles, with_distance=False))

    def test_failure_is_logged(self, color_code):
        """Test that a failed check logs critical before raising"""
        construction = GaugeFixing(color_code, gf_request([0, 0], with_distance=False))
        construction.log = Mock(spec=logging.Logger)
        with pytest.raises(ConstructionError):
            construction.process()
        construction.log.critical.assert_called_once()

    def test_deterministic(self, color_code):
        """Test that the constructed table does not depend on threads"""
        tables = {
            dumps_code(gauge_fix(color_code, gf_request([0, 1], threads=t, with_distance=False)).code)
            for t in (1, 4)
        }
        assert len(tables) == 1


class TestCleanQubits:
    """Tests for clean qubits"""

    def test_color_code(self):
        """Test [[15,1,2;6,0,3]] -> [[13,1,3;6,2,3]] with E_Q = {1, 2}"""
        result = clean_qubits(catalog("color_code_clean_qubits_input"), [0, 1], cutoff=4)
        assert result.before.format() == "[[15,1,2;6,0,3]]"
        assert result.after.format() == "[[13,1,3;6,2,3]]"
        alice = [format_pauli(g.restrict(range(13))) for g in result.code.s_group]
        assert alice[1] == "XIIXXIIXXIIXX"
        assert alice[5] == "ZIIZZIIZZIIZZ"
        assert result.status("transversal-cosets-preserved") == "pass"
        assert distance(result.code, "noisy_bob", cutoff=4).d == 2

    def test_needs_ebit_free_code(self):
        """Test that codes with ebits are rejected"""
        with pytest.raises(ConstructionError):
            clean_qubits(catalog("six_qubit_example"), [0], with_distance=False)

    def test_dependent_columns(self, color_code):
        """Test that E_Q holding a centralizer element is diagnosed"""
        witness = distance(color_code, cutoff=4).witness
        e_q = list(witness.support)
        with pytest.raises(ConstructionError) as info:
            clean_qubits(color_code, e_q, with_distance=False)
        diagnosis = info.value.diagnosis
        assert diagnosis is not None
        assert not diagnosis.is_identity
        assert set(diagnosis.support) <= set(e_q)
        assert in_centralizer(diagnosis, color_code.s_group)

    @pytest.mark.parametrize("e_q", [[0, 0], [15], list(range(15))])
    def test_bad_selection(self, color_code, e_q):
        """Test duplicate, out of range and exhaustive E_Q"""
        with pytest.raises(ConstructionError):
            clean_qubits(color_code, e_q, with_distance=False)


class TestCssCleanQubits:
    """Tests for the CSS form of clean qubits"""

    def test_color_code(self, color_code):
        """Test that the first pivots become ebits"""
        result = css_clean_qubits(color_code, 2, with_distance=False)
        code = result.code
        assert (code.n, code.e, code.r, code.k, code.c_b) == (13, 2, 6, 1, 1)

    def test_all_pivots(self, color_code):
        """Test that every pivot can become an ebit"""
        result = css_clean_qubits(color_code, 4, with_distance=False)
        assert result.after.format() == "[[11,1;6,4,1]]"

    def test_too_many_ebits(self, color_code):
        """Test that e above rank(H) is rejected"""
        with pytest.raises(ConstructionError):
            css_clean_qubits(color_code, 5, with_distance=False)

    def test_not_css(self):
        """Test that mixed generators are rejected"""
        code = EaoaqecCode.from_group([parse_pauli("XZ"), parse_pauli("ZX")])
        with pytest.raises(ConstructionError):
            css_clean_qubits(code, 1, with_distance=False)

    def test_unequal_check_matrices(self):
        """Test that H_X and H_Z must share a row space"""
        code = EaoaqecCode.from_group([parse_pauli("XXII"), parse_pauli("ZZZZ")])
        with pytest.raises(ConstructionError):
            css_clean_qubits(code, 1, with_distance=False)


class TestFindValidEq:
    """Tests for E_Q search"""

    def test_high_centralizer_weight(self, color_code):
        """Test that any pair works when Z(S) has no element of weight <= 2"""
        assert find_valid_eq(color_code, 2, limit=3) == [(0, 1), (0, 2), (0, 3)]

    def test_weight_one_centralizer(self):
        """Test that no qubit of <Z1> on four qubits is usable"""
        code = EaoaqecCode.from_group([parse_pauli("ZIII")])
        assert find_valid_eq(code, 1) == []

    def test_invalid_e(self, color_code):
        """Test that e must be positive"""
        with pytest.raises(ConstructionError):
            find_valid_eq(color_code, 0)


class TestEaGaugeFixing:
    """Tests for EA gauge fixing"""

    def test_hybrid_code(self):
        """Test [[15,1,1;6,0,2]] -> [[15,1,3;5,1,2]] on the first pair"""
        result = ea_gauge_fix(catalog("color_code_hybrid_z131415"), [0], cutoff=4)
        assert result.before.format() == "[[15,1,1;6,0,2]]"
        assert result.after.format() == "[[15,1,3;5,1,2]]"
        assert result.status("distance-not-decreased") == "pass"
        assert result.status("distance-equality") == "not-run"
        with pytest.raises(KeyError):
            result.check("distance-equality")

    def test_new_ebits_trail(self, color_code):
        """Test that pair j gains ebit n+e+j"""
        result = ea_gauge_fix(color_code, [2, 4], with_distance=False)
        code = result.code
        assert code.e == 2
        assert code.num_qubits == 17
        pair = color_code.gauge_pairs[2]
        assert format_pauli(code.s_group[8]) == format_pauli(pair.z) + "ZI"
        assert format_pauli(code.s_group[9]) == format_pauli(pair.x) + "XI"

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.integers(0, 5), min_size=1, max_size=3, unique=True))
    def test_distance_never_decreases(self, indices):
        """Test that EA gauge fixing keeps the distance of the color code"""
        result = ea_gauge_fix(catalog("subsystem_color_code"), indices, cutoff=4)
        assert result.after.e == len(indices)
        assert result.status("distance-not-decreased") == "pass"
        assert result.before.d == 3
        assert result.after.d == 3


class TestGeneralGaugeFixing:
    """Tests for general gauge fixing on the shortened Hamming code"""

    def test_parameters(self, hamming):
        """Test [[10,1,3;1,3,4]] and the stabilizer rows"""
        result = general_gauge_fix(hamming, hamming_ggf_request(cutoff=4))
        assert result.after.format() == "[[10,1,3;1,3,4]]"
        expected = [
            "ZIIZZIIZZIZII",
            "IZIZIZIZIZIZI",
            "ZIZIZIIIIIIIZ",
            "XIIXXIIXXIXII",
            "IXIXIXIXIXIXI",
            "XIXIXIIIIIIIX",
            "IIIIIIXXXXIII",
            "IIXXXXIIIIIII",
            "IIIIIIZZZZIII",
            "IIZZZZIIIIIII",
            "ZZZZIIIIIIIII",
        ]
        rows = [format_pauli(result.code.s_group[i]) for i in GGF_TABLE_ORDER]
        assert rows == expected

    def test_remaining_gauge_pair(self, hamming):
        """Test that the third re-paired gauge pair survives"""
        result = general_gauge_fix(hamming, hamming_ggf_request(with_distance=False))
        code = result.code
        assert code.r == 1
        x, z = code.restricted(code.gauge_pairs[0])
        assert format_pauli(x) == "XXXXIIIIII"
        assert format_pauli(z) == "ZIZZIIIZZI"

    def test_syndrome_table(self, hamming):
        """Test the syndromes of T_0 in published row order"""
        result = general_gauge_fix(hamming, hamming_ggf_request(with_distance=False))
        ordered = GeneratorSet([result.code.s_group[i] for i in GGF_TABLE_ORDER])
        table = [
            "".join(str(b) for b in ordered.syndrome(t)) for t in result.code.transversal
        ]
        assert table == ["00000000000", "00000000001", "00100000001", "00000100000"]

    def test_extra_transversal_in_product_cosets(self, hamming):
        """Test that T4 keeps the distance with five bit strings"""
        result = general_gauge_fix(hamming, hamming_ggf_request(["T4"], cutoff=4))
        assert result.after.format() == "[[10,1,3;1,3,5]]"
        assert result.status("transversal-within-product-cosets") == "pass"

    def test_extra_transversal_outside_product_cosets(self, hamming):
        """Test that T5 is rejected unless allowed, and then lowers the distance"""
        with pytest.raises(ConstructionError):
            general_gauge_fix(hamming, hamming_ggf_request(["T5"], with_distance=False))
        request = hamming_ggf_request(["T5"], allow_outside=True, cutoff=4)
        result = general_gauge_fix(hamming, request)
        assert result.after.format() == "[[10,1,2;1,3,5]]"
        assert result.status("transversal-within-product-cosets") == "fail"
        assert result.status("distance-not-decreased") == "inconclusive"

    def test_explicit_transversal_outside_products(self, hamming):
        """Test that an arbitrary extra element raises like gauge fixing does"""
        request = hamming_ggf_request(with_distance=False)
        request.explicit_transversal.append(parse_pauli("IIIIIZIIII"))
        with pytest.raises(ConstructionError, match="outside"):
            general_gauge_fix(hamming, request)

    def test_overlap(self, hamming):
        """Test that a pair cannot be fixed both ways"""
        request = hamming_ggf_request(with_distance=False)
        request.ea_pair_indices = [0]
        with pytest.raises(ConstructionError):
            general_gauge_fix(hamming, request)

    def test_regauge_count(self, hamming):
        """Test that a re-pairing must keep every pair"""
        request = hamming_ggf_request(with_distance=False)
        request.gauge_pairs = hamming_regauge()[:2]
        with pytest.raises(ConstructionError):
            general_gauge_fix(hamming, request)


def test_construct_dispatch(color_code):
    """Test dispatch by kind and unknown kinds"""
    result = construct(color_code, ConstructionRequest(kind="eagf", pair_indices=[0], with_distance=False))
    assert result.kind == "eagf"
    assert result.to_dict()["after"]["e"] == 1
    with pytest.raises(ConstructionError):
        construct(color_code, ConstructionRequest(kind="nope"))
