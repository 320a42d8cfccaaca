import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eaoaqec import (
    EacqError,
    GeneratorSet,
    GroupError,
    PauliOperator,
    canonical_eacq_code,
    catalog,
    centralizer_generators,
    coset_set_is_group,
    extract_split,
    group_elements,
    is_eacq_representable,
    lift,
    parse_pauli,
    product,
    quantum_stabilizer_subgroup,
    sq_distance_bound_check,
    transversal_generators,
    validate,
)


@pytest.fixture
def seven_qubit():
    """Create the seven-qubit EA hybrid subspace code without an EACQ form"""
    return catalog("seven_qubit_non_eacq")


@pytest.fixture
def canonical():
    """Create a small canonical EACQ code"""
    return catalog("canonical_eacq_small")


class TestRepresentability:
    """Tests for the EACQ representability decision"""

    def test_seven_qubit_not_representable(self, seven_qubit):
        """Test that the centralizer condition fails for the seven-qubit code"""
        result = is_eacq_representable(seven_qubit)
        assert not result.representable
        assert result.obstruction == "centralizer-condition-fails"
        assert result.describe() == "not representable (condition (8) fails)"
        assert result.split is not None

    def test_canonical_representable(self, canonical):
        """Test that a canonical EACQ code is representable"""
        result = is_eacq_representable(canonical)
        assert result.representable
        assert result.describe() == "representable"
        assert len(result.split.quantum_gens) == 1
        assert len(result.split.classical_gens) == 3
        assert result.to_dict()["obstruction"] == "representable"

    def test_coset_not_group(self):
        """Test that a non-group coset set is rejected first"""
        code = catalog("color_code_hybrid_x5z6")
        assert not coset_set_is_group(code)

    def test_subsystem_code_rejected(self):
        """Test that gauge qubits are outside the EACQ setting"""
        with pytest.raises(EacqError):
            is_eacq_representable(catalog("subsystem_color_code"))

    def test_group_cosets(self, seven_qubit, canonical):
        """Test coset sets generated by transversal groups"""
        assert coset_set_is_group(seven_qubit)
        assert coset_set_is_group(canonical)


class TestSplit:
    """Tests for the quantum/classical split of H"""

    def test_quantum_subgroup(self, seven_qubit):
        """Test that S_Q is generated by S1 S2"""
        sq = quantum_stabilizer_subgroup(seven_qubit)
        expected = GeneratorSet([parse_pauli("ZZXYYXY")])
        assert sq.same_span(expected)

    def test_explicit_generators(self, seven_qubit):
        """Test the split of <S1S2, S2S3, S3>"""
        h = GeneratorSet(
            [parse_pauli("ZZXYYXY"), parse_pauli("IIZIZIZ"), parse_pauli("IIXXXII")]
        )
        split = extract_split(h, transversal_generators(seven_qubit))
        assert [str(op) for op in split.quantum_gens] == ["ZZXYYXY"]
        assert [str(op) for op in split.classical_gens] == ["IIZIZIZ", "IIXXXII"]
        assert [str(op) for op in split.transversal_gens] == ["XIXXIXI", "ZIIZIIZ"]

    def test_split_structure(self, canonical):
        """Test that each classical generator anticommutes with its own transversal generator"""
        split = is_eacq_representable(canonical).split
        for i, c in enumerate(split.classical_gens):
            for j, t in enumerate(split.transversal_gens):
                assert c.commutes(t) == (i != j)
        for q in split.quantum_gens:
            assert all(q.commutes(t) for t in split.transversal_gens)
        union = GeneratorSet(split.quantum_gens + split.classical_gens)
        assert union.same_span(canonical.h_group)

    def test_unpaired_transversal(self):
        """Test that a transversal generator commuting with H is rejected"""
        h = GeneratorSet([parse_pauli("ZI")])
        with pytest.raises(EacqError):
            extract_split(h, [parse_pauli("IX")])


class TestCanonicalCode:
    """Tests for canonical EACQ codes"""

    def test_parameters(self, canonical):
        """Test n = s+e+k and c_b = 2^(c1+2c2)"""
        assert canonical.parameters().format() == "[[5,2;0,1,8]]"

    def test_invalid(self):
        """Test that c1 > s is rejected"""
        with pytest.raises(GroupError):
            canonical_eacq_code(1, 1, 1, 2, 0)


class TestBound:
    """Tests for d(C) >= d(C_SQ)"""

    @pytest.mark.parametrize("name", ["seven_qubit_non_eacq", "canonical_eacq_small"])
    def test_bound_holds(self, name):
        """Test the S_Q distance bound on catalog subspace codes"""
        check = sq_distance_bound_check(catalog(name), cutoff=4)
        assert check.holds is True
        assert check.d_code >= check.d_sq
        assert check.to_dict()["cutoff"] == 4


class TestQuantumSubgroupOracle:
    """Tests of S_Q against enumeration of H"""

    @pytest.mark.parametrize("name", ["seven_qubit_non_eacq", "canonical_eacq_small"])
    def test_against_brute_force(self, name):
        """Test that S_Q holds exactly the elements of H commuting with T_0"""
        code = catalog(name)
        n = code.n
        transversal = code.restricted(code.transversal)
        expected = {
            (h.x, h.z)
            for h in group_elements(code.h_group.generators, n)
            if all(h.commutes(t) for t in transversal)
        }
        sq = quantum_stabilizer_subgroup(code)
        actual = {(g.x, g.z) for g in group_elements(sq.generators, n)}
        assert actual == expected

    def test_normalizer_is_coset_union(self, canonical):
        """Test N(S_Q) = union of T_i T_j Z(H) on all operators of weight <= 2"""
        n = canonical.n
        sq = quantum_stabilizer_subgroup(canonical)
        h = canonical.h_group
        transversal = canonical.restricted(canonical.transversal)
        targets = {
            tuple(h.syndrome(a) ^ h.syndrome(b)) for a in transversal for b in transversal
        }
        ops = [PauliOperator.identity(n)]
        for weight in (1, 2):
            for qubits in itertools.combinations(range(n), weight):
                for cells in itertools.product("XYZ", repeat=weight):
                    ops.append(PauliOperator.from_support(n, dict(zip(qubits, cells))))
        for op in ops:
            assert sq.centralizes(op) == (tuple(h.syndrome(op)) in targets), str(op)


class TestRepresentativeInvariance:
    """Tests that verdicts only depend on the transversal cosets"""

    @settings(max_examples=15, deadline=None)
    @given(
        st.sampled_from(["seven_qubit_non_eacq", "canonical_eacq_small"]),
        st.lists(st.integers(0, (1 << 16) - 1), min_size=8, max_size=8),
    )
    def test_shifted_representatives(self, name, masks):
        """Test representability and S_Q after multiplying T_i by elements of Z(H)"""
        code = catalog(name)
        zs = centralizer_generators(code.h_group)
        N = code.num_qubits
        moved = [code.transversal[0]]
        for i, t in enumerate(code.transversal[1:]):
            mask = masks[i % len(masks)] >> (i // len(masks))
            z = product([g for j, g in enumerate(zs) if (mask >> j) & 1], code.n)
            moved.append((t * lift(z, N)).canonical())
        shifted = code.with_transversal(moved)
        assert validate(shifted).passed
        before, after = is_eacq_representable(code), is_eacq_representable(shifted)
        assert (before.representable, before.obstruction) == (
            after.representable,
            after.obstruction,
        )
        assert quantum_stabilizer_subgroup(shifted).same_span(quantum_stabilizer_subgroup(code))
