import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su2qec.codes import carbon_code, carbon_generators, code_422
from su2qec.pauli import (
    CheckMatrix,
    DimensionError,
    GeneratorSet,
    InvalidStabilizerError,
    PauliString,
    commutes,
    distance,
    gf2_rank,
    group_sign,
    in_group,
    logical_partners,
    multiply,
    product,
    standard_form,
)

GOLDEN = Path(__file__).parent / "golden"


def paulis(n):
    return st.builds(
        lambda x, z, ph: PauliString(n, x, z, ph),
        st.integers(0, 2**n - 1),
        st.integers(0, 2**n - 1),
        st.integers(0, 3),
    )


def test_from_str_roundtrip():
    for text in ["+XZIY", "-iXX", "+iZ", "-YYY", "+IIII"]:
        assert str(PauliString.from_str(text)) == text
    assert str(PauliString.from_str("XZ")) == "+XZ"


def test_from_str_rejects_bad_letters():
    with pytest.raises(ValueError):
        PauliString.from_str("XQ")


def test_single_qubit_products():
    X, Y, Z = (PauliString.from_str(c) for c in "XYZ")
    assert multiply(X, Z) == PauliString.from_str("-iY")
    assert multiply(Z, X) == PauliString.from_str("+iY")
    assert multiply(X, Y) == PauliString.from_str("+iZ")
    assert multiply(Y, Y) == PauliString.identity(1)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        multiply(PauliString.from_str("X"), PauliString.from_str("XX"))
    with pytest.raises(DimensionError):
        commutes(PauliString.from_str("X"), PauliString.from_str("XX"))


@settings(max_examples=200, deadline=None)
@given(paulis(3), paulis(3))
def test_product_matches_matrices(p, q):
    assert np.allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix())


@settings(max_examples=200, deadline=None)
@given(paulis(4), paulis(4), paulis(4))
def test_product_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@settings(max_examples=200, deadline=None)
@given(paulis(3), paulis(3))
def test_commutation_matches_matrices(p, q):
    a, b = p.to_matrix(), q.to_matrix()
    assert commutes(p, q) == np.allclose(a @ b, b @ a)


@settings(max_examples=100, deadline=None)
@given(paulis(5))
def test_symplectic_roundtrip(p):
    assert PauliString.from_symplectic(5, p.symplectic, p.phase) == p


def test_two_qubit_commutation_examples():
    assert commutes(PauliString.from_str("XX"), PauliString.from_str("ZZ"))
    assert not commutes(PauliString.from_str("XI"), PauliString.from_str("ZI"))


def _gf2_rank_bruteforce(rows):
    # size of the span, by closure
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2**8 - 1), min_size=1, max_size=6))
def test_gf2_rank_against_span_size(rows):
    m = np.array([[r >> i & 1 for i in range(8)] for r in rows], dtype=np.uint8)
    assert gf2_rank(m) == _gf2_rank_bruteforce(rows)


def test_check_matrix_json_roundtrip():
    cm = carbon_code().generators.check_matrix()
    back = CheckMatrix.from_json(cm.to_json())
    assert np.array_equal(back.matrix, cm.matrix)
    d = json.loads(cm.to_json())
    assert set(d) >= {"x_block", "z_block"}


def test_validate_rejects_anticommuting():
    with pytest.raises(InvalidStabilizerError):
        GeneratorSet.from_strs(["XI", "ZI"]).validate()


def test_validate_rejects_minus_identity():
    with pytest.raises(InvalidStabilizerError):
        GeneratorSet.from_strs(["ZZ", "-ZZ"]).validate()


def test_group_membership_and_sign():
    g = code_422().generators
    assert in_group(PauliString.from_str("XXXX"), g)
    assert group_sign(PauliString.from_str("YYYY"), g) == 1  # XXXX * ZZZZ = YYYY
    assert not in_group(PauliString.from_str("XXII"), g)


def test_carbon_standard_form_matches_golden():
    golden = json.loads((GOLDEN / "carbon_check_matrix.json").read_text())
    sf = standard_form(carbon_code().generators)
    assert sf.x_rank == golden["x_rank"]
    assert list(sf.permutation) == list(range(12))
    assert sf.check_matrix.x_block.tolist() == golden["x_block"]
    assert sf.check_matrix.z_block.tolist() == golden["z_block"]


def test_carbon_standard_form_logicals():
    sf = standard_form(carbon_code().generators)
    # labels 1,1',1'',2,...,4'' -> qubits 0..11
    assert sf.logical_xs[0] == PauliString.from_support(12, "X", [6, 7, 9, 10])
    assert sf.logical_xs[1] == PauliString.from_support(12, "X", [6, 8, 9, 11])
    assert sf.logical_zs[0] == PauliString.from_support(12, "Z", [0, 1, 3, 10])
    assert sf.logical_zs[1] == PauliString.from_support(12, "Z", [1, 2, 4, 11])


def test_standard_form_spans_same_group():
    g = GeneratorSet(12, tuple(carbon_generators()))
    sf = standard_form(g)
    for row in sf.check_matrix.to_paulis():
        assert in_group(row, g) or in_group(-row, g)


def test_logical_partners_pairs():
    g = code_422().generators
    xs = [PauliString.from_str("XXII"), PauliString.from_str("IXXI")]
    zs = logical_partners(g, xs)
    for i, x in enumerate(xs):
        for j, z in enumerate(zs):
            assert commutes(x, z) == (i != j)
        assert all(commutes(z, s) for s in g)


def test_carbon_distance_and_enumeration_count():
    res = distance(carbon_code().generators, 4)
    assert res.distance == 4
    assert res.enumerated == 6570
    assert res.witness.weight == 4


def test_422_distance():
    assert distance(code_422().generators, 2).distance == 2


def test_product_helper():
    ps = [PauliString.from_str(s) for s in ["XI", "IX", "ZZ"]]
    assert product(ps, 2) == PauliString.from_str("XX") * PauliString.from_str("ZZ")
