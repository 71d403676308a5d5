import pytest

from su2qec.codes import (
    CARBON_LABELS,
    DotAssignmentError,
    StabilizerCode,
    auto_dots,
    bottom_string,
    build_code1,
    build_code2,
    carbon_code,
    code_422,
    format_qubit_cost,
    qubit_cost,
    topological_logical,
    vertex_block_code,
)
from su2qec.lattice import build_chain, build_honeycomb
from su2qec.pauli import PauliString, commutes, distance, in_group


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_code1_aperiodic_chain_parameters(N):
    code = build_code1(build_chain(N))
    assert (code.n, code.k) == (9 * N + 3, N)
    counts = code.stabilizer_counts()
    assert counts["x_stabs"] == 6 * N + 2
    assert counts["z_stabs"] == 2 * N + 1


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_code1_periodic_chain_parameters(N):
    code = build_code1(build_chain(N, "periodic"))
    assert (code.n, code.k) == (9 * N, N + 1)


@pytest.mark.parametrize("nx,ny", [(1, 1), (2, 1), (2, 2), (3, 3)])
def test_code1_honeycomb_parameters(nx, ny):
    code = build_code1(build_honeycomb(nx, ny))
    assert code.n == 3 * (3 * nx * ny + 2 * nx + 2 * ny - 1)
    assert code.k == nx * ny


def test_code1_periodic_honeycomb_parameters():
    code = build_code1(build_honeycomb(2, 2, "periodic"))
    assert (code.n, code.k) == (36, 5)


def test_vertex_block():
    code = vertex_block_code()
    assert (code.n, code.k) == (9, 2)
    assert len(code.generators) == 7


def test_code1_logicals_on_named_plaquette():
    # plaquette 2 of the 5-plaquette chain: Z on its top link, X around its boundary
    lat = build_chain(5)
    code = build_code1(lat)
    p = lat.plaquettes[2]
    top = p.link("top")
    assert code.logical_zs[2] == PauliString.from_support(code.n, "Z", [3 * top, 3 * top + 1, 3 * top + 2])
    assert code.logical_xs[2] == PauliString.from_support(code.n, "X", [3 * l for l in p.links])


def test_code1_distances_small():
    assert distance(build_code1(build_chain(1)).generators, 3).distance == 3
    assert distance(build_code1(build_chain(2)).generators, 3).distance == 3


def test_periodic_two_chain_has_weight_two_logical():
    # the two bottom links join the same vertices, so X on one slot of each is a logical
    lat = build_chain(2, "periodic")
    code = build_code1(lat)
    res = distance(code.generators, 3)
    assert res.distance == 2


@pytest.mark.parametrize("N", [2, 3, 4])
def test_topological_logical_periodic(N):
    lat = build_chain(N, "periodic")
    code = build_code1(lat)
    op = topological_logical(code, lat)
    assert all(commutes(op, g) for g in code.generators)
    assert not in_group(op, code.generators)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_topological_operator_breaks_on_aperiodic(N):
    lat = build_chain(N)
    code = build_code1(lat)
    op = bottom_string(lat)
    assert not all(commutes(op, g) for g in code.generators)
    with pytest.raises(ValueError):
        topological_logical(code, lat)


def test_code_422():
    code = code_422()
    assert (code.n, code.k) == (4, 2)
    assert distance(code.generators, 2).distance == 2


def test_carbon_code():
    code = carbon_code()
    assert (code.n, code.k) == (12, 2)
    assert len(code.generators) == 10
    assert CARBON_LABELS[:3] == ["1", "1'", "1''"]


def test_code2_periodic_chain():
    code = build_code2(build_chain(4, "periodic"))
    assert (code.n, code.k) == (48, 8)


def test_code2_periodic_honeycomb():
    code = build_code2(build_honeycomb(2, 2, "periodic"))
    assert (code.n, code.k) == (48, 8)


def test_code2_rejects_odd_periodic_chain():
    with pytest.raises(DotAssignmentError):
        build_code2(build_chain(3, "periodic"))


def test_code2_rejects_degree_two_dots():
    with pytest.raises(DotAssignmentError):
        auto_dots(build_chain(3))


def test_json_roundtrip():
    code = build_code1(build_chain(2))
    back = StabilizerCode.from_json(code.to_json())
    assert back.n == code.n and back.k == code.k
    assert list(back.generators) == list(code.generators)
    back.check()


def test_qubit_cost_arithmetic():
    c = qubit_cost(5)
    assert c["code1"] == 48
    assert c["five_qubit_per_link_approx"] == 75
    assert c["code2_approx"] == 60
    assert "9N+3" in format_qubit_cost(5)
