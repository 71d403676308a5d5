import itertools
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Rational
from sympy.physics.wigner import wigner_6j

from su2qec.codes import auto_dots
from su2qec.lattice import build_chain, build_honeycomb
from su2qec.su2 import (
    SizeError,
    build_code1_logical_hamiltonian,
    build_code2_logical_hamiltonian,
    build_ks_hamiltonian,
    code1_lattice_logical_hamiltonian,
    code2_physical_indices,
    compare_code1_chain,
    compare_code2,
    gauss_project,
    physical_indices,
    plaquette_element,
    sector_leakage,
    sixj,
    sixj_exact,
    spectrum_compare,
    vertex_parity_masks,
    winding_sectors,
)

GOLDEN = Path(__file__).parent / "golden"
H = Fraction(1, 2)


def _oracle(twice):
    try:
        return float(wigner_6j(*[Rational(t, 2) for t in twice]))
    except ValueError:  # sympy raises on triangle violations
        return 0.0


def test_sixj_examples():
    assert sixj(H, 0, 1, H, H, H) == 0
    assert sixj(0, 0, 0, H, H, H) == pytest.approx(-1 / math.sqrt(2), abs=1e-15)
    assert sixj(H, H, 0, H, H, 1) == pytest.approx(0.5, abs=1e-15)


def test_sixj_exact_form():
    v = sixj_exact(0, 0, 0, H, H, H)
    assert v.square == Fraction(1, 2) and v.sign == -1


def test_sixj_against_sympy_small_grid():
    for twice in itertools.product(range(3), repeat=6):
        j = [Fraction(t, 2) for t in twice]
        assert sixj(*j) == pytest.approx(_oracle(twice), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=6, max_size=6), st.permutations(range(3)))
def test_sixj_symmetries(twice, perm):
    j = [Fraction(t, 2) for t in twice]
    base = sixj(*j)
    top, bot = j[:3], j[3:]
    permuted = [top[p] for p in perm] + [bot[p] for p in perm]
    assert sixj(*permuted) == pytest.approx(base, abs=1e-12)
    # swap upper and lower entries in two columns
    swapped = [bot[0], bot[1], top[2], top[0], top[1], bot[2]]
    assert sixj(*swapped) == pytest.approx(base, abs=1e-12)


def test_sixj_rejects_negative_and_non_half_integers():
    with pytest.raises(ValueError):
        sixj(-H, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        sixj(Fraction(1, 3), 0, 0, 0, 0, 0)


def test_single_plaquette_element():
    lat = build_chain(1)
    assert plaquette_element(lat, 0, "1111", "0000") == pytest.approx(1.0, abs=1e-15)
    assert plaquette_element(lat, 0, "0000", "1111") == pytest.approx(1.0, abs=1e-15)


def test_plaquette_element_zero_when_external_differs():
    lat = build_chain(2)
    p0 = lat.plaquettes[0]
    outside = next(l for l in range(lat.n_links) if l not in p0.links)
    ket = ["0"] * lat.n_links
    bra = ket.copy()
    bra[outside] = "1"
    assert plaquette_element(lat, 0, "".join(bra), "".join(ket)) == 0.0


def test_ks_single_plaquette_entries():
    Hm = build_ks_hamiltonian(build_chain(1), g2=1.0, a=1.0).dense()
    assert Hm[15, 15] == pytest.approx(1.5)
    assert Hm[15, 0] == pytest.approx(-2.0)
    assert Hm.shape == (16, 16)


def test_ks_dimension_and_symmetry():
    op = build_ks_hamiltonian(build_chain(2))
    assert op.dim == 128
    assert op.is_hermitian()
    assert np.isrealobj(op.dense())


def test_ks_size_cap():
    with pytest.raises(SizeError):
        build_ks_hamiltonian(build_chain(6))


@pytest.mark.parametrize("lat,count", [(build_chain(1), 2), (build_chain(2), 4), (build_chain(3, "periodic"), 16)])
def test_physical_state_counts(lat, count):
    assert len(physical_indices(lat)) == count


def test_single_plaquette_physical_states():
    op = gauss_project(build_chain(1), build_ks_hamiltonian(build_chain(1)))
    assert op.labels == ["0000", "1111"]


@pytest.mark.parametrize("lat", [build_chain(1), build_chain(2), build_chain(2, "periodic")])
def test_magnetic_term_preserves_gauss_sector(lat):
    op = build_ks_hamiltonian(lat)
    assert sector_leakage(op, physical_indices(lat)) == 0.0


def test_every_element_preserves_vertex_parities():
    lat = build_chain(2)
    m = build_ks_hamiltonian(lat).matrix.tocoo()
    for mask in vertex_parity_masks(lat):
        rows = np.bitwise_count(m.row & mask) % 2
        cols = np.bitwise_count(m.col & mask) % 2
        assert np.array_equal(rows, cols)


def test_code1_logical_n1_matrix():
    golden = json.loads((GOLDEN / "spectra.json").read_text())["N1"]
    Hm = build_code1_logical_hamiltonian(1, g2=1.0, a=1.0).dense()
    assert np.allclose(Hm, golden["matrix"])
    assert np.allclose(Hm, [[0, -2], [-2, 1.5]])


def test_code1_logical_closed_form_n1():
    ev = sorted(build_code1_logical_hamiltonian(1).eigenvalues())
    root = math.sqrt(9 / 16 + 4)
    assert ev == pytest.approx([0.75 - root, 0.75 + root], abs=1e-12)


def test_code1_logical_n2_golden():
    golden = json.loads((GOLDEN / "spectra.json").read_text())["N2"]
    ev = sorted(build_code1_logical_hamiltonian(2).eigenvalues())
    assert ev == pytest.approx(golden["eigenvalues"], abs=1e-10)


def test_code1_logical_terms():
    N, g2 = 3, 1.3
    Hm = build_code1_logical_hamiltonian(N, g2=g2, a=1e8).dense()
    # fully excited: (3g^2/2) N - (3g^2/4)(N-1)
    assert Hm[-1, -1] == pytest.approx(1.5 * g2 * N - 0.75 * g2 * (N - 1))
    # isolated excitations only see the first term
    assert Hm[0b101, 0b101] == pytest.approx(1.5 * g2 * 2)


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("g2", [0.5, 1.0, 2.0])
def test_spectrum_equivalence_aperiodic(N, g2):
    rep = compare_code1_chain(N, "aperiodic", g2)["all"]
    assert rep.passed, rep.max_abs_diff


@pytest.mark.parametrize("N", [2, 3, 4])
def test_spectrum_equivalence_periodic_sectors(N):
    reps = compare_code1_chain(N, "periodic", 1.0)
    assert set(reps) == {"winding0", "winding1"}
    for rep in reps.values():
        assert rep.dim_a == 2**N
        assert rep.passed, rep.max_abs_diff


def test_winding_sectors_partition():
    lat = build_chain(3, "periodic")
    phys = gauss_project(lat, build_ks_hamiltonian(lat))
    secs = winding_sectors(lat, phys)
    assert secs[0].dim + secs[1].dim == phys.dim
    # no magnetic matrix element crosses sectors
    idx0 = [phys.labels.index(l) for l in secs[0].labels]
    idx1 = [phys.labels.index(l) for l in secs[1].labels]
    assert np.all(phys.dense()[np.ix_(idx0, idx1)] == 0)


def test_honeycomb_single_hexagon():
    lat = build_honeycomb(1, 1)
    phys = gauss_project(lat, build_ks_hamiltonian(lat))
    rep = spectrum_compare(phys, code1_lattice_logical_hamiltonian(lat))
    assert rep.passed


def test_honeycomb_two_hexagons():
    lat = build_honeycomb(2, 1)
    phys = gauss_project(lat, build_ks_hamiltonian(lat))
    assert spectrum_compare(phys, code1_lattice_logical_hamiltonian(lat)).passed


def test_code2_electric_single_dot_values():
    lat = build_chain(4, "periodic")
    op = build_code2_logical_hamiltonian(lat, g2=1.0, a=1e8)
    d = np.diag(op.dense())
    assert d[0] == pytest.approx(0.0)
    # |11> on dot 0 only: two excited links
    assert d[0b11 << 6] == pytest.approx(0.75)
    assert op.meta["electric_prefactor"] == pytest.approx(3 / 16)


def test_code2_spectrum_periodic_chain():
    rep, leak = compare_code2(build_chain(4, "periodic"))
    assert rep.dim_a == rep.dim_b == 32
    assert rep.passed
    assert leak == 0.0


@pytest.mark.parametrize("g2", [0.5, 2.0])
def test_code2_spectrum_couplings(g2):
    rep, _ = compare_code2(build_chain(4, "periodic"), g2=g2)
    assert rep.passed


def test_code2_spectrum_periodic_honeycomb():
    rep, leak = compare_code2(build_honeycomb(2, 2, "periodic"))
    assert rep.passed and leak == 0.0


def test_code2_subsector_size():
    lat = build_chain(4, "periodic")
    assert len(code2_physical_indices(lat, auto_dots(lat))) == 32


def test_spectrum_compare_dimension_mismatch():
    a = build_code1_logical_hamiltonian(1)
    b = build_code1_logical_hamiltonian(2)
    rep = spectrum_compare(a, b)
    assert not rep.passed and rep.max_abs_diff is None
