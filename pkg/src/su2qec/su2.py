"""Truncated (j_max = 1/2) SU(2) Kogut-Susskind Hamiltonian and its logical-qubit forms.

Electric basis states are bit strings over links: bit ``l`` is 1 when link
``l`` carries j = 1/2. Basis index = ``int(label, 2)``, so link 0 is the most
significant bit, matching the qubit ordering of the state-vector simulator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .codes import DotAssignment, auto_dots
from .lattice import Lattice, build_chain

MAX_KS_LINKS = 16
MAX_LOGICAL_QUBITS = 16
ELECTRIC_PER_LINK = Fraction(3, 4)  # j(j+1) at j = 1/2


class SizeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Wigner 6-j symbol
# ---------------------------------------------------------------------------


def _twice(j) -> int:
    t = Fraction(j) * 2
    if t.denominator != 1:
        raise ValueError(f"{j} is not a half-integer")
    if t < 0:
        raise ValueError(f"negative angular momentum {j}")
    return int(t)


@dataclass(frozen=True)
class SixJInput:
    """Six angular momenta stored as integer twice-values."""

    twice: tuple[int, int, int, int, int, int]

    @classmethod
    def of(cls, j1, j2, j3, j4, j5, j6) -> "SixJInput":
        return cls(tuple(_twice(j) for j in (j1, j2, j3, j4, j5, j6)))


@dataclass(frozen=True)
class SixJValue:
    """Exact value ``rational * sqrt(radicand)``."""

    rational: Fraction
    radicand: Fraction

    @property
    def square(self) -> Fraction:
        return self.rational**2 * self.radicand

    @property
    def sign(self) -> int:
        return (self.rational > 0) - (self.rational < 0)

    def __float__(self) -> float:
        return float(self.rational) * math.sqrt(self.radicand)


def _triangle(a: int, b: int, c: int) -> bool:
    """Triangle condition on twice-values."""
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def _delta_sq(a: int, b: int, c: int) -> Fraction:
    f = math.factorial
    return Fraction(f((a + b - c) // 2) * f((a - b + c) // 2) * f((-a + b + c) // 2), f((a + b + c) // 2 + 1))


@lru_cache(maxsize=None)
def _sixj_twice(a: int, b: int, c: int, d: int, e: int, ff: int) -> SixJValue:
    zero = SixJValue(Fraction(0), Fraction(1))
    triads = ((a, b, c), (a, e, ff), (d, b, ff), (d, e, c))
    if not all(_triangle(*t) for t in triads):
        return zero
    radicand = Fraction(1)
    for t in triads:
        radicand *= _delta_sq(*t)
    sums = [sum(t) // 2 for t in triads]
    pairs = [(a + b + d + e) // 2, (a + c + d + ff) // 2, (b + c + e + ff) // 2]
    f = math.factorial
    total = Fraction(0)
    for t in range(max(sums), min(pairs) + 1):
        den = 1
        for s in sums:
            den *= f(t - s)
        for p in pairs:
            den *= f(p - t)
        total += Fraction((-1) ** t * f(t + 1), den)
    return SixJValue(total, radicand)


def sixj_exact(j1, j2, j3, j4, j5, j6) -> SixJValue:
    """{j1 j2 j3; j4 j5 j6} by the Racah sum in exact rational arithmetic."""
    return _sixj_twice(*SixJInput.of(j1, j2, j3, j4, j5, j6).twice)


def sixj(j1, j2, j3, j4, j5, j6) -> float:
    return float(sixj_exact(j1, j2, j3, j4, j5, j6))


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


@dataclass
class OperatorMatrix:
    labels: list[str]
    matrix: np.ndarray | sp.spmatrix
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        m = self.matrix
        return m.toarray() if sp.issparse(m) else np.asarray(m)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        m = self.dense()
        return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)

    def restrict(self, indices, labels=None) -> "OperatorMatrix":
        idx = np.asarray(indices, dtype=int)
        m = self.matrix.tocsr()[idx][:, idx] if sp.issparse(self.matrix) else self.matrix[np.ix_(idx, idx)]
        sub = m.toarray() if sp.issparse(m) else m
        return OperatorMatrix(list(labels) if labels is not None else [self.labels[i] for i in idx], sub, dict(self.meta))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.dense())


def _labels(n_bits: int) -> list[str]:
    return [format(i, f"0{n_bits}b") for i in range(2**n_bits)] if n_bits else [""]


def _bit(config: int, pos: int, n_bits: int) -> int:
    return config >> (n_bits - 1 - pos) & 1


def _mask(positions, n_bits: int) -> int:
    m = 0
    for p in positions:
        m |= 1 << (n_bits - 1 - p)
    return m


def _magnetic_coupling(g2: float, a: float) -> float:
    return 2.0 / (a * a * g2)


# ---------------------------------------------------------------------------
# Kogut-Susskind side
# ---------------------------------------------------------------------------


def _corner_externals(lat: Lattice, p) -> list[int | None]:
    """External link at the vertex joining internal links alpha and alpha+1."""
    m = len(p.links)
    return [lat.external_link(p, (alpha + 1) % m) for alpha in range(m)]


def plaquette_element(lat: Lattice, p: int, bra: str, ket: str) -> float:
    """<bra| plaquette |ket> in the truncated electric basis.

    Each internal link alpha contributes
    (-1)^(j+J+je) sqrt((2j+1)(2J+1)) {je j j'; 1/2 J' J}, with j' the next
    internal link around the plaquette and je the external link at the vertex
    they share (0 at degree-2 corners). Phases are tracked as exact powers of
    i and the product must be real.
    """
    plaq = lat.plaquettes[p]
    inside = set(plaq.links)
    if len(bra) != lat.n_links or len(ket) != lat.n_links:
        raise ValueError("basis labels must have one bit per link")
    if any(bra[l] != ket[l] for l in range(lat.n_links) if l not in inside):
        return 0.0
    ext = _corner_externals(lat, plaq)
    return _local_element(
        tuple(int(ket[l]) for l in plaq.links),
        tuple(int(bra[l]) for l in plaq.links),
        tuple(0 if e is None else int(ket[e]) for e in ext),
    )


@lru_cache(maxsize=None)
def _local_element(js: tuple[int, ...], Js: tuple[int, ...], jes: tuple[int, ...]) -> float:
    m = len(js)
    i_power = 0
    square = Fraction(1)
    sign = 1
    for alpha in range(m):
        nxt = (alpha + 1) % m
        j, J, je = js[alpha], Js[alpha], jes[alpha]
        j1, J1 = js[nxt], Js[nxt]
        # twice-values are the bits themselves since j in {0, 1/2}
        six = _sixj_twice(je, j, j1, 1, J1, J)
        if six.rational == 0:
            return 0.0
        i_power += j + J + je  # (-1)^(x/2) = i^x
        square *= (j + 1) * (J + 1) * six.square
        sign *= six.sign
    i_power %= 4
    if i_power % 2:
        raise ArithmeticError(f"plaquette element is not real for j={js} J={Js} je={jes}")
    if i_power == 2:
        sign = -sign
    return sign * math.sqrt(square)


def build_ks_hamiltonian(lat: Lattice, g2: float = 1.0, a: float = 1.0) -> OperatorMatrix:
    """H = (g^2/2) sum_links E^2 - 2/(a^2 g^2) sum_plaquettes box, as a sparse matrix."""
    L = lat.n_links
    if L > MAX_KS_LINKS:
        raise SizeError(f"{L} links exceeds the {MAX_KS_LINKS}-link cap for the full electric basis")
    dim = 2**L
    idx = np.arange(dim)
    n_exc = np.bitwise_count(idx).astype(float)
    diag = 0.5 * g2 * float(ELECTRIC_PER_LINK) * n_exc
    rows, cols, vals = [idx], [idx], [diag]
    coup = _magnetic_coupling(g2, a)
    for plaq in lat.plaquettes:
        ext = _corner_externals(lat, plaq)
        flip = _mask(plaq.links, L)
        ket_bits = [np.asarray((idx >> (L - 1 - l)) & 1) for l in plaq.links]
        ext_bits = [np.zeros(dim, dtype=int) if e is None else (idx >> (L - 1 - e)) & 1 for e in ext]
        # the element depends only on the plaquette and corner links
        local = np.zeros(dim, dtype=int)
        for b in ket_bits + ext_bits:
            local = (local << 1) | b
        m = len(plaq.links)
        table = {}
        for key in np.unique(local):
            js = tuple(int(key) >> (2 * m - 1 - i) & 1 for i in range(m))
            jes = tuple(int(key) >> (m - 1 - i) & 1 for i in range(m))
            Js = tuple(1 - j for j in js)
            table[int(key)] = _local_element(js, Js, jes)
        elem = np.array([table[int(k)] for k in local])
        nz = elem != 0
        rows.append(idx[nz] ^ flip)
        cols.append(idx[nz])
        vals.append(-coup * elem[nz])
    H = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )
    return OperatorMatrix(
        _labels(L), H, {"model": "kogut-susskind", "lattice": lat.kind, "size": list(lat.size), "g2": g2, "a": a}
    )


def vertex_parity_masks(lat: Lattice) -> list[int]:
    L = lat.n_links
    return [_mask(lat.incident(v), L) for v in range(lat.n_vertices)]


def physical_indices(lat: Lattice) -> np.ndarray:
    """Electric basis states with an even number of excited links at every vertex."""
    idx = np.arange(2**lat.n_links)
    ok = np.ones(idx.size, dtype=bool)
    for m in vertex_parity_masks(lat):
        ok &= np.bitwise_count(idx & m) % 2 == 0
    return idx[ok]


def gauss_project(lat: Lattice, H: OperatorMatrix) -> OperatorMatrix:
    keep = physical_indices(lat)
    out = H.restrict(keep)
    out.meta["sector"] = "gauss"
    return out


def winding_label(lat: Lattice, config: int) -> int:
    """Topological sector of a physical periodic-chain state: bottom xor top link of plaquette 0."""
    p0 = lat.plaquettes[0]
    L = lat.n_links
    return _bit(config, p0.link("bottom"), L) ^ _bit(config, p0.link("top"), L)


def winding_sectors(lat: Lattice, H: OperatorMatrix) -> dict[int, OperatorMatrix]:
    """Split a Gauss-projected periodic-chain operator into its two winding sectors."""
    if lat.kind != "chain" or not lat.periodic:
        raise ValueError("winding sectors are defined for periodic chains")
    configs = [int(s, 2) for s in H.labels]
    out = {}
    for w in (0, 1):
        sel = [i for i, c in enumerate(configs) if winding_label(lat, c) == w]
        sub = H.restrict(sel)
        sub.meta["winding"] = w
        out[w] = sub
    return out


# ---------------------------------------------------------------------------
# Code I logical Hamiltonian
# ---------------------------------------------------------------------------


def _pauli_z_diag(n: int, q: int) -> np.ndarray:
    idx = np.arange(2**n)
    return 1.0 - 2.0 * ((idx >> (n - 1 - q)) & 1)


def build_code1_logical_hamiltonian(
    n_plaquettes: int, boundary: str = "aperiodic", g2: float = 1.0, a: float = 1.0, winding: int = 0
) -> OperatorMatrix:
    """Spin Hamiltonian of the plaquette chain in logical Z/X operators.

    H = (3g^2/2) sum u(n) - (3g^2/4) sum u(n)u(n+1)
        - 2/(a^2 g^2) sum (1+3Z(n-1))/4 (1+3Z(n+1))/4 X(n),   u = (1-Z)/2.

    Aperiodic chains set Z(-1) = Z(N) = 1; periodic chains wrap indices mod N.
    For a periodic chain, ``winding=1`` gives the sector carrying one unit of
    topological flux: the bottom links are then complementary to the top
    links, so the electric term becomes (3g^2/8)(N + 2 sum u - 2 sum u u) and
    the plaquette neighbour factors are replaced by a constant -1/2.
    """
    N = n_plaquettes
    if N > MAX_LOGICAL_QUBITS:
        raise SizeError(f"{N} logical qubits exceeds the cap of {MAX_LOGICAL_QUBITS}")
    per = boundary == "periodic"
    if winding and not per:
        raise ValueError("a winding sector exists only for periodic chains")
    dim = 2**N
    Z = [_pauli_z_diag(N, n) for n in range(N)]
    one = np.ones(dim)
    u = [(1 - z) / 2 for z in Z]

    def zat(n):
        if per:
            return Z[n % N]
        return one if n < 0 or n >= N else Z[n]

    def uat(n):
        if per:
            return u[n % N]
        return np.zeros(dim) if n < 0 or n >= N else u[n]

    if winding:
        diag = (3 * g2 / 8) * (N + 2 * sum(u) - 2 * sum(u[n] * uat(n + 1) for n in range(N)))
    else:
        diag = (3 * g2 / 2) * sum(u) - (3 * g2 / 4) * sum(u[n] * uat(n + 1) for n in range(N))
    H = np.diag(diag).astype(float)
    idx = np.arange(dim)
    coup = _magnetic_coupling(g2, a)
    for n in range(N):
        if winding:
            coef = -0.5 * one
        else:
            coef = (1 + 3 * zat(n - 1)) / 4 * (1 + 3 * zat(n + 1)) / 4
        flip = 1 << (N - 1 - n)
        H[idx ^ flip, idx] += -coup * coef
    meta = {"model": "code1-logical", "N": N, "boundary": boundary, "g2": g2, "a": a}
    if per:
        meta["winding"] = winding
    return OperatorMatrix(_labels(N), H, meta)


def code1_lattice_logical_hamiltonian(lat: Lattice, g2: float = 1.0, a: float = 1.0) -> OperatorMatrix:
    """Logical Hamiltonian on plaquette-occupation qubits for any aperiodic lattice.

    A logical basis state switches on the boundary links of every occupied
    plaquette. The plaquette term carries a factor 1 per corner whose
    external link is empty and i/sqrt2 per corner whose external link is
    excited; on a chain this is the (1+3Z)/4 neighbour factor.
    """
    if lat.periodic:
        raise ValueError("periodic lattices have topological sectors; use the chain builder")
    P = len(lat.plaquettes)
    if P > MAX_LOGICAL_QUBITS:
        raise SizeError(f"{P} logical qubits exceeds the cap of {MAX_LOGICAL_QUBITS}")
    L = lat.n_links
    boundaries = [_mask(p.links, L) for p in lat.plaquettes]
    dim = 2**P
    links_of = np.zeros(dim, dtype=np.int64)
    for c in range(dim):
        m = 0
        for i in range(P):
            if c >> (P - 1 - i) & 1:
                m ^= boundaries[i]
        links_of[c] = m
    diag = 0.5 * g2 * float(ELECTRIC_PER_LINK) * np.bitwise_count(links_of)
    H = np.diag(diag.astype(float))
    coup = _magnetic_coupling(g2, a)
    for i, plaq in enumerate(lat.plaquettes):
        ext = [e for e in _corner_externals(lat, plaq) if e is not None]
        flip = 1 << (P - 1 - i)
        for c in range(dim):
            excited = sum(_bit(int(links_of[c]), e, L) for e in ext)
            coef = (1j / math.sqrt(2)) ** excited
            H[c ^ flip, c] += -coup * coef.real
    return OperatorMatrix(_labels(P), H, {"model": "code1-logical", "lattice": lat.kind, "g2": g2, "a": a})


# ---------------------------------------------------------------------------
# Code II logical Hamiltonian
# ---------------------------------------------------------------------------

_ROLE_BITS = {"left": (1, 0), "right": (0, 1), "implied": (1, 1)}


def _m_bar(z: np.ndarray) -> np.ndarray:
    return (1 + z) / 2 + (1 - z) / (2 * math.sqrt(2))


def electric_prefactor_code2(lat: Lattice) -> float:
    """Per-dot prefactor of [3 - Z1 - Z2 - Z1 Z2] in units of g^2.

    [3 - Z1 - Z2 - Z1Z2] equals 2 x (number of excited links at the dot), and
    every link belongs to exactly one dot, so (g^2/2)(3/4)/2 = 3/16 holds on
    any trivalent lattice.
    """
    return 0.5 * float(ELECTRIC_PER_LINK) / 2


def code2_link_configs(lat: Lattice, dots: DotAssignment) -> np.ndarray:
    """Electric-basis configuration encoded by each logical basis state."""
    D = len(dots.sites)
    n = 2 * D
    L = lat.n_links
    idx = np.arange(2**n)
    out = np.zeros(2**n, dtype=np.int64)
    for d, s in enumerate(dots.sites):
        ql = (idx >> (n - 1 - 2 * d)) & 1
        qr = (idx >> (n - 2 - 2 * d)) & 1
        for link, bit in ((s.left, ql), (s.right, qr), (s.implied, ql ^ qr)):
            out |= bit.astype(np.int64) << (L - 1 - link)
    return out


def build_code2_logical_hamiltonian(
    lat: Lattice, dots: DotAssignment | None = None, g2: float = 1.0, a: float = 1.0
) -> OperatorMatrix:
    """Hamiltonian on two logical qubits (q_l, q_r) per dotted vertex.

    Electric part: c g^2 [3 - Z1 - Z2 - Z1 Z2] per dot. Plaquette part: per
    dotted corner an X1 (links left+implied), X2 (right+implied) or X1 X2
    (left+right) flip, times per corner an M factor on the external link's
    owner: M1, M2, or M12 for an implied link.
    """
    if dots is None:
        dots = auto_dots(lat)
    dots.validate(lat)
    D = len(dots.sites)
    n = 2 * D
    if n > MAX_LOGICAL_QUBITS:
        raise SizeError(f"{n} logical qubits exceeds the cap of {MAX_LOGICAL_QUBITS}")
    dim = 2**n
    Z1 = [_pauli_z_diag(n, 2 * d) for d in range(D)]
    Z2 = [_pauli_z_diag(n, 2 * d + 1) for d in range(D)]
    pref = electric_prefactor_code2(lat)
    diag = pref * g2 * sum(3 - Z1[d] - Z2[d] - Z1[d] * Z2[d] for d in range(D))
    rows, cols, vals = [np.arange(dim)], [np.arange(dim)], [diag]
    owner = dots.owner()
    dotted = {s.vertex: i for i, s in enumerate(dots.sites)}
    idx = np.arange(dim)
    coup = _magnetic_coupling(g2, a)
    for plaq in lat.plaquettes:
        m = len(plaq.links)
        flip = 0
        mfac = np.ones(dim)
        for c in range(m):
            v = plaq.vertices[c]
            if v in dotted:
                d = dotted[v]
                roles = {owner[plaq.links[c - 1]][1], owner[plaq.links[c]][1]}
                if roles == {"left", "implied"}:
                    flip ^= _mask([2 * d], n)
                elif roles == {"right", "implied"}:
                    flip ^= _mask([2 * d + 1], n)
                else:
                    flip ^= _mask([2 * d, 2 * d + 1], n)
            e = lat.external_link(plaq, c)
            if e is None:
                continue
            od, role = owner[e]
            if role == "left":
                z = Z1[od]
            elif role == "right":
                z = Z2[od]
            else:
                z = Z1[od] * Z2[od]
            mfac = mfac * _m_bar(z)
        rows.append(idx ^ flip)
        cols.append(idx)
        vals.append(-coup * mfac)
    H = sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim))
    meta = {
        "model": "code2-logical",
        "lattice": lat.kind,
        "size": list(lat.size),
        "boundary": lat.boundary,
        "dots": [s.vertex for s in dots.sites],
        "electric_prefactor": pref,
        "g2": g2,
        "a": a,
    }
    return OperatorMatrix(_labels(n), H, meta)


def code2_physical_indices(lat: Lattice, dots: DotAssignment) -> np.ndarray:
    """Logical basis states obeying Gauss's law at the undotted vertices too."""
    configs = code2_link_configs(lat, dots)
    ok = np.ones(configs.size, dtype=bool)
    for v, m in enumerate(vertex_parity_masks(lat)):
        if v not in dots.dotted:
            ok &= np.bitwise_count(configs & m) % 2 == 0
    return np.flatnonzero(ok)


def code2_physical_subsector(lat: Lattice, H: OperatorMatrix, dots: DotAssignment | None = None) -> OperatorMatrix:
    if dots is None:
        dots = auto_dots(lat)
    out = H.restrict(code2_physical_indices(lat, dots))
    out.meta["sector"] = "undotted-gauss"
    return out


def sector_leakage(H: OperatorMatrix, keep: np.ndarray) -> float:
    """Largest |<out|H|in>| between the kept subspace and its complement."""
    m = sp.csr_matrix(H.matrix)
    inside = np.zeros(m.shape[0], dtype=bool)
    inside[keep] = True
    block = m[np.flatnonzero(~inside)][:, np.flatnonzero(inside)]
    return float(abs(block).max()) if block.nnz else 0.0


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------


@dataclass
class SpectrumReport:
    dim_a: int
    dim_b: int
    eigenvalues_a: list[float]
    eigenvalues_b: list[float]
    max_abs_diff: float | None
    passed: bool
    tol: float

    def to_dict(self) -> dict:
        return {
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "eigenvalues_a": self.eigenvalues_a,
            "eigenvalues_b": self.eigenvalues_b,
            "max_abs_diff": self.max_abs_diff,
            "pass": self.passed,
            "tol": self.tol,
        }


def spectrum_compare(A: OperatorMatrix, B: OperatorMatrix, tol: float = 1e-10) -> SpectrumReport:
    for name, op in (("A", A), ("B", B)):
        if not op.is_hermitian():
            raise ValueError(f"operator {name} is not Hermitian")
    ea = sorted(float(x) for x in A.eigenvalues())
    eb = sorted(float(x) for x in B.eigenvalues())
    if len(ea) != len(eb):
        return SpectrumReport(len(ea), len(eb), ea, eb, None, False, tol)
    diff = max((abs(x - y) for x, y in zip(ea, eb)), default=0.0)
    return SpectrumReport(len(ea), len(eb), ea, eb, diff, diff <= tol, tol)


def compare_code1_chain(n_plaquettes: int, boundary: str = "aperiodic", g2: float = 1.0, a: float = 1.0, tol: float = 1e-10) -> dict[str, SpectrumReport]:
    """KS physical sector vs the logical spin Hamiltonian, per winding sector when periodic."""
    lat = build_chain(n_plaquettes, boundary)
    phys = gauss_project(lat, build_ks_hamiltonian(lat, g2, a))
    if boundary == "aperiodic":
        return {"all": spectrum_compare(phys, build_code1_logical_hamiltonian(n_plaquettes, boundary, g2, a), tol)}
    sectors = winding_sectors(lat, phys)
    return {
        f"winding{w}": spectrum_compare(sectors[w], build_code1_logical_hamiltonian(n_plaquettes, boundary, g2, a, w), tol)
        for w in (0, 1)
    }


def compare_code2(lat: Lattice, g2: float = 1.0, a: float = 1.0, tol: float = 1e-10) -> tuple[SpectrumReport, float]:
    """Code II undotted-Gauss subsector vs the KS physical sector; also returns the sector leakage."""
    dots = auto_dots(lat)
    HL = build_code2_logical_hamiltonian(lat, dots, g2, a)
    keep = code2_physical_indices(lat, dots)
    phys = gauss_project(lat, build_ks_hamiltonian(lat, g2, a))
    return spectrum_compare(phys, HL.restrict(keep), tol), sector_leakage(HL, keep)

