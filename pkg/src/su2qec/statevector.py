"""Dense state-vector simulation of encoding circuits (at most 14 qubits).

Qubit 0 is the most significant bit of the basis index, so ``|q0 q1 ... ⟩``
reads left to right like a ket.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .codes import StabilizerCode
from .lattice import Lattice
from .pauli import PauliString, StandardForm, standard_form

MAX_QUBITS = 14
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SINGLE = {"H": _H, "X": _X, "Z": _Z}


class SizeError(ValueError):
    pass


def _check_size(n: int) -> None:
    if n > MAX_QUBITS:
        raise SizeError(f"{n} qubits exceeds the dense-simulation cap of {MAX_QUBITS}")


@dataclass
class QuantumState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_size(self.n_qubits)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(2**self.n_qubits)

    @classmethod
    def zeros(cls, n: int) -> "QuantumState":
        psi = np.zeros(2**n, dtype=complex)
        psi[0] = 1
        return cls(n, psi)

    @classmethod
    def basis(cls, bits: str) -> "QuantumState":
        n = len(bits)
        psi = np.zeros(2**n, dtype=complex)
        psi[int(bits, 2)] = 1
        return cls(n, psi)

    def tensor(self, other: "QuantumState") -> "QuantumState":
        return QuantumState(self.n_qubits + other.n_qubits, np.kron(self.amplitudes, other.amplitudes))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "QuantumState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_json(self) -> str:
        return json.dumps([[float(a.real), float(a.imag)] for a in self.amplitudes])


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    control: int | None = None


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def add(self, kind: str, target: int, control: int | None = None) -> "Circuit":
        if kind not in ("H", "X", "Z", "CNOT"):
            raise ValueError(f"unsupported gate {kind!r}")
        if not 0 <= target < self.n_qubits or (control is not None and not 0 <= control < self.n_qubits):
            raise ValueError("qubit index out of range")
        if kind == "CNOT" and (control is None or control == target):
            raise ValueError("CNOT needs a control distinct from its target")
        self.gates.append(Gate(kind, target, control))
        return self

    def to_json(self) -> str:
        gates = []
        for g in self.gates:
            d = {"kind": g.kind, "target": g.target}
            if g.control is not None:
                d["control"] = g.control
            gates.append(d)
        return json.dumps({"n": self.n_qubits, "gates": gates})

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        d = json.loads(text)
        c = cls(d["n"])
        for g in d["gates"]:
            c.add(g["kind"], g["target"], g.get("control"))
        return c


def _apply_single(psi: np.ndarray, n: int, u: np.ndarray, q: int) -> np.ndarray:
    t = psi.reshape((2,) * n)
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def _apply_cnot(psi: np.ndarray, n: int, c: int, t: int) -> np.ndarray:
    out = psi.reshape((2,) * n).copy()
    sel = [slice(None)] * n
    sel[c] = 1
    sub = out[tuple(sel)]
    # the target axis shifts down by one once the control axis is removed
    tt = t - 1 if t > c else t
    out[tuple(sel)] = np.flip(sub, axis=tt)
    return out.reshape(-1)


def run(circuit: Circuit, state: QuantumState) -> QuantumState:
    if circuit.n_qubits != state.n_qubits:
        raise ValueError(f"{circuit.n_qubits}-qubit circuit on a {state.n_qubits}-qubit state")
    psi = state.amplitudes.copy()
    n = state.n_qubits
    for g in circuit.gates:
        if g.kind == "CNOT":
            psi = _apply_cnot(psi, n, g.control, g.target)
        else:
            psi = _apply_single(psi, n, _SINGLE[g.kind], g.target)
    return QuantumState(n, psi)


def _as_state(x, n: int) -> QuantumState:
    if isinstance(x, QuantumState):
        if x.n_qubits != n:
            raise ValueError(f"expected a {n}-qubit input")
        return x
    arr = np.asarray(x, dtype=complex)
    if arr.shape != (2**n,):
        raise ValueError(f"expected {2**n} amplitudes")
    return QuantumState(n, arr)


# ---------------------------------------------------------------------------
# Pauli action on dense states
# ---------------------------------------------------------------------------


def _masks(p: PauliString) -> tuple[int, int]:
    """Bitmasks in basis-index convention (qubit q <-> bit n-1-q)."""
    n = p.n_qubits
    xm = zm = 0
    for q in range(n):
        if p.x >> q & 1:
            xm |= 1 << (n - 1 - q)
        if p.z >> q & 1:
            zm |= 1 << (n - 1 - q)
    return xm, zm


def apply_pauli(p: PauliString, psi: np.ndarray) -> np.ndarray:
    """``p @ psi`` for a vector or a stack of column vectors, without building matrices."""
    n = p.n_qubits
    idx = np.arange(2**n)
    xm, zm = _masks(p)
    coeff = 1j ** ((p.phase + bin(p.x & p.z).count("1")) % 4)
    signs = 1 - 2 * (np.bitwise_count(idx & zm) % 2).astype(float)
    out = np.empty_like(psi, dtype=complex)
    if psi.ndim == 1:
        out[idx ^ xm] = coeff * signs * psi
    else:
        out[idx ^ xm] = coeff * signs[:, None] * psi
    return out


def expectation(state: QuantumState, p: PauliString) -> complex:
    return complex(np.vdot(state.amplitudes, apply_pauli(p, state.amplitudes)))


def project_codespace(code: StabilizerCode, psi: np.ndarray) -> np.ndarray:
    for g in code.generators:
        psi = 0.5 * (psi + apply_pauli(g, psi))
    return psi


def codespace_projector_dim(code: StabilizerCode, seed: int = 0, tol: float = 1e-9) -> int:
    """Rank of the joint +1 eigenspace projector.

    The projector is applied to a block of random columns; when the rank of
    the image is smaller than the block width it equals the projector rank.
    """
    n = code.n
    _check_size(n)
    rng = np.random.default_rng(seed)
    width = 8
    while True:
        width = min(width * 2, 2**n)
        block = rng.standard_normal((2**n, width)) + 1j * rng.standard_normal((2**n, width))
        img = project_codespace(code, block)
        s = np.linalg.svd(img, compute_uv=False)
        rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
        if rank < width or width == 2**n:
            return rank


# ---------------------------------------------------------------------------
# Encoders
# ---------------------------------------------------------------------------


def code1_link_circuit() -> Circuit:
    """H, two fan-out CNOTs, then H on all three qubits: |0> -> |alpha>, |1> -> |beta>."""
    c = Circuit(3)
    c.add("H", 0).add("CNOT", 1, 0).add("CNOT", 2, 0)
    for q in range(3):
        c.add("H", q)
    return c


def alpha_state() -> QuantumState:
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    ppp = np.kron(np.kron(plus, plus), plus)
    mmm = np.kron(np.kron(minus, minus), minus)
    return QuantumState(3, (ppp + mmm) / np.sqrt(2))


def beta_state() -> QuantumState:
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    ppp = np.kron(np.kron(plus, plus), plus)
    mmm = np.kron(np.kron(minus, minus), minus)
    return QuantumState(3, (ppp - mmm) / np.sqrt(2))


def encode_code1_link(psi) -> QuantumState:
    inp = _as_state(psi, 1).tensor(QuantumState.zeros(2))
    return run(code1_link_circuit(), inp)


def encode_code1_lattice(lat: Lattice, link_bits: str) -> QuantumState:
    """Encode a product electric-basis state, one link-circuit per link."""
    if len(link_bits) != lat.n_links:
        raise ValueError("one bit per link required")
    _check_size(3 * lat.n_links)
    out = None
    for b in link_bits:
        enc = encode_code1_link(QuantumState.basis(b))
        out = enc if out is None else out.tensor(enc)
    return out


def standard_form_encoder(code: StabilizerCode, sf: StandardForm | None = None) -> tuple[Circuit, list[int]]:
    """Encoding circuit built from the standard-form check matrix and logical X operators.

    Returns the circuit and the input qubits that carry the unencoded state.
    Only CSS standard forms (no Z-part on the X rows) are supported, so the
    circuit uses H and CNOT only.
    """
    if sf is None:
        sf = standard_form(code.generators)
    n = code.n
    r = sf.x_rank
    cm = sf.check_matrix.matrix
    if cm[:r, n:].any():
        raise NotImplementedError("encoder synthesis needs a CSS standard form")
    k = len(sf.logical_xs)
    perm = sf.permutation
    inputs = [perm[n - k + i] for i in range(k)]
    c = Circuit(n)
    for i, lx in enumerate(sf.logical_xs):
        if lx.z:
            raise NotImplementedError("logical X with a Z-part")
        ctrl = inputs[i]
        for q in lx.support:
            if q != ctrl:
                c.add("CNOT", q, ctrl)
    for i in range(r):
        ctrl = perm[i]
        c.add("H", ctrl)
        for col in range(n):
            if col != i and cm[i, col]:
                c.add("CNOT", perm[col], ctrl)
    return c, inputs


def code2_vertex_circuit() -> Circuit:
    from .codes import carbon_code

    circ, inputs = standard_form_encoder(carbon_code())
    assert inputs == [10, 11]
    return circ


def encode_code2_vertex(psi) -> QuantumState:
    """Encode a two-qubit vertex state (left-link bit first) into the 12-qubit carbon block."""
    inp = QuantumState.zeros(10).tensor(_as_state(psi, 2))
    return run(code2_vertex_circuit(), inp)


def code422_codeword(j_bits: tuple[int, int, int]) -> QuantumState:
    """Four-qubit vertex codeword: X on every excited link qubit applied to (|0000>+|1111>)/sqrt2."""
    if sum(j_bits) % 2:
        raise ValueError("vertex state violates Gauss's law")
    ghz = np.zeros(16, dtype=complex)
    ghz[0] = ghz[15] = 1 / np.sqrt(2)
    flips = PauliString.from_support(4, "X", [a for a in range(3) if j_bits[a]])
    return QuantumState(4, apply_pauli(flips, ghz))


def verify_logical_action(
    logical: PauliString,
    encoded_basis: list[QuantumState],
    expected: PauliString,
    tol: float = 1e-12,
) -> bool:
    """True iff ``logical`` acts on the encoded basis exactly as ``expected`` acts on logical kets."""
    k = expected.n_qubits
    if len(encoded_basis) != 2**k:
        raise ValueError("need one encoded state per logical basis ket")
    E = np.column_stack([s.amplitudes for s in encoded_basis])
    LE = apply_pauli(logical, E)
    M = E.conj().T @ LE
    if not np.allclose(M, expected.to_matrix(), atol=tol, rtol=0):
        return False
    # the image must stay inside the encoded span
    return bool(np.allclose(E @ M, LE, atol=tol, rtol=0))
