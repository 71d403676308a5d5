"""Symplectic GF(2) algebra of n-qubit Pauli operators.

A Pauli operator is stored as two integer bitmasks (bit ``q`` of ``x`` is set
when X or Y acts on qubit ``q``, likewise ``z`` for Z or Y) and a phase
exponent ``e`` so that the operator equals ``i**e`` times the tensor product
of the single-qubit letters I, X, Y, Z.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class InvalidStabilizerError(ValueError):
    """A generator set is not a valid stabilizer group."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    n_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        mask = (1 << self.n_qubits) - 1
        if self.x & ~mask or self.z & ~mask:
            raise DimensionError("bits set outside the qubit range")
        object.__setattr__(self, "phase", self.phase % 4)

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_str(cls, text: str) -> "PauliString":
        """Parse ``"-iXZI"``-style text; an optional sign prefix sets the phase."""
        text = text.strip()
        phase = 0
        # qubit letters are upper-case, so a lower-case "i" is always part of the prefix
        for prefix, e in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if text.startswith(prefix):
                phase = e
                text = text[len(prefix):]
                break
        x = z = 0
        for q, ch in enumerate(text):
            if ch == "X":
                x |= 1 << q
            elif ch == "Z":
                z |= 1 << q
            elif ch == "Y":
                x |= 1 << q
                z |= 1 << q
            elif ch != "I":
                raise ValueError(f"invalid Pauli letter {ch!r} in {text!r}")
        return cls(len(text), x, z, phase)

    @classmethod
    def from_support(cls, n: int, letter: str, qubits: Iterable[int]) -> "PauliString":
        """Single-letter operator such as X on every qubit in ``qubits``."""
        mask = 0
        for q in qubits:
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} out of range for n={n}")
            mask ^= 1 << q
        if letter == "X":
            return cls(n, mask, 0)
        if letter == "Z":
            return cls(n, 0, mask)
        if letter == "Y":
            return cls(n, mask, mask)
        raise ValueError(f"unsupported letter {letter!r}")

    @classmethod
    def from_symplectic(cls, n: int, vec: int, phase: int = 0) -> "PauliString":
        """Inverse of :attr:`symplectic`: low ``n`` bits are x, high ``n`` bits z."""
        mask = (1 << n) - 1
        return cls(n, vec & mask, vec >> n, phase)

    # views -------------------------------------------------------------
    @property
    def symplectic(self) -> int:
        return self.x | (self.z << self.n_qubits)

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> list[int]:
        s = self.x | self.z
        return [q for q in range(self.n_qubits) if s >> q & 1]

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def letter(self, q: int) -> str:
        return _LETTER[(self.x >> q & 1, self.z >> q & 1)]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n_qubits))

    def x_bits(self) -> np.ndarray:
        return np.array([self.x >> q & 1 for q in range(self.n_qubits)], dtype=np.uint8)

    def z_bits(self) -> np.ndarray:
        return np.array([self.z >> q & 1 for q in range(self.n_qubits)], dtype=np.uint8)

    def __str__(self) -> str:
        return _PHASE_PREFIX[self.phase] + self.letters()

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"

    # algebra -----------------------------------------------------------
    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x, self.z, self.phase + 2)

    def unsigned(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x, self.z, 0)

    def on(self, n: int, offset: int) -> "PauliString":
        """Embed into ``n`` qubits with qubit 0 placed at ``offset``."""
        if offset < 0 or offset + self.n_qubits > n:
            raise DimensionError("embedding does not fit")
        return PauliString(n, self.x << offset, self.z << offset, self.phase)

    def to_matrix(self) -> np.ndarray:
        """Dense matrix with qubit 0 as the most significant basis bit."""
        mats = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        out = np.array([[1.0 + 0j]])
        for q in range(self.n_qubits):
            out = np.kron(out, mats[self.letter(q)])
        return (1j ** self.phase) * out


def _check_dims(p: PauliString, q: PauliString) -> None:
    if p.n_qubits != q.n_qubits:
        raise DimensionError(f"{p.n_qubits}-qubit vs {q.n_qubits}-qubit operator")


def commutes(p: PauliString, q: PauliString) -> bool:
    _check_dims(p, q)
    return _popcount((p.x & q.z) ^ (p.z & q.x)) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact product ``p·q``.

    Writes each letter-form operator as ``i^{|x&z|} X^x Z^z``; moving ``Z^{z_p}``
    past ``X^{x_q}`` costs ``(-1)^{|z_p & x_q|}``.
    """
    _check_dims(p, q)
    x = p.x ^ q.x
    z = p.z ^ q.z
    e = (
        p.phase
        + q.phase
        + _popcount(p.x & p.z)
        + _popcount(q.x & q.z)
        + 2 * _popcount(p.z & q.x)
        - _popcount(x & z)
    )
    return PauliString(p.n_qubits, x, z, e)


def product(paulis: Iterable[PauliString], n: int) -> PauliString:
    out = PauliString.identity(n)
    for p in paulis:
        out = multiply(out, p)
    return out


def symplectic_inner(a: int, b: int, n: int) -> int:
    mask = (1 << n) - 1
    return _popcount(((a & mask) & (b >> n)) ^ ((a >> n) & (b & mask))) & 1


# ---------------------------------------------------------------------------
# GF(2) linear algebra on integer row vectors
# ---------------------------------------------------------------------------


class _Span:
    """Incremental GF(2) row space with combination tracking.

    Each stored pivot row remembers which input rows were XOR-ed to build it,
    so membership queries can return the generating combination.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}  # pivot bit -> (row, combo)
        self.dependencies: list[int] = []
        self._count = 0

    def add(self, row: int) -> bool:
        combo = 1 << self._count
        self._count += 1
        row, combo = self._reduce(row, combo)
        if row == 0:
            self.dependencies.append(combo)
            return False
        self.pivots[row.bit_length() - 1] = (row, combo)
        return True

    def _reduce(self, row: int, combo: int) -> tuple[int, int]:
        while row:
            top = row.bit_length() - 1
            hit = self.pivots.get(top)
            if hit is None:
                break
            row ^= hit[0]
            combo ^= hit[1]
        return row, combo

    def reduce(self, row: int) -> tuple[int, int]:
        """Fully reduce ``row``; returns (remainder, combination used)."""
        combo = 0
        rem = 0
        while row:
            top = row.bit_length() - 1
            hit = self.pivots.get(top)
            if hit is None:
                rem |= 1 << top
                row ^= 1 << top
                continue
            row ^= hit[0]
            combo ^= hit[1]
        return rem, combo

    @property
    def rank(self) -> int:
        return len(self.pivots)


def gf2_rank_rows(rows: Iterable[int]) -> int:
    span = _Span()
    for r in rows:
        span.add(r)
    return span.rank


# ---------------------------------------------------------------------------
# Generator sets and check matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckMatrix:
    """Rows of ``[x-block | z-block]`` GF(2) entries."""

    n_qubits: int
    matrix: np.ndarray

    @classmethod
    def from_paulis(cls, paulis: Sequence[PauliString], n: int | None = None) -> "CheckMatrix":
        if n is None:
            n = paulis[0].n_qubits if paulis else 0
        m = np.zeros((len(paulis), 2 * n), dtype=np.uint8)
        for r, p in enumerate(paulis):
            m[r, :n] = p.x_bits()
            m[r, n:] = p.z_bits()
        return cls(n, m)

    @property
    def x_block(self) -> np.ndarray:
        return self.matrix[:, : self.n_qubits]

    @property
    def z_block(self) -> np.ndarray:
        return self.matrix[:, self.n_qubits:]

    def rows_as_ints(self) -> list[int]:
        n = self.n_qubits
        out = []
        for row in self.matrix:
            v = 0
            for c in range(2 * n):
                if row[c]:
                    v |= 1 << c
            out.append(v)
        return out

    def to_paulis(self) -> list[PauliString]:
        return [PauliString.from_symplectic(self.n_qubits, v) for v in self.rows_as_ints()]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n_qubits,
                "x_block": self.x_block.astype(int).tolist(),
                "z_block": self.z_block.astype(int).tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CheckMatrix":
        d = json.loads(text)
        xb = np.array(d["x_block"], dtype=np.uint8).reshape(-1, d["n"])
        zb = np.array(d["z_block"], dtype=np.uint8).reshape(-1, d["n"])
        return cls(d["n"], np.hstack([xb, zb]))


def gf2_rank(m: CheckMatrix | np.ndarray) -> int:
    """Rank over GF(2) by row reduction."""
    if isinstance(m, CheckMatrix):
        return gf2_rank_rows(m.rows_as_ints())
    arr = np.asarray(m, dtype=np.uint8) % 2
    rows = []
    for row in arr:
        v = 0
        for c, b in enumerate(row):
            if b:
                v |= 1 << c
        rows.append(v)
    return gf2_rank_rows(rows)


@dataclass(frozen=True)
class GeneratorSet:
    n_qubits: int
    generators: tuple[PauliString, ...]
    _span: _Span = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.n_qubits != self.n_qubits:
                raise DimensionError("generator size mismatch")
        span = _Span()
        for g in self.generators:
            span.add(g.symplectic)
        object.__setattr__(self, "_span", span)

    @classmethod
    def from_strs(cls, texts: Sequence[str]) -> "GeneratorSet":
        ps = [PauliString.from_str(t) for t in texts]
        return cls(ps[0].n_qubits, tuple(ps))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[PauliString]:
        return iter(self.generators)

    def __getitem__(self, i: int) -> PauliString:
        return self.generators[i]

    @property
    def rank(self) -> int:
        return self._span.rank

    def check_matrix(self) -> CheckMatrix:
        return CheckMatrix.from_paulis(self.generators, self.n_qubits)

    def validate(self) -> None:
        """Raise :class:`InvalidStabilizerError` unless this is a stabilizer group."""
        gens = self.generators
        for g in gens:
            if not g.is_hermitian:
                raise InvalidStabilizerError(f"non-Hermitian generator {g}")
        for (a, p), (b, q) in itertools.combinations(enumerate(gens), 2):
            if not commutes(p, q):
                raise InvalidStabilizerError(f"generators {a} and {b} anticommute: {p} vs {q}")
        # every GF(2) dependency must multiply to +I, never -I
        for combo in self._span.dependencies:
            prod = product((gens[i] for i in range(len(gens)) if combo >> i & 1), self.n_qubits)
            if prod.phase != 0:
                raise InvalidStabilizerError(f"generators multiply to {_PHASE_PREFIX[prod.phase]}I")

    def decompose(self, p: PauliString) -> int | None:
        """Bitmask of generators whose product equals ``p`` up to phase, or None."""
        _check_dims(p, self.generators[0] if self.generators else p)
        rem, combo = self._span.reduce(p.symplectic)
        return None if rem else combo

    def syndrome_of(self, p: PauliString) -> int:
        """Bit ``i`` is set when ``p`` anticommutes with generator ``i``."""
        s = 0
        for i, g in enumerate(self.generators):
            if not commutes(p, g):
                s |= 1 << i
        return s


def group_sign(p: PauliString, g: GeneratorSet) -> int | None:
    """Return +1/-1 when ``±p`` is a product of generators, None when not in the group.

    Raises ValueError when ``p`` matches a group element only up to ``±i``.
    """
    if p.n_qubits != g.n_qubits:
        raise DimensionError("operator and generator set sizes differ")
    combo = g.decompose(p)
    if combo is None:
        return None
    elem = product((g[i] for i in range(len(g)) if combo >> i & 1), g.n_qubits)
    diff = (p.phase - elem.phase) % 4
    if diff % 2:
        raise ValueError(f"{p} differs from a group element by a factor of ±i")
    return 1 if diff == 0 else -1


def in_group(p: PauliString, g: GeneratorSet) -> bool:
    """Membership up to a global sign; the sign itself is available from :func:`group_sign`."""
    if p.n_qubits != g.n_qubits:
        raise DimensionError("operator and generator set sizes differ")
    return g.decompose(p) is not None


# ---------------------------------------------------------------------------
# Standard form and logical operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StandardForm:
    check_matrix: CheckMatrix
    logical_xs: list[PauliString]
    logical_zs: list[PauliString]
    x_rank: int
    permutation: list[int]  # column position -> original qubit


def standard_form(g: GeneratorSet) -> StandardForm:
    """Reduce to the Gottesman standard form and read off logical operators.

    The reduced check matrix is ``[[I A1 A2 | B 0 C], [0 0 0 | D I E]]`` after
    a qubit permutation (recorded in ``permutation``); the logicals are
    ``X = (0 E^T I | C^T 0 0)`` and ``Z = (0 0 0 | A2^T 0 I)`` mapped back to
    the original qubit order.
    """
    g.validate()
    n = g.n_qubits
    rows = [(p.x_bits().astype(np.uint8), p.z_bits().astype(np.uint8)) for p in g.generators]
    X = np.array([r[0] for r in rows], dtype=np.uint8).reshape(-1, n)
    Z = np.array([r[1] for r in rows], dtype=np.uint8).reshape(-1, n)
    perm = list(range(n))

    def swap_cols(a: int, b: int) -> None:
        if a == b:
            return
        X[:, [a, b]] = X[:, [b, a]]
        Z[:, [a, b]] = Z[:, [b, a]]
        perm[a], perm[b] = perm[b], perm[a]

    def eliminate(block: np.ndarray, other: np.ndarray, row0: int, col0: int, col1: int) -> int:
        """Reduced row echelon on ``block[row0:, col0:col1]``; returns pivot count."""
        r = row0
        m = block.shape[0]
        for c in range(col0, col1):
            if r >= m:
                break
            piv = None
            # search this column first, then later columns (swapping them in)
            for cc in range(c, col1):
                nz = np.nonzero(block[r:, cc])[0]
                if nz.size:
                    piv = (r + nz[0], cc)
                    break
            if piv is None:
                break
            pr, pc = piv
            swap_cols(c, pc)
            if pr != r:
                block[[r, pr]] = block[[pr, r]]
                other[[r, pr]] = other[[pr, r]]
            for rr in range(m):
                if rr != r and block[rr, c]:
                    block[rr] ^= block[r]
                    other[rr] ^= other[r]
            r += 1
        return r - row0

    r = eliminate(X, Z, 0, 0, n)
    # drop dependent rows (both blocks zero)
    keep = [i for i in range(X.shape[0]) if X[i].any() or Z[i].any()]
    X, Z = X[keep], Z[keep]
    s = eliminate(Z, X, r, r, n)
    keep = [i for i in range(X.shape[0]) if X[i].any() or Z[i].any()]
    X, Z = X[keep], Z[keep]
    m = X.shape[0]
    if m != r + s:
        raise InvalidStabilizerError("dependent rows survived elimination")
    # clear the Z-part of the first r rows on the identity columns of the lower block
    for i in range(r):
        for j in range(s):
            if Z[i, r + j]:
                Z[i] ^= Z[r + j]
                X[i] ^= X[r + j]
    k = n - m
    A2 = X[:r, n - k:]
    C = Z[:r, n - k:]
    E = Z[r:, n - k:]
    lx, lz = [], []
    for i in range(k):
        xv = np.zeros(n, dtype=np.uint8)
        zv = np.zeros(n, dtype=np.uint8)
        xv[r:r + s] = E[:, i]
        xv[n - k + i] = 1
        zv[:r] = C[:, i]
        lx.append((xv, zv))
        xv2 = np.zeros(n, dtype=np.uint8)
        zv2 = np.zeros(n, dtype=np.uint8)
        zv2[:r] = A2[:, i]
        zv2[n - k + i] = 1
        lz.append((xv2, zv2))

    def unpermute(xv: np.ndarray, zv: np.ndarray) -> PauliString:
        x = z = 0
        for col, q in enumerate(perm):
            if xv[col]:
                x |= 1 << q
            if zv[col]:
                z |= 1 << q
        return PauliString(n, x, z)

    cm = np.hstack([X, Z]).astype(np.uint8)
    return StandardForm(
        check_matrix=CheckMatrix(n, cm),
        logical_xs=[unpermute(*v) for v in lx],
        logical_zs=[unpermute(*v) for v in lz],
        x_rank=r,
        permutation=perm,
    )


def logical_partners(
    g: GeneratorSet,
    xs: Sequence[PauliString],
    hints: Sequence[PauliString] = (),
) -> list[PauliString]:
    """Find conjugate logicals ``zs`` for independent, mutually commuting logicals ``xs``.

    The result satisfies ``zs[i]`` anticommutes with ``xs[j]`` iff ``i == j``,
    the ``zs`` commute with each other and with every generator. ``hints`` are
    preferred building blocks: when they already form a dual set they are
    returned unchanged.
    """
    n = g.n_qubits
    k = len(xs)
    for x in xs:
        for s in g:
            if not commutes(x, s):
                raise InvalidStabilizerError(f"logical {x} does not commute with {s}")
    sf = standard_form(g)
    if k != len(sf.logical_xs):
        raise ValueError(f"expected {len(sf.logical_xs)} logical X operators, got {k}")
    pool = list(hints) + list(sf.logical_zs) + list(sf.logical_xs)
    xvecs = [x.symplectic for x in xs]

    def image(v: int) -> int:
        out = 0
        for j, xv in enumerate(xvecs):
            if symplectic_inner(v, xv, n):
                out |= 1 << j
        return out

    span = _Span()
    for p in pool:
        span.add(image(p.symplectic))
    if span.rank != k:
        raise ValueError("logical X operators are not independent modulo the stabilizer group")
    zs = []
    for i in range(k):
        rem, combo = span.reduce(1 << i)
        assert rem == 0
        v = 0
        for idx in range(len(pool)):
            if combo >> idx & 1:
                v ^= pool[idx].symplectic
        zs.append(v)
    # make the partners mutually commute without disturbing duality
    for i in range(k):
        for j in range(i + 1, k):
            if symplectic_inner(zs[i], zs[j], n):
                zs[j] ^= xvecs[i]
    return [PauliString.from_symplectic(n, v) for v in zs]


# ---------------------------------------------------------------------------
# Distance by exhaustive enumeration
# ---------------------------------------------------------------------------

LETTERS = "XYZ"


def enumerate_errors(
    n: int, weight: int, letters: str = LETTERS
) -> Iterator[tuple[tuple[int, ...], tuple[str, ...]]]:
    """All weight-``weight`` Pauli supports and letters.

    Order: support lexicographic, then letters with X < Y < Z.
    """
    for supp in itertools.combinations(range(n), weight):
        for word in itertools.product(letters, repeat=weight):
            yield supp, word


def pauli_from(n: int, support: Sequence[int], letters: Sequence[str]) -> PauliString:
    x = z = 0
    for q, ch in zip(support, letters):
        if ch in "XY":
            x |= 1 << q
        if ch in "YZ":
            z |= 1 << q
    return PauliString(n, x, z)


@dataclass(frozen=True)
class DistanceResult:
    distance: int | None  # None when nothing was found up to max_weight
    max_weight: int
    enumerated: int  # errors checked strictly below the reported distance
    witness: PauliString | None

    @property
    def found(self) -> bool:
        return self.distance is not None

    def describe(self) -> str:
        if self.found:
            return str(self.distance)
        return f">{self.max_weight}"


def distance(gens: GeneratorSet, max_weight: int) -> DistanceResult:
    """Minimum weight of a non-trivial logical operator, by exhaustive search.

    Errors are scanned by weight, then support, then letter; the first Pauli
    that commutes with every generator yet lies outside the group is the
    witness. Syndromes are accumulated as XORs of precomputed single-qubit
    syndromes, so a weight-w candidate costs w integer operations.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    n = gens.n_qubits
    single: list[dict[str, int]] = []
    for q in range(n):
        single.append({ch: gens.syndrome_of(pauli_from(n, (q,), (ch,))) for ch in LETTERS})
    count = 0
    for w in range(1, max_weight + 1):
        below = count
        for supp, letters in enumerate_errors(n, w):
            s = 0
            for q, ch in zip(supp, letters):
                s ^= single[q][ch]
            count += 1
            if s:
                continue
            p = pauli_from(n, supp, letters)
            if gens.decompose(p) is None:
                return DistanceResult(w, max_weight, below, p)
    return DistanceResult(None, max_weight, count, None)
