"""Syndrome extraction and weight-1 lookup-table decoding."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .codes import StabilizerCode
from .pauli import DimensionError, GeneratorSet, PauliString, enumerate_errors, in_group, multiply, pauli_from


class NotCorrectableError(ValueError):
    """Two inequivalent errors share a syndrome."""


@dataclass(frozen=True)
class Syndrome:
    bits: tuple[int, ...]

    @classmethod
    def from_int(cls, value: int, length: int) -> "Syndrome":
        return cls(tuple(value >> i & 1 for i in range(length)))

    @classmethod
    def from_str(cls, text: str) -> "Syndrome":
        return cls(tuple(int(c) for c in text))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def eigenvalues(self) -> list[int]:
        return [-1 if b else 1 for b in self.bits]

    def __xor__(self, other: "Syndrome") -> "Syndrome":
        return Syndrome(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    @property
    def trivial(self) -> bool:
        return not any(self.bits)


def syndrome(code: StabilizerCode | GeneratorSet, error: PauliString) -> Syndrome:
    gens = code.generators if isinstance(code, StabilizerCode) else code
    if error.n_qubits != gens.n_qubits:
        raise DimensionError(f"{error.n_qubits}-qubit error on a {gens.n_qubits}-qubit code")
    return Syndrome.from_int(gens.syndrome_of(error), len(gens))


@dataclass(frozen=True)
class TableEntry:
    syndrome: Syndrome
    correction: PauliString
    errors: tuple[PauliString, ...]  # every enumerated error sharing this syndrome


@dataclass(frozen=True)
class DecodeTable:
    n_qubits: int
    entries: dict[Syndrome, TableEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def rows(self) -> list[TableEntry]:
        return list(self.entries.values())

    def to_rows(self) -> list[dict]:
        return [
            {
                "syndrome": str(e.syndrome),
                "correction": str(e.correction),
                "class": [str(p) for p in e.errors],
            }
            for e in self.entries.values()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_rows(), indent=1)


@dataclass(frozen=True)
class Detected:
    """Non-trivial syndrome with no stored correction."""

    syndrome: Syndrome


def build_decode_table(code: StabilizerCode, weight: int = 1, letters: str = "XYZ") -> DecodeTable:
    """Map the syndrome of every error up to ``weight`` to a minimum-weight correction.

    ``letters`` restricts the error alphabet, e.g. ``"Z"`` for phase flips only.

    Errors sharing a syndrome must differ by a stabilizer; otherwise the code
    cannot correct them and :class:`NotCorrectableError` is raised.
    """
    gens = code.generators
    n = gens.n_qubits
    ident = PauliString.identity(n)
    entries: dict[Syndrome, TableEntry] = {
        syndrome(gens, ident): TableEntry(syndrome(gens, ident), ident, (ident,))
    }
    for w in range(1, weight + 1):
        for supp, lets in enumerate_errors(n, w, letters):
            e = pauli_from(n, supp, lets)
            s = syndrome(gens, e)
            hit = entries.get(s)
            if hit is None:
                entries[s] = TableEntry(s, e, (e,))
                continue
            if not in_group(multiply(hit.correction, e), gens):
                raise NotCorrectableError(
                    f"{code.name}: errors {hit.correction} and {e} share syndrome {s} "
                    "but differ by a logical operator"
                )
            entries[s] = TableEntry(s, hit.correction, hit.errors + (e,))
    return DecodeTable(n, entries)


def decode(table: DecodeTable, s: Syndrome) -> PauliString | Detected:
    hit = table.entries.get(s)
    if hit is None:
        return Detected(s)
    return hit.correction


def correct(code: StabilizerCode, table: DecodeTable, error: PauliString) -> bool:
    """True when decoding ``error`` returns the code to itself up to a stabilizer."""
    c = decode(table, syndrome(code, error))
    if isinstance(c, Detected):
        return False
    return in_group(multiply(c, error), code.generators)
