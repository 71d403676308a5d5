"""Gauss's-law stabilizer codes for SU(2) gauge links truncated at j = 1/2.

Code I repeats every link three times (slots 0, 1, 2) and turns each vertex
parity constraint into a Z-stabilizer. Code II places a 12-qubit carbon-code
block on half of the vertices (the dotted ones); each block stores the left
and right link of its vertex as two logical qubits, and the third link is
fixed by parity.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from .lattice import Lattice
from .pauli import (
    DistanceResult,
    GeneratorSet,
    InvalidStabilizerError,
    PauliString,
    _Span,
    commutes,
    distance,
    gf2_rank,
    in_group,
    logical_partners,
)


class DotAssignmentError(ValueError):
    """Dotted vertices do not cover every link exactly once."""


@dataclass
class StabilizerCode:
    name: str
    generators: GeneratorSet
    logical_xs: list[PauliString]
    logical_zs: list[PauliString]
    declared: tuple[int, int, int]
    layout: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.generators.n_qubits

    @property
    def k(self) -> int:
        return self.n - gf2_rank(self.generators.check_matrix())

    @property
    def logical_pairs(self) -> list[tuple[PauliString, PauliString]]:
        return list(zip(self.logical_xs, self.logical_zs))

    def check(self) -> None:
        """Assert the stabilizer/logical commutation structure."""
        self.generators.validate()
        if len(self.logical_xs) != self.k or len(self.logical_zs) != self.k:
            raise InvalidStabilizerError(
                f"{self.name}: {len(self.logical_xs)} logical pairs but k = {self.k}"
            )
        logicals = self.logical_xs + self.logical_zs
        for op in logicals:
            for g in self.generators:
                if not commutes(op, g):
                    raise InvalidStabilizerError(f"{self.name}: logical {op} anticommutes with {g}")
        k = self.k
        for i in range(k):
            for j in range(k):
                anti = not commutes(self.logical_xs[i], self.logical_zs[j])
                if anti != (i == j):
                    raise InvalidStabilizerError(f"{self.name}: bad X/Z pairing at ({i}, {j})")
                if not commutes(self.logical_xs[i], self.logical_xs[j]):
                    raise InvalidStabilizerError(f"{self.name}: logical X {i}, {j} anticommute")
                if not commutes(self.logical_zs[i], self.logical_zs[j]):
                    raise InvalidStabilizerError(f"{self.name}: logical Z {i}, {j} anticommute")

    def stabilizer_counts(self) -> dict[str, int]:
        xs = sum(1 for g in self.generators if g.z == 0)
        zs = sum(1 for g in self.generators if g.x == 0)
        return {"x_stabs": xs, "z_stabs": zs, "mixed_stabs": len(self.generators) - xs - zs}

    def to_dict(self) -> dict:
        n, k, d = self.declared
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "d_claimed": d,
            "generators": [str(g) for g in self.generators],
            "logicals": [{"x": str(x), "z": str(z)} for x, z in self.logical_pairs],
            "layout": self.layout,
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "StabilizerCode":
        gens = GeneratorSet.from_strs(d["generators"])
        xs = [PauliString.from_str(p["x"]) for p in d["logicals"]]
        zs = [PauliString.from_str(p["z"]) for p in d["logicals"]]
        return cls(
            d.get("name", "code"),
            gens,
            xs,
            zs,
            (d["n"], d["k"], d["d_claimed"]),
            d.get("layout", {}),
            d.get("meta", {}),
        )

    @classmethod
    def from_json(cls, text: str) -> "StabilizerCode":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Code I
# ---------------------------------------------------------------------------


def link_qubit(link: int, slot: int) -> int:
    return 3 * link + slot


def _link_triple(n: int, letter: str, link: int) -> PauliString:
    return PauliString.from_support(n, letter, [link_qubit(link, s) for s in range(3)])


def _cycle_x(n: int, links, slot: int = 0) -> PauliString:
    return PauliString.from_support(n, "X", [link_qubit(l, slot) for l in links])


def vertex_block_code() -> StabilizerCode:
    """Nine-qubit repetition code around one three-link vertex.

    Generator order matches the syndrome columns of the single-vertex table:
    the six X-pairs, then the vertex Z^9 check.
    """
    n = 9
    gens = []
    for l in range(3):
        gens.append(PauliString.from_support(n, "X", [3 * l, 3 * l + 1]))
        gens.append(PauliString.from_support(n, "X", [3 * l + 1, 3 * l + 2]))
    gens.append(PauliString.from_support(n, "Z", range(9)))
    # logical qubits follow the left (1) and right (3) links; link 2 is fixed by parity
    xs = [_cycle_x(n, [0, 1]), _cycle_x(n, [1, 2])]
    zs = [_link_triple(n, "Z", 0), _link_triple(n, "Z", 2)]
    labels = [f"{l + 1}{p}" for l in range(3) for p in ("", "'", "''")]
    code = StabilizerCode(
        "code1-vertex",
        GeneratorSet(n, tuple(gens)),
        xs,
        zs,
        (9, 2, 3),
        {"qubits": labels},
    )
    code.check()
    return code


def _cycle_basis_completion(lat: Lattice, chosen: list[int]) -> list[int]:
    """Extend link-set bitmasks in ``chosen`` to a basis of the cycle space.

    Uses fundamental cycles of a BFS spanning tree as candidates.
    """
    target = lat.n_links - lat.n_vertices + 1
    span = _Span()
    for c in chosen:
        span.add(c)
    parent: dict[int, tuple[int, int] | None] = {0: None}
    order = deque([0])
    tree = set()
    while order:
        v = order.popleft()
        for lid in lat.incident(v):
            w = lat.links[lid].other(v)
            if w not in parent:
                parent[w] = (v, lid)
                tree.add(lid)
                order.append(w)

    def path_to_root(v):
        out = 0
        while parent[v] is not None:
            u, lid = parent[v]
            out ^= 1 << lid
            v = u
        return out

    extra = []
    for l in lat.links:
        if span.rank >= target:
            break
        if l.id in tree:
            continue
        cyc = (1 << l.id) ^ path_to_root(l.v1) ^ path_to_root(l.v2)
        if span.add(cyc):
            extra.append(cyc)
    return extra


def _mask_links(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _plaquette_top(lat: Lattice, p) -> int:
    return p.link("top") if lat.kind == "chain" else p.link("top-left")


def bottom_string(lat: Lattice, slot: int = 0) -> PauliString:
    """X on one repetition slot of every bottom link of a chain."""
    if lat.kind != "chain":
        raise ValueError("bottom strings are defined on plaquette chains")
    n = 3 * lat.n_links
    return _cycle_x(n, [p.link("bottom") for p in lat.plaquettes], slot)


def build_code1(lat: Lattice) -> StabilizerCode:
    """Repetition code on links plus one Z-stabilizer per vertex.

    The highest-indexed vertex check is omitted because the product of all
    vertex checks is the identity.
    """
    n = 3 * lat.n_links
    gens = []
    for l in lat.links:
        gens.append(PauliString.from_support(n, "X", [link_qubit(l.id, 0), link_qubit(l.id, 1)]))
        gens.append(PauliString.from_support(n, "X", [link_qubit(l.id, 1), link_qubit(l.id, 2)]))
    dropped = lat.n_vertices - 1
    vertex_of_gen = []
    for v in range(lat.n_vertices):
        if v == dropped:
            continue
        qs = [link_qubit(lid, s) for lid in lat.incident(v) for s in range(3)]
        gens.append(PauliString.from_support(n, "Z", qs))
        vertex_of_gen.append(v)
    G = GeneratorSet(n, tuple(gens))

    plaq_masks = [sum(1 << lid for lid in p.links) for p in lat.plaquettes]
    span = _Span()
    chosen_plaqs = [i for i, m in enumerate(plaq_masks) if span.add(m)]
    cycles = [plaq_masks[i] for i in chosen_plaqs]
    topo = []
    if lat.periodic:
        if lat.kind == "chain":
            bottom = sum(1 << p.link("bottom") for p in lat.plaquettes)
            topo.append(bottom)
        topo += _cycle_basis_completion(lat, cycles + topo)
    xs = [_cycle_x(n, _mask_links(m)) for m in cycles + topo]
    hints = [_link_triple(n, "Z", _plaquette_top(lat, lat.plaquettes[i])) for i in chosen_plaqs]
    zs = logical_partners(G, xs, hints)

    if lat.kind == "chain":
        N = lat.size[0]
        declared = (9 * N, N + 1, 3) if lat.periodic else (9 * N + 3, N, 3)
    else:
        nx, ny = lat.size
        if lat.periodic:
            declared = (9 * nx * ny, nx * ny + 1, 3)
        else:
            declared = (3 * (3 * nx * ny + 2 * nx + 2 * ny - 1), nx * ny, 3)
    layout = {
        "scheme": "qubit = 3*link + slot",
        "qubits": [{"qubit": link_qubit(l, s), "link": l, "slot": s} for l in range(lat.n_links) for s in range(3)],
        "z_check_vertices": vertex_of_gen,
        "dropped_vertex": dropped,
        "logical_plaquettes": chosen_plaqs,
        "n_topological": len(topo),
    }
    code = StabilizerCode(
        f"code1-{lat.kind}-{'x'.join(map(str, lat.size))}-{lat.boundary}",
        G,
        xs,
        zs,
        declared,
        layout,
        {"lattice": {"kind": lat.kind, "size": list(lat.size), "boundary": lat.boundary}},
    )
    code.check()
    return code


def topological_logical(code: StabilizerCode, lat: Lattice) -> PauliString:
    """Winding-flux logical X: X on slot 0 of every bottom link of a periodic chain."""
    if lat.kind != "chain":
        raise ValueError("the bottom-link winding operator is defined on chains")
    op = bottom_string(lat)
    if not lat.periodic:
        bad = [g for g in code.generators if not commutes(op, g)]
        raise ValueError(
            "no topological logical on an aperiodic chain: the bottom-link X string "
            f"anticommutes with {len(bad)} corner Z-stabilizer(s)"
        )
    if op.n_qubits != code.n:
        raise ValueError("code and lattice sizes differ")
    for g in code.generators:
        if not commutes(op, g):
            raise InvalidStabilizerError(f"winding operator anticommutes with {g}")
    if in_group(op, code.generators):
        raise InvalidStabilizerError("winding operator is a stabilizer")
    for p in lat.plaquettes:
        zbar = _link_triple(code.n, "Z", p.link("top"))
        xbar = _cycle_x(code.n, p.links)
        if not (commutes(op, zbar) and commutes(op, xbar)):
            raise InvalidStabilizerError(f"winding operator fails to commute with plaquette {p.id} logicals")
    return op


# ---------------------------------------------------------------------------
# Code II: [[4,2,2]] and the carbon code
# ---------------------------------------------------------------------------

CARBON_LABELS = [f"{v}{p}" for v in range(1, 5) for p in ("", "'", "''")]


def _q(label: str) -> int:
    return CARBON_LABELS.index(label)


def _carbon_op(letter: str, labels: str) -> PauliString:
    return PauliString.from_support(12, letter, [_q(l) for l in labels.split()])


def code_422() -> StabilizerCode:
    """Four-qubit vertex code; logical qubits are the left (1) and right (3) links."""
    gens = GeneratorSet.from_strs(["ZZZZ", "XXXX"])
    xs = [PauliString.from_str("XXII"), PauliString.from_str("IXXI")]
    zs = [PauliString.from_str("ZIIZ"), PauliString.from_str("IIZZ")]
    code = StabilizerCode("422", gens, xs, zs, (4, 2, 2), {"qubits": ["1", "2", "3", "4"]})
    code.check()
    return code


def carbon_generators() -> list[PauliString]:
    inherited = [
        _carbon_op("Z", "1 2 3 4"),
        _carbon_op("Z", "1' 2' 3' 4'"),
        _carbon_op("Z", "1'' 2'' 3'' 4''"),
        _carbon_op("X", "1 2 3 4"),
        _carbon_op("X", "1' 2' 3' 4'"),
        _carbon_op("X", "1'' 2'' 3'' 4''"),
    ]
    c6 = [
        _carbon_op("Z", "1 1' 1'' 2 2' 2''"),
        _carbon_op("Z", "2 2' 2'' 3 3' 3''"),
        _carbon_op("X", "1 1' 2' 2'' 3'' 3"),
        _carbon_op("X", "2 2' 3' 3'' 1'' 1"),
    ]
    return inherited + c6


def carbon_logicals() -> tuple[list[PauliString], list[PauliString]]:
    xs = [_carbon_op("X", "3 3' 4 4'"), _carbon_op("X", "3 3'' 4 4''")]
    zs = [_carbon_op("Z", "1 1' 2 4'"), _carbon_op("Z", "1' 1'' 2' 4''")]
    return xs, zs


def carbon_code() -> StabilizerCode:
    xs, zs = carbon_logicals()
    code = StabilizerCode(
        "carbon",
        GeneratorSet(12, tuple(carbon_generators())),
        xs,
        zs,
        (12, 2, 4),
        {"qubits": CARBON_LABELS},
    )
    code.check()
    return code


@dataclass(frozen=True)
class DotSite:
    vertex: int
    left: int
    right: int
    implied: int

    @property
    def links(self) -> tuple[int, int, int]:
        return (self.left, self.right, self.implied)


@dataclass(frozen=True)
class DotAssignment:
    sites: tuple[DotSite, ...]

    @property
    def dotted(self) -> set[int]:
        return {s.vertex for s in self.sites}

    def owner(self) -> dict[int, tuple[int, str]]:
        """Map link id -> (dot index, role in {'left', 'right', 'implied'})."""
        out = {}
        for i, s in enumerate(self.sites):
            out[s.left] = (i, "left")
            out[s.right] = (i, "right")
            out[s.implied] = (i, "implied")
        return out

    def validate(self, lat: Lattice) -> None:
        seen: dict[int, int] = {}
        for s in self.sites:
            if sorted(s.links) != sorted(lat.incident(s.vertex)) or len(set(s.links)) != 3:
                raise DotAssignmentError(f"dot at vertex {s.vertex} must list its three incident links")
            for l in s.links:
                seen[l] = seen.get(l, 0) + 1
        missing = [l for l in range(lat.n_links) if l not in seen]
        doubled = sorted(l for l, c in seen.items() if c > 1)
        if missing or doubled:
            raise DotAssignmentError(f"uncovered links {missing}, doubly covered links {doubled}")


def _bipartition(lat: Lattice) -> list[int]:
    color = {0: 0}
    order = deque([0])
    while order:
        v = order.popleft()
        for lid in lat.incident(v):
            w = lat.links[lid].other(v)
            if w not in color:
                color[w] = 1 - color[v]
                order.append(w)
            elif color[w] == color[v]:
                raise DotAssignmentError(
                    "lattice is not bipartite, so no set of dotted vertices covers every link exactly once"
                )
    return [color[v] for v in range(lat.n_vertices)]


def _dot_site(lat: Lattice, v: int) -> DotSite:
    left = right = implied = None
    for lid in lat.incident(v):
        l = lat.links[lid]
        if l.cls in ("x", "h"):
            # horizontal links are stored left-to-right, wraps included
            if l.v2 == v:
                left = lid
            else:
                right = lid
        else:
            implied = lid
    if None in (left, right, implied):
        raise DotAssignmentError(
            f"dotted vertex {v} needs a left, right and vertical link (degree-2 boundary vertices are unsupported)"
        )
    return DotSite(v, left, right, implied)


def auto_dots(lat: Lattice) -> DotAssignment:
    """Dot the sublattice containing vertex (0, 0): bottom row at even columns, top at odd."""
    color = _bipartition(lat)
    dots = DotAssignment(tuple(_dot_site(lat, v) for v in range(lat.n_vertices) if color[v] == color[0]))
    dots.validate(lat)
    return dots


def build_code2(lat: Lattice, dots: DotAssignment | None = None) -> StabilizerCode:
    if dots is None:
        dots = auto_dots(lat)
    dots.validate(lat)
    D = len(dots.sites)
    n = 12 * D
    gens, xs, zs = [], [], []
    cx, cz = carbon_logicals()
    for d in range(D):
        gens += [g.on(n, 12 * d) for g in carbon_generators()]
        xs += [p.on(n, 12 * d) for p in cx]
        zs += [p.on(n, 12 * d) for p in cz]
    layout = {
        "scheme": "qubit = 12*dot + position",
        "positions": CARBON_LABELS,
        "dots": [
            {"vertex": s.vertex, "left": s.left, "right": s.right, "implied": s.implied} for s in dots.sites
        ],
    }
    size = "x".join(map(str, lat.size))
    code = StabilizerCode(
        f"code2-{lat.kind}-{size}-{lat.boundary}",
        GeneratorSet(n, tuple(gens)),
        xs,
        zs,
        (n, 2 * D, 4),
        layout,
        {
            "lattice": {"kind": lat.kind, "size": list(lat.size), "boundary": lat.boundary},
            "caveat": "Gauss's law at undotted vertices is not a stabilizer; the logical space contains unphysical states",
        },
    )
    code.check()
    return code


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def enumeration_cost(n: int, w: int) -> int:
    return sum(math.comb(n, j) * 3**j for j in range(1, w + 1))


def verify_distance(code: StabilizerCode, budget: int = 1_000_000) -> dict:
    """Exhaustive distance check bounded by ``budget`` enumerated errors.

    Code II codes are disjoint copies of one carbon block, so a single block
    is checked and the result applies to the whole code.
    """
    d = code.declared[2]
    blocks = code.layout.get("dots")
    if blocks is not None and len(blocks) > 1:
        res = distance(carbon_code().generators, d)
        return {"distance": res.describe(), "exhaustive": True, "method": "per carbon block", "enumerated": res.enumerated}
    w = d
    while w > 0 and enumeration_cost(code.n, w) > budget:
        w -= 1
    if w == 0:
        return {"distance": None, "exhaustive": False, "method": "skipped", "enumerated": 0}
    res: DistanceResult = distance(code.generators, w)
    if res.found:
        return {"distance": res.distance, "exhaustive": True, "method": "full", "enumerated": res.enumerated,
                "witness": str(res.witness)}
    bound = f">={w + 1}"
    return {"distance": bound, "exhaustive": w >= d, "method": "full" if w >= d else "bounded", "enumerated": res.enumerated}


def code_report(code: StabilizerCode, budget: int = 1_000_000) -> dict:
    n, k, d = code.declared
    out = {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "d_claimed": d,
        "declared": [n, k, d],
        "n_generators": len(code.generators),
        **code.stabilizer_counts(),
        "verified_distance": verify_distance(code, budget),
        "layout": {key: code.layout[key] for key in ("scheme", "dropped_vertex", "n_topological") if key in code.layout},
    }
    if "dots" in code.layout:
        out["layout"]["n_dots"] = len(code.layout["dots"])
    if "caveat" in code.meta:
        out["caveat"] = code.meta["caveat"]
    return out


def qubit_cost(n_plaquettes: int) -> dict:
    """Physical-qubit cost of protecting an aperiodic N-plaquette chain."""
    N = n_plaquettes
    return {
        "n_plaquettes": N,
        "links": 3 * N + 1,
        "five_qubit_per_link": 5 * (3 * N + 1),
        "five_qubit_per_link_approx": 15 * N,
        "code1": 9 * N + 3,
        "code2_approx": 12 * N,
        "five_qubit_on_spin_hamiltonian": 5 * N,
    }


def format_qubit_cost(n_plaquettes: int) -> str:
    c = qubit_cost(n_plaquettes)
    N = c["n_plaquettes"]
    return "\n".join(
        [
            f"N = {N} plaquettes, {c['links']} links",
            f"five-qubit code per link : 5*(3N+1) = {c['five_qubit_per_link']}  (~15N = {c['five_qubit_per_link_approx']})",
            f"code I                   : 9N+3     = {c['code1']}",
            f"code II                  : ~12N     = {c['code2_approx']}",
            f"five-qubit code on the N-qubit spin model: 5N = {c['five_qubit_on_spin_hamiltonian']}",
        ]
    )
