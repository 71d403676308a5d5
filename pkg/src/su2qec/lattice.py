"""Plaquette chains and honeycomb lattices with vertex/link/plaquette incidence.

Honeycombs are drawn as a brick wall: vertex ``(x, y)`` sits on zigzag line
``y`` at column ``x``; hexagon ``(i, j)`` spans columns ``x0..x0+2`` between
lines ``j`` and ``j+1`` with ``x0 = 2i + (j % 2)``. This is the same graph as
the hexagonal lattice, only with straightened edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal

Boundary = Literal["aperiodic", "periodic"]


class LatticeSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Link:
    id: int
    v1: int
    v2: int
    cls: str  # "x"/"y" on chains, "h"/"v" on honeycombs

    def other(self, v: int) -> int:
        if v == self.v1:
            return self.v2
        if v == self.v2:
            return self.v1
        raise ValueError(f"vertex {v} is not an endpoint of link {self.id}")


@dataclass(frozen=True)
class Plaquette:
    """Closed cycle ``vertices[0] -> vertices[1] -> ...`` where ``links[i]`` joins
    ``vertices[i]`` and ``vertices[i+1]``; traversal is counterclockwise from the
    bottom-left vertex."""

    id: int
    links: tuple[int, ...]
    roles: tuple[str, ...]
    vertices: tuple[int, ...]
    position: tuple[int, ...]

    def link(self, role: str) -> int:
        return self.links[self.roles.index(role)]


@dataclass(frozen=True)
class VertexStar:
    vertex: int
    links: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.links)


@dataclass(frozen=True)
class Lattice:
    kind: str
    size: tuple[int, ...]
    boundary: str
    vertices: tuple[tuple[int, int], ...]
    links: tuple[Link, ...]
    plaquettes: tuple[Plaquette, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_links(self) -> int:
        return len(self.links)

    @property
    def periodic(self) -> bool:
        return self.boundary == "periodic"

    def incident(self, v: int) -> list[int]:
        return [l.id for l in self.links if v in (l.v1, l.v2)]

    def external_link(self, plaquette: Plaquette, corner: int) -> int | None:
        """Link at ``plaquette.vertices[corner]`` that is not on the plaquette, if any."""
        v = plaquette.vertices[corner]
        m = len(plaquette.links)
        inside = {plaquette.links[corner - 1], plaquette.links[corner % m]}
        rest = [l for l in self.incident(v) if l not in inside]
        if len(rest) > 1:
            raise ValueError(f"vertex {v} has degree > 3")
        return rest[0] if rest else None

    def validate(self) -> None:
        for l in self.links:
            if l.v1 == l.v2:
                raise ValueError(f"link {l.id} is a self-loop")
        for v in range(self.n_vertices):
            if len(self.incident(v)) > 3:
                raise ValueError(f"vertex {v} has degree > 3")
        for p in self.plaquettes:
            m = len(p.links)
            for i, lid in enumerate(p.links):
                l = self.links[lid]
                if {l.v1, l.v2} != {p.vertices[i], p.vertices[(i + 1) % m]}:
                    raise ValueError(f"plaquette {p.id} is not a closed cycle at link {lid}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "size": list(self.size),
            "boundary": self.boundary,
            "orientation": "counterclockwise from bottom-left vertex",
            "vertices": [{"id": i, "x": x, "y": y} for i, (x, y) in enumerate(self.vertices)],
            "links": [{"id": l.id, "v1": l.v1, "v2": l.v2, "class": l.cls} for l in self.links],
            "plaquettes": [
                {"id": p.id, "links": list(p.links), "roles": list(p.roles), "vertices": list(p.vertices)}
                for p in self.plaquettes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _assemble(kind, size, boundary, raw_plaquettes, link_key, classify) -> Lattice:
    """Index vertices and links deterministically and build plaquette records.

    ``raw_plaquettes`` holds (position, vertex-coordinate cycle, roles).
    """
    coords = sorted({c for _, cyc, _ in raw_plaquettes for c in cyc})
    vid = {c: i for i, c in enumerate(coords)}
    edges: dict[frozenset, tuple] = {}
    for _, cyc, _ in raw_plaquettes:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            key = frozenset((a, b))
            if key not in edges:
                edges[key] = link_key(a, b)
    ordered = sorted(edges.items(), key=lambda kv: kv[1])
    lid = {}
    links = []
    for i, (key, sort_key) in enumerate(ordered):
        start, end = sort_key[-1]
        lid[key] = i
        links.append(Link(i, vid[start], vid[end], classify(start, end)))
    plaqs = []
    for i, (pos, cyc, roles) in enumerate(raw_plaquettes):
        ls = tuple(lid[frozenset((a, b))] for a, b in zip(cyc, cyc[1:] + cyc[:1]))
        plaqs.append(Plaquette(i, ls, tuple(roles), tuple(vid[c] for c in cyc), tuple(pos)))
    lat = Lattice(kind, tuple(size), boundary, tuple(coords), tuple(links), tuple(plaqs))
    lat.validate()
    return lat


def build_chain(n_plaquettes: int, boundary: Boundary = "aperiodic") -> Lattice:
    """Quasi-1D chain of square plaquettes; plaquette ``n`` has bottom-left vertex (n, 0)."""
    if boundary not in ("aperiodic", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    if n_plaquettes < 1:
        raise LatticeSizeError("a chain needs at least one plaquette")
    if boundary == "periodic" and n_plaquettes < 2:
        raise LatticeSizeError("a periodic chain needs at least two plaquettes")
    N = n_plaquettes
    per = boundary == "periodic"

    def wrap(x):
        return x % N if per else x

    raw = []
    for n in range(N):
        cyc = [(n, 0), (wrap(n + 1), 0), (wrap(n + 1), 1), (n, 1)]
        raw.append(((n,), cyc, ("bottom", "right", "top", "left")))

    if per and N == 2:
        return _chain_two_periodic(boundary)

    def link_key(a, b):
        if a[1] == b[1]:  # horizontal: start at the left end
            if per and {a[0], b[0]} == {0, N - 1}:
                start = (N - 1, a[1])
            else:
                start = min(a, b)
            end = b if start == a else a
            return (start[0], start[1], 0, (start, end))
        start, end = (a, b) if a[1] == 0 else (b, a)
        return (start[0], start[1], 1, (start, end))

    return _assemble("chain", (N,), boundary, raw, link_key, lambda s, e: "x" if s[1] == e[1] else "y")


def _chain_two_periodic(boundary) -> Lattice:
    """N=2 ring: each row has two parallel links between columns 0 and 1."""
    coords = [(0, 0), (0, 1), (1, 0), (1, 1)]
    vid = {c: i for i, c in enumerate(coords)}
    # (x, y, orientation) ordering of start vertices
    spec = [
        ((0, 0), (1, 0), "x"),  # bottom of plaquette 0
        ((0, 0), (0, 1), "y"),
        ((0, 1), (1, 1), "x"),  # top of plaquette 0
        ((1, 0), (0, 0), "x"),  # bottom of plaquette 1 (wraps)
        ((1, 0), (1, 1), "y"),
        ((1, 1), (0, 1), "x"),  # top of plaquette 1 (wraps)
    ]
    links = tuple(Link(i, vid[a], vid[b], c) for i, (a, b, c) in enumerate(spec))
    roles = ("bottom", "right", "top", "left")
    plaqs = (
        Plaquette(0, (0, 4, 2, 1), roles, (vid[(0, 0)], vid[(1, 0)], vid[(1, 1)], vid[(0, 1)]), (0,)),
        Plaquette(1, (3, 1, 5, 4), roles, (vid[(1, 0)], vid[(0, 0)], vid[(0, 1)], vid[(1, 1)]), (1,)),
    )
    lat = Lattice("chain", (2,), boundary, tuple(coords), links, plaqs)
    lat.validate()
    return lat


def build_honeycomb(n_x: int, n_y: int, boundary: Boundary = "aperiodic") -> Lattice:
    """Honeycomb of ``n_y`` rows with ``n_x`` hexagons each.

    Periodic boundaries identify column ``x`` with ``x + 2 n_x`` and line
    ``n_y`` with line 0 shifted by ``n_y % 2`` columns, which keeps every
    vertex at degree 3 for odd row counts.
    """
    if boundary not in ("aperiodic", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    if n_x < 1 or n_y < 1:
        raise LatticeSizeError("honeycomb sizes must be >= 1")
    if boundary == "periodic" and (n_x < 2 or n_y < 2):
        raise LatticeSizeError("periodic honeycombs need n_x, n_y >= 2")
    per = boundary == "periodic"
    W = 2 * n_x

    def canon(x, y):
        if not per:
            return (x, y)
        if y == n_y:
            x, y = x - n_y % 2, 0
        return (x % W, y)

    raw = []
    for j in range(n_y):
        for i in range(n_x):
            x0 = 2 * i + j % 2
            cyc = [(x0, j), (x0 + 1, j), (x0 + 2, j), (x0 + 2, j + 1), (x0 + 1, j + 1), (x0, j + 1)]
            cyc = [canon(*c) for c in cyc]
            roles = ("bottom-left", "bottom-right", "right", "top-right", "top-left", "left")
            raw.append(((i, j), cyc, roles))

    def link_key(a, b):
        if a[1] == b[1]:
            if per and {a[0], b[0]} == {0, W - 1}:
                start = (W - 1, a[1])
            else:
                start = min(a, b)
            end = b if start == a else a
            return (start[1], start[0], 0, (start, end))
        # vertical: start on the lower line (line n_y-1 wraps to line 0)
        lo, hi = sorted((a, b), key=lambda c: c[1])
        if per and lo[1] == 0 and hi[1] == n_y - 1:
            lo, hi = hi, lo
        return (lo[1], lo[0], 1, (lo, hi))

    return _assemble("honeycomb", (n_x, n_y), boundary, raw, link_key, lambda s, e: "h" if s[1] == e[1] else "v")


def vertex_stars(lat: Lattice) -> list[VertexStar]:
    """Incident links per vertex, sorted by link class then by direction of the far endpoint."""
    stars = []
    for v in range(lat.n_vertices):
        here = lat.vertices[v]

        def key(lid, here=here, v=v):
            l = lat.links[lid]
            far = lat.vertices[l.other(v)]
            # outgoing (this vertex is the stored start) sorts after incoming
            outgoing = l.v1 == v
            return (l.cls, outgoing, far)

        stars.append(VertexStar(v, tuple(sorted(lat.incident(v), key=key))))
    return stars
