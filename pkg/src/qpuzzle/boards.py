"""Board geometry, particle content, and basis-state enumeration.

A board is a set of sites connected by swap edges, populated by colored
particles.  Particles of the same color are indistinguishable (fermions,
bosons, or vacuum "particles" standing in for empty sites), so the
distinguishable arrangements of colors over sites form the computational
basis of the puzzle's qudit Hilbert space.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from pathlib import Path


class Statistics(str, Enum):
    FERMION = "fermion"
    BOSON = "boson"
    VACUUM = "vacuum"

    @property
    def exchange_sign(self) -> int:
        # Vacuum exchanges are phase-free, like bosons.
        return -1 if self is Statistics.FERMION else 1


@dataclass(frozen=True)
class ColorSpec:
    id: int
    count: int
    statistics: Statistics


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    label: str | None = None

    @property
    def sites(self) -> tuple[int, int]:
        return (self.a, self.b)


class BoardError(ValueError):
    pass


@dataclass(frozen=True)
class BoardSpec:
    """Geometry plus particle content of one puzzle instance.

    ``basis_order`` optionally pins the basis enumeration to a fixed word
    list (used by the 2x2 slide family and the cube so matrices compare
    bit-for-bit against the published fixtures); otherwise enumeration is
    lexicographic in the color-id words.
    """

    n_sites: int
    edges: tuple[Edge, ...]
    colors: tuple[ColorSpec, ...]
    layout: tuple[tuple[float, float], ...] | None = None
    basis_order: tuple[tuple[int, ...], ...] | None = None
    name: str | None = None

    def __post_init__(self):
        if self.n_sites <= 0:
            raise BoardError("board must have at least one site")
        total = sum(c.count for c in self.colors)
        if total != self.n_sites:
            raise BoardError(
                f"color counts sum to {total}, expected {self.n_sites}"
            )
        if len({c.id for c in self.colors}) != len(self.colors):
            raise BoardError("duplicate color ids")
        for c in self.colors:
            if c.count <= 0:
                raise BoardError(f"color {c.id} has nonpositive count")
        for e in self.edges:
            if e.a == e.b:
                raise BoardError(f"edge {e} has identical endpoints")
            if not (0 <= e.a < self.n_sites and 0 <= e.b < self.n_sites):
                raise BoardError(f"edge {e} endpoint out of range")

    @property
    def sites(self) -> range:
        return range(self.n_sites)

    def color(self, color_id: int) -> ColorSpec:
        for c in self.colors:
            if c.id == color_id:
                return c
        raise BoardError(f"unknown color id {color_id}")

    def edge_by_label(self, label: str) -> Edge:
        for e in self.edges:
            if e.label == label:
                return e
        raise BoardError(f"no edge labeled {label!r}")

    def has_edge(self, pair: tuple[int, int]) -> bool:
        pair = tuple(sorted(pair))
        return any(tuple(sorted(e.sites)) == pair for e in self.edges)

    def is_connected(self) -> bool:
        if self.n_sites == 1:
            return True
        adj: dict[int, set[int]] = {i: set() for i in self.sites}
        for e in self.edges:
            adj[e.a].add(e.b)
            adj[e.b].add(e.a)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.n_sites

    def to_json(self) -> dict:
        out = {
            "sites": self.n_sites,
            "edges": [[e.a, e.b] + ([e.label] if e.label else []) for e in self.edges],
            "colors": [
                {"id": c.id, "count": c.count, "statistics": c.statistics.value}
                for c in self.colors
            ],
        }
        if self.layout is not None:
            out["layout"] = [list(xy) for xy in self.layout]
        if self.basis_order is not None:
            out["basis_order"] = [list(w) for w in self.basis_order]
        if self.name is not None:
            out["name"] = self.name
        return out

    @staticmethod
    def from_json(obj: dict, name: str | None = None) -> "BoardSpec":
        edges = []
        for raw in obj["edges"]:
            if len(raw) == 3:
                edges.append(Edge(raw[0], raw[1], raw[2]))
            else:
                edges.append(Edge(raw[0], raw[1]))
        colors = tuple(
            ColorSpec(c["id"], c["count"], Statistics(c["statistics"]))
            for c in obj["colors"]
        )
        layout = obj.get("layout")
        if layout is not None:
            layout = tuple((float(x), float(y)) for x, y in layout)
        basis_order = obj.get("basis_order")
        if basis_order is not None:
            basis_order = tuple(tuple(w) for w in basis_order)
        return BoardSpec(
            n_sites=obj["sites"],
            edges=tuple(edges),
            colors=colors,
            layout=layout,
            basis_order=basis_order,
            name=obj.get("name", name),
        )

    @staticmethod
    def load(path: str | Path) -> "BoardSpec":
        path = Path(path)
        with open(path) as fh:
            return BoardSpec.from_json(json.load(fh), name=path.stem)


@dataclass(frozen=True)
class BasisState:
    """A distinguishable coloring: color id of the particle at each site."""

    word: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(str(c) for c in self.word)


@dataclass(frozen=True)
class PuzzleSpace:
    board: BoardSpec
    basis: tuple[BasisState, ...]
    index: dict[tuple[int, ...], int] = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, state: BasisState) -> int:
        return self.index[state.word]


def qudit_dimension(n_sites: int, counts: list[int] | tuple[int, ...]) -> int:
    """Multinomial count of distinguishable colorings, exact integers."""
    if sum(counts) != n_sites:
        raise BoardError(f"counts {counts} do not sum to {n_sites}")
    d = math.factorial(n_sites)
    for c in counts:
        d //= math.factorial(c)
    return d


def _multiset_words(colors: tuple[ColorSpec, ...], n_sites: int):
    pool = []
    for c in sorted(colors, key=lambda c: c.id):
        pool.extend([c.id] * c.count)
    # sorted(set(...)) of permutations is fine at desk scale but wasteful;
    # generate distinct permutations lexicographically instead.
    seen = set()
    for word in permutations(pool):
        if word not in seen:
            seen.add(word)
            yield word


def enumerate_basis(board: BoardSpec) -> PuzzleSpace:
    """All distinct coloring words of the board, in canonical order."""
    expected = qudit_dimension(board.n_sites, [c.count for c in board.colors])
    if board.basis_order is not None:
        words = list(board.basis_order)
        if len(words) != expected or len(set(words)) != len(words):
            raise BoardError("pinned basis_order does not enumerate the basis")
        counts = {c.id: c.count for c in board.colors}
        for w in words:
            got = {cid: w.count(cid) for cid in counts}
            if got != counts:
                raise BoardError(f"basis word {w} has wrong color multiset")
    else:
        words = sorted(_multiset_words(board.colors, board.n_sites))
    assert len(words) == expected
    basis = tuple(BasisState(w) for w in words)
    index = {w: i for i, w in enumerate(words)}
    return PuzzleSpace(board=board, basis=basis, index=index)
