"""Graph-state form of stabilizer states and local-complementation search.

Any stabilizer state equals a graph state up to single-qubit Cliffords.  This
module extracts that form from a tableau, walks the local-complementation
orbit looking for sparse graphs, and emits preparation circuits whose only
two-qubit gates are the CZ edges of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .circuit import Circuit
from .pauli import CliffordMap, PauliString, canonical_generators, conjugate_gate
from .tableau import Tableau


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adjacency stored as symmetric bitmask rows."""

    n: int
    rows: tuple[int, ...]  # rows[v] bit u set iff edge (u, v)

    def __post_init__(self) -> None:
        assert len(self.rows) == self.n
        for v, r in enumerate(self.rows):
            assert not (r >> v) & 1, "no self loops"
            assert r < (1 << self.n)
        for v in range(self.n):
            for u in range(v):
                assert (self.rows[v] >> u) & 1 == (self.rows[u] >> v) & 1

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self loop")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            r = self.rows[v] >> (v + 1) << (v + 1)  # only u > v
            while r:
                u = (r & -r).bit_length() - 1
                out.append((v, u))
                r &= r - 1
        return out

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def neighbors(self, v: int) -> list[int]:
        r = self.rows[v]
        out = []
        while r:
            out.append((r & -r).bit_length() - 1)
            r &= r - 1
        return out

    def local_complement(self, v: int) -> "Graph":
        """Toggle every edge between two neighbors of v."""
        nv = self.rows[v]
        rows = list(self.rows)
        r = nv
        while r:
            u = (r & -r).bit_length() - 1
            rows[u] ^= nv & ~(1 << u)
            r &= r - 1
        return Graph(self.n, tuple(rows))

    def key(self) -> bytes:
        return b"".join(r.to_bytes((self.n + 7) // 8, "little") for r in self.rows)


def _c1(*kinds: str) -> CliffordMap:
    gates = [(k, (0,), None) for k in kinds]
    return CliffordMap.from_gates(1, gates)


@lru_cache(maxsize=1)
def _word_table() -> dict[tuple, tuple[str, ...]]:
    """Shortest H/S word realizing each of the 24 single-qubit Cliffords."""
    def key(m: CliffordMap) -> tuple:
        xi = m.x_image(0)
        zi = m.z_image(0)
        return (xi.x, xi.z, xi.phase, zi.x, zi.z, zi.phase)

    table: dict[tuple, tuple[str, ...]] = {key(_c1()): ()}
    frontier = [((), _c1())]
    while frontier:
        nxt = []
        for word, m in frontier:
            for g in ("H", "S"):
                w2 = word + (g,)
                m2 = m.then(_c1(g))
                k2 = key(m2)
                if k2 not in table:
                    table[k2] = w2
                    nxt.append((w2, m2))
        frontier = nxt
    assert len(table) == 24
    return table


def clifford1_word(m: CliffordMap) -> tuple[str, ...]:
    """H/S gate sequence (circuit order) whose conjugation action equals m."""
    if m.n != 1:
        raise ValueError("single-qubit map required")
    xi = m.x_image(0)
    zi = m.z_image(0)
    return _word_table()[(xi.x, xi.z, xi.phase, zi.x, zi.z, zi.phase)]


# Local complementation at v maps |G> to sqrt(-iX)_v * sqrt(iZ)_neighbors |G'>
# with G' = complemented graph, so keeping the prepared state fixed means the
# per-vertex locals absorb the inverse factors.
_LC_AT_V = _c1("SQRT_X_DAG")
_LC_AT_NEIGHBOR = _c1("S")


@dataclass(frozen=True)
class GraphCompilation:
    """A stabilizer state written as locals applied after a graph state."""

    graph: Graph
    locals_: tuple[CliffordMap, ...]
    _cost: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        assert len(self.locals_) == self.graph.n

    def n_qubits(self) -> int:
        return self.graph.n

    def emit(self) -> Circuit:
        """Preparation circuit: H layer, CZ per edge, then per-vertex locals."""
        c = Circuit(self.graph.n)
        for q in range(self.graph.n):
            c.h(q)
        for u, v in self.graph.edges():
            c.cz(u, v)
        for q in range(self.graph.n):
            for kind in clifford1_word(self.locals_[q]):
                c._add(kind, q)
        return c

    def _lowered_counts(self) -> tuple[int, int]:
        if "zz" not in self._cost:
            from .lower import lower_to_native

            low = lower_to_native(self.emit())
            self._cost["zz"] = low.count("ZZ")
            self._cost["native"] = low.native_gate_count()
        return self._cost["zz"], self._cost["native"]

    def zz_count(self) -> int:
        return self._lowered_counts()[0]

    def native_count(self) -> int:
        return self._lowered_counts()[1]

    def cost(self) -> tuple[int, int, int]:
        zz, native = self._lowered_counts()
        return (self.graph.edge_count(), zz, native)

    def stabilizers(self) -> list[PauliString]:
        t = Tableau(self.graph.n)
        t.run(self.emit())
        return t.stabilizers()

    def local_complement(self, v: int) -> "GraphCompilation":
        g2 = self.graph.local_complement(v)
        new_locals = list(self.locals_)
        new_locals[v] = _LC_AT_V.then(new_locals[v])
        for u in self.graph.neighbors(v):
            new_locals[u] = _LC_AT_NEIGHBOR.then(new_locals[u])
        return GraphCompilation(g2, tuple(new_locals))

    def to_json_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "adjacency": list(self.graph.rows),
            "locals": [" ".join(clifford1_word(m)) for m in self.locals_],
            "cost": list(self.cost()),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "GraphCompilation":
        n = int(data["n"])
        graph = Graph(n, tuple(int(r) for r in data["adjacency"]))
        locals_ = tuple(_c1(*word.split()) for word in data["locals"])
        return GraphCompilation(graph, locals_)


def _as_rows(state) -> list[PauliString]:
    if isinstance(state, Tableau):
        return state.stabilizers()
    rows = list(state)
    n = rows[0].n
    if len(rows) != n or any(p.n != n for p in rows):
        raise ValueError("need exactly n generators on n qubits")
    for i, a in enumerate(rows):
        if not a.is_hermitian():
            raise ValueError(f"generator {i} is not hermitian")
        for b in rows[:i]:
            if not a.commutes(b):
                raise ValueError("generators must commute")
    if len(canonical_generators(rows)) != n:
        raise ValueError("generators are not independent")
    return rows


def extract_graph(state) -> GraphCompilation:
    """Rewrite a stabilizer state (tableau or generator list) in graph form."""
    rows = _as_rows(state)
    n = rows[0].n
    applied: list[tuple[str, int]] = []

    def apply_local(kind: str, q: int) -> None:
        nonlocal rows
        rows = [conjugate_gate(p, kind, (q,)) for p in rows]
        applied.append((kind, q))

    def x_rref(rs: list[PauliString]) -> tuple[int, list[PauliString]]:
        rs = list(rs)
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, n) if (rs[i].x >> c) & 1), None)
            if piv is None:
                continue
            rs[r], rs[piv] = rs[piv], rs[r]
            for i in range(n):
                if i != r and (rs[i].x >> c) & 1:
                    rs[i] = rs[i] * rs[r]
            r += 1
        return r, rs

    for _ in range(2 * n + 1):
        rank, rows = x_rref(rows)
        if rank == n:
            break
        # some row is pure Z; an H inside its support moves it into the X block
        zrow = next(p for p in rows[rank:] if p.x == 0)
        q = (zrow.z & -zrow.z).bit_length() - 1
        apply_local("H", q)
    else:
        raise AssertionError("graph form reduction did not converge")

    # X block is the identity now; clear the Z diagonal with S
    for q in range(n):
        assert rows[q].x == 1 << q
        if (rows[q].z >> q) & 1:
            apply_local("S", q)

    adj = []
    signs = []
    for q in range(n):
        p = rows[q]
        assert p.x == 1 << q and not (p.z >> q) & 1
        sp = (p.phase - (p.x & p.z).bit_count()) % 4
        assert sp in (0, 2), "graph-form row must be hermitian"
        adj.append(p.z)
        signs.append(sp == 2)
    graph = Graph(n, tuple(adj))

    # state = U_applied^dagger . Z^signs . |graph>; locals run sign fix first
    inv = {"H": "H", "S": "S_DAG"}
    per_vertex: list[list[str]] = [[] for _ in range(n)]
    for q in range(n):
        if signs[q]:
            per_vertex[q].append("Z")
    for kind, q in reversed(applied):
        per_vertex[q].append(inv[kind])
    locals_ = tuple(
        CliffordMap.from_gates(1, [(k, (0,), None) for k in word])
        for word in per_vertex
    )
    return GraphCompilation(graph, locals_)


def verify_compilation(comp: GraphCompilation, state) -> bool:
    """Check that the emitted circuit prepares exactly the target state."""
    return canonical_generators(comp.stabilizers()) == canonical_generators(
        _as_rows(state)
    )


def search_compilations(
    state,
    iters: int = 2000,
    seed: int = 0,
    keep: int = 8,
) -> list[GraphCompilation]:
    """Randomized greedy walk over the local-complementation orbit.

    Moves that do not increase the edge count are accepted; the walk restarts
    from the extracted base form after a patience window without improvement.
    Distinct graphs seen along the way are pooled, then ranked by
    (two-qubit count, native gate count).
    """
    base = extract_graph(state)
    rng = np.random.default_rng(seed)
    pool: dict[bytes, GraphCompilation] = {base.graph.key(): base}

    cur = base
    best_edges = base.graph.edge_count()
    stale = 0
    patience = 50
    for _ in range(iters):
        v = int(rng.integers(cur.graph.n))
        if not cur.graph.rows[v]:
            stale += 1
        else:
            cand = cur.local_complement(v)
            if cand.graph.edge_count() <= cur.graph.edge_count():
                cur = cand
                k = cand.graph.key()
                if k not in pool:
                    pool[k] = cand
                if cand.graph.edge_count() < best_edges:
                    best_edges = cand.graph.edge_count()
                    stale = 0
                else:
                    stale += 1
            else:
                stale += 1
        if stale > patience:
            cur = base
            stale = 0

    ranked = sorted(pool.values(), key=lambda c: c.cost())
    return ranked[:keep]


def emit_graph_circuit(gc: GraphCompilation) -> Circuit:
    return gc.emit()
