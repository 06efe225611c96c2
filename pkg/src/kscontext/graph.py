"""Small simple graphs on bitset adjacency, with exact search routines.

Vertices are ``0..n-1``; ``adj[v]`` is an int whose bit ``u`` is set when
``u`` and ``v`` are adjacent.  Everything here is exact and deterministic:
ties are always broken towards the smallest vertex label.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

GRAPH6_HEADER = ">>graph6<<"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency list length must equal n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..n-1")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [_popcount(r) for r in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.vertex_mask

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices``, relabeled ``0..k-1`` in ascending label order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(vs)}
    edges = [(index[u], index[v]) for u, v in combinations(vs, 2) if g.has_edge(u, v)]
    return Graph.from_edges(len(vs), edges)


def johnson_graph(m: int, k: int) -> Graph:
    """J(m, k): k-subsets of range(m), adjacent when they share k-1 elements."""
    if not 1 <= k < m:
        raise ValueError(f"need 1 <= k < m, got m={m}, k={k}")
    subsets = list(combinations(range(m), k))
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if len(set(subsets[i]) & set(subsets[j])) == k - 1
    ]
    return Graph.from_edges(len(subsets), edges)


def johnson_labels(m: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(m), k))


def circulant(n: int, connections: Iterable[int]) -> Graph:
    conn = {c % n for c in connections}
    if 0 in conn:
        raise ValueError("connection set must not contain 0")
    if any((n - c) % n not in conn for c in conn):
        raise ValueError("connection set must be closed under negation")
    return Graph.from_edges(n, ((i, (i + c) % n) for i in range(n) for c in conn if i < (i + c) % n))


# --------------------------------------------------------------------------
# graph6

class Graph6Error(ValueError):
    pass


def _encode_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = [g.has_edge(i, j) for j in range(1, g.n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    chunks = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chunks.append(chr(val + 63))
    return _encode_size(g.n) + "".join(chunks)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} at position {pos} outside 63..126")
    vals = [ord(c) - 63 for c in s]
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte size header")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte size header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} edge bytes for n={n}, got {len(body)}")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, stripped_text)`` for every non-blank line."""
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if s.startswith(GRAPH6_HEADER):
            s = s[len(GRAPH6_HEADER):]
        if s:
            yield lineno, s


# --------------------------------------------------------------------------
# cliques, independence, colouring

def _greedy_color_bound(g: Graph, cand: int) -> tuple[list[int], list[int]]:
    """Sequential colouring of ``cand``; returns vertices and colour numbers
    in non-decreasing colour order (the usual MCQ ordering)."""
    order: list[int] = []
    colors: list[int] = []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~(1 << v)
            avail &= ~g.adj[v]
            uncolored &= ~(1 << v)
            order.append(v)
            colors.append(color)
    return order, colors


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    best = [0]

    def expand(size: int, cand: int) -> None:
        order, colors = _greedy_color_bound(g, cand)
        for idx in range(len(order) - 1, -1, -1):
            if size + colors[idx] <= best[0]:
                return
            v = order[idx]
            new = cand & g.adj[v]
            if new:
                expand(size + 1, new)
            elif size + 1 > best[0]:
                best[0] = size + 1
            cand &= ~(1 << v)

    expand(0, g.vertex_mask)
    return best[0]


def maximum_clique(g: Graph) -> list[int]:
    """One maximum clique (the lexicographically smallest)."""
    cl = maximum_cliques(g)
    return list(cl[0]) if cl else []


def maximum_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Every clique of size clique_number(g), sorted lexicographically."""
    if g.n == 0:
        return []
    target = clique_number(g)
    found: list[tuple[int, ...]] = []

    def expand(chosen: list[int], cand: int) -> None:
        if len(chosen) == target:
            found.append(tuple(chosen))
            return
        if len(chosen) + _popcount(cand) < target:
            return
        _, colors = _greedy_color_bound(g, cand)
        if len(chosen) + (colors[-1] if colors else 0) < target:
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            # only larger labels afterwards, so every clique is produced once
            chosen.append(v)
            expand(chosen, cand & g.adj[v])
            chosen.pop()
            if len(chosen) + _popcount(cand) < target:
                return

    expand([], g.vertex_mask)
    found.sort()
    return found


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def maximum_independent_set(g: Graph) -> list[int]:
    return maximum_clique(complement(g))


def greedy_coloring(g: Graph) -> list[int]:
    """DSATUR greedy colouring (deterministic); returns colour per vertex."""
    n = g.n
    color = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    degs = g.degrees()
    for _ in range(n):
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (len(sat[u]), degs[u], -u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        for u in _bits(g.adj[v]):
            sat[u].add(c)
    return color


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by DSATUR branch and bound.

    Lower bound max(clique number, ceil(n / independence number)); upper
    bound from greedy DSATUR.  The search only tries to beat the current
    upper bound, so it stops as soon as the bounds meet.
    """
    n = g.n
    if n == 0:
        return 0
    omega = clique_number(g)
    alpha = independence_number(g)
    lower = max(omega, -(-n // alpha))
    greedy = greedy_coloring(g)
    upper = max(greedy) + 1
    if lower >= upper:
        return upper
    for k in range(lower, upper):
        if _k_colorable(g, k, maximum_clique(g)):
            return k
    return upper


def _k_colorable(g: Graph, k: int, seed_clique: Sequence[int]) -> bool:
    n = g.n
    color = [-1] * n
    # forbidden[v] is a bitmask of colours used by neighbours of v
    forbidden = [0] * n
    full = (1 << k) - 1

    def assign(v: int, c: int, undo: list[int]) -> None:
        color[v] = c
        bit = 1 << c
        for u in _bits(g.adj[v]):
            if not forbidden[u] & bit:
                forbidden[u] |= bit
                undo.append(u)

    def unassign(v: int, c: int, undo: list[int]) -> None:
        color[v] = -1
        bit = ~(1 << c)
        for u in undo:
            forbidden[u] &= bit

    # The seed clique gets colours 0..|Q|-1; this breaks colour symmetry.
    for c, v in enumerate(seed_clique):
        assign(v, c, [])
    used = len(seed_clique)

    def search(used: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        best, best_key = -1, None
        for v in range(n):
            if color[v] >= 0:
                continue
            avail = full & ~forbidden[v]
            if not avail:
                return False
            key = (_popcount(forbidden[v] & full), _popcount(g.adj[v]))
            if best_key is None or key > best_key:
                best, best_key = v, key
        v = best
        avail = full & ~forbidden[v]
        for c in _bits(avail):
            if c > used:
                break
            undo: list[int] = []
            assign(v, c, undo)
            if search(max(used, c + 1), remaining - 1):
                return True
            unassign(v, c, undo)
        return False

    return search(used, n - used)


# --------------------------------------------------------------------------
# refinement, automorphisms, isomorphism

def _refine(g: Graph, colors: Sequence[int]) -> tuple[list[int], tuple]:
    """Colour refinement to the coarsest equitable partition.

    New colours are ranks of (old colour, sorted neighbour colours), so the
    result is determined by the isomorphism class of (g, colors).  The
    returned trace records the signatures at every round; two coloured
    graphs that are isomorphic produce identical traces.
    """
    cols = list(colors)
    trace = []
    k = len(set(cols))
    while True:
        sigs = [
            (cols[v], tuple(sorted(cols[u] for u in _bits(g.adj[v]))))
            for v in range(g.n)
        ]
        ranked = sorted(set(sigs))
        index = {s: i for i, s in enumerate(ranked)}
        cols = [index[s] for s in sigs]
        trace.append(tuple((s, sigs.count(s)) for s in ranked))
        if len(ranked) == k:
            return cols, tuple(trace)
        k = len(ranked)


def _individualize(colors: Sequence[int], v: int) -> list[int]:
    return [2 * c + (1 if u == v else 0) for u, c in enumerate(colors)]


def _cells(colors: Sequence[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _target_cell(colors: Sequence[int]) -> int | None:
    cells = _cells(colors)
    nontrivial = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
    if not nontrivial:
        return None
    return min(nontrivial)[1]


def _find_isomorphism(
    g: Graph, h: Graph, cg: list[int], ch: list[int]
) -> list[int] | None:
    """Backtracking search for a colour-preserving isomorphism g -> h.

    ``cg`` and ``ch`` must already be equitable with matching traces.
    """
    target = _target_cell(cg)
    if target is None:
        where = {c: v for v, c in enumerate(ch)}
        f = [where[c] for c in cg]
        for u in range(g.n):
            image = 0
            for w in _bits(g.adj[u]):
                image |= 1 << f[w]
            if image != h.adj[f[u]]:
                return None
        return f
    u = min(v for v, c in enumerate(cg) if c == target)
    cg2, tg = _refine(g, _individualize(cg, u))
    for w in (v for v, c in enumerate(ch) if c == target):
        ch2, th = _refine(h, _individualize(ch, w))
        if tg != th:
            continue
        f = _find_isomorphism(g, h, cg2, ch2)
        if f is not None:
            return f
    return None


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A vertex map ``f`` with ``uv`` an edge of g iff ``f[u]f[v]`` is one of h."""
    if g.n != h.n or g.num_edges() != h.num_edges():
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg, tg = _refine(g, [0] * g.n)
    ch, th = _refine(h, [0] * h.n)
    if tg != th:
        return None
    return _find_isomorphism(g, h, cg, ch)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    return all(
        g.has_edge(perm[u], perm[v]) for u, v in g.edges()
    ) and sorted(perm) == list(range(g.n))


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx > ry:
                rx, ry = ry, rx
            self.parent[ry] = rx


def automorphism_orbits(g: Graph) -> list[list[int]]:
    """Orbits of Aut(g), each sorted, listed by smallest member."""
    n = g.n
    uf = _UnionFind(n)
    base, _ = _refine(g, [0] * n)
    for cell in sorted(_cells(base).values()):
        reps: list[int] = []
        for v in cell:
            if any(uf.find(v) == uf.find(r) for r in reps):
                continue
            mapped = False
            cv, tv = _refine(g, _individualize(base, v))
            for r in reps:
                cr, tr = _refine(g, _individualize(base, r))
                if tr != tv:
                    continue
                f = _find_isomorphism(g, g, cr, cv)
                if f is not None:
                    for x in range(n):
                        uf.union(x, f[x])
                    mapped = True
                    break
            if not mapped:
                reps.append(v)
    orbits: dict[int, list[int]] = {}
    for v in range(n):
        orbits.setdefault(uf.find(v), []).append(v)
    return sorted(orbits.values())


def is_vertex_transitive(g: Graph) -> bool:
    if g.n <= 1:
        return True
    if len(set(g.degrees())) != 1:
        return False
    return len(automorphism_orbits(g)) == 1
