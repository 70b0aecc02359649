"""Fatgraphs as permutation pairs on half-edges.

A fatgraph (ribbon graph) is stored as a pair of permutations of the set
``{0, ..., m-1}`` of half-edges:

- ``sigma``: its cycles are the vertices; within a cycle, the order is the
  counterclockwise cyclic order of half-edges around that vertex;
- ``alpha``: a fixed-point-free involution pairing the two half-edges of
  each geometric edge.

Boundary cycles are the orbits of the face permutation ``phi = sigma o alpha``
(``phi(h) = sigma[alpha[h]]``).  This orientation convention is fixed once
here and consumed unchanged by the volume-form construction.

Vertices may carry a flag: ``"o"`` (ordinary), ``"d"`` (delta-labeled, may
have valence below three) or ``"n"`` (node).  Isomorphisms preserve flags and,
when attached, boundary labels.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import (
    LoopCollapse,
    MalformedGraph,
    NotAnAutomorphism,
    NotExpandable,
    WrongType,
)

ORDINARY = "o"
DELTA = "d"
NODE = "n"

_FLAGS = (ORDINARY, DELTA, NODE)


class GraphType(NamedTuple):
    g: int
    n: int


class FixedCells(NamedTuple):
    vertices: int
    edges: int
    boundary_cycles: int

    @property
    def total(self) -> int:
        return self.vertices + self.edges + self.boundary_cycles


class BoundaryCycles(NamedTuple):
    """Orbits of the face permutation, one per boundary component.

    ``cycles`` lists half-edges in traversal order; each cycle starts at its
    smallest half-edge and cycles are sorted by that smallest element.
    ``labels`` assigns 1..n unless explicit labels were attached to the graph.
    """

    cycles: tuple
    labels: tuple

    @property
    def n(self) -> int:
        return len(self.cycles)


def _cycles_of(perm: Sequence[int]):
    """Cycles of a permutation, each starting at its minimum, sorted by it."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        h = perm[start]
        while h != start:
            cyc.append(h)
            seen[h] = True
            h = perm[h]
        out.append(tuple(cyc))
    return tuple(out)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_order(p: Sequence[int]) -> int:
    order = 1
    q = tuple(p)
    ident = tuple(range(len(p)))
    while q != ident:
        q = perm_compose(p, q)
        order += 1
    return order


class Fatgraph:
    """Immutable fatgraph; all operations return new instances.

    Examples::

        >>> theta = Fatgraph.from_cycles([(0, 1, 2), (3, 4, 5)],
        ...                              [(0, 3), (1, 5), (2, 4)])
        >>> theta.graph_type()
        GraphType(g=0, n=3)
        >>> torus = Fatgraph.from_cycles([(0, 1, 2), (3, 4, 5)],
        ...                              [(0, 3), (1, 4), (2, 5)])
        >>> torus.graph_type()
        GraphType(g=1, n=1)
    """

    __slots__ = ("sigma", "alpha", "flags", "boundary_labels",
                 "_vertices", "_edges", "_key")

    def __init__(self, sigma, alpha, flags=None, boundary_labels=None,
                 check: bool = True):
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        m = len(self.sigma)
        if flags is None:
            self.flags = (ORDINARY,) * m
        else:
            self.flags = tuple(flags)
        self.boundary_labels = (None if boundary_labels is None
                                else tuple(boundary_labels))
        self._vertices = None
        self._edges = None
        self._key = None
        if check:
            self._check()

    @classmethod
    def from_cycles(cls, vertex_cycles, edge_pairs, delta=(), node=(),
                    boundary_labels=None) -> "Fatgraph":
        """Build from explicit vertex cycles and edge pairs.

        ``delta`` and ``node`` are iterables of half-edges; the vertex
        containing such a half-edge gets the corresponding flag.
        """
        m = sum(len(c) for c in vertex_cycles)
        sigma = [None] * m
        flags = [ORDINARY] * m
        delta = set(delta)
        node = set(node)
        for cyc in vertex_cycles:
            flag = ORDINARY
            if any(h in node for h in cyc):
                flag = NODE
            elif any(h in delta for h in cyc):
                flag = DELTA
            for i, h in enumerate(cyc):
                if not (0 <= h < m) or sigma[h] is not None:
                    raise MalformedGraph("vertex cycles are not a permutation "
                                         "of 0..%d" % (m - 1))
                sigma[h] = cyc[(i + 1) % len(cyc)]
                flags[h] = flag
        alpha = [None] * m
        for a, b in edge_pairs:
            if alpha[a] is not None or alpha[b] is not None or a == b:
                raise MalformedGraph("edge pairs are not a perfect matching")
            alpha[a] = b
            alpha[b] = a
        if any(x is None for x in alpha):
            raise MalformedGraph("unpaired half-edge")
        return cls(sigma, alpha, flags=flags, boundary_labels=boundary_labels)

    # -- validation ------------------------------------------------------

    def _check(self):
        m = len(self.sigma)
        if m == 0 or m % 2:
            raise MalformedGraph("half-edge count must be positive and even")
        if sorted(self.sigma) != list(range(m)) or len(self.alpha) != m or \
                sorted(self.alpha) != list(range(m)):
            raise MalformedGraph("sigma and alpha must be permutations of "
                                 "the same half-edge set")
        for h in range(m):
            if self.alpha[h] == h or self.alpha[self.alpha[h]] != h:
                raise MalformedGraph("alpha is not a fixed-point-free "
                                     "involution")
        if len(self.flags) != m or any(f not in _FLAGS for f in self.flags):
            raise MalformedGraph("bad vertex flags")
        for cyc in self.vertices:
            fl = {self.flags[h] for h in cyc}
            if len(fl) != 1:
                raise MalformedGraph("flag not constant on a vertex")
            if fl == {ORDINARY} and len(cyc) < 3:
                raise MalformedGraph("ordinary vertex of valence < 3")
        # connectivity under the group generated by sigma and alpha
        seen = [False] * m
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            h = stack.pop()
            for nxt in (self.sigma[h], self.alpha[h]):
                if not seen[nxt]:
                    seen[nxt] = True
                    count += 1
                    stack.append(nxt)
        if count != m:
            raise MalformedGraph("graph is not connected")
        if self.boundary_labels is not None:
            cyc_label = {}
            for h in range(m):
                cyc_label.setdefault(self._boundary_root(h),
                                     self.boundary_labels[h])
            for h in range(m):
                if self.boundary_labels[h] != cyc_label[self._boundary_root(h)]:
                    raise MalformedGraph("boundary labels not constant on "
                                         "boundary cycles")

    def _boundary_root(self, h: int) -> int:
        best = h
        cur = self.sigma[self.alpha[h]]
        while cur != h:
            best = min(best, cur)
            cur = self.sigma[self.alpha[cur]]
        return best

    # -- basic structure -------------------------------------------------

    @property
    def num_half_edges(self) -> int:
        return len(self.sigma)

    @property
    def num_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def vertices(self) -> tuple:
        if self._vertices is None:
            self._vertices = _cycles_of(self.sigma)
        return self._vertices

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple:
        """Edges as sorted half-edge pairs, ordered by smaller half-edge."""
        if self._edges is None:
            self._edges = tuple(sorted((h, self.alpha[h])
                                       for h in range(len(self.sigma))
                                       if h < self.alpha[h]))
        return self._edges

    def edge_index(self, h: int) -> int:
        pair = (min(h, self.alpha[h]), max(h, self.alpha[h]))
        return self.edges.index(pair)

    def _edge_index_table(self):
        table = [0] * self.num_half_edges
        for i, (a, b) in enumerate(self.edges):
            table[a] = table[b] = i
        return table

    @property
    def valences(self) -> tuple:
        return tuple(len(c) for c in self.vertices)

    def vertex_flag(self, v: int) -> str:
        return self.flags[self.vertices[v][0]]

    def vertex_of(self, h: int) -> int:
        for i, cyc in enumerate(self.vertices):
            if h in cyc:
                return i
        raise ValueError(h)

    # -- boundary cycles, type -------------------------------------------

    def boundary_cycles(self) -> BoundaryCycles:
        phi = tuple(self.sigma[self.alpha[h]]
                    for h in range(self.num_half_edges))
        cycles = _cycles_of(phi)
        if self.boundary_labels is not None:
            labels = tuple(self.boundary_labels[c[0]] for c in cycles)
        else:
            labels = tuple(range(1, len(cycles) + 1))
        return BoundaryCycles(cycles, labels)

    def boundary_edge_cycles(self) -> tuple:
        """Boundary cycles as sequences of edge indices."""
        table = self._edge_index_table()
        return tuple(tuple(table[h] for h in cyc)
                     for cyc in self.boundary_cycles().cycles)

    def graph_type(self) -> GraphType:
        n = self.boundary_cycles().n
        euler = self.num_vertices - self.num_edges + n
        if euler % 2:
            raise MalformedGraph("odd Euler count: V - E + n = %d" % euler)
        g = (2 - euler) // 2
        if g < 0:
            raise MalformedGraph("negative genus")
        return GraphType(g, n)

    # -- edge collapse ----------------------------------------------------

    def collapse_edge(self, e: int) -> "Fatgraph":
        """Collapse a non-loop edge, coalescing its endpoints.

        ``e`` is an edge index into :attr:`edges`.  The adjoining half-edges
        inherit the cyclic order of the two endpoints; boundary labels, when
        present, carry over unchanged.
        """
        p, q = self.edges[e]
        cyc_p = self._cycle_from(p)
        cyc_q = self._cycle_from(q)
        if cyc_p[0] in cyc_q:
            raise LoopCollapse("edge %d is a loop" % e)
        merged = list(cyc_p[1:]) + list(cyc_q[1:])
        if not merged:
            raise LoopCollapse("cannot collapse the only edge of the graph")
        keep = sorted(set(range(self.num_half_edges)) - {p, q})
        relabel = {h: i for i, h in enumerate(keep)}
        m = len(keep)
        sigma = [None] * m
        flags = [None] * m
        fp, fq = self.flags[p], self.flags[q]
        merged_flag = NODE if NODE in (fp, fq) else \
            (DELTA if DELTA in (fp, fq) else ORDINARY)
        for i, h in enumerate(merged):
            sigma[relabel[h]] = relabel[merged[(i + 1) % len(merged)]]
            flags[relabel[h]] = merged_flag
        for cyc in self.vertices:
            if p in cyc or q in cyc:
                continue
            for i, h in enumerate(cyc):
                sigma[relabel[h]] = relabel[cyc[(i + 1) % len(cyc)]]
                flags[relabel[h]] = self.flags[h]
        alpha = [None] * m
        for a, b in self.edges:
            if (a, b) == (min(p, q), max(p, q)):
                continue
            alpha[relabel[a]] = relabel[b]
            alpha[relabel[b]] = relabel[a]
        labels = None
        if self.boundary_labels is not None:
            labels = [self.boundary_labels[h] for h in keep]
        return Fatgraph(sigma, alpha, flags=flags, boundary_labels=labels)

    def _cycle_from(self, h: int) -> tuple:
        cyc = [h]
        cur = self.sigma[h]
        while cur != h:
            cyc.append(cur)
            cur = self.sigma[cur]
        return tuple(cyc)

    # -- expansions -------------------------------------------------------

    def expansions(self, v: int, up_to_isomorphism: bool = True):
        """All expansions of vertex ``v`` into trees of valence >= 3.

        One entry ``(graph, new_edges)`` per way of splitting the vertex,
        i.e. per dissection of a convex polygon whose sides are the stubs of
        ``v``; with ``up_to_isomorphism`` the list is deduplicated by
        isomorphism respecting the set of new edges.  ``new_edges`` is a
        frozenset of edge indices of the result; collapsing them recovers
        this graph.
        """
        stubs = self.vertices[v]
        k = len(stubs)
        if k <= 3:
            raise NotExpandable("vertex of valence %d" % k)
        out = []
        seen = set()
        for diagonals in _noncrossing_diagonal_sets(k):
            graph, new_edges = self._expand_at(v, diagonals)
            if up_to_isomorphism:
                marks = [0] * graph.num_half_edges
                for e in new_edges:
                    a, b = graph.edges[e]
                    marks[a] = marks[b] = 1
                key = graph.canonical_key(extra=tuple(marks))
                if key in seen:
                    continue
                seen.add(key)
            out.append((graph, frozenset(new_edges)))
        return out

    def _expand_at(self, v: int, diagonals):
        stubs = self.vertices[v]
        k = len(stubs)
        faces = [list(range(k))]
        for a, b in diagonals:
            for idx, face in enumerate(faces):
                if a in face and b in face:
                    ia, ib = face.index(a), face.index(b)
                    if ia > ib:
                        ia, ib = ib, ia
                    faces[idx] = face[ia:ib + 1]
                    faces.append(face[ib:] + face[:ia + 1])
                    break
            else:
                raise AssertionError("crossing diagonals")
        m = self.num_half_edges
        half_of = {}  # (a, b) ordered corner pair -> new half-edge id
        for t, (a, b) in enumerate(sorted(diagonals)):
            half_of[(a, b)] = m + 2 * t
            half_of[(b, a)] = m + 2 * t + 1
        new_cycles = []
        for face in faces:
            cyc = []
            r = len(face)
            for t in range(r):
                c0, c1 = face[t], face[(t + 1) % r]
                if (c0 + 1) % k == c1:
                    cyc.append(stubs[c0])
                else:
                    cyc.append(half_of[(c0, c1)])
            new_cycles.append(tuple(cyc))
        cycles = [c for c in self.vertices if c != stubs] + new_cycles
        pairs = list(self.edges) + [(m + 2 * t, m + 2 * t + 1)
                                    for t in range(len(diagonals))]
        flag = self.flags[stubs[0]]
        delta = [h for h in range(m) if self.flags[h] == DELTA
                 and h not in stubs]
        node = [h for h in range(m) if self.flags[h] == NODE
                and h not in stubs]
        if flag == DELTA:
            delta += [c[0] for c in new_cycles]
        elif flag == NODE:
            node += [c[0] for c in new_cycles]
        graph = Fatgraph.from_cycles(cycles, pairs, delta=delta, node=node)
        table = graph._edge_index_table()
        new_edges = sorted(table[m + 2 * t] for t in range(len(diagonals)))
        return graph, new_edges

    # -- canonical form and automorphisms ---------------------------------

    def _traversal_order(self, h0: int):
        m = self.num_half_edges
        pos = [-1] * m
        order = [h0]
        pos[h0] = 0
        i = 0
        while i < len(order):
            h = order[i]
            i += 1
            for nxt in (self.sigma[h], self.alpha[h]):
                if pos[nxt] < 0:
                    pos[nxt] = len(order)
                    order.append(nxt)
        return order, pos

    def _encoding_from(self, h0: int, extra=None):
        order, pos = self._traversal_order(h0)
        sig = tuple(pos[self.sigma[h]] for h in order)
        alp = tuple(pos[self.alpha[h]] for h in order)
        flg = tuple(self.flags[h] for h in order)
        lab = () if self.boundary_labels is None else \
            tuple(self.boundary_labels[h] for h in order)
        ext = () if extra is None else tuple(extra[h] for h in order)
        return (sig, alp, flg, lab, ext)

    def canonical_key(self, extra=None):
        """Total-order key; equal keys iff isomorphic (flags, labels and the
        optional per-half-edge ``extra`` decoration respected)."""
        if extra is None and self._key is not None:
            return self._key
        m = self.num_half_edges
        best = min(self._encoding_from(h, extra) for h in range(m))
        gt = self.graph_type()
        key = (gt.g, gt.n, self.num_edges, best)
        if extra is None:
            self._key = key
        return key

    def automorphisms(self):
        """All half-edge permutations commuting with sigma and alpha and
        preserving flags and boundary labels.

        An automorphism is determined by the image of a single half-edge, so
        the group is exactly one map per half-edge whose canonical traversal
        encoding matches the minimal one.
        """
        m = self.num_half_edges
        encs = [self._encoding_from(h) for h in range(m)]
        best = min(encs)
        base_order, _ = self._traversal_order(encs.index(best))
        auts = []
        for h1 in range(m):
            if encs[h1] != best:
                continue
            order1, _ = self._traversal_order(h1)
            perm = [0] * m
            for a, b in zip(base_order, order1):
                perm[a] = b
            auts.append(tuple(perm))
        for a in auts:
            self._assert_automorphism(a)
        return auts

    def aut_order(self) -> int:
        return len(self.automorphisms())

    def _assert_automorphism(self, a):
        m = self.num_half_edges
        if sorted(a) != list(range(m)):
            raise NotAnAutomorphism("not a permutation")
        for h in range(m):
            if a[self.sigma[h]] != self.sigma[a[h]] or \
                    a[self.alpha[h]] != self.alpha[a[h]]:
                raise NotAnAutomorphism("does not commute with the graph")
            if self.flags[a[h]] != self.flags[h]:
                raise NotAnAutomorphism("does not preserve flags")
            if self.boundary_labels is not None and \
                    self.boundary_labels[a[h]] != self.boundary_labels[h]:
                raise NotAnAutomorphism("does not preserve boundary labels")

    def fixed_cells(self, a) -> FixedCells:
        """Counts of vertices, edges and boundary cycles mapped to themselves
        setwise by the automorphism ``a``."""
        self._assert_automorphism(a)
        fv = sum(1 for cyc in self.vertices
                 if frozenset(a[h] for h in cyc) == frozenset(cyc))
        fe = sum(1 for (p, q) in self.edges if {a[p], a[q]} == {p, q})
        fb = sum(1 for cyc in self.boundary_cycles().cycles
                 if frozenset(a[h] for h in cyc) == frozenset(cyc))
        return FixedCells(fv, fe, fb)

    def hyperelliptic_involution(self):
        """The least order-2 automorphism with 2g+2 fixed cells, or None.

        Only defined for graphs of type (g, 1) with g >= 1.
        """
        g, n = self.graph_type()
        if n != 1 or g < 1:
            raise WrongType("expected type (g,1) with g >= 1, got (%d,%d)"
                            % (g, n))
        ident = tuple(range(self.num_half_edges))
        found = []
        for a in self.automorphisms():
            if a == ident or perm_compose(a, a) != ident:
                continue
            if self.fixed_cells(a).total == 2 * g + 2:
                found.append(a)
        return min(found) if found else None

    # -- relabeling, equality, serialization ------------------------------

    def relabeled(self, perm) -> "Fatgraph":
        """Apply a half-edge relabeling ``h -> perm[h]``."""
        m = self.num_half_edges
        inv = perm_inverse(perm)
        sigma = [perm[self.sigma[inv[h]]] for h in range(m)]
        alpha = [perm[self.alpha[inv[h]]] for h in range(m)]
        flags = [self.flags[inv[h]] for h in range(m)]
        labels = None if self.boundary_labels is None else \
            [self.boundary_labels[inv[h]] for h in range(m)]
        return Fatgraph(sigma, alpha, flags=flags, boundary_labels=labels)

    def __eq__(self, other):
        if not isinstance(other, Fatgraph):
            return NotImplemented
        return (self.sigma, self.alpha, self.flags, self.boundary_labels) == \
            (other.sigma, other.alpha, other.flags, other.boundary_labels)

    def __hash__(self):
        return hash((self.sigma, self.alpha, self.flags,
                     self.boundary_labels))

    def __repr__(self):
        return "Fatgraph(%r, %r)" % (list(self.sigma), list(self.alpha))

    def to_line(self) -> str:
        """Canonical one-line text form; round-trips bit-exactly."""
        gt = self.graph_type()
        cyc = "".join("(%s)" % ",".join(str(h) for h in c)
                      for c in self.vertices)
        pairs = "".join("(%d,%d)" % (a, b) for a, b in self.edges)
        flags = "".join(self.vertex_flag(v) for v in range(self.num_vertices))
        return "%d %d %d %d | %s | %s | %s" % (
            gt.g, gt.n, self.num_vertices, self.num_edges, cyc, pairs, flags)

    @classmethod
    def from_line(cls, line: str) -> "Fatgraph":
        try:
            head, cyc_s, pair_s, flag_s = [p.strip()
                                           for p in line.split("|")]
            g, n, nv, ne = (int(x) for x in head.split())
            cycles = [tuple(int(x) for x in grp.split(","))
                      for grp in cyc_s.strip("()").split(")(")] if cyc_s else []
            pairs = [tuple(int(x) for x in grp.split(","))
                     for grp in pair_s.strip("()").split(")(")]
            delta, node = [], []
            for v, f in enumerate(flag_s):
                if f == DELTA:
                    delta.append(cycles[v][0])
                elif f == NODE:
                    node.append(cycles[v][0])
                elif f != ORDINARY:
                    raise ValueError(f)
            graph = cls.from_cycles(cycles, pairs, delta=delta, node=node)
        except (ValueError, IndexError) as exc:
            raise MalformedGraph("bad graph line: %r" % line) from exc
        gt = graph.graph_type()
        if (gt.g, gt.n, graph.num_vertices, graph.num_edges) != (g, n, nv, ne):
            raise MalformedGraph("graph line header disagrees with body")
        return graph


def _noncrossing_diagonal_sets(k: int):
    """All nonempty sets of pairwise noncrossing diagonals of a convex k-gon.

    Corners are 0..k-1; a diagonal is a pair (a, b), b - a >= 2, not the
    closing side (0, k-1).
    """
    diagonals = [(a, b) for a in range(k) for b in range(a + 2, k)
                 if not (a == 0 and b == k - 1)]

    def crosses(d1, d2):
        (a, b), (c, d) = d1, d2
        return (a < c < b < d) or (c < a < d < b)

    out = []

    def grow(start, chosen):
        for i in range(start, len(diagonals)):
            d = diagonals[i]
            if any(crosses(d, c) for c in chosen):
                continue
            chosen.append(d)
            out.append(tuple(chosen))
            grow(i + 1, chosen)
            chosen.pop()

    grow(0, [])
    return out


# -- reference graphs ------------------------------------------------------

def one_vertex_opposite_pairing(g: int) -> Fatgraph:
    """One vertex of valence 4g, the two ends of each edge opposite in the
    cyclic order.  Any metric admits the half-turn involution, which fixes
    the vertex, all 2g edges and the single boundary cycle."""
    m = 4 * g
    return Fatgraph.from_cycles([tuple(range(m))],
                                [(i, i + 2 * g) for i in range(2 * g)])


def two_vertex_star_double(g: int) -> Fatgraph:
    """Two vertices of valence 2g+1 joined by 2g+1 parallel edges in the
    rotation pattern whose thickening has a single boundary cycle; collapsing
    any edge yields :func:`one_vertex_opposite_pairing`."""
    k = 2 * g + 1
    return Fatgraph.from_cycles([tuple(range(k)), tuple(range(k, 2 * k))],
                                [(i, k + i) for i in range(k)])
