"""Exhaustive censuses of fatgraph isomorphism classes with automorphism
orders, supporting exact orbifold-weighted sums.

One-boundary graphs are enumerated through their boundary word: a fatgraph of
type (g, 1) with E edges is the same thing as a fixed-point-free involution
``alpha`` of the cyclic set Z_{2E} of boundary slots, with the vertex
permutation recovered as ``sigma(p) = alpha(p) + 1 (mod 2E)``.  Rotating the
slots is exactly an isomorphism, so the gap sequence
``(alpha(p) - p mod 2E)_p`` classifies graphs up to isomorphism by its least
cyclic rotation, and the automorphism group is the rotation stabilizer.
Generation backtracks over pairings with vertex-valence closure propagation.

Censuses for n > 1 (only needed at toy sizes) glue labeled stars naively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import trees as _trees
from .errors import MalformedGraph, ResourceLimit
from .fatgraph import Fatgraph

DEFAULT_CAP_EDGES = 15          # trivalent / single-k censuses (genus <= 3)
DEFAULT_CAP_EDGES_ALL = 9       # all-valence censuses (genus <= 2)
DEFAULT_CAP_LEAVES = 13

TRIVALENT = "trivalent"
ALL = "all"


def catalan(m: int) -> int:
    """Rooted trivalent planar trees with m internal vertices.

    >>> [catalan(m) for m in range(7)]
    [1, 1, 2, 5, 14, 42, 132]
    """
    if m < 0:
        raise ValueError(m)
    return math.comb(2 * m, m) // (m + 1)


def catalan5(k: int) -> int:
    """Rooted planar trees with k leaves, one 5-valent vertex, rest
    trivalent.

    >>> catalan5(6)
    6
    >>> catalan5(5)
    1
    """
    if k < 5:
        raise ValueError(k)
    return math.comb(2 * k - 6, k - 5)


@dataclass(frozen=True)
class CensusEntry:
    key: tuple
    graph: Fatgraph
    aut_order: int
    payload: object = None


@dataclass(frozen=True)
class OrbifoldCensus:
    """A complete list of isomorphism classes matching a filter, with
    automorphism orders; keys are pairwise distinct and entries sorted."""

    descriptor: str
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def orbifold_sum(self, weight: Optional[Callable] = None) -> Fraction:
        """Sum of weight(entry)/aut_order over all classes, exact."""
        total = Fraction(0)
        for entry in self.entries:
            w = Fraction(1) if weight is None else Fraction(weight(entry))
            total += w / entry.aut_order
        return total

    def without(self, index: int) -> "OrbifoldCensus":
        """Copy with one entry removed (fault injection for tests)."""
        kept = self.entries[:index] + self.entries[index + 1:]
        return OrbifoldCensus(self.descriptor + " [mutated]", kept)

    def with_aut_order(self, index: int, aut_order: int) -> "OrbifoldCensus":
        e = self.entries[index]
        mutated = CensusEntry(e.key, e.graph, aut_order, e.payload)
        entries = (self.entries[:index] + (mutated,)
                   + self.entries[index + 1:])
        return OrbifoldCensus(self.descriptor + " [mutated]", entries)


# -- boundary-word machinery for n = 1 ---------------------------------------

def _least_rotation(seq):
    """Booth's algorithm; index of the lexicographically least rotation."""
    s = seq + seq
    n = len(seq)
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def _gap_sequence(alpha):
    m = len(alpha)
    return tuple((alpha[p] - p) % m for p in range(m))


def _alpha_from_gaps(gaps):
    m = len(gaps)
    return tuple((p + gaps[p]) % m for p in range(m))


def canonical_gap_word(alpha) -> tuple:
    """Rotation-canonical form of a one-boundary pairing."""
    gaps = _gap_sequence(alpha)
    k = _least_rotation(gaps)
    return gaps[k:] + gaps[:k]


def rotation_stabilizer_order(gaps) -> int:
    m = len(gaps)
    doubled = gaps + gaps
    count = 0
    for r in range(m):
        if doubled[r:r + m] == gaps:
            count += 1
    return count


def _pairings_with_cycle_lengths(num_edges: int, budgets=None,
                                 num_cycles: int = None,
                                 min_len: int = 3):
    """All pairings of Z_{2E} whose sigma-cycles have prescribed lengths.

    ``budgets``: exact multiset as {length: count}; or pass ``num_cycles``
    for "num_cycles cycles, each of length >= min_len".  Yields alpha tuples.
    """
    m = 2 * num_edges
    alpha = [-1] * m
    fwd = [-1] * m     # t(p) = alpha[p] + 1 where defined
    bwd = [-1] * m
    exact = budgets is not None
    if exact:
        budget = dict(budgets)
        if sum(l * c for l, c in budget.items()) != m:
            return []
        cycles_left = sum(budget.values())
        max_len = max(l for l, c in budget.items() if c > 0)
    else:
        budget = {}
        cycles_left = num_cycles
        max_len = 0
    closed_nodes = 0
    results = []

    def head_of(p):
        while bwd[p] != -1:
            p = bwd[p]
        return p

    def tail_of(p):
        q = p
        while fwd[q] != -1:
            q = fwd[q]
            if q == p:
                return None  # closed cycle
        return q

    def path_len(p):
        n = 1
        q = p
        while bwd[q] != -1:
            q = bwd[q]
            if q == p:
                return n  # cycle length
            n += 1
        q = p
        while fwd[q] != -1:
            q = fwd[q]
            n += 1
        return n

    def assign(p, q, trail):
        """Pair p with q; returns False on contradiction.  All state changes
        are recorded on trail for rollback."""
        nonlocal cycles_left, closed_nodes, max_len
        alpha[p] = q
        alpha[q] = p
        trail.append(("a", p, q))
        for a, b in ((p, (q + 1) % m), (q, (p + 1) % m)):
            # add link t(a) = b
            if a == b:
                return False  # cycle of length 1
            if head_of(a) == b:
                # closes the cycle b -> ... -> a -> b
                length = path_len(a)
                if exact:
                    if budget.get(length, 0) <= 0:
                        return False
                    budget[length] -= 1
                    if length == max_len and budget[length] == 0:
                        trail.append(("m", max_len))
                        avail = [l for l, c in budget.items() if c > 0]
                        max_len = max(avail) if avail else 0
                    trail.append(("b", length))
                else:
                    if length < min_len or cycles_left == 0:
                        return False
                cycles_left -= 1
                closed_nodes += length
                trail.append(("c", length))
            fwd[a] = b
            bwd[b] = a
            trail.append(("l", a, b))
        # overlength and forced-closure propagation on both touched paths
        if exact:
            cap = max_len
        else:
            cap = (m - closed_nodes) - min_len * (cycles_left - 1)
        forced = None
        for seed in (p, q):
            t = tail_of(seed)
            if t is None:
                continue  # closed into a cycle, budget already checked
            length = path_len(seed)
            if length > cap:
                return False
            if exact and length == cap:
                closer = (head_of(seed) - 1) % m
                if closer == t:
                    return False
                if alpha[t] == -1 and alpha[closer] == -1:
                    if forced is None:
                        forced = []
                    forced.append((t, closer))
                elif alpha[t] != closer:
                    return False
        if forced:
            for a, b in forced:
                if alpha[a] == -1 and alpha[b] == -1:
                    if not assign(a, b, trail):
                        return False
                elif alpha[a] != b:
                    return False
        return True

    def undo(trail, mark):
        nonlocal cycles_left, closed_nodes, max_len
        while len(trail) > mark:
            rec = trail.pop()
            kind = rec[0]
            if kind == "a":
                alpha[rec[1]] = -1
                alpha[rec[2]] = -1
            elif kind == "l":
                fwd[rec[1]] = -1
                bwd[rec[2]] = -1
            elif kind == "b":
                budget[rec[1]] += 1
            elif kind == "m":
                max_len = rec[1]
            else:
                cycles_left += 1
                closed_nodes -= rec[1]

    def search():
        p = 0
        while p < m and alpha[p] != -1:
            p += 1
        if p == m:
            if cycles_left == 0:
                results.append(tuple(alpha))
            return
        trail = []
        for q in range(p + 1, m):
            if alpha[q] != -1:
                continue
            mark = len(trail)
            if assign(p, q, trail):
                search()
            undo(trail, mark)

    search()
    return results


def _one_boundary_census(g, valence_filter, cap_edges):
    classes = {}

    def run(num_edges, budgets=None, num_cycles=None):
        if num_edges > cap_edges:
            raise ResourceLimit(
                "census needs %d edges, cap is %d" % (num_edges, cap_edges))
        for alpha in _pairings_with_cycle_lengths(
                num_edges, budgets=budgets, num_cycles=num_cycles):
            word = canonical_gap_word(alpha)
            classes[word] = classes.get(word, 0) + 1

    if valence_filter == ALL:
        if 6 * g - 3 > cap_edges:
            raise ResourceLimit("census needs %d edges, cap is %d"
                                % (6 * g - 3, cap_edges))
        # V - E + 1 = 2 - 2g over all edge counts up to the trivalent top
        for num_edges in range(2 * g, 6 * g - 2):
            num_vertices = num_edges + 1 - 2 * g
            if num_vertices >= 1:
                run(num_edges, num_cycles=num_vertices)
    else:
        if valence_filter == TRIVALENT:
            num_edges = 6 * g - 3
            budgets = {3: 4 * g - 2}
        else:
            k = valence_filter[1]
            # 2E = k + 3(V-1) and V = E + 1 - 2g force E = 6g - k
            num_edges = 6 * g - k
            num_vertices = num_edges + 1 - 2 * g
            if num_edges < 1 or num_vertices < 1:
                return []
            budgets = ({k: 1, 3: num_vertices - 1} if k != 3
                       else {3: num_vertices})
        run(num_edges, budgets=budgets)

    out = []
    for word in sorted(classes):
        mult = classes[word]
        m = len(word)
        if m % mult:
            raise AssertionError("orbit size does not divide slot count")
        aut = rotation_stabilizer_order(word)
        if aut != m // mult:
            raise AssertionError("stabilizer disagrees with orbit size")
        alpha = _alpha_from_gaps(word)
        sigma = tuple((alpha[p] + 1) % m for p in range(m))
        graph = Fatgraph(sigma, alpha)
        out.append((word, graph, aut))
    return out


# -- naive gluing for n > 1 ---------------------------------------------------

def _partitions(total, parts, smallest):
    if parts == 1:
        if total >= smallest:
            yield (total,)
        return
    for first in range(smallest, total // parts + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _matchings(stubs):
    if not stubs:
        yield []
        return
    first = stubs[0]
    for i in range(1, len(stubs)):
        rest = stubs[1:i] + stubs[i + 1:]
        for sub in _matchings(rest):
            yield [(first, stubs[i])] + sub


def _gluing_census(g, n, valence_filter, cap_edges):
    classes = {}
    max_edges = 3 * (2 * g - 2 + n)
    for num_edges in range(1, max_edges + 1):
        if num_edges > cap_edges:
            raise ResourceLimit(
                "census needs %d edges, cap is %d" % (num_edges, cap_edges))
        num_vertices = num_edges + 2 - 2 * g - n
        if num_vertices < 1:
            continue
        for valences in _partitions(2 * num_edges, num_vertices, 3):
            if valence_filter == TRIVALENT and set(valences) != {3}:
                continue
            if isinstance(valence_filter, tuple):
                k = valence_filter[1]
                want = tuple(sorted([3] * (num_vertices - 1) + [k]))
                if tuple(sorted(valences)) != want:
                    continue
            cycles = []
            base = 0
            for v in valences:
                cycles.append(tuple(range(base, base + v)))
                base += v
            for pairs in _matchings(list(range(2 * num_edges))):
                try:
                    graph = Fatgraph.from_cycles(cycles, pairs)
                except MalformedGraph:
                    continue
                gt = graph.graph_type()
                if (gt.g, gt.n) != (g, n):
                    continue
                key = graph.canonical_key()
                if key not in classes:
                    classes[key] = graph
    out = []
    for key in sorted(classes):
        graph = classes[key]
        out.append((key, graph, graph.aut_order()))
    return out


def enumerate_fatgraphs(g: int, n: int, valence_filter=TRIVALENT,
                        cap_edges: Optional[int] = None) -> OrbifoldCensus:
    """Census of fatgraph isomorphism classes of type (g, n).

    ``valence_filter`` is ``"trivalent"``, ``"all"`` (valences >= 3), or
    ``("single", k)`` for one k-valent vertex among trivalent ones.
    Raises ResourceLimit when the required edge count exceeds the cap.
    """
    if 2 * g - 2 + n <= 0:
        raise ValueError("need 2g-2+n > 0")
    if cap_edges is None:
        cap_edges = (DEFAULT_CAP_EDGES_ALL if valence_filter == ALL
                     else DEFAULT_CAP_EDGES)
    descriptor = "fatgraphs g=%d n=%d filter=%s" % (
        g, n, valence_filter if isinstance(valence_filter, str)
        else "single%d" % valence_filter[1])
    if n == 1:
        raw = _one_boundary_census(g, valence_filter, cap_edges)
    else:
        raw = _gluing_census(g, n, valence_filter, cap_edges)
    entries = tuple(CensusEntry(tuple(key), graph, aut)
                    for key, graph, aut in raw)
    return OrbifoldCensus(descriptor, entries)


def enumerate_trees(leaf_count: int, profile: str = _trees.TRIVALENT,
                    rooting: str = "unrooted",
                    cap_leaves: int = DEFAULT_CAP_LEAVES) -> OrbifoldCensus:
    """Census of planar trees with the given leaf count and valence profile.

    Profiles: ``trivalent``, ``one5`` (one 5-valent vertex) and ``marked``
    (trivalent with one delta-marked internal vertex).  Rooted trees carry a
    distinguished leaf and have trivial automorphism group.
    """
    if leaf_count > cap_leaves:
        raise ResourceLimit("leaf count %d exceeds cap %d"
                            % (leaf_count, cap_leaves))
    descriptor = "trees leaves=%d profile=%s rooting=%s" % (
        leaf_count, profile, rooting)
    if rooting == "rooted":
        entries = tuple(
            CensusEntry(tree.rooted_key(), tree, 1)
            for tree in _trees.rooted_trees(leaf_count, profile, cap_leaves))
    elif rooting == "unrooted":
        entries = tuple(
            CensusEntry(tree.canonical_key(), tree, tree.aut_order())
            for tree in _trees.unrooted_trees(leaf_count, profile,
                                              cap_leaves))
    else:
        raise ValueError("rooting must be 'rooted' or 'unrooted'")
    return OrbifoldCensus(descriptor, entries)


def euler_characteristic(g: int,
                         cap_edges: Optional[int] = None) -> Fraction:
    """Alternating orbifold sum over the all-valence (g, 1) census.

    The sign is (-1) raised to the dimension of the normalized open cell,
    i.e. (-1)**(E-1); with this convention the g = 1 value is -1/12.
    """
    census = enumerate_fatgraphs(g, 1, ALL, cap_edges=cap_edges)
    total = Fraction(0)
    for entry in census:
        sign = -1 if entry.graph.num_edges % 2 == 0 else 1
        total += Fraction(sign, entry.aut_order)
    return total
