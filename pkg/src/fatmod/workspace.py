"""Shared census store with size caps and an optional on-disk cache.

All integral evaluations pull censuses from a workspace, so a CLI run, a
cached rerun and a fault-injected test all see the same data path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import cache as _cache
from . import enumeration as _enum
from . import hyperelliptic as _hyper
from . import trees as _trees
from .enumeration import CensusEntry, OrbifoldCensus
from .errors import CacheError
from .trees import PlanarTree


@dataclass
class Caps:
    trivalent_edges: int = _enum.DEFAULT_CAP_EDGES        # genus <= 3
    all_valence_edges: int = _enum.DEFAULT_CAP_EDGES_ALL  # genus <= 2
    tree_leaves: int = _enum.DEFAULT_CAP_LEAVES
    genus0_assembled_n: int = 9
    hyperelliptic_assembled_g: int = 4
    w1_assembled_g: int = 4


@lru_cache(maxsize=None)
def _shared_trivalent_census(g: int, cap_edges: int):
    return _enum.enumerate_fatgraphs(g, 1, _enum.TRIVALENT,
                                     cap_edges=cap_edges)


class Workspace:
    def __init__(self, caps: Optional[Caps] = None, cache_dir=None,
                 no_build: bool = False):
        self.caps = caps or Caps()
        self.cache_dir = cache_dir
        self.no_build = no_build
        self._store = {}

    def override(self, descriptor: str, census: OrbifoldCensus) -> None:
        """Install a census under a descriptor (fault injection, tests)."""
        self._store[descriptor] = census

    # -- builders ----------------------------------------------------------

    def trivalent_census(self, g: int) -> OrbifoldCensus:
        desc = "fatgraphs g=%d n=1 filter=trivalent" % g
        return self._get(desc, "graph",
                         lambda: _shared_trivalent_census(
                             g, self.caps.trivalent_edges))

    def pristine_trivalent_census(self, g: int) -> OrbifoldCensus:
        """The trivalent census from disk or a fresh build, never from the
        in-memory store; overrides cannot shadow it."""
        desc = "fatgraphs g=%d n=1 filter=trivalent" % g
        census = self._load(desc, "graph") if self.cache_dir else None
        if census is None:
            census = _shared_trivalent_census(g, self.caps.trivalent_edges)
        return census

    def all_valence_census(self, g: int) -> OrbifoldCensus:
        desc = "fatgraphs g=%d n=1 filter=all" % g
        return self._get(desc, "graph",
                         lambda: _enum.enumerate_fatgraphs(
                             g, 1, _enum.ALL,
                             cap_edges=self.caps.all_valence_edges))

    def tree_census(self, leaf_count: int, profile: str,
                    rooting: str = "unrooted") -> OrbifoldCensus:
        desc = "trees leaves=%d profile=%s rooting=%s" % (leaf_count, profile,
                                                          rooting)
        if rooting == "rooted":
            # cheap to regenerate and not representable in the cache format
            if desc not in self._store:
                self._store[desc] = _enum.enumerate_trees(
                    leaf_count, profile, "rooted", self.caps.tree_leaves)
            return self._store[desc]
        return self._get(desc, "tree",
                         lambda: _enum.enumerate_trees(
                             leaf_count, profile, "unrooted",
                             self.caps.tree_leaves))

    def hyperelliptic_census(self, g: int) -> OrbifoldCensus:
        desc = "hyperelliptic g=%d maximal cells" % g
        return self._get(desc, "cell",
                         lambda: _hyper.hyperelliptic_census(
                             g, self.caps.tree_leaves))

    def w1_components(self, g: int) -> _hyper.W1HComponents:
        desc1 = "w1-hyperelliptic g=%d component1 (5-valent pair)" % g
        desc2 = "w1-hyperelliptic g=%d component2 (fixed 6-valent)" % g
        comp1 = self._get(desc1, "cell",
                          lambda: _hyper.w1_component1_census(
                              g, self.caps.tree_leaves))
        comp2 = self._get(desc2, "cell",
                          lambda: _hyper.w1_component2_census(
                              g, self.caps.tree_leaves))
        return _hyper.W1HComponents(comp1, comp2)

    # -- cache plumbing ----------------------------------------------------

    def _get(self, descriptor, kind, build) -> OrbifoldCensus:
        census = self._store.get(descriptor)
        if census is not None:
            return census
        census = self._load(descriptor, kind)
        if census is None:
            if self.no_build:
                raise CacheError("census %r not cached and building is "
                                 "disabled" % descriptor)
            census = build()
            self.save(census, kind)
        self._store[descriptor] = census
        return census

    def _load(self, descriptor, kind):
        if self.cache_dir is None:
            return None
        path = _cache.cache_path(self.cache_dir, descriptor)
        if not path.exists():
            if self.no_build:
                raise CacheError("missing cache file %s" % path)
            return None
        records = _cache.load_records(path, descriptor)
        entries = []
        for aut, rec_kind, graph, extra in records:
            if rec_kind != kind:
                raise CacheError("record kind %r does not match census kind "
                                 "%r" % (rec_kind, kind))
            entries.append(self._entry_from_record(kind, aut, graph, extra))
        return OrbifoldCensus(descriptor, tuple(entries))

    @staticmethod
    def _entry_from_record(kind, aut, graph, extra):
        if kind == "graph":
            return CensusEntry(graph.canonical_key(), graph, aut)
        tree = PlanarTree(graph.sigma, graph.alpha, flags=graph.flags)
        if kind == "tree":
            return CensusEntry(tree.canonical_key(), tree, aut)
        cell = _hyper.double_tree(tree)
        if extra is not None and \
                _cache.permutation_from_field(extra) != cell.involution:
            raise CacheError("stored involution disagrees with the doubled "
                             "tree")
        return CensusEntry(cell.doubled.canonical_key(), cell.doubled, aut,
                           payload=cell)

    def save(self, census: OrbifoldCensus, kind: str) -> None:
        if self.cache_dir is None:
            return
        path = _cache.cache_path(self.cache_dir, census.descriptor)
        records = []
        for entry in census:
            if kind == "cell":
                records.append((entry.aut_order, kind, entry.payload.tree,
                                _cache.permutation_to_field(
                                    entry.payload.involution)))
            else:
                records.append((entry.aut_order, kind, entry.graph, None))
        _cache.save_records(path, census.descriptor, records)
