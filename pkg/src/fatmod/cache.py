"""Census cache files.

Layout (text, one record per line):

    fatmod-census <format version>
    <descriptor>
    count=<N>
    <aut order> | <kind> | <canonical graph line>

``kind`` is ``graph`` for plain fatgraph entries and ``tree`` for censuses
whose entries are rebuilt by doubling the stored tree.  A descriptor or
version mismatch is reported as corruption, never silently reused.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import CacheError
from .fatgraph import Fatgraph

FORMAT_VERSION = 1
HEADER = "fatmod-census"


def cache_path(cache_dir, descriptor: str) -> Path:
    slug = re.sub(r"[^A-Za-z0-9.=-]+", "_", descriptor).strip("_")
    return Path(cache_dir) / ("%s.v%d.census" % (slug, FORMAT_VERSION))


def save_records(path: Path, descriptor: str, records) -> None:
    """records: iterable of (aut_order, kind, graph, extra); ``extra`` is an
    optional trailing field (the involution permutation for cell records)."""
    records = list(records)
    lines = ["%s %d" % (HEADER, FORMAT_VERSION), descriptor,
             "count=%d" % len(records)]
    for aut, kind, graph, extra in records:
        line = "%d | %s | %s" % (aut, kind, graph.to_line())
        if extra is not None:
            line += " | %s" % extra
        lines.append(line)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def load_records(path: Path, descriptor: str):
    """Returns the list of (aut_order, kind, Fatgraph, extra) or raises
    CacheError."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError("cannot read cache file %s" % path) from exc
    lines = text.splitlines()
    if len(lines) < 3:
        raise CacheError("truncated cache file %s" % path)
    head = lines[0].split()
    if head[:1] != [HEADER] or head[1:] != [str(FORMAT_VERSION)]:
        raise CacheError("cache version mismatch in %s" % path)
    if lines[1] != descriptor:
        raise CacheError("cache descriptor mismatch in %s: %r != %r"
                         % (path, lines[1], descriptor))
    try:
        count = int(lines[2].split("=", 1)[1])
    except (IndexError, ValueError) as exc:
        raise CacheError("bad count line in %s" % path) from exc
    body = [ln for ln in lines[3:] if ln.strip()]
    if len(body) != count:
        raise CacheError("cache file %s has %d records, header says %d"
                         % (path, len(body), count))
    records = []
    for ln in body:
        try:
            parts = [p.strip() for p in ln.split("|")]
            aut_s, kind = parts[0], parts[1]
            graph_line = " | ".join(parts[2:6])
            extra = parts[6] if len(parts) > 6 else None
            records.append((int(aut_s), kind, Fatgraph.from_line(graph_line),
                            extra))
        except Exception as exc:
            raise CacheError("bad record in %s: %r" % (path, ln)) from exc
    return records


def permutation_to_field(perm) -> str:
    return ",".join(str(x) for x in perm)


def permutation_from_field(field: str) -> tuple:
    return tuple(int(x) for x in field.split(","))
