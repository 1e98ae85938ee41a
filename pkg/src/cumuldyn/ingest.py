"""Loading citation corpora and carving technology graphs out of them.

A corpus is a pair of CSV files: nodes (``node_id,year,classes`` with an
optional ``granted`` boolean column, classes ``;``-separated) and citations
(``citing_id,cited_id,origin`` with origin APP, EXA or empty for unknown).
Node ids are opaque strings, assumed pre-aggregated to one node per
invention (e.g. one patent family).

A technology is selected by class-prefix match (whitespace-insensitive, so
the query "Y02E10/5" matches the label "Y02E 10/50").  Selected nodes are
ordered by (year, node_id) — undated nodes sort last — and citations among
them become internal edges; citations leaving the selection only bump the
citing node's external count.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import InventionNode, KnowledgeGraph

__all__ = [
    "CorpusError",
    "TechnologyQuery",
    "CitationRecord",
    "CorpusNode",
    "Corpus",
    "IngestDiagnostics",
    "load_corpus",
    "build_graph",
    "class_grouping",
]

_ORIGINS = {"APP": "APP", "EXA": "EXA", "": "UNKNOWN"}


class CorpusError(ValueError):
    """Malformed corpus input, reported with file and line number."""


def _strip_spaces(code: str) -> str:
    return "".join(code.split())


@dataclass(frozen=True)
class TechnologyQuery:
    """Selects one technology: nodes whose class matches any prefix."""

    name: str
    class_prefixes: frozenset[str]
    year_cutoff: int | None = None

    def __post_init__(self) -> None:
        cleaned = frozenset(_strip_spaces(p) for p in self.class_prefixes)
        if not cleaned or any(not p for p in cleaned):
            raise ValueError("query needs at least one non-empty class prefix")
        object.__setattr__(self, "class_prefixes", cleaned)

    def matches(self, class_labels: Iterable[str]) -> bool:
        for label in class_labels:
            stripped = _strip_spaces(label)
            if any(stripped.startswith(p) for p in self.class_prefixes):
                return True
        return False


@dataclass(frozen=True, slots=True)
class CitationRecord:
    """One directed citation between two distinct inventions."""

    citing_id: str
    cited_id: str
    origin: str = "UNKNOWN"


@dataclass(frozen=True, slots=True)
class CorpusNode:
    """One invention as loaded from the nodes file."""

    node_id: str
    year: int | None
    classes: tuple[str, ...]
    granted: bool = True


@dataclass(frozen=True)
class Corpus:
    """A parsed corpus plus load-time diagnostics."""

    nodes: tuple[CorpusNode, ...]
    citations: tuple[CitationRecord, ...]
    self_citations_dropped: int = 0


@dataclass(frozen=True)
class IngestDiagnostics:
    """What happened while carving a technology graph from a corpus."""

    matched_nodes: int
    internal_edges: int
    external_links: int
    duplicates_collapsed: int
    dropped_non_backward: int
    ignored_citations: int

    def as_dict(self) -> dict[str, int]:
        return {
            "matched_nodes": self.matched_nodes,
            "internal_edges": self.internal_edges,
            "external_links": self.external_links,
            "duplicates_collapsed": self.duplicates_collapsed,
            "dropped_non_backward": self.dropped_non_backward,
            "ignored_citations": self.ignored_citations,
        }


def _parse_bool(raw: str, where: str) -> bool:
    value = raw.strip().lower()
    if value in ("", "true", "1", "yes"):
        return True
    if value in ("false", "0", "no"):
        return False
    raise CorpusError(f"{where}: invalid boolean {raw!r}")


def _require_columns(fieldnames: list[str] | None, required: tuple[str, ...], path: str) -> None:
    have = set(fieldnames or [])
    missing = [c for c in required if c not in have]
    if missing:
        raise CorpusError(f"{path}: missing required column(s) {', '.join(missing)}")


def load_corpus(node_file: str, edge_file: str) -> Corpus:
    """Parse node and citation CSVs, rejecting malformed rows by line number.

    Duplicate node ids and rows with missing or unparsable fields raise
    :class:`CorpusError`.  Self-citations are dropped (with a count) because
    a node cannot build on itself.
    """
    nodes: list[CorpusNode] = []
    seen_ids: set[str] = set()
    with open(node_file, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        _require_columns(reader.fieldnames, ("node_id", "year", "classes"), node_file)
        for row in reader:
            where = f"{node_file}:{reader.line_num}"
            node_id = (row.get("node_id") or "").strip()
            if not node_id:
                raise CorpusError(f"{where}: empty node_id")
            if node_id in seen_ids:
                raise CorpusError(f"{where}: duplicate node id {node_id!r}")
            seen_ids.add(node_id)
            raw_year = (row.get("year") or "").strip()
            if raw_year:
                try:
                    year = int(raw_year)
                except ValueError:
                    raise CorpusError(f"{where}: invalid year {raw_year!r}") from None
            else:
                year = None
            raw_classes = row.get("classes")
            if raw_classes is None:
                raise CorpusError(f"{where}: missing classes column value")
            classes = tuple(c.strip() for c in raw_classes.split(";") if c.strip())
            granted = _parse_bool(row.get("granted") or "", where)
            nodes.append(
                CorpusNode(node_id=node_id, year=year, classes=classes, granted=granted)
            )

    citations: list[CitationRecord] = []
    self_dropped = 0
    with open(edge_file, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        _require_columns(reader.fieldnames, ("citing_id", "cited_id"), edge_file)
        for row in reader:
            where = f"{edge_file}:{reader.line_num}"
            citing = (row.get("citing_id") or "").strip()
            cited = (row.get("cited_id") or "").strip()
            if not citing or not cited:
                raise CorpusError(f"{where}: citation row needs citing_id and cited_id")
            raw_origin = (row.get("origin") or "").strip().upper()
            if raw_origin not in _ORIGINS:
                raise CorpusError(f"{where}: invalid origin {raw_origin!r}")
            if citing == cited:
                self_dropped += 1
                continue
            citations.append(
                CitationRecord(citing_id=citing, cited_id=cited, origin=_ORIGINS[raw_origin])
            )
    return Corpus(
        nodes=tuple(nodes),
        citations=tuple(citations),
        self_citations_dropped=self_dropped,
    )


def _sort_key(node: CorpusNode) -> tuple[int, int, str]:
    # Undated nodes sort after all dated ones; year ties break on node_id.
    if node.year is None:
        return (1, 0, node.node_id)
    return (0, node.year, node.node_id)


def build_graph(
    corpus: Corpus,
    query: TechnologyQuery,
    *,
    origin: str = "all",
    granted_only: bool = False,
) -> tuple[KnowledgeGraph, IngestDiagnostics]:
    """Carve the technology selected by ``query`` out of a corpus.

    Citations between two selected nodes become internal edges, deduplicated
    per ordered pair; citations from a selected node to anything outside the
    selection increment its external count (also deduplicated per pair).
    Citations whose cited node does not precede the citing node in the
    resolved ordering (a later year, or a same-year tie resolved against the
    citation) are dropped and counted.  ``origin='app'`` keeps only
    applicant-added citations; ``granted_only`` skips nodes flagged as not
    granted.
    """
    if origin not in ("all", "app"):
        raise ValueError(f"origin filter must be 'all' or 'app', got {origin!r}")
    selected = [
        node
        for node in corpus.nodes
        if (not granted_only or node.granted)
        and query.matches(node.classes)
        and (query.year_cutoff is None or (node.year is not None and node.year <= query.year_cutoff))
    ]
    if not selected:
        raise ValueError(f"query {query.name!r} matches zero nodes")
    selected.sort(key=_sort_key)
    ordinal_of = {node.node_id: i for i, node in enumerate(selected)}

    internal: set[tuple[int, int]] = set()
    external: set[tuple[int, str]] = set()
    duplicates = 0
    non_backward = 0
    ignored = 0
    for citation in corpus.citations:
        if origin == "app" and citation.origin != "APP":
            continue
        citing = ordinal_of.get(citation.citing_id)
        if citing is None:
            ignored += 1
            continue
        cited = ordinal_of.get(citation.cited_id)
        if cited is None:
            key = (citing, citation.cited_id)
            if key in external:
                duplicates += 1
            else:
                external.add(key)
            continue
        if cited >= citing:
            non_backward += 1
            continue
        if (citing, cited) in internal:
            duplicates += 1
        else:
            internal.add((citing, cited))

    external_counts = [0] * len(selected)
    for citing, _ in external:
        external_counts[citing] += 1
    nodes = tuple(
        InventionNode(
            node_id=node.node_id,
            ordinal=i,
            year=node.year,
            class_labels=frozenset(node.classes),
        )
        for i, node in enumerate(selected)
    )
    graph = KnowledgeGraph(
        nodes=nodes,
        internal_edges=tuple(sorted(internal)),
        external_backlink_counts=tuple(external_counts),
    )
    diagnostics = IngestDiagnostics(
        matched_nodes=len(selected),
        internal_edges=len(internal),
        external_links=len(external),
        duplicates_collapsed=duplicates,
        dropped_non_backward=non_backward,
        ignored_citations=ignored,
    )
    return graph, diagnostics


def class_grouping(
    corpus: Corpus, grouping: Mapping[str, Iterable[str]]
) -> dict[str, set[str]]:
    """Node-id sets per named group of class prefixes.

    Each group's set is the union over its prefixes, so a node matching two
    prefixes of one group is counted once there; a node matching prefixes of
    two groups appears in both.
    """
    queries = {}
    for name, prefixes in grouping.items():
        prefix_set = frozenset(prefixes)
        if not prefix_set:
            raise ValueError(f"group {name!r} has no class prefixes")
        queries[name] = TechnologyQuery(name=name, class_prefixes=prefix_set)
    return {
        name: {node.node_id for node in corpus.nodes if query.matches(node.classes)}
        for name, query in queries.items()
    }
