"""Keyword co-occurrence networks with equivalence-index edge weights.

Co-occurrence is counted at document granularity with binary presence: a
keyword counts once per document, a pair counts once per document containing
both. Edge strength is normalized as cooccurrence^2 / (occurrence_i *
occurrence_j), kept as an exact rational.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ._kernels import count_pairs
from .errors import DomainError
from .preprocess import CorpusSlice


def equivalence(c_i: int, c_j: int, c_ij: int) -> Fraction:
    """Normalized co-occurrence strength, exact in [0, 1]."""
    if c_i < 1 or c_j < 1:
        raise DomainError(f"occurrence counts must be >= 1, got ({c_i}, {c_j})")
    if c_ij < 0 or c_ij > min(c_i, c_j):
        raise DomainError(f"co-occurrence {c_ij} outside [0, min({c_i}, {c_j})]")
    return Fraction(c_ij * c_ij, c_i * c_j)


@dataclass(frozen=True)
class Edge:
    cooccurrence: int
    equivalence: Fraction


@dataclass(frozen=True)
class CoWordNetwork:
    """Per-period network: occurrence counts plus weighted unordered edges.

    Edge keys are (i, j) keyword pairs with i < j lexicographically; pairs
    that never co-occur are absent."""

    period: str
    nodes: Mapping[str, int]
    edges: Mapping[tuple[str, str], Edge]

    def validate(self) -> None:
        for (i, j), edge in self.edges.items():
            if i >= j:
                raise DomainError(f"edge key ({i!r}, {j!r}) not in sorted order")
            if i not in self.nodes or j not in self.nodes:
                raise DomainError(f"edge ({i!r}, {j!r}) references a missing node")
            if edge.cooccurrence < 1:
                raise DomainError(f"edge ({i!r}, {j!r}) stored with zero co-occurrence")
            expected = equivalence(self.nodes[i], self.nodes[j], edge.cooccurrence)
            if edge.equivalence != expected:
                raise DomainError(f"edge ({i!r}, {j!r}) equivalence mismatch")


def build_network(slice_: CorpusSlice) -> CoWordNetwork:
    """Build the co-occurrence network of a (filtered) slice.

    Deterministic regardless of document order; keyword lists are assumed
    deduplicated per document (the preprocess contract)."""
    vocabulary = sorted(slice_.vocabulary())
    index = {kw: i for i, kw in enumerate(vocabulary)}
    n = len(vocabulary)

    tokens = array("q")
    offsets = array("q", [0])
    for doc in slice_.documents:
        ids = sorted(index[kw] for kw in slice_.keywords[doc.id])
        tokens.extend(ids)
        offsets.append(len(tokens))

    counts, pair_counts = count_pairs(tokens, offsets, max(n, 1))
    nodes = {kw: counts[index[kw]] for kw in vocabulary if counts[index[kw]] > 0}
    edges = {}
    for key in sorted(pair_counts):
        c_ij = pair_counts[key]
        i, j = vocabulary[key // max(n, 1)], vocabulary[key % max(n, 1)]
        edges[(i, j)] = Edge(
            cooccurrence=c_ij, equivalence=equivalence(nodes[i], nodes[j], c_ij)
        )
    return CoWordNetwork(period=slice_.period.label, nodes=nodes, edges=edges)


def fraction_payload(value: Fraction) -> dict:
    return {
        "numerator": value.numerator,
        "denominator": value.denominator,
        "value": float(value),
    }


def network_to_json(network: CoWordNetwork) -> str:
    payload = {
        "period": network.period,
        "nodes": [
            {"keyword": kw, "count": count} for kw, count in sorted(network.nodes.items())
        ],
        "edges": [
            {
                "i": i,
                "j": j,
                "cooccurrence": edge.cooccurrence,
                "equivalence": fraction_payload(edge.equivalence),
            }
            for (i, j), edge in sorted(network.edges.items())
        ],
    }
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def network_from_json(text: str) -> CoWordNetwork:
    payload = json.loads(text)
    nodes = {entry["keyword"]: entry["count"] for entry in payload["nodes"]}
    edges = {
        (entry["i"], entry["j"]): Edge(
            cooccurrence=entry["cooccurrence"],
            equivalence=Fraction(
                entry["equivalence"]["numerator"], entry["equivalence"]["denominator"]
            ),
        )
        for entry in payload["edges"]
    }
    return CoWordNetwork(period=payload["period"], nodes=nodes, edges=edges)
