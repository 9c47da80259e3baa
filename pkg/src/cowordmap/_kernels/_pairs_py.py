"""Pure-Python pair-counting kernel (reference implementation).

Documents arrive as one flat sequence of integer token ids plus an offsets
vector delimiting each document; ids within a document must be unique.
A pair (i, j) with i < j is encoded as the single key ``i * n_tokens + j``.
"""

from __future__ import annotations

from typing import Sequence


def count_pairs(
    tokens: Sequence[int], offsets: Sequence[int], n_tokens: int
) -> tuple[list[int], dict[int, int]]:
    """Count per-token document occurrences and per-pair co-occurrences."""
    counts = [0] * n_tokens
    pairs: dict[int, int] = {}
    get = pairs.get
    for d in range(len(offsets) - 1):
        start, stop = offsets[d], offsets[d + 1]
        for a in range(start, stop):
            i = tokens[a]
            counts[i] += 1
            base = i * n_tokens
            for b in range(a + 1, stop):
                key = base + tokens[b]
                pairs[key] = get(key, 0) + 1
    return counts, pairs
