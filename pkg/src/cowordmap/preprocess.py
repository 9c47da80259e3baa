"""Keyword normalization, thesaurus unification, period slicing and
frequency filtering.

The pipeline order is fixed: normalize -> thesaurus -> slice -> filter.
Canonical keyword form is uppercase with hyphens joining words
(e.g. ``PUBLIC-LIBRARIES``); plural folding is applied only when the folded
form already exists in the vocabulary or thesaurus, so proper nouns survive.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping

from .errors import EmptyKeyword, InvalidScheme, ThesaurusConflict
from .ingest import Corpus, Document, KeywordField

logger = logging.getLogger(__name__)

_WHITESPACE = re.compile(r"\s+")


def base_form(raw: str) -> str:
    """Trim, collapse whitespace, uppercase, and join words with hyphens."""
    trimmed = _WHITESPACE.sub(" ", raw.strip())
    if not trimmed:
        raise EmptyKeyword(f"keyword {raw!r} is empty after trimming")
    return trimmed.upper().replace(" ", "-")


def fold_plural(word: str) -> str | None:
    """Unconditional plural fold: IES -> Y, else strip trailing S (stem >= 3)."""
    if word.endswith("IES") and len(word) > 3:
        return word[:-3] + "Y"
    if word.endswith("S") and len(word) >= 4:
        return word[:-1]
    return None


def normalize_keyword(raw: str, vocabulary: Iterable[str] = ()) -> str:
    """Canonicalize one keyword; folds plurals only into forms already present
    in ``vocabulary`` (base-form corpus vocabulary and/or thesaurus terms).
    Idempotent. Raises EmptyKeyword when ``raw`` trims to nothing."""
    word = base_form(raw)
    vocab = vocabulary if isinstance(vocabulary, (set, frozenset, dict)) else set(vocabulary)
    folded = fold_plural(word)
    if folded is not None and folded in vocab:
        return folded
    return word


def _dedup(keywords: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(keywords))


def normalize_corpus(corpus: Corpus) -> Corpus:
    """Normalize both keyword fields of every document.

    Plural folding is checked against the base-form vocabulary of the same
    field over the whole corpus; per-document lists are deduplicated."""
    field_vocab: dict[KeywordField, set[str]] = {}
    for which in KeywordField:
        field_vocab[which] = {
            base_form(kw) for doc in corpus.documents for kw in doc.keywords(which)
        }
    documents = []
    for doc in corpus.documents:
        documents.append(
            replace(
                doc,
                author_keywords=_dedup(
                    normalize_keyword(kw, field_vocab[KeywordField.AUTHOR_KEYWORDS])
                    for kw in doc.author_keywords
                ),
                keywords_plus=_dedup(
                    normalize_keyword(kw, field_vocab[KeywordField.KEYWORDS_PLUS])
                    for kw in doc.keywords_plus
                ),
            )
        )
    return Corpus(documents=tuple(documents), source_files=corpus.source_files)


class MergeReason(str, Enum):
    CASE_ONLY = "CaseOnly"
    PLURAL = "Plural"
    HYPHEN_SPACE = "HyphenSpace"


@dataclass(frozen=True)
class MergeCandidate:
    """Advisory near-duplicate pair: merge ``a`` into ``b``."""

    a: str
    b: str
    reason: MergeReason


def _merge_reason(a: str, b: str) -> MergeReason | None:
    if a.casefold() == b.casefold():
        return MergeReason.CASE_ONLY
    ka = a.casefold().replace("-", " ")
    kb = b.casefold().replace("-", " ")
    if ka == kb:
        return MergeReason.HYPHEN_SPACE
    fa = fold_plural(ka.upper()) or ka.upper()
    fb = fold_plural(kb.upper()) or kb.upper()
    if fa == fb:
        return MergeReason.PLURAL
    return None


def suggest_merges(
    corpus: Corpus, keyword_field: KeywordField = KeywordField.AUTHOR_KEYWORDS
) -> list[MergeCandidate]:
    """Scan the raw vocabulary for near-duplicate pairs.

    Purely advisory: nothing is merged until the user copies a pair into the
    thesaurus file. Candidates are ordered by descending combined document
    frequency, then lexicographically."""
    freq: Counter[str] = Counter()
    for doc in corpus.documents:
        for kw in set(doc.keywords(keyword_field)):
            freq[kw] += 1

    groups: dict[str, list[str]] = {}
    for kw in freq:
        base = kw.casefold().replace("-", " ").upper()
        groups.setdefault(fold_plural(base) or base, []).append(kw)

    candidates = []
    for members in groups.values():
        if len(members) < 2:
            continue
        # Highest document frequency wins the target slot, ties lexicographic.
        target = min(members, key=lambda kw: (-freq[kw], kw))
        for variant in members:
            if variant == target:
                continue
            reason = _merge_reason(variant, target)
            if reason is not None:
                candidates.append(MergeCandidate(a=variant, b=target, reason=reason))
    candidates.sort(key=lambda c: (-(freq[c.a] + freq[c.b]), c.a, c.b))
    return candidates


@dataclass(frozen=True)
class Thesaurus:
    """User-reviewed keyword unification groups, canonical <- variants."""

    groups: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def validate(self) -> None:
        canonicals = [c for c, _ in self.groups]
        if len(set(canonicals)) != len(canonicals):
            raise ThesaurusConflict("duplicate canonical labels")
        seen: dict[str, str] = {}
        for canonical, variants in self.groups:
            for variant in variants:
                if variant in seen and seen[variant] != canonical:
                    raise ThesaurusConflict(f"variant {variant!r} appears in two groups")
                seen[variant] = canonical
        for canonical, _ in self.groups:
            if canonical in seen and seen[canonical] != canonical:
                raise ThesaurusConflict(
                    f"{canonical!r} is both a canonical label and another group's variant"
                )

    def replacement_map(self) -> dict[str, str]:
        self.validate()
        mapping: dict[str, str] = {}
        for canonical, variants in self.groups:
            for variant in variants:
                if variant != canonical:
                    mapping[variant] = canonical
        return mapping

    def terms(self) -> set[str]:
        out = set()
        for canonical, variants in self.groups:
            out.add(canonical)
            out.update(variants)
        return out


def parse_thesaurus(text: str) -> Thesaurus:
    """Read the line-oriented thesaurus format: ``CANONICAL = V-1 | V-2``.

    ``#`` starts a comment; terms are normalized to base form on load."""
    groups = []
    for lineno, raw_line in enumerate(text.split("\n"), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ThesaurusConflict(f"line {lineno}: expected 'CANONICAL = VARIANT | ...'")
        left, right = line.split("=", 1)
        try:
            canonical = base_form(left)
            variants = tuple(base_form(v) for v in right.split("|") if v.strip())
        except EmptyKeyword as err:
            raise ThesaurusConflict(f"line {lineno}: {err}") from err
        groups.append((canonical, variants))
    thesaurus = Thesaurus(groups=tuple(groups))
    thesaurus.validate()
    return thesaurus


def format_thesaurus(thesaurus: Thesaurus) -> str:
    """Serialize groups one per line, sorted by canonical (stable on re-read)."""
    lines = [
        f"{canonical} = {' | '.join(variants)}"
        for canonical, variants in sorted(thesaurus.groups)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def format_merge_suggestions(candidates: list[MergeCandidate]) -> str:
    """Render suggestions as commented-out thesaurus lines ready to adopt."""
    lines = ["# suggested keyword merges; uncomment lines to adopt them"]
    for cand in candidates:
        lines.append(f"# {base_form(cand.b)} = {cand.a}  # {cand.reason.value}")
    return "\n".join(lines) + "\n"


def apply_thesaurus(corpus: Corpus, thesaurus: Thesaurus) -> Corpus:
    """Replace every variant with its canonical; single pass, dedup after."""
    mapping = thesaurus.replacement_map()
    if not mapping:
        return corpus
    documents = []
    for doc in corpus.documents:
        documents.append(
            replace(
                doc,
                author_keywords=_dedup(mapping.get(k, k) for k in doc.author_keywords),
                keywords_plus=_dedup(mapping.get(k, k) for k in doc.keywords_plus),
            )
        )
    return Corpus(documents=tuple(documents), source_files=corpus.source_files)


@dataclass(frozen=True)
class Period:
    label: str
    start_year: int
    end_year: int


@dataclass(frozen=True)
class PeriodScheme:
    periods: tuple[Period, ...]

    def validate(self) -> None:
        for p in self.periods:
            if p.start_year > p.end_year:
                raise InvalidScheme(f"period {p.label!r}: start {p.start_year} > end {p.end_year}")
        ordered = sorted(self.periods, key=lambda p: p.start_year)
        for prev, nxt in zip(ordered, ordered[1:]):
            if nxt.start_year <= prev.end_year:
                raise InvalidScheme(f"periods {prev.label!r} and {nxt.label!r} overlap")
        if list(self.periods) != ordered:
            raise InvalidScheme("periods must be listed in ascending order")


#: The three six-year analysis periods used throughout the defaults.
DEFAULT_SCHEME = PeriodScheme(
    periods=(
        Period("2005-2010", 2005, 2010),
        Period("2011-2016", 2011, 2016),
        Period("2017-2022", 2017, 2022),
    )
)


@dataclass(frozen=True)
class CorpusSlice:
    """Documents of one period with their canonical keyword lists."""

    period: Period
    keyword_field: KeywordField
    documents: tuple[Document, ...]
    keywords: Mapping[str, tuple[str, ...]]  # document id -> keywords

    def vocabulary(self) -> set[str]:
        return {kw for kws in self.keywords.values() for kw in kws}


def slice_periods(
    corpus: Corpus, scheme: PeriodScheme, keyword_field: KeywordField
) -> list[CorpusSlice]:
    """Split the corpus into one slice per period, preserving document order.

    Documents without a year, or outside every period, are dropped (the count
    is logged; the CLI reports it)."""
    scheme.validate()
    slices = []
    dropped = 0
    undated = sum(1 for doc in corpus.documents if doc.year is None)
    for period in scheme.periods:
        in_period = tuple(
            doc
            for doc in corpus.documents
            if doc.year is not None and period.start_year <= doc.year <= period.end_year
        )
        slices.append(
            CorpusSlice(
                period=period,
                keyword_field=keyword_field,
                documents=in_period,
                keywords={doc.id: _dedup(doc.keywords(keyword_field)) for doc in in_period},
            )
        )
    dropped = len(corpus.documents) - sum(len(s.documents) for s in slices)
    if undated:
        logger.warning("%d document(s) without a year were dropped", undated)
    if dropped:
        logger.info("%d document(s) fall outside every period", dropped)
    return slices


def keyword_document_frequencies(slice_: CorpusSlice) -> Counter[str]:
    """Document frequency of every keyword within the slice."""
    freq: Counter[str] = Counter()
    for kws in slice_.keywords.values():
        freq.update(kws)
    return freq


def filter_keywords(slice_: CorpusSlice, min_frequency: int) -> CorpusSlice:
    """Drop keywords whose document frequency in the slice is below the
    threshold. Documents left with empty lists are retained."""
    if min_frequency < 1:
        raise ValueError(f"min_frequency must be >= 1, got {min_frequency}")
    if min_frequency == 1:
        return slice_
    freq = keyword_document_frequencies(slice_)
    return CorpusSlice(
        period=slice_.period,
        keyword_field=slice_.keyword_field,
        documents=slice_.documents,
        keywords={
            doc_id: tuple(kw for kw in kws if freq[kw] >= min_frequency)
            for doc_id, kws in slice_.keywords.items()
        },
    )


def slice_to_json(slice_: CorpusSlice) -> str:
    payload = {
        "period": {
            "label": slice_.period.label,
            "start_year": slice_.period.start_year,
            "end_year": slice_.period.end_year,
        },
        "keyword_field": slice_.keyword_field.value,
        "documents": [
            {"id": doc.id, "year": doc.year, "keywords": list(slice_.keywords[doc.id])}
            for doc in slice_.documents
        ],
    }
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"
