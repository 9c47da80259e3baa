"""Web of Science plain-text ("field tagged") export parsing and corpus summaries.

The format is line oriented: an optional ``FN``/``VR`` header, then records made
of ``XX value`` lines (two-letter tag, one space), continuation lines indented
three spaces, a record terminator ``ER`` and a file terminator ``EF``.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable

from .errors import CowordError, MalformedTagLine, UnterminatedRecord

logger = logging.getLogger(__name__)


class DocType(str, Enum):
    ARTICLE = "Article"
    BOOK_REVIEW = "BookReview"
    BIOGRAPHICAL_ITEM = "BiographicalItem"
    EDITORIAL_MATERIAL = "EditorialMaterial"
    REVIEW = "Review"
    OTHER = "Other"


class KeywordField(str, Enum):
    """Which keyword list of a record feeds the analysis (DE vs ID)."""

    AUTHOR_KEYWORDS = "author_keywords"
    KEYWORDS_PLUS = "keywords_plus"


@dataclass(frozen=True)
class Document:
    """One bibliographic record."""

    id: str
    year: int | None
    doc_type: DocType
    title: str
    source: str
    authors: tuple[str, ...]
    author_keywords: tuple[str, ...]
    keywords_plus: tuple[str, ...]
    extra_tags: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def keywords(self, which: KeywordField) -> tuple[str, ...]:
        if which is KeywordField.AUTHOR_KEYWORDS:
            return self.author_keywords
        return self.keywords_plus


@dataclass(frozen=True)
class Corpus:
    """Parsed records in file order, plus the files they came from."""

    documents: tuple[Document, ...]
    source_files: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.documents)


@dataclass(frozen=True)
class SummaryStats:
    n_documents: int
    counts_by_doc_type: dict[str, int]
    n_distinct_author_keywords: int
    n_distinct_keywords_plus: int
    n_authors: int
    n_single_authored_docs: int
    year_range: tuple[int, int] | None


# Tags interpreted into Document fields; everything else is kept raw.
_AUTHOR_TAGS = {"AU"}
_KEYWORD_TAGS = {"DE", "ID"}
_SCALAR_TAGS = {"PT", "TI", "SO", "DT", "PY", "UT"}
_HEADER_TAGS = {"FN", "VR"}

_TAG_LINE = re.compile(r"^([A-Z][A-Z0-9])(?: (.*))?$")

_DOC_TYPE_MAP = {
    "article": DocType.ARTICLE,
    "book review": DocType.BOOK_REVIEW,
    "biographical item": DocType.BIOGRAPHICAL_ITEM,
    "editorial material": DocType.EDITORIAL_MATERIAL,
    "review": DocType.REVIEW,
}


def _classify_doc_type(raw: str) -> DocType:
    key = re.sub(r"[^a-z0-9]+", " ", raw.casefold()).strip()
    return _DOC_TYPE_MAP.get(key, DocType.OTHER)


def _split_keywords(lines: list[str]) -> tuple[str, ...]:
    # Continuation lines are joined with a single space before splitting;
    # WoS wraps long keyword lists at '; ' boundaries.
    joined = " ".join(lines)
    return tuple(part.strip() for part in joined.split(";") if part.strip())


def _parse_year(value: str) -> int | None:
    try:
        year = int(value.strip())
    except ValueError:
        return None
    return year if year > 0 else None


def _finish_record(tags: dict[str, list[str]], ordinal: int) -> Document:
    known = _AUTHOR_TAGS | _KEYWORD_TAGS | _SCALAR_TAGS
    ut = " ".join(tags.get("UT", [])).strip()
    return Document(
        id=ut if ut else f"doc-{ordinal}",
        year=_parse_year(" ".join(tags["PY"])) if "PY" in tags else None,
        doc_type=_classify_doc_type(" ".join(tags.get("DT", []))),
        title=" ".join(tags.get("TI", [])),
        source=" ".join(tags.get("SO", [])),
        authors=tuple(a.strip() for a in tags.get("AU", []) if a.strip()),
        author_keywords=_split_keywords(tags.get("DE", [])),
        keywords_plus=_split_keywords(tags.get("ID", [])),
        extra_tags={t: tuple(v) for t, v in sorted(tags.items()) if t not in known},
    )


def parse_wos_plaintext(text: str, *, source: str | None = None, ordinal_start: int = 1) -> Corpus:
    """Parse one WoS plain-text export into a Corpus, preserving record order.

    Raises UnterminatedRecord when the file (or an EF line) ends a record
    without ER, and MalformedTagLine for lines that fit no format rule;
    both carry the 1-based line number. Empty input yields an empty Corpus.
    """
    if text.startswith("﻿"):
        text = text[1:]
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    documents: list[Document] = []
    tags: dict[str, list[str]] | None = None  # None = between records
    current_tag: str | None = None
    ordinal = ordinal_start

    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\r")
        if not line.strip():
            current_tag = None
            continue
        if line.startswith("   "):
            if tags is None or current_tag is None:
                raise MalformedTagLine("continuation line without a tag line", lineno)
            tags[current_tag].append(line[3:].strip())
            continue
        match = _TAG_LINE.match(line)
        if match is None:
            raise MalformedTagLine(f"unrecognized line {line!r}", lineno)
        tag, value = match.group(1), match.group(2) or ""

        if tag == "EF":
            if tags is not None:
                raise UnterminatedRecord("EF reached before ER", lineno)
            break
        if tag == "ER":
            if tags is None:
                raise MalformedTagLine("ER outside a record", lineno)
            documents.append(_finish_record(tags, ordinal))
            ordinal += 1
            tags = None
            current_tag = None
            continue
        if tags is None and tag in _HEADER_TAGS and not documents:
            if tag == "FN" and "Web of Science" not in value:
                logger.warning("unexpected export header %r", value)
            current_tag = None
            continue
        if tags is None:
            tags = {}
        tags.setdefault(tag, []).append(value.strip())
        current_tag = tag

    if tags is not None:
        raise UnterminatedRecord("file ended before ER", len(lines))

    _check_unique_ids(documents)
    return Corpus(
        documents=tuple(documents),
        source_files=(source,) if source else (),
    )


def parse_wos_files(paths: Iterable[str | Path]) -> Corpus:
    """Parse several export files, concatenated in filename order."""
    ordered = sorted(Path(p) for p in paths)
    documents: list[Document] = []
    for path in ordered:
        corpus = parse_wos_plaintext(
            path.read_text(encoding="utf-8"),
            source=path.name,
            ordinal_start=len(documents) + 1,
        )
        documents.extend(corpus.documents)
    _check_unique_ids(documents)
    return Corpus(documents=tuple(documents), source_files=tuple(p.name for p in ordered))


def _check_unique_ids(documents: list[Document]) -> None:
    seen: set[str] = set()
    for doc in documents:
        if doc.id in seen:
            raise CowordError(f"duplicate document id {doc.id!r}")
        seen.add(doc.id)


def corpus_summary(
    corpus: Corpus, keyword_field: KeywordField = KeywordField.AUTHOR_KEYWORDS
) -> SummaryStats:
    """Table-1-style counts. Distinctness of keywords is case-insensitive on
    the raw strings; both keyword fields are always counted, so the
    ``keyword_field`` choice does not change the result."""
    del keyword_field
    type_counts = Counter(doc.doc_type.value for doc in corpus.documents)
    author_kw = {kw.casefold() for doc in corpus.documents for kw in doc.author_keywords}
    plus_kw = {kw.casefold() for doc in corpus.documents for kw in doc.keywords_plus}
    authors = {a for doc in corpus.documents for a in doc.authors}
    years = [doc.year for doc in corpus.documents if doc.year is not None]
    return SummaryStats(
        n_documents=len(corpus.documents),
        counts_by_doc_type={t.value: type_counts[t.value] for t in DocType if type_counts[t.value]},
        n_distinct_author_keywords=len(author_kw),
        n_distinct_keywords_plus=len(plus_kw),
        n_authors=len(authors),
        n_single_authored_docs=sum(1 for doc in corpus.documents if len(doc.authors) == 1),
        year_range=(min(years), max(years)) if years else None,
    )


def corpus_to_json(corpus: Corpus) -> str:
    payload = {
        "source_files": list(corpus.source_files),
        "documents": [
            {
                "id": doc.id,
                "year": doc.year,
                "doc_type": doc.doc_type.value,
                "title": doc.title,
                "source": doc.source,
                "authors": list(doc.authors),
                "author_keywords": list(doc.author_keywords),
                "keywords_plus": list(doc.keywords_plus),
                "extra_tags": {t: list(v) for t, v in doc.extra_tags.items()},
            }
            for doc in corpus.documents
        ],
    }
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def corpus_from_json(text: str) -> Corpus:
    payload = json.loads(text)
    documents = []
    for entry in payload["documents"]:
        documents.append(
            Document(
                id=entry["id"],
                year=entry["year"],
                doc_type=DocType(entry["doc_type"]),
                title=entry["title"],
                source=entry["source"],
                authors=tuple(entry["authors"]),
                author_keywords=tuple(entry["author_keywords"]),
                keywords_plus=tuple(entry["keywords_plus"]),
                extra_tags={t: tuple(v) for t, v in entry["extra_tags"].items()},
            )
        )
    _check_unique_ids(documents)
    return Corpus(documents=tuple(documents), source_files=tuple(payload["source_files"]))
