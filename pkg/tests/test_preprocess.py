import pytest
from hypothesis import given
from hypothesis import strategies as st

from cowordmap.errors import EmptyKeyword, InvalidScheme, ThesaurusConflict
from cowordmap.ingest import Corpus, KeywordField
from cowordmap.preprocess import (
    DEFAULT_SCHEME,
    MergeReason,
    Period,
    PeriodScheme,
    Thesaurus,
    apply_thesaurus,
    filter_keywords,
    format_merge_suggestions,
    format_thesaurus,
    keyword_document_frequencies,
    normalize_corpus,
    normalize_keyword,
    parse_thesaurus,
    slice_periods,
    suggest_merges,
)
from .test_ingest import make_doc


def corpus_of(*keyword_lists, start_year=2020):
    docs = tuple(
        make_doc(f"d{i}", year=start_year, keywords=kws) for i, kws in enumerate(keyword_lists)
    )
    return Corpus(documents=docs)


def test_normalize_basic_form():
    assert normalize_keyword("  Public   Libraries ") == "PUBLIC-LIBRARIES"


def test_normalize_plural_fold_is_conditional():
    assert normalize_keyword("ARCHIVES", {"ARCHIVE"}) == "ARCHIVE"
    assert normalize_keyword("ARCHIVES", set()) == "ARCHIVES"
    assert normalize_keyword("PARIS", {"PARI"}) == "PARI"  # fold only fires on vocab hit
    assert normalize_keyword("PARIS", set()) == "PARIS"


def test_normalize_ies_fold():
    assert normalize_keyword("Libraries", {"LIBRARY"}) == "LIBRARY"
    assert normalize_keyword("Libraries", {"LIBRARIE"}) == "LIBRARIES"  # only IES->Y applies


def test_normalize_empty_raises():
    with pytest.raises(EmptyKeyword):
        normalize_keyword("   ")


@given(st.text(min_size=1), st.frozensets(st.sampled_from(["ARCHIVE", "LIBRARY", "SPAIN"])))
def test_normalize_idempotent(raw, vocab):
    try:
        once = normalize_keyword(raw, vocab)
    except EmptyKeyword:
        return
    assert normalize_keyword(once, vocab) == once


def test_normalize_corpus_dedups_after_fold():
    corpus = corpus_of(("Archive", "ARCHIVES"), ("archive",))
    normalized = normalize_corpus(corpus)
    assert normalized.documents[0].author_keywords == ("ARCHIVE",)
    assert normalized.documents[1].author_keywords == ("ARCHIVE",)


def test_suggest_merges_plural():
    corpus = corpus_of(("LIBRARY",), ("LIBRARY",), ("LIBRARIES",))
    cands = suggest_merges(corpus)
    assert len(cands) == 1
    assert (cands[0].a, cands[0].b, cands[0].reason) == (
        "LIBRARIES",
        "LIBRARY",
        MergeReason.PLURAL,
    )


def test_suggest_merges_hyphen_space():
    corpus = corpus_of(("OPEN ACCESS",), ("OPEN-ACCESS",))
    cands = suggest_merges(corpus)
    assert len(cands) == 1
    assert cands[0].reason is MergeReason.HYPHEN_SPACE


def test_suggest_merges_case_only():
    corpus = corpus_of(("Spain",), ("SPAIN",), ("SPAIN",))
    cands = suggest_merges(corpus)
    assert len(cands) == 1
    assert (cands[0].a, cands[0].b, cands[0].reason) == ("Spain", "SPAIN", MergeReason.CASE_ONLY)


def test_suggest_merges_none():
    assert suggest_merges(corpus_of(("SPAIN",), ("ARCHIVES",))) == []


def test_suggest_merges_ordering_by_combined_frequency():
    corpus = corpus_of(
        ("LIBRARY", "Spain"),
        ("LIBRARY", "Spain"),
        ("LIBRARIES", "Spain"),
        ("SPAIN",),
    )
    cands = suggest_merges(corpus)
    assert [(c.a, c.b) for c in cands] == [("SPAIN", "Spain"), ("LIBRARIES", "LIBRARY")]


def test_merge_suggestions_round_trip_into_thesaurus():
    corpus = corpus_of(("LIBRARY",), ("LIBRARY",), ("LIBRARIES",))
    text = format_merge_suggestions(suggest_merges(corpus))
    assert parse_thesaurus(text).groups == ()  # all commented out
    uncommented = "\n".join(
        line.lstrip("# ") if line.startswith("# ") and "=" in line else line
        for line in text.split("\n")
    )
    thesaurus = parse_thesaurus(uncommented)
    assert thesaurus.groups == (("LIBRARY", ("LIBRARIES",)),)


def test_apply_thesaurus_merges_and_dedups():
    corpus = corpus_of(("WEB", "INTERNET"),)
    thesaurus = Thesaurus(groups=(("INTERNET", ("WEB",)),))
    merged = apply_thesaurus(corpus, thesaurus)
    assert merged.documents[0].author_keywords == ("INTERNET",)


def test_apply_empty_thesaurus_is_identity():
    corpus = corpus_of(("A", "B"))
    assert apply_thesaurus(corpus, Thesaurus()) == corpus


def test_thesaurus_conflicts():
    with pytest.raises(ThesaurusConflict):
        Thesaurus(groups=(("A", ("X",)), ("B", ("X",)))).validate()
    with pytest.raises(ThesaurusConflict):
        Thesaurus(groups=(("A", ("B",)), ("B", ("C",)))).validate()
    with pytest.raises(ThesaurusConflict):
        Thesaurus(groups=(("A", ()), ("A", ()))).validate()


def test_thesaurus_file_round_trip():
    text = "# comment\nINTERNET = WEB | World Wide Web\nLIBRARY = LIBRARIES\n"
    thesaurus = parse_thesaurus(text)
    assert thesaurus.groups == (
        ("INTERNET", ("WEB", "WORLD-WIDE-WEB")),
        ("LIBRARY", ("LIBRARIES",)),
    )
    written = format_thesaurus(thesaurus)
    assert parse_thesaurus(written) == thesaurus
    assert format_thesaurus(parse_thesaurus(written)) == written


def test_slice_periods_boundary_inclusion():
    docs = (
        make_doc("d1", year=2005, keywords=("A",)),
        make_doc("d2", year=2010, keywords=("B",)),
        make_doc("d3", year=2011, keywords=("C",)),
    )
    slices = slice_periods(Corpus(documents=docs), DEFAULT_SCHEME, KeywordField.AUTHOR_KEYWORDS)
    assert [len(s.documents) for s in slices] == [2, 1, 0]
    assert slices[0].keywords == {"d1": ("A",), "d2": ("B",)}


def test_slice_periods_drops_out_of_range_and_undated():
    docs = (
        make_doc("d1", year=2004, keywords=("A",)),
        make_doc("d2", year=None, keywords=("B",)),
        make_doc("d3", year=2005, keywords=("C",)),
    )
    slices = slice_periods(Corpus(documents=docs), DEFAULT_SCHEME, KeywordField.AUTHOR_KEYWORDS)
    assert sum(len(s.documents) for s in slices) == 1


def test_invalid_schemes_rejected():
    with pytest.raises(InvalidScheme):
        PeriodScheme(periods=(Period("bad", 2010, 2005),)).validate()
    with pytest.raises(InvalidScheme):
        PeriodScheme(
            periods=(Period("a", 2005, 2010), Period("b", 2010, 2015))
        ).validate()
    with pytest.raises(InvalidScheme):
        slice_periods(
            corpus_of(("A",)),
            PeriodScheme(periods=(Period("b", 2011, 2016), Period("a", 2005, 2010))),
            KeywordField.AUTHOR_KEYWORDS,
        )


def test_filter_keywords_threshold():
    docs = (
        make_doc("d1", keywords=("A", "B")),
        make_doc("d2", keywords=("A", "B")),
        make_doc("d3", keywords=("A", "C")),
    )
    scheme = PeriodScheme(periods=(Period("p", 2020, 2020),))
    [sl] = slice_periods(Corpus(documents=docs), scheme, KeywordField.AUTHOR_KEYWORDS)
    filtered = filter_keywords(sl, 2)
    assert filtered.keywords == {"d1": ("A", "B"), "d2": ("A", "B"), "d3": ("A",)}
    assert len(filtered.documents) == 3  # emptied documents are retained


def test_filter_min_frequency_one_is_identity():
    docs = (make_doc("d1", keywords=("A",)),)
    scheme = PeriodScheme(periods=(Period("p", 2020, 2020),))
    [sl] = slice_periods(Corpus(documents=docs), scheme, KeywordField.AUTHOR_KEYWORDS)
    assert filter_keywords(sl, 1) == sl


@given(
    st.lists(
        st.lists(st.sampled_from("ABCDEF"), min_size=0, max_size=4, unique=True),
        min_size=0,
        max_size=12,
    ),
    st.integers(min_value=1, max_value=4),
)
def test_filter_is_monotone_and_respects_threshold(keyword_lists, min_frequency):
    corpus = corpus_of(*[tuple(kws) for kws in keyword_lists])
    scheme = PeriodScheme(periods=(Period("p", 2020, 2020),))
    [sl] = slice_periods(corpus, scheme, KeywordField.AUTHOR_KEYWORDS)
    filtered = filter_keywords(sl, min_frequency)
    stricter = filter_keywords(sl, min_frequency + 1)
    # every surviving keyword really has frequency >= threshold (recount)
    freq = keyword_document_frequencies(filtered)
    assert all(count >= min_frequency for count in freq.values())
    # raising the threshold never adds a keyword
    for doc_id, kws in stricter.keywords.items():
        assert set(kws) <= set(filtered.keywords[doc_id])


def test_pipeline_order_normalize_thesaurus_slice_filter():
    # WEB alone is below the threshold; only the thesaurus merge into
    # INTERNET (applied before filtering) lets it survive. Filtering first
    # would have discarded it, so this pins the pipeline order.
    docs = (
        make_doc("d1", keywords=("Web",)),
        make_doc("d2", keywords=("Internet",)),
        make_doc("d3", keywords=("Internet", "Spain")),
    )
    corpus = normalize_corpus(Corpus(documents=docs))
    corpus = apply_thesaurus(corpus, Thesaurus(groups=(("INTERNET", ("WEB",)),)))
    scheme = PeriodScheme(periods=(Period("p", 2020, 2020),))
    [sl] = slice_periods(corpus, scheme, KeywordField.AUTHOR_KEYWORDS)
    filtered = filter_keywords(sl, 2)
    assert filtered.keywords["d1"] == ("INTERNET",)
    assert filtered.keywords["d3"] == ("INTERNET",)
