"""Per-researcher indicator values under integer and fractional counting.

Integer counting gives every author of a publication one full credit;
fractional counting splits one credit equally among its authors. Citation
indicators weight each publication's independent-citation count by the same
credit share, and the cumulative impact factor weights the journal's factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .corpus import (
    Corpus,
    CorpusError,
    PublicationRecord,
    PubType,
    YearWindow,
    independent_citations,
)


class CountingMethod(str, Enum):
    INTEGER = "integer"
    FRACTIONAL = "fractional"


class IndicatorKind(str, Enum):
    PUBLICATIONS = "publications"
    WOS_ARTICLES = "wos_articles"
    INDEPENDENT_CITATIONS = "independent_citations"
    CUMULATIVE_IF = "cumulative_if"
    FIRST_AUTHOR_PUBLICATIONS = "first_author_publications"
    PUBLICATIONS_SINCE_DEGREE = "publications_since_degree"
    BOOKS_AND_MONOGRAPHS = "books_and_monographs"
    FOREIGN_LANGUAGE_PUBLICATIONS = "foreign_language_publications"
    WOS_ARTICLES_SINCE_DEGREE = "wos_articles_since_degree"
    WOS_INDEPENDENT_CITATIONS = "wos_independent_citations"
    H_INDEX = "h_index"


#: Kinds recalibrated directly from top-quartile performance.
CORE_KINDS = (
    IndicatorKind.PUBLICATIONS,
    IndicatorKind.WOS_ARTICLES,
    IndicatorKind.INDEPENDENT_CITATIONS,
    IndicatorKind.CUMULATIVE_IF,
)

#: Kinds that need the researcher's last degree year.
SINCE_DEGREE_KINDS = frozenset(
    {IndicatorKind.PUBLICATIONS_SINCE_DEGREE, IndicatorKind.WOS_ARTICLES_SINCE_DEGREE}
)

_CITATION_KINDS = frozenset(
    {IndicatorKind.INDEPENDENT_CITATIONS, IndicatorKind.WOS_INDEPENDENT_CITATIONS}
)


class CountingError(CorpusError):
    pass


class MissingDegreeYearError(CountingError):
    def __init__(self, researcher_id: str, kind: IndicatorKind):
        super().__init__(
            f"researcher {researcher_id!r} has no last_degree_year but {kind.value} needs one"
        )


@dataclass(frozen=True)
class CountingSettings:
    """Corpus-independent knobs of the indicator filters.

    ``counted_publication_types`` restricts which publication types count for
    the plain publication-count kinds (None = all types, the default).
    """

    domestic_language: str = "hu"
    counted_publication_types: frozenset[PubType] | None = None

    def counts_as_publication(self, pub: PublicationRecord) -> bool:
        if self.counted_publication_types is None:
            return True
        return pub.pub_type in self.counted_publication_types


DEFAULT_SETTINGS = CountingSettings()


@dataclass(frozen=True)
class IndicatorVector:
    """All configured indicator values for one researcher under one method."""

    researcher_id: str
    method: CountingMethod
    values: Mapping[IndicatorKind, float]


def publication_credit(
    pub: PublicationRecord, author_id: str, method: CountingMethod
) -> float:
    """Credit an author receives for one publication: 1 under integer
    counting, an equal share 1/n under fractional counting."""
    if author_id not in pub.author_ids:
        raise CountingError(f"author {author_id!r} is not on publication {pub.pub_id!r}")
    if method is CountingMethod.INTEGER:
        return 1.0
    return 1.0 / pub.author_count


def _is_wos_article(pub: PublicationRecord) -> bool:
    return pub.pub_type is PubType.JOURNAL_ARTICLE and pub.wos_indexed


def _passes_filter(
    pub: PublicationRecord,
    kind: IndicatorKind,
    researcher_id: str,
    degree_year: int | None,
    settings: CountingSettings,
) -> bool:
    if kind is IndicatorKind.PUBLICATIONS:
        return settings.counts_as_publication(pub)
    if kind is IndicatorKind.WOS_ARTICLES:
        return _is_wos_article(pub)
    if kind is IndicatorKind.FIRST_AUTHOR_PUBLICATIONS:
        return settings.counts_as_publication(pub) and pub.first_author == researcher_id
    if kind is IndicatorKind.PUBLICATIONS_SINCE_DEGREE:
        return settings.counts_as_publication(pub) and pub.year >= degree_year  # type: ignore[operator]
    if kind is IndicatorKind.BOOKS_AND_MONOGRAPHS:
        return pub.pub_type is PubType.BOOK
    if kind is IndicatorKind.FOREIGN_LANGUAGE_PUBLICATIONS:
        return settings.counts_as_publication(pub) and pub.language != settings.domestic_language
    if kind is IndicatorKind.WOS_ARTICLES_SINCE_DEGREE:
        return _is_wos_article(pub) and pub.year >= degree_year  # type: ignore[operator]
    raise CountingError(f"{kind.value} is not a publication-count indicator")


def indicator_value(
    corpus: Corpus,
    researcher_id: str,
    kind: IndicatorKind,
    method: CountingMethod,
    pub_window: YearWindow,
    citation_window: YearWindow,
    settings: CountingSettings = DEFAULT_SETTINGS,
) -> float:
    """Value of one indicator for one researcher over the given windows.

    Publications are selected by publication year in ``pub_window``;
    citation indicators additionally restrict citing years to
    ``citation_window``. The h-index is only defined under integer counting.
    """
    profile = corpus.researcher(researcher_id)
    if kind is IndicatorKind.H_INDEX:
        if method is not CountingMethod.INTEGER:
            raise CountingError("h_index is only defined under integer counting")
        return float(h_index(corpus, researcher_id, pub_window, citation_window))

    authored = [
        pub
        for pub in corpus.publications_of.get(researcher_id, ())
        if pub.year in pub_window
    ]

    if kind is IndicatorKind.CUMULATIVE_IF:
        return sum(
            pub.impact_factor * publication_credit(pub, researcher_id, method)
            for pub in authored
            if pub.pub_type is PubType.JOURNAL_ARTICLE and pub.impact_factor is not None
        )

    if kind in _CITATION_KINDS:
        total = 0.0
        for pub in authored:
            links = independent_citations(corpus, pub, citation_window)
            if kind is IndicatorKind.WOS_INDEPENDENT_CITATIONS:
                links = [link for link in links if link.citing_wos_indexed]
            if links:
                total += len(links) * publication_credit(pub, researcher_id, method)
        return total

    degree_year = profile.last_degree_year
    if kind in SINCE_DEGREE_KINDS and degree_year is None:
        raise MissingDegreeYearError(researcher_id, kind)
    return sum(
        publication_credit(pub, researcher_id, method)
        for pub in authored
        if _passes_filter(pub, kind, researcher_id, degree_year, settings)
    )


def h_index(
    corpus: Corpus,
    researcher_id: str,
    pub_window: YearWindow,
    citation_window: YearWindow,
) -> int:
    """Largest h such that at least h in-window publications each received at
    least h independent citations inside the citation window."""
    corpus.researcher(researcher_id)
    counts = sorted(
        (
            len(independent_citations(corpus, pub, citation_window))
            for pub in corpus.publications_of.get(researcher_id, ())
            if pub.year in pub_window
        ),
        reverse=True,
    )
    h = 0
    for i, count in enumerate(counts, start=1):
        if count >= i:
            h = i
        else:
            break
    return h


def indicator_matrix(
    corpus: Corpus,
    kinds: Sequence[IndicatorKind],
    methods: Sequence[CountingMethod],
    pub_window: YearWindow,
    citation_window: YearWindow,
    settings: CountingSettings = DEFAULT_SETTINGS,
) -> list[IndicatorVector]:
    """One vector per (researcher, method), ordered by researcher id then by
    the given method order. The h-index is silently dropped from fractional
    vectors; every other failure is re-raised with the researcher named."""
    vectors: list[IndicatorVector] = []
    for researcher_id in sorted(corpus.researchers):
        for method in methods:
            values: dict[IndicatorKind, float] = {}
            for kind in kinds:
                if kind is IndicatorKind.H_INDEX and method is not CountingMethod.INTEGER:
                    continue
                try:
                    values[kind] = indicator_value(
                        corpus, researcher_id, kind, method, pub_window, citation_window, settings
                    )
                except CountingError as exc:
                    raise CountingError(f"researcher {researcher_id!r}: {exc}") from exc
            vectors.append(IndicatorVector(researcher_id, method, values))
    return vectors


def write_indicator_table(vectors: Iterable[IndicatorVector], path) -> None:
    """Export vectors as ``researcher_id,method,kind,value`` with six-decimal
    values."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("researcher_id,method,kind,value\n")
        for vector in vectors:
            for kind, value in vector.values.items():
                handle.write(
                    f"{vector.researcher_id},{vector.method.value},{kind.value},{value:.6f}\n"
                )
