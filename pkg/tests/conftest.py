from __future__ import annotations

from pathlib import Path
from random import Random

import pytest

from recal.corpus import (
    CitationLink,
    Corpus,
    PublicationRecord,
    PubType,
    ResearcherProfile,
    YearWindow,
    build_corpus,
)

DATA_DIR = Path(__file__).parent / "data"

PUB_WINDOW = YearWindow(2014, 2018)
CITATION_WINDOW = YearWindow(2014, 2019)


def researcher(rid: str, discipline: str = "geology", degree_year: int | None = 2010) -> ResearcherProfile:
    return ResearcherProfile(rid, discipline, has_dsc=False, last_degree_year=degree_year)


def publication(
    pub_id: str,
    authors: tuple[str, ...] | list[str],
    year: int = 2015,
    pub_type: PubType = PubType.JOURNAL_ARTICLE,
    language: str = "hu",
    wos: bool = False,
    scopus: bool = False,
    impact_factor: float | None = None,
    discipline: str = "geology",
) -> PublicationRecord:
    return PublicationRecord(
        pub_id=pub_id,
        year=year,
        pub_type=pub_type,
        language=language,
        wos_indexed=wos,
        scopus_indexed=scopus,
        impact_factor=impact_factor,
        author_ids=tuple(authors),
        discipline=discipline,
    )


def citation(
    cid: str,
    pub_id: str,
    year: int = 2016,
    citing: tuple[str, ...] | list[str] = ("ext_z",),
    wos: bool = False,
) -> CitationLink:
    return CitationLink(cid, pub_id, year, tuple(citing), wos)


def small_corpus(
    researchers, publications, citations=(), disciplines=("geology", "mining", "social_geography")
) -> Corpus:
    return build_corpus(list(researchers), list(publications), list(citations), disciplines)


def random_corpus(seed: int, max_records: int = 50) -> Corpus:
    """Small random corpus for oracle comparisons: at most ``max_records``
    records across the three files, two disciplines, some external authors,
    citation author sets that sometimes overlap the cited publication's."""
    rng = Random(seed)
    disciplines = ("geology", "mining")
    n_researchers = rng.randint(2, 6)
    researchers = [
        ResearcherProfile(
            f"r{i}",
            disciplines[rng.randrange(2)],
            has_dsc=rng.random() < 0.3,
            last_degree_year=rng.choice([None, 2009, 2015, 2016]),
        )
        for i in range(n_researchers)
    ]
    ids = [r.researcher_id for r in researchers] + ["ext_a", "ext_b"]

    remaining = max_records - n_researchers
    n_pubs = rng.randint(1, max(1, remaining - 2))
    publications = []
    for i in range(n_pubs):
        pool = ids[:]
        rng.shuffle(pool)
        authors = tuple(pool[: rng.randint(1, min(4, len(pool)))])
        pub_type = rng.choice(list(PubType))
        publications.append(
            PublicationRecord(
                pub_id=f"p{i}",
                year=rng.randint(2012, 2020),
                pub_type=pub_type,
                language=rng.choice(["hu", "en", "de"]),
                wos_indexed=rng.random() < 0.5,
                scopus_indexed=rng.random() < 0.5,
                impact_factor=(
                    round(rng.uniform(0.0, 9.0), 2)
                    if pub_type is PubType.JOURNAL_ARTICLE and rng.random() < 0.7
                    else None
                ),
                author_ids=authors,
                discipline=rng.choice(disciplines),
            )
        )

    n_citations = max_records - n_researchers - n_pubs
    citations = []
    for i in range(n_citations):
        target = publications[rng.randrange(n_pubs)]
        citing = {f"c{rng.randint(0, 9)}"}
        if rng.random() < 0.4:  # sometimes a self/co-author citation
            citing.add(target.author_ids[rng.randrange(len(target.author_ids))])
        citations.append(
            CitationLink(
                citation_id=f"cit{i}",
                cited_pub_id=target.pub_id,
                citing_year=rng.randint(2012, 2021),
                citing_author_ids=tuple(sorted(citing)),
                citing_wos_indexed=rng.random() < 0.5,
            )
        )
    return build_corpus(researchers, publications, citations, disciplines)


def write_corpus_files(corpus_dir: Path, text_by_name: dict[str, str]) -> dict[str, Path]:
    corpus_dir.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, text in text_by_name.items():
        path = corpus_dir / name
        path.write_text(text, encoding="utf-8")
        paths[name] = path
    return paths


def social_geography_dossier() -> Corpus:
    """A candidate sitting exactly at the current social-geography minimums
    under integer counting: 40 publications (20 first-authored, 30 since the
    2016 degree, 2 books, 35 in a foreign language), 6 WoS articles (3 since
    the degree), cumulative impact factor 2, 150 independent citations,
    h-index 8."""
    cand = "cand"
    pubs: list[PublicationRecord] = []
    citations: list[CitationLink] = []

    impact_factors = [0.5, 0.5, 0.25, 0.25, 0.25, 0.25]  # sums to the IF minimum of 2
    for i in range(1, 41):
        pid = f"p{i:02d}"
        if i <= 6:
            pub_type, wos, impact = PubType.JOURNAL_ARTICLE, True, impact_factors[i - 1]
        elif i <= 8:
            pub_type, wos, impact = PubType.BOOK, False, None
        else:
            pub_type, wos, impact = PubType.BOOK_CHAPTER, False, None
        if i <= 3 or (7 <= i <= 33):
            year = 2016  # 3 + 2 + 25 = 30 publications since the degree year
        elif i <= 6:
            year = 2014
        else:
            year = 2015
        language = "hu" if i > 35 else "en"  # 35 foreign-language publications
        authors = (cand, f"co{i:02d}") if i <= 20 else (f"first{i:02d}", cand)
        pubs.append(
            PublicationRecord(
                pub_id=pid,
                year=year,
                pub_type=pub_type,
                language=language,
                wos_indexed=wos,
                scopus_indexed=wos,
                impact_factor=impact,
                author_ids=authors,
                discipline="social_geography",
            )
        )

    serial = 0
    for i in range(1, 10):
        per_pub = 18 if i <= 8 else 6  # h-index exactly 8, total exactly 150
        for _ in range(per_pub):
            citations.append(
                CitationLink(
                    citation_id=f"c{serial:03d}",
                    cited_pub_id=f"p{i:02d}",
                    citing_year=2017,
                    citing_author_ids=(f"z{serial:03d}",),
                    citing_wos_indexed=False,
                )
            )
            serial += 1

    return build_corpus(
        [ResearcherProfile(cand, "social_geography", has_dsc=False, last_degree_year=2016)],
        pubs,
        citations,
        disciplines=("social_geography",),
    )


@pytest.fixture
def clean_corpus_files(tmp_path: Path) -> dict[str, Path]:
    """Three well-formed files: 2 researchers, 3 publications, 1 citation."""
    return write_corpus_files(
        tmp_path,
        {
            "researchers.csv": (
                "researcher_id,discipline,has_dsc,last_degree_year\n"
                "r1,geology,true,2009\n"
                "r2,mining,false,\n"
            ),
            "publications.csv": (
                "pub_id,year,pub_type,language,wos_indexed,scopus_indexed,impact_factor,author_ids,discipline\n"
                "p1,2015,journal_article,en,true,true,2.5,r1;ext_a,geology\n"
                "p2,2016,book,hu,false,false,,r1,geology\n"
                "p3,2017,conference_paper,en,false,false,,r2;r1,mining\n"
            ),
            "citations.csv": (
                "citation_id,cited_pub_id,citing_year,citing_author_ids,citing_wos_indexed\n"
                "c1,p1,2018,ext_b;ext_c,true\n"
            ),
        },
    )
