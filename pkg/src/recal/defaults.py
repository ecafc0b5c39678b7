"""Shipped defaults: the nine earth-science disciplines, their current
minimum requirements, the study windows, and the co-authorship profile used
to calibrate the synthetic corpus generator.

All of this is plain data; load a pipeline config file to override any of it.
"""
from __future__ import annotations

from .corpus import YearWindow
from .counting import IndicatorKind as K

#: Discipline key -> display name, in fixed output order.
DISCIPLINES: dict[str, str] = {
    "geochemistry": "Geochemistry, Mineralogy and Petrology",
    "geodesy": "Geodesy and Geoinformatics",
    "social_geography": "Social Geography",
    "physical_geography": "Physical Geography",
    "geology": "Geology",
    "geophysics": "Geophysics",
    "meteorology": "Meteorology",
    "mining": "Mining",
    "paleontology": "Paleontology",
}

DEFAULT_PUB_WINDOW = YearWindow(2014, 2018)
DEFAULT_CITATION_WINDOW = YearWindow(2014, 2019)
DEFAULT_DOMESTIC_LANGUAGE = "hu"

#: Data horizon (years) per recalibrated indicator. The citation indicator
#: keeps t=5 as well: its citing window is one year longer than the
#: publication window, but the reference ratios are defined on the five-year
#: publication horizon.
DEFAULT_T: dict[K, float] = {
    K.PUBLICATIONS: 5.0,
    K.WOS_ARTICLES: 5.0,
    K.INDEPENDENT_CITATIONS: 5.0,
    K.CUMULATIVE_IF: 5.0,
}

_GROUP_HARD = ("geochemistry", "geology", "geophysics", "meteorology", "paleontology")
_GROUP_APPLIED = ("mining", "geodesy", "physical_geography")

_GROUP_HARD_MINIMUMS: dict[K, float] = {
    K.PUBLICATIONS: 30,
    K.FIRST_AUTHOR_PUBLICATIONS: 15,
    K.PUBLICATIONS_SINCE_DEGREE: 15,
    K.WOS_ARTICLES: 12,
    K.WOS_ARTICLES_SINCE_DEGREE: 6,
    K.INDEPENDENT_CITATIONS: 150,
    K.WOS_INDEPENDENT_CITATIONS: 50,
    K.CUMULATIVE_IF: 8,
    K.H_INDEX: 9,
}
_GROUP_APPLIED_MINIMUMS: dict[K, float] = {
    K.PUBLICATIONS: 30,
    K.FIRST_AUTHOR_PUBLICATIONS: 15,
    K.PUBLICATIONS_SINCE_DEGREE: 15,
    K.WOS_ARTICLES: 8,
    K.WOS_ARTICLES_SINCE_DEGREE: 4,
    K.INDEPENDENT_CITATIONS: 120,
    K.WOS_INDEPENDENT_CITATIONS: 30,
    K.CUMULATIVE_IF: 4,
    K.H_INDEX: 8,
}
_SOCIAL_GEOGRAPHY_MINIMUMS: dict[K, float] = {
    K.PUBLICATIONS: 40,
    K.FIRST_AUTHOR_PUBLICATIONS: 20,
    K.PUBLICATIONS_SINCE_DEGREE: 30,
    K.BOOKS_AND_MONOGRAPHS: 2,
    K.FOREIGN_LANGUAGE_PUBLICATIONS: 35,
    K.WOS_ARTICLES: 6,
    K.WOS_ARTICLES_SINCE_DEGREE: 3,
    K.INDEPENDENT_CITATIONS: 150,
    K.CUMULATIVE_IF: 2,
    K.H_INDEX: 8,
}


def _build_current_minimums() -> dict[tuple[str, K], float]:
    table: dict[tuple[str, K], float] = {}
    for discipline in _GROUP_HARD:
        for kind, minimum in _GROUP_HARD_MINIMUMS.items():
            table[(discipline, kind)] = float(minimum)
    for discipline in _GROUP_APPLIED:
        for kind, minimum in _GROUP_APPLIED_MINIMUMS.items():
            table[(discipline, kind)] = float(minimum)
    for kind, minimum in _SOCIAL_GEOGRAPHY_MINIMUMS.items():
        table[("social_geography", kind)] = float(minimum)
    return table


#: Current minimum value per (discipline, kind); absent cell = not required.
CURRENT_MINIMUMS: dict[tuple[str, K], float] = _build_current_minimums()

#: Observed section-wide co-authorship profile, 2014-2018, per discipline:
#: (publications, multi-authored publications, mean authors per multi-authored
#: publication). Used as default calibration targets for synthetic corpora.
COAUTHORSHIP_PROFILE: dict[str, tuple[int, int, float]] = {
    "geochemistry": (1608, 1529, 7.30),
    "geodesy": (591, 444, 4.81),
    "geology": (1154, 1073, 6.09),
    "geophysics": (889, 841, 9.56),
    "meteorology": (1064, 969, 5.66),
    "mining": (679, 588, 4.63),
    "paleontology": (532, 443, 5.74),
    "physical_geography": (2166, 1875, 5.14),
    "social_geography": (3277, 2199, 3.72),
}

#: Default per-discipline researcher head counts for synthetic corpora. Only
#: the ratio structure matters for testing; the paleontology committee is the
#: smallest at 32 profiles.
RESEARCHER_COUNTS: dict[str, int] = {
    "geochemistry": 90,
    "geodesy": 40,
    "social_geography": 144,
    "physical_geography": 96,
    "geology": 52,
    "geophysics": 48,
    "meteorology": 52,
    "mining": 15,
    "paleontology": 32,
}

#: Share of publications that are WoS-indexed journal articles. The section
#: averages ~0.20 with social geography far below it.
WOS_ARTICLE_RATIOS: dict[str, float] = {
    "geochemistry": 0.32,
    "geodesy": 0.15,
    "social_geography": 0.072,
    "physical_geography": 0.18,
    "geology": 0.30,
    "geophysics": 0.28,
    "meteorology": 0.26,
    "mining": 0.12,
    "paleontology": 0.28,
}

#: Mean independent citations per publication (section-wide observed average
#: is ~1.73) and mean journal impact factor for indexed articles.
DEFAULT_CITATION_RATE = 1.73
DEFAULT_IF_MEAN = 1.6

#: Share of publications written in the domestic language.
DOMESTIC_LANGUAGE_RATIOS: dict[str, float] = {
    "geochemistry": 0.35,
    "geodesy": 0.55,
    "social_geography": 0.80,
    "physical_geography": 0.55,
    "geology": 0.40,
    "geophysics": 0.30,
    "meteorology": 0.40,
    "mining": 0.60,
    "paleontology": 0.45,
}
