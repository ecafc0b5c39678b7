"""Threshold recalibration from top-quartile performance.

Vocabulary used throughout:

* CMV, current minimum value: the threshold a discipline requires today.
* APV, actual performance value: the mean indicator value of the top
  quartile of a discipline's researchers over the study window.
* Y_i: years a top performer of discipline i needs to reach the CMV at
  their APV pace, ``cmv / apv * t``.
* Y_m: the mean of Y_i over all disciplines.
* DSDR, discipline-specific distance ratio: a discipline's share of the
  section-wide total, over CMVs (current) or APVs (actual).
* RMV, recalibrated minimum value: ``cmv * y_m / y_i``, equivalently
  ``apv * y_m / t``; with it, every discipline needs exactly Y_m years, and
  the RMV shares across disciplines equal the actual DSDRs.

Y_m is quantized to ``ym_decimals`` places before it feeds the per-discipline
ratios; the published reference tables are reproduced at 3 decimals. Set it to
None for exact-mean algebra (then raw RMVs are invariant under rescaling t).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from enum import Enum
from pathlib import Path
from statistics import fmean
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus, YearWindow
from .counting import (
    CountingMethod,
    CountingSettings,
    DEFAULT_SETTINGS,
    IndicatorKind,
    indicator_value,
)


class RecalibrationError(Exception):
    pass


class DegenerateDisciplineError(RecalibrationError):
    """A discipline whose population or APV makes the ratios undefined."""


class MissingCmvError(RecalibrationError):
    pass


class MissingBaseRowError(RecalibrationError):
    pass


class RoundingMode(str, Enum):
    HALF_AWAY_FROM_ZERO = "half_away_from_zero"
    NONE = "none"


#: Derived indicators scale proportionally off these recalibrated base kinds.
DEFAULT_BASE_KINDS: Mapping[IndicatorKind, IndicatorKind] = {
    IndicatorKind.FIRST_AUTHOR_PUBLICATIONS: IndicatorKind.PUBLICATIONS,
    IndicatorKind.PUBLICATIONS_SINCE_DEGREE: IndicatorKind.PUBLICATIONS,
    IndicatorKind.BOOKS_AND_MONOGRAPHS: IndicatorKind.PUBLICATIONS,
    IndicatorKind.FOREIGN_LANGUAGE_PUBLICATIONS: IndicatorKind.PUBLICATIONS,
    IndicatorKind.WOS_ARTICLES_SINCE_DEGREE: IndicatorKind.WOS_ARTICLES,
}


@dataclass(frozen=True)
class RecalibrationConfig:
    """Inputs of the recalibration pipeline.

    ``cmv`` must cover every configured discipline for every kind in ``t``.
    ``ym_source_method`` names the counting method whose Y_i mean defines Y_m
    for BOTH methods (the reference tables derive it from integer counting).
    """

    disciplines: tuple[str, ...]
    cmv: Mapping[tuple[str, IndicatorKind], float]
    t: Mapping[IndicatorKind, float]
    top_fraction: float = 0.25
    ym_source_method: CountingMethod = CountingMethod.INTEGER
    rounding: RoundingMode = RoundingMode.HALF_AWAY_FROM_ZERO
    ym_decimals: int | None = 3

    def __post_init__(self) -> None:
        if not self.disciplines:
            raise RecalibrationError("no disciplines configured")
        if not 0.0 < self.top_fraction <= 1.0:
            raise RecalibrationError(f"top_fraction {self.top_fraction} outside (0, 1]")
        for kind, years in self.t.items():
            if years <= 0:
                raise RecalibrationError(f"t for {kind.value} must be positive, got {years}")
            for discipline in self.disciplines:
                if (discipline, kind) not in self.cmv:
                    raise MissingCmvError(f"no CMV for ({discipline}, {kind.value})")
                if self.cmv[(discipline, kind)] <= 0:
                    raise MissingCmvError(f"CMV for ({discipline}, {kind.value}) must be positive")

    @property
    def kinds(self) -> tuple[IndicatorKind, ...]:
        return tuple(self.t)


@dataclass(frozen=True)
class DisciplinePerformance:
    """Top-quartile mean of one (discipline, kind, method) cell."""

    discipline: str
    kind: IndicatorKind
    method: CountingMethod
    apv: float
    population: int
    selected: int


@dataclass(frozen=True)
class RecalibrationRow:
    discipline: str
    kind: IndicatorKind
    method: CountingMethod
    cmv: float
    apv: float
    y_i: float
    y_m: float
    r_y: float
    dsdr_current: float
    dsdr_actual: float
    rmv_raw: float
    rmv_rounded: int | None


#: APV lookup: (discipline, kind, method) -> value.
ApvTable = Mapping[tuple[str, IndicatorKind, CountingMethod], float]


def top_quartile_apv(
    values: Mapping[str, float] | Iterable[float],
    top_fraction: float = 0.25,
) -> tuple[float, int]:
    """Mean of the top ``top_fraction`` share of values.

    ``values`` is either a researcher-id -> value mapping or a plain
    sequence. The selection size is ``floor(top_fraction * n)`` clamped to at
    least one; ties at the cut are broken by ascending id so the result never
    depends on input order.
    """
    if not 0.0 < top_fraction <= 1.0:
        raise RecalibrationError(f"top_fraction {top_fraction} outside (0, 1]")
    if isinstance(values, Mapping):
        pairs = list(values.items())
    else:
        pairs = list(enumerate(values))
    if not pairs:
        raise DegenerateDisciplineError("cannot take a top quartile of an empty population")
    pairs.sort(key=lambda item: (-item[1], item[0]))
    k = max(1, int(top_fraction * len(pairs)))
    return fmean(value for _, value in pairs[:k]), k


def years_to_fulfill(cmv: float, apv: float, t: float) -> float:
    """Years a discipline's top performers need to reach the minimum:
    ``cmv / apv * t``."""
    if cmv <= 0 or t <= 0:
        raise RecalibrationError(f"cmv and t must be positive (cmv={cmv}, t={t})")
    if apv <= 0:
        raise DegenerateDisciplineError(f"apv={apv}: the minimum can never be fulfilled")
    return cmv / apv * t


def dsdr(values: Mapping[str, float]) -> dict[str, float]:
    """Each discipline's share of the total; shares sum to one."""
    total = 0.0
    for discipline, value in values.items():
        if value < 0:
            raise RecalibrationError(f"negative value for {discipline!r}")
        total += value
    if total <= 0:
        raise RecalibrationError("all values are zero; distance ratios are undefined")
    return {discipline: value / total for discipline, value in values.items()}


def mean_years(years: Mapping[str, float]) -> float:
    """Arithmetic mean of the per-discipline years."""
    return fmean(years.values())


def recalibrated_minimum(cmv: float, y_m: float, y_i: float) -> float:
    """Minimum rescaled so fulfilling it takes y_m years: ``cmv * y_m / y_i``."""
    if y_i <= 0:
        raise RecalibrationError(f"y_i must be positive, got {y_i}")
    return cmv * y_m / y_i


def _round_half_away_from_zero(value: float) -> int:
    return int(Decimal(repr(value)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def round_minimum(
    raw: float,
    kind: IndicatorKind,
    method: CountingMethod,
    mode: RoundingMode = RoundingMode.HALF_AWAY_FROM_ZERO,
) -> int | None:
    """Presentation rounding of a raw minimum.

    Count kinds (and the integer-method cumulative impact factor) round half
    away from zero; the fractional cumulative impact factor stays unrounded,
    as do all values under mode ``none``.
    """
    if raw < 0:
        raise RecalibrationError(f"raw minimum must be non-negative, got {raw}")
    if mode is RoundingMode.NONE:
        return None
    if kind is IndicatorKind.CUMULATIVE_IF and method is CountingMethod.FRACTIONAL:
        return None
    return _round_half_away_from_zero(raw)


def _quantize(value: float, decimals: int | None) -> float:
    if decimals is None:
        return value
    exponent = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(value)).quantize(exponent, rounding=ROUND_HALF_UP))


def discipline_performance(
    corpus: Corpus,
    config: RecalibrationConfig,
    pub_window: YearWindow,
    citation_window: YearWindow,
    methods: Sequence[CountingMethod] = (CountingMethod.INTEGER, CountingMethod.FRACTIONAL),
    settings: CountingSettings = DEFAULT_SETTINGS,
) -> list[DisciplinePerformance]:
    """Compute APVs from a corpus: per configured discipline and kind, the
    top-quartile mean over all of the discipline's researchers (researchers
    with zero output included)."""
    members: dict[str, list[str]] = {d: [] for d in config.disciplines}
    for researcher in corpus.researchers.values():
        if researcher.discipline in members:
            members[researcher.discipline].append(researcher.researcher_id)

    performance: list[DisciplinePerformance] = []
    for discipline in config.disciplines:
        ids = members[discipline]
        if not ids:
            raise DegenerateDisciplineError(f"discipline {discipline!r} has no researchers")
        for kind in config.kinds:
            for method in methods:
                values = {
                    rid: indicator_value(
                        corpus, rid, kind, method, pub_window, citation_window, settings
                    )
                    for rid in ids
                }
                apv, selected = top_quartile_apv(values, config.top_fraction)
                performance.append(
                    DisciplinePerformance(discipline, kind, method, apv, len(ids), selected)
                )
    return performance


def performance_as_table(performance: Iterable[DisciplinePerformance]) -> dict:
    return {(p.discipline, p.kind, p.method): p.apv for p in performance}


def recalibrate_all(
    source: Corpus | ApvTable,
    config: RecalibrationConfig,
    pub_window: YearWindow | None = None,
    citation_window: YearWindow | None = None,
    settings: CountingSettings = DEFAULT_SETTINGS,
) -> list[RecalibrationRow]:
    """Run the full recalibration over every configured (kind, method,
    discipline) cell.

    ``source`` is either a corpus (APVs are computed from it; the two windows
    are then required) or a precomputed APV table. Per kind, Y_m comes from
    the ``ym_source_method`` Y_i values and applies to both methods. Rows come
    out grouped by kind, then method, then configured discipline order.
    """
    methods = (CountingMethod.INTEGER, CountingMethod.FRACTIONAL)
    if isinstance(source, Corpus):
        if pub_window is None or citation_window is None:
            raise RecalibrationError("corpus mode needs pub_window and citation_window")
        apv_table = performance_as_table(
            discipline_performance(corpus=source, config=config,
                                   pub_window=pub_window, citation_window=citation_window,
                                   methods=methods, settings=settings)
        )
    else:
        apv_table = dict(source)

    for discipline in config.disciplines:
        for kind in config.kinds:
            for method in methods:
                apv = apv_table.get((discipline, kind, method))
                if apv is None:
                    raise RecalibrationError(
                        f"no APV for ({discipline}, {kind.value}, {method.value})"
                    )
                if apv <= 0:
                    raise DegenerateDisciplineError(
                        f"apv for ({discipline}, {kind.value}, {method.value}) is {apv}"
                    )

    rows: list[RecalibrationRow] = []
    for kind in config.kinds:
        t = config.t[kind]
        cmvs = {d: config.cmv[(d, kind)] for d in config.disciplines}
        dsdr_current = dsdr(cmvs)

        source_years = {
            d: years_to_fulfill(cmvs[d], apv_table[(d, kind, config.ym_source_method)], t)
            for d in config.disciplines
        }
        y_m = _quantize(mean_years(source_years), config.ym_decimals)

        for method in methods:
            apvs = {d: apv_table[(d, kind, method)] for d in config.disciplines}
            dsdr_actual = dsdr(apvs)
            for discipline in config.disciplines:
                y_i = years_to_fulfill(cmvs[discipline], apvs[discipline], t)
                rmv_raw = recalibrated_minimum(cmvs[discipline], y_m, y_i)
                rows.append(
                    RecalibrationRow(
                        discipline=discipline,
                        kind=kind,
                        method=method,
                        cmv=cmvs[discipline],
                        apv=apvs[discipline],
                        y_i=y_i,
                        y_m=y_m,
                        r_y=y_m / y_i,
                        dsdr_current=dsdr_current[discipline],
                        dsdr_actual=dsdr_actual[discipline],
                        rmv_raw=rmv_raw,
                        rmv_rounded=round_minimum(rmv_raw, kind, method, config.rounding),
                    )
                )
    return rows


def derived_scaled_minimums(
    base_rows: Sequence[RecalibrationRow],
    derived_cmv: Mapping[tuple[str, IndicatorKind], float],
    base_kind_of: Mapping[IndicatorKind, IndicatorKind] | None = None,
    method: CountingMethod = CountingMethod.INTEGER,
    rounding: RoundingMode = RoundingMode.HALF_AWAY_FROM_ZERO,
) -> dict[tuple[str, IndicatorKind], tuple[float, int | None]]:
    """Scale derived indicators proportionally off their base kind's RMV.

    For each (discipline, derived kind) cell:
    ``raw = base_rmv_raw * derived_cmv / base_cmv``, then presentation
    rounding. Returns ``(discipline, kind) -> (raw, rounded)``. A derived kind
    without a base mapping, or whose base row is absent, raises
    ``MissingBaseRowError``.
    """
    if base_kind_of is None:
        base_kind_of = DEFAULT_BASE_KINDS
    base_by_cell = {
        (row.discipline, row.kind): row for row in base_rows if row.method is method
    }
    out: dict[tuple[str, IndicatorKind], tuple[float, int | None]] = {}
    for (discipline, kind), cmv in derived_cmv.items():
        base_kind = base_kind_of.get(kind)
        if base_kind is None:
            raise MissingBaseRowError(f"{kind.value} has no scaling base")
        base = base_by_cell.get((discipline, base_kind))
        if base is None:
            raise MissingBaseRowError(
                f"no {method.value} base row ({discipline}, {base_kind.value}) for {kind.value}"
            )
        raw = base.rmv_raw * cmv / base.cmv
        out[(discipline, kind)] = (raw, round_minimum(raw, kind, method, rounding))
    return out


# --------------------------------------------------------------------------
# File formats

def read_apv_table(path: str | Path) -> dict[tuple[str, IndicatorKind, CountingMethod], float]:
    """Read a ``discipline,kind,method,apv`` table."""
    table: dict[tuple[str, IndicatorKind, CountingMethod], float] = {}
    with Path(path).open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        required = {"discipline", "kind", "method", "apv"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise RecalibrationError(f"{path}: expected header discipline,kind,method,apv")
        for i, record in enumerate(reader, start=1):
            try:
                key = (
                    record["discipline"].strip(),
                    IndicatorKind(record["kind"].strip()),
                    CountingMethod(record["method"].strip()),
                )
                table[key] = float(record["apv"])
            except (KeyError, ValueError) as exc:
                raise RecalibrationError(f"{path}:{i}: bad APV row: {exc}") from exc
    return table


def write_apv_table(table: ApvTable, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        handle.write("discipline,kind,method,apv\n")
        for (discipline, kind, method), apv in table.items():
            handle.write(f"{discipline},{kind.value},{method.value},{apv}\n")


def write_recalibration_rows(rows: Iterable[RecalibrationRow], path: str | Path) -> None:
    """Write rows with ratios to 6 decimals and years/minimums to 3."""
    with Path(path).open("w", encoding="utf-8") as handle:
        handle.write(
            "discipline,kind,method,cmv,apv,y_i,y_m,r_y,"
            "dsdr_current,dsdr_actual,rmv_raw,rmv_rounded\n"
        )
        for row in rows:
            rounded = "" if row.rmv_rounded is None else str(row.rmv_rounded)
            handle.write(
                f"{row.discipline},{row.kind.value},{row.method.value},"
                f"{row.cmv:.3f},{row.apv:.3f},{row.y_i:.3f},{row.y_m:.3f},"
                f"{row.r_y:.6f},{row.dsdr_current:.6f},{row.dsdr_actual:.6f},"
                f"{row.rmv_raw:.3f},{rounded}\n"
            )
