"""Scoring a candidate's indicator vector against a threshold table.

Every indicator required for the candidate's discipline must reach its
minimum; the per-indicator score is the plain ratio value/minimum, so
over-fulfillment earns proportionally more than 1.0. Scores are not combined
into a composite.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .counting import IndicatorKind, IndicatorVector


class EvaluationError(Exception):
    pass


@dataclass(frozen=True)
class ThresholdTable:
    """Minimum values per (discipline, kind); absent cells are not required."""

    label: str
    minimums: Mapping[tuple[str, IndicatorKind], float]

    def __post_init__(self) -> None:
        for (discipline, kind), minimum in self.minimums.items():
            if minimum <= 0:
                raise EvaluationError(
                    f"minimum for ({discipline}, {kind.value}) must be positive, got {minimum}"
                )

    def required_kinds(self, discipline: str) -> list[IndicatorKind]:
        return [kind for kind in IndicatorKind if (discipline, kind) in self.minimums]


@dataclass(frozen=True)
class IndicatorScore:
    kind: IndicatorKind
    value: float
    minimum: float
    fulfilled: bool
    score: float


@dataclass(frozen=True)
class EvaluationResult:
    researcher_id: str
    discipline: str
    method: str
    table_label: str
    scores: tuple[IndicatorScore, ...]
    overall_fulfilled: bool

    def to_dict(self) -> dict:
        return {
            "researcher_id": self.researcher_id,
            "discipline": self.discipline,
            "method": self.method,
            "table_label": self.table_label,
            "overall_fulfilled": self.overall_fulfilled,
            "indicators": [
                {
                    "kind": s.kind.value,
                    "value": s.value,
                    "minimum": s.minimum,
                    "fulfilled": s.fulfilled,
                    "score": s.score,
                }
                for s in self.scores
            ],
        }


def evaluate_candidate(
    vector: IndicatorVector, discipline: str, table: ThresholdTable
) -> EvaluationResult:
    """Score one candidate against the table's requirements for a discipline.

    The vector must carry a value for every required kind; indicators the
    table does not require are left out of the result.
    """
    required = table.required_kinds(discipline)
    if not required:
        raise EvaluationError(f"table {table.label!r} has no entries for {discipline!r}")
    scores = []
    for kind in required:
        if kind not in vector.values:
            raise EvaluationError(
                f"vector for {vector.researcher_id!r} is missing required kind {kind.value}"
            )
        value = vector.values[kind]
        minimum = table.minimums[(discipline, kind)]
        scores.append(
            IndicatorScore(
                kind=kind,
                value=value,
                minimum=minimum,
                fulfilled=value >= minimum,
                score=value / minimum,
            )
        )
    return EvaluationResult(
        researcher_id=vector.researcher_id,
        discipline=discipline,
        method=vector.method.value,
        table_label=table.label,
        scores=tuple(scores),
        overall_fulfilled=all(s.fulfilled for s in scores),
    )


@dataclass(frozen=True)
class CellDiff:
    """Change of one threshold cell between two tables."""

    delta: float | None  # None when the cell exists in only one table
    added: bool = False
    removed: bool = False


def diff_tables(a: ThresholdTable, b: ThresholdTable) -> dict[tuple[str, IndicatorKind], CellDiff]:
    """Per-cell signed change ``b - a``; cells present in only one table are
    flagged added (only in b) or removed (only in a)."""
    diffs: dict[tuple[str, IndicatorKind], CellDiff] = {}
    for cell in sorted(set(a.minimums) | set(b.minimums), key=lambda c: (c[0], c[1].value)):
        in_a, in_b = cell in a.minimums, cell in b.minimums
        if in_a and in_b:
            diffs[cell] = CellDiff(delta=b.minimums[cell] - a.minimums[cell])
        elif in_b:
            diffs[cell] = CellDiff(delta=None, added=True)
        else:
            diffs[cell] = CellDiff(delta=None, removed=True)
    return diffs


# --------------------------------------------------------------------------
# File format: a `label,<text>` line, a column header, then one row per cell.

def _format_minimum(value: float) -> str:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return text or "0"


def save_threshold_table(table: ThresholdTable, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        handle.write(f"label,{table.label}\n")
        handle.write("discipline,kind,minimum\n")
        for (discipline, kind), minimum in table.minimums.items():
            handle.write(f"{discipline},{kind.value},{_format_minimum(minimum)}\n")


def load_threshold_table(path: str | Path) -> ThresholdTable:
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    if len(lines) < 2 or not lines[0].startswith("label,"):
        raise EvaluationError(f"{path}: expected a 'label,<text>' first line")
    label = lines[0].split(",", 1)[1]
    if lines[1] != "discipline,kind,minimum":
        raise EvaluationError(f"{path}: expected header discipline,kind,minimum")
    minimums: dict[tuple[str, IndicatorKind], float] = {}
    for i, line in enumerate(lines[2:], start=3):
        parts = line.split(",")
        if len(parts) != 3:
            raise EvaluationError(f"{path}:{i}: expected 3 cells")
        try:
            minimums[(parts[0], IndicatorKind(parts[1]))] = float(parts[2])
        except ValueError as exc:
            raise EvaluationError(f"{path}:{i}: {exc}") from exc
    return ThresholdTable(label=label, minimums=minimums)
