"""Command-line entry point.

Subcommands: validate, stats, recalibrate, derive, evaluate, synth. Exit
codes: 0 success, 1 validation or domain failure, 2 I/O failure. Output files
are byte-identical across runs for identical inputs: fixed orderings, fixed
decimal widths, no timestamps.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .config import ConfigError, PipelineConfig, default_config, load_pipeline_config
from .corpus import Corpus, CorpusError, corpus_stats, load_corpus, save_corpus, scan_corpus
from .counting import CountingError, CountingMethod, IndicatorKind, indicator_matrix
from .evaluation import (
    EvaluationError,
    ThresholdTable,
    diff_tables,
    evaluate_candidate,
    load_threshold_table,
    save_threshold_table,
)
from .recalibration import (
    DEFAULT_BASE_KINDS,
    DisciplinePerformance,
    RecalibrationError,
    RecalibrationRow,
    derived_scaled_minimums,
    discipline_performance,
    performance_as_table,
    read_apv_table,
    recalibrate_all,
    write_recalibration_rows,
)
from .synthgen import SynthError, default_spec, generate_corpus, load_synth_spec

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

OUTPUT_FORMAT_CHOICES = ("dsv", "jsonl")


def _load_config(path: str | None) -> PipelineConfig:
    return load_pipeline_config(path) if path else default_config()


def _write_table(
    path: Path, fmt: str, header: Sequence[str], rows: Sequence[Sequence[str]]
) -> None:
    """Write a small report either as DSV or as line-delimited JSON objects."""
    with path.open("w", encoding="utf-8") as handle:
        if fmt == "jsonl":
            for row in rows:
                handle.write(json.dumps(dict(zip(header, row))) + "\n")
        else:
            handle.write(",".join(header) + "\n")
            for row in rows:
                handle.write(",".join(row) + "\n")


def _table_suffix(fmt: str) -> str:
    return ".jsonl" if fmt == "jsonl" else ".csv"


def _pick_format(args: argparse.Namespace, config: PipelineConfig) -> str:
    if getattr(args, "format", None):
        return args.format
    return config.output_formats[0] if config.output_formats else "dsv"


def _corpus_from_args(args: argparse.Namespace, config: PipelineConfig) -> Corpus:
    return load_corpus(args.researchers, args.publications, args.citations, config.disciplines)


def _add_corpus_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("researchers", nargs=None if required else "?", help="researcher file")
    parser.add_argument("publications", nargs=None if required else "?", help="publication file")
    parser.add_argument("citations", nargs=None if required else "?", help="citation file")


# --------------------------------------------------------------------------
# Subcommands

def _cmd_validate(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    corpus, violations = scan_corpus(
        args.researchers, args.publications, args.citations, config.disciplines
    )
    for violation in violations:
        print(violation)
    if corpus is None:
        print(f"invalid: {len(violations)} violation(s)")
        return EXIT_VALIDATION
    print(
        f"ok: {len(corpus.researchers)} researchers, "
        f"{len(corpus.publications)} publications, {len(corpus.citations)} citations"
    )
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    corpus = _corpus_from_args(args, config)
    stats = corpus_stats(corpus, config.pub_window, list(config.disciplines))
    header = (
        "discipline",
        "pub_count",
        "multi_authored_count",
        "multi_ratio",
        "coauthor_total",
        "avg_coauthors_per_multi",
    )
    rows = []
    for row in stats.per_discipline.values():
        avg = row.avg_coauthors_per_multi
        rows.append(
            (
                row.discipline,
                str(row.pub_count),
                str(row.multi_authored_count),
                f"{row.multi_ratio:.2f}",
                str(row.coauthor_total),
                "" if avg is None else f"{avg:.2f}",
            )
        )
    fmt = _pick_format(args, config)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_table(out_dir / f"coauthorship_stats{_table_suffix(fmt)}", fmt, header, rows)
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(row))
    return EXIT_OK


def _recalibration_rows(
    args: argparse.Namespace, config: PipelineConfig
) -> tuple[list[RecalibrationRow], list[DisciplinePerformance] | None]:
    """Rows plus, in corpus mode, the computed per-discipline performance."""
    corpus_given = args.researchers is not None
    if bool(args.apv_table) == corpus_given:
        raise ConfigError("provide exactly one input: the three corpus files or --apv-table")
    if args.apv_table:
        return recalibrate_all(read_apv_table(args.apv_table), config.recalibration), None
    if args.publications is None or args.citations is None:
        raise ConfigError("corpus mode needs all three files: researchers publications citations")
    corpus = _corpus_from_args(args, config)
    performance = discipline_performance(
        corpus,
        config.recalibration,
        pub_window=config.pub_window,
        citation_window=config.citation_window,
        settings=config.counting_settings(),
    )
    return recalibrate_all(performance_as_table(performance), config.recalibration), performance


def _write_figure_data(
    rows: Sequence[RecalibrationRow], out_dir: Path, fmt: str, disciplines: Sequence[str]
) -> None:
    """One plottable file per kind: current share vs actual shares per method."""
    by_cell = {(r.kind, r.method, r.discipline): r for r in rows}
    kinds = sorted({r.kind for r in rows}, key=lambda k: k.value)
    for kind in kinds:
        header = ("discipline", "dsdr_current", "dsdr_actual_integer", "dsdr_actual_fractional")
        table = []
        for discipline in disciplines:
            integer = by_cell[(kind, CountingMethod.INTEGER, discipline)]
            fractional = by_cell[(kind, CountingMethod.FRACTIONAL, discipline)]
            table.append(
                (
                    discipline,
                    f"{integer.dsdr_current:.6f}",
                    f"{integer.dsdr_actual:.6f}",
                    f"{fractional.dsdr_actual:.6f}",
                )
            )
        _write_table(out_dir / f"dsdr_{kind.value}{_table_suffix(fmt)}", fmt, header, table)


def _cmd_recalibrate(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    rows, performance = _recalibration_rows(args, config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = _pick_format(args, config)
    if performance is not None:
        # corpus mode: keep the computed APVs reusable as an --apv-table input,
        # at full float precision so a replay reproduces the rows bit for bit
        _write_table(
            out_dir / f"performance{_table_suffix(fmt)}",
            fmt,
            ("discipline", "kind", "method", "apv", "population", "selected"),
            [
                (p.discipline, p.kind.value, p.method.value, repr(p.apv),
                 str(p.population), str(p.selected))
                for p in performance
            ],
        )
    if fmt == "jsonl":
        with (out_dir / "recalibration.jsonl").open("w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(
                    json.dumps(
                        {
                            "discipline": row.discipline,
                            "kind": row.kind.value,
                            "method": row.method.value,
                            "cmv": row.cmv,
                            "apv": row.apv,
                            "y_i": round(row.y_i, 3),
                            "y_m": round(row.y_m, 3),
                            "r_y": round(row.r_y, 6),
                            "dsdr_current": round(row.dsdr_current, 6),
                            "dsdr_actual": round(row.dsdr_actual, 6),
                            "rmv_raw": round(row.rmv_raw, 3),
                            "rmv_rounded": row.rmv_rounded,
                        }
                    )
                    + "\n"
                )
    else:
        write_recalibration_rows(rows, out_dir / "recalibration.csv")
    _write_figure_data(rows, out_dir, fmt, list(config.recalibration.disciplines))
    print(f"wrote {len(rows)} recalibration rows to {out_dir}")
    return EXIT_OK


def _cmd_derive(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    method = CountingMethod(args.method)
    rows, _ = _recalibration_rows(args, config)
    derived = derived_scaled_minimums(
        rows, config.derived_cmv(), method=method, rounding=config.recalibration.rounding
    )

    minimums: dict[tuple[str, IndicatorKind], float] = {}
    for row in rows:
        if row.method is method and row.rmv_rounded is not None:
            minimums[(row.discipline, row.kind)] = float(row.rmv_rounded)
        elif row.method is method:
            minimums[(row.discipline, row.kind)] = row.rmv_raw
    for cell, (raw, rounded) in derived.items():
        minimums[cell] = float(rounded) if rounded is not None else raw
    table = ThresholdTable(label=f"recalibrated minimums ({method.value})", minimums=minimums)

    current = config.current_threshold_table()
    deltas = diff_tables(current, table)
    non_derivable = sorted(
        {
            kind.value
            for (_, kind) in config.current_minimums
            if kind not in DEFAULT_BASE_KINDS
            and kind not in config.recalibration.kinds
        }
    )

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = _pick_format(args, config)
    save_threshold_table(table, out_dir / "thresholds_recalibrated.csv")

    header = ("discipline", "kind", "status", "raw", "minimum", "delta_vs_current")
    report = []
    for (discipline, kind) in sorted(minimums, key=lambda c: (c[0], c[1].value)):
        raw = derived.get((discipline, kind), (None, None))[0]
        delta = deltas.get((discipline, kind))
        delta_text = ""
        if delta is not None and delta.delta is not None:
            delta_text = f"{delta.delta:+.0f}"
        elif delta is not None and delta.added:
            delta_text = "newly introduced"
        report.append(
            (
                discipline,
                kind.value,
                "derived" if (discipline, kind) in derived else "recalibrated",
                "" if raw is None else f"{raw:.3f}",
                f"{minimums[(discipline, kind)]:g}",
                delta_text,
            )
        )
    for kind_name in non_derivable:
        report.append(("*", kind_name, "non_derivable", "", "", ""))
    _write_table(out_dir / f"derive_report{_table_suffix(fmt)}", fmt, header, report)

    if non_derivable:
        print(f"not derivable from these inputs: {', '.join(non_derivable)}")
    print(f"wrote {len(minimums)} threshold cells to {out_dir}")
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    corpus = _corpus_from_args(args, config)
    table = (
        load_threshold_table(args.thresholds)
        if args.thresholds
        else config.current_threshold_table()
    )
    method = CountingMethod(args.method)
    profile = corpus.researcher(args.researcher)
    kinds = table.required_kinds(profile.discipline)
    vectors = indicator_matrix(
        corpus,
        kinds,
        [method],
        config.pub_window,
        config.citation_window,
        config.counting_settings(),
    )
    vector = next(v for v in vectors if v.researcher_id == args.researcher)
    result = evaluate_candidate(vector, profile.discipline, table)
    document = json.dumps(result.to_dict(), indent=2)
    print(document)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"evaluation_{args.researcher}.json").write_text(
            document + "\n", encoding="utf-8"
        )
    return EXIT_OK if result.overall_fulfilled else EXIT_VALIDATION


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = load_synth_spec(args.spec) if args.spec else default_spec()
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    corpus = generate_corpus(spec)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = args.format or "dsv"
    suffix = ".jsonl" if fmt == "jsonl" else ".csv"
    save_corpus(
        corpus,
        out_dir / f"researchers{suffix}",
        out_dir / f"publications{suffix}",
        out_dir / f"citations{suffix}",
        fmt=fmt,
    )
    print(
        f"seed {spec.seed}: wrote {len(corpus.researchers)} researchers, "
        f"{len(corpus.publications)} publications, {len(corpus.citations)} citations to {out_dir}"
    )
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recal",
        description="Recalibrate discipline-specific minimum bibliometric requirements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the three corpus files, list every violation")
    _add_corpus_arguments(p)
    p.add_argument("--config", help="pipeline config JSON")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("stats", help="per-discipline co-authorship statistics")
    _add_corpus_arguments(p)
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--out-dir", help="write the table here instead of stdout")
    p.add_argument("--format", choices=OUTPUT_FORMAT_CHOICES, help="table format")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("recalibrate", help="full recalibration table plus DSDR figure data")
    _add_corpus_arguments(p, required=False)
    p.add_argument("--apv-table", help="precomputed discipline,kind,method,apv table")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", choices=OUTPUT_FORMAT_CHOICES)
    p.set_defaults(func=_cmd_recalibrate)

    p = sub.add_parser("derive", help="recalibrated threshold table incl. proportionally scaled kinds")
    _add_corpus_arguments(p, required=False)
    p.add_argument("--apv-table", help="precomputed discipline,kind,method,apv table")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--method", default="integer", choices=[m.value for m in CountingMethod])
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", choices=OUTPUT_FORMAT_CHOICES)
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("evaluate", help="score one researcher against a threshold table")
    _add_corpus_arguments(p)
    p.add_argument("--researcher", required=True, help="researcher id to evaluate")
    p.add_argument("--thresholds", help="threshold table file (default: current minimums)")
    p.add_argument("--method", default="integer", choices=[m.value for m in CountingMethod])
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--out-dir", help="also write the result document here")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("--spec", help="generator spec JSON (default: shipped section profile)")
    p.add_argument("--seed", type=int, help="override the spec seed")
    p.add_argument("--format", choices=OUTPUT_FORMAT_CHOICES)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (
        ConfigError,
        CorpusError,
        CountingError,
        EvaluationError,
        RecalibrationError,
        SynthError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
