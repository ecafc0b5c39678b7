from __future__ import annotations

import json

import pytest

from recal.config import (
    ConfigError,
    default_config,
    load_pipeline_config,
    save_pipeline_config,
)
from recal.corpus import PubType, YearWindow
from recal.counting import CountingMethod, IndicatorKind


def test_default_config_round_trips_through_file(tmp_path):
    config = default_config()
    path = tmp_path / "config.json"
    save_pipeline_config(config, path)
    loaded = load_pipeline_config(path)
    assert loaded.disciplines == config.disciplines
    assert loaded.current_minimums == config.current_minimums
    assert loaded.pub_window == config.pub_window
    assert loaded.recalibration.t == config.recalibration.t
    assert loaded.recalibration.ym_decimals == 3


def test_partial_override_keeps_other_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps(
            {
                "schema_version": 1,
                "domestic_language": "en",
                "pub_window": [2000, 2004],
                "recalibration": {"top_fraction": 0.5, "ym_decimals": None},
            }
        ),
        encoding="utf-8",
    )
    config = load_pipeline_config(path)
    assert config.domestic_language == "en"
    assert config.pub_window == YearWindow(2000, 2004)
    assert config.citation_window == default_config().citation_window
    assert config.recalibration.top_fraction == 0.5
    assert config.recalibration.ym_decimals is None
    assert config.recalibration.ym_source_method is CountingMethod.INTEGER


def test_counted_publication_types(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps({"schema_version": 1, "counted_publication_types": ["journal_article", "book"]}),
        encoding="utf-8",
    )
    config = load_pipeline_config(path)
    assert config.counted_publication_types == frozenset({PubType.JOURNAL_ARTICLE, PubType.BOOK})
    settings = config.counting_settings()
    assert settings.counted_publication_types == config.counted_publication_types


def test_unknown_schema_version_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text('{"schema_version": 2}', encoding="utf-8")
    with pytest.raises(ConfigError):
        load_pipeline_config(path)


def test_bad_indicator_kind_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps(
            {
                "schema_version": 1,
                "disciplines": [{"key": "geology"}],
                "current_minimums": {"geology": {"nonsense": 3}},
            }
        ),
        encoding="utf-8",
    )
    with pytest.raises(ConfigError, match="nonsense"):
        load_pipeline_config(path)


def test_malformed_discipline_entry_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps({"schema_version": 1, "disciplines": [{"name": "No Key"}]}),
        encoding="utf-8",
    )
    with pytest.raises(ConfigError):
        load_pipeline_config(path)


def test_derived_cmv_excludes_core_and_unscalable_kinds():
    derived = default_config().derived_cmv()
    kinds = {kind for _, kind in derived}
    assert IndicatorKind.PUBLICATIONS not in kinds
    assert IndicatorKind.H_INDEX not in kinds
    assert IndicatorKind.WOS_INDEPENDENT_CITATIONS not in kinds
    assert IndicatorKind.FIRST_AUTHOR_PUBLICATIONS in kinds
    assert ("social_geography", IndicatorKind.BOOKS_AND_MONOGRAPHS) in derived
