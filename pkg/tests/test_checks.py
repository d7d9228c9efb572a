"""
Tests for the suite registry, check outcomes and report assembly.
"""

import json

import pytest

from qroots.checks import (
    BaseSuite,
    SuiteCollection,
    check,
    default_collection,
    passed,
    require,
    skipped,
    verdict,
)
from qroots.config import RunConfig
from qroots.errors import ConfigError, NotRegularError, UnknownSuiteError
from qroots.models.schemas import CheckStatus

SUITE_NAMES = [
    "hopf",
    "pbw",
    "braid",
    "pairing",
    "modules",
    "coordring",
    "omega",
    "local-formulas",
    "center",
    "poisson",
    "azumaya",
]


class ToySuite(BaseSuite):
    name = "toy"
    description = "Outcomes of every kind"
    types = ("A1",)

    @check("passes")
    def passes(self, ctx):
        return passed(rank=ctx.datum.rank, root=ctx.datum.alpha(0))

    @check("fails")
    def fails(self, ctx):
        return verdict(False, "plain failure")

    @check("requires")
    def requires(self, ctx):
        require(ctx.cfg.ell == 5, "ell is not 5", ell=ctx.cfg.ell)
        return passed()

    @check("raises")
    def raises(self, ctx):
        raise NotRegularError("pole at ζ′")

    @check("skips")
    def skips(self, ctx):
        return skipped("not applicable")


@pytest.fixture
def toy():
    return SuiteCollection(ToySuite())


def test_registry_order():
    collection = default_collection()
    assert list(collection.suite_map) == SUITE_NAMES
    assert [p["name"] for p in collection.to_params()] == SUITE_NAMES
    assert "defining-relations" in collection.get("hopf").check_names


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError, match="registered suites"):
        default_collection().get("nope")


def test_outcomes(toy, cfg3):
    report = toy.run("toy", cfg3)
    statuses = {c.name: c.status for c in report.checks}
    assert statuses == {
        "passes": CheckStatus.PASS,
        "fails": CheckStatus.FAIL,
        "requires": CheckStatus.FAIL,
        "raises": CheckStatus.FAIL,
        "skips": CheckStatus.SKIPPED,
    }
    assert not report.passed
    by_name = {c.name: c for c in report.checks}
    assert by_name["passes"].witness == {"rank": 1, "root": [2]}
    assert by_name["requires"].witness == {"ell": 3}
    assert by_name["raises"].witness == {"error": "NotRegularError"}
    assert report.root_datum.w0_word == [1]


def test_only_selected_checks(toy, cfg3):
    report = toy.run("toy", cfg3, only=["passes", "skips"])
    assert [c.name for c in report.checks] == ["passes", "skips"]
    assert report.passed
    with pytest.raises(UnknownSuiteError):
        toy.run("toy", cfg3, only=["missing"])


def test_type_outside_the_suite(toy):
    with pytest.raises(ConfigError):
        toy.run("toy", RunConfig(type="A2", ell=5))
    with pytest.raises(ConfigError):
        default_collection().run("local-formulas", RunConfig(type="A2", ell=5))


def test_non_reduced_word_is_a_config_error(toy):
    with pytest.raises(ConfigError):
        toy.run("toy", RunConfig(type="A1", ell=3, w0_word=[1, 1]))


def test_hopf_suite_passes(cfg3):
    collection = default_collection()
    first = collection.run("hopf", cfg3)
    assert first.passed, first.to_json()
    assert all(c.status is CheckStatus.PASS for c in first.checks)
    second = collection.run("hopf", cfg3)
    assert first.canonical_json() == second.canonical_json()
    data = json.loads(first.to_json())
    assert data["passed"] is True
    assert data["suite"] == "hopf"
    assert "wall_time_s" not in json.loads(first.canonical_json())


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["pairing", "modules", "braid", "center", "poisson", "azumaya"])
def test_suites_pass_for_a1(cfg3, suite):
    report = default_collection().run(suite, cfg3)
    assert report.passed, report.to_json()


@pytest.mark.slow
def test_open_cell_fibers_are_built(cfg3):
    report = default_collection().run("azumaya", cfg3, only=["fiber-matrix"])
    (record,) = report.checks
    assert record.status is CheckStatus.PASS, report.to_json()
    assert len(record.witness["open_cell"]) == 2
    assert all("skipped" not in witness for witness in record.witness["open_cell"])
