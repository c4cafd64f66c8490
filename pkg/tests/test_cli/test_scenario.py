from pathlib import Path
from typing import Any

import pytest

from pysatl_sweep.cli import (
    CrowdScenario,
    SkorohodScenario,
    apply_overrides,
    load_scenario,
    parse_override,
    parse_scenario,
)
from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.geometry import Halfspace
from tests.utils import write_scenario


class TestParseScenario:
    def test_skorohod(self, halfline_scenario: dict[str, Any]) -> None:
        scenario = parse_scenario(halfline_scenario)

        assert isinstance(scenario, SkorohodScenario)
        assert scenario.grid.step == 0.01
        assert scenario.tolerances.tube_factor == 0.9
        assert isinstance(scenario.moving_set.build(scenario.tolerances.build()), Halfspace)
        assert len(scenario.driver.build(scenario.grid.build()).grid) == 101

    def test_crowd(self, crowd_headon_scenario: dict[str, Any]) -> None:
        scenario = parse_scenario(crowd_headon_scenario)

        assert isinstance(scenario, CrowdScenario)
        config = scenario.build()
        assert config.n_disks == 2

    def test_unknown_key(self, halfline_scenario: dict[str, Any]) -> None:
        with pytest.raises(ConfigurationError, match="Invalid scenario"):
            parse_scenario({**halfline_scenario, "stepsize": 0.1})

    def test_unknown_nested_key(self, halfline_scenario: dict[str, Any]) -> None:
        halfline_scenario["grid"]["dt"] = 0.1
        with pytest.raises(ConfigurationError):
            parse_scenario(halfline_scenario)

    @pytest.mark.parametrize(
        "patch",
        [
            {"schema_version": 2},
            {"kind": "brownian"},
            {"grid": {"horizon": 1.0, "step": -0.1}},
            {"moving_set": {"kind": "ball_exterior", "center": [0.0], "radius": 0.0}},
        ],
    )
    def test_invalid_documents(self, halfline_scenario: dict[str, Any], patch: dict[str, Any]) -> None:
        with pytest.raises(ConfigurationError):
            parse_scenario({**halfline_scenario, **patch})

    def test_disk_index_out_of_range(self) -> None:
        document = {
            "kind": "geometry-check",
            "moving_set": {
                "kind": "constraint_set",
                "constraints": [
                    {"name": "disk_contact", "i": 0, "j": 2, "radius_i": 0.5, "radius_j": 0.5, "n_disks": 2}
                ],
                "alpha": 1.0,
                "beta": 1.0,
            },
            "window": {"lower": [-1.0] * 4, "upper": [1.0] * 4},
        }
        with pytest.raises(ConfigurationError, match="out of range"):
            parse_scenario(document)

    def test_overrides_see_defaults(self, halfline_scenario: dict[str, Any]) -> None:
        scenario = parse_scenario(halfline_scenario, ["grid.step=0.02", "tolerances.tube_factor=0.5"])

        assert scenario.grid.step == 0.02
        assert scenario.tolerances.tube_factor == 0.5
        assert halfline_scenario["grid"]["step"] == 0.01

    def test_override_is_validated(self, halfline_scenario: dict[str, Any]) -> None:
        with pytest.raises(ConfigurationError):
            parse_scenario(halfline_scenario, ["grid.step=-1"])

    def test_override_of_missing_key(self, halfline_scenario: dict[str, Any]) -> None:
        with pytest.raises(ConfigurationError, match="Unknown override key 'seed'"):
            parse_scenario(halfline_scenario, ["seed=3"])


class TestLoadScenario:
    def test_round_trip(self, tmp_path: Path, halfline_scenario: dict[str, Any]) -> None:
        path = write_scenario(tmp_path / "halfline.json", halfline_scenario)

        assert load_scenario(path) == parse_scenario(halfline_scenario)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigurationError, match="Cannot read scenario"):
            load_scenario(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{kind: skorohod", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="not valid JSON"):
            load_scenario(path)


class TestOverrides:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("grid.step=0.01", (["grid", "step"], 0.01)),
            ("moving_set.kind=halfspace", (["moving_set", "kind"], "halfspace")),
            ("u0=[1.0, 2.0]", (["u0"], [1.0, 2.0])),
            ("claimed_eta=null", (["claimed_eta"], None)),
        ],
    )
    def test_parse(self, text: str, expected: tuple[list[str], Any]) -> None:
        assert parse_override(text) == expected

    @pytest.mark.parametrize("text", ["grid.step", "=1", "grid..step=1", "grid.=1"])
    def test_parse_malformed(self, text: str) -> None:
        with pytest.raises(ConfigurationError):
            parse_override(text)

    def test_apply_in_order(self) -> None:
        document = {"grid": {"step": 0.1}, "u0": [0.0, 0.0]}

        result = apply_overrides(document, ["grid.step=0.05", "u0.1=2.5", "grid.step=0.01"])

        assert result == {"grid": {"step": 0.01}, "u0": [0.0, 2.5]}

    @pytest.mark.parametrize(
        "override, message",
        [
            ("grid.dt=0.1", "Unknown override key"),
            ("u0.x=1", "indexes a list"),
            ("u0.5=1", "out of range"),
            ("grid.step.value=1", "below a scalar"),
        ],
    )
    def test_apply_bad_paths(self, override: str, message: str) -> None:
        with pytest.raises(ConfigurationError, match=message):
            apply_overrides({"grid": {"step": 0.1}, "u0": [0.0]}, [override])
