"""Run configuration: flat INI files (key = value under sections) plus overrides.

Defaults mirror the reference workflow: target Opportunities, 20% test
split, correlation threshold 0.3, SVR with c=1/epsilon=0.1/rbf, a
100-tree bootstrap forest, and the symmetric Low/Medium/High partition.
Command-line flags always win over file values.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from careerwheel.fuzzy import (
    TERM_ALIASES,
    FuzzyPartition,
    PartitionError,
    Triangle,
    default_partition,
)
from careerwheel.models import ForestParams, LinearParams, ModelParams, SvrParams

DEFAULT_THRESHOLD = 0.3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    dataset_path: str | None = None
    target_label: str = "Opportunities"
    feature_labels: tuple[str, ...] | None = None
    correlation_threshold: float | None = DEFAULT_THRESHOLD
    test_fraction: float = 0.2
    seed: int = 42
    params: ModelParams = field(default_factory=ModelParams)
    partition: FuzzyPartition = field(default_factory=default_partition)
    ruspini_check: bool = True
    positive_class: str = "High"
    model_out: str | None = None
    report_out: str | None = None

    def __post_init__(self):
        explicit = self.feature_labels is not None
        threshold = self.correlation_threshold is not None
        if explicit == threshold:
            raise ConfigError(
                "exactly one of feature_labels / correlation_threshold must be set"
            )
        if not (0.0 < self.test_fraction < 1.0):
            raise ConfigError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        if self.ruspini_check and not self.partition.is_ruspini():
            raise ConfigError(
                "partition memberships do not sum to 1 over the domain "
                "(disable ruspini_check to allow non-Ruspini partitions)"
            )
        if self.positive_class not in self.partition.labels():
            raise ConfigError(
                f"positive_class {self.positive_class!r} is not a partition term"
            )


def _parse_floats(text: str, expect: int | None = None) -> list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None
    if expect is not None and len(values) != expect:
        raise ConfigError(f"expected {expect} numbers, got {text!r}")
    return values


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def parse_partition(section: dict[str, str]) -> tuple[FuzzyPartition, bool]:
    """Build a partition from a [fuzzy] section.

    Expected keys: `domain = lo, hi`, optional `ruspini = true|false`, and
    ordered `term.<Label> = a, b, c` entries from least to most ready.
    "Poor" is accepted as an alias of the canonical "Low" label.
    """
    domain = (1.0, 10.0)
    ruspini = True
    terms: list[tuple[str, Triangle]] = []
    for key, raw in section.items():
        if key == "domain":
            lo, hi = _parse_floats(raw, expect=2)
            domain = (lo, hi)
        elif key == "ruspini":
            ruspini = _parse_bool(raw)
        elif key.startswith("term."):
            label = TERM_ALIASES.get(key[5:], key[5:])
            a, b, c = _parse_floats(raw, expect=3)
            try:
                terms.append((label, Triangle(a, b, c)))
            except PartitionError as exc:
                raise ConfigError(f"term {label!r}: {exc}") from None
        else:
            raise ConfigError(f"unknown [fuzzy] key {key!r}")
    if not terms:
        raise ConfigError("[fuzzy] section defines no term.<Label> entries")
    try:
        partition = FuzzyPartition(
            variable_name="Career Readiness", terms=tuple(terms), domain=domain
        )
    except PartitionError as exc:
        raise ConfigError(f"invalid partition: {exc}") from None
    return partition, ruspini


def load_partition_file(path: str) -> tuple[FuzzyPartition, bool]:
    parser = _read_ini(path)
    if not parser.has_section("fuzzy"):
        raise ConfigError(f"{path}: no [fuzzy] section")
    return parse_partition(dict(parser.items("fuzzy")))


def _read_ini(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep term labels case-sensitive
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    return parser


def _get(parser: configparser.ConfigParser, section: str, key: str) -> str | None:
    if parser.has_section(section) and parser.has_option(section, key):
        value = parser.get(section, key).strip()
        return value if value else None
    return None


def load_run_config(path: str | None = None, **overrides) -> RunConfig:
    """Read an INI run config (all sections optional) and apply overrides.

    Override keys mirror RunConfig field names; `partition_path` loads a
    separate partition file on top of everything else.
    """
    values: dict = {}
    if path is not None:
        parser = _read_ini(path)
        for section in parser.sections():
            if section not in (
                "data",
                "features",
                "split",
                "linear",
                "svr",
                "forest",
                "evaluation",
                "fuzzy",
                "output",
            ):
                raise ConfigError(f"unknown config section [{section}]")
        if (raw := _get(parser, "data", "path")) is not None:
            values["dataset_path"] = raw
        if (raw := _get(parser, "data", "target")) is not None:
            values["target_label"] = raw
        if (raw := _get(parser, "features", "labels")) is not None:
            values["feature_labels"] = tuple(
                p.strip() for p in raw.split(",") if p.strip()
            )
        if (raw := _get(parser, "features", "threshold")) is not None:
            values["correlation_threshold"] = float(raw)
        if (raw := _get(parser, "split", "test_fraction")) is not None:
            values["test_fraction"] = float(raw)
        if (raw := _get(parser, "split", "seed")) is not None:
            values["seed"] = int(raw)
        if (raw := _get(parser, "evaluation", "positive_class")) is not None:
            values["positive_class"] = raw
        if (raw := _get(parser, "output", "model_path")) is not None:
            values["model_out"] = raw
        if (raw := _get(parser, "output", "report_path")) is not None:
            values["report_out"] = raw

        linear = LinearParams(
            ridge_lambda=float(_get(parser, "linear", "ridge_lambda") or 0.0)
        )
        svr_kwargs = {}
        if (raw := _get(parser, "svr", "c")) is not None:
            svr_kwargs["c"] = float(raw)
        if (raw := _get(parser, "svr", "epsilon")) is not None:
            svr_kwargs["epsilon"] = float(raw)
        if (raw := _get(parser, "svr", "kernel")) is not None:
            svr_kwargs["kernel"] = raw
        if (raw := _get(parser, "svr", "gamma")) is not None:
            svr_kwargs["gamma"] = raw if raw == "scale" else float(raw)
        forest_kwargs = {}
        if (raw := _get(parser, "forest", "n_trees")) is not None:
            forest_kwargs["n_trees"] = int(raw)
        if (raw := _get(parser, "forest", "max_depth")) is not None:
            forest_kwargs["max_depth"] = int(raw)
        if (raw := _get(parser, "forest", "min_samples_split")) is not None:
            forest_kwargs["min_samples_split"] = int(raw)
        if (raw := _get(parser, "forest", "bootstrap")) is not None:
            forest_kwargs["bootstrap"] = _parse_bool(raw)
        if (raw := _get(parser, "forest", "max_features")) is not None:
            forest_kwargs["max_features"] = int(raw)
        try:
            values["params"] = ModelParams(
                linear=linear, svr=SvrParams(**svr_kwargs), forest=ForestParams(**forest_kwargs)
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

        if parser.has_section("fuzzy"):
            partition, ruspini = parse_partition(dict(parser.items("fuzzy")))
            values["partition"] = partition
            values["ruspini_check"] = ruspini

    if (partition_path := overrides.pop("partition_path", None)) is not None:
        partition, ruspini = load_partition_file(partition_path)
        values["partition"] = partition
        values["ruspini_check"] = ruspini

    # Exactly one feature mode may be active; an override of either mode
    # displaces whatever the file configured for the other.
    feat_override = overrides.pop("feature_labels", None)
    thr_override = overrides.pop("correlation_threshold", None)
    if feat_override is not None and thr_override is not None:
        raise ConfigError("supply either a feature list or a threshold, not both")
    if feat_override is not None:
        values["feature_labels"] = tuple(feat_override)
        values["correlation_threshold"] = None
    elif thr_override is not None:
        values["correlation_threshold"] = float(thr_override)
        values["feature_labels"] = None

    for key, value in overrides.items():
        if value is not None:
            values[key] = value

    if values.get("feature_labels") is not None:
        if values.get("correlation_threshold") is not None:
            raise ConfigError("config sets both feature labels and a threshold")
        values["correlation_threshold"] = None
    return RunConfig(**values)
