"""Survey schema, CSV ingestion, train/test splitting, synthetic cohorts.

The Balance-Wheel questionnaire scores each life sector on a 1-10 scale.
A cohort is a plain CSV: one header row with the field labels, one row per
respondent.  Identity fields (name, phone) are parsed and dropped; they
never reach the numeric matrix.  GPA is the one optional column: empty
cells are kept as NaN and excluded from modeling unless explicitly chosen.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np


class DataError(Exception):
    """Base class for cohort validation failures."""


class EmptyFile(DataError):
    pass


class MissingColumn(DataError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"MissingColumn: {label}")


class NotNumeric(DataError):
    """Cell cannot be read as a number.  `row` is 1-based over data rows."""

    def __init__(self, row: int, label: str, raw: str):
        self.row = row
        self.label = label
        self.raw = raw
        super().__init__(f"NotNumeric: row {row}, column {label!r}: {raw!r}")


class OutOfRange(DataError):
    """Cell violates its field's value set.  `row` is 1-based over data rows."""

    def __init__(self, row: int, label: str, value: float):
        self.row = row
        self.label = label
        self.value = value
        super().__init__(f"OutOfRange: row {row}, column {label!r}: {value!r}")


class DegenerateSplit(DataError):
    pass


class FieldKind(enum.Enum):
    ORDINAL_SCALE = "ordinal_scale"
    CONTINUOUS = "continuous"
    IDENTITY = "identity"


@dataclass(frozen=True)
class FieldSpec:
    label: str
    wheel_section: str
    scale_min: float = 1
    scale_max: float = 10
    kind: FieldKind = FieldKind.ORDINAL_SCALE
    required: bool = True

    def __post_init__(self):
        if self.scale_min >= self.scale_max:
            raise ValueError(f"field {self.label!r}: scale_min must be < scale_max")

    def accepts(self, value: float) -> bool:
        """Value-set check: ordinals take integers in range, continuous any decimal in range."""
        if not (self.scale_min <= value <= self.scale_max):
            return False
        if self.kind is FieldKind.ORDINAL_SCALE and not float(value).is_integer():
            return False
        return True


@dataclass(frozen=True)
class SurveySchema:
    fields: tuple[FieldSpec, ...]
    target_label: str

    def __post_init__(self):
        labels = [f.label for f in self.fields]
        if len(set(labels)) != len(labels):
            raise ValueError("field labels must be unique")
        if self.target_label not in labels:
            raise ValueError(f"target {self.target_label!r} is not a schema field")

    @property
    def data_fields(self) -> tuple[FieldSpec, ...]:
        """Fields that enter the numeric matrix (identity fields excluded)."""
        return tuple(f for f in self.fields if f.kind is not FieldKind.IDENTITY)

    def field(self, label: str) -> FieldSpec:
        for f in self.fields:
            if f.label == label:
                return f
        raise MissingColumn(label)


# Wheel sections follow the questionnaire layout: two identity rows, then
# fourteen 1-10 scales, plus the optional GPA transcript column.
_WHEEL_FIELDS = (
    ("Name", "General", FieldKind.IDENTITY),
    ("PhoneNumber", "General", FieldKind.IDENTITY),
    ("LearningRate", "Career", FieldKind.ORDINAL_SCALE),
    ("WorkingExp", "Career", FieldKind.ORDINAL_SCALE),
    ("SalaryExp", "Money", FieldKind.ORDINAL_SCALE),
    ("FamilyTime", "Family", FieldKind.ORDINAL_SCALE),
    ("CommunicationRate", "Fun", FieldKind.ORDINAL_SCALE),
    ("HobbyTimeRate", "Fun", FieldKind.ORDINAL_SCALE),
    ("CommunityRate", "Friends", FieldKind.ORDINAL_SCALE),
    ("PhysicalFormRate", "Health", FieldKind.ORDINAL_SCALE),
    ("WantToUpPhysicalForm", "Health", FieldKind.ORDINAL_SCALE),
    ("NutritionRate", "Health", FieldKind.ORDINAL_SCALE),
    ("ConflictSituations", "Love / Career / Friends / Family", FieldKind.ORDINAL_SCALE),
    ("ComfortZone", "Spirituality", FieldKind.ORDINAL_SCALE),
    ("Opportunities", "All aspects", FieldKind.ORDINAL_SCALE),
    ("ChangeLife", "All aspects", FieldKind.ORDINAL_SCALE),
)

WHEEL_SCALE_LABELS = tuple(
    label for label, _, kind in _WHEEL_FIELDS if kind is FieldKind.ORDINAL_SCALE
)


def default_schema() -> SurveySchema:
    """The Balance-Wheel questionnaire: 14 ordinal scales, optional GPA, target Opportunities."""
    fields = [
        FieldSpec(label, section, 1, 10, kind, required=kind is FieldKind.ORDINAL_SCALE)
        for label, section, kind in _WHEEL_FIELDS
    ]
    fields.append(
        FieldSpec("GPA", "General", 0.0, 4.0, FieldKind.CONTINUOUS, required=False)
    )
    return SurveySchema(fields=tuple(fields), target_label="Opportunities")


def synthetic_schema(n_features: int, target_label: str = "Target") -> SurveySchema:
    """Generic continuous schema on the 1-10 scale for synthetic cohorts."""
    fields = tuple(
        FieldSpec(f"X{i + 1}", "Synthetic", 1, 10, FieldKind.CONTINUOUS)
        for i in range(n_features)
    ) + (FieldSpec(target_label, "Synthetic", 1, 10, FieldKind.CONTINUOUS),)
    return SurveySchema(fields=fields, target_label=target_label)


def schema_for_header(header: list[str]) -> SurveySchema:
    """Pick a schema matching a CSV header.

    Headers carrying all fourteen wheel scales get the Balance-Wheel schema;
    anything else is treated as a synthetic-style cohort of continuous 1-10
    columns with the last column as target.
    """
    if all(label in header for label in WHEEL_SCALE_LABELS):
        return default_schema()
    if len(header) < 2:
        raise EmptyFile("header must name at least two columns")
    fields = tuple(
        FieldSpec(label, "Synthetic", 1, 10, FieldKind.CONTINUOUS) for label in header
    )
    return SurveySchema(fields=fields, target_label=header[-1])


@dataclass(frozen=True)
class SurveyResponse:
    """One respondent's answers, keyed by field label."""

    scores: dict[str, float]
    gpa: float | None = None

    def __post_init__(self):
        if self.gpa is not None and not (0.0 <= self.gpa <= 4.0):
            raise OutOfRange(1, "GPA", self.gpa)


def validate_response(schema: SurveySchema, response: SurveyResponse) -> None:
    """Check a full survey response: every required field present and in range."""
    for f in schema.data_fields:
        if not f.required:
            continue
        if f.label not in response.scores:
            raise MissingColumn(f.label)
        value = response.scores[f.label]
        if not f.accepts(value):
            raise OutOfRange(1, f.label, value)


@dataclass(frozen=True)
class Dataset:
    """Validated numeric cohort: rows x columns, one designated target column.

    Optional columns (GPA) may hold NaN for missing cells; required columns
    never do.  The matrix is locked read-only after construction.
    """

    schema: SurveySchema
    rows: np.ndarray
    column_labels: tuple[str, ...]
    target_index: int

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        object.__setattr__(self, "rows", rows)
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 2:
            raise DataError("dataset must be a matrix with n >= 1 rows and m >= 2 columns")
        if len(self.column_labels) != rows.shape[1]:
            raise DataError("column_labels length must match the matrix width")
        if not (0 <= self.target_index < rows.shape[1]):
            raise DataError("target_index out of bounds")
        rows.flags.writeable = False

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def m(self) -> int:
        return self.rows.shape[1]

    @property
    def target_label(self) -> str:
        return self.column_labels[self.target_index]

    def column(self, label: str) -> np.ndarray:
        return self.rows[:, self.column_index(label)]

    def column_index(self, label: str) -> int:
        try:
            return self.column_labels.index(label)
        except ValueError:
            raise MissingColumn(label) from None

    def with_target(self, label: str) -> "Dataset":
        return Dataset(self.schema, self.rows, self.column_labels, self.column_index(label))

    def design(self, feature_labels: list[str] | tuple[str, ...]) -> tuple[np.ndarray, np.ndarray]:
        """Feature matrix and target vector for modeling, in the given feature order."""
        idx = [self.column_index(label) for label in feature_labels]
        X = self.rows[:, idx]
        y = self.rows[:, self.target_index]
        bad = np.isnan(X).any(axis=0)
        if bad.any():
            raise DataError(
                "selected features contain missing cells: "
                + ", ".join(np.asarray(feature_labels)[bad])
            )
        return X, y


def parse_csv(text: str, schema: SurveySchema | None = None) -> Dataset:
    """Parse a comma-separated cohort into a validated Dataset.

    The first line must be a header naming every non-identity schema field;
    identity columns present in the file are dropped.  Error locations use
    1-based data-row indices (the header is row 0).
    """
    if schema is None:
        schema = default_schema()
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise EmptyFile("no header row")
    header = [h.strip() for h in table[0]]
    records = table[1:]
    if not records:
        raise EmptyFile("no data rows")

    data_fields = schema.data_fields
    positions = {}
    for f in data_fields:
        if f.label in header:
            positions[f.label] = header.index(f.label)
        elif f.required:
            raise MissingColumn(f.label)

    kept = [f for f in data_fields if f.label in positions]
    matrix = np.empty((len(records), len(kept)), dtype=np.float64)
    for r, record in enumerate(records, start=1):
        for c, f in enumerate(kept):
            pos = positions[f.label]
            raw = record[pos].strip() if pos < len(record) else ""
            if raw == "":
                if f.required:
                    raise NotNumeric(r, f.label, raw)
                matrix[r - 1, c] = math.nan
                continue
            try:
                value = float(raw)
            except ValueError:
                raise NotNumeric(r, f.label, raw) from None
            if math.isnan(value) or not f.accepts(value):
                raise OutOfRange(r, f.label, value)
            matrix[r - 1, c] = value

    labels = tuple(f.label for f in kept)
    target = schema.target_label
    if target not in labels:
        raise MissingColumn(target)
    return Dataset(schema, matrix, labels, labels.index(target))


def to_csv(dataset: Dataset) -> str:
    """Serialize a Dataset back to delimited text; re-parsing recovers the matrix exactly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(dataset.column_labels)
    for row in dataset.rows:
        writer.writerow(["" if math.isnan(v) else repr(float(v)) for v in row])
    return out.getvalue()


@dataclass(frozen=True)
class TrainTestSplit:
    train_indices: tuple[int, ...]
    test_indices: tuple[int, ...]
    test_fraction: float
    seed: int


def _round_half_away(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


def split(dataset: Dataset, test_fraction: float, seed: int) -> TrainTestSplit:
    """Deterministic train/test partition.

    A seeded Fisher-Yates shuffle orders the row indices; the first
    round(test_fraction * n) of them (round half away from zero) become the
    test set.  A fraction that would empty either side fails loudly instead
    of being silently adjusted.
    """
    if not (0.0 < test_fraction < 1.0):
        raise DegenerateSplit(f"test_fraction must be in (0, 1), got {test_fraction}")
    n = dataset.n
    n_test = _round_half_away(test_fraction * n)
    if n_test < 1 or n - n_test < 1:
        raise DegenerateSplit(
            f"test_fraction {test_fraction} of {n} rows leaves an empty side "
            f"(test size {n_test})"
        )
    rng = np.random.default_rng(seed)
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        order[i], order[j] = order[j], order[i]
    return TrainTestSplit(
        train_indices=tuple(order[n_test:]),
        test_indices=tuple(order[:n_test]),
        test_fraction=test_fraction,
        seed=seed,
    )


def generate_synthetic(
    n: int,
    coefficients: tuple[float, ...] | list[float],
    intercept: float,
    noise_sd: float,
    seed: int,
) -> Dataset:
    """Synthetic cohort with a known linear ground truth, for oracle testing.

    Features are uniform on [1, 10]; the target is the linear combination
    plus Gaussian noise, clipped back to [1, 10].  Fully deterministic per
    seed.
    """
    if n < 1:
        raise DataError("n must be >= 1")
    coeffs = np.asarray(coefficients, dtype=np.float64)
    if coeffs.ndim != 1 or coeffs.size < 1:
        raise DataError("coefficients must be a non-empty sequence")
    rng = np.random.default_rng(seed)
    X = rng.uniform(1.0, 10.0, size=(n, coeffs.size))
    y = intercept + X @ coeffs
    if noise_sd > 0:
        y = y + rng.normal(0.0, noise_sd, size=n)
    y = np.clip(y, 1.0, 10.0)
    schema = synthetic_schema(coeffs.size)
    matrix = np.column_stack([X, y])
    labels = tuple(f.label for f in schema.fields)
    return Dataset(schema, matrix, labels, len(labels) - 1)
