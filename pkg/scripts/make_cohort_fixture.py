"""Regenerate tests/data/cohort47.csv, the synthetic demo cohort.

The cohort mimics a real survey export: two identity columns, fourteen
right-skewed 1-10 scales, and a GPA column filled for 24 of 47 students.
The Opportunities target is driven by CommunityRate, ComfortZone,
SalaryExp and CommunicationRate so that threshold-0.3 feature selection
recovers exactly those four columns.  Rerunning this script reproduces the
file byte for byte.
"""

from pathlib import Path

import numpy as np

SEED = 20240211
N = 47
N_GPA = 24

SCALE_MEANS = {
    "LearningRate": 7.0,
    "WorkingExp": 7.5,
    "SalaryExp": 7.8,
    "FamilyTime": 7.0,
    "CommunicationRate": 7.6,
    "HobbyTimeRate": 6.4,
    "CommunityRate": 6.3,
    "PhysicalFormRate": 7.0,
    "WantToUpPhysicalForm": 9.0,
    "NutritionRate": 6.0,
    "ConflictSituations": 7.6,
    "ComfortZone": 6.5,
    "ChangeLife": 8.0,
}

DRIVERS = {
    "CommunityRate": 0.40,
    "ComfortZone": 0.35,
    "SalaryExp": 0.30,
    "CommunicationRate": 0.25,
}


def ordinal(rng: np.random.Generator, mean: float, sd: float = 2.0) -> np.ndarray:
    return np.clip(np.rint(rng.normal(mean, sd, N)), 1, 10).astype(int)


def build(seed: int) -> dict[str, np.ndarray]:
    rng = np.random.default_rng(seed)
    columns = {label: ordinal(rng, mean) for label, mean in SCALE_MEANS.items()}
    signal = sum(w * columns[label] for label, w in DRIVERS.items())
    signal = (signal - signal.mean()) / signal.std()
    raw = 7.6 + 1.9 * signal + rng.normal(0.0, 1.0, N)
    columns["Opportunities"] = np.clip(np.rint(raw), 1, 10).astype(int)
    gpa = np.full(N, np.nan)
    with_gpa = rng.permutation(N)[:N_GPA]
    gpa[with_gpa] = np.round(rng.uniform(1.5, 4.0, N_GPA), 2)
    columns["GPA"] = gpa
    return columns


def selection_at(columns: dict[str, np.ndarray], threshold: float) -> set[str]:
    opp = columns["Opportunities"].astype(float)
    chosen = set()
    for label, values in columns.items():
        if label in ("Opportunities", "GPA"):
            continue
        r = np.corrcoef(values.astype(float), opp)[0, 1]
        if abs(r) > threshold:
            chosen.add(label)
    return chosen


def write(columns: dict[str, np.ndarray], path: Path) -> None:
    order = [
        "Name", "PhoneNumber",
        "LearningRate", "WorkingExp", "SalaryExp", "FamilyTime",
        "CommunicationRate", "HobbyTimeRate", "CommunityRate",
        "PhysicalFormRate", "WantToUpPhysicalForm", "NutritionRate",
        "ConflictSituations", "ComfortZone", "Opportunities", "ChangeLife",
        "GPA",
    ]
    lines = [",".join(order)]
    for i in range(N):
        row = [f"Student {i + 1:02d}", f"+7-701-000-{i + 1:04d}"]
        for label in order[2:-1]:
            row.append(str(int(columns[label][i])))
        gpa = columns["GPA"][i]
        row.append("" if np.isnan(gpa) else f"{gpa:.2f}")
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    columns = build(SEED)
    chosen = selection_at(columns, 0.3)
    expected = set(DRIVERS)
    if chosen != expected:
        raise SystemExit(f"seed {SEED} selects {sorted(chosen)}, want {sorted(expected)}")
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "cohort47.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    write(columns, out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
