from pathlib import Path

import pytest

from careerwheel import dataio

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def cohort_text() -> str:
    return (DATA_DIR / "cohort47.csv").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def cohort(cohort_text) -> dataio.Dataset:
    return dataio.parse_csv(cohort_text, dataio.default_schema())
