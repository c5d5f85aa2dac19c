from __future__ import annotations

import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
PROJECTS = FIXTURES / "projects"
GOLDEN = FIXTURES / "golden"
MICRO = FIXTURES / "micro"

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def projects_dir() -> Path:
    return PROJECTS


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def micro_dir() -> Path:
    return MICRO


def project_path(name: str) -> Path:
    return PROJECTS / name


def all_project_dirs() -> list[Path]:
    return sorted(p for p in PROJECTS.iterdir() if (p / "forge.json").exists())
