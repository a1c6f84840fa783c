"""Shared fixtures: the worked-example instances and the generated corpus.

The corpus seed is fixed so every run checks the same 200 instances; the
acceptance tests and the unit tests share one session-scoped copy.
"""

from pathlib import Path

import pytest

import limitgames as lg

INSTANCE_DIR = Path(__file__).resolve().parent.parent / "instances"

CORPUS_SEED = 20260817
CORPUS_SIZE = 200

# Filled by test_acceptance.py; one line per criterion.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _arena(name: str) -> lg.Arena:
    return lg.parse_arena((INSTANCE_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def db() -> lg.Dfa:
    return lg.parse_dfa((INSTANCE_DIR / "db.dfa").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def g1() -> lg.Arena:
    return _arena("g1.arena")


@pytest.fixture(scope="session")
def g2() -> lg.Arena:
    return _arena("g2.arena")


@pytest.fixture(scope="session")
def ginf() -> lg.Arena:
    return _arena("ginf.arena")


@pytest.fixture(scope="session")
def p1(g1, db) -> lg.ProductArena:
    return lg.build_product(g1, db)


@pytest.fixture(scope="session")
def p2(g2, db) -> lg.ProductArena:
    return lg.build_product(g2, db)


@pytest.fixture(scope="session")
def pinf(ginf, db) -> lg.ProductArena:
    return lg.build_product(ginf, db)


@pytest.fixture(scope="session")
def corpus() -> list[tuple[lg.Arena, lg.Dfa]]:
    return [
        lg.gen_random_instance(lg.GenParams(seed=CORPUS_SEED + i))
        for i in range(CORPUS_SIZE)
    ]


@pytest.fixture(scope="session")
def products(corpus) -> list[lg.ProductArena]:
    return [lg.build_product(arena, dfa) for arena, dfa in corpus]
