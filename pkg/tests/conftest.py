import random

import pytest
from hypothesis import settings, strategies as st

from magnus_qi.words import Letter, Word, random_reduced_word

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def letters(rank: int):
    return st.builds(Letter, st.integers(1, rank), st.sampled_from([1, -1]))


def words(rank: int = 2, max_len: int = 12):
    """Arbitrary (not necessarily reduced) words."""
    return st.lists(letters(rank), max_size=max_len).map(lambda ls: Word(tuple(ls)))


def seeded_words(seed: int, count: int, ranks=(2, 3), max_len: int = 20):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = rng.choice(ranks)
        out.append((r, random_reduced_word(rng, r, rng.randint(0, max_len))))
    return out


@pytest.fixture
def rng():
    return random.Random(20261019)


_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE.append((name, "PASS" if report.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {name}  {detail}")
