from __future__ import annotations

import pytest
from hypothesis import settings

from hecke_koszul.exact import rat
from hecke_koszul.zoo import drinfeld_jimbo, hecke_sum, odd_point, super_flip

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# generic sample values of q, none a root of unity
Q_SAMPLES = [rat(x) for x in ("2", "3", "5", "1/2", "7/3")]


def zoo_members(q):
    """Every built-in symmetry at q (super flips are pinned to q = 1)."""
    return {
        "dj2": drinfeld_jimbo(2, q),
        "dj3": drinfeld_jimbo(3, q),
        "odd": odd_point(q),
        "dj1+odd": hecke_sum(drinfeld_jimbo(1, q), odd_point(q)),
        "dj2+odd": hecke_sum(drinfeld_jimbo(2, q), odd_point(q)),
        "sf(1|1)": super_flip(1, 1),
        "sf(2|1)": super_flip(2, 1),
        "sf(1|2)": super_flip(1, 2),
    }


@pytest.fixture(scope="session")
def zoo_q2():
    return zoo_members(rat(2))


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
