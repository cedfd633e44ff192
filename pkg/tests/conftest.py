from __future__ import annotations

import pytest


@pytest.fixture(scope="session")
def per25_exact():
    from bicrit.percurve import per25_punctures

    return per25_punctures(exact=True)


@pytest.fixture(scope="session")
def pcf_points():
    from bicrit.percurve import all_pcf_points

    return all_pcf_points(2, 5)


@pytest.fixture(scope="session")
def model():
    from bicrit.rendercli import per25_model

    return per25_model()


@pytest.fixture(scope="session")
def samples():
    from bicrit.percurve import sample_curve

    return sample_curve(2, 5, 12, seed=0)


_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record the PASS/FAIL line of an acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        lines[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
