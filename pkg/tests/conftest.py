import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from berkpot.ultrametric import INFINITY, BerkPoint, PrimeContext  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PRIMES = (2, 3, 5)

rationals = st.builds(
    Fraction,
    st.integers(-200, 200),
    st.sampled_from([1, 1, 2, 3, 4, 5, 8, 9, 25, 27, 7]),
)
log_radii = st.builds(Fraction, st.integers(-8, 12), st.sampled_from([1, 2, 3]))
contexts = st.sampled_from(PRIMES).map(PrimeContext)

type_i_points = st.builds(BerkPoint, rationals)
type_ii_points = st.builds(BerkPoint, rationals, log_radii)
finite_points = st.one_of(type_i_points, type_ii_points)
any_points = st.one_of(type_i_points, type_ii_points, st.just(INFINITY))


# -- acceptance summary: one line per criterion ------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE[number] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}")
