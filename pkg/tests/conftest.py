import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

REF_F = "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"
REF_G = "y^6 - 3*x^3*y^4 - 2*x^5*y^3 + 3*x^6*y^2 - 6*x^8*y - x^9 + x^10"


@pytest.fixture(scope="session")
def K24():
    from compoly.fields import CyclotomicField

    return CyclotomicField(24)


@pytest.fixture(scope="session")
def ref_pair(K24):
    """(f, g, p, q) over Q(zeta_24): the two inputs and their primitive branches."""
    from compoly.parser import parse_bivariate
    from compoly.puiseux import PuiseuxSeries

    f = parse_bivariate(REF_F, K24)
    g = parse_bivariate(REF_G, K24)
    p = PuiseuxSeries(K24, {Fraction(6, 4): 1, Fraction(7, 4): 1}, 4)
    q = PuiseuxSeries(K24, {Fraction(9, 6): 1, Fraction(10, 6): 1}, 6)
    return f, g, p, q


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
