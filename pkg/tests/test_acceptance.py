"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import pytest

from multichsh import acceptance

LINES: list[str] = []  # echoed again in the terminal summary by conftest.py


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    check = criterion()
    LINES.append(check.line())
    print(check.line())
    assert check.passed, check.line()
