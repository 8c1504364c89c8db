import os
import sys

import mpmath
import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture
def hiprec():
    """Build numeric test inputs at 120 bits so they are not the error source."""
    with mpmath.workprec(120):
        yield
