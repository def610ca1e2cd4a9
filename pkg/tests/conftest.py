import pytest

from asplambda.syntax import parse_term


@pytest.fixture
def P():
    return parse_term
