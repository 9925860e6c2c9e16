import pytest

from texcas.lexicon import load_default


@pytest.fixture(scope="session")
def lex():
    return load_default()
