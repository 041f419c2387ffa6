import pytest

from tmkit import corpus, dsl


@pytest.fixture(scope="session")
def parsed_corpus():
    """name -> (static, events, behavior) for every shipped fixture."""
    return {name: dsl.parse(corpus.fixture_text(name))
            for name in corpus.FIXTURES}


@pytest.fixture(scope="session")
def beef(parsed_corpus):
    return parsed_corpus["beef"]


@pytest.fixture(scope="session")
def bank(parsed_corpus):
    return parsed_corpus["bank"]


@pytest.fixture(scope="session")
def human(parsed_corpus):
    return parsed_corpus["human"]


@pytest.fixture(scope="session")
def person(parsed_corpus):
    return parsed_corpus["person"]
