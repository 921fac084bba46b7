import pytest

from nilterm.cli import load_problem
from nilterm.counting import analyze
from nilterm.diagram import from_flag
from nilterm.twist import enumerate_chambers, generate_w_prime


@pytest.fixture(scope="session")
def ex17():
    return load_problem("ex17")


@pytest.fixture(scope="session")
def ex19():
    return load_problem("ex19")


@pytest.fixture(scope="session")
def report17(ex17):
    return analyze(ex17.setup)


@pytest.fixture(scope="session")
def report19(ex19):
    return analyze(ex19.setup)


@pytest.fixture(scope="session")
def graph17(ex17):
    return enumerate_chambers(from_flag(ex17.setup.flag))


@pytest.fixture(scope="session")
def graph19(ex19):
    return enumerate_chambers(from_flag(ex19.setup.flag))


@pytest.fixture(scope="session")
def group17(graph17):
    return generate_w_prime(graph17)


@pytest.fixture(scope="session")
def group19(graph19):
    return generate_w_prime(graph19)
