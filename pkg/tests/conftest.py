import pytest

from groupsmith.constructions import named_group


@pytest.fixture(scope="session")
def s3():
    return named_group("S3")


@pytest.fixture(scope="session")
def z6():
    return named_group("Z6")


@pytest.fixture(scope="session")
def z4():
    return named_group("Z4")


@pytest.fixture(scope="session")
def d5():
    return named_group("D5")


@pytest.fixture(scope="session")
def d7():
    return named_group("D7")


@pytest.fixture(scope="session")
def a4():
    return named_group("A4")
