import functools

import pytest

from hopfpi1.classify import classify_hopf_gradings
from hopfpi1.pi1 import fundamental_group
from hopfpi1.scalars import parse_field


@functools.lru_cache(maxsize=None)
def pi1_of(field_text: str, n: int, antipode: str = "preserve"):
    return fundamental_group(parse_field(field_text), n, antipode)


@functools.lru_cache(maxsize=None)
def run_of(field_text: str, n: int):
    return classify_hopf_gradings(parse_field(field_text), n)


@pytest.fixture(scope="session")
def Q():
    return parse_field("Q")


@pytest.fixture(scope="session")
def Q12():
    return parse_field("Q(z12)")
