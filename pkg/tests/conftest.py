import functools

import pytest

from macdonald.engine import build_tower, make_context, normal_form_group
from macdonald.enumerator import coset_enumerate, permutation_handle
from macdonald.presentation import sylow_presentation

# (alpha, p) contexts small enough for exhaustive work
SMALL = [(3, 2), (-1, 2), (4, 3), (5, 2)]
VERIFIED = [(3, 2), (4, 3), (5, 2), (6, 5), (7, 3)]


@functools.lru_cache(maxsize=None)
def engine(alpha, p):
    return normal_form_group(make_context(alpha, p))


@functools.lru_cache(maxsize=None)
def tower(alpha, p):
    return build_tower(alpha, p)


@functools.lru_cache(maxsize=None)
def table(alpha, p):
    return coset_enumerate(sylow_presentation(alpha, p), via="A")


@functools.lru_cache(maxsize=None)
def perm(alpha, p):
    return permutation_handle(table(alpha, p))


@pytest.fixture(params=SMALL, ids=lambda c: f"a{c[0]}p{c[1]}")
def small_ctx(request):
    return request.param
