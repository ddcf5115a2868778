import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat import gfp


def random_rows(p, ncols):
    return st.lists(
        st.tuples(*[st.integers(0, p - 1) for _ in range(ncols)]), min_size=0, max_size=5
    )


@given(random_rows(2, 5))
@settings(max_examples=60, deadline=None)
def test_rref_idempotent_p2(rows):
    red = gfp.rref(rows, 2)
    assert gfp.rref(red, 2) == red


@given(random_rows(3, 4))
@settings(max_examples=60, deadline=None)
def test_rref_preserves_span_p3(rows):
    red = gfp.rref(rows, 3)
    for r in rows:
        assert gfp.in_span(r, red, 3)
    for r in red:
        # every echelon row is a combination of the originals: rank unchanged
        assert gfp.rank(list(rows) + [r], 3) == gfp.rank(rows, 3)


@given(random_rows(2, 4), random_rows(2, 4))
@settings(max_examples=60, deadline=None)
def test_intersection_inside_both(a, b):
    ra, rb = gfp.rref(a, 2), gfp.rref(b, 2)
    inter = gfp.span_intersection(ra, rb, 2)
    for v in inter:
        assert gfp.in_span(v, ra, 2)
        assert gfp.in_span(v, rb, 2)
    # dim formula: dim(a) + dim(b) = dim(a+b) + dim(a cap b)
    assert len(ra) + len(rb) == len(gfp.span_sum(ra, rb, 2)) + len(inter)


@given(random_rows(3, 3))
@settings(max_examples=40, deadline=None)
def test_nullspace_annihilates(rows):
    m = tuple(rows)
    null = gfp.nullspace(m, 3, 3)
    for x in null:
        assert gfp.is_zero(gfp.mat_vec(m, x, 3))
    assert len(null) == 3 - gfp.rank(m, 3)


def test_solve_round_trip():
    m = ((1, 2, 0), (0, 1, 1))
    x = gfp.solve(m, (2, 1), 3)
    assert x is not None
    assert gfp.mat_vec(m, x, 3) == (2, 1)
    assert gfp.solve(((0, 0),), (1,), 2) is None


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_all_echelon_bases_counts(n, p):
    seen = set()
    for basis in gfp.all_echelon_bases(n, p):
        assert basis == gfp.rref(basis, p)
        seen.add(basis)
    expected = sum(gfp.gaussian_binomial(n, k, p) for k in range(n + 1))
    assert len(seen) == expected


def test_normalized_vectors_cover_lines():
    vecs = list(gfp.normalized_vectors(3, 3))
    assert len(vecs) == (3**3 - 1) // 2
    lines = {gfp.rref([v], 3) for v in itertools.product(range(3), repeat=3) if any(v)}
    assert {gfp.rref([v], 3) for v in vecs} == lines
