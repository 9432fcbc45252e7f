"""Eulerian idempotent table and its action on slices."""

import pytest

from khh.rationals import QQ
from khh.algebra import parse_algebra
from khh.barcomplex import SliceContext
from khh.hodge import (
    _convolve,
    _perms,
    _sign,
    adams_matrix,
    check_slice_completeness,
    eulerian_idempotents,
    idempotent_matrix,
    lambda_element,
)


def test_table_n2_is_symmetrizer_antisymmetrizer():
    e1, e2 = eulerian_idempotents(2)
    half = QQ(1, 2)
    assert e1 == {(0, 1): half, (1, 0): half}
    assert e2 == {(0, 1): half, (1, 0): -half}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_table_complete_orthogonal(n):
    idems = eulerian_idempotents(n)
    total = {}
    for e in idems:
        for perm, c in e.items():
            total[perm] = total.get(perm, QQ(0)) + c
    identity = tuple(range(n))
    assert {p: c for p, c in total.items() if c} == {identity: QQ(1)}
    for i, ei in enumerate(idems):
        for j, ej in enumerate(idems):
            prod = _convolve(ei, ej)
            assert prod == (ei if i == j else {})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_top_idempotent_is_antisymmetrizer(n):
    from math import factorial

    top = eulerian_idempotents(n)[-1]
    assert top == {p: QQ(_sign(p), factorial(n)) for p in _perms(n)}


def test_lambda_identity_at_k1():
    for n in (2, 3, 4):
        lam1 = lambda_element(n, 1)
        assert lam1 == {tuple(range(n)): QQ(1)}


def test_chain_map_property_on_fresh_slices():
    algebra = parse_algebra("algebra f3\nvars x:1 y:2 z:3")
    ctx = SliceContext(algebra)
    for n, w in [(2, 4), (3, 6), (4, 7)]:
        b = ctx.b_matrix(n, (w,))
        for i in range(1, n):
            upper = idempotent_matrix(ctx, n, (w,), i)
            lower = idempotent_matrix(ctx, n - 1, (w,), i)
            assert (b @ upper - lower @ b).is_zero()


def test_slice_completeness_and_orthogonality(cusp):
    ctx = SliceContext(cusp)
    for n, w in [(2, 6), (2, 8), (3, 9)]:
        check_slice_completeness(ctx, n, (w,))
        mats = [idempotent_matrix(ctx, n, (w,), i) for i in range(1, n + 1)]
        for i, mi in enumerate(mats):
            for j, mj in enumerate(mats):
                prod = mi @ mj
                assert prod == (mi if i == j else prod.zero(prod.rows, prod.cols))


def test_adams_is_weighted_sum_of_idempotents(free2):
    ctx = SliceContext(free2)
    n, w = 2, 3
    psi2 = adams_matrix(ctx, n, (w,), 2)
    expected = idempotent_matrix(ctx, n, (w,), 1).scale(QQ(2)) + idempotent_matrix(
        ctx, n, (w,), 2
    ).scale(QQ(4))
    assert psi2 == expected
