"""Bar complex slices: differentials, normalization, shuffle products."""

import random

import pytest

from khh.rationals import QQ
from khh.barcomplex import BarChain, SliceContext, chain_str, parse_chain
from khh.errors import SanityError


@pytest.fixture(scope="module")
def cusp_ctx(cusp):
    return SliceContext(cusp)


@pytest.fixture(scope="module")
def free2_ctx(free2):
    return SliceContext(free2)


def test_b_kills_degree_one_commutative(cusp_ctx, cusp):
    chain = parse_chain(cusp, "x[y] + 2*y[x^2]")
    assert cusp_ctx.b_chain(chain).is_zero()


def test_b_of_generating_cycle(cusp_ctx, cusp):
    z = parse_chain(cusp, "2*x[y] + 3*y[x]")
    assert cusp_ctx.b_chain(z).is_zero()


def test_b_of_yy(cusp_ctx, cusp):
    got = cusp_ctx.b_chain(parse_chain(cusp, "[y|y]"))
    expected = parse_chain(cusp, "2*y[y] - 1[x^3]")
    assert got == expected


def test_b_normalization_drops_nothing_on_homogeneous(free2_ctx, free2):
    chain = parse_chain(free2, "[x|y|x]")
    image = free2_ctx.b_chain(chain)
    assert all(all(m != (0, 0) for m in t[1:]) for t in image.terms)


def test_connes_B_kills_rotations_with_scalars(cusp_ctx, cusp):
    assert cusp_ctx.B_chain(parse_chain(cusp, "1[x]")).is_zero()


def test_connes_B_degree_zero(cusp_ctx, cusp):
    got = cusp_ctx.B_chain(parse_chain(cusp, "y", degree=0))
    assert chain_str(got) == "[y]"


def test_slice_sanity_grid(cusp_ctx):
    for n in range(0, 4):
        for w in range(0, 11):
            cusp_ctx.check_slice(n, w)


def test_corrupt_wrap_flip_fails_sanity(cusp):
    ctx = SliceContext(cusp, "corrupt-b-wrap-flip")
    with pytest.raises(SanityError):
        for n in range(0, 3):
            for w in range(0, 8):
                ctx.check_slice(n, w)


def test_shuffle_one_one(free2_ctx, free2):
    got = free2_ctx.shuffle(
        parse_chain(free2, "1[x]"), parse_chain(free2, "1[y]")
    )
    assert chain_str(got) == "[x|y] - [y|x]"


def test_shuffle_degree_zero_acts_as_module(cusp_ctx, cusp):
    a = parse_chain(cusp, "x", degree=0)
    c = parse_chain(cusp, "2*x[y] + 3*y[x]")
    got = cusp_ctx.shuffle(a, c)
    assert got == parse_chain(cusp, "2*x^2[y] + 3*x*y[x]")


def _random_chain(ctx, rng, n, w):
    basis = ctx.basis(n, (w,))
    if not basis:
        return BarChain(ctx.algebra, n)
    terms = {}
    for _ in range(min(3, len(basis))):
        t = basis[rng.randrange(len(basis))]
        terms[t] = terms.get(t, QQ(0)) + QQ(rng.randint(-2, 2))
    return BarChain(ctx.algebra, n, {t: c for t, c in terms.items() if c})


def test_shuffle_graded_commutative_and_leibniz(free2_ctx):
    rng = random.Random(7)
    for p, q, w1, w2 in [(1, 1, 2, 3), (1, 2, 2, 3), (2, 2, 3, 3), (2, 1, 2, 2)]:
        c = _random_chain(free2_ctx, rng, p, w1)
        d = _random_chain(free2_ctx, rng, q, w2)
        left = free2_ctx.shuffle(c, d)
        right = free2_ctx.shuffle(d, c).scale(QQ((-1) ** (p * q)))
        assert left == right
        lhs = free2_ctx.b_chain(free2_ctx.shuffle(c, d))
        rhs = free2_ctx.shuffle(free2_ctx.b_chain(c), d) + free2_ctx.shuffle(
            c, free2_ctx.b_chain(d)
        ).scale(QQ((-1) ** p))
        assert lhs == rhs


def test_shuffle_associative(free2_ctx):
    rng = random.Random(11)
    a = _random_chain(free2_ctx, rng, 1, 2)
    b = _random_chain(free2_ctx, rng, 1, 1)
    c = _random_chain(free2_ctx, rng, 1, 2)
    left = free2_ctx.shuffle(free2_ctx.shuffle(a, b), c)
    right = free2_ctx.shuffle(a, free2_ctx.shuffle(b, c))
    assert left == right


def test_transpose_convention_is_isomorphic(cusp):
    std = SliceContext(cusp, "standard")
    rev = SliceContext(cusp, "b-transpose")
    for n in range(0, 4):
        for w in range(0, 9):
            rev.check_slice(n, w)
            assert std.b_matrix(n, (w,)).rank() == rev.b_matrix(n, (w,)).rank()


def test_chain_homogeneity_enforced(cusp):
    from khh.errors import PreconditionError

    chain = parse_chain(cusp, "x[y] + y[y]")
    with pytest.raises(PreconditionError):
        chain.weight()
