"""Presented graded algebras: parsing, normal forms, weight bases, maps."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from khh.rationals import QQ
from khh.algebra import GradedHom, parse_algebra, parse_poly
from khh.errors import (
    InhomogeneousRelationError,
    ParseError,
    RelationNotKilledError,
    WeightMismatchError,
    ZeroWeightGeneratorError,
)


def test_build_free_algebra():
    algebra = parse_algebra("algebra f\nvars x:1")
    assert algebra.gens == ("x",)
    assert [algebra.dim(w) for w in range(4)] == [1, 1, 1, 1]


def test_build_cusp(cusp):
    assert [cusp.mono_str(m) for m in cusp.weight_basis(6)] == ["x^3"]
    assert cusp.dim(1) == 0


def test_build_dual_numbers(dualnum):
    e = dualnum.gen_poly(0)
    assert dualnum.multiply(e, e) == {}


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_algebra("algebra f\nvars x:1\nrel x + %")
    assert err.value.line == 3


def test_inhomogeneous_relation_rejected():
    with pytest.raises(InhomogeneousRelationError) as err:
        parse_algebra("algebra f\nvars x:2 y:3\nrel y - x")
    assert "weights" in str(err.value)


def test_zero_weight_generator_rejected():
    with pytest.raises(ZeroWeightGeneratorError):
        parse_algebra("algebra f\nvars x:0")


def test_weight_basis_cusp_examples(cusp):
    assert cusp.weight_basis(1) == ()
    assert [cusp.mono_str(m) for m in cusp.weight_basis(5)] == ["x*y"]


def test_weight_basis_free_monomial_count():
    algebra = parse_algebra("algebra f\nvars x:1")
    assert [algebra.mono_str(m) for m in algebra.weight_basis(5)] == ["x^5"]


def test_multiply_examples(cusp):
    y = cusp.gen_poly(1)
    assert cusp.poly_str(cusp.multiply(y, y)) == "x^3"
    p = cusp.nf(parse_poly("x^2 + y", cusp.gens))
    assert cusp.multiply(cusp.one(), p) == p


def test_hilbert_series_free2(free2):
    for w in range(9):
        assert free2.dim(w) == w + 1


def test_cusp_matches_punctured_line(cusp):
    line = parse_algebra("algebra line\nvars t:1")
    for w in range(14):
        expected = line.dim(w) - (1 if w == 1 else 0)
        assert cusp.dim(w) == expected


def test_algebra_hom_cusp_to_line(cusp):
    line = parse_algebra("algebra line\nvars t:1")
    nu = GradedHom(cusp, line, [{(2,): QQ(1)}, {(3,): QQ(1)}])
    xy = cusp.multiply(cusp.gen_poly(0), cusp.gen_poly(1))
    assert line.poly_str(nu.apply(xy)) == "t^5"


def test_algebra_hom_identity(cusp):
    iden = GradedHom.identity(cusp)
    p = cusp.nf(parse_poly("x^3 + x y", cusp.gens))
    assert iden.apply(p) == p


def test_algebra_hom_weight_mismatch(cusp):
    line = parse_algebra("algebra line\nvars t:1")
    with pytest.raises(WeightMismatchError):
        GradedHom(cusp, line, [{(1,): QQ(1)}, {(3,): QQ(1)}])


def test_algebra_hom_relation_not_killed(cusp):
    free = parse_algebra("algebra f\nvars u:2 v:3")
    with pytest.raises(RelationNotKilledError):
        GradedHom(cusp, free, [free.gen_poly(0), free.gen_poly(1)])


def _random_poly(algebra, rng, max_weight=8, terms=3):
    out = {}
    for _ in range(terms):
        w = rng.randrange(2, max_weight + 1)
        basis = algebra.weight_basis(w)
        if not basis:
            continue
        m = basis[rng.randrange(len(basis))]
        out[m] = out.get(m, QQ(0)) + QQ(rng.randint(-3, 3))
    return {m: c for m, c in out.items() if c}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_nf_is_idempotent_linear_multiplicative(seed):
    cusp = parse_algebra("algebra cusp\nvars x:2 y:3\nrel y^2 - x^3")
    rng = random.Random(seed)
    w = rng.randrange(4, 9)
    basis_raw = [(a, b) for a in range(5) for b in range(4) if 2 * a + 3 * b == w]
    p = {m: QQ(rng.randint(-3, 3)) for m in basis_raw}
    p = {m: c for m, c in p.items() if c}
    q = {m: QQ(rng.randint(-2, 2)) for m in basis_raw}
    q = {m: c for m, c in q.items() if c}
    nf = cusp.nf
    assert nf(nf(p)) == nf(p)
    from khh.algebra import poly_add

    assert nf(poly_add(p, q)) == poly_add(nf(p), nf(q))
    assert cusp.multiply(p, q) == cusp.multiply(nf(p), nf(q))


def test_polynomial_extension_bigrading(cusp):
    ext = cusp.with_polynomial_generator("t")
    assert ext.weight_rank == 2
    assert ext.dim((5, 2)) == 1
    assert ext.dim((1, 3)) == 0  # no weight-1 part in the base


def test_parse_poly_rational_coefficients():
    algebra = parse_algebra("algebra f\nvars x:1")
    p = parse_poly("3/2 x^2 - 2*x^2", algebra.gens)
    assert p == {(2,): QQ(-1, 2)}
    assert parse_poly("x x x", algebra.gens) == {(3,): QQ(1)}
