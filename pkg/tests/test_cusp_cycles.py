"""The cusp's generating cycles and the sign-convention search."""

import pytest

from khh.barcomplex import SliceContext, parse_chain
from khh.homology import HomologyEngine, verify_cusp_cycles


@pytest.fixture(scope="module")
def report():
    return verify_cusp_cycles(2)


def test_z_is_a_nonzero_class(report):
    assert report.z_is_cycle
    assert report.z_class_nonzero


def test_tz_variant_nonzero_in_weight6(report):
    assert report.tz_class_nonzero


def test_search_brackets_all_sign_patterns(report):
    # 8 sign patterns under each of the two b-conventions
    assert len(report.per_convention) == 16
    conventions = {row["convention"] for row in report.per_convention}
    assert conventions == {"standard", "b-transpose"}


def test_search_outcome_documented(report):
    # either some convention realizes the shuffle products as cycles, or the
    # report falls back to exhibiting nonzero classes in the same slices
    if report.convention_found is None:
        assert report.fallback_classes
        dim, rep = report.fallback_classes[2]
        assert dim >= 1 and rep is not None
    else:
        assert report.sign_pattern is not None


def test_degree3_weight11_class_exists(cusp):
    engine = HomologyEngine(cusp)
    assert engine.hh_dim(3, 11) >= 1


def test_z_squared_is_a_boundary(cusp):
    # odd-degree square: the shuffle anticommutes with itself, so the square
    # is already zero at chain level, and membership in the boundary space
    # is the trivial solve
    ctx = SliceContext(cusp)
    z = parse_chain(cusp, "2*x[y] + 3*y[x]")
    zz = ctx.shuffle(z, z)
    assert zz.is_zero()
    assert ctx.in_boundary(zz)


def test_boundary_membership_solver(cusp):
    ctx = SliceContext(cusp)
    image = ctx.b_chain(parse_chain(cusp, "[y|y]"))
    assert ctx.in_boundary(image)
    tz = parse_chain(cusp, "2*y[y] + 3*x^2[x]")
    assert not ctx.in_boundary(tz)


def test_no_convention_makes_zw_a_cycle(report):
    # chain-level fact pinned by the search: b(z w*) = -z b(w*) never dies
    # over the bracketed sign orbit, so the finding is NO_CONVENTION_FOUND
    assert report.convention_found is None
    assert not any(row["works"] for row in report.per_convention)
