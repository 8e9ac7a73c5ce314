import pytest

from app.core.errors import HexagonError, SubgroupError, WindowError
from app.core.groups import parse_subgroup_spec
from app.core.representations import repr_pi
from app.core.scalars import ONE
from app.core.twisted import (SmashProduct, TwistFamily, TwistedTensorProduct, TwistingMap,
                              build_iterated, compare_structure_constants, compose_left,
                              compose_right, conjugation_module, embed_window, standard_twists,
                              twist_from_action, verify_arrow_twists, verify_bracketing,
                              verify_embedding_tower, verify_hexagon, verify_twisting_map)
from app.core.verify import VerifyMode, all_passed, verify_star_algebra


def failed(results):
    return [r.law for r in results if not r.passed]


def skewed_outer_twist(family):
    """A non-flip R_{0,2}: h2 ⊗ h0 ↦ h0 h2 ⊗ h2."""
    G = family.group
    return TwistingMap(family.factor(0), family.factor(2),
                       lambda c, a: {(G.mul(a, c), c): ONE}, "R0,2~")


class SkewedFamily(TwistFamily):
    def twist(self, i, j):
        if (i, j) == (0, 2):
            return skewed_outer_twist(self)
        return super().twist(i, j)


def test_standard_twist_examples(z4, z4_half):
    family = standard_twists(z4, z4_half)
    assert family.twist(0, 1).apply_basis(1, 2) == {(2, 3): ONE}
    assert family.twist(1, 2).apply_basis(2, 1) == {(3, 2): ONE}
    assert family.twist(0, 2).apply_basis(2, 0) == {(0, 2): ONE}
    assert family.dimension(0) == 2
    assert family.dimension(1) == 4
    with pytest.raises(WindowError):
        family.twist(2, 1)


def test_standard_twists_need_normal_subgroup(s3):
    with pytest.raises(SubgroupError):
        standard_twists(s3, parse_subgroup_spec(s3, "(12)"))


def test_adjacent_and_distant_twists_are_twisting_maps(s3, a3):
    family = standard_twists(s3, a3)
    for i, j in ((0, 1), (1, 2), (0, 2), (1, 3), (0, 3)):
        results = verify_twisting_map(family.twist(i, j))
        assert all_passed(results), (i, j, failed(results))


def test_arrow_twists_match_closed_forms(s3, a3):
    assert verify_arrow_twists(standard_twists(s3, a3)).passed


def test_hexagons_hold_for_standard_twists(s3, a3):
    family = standard_twists(s3, a3)
    for i, j, k in ((0, 1, 2), (1, 2, 3), (0, 1, 3), (0, 2, 3), (-1, 0, 1)):
        result = verify_hexagon(family.twist(i, j), family.twist(j, k), family.twist(i, k))
        assert result.passed, result.failures


def test_hexagon_detects_a_skewed_twist(z4, z4_half):
    family = standard_twists(z4, z4_half)
    result = verify_hexagon(family.twist(0, 1), family.twist(1, 2), skewed_outer_twist(family))
    assert not result.passed
    assert result.failures

    with pytest.raises(HexagonError) as excinfo:
        build_iterated(z4, z4_half, 0, 2, family=SkewedFamily(z4, z4_half))
    assert excinfo.value.triple == (0, 1, 2)


def test_composed_twists(s3, a3):
    family = standard_twists(s3, a3)
    R1, R2, R3 = family.twist(0, 1), family.twist(1, 2), family.twist(0, 2)
    assert all_passed(verify_twisting_map(compose_left(R1, R2, R3)))
    assert all_passed(verify_twisting_map(compose_right(R1, R2, R3)))
    assert verify_bracketing(family, 0).passed
    assert verify_bracketing(family, 1).passed


def test_smash_product_is_a_twisted_product(s3, a3):
    module = conjugation_module(s3, a3)
    R = twist_from_action(module)
    results = verify_twisting_map(R)
    assert [r.law for r in results[:2]] == ["action_associativity", "action_unit"]
    assert all_passed(results)
    twisted = TwistedTensorProduct(module.space, module.acting.base, R)
    assert compare_structure_constants(twisted, SmashProduct(module)).passed
    assert all_passed(verify_star_algebra(twisted, VerifyMode(kind="sampled", samples=300)))


def test_iterated_dimensions(s3, a3, z4, z4_half):
    assert build_iterated(s3, a3, 0, 2).dimension == 54
    assert build_iterated(s3, a3, 1, 3).dimension == 108
    assert build_iterated(z4, z4_half, 0, 2).dimension == 16
    assert build_iterated(z4, z4_half, 0, 4).expected_dimension() == 128
    with pytest.raises(WindowError):
        build_iterated(s3, a3, 3, 1)


def test_iterated_product_and_star_examples(z4, z4_half):
    A = build_iterated(z4, z4_half, 0, 2)
    assert A.mul(A.element((2, 1, 0)), A.element((2, 3, 2))) == A.element((0, 3, 2))
    # (h1 ⊗ δ_g ⊗ h2)* = h1^-1 ⊗ δ_{h1 g h2} ⊗ h2^-1
    assert A.star(A.element((2, 1, 0))) == A.element((2, 3, 0))
    assert all_passed(verify_star_algebra(A, VerifyMode(kind="exhaustive")))


def test_iterated_star_algebra_sampled(s3, a3):
    A = build_iterated(s3, a3, 1, 3)
    results = verify_star_algebra(A, VerifyMode(kind="sampled", samples=300, seed=11))
    assert all_passed(results), failed(results)
    assert results[0].mode == "sampled"


def test_window_embeddings(z4, z4_half):
    inner = build_iterated(z4, z4_half, 1, 2)
    middle = build_iterated(z4, z4_half, 0, 2)
    outer = build_iterated(z4, z4_half, 0, 3)
    assert all_passed(embed_window(middle, outer).verify())
    assert all_passed(embed_window(inner, middle).verify())
    assert verify_embedding_tower(inner, middle, outer).passed
    with pytest.raises(WindowError):
        embed_window(outer, inner)


def test_pair_representations(s3, a3):
    pi02 = repr_pi((0, 2), s3, a3)
    assert pi02.carrier == 36
    assert all_passed(pi02.verify())
    assert pi02.rank() == 54

    pi13 = repr_pi((1, 3), s3, a3)
    assert all_passed(pi13.verify(VerifyMode(kind="sampled", samples=200, seed=3)))
    assert pi13.rank() == 108

    with pytest.raises(WindowError):
        repr_pi((0, 1), s3, a3)
