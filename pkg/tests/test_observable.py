from fractions import Fraction

import pytest

from app.core.double import build_double
from app.core.errors import WindowError
from app.core.field import LatticeWindow, build_field, d
from app.core.groups import build_group, parse_subgroup_spec
from app.core.observable import (GammaAction, PhiMap, VWGenerators, algebra_closure, gamma_action,
                                 observable_span, phi_iso, project_trivial_twist, project_z,
                                 project_z_via_double, verify_chain_formula,
                                 verify_inclusion_in_AG, verify_phi_tower, verify_span_fixed,
                                 verify_trivial_twist, verify_truncated_v, verify_vw_fixed,
                                 verify_vw_relations, verify_z_projection)
from app.core.scalars import rational
from app.core.twisted import build_iterated, embed_window
from app.core.verify import VerifyMode, all_passed, verify_module_algebra

HALF = Fraction(1, 2)
SAMPLED = VerifyMode(kind="sampled", samples=200, seed=9)


@pytest.fixture(scope="module")
def field(s3, a3):
    return build_field(s3, a3, LatticeWindow(0, 1))


@pytest.fixture(scope="module")
def gamma(field):
    return gamma_action(field)


@pytest.fixture(scope="module")
def vw(field):
    return VWGenerators(field)


@pytest.fixture(scope="module")
def z4_field(z4, z4_half):
    return build_field(z4, z4_half, LatticeWindow(0, 1))


def test_gamma_on_generators(gamma, field, s3):
    c, cc, t = s3.element("(123)"), s3.element("(132)"), s3.element("(12)")
    D = gamma.double
    assert gamma.act(D.element(c, t), field.rho(cc, HALF)) == field.rho(c, HALF)
    assert gamma.act(D.element(cc, t), field.rho(cc, HALF)).is_zero()
    e = s3.identity
    assert gamma.act(D.element(e, t), field.delta(c, 0)) == field.delta(s3.mul(t, c), 0)
    assert gamma.on_generator((e, t), d(c, 0)) == field.delta(s3.mul(t, c), 0)
    assert gamma.on_generator((c, t), d(c, 0)).is_zero()


def test_gamma_closed_form_matches_coproduct(gamma, field):
    assert gamma.verify_closed_form(SAMPLED).passed
    label = field.labels[500]
    for a in gamma.double.base.labels:
        assert gamma.act_label(a, label) == gamma.via_coproduct(a, field.word_of(label))


def test_gamma_is_a_module_algebra(gamma):
    results = verify_module_algebra(gamma, SAMPLED)
    assert all_passed(results), [r.law for r in results if not r.passed]


def test_non_normal_subgroup_breaks_module_algebra(s3):
    flip = parse_subgroup_spec(s3, "(12)")
    F = build_field(s3, flip, LatticeWindow(0, 0), force=True)
    results = verify_module_algebra(GammaAction(build_double(s3, flip, force=True), F),
                                    VerifyMode(kind="exhaustive"))
    assert any(r.law == "module_algebra" and not r.passed for r in results)


def test_integral_projection(gamma, field, s3):
    for label in field.labels[::61]:
        x = field.element(label)
        assert project_z(field, x) == project_z_via_double(gamma, x)
    assert all_passed(verify_z_projection(field, count=50))
    # δ_g(0) averages to the uniform function
    assert project_z(field, field.delta(s3.element("(12)"), 0)) == field.unit().scale(rational(1, 6))


def test_w_example_z2(z2, z2_all):
    F = build_field(z2, z2_all, LatticeWindow(0, 1))
    vw = VWGenerators(F)
    for g in (0, 1):
        expected = (F.normal_order([d(0, 0), d(g, 1)])
                    + F.normal_order([d(1, 0), d(z2.mul(1, g), 1)]))
        assert vw.w(g, HALF) == expected


def test_vw_relations_s3(vw):
    results = verify_vw_relations(vw)
    assert [res.law for res in results] == ["w_projections", "v_unitary_representation",
                                            "v_w_neighbour_commutation", "vw_locality"]
    assert all_passed(results), [res.failures for res in results if not res.passed]
    assert verify_vw_fixed(vw).passed


def test_vw_generators_reject_bad_sites(vw, s3):
    with pytest.raises(WindowError):
        vw.v(s3.element("(123)"), 2)
    with pytest.raises(WindowError):
        vw.v(s3.element("(12)"), 0)
    with pytest.raises(WindowError):
        vw.w(0, Fraction(3, 2))


def test_truncated_v_is_not_invariant(vw):
    result = verify_truncated_v(vw)
    assert not result.passed
    assert result.failure_count == 2


def test_trivial_twist_projection(vw, field, s3):
    assert all_passed(verify_trivial_twist(vw))
    assert project_trivial_twist(field, field.rho(s3.element("(123)"), HALF)).is_zero()


def test_chain_formula():
    assert verify_chain_formula(build_group("S3"), 2).passed
    result = verify_chain_formula(build_group("Z3"), 3)
    assert result.passed
    assert result.checked == 27


def test_observable_span_z4(z4_field):
    space = observable_span(z4_field)
    assert space.dimensions["vw_span"] == 2 ** 2 * 4
    assert space.inclusion
    assert verify_span_fixed(z4_field, space.vw_span).passed


def test_phi_z4(z4, z4_half, z4_field):
    phi = PhiMap(build_iterated(z4, z4_half, 0, 2), z4_field)
    results = phi.verify(VerifyMode(kind="exhaustive"))
    assert all_passed(results), [res.law for res in results if not res.passed]
    with pytest.raises(WindowError):
        PhiMap(build_iterated(z4, z4_half, 0, 1), z4_field)


def test_phi_tower_z4(z4, z4_half, z4_field):
    inner = phi_iso(z4, z4_half, 0, 0)
    outer = PhiMap(build_iterated(z4, z4_half, 0, 2), z4_field)
    assert verify_phi_tower(inner, outer).passed


@pytest.fixture(scope="module")
def z4_phi_wide(z4, z4_half):
    return phi_iso(z4, z4_half, 0, 2)


@pytest.mark.slow
def test_phi_z4_five_factor_window(z4_phi_wide):
    phi = z4_phi_wide
    assert phi.iterated.indices == (0, 1, 2, 3, 4)
    assert phi.iterated.dimension == 128
    assert phi.field.dimension == 1024

    results = {res.law: res for res in phi.verify(VerifyMode(kind="exhaustive"))}
    assert all(res.passed for res in results.values()), \
        [law for law, res in results.items() if not res.passed]
    assert results["phi_multiplicative"].mode == "exhaustive"
    assert results["phi_multiplicative"].checked == 128 * 128
    assert results["phi_star"].checked == 128
    assert results["phi_injective"].passed
    assert results["phi_image_equals_vw_span"].passed


def test_phi_tower_z4_one_to_two(z4, z4_half, z4_phi_wide):
    inner = phi_iso(z4, z4_half, 0, 1)
    tower = verify_phi_tower(inner, z4_phi_wide)
    assert tower.passed
    assert tower.checked == inner.iterated.dimension == 16

    embedding = embed_window(inner.iterated, z4_phi_wide.iterated)
    results = {res.law: res for res in embedding.verify(VerifyMode(kind="exhaustive"))}
    assert set(results) == {"embedding_unital", "embedding_multiplicative", "embedding_star",
                            "embedding_injective"}
    assert all(res.passed for res in results.values())


def test_closure_of_v_alone_is_group_algebra(z4_field, z4_half):
    vw = VWGenerators(z4_field)
    closure = algebra_closure(z4_field, [vw.v(h, 0) for h in z4_half.members])
    assert len(closure) == z4_half.order


@pytest.mark.slow
def test_observable_span_s3(field):
    space = observable_span(field)
    assert space.dimensions["field"] == 972
    assert space.dimensions["vw_span"] == 54
    assert space.dimensions["z_image"] >= 54
    assert space.inclusion


@pytest.mark.slow
def test_phi_s3(s3, a3):
    phi = phi_iso(s3, a3, 0, 1)
    results = {res.law: res for res in phi.verify()}
    assert all(res.passed for res in results.values())
    assert results["phi_multiplicative"].checked == 2916
    assert results["phi_multiplicative"].mode == "exhaustive"


@pytest.mark.slow
def test_inclusion_in_whole_group_span(s3, a3):
    law, dims = verify_inclusion_in_AG(s3, a3, LatticeWindow(0, 1))
    assert law.passed
    assert dims == {"h_span": 54, "g_span": 216, "field": 7776}
