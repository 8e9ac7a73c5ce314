from app.core.algebra import GroupAlgebra, TableAlgebra
from app.core.hopf import (TensorAlgebra, arrow_on_dual, arrow_on_group, dual_hopf, group_hopf,
                           pairing, trivial_action)
from app.core.scalars import ONE, ZERO
from app.core.twisted import conjugation_module, phi_action
from app.core.verify import (VerifyMode, all_passed, verify_hopf, verify_module_action,
                             verify_module_algebra, verify_star_algebra)


def failed(results):
    return {r.law for r in results if not r.passed}


def test_group_algebra_and_dual_are_hopf_star_algebras(s3):
    for hopf in (group_hopf(s3), dual_hopf(s3)):
        assert all_passed(verify_star_algebra(hopf.base))
        results = verify_hopf(hopf)
        assert all_passed(results), failed(results)
        assert {r.law for r in results} >= {"coassociativity", "antipode", "star_comultiplication"}


def test_dual_coproduct_sums_over_factorisations(s3):
    dual = dual_hopf(s3)
    g = s3.element("(123)")
    terms = dual.basis_comul(g)
    assert len(terms) == 6
    assert all(s3.mul(t, u) == g for t, u in terms)
    assert dual.basis_counit(s3.identity) == ONE
    assert dual.basis_counit(g) == ZERO


def test_pairing_and_arrows(s3):
    dual, group = dual_hopf(s3), group_hopf(s3)
    g, s = s3.element("(12)"), s3.element("(123)")
    assert pairing(g, g) == ONE
    assert pairing(g, s) == ZERO
    # g ⇀ δ_s = δ_{s g^-1}
    assert arrow_on_dual(dual, g, s) == {s3.mul(s, s3.inv(g)): ONE}
    # δ_s ⇀ g = [g = s] g
    assert arrow_on_group(group, s, s) == {s: ONE}
    assert arrow_on_group(group, s, g) == {}


def test_tensor_square_is_a_star_algebra(z2):
    square = TensorAlgebra(GroupAlgebra(z2), GroupAlgebra(z2))
    assert square.dimension == 4
    assert all_passed(verify_star_algebra(square))


def test_corrupted_table_breaks_associativity(z2):
    table = TableAlgebra.snapshot(GroupAlgebra(z2))
    assert all_passed(verify_star_algebra(table))
    broken = table.corrupt(z2.identity, 1, {z2.identity: ONE})
    results = verify_star_algebra(broken, VerifyMode(kind="exhaustive"))
    assert "associativity" in failed(results)


def test_trivial_action_is_a_module_algebra(s3, a3):
    hopf = group_hopf(s3)
    action = trivial_action(hopf, GroupAlgebra(s3, a3))
    assert all_passed(verify_module_action(action))
    assert all_passed(verify_module_algebra(action))


def test_conjugation_module(s3, a3):
    module = conjugation_module(s3, a3)
    results = verify_module_algebra(module)
    assert all_passed(results), failed(results)


def test_phi_action_fails_for_proper_subgroup(s3, a3):
    results = verify_module_action(phi_action(s3, a3))
    assert "action_associativity" in failed(results)
    assert "action_unit" not in failed(results)


def test_phi_action_is_an_action_for_the_whole_group(s3, s3_all):
    assert all_passed(verify_module_action(phi_action(s3, s3_all)))
