import pytest

from app.core.double import build_double, integral_of
from app.core.errors import SubgroupError
from app.core.groups import parse_subgroup_spec
from app.core.scalars import ONE, rational
from app.core.verify import VerifyMode, all_passed, verify_hopf, verify_star_algebra


@pytest.fixture(scope="module")
def double(s3, a3):
    return build_double(s3, a3)


def test_dimension_and_unit(double, s3):
    assert double.base.dimension == 18
    unit = double.base.unit()
    assert len(unit) == 3
    assert all(g == s3.identity for (_, g) in unit.coeffs)


def test_product_example(double, s3):
    A = double.base
    c, cc, t = s3.element("(123)"), s3.element("(132)"), s3.element("(12)")
    product = A.mul(double.element(c, t), double.element(cc, s3.identity))
    assert product == double.element(c, t)
    # the conjugation condition fails for ((123), e)
    assert A.mul(double.element(c, t), double.element(c, s3.identity)).is_zero()


def test_antipode_and_star_examples(double, s3):
    c, cc, t = s3.element("(123)"), s3.element("(132)"), s3.element("(12)")
    assert double.antipode(double.element(c, t)) == double.element(c, t)
    assert double.base.star(double.element(c, t)) == double.element(cc, t)
    assert double.counit(double.element(s3.identity, t)) == ONE


def test_double_satisfies_star_hopf_laws(double):
    results = verify_star_algebra(double.base) + verify_hopf(double)
    assert all_passed(results), [r.law for r in results if not r.passed]
    assert all(r.mode == "exhaustive" for r in results)


def test_integral(double, s3):
    z = integral_of(double)
    assert z.value.coefficient((s3.identity, s3.element("(23)"))) == rational(1, 6)
    assert len(z.value) == 6
    results = z.verify()
    assert [r.law for r in results] == ["integral", "integral_idempotent",
                                         "integral_star_invariant"]
    assert all_passed(results)


def test_sampled_mode_is_reproducible(double):
    mode = VerifyMode(kind="sampled", samples=50, seed=7)
    first = verify_star_algebra(double.base, mode)
    second = verify_star_algebra(double.base, mode)
    assert [r.model_dump() for r in first] == [r.model_dump() for r in second]
    assert first[0].mode == "sampled"
    assert first[0].checked == 50


def test_non_normal_subgroup_is_rejected(s3):
    flip = parse_subgroup_spec(s3, "(12)")
    with pytest.raises(SubgroupError, match="not normal"):
        build_double(s3, flip)

    forced = build_double(s3, flip, force=True)
    results = verify_star_algebra(forced.base, VerifyMode(kind="exhaustive"))
    assert any(r.law == "unit" and not r.passed for r in results)
    assert any(not r.passed for r in verify_hopf(forced))
