import pytest

from app.core.elements import AlgebraElement, linear_sum
from app.core.errors import LabelSpaceError
from app.core.linalg import combine, in_span, span_basis, span_contains, span_rank, spans_equal
from app.core.scalars import (I_UNIT, ONE, ZERO, as_scalar, conj, format_scalar, rational, scalar,
                              scalar_arith)


def el(space="V", **coeffs):
    return AlgebraElement({k: as_scalar(v) for k, v in coeffs.items()}, space)


def test_scalar_formatting():
    assert format_scalar(rational(1, 6)) == "1/6"
    assert format_scalar(scalar(0, "1/2")) == "1/2i"
    assert format_scalar(scalar("1/3", -2)) == "1/3-2i"
    assert format_scalar(I_UNIT) == "i"
    assert format_scalar(scalar(-3)) == "-3"


def test_scalar_arithmetic_is_exact():
    third = rational(1, 3)
    assert third + third + third == ONE
    assert scalar_arith(I_UNIT, I_UNIT, "mul") == scalar(-1)
    assert scalar_arith(scalar(1, 1), op="conj") == scalar(1, -1)
    assert conj(conj(scalar(2, 5))) == scalar(2, 5)
    assert scalar_arith(ONE, scalar(0, 2), "div") == scalar(0, "-1/2")
    with pytest.raises(ZeroDivisionError):
        scalar_arith(ONE, ZERO, "div")
    with pytest.raises(ValueError):
        scalar_arith(ONE, ONE, "pow")


def test_elements_drop_zero_coefficients():
    x = el(a=1, b=0)
    assert x.labels() == ["a"]
    assert (x - x).is_zero()
    assert x + el(b=2) == el(a=1, b=2)
    assert hash(el(a=1, b=2)) == hash(el(b=2, a=1))
    assert linear_sum([el(a=1), el(a=1)]) == el(a=2)


def test_mixed_label_spaces_are_rejected():
    with pytest.raises(LabelSpaceError):
        el(space="V", a=1) + el(space="W", a=1)
    with pytest.raises(LabelSpaceError):
        span_rank([el(space="V", a=1), el(space="W", a=1)])


def test_span_rank_over_gaussian_rationals():
    x = el(a=1, b=2)
    assert span_rank([x, x.scale(I_UNIT)]) == 1
    assert span_rank([x, el(b=1), el(a=1)]) == 2
    assert span_rank([]) == 0
    assert span_rank([el()]) == 0


def test_span_basis_is_reduced():
    basis = span_basis([el(a=2, b=4), el(b=1, c=1), el(a=1, c=-2)])
    assert len(basis) == 2
    assert basis[0].coefficient("a") == ONE
    assert basis[0].coefficient("b") == ZERO
    assert basis[1].coefficient("b") == ONE


def test_in_span_solves_exactly():
    basis = [el(a=1, b=1), el(b=1)]
    assert in_span(el(a=2, b=3), basis) == [scalar(2), scalar(1)]
    assert in_span(el(c=1), basis) is None
    assert in_span(el(), basis) == [ZERO, ZERO]

    coeffs = in_span(el(a="1/2", b=scalar(0, 1)), basis)
    assert combine(coeffs, basis, "V") == el(a="1/2", b=scalar(0, 1))


def test_span_containment():
    small = [el(a=1, b=1)]
    big = [el(a=1), el(b=1)]
    assert span_contains(big, small)
    assert not span_contains(small, big)
    assert spans_equal(big, [el(a=1, b=1), el(a=1, b=-1)])
    assert not spans_equal(big, small)
