"""
Exact sparse linear algebra over AlgebraElements.

All elimination goes through sympy's DomainMatrix in sparse format. The
domain is QQ when every coefficient is real, else the Gaussian rationals.
Columns follow the canonical (sorted) label order, so pivots are the first
nonzero entry in that order and results are deterministic.
"""

import logging
from typing import Dict, List, Optional, Sequence

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from app.core.elements import AlgebraElement
from app.core.errors import LabelSpaceError
from app.core.scalars import Scalar

logger = logging.getLogger(__name__)


def _shared_space(elements: Sequence[AlgebraElement]) -> str:
    spaces = {el.space for el in elements if el.space}
    if len(spaces) > 1:
        raise LabelSpaceError(f"Mixed label spaces: {sorted(spaces)}")
    return spaces.pop() if spaces else ""


def _domain(elements: Sequence[AlgebraElement]):
    for el in elements:
        for c in el.coeffs.values():
            if c.y:
                return QQ_I
    return QQ


def _to_domain(c: Scalar, domain):
    return c.x if domain is QQ else c


def _from_domain(v, domain) -> Scalar:
    return QQ_I(v, 0) if domain is QQ else v


def _entries(matrix: DomainMatrix) -> Dict[int, Dict[int, object]]:
    return matrix.to_sparse().rep


def _row_matrix(elements: Sequence[AlgebraElement]):
    """Rows are elements, columns the sorted union of their labels."""
    columns = sorted({label for el in elements for label in el.coeffs})
    index = {label: j for j, label in enumerate(columns)}
    domain = _domain(elements)
    rows = {}
    for i, el in enumerate(elements):
        if el.coeffs:
            rows[i] = {index[label]: _to_domain(c, domain) for label, c in el.coeffs.items()}
    matrix = DomainMatrix(rows, (len(elements), len(columns)), domain)
    return matrix, columns, domain


def span_rank(elements: Sequence[AlgebraElement]) -> int:
    """
    Exact rank of the span of the given elements.

    Raises:
        LabelSpaceError: If the elements come from different label spaces
    """
    elements = list(elements)
    _shared_space(elements)
    if not any(el.coeffs for el in elements):
        return 0
    matrix, _, _ = _row_matrix(elements)
    return matrix.rank()


def span_basis(elements: Sequence[AlgebraElement]) -> List[AlgebraElement]:
    """
    Reduced row-echelon basis of the span.

    The i-th returned element has coefficient 1 at its pivot label and 0 at
    every other pivot label.
    """
    elements = list(elements)
    space = _shared_space(elements)
    if not any(el.coeffs for el in elements):
        return []
    matrix, columns, domain = _row_matrix(elements)
    reduced, pivots = matrix.rref()
    entries = _entries(reduced)
    basis = []
    for r in range(len(pivots)):
        row = entries.get(r, {})
        basis.append(AlgebraElement({columns[j]: _from_domain(v, domain) for j, v in row.items()},
                                    space))
    logger.debug("span_basis: %d inputs, rank %d over %d labels",
                 len(elements), len(basis), len(columns))
    return basis


def in_span(target: AlgebraElement, basis: Sequence[AlgebraElement]) -> Optional[List[Scalar]]:
    """
    Solve target = sum c_i basis_i exactly.

    Returns:
        Coefficient list (free variables set to 0), or None if the target
        lies outside the span
    """
    basis = list(basis)
    space = _shared_space(basis + [target])
    if not target.coeffs:
        return [QQ_I(0, 0)] * len(basis)
    if not basis:
        return None

    labels = sorted({label for el in basis + [target] for label in el.coeffs})
    index = {label: i for i, label in enumerate(labels)}
    domain = _domain(basis + [target])
    k = len(basis)
    rows: Dict[int, Dict[int, object]] = {}
    for j, el in enumerate(basis + [target]):
        for label, c in el.coeffs.items():
            rows.setdefault(index[label], {})[j] = _to_domain(c, domain)
    matrix = DomainMatrix(rows, (len(labels), k + 1), domain)
    reduced, pivots = matrix.rref()
    if k in pivots:
        return None

    entries = _entries(reduced)
    coefficients = [QQ_I(0, 0)] * k
    for r, p in enumerate(pivots):
        value = entries.get(r, {}).get(k)
        if value is not None:
            coefficients[p] = _from_domain(value, domain)

    residual = target - combine(coefficients, basis, space)
    if residual:
        return None
    return coefficients


def combine(coefficients: Sequence[Scalar], basis: Sequence[AlgebraElement],
            space: str = "") -> AlgebraElement:
    acc: Dict = {}
    for c, el in zip(coefficients, basis):
        if not c:
            continue
        for label, v in el.coeffs.items():
            acc[label] = acc[label] + c * v if label in acc else c * v
    return AlgebraElement(acc, space)


def span_contains(outer: Sequence[AlgebraElement], inner: Sequence[AlgebraElement]) -> bool:
    """True iff every element of inner lies in span(outer)."""
    outer, inner = list(outer), list(inner)
    return span_rank(outer + inner) == span_rank(outer)


def spans_equal(a: Sequence[AlgebraElement], b: Sequence[AlgebraElement]) -> bool:
    a, b = list(a), list(b)
    joint = span_rank(a + b)
    return joint == span_rank(a) == span_rank(b)
