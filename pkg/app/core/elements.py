"""
Sparse linear combinations over a labeled basis.
"""

from typing import Callable, Dict, Hashable, Iterable, Iterator, Optional, Tuple

from app.core.errors import LabelSpaceError
from app.core.scalars import ONE, Scalar, as_scalar, conj, format_scalar

Label = Hashable


class AlgebraElement:
    """
    A finite map from basis labels to nonzero scalars.

    Elements are treated as immutable once built. The space tag names the
    label space so elements of different algebras are never mixed.
    """

    __slots__ = ("coeffs", "space")

    def __init__(self, coeffs: Optional[Dict[Label, Scalar]] = None, space: str = ""):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}
        self.space = space

    @classmethod
    def basis(cls, label: Label, space: str = "", coeff: Scalar = ONE) -> "AlgebraElement":
        return cls({label: coeff}, space)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Label, Scalar]], space: str = "") -> "AlgebraElement":
        acc: Dict[Label, Scalar] = {}
        for label, c in terms:
            acc[label] = acc[label] + c if label in acc else c
        return cls(acc, space)

    def check_space(self, other: "AlgebraElement"):
        if self.space and other.space and self.space != other.space:
            raise LabelSpaceError(f"Mixed label spaces: '{self.space}' and '{other.space}'")

    def _space_of(self, other: "AlgebraElement") -> str:
        return self.space or other.space

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.check_space(other)
        acc = dict(self.coeffs)
        for label, c in other.coeffs.items():
            acc[label] = acc[label] + c if label in acc else c
        return AlgebraElement(acc, self._space_of(other))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -v for k, v in self.coeffs.items()}, self.space)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        if not c:
            return AlgebraElement({}, self.space)
        return AlgebraElement({k: c * v for k, v in self.coeffs.items()}, self.space)

    def __rmul__(self, c) -> "AlgebraElement":
        return self.scale(c)

    def conj_coeffs(self) -> "AlgebraElement":
        return AlgebraElement({k: conj(v) for k, v in self.coeffs.items()}, self.space)

    def relabel(self, fn: Callable[[Label], Label], space: Optional[str] = None) -> "AlgebraElement":
        """Apply a label map, merging collisions."""
        return AlgebraElement.from_terms(((fn(k), v) for k, v in self.coeffs.items()),
                                         self.space if space is None else space)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Tuple[Label, Scalar]]:
        return iter(sorted(self.coeffs.items()))

    def labels(self):
        return sorted(self.coeffs)

    def coefficient(self, label: Label) -> Scalar:
        return self.coeffs.get(label, as_scalar(0))

    def render(self, render_label: Callable[[Label], str] = str) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for label, c in self:
            name = render_label(label)
            parts.append(name if c == ONE else f"{format_scalar(c)}*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self.render()})"


def zero(space: str = "") -> AlgebraElement:
    return AlgebraElement({}, space)


def linear_sum(elements: Iterable[AlgebraElement], space: str = "") -> AlgebraElement:
    acc: Dict[Label, Scalar] = {}
    for el in elements:
        for label, c in el.coeffs.items():
            acc[label] = acc[label] + c if label in acc else c
        space = space or el.space
    return AlgebraElement(acc, space)


def tensor(x: AlgebraElement, y: AlgebraElement, space: str = "") -> AlgebraElement:
    """x ⊗ y over pair labels (a, b)."""
    return AlgebraElement({(a, b): c * d for a, c in x.coeffs.items() for b, d in y.coeffs.items()},
                          space)
