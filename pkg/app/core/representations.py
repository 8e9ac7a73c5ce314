"""
Concrete *-representations of A_{0,2} and A_{1,3} on functions of two
group variables.

Operators of the form (Tψ)(σ) = c(σ)·ψ(τ(σ)) are stored as matrices with
entry c(σ) at (σ, τ(σ)), inside a MatrixAlgebra.
"""

import logging
from typing import Dict, List, Tuple

from app.core.algebra import MatrixAlgebra
from app.core.elements import AlgebraElement
from app.core.errors import WindowError
from app.core.groups import FiniteGroup, Subgroup
from app.core.linalg import span_rank
from app.core.scalars import ONE
from app.core.twisted import IteratedAlgebra, build_iterated
from app.core.verify import LawRecorder, LawResult, VerifyMode, check_law

logger = logging.getLogger(__name__)

SUPPORTED_WINDOWS = ((0, 2), (1, 3))


class PairRepresentation:
    """
    A representation of a three-factor window on functions ψ(a, b), a, b in G.

    For (0,2): h in slot 0 acts by ψ(a h, b), f in slot 2 by ψ(a, b f) and
    δ_g in slot 1 multiplies by [a^-1 b = g].
    For (1,3): h in slot 2 acts by ψ(a h, h^-1 b), δ_g in slot 1 multiplies
    by [a = g] and δ_s in slot 3 by [b = s].
    """

    def __init__(self, algebra: IteratedAlgebra):
        if algebra.window not in SUPPORTED_WINDOWS:
            raise WindowError(f"No concrete representation for window {algebra.window}")
        self.algebra = algebra
        self.group: FiniteGroup = algebra.family.group
        self.window = algebra.window
        n = self.group.order
        self.carrier = n * n
        self.matrices = MatrixAlgebra(self.carrier, name=f"End(C^{self.carrier})")

    def _index(self, a: int, b: int) -> int:
        return a * self.group.order + b

    def _operator(self, rule) -> AlgebraElement:
        """rule(a, b) -> (a', b') or None for a zero row."""
        entries = {}
        for a in self.group.elements:
            for b in self.group.elements:
                target = rule(a, b)
                if target is not None:
                    entries[(self._index(a, b), self._index(*target))] = ONE
        return self.matrices.from_terms(entries)

    def slot_operator(self, slot: int, label: int) -> AlgebraElement:
        G = self.group
        if self.window == (0, 2):
            if slot == 0:
                return self._operator(lambda a, b: (G.mul(a, label), b))
            if slot == 2:
                return self._operator(lambda a, b: (a, G.mul(b, label)))
            return self._operator(lambda a, b: (a, b) if G.mul(G.inv(a), b) == label else None)
        if slot == 2:
            return self._operator(lambda a, b: (G.mul(a, label), G.mul(G.inv(label), b)))
        if slot == 1:
            return self._operator(lambda a, b: (a, b) if a == label else None)
        return self._operator(lambda a, b: (a, b) if b == label else None)

    def image_of_label(self, label: Tuple[int, int, int]) -> AlgebraElement:
        """Ordered product of the three slot operators."""
        M = self.matrices
        result = None
        for offset, x in enumerate(label):
            op = self.slot_operator(self.window[0] + offset, x)
            result = op if result is None else M.mul(result, op)
        return result

    def image(self, x: AlgebraElement) -> AlgebraElement:
        out = self.matrices.zero()
        for label, c in x.coeffs.items():
            out = out + self.image_of_label(label).scale(c)
        return out

    def verify(self, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
        """*-representation laws and faithfulness by rank."""
        A = self.algebra
        M = self.matrices
        labels = A.labels
        images: Dict = {t: self.image_of_label(t) for t in labels}
        names = A.render_label
        results = [check_law("representation_unital", "exhaustive", [()],
                             lambda: self.image(A.unit()) == M.unit(), lambda: ["1"])]

        m, tuples = mode.schedule([labels] * 2, salt="rep-mult")
        results.append(check_law(
            "representation_multiplicative", m, tuples,
            lambda a, b: self.image(A.mul(A.element(a), A.element(b)))
            == M.mul(images[a], images[b]),
            lambda a, b: [names(a), names(b)]))

        results.append(check_law(
            "representation_star", "exhaustive", [(a,) for a in labels],
            lambda a: self.image(A.star(A.element(a))) == M.star(images[a]),
            lambda a: [names(a)]))

        rank = span_rank(list(images.values()))
        faithful = LawRecorder("representation_faithful", "exhaustive")
        faithful.record(rank == A.dimension, lambda: [f"rank {rank}", f"dim {A.dimension}"])
        results.append(faithful.done())
        logger.info("Representation of %s: rank %d on a %d-dimensional carrier",
                    A.name, rank, self.carrier)
        return results

    def rank(self) -> int:
        return span_rank([self.image_of_label(t) for t in self.algebra.labels])


def repr_pi(window: Tuple[int, int], G: FiniteGroup, H: Subgroup) -> PairRepresentation:
    """
    Representation of A_{0,2} or A_{1,3}.

    Raises:
        WindowError: For any other window
    """
    window = tuple(window)
    if window not in SUPPORTED_WINDOWS:
        raise WindowError(f"No concrete representation for window {window}")
    return PairRepresentation(build_iterated(G, H, *window))
