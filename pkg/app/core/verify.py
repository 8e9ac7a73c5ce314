"""
Exhaustive and sampled axiom verifiers.

A verifier never raises on a failed law; it returns LawResult records with
rendered witness tuples so suites can compose positive and negative checks.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from app.core.algebra import StructureAlgebra
from app.core.elements import AlgebraElement
from app.core.hopf import HopfStructure, ModuleAction
from app.core.scalars import I_UNIT, ONE, ZERO, conj

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5


class LawResult(BaseModel):
    """Outcome of one law over its tuple schedule."""

    law: str
    mode: str
    checked: int = 0
    failures: List[List[str]] = Field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0


@dataclass(frozen=True)
class VerifyMode:
    """
    Tuple schedule policy.

    kind 'auto' runs exhaustively while the deciding tuple count stays
    within exhaustive_limit and samples otherwise.
    """

    kind: str = "auto"
    samples: int = 500
    seed: int = 20240101
    exhaustive_limit: int = 1_000_000

    @classmethod
    def parse(cls, text: str, **defaults) -> "VerifyMode":
        """Parse 'auto', 'exhaustive', 'sampled' or 'sampled:<seed>'."""
        text = (text or "auto").strip().lower()
        if text in ("auto", "exhaustive", "sampled"):
            return cls(kind=text, **defaults)
        if text.startswith("sampled:"):
            seed = int(text.split(":", 1)[1])
            defaults.pop("seed", None)
            return cls(kind="sampled", seed=seed, **defaults)
        raise ValueError(f"Unknown mode '{text}'")

    def decide(self, total: int) -> str:
        if self.kind == "exhaustive":
            return "exhaustive"
        if self.kind == "sampled":
            return "sampled"
        return "exhaustive" if total <= self.exhaustive_limit else "sampled"

    def schedule(self, pools: Sequence[Sequence], decide_on: Optional[int] = None,
                 salt: str = "") -> Tuple[str, Iterable[tuple]]:
        """
        Tuples over the cartesian product of pools.

        Args:
            pools: One candidate list per tuple slot
            decide_on: Tuple count used for the exhaustive/sampled decision
                (defaults to the product of pool sizes)
            salt: Mixed into the seed so distinct laws draw distinct samples

        Returns:
            (mode label, iterable of tuples)
        """
        total = 1
        for pool in pools:
            total *= len(pool)
        mode = self.decide(total if decide_on is None else decide_on)
        if mode == "exhaustive" or total <= self.samples:
            return "exhaustive", itertools.product(*pools)
        rng = random.Random(f"{self.seed}:{salt}")
        return mode, [tuple(rng.choice(pool) for pool in pools) for _ in range(self.samples)]


class LawRecorder:
    """Accumulates pass/fail for one law."""

    def __init__(self, law: str, mode: str):
        self.result = LawResult(law=law, mode=mode)

    def record(self, ok: bool, witness: Callable[[], List[str]]):
        self.result.checked += 1
        if ok:
            return
        self.result.failure_count += 1
        if len(self.result.failures) < MAX_WITNESSES:
            self.result.failures.append(witness())

    def done(self) -> LawResult:
        r = self.result
        if r.failure_count:
            logger.warning("Law %s failed on %d of %d tuples", r.law, r.failure_count, r.checked)
        else:
            logger.debug("Law %s passed on %d tuples (%s)", r.law, r.checked, r.mode)
        return r


def check_law(law: str, mode: str, tuples: Iterable[tuple],
              predicate: Callable[..., bool], render: Callable[..., List[str]]) -> LawResult:
    recorder = LawRecorder(law, mode)
    for tup in tuples:
        recorder.record(bool(predicate(*tup)), lambda tup=tup: render(*tup))
    return recorder.done()


def check_equal(law: str, mode: str, tuples: Iterable[tuple],
                lhs: Callable[..., AlgebraElement], rhs: Callable[..., AlgebraElement],
                render: Callable[..., List[str]]) -> LawResult:
    return check_law(law, mode, tuples, lambda *t: lhs(*t) == rhs(*t), render)


def expect_failure(result: LawResult) -> bool:
    return result.failure_count > 0


# ---------------------------------------------------------------------------
# Star algebras
# ---------------------------------------------------------------------------

def verify_star_algebra(A: StructureAlgebra, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
    """
    Associativity, unit, and (when A has a star) the star laws.

    The exhaustive/sampled decision uses |basis|^3 for every law.
    """
    labels = A.labels
    n = len(labels)
    decide = n ** 3
    el = A.element
    names = A.render_label
    results = []
    label_set = set(labels)

    def triple(a, b, c):
        return [names(a), names(b), names(c)]

    m, tuples = mode.schedule([labels] * 3, decide, "assoc")
    results.append(check_equal(
        "associativity", m, tuples,
        lambda a, b, c: A.mul(A.mul(el(a), el(b)), el(c)),
        lambda a, b, c: A.mul(el(a), A.mul(el(b), el(c))),
        triple))

    unit = A.unit()
    m, tuples = mode.schedule([labels], decide, "unit")
    results.append(check_law(
        "unit", m, tuples,
        lambda a: A.mul(unit, el(a)) == el(a) and A.mul(el(a), unit) == el(a),
        lambda a: [names(a)]))

    if not A.has_star:
        return results

    m, tuples = mode.schedule([labels], decide, "star-closure")
    results.append(check_law(
        "star_closure", m, tuples,
        lambda a: set(A.basis_star(a)) <= label_set,
        lambda a: [names(a)]))

    m, tuples = mode.schedule([labels], decide, "involution")
    results.append(check_equal(
        "star_involution", m, tuples,
        lambda a: A.star(A.star(el(a))), lambda a: el(a),
        lambda a: [names(a)]))

    m, tuples = mode.schedule([labels] * 2, decide, "antimult")
    results.append(check_equal(
        "star_antimultiplicative", m, tuples,
        lambda a, b: A.star(A.mul(el(a), el(b))),
        lambda a, b: A.mul(A.star(el(b)), A.star(el(a))),
        lambda a, b: [names(a), names(b)]))

    m, tuples = mode.schedule([labels] * 2, decide, "conjlin")
    results.append(check_equal(
        "star_conjugate_linear", m, tuples,
        lambda a, b: A.star(el(a).scale(I_UNIT) + el(b)),
        lambda a, b: A.star(el(a)).scale(conj(I_UNIT)) + A.star(el(b)),
        lambda a, b: [names(a), names(b)]))
    return results


# ---------------------------------------------------------------------------
# Hopf structures
# ---------------------------------------------------------------------------

def _flatten_left(terms):
    return {(x, y, z): c for ((x, y), z), c in terms.items()}


def _flatten_right(terms):
    return {(x, y, z): c for (x, (y, z)), c in terms.items()}


def verify_hopf(Hf: HopfStructure, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
    """
    Coalgebra, bialgebra, antipode and Hopf *-laws on basis tuples.
    """
    A = Hf.base
    sq = Hf.square
    labels = A.labels
    label_set = set(labels)
    decide = len(labels) ** 3
    el = A.element
    names = A.render_label
    unit = A.unit()
    results = []

    def single(a):
        return [names(a)]

    def coassoc(a):
        left, right = {}, {}
        for (x, y), c in Hf.basis_comul(a).items():
            for (x1, x2), d in Hf.basis_comul(x).items():
                key = ((x1, x2), y)
                left[key] = left.get(key, ZERO) + c * d
            for (y1, y2), d in Hf.basis_comul(y).items():
                key = (x, (y1, y2))
                right[key] = right.get(key, ZERO) + c * d
        lf = {k: v for k, v in _flatten_left(left).items() if v}
        rf = {k: v for k, v in _flatten_right(right).items() if v}
        return lf == rf

    m, tuples = mode.schedule([labels], decide, "coassoc")
    results.append(check_law("coassociativity", m, tuples, coassoc, single))

    def counit_law(a):
        left, right = {}, {}
        for (x, y), c in Hf.basis_comul(a).items():
            ex, ey = Hf.basis_counit(x), Hf.basis_counit(y)
            if ex:
                left[y] = left.get(y, ZERO) + c * ex
            if ey:
                right[x] = right.get(x, ZERO) + c * ey
        target = el(a)
        return A.from_terms(left) == target and A.from_terms(right) == target

    m, tuples = mode.schedule([labels], decide, "counit")
    results.append(check_law("counit", m, tuples, counit_law, single))

    m, tuples = mode.schedule([labels] * 2, decide, "delta-mult")
    results.append(check_equal(
        "comultiplication_multiplicative", m, tuples,
        lambda a, b: Hf.comul(A.mul(el(a), el(b))),
        lambda a, b: sq.mul(Hf.comul(el(a)), Hf.comul(el(b))),
        lambda a, b: [names(a), names(b)]))

    results.append(check_law(
        "comultiplication_unit", "exhaustive", [()],
        lambda: Hf.comul(unit) == sq.unit(), lambda: ["1"]))

    m, tuples = mode.schedule([labels] * 2, decide, "eps-mult")
    results.append(check_law(
        "counit_multiplicative", m, tuples,
        lambda a, b: Hf.counit(A.mul(el(a), el(b))) == Hf.basis_counit(a) * Hf.basis_counit(b),
        lambda a, b: [names(a), names(b)]))

    results.append(check_law(
        "counit_unit", "exhaustive", [()],
        lambda: Hf.counit(unit) == ONE, lambda: ["1"]))

    def antipode_law(a):
        left, right = A.zero(), A.zero()
        for (x, y), c in Hf.basis_comul(a).items():
            left = left + A.mul(Hf.antipode(el(x)), el(y)).scale(c)
            right = right + A.mul(el(x), Hf.antipode(el(y))).scale(c)
        target = unit.scale(Hf.basis_counit(a))
        return left == target and right == target

    m, tuples = mode.schedule([labels], decide, "antipode")
    results.append(check_law("antipode", m, tuples, antipode_law, single))

    m, tuples = mode.schedule([labels], decide, "antipode-closure")
    results.append(check_law(
        "antipode_closure", m, tuples,
        lambda a: set(Hf.basis_antipode(a)) <= label_set, single))

    if A.has_star:
        def star_comul(a):
            lhs = Hf.comul(A.star(el(a)))
            rhs = sq.star(Hf.comul(el(a)))
            return lhs == rhs

        m, tuples = mode.schedule([labels], decide, "star-delta")
        results.append(check_law("star_comultiplication", m, tuples, star_comul, single))

        m, tuples = mode.schedule([labels], decide, "star-eps")
        results.append(check_law(
            "star_counit", m, tuples,
            lambda a: Hf.counit(A.star(el(a))) == conj(Hf.basis_counit(a)), single))
    return results


# ---------------------------------------------------------------------------
# Module algebras
# ---------------------------------------------------------------------------

def verify_module_algebra(action: ModuleAction, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
    """
    Module-algebra laws of a Hopf action on an algebra.

    Checks a·(FF') = Σ(a(1)·F)(a(2)·F'), a·1 = ε(a)1, (ab)·F = a·(b·F),
    1·F = F and, with stars on both sides, (a·F)* = S(a)*·F*.
    """
    Hf = action.acting
    D = Hf.base
    F = action.space
    d_labels, f_labels = D.labels, F.labels
    dn, fn = D.render_label, F.render_label
    results = []

    def act(a_label, x: AlgebraElement) -> AlgebraElement:
        return action.act(D.element(a_label), x)

    def distributes(a, x, y):
        lhs = act(a, F.mul(F.element(x), F.element(y)))
        rhs = F.zero()
        for (a1, a2), c in Hf.basis_comul(a).items():
            left = act(a1, F.element(x))
            if not left:
                continue
            right = act(a2, F.element(y))
            if right:
                rhs = rhs + F.mul(left, right).scale(c)
        return lhs == rhs

    m, tuples = mode.schedule([d_labels, f_labels, f_labels], salt="modalg")
    results.append(check_law("module_algebra", m, tuples, distributes,
                             lambda a, x, y: [dn(a), fn(x), fn(y)]))

    f_unit = F.unit()
    m, tuples = mode.schedule([d_labels], salt="unit-action")
    results.append(check_law(
        "action_on_unit", m, tuples,
        lambda a: act(a, f_unit) == f_unit.scale(Hf.basis_counit(a)),
        lambda a: [dn(a)]))

    m, tuples = mode.schedule([d_labels, d_labels, f_labels], salt="module-assoc")
    results.append(check_law(
        "module_associativity", m, tuples,
        lambda a, b, x: action.act(D.mul(D.element(a), D.element(b)), F.element(x))
        == act(a, act(b, F.element(x))),
        lambda a, b, x: [dn(a), dn(b), fn(x)]))

    d_unit = D.unit()
    m, tuples = mode.schedule([f_labels], salt="unit-acts")
    results.append(check_law(
        "unit_acts_trivially", m, tuples,
        lambda x: action.act(d_unit, F.element(x)) == F.element(x),
        lambda x: [fn(x)]))

    if D.has_star and F.has_star:
        def star_compatible(a, x):
            lhs = F.star(act(a, F.element(x)))
            s_star = D.star(Hf.antipode(D.element(a)))
            rhs = action.act(s_star, F.star(F.element(x)))
            return lhs == rhs

        m, tuples = mode.schedule([d_labels, f_labels], salt="module-star")
        results.append(check_law("module_star", m, tuples, star_compatible,
                                 lambda a, x: [dn(a), fn(x)]))
    return results


def verify_module_action(action: ModuleAction, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
    """Left-module laws only: (ab)·x = a·(b·x) and 1·x = x."""
    D = action.acting.base
    X = action.space
    dn, xn = D.render_label, X.render_label
    results = []
    m, tuples = mode.schedule([D.labels, D.labels, X.labels], salt="action-assoc")
    results.append(check_law(
        "action_associativity", m, tuples,
        lambda a, b, x: action.act(D.mul(D.element(a), D.element(b)), X.element(x))
        == action.act(D.element(a), action.act(D.element(b), X.element(x))),
        lambda a, b, x: [dn(a), dn(b), xn(x)]))
    d_unit = D.unit()
    m, tuples = mode.schedule([X.labels], salt="action-unit")
    results.append(check_law(
        "action_unit", m, tuples,
        lambda x: action.act(d_unit, X.element(x)) == X.element(x),
        lambda x: [xn(x)]))
    return results


def all_passed(results: Sequence[LawResult]) -> bool:
    return all(r.passed for r in results)
