"""
Twisting maps, twisted tensor products and the iterated algebras A_{n,m}.

A twisting map R: B⊗A → A⊗B is stored as a rule on basis pairs (b, a)
returning terms over pair labels (a', b'). The factor of index i is the
group algebra of H for even i and the function algebra on G for odd i.
"""

import itertools
import logging
from typing import Callable, Dict, List, Optional, Tuple

from app.core.algebra import FunctionAlgebra, GroupAlgebra, StructureAlgebra, Terms
from app.core.double import build_double
from app.core.elements import AlgebraElement, Label
from app.core.errors import HexagonError, WindowError
from app.core.groups import FiniteGroup, Subgroup
from app.core.hopf import DualHopf, GroupHopf, ModuleAction, arrow_on_dual, arrow_on_group
from app.core.linalg import span_rank
from app.core.scalars import ONE
from app.core.verify import (LawRecorder, LawResult, VerifyMode, check_law,
                             verify_module_action)

logger = logging.getLogger(__name__)


def _acc(target: Dict, key, value):
    if key in target:
        target[key] = target[key] + value
    else:
        target[key] = value


def _clean(terms: Dict) -> Dict:
    return {k: v for k, v in terms.items() if v}


class TwistingMap:
    """
    Linear R: B⊗A → A⊗B given on basis pairs.

    source_right is A, source_left is B. When built from a module action the
    action is kept so verification can precheck the module laws.
    """

    def __init__(self, source_right: StructureAlgebra, source_left: StructureAlgebra,
                 rule: Callable[[Label, Label], Terms], name: str = "R",
                 action: Optional[ModuleAction] = None):
        self.source_right = source_right
        self.source_left = source_left
        self.rule = rule
        self.name = name
        self.action = action
        self._cache: Dict = {}

    def apply_basis(self, b: Label, a: Label) -> Terms:
        key = (b, a)
        cached = self._cache.get(key)
        if cached is None:
            cached = self.rule(b, a)
            self._cache[key] = cached
        return cached

    def apply_terms(self, terms: Dict) -> Dict:
        """Apply to a linear combination over (b, a) labels."""
        out: Dict = {}
        for (b, a), c in terms.items():
            for pair, v in self.apply_basis(b, a).items():
                _acc(out, pair, c * v)
        return _clean(out)

    def __repr__(self):
        return f"<TwistingMap {self.name}: {self.source_left.name}(x){self.source_right.name}>"


def flip_map(A: StructureAlgebra, B: StructureAlgebra, name: str = "flip") -> TwistingMap:
    return TwistingMap(A, B, lambda b, a: {(a, b): ONE}, name)


class TwistedTensorProduct(StructureAlgebra):
    """A⊗_R B with (a⊗b)(a'⊗b') = a·R(b⊗a')·b'."""

    has_star = False

    def __init__(self, A: StructureAlgebra, B: StructureAlgebra, R: TwistingMap,
                 name: Optional[str] = None):
        super().__init__()
        self.A = A
        self.B = B
        self.R = R
        self.name = name or f"{A.name}#{B.name}"

    def enumerate_labels(self):
        return [(a, b) for a in self.A.labels for b in self.B.labels]

    def basis_product(self, x, y):
        (a, b), (a2, b2) = x, y
        out: Dict = {}
        for (ar, br), c in self.R.apply_basis(b, a2).items():
            for p, d in self.A.product_terms(a, ar).items():
                for q, f in self.B.product_terms(br, b2).items():
                    _acc(out, (p, q), c * d * f)
        return _clean(out)

    def unit_terms(self):
        return {(a, b): c * d for a, c in self.A.unit_terms().items()
                for b, d in self.B.unit_terms().items()}

    def render_label(self, label):
        return f"{self.A.render_label(label[0])} # {self.B.render_label(label[1])}"


def verify_twisting_map(R: TwistingMap, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
    """
    Unit absorption and the two multiplicativity conditions of a twisting map.

    R(b⊗aa') = (m_A⊗id)(id⊗R)(R⊗id)(b⊗a⊗a') and
    R(bb'⊗a) = (id⊗m_B)(R⊗id)(id⊗R)(b⊗b'⊗a). A map that came from a module
    action first has its module laws checked.
    """
    A, B = R.source_right, R.source_left
    an, bn = A.render_label, B.render_label
    results: List[LawResult] = []
    if R.action is not None:
        results.extend(verify_module_action(R.action, mode))

    def cond_a(b, a, a2):
        lhs: Dict = {}
        for p, c in A.product_terms(a, a2).items():
            for pair, v in R.apply_basis(b, p).items():
                _acc(lhs, pair, c * v)
        rhs: Dict = {}
        for (a1, b1), c1 in R.apply_basis(b, a).items():
            for (a3, b2), c2 in R.apply_basis(b1, a2).items():
                for p, c3 in A.product_terms(a1, a3).items():
                    _acc(rhs, (p, b2), c1 * c2 * c3)
        return _clean(lhs) == _clean(rhs)

    m, tuples = mode.schedule([B.labels, A.labels, A.labels], salt="twist-a")
    results.append(check_law("twist_multiplication_right", m, tuples, cond_a,
                             lambda b, a, a2: [bn(b), an(a), an(a2)]))

    def cond_b(b, b2, a):
        lhs: Dict = {}
        for q, c in B.product_terms(b, b2).items():
            for pair, v in R.apply_basis(q, a).items():
                _acc(lhs, pair, c * v)
        rhs: Dict = {}
        for (a1, b1), c1 in R.apply_basis(b2, a).items():
            for (a3, b3), c2 in R.apply_basis(b, a1).items():
                for q, c3 in B.product_terms(b3, b1).items():
                    _acc(rhs, (a3, q), c1 * c2 * c3)
        return _clean(lhs) == _clean(rhs)

    m, tuples = mode.schedule([B.labels, B.labels, A.labels], salt="twist-b")
    results.append(check_law("twist_multiplication_left", m, tuples, cond_b,
                             lambda b, b2, a: [bn(b), bn(b2), an(a)]))

    a_unit = A.unit_terms()
    b_unit = B.unit_terms()
    results.append(check_law(
        "twist_unit_right", "exhaustive", [(b,) for b in B.labels],
        lambda b: R.apply_terms({(b, u): c for u, c in a_unit.items()})
        == _clean({(u, b): c for u, c in a_unit.items()}),
        lambda b: [bn(b)]))
    results.append(check_law(
        "twist_unit_left", "exhaustive", [(a,) for a in A.labels],
        lambda a: R.apply_terms({(u, a): c for u, c in b_unit.items()})
        == _clean({(a, u): c for u, c in b_unit.items()}),
        lambda a: [an(a)]))
    return results


def hexagon_sides(R_ij: TwistingMap, R_jk: TwistingMap, R_ik: TwistingMap,
                  c: Label, b: Label, a: Label) -> Tuple[Dict, Dict]:
    """Both sides of the hexagon on c⊗b⊗a, as terms over (a, b, c)."""
    left: Dict = {}
    for (a1, b1), x in R_ij.apply_basis(b, a).items():
        for (a2, c1), y in R_ik.apply_basis(c, a1).items():
            for (b2, c2), z in R_jk.apply_basis(c1, b1).items():
                _acc(left, (a2, b2, c2), x * y * z)
    right: Dict = {}
    for (b1, c1), x in R_jk.apply_basis(c, b).items():
        for (a1, c2), y in R_ik.apply_basis(c1, a).items():
            for (a2, b2), z in R_ij.apply_basis(b1, a1).items():
                _acc(right, (a2, b2, c2), x * y * z)
    return _clean(left), _clean(right)


def verify_hexagon(R_ij: TwistingMap, R_jk: TwistingMap, R_ik: TwistingMap,
                   mode: VerifyMode = VerifyMode()) -> LawResult:
    """
    (id⊗R_jk)(R_ik⊗id)(id⊗R_ij) = (R_ij⊗id)(id⊗R_ik)(R_jk⊗id) on A_k⊗A_j⊗A_i.
    """
    A_i, A_j, A_k = R_ij.source_right, R_ij.source_left, R_jk.source_left
    m, tuples = mode.schedule([A_k.labels, A_j.labels, A_i.labels], salt="hexagon")

    def holds(c, b, a):
        left, right = hexagon_sides(R_ij, R_jk, R_ik, c, b, a)
        return left == right

    return check_law(f"hexagon[{R_ij.name},{R_jk.name},{R_ik.name}]", m, tuples, holds,
                     lambda c, b, a: [A_k.render_label(c), A_j.render_label(b),
                                      A_i.render_label(a)])


# ---------------------------------------------------------------------------
# The standard twist family
# ---------------------------------------------------------------------------

class TwistFamily:
    """Factor algebras A_i and the standard twists R_{i,j} for one (G, H)."""

    def __init__(self, G: FiniteGroup, H: Subgroup):
        self.group = G
        self.subgroup = H
        self._factors: Dict[int, StructureAlgebra] = {}
        self._twists: Dict[Tuple[int, int], TwistingMap] = {}

    def factor(self, i: int) -> StructureAlgebra:
        if i not in self._factors:
            if i % 2 == 0:
                self._factors[i] = GroupAlgebra(self.group, self.subgroup, name=f"A{i}")
            else:
                self._factors[i] = FunctionAlgebra(self.group, None, name=f"A{i}")
        return self._factors[i]

    def dimension(self, i: int) -> int:
        return self.subgroup.order if i % 2 == 0 else self.group.order

    def twist(self, i: int, j: int) -> TwistingMap:
        """R_{i,j}: A_j⊗A_i → A_i⊗A_j for i < j."""
        if i >= j:
            raise WindowError(f"Twist R_{i},{j} needs i < j")
        key = (i, j)
        if key in self._twists:
            return self._twists[key]
        G = self.group
        A, B = self.factor(i), self.factor(j)
        name = f"R{i},{j}"
        if j - i >= 2:
            R = flip_map(A, B, name)
        elif i % 2 == 0:
            # δ_g ⊗ h ↦ h ⊗ δ_{h^-1 g}
            R = TwistingMap(A, B, lambda g, h: {(h, G.mul(G.inv(h), g)): ONE}, name)
        else:
            # h ⊗ δ_g ↦ δ_{g h^-1} ⊗ h
            R = TwistingMap(A, B, lambda h, g: {(G.mul(g, G.inv(h)), h): ONE}, name)
        self._twists[key] = R
        return R


def standard_twists(G: FiniteGroup, H: Subgroup) -> TwistFamily:
    """
    The standard twist family for (G, H).

    Raises:
        SubgroupError: If H is not normal in G
    """
    H.require_normal()
    return TwistFamily(G, H)


def arrow_twists(G: FiniteGroup, H: Subgroup) -> Tuple[Callable, Callable]:
    """
    Adjacent twists rebuilt from coproducts and the pairing arrows.

    Returns:
        (even rule for R_{2n,2n+1}, odd rule for R_{2n-1,2n}), each mapping
        a basis pair (b, a) to terms over (a', b')
    """
    dual = DualHopf(G)
    group = GroupHopf(G, H)

    def even_rule(g, h):
        out: Dict = {}
        for (g1, g2), c in dual.basis_comul(g).items():
            for h2, d in arrow_on_group(group, g1, h).items():
                _acc(out, (h2, g2), c * d)
        return _clean(out)

    def odd_rule(h, g):
        out: Dict = {}
        for (h1, h2), c in group.basis_comul(h).items():
            for g2, d in arrow_on_dual(dual, h1, g).items():
                _acc(out, (g2, h2), c * d)
        return _clean(out)

    return even_rule, odd_rule


def verify_arrow_twists(family: TwistFamily) -> LawResult:
    """The arrow-built adjacent twists agree with the closed forms."""
    even_rule, odd_rule = arrow_twists(family.group, family.subgroup)
    law = LawRecorder("arrow_twists_match", "exhaustive")
    for (i, j), rule in (((0, 1), even_rule), ((1, 2), odd_rule)):
        R = family.twist(i, j)
        B, A = R.source_left, R.source_right
        for b in B.labels:
            for a in A.labels:
                law.record(rule(b, a) == R.apply_basis(b, a),
                           lambda b=b, a=a, R=R: [R.name, B.render_label(b), A.render_label(a)])
    return law.done()


def compose_left(R_ij: TwistingMap, R_jk: TwistingMap, R_ik: TwistingMap) -> TwistingMap:
    """T1 = (id⊗R_jk)(R_ik⊗id): A_k⊗(A_i⊗A_j) → (A_i⊗A_j)⊗A_k."""
    inner = TwistedTensorProduct(R_ij.source_right, R_ij.source_left, R_ij)

    def rule(c, ab):
        a, b = ab
        out: Dict = {}
        for (a1, c1), x in R_ik.apply_basis(c, a).items():
            for (b1, c2), y in R_jk.apply_basis(c1, b).items():
                _acc(out, ((a1, b1), c2), x * y)
        return _clean(out)

    return TwistingMap(inner, R_jk.source_left, rule, f"T1[{R_ij.name},{R_jk.name},{R_ik.name}]")


def compose_right(R_ij: TwistingMap, R_jk: TwistingMap, R_ik: TwistingMap) -> TwistingMap:
    """T2 = (R_ij⊗id)(id⊗R_ik): (A_j⊗A_k)⊗A_i → A_i⊗(A_j⊗A_k)."""
    inner = TwistedTensorProduct(R_jk.source_right, R_jk.source_left, R_jk)

    def rule(bc, a):
        b, c = bc
        out: Dict = {}
        for (a1, c1), x in R_ik.apply_basis(c, a).items():
            for (a2, b1), y in R_ij.apply_basis(b, a1).items():
                _acc(out, (a2, (b1, c1)), x * y)
        return _clean(out)

    return TwistingMap(R_ij.source_right, inner, rule, f"T2[{R_ij.name},{R_jk.name},{R_ik.name}]")


def nested_products(family: TwistFamily, n: int) -> Tuple[TwistedTensorProduct, TwistedTensorProduct]:
    """Left- and right-nested three-factor products on factors n, n+1, n+2."""
    i, j, k = n, n + 1, n + 2
    R_ij, R_jk, R_ik = family.twist(i, j), family.twist(j, k), family.twist(i, k)
    T1 = compose_left(R_ij, R_jk, R_ik)
    T2 = compose_right(R_ij, R_jk, R_ik)
    left = TwistedTensorProduct(T1.source_right, family.factor(k), T1, name=f"(A{i}A{j})A{k}")
    right = TwistedTensorProduct(family.factor(i), T2.source_left, T2, name=f"A{i}(A{j}A{k})")
    return left, right


# ---------------------------------------------------------------------------
# Iterated products
# ---------------------------------------------------------------------------

class IteratedAlgebra(StructureAlgebra):
    """
    A_{n,m} over tuple labels (x_n, ..., x_m).

    Products concatenate both words and bubble the result into ascending
    factor order through the twists, always resolving the rightmost
    inversion first, then multiply equal-index neighbours.
    """

    def __init__(self, family: TwistFamily, n: int, m: int):
        super().__init__()
        if n > m:
            raise WindowError(f"Empty factor window [{n},{m}]")
        self.family = family
        self.n = n
        self.m = m
        self.indices = tuple(range(n, m + 1))
        self.factors = [family.factor(i) for i in self.indices]
        self.name = f"A[{n},{m}]({family.subgroup.label};{family.group.label})"

    @property
    def window(self) -> Tuple[int, int]:
        return self.n, self.m

    def enumerate_labels(self):
        return list(itertools.product(*(f.labels for f in self.factors)))

    def expected_dimension(self) -> int:
        dim = 1
        for i in self.indices:
            dim *= self.family.dimension(i)
        return dim

    def reorder(self, word: Tuple[Tuple[int, Label], ...]) -> Dict:
        """Sort a word of (index, label) letters into ascending index order."""
        done: Dict = {}
        pending = {word: ONE}
        while pending:
            current, coeff = pending.popitem()
            pos = None
            for p in range(len(current) - 2, -1, -1):
                if current[p][0] > current[p + 1][0]:
                    pos = p
                    break
            if pos is None:
                _acc(done, current, coeff)
                continue
            (j, b), (i, a) = current[pos], current[pos + 1]
            for (a1, b1), c in self.family.twist(i, j).apply_basis(b, a).items():
                nxt = current[:pos] + ((i, a1), (j, b1)) + current[pos + 2:]
                _acc(pending, nxt, coeff * c)
        return _clean(done)

    def basis_product(self, x, y):
        word = tuple(zip(self.indices, x)) + tuple(zip(self.indices, y))
        out: Dict = {}
        for sorted_word, coeff in self.reorder(word).items():
            slot_terms = []
            for k in range(len(self.indices)):
                left, right = sorted_word[2 * k][1], sorted_word[2 * k + 1][1]
                terms = self.factors[k].product_terms(left, right)
                if not terms:
                    break
                slot_terms.append(list(terms.items()))
            else:
                for combo in itertools.product(*slot_terms):
                    c = coeff
                    for _, v in combo:
                        c = c * v
                    _acc(out, tuple(label for label, _ in combo), c)
        return _clean(out)

    def unit_terms(self):
        slots = [list(f.unit_terms().items()) for f in self.factors]
        out = {}
        for combo in itertools.product(*slots):
            c = ONE
            for _, v in combo:
                c = c * v
            out[tuple(label for label, _ in combo)] = c
        return out

    def basis_star(self, x):
        """Even slots h ↦ h^-1; odd slots δ_g ↦ δ_{h_L g h_R} with original neighbours."""
        G = self.family.group
        e = G.identity
        out = []
        for k, i in enumerate(self.indices):
            if i % 2 == 0:
                out.append(G.inv(x[k]))
            else:
                left = x[k - 1] if k > 0 else e
                right = x[k + 1] if k + 1 < len(x) else e
                out.append(G.mul(G.mul(left, x[k]), right))
        return {tuple(out): ONE}

    def render_label(self, label):
        return " (x) ".join(f.render_label(x) for f, x in zip(self.factors, label))


def build_iterated(G: FiniteGroup, H: Subgroup, n: int, m: int,
                   family: Optional[TwistFamily] = None, check_hexagon: bool = True) -> IteratedAlgebra:
    """
    Construct A_{n,m}.

    Raises:
        WindowError: If n > m
        HexagonError: If some triple of twists in the window fails the hexagon
    """
    family = family or standard_twists(G, H)
    if n > m:
        raise WindowError(f"Empty factor window [{n},{m}]")
    if check_hexagon:
        for i, j, k in itertools.combinations(range(n, m + 1), 3):
            result = verify_hexagon(family.twist(i, j), family.twist(j, k), family.twist(i, k),
                                    VerifyMode(kind="exhaustive"))
            if not result.passed:
                raise HexagonError(f"Hexagon fails for factors ({i},{j},{k}): {result.failures[0]}",
                                   triple=(i, j, k))
    algebra = IteratedAlgebra(family, n, m)
    logger.info("Built %s of dimension %d", algebra.name, algebra.expected_dimension())
    return algebra


def verify_bracketing(family: TwistFamily, n: int) -> LawResult:
    """Left- and right-nested products on factors n..n+2 agree with the flat product."""
    flat = IteratedAlgebra(family, n, n + 2)
    left, right = nested_products(family, n)
    law = LawRecorder(f"bracketing[{n},{n + 2}]", "exhaustive")
    for x in flat.labels:
        for y in flat.labels:
            expected = flat.basis_product(x, y)
            lhs = left.basis_product(((x[0], x[1]), x[2]), ((y[0], y[1]), y[2]))
            rhs = right.basis_product((x[0], (x[1], x[2])), (y[0], (y[1], y[2])))
            lhs_flat = {(a, b, c): v for ((a, b), c), v in lhs.items()}
            rhs_flat = {(a, b, c): v for (a, (b, c)), v in rhs.items()}
            law.record(lhs_flat == expected and rhs_flat == expected,
                       lambda x=x, y=y: [flat.render_label(x), flat.render_label(y)])
    return law.done()


# ---------------------------------------------------------------------------
# Window embeddings
# ---------------------------------------------------------------------------

class WindowEmbedding:
    """Unit padding A_{n',m'} → A_{n,m}."""

    def __init__(self, inner: IteratedAlgebra, outer: IteratedAlgebra):
        if inner.family.group is not outer.family.group or \
                inner.family.subgroup.members != outer.family.subgroup.members:
            raise WindowError("Embedding requires the same (G, H)")
        if not (outer.n <= inner.n <= inner.m <= outer.m):
            raise WindowError(f"Window [{inner.n},{inner.m}] is not inside [{outer.n},{outer.m}]")
        self.inner = inner
        self.outer = outer
        G = outer.family.group
        self._pads = {}
        for i in outer.indices:
            if inner.n <= i <= inner.m:
                continue
            self._pads[i] = [G.identity] if i % 2 == 0 else list(G.elements)

    def apply_label(self, label: Tuple) -> AlgebraElement:
        slots = []
        for i in self.outer.indices:
            if i in self._pads:
                slots.append(self._pads[i])
            else:
                slots.append([label[i - self.inner.n]])
        return self.outer.from_terms({t: ONE for t in itertools.product(*slots)})

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        out: Dict = {}
        for label, c in x.coeffs.items():
            for t, v in self.apply_label(label).coeffs.items():
                _acc(out, t, c * v)
        return self.outer.from_terms(_clean(out))

    def verify(self, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
        """Unital, multiplicative, star-preserving and injective."""
        inner, outer = self.inner, self.outer
        el = inner.element
        names = inner.render_label
        results = [check_law("embedding_unital", "exhaustive", [()],
                             lambda: self.apply(inner.unit()) == outer.unit(), lambda: ["1"])]
        m, tuples = mode.schedule([inner.labels] * 2, salt="embed-mult")
        results.append(check_law(
            "embedding_multiplicative", m, tuples,
            lambda a, b: self.apply(inner.mul(el(a), el(b)))
            == outer.mul(self.apply_label(a), self.apply_label(b)),
            lambda a, b: [names(a), names(b)]))
        results.append(check_law(
            "embedding_star", "exhaustive", [(a,) for a in inner.labels],
            lambda a: self.apply(inner.star(el(a))) == outer.star(self.apply_label(a)),
            lambda a: [names(a)]))
        rank = span_rank([self.apply_label(a) for a in inner.labels])
        injective = LawRecorder("embedding_injective", "exhaustive")
        injective.record(rank == inner.dimension, lambda: [f"rank {rank} != {inner.dimension}"])
        results.append(injective.done())
        return results


def embed_window(inner: IteratedAlgebra, outer: IteratedAlgebra) -> WindowEmbedding:
    return WindowEmbedding(inner, outer)


def verify_embedding_tower(inner: IteratedAlgebra, middle: IteratedAlgebra,
                           outer: IteratedAlgebra) -> LawResult:
    """Embedding inner→middle→outer equals the direct embedding."""
    first, second = embed_window(inner, middle), embed_window(middle, outer)
    direct = embed_window(inner, outer)
    return check_law("embedding_composition", "exhaustive", [(a,) for a in inner.labels],
                     lambda a: second.apply(first.apply_label(a)) == direct.apply_label(a),
                     lambda a: [inner.render_label(a)])


# ---------------------------------------------------------------------------
# Actions, smash products and the non-action control
# ---------------------------------------------------------------------------

def twist_from_action(action: ModuleAction) -> TwistingMap:
    """R(m⊗b) = Σ (m(1)·b) ⊗ m(2), from M⊗B to B⊗M."""
    Hf = action.acting
    B = action.space

    def rule(m, b):
        out: Dict = {}
        for (m1, m2), c in Hf.basis_comul(m).items():
            for b1, d in action.act_basis(m1, b).items():
                _acc(out, (b1, m2), c * d)
        return _clean(out)

    return TwistingMap(B, Hf.base, rule, f"R[{action.name}]", action=action)


class SmashProduct(StructureAlgebra):
    """B # M with (a#m)(b#n) = Σ a(m(1)·b) # m(2)n."""

    has_star = False

    def __init__(self, action: ModuleAction):
        super().__init__()
        self.action = action
        self.B = action.space
        self.M = action.acting.base
        self.name = f"{self.B.name}#{self.M.name}"

    def enumerate_labels(self):
        return [(b, m) for b in self.B.labels for m in self.M.labels]

    def basis_product(self, x, y):
        (a, m), (b, n) = x, y
        out: Dict = {}
        for (m1, m2), c in self.action.acting.basis_comul(m).items():
            for b1, d in self.action.act_basis(m1, b).items():
                for p, f in self.B.product_terms(a, b1).items():
                    for q, k in self.M.product_terms(m2, n).items():
                        _acc(out, (p, q), c * d * f * k)
        return _clean(out)

    def unit_terms(self):
        return {(a, b): c * d for a, c in self.B.unit_terms().items()
                for b, d in self.M.unit_terms().items()}

    def render_label(self, label):
        return f"{self.B.render_label(label[0])} # {self.M.render_label(label[1])}"


def conjugation_module(G: FiniteGroup, H: Subgroup) -> ModuleAction:
    """D(H;G) acting on the group algebra of H by (h,g)·t = [h = g t g^-1] g t g^-1."""
    D = build_double(G, H)
    B = GroupAlgebra(G, H)

    def act(a, t):
        h, g = a
        image = G.mul(G.mul(g, t), G.inv(g))
        return {image: ONE} if image == h else {}

    return ModuleAction(D, B, act, name="conjugation")


def compare_structure_constants(first: StructureAlgebra, second: StructureAlgebra,
                                law: str = "structure_constants_equal") -> LawResult:
    """Same labels, same products on every basis pair."""
    recorder = LawRecorder(law, "exhaustive")
    recorder.record(first.labels == second.labels, lambda: ["label sets differ"])
    for x in first.labels:
        for y in first.labels:
            recorder.record(first.basis_product(x, y) == second.basis_product(x, y),
                            lambda x=x, y=y: [first.render_label(x), first.render_label(y)])
    return recorder.done()


def phi_action(G: FiniteGroup, H: Subgroup) -> ModuleAction:
    """
    CG on functions on H by φ_g(δ_h) = δ_{h g^-1} for g in H, else 0.

    Not a module action when H is a proper subgroup.
    """
    acting = GroupHopf(G)
    space = FunctionAlgebra(G, H, name=f"C({H.label})")
    members = set(H.members)

    def act(g, h):
        if g not in members:
            return {}
        return {G.mul(h, G.inv(g)): ONE}

    return ModuleAction(acting, space, act, name="phi")
