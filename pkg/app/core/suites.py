"""
Verification suites and the batch driver behind the `verify` command.

Suites run in a fixed order. A positive suite passes when every law holds;
the negative suite passes when every control fails as expected.
"""

import itertools
import logging
import time
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field
from tqdm import tqdm

from app import __version__
from app.core.algebra import GroupAlgebra, TableAlgebra
from app.core.double import build_double, integral_of
from app.core.errors import ConfigError, ResourceCapError, SubgroupError
from app.core.field import LatticeWindow, build_field, field_basis_size
from app.core.groups import (FiniteGroup, Subgroup, all_subgroups, build_group, check_group_axioms,
                             conjugate, parse_subgroup_spec, subgroup_closure)
from app.core.hopf import dual_hopf, group_hopf
from app.core.lattice import lattice_representation
from app.core.observable import (GammaAction, PhiMap, gamma_action, observable_span,
                                 project_z, project_z_via_double, verify_chain_formula,
                                 verify_inclusion_in_AG, verify_phi_tower, verify_span_fixed,
                                 verify_trivial_twist, verify_truncated_v, verify_vw_fixed,
                                 verify_vw_relations, verify_z_projection, vw_generators)
from app.core.representations import repr_pi
from app.core.twisted import (SmashProduct, TwistedTensorProduct, build_iterated,
                              compare_structure_constants, compose_left, compose_right,
                              conjugation_module, embed_window, phi_action, standard_twists,
                              twist_from_action, verify_arrow_twists, verify_bracketing,
                              verify_embedding_tower, verify_hexagon, verify_twisting_map)
from app.core.scalars import ONE
from app.core.verify import (LawRecorder, LawResult, VerifyMode, check_law, expect_failure,
                             verify_hopf, verify_module_algebra, verify_star_algebra)
from app.utils.validators import (validate_format, validate_group_spec, validate_mode,
                                  validate_suites, validate_window)

logger = logging.getLogger(__name__)

SUITES = ("group", "double", "hopf", "twist", "hexagon", "field", "action",
          "observable", "phi", "inclusion", "negative")
NEGATIVE_SUITES = ("negative",)
FIELD_SUITES = ("field", "action", "observable", "phi")

TYPO_NOTE = ("The printed relation list reads v_{h1}(x)v_{h1}(x) = v_{h1h2}(x); "
             "checked here as v_{h1}(x)v_{h2}(x) = v_{h1h2}(x).")


class RunConfig(BaseModel):
    """One verification run over a single (G, H, window) instance."""

    group: str
    subgroup: str = "all"
    window: Tuple[int, int] = (0, 1)
    suites: List[str] = Field(default_factory=lambda: list(SUITES))
    mode: str = "auto"
    format: str = "json"
    output: Optional[str] = None
    samples: int = 500
    seed: int = 20240101
    exhaustive_limit: int = 1_000_000
    max_group_order: int = 48
    max_basis: int = 100_000
    max_carrier: int = 4096
    timings: bool = False
    progress: bool = False

    @classmethod
    def create(cls, **values) -> "RunConfig":
        """
        Validate raw values and build a RunConfig.

        Raises:
            ConfigError: With the first validation message
        """
        window = values.get("window", (0, 1))
        if isinstance(window, str):
            is_valid, error = validate_window(window)
            if not is_valid:
                raise ConfigError(error)
            window = tuple(int(p) for p in window.split(","))
        values["window"] = tuple(window)
        if isinstance(values.get("suites"), str):
            values["suites"] = [s.strip() for s in values["suites"].split(",") if s.strip()]

        checks = (
            validate_group_spec(values.get("group", "")),
            validate_suites(values.get("suites", list(SUITES)), SUITES),
            validate_mode(values.get("mode", "auto")),
            validate_format(values.get("format", "json")),
        )
        for is_valid, error in checks:
            if not is_valid:
                raise ConfigError(error)
        lo, hi = values["window"]
        if lo > hi:
            raise ConfigError(f"Window start {lo} is after window end {hi}")
        # suites always run in the canonical order
        values["suites"] = [s for s in SUITES if s in values.get("suites", SUITES)]
        return cls(**values)

    def verify_mode(self) -> VerifyMode:
        return VerifyMode.parse(self.mode, samples=self.samples, seed=self.seed,
                                exhaustive_limit=self.exhaustive_limit)


class SuiteResult(BaseModel):
    suite: str
    expect: str = "pass"
    passed: bool = False
    laws: List[LawResult] = Field(default_factory=list)
    dimensions: Dict[str, int] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    seconds: Optional[float] = None


class SuiteReport(BaseModel):
    """Everything a renderer needs; top-level keys are the report schema."""

    version: str = __version__
    config: RunConfig
    suites: List[SuiteResult] = Field(default_factory=list)
    overall: bool = False

    @property
    def dimensions(self) -> Dict[str, int]:
        merged: Dict[str, int] = {}
        for suite in self.suites:
            merged.update(suite.dimensions)
        return merged


# ---------------------------------------------------------------------------
# Instance context
# ---------------------------------------------------------------------------

class RunContext:
    """Lazily built objects shared by the suites of one run."""

    def __init__(self, cfg: RunConfig, G: FiniteGroup, H: Subgroup):
        self.cfg = cfg
        self.G = G
        self.H = H
        self.mode = cfg.verify_mode()
        self.window = LatticeWindow(*cfg.window)
        self._field = None
        self._gamma = None
        self._space = None

    @property
    def field(self):
        if self._field is None:
            self._field = build_field(self.G, self.H, self.window, max_basis=self.cfg.max_basis)
        return self._field

    @property
    def gamma(self) -> GammaAction:
        if self._gamma is None:
            self._gamma = gamma_action(self.field)
        return self._gamma

    @property
    def space(self):
        if self._space is None:
            self._space = observable_span(self.field)
        return self._space


def _tag(results: List[LawResult], prefix: str) -> List[LawResult]:
    return [r.model_copy(update={"law": f"{prefix}.{r.law}"}) for r in results]


def _single(law: str, ok: bool, witness: List[str]) -> LawResult:
    recorder = LawRecorder(law, "exhaustive")
    recorder.record(ok, lambda: witness)
    return recorder.done()


# ---------------------------------------------------------------------------
# Positive suites
# ---------------------------------------------------------------------------

def suite_group(ctx: RunContext) -> SuiteResult:
    G, H = ctx.G, ctx.H
    violation = check_group_axioms(G.cayley)
    laws = [_single("group_axioms", violation is None,
                    [] if violation is None else [violation[0]] + [G.name(x) for x in violation[1]])]
    laws.append(_single("subgroup_closure_idempotent",
                        subgroup_closure(G, H.members).members == H.members, [H.label]))

    def normal_by_definition():
        return all(conjugate(G, g, h) in H for g in G.elements for h in H.members)

    laws.append(_single("normality_flag", H.normal == normal_by_definition(), [H.label]))
    laws.append(check_law(
        "conjugate_identity", "exhaustive", [(h,) for h in G.elements],
        lambda h: conjugate(G, G.identity, h) == h, lambda h: [G.name(h)]))
    return SuiteResult(suite="group", laws=laws,
                       dimensions={"group_order": G.order, "subgroup_order": H.order})


def suite_double(ctx: RunContext) -> SuiteResult:
    D = build_double(ctx.G, ctx.H)
    laws = verify_star_algebra(D.base, ctx.mode)
    laws += integral_of(D).verify()
    return SuiteResult(suite="double", laws=laws, dimensions={"double": D.base.dimension})


def suite_hopf(ctx: RunContext) -> SuiteResult:
    G = ctx.G
    D = build_double(G, ctx.H)
    laws = _tag(verify_hopf(D, ctx.mode), "double")
    laws += _tag(verify_hopf(group_hopf(G), ctx.mode), "group")
    laws += _tag(verify_hopf(dual_hopf(G), ctx.mode), "dual")
    return SuiteResult(suite="hopf", laws=laws)


def suite_twist(ctx: RunContext) -> SuiteResult:
    G, H, mode = ctx.G, ctx.H, ctx.mode
    lo, hi = ctx.cfg.window
    family = standard_twists(G, H)
    laws: List[LawResult] = []
    for i, j in itertools.combinations(range(2 * lo, 2 * hi + 1), 2):
        laws += _tag(verify_twisting_map(family.twist(i, j), mode), f"R[{i},{j}]")
    laws.append(verify_arrow_twists(family))

    R1, R2, R3 = family.twist(0, 1), family.twist(1, 2), family.twist(0, 2)
    laws += _tag(verify_twisting_map(compose_left(R1, R2, R3), mode), "T1")
    laws += _tag(verify_twisting_map(compose_right(R1, R2, R3), mode), "T2")

    module = conjugation_module(G, H)
    R = twist_from_action(module)
    laws += _tag(verify_twisting_map(R, mode), "conjugation")
    laws += _tag(verify_module_algebra(module, mode), "conjugation")
    laws.append(compare_structure_constants(
        TwistedTensorProduct(module.space, module.acting.base, R), SmashProduct(module),
        law="smash_product_matches_twisted_product"))

    iterated = build_iterated(G, H, 2 * lo, 2 * hi, family=family)
    laws += _tag(verify_star_algebra(iterated, mode), iterated.name)
    dims = {"iterated": iterated.dimension}
    outer = build_iterated(G, H, 2 * lo, 2 * hi + 1, family=family)
    laws += _tag(embed_window(iterated, outer).verify(mode), "embedding")
    if hi > lo:
        inner = build_iterated(G, H, 2 * lo, 2 * hi - 1, family=family)
        laws.append(verify_embedding_tower(inner, iterated, outer))

    for window in ((0, 2), (1, 3)):
        pi = repr_pi(window, G, H)
        laws += _tag(pi.verify(mode), f"pi{window[0]}{window[1]}")
        dims[f"pi_{window[0]}{window[1]}_rank"] = pi.rank()
    return SuiteResult(suite="twist", laws=laws, dimensions=dims)


def suite_hexagon(ctx: RunContext) -> SuiteResult:
    G, H = ctx.G, ctx.H
    lo, hi = ctx.cfg.window
    family = standard_twists(G, H)
    exhaustive = VerifyMode(kind="exhaustive")
    laws = []
    for i, j, k in itertools.combinations(range(2 * lo - 2, 2 * hi + 3), 3):
        laws.append(verify_hexagon(family.twist(i, j), family.twist(j, k), family.twist(i, k),
                                   exhaustive))
    laws.append(verify_bracketing(family, 0))
    laws.append(verify_bracketing(family, 1))
    return SuiteResult(suite="hexagon", laws=laws)


def suite_field(ctx: RunContext) -> SuiteResult:
    F = ctx.field
    mode = ctx.mode
    laws = verify_star_algebra(F, mode)

    m, tuples = mode.schedule([F.labels] * 2, salt="normal-order")

    def strategies_agree(a, b):
        word = F.word_of(a) + F.word_of(b)
        return F.normal_order(word, "left") == F.normal_order(word, "right")

    laws.append(check_law("normal_order_strategies_agree", m, tuples, strategies_agree,
                          lambda a, b: [F.render_label(a), F.render_label(b)]))
    laws.append(check_law(
        "normal_order_matches_product", m, mode.schedule([F.labels] * 2, salt="normal-mul")[1],
        lambda a, b: F.normal_order(F.word_of(a) + F.word_of(b))
        == F.mul(F.element(a), F.element(b)),
        lambda a, b: [F.render_label(a), F.render_label(b)]))

    dims = {"field": F.dimension}
    notes = []
    carrier = ctx.G.order ** (F.n_ints + 1)
    if carrier <= ctx.cfg.max_carrier:
        lattice = lattice_representation(F, ctx.cfg.max_carrier)
        laws += lattice.verify_relations()
        laws += lattice.verify_homomorphism(mode)
        rank = lattice.faithfulness_rank()
        laws.append(_single("lattice_faithful", rank == F.dimension,
                            [f"rank {rank}", f"dim {F.dimension}"]))
        dims["lattice_carrier"] = lattice.carrier
    else:
        notes.append(f"Lattice oracle skipped: carrier {carrier} exceeds {ctx.cfg.max_carrier}")
    return SuiteResult(suite="field", laws=laws, dimensions=dims, notes=notes)


def suite_action(ctx: RunContext) -> SuiteResult:
    F, gamma, mode = ctx.field, ctx.gamma, ctx.mode
    laws = verify_module_algebra(gamma, mode)
    laws.append(gamma.verify_closed_form(mode))
    sample = VerifyMode(kind=mode.kind, samples=min(mode.samples, 200), seed=mode.seed,
                        exhaustive_limit=mode.exhaustive_limit)
    m, tuples = sample.schedule([F.labels], salt="z-double")
    laws.append(check_law(
        "integral_projection_matches_double", m, tuples,
        lambda a: project_z(F, F.element(a)) == project_z_via_double(gamma, F.element(a)),
        lambda a: [F.render_label(a)]))
    laws += verify_z_projection(F, mode)
    return SuiteResult(suite="action", laws=laws)


def suite_observable(ctx: RunContext) -> SuiteResult:
    F = ctx.field
    vw = vw_generators(F)
    space = ctx.space
    laws = verify_vw_relations(vw)
    laws.append(verify_vw_fixed(vw))
    laws.append(verify_span_fixed(F, space.vw_span))
    laws.append(_single("vw_span_in_integral_image", space.inclusion,
                        [f"vw-span {len(space.vw_span)}", f"z-image {len(space.z_image)}"]))
    lo, hi = ctx.cfg.window
    expected = ctx.H.order ** (hi - lo + 1) * ctx.G.order ** (hi - lo)
    laws.append(_single("vw_span_dimension", len(space.vw_span) == expected,
                        [f"vw-span {len(space.vw_span)}", f"expected {expected}"]))
    laws += verify_trivial_twist(vw)

    notes = []
    G = ctx.G
    for n in (2, 3):
        size = G.order ** n * G.order ** (n + 1)
        if size > ctx.cfg.max_basis:
            notes.append(f"Chain formula for {n} sites skipped: field basis {size} over cap")
            continue
        laws.append(verify_chain_formula(G, n, max_basis=ctx.cfg.max_basis))
    return SuiteResult(suite="observable", laws=laws, dimensions=space.dimensions, notes=notes)


def suite_phi(ctx: RunContext) -> SuiteResult:
    G, H, F = ctx.G, ctx.H, ctx.field
    lo, hi = ctx.cfg.window
    iterated = build_iterated(G, H, 2 * lo, 2 * hi)
    phi = PhiMap(iterated, F)
    laws = phi.verify(ctx.mode, vw_span=ctx.space.vw_span)
    if hi > lo:
        inner_window = LatticeWindow(lo, hi - 1)
        inner = PhiMap(build_iterated(G, H, 2 * lo, 2 * hi - 2),
                       build_field(G, H, inner_window, max_basis=ctx.cfg.max_basis))
        laws.append(verify_phi_tower(inner, phi))
    return SuiteResult(suite="phi", laws=laws, notes=[TYPO_NOTE],
                       dimensions={"iterated": iterated.dimension})


def suite_inclusion(ctx: RunContext) -> SuiteResult:
    law, dims = verify_inclusion_in_AG(ctx.G, ctx.H, ctx.window, max_basis=ctx.cfg.max_basis)
    return SuiteResult(suite="inclusion", laws=[law], dimensions=dims)


# ---------------------------------------------------------------------------
# Negative controls
# ---------------------------------------------------------------------------

def _control(name: str, results: List[LawResult]) -> LawResult:
    """Fold a control's laws into one entry that fails when any law failed."""
    merged = LawResult(law=name, mode="exhaustive")
    for r in results:
        merged.checked += r.checked
        merged.failure_count += r.failure_count
        for witness in r.failures:
            if len(merged.failures) < 5:
                merged.failures.append([r.law] + witness)
    return merged


def non_normal_subgroup(G: FiniteGroup, H: Subgroup) -> Optional[Subgroup]:
    if not H.normal:
        return H
    for candidate in all_subgroups(G):
        if not candidate.normal:
            return candidate
    return None


def corrupted_group_algebra(G: FiniteGroup) -> TableAlgebra:
    """ℂG with e·a replaced by e for the first non-identity a."""
    a = next(g for g in G.elements if g != G.identity)
    table = TableAlgebra.snapshot(GroupAlgebra(G), name=f"C{G.label}")
    return table.corrupt(G.identity, a, {G.identity: ONE})


def suite_negative(ctx: RunContext) -> SuiteResult:
    G, H, mode = ctx.G, ctx.H, ctx.mode
    laws: List[LawResult] = []
    notes: List[str] = []

    if G.order > 1:
        laws.append(_control("corrupted_table_associativity",
                             [r for r in verify_star_algebra(corrupted_group_algebra(G), mode)
                              if r.law == "associativity"]))

    K = non_normal_subgroup(G, H)
    if K is None:
        notes.append(f"{G.label} has no non-normal subgroup; non-normal controls skipped")
    else:
        D = build_double(G, K, force=True)
        laws.append(_control(f"non_normal_double[{K.label}]",
                             verify_star_algebra(D.base, mode) + verify_hopf(D, mode)))
        F = build_field(G, K, LatticeWindow(0, 0), max_basis=ctx.cfg.max_basis, force=True)
        laws.append(_control(f"non_normal_module_algebra[{K.label}]",
                             [r for r in verify_module_algebra(GammaAction(D, F), mode)
                              if r.law == "module_algebra"]))
        laws.append(_control(f"phi_not_an_action[{K.label}]",
                             verify_twisting_map(twist_from_action(phi_action(G, K)), mode)[:2]))

    if not (H.normal and H.order > 1):
        notes.append("Truncation control needs a nontrivial normal subgroup")
    elif field_basis_size(G, H, ctx.window) > ctx.cfg.max_basis:
        notes.append("Truncation control skipped: field window over the basis cap")
    else:
        laws.append(_control("truncated_v_invariance", [verify_truncated_v(vw_generators(ctx.field))]))

    passed = bool(laws) and all(expect_failure(r) for r in laws)
    return SuiteResult(suite="negative", expect="fail", laws=laws, notes=notes, passed=passed)


SUITE_RUNNERS: Dict[str, Callable[[RunContext], SuiteResult]] = {
    "group": suite_group,
    "double": suite_double,
    "hopf": suite_hopf,
    "twist": suite_twist,
    "hexagon": suite_hexagon,
    "field": suite_field,
    "action": suite_action,
    "observable": suite_observable,
    "phi": suite_phi,
    "inclusion": suite_inclusion,
    "negative": suite_negative,
}


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def prepare_instance(cfg: RunConfig) -> Tuple[FiniteGroup, Subgroup]:
    """
    Build (G, H) and enforce the run-level preconditions.

    Raises:
        ConfigError: For positive suites over a non-normal subgroup
        ResourceCapError: When a requested window exceeds the basis cap
    """
    G = build_group(cfg.group, max_order=cfg.max_group_order)
    H = parse_subgroup_spec(G, cfg.subgroup)
    positive = [s for s in cfg.suites if s not in NEGATIVE_SUITES]
    if positive and not H.normal:
        try:
            H.require_normal()
        except SubgroupError as e:
            raise ConfigError(f"{e}; only the negative suite accepts it") from e
    window = LatticeWindow(*cfg.window)
    if any(s in cfg.suites for s in FIELD_SUITES):
        size = field_basis_size(G, H, window)
        if size > cfg.max_basis:
            raise ResourceCapError(
                f"Field window {window} for ({G.label}, {H.label}) needs an estimated "
                f"{size} basis monomials (cap {cfg.max_basis})")
    if "inclusion" in cfg.suites:
        whole = subgroup_closure(G, G.elements, G.label)
        size = field_basis_size(G, whole, window)
        if size > cfg.max_basis:
            raise ResourceCapError(
                f"Inclusion check on {window} needs F over {G.label} with an estimated "
                f"{size} basis monomials (cap {cfg.max_basis})")
    return G, H


def run_suite(cfg: RunConfig) -> SuiteReport:
    """Execute the configured suites in canonical order."""
    G, H = prepare_instance(cfg)
    ctx = RunContext(cfg, G, H)
    report = SuiteReport(config=cfg)
    logger.info("Verifying (%s, %s) on window %s: %s", G.label, H.label, ctx.window,
                ", ".join(cfg.suites))
    for name in tqdm(cfg.suites, desc=f"{G.label}/{H.label}", disable=not cfg.progress):
        started = time.perf_counter()
        result = SUITE_RUNNERS[name](ctx)
        if result.expect == "pass":
            result.passed = all(law.passed for law in result.laws)
        if cfg.timings:
            result.seconds = round(time.perf_counter() - started, 3)
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, "Suite %s: %s", name, "ok" if result.passed else "FAILED")
        report.suites.append(result)
    report.overall = all(s.passed for s in report.suites)
    return report
