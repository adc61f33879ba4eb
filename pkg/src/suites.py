"""
Acceptance suites.

Each suite builds its shapes, runs the exhaustive or seeded checks of one
area and returns CheckReports. `run_suites` collects them into a pandas
table (one row per check) that the CLI prints or writes as CSV. Complexes
built along the way are kept on the context so the serialization suite can
round-trip them.
"""

import itertools
import logging
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Union

import networkx as nx
import numpy as np
import pandas as pd

try:
    from .boxcat import INVOLUTIONS, compose, evaluate, generators_from, hom_set, involute, normal_forms
    from .category import (find_category_isomorphism, from_poset, nerve, poset_category, terminal_category,
                           walking_isomorphism)
    from .checks import CheckReport
    from .complex import (CubicalComplex, boundary, cube, inclusion_map, inner_open_box, is_isomorphic,
                          is_isomorphism, is_mono, k_complex, k_prime, materialize, open_box, point,
                          subcomplex, three_out_of_four)
    from .cone import (CONE_KINDS, check_f_bar, cone, cone_edge_check, cone_face_degeneracy_check,
                       cosimplicial_identity_check, counit, decomposition_check, f_naturality,
                       face_condition_check, face_iso_check, kind_coherence_check, monad_law_check,
                       q_full_faithfulness_check, q_functor, q_horn_image, q_stand_form_check, sa1_check,
                       standard_cone)
    from .config import get_setting
    from .errors import CubikError
    from .logger import get_logger
    from .quasicat import (ho, either_direction_check, homotopy_relation_check, int_map_check,
                           is_quasicategory_up_to, mapping_involution_check, mapping_space, suspension,
                           suspension_adjunction_check)
    from .serialization import complex_from_text, complex_to_text, simplicial_from_text, simplicial_to_text
    from .simplex import SimplicialComplex, horn, j_complex, simplex, simplex_boundary
    from .tensor import associator, involution_isomorphism, product, pushout_product
    from .theta import counit_step_check, filtration_base_check, verify_theta
    from .triangulation import (PosetMapFG, triangulate, triangulation_preserves_mono,
                                triangulation_product_check)
except ImportError:
    from boxcat import INVOLUTIONS, compose, evaluate, generators_from, hom_set, involute, normal_forms
    from category import (find_category_isomorphism, from_poset, nerve, poset_category, terminal_category,
                          walking_isomorphism)
    from checks import CheckReport
    from complex import (CubicalComplex, boundary, cube, inclusion_map, inner_open_box, is_isomorphic,
                         is_isomorphism, is_mono, k_complex, k_prime, materialize, open_box, point,
                         subcomplex, three_out_of_four)
    from cone import (CONE_KINDS, check_f_bar, cone, cone_edge_check, cone_face_degeneracy_check,
                      cosimplicial_identity_check, counit, decomposition_check, f_naturality,
                      face_condition_check, face_iso_check, kind_coherence_check, monad_law_check,
                      q_full_faithfulness_check, q_functor, q_horn_image, q_stand_form_check, sa1_check,
                      standard_cone)
    from config import get_setting
    from errors import CubikError
    from logger import get_logger
    from quasicat import (ho, either_direction_check, homotopy_relation_check, int_map_check,
                          is_quasicategory_up_to, mapping_involution_check, mapping_space, suspension,
                          suspension_adjunction_check)
    from serialization import complex_from_text, complex_to_text, simplicial_from_text, simplicial_to_text
    from simplex import SimplicialComplex, horn, j_complex, simplex, simplex_boundary
    from tensor import associator, involution_isomorphism, product, pushout_product
    from theta import counit_step_check, filtration_base_check, verify_theta
    from triangulation import (PosetMapFG, triangulate, triangulation_preserves_mono,
                               triangulation_product_check)

logger = logging.getLogger(__name__)

AnyComplex = Union[CubicalComplex, SimplicialComplex]

SUMMARY_COLUMNS = ["suite", "check", "checked", "failed", "ok", "first_witness"]


@dataclass
class SuiteContext:
    """Settings shared by the suites of one run."""

    seed: int
    trials: int
    nerve_bound: int
    theta_bound: int
    budget: Optional[int] = None
    mono_trials: int = 100
    produced: List[AnyComplex] = field(default_factory=list)

    @classmethod
    def from_config(cls, seed: Optional[int] = None, budget: Optional[int] = None) -> "SuiteContext":
        return cls(
            seed=get_setting('suites', 'seed', 0) if seed is None else seed,
            trials=get_setting('suites', 'random_trials', 25),
            nerve_bound=get_setting('suites', 'nerve_bound', 3),
            theta_bound=get_setting('suites', 'theta_bound', 4),
            budget=budget,
            mono_trials=get_setting('suites', 'mono_trials', 100),
        )

    def keep(self, *complexes: AnyComplex) -> None:
        self.produced.extend(complexes)

    def rng(self, offset: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)

    def attempt(self, name: str, check: Callable[..., Union[CheckReport, Sequence[CheckReport]]],
                *args, **kwargs) -> List[CheckReport]:
        """Run one check; a CubikError becomes a failed report and the suite goes on."""
        try:
            outcome = check(*args, **kwargs)
        except CubikError as e:
            logger.warning(f"check {name} raised {type(e).__name__}: {e}")
            return [error_report(name, e)]
        return [outcome] if isinstance(outcome, CheckReport) else list(outcome)


def error_report(name: str, error: Exception) -> CheckReport:
    report = CheckReport(name, parameters={"error": type(error).__name__})
    report.record(False, f"{type(error).__name__}: {error}")
    return report


@dataclass
class SuiteResult:
    name: str
    reports: List[CheckReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)


def _truth(name: str, passed: bool, witness: Optional[str] = None, **parameters) -> CheckReport:
    report = CheckReport(name, parameters=parameters)
    report.record(passed, witness or name)
    return report


def _count(X: AnyComplex, k: int) -> int:
    counts = X.counts()
    return counts[k] if k < len(counts) else 0


# Box category -----------------------------------------------------------

def generator_pair_check(max_dim: int = 5) -> CheckReport:
    """compose agrees with composition of vertex functions on every pair of generators."""
    report = CheckReport("generator_pairs", parameters={"max_dim": max_dim})
    for d in range(max_dim + 1):
        for g1 in generators_from(d, max_dim):
            f = g1.to_operator()
            for g2 in generators_from(g1.cod, max_dim):
                g = g2.to_operator()
                report.record(evaluate(compose(g, f)) == evaluate(f).then(evaluate(g)), f"{g2} ∘ {g1}")
    return report


def normal_form_check(max_dim: int = 4) -> CheckReport:
    """The closure enumeration of each hom-set equals the syntactic normal forms."""
    report = CheckReport("normal_forms", parameters={"max_dim": max_dim})
    for m in range(max_dim + 1):
        for n in range(max_dim + 1):
            try:
                closure = hom_set(m, n)
            except CubikError as e:
                report.record(False, f"({m},{n}): {e}")
                continue
            syntactic = normal_forms(m, n)
            report.record(closure == syntactic, f"({m},{n}): {len(closure)} vs {len(syntactic)}")
            functions = {evaluate(f) for f in syntactic}
            report.record(len(functions) == len(syntactic), f"({m},{n}): two forms share a vertex function")
            report.record(all(evaluate(f).is_monotone() for f in syntactic), f"({m},{n}): non-monotone form")
    return report


def hom_size_check() -> CheckReport:
    report = CheckReport("hom_sizes")
    report.record(len(hom_set(1, 1)) == 3, f"|hom(1,1)| = {len(hom_set(1, 1))}")
    report.record(len(hom_set(1, 2)) == 8, f"|hom(1,2)| = {len(hom_set(1, 2))}")
    return report


def involution_check(max_dim: int = 3) -> CheckReport:
    """co, coop and op are involutive functors on the enumerated hom-sets."""
    report = CheckReport("involutions", parameters={"max_dim": max_dim})
    dims = range(max_dim + 1)
    for kind in INVOLUTIONS:
        for m, n in itertools.product(dims, dims):
            for f in hom_set(m, n):
                report.record(involute(involute(f, kind), kind) == f, f"{kind}: {f}")
        for m, n, p in itertools.product(range(3), repeat=3):
            for f in hom_set(m, n):
                for g in hom_set(n, p):
                    report.record(involute(compose(g, f), kind) == compose(involute(g, kind), involute(f, kind)),
                                  f"{kind}: {g} ∘ {f}")
    return report


def identities_suite(ctx: SuiteContext) -> List[CheckReport]:
    return [
        *ctx.attempt("generator_pairs", generator_pair_check, 5),
        *ctx.attempt("normal_forms", normal_form_check, 4),
        *ctx.attempt("hom_sizes", hom_size_check),
        *ctx.attempt("involutions", involution_check, 3),
    ]


# Products and triangulation ---------------------------------------------

def _small_shapes() -> List[CubicalComplex]:
    return [point(), cube(1), cube(2), boundary(2), open_box(2, 1, 0), inner_open_box(2, 1, 0),
            k_complex(), three_out_of_four(1, 0)]


def cube_product_check(max_total: int = 4) -> CheckReport:
    report = CheckReport("cube_products", parameters={"max_total": max_total})
    for m in range(max_total + 1):
        for n in range(max_total - m + 1):
            P = product(cube(m), cube(n))
            report.record(is_isomorphic(P, cube(m + n), respect_markings=False), f"□^{m}⊗□^{n}")
    return report


def involution_product_check(shapes: Sequence[CubicalComplex], kind: str, max_total: int = 3) -> CheckReport:
    """co and op are anti-monoidal, coop is monoidal; checked on the constructed isomorphisms."""
    suffix = "monoidal" if kind == "coop" else "anti_monoidal"
    report = CheckReport(f"{kind}_{suffix}", parameters={"max_total": max_total})
    for X, Y in itertools.product(shapes, repeat=2):
        if X.dim + Y.dim > max_total:
            continue
        report.record(is_isomorphism(involution_isomorphism(X, Y, kind)), f"{X.name}, {Y.name}")
    return report


def associativity_check(shapes: Sequence[CubicalComplex], max_total: int = 4) -> CheckReport:
    """The associator (X⊗Y)⊗Z → X⊗(Y⊗Z) is an isomorphism."""
    report = CheckReport("product_associativity", parameters={"max_total": max_total})
    for X, Y, Z in itertools.product(shapes, repeat=3):
        if X.dim + Y.dim + Z.dim > max_total:
            continue
        report.record(is_isomorphism(associator(X, Y, Z)), f"{X.name}, {Y.name}, {Z.name}")
    return report


def edge_formula_check(shapes: Sequence[CubicalComplex], trials: int, rng: np.random.Generator) -> CheckReport:
    """(X⊗Y)₁ is X₁×Y₀ ⊔ X₀×Y₁ on non-degenerate cubes."""
    report = CheckReport("product_edges", parameters={"trials": trials})
    for a, b in rng.integers(len(shapes), size=(trials, 2)):
        X, Y = shapes[int(a)], shapes[int(b)]
        expected = _count(X, 1) * _count(Y, 0) + _count(X, 0) * _count(Y, 1)
        report.record(_count(product(X, Y), 1) == expected, f"{X.name}, {Y.name}")
    return report


def open_box_pushout_product_check(max_total: int = 4) -> CheckReport:
    """
    ∂□ᵐ ⊗̂ ∂□ⁿ is ∂□^{m+n}, ⊓ᵐ_{i,ε} ⊗̂ ∂□ⁿ is ⊓^{m+n}_{i,ε} and
    ∂□ᵐ ⊗̂ ⊓ⁿ_{i,ε} is ⊓^{m+n}_{m+i,ε}, compared by counts of a mono.
    """
    report = CheckReport("open_box_pushout_products", parameters={"max_total": max_total})

    def record(f, g, expected: CubicalComplex, label: str) -> None:
        pp = pushout_product(f, g)
        report.record(is_mono(pp.map) and pp.pushout.complex.counts() == expected.counts(), label)

    for m in range(1, max_total):
        for n in range(1, max_total - m + 1):
            edge_m = inclusion_map(boundary(m), cube(m))
            edge_n = inclusion_map(boundary(n), cube(n))
            record(edge_m, edge_n, boundary(m + n), f"∂□^{m} ⊗̂ ∂□^{n}")
            for eps in (0, 1):
                for i in range(1, m + 1):
                    record(inclusion_map(open_box(m, i, eps), cube(m)), edge_n, open_box(m + n, i, eps),
                           f"⊓^{m}_{i},{eps} ⊗̂ ∂□^{n}")
                for i in range(1, n + 1):
                    record(edge_m, inclusion_map(open_box(n, i, eps), cube(n)), open_box(m + n, m + i, eps),
                           f"∂□^{m} ⊗̂ ⊓^{n}_{i},{eps}")
    return report


def triangulation_product_report() -> CheckReport:
    shapes = [point(), cube(1), cube(2), boundary(2)]
    report = CheckReport("triangulation_products")
    for X, Y in itertools.product(shapes, repeat=2):
        report.record(triangulation_product_check(X, Y), f"T({X.name}⊗{Y.name})")
    return report


def triangulation_mono_check(trials: int, rng: np.random.Generator) -> CheckReport:
    """T sends random inclusions of subcomplexes of □³ to monos."""
    report = CheckReport("triangulation_monos", parameters={"trials": trials})
    C = cube(3)
    ids = C.ids()
    for _ in range(trials):
        size = int(rng.integers(1, len(ids) + 1))
        chosen = [ids[k] for k in sorted(rng.choice(len(ids), size=size, replace=False))]
        _, inclusion = subcomplex(C, chosen)
        report.record(triangulation_preserves_mono(inclusion), ",".join(chosen))
    return report


def triangulation_top_check(ctx: SuiteContext) -> CheckReport:
    report = CheckReport("triangulation_top_simplices")
    for n in range(5):
        T = triangulate(cube(n)).complex
        report.record(_count(T, n) == factorial(n), f"T□^{n} has {_count(T, n)} top simplices")
        if n == 2:
            ctx.keep(T)
    return report


def product_suite(ctx: SuiteContext) -> List[CheckReport]:
    ctx.keep(product(cube(1), boundary(2)), product(k_complex(), cube(1)))
    involution_shapes = [point(), cube(1), cube(2), boundary(2), open_box(2, 1, 0)]
    reports = ctx.attempt("cube_products", cube_product_check, 4)
    for kind in INVOLUTIONS:
        reports += ctx.attempt(f"{kind}_products", involution_product_check, involution_shapes, kind, 3)
    reports += [
        *ctx.attempt("product_associativity", associativity_check,
                     [point(), cube(1), boundary(2), k_complex()], 4),
        *ctx.attempt("product_edges", edge_formula_check, _small_shapes(), ctx.trials, ctx.rng()),
        *ctx.attempt("open_box_pushout_products", open_box_pushout_product_check, 4),
        *ctx.attempt("triangulation_products", triangulation_product_report),
        *ctx.attempt("triangulation_monos", triangulation_mono_check, ctx.mono_trials, ctx.rng(1)),
        *ctx.attempt("triangulation_top_simplices", triangulation_top_check, ctx),
    ]
    return reports


# Cones -------------------------------------------------------------------

def b_decomposition_report(max_total: int = 4) -> CheckReport:
    report = CheckReport("b_decompositions", parameters={"max_total": max_total})
    for total in range(2, max_total + 1):
        for n in range(1, total):
            m = total - n
            for k in range(n, total):
                report.merge(decomposition_check(m, n, k))
    return report


def cones_suite(ctx: SuiteContext) -> List[CheckReport]:
    N = nerve(poset_category(2), 4)
    reports: List[CheckReport] = []
    for kind in CONE_KINDS:
        for X in (cube(0), cube(1), cube(2)):
            reports += ctx.attempt(f"monad_laws_{kind.name}", monad_law_check, X, kind)
    reports += [
        *ctx.attempt("b_decompositions", b_decomposition_report, 4),
        *ctx.attempt("face_isos", face_iso_check, 4),
        *ctx.attempt("cone_edge", cone_edge_check, 4),
        *ctx.attempt("face_condition", face_condition_check, N, 4),
        *ctx.attempt("cone_face_degeneracy", cone_face_degeneracy_check, N, 4),
        *ctx.attempt("sa1", sa1_check, N, 4),
        *ctx.attempt("kind_coherence", kind_coherence_check, cube(1)),
        *ctx.attempt("q_standard_form", lambda: q_stand_form_check(
            materialize(nerve(poset_category(2), 2), 2).complex)),
    ]
    ctx.keep(cone(cube(1)).complex, standard_cone(2, 1).complex)
    return reports


# Q and its right adjoint -------------------------------------------------

def q_horn_report(max_dim: int = 3) -> CheckReport:
    """QΛⁿ_i against the open box ⊓ⁿ_{n-i+1,0}, for the horns with 1 ≤ i ≤ n."""
    report = CheckReport("q_horns", parameters={"max_dim": max_dim})
    for n in range(1, max_dim + 1):
        for i in range(1, n + 1):
            report.record(q_horn_image(n, i), f"QΛ^{n}_{i}")
    return report


def counit_mono_report(ctx: SuiteContext) -> CheckReport:
    report = CheckReport("counit_mono")
    truncation = materialize(nerve(poset_category(2), 2), 2).complex
    for X in (cube(2), k_complex(), truncation):
        report.record(is_mono(counit(X, budget=ctx.budget).map), X.name)
    ctx.keep(truncation)
    return report


def poset_map_report(max_dim: int = 4) -> CheckReport:
    report = CheckReport("poset_maps_fg", parameters={"max_dim": max_dim})
    for n in range(max_dim + 1):
        report.merge(PosetMapFG(n).check())
    return report


def q_suite(ctx: SuiteContext) -> List[CheckReport]:
    reports: List[CheckReport] = []
    for kind in CONE_KINDS:
        reports += ctx.attempt(f"cosimplicial_identities_{kind.name}", cosimplicial_identity_check, 4, kind)
    QJ = q_functor(j_complex()).complex
    reports += [
        *ctx.attempt("f_naturality", f_naturality, 3),
        *ctx.attempt("q_horns", q_horn_report, 3),
        *ctx.attempt("qj_is_k", lambda: _truth("qj_is_k", is_isomorphic(QJ, k_complex(), respect_markings=False))),
        *ctx.attempt("counit_mono", counit_mono_report, ctx),
        *ctx.attempt("q_full_faithfulness", q_full_faithfulness_check,
                     [simplex(0), simplex(1), simplex_boundary(1), horn(2, 1)]),
        *ctx.attempt("poset_maps_fg", poset_map_report, 4),
        *ctx.attempt("f_bar_simplex", check_f_bar, simplex(2)),
        *ctx.attempt("f_bar_horn", check_f_bar, horn(2, 1)),
    ]
    ctx.keep(QJ, simplex(3), horn(3, 1), j_complex())
    return reports


# Quasicategories --------------------------------------------------------

def small_categories():
    """Finite categories with at most three objects and six morphisms."""
    vee = nx.DiGraph([("0", "1"), ("0", "2")])
    return [terminal_category(), poset_category(1), poset_category(2), walking_isomorphism(),
            from_poset(vee, "V")]


def nerve_report(d: int, budget: Optional[int] = None) -> CheckReport:
    report = CheckReport("nerves_are_quasicategories", parameters={"d": d})
    for C in small_categories():
        report.record(bool(is_quasicategory_up_to(nerve(C, d), d, budget)), C.name)
    return report


def square_report() -> CheckReport:
    square = is_quasicategory_up_to(cube(2), 2)
    return _truth("square_is_not_quasicategory", not square.ok, str(square.witness))


def ho_report(N) -> CheckReport:
    H = ho(N)
    return _truth("ho_of_ordinal", find_category_isomorphism(H.category, poset_category(2)) is not None)


def terminal_mapping_report(ctx: SuiteContext, N) -> CheckReport:
    space = mapping_space(N, N.vertex("0"), N.vertex("1"), "R", 2)
    ctx.keep(space)
    return _truth("mapping_space_terminal", sum(space.counts()) == 1 and space.counts()[0] == 1,
                  str(space.counts()))


def qcat_suite(ctx: SuiteContext) -> List[CheckReport]:
    d = ctx.nerve_bound
    N1 = nerve(poset_category(1), d)
    N2 = nerve(poset_category(2), d)
    reports = [
        *ctx.attempt("nerves_are_quasicategories", nerve_report, d, ctx.budget),
        *ctx.attempt("square_is_not_quasicategory", square_report),
        *ctx.attempt("ho_of_ordinal", ho_report, N2),
        *ctx.attempt("either_direction", either_direction_check, N2),
        *ctx.attempt("homotopy_relation", homotopy_relation_check, N2),
        *ctx.attempt("mapping_space_terminal", terminal_mapping_report, ctx, N1),
        *ctx.attempt("mapping_involution", mapping_involution_check, N2, N2.vertex("0"), N2.vertex("2"), 1),
        *ctx.attempt("suspension_adjunction", suspension_adjunction_check, cube(1), N2,
                     N2.vertex("0"), N2.vertex("2")),
        *ctx.attempt("integral_maps", int_map_check, N1, N1.vertex("0"), N1.vertex("1"), 1),
    ]
    ctx.keep(suspension(cube(1)).complex, materialize(N2, 2).complex, k_prime())
    return reports


# θ ------------------------------------------------------------------------

def theta_reports(X, bound: int) -> List[CheckReport]:
    result = verify_theta(X, bound)
    return [*result.totals().values(), *result.checks.values()]


def theta_suite(ctx: SuiteContext) -> List[CheckReport]:
    reports: List[CheckReport] = []
    for k in range(1, ctx.nerve_bound + 1):
        X = nerve(poset_category(k), ctx.theta_bound)
        reports += ctx.attempt(f"theta_[{k}]", theta_reports, X, ctx.theta_bound)
    N2 = nerve(poset_category(2), ctx.theta_bound)
    reports += [
        *ctx.attempt("counit_step_2_0", counit_step_check, N2, 2, 0, ctx.theta_bound),
        *ctx.attempt("counit_step_2_1", counit_step_check, N2, 2, 1, ctx.theta_bound),
        *ctx.attempt("filtration_base", filtration_base_check, N2, ctx.theta_bound),
    ]
    return reports


# Serialization ----------------------------------------------------------

def builtin_complexes() -> List[AnyComplex]:
    return [point(), cube(3), boundary(3), open_box(3, 2, 1), inner_open_box(3, 2, 0), k_complex(),
            k_prime(), three_out_of_four(1, 0), simplex(2), horn(2, 0), j_complex()]


def round_trip_check(complexes: Sequence[AnyComplex]) -> CheckReport:
    """Writing, parsing and writing again reproduces the text."""
    report = CheckReport("serialization_round_trip", parameters={"complexes": len(complexes)})
    for X in complexes:
        if isinstance(X, SimplicialComplex):
            text = simplicial_to_text(X)
            again = simplicial_to_text(simplicial_from_text(text))
        else:
            text = complex_to_text(X)
            again = complex_to_text(complex_from_text(text))
        report.record(text == again, X.name)
    return report


def serialization_suite(ctx: SuiteContext) -> List[CheckReport]:
    return ctx.attempt("serialization_round_trip", round_trip_check, builtin_complexes() + ctx.produced)


SUITES: Dict[str, Callable[[SuiteContext], List[CheckReport]]] = {
    "identities": identities_suite,
    "product": product_suite,
    "cones": cones_suite,
    "q": q_suite,
    "qcat": qcat_suite,
    "theta": theta_suite,
    "serialization": serialization_suite,
}


def suite_names(name: str) -> List[str]:
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r} (choose from {', '.join(SUITES)}, all)")
    return [name]


def run_suites(name: str, seed: Optional[int] = None, budget: Optional[int] = None) -> List[SuiteResult]:
    """Run one suite, or every suite in order for 'all'."""
    ctx = SuiteContext.from_config(seed, budget)
    results = []
    for suite in suite_names(name):
        logger.info(f"running suite {suite} (seed {ctx.seed})")
        try:
            reports = SUITES[suite](ctx)
        except CubikError as e:
            logger.warning(f"suite {suite} could not build its shapes: {e}")
            reports = [error_report(f"{suite}_setup", e)]
        reports = [r.log() for r in reports]
        result = SuiteResult(suite, reports)
        get_logger().log_system_event("suite_finished", f"suite {suite}: {'ok' if result.ok else 'FAILED'}",
                                      "INFO" if result.ok else "WARNING",
                                      {"checks": len(reports), "failed": sum(not r.ok for r in reports)})
        results.append(result)
    return results


def summary_frame(results: Sequence[SuiteResult]) -> pd.DataFrame:
    rows = [{
        "suite": result.name,
        "check": report.name,
        "checked": report.checked,
        "failed": report.failed,
        "ok": report.ok,
        "first_witness": report.witnesses[0] if report.witnesses else "",
    } for result in results for report in result.reports]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def write_report(frame: pd.DataFrame, path: str) -> None:
    frame.to_csv(path, index=False)
    logger.info(f"wrote {len(frame)} rows to {path}")
