"""
Open-box filling and the quasicategory layer.

Square conventions: for a 2-cube s, s∂_{2,0} is the top row and s∂_{2,1} the
bottom row (coordinate 1 varies along them); s∂_{1,0} and s∂_{1,1} are the
left and right columns.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import networkx as nx

try:
    from .boxcat import BoxOperator, critical_edge, degeneracy, identity, tensor_operator, total_degeneracy
    from .category import FinCategory, morphism_name, tau1
    from .checks import CheckReport
    from .cone import CONE_KINDS, ConeKind, QMap, integral, integral_result
    from .complex import (ComplexMap, CubeRef, CubicalComplex, CubicalSet, ImplicitComplex, complex_maps,
                          count_maps, cube, disjoint_union, involuted, is_isomorphic, k_complex, materialize,
                          open_box, pattern_operator, point, quotient)
    from .errors import MissingFiller, PreconditionError
    from .rewriting import reduce_word
    from .simplex import is_isomorphic as simplicial_isomorphic
    from .tensor import pair_id, product
    from .triangulation import simplicial_hom
    from .unionfind import UnionFind
except ImportError:
    from boxcat import BoxOperator, critical_edge, degeneracy, identity, tensor_operator, total_degeneracy
    from category import FinCategory, morphism_name, tau1
    from checks import CheckReport
    from cone import CONE_KINDS, ConeKind, QMap, integral, integral_result
    from complex import (ComplexMap, CubeRef, CubicalComplex, CubicalSet, ImplicitComplex, complex_maps,
                         count_maps, cube, disjoint_union, involuted, is_isomorphic, k_complex, materialize,
                         open_box, pattern_operator, point, quotient)
    from errors import MissingFiller, PreconditionError
    from rewriting import reduce_word
    from simplex import is_isomorphic as simplicial_isomorphic
    from tensor import pair_id, product
    from triangulation import simplicial_hom
    from unionfind import UnionFind

logger = logging.getLogger(__name__)


def _flat(X: CubicalSet, v: Any, n: int) -> Any:
    """The vertex v degenerated to an n-cube."""
    return X.act(v, total_degeneracy(n))


def _source(X: CubicalSet, f: Any) -> Any:
    return X.face(f, 1, 0)


def _target(X: CubicalSet, f: Any) -> Any:
    return X.face(f, 1, 1)


def cube_name(X: CubicalSet, x: Any) -> str:
    label = X.label(x)
    if label is not None:
        return label
    return x.render() if isinstance(x, CubeRef) else repr(x)


# Open boxes ---------------------------------------------------------------

@dataclass
class OpenBoxProblem:
    """A map ⊓ⁿ_{i,ε} → X given by the images of its 2n-1 faces."""

    X: CubicalSet
    n: int
    i: int
    eps: int
    boundary: Dict[Tuple[int, int], Any]

    def __post_init__(self):
        expected = {(j, e) for j in range(1, self.n + 1) for e in (0, 1)} - {(self.i, self.eps)}
        if set(self.boundary) != expected:
            raise PreconditionError(f"an open box ⊓^{self.n}_{self.i},{self.eps} needs exactly the faces {sorted(expected)}")

    def __str__(self) -> str:
        return f"⊓^{self.n}_{{{self.i},{self.eps}}} in {self.X.name}"

    def is_compatible(self) -> bool:
        """x∂_{j,e}∂_{k-1,f} = x∂_{k,f}∂_{j,e} for every pair of given faces, j < k."""
        for (j, e), y in self.boundary.items():
            for (k, f), z in self.boundary.items():
                if j < k and self.X.face(y, k - 1, f) != self.X.face(z, j, e):
                    return False
        return True

    def critical_edge(self) -> Any:
        if self.n < 2:
            raise PreconditionError("one-dimensional open boxes have no critical edge")
        j = 1 if self.i != 1 else 2
        side = self.boundary[(j, 1 - self.eps)]
        local = self.i if self.i < j else self.i - 1
        return self.X.act(side, critical_edge(self.n - 1, local, self.eps))

    @property
    def inner(self) -> bool:
        return self.n >= 2 and self.X.is_degenerate(self.critical_edge())

    @property
    def special(self) -> bool:
        """The critical edge is an equivalence."""
        return self.n >= 2 and is_equivalence(self.X, self.critical_edge())

    def as_map(self) -> ComplexMap:
        """The boundary as a map out of open_box(n, i, ε)."""
        box = open_box(self.n, self.i, self.eps)
        assignment = {}
        for c in box.ids():
            pattern = c[1:]
            for (j, e), y in sorted(self.boundary.items()):
                if pattern[j - 1] == str(e):
                    assignment[c] = self.X.act(y, pattern_operator("c" + pattern[:j - 1] + pattern[j:]))
                    break
        return ComplexMap(box, self.X, assignment)

    def candidates(self) -> List[Any]:
        return self.X.cubes_with_boundary(self.n, self.boundary)


def problem_from_map(f: ComplexMap, n: int, i: int, eps: int) -> OpenBoxProblem:
    top = "*" * n
    boundary = {}
    for j in range(1, n + 1):
        for e in (0, 1):
            if (j, e) != (i, eps):
                boundary[(j, e)] = f.assignment["c" + top[:j - 1] + str(e) + top[j:]]
    return OpenBoxProblem(f.codomain, n, i, eps, boundary)


def open_box_problems(X: CubicalSet, n: int, i: int, eps: int, inner_only: bool = False,
                      budget: Optional[int] = None) -> Iterator[OpenBoxProblem]:
    for f in complex_maps(open_box(n, i, eps), X, budget=budget):
        problem = problem_from_map(f, n, i, eps)
        if not inner_only or problem.inner:
            yield problem


def find_filler(problem: OpenBoxProblem) -> Optional[Any]:
    """The least n-cube of X extending the open box, or None."""
    found = problem.candidates()
    return found[0] if found else None


def fill(problem: OpenBoxProblem) -> Any:
    filler = find_filler(problem)
    if filler is None:
        raise MissingFiller(problem)
    return filler


@dataclass
class QuasicategoryReport:
    ok: bool
    checked: int
    witness: Optional[OpenBoxProblem] = None

    def __bool__(self) -> bool:
        return self.ok


def is_quasicategory_up_to(X: CubicalSet, d: int, budget: Optional[int] = None) -> QuasicategoryReport:
    """
    Check that every inner open box of dimension ≤ d has a filler.

    Args:
        X: Explicit complex or implicit cubical set enumerable to d
        d: Largest open-box dimension
        budget: Enumeration budget for the boundary maps

    Returns:
        QuasicategoryReport with the first unfillable box, if any
    """
    checked = 0
    for n in range(2, d + 1):
        for i in range(1, n + 1):
            for eps in (0, 1):
                for problem in open_box_problems(X, n, i, eps, inner_only=True, budget=budget):
                    checked += 1
                    if find_filler(problem) is None:
                        logger.info(f"{X.name}: no filler for {problem}")
                        return QuasicategoryReport(False, checked, problem)
    logger.debug(f"{X.name}: {checked} inner open boxes filled up to dimension {d}")
    return QuasicategoryReport(True, checked)


# Equivalences -------------------------------------------------------------

def equivalence_witness(X: CubicalSet, edge: Any) -> Optional[ComplexMap]:
    """A map K → X sending the middle edge to `edge`, or None."""
    fixed = {"0": _source(X, edge), "1": _target(X, edge), "e": edge}
    for f in complex_maps(k_complex(), X, fixed=fixed):
        return f
    return None


def is_equivalence(X: CubicalSet, edge: Any) -> bool:
    return equivalence_witness(X, edge) is not None


def equivalence_classes(X: CubicalSet) -> List[List[str]]:
    """Vertices of X up to equivalence (components of the graph of equivalence edges)."""
    graph = nx.Graph()
    names = {v: cube_name(X, v) for v in X.cubes(0)}
    graph.add_nodes_from(names.values())
    for f in X.nondegenerate(1):
        if is_equivalence(X, f):
            graph.add_edge(names[_source(X, f)], names[_target(X, f)])
    return sorted(sorted(component) for component in nx.connected_components(graph))


def natural_marking(X: CubicalSet, d: int = 3) -> CubicalComplex:
    """X with exactly the equivalences marked; implicit X is stored up to dimension 2 first."""
    report = is_quasicategory_up_to(X, d)
    if not report.ok:
        raise PreconditionError(f"{X.name} is not a quasicategory: no filler for {report.witness}")
    if isinstance(X, CubicalComplex):
        return X.with_marks([e for e in X.ids(1) if is_equivalence(X, X.ref(e))], f"{X.name}♮")
    stored = materialize(X, min(X.dim, 2), f"{X.name}♮")
    marks = [stored.ids[f] for f in X.nondegenerate(1) if is_equivalence(X, f)]
    return stored.complex.with_marks(marks)


# Homotopy and Ho ----------------------------------------------------------

def homotopy_squares(X: CubicalSet, f: Any, g: Any) -> List[Any]:
    """2-cubes with top f, bottom g and degenerate sides."""
    if _source(X, f) != _source(X, g) or _target(X, f) != _target(X, g):
        return []
    boundary = {(2, 0): f, (2, 1): g,
                (1, 0): _flat(X, _source(X, f), 1), (1, 1): _flat(X, _target(X, f), 1)}
    return X.cubes_with_boundary(2, boundary)


def homotopic(X: CubicalSet, f: Any, g: Any) -> bool:
    """f ~_X g."""
    return bool(homotopy_squares(X, f, g))


def composition_problem(X: CubicalSet, f: Any, g: Any) -> OpenBoxProblem:
    """The open box with left column f, bottom row g and degenerate right column; the top is g∘f."""
    if _target(X, f) != _source(X, g):
        raise PreconditionError(f"{cube_name(X, g)} does not follow {cube_name(X, f)}")
    z = _target(X, g)
    return OpenBoxProblem(X, 2, 2, 0, {(1, 0): f, (2, 1): g, (1, 1): _flat(X, z, 1)})


def square_exists(X: CubicalSet, f: Any, p: Any, g: Any, q: Any) -> bool:
    """Is there a square with top f, left p, right g and bottom q?"""
    return bool(X.cubes_with_boundary(2, {(2, 0): f, (1, 0): p, (1, 1): g, (2, 1): q}))


@dataclass
class HoCategory:
    """Ho X with the class of every edge and the square certifying each composite."""

    category: FinCategory
    classes: Dict[Any, str]
    witnesses: Dict[Tuple[str, str], Any] = field(default_factory=dict)
    from_presentation: bool = False
    well_defined: Optional[CheckReport] = None

    def morphism(self, edge: Any) -> str:
        return self.classes[edge]

    def compose(self, g: Any, f: Any) -> str:
        return self.category.compose(self.classes[g], self.classes[f])


def ho(X: CubicalSet, fallback_to_tau1: bool = False) -> HoCategory:
    """
    The homotopy category: objects X₀, morphisms X₁(x,y)/~_X, composites by
    filling composition boxes with the least filler.

    Args:
        X: Filler-complete cubical set (enumerable to dimension 2)
        fallback_to_tau1: For an explicit X lacking fillers, return τ₁X instead of raising

    Raises:
        MissingFiller: A homotopy or composition filler is missing
    """
    try:
        return _ho(X)
    except MissingFiller:
        if not (fallback_to_tau1 and isinstance(X, CubicalComplex)):
            raise
        result = tau1(X)
        if result.category is None:
            raise
        logger.info(f"ho({X.name}): using the presentation of τ₁")
        classes = {}
        for e in X.ids(1):
            src = X.face_table[(e, 1, 0)].target
            classes[X.ref(e)] = morphism_name(src, reduce_word((e,), result.rules))
        for v in X.ids(0):
            classes[X.act(X.ref(v), degeneracy(1, 1))] = result.category.identities[v]
        return HoCategory(result.category, classes, from_presentation=True)


def _ho(X: CubicalSet) -> HoCategory:
    vertices = X.cubes(0)
    edges = X.cubes(1)
    uf = UnionFind()
    for f in edges:
        uf.add(f)
    for f in edges:
        for g in edges:
            if f < g and homotopic(X, f, g):
                uf.union(f, g)
    classes: Dict[Any, str] = {}
    representatives: Dict[str, Any] = {}
    for members in sorted((sorted(m) for m in uf.classes().values()), key=lambda m: m[0]):
        name = cube_name(X, members[0])
        representatives[name] = members[0]
        for f in members:
            classes[f] = name
    objects = tuple(cube_name(X, v) for v in vertices)
    morphisms = {name: (cube_name(X, _source(X, f)), cube_name(X, _target(X, f)))
                 for name, f in representatives.items()}
    identities = {cube_name(X, v): classes[_flat(X, v, 1)] for v in vertices}
    composition, witnesses = {}, {}
    report = CheckReport("ho_well_defined", parameters={"X": X.name})
    for f in edges:
        for g in edges:
            if _target(X, f) != _source(X, g):
                continue
            square = fill(composition_problem(X, f, g))
            composite = classes[X.face(square, 2, 0)]
            key = (classes[g], classes[f])
            if key not in composition:
                composition[key] = composite
                witnesses[key] = square
            report.record(composition[key] == composite,
                          f"{cube_name(X, g)}∘{cube_name(X, f)} lands in two classes")
    category = FinCategory(f"Ho({X.name})", objects, morphisms, identities, composition)
    return HoCategory(category, classes, witnesses, well_defined=report)


def either_direction_check(X: CubicalSet) -> CheckReport:
    """A square with top f, left p, right g, bottom q exists iff gf = qp in Ho X."""
    H = ho(X)
    report = CheckReport("either_direction_composition", parameters={"X": X.name})
    edges = X.cubes(1)
    for f in edges:
        for p in edges:
            if _source(X, p) != _source(X, f):
                continue
            for g in edges:
                if _source(X, g) != _target(X, f):
                    continue
                for q in edges:
                    if _source(X, q) != _target(X, p) or _target(X, q) != _target(X, g):
                        continue
                    same = H.compose(g, f) == H.compose(q, p)
                    report.record(square_exists(X, f, p, g, q) == same,
                                  f"top {cube_name(X, f)}, left {cube_name(X, p)}")
    return report


def homotopy_relation_check(X: CubicalSet) -> CheckReport:
    """
    ~_X is an equivalence relation, witnessed by cubes: fσ₂ for reflexivity,
    and for homotopies H: f ~ g, H': f ~ h an inner 3-box whose filler has
    g ~ h as its ∂_{2,1} face.
    """
    report = CheckReport("homotopy_relation", parameters={"X": X.name})
    for f in X.cubes(1):
        x, y = _source(X, f), _target(X, f)
        report.record(homotopic(X, f, f) and X.act(f, degeneracy(2, 2)) in homotopy_squares(X, f, f),
                      f"{cube_name(X, f)} is not reflexive")
        parallel = [g for g in X.cubes(1) if _source(X, g) == x and _target(X, g) == y]
        for g in parallel:
            for h in parallel:
                for H in homotopy_squares(X, f, g)[:1]:
                    for H2 in homotopy_squares(X, f, h)[:1]:
                        problem = OpenBoxProblem(X, 3, 2, 1, {
                            (3, 0): H, (2, 0): H2, (3, 1): X.act(h, degeneracy(2, 2)),
                            (1, 0): _flat(X, x, 2), (1, 1): _flat(X, y, 2)})
                        filler = find_filler(problem)
                        ok = filler is not None and X.face(filler, 2, 1) in homotopy_squares(X, g, h)
                        report.record(ok, f"{cube_name(X, g)} ~ {cube_name(X, h)} via {cube_name(X, f)}")
    return report


def negative_connection_square(X: CubicalSet, f: Any) -> Any:
    """
    A square with top and left f and the other sides degenerate, built from
    two inner fillings and no connection on f.
    """
    y = _target(X, f)
    flat_y = _flat(X, y, 1)
    u = fill(OpenBoxProblem(X, 2, 1, 0, {(2, 0): f, (1, 1): flat_y, (2, 1): flat_y}))
    flat_square = _flat(X, y, 2)
    c = fill(OpenBoxProblem(X, 3, 3, 0, {
        (1, 0): u, (2, 0): u, (1, 1): flat_square, (2, 1): flat_square, (3, 1): flat_square}))
    return X.face(c, 3, 0)


def connection_squares(X: CubicalSet, f: Any) -> Tuple[Any, Any]:
    """The negative and positive connection squares on f, from fillers alone."""
    negative = negative_connection_square(X, f)
    positive = negative_connection_square(involuted(X, "coop"), f)
    return negative, positive


# Mapping spaces and suspension -------------------------------------------

class MappingSpace(ImplicitComplex):
    """
    Map^R_X(x₀,x₁)_n: (n+1)-cubes s with s∂_{n+1,ε} the degenerate cube on x_ε.
    Map^L uses the first direction instead, with operators shifted by one.
    """

    def __init__(self, X: CubicalSet, x0: Any, x1: Any, side: str = "R", bound: Optional[int] = None):
        if side not in ("L", "R"):
            raise PreconditionError(f"mapping space side must be L or R, got {side!r}")
        bound = X.dim - 1 if bound is None else bound
        super().__init__(f"Map^{side}_{X.name}", bound)
        self.X = X
        self.ends = (x0, x1)
        self.side = side

    def _direction(self, n: int) -> int:
        return n + 1 if self.side == "R" else 1

    def _enumerate(self, n: int) -> List[Any]:
        k = self._direction(n)
        boundary = {(k, e): _flat(self.X, self.ends[e], n) for e in (0, 1)}
        return self.X.cubes_with_boundary(n + 1, boundary)

    def cube_dim(self, s: Any) -> int:
        return self.X.cube_dim(s) - 1

    def act(self, s: Any, op: BoxOperator) -> Any:
        if self.side == "R":
            return self.X.act(s, tensor_operator(op, identity(1)))
        return self.X.act(s, tensor_operator(identity(1), op))

    def label(self, s: Any) -> Optional[str]:
        return self.X.label(s) if self.cube_dim(s) == 0 else None


def mapping_space(X: CubicalSet, x0: Any, x1: Any, side: str = "R", bound: int = 2) -> CubicalComplex:
    """Map_X(x₀,x₁) stored up to the bound."""
    return materialize(MappingSpace(X, x0, x1, side, bound), bound).complex


def mapping_involution_check(X: CubicalSet, x0: Any, x1: Any, bound: int = 2) -> CheckReport:
    """Map^L_X(x₀,x₁)^co ≅ Map^R_{X^co}(x₀,x₁) and the other five relations."""
    report = CheckReport("mapping_space_involutions", parameters={"X": X.name, "bound": bound})
    cases = [("co", "L", "R", False), ("co", "R", "L", False),
             ("coop", "L", "L", True), ("coop", "R", "R", True),
             ("op", "L", "R", True), ("op", "R", "L", True)]
    for kind, side, other, swap in cases:
        lhs = involuted(mapping_space(X, x0, x1, side, bound), kind)
        ends = (x1, x0) if swap else (x0, x1)
        rhs = mapping_space(involuted(X, kind), ends[0], ends[1], other, bound)
        report.record(is_isomorphic(lhs, rhs, respect_markings=False), f"Map^{side} under {kind}")
    return report


@dataclass
class SuspensionResult:
    base: CubicalComplex
    side: str
    complex: CubicalComplex
    projection: ComplexMap
    basepoints: Tuple[str, str] = ("0", "1")


def suspension(X: CubicalComplex, side: str = "R") -> SuspensionResult:
    """ΣX: X⊗□¹ (or □¹⊗X on the left) with X⊗{ε} collapsed to the basepoint ε."""
    if side not in ("L", "R"):
        raise PreconditionError(f"suspension side must be L or R, got {side!r}")
    interval = cube(1)
    cylinder = product(X, interval, verify=False) if side == "R" else product(interval, X, verify=False)
    union, _ = disjoint_union([cylinder, point().relabel({"c": "0"}), point().relabel({"c": "1"})],
                              ("", "", ""))
    pairs = []
    for x in X.ids():
        for e in (0, 1):
            end = pair_id(x, f"c{e}") if side == "R" else pair_id(f"c{e}", x)
            pairs.append((union.ref(end), CubeRef(str(e), total_degeneracy(X.dims[x]))))
    glued = quotient(union, pairs, f"Σ_{side}({X.name})",
                     choose=lambda ids: min(ids, key=lambda c: (c not in ("0", "1"), c)))
    return SuspensionResult(X, side, glued.complex, glued.projection)


def suspension_adjunction_check(X: CubicalComplex, Y: CubicalSet, y0: Any, y1: Any,
                                side: str = "R") -> CheckReport:
    """Bi-pointed maps ΣX → Y biject with maps X → Map_Y(y₀,y₁)."""
    report = CheckReport("suspension_adjunction", parameters={"X": X.name, "Y": Y.name})
    sigma = suspension(X, side).complex
    pointed = count_maps(sigma, Y, fixed={"0": y0, "1": y1})
    into_map = count_maps(X, MappingSpace(Y, y0, y1, side, max(X.dim, 0)))
    report.record(pointed == into_map, f"{pointed} bi-pointed maps vs {into_map} maps into the mapping space")
    return report


def kan_fillers_check(X: CubicalSet, d: int = 2) -> CheckReport:
    """Every open box (inner or not) of dimension ≤ d in X has a filler."""
    report = CheckReport("kan_fillers", parameters={"X": X.name, "d": d})
    for n in range(1, d + 1):
        for i in range(1, n + 1):
            for eps in (0, 1):
                for problem in open_box_problems(X, n, i, eps):
                    report.record(find_filler(problem) is not None, str(problem))
    return report


def int_map_check(X: CubicalSet, x0: Any, x1: Any, bound: int = 1, kinds: Optional[List[ConeKind]] = None) -> CheckReport:
    """
    ∫ of a cubical mapping space is a simplicial right mapping space:
    ∫_{W,1} Map^W_X(x₀,x₁) ≅ Hom^R_{∫X}(x₀,x₁) and ∫_{W,0} Map^W_X(x₀,x₁) ≅ Hom^R_{∫X}(x₁,x₀).
    """
    report = CheckReport("integral_of_mapping_space", parameters={"X": X.name, "bound": bound})
    for kind in kinds or CONE_KINDS:
        space = MappingSpace(X, x0, x1, kind.side, bound)
        lhs = integral(space, bound, kind)
        whole = integral_result(X, bound + 1, kind)
        v0, v1 = (whole.ids[QMap(0, (("c", x),))] for x in (x0, x1))
        if kind.sign == 0:
            v0, v1 = v1, v0
        rhs = simplicial_hom("right", whole.complex, v0, v1, bound)
        report.record(simplicial_isomorphic(lhs, rhs), f"kind {kind.name}: {lhs.counts()} vs {rhs.counts()}")
    return report
