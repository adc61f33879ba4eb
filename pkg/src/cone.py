"""
Cones on cubical sets.

C_{L,1}X is □¹⊗X with {1}⊗X collapsed to a vertex (the apex); the other
three kinds tensor on the other side or collapse the other end. Standard
cones C^{m,n} are built directly as quotients of □^{m+n}: for L1 two cubes
f, g are identified when f_i = g_i for i ≤ j and f_j = g_j = const 1 for some
j ≤ n. Every other kind is the L1 construction conjugated by co, coop or op.

Qⁿ = C^{0,n} forms a cosimplicial object, which gives Q: sSet → cSet and
its right adjoint ∫.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

try:
    from .boxcat import (BoxOperator, compose, connection, critical_edge, degeneracy, evaluate, face,
                         identity, involute, tensor_operator, total_degeneracy)
    from .checks import CheckReport
    from .complex import (ComplexMap, CubeRef, CubicalComplex, CubicalSet, compose_maps, complex_maps,
                          count_maps, cube, cube_ref, disjoint_union, identity_map, involuted, is_isomorphic,
                          is_mono, open_box, pattern_operator, point, quotient, subcomplex)
    from .config import get_setting
    from .errors import ConeCheckMismatch, PreconditionError
    from .simplex import (ImplicitSimplicialSet, SimplexOperator, SimplexRef, SimplicialComplex,
                          SimplicialMap, compose as simplex_compose, degeneracy as simplex_degeneracy,
                          face as simplex_face, from_table, horn, materialize, simplicial_maps)
    from .tensor import pair_id, product
    from .triangulation import PosetMapFG, label_point, triangulate
except ImportError:
    from boxcat import (BoxOperator, compose, connection, critical_edge, degeneracy, evaluate, face,
                        identity, involute, tensor_operator, total_degeneracy)
    from checks import CheckReport
    from complex import (ComplexMap, CubeRef, CubicalComplex, CubicalSet, compose_maps, complex_maps,
                         count_maps, cube, cube_ref, disjoint_union, identity_map, involuted, is_isomorphic,
                         is_mono, open_box, pattern_operator, point, quotient, subcomplex)
    from config import get_setting
    from errors import ConeCheckMismatch, PreconditionError
    from simplex import (ImplicitSimplicialSet, SimplexOperator, SimplexRef, SimplicialComplex,
                         SimplicialMap, compose as simplex_compose, degeneracy as simplex_degeneracy,
                         face as simplex_face, from_table, horn, materialize, simplicial_maps)
    from tensor import pair_id, product
    from triangulation import PosetMapFG, label_point, triangulate

logger = logging.getLogger(__name__)

APEX = "apex"


@dataclass(frozen=True)
class ConeKind:
    """Side of the interval factor (L or R) and the collapsed end ε."""

    side: str
    sign: int

    def __post_init__(self):
        if self.side not in ("L", "R") or self.sign not in (0, 1):
            raise PreconditionError(f"no cone kind {self.side}{self.sign}")

    @property
    def name(self) -> str:
        return f"{self.side}{self.sign}"

    @property
    def involution(self) -> Optional[str]:
        """The involution carrying L1 cones to cones of this kind."""
        return {"L1": None, "L0": "coop", "R0": "op", "R1": "co"}[self.name]

    def __str__(self) -> str:
        return self.name


L1, L0, R0, R1 = ConeKind("L", 1), ConeKind("L", 0), ConeKind("R", 0), ConeKind("R", 1)
CONE_KINDS = (L1, L0, R0, R1)


def parse_kind(text: str) -> ConeKind:
    for kind in CONE_KINDS:
        if kind.name == text.upper():
            return kind
    raise PreconditionError(f"unknown cone kind {text!r}; expected one of L1, L0, R0, R1")


def _conjugate(op: BoxOperator, kind: ConeKind) -> BoxOperator:
    return op if kind.involution is None else involute(op, kind.involution)


# The cone functor ---------------------------------------------------------

@dataclass
class ConeResult:
    base: CubicalComplex
    kind: ConeKind
    complex: CubicalComplex
    cylinder: CubicalComplex
    projection: ComplexMap
    eta: ComplexMap
    apex: str = APEX

    def cylinder_id(self, p: str, x: str) -> str:
        """Id in the cylinder of the cube (p, x), p a cube of □¹ and x of the base."""
        return pair_id(p, x) if self.kind.side == "L" else pair_id(x, p)

    def split(self, c: str) -> Tuple[str, str]:
        """(p, x) for a non-apex cube of the cone."""
        a, b = self.complex.provenance[c]
        return (a, b) if self.kind.side == "L" else (b, a)

    def image(self, p: str, x: CubeRef) -> CubeRef:
        """The cube (p, x) of the cylinder pushed into the cone."""
        k = cube(1).dims[p]
        r = self.projection.assignment[self.cylinder_id(p, x.target)]
        if self.kind.side == "L":
            op = tensor_operator(identity(k), x.op)
        else:
            op = tensor_operator(x.op, identity(k))
        return self.complex.act(r, op)


def cone(X: CubicalComplex, kind: ConeKind = L1, name: Optional[str] = None) -> ConeResult:
    """
    C_{W,ε}X with its unit η: X → CX.

    Args:
        X: Base complex
        kind: One of L1, L0, R0, R1
        name: Name of the result

    Returns:
        ConeResult with the cone, the cylinder it is a quotient of and η
    """
    interval = cube(1)
    cylinder = product(interval, X, verify=False) if kind.side == "L" else product(X, interval, verify=False)
    union, _ = disjoint_union([cylinder, point().relabel({"c": APEX})], ("", ""))
    collapsed, kept = f"c{kind.sign}", f"c{1 - kind.sign}"

    def cyl(p: str, x: str) -> str:
        return pair_id(p, x) if kind.side == "L" else pair_id(x, p)

    pairs = [(union.ref(cyl(collapsed, x)), CubeRef(APEX, total_degeneracy(X.dims[x]))) for x in X.ids()]
    glued = quotient(union, pairs, name or f"C_{kind.name}({X.name})",
                     choose=lambda ids: APEX if APEX in ids else min(ids))
    C = glued.complex
    eta = ComplexMap(X, C, {x: glued.projection.assignment[cyl(kept, x)] for x in X.ids()})
    logger.debug(f"cone {kind.name} on {X.name}: {C.counts()}")
    return ConeResult(X, kind, C, cylinder, glued.projection, eta)


def cone_map(f: ComplexMap, source: ConeResult, target: ConeResult) -> ComplexMap:
    """C(f): CA → CB."""
    if not isinstance(f.codomain, CubicalComplex):
        raise PreconditionError("cone_map needs an explicit codomain")
    assignment = {}
    for c in source.complex.ids():
        if c == source.apex:
            assignment[c] = target.complex.ref(target.apex)
            continue
        p, a = source.split(c)
        assignment[c] = target.image(p, f.assignment[a])
    return ComplexMap(source.complex, target.complex, assignment)


def cone_mu(inner: ConeResult, outer: ConeResult) -> ComplexMap:
    """
    μ_X: C(CX) → CX, induced by the connection γ_{1,1-ε} on the two
    interval coordinates.
    """
    kind = inner.kind
    gamma = connection(2, 1, 1 - kind.sign)
    CX = inner.complex
    assignment = {}
    for c in outer.complex.ids():
        if c == outer.apex:
            assignment[c] = CX.ref(inner.apex)
            continue
        p, q = outer.split(c)
        k = cube(1).dims[p]
        if q == inner.apex:
            assignment[c] = CubeRef(inner.apex, total_degeneracy(k))
            continue
        p2, x = inner.split(q)
        if kind.side == "L":
            h = compose(gamma, tensor_operator(pattern_operator(p), pattern_operator(p2)))
        else:
            h = compose(gamma, tensor_operator(pattern_operator(p2), pattern_operator(p)))
        r = cube_ref(h)
        assignment[c] = CX.act(inner.projection.assignment[inner.cylinder_id(r.target, x)],
                               tensor_operator(r.op, identity(inner.base.dims[x])) if kind.side == "L"
                               else tensor_operator(identity(inner.base.dims[x]), r.op))
    return ComplexMap(outer.complex, CX, assignment)


def monad_law_check(X: CubicalComplex, kind: ConeKind = L1) -> CheckReport:
    """Unit and associativity laws for (C, η, μ) on X, as equalities of complex maps."""
    report = CheckReport("cone_monad_laws", parameters={"kind": kind.name, "X": X.name})
    CX = cone(X, kind)
    CCX = cone(CX.complex, kind)
    CCCX = cone(CCX.complex, kind)
    mu = cone_mu(CX, CCX)
    ident = identity_map(CX.complex)
    report.record(compose_maps(mu, CCX.eta).same_as(ident), "μ∘η_C ≠ id")
    report.record(compose_maps(mu, cone_map(CX.eta, CX, CCX)).same_as(ident), "μ∘Cη ≠ id")
    mu_c = cone_mu(CCX, CCCX)
    c_mu = cone_map(mu, CCCX, CCX)
    report.record(compose_maps(mu, mu_c).same_as(compose_maps(mu, c_mu)), "μ∘μ_C ≠ μ∘Cμ")
    return report.log()


def iterated_cone(X: CubicalComplex, n: int, kind: ConeKind = L1) -> CubicalComplex:
    for _ in range(n):
        X = cone(X, kind).complex
    return X


# Standard cones -----------------------------------------------------------

def _keep_prefix(N: int, j: int) -> BoxOperator:
    """[1]^N → [1]^N, x ↦ (x_1, …, x_j, 1, …, 1)."""
    return BoxOperator(N, N, faces=tuple((c, 1) for c in range(N, j, -1)), degens=tuple(range(j + 1, N + 1)))


def cone_relations(m: int, n: int, kind: ConeKind = L1) -> List[Tuple[BoxOperator, BoxOperator]]:
    """Generating pairs of operators into [1]^{m+n} identified in C^{m,n}."""
    N = m + n
    pairs = []
    for j in range(1, n + 1):
        side = face(N, j, 1)
        pairs.append((_conjugate(side, kind), _conjugate(compose(_keep_prefix(N, j), side), kind)))
    return pairs


@dataclass
class StandardCone:
    m: int
    n: int
    kind: ConeKind
    complex: CubicalComplex
    projection: ComplexMap

    @property
    def dim(self) -> int:
        return self.m + self.n

    def image_of(self, op: BoxOperator) -> CubeRef:
        """The cube op of □^{m+n} in the cone."""
        return self.projection(cube_ref(op))

    def top(self) -> CubeRef:
        return self.image_of(identity(self.dim))


@lru_cache(maxsize=None)
def standard_cone(m: int, n: int, kind: ConeKind = L1) -> StandardCone:
    """C^{m,n} as a quotient of □^{m+n}."""
    if m < 0 or n < 0:
        raise PreconditionError(f"no standard cone C^{{{m},{n}}}")
    N = m + n
    box = cube(N)
    pairs = [(cube_ref(a), cube_ref(b)) for a, b in cone_relations(m, n, kind)]
    glued = quotient(box, pairs, f"C^{m},{n}_{kind.name}")
    return StandardCone(m, n, kind, glued.complex, glued.projection)


def q_object(n: int, kind: ConeKind = L1) -> StandardCone:
    """Qⁿ = C^{0,n}."""
    return standard_cone(0, n, kind)


# Recognizing cones --------------------------------------------------------

def _face_condition_operator(N: int, i: int) -> BoxOperator:
    """∂_{N,0}…∂_{i+1,0}∂_{i,1}σ_i…σ_{N-1} : [1]^{N-1} → [1]^N."""
    faces = tuple((c, 0) for c in range(N, i, -1)) + ((i, 1),)
    return BoxOperator(N - 1, N, faces=faces, degens=tuple(range(i, N)))


def is_cone_by_faces(X: CubicalSet, x: Any, m: int, n: int, kind: ConeKind = L1) -> bool:
    N = m + n
    for i in range(1, n + 1):
        lhs = X.act(x, _conjugate(face(N, i, 1), kind))
        rhs = X.act(x, _conjugate(_face_condition_operator(N, i), kind))
        if lhs != rhs:
            return False
    return True


def is_cone_by_factoring(X: CubicalSet, x: Any, m: int, n: int, kind: ConeKind = L1) -> bool:
    return all(X.act(x, a) == X.act(x, b) for a, b in cone_relations(m, n, kind))


def is_cone(X: CubicalSet, x: Any, m: int, n: int, kind: ConeKind = L1,
            cross_check: Optional[bool] = None) -> bool:
    """
    Is the (m+n)-cube x an (m,n)-cone?

    Args:
        X: Cubical set containing x
        x: A cube of dimension m+n
        m: Number of base coordinates
        n: Number of cone coordinates
        kind: Cone kind
        cross_check: Compare the face-equation test with the factorization
                     test (cone.cross_check_is_cone by default)

    Raises:
        ConeCheckMismatch: The two tests disagree
    """
    if X.cube_dim(x) != m + n:
        raise PreconditionError(f"an ({m},{n})-cone has dimension {m + n}")
    if cross_check is None:
        cross_check = get_setting('cone', 'cross_check_is_cone', True)
    by_faces = is_cone_by_faces(X, x, m, n, kind)
    if cross_check:
        by_factoring = is_cone_by_factoring(X, x, m, n, kind)
        if by_faces != by_factoring:
            raise ConeCheckMismatch(f"{x}: face equations say {by_faces}, factorization says {by_factoring}")
    return by_faces


def cone_as_map(X: CubicalSet, x: Any, m: int, n: int, kind: ConeKind = L1) -> ComplexMap:
    """The map C^{m,n} → X through which a cone factors."""
    if not is_cone(X, x, m, n, kind):
        raise PreconditionError(f"{x} is not an ({m},{n})-cone")
    C = standard_cone(m, n, kind)
    values: Dict[str, Any] = {}
    for c, r in C.projection.assignment.items():
        if r.op.is_identity and r.target not in values:
            values[r.target] = X.act(x, pattern_operator(c))
    return ComplexMap(C.complex, X, values)


# B^{m,n,k} and its decomposition -----------------------------------------

@dataclass(frozen=True)
class BoxFilling:
    """Filling the open box of C^{m',n} missing ∂_{i,ε}, placed in C^{m,n} by a face operator."""

    m: int
    n: int
    missing: Tuple[int, int]
    path: BoxOperator


def b_complex(m: int, n: int, k: int) -> Tuple[CubicalComplex, ComplexMap]:
    """
    The subcomplex of C^{m,n} generated by the images of ∂_{1,0} … ∂_{k,0}
    and of every ∂_{i,1}, with its inclusion.
    """
    N = m + n
    if m < 0 or n < 0 or not 0 <= k <= N:
        raise PreconditionError(f"B^{{{m},{n},{k}}} needs 0 <= k <= m+n")
    C = standard_cone(m, n)
    faces = [face(N, i, 0) for i in range(1, k + 1)] + [face(N, i, 1) for i in range(1, N + 1)]
    return subcomplex(C.complex, {C.image_of(op).target for op in faces}, f"B^{m},{n},{k}")


def filling_steps(m: int, n: int, k: int, path: Optional[BoxOperator] = None) -> List[BoxFilling]:
    """
    B^{m,n,k} ↪ C^{m,n} as a sequence of open-box fillings (m, n ≥ 1, n ≤ k ≤ m+n-1).

    B^{m,n,k} → B^{m,n,k+1} is a pushout of B^{m-1,n,k} → C^{m-1,n} along the
    face ∂_{k+1,0}; the last step fills ∂_{m+n,0}.
    """
    if m < 1 or n < 1 or not n <= k <= m + n - 1:
        raise PreconditionError(f"no decomposition of B^{{{m},{n},{k}}}")
    path = path or identity(m + n)
    if k == m + n - 1:
        return [BoxFilling(m, n, (m + n, 0), path)]
    inner = filling_steps(m - 1, n, k, compose(path, face(m + n, k + 1, 0)))
    return inner + filling_steps(m, n, k + 1, path)


def decomposition_check(m: int, n: int, k: int) -> CheckReport:
    """Every filling has a degenerate critical edge and the fillings exhaust C^{m,n}."""
    report = CheckReport("b_decomposition", parameters={"m": m, "n": n, "k": k})
    C = standard_cone(m, n)
    B, _ = b_complex(m, n, k)
    generators = set(B.ids())
    for step in filling_steps(m, n, k):
        N = step.m + step.n
        edge = C.image_of(compose(step.path, critical_edge(N, *step.missing)))
        report.record(edge.is_degenerate, f"critical edge of {step} is not degenerate")
        generators.add(C.image_of(step.path).target)
    filled, _ = subcomplex(C.complex, generators)
    report.record(filled.counts() == C.complex.counts(), "fillings do not exhaust the cone")
    return report


# Checks on cones ----------------------------------------------------------

def face_iso_check(max_total: int = 4) -> CheckReport:
    """Images of ∂_{i,0} (i ≤ n) are C^{m,n-1}; images of ∂_{i,ε} (i > n) are C^{m-1,n}."""
    report = CheckReport("face_iso", parameters={"max_total": max_total})
    for N in range(1, max_total + 1):
        for n in range(N + 1):
            m = N - n
            C = standard_cone(m, n)
            for i in range(1, N + 1):
                for eps in ((0,) if i <= n else (0, 1)):
                    image, _ = subcomplex(C.complex, [C.image_of(face(N, i, eps)).target])
                    expected = standard_cone(m, n - 1) if i <= n else standard_cone(m - 1, n)
                    report.record(is_isomorphic(image, expected.complex, respect_markings=False),
                                  f"C^{m},{n}: face ({i},{eps})")
    return report


def cone_edge_check(max_total: int = 4) -> CheckReport:
    """For n ≥ 1 the critical edge of ∂_{i,0}, 2 ≤ i ≤ m+n, becomes degenerate in C^{m,n}."""
    report = CheckReport("cone_edge", parameters={"max_total": max_total})
    for N in range(2, max_total + 1):
        for n in range(1, N + 1):
            C = standard_cone(N - n, n)
            for i in range(2, N + 1):
                report.record(C.image_of(critical_edge(N, i, 0)).is_degenerate, f"C^{N - n},{n}: edge {i}")
    return report


def cone_face_degeneracy_check(X: CubicalSet, max_total: int = 4) -> CheckReport:
    """The six face and degeneracy clauses, over every cube of X up to max_total."""
    report = CheckReport("cone_face_degeneracy", parameters={"X": X.name, "max_total": max_total})
    for N in range(1, min(max_total, X.dim) + 1):
        for x in X.cubes(N):
            for n in range(N + 1):
                m = N - n
                if not is_cone(X, x, m, n):
                    continue
                for i in range(1, n + 1):
                    report.record(is_cone(X, X.face(x, i, 0), m, n - 1), f"{x}: d{i}_0 of ({m},{n})")
                    report.record(is_cone(X, X.act(x, connection(N + 1, i, 0)), m, n + 1),
                                  f"{x}: g{i}_0 of ({m},{n})")
                for i in range(n + 1, N + 1):
                    report.record(is_cone(X, X.face(x, i, 0), m - 1, n), f"{x}: d{i}_0 of ({m},{n})")
                    for eps in (0, 1):
                        report.record(is_cone(X, X.act(x, connection(N + 1, i, eps)), m + 1, n),
                                      f"{x}: g{i}_{eps} of ({m},{n})")
                if m >= 1:
                    for i in range(1, N + 1):
                        report.record(is_cone(X, X.face(x, i, 1), m - 1, n), f"{x}: d{i}_1 of ({m},{n})")
                for i in range(n + 1, N + 2):
                    report.record(is_cone(X, X.act(x, degeneracy(N + 1, i)), m + 1, n),
                                  f"{x}: s{i} of ({m},{n})")
    return report.log()


def sa1_check(X: CubicalSet, max_total: int = 3) -> CheckReport:
    """A degenerate (m,n)-cone (m ≥ 1) ending in σ_a or γ_{b,1} has a, b ≥ n+1."""
    report = CheckReport("cone_standard_form", parameters={"X": X.name})
    for N in range(1, min(max_total, X.dim) + 1):
        for x in X.cubes(N):
            _, op = X.standard_form(x)
            if op.is_identity:
                continue
            for n in range(N):
                if not is_cone(X, x, N - n, n):
                    continue
                if op.degens:
                    report.record(op.degens[-1] >= n + 1, f"{x}: s{op.degens[-1]} in an ({N - n},{n})-cone")
                elif op.connections and op.connections[-1][1] == 1:
                    b = op.connections[-1][0]
                    report.record(b >= n + 1, f"{x}: g{b}_1 in an ({N - n},{n})-cone")
    return report


def face_condition_check(X: CubicalSet, max_total: int = 4) -> CheckReport:
    """The face equations and the factorization through C^{m,n} pick out the same cubes."""
    report = CheckReport("cone_face_condition", parameters={"X": X.name, "max_total": max_total})
    for N in range(min(max_total, X.dim) + 1):
        for x in X.cubes(N):
            for n in range(N + 1):
                try:
                    is_cone(X, x, N - n, n, cross_check=True)
                    report.record(True)
                except ConeCheckMismatch as e:
                    report.record(False, str(e))
    return report


def kind_coherence_check(X: CubicalComplex) -> CheckReport:
    """C_{W,ε}X ≅ (C_{L,1}(X^k))^k for the matching involution k."""
    report = CheckReport("cone_kind_coherence", parameters={"X": X.name})
    for kind in CONE_KINDS[1:]:
        direct = cone(X, kind).complex
        via = involuted(cone(involuted(X, kind.involution), L1).complex, kind.involution)
        report.record(is_isomorphic(direct, via, respect_markings=False), f"kind {kind.name}")
        standard = standard_cone(1, 1, kind).complex
        report.record(is_isomorphic(standard, iterated_cone(cube(1), 1, kind), respect_markings=False),
                      f"standard cone of kind {kind.name}")
    return report


# The cosimplicial object Q ------------------------------------------------

def cosimplicial_generator(kind: ConeKind, generator: SimplexOperator) -> BoxOperator:
    """The box operator inducing Q of a single face or degeneracy."""
    if generator.faces and not generator.degens and len(generator.faces) == 1:
        n, j = generator.cod, generator.faces[0]
        op = face(n, n, 1) if j == 0 else face(n, n - j + 1, 0)
    elif generator.degens and not generator.faces and len(generator.degens) == 1:
        n, j = generator.dom, generator.degens[0]
        op = degeneracy(n, n) if j == 0 else connection(n, n - j, 0)
    else:
        raise PreconditionError(f"{generator} is not a generator")
    return _conjugate(op, kind)


def cosimplicial_operator(alpha: SimplexOperator, kind: ConeKind = L1) -> BoxOperator:
    """A box operator [1]^k → [1]^n inducing Q(α): Q^k → Qⁿ."""
    result = identity(alpha.dom)
    for g in reversed(alpha.word()):
        single = simplex_face(g.dim, g.index) if g.kind == "face" else simplex_degeneracy(g.dim, g.index)
        result = compose(cosimplicial_generator(kind, single), result)
    return result


def cosimplicial_map(alpha: SimplexOperator, kind: ConeKind = L1) -> ComplexMap:
    """Q(α): Q^k → Qⁿ as a map of complexes."""
    source, target = q_object(alpha.dom, kind), q_object(alpha.cod, kind)
    beta = cosimplicial_operator(alpha, kind)
    assignment = {c: target.image_of(compose(beta, pattern_operator(c))) for c in source.complex.ids()}
    return ComplexMap(source.complex, target.complex, assignment)


def _simplicial_generators(n_max: int) -> List[SimplexOperator]:
    gens = []
    for n in range(1, n_max + 1):
        gens += [simplex_face(n, i) for i in range(n + 1)]
        gens += [simplex_degeneracy(n, j) for j in range(n)]
    return gens


def cosimplicial_identity_check(n_max: int = 4, kind: ConeKind = L1) -> CheckReport:
    """Q(g)∘Q(f) = Q(g∘f) for composable generators, compared as maps of complexes."""
    report = CheckReport("cosimplicial_identities", parameters={"n_max": n_max, "kind": kind.name})
    gens = _simplicial_generators(n_max + 1)
    for f in gens:
        for g in gens:
            if g.dom != f.cod or max(f.dom, f.cod, g.cod) > n_max:
                continue
            two_step = compose_maps(cosimplicial_map(g, kind), cosimplicial_map(f, kind))
            report.record(two_step.same_as(cosimplicial_map(simplex_compose(g, f), kind)), f"{g} ∘ {f}")
    return report


def f_naturality(n_max: int = 4) -> CheckReport:
    """F_n ∘ Q(α) = α ∘ F_k on vertices, for every generator α with target ≤ n_max."""
    report = CheckReport("f_naturality", parameters={"n_max": n_max})
    for alpha in _simplicial_generators(n_max + 1):
        if max(alpha.dom, alpha.cod) > n_max:
            continue
        k, n = alpha.dom, alpha.cod
        vm = evaluate(cosimplicial_operator(alpha))
        F_k, F_n = PosetMapFG(k), PosetMapFG(n)
        table = alpha.table()
        ok = all(F_n.F(vm(p)) == table[F_k.F(p)] for p in F_k.points)
        report.record(ok, f"{alpha}")
    return report


# Q on simplicial sets ------------------------------------------------------

@dataclass
class QResult:
    source: SimplicialComplex
    kind: ConeKind
    complex: CubicalComplex
    projection: ComplexMap

    def cube_of(self, s: SimplexRef, op: BoxOperator) -> CubeRef:
        """The cube Q(s) applied to the cube op of □ⁿ (n = dim s)."""
        if not s.op.is_identity:
            op = compose(cosimplicial_operator(s.op, self.kind), op)
        Qd = q_object(self.source.dims[s.target], self.kind)
        local = Qd.image_of(op)
        cell = f"{s.target}/{local.target}"
        return self.complex.act(self.projection.assignment[cell], local.op)


def q_functor(S: SimplicialComplex, kind: ConeKind = L1, name: Optional[str] = None) -> QResult:
    """
    Q(S): one copy of Q^{dim s} per non-degenerate simplex s, glued along
    the cosimplicial face maps.
    """
    parts = [q_object(S.dims[s], kind).complex for s in S.ids()]
    prefixes = [f"{s}/" for s in S.ids()]
    union, _ = disjoint_union(parts, prefixes)
    provenance = {}
    for s, part in zip(S.ids(), parts):
        provenance.update({f"{s}/{c}": (s, c) for c in part.ids()})
    union = CubicalComplex(union.name, union.dims, union.face_table, (), provenance)

    def local(s: str, op: BoxOperator) -> CubeRef:
        r = q_object(S.dims[s], kind).image_of(op)
        return CubeRef(f"{s}/{r.target}", r.op)

    pairs = []
    for s in S.ids():
        n = S.dims[s]
        for i in range(n + 1) if n else ():
            r = S.face_table[(s, i)]
            here = local(s, cosimplicial_operator(simplex_face(n, i), kind))
            there = local(r.target, cosimplicial_operator(r.op, kind))
            pairs.append((here, there))

    def choose(ids: List[str]) -> str:
        return min(ids, key=lambda c: (S.dims[provenance[c][0]], c))

    glued = quotient(union, pairs, name or f"Q_{kind.name}({S.name})", choose)
    return QResult(S, kind, glued.complex, glued.projection)


def q_map(f: SimplicialMap, source: Optional[QResult] = None, target: Optional[QResult] = None,
          kind: ConeKind = L1) -> ComplexMap:
    """Q(f): QS → QS'."""
    source = source or q_functor(f.domain, kind)
    target = target or q_functor(f.codomain, kind)
    assignment = {}
    for c in source.complex.ids():
        s, qc = source.complex.provenance[c]
        assignment[c] = target.cube_of(f.assignment[s], pattern_operator(qc))
    return ComplexMap(source.complex, target.complex, assignment)


def q_horn_image(n: int, i: int, kind: ConeKind = L1) -> bool:
    """QΛⁿ_i is the image of ⊓ⁿ_{n-i+1,0} in Qⁿ, for 1 ≤ i ≤ n."""
    if not 1 <= i <= n:
        raise PreconditionError(f"horn index {i} is outside 1..{n}: Λ^{n}_{i} has no open box")
    Q = q_object(n, kind)
    box = open_box(n, n - i + 1, 0)
    image, _ = subcomplex(Q.complex, {Q.projection.assignment[c].target for c in box.ids()})
    return is_isomorphic(q_functor(horn(n, i), kind).complex, image, respect_markings=False)


# The right adjoint ∫ --------------------------------------------------------

@dataclass(frozen=True, order=True)
class QMap:
    """An n-simplex of ∫X: a map Qⁿ → X by its values."""

    dim: int
    images: Tuple[Tuple[str, Any], ...]


class IntegralSet(ImplicitSimplicialSet):
    """(∫X)_n = cSet(Qⁿ, X), with simplicial operators acting by precomposition."""

    def __init__(self, X: CubicalSet, bound: int, kind: ConeKind = L1, budget: Optional[int] = None):
        super().__init__(f"∫_{kind.name}({X.name})", bound)
        self.X = X
        self.kind = kind
        self.budget = budget

    def simplex_dim(self, h: QMap) -> int:
        return h.dim

    def _enumerate(self, n: int) -> Iterable[QMap]:
        for f in complex_maps(q_object(n, self.kind).complex, self.X, budget=self.budget):
            yield QMap(n, tuple(sorted(f.assignment.items())))

    def as_map(self, h: QMap) -> ComplexMap:
        return ComplexMap(q_object(h.dim, self.kind).complex, self.X, dict(h.images))

    def act(self, h: QMap, alpha: SimplexOperator) -> QMap:
        f = self.as_map(h)
        induced = cosimplicial_map(alpha, self.kind)
        return QMap(alpha.dom, tuple(sorted((c, f(r)) for c, r in induced.assignment.items())))


def integral(X: CubicalSet, bound: int, kind: ConeKind = L1, budget: Optional[int] = None,
             name: Optional[str] = None) -> SimplicialComplex:
    """∫X materialized up to the bound."""
    return integral_result(X, bound, kind, budget, name).complex


def integral_result(X: CubicalSet, bound: int, kind: ConeKind = L1, budget: Optional[int] = None,
                    name: Optional[str] = None):
    return materialize(IntegralSet(X, bound, kind, budget), bound, name or f"∫_{kind.name}({X.name})")


@dataclass
class CounitResult:
    integral: SimplicialComplex
    q: QResult
    map: ComplexMap


def counit(X: CubicalComplex, kind: ConeKind = L1, budget: Optional[int] = None) -> CounitResult:
    """Q∫X → X, sending the copy of Qⁿ for a simplex h: Qⁿ → X along h."""
    integ = integral_result(X, max(X.dim, 0), kind, budget)
    Q = q_functor(integ.complex, kind)
    embedding = integ.embedding.assignment
    assignment = {}
    for c in Q.complex.ids():
        s, qc = Q.complex.provenance[c]
        h: QMap = embedding[s]
        assignment[c] = dict(h.images)[qc]
    return CounitResult(integ.complex, Q, ComplexMap(Q.complex, X, assignment))


def counit_image(X: CubicalComplex, kind: ConeKind = L1) -> CubicalComplex:
    result = counit(X, kind)
    return subcomplex(X, {r.target for r in result.map.assignment.values()}, f"im({X.name})")[0]


def q_stand_form_check(X: CubicalComplex) -> CheckReport:
    """Images of non-degenerate cubes under the counit use no positive connections."""
    report = CheckReport("q_standard_form", parameters={"X": X.name})
    result = counit(X)
    report.record(is_mono(result.map), "the counit is not a monomorphism")
    for c, r in result.map.assignment.items():
        report.record(all(eps == 0 for _, eps in r.op.connections), f"{c} ↦ {r}")
    return report


def q_full_faithfulness_check(shapes: Sequence[SimplicialComplex]) -> CheckReport:
    """sSet(S, S') → cSet(QS, QS') is a bijection for all pairs of shapes."""
    report = CheckReport("q_fully_faithful", parameters={"shapes": [S.name for S in shapes]})
    qs = {id(S): q_functor(S) for S in shapes}
    for S in shapes:
        for T in shapes:
            source, target = qs[id(S)], qs[id(T)]
            images = {tuple(sorted(q_map(f, source, target).assignment.items()))
                      for f in simplicial_maps(S, T)}
            count = count_maps(source.complex, target.complex)
            report.record(len(images) == count, f"{S.name} -> {T.name}: {len(images)} vs {count}")
    return report


# F̄: T(QS) → S ---------------------------------------------------------------

def f_bar(S: SimplicialComplex) -> SimplicialMap:
    """On the copy of TQⁿ for a simplex s, postcompose with F: [1]ⁿ → [n]."""
    Q = q_functor(S)
    T = triangulate(Q.complex)
    assignment = {}
    for t in T.complex.ids():
        q, chain = T.origin(t)
        s, qc = Q.complex.provenance[q]
        n = S.dims[s]
        vm = evaluate(pattern_operator(qc))
        fg = PosetMapFG(n)
        values = [fg.F(vm(label_point(v))) for v in chain]
        assignment[t] = S.act(S.ref(s), from_table(values, n))
    return SimplicialMap(T.complex, S, assignment)


def check_f_bar(S: SimplicialComplex) -> CheckReport:
    """F̄ is a simplicial map and hits every non-degenerate simplex."""
    report = CheckReport("f_bar", parameters={"S": S.name})
    fb = f_bar(S)
    validation = fb.validate()
    report.record(validation.ok, validation.violations[0] if validation.violations else None)
    hit = {r.target for r in fb.assignment.values() if not r.is_degenerate}
    report.record(hit == set(S.ids()), f"missed {sorted(set(S.ids()) - hit)[:3]}")
    return report
