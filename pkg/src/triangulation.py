"""
Passing between cubical and simplicial sets.

triangulate(X) glues one copy of N([1]ⁿ) per non-degenerate n-cube along
the faces of X. u_truncated(S) is its right adjoint evaluated up to a bound:
n-cubes are simplicial maps N([1]ⁿ) → S. The posets maps F: [1]ⁿ → [n] and
G: [n] → [1]ⁿ and the simplicial mapping spaces live here as well.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

try:
    from .boxcat import BoxOperator, cube_vertices, evaluate, face as box_face
    from .checks import CheckReport
    from .complex import ComplexMap, CubicalComplex, ImplicitComplex, is_mono as cubical_is_mono, pushout as cubical_pushout
    from .errors import PreconditionError
    from .gluing import glue
    from .simplex import (PosetNerve, SimplexOperator, SimplexRef, SimplicialComplex, SimplicialMap,
                          SimplicialSet, ImplicitSimplicialSet, SIMPLEX_ALGEBRA, face, find_isomorphism,
                          from_table, identity_map, is_mono, materialize, product, product_map, pushout, simplicial_maps,
                          total_degeneracy, vertex_operator)
    from .tensor import product as tensor_product, pushout_product
except ImportError:
    from boxcat import BoxOperator, cube_vertices, evaluate, face as box_face
    from checks import CheckReport
    from complex import ComplexMap, CubicalComplex, ImplicitComplex, is_mono as cubical_is_mono, pushout as cubical_pushout
    from errors import PreconditionError
    from gluing import glue
    from simplex import (PosetNerve, SimplexOperator, SimplexRef, SimplicialComplex, SimplicialMap,
                         SimplicialSet, ImplicitSimplicialSet, SIMPLEX_ALGEBRA, face, find_isomorphism,
                         from_table, identity_map, is_mono, materialize, product, product_map, pushout, simplicial_maps,
                         total_degeneracy, vertex_operator)
    from tensor import product as tensor_product, pushout_product

logger = logging.getLogger(__name__)


def vertex_label(point: Sequence[int]) -> str:
    return "v" + "".join(str(int(b)) for b in point)


def label_point(label: str) -> Tuple[int, ...]:
    return tuple(int(ch) for ch in label[1:])


@lru_cache(maxsize=None)
def cube_nerve(n: int) -> PosetNerve:
    """N([1]ⁿ) with vertices 'v' + bits and chains joined by '<'."""
    graph = nx.DiGraph()
    points = [tuple(int(b) for b in row) for row in cube_vertices(n)]
    graph.add_nodes_from(vertex_label(p) for p in points)
    for p in points:
        for k in range(n):
            if p[k] == 0:
                q = p[:k] + (1,) + p[k + 1:]
                graph.add_edge(vertex_label(p), vertex_label(q))
    return PosetNerve(graph, f"N([1]^{n})")


def maximal_chains(n: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """The n! maximal chains of [1]ⁿ, one per order of switching coordinates on."""
    chains = []
    for order in itertools.permutations(range(n)):
        point = [0] * n
        chain = [tuple(point)]
        for k in order:
            point[k] = 1
            chain.append(tuple(point))
        chains.append(tuple(chain))
    return chains


def _image_chain(op: BoxOperator, chain: Iterable[Tuple[int, ...]]) -> List[str]:
    vm = evaluate(op)
    return [vertex_label(vm(p)) for p in chain]


@dataclass
class TriangulationResult:
    """T(X) together with the record of where each piece came from."""

    source: CubicalComplex
    complex: SimplicialComplex
    projection: Dict[str, SimplexRef]
    representatives: Dict[str, str]

    @staticmethod
    def cell_id(cube_id: str, chain_id: str) -> str:
        return f"{cube_id}/{chain_id}"

    @staticmethod
    def split_cell(cell: str) -> Tuple[str, str]:
        cube_id, _, chain_id = cell.rpartition("/")
        return cube_id, chain_id

    def simplex_of(self, cube_id: str, chain: Sequence[str]) -> SimplexRef:
        """The simplex of T(X) given by a weakly increasing chain of vertex labels in a cube."""
        N = cube_nerve(self.source.dims[cube_id])
        local = N.chain_ref(chain)
        r = self.projection[self.cell_id(cube_id, local.target)]
        return self.complex.act(r, local.op)

    def origin(self, simplex_id: str) -> Tuple[str, Tuple[str, ...]]:
        """A cube and chain of vertex labels representing a non-degenerate simplex."""
        cube_id, chain_id = self.split_cell(self.representatives[simplex_id])
        return cube_id, cube_nerve(self.source.dims[cube_id]).chain_of(chain_id)


def triangulate(X: CubicalComplex, name: Optional[str] = None) -> TriangulationResult:
    """
    T(X) = colim N([1]ⁿ) over the cubes of X.

    Each face x∂_{i,ε} = y·φ identifies the chains of the face of x's copy
    with their images under φ in y's copy; maximal chains generate.
    """
    dims: Dict[str, int] = {}
    for x in X.ids():
        N = cube_nerve(X.dims[x])
        for c in N.ids():
            dims[TriangulationResult.cell_id(x, c)] = N.dims[c]

    def act(cell: str, op: SimplexOperator) -> Tuple[str, SimplexOperator]:
        x, c = TriangulationResult.split_cell(cell)
        N = cube_nerve(X.dims[x])
        r = N.act(N.ref(c), op)
        return TriangulationResult.cell_id(x, r.target), r.op

    def local_ref(cube_id: str, chain: Sequence[str]) -> Tuple[str, SimplexOperator]:
        r = cube_nerve(X.dims[cube_id]).chain_ref(chain)
        return TriangulationResult.cell_id(cube_id, r.target), r.op

    pairs = []
    for x in X.ids():
        n = X.dims[x]
        for i in range(1, n + 1):
            for eps in (0, 1):
                r = X.face_table[(x, i, eps)]
                for chain in maximal_chains(n - 1):
                    pairs.append((local_ref(x, _image_chain(box_face(n, i, eps), chain)),
                                  local_ref(r.target, _image_chain(r.op, chain))))

    def choose(cells: List[str]) -> str:
        return min(cells, key=lambda cell: (X.dims[TriangulationResult.split_cell(cell)[0]], cell))

    glued = glue(dims, act, pairs, SIMPLEX_ALGEBRA, choose)
    faces = {(c, i): SimplexRef(t, op) for (c, i), (t, op) in glued.faces.items()}
    T = SimplicialComplex(name or f"T({X.name})", glued.dims, faces)
    projection = {cell: SimplexRef(t, op) for cell, (t, op) in glued.projection.items()}
    logger.debug(f"triangulated {X.name} into {T.counts()}")
    return TriangulationResult(X, T, projection, glued.representatives)


def triangulate_map(f: ComplexMap, source: Optional[TriangulationResult] = None,
                    target: Optional[TriangulationResult] = None) -> SimplicialMap:
    """T(f) for a map between explicit complexes."""
    if not isinstance(f.codomain, CubicalComplex):
        raise PreconditionError("triangulating a map needs an explicit codomain")
    source = source or triangulate(f.domain)
    target = target or triangulate(f.codomain)
    assignment = {}
    for s in source.complex.ids():
        x, chain = source.origin(s)
        image = f.assignment[x]
        moved = _image_chain(image.op, [label_point(v) for v in chain])
        assignment[s] = target.simplex_of(image.target, moved)
    return SimplicialMap(source.complex, target.complex, assignment)


def triangulation_preserves_mono(f: ComplexMap) -> bool:
    """T(f) is a mono whenever f is (only meaningful for monos f)."""
    if not cubical_is_mono(f):
        raise PreconditionError("expected a monomorphism")
    return is_mono(triangulate_map(f))


def triangulation_pushout_check(f: ComplexMap, g: ComplexMap) -> bool:
    """T of a pushout of complexes is the pushout of the triangulations."""
    cubical = cubical_pushout(f, g)
    TA, TX, TY = triangulate(f.domain), triangulate(f.codomain), triangulate(g.codomain)
    simplicial = pushout(triangulate_map(f, TA, TX), triangulate_map(g, TA, TY))
    return find_isomorphism(triangulate(cubical.complex).complex, simplicial.complex) is not None


def triangulation_product_check(X: CubicalComplex, Y: CubicalComplex) -> bool:
    """T(X⊗Y) ≅ T(X) × T(Y)."""
    lhs = triangulate(tensor_product(X, Y, verify=False)).complex
    rhs = product(triangulate(X).complex, triangulate(Y).complex)
    return find_isomorphism(lhs, rhs) is not None


def triangulation_pushout_product_check(f: ComplexMap, g: ComplexMap) -> bool:
    """T(f ⊗̂ g) has the pushout of Tf × TX and TA × Tg as its domain, and is a mono."""
    pp = pushout_product(f, g)
    TA, TB = triangulate(f.domain), triangulate(f.codomain)
    TX, TY = triangulate(g.domain), triangulate(g.codomain)
    Tf, Tg = triangulate_map(f, TA, TB), triangulate_map(g, TX, TY)
    AX = product(TA.complex, TX.complex)
    to_ay = product_map(identity_map(TA.complex), Tg, AX, product(TA.complex, TY.complex))
    to_bx = product_map(Tf, identity_map(TX.complex), AX, product(TB.complex, TX.complex))
    simplicial = pushout(to_ay, to_bx)
    domain = triangulate(pp.pushout.complex).complex
    return find_isomorphism(domain, simplicial.complex) is not None and is_mono(triangulate_map(pp.map))


# U: simplicial maps out of N([1]ⁿ) --------------------------------------

@dataclass(frozen=True, order=True)
class UCube:
    dim: int
    images: Tuple[Tuple[str, Any], ...]


class UComplex(ImplicitComplex):
    """(US)_n = sSet(N([1]ⁿ), S), acted on through N of the vertex maps."""

    def __init__(self, S: SimplicialSet, bound: int, budget: Optional[int] = None):
        super().__init__(f"U({S.name})", bound)
        self.simplicial = S
        self.budget = budget

    def cube_dim(self, h: UCube) -> int:
        return h.dim

    def _enumerate(self, n: int) -> Iterable[UCube]:
        for f in simplicial_maps(cube_nerve(n), self.simplicial, budget=self.budget):
            yield UCube(n, tuple(sorted(f.assignment.items())))

    def act(self, h: UCube, op: BoxOperator) -> UCube:
        values = dict(h.images)
        source, target = cube_nerve(op.dom), cube_nerve(op.cod)
        images = []
        for c in source.ids():
            chain = _image_chain(op, [label_point(v) for v in source.chain_of(c)])
            r = target.chain_ref(chain)
            images.append((c, self.simplicial.act(values[r.target], r.op)))
        return UCube(op.dom, tuple(images))

    def as_map(self, h: UCube) -> SimplicialMap:
        return SimplicialMap(cube_nerve(h.dim), self.simplicial, dict(h.images))


def u_truncated(S: SimplicialSet, bound: int, budget: Optional[int] = None) -> UComplex:
    return UComplex(S, bound, budget)


# The comparison posets maps F and G -------------------------------------

class PosetMapFG:
    """
    F: [1]ⁿ → [n] and G: [n] → [1]ⁿ.

    F(b) = n - i + 1 for the first coordinate i with b_i = 1 (0 if there is
    none); G(a)_i = 0 for i ≤ n - a and 1 otherwise. F is left adjoint to G.
    """

    def __init__(self, n: int):
        if n < 0:
            raise PreconditionError(f"negative dimension {n}")
        self.n = n
        self.points = [tuple(int(b) for b in row) for row in cube_vertices(n)]

    def F(self, b: Sequence[int]) -> int:
        for i, bit in enumerate(b, start=1):
            if bit:
                return self.n - i + 1
        return 0

    def G(self, a: int) -> Tuple[int, ...]:
        return tuple(0 if i <= self.n - a else 1 for i in range(1, self.n + 1))

    def f_table(self) -> np.ndarray:
        return np.array([self.F(p) for p in self.points], dtype=np.int64)

    def g_table(self) -> np.ndarray:
        return np.array([self.G(a) for a in range(self.n + 1)], dtype=np.int64).reshape(self.n + 1, self.n)

    def is_monotone(self) -> bool:
        f_ok = all(self.F(p) <= self.F(q) for p in self.points for q in self.points
                   if all(x <= y for x, y in zip(p, q)))
        g = self.g_table()
        g_ok = bool(np.all(np.diff(g, axis=0) >= 0)) if self.n else True
        return f_ok and g_ok

    def retraction_holds(self) -> bool:
        """F∘G = id on [n]."""
        return all(self.F(self.G(a)) == a for a in range(self.n + 1))

    def adjunction_holds(self) -> bool:
        """F(b) ≤ a iff b ≤ G(a), for all pairs."""
        return all((self.F(b) <= a) == all(x <= y for x, y in zip(b, self.G(a)))
                   for b in self.points for a in range(self.n + 1))

    def check(self) -> CheckReport:
        report = CheckReport("poset_maps_fg", parameters={"n": self.n})
        report.record(self.is_monotone(), "F or G is not monotone")
        report.record(self.retraction_holds(), "F∘G is not the identity")
        report.record(self.adjunction_holds(), "F is not left adjoint to G")
        return report


def f_chain(n: int, chain: Sequence[str]) -> Tuple[int, ...]:
    """F applied to a chain of vertex labels of [1]ⁿ."""
    fg = PosetMapFG(n)
    return tuple(fg.F(label_point(v)) for v in chain)


# Simplicial mapping spaces ----------------------------------------------

HOM_KINDS = ("two_sided", "left", "right")


def _vertex(S: SimplicialComplex, x: Union[str, SimplexRef]) -> SimplexRef:
    ref = S.ref(x) if isinstance(x, str) else x
    if ref.dim != 0:
        raise PreconditionError(f"{ref} is not a vertex")
    return ref


@lru_cache(maxsize=None)
def prism_nerve(n: int) -> PosetNerve:
    """N([n]×[1]) with elements 'a:e'."""
    graph = nx.DiGraph()
    graph.add_nodes_from(f"{a}:{e}" for a in range(n + 1) for e in (0, 1))
    for a in range(n + 1):
        graph.add_edge(f"{a}:0", f"{a}:1")
        if a < n:
            for e in (0, 1):
                graph.add_edge(f"{a}:{e}", f"{a + 1}:{e}")
    return PosetNerve(graph, f"N([{n}]x[1])")


@dataclass(frozen=True, order=True)
class PrismMap:
    dim: int
    images: Tuple[Tuple[str, Any], ...]


class SimplicialHom(ImplicitSimplicialSet):
    """
    Hom_S(x₀, x₁) in three flavours.

    right: (n+1)-simplices s with s∂_{n+1} the degenerate x₀ and last vertex x₁.
    left: (n+1)-simplices s with first vertex x₀ and s∂_0 the degenerate x₁.
    two_sided: maps N([n]×[1]) → S sending [n]×{ε} to the degenerate x_ε.
    """

    def __init__(self, kind: str, S: SimplicialComplex, x0: Union[str, SimplexRef],
                 x1: Union[str, SimplexRef], bound: int, budget: Optional[int] = None):
        if kind not in HOM_KINDS:
            raise PreconditionError(f"unknown hom kind {kind!r}")
        self.kind = kind
        self.S = S
        self.x0, self.x1 = _vertex(S, x0), _vertex(S, x1)
        self.budget = budget
        super().__init__(f"Hom^{kind}_{S.name}({self.x0},{self.x1})", bound)

    def _flat(self, x: SimplexRef, n: int) -> SimplexRef:
        return self.S.act(x, total_degeneracy(n))

    def simplex_dim(self, s: Any) -> int:
        if self.kind == "two_sided":
            return s.dim
        return s.dim - 1

    def _enumerate(self, n: int) -> Iterable[Any]:
        S = self.S
        if self.kind == "right":
            for s in S.simplices(n + 1):
                if (S.act(s, face(n + 1, n + 1)) == self._flat(self.x0, n)
                        and S.act(s, vertex_operator(n + 1, n + 1)) == self.x1):
                    yield s
        elif self.kind == "left":
            for s in S.simplices(n + 1):
                if (S.act(s, vertex_operator(n + 1, 0)) == self.x0
                        and S.act(s, face(n + 1, 0)) == self._flat(self.x1, n)):
                    yield s
        else:
            P = prism_nerve(n)
            fixed = {f"{a}:{e}": (self.x0 if e == 0 else self.x1) for a in range(n + 1) for e in (0, 1)}
            for f in simplicial_maps(P, S, fixed=fixed, budget=self.budget):
                if all(f.assignment[c] == self._flat(self.x0 if P.chain_of(c)[0].endswith(":0") else self.x1, P.dims[c])
                       for c in P.ids() if len({v[-1] for v in P.chain_of(c)}) == 1):
                    yield PrismMap(n, tuple(sorted(f.assignment.items())))

    def act(self, s: Any, op: SimplexOperator) -> Any:
        table = op.table()
        n = op.cod
        if self.kind == "right":
            return self.S.act(s, from_table(table + (n + 1,), n + 1))
        if self.kind == "left":
            return self.S.act(s, from_table((0,) + tuple(v + 1 for v in table), n + 1))
        values = dict(s.images)
        source, target = prism_nerve(op.dom), prism_nerve(n)
        images = []
        for c in source.ids():
            chain = []
            for element in source.chain_of(c):
                a, e = element.split(":")
                chain.append(f"{table[int(a)]}:{e}")
            r = target.chain_ref(chain)
            images.append((c, self.S.act(values[r.target], r.op)))
        return PrismMap(op.dom, tuple(images))

    def label(self, s: Any) -> Optional[str]:
        if isinstance(s, SimplexRef):
            return s.render()
        return None


def simplicial_hom(kind: str, S: SimplicialComplex, x0: Union[str, SimplexRef],
                   x1: Union[str, SimplexRef], bound: int,
                   budget: Optional[int] = None) -> SimplicialComplex:
    """The chosen mapping space, materialized up to the bound."""
    return materialize(SimplicialHom(kind, S, x0, x1, bound, budget), bound).complex
