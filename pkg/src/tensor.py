"""
Geometric product of cubical complexes, pushout products and hom complexes.

The non-degenerate cubes of X⊗Y are taken to be the pairs of non-degenerate
cubes. That description is checked against the colimit of the cubes
□^{m+n} (one per pair) glued along faces; if the two disagree the colimit
wins and a warning is logged.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Tuple

try:
    from .boxcat import INVOLUTIONS, BoxOperator, compose, face, identity, tensor_operator
    from .complex import (ComplexMap, CubeRef, CubicalComplex, CubicalSet, ImplicitComplex,
                          PushoutResult, complex_maps, cube, cube_ref, disjoint_union,
                          identity_map, involuted, pattern_operator, pushout, quotient)
    from .config import get_setting
    from .errors import InvalidOperator, PreconditionError
except ImportError:
    from boxcat import INVOLUTIONS, BoxOperator, compose, face, identity, tensor_operator
    from complex import (ComplexMap, CubeRef, CubicalComplex, CubicalSet, ImplicitComplex,
                         PushoutResult, complex_maps, cube, cube_ref, disjoint_union,
                         identity_map, involuted, pattern_operator, pushout, quotient)
    from config import get_setting
    from errors import InvalidOperator, PreconditionError

logger = logging.getLogger(__name__)


def pair_id(x: str, y: str) -> str:
    return f"{x}|{y}"


@dataclass(frozen=True)
class ProductCube:
    """A cube (l, r) of X⊗Y given by cubes of each factor."""

    left: CubeRef
    right: CubeRef

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def standard_form(self) -> CubeRef:
        """
        The same cube as a reference into product(X, Y).

        Degeneracies meeting at the seam are identified here:
        (xσ_{m+1}, y) and (x, yσ_1) have the same standard form.
        """
        return CubeRef(pair_id(self.left.target, self.right.target),
                       tensor_operator(self.left.op, self.right.op))


def _product_faces(X: CubicalComplex, Y: CubicalComplex) -> Tuple[Dict[str, int], Dict, Dict]:
    dims, faces, provenance = {}, {}, {}
    for x in X.ids():
        m = X.dims[x]
        for y in Y.ids():
            n = Y.dims[y]
            c = pair_id(x, y)
            dims[c] = m + n
            provenance[c] = (x, y)
            for i in range(1, m + 1):
                for eps in (0, 1):
                    faces[(c, i, eps)] = ProductCube(X.face_table[(x, i, eps)], Y.ref(y)).standard_form()
            for i in range(1, n + 1):
                for eps in (0, 1):
                    faces[(c, m + i, eps)] = ProductCube(X.ref(x), Y.face_table[(y, i, eps)]).standard_form()
    return dims, faces, provenance


def product_by_colimit(X: CubicalComplex, Y: CubicalComplex,
                       name: Optional[str] = None) -> Tuple[CubicalComplex, Dict[str, CubeRef]]:
    """
    X⊗Y as the colimit of □^{m+n} over pairs of non-degenerate cubes.

    Returns:
        The complex and, for each pair id, the image of its top cube
    """
    pairs = [(x, y) for x in X.ids() for y in Y.ids()]
    prefixes = [pair_id(x, y) + "/" for x, y in pairs]
    cubes_ = [cube(X.dims[x] + Y.dims[y]) for x, y in pairs]
    union, _ = disjoint_union(cubes_, prefixes)

    def top(x: str, y: str, op: BoxOperator) -> CubeRef:
        r = cube_ref(op)
        return CubeRef(pair_id(x, y) + "/" + r.target, r.op)

    gluing = []
    for x, y in pairs:
        m, n = X.dims[x], Y.dims[y]
        for i in range(1, m + n + 1):
            for eps in (0, 1):
                here = top(x, y, face(m + n, i, eps))
                if i <= m:
                    r = X.face_table[(x, i, eps)]
                    there = top(r.target, y, tensor_operator(r.op, identity(n)))
                else:
                    r = Y.face_table[(y, i - m, eps)]
                    there = top(x, r.target, tensor_operator(identity(m), r.op))
                gluing.append((here, there))
    glued = quotient(union, gluing, name or f"{X.name}⊗{Y.name}")
    tops = {pair_id(x, y): glued.projection.assignment[pair_id(x, y) + "/c" + "*" * (X.dims[x] + Y.dims[y])]
            for x, y in pairs}
    return glued.complex, tops


def verify_nondegenerate_pairs(X: CubicalComplex, Y: CubicalComplex) -> bool:
    """Do the non-degenerate cubes of X⊗Y biject with pairs of non-degenerate cubes?"""
    colimit, tops = product_by_colimit(X, Y)
    images = list(tops.values())
    distinct = len(set(images)) == len(images)
    nondegenerate = all(not r.is_degenerate for r in images)
    return distinct and nondegenerate and len(colimit.dims) == len(images)


def product(X: CubicalComplex, Y: CubicalComplex, verify: Optional[bool] = None,
            name: Optional[str] = None) -> CubicalComplex:
    """
    The geometric product X⊗Y.

    Args:
        X: Left factor
        Y: Right factor
        verify: Cross-check against the colimit construction
                (product.verify_nondegenerate_pairs by default)
        name: Name of the result

    Returns:
        CubicalComplex with ids 'x|y' and pair provenance
    """
    if verify is None:
        verify = get_setting('product', 'verify_nondegenerate_pairs', True)
    name = name or f"{X.name}⊗{Y.name}"
    if verify and not verify_nondegenerate_pairs(X, Y):
        logger.warning(f"{name}: non-degenerate pairs do not match the colimit, using the colimit")
        colimit, _ = product_by_colimit(X, Y, name)
        return colimit
    dims, faces, provenance = _product_faces(X, Y)
    return CubicalComplex(name, dims, faces, (), provenance)


def marked_product(X: CubicalComplex, Y: CubicalComplex, verify: Optional[bool] = None) -> CubicalComplex:
    """Product where an edge (x, y) is marked iff its 1-dimensional factor is."""
    P = product(X, Y, verify)
    marks = []
    for c in P.ids(1):
        x, y = P.provenance[c]
        if (X.dims[x] == 1 and x in X.marked) or (Y.dims[y] == 1 and y in Y.marked):
            marks.append(c)
    return P.with_marks(marks)


def product_map(f: ComplexMap, g: ComplexMap,
                source: Optional[CubicalComplex] = None,
                target: Optional[CubicalComplex] = None) -> ComplexMap:
    """
    f⊗g : A⊗C → B⊗D.

    Args:
        f: A → B between explicit complexes
        g: C → D between explicit complexes
        source: A⊗C if already built
        target: B⊗D if already built
    """
    source = source or product(f.domain, g.domain, verify=False)
    target = target or product(f.codomain, g.codomain, verify=False)
    assignment = {}
    for c in source.ids():
        a, b = source.provenance[c]
        assignment[c] = ProductCube(f.assignment[a], g.assignment[b]).standard_form()
    return ComplexMap(source, target, assignment)


def _factors(P: CubicalComplex, c: str) -> Tuple[str, str]:
    if c not in P.provenance:
        raise PreconditionError(f"{P.name}: cube {c!r} has no pair provenance")
    return P.provenance[c]


def involution_isomorphism(X: CubicalComplex, Y: CubicalComplex, kind: str) -> ComplexMap:
    """
    (X⊗Y)^co ≅ Y^co⊗X^co, (X⊗Y)^op ≅ Y^op⊗X^op and (X⊗Y)^coop ≅ X^coop⊗Y^coop.

    co and op reverse coordinates, so they swap the factors; coop keeps them.
    Each non-degenerate pair goes to the matching pair with the identity.
    """
    if kind not in INVOLUTIONS:
        raise InvalidOperator(f"unknown involution {kind!r}")
    swaps = kind in ("co", "op")
    source = involuted(product(X, Y, verify=False), kind)
    if swaps:
        target = product(involuted(Y, kind), involuted(X, kind), verify=False)
    else:
        target = product(involuted(X, kind), involuted(Y, kind), verify=False)
    assignment = {}
    for c in source.ids():
        x, y = _factors(source, c)
        assignment[c] = target.ref(pair_id(y, x) if swaps else pair_id(x, y))
    return ComplexMap(source, target, assignment)


def associator(X: CubicalComplex, Y: CubicalComplex, Z: CubicalComplex) -> ComplexMap:
    """(X⊗Y)⊗Z → X⊗(Y⊗Z), ((x, y), z) ↦ (x, (y, z))."""
    XY, YZ = product(X, Y, verify=False), product(Y, Z, verify=False)
    source, target = product(XY, Z, verify=False), product(X, YZ, verify=False)
    assignment = {}
    for c in source.ids():
        xy, z = _factors(source, c)
        x, y = _factors(XY, xy)
        assignment[c] = target.ref(pair_id(x, pair_id(y, z)))
    return ComplexMap(source, target, assignment)


@dataclass
class PushoutProduct:
    map: ComplexMap
    pushout: PushoutResult


def pushout_product(f: ComplexMap, g: ComplexMap) -> PushoutProduct:
    """
    f ⊗̂ g : A⊗Y ∪_{A⊗X} B⊗X → B⊗Y for f: A → B and g: X → Y.
    """
    A, B, X, Y = f.domain, f.codomain, g.domain, g.codomain
    if not isinstance(B, CubicalComplex) or not isinstance(Y, CubicalComplex):
        raise PreconditionError("pushout products need explicit codomains")
    AX, AY = product(A, X, verify=False), product(A, Y, verify=False)
    BX, BY = product(B, X, verify=False), product(B, Y, verify=False)
    to_ay = product_map(identity_map(A), g, AX, AY)
    to_bx = product_map(f, identity_map(X), AX, BX)
    po = pushout(to_ay, to_bx, f"{A.name}⊗{Y.name} ∪ {B.name}⊗{X.name}")
    induced = po.induced(product_map(f, identity_map(Y), AY, BY),
                         product_map(identity_map(B), g, BX, BY))
    return PushoutProduct(induced, po)


@dataclass(frozen=True, order=True)
class HomCube:
    """An n-cube of a hom complex: a map □ⁿ⊗X → Y (or X⊗□ⁿ → Y) by its values."""

    dim: int
    images: Tuple[Tuple[str, Any], ...]


class HomComplex(ImplicitComplex):
    """hom_L(X, Y)_n = cSet(□ⁿ⊗X, Y) and hom_R(X, Y)_n = cSet(X⊗□ⁿ, Y)."""

    def __init__(self, side: str, X: CubicalComplex, Y: CubicalSet, bound: int,
                 budget: Optional[int] = None):
        if side not in ("L", "R"):
            raise PreconditionError(f"hom side must be L or R, got {side!r}")
        super().__init__(f"hom_{side}({X.name}, {Y.name})", bound)
        self.side = side
        self.source = X
        self.target = Y
        self.budget = budget
        self._domains: Dict[int, CubicalComplex] = {}

    def domain(self, n: int) -> CubicalComplex:
        if n not in self._domains:
            if self.side == "L":
                self._domains[n] = product(cube(n), self.source, verify=False)
            else:
                self._domains[n] = product(self.source, cube(n), verify=False)
        return self._domains[n]

    def cube_dim(self, h: HomCube) -> int:
        return h.dim

    def _enumerate(self, n: int) -> Iterable[HomCube]:
        for f in complex_maps(self.domain(n), self.target, budget=self.budget):
            yield HomCube(n, tuple(sorted(f.assignment.items())))

    def as_map(self, h: HomCube) -> ComplexMap:
        return ComplexMap(self.domain(h.dim), self.target, dict(h.images))

    def act(self, h: HomCube, op: BoxOperator) -> HomCube:
        values = dict(h.images)
        source = self.domain(op.dom)
        images = []
        for c in source.ids():
            a, b = source.provenance[c]
            pattern, x = (a, b) if self.side == "L" else (b, a)
            r = cube_ref(compose(op, pattern_operator(pattern)))
            k = self.source.dims[x]
            if self.side == "L":
                key, tensor = pair_id(r.target, x), tensor_operator(r.op, identity(k))
            else:
                key, tensor = pair_id(x, r.target), tensor_operator(identity(k), r.op)
            images.append((c, self.target.act(values[key], tensor)))
        return HomCube(op.dom, tuple(images))


def hom(side: str, X: CubicalComplex, Y: CubicalSet, bound: int,
        budget: Optional[int] = None) -> HomComplex:
    return HomComplex(side, X, Y, bound, budget)
