"""
Finite cubical sets with connections.

A CubicalComplex stores only non-degenerate cubes. Every other cube is a
CubeRef: a non-degenerate cube id followed by a □₋ operator (connections
and degeneracies only), which is its unique standard form. Faces are looked
up in the face table and composed through boxcat, so degenerate cubes are
never materialized.

Implicit complexes (nerves, hom complexes, mapping spaces) share the
CubicalSet interface and are enumerated level by level up to a bound.
"""

from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

try:
    from .boxcat import (BoxOperator, compose, connection, degeneracy, face, identity, involute,
                         minus_forms, operator_of_pattern, pattern_of, plus_forms)
    from .config import get_budget
    from .errors import BudgetExceeded, CubikError, DimensionMismatch, InvalidOperator, PreconditionError
    from .gluing import OperatorAlgebra, glue
except ImportError:
    from boxcat import (BoxOperator, compose, connection, degeneracy, face, identity, involute,
                        minus_forms, operator_of_pattern, pattern_of, plus_forms)
    from config import get_budget
    from errors import BudgetExceeded, CubikError, DimensionMismatch, InvalidOperator, PreconditionError
    from gluing import OperatorAlgebra, glue

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CubeRef:
    """A cube in standard form: non-degenerate cube `target` acted on by `op`."""

    target: str
    op: BoxOperator

    def __post_init__(self):
        if not self.op.is_minus:
            raise InvalidOperator(f"cube reference {self.target} carries faces: {self.op}")

    @property
    def dim(self) -> int:
        return self.op.dom

    @property
    def is_degenerate(self) -> bool:
        return not self.op.is_identity

    def render(self) -> str:
        if self.op.is_identity:
            return self.target
        return f"{self.target} [{self.op.render()}]"

    def __str__(self) -> str:
        return self.render()


@lru_cache(maxsize=None)
def _box_faces(n: int) -> Tuple[Tuple[Tuple[int, int], BoxOperator], ...]:
    return tuple(((i, eps), face(n, i, eps)) for i in range(1, n + 1) for eps in (0, 1))


BOX_ALGEBRA = OperatorAlgebra(
    identity=identity,
    compose=compose,
    face_operators=plus_forms,
    codim_one_faces=_box_faces,
    dom=lambda op: op.dom,
)


@dataclass
class ValidationReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    @property
    def first(self) -> Optional[str]:
        return self.violations[0] if self.violations else None

    def __bool__(self) -> bool:
        return self.ok


class CubicalSet(ABC):
    """Common interface of explicit and implicit cubical sets."""

    name: str = "X"

    @property
    @abstractmethod
    def dim(self) -> int:
        """Largest dimension that can be enumerated (or holds a non-degenerate cube)."""

    @abstractmethod
    def cubes(self, n: int) -> List[Any]:
        """All n-cubes, degenerate ones included, in canonical order."""

    @abstractmethod
    def act(self, x: Any, op: BoxOperator) -> Any:
        """The cube x·op."""

    @abstractmethod
    def cube_dim(self, x: Any) -> int:
        ...

    def face(self, x: Any, i: int, eps: int) -> Any:
        return self.act(x, face(self.cube_dim(x), i, eps))

    def boundary_of(self, x: Any) -> Dict[Tuple[int, int], Any]:
        n = self.cube_dim(x)
        return {(i, eps): self.face(x, i, eps) for i in range(1, n + 1) for eps in (0, 1)}

    def standard_form(self, x: Any) -> Tuple[Any, BoxOperator]:
        """
        Factor x as z·N with z non-degenerate and N in □₋.

        Uses the sections σ_i∂_{i,0} = id and γ_{i,ε}∂_{i,ε} = id: x lies in
        the image of σ_i exactly when x = (x∂_{i,0})σ_i.
        """
        n = self.cube_dim(x)
        for i in range(1, n + 1):
            y = self.act(x, face(n, i, 0))
            if self.act(y, degeneracy(n, i)) == x:
                z, op = self.standard_form(y)
                return z, compose(op, degeneracy(n, i))
        for i in range(1, n):
            for eps in (0, 1):
                y = self.act(x, face(n, i, eps))
                if self.act(y, connection(n, i, eps)) == x:
                    z, op = self.standard_form(y)
                    return z, compose(op, connection(n, i, eps))
        return x, identity(n)

    def is_degenerate(self, x: Any) -> bool:
        return not self.standard_form(x)[1].is_identity

    def nondegenerate(self, n: int) -> List[Any]:
        return [x for x in self.cubes(n) if not self.is_degenerate(x)]

    def cubes_with_boundary(self, n: int, boundary: Mapping[Tuple[int, int], Any]) -> List[Any]:
        """n-cubes whose faces agree with the given (possibly partial) boundary."""
        return [x for x in self.cubes(n)
                if all(self.face(x, i, eps) == c for (i, eps), c in boundary.items())]

    def is_marked(self, x: Any) -> bool:
        """Degenerate edges are always marked."""
        return self.cube_dim(x) == 1 and self.is_degenerate(x)

    def label(self, x: Any) -> Optional[str]:
        """Readable id used when the cube is materialized."""
        return None


class CubicalComplex(CubicalSet):
    """A finite cubical set stored by non-degenerate cubes and face tables."""

    def __init__(self, name: str, dims: Mapping[str, int],
                 faces: Mapping[Tuple[str, int, int], CubeRef],
                 marked: Iterable[str] = (),
                 provenance: Optional[Mapping[str, Tuple[str, str]]] = None):
        self.name = name
        self.dims: Dict[str, int] = dict(dims)
        self.face_table: Dict[Tuple[str, int, int], CubeRef] = dict(faces)
        self.marked = frozenset(marked)
        self.provenance: Dict[str, Tuple[str, str]] = dict(provenance or {})
        self._cubes: Dict[int, List[CubeRef]] = {}
        self._by_boundary: Dict[int, Dict[Tuple[CubeRef, ...], List[CubeRef]]] = {}

    @property
    def dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def ids(self, n: Optional[int] = None) -> List[str]:
        """Non-degenerate cube ids, dimension-major then lexicographic."""
        if n is None:
            return sorted(self.dims, key=lambda c: (self.dims[c], c))
        return sorted(c for c, d in self.dims.items() if d == n)

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.ids(n)) for n in range(self.dim + 1))

    def ref(self, cube_id: str) -> CubeRef:
        if cube_id not in self.dims:
            raise CubikError(f"{self.name} has no cube {cube_id!r}")
        return CubeRef(cube_id, identity(self.dims[cube_id]))

    def cube_dim(self, x: CubeRef) -> int:
        return x.op.dom

    def act(self, x: CubeRef, op: BoxOperator) -> CubeRef:
        h = compose(x.op, op)
        target = x.target
        while h.faces:
            c, eps = h.faces[0]
            step = self.face_table[(target, c, eps)]
            h = compose(step.op, h.without_first_face())
            target = step.target
        return CubeRef(target, h)

    def cubes(self, n: int) -> List[CubeRef]:
        if n not in self._cubes:
            found = [CubeRef(c, op) for c, d in self.dims.items() if d <= n
                     for op in minus_forms(n, d)]
            self._cubes[n] = sorted(found)
        return self._cubes[n]

    def nondegenerate(self, n: int) -> List[CubeRef]:
        return [self.ref(c) for c in self.ids(n)]

    def standard_form(self, x: CubeRef) -> Tuple[CubeRef, BoxOperator]:
        return self.ref(x.target), x.op

    def is_degenerate(self, x: CubeRef) -> bool:
        return not x.op.is_identity

    def cubes_with_boundary(self, n: int, boundary: Mapping[Tuple[int, int], Any]) -> List[CubeRef]:
        if n == 0 or len(boundary) < 2 * n:
            return super().cubes_with_boundary(n, boundary)
        if n not in self._by_boundary:
            index: Dict[Tuple[CubeRef, ...], List[CubeRef]] = {}
            for x in self.cubes(n):
                key = tuple(self.face(x, i, eps) for i in range(1, n + 1) for eps in (0, 1))
                index.setdefault(key, []).append(x)
            self._by_boundary[n] = index
        key = tuple(boundary[(i, eps)] for i in range(1, n + 1) for eps in (0, 1))
        return list(self._by_boundary[n].get(key, []))

    def is_marked(self, x: CubeRef) -> bool:
        if x.dim != 1:
            return False
        return x.is_degenerate or x.target in self.marked

    def marked_edges(self) -> List[str]:
        return sorted(self.marked)

    def with_marks(self, marks: Iterable[str], name: Optional[str] = None) -> "CubicalComplex":
        marks = set(marks)
        bad = [m for m in marks if self.dims.get(m) != 1]
        if bad:
            raise DimensionMismatch(f"only edges can be marked, got {sorted(bad)}")
        return CubicalComplex(name or self.name, self.dims, self.face_table, marks, self.provenance)

    def renamed(self, name: str) -> "CubicalComplex":
        return CubicalComplex(name, self.dims, self.face_table, self.marked, self.provenance)

    def relabel(self, mapping: Mapping[str, str], name: Optional[str] = None) -> "CubicalComplex":
        """Rename cubes; ids missing from the mapping are kept."""
        rename = lambda c: mapping.get(c, c)
        dims = {rename(c): d for c, d in self.dims.items()}
        if len(dims) != len(self.dims):
            raise CubikError("relabeling merges cube ids")
        faces = {(rename(c), i, eps): CubeRef(rename(r.target), r.op)
                 for (c, i, eps), r in self.face_table.items()}
        provenance = {rename(c): p for c, p in self.provenance.items()}
        return CubicalComplex(name or self.name, dims, faces, {rename(c) for c in self.marked},
                              provenance)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubicalComplex):
            return NotImplemented
        return (self.dims == other.dims and self.face_table == other.face_table
                and self.marked == other.marked)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CubicalComplex({self.name!r}, counts={self.counts()})"


class ImplicitComplex(CubicalSet):
    """A cubical set enumerated level by level up to a dimension bound."""

    def __init__(self, name: str, bound: int):
        self.name = name
        self.bound = bound
        self._levels: Dict[int, List[Any]] = {}

    @property
    def dim(self) -> int:
        return self.bound

    @abstractmethod
    def _enumerate(self, n: int) -> Iterable[Any]:
        ...

    def sort_key(self, x: Any) -> Any:
        return x

    def cubes(self, n: int) -> List[Any]:
        if n > self.bound:
            raise DimensionMismatch(f"{self.name} is only enumerated up to dimension {self.bound}")
        if n not in self._levels:
            self._levels[n] = sorted(self._enumerate(n), key=self.sort_key)
            logger.debug(f"{self.name}: level {n} has {len(self._levels[n])} cubes")
        return self._levels[n]

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.cubes(n)) for n in range(self.bound + 1))


class Involuted(ImplicitComplex):
    """X^co, X^coop or X^op: same cubes, structure maps conjugated by the involution."""

    def __init__(self, base: CubicalSet, kind: str, bound: Optional[int] = None):
        super().__init__(f"{base.name}^{kind}", base.dim if bound is None else bound)
        self.base = base
        self.kind = kind

    def _enumerate(self, n: int) -> Iterable[Any]:
        return self.base.cubes(n)

    def act(self, x: Any, op: BoxOperator) -> Any:
        return self.base.act(x, involute(op, self.kind))

    def cube_dim(self, x: Any) -> int:
        return self.base.cube_dim(x)

    def is_marked(self, x: Any) -> bool:
        return self.base.is_marked(x)

    def label(self, x: Any) -> Optional[str]:
        return self.base.label(x)


@dataclass
class ComplexMap:
    """A map out of a finite complex, determined on non-degenerate cubes."""

    domain: CubicalComplex
    codomain: CubicalSet
    assignment: Dict[str, Any]

    def __call__(self, x: CubeRef) -> Any:
        return self.codomain.act(self.assignment[x.target], x.op)

    def validate(self) -> ValidationReport:
        violations = []
        for c in self.domain.ids():
            if c not in self.assignment:
                violations.append(f"{c} is not assigned")
                continue
            image = self.assignment[c]
            n = self.domain.dims[c]
            if self.codomain.cube_dim(image) != n:
                violations.append(f"{c} has dimension {n} but its image does not")
                continue
            for i in range(1, n + 1):
                for eps in (0, 1):
                    expected = self(self.domain.face_table[(c, i, eps)])
                    if self.codomain.face(image, i, eps) != expected:
                        violations.append(f"{c}: face ({i},{eps}) does not commute")
        return ValidationReport(not violations, violations)

    def same_as(self, other: "ComplexMap") -> bool:
        return self.assignment == other.assignment


def identity_map(X: CubicalComplex) -> ComplexMap:
    return ComplexMap(X, X, {c: X.ref(c) for c in X.ids()})


def inclusion_map(A: CubicalComplex, X: CubicalComplex) -> ComplexMap:
    """The map sending each cube of A to the cube of X with the same id."""
    missing = [c for c in A.ids() if X.dims.get(c) != A.dims[c]]
    if missing:
        raise PreconditionError(f"{A.name} is not a subcomplex of {X.name}: {missing[:3]}")
    return ComplexMap(A, X, {c: X.ref(c) for c in A.ids()})


def compose_maps(g: ComplexMap, f: ComplexMap) -> ComplexMap:
    """g ∘ f; f must land in an explicit complex."""
    return ComplexMap(f.domain, g.codomain, {c: g(x) for c, x in f.assignment.items()})


def is_mono(f: ComplexMap) -> bool:
    """Injective on non-degenerate cubes, with non-degenerate images."""
    seen = set()
    for c in f.domain.ids():
        image = f.assignment[c]
        if f.codomain.is_degenerate(image) or image in seen:
            return False
        seen.add(image)
    return True


def is_isomorphism(f: ComplexMap) -> bool:
    """A valid mono onto every non-degenerate cube of an explicit codomain."""
    if not isinstance(f.codomain, CubicalComplex):
        raise PreconditionError("isomorphisms are checked against explicit codomains")
    return f.validate().ok and is_mono(f) and f.domain.counts() == f.codomain.counts()


def validate(X: CubicalComplex) -> ValidationReport:
    """Check face tables and the identity ∂_{j,ε'}∂_{i,ε} = ∂_{i+1,ε}∂_{j,ε'} (j ≤ i)."""
    violations: List[str] = []
    for c in X.ids():
        n = X.dims[c]
        for i in range(1, n + 1):
            for eps in (0, 1):
                ref = X.face_table.get((c, i, eps))
                if ref is None:
                    violations.append(f"{c}: missing face ({i},{eps})")
                elif ref.target not in X.dims:
                    violations.append(f"{c}: face ({i},{eps}) points at unknown cube {ref.target}")
                elif ref.op.dom != n - 1 or ref.op.cod != X.dims[ref.target]:
                    violations.append(f"{c}: face ({i},{eps}) has the wrong dimension")
    for m in sorted(X.marked):
        if X.dims.get(m) != 1:
            violations.append(f"marked cube {m} is not an edge")
    if violations:
        return ValidationReport(False, violations)

    for c in X.ids():
        n = X.dims[c]
        x = X.ref(c)
        for i in range(1, n):
            for j in range(1, i + 1):
                for e1 in (0, 1):
                    for e2 in (0, 1):
                        lhs = X.act(X.act(x, face(n, j, e1)), face(n - 1, i, e2))
                        rhs = X.act(X.act(x, face(n, i + 1, e2)), face(n - 1, j, e1))
                        if lhs != rhs:
                            violations.append(
                                f"{c}: d{j}_{e1} d{i}_{e2} gives {lhs} but "
                                f"d{i + 1}_{e2} d{j}_{e1} gives {rhs}")
    return ValidationReport(not violations, violations)


@dataclass
class QuotientResult:
    complex: CubicalComplex
    projection: ComplexMap
    representatives: Dict[str, str]


def quotient(X: CubicalComplex, pairs: Sequence[Tuple[CubeRef, CubeRef]],
             name: Optional[str] = None,
             choose: Optional[Callable[[List[str]], str]] = None) -> QuotientResult:
    """
    Coequalize pairs of parallel cubes.

    Args:
        X: Complex to glue
        pairs: CubeRefs to identify, each pair of equal dimension
        name: Name of the result
        choose: Picks the surviving id of each merged class (least id by default)

    Returns:
        QuotientResult with the complex, the projection and class representatives
    """
    for left, right in pairs:
        if left.dim != right.dim:
            raise DimensionMismatch(f"cannot glue {left} ({left.dim}) to {right} ({right.dim})")

    def act(cell: str, op: BoxOperator) -> Tuple[str, BoxOperator]:
        r = X.act(X.ref(cell), op)
        return r.target, r.op

    glued = glue(X.dims, act, [((l.target, l.op), (r.target, r.op)) for l, r in pairs],
                 BOX_ALGEBRA, choose)
    faces = {(c, i, eps): CubeRef(t, op) for (c, (i, eps)), (t, op) in glued.faces.items()}
    marked = set()
    for m in X.marked:
        target, op = glued.projection[m]
        if op.is_identity:
            marked.add(target)
    provenance = {c: X.provenance[rep] for c, rep in glued.representatives.items()
                  if rep in X.provenance}
    result = CubicalComplex(name or f"{X.name}/~", glued.dims, faces, marked, provenance)
    projection = ComplexMap(X, result, {c: CubeRef(t, op) for c, (t, op) in glued.projection.items()})
    return QuotientResult(result, projection, glued.representatives)


def disjoint_union(parts: Sequence[CubicalComplex], prefixes: Optional[Sequence[str]] = None,
                   name: Optional[str] = None) -> Tuple[CubicalComplex, List[ComplexMap]]:
    """Coproduct with ids prefixed per summand; returns the complex and the inclusions."""
    prefixes = list(prefixes) if prefixes is not None else [f"{k}." for k in range(len(parts))]
    dims: Dict[str, int] = {}
    faces: Dict[Tuple[str, int, int], CubeRef] = {}
    marked = set()
    provenance = {}
    for prefix, part in zip(prefixes, parts):
        for c, d in part.dims.items():
            dims[prefix + c] = d
        for (c, i, eps), r in part.face_table.items():
            faces[(prefix + c, i, eps)] = CubeRef(prefix + r.target, r.op)
        marked.update(prefix + m for m in part.marked)
        provenance.update({prefix + c: p for c, p in part.provenance.items()})
    if len(dims) != sum(len(p.dims) for p in parts):
        raise CubikError("prefixes do not separate the summands")
    union = CubicalComplex(name or " + ".join(p.name for p in parts), dims, faces, marked, provenance)
    inclusions = [ComplexMap(part, union, {c: union.ref(prefix + c) for c in part.ids()})
                  for prefix, part in zip(prefixes, parts)]
    return union, inclusions


@dataclass
class PushoutResult:
    complex: CubicalComplex
    left: ComplexMap
    right: ComplexMap
    representatives: Dict[str, Tuple[int, str]]

    def induced(self, left_map: ComplexMap, right_map: ComplexMap) -> ComplexMap:
        """The map out of the pushout determined by a compatible pair of maps."""
        maps = (left_map, right_map)
        assignment = {c: maps[side].assignment[old] for c, (side, old) in self.representatives.items()}
        return ComplexMap(self.complex, left_map.codomain, assignment)


def pushout(f: ComplexMap, g: ComplexMap, name: Optional[str] = None) -> PushoutResult:
    """
    Pushout of X ← A → Y.

    Args:
        f: A → X
        g: A → Y (same domain A)
        name: Name of the result

    Returns:
        PushoutResult with the complex and both injections
    """
    if f.domain is not g.domain and f.domain != g.domain:
        raise DimensionMismatch("pushout legs have different domains")
    X, Y = f.codomain, g.codomain
    union, (inc_x, inc_y) = disjoint_union([X, Y], ("0.", "1."))
    pairs = []
    for c in f.domain.ids():
        a, b = f.assignment[c], g.assignment[c]
        pairs.append((CubeRef("0." + a.target, a.op), CubeRef("1." + b.target, b.op)))
    glued = quotient(union, pairs, name or f"{X.name} +_{f.domain.name} {Y.name}")
    left = compose_maps(glued.projection, inc_x)
    right = compose_maps(glued.projection, inc_y)
    representatives = {c: (int(rep[0]), rep[2:]) for c, rep in glued.representatives.items()}
    # Strip the summand prefixes where that keeps ids unique.
    stripped = {c: c[2:] for c in glued.complex.dims}
    if len(set(stripped.values())) == len(stripped):
        P = glued.complex.relabel(stripped)
        left = ComplexMap(X, P, {c: CubeRef(r.target[2:], r.op) for c, r in left.assignment.items()})
        right = ComplexMap(Y, P, {c: CubeRef(r.target[2:], r.op) for c, r in right.assignment.items()})
        representatives = {stripped[c]: rep for c, rep in representatives.items()}
        return PushoutResult(P, left, right, representatives)
    return PushoutResult(glued.complex, left, right, representatives)


def subcomplex(X: CubicalComplex, generators: Iterable[str],
               name: Optional[str] = None) -> Tuple[CubicalComplex, ComplexMap]:
    """Smallest subcomplex containing the given non-degenerate cubes, with its inclusion."""
    keep = set()
    stack = list(generators)
    while stack:
        c = stack.pop()
        if c in keep:
            continue
        keep.add(c)
        for i in range(1, X.dims[c] + 1):
            for eps in (0, 1):
                stack.append(X.face_table[(c, i, eps)].target)
    dims = {c: X.dims[c] for c in keep}
    faces = {key: r for key, r in X.face_table.items() if key[0] in keep}
    sub = CubicalComplex(name or f"{X.name}|sub", dims, faces, X.marked & keep,
                         {c: p for c, p in X.provenance.items() if c in keep})
    return sub, ComplexMap(sub, X, {c: X.ref(c) for c in keep})


def remove_cubes(X: CubicalComplex, removed: Iterable[str], name: Optional[str] = None) -> CubicalComplex:
    """Drop cubes; the rest must still be closed under faces."""
    removed = set(removed)
    keep = [c for c in X.ids() if c not in removed]
    for c in keep:
        for i in range(1, X.dims[c] + 1):
            for eps in (0, 1):
                if X.face_table[(c, i, eps)].target in removed:
                    raise PreconditionError(f"cannot remove a face of the remaining cube {c}")
    sub, _ = subcomplex(X, keep, name)
    return sub


def image(f: ComplexMap, name: Optional[str] = None) -> Tuple[CubicalComplex, ComplexMap]:
    """Image of a map into an explicit complex, as a subcomplex."""
    X = f.codomain
    if not isinstance(X, CubicalComplex):
        raise PreconditionError("image needs an explicit codomain")
    return subcomplex(X, {r.target for r in f.assignment.values()}, name)


def complex_maps(A: CubicalComplex, X: CubicalSet,
                 fixed: Optional[Mapping[str, Any]] = None,
                 budget: Optional[int] = None,
                 injective: bool = False,
                 respect_markings: bool = False) -> Iterator[ComplexMap]:
    """
    Enumerate all maps A → X in a deterministic order.

    Cubes of A are assigned in (dimension, id) order; each candidate must
    match the images of the faces assigned before it.

    Args:
        A: Finite domain
        X: Codomain (explicit or implicit, enumerable to A.dim)
        fixed: Prescribed images for some cubes of A
        budget: Maximum number of candidates examined (config default)
        injective: Only maps injective on non-degenerate cubes with
                   non-degenerate images
        respect_markings: Marked edges must go to marked edges

    Yields:
        ComplexMap for every map found
    """
    fixed = dict(fixed or {})
    limit = get_budget(budget)
    order = A.ids()
    examined = 0
    partial: Dict[str, Any] = {}
    used = set()

    def candidates(c: str) -> List[Any]:
        n = A.dims[c]
        boundary = {}
        for i in range(1, n + 1):
            for eps in (0, 1):
                r = A.face_table[(c, i, eps)]
                boundary[(i, eps)] = X.act(partial[r.target], r.op)
        if c in fixed:
            x = fixed[c]
            ok = X.cube_dim(x) == n and all(X.face(x, i, eps) == y for (i, eps), y in boundary.items())
            found = [x] if ok else []
        else:
            found = X.cubes_with_boundary(n, boundary)
        if injective:
            found = [x for x in found if x not in used and not X.is_degenerate(x)]
        if respect_markings and n == 1 and A.is_marked(A.ref(c)):
            found = [x for x in found if X.is_marked(x)]
        return found

    def extend(k: int) -> Iterator[ComplexMap]:
        nonlocal examined
        if k == len(order):
            yield ComplexMap(A, X, dict(partial))
            return
        c = order[k]
        for x in candidates(c):
            examined += 1
            if examined > limit:
                raise BudgetExceeded(f"maps {A.name} -> {X.name}", examined, limit)
            partial[c] = x
            used.add(x)
            yield from extend(k + 1)
            used.discard(x)
            del partial[c]

    yield from extend(0)


def count_maps(A: CubicalComplex, X: CubicalSet, **kwargs) -> int:
    return sum(1 for _ in complex_maps(A, X, **kwargs))


def find_isomorphism(X: CubicalComplex, Y: CubicalComplex,
                     respect_markings: bool = True,
                     budget: Optional[int] = None) -> Optional[ComplexMap]:
    """An isomorphism X ≅ Y (marked edges to marked edges), or None."""
    if X.counts() != Y.counts():
        return None
    if respect_markings and len(X.marked) != len(Y.marked):
        return None
    for f in complex_maps(X, Y, budget=budget, injective=True, respect_markings=respect_markings):
        return f
    return None


def is_isomorphic(X: CubicalComplex, Y: CubicalComplex, respect_markings: bool = True) -> bool:
    return find_isomorphism(X, Y, respect_markings) is not None


@dataclass
class MaterializeResult:
    complex: CubicalComplex
    embedding: ComplexMap
    ids: Dict[Any, str]


def materialize(X: CubicalSet, max_dim: Optional[int] = None,
                name: Optional[str] = None) -> MaterializeResult:
    """
    Store an implicit complex explicitly up to a dimension.

    Args:
        X: Cubical set enumerable to max_dim
        max_dim: Truncation dimension (X.dim by default)
        name: Name of the result

    Returns:
        MaterializeResult with the complex, its map into X and the id table
    """
    top = X.dim if max_dim is None else max_dim
    ids: Dict[Any, str] = {}
    dims: Dict[str, int] = {}
    for n in range(top + 1):
        for k, x in enumerate(X.nondegenerate(n)):
            label = X.label(x) or f"c{n}_{k}"
            if label in dims:
                label = f"{label}#{n}_{k}"
            ids[x] = label
            dims[label] = n
    faces: Dict[Tuple[str, int, int], CubeRef] = {}
    for x, c in ids.items():
        n = dims[c]
        for i in range(1, n + 1):
            for eps in (0, 1):
                z, op = X.standard_form(X.face(x, i, eps))
                faces[(c, i, eps)] = CubeRef(ids[z], op)
    marked = {c for x, c in ids.items() if dims[c] == 1 and X.is_marked(x)}
    result = CubicalComplex(name or X.name, dims, faces, marked)
    embedding = ComplexMap(result, X, {c: x for x, c in ids.items()})
    return MaterializeResult(result, embedding, ids)


def involuted(X: CubicalSet, kind: str) -> CubicalSet:
    """
    X^co, X^coop or X^op.

    Explicit complexes stay explicit: (x·_k ∂) = x·∂^k, so a face y·f of X
    becomes y·f^k in the involuted complex.
    """
    if not isinstance(X, CubicalComplex):
        return Involuted(X, kind)
    faces = {}
    for c in X.ids():
        n = X.dims[c]
        for i in range(1, n + 1):
            for eps in (0, 1):
                r = X.act(X.ref(c), involute(face(n, i, eps), kind))
                faces[(c, i, eps)] = CubeRef(r.target, involute(r.op, kind))
    return CubicalComplex(f"{X.name}^{kind}", X.dims, faces, X.marked, X.provenance)


def flat(X: CubicalComplex) -> CubicalComplex:
    return X.with_marks((), f"{X.name}♭")


def sharp(X: CubicalComplex) -> CubicalComplex:
    return X.with_marks(X.ids(1), f"{X.name}♯")


def mark(X: CubicalComplex, edges: Iterable[str]) -> CubicalComplex:
    return X.with_marks(set(X.marked) | set(edges))


def pi0(X: CubicalComplex) -> List[List[str]]:
    """Connected components of the 1-skeleton, each sorted, in sorted order."""
    graph = nx.Graph()
    graph.add_nodes_from(X.ids(0))
    for e in X.ids(1):
        graph.add_edge(X.face_table[(e, 1, 0)].target, X.face_table[(e, 1, 1)].target)
    return sorted(sorted(component) for component in nx.connected_components(graph))


# Standard shapes ---------------------------------------------------------

def _pattern_id(pattern: str) -> str:
    return "c" + pattern


def cube(n: int) -> CubicalComplex:
    """□ⁿ; the cube with pattern p over {0,1,*} has id 'c' + p."""
    if n < 0:
        raise InvalidOperator(f"negative cube dimension {n}")
    dims: Dict[str, int] = {}
    faces: Dict[Tuple[str, int, int], CubeRef] = {}
    for letters in itertools.product("01*", repeat=n):
        pattern = "".join(letters)
        k = pattern.count("*")
        dims[_pattern_id(pattern)] = k
        stars = [pos for pos, ch in enumerate(pattern) if ch == "*"]
        for i, pos in enumerate(stars, start=1):
            for eps in (0, 1):
                sub = pattern[:pos] + str(eps) + pattern[pos + 1:]
                faces[(_pattern_id(pattern), i, eps)] = CubeRef(_pattern_id(sub), identity(k - 1))
    return CubicalComplex(f"cube{n}", dims, faces)


def cube_ref(op: BoxOperator) -> CubeRef:
    """The cube op of □^{op.cod}, i.e. the top cube acted on by op."""
    return CubeRef(_pattern_id(pattern_of(op)), op.minus_part())


def pattern_operator(cube_id: str) -> BoxOperator:
    """Face map [1]^k → [1]^n picking out a sub-cube of □ⁿ."""
    return operator_of_pattern(cube_id[1:])


def point() -> CubicalComplex:
    return cube(0)


def empty() -> CubicalComplex:
    return CubicalComplex("empty", {}, {})


def _check_box_indices(n: int, i: int, eps: int, minimum: int) -> None:
    if n < minimum:
        raise InvalidOperator(f"no open box with n={n} (needs n >= {minimum})")
    if not 1 <= i <= n:
        raise InvalidOperator(f"no open box with n={n} i={i}: the index must lie in 1..{n}")
    if eps not in (0, 1):
        raise InvalidOperator(f"no open box with eps={eps}: the sign must be 0 or 1")


def _face_pattern(n: int, i: int, eps: int) -> str:
    return "*" * (i - 1) + str(eps) + "*" * (n - i)


def _critical_pattern(n: int, i: int, eps: int) -> str:
    return "".join("*" if j == i else str(1 - eps) for j in range(1, n + 1))


def boundary(n: int) -> CubicalComplex:
    return remove_cubes(cube(n), [_pattern_id("*" * n)], f"boundary{n}")


def open_box(n: int, i: int, eps: int) -> CubicalComplex:
    """⊓ⁿ_{i,ε}: all faces of □ⁿ except ∂_{i,ε}."""
    _check_box_indices(n, i, eps, 1)
    return remove_cubes(cube(n), [_pattern_id("*" * n), _pattern_id(_face_pattern(n, i, eps))],
                        f"open_box{n}_{i}_{eps}")


def critical_edge_id(n: int, i: int, eps: int) -> str:
    return _pattern_id(_critical_pattern(n, i, eps))


def _collapse_critical_edge(X: CubicalComplex, n: int, i: int, eps: int, name: str) -> CubicalComplex:
    edge = critical_edge_id(n, i, eps)
    source = _pattern_id(_critical_pattern(n, i, eps).replace("*", "0"))
    return quotient(X, [(X.ref(edge), CubeRef(source, degeneracy(1, 1)))], name).complex


def inner_open_box(n: int, i: int, eps: int) -> CubicalComplex:
    _check_box_indices(n, i, eps, 2)
    return _collapse_critical_edge(open_box(n, i, eps), n, i, eps, f"inner_open_box{n}_{i}_{eps}")


def inner_cube(n: int, i: int, eps: int) -> CubicalComplex:
    _check_box_indices(n, i, eps, 2)
    return _collapse_critical_edge(cube(n), n, i, eps, f"inner_cube{n}_{i}_{eps}")


def marked_open_box(n: int, i: int, eps: int) -> CubicalComplex:
    """⊓ⁿ_{i,ε} with its critical edge marked (no edge to mark when n = 1)."""
    box = open_box(n, i, eps)
    if n == 1:
        return box
    return box.with_marks([critical_edge_id(n, i, eps)], f"marked_open_box{n}_{i}_{eps}")


def three_out_of_four(i: int, eps: int) -> CubicalComplex:
    """□² with every edge marked except the face ∂_{i,ε}."""
    _check_box_indices(2, i, eps, 2)
    square = cube(2)
    skipped = _pattern_id(_face_pattern(2, i, eps))
    return square.with_marks([e for e in square.ids(1) if e != skipped], f"three_out_of_four_{i}_{eps}")


def k_complex() -> CubicalComplex:
    """
    The complex K: two squares sharing the middle edge e.

    Vertices 0 and 1, edges f: 1→0, e: 0→1, g: 1→0. In s1 the edge f is the
    ∂_{1,0} face and e the ∂_{2,1} face, the other two sides degenerate on 1;
    in s2, e is ∂_{1,0} and g is ∂_{2,1}, the others degenerate on 0. So e
    has a left inverse and a right inverse, and both squares are (0,2)-cones.
    """
    dims = {"0": 0, "1": 0, "e": 1, "f": 1, "g": 1, "s1": 2, "s2": 2}
    v = lambda c: CubeRef(c, identity(0))
    edge = lambda c: CubeRef(c, identity(1))
    flat_on = lambda c: CubeRef(c, degeneracy(1, 1))
    faces = {
        ("e", 1, 0): v("0"), ("e", 1, 1): v("1"),
        ("f", 1, 0): v("1"), ("f", 1, 1): v("0"),
        ("g", 1, 0): v("1"), ("g", 1, 1): v("0"),
        ("s1", 1, 0): edge("f"), ("s1", 1, 1): flat_on("1"),
        ("s1", 2, 0): flat_on("1"), ("s1", 2, 1): edge("e"),
        ("s2", 1, 0): edge("e"), ("s2", 1, 1): flat_on("0"),
        ("s2", 2, 0): flat_on("0"), ("s2", 2, 1): edge("g"),
    }
    return CubicalComplex("K", dims, faces)


def k_prime() -> CubicalComplex:
    """K with the middle edge marked."""
    return k_complex().with_marks(["e"], "K'")


SHAPES = ("cube", "boundary", "open_box", "inner_open_box", "inner_cube", "K", "K'",
          "three_out_of_four", "marked_open_box", "point", "empty")


def standard_shape(kind: str, n: Optional[int] = None, i: Optional[int] = None,
                   eps: Optional[int] = None) -> CubicalComplex:
    """
    Build a named shape.

    Args:
        kind: One of SHAPES
        n: Dimension (cube, boundary and box shapes)
        i: Direction of the missing face (box shapes, three_out_of_four)
        eps: Side of the missing face

    Returns:
        The shape as a CubicalComplex
    """
    if kind == "K":
        return k_complex()
    if kind in ("K'", "K_prime"):
        return k_prime()
    if kind == "point":
        return point()
    if kind == "empty":
        return empty()
    if kind == "three_out_of_four":
        return three_out_of_four(i, eps)
    if n is None:
        raise InvalidOperator(f"shape {kind} needs a dimension")
    builders: Dict[str, Callable[..., CubicalComplex]] = {
        "open_box": open_box,
        "inner_open_box": inner_open_box,
        "inner_cube": inner_cube,
        "marked_open_box": marked_open_box,
    }
    if kind == "cube":
        return cube(n)
    if kind == "boundary":
        return boundary(n)
    if kind in builders:
        if i is None or eps is None:
            raise InvalidOperator(f"shape {kind} needs --i and --eps")
        return builders[kind](n, i, eps)
    raise InvalidOperator(f"unknown shape {kind!r}")
