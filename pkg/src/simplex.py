"""
Finite simplicial sets.

Mirrors the cubical kernel: operators [m] → [n] of the simplex category are
kept in Eilenberg-Zilber normal form (descending faces, then ascending
degeneracies), produced by the shared adjacent-pair rewriting engine, and a
SimplicialComplex stores only non-degenerate simplices with a face table.
"""

from __future__ import annotations

import itertools
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

try:
    from .config import get_budget
    from .errors import BudgetExceeded, CubikError, DimensionMismatch, InvalidOperator, PreconditionError
    from .gluing import OperatorAlgebra, glue
    from .rewriting import rewrite_to_normal_form
except ImportError:
    from config import get_budget
    from errors import BudgetExceeded, CubikError, DimensionMismatch, InvalidOperator, PreconditionError
    from gluing import OperatorAlgebra, glue
    from rewriting import rewrite_to_normal_form

logger = logging.getLogger(__name__)

FACE = "face"
DEGENERACY = "degeneracy"

CHECK_REWRITES = os.getenv("CUBIK_CHECK_REWRITES", "").lower() in ("1", "true", "yes")


@dataclass(frozen=True, order=True)
class SimplexGenerator:
    """δⁿ_i : [n-1] → [n] (0 ≤ i ≤ n) or σⁿ_j : [n] → [n-1] (0 ≤ j ≤ n-1)."""

    kind: str
    index: int
    dim: int

    def __post_init__(self):
        if self.kind == FACE:
            ok = self.dim >= 1 and 0 <= self.index <= self.dim
        elif self.kind == DEGENERACY:
            ok = self.dim >= 1 and 0 <= self.index <= self.dim - 1
        else:
            ok = False
        if not ok:
            raise InvalidOperator(f"illegal simplicial generator {self.kind} i={self.index} n={self.dim}")

    @property
    def dom(self) -> int:
        return self.dim - 1 if self.kind == FACE else self.dim

    @property
    def cod(self) -> int:
        return self.dim if self.kind == FACE else self.dim - 1

    def apply(self, v: int) -> int:
        if self.kind == FACE:
            return v if v < self.index else v + 1
        return v if v <= self.index else v - 1

    def render(self) -> str:
        return f"{'d' if self.kind == FACE else 's'}{self.index}"

    def __str__(self) -> str:
        return self.render()


def face_gen(n: int, i: int) -> SimplexGenerator:
    return SimplexGenerator(FACE, i, n)


def degeneracy_gen(n: int, j: int) -> SimplexGenerator:
    return SimplexGenerator(DEGENERACY, j, n)


@dataclass(frozen=True, order=True)
class SimplexOperator:
    """A monotone map [dom] → [cod] as δ_{i_1}…δ_{i_r} σ_{j_1}…σ_{j_p}."""

    dom: int
    cod: int
    faces: Tuple[int, ...] = ()
    degens: Tuple[int, ...] = ()

    def __post_init__(self):
        p, r = len(self.degens), len(self.faces)
        if self.dom < 0 or self.dom - p < 0 or self.dom - p + r != self.cod:
            raise InvalidOperator(f"dimension bookkeeping fails for {self!r}")
        for k, j in enumerate(self.degens, start=1):
            if not 0 <= j <= self.dom - (p - k) - 1:
                raise InvalidOperator(f"degeneracy index out of range in {self!r}")
            if k > 1 and self.degens[k - 2] >= j:
                raise InvalidOperator(f"degeneracies not strictly increasing in {self!r}")
        for k, i in enumerate(self.faces, start=1):
            if not 0 <= i <= self.cod - (k - 1):
                raise InvalidOperator(f"face index out of range in {self!r}")
            if k > 1 and self.faces[k - 2] <= i:
                raise InvalidOperator(f"faces not strictly decreasing in {self!r}")

    def word(self) -> Tuple[SimplexGenerator, ...]:
        gens = [face_gen(self.cod - (k - 1), i) for k, i in enumerate(self.faces, start=1)]
        p = len(self.degens)
        gens += [degeneracy_gen(self.dom - (p - k), j) for k, j in enumerate(self.degens, start=1)]
        return tuple(gens)

    @property
    def is_identity(self) -> bool:
        return not (self.faces or self.degens)

    @property
    def is_degeneracy(self) -> bool:
        return not self.faces

    @property
    def middle(self) -> int:
        return self.dom - len(self.degens)

    def degeneracy_part(self) -> "SimplexOperator":
        return SimplexOperator(self.dom, self.middle, (), self.degens)

    def without_first_face(self) -> "SimplexOperator":
        if not self.faces:
            raise InvalidOperator("operator has no face to remove")
        return SimplexOperator(self.dom, self.cod - 1, self.faces[1:], self.degens)

    def table(self) -> Tuple[int, ...]:
        return operator_table(self)

    def render(self) -> str:
        if self.is_identity:
            return f"id{self.dom}"
        return " ".join(g.render() for g in self.word())

    def __str__(self) -> str:
        return self.render()


def identity(n: int) -> SimplexOperator:
    return SimplexOperator(n, n)


def face(n: int, i: int) -> SimplexOperator:
    """δⁿ_i : [n-1] → [n], skipping i."""
    face_gen(n, i)
    return SimplexOperator(n - 1, n, faces=(i,))


def degeneracy(n: int, j: int) -> SimplexOperator:
    """σⁿ_j : [n] → [n-1], hitting j twice."""
    degeneracy_gen(n, j)
    return SimplexOperator(n, n - 1, degens=(j,))


def total_degeneracy(n: int) -> SimplexOperator:
    return SimplexOperator(n, 0, degens=tuple(range(n)))


def vertex_operator(n: int, v: int) -> SimplexOperator:
    """The vertex v of [n] as a map [0] → [n]."""
    return from_table((v,), n)


@lru_cache(maxsize=None)
def operator_table(f: SimplexOperator) -> Tuple[int, ...]:
    values = []
    for v in range(f.dom + 1):
        for g in reversed(f.word()):
            v = g.apply(v)
        values.append(v)
    return tuple(values)


def from_table(values: Sequence[int], cod: int) -> SimplexOperator:
    """
    The operator with the given values on 0, …, dom.

    Degeneracies sit where consecutive values repeat; faces skip the values
    missing from the image.
    """
    values = tuple(int(v) for v in values)
    if not values:
        raise InvalidOperator("an operator needs at least one value")
    if any(a > b for a, b in zip(values, values[1:])) or values[0] < 0 or values[-1] > cod:
        raise InvalidOperator(f"{values} is not a monotone map into [{cod}]")
    degens = tuple(j for j in range(len(values) - 1) if values[j] == values[j + 1])
    hit = set(values)
    faces = tuple(v for v in range(cod, -1, -1) if v not in hit)
    return SimplexOperator(len(values) - 1, cod, faces, degens)


def _simplex_rule(left: SimplexGenerator, right: SimplexGenerator) -> Optional[Tuple[SimplexGenerator, ...]]:
    """One simplicial identity, oriented towards the Eilenberg-Zilber normal form."""
    if left.kind == DEGENERACY and right.kind == FACE:
        n, j, i = right.dim, left.index, right.index
        if i in (j, j + 1):
            return ()
        if i < j:
            return (face_gen(n - 1, i), degeneracy_gen(n - 1, j - 1))
        return (face_gen(n - 1, i - 1), degeneracy_gen(n - 1, j))
    if left.kind == FACE and right.kind == FACE and left.index <= right.index:
        n = right.dim
        return (face_gen(n + 1, right.index + 1), face_gen(n, left.index))
    if left.kind == DEGENERACY and right.kind == DEGENERACY and left.index >= right.index:
        n = left.dim
        return (degeneracy_gen(n, right.index), degeneracy_gen(n + 1, left.index + 1))
    return None


def _check_composable(word: Sequence[SimplexGenerator], dom: Optional[int]) -> int:
    if not word:
        if dom is None:
            raise DimensionMismatch("empty word needs an explicit dimension")
        return dom
    if dom is not None and word[-1].dom != dom:
        raise DimensionMismatch(f"word starts at [{word[-1].dom}], expected [{dom}]")
    for left, right in zip(word, word[1:]):
        if left.dom != right.cod:
            raise DimensionMismatch(f"{left} cannot follow {right}")
    return word[-1].dom


@lru_cache(maxsize=200000)
def _normalize_cached(word: Tuple[SimplexGenerator, ...], dom: int) -> SimplexOperator:
    reduced = rewrite_to_normal_form(word, _simplex_rule)
    cod = word[0].cod if word else dom
    result = SimplexOperator(dom, cod,
                             tuple(g.index for g in reduced if g.kind == FACE),
                             tuple(g.index for g in reduced if g.kind == DEGENERACY))
    if CHECK_REWRITES:
        values = []
        for v in range(dom + 1):
            for g in reversed(word):
                v = g.apply(v)
            values.append(v)
        if tuple(values) != result.table():
            raise InvalidOperator(f"rewrite changed semantics of {' '.join(map(str, word))}")
    return result


def normalize(word: Sequence[SimplexGenerator], dom: Optional[int] = None) -> SimplexOperator:
    """Normal form of a composable word (rightmost letter acts first)."""
    start = _check_composable(word, dom)
    return _normalize_cached(tuple(word), start)


def compose(g: SimplexOperator, f: SimplexOperator) -> SimplexOperator:
    """g ∘ f."""
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose [{g.dom}]->[{g.cod}] after [{f.dom}]->[{f.cod}]")
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    return _compose_cached(g, f)


@lru_cache(maxsize=200000)
def _compose_cached(g: SimplexOperator, f: SimplexOperator) -> SimplexOperator:
    return normalize(g.word() + f.word(), f.dom)


def parse_operator(text: str, dom: int) -> SimplexOperator:
    """Inverse of SimplexOperator.render (e.g. 'd2 s0', 'id3')."""
    text = text.strip()
    if text.startswith("id"):
        n = int(text[2:])
        if n != dom:
            raise DimensionMismatch(f"{text} does not start at [{dom}]")
        return identity(n)
    tokens = text.split()
    if not tokens:
        raise InvalidOperator("empty operator")
    gens: List[SimplexGenerator] = []
    current = dom
    for token in reversed(tokens):
        if len(token) < 2 or token[0] not in "ds" or not token[1:].isdigit():
            raise InvalidOperator(f"cannot parse simplicial generator {token!r}")
        index = int(token[1:])
        if token[0] == "d":
            g = face_gen(current + 1, index)
        else:
            g = degeneracy_gen(current, index)
        gens.append(g)
        current = g.cod
    return normalize(tuple(reversed(gens)), dom)


def degeneracy_forms(n: int, d: int) -> Tuple[SimplexOperator, ...]:
    """All surjections [n] → [d]."""
    if d > n:
        return ()
    return tuple(SimplexOperator(n, d, (), combo) for combo in itertools.combinations(range(n), n - d))


def injections(k: int, n: int) -> Tuple[SimplexOperator, ...]:
    """All injections [k] → [n]."""
    return tuple(from_table(c, n) for c in itertools.combinations(range(n + 1), k + 1))


def reflect(f: SimplexOperator) -> SimplexOperator:
    """The operator conjugated by v ↦ n - v on both ends."""
    table = f.table()
    return from_table(tuple(f.cod - table[f.dom - v] for v in range(f.dom + 1)), f.cod)


@lru_cache(maxsize=None)
def _simplex_faces(n: int) -> Tuple[Tuple[int, SimplexOperator], ...]:
    return tuple((i, face(n, i)) for i in range(n + 1))


SIMPLEX_ALGEBRA = OperatorAlgebra(
    identity=identity,
    compose=compose,
    face_operators=injections,
    codim_one_faces=_simplex_faces,
    dom=lambda op: op.dom,
)


@dataclass(frozen=True, order=True)
class SimplexRef:
    """A simplex in standard form: non-degenerate `target` acted on by a surjection."""

    target: str
    op: SimplexOperator

    def __post_init__(self):
        if not self.op.is_degeneracy:
            raise InvalidOperator(f"simplex reference {self.target} carries faces: {self.op}")

    @property
    def dim(self) -> int:
        return self.op.dom

    @property
    def is_degenerate(self) -> bool:
        return not self.op.is_identity

    def render(self) -> str:
        if self.op.is_identity:
            return self.target
        return f"{self.target}@" + "".join(f"s{j}" for j in self.op.degens)

    def __str__(self) -> str:
        return self.render()


def parse_ref(text: str, dims: Mapping[str, int]) -> SimplexRef:
    """Inverse of SimplexRef.render given the dimensions of the targets."""
    target, _, degens = text.partition("@")
    if target not in dims:
        raise CubikError(f"unknown simplex {target!r}")
    indices = tuple(int(tok) for tok in degens.split("s")[1:]) if degens else ()
    d = dims[target]
    return SimplexRef(target, SimplexOperator(d + len(indices), d, (), indices))


class SimplicialSet(ABC):
    """Common interface of explicit and implicit simplicial sets."""

    name: str = "S"

    @property
    @abstractmethod
    def dim(self) -> int:
        ...

    @abstractmethod
    def simplices(self, n: int) -> List[Any]:
        """All n-simplices, degenerate ones included."""

    @abstractmethod
    def act(self, x: Any, op: SimplexOperator) -> Any:
        ...

    @abstractmethod
    def simplex_dim(self, x: Any) -> int:
        ...

    def face(self, x: Any, i: int) -> Any:
        return self.act(x, face(self.simplex_dim(x), i))

    def vertices_of(self, x: Any) -> List[Any]:
        n = self.simplex_dim(x)
        return [self.act(x, vertex_operator(n, v)) for v in range(n + 1)]

    def standard_form(self, x: Any) -> Tuple[Any, SimplexOperator]:
        """Factor x as z·s with z non-degenerate, using σ_jδ_j = id."""
        n = self.simplex_dim(x)
        for j in range(n):
            y = self.act(x, face(n, j))
            if self.act(y, degeneracy(n, j)) == x:
                z, op = self.standard_form(y)
                return z, compose(op, degeneracy(n, j))
        return x, identity(n)

    def is_degenerate(self, x: Any) -> bool:
        return not self.standard_form(x)[1].is_identity

    def nondegenerate(self, n: int) -> List[Any]:
        return [x for x in self.simplices(n) if not self.is_degenerate(x)]

    def simplices_with_faces(self, n: int, faces: Mapping[int, Any]) -> List[Any]:
        return [x for x in self.simplices(n) if all(self.face(x, i) == y for i, y in faces.items())]

    def label(self, x: Any) -> Optional[str]:
        return None


class SimplicialComplex(SimplicialSet):
    """A finite simplicial set stored by non-degenerate simplices and face tables."""

    def __init__(self, name: str, dims: Mapping[str, int],
                 faces: Mapping[Tuple[str, int], SimplexRef],
                 provenance: Optional[Mapping[str, Any]] = None):
        self.name = name
        self.dims: Dict[str, int] = dict(dims)
        self.face_table: Dict[Tuple[str, int], SimplexRef] = dict(faces)
        self.provenance: Dict[str, Any] = dict(provenance or {})
        self._simplices: Dict[int, List[SimplexRef]] = {}
        self._by_faces: Dict[int, Dict[Tuple[SimplexRef, ...], List[SimplexRef]]] = {}

    @property
    def dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def ids(self, n: Optional[int] = None) -> List[str]:
        if n is None:
            return sorted(self.dims, key=lambda c: (self.dims[c], c))
        return sorted(c for c, d in self.dims.items() if d == n)

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.ids(n)) for n in range(self.dim + 1))

    def ref(self, simplex_id: str) -> SimplexRef:
        if simplex_id not in self.dims:
            raise CubikError(f"{self.name} has no simplex {simplex_id!r}")
        return SimplexRef(simplex_id, identity(self.dims[simplex_id]))

    def simplex_dim(self, x: SimplexRef) -> int:
        return x.op.dom

    def act(self, x: SimplexRef, op: SimplexOperator) -> SimplexRef:
        h = compose(x.op, op)
        target = x.target
        while h.faces:
            step = self.face_table[(target, h.faces[0])]
            h = compose(step.op, h.without_first_face())
            target = step.target
        return SimplexRef(target, h)

    def simplices(self, n: int) -> List[SimplexRef]:
        if n not in self._simplices:
            found = [SimplexRef(c, op) for c, d in self.dims.items() if d <= n
                     for op in degeneracy_forms(n, d)]
            self._simplices[n] = sorted(found)
        return self._simplices[n]

    def nondegenerate(self, n: int) -> List[SimplexRef]:
        return [self.ref(c) for c in self.ids(n)]

    def standard_form(self, x: SimplexRef) -> Tuple[SimplexRef, SimplexOperator]:
        return self.ref(x.target), x.op

    def is_degenerate(self, x: SimplexRef) -> bool:
        return not x.op.is_identity

    def simplices_with_faces(self, n: int, faces: Mapping[int, Any]) -> List[SimplexRef]:
        if n == 0 or len(faces) < n + 1:
            return super().simplices_with_faces(n, faces)
        if n not in self._by_faces:
            index: Dict[Tuple[SimplexRef, ...], List[SimplexRef]] = {}
            for x in self.simplices(n):
                index.setdefault(tuple(self.face(x, i) for i in range(n + 1)), []).append(x)
            self._by_faces[n] = index
        return list(self._by_faces[n].get(tuple(faces[i] for i in range(n + 1)), []))

    def relabel(self, mapping: Mapping[str, str], name: Optional[str] = None) -> "SimplicialComplex":
        rename = lambda c: mapping.get(c, c)
        dims = {rename(c): d for c, d in self.dims.items()}
        if len(dims) != len(self.dims):
            raise CubikError("relabeling merges simplex ids")
        faces = {(rename(c), i): SimplexRef(rename(r.target), r.op) for (c, i), r in self.face_table.items()}
        return SimplicialComplex(name or self.name, dims, faces,
                                 {rename(c): p for c, p in self.provenance.items()})

    def renamed(self, name: str) -> "SimplicialComplex":
        return SimplicialComplex(name, self.dims, self.face_table, self.provenance)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.dims == other.dims and self.face_table == other.face_table

    __hash__ = None

    def __repr__(self) -> str:
        return f"SimplicialComplex({self.name!r}, counts={self.counts()})"


class ImplicitSimplicialSet(SimplicialSet):
    """A simplicial set enumerated level by level up to a bound."""

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

    def simplices(self, n: int) -> List[Any]:
        if n > self.bound:
            raise DimensionMismatch(f"{self.name} is only enumerated up to dimension {self.bound}")
        if n not in self._levels:
            self._levels[n] = sorted(self._enumerate(n), key=self.sort_key)
            logger.debug(f"{self.name}: level {n} has {len(self._levels[n])} simplices")
        return self._levels[n]

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.simplices(n)) for n in range(self.bound + 1))


@dataclass
class SimplicialReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate(S: SimplicialComplex) -> SimplicialReport:
    """Check face tables and δ_aδ_b = δ_{b+1}δ_a (a ≤ b) on every simplex."""
    violations: List[str] = []
    for c in S.ids():
        n = S.dims[c]
        if n == 0:
            continue
        for i in range(n + 1):
            r = S.face_table.get((c, i))
            if r is None:
                violations.append(f"{c}: missing face {i}")
            elif r.target not in S.dims or r.op.dom != n - 1 or r.op.cod != S.dims[r.target]:
                violations.append(f"{c}: face {i} is malformed")
    if violations:
        return SimplicialReport(False, violations)
    for c in S.ids():
        n = S.dims[c]
        x = S.ref(c)
        for b in range(n - 1):
            for a in range(b + 1):
                lhs = S.act(S.act(x, face(n, a)), face(n - 1, b))
                rhs = S.act(S.act(x, face(n, b + 1)), face(n - 1, a))
                if lhs != rhs:
                    violations.append(f"{c}: d{a} d{b} gives {lhs} but d{b + 1} d{a} gives {rhs}")
    return SimplicialReport(not violations, violations)


@dataclass
class SimplicialMap:
    """A simplicial map out of a finite complex, determined on non-degenerate simplices."""

    domain: SimplicialComplex
    codomain: SimplicialSet
    assignment: Dict[str, Any]

    def __call__(self, x: SimplexRef) -> Any:
        return self.codomain.act(self.assignment[x.target], x.op)

    def validate(self) -> SimplicialReport:
        violations = []
        for c in self.domain.ids():
            if c not in self.assignment:
                violations.append(f"{c} is not assigned")
                continue
            image, n = self.assignment[c], self.domain.dims[c]
            if self.codomain.simplex_dim(image) != n:
                violations.append(f"{c} has dimension {n} but its image does not")
                continue
            for i in range(n + 1) if n else ():
                if self.codomain.face(image, i) != self(self.domain.face_table[(c, i)]):
                    violations.append(f"{c}: face {i} does not commute")
        return SimplicialReport(not violations, violations)


def identity_map(S: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(S, S, {c: S.ref(c) for c in S.ids()})


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(f.domain, g.codomain, {c: g(x) for c, x in f.assignment.items()})


def is_mono(f: SimplicialMap) -> bool:
    seen = set()
    for c in f.domain.ids():
        image = f.assignment[c]
        if f.codomain.is_degenerate(image) or image in seen:
            return False
        seen.add(image)
    return True


def simplicial_maps(A: SimplicialComplex, S: SimplicialSet,
                    fixed: Optional[Mapping[str, Any]] = None,
                    budget: Optional[int] = None,
                    injective: bool = False) -> Iterator[SimplicialMap]:
    """All maps A → S, simplices assigned in (dimension, id) order."""
    fixed = dict(fixed or {})
    limit = get_budget(budget)
    order = A.ids()
    examined = 0
    partial: Dict[str, Any] = {}
    used = set()

    def candidates(c: str) -> List[Any]:
        n = A.dims[c]
        faces_ = {}
        if n > 0:
            for i in range(n + 1):
                r = A.face_table[(c, i)]
                faces_[i] = S.act(partial[r.target], r.op)
        if c in fixed:
            x = fixed[c]
            ok = S.simplex_dim(x) == n and all(S.face(x, i) == y for i, y in faces_.items())
            found = [x] if ok else []
        else:
            found = S.simplices_with_faces(n, faces_)
        if injective:
            found = [x for x in found if x not in used and not S.is_degenerate(x)]
        return found

    def extend(k: int) -> Iterator[SimplicialMap]:
        nonlocal examined
        if k == len(order):
            yield SimplicialMap(A, S, dict(partial))
            return
        c = order[k]
        for x in candidates(c):
            examined += 1
            if examined > limit:
                raise BudgetExceeded(f"maps {A.name} -> {S.name}", examined, limit)
            partial[c] = x
            used.add(x)
            yield from extend(k + 1)
            used.discard(x)
            del partial[c]

    yield from extend(0)


def count_maps(A: SimplicialComplex, S: SimplicialSet, **kwargs) -> int:
    return sum(1 for _ in simplicial_maps(A, S, **kwargs))


def find_isomorphism(A: SimplicialComplex, B: SimplicialComplex,
                     budget: Optional[int] = None) -> Optional[SimplicialMap]:
    if A.counts() != B.counts():
        return None
    for f in simplicial_maps(A, B, budget=budget, injective=True):
        return f
    return None


def is_isomorphic(A: SimplicialComplex, B: SimplicialComplex) -> bool:
    return find_isomorphism(A, B) is not None


@dataclass
class SimplicialQuotient:
    complex: SimplicialComplex
    projection: SimplicialMap
    representatives: Dict[str, str]


def quotient(S: SimplicialComplex, pairs: Sequence[Tuple[SimplexRef, SimplexRef]],
             name: Optional[str] = None,
             choose: Optional[Callable[[List[str]], str]] = None) -> SimplicialQuotient:
    """Coequalize pairs of simplices of equal dimension."""

    def act(cell: str, op: SimplexOperator) -> Tuple[str, SimplexOperator]:
        r = S.act(S.ref(cell), op)
        return r.target, r.op

    glued = glue(S.dims, act, [((l.target, l.op), (r.target, r.op)) for l, r in pairs],
                 SIMPLEX_ALGEBRA, choose)
    faces = {(c, i): SimplexRef(t, op) for (c, i), (t, op) in glued.faces.items()}
    provenance = {c: S.provenance[rep] for c, rep in glued.representatives.items() if rep in S.provenance}
    result = SimplicialComplex(name or f"{S.name}/~", glued.dims, faces, provenance)
    projection = SimplicialMap(S, result, {c: SimplexRef(t, op) for c, (t, op) in glued.projection.items()})
    return SimplicialQuotient(result, projection, glued.representatives)


def disjoint_union(parts: Sequence[SimplicialComplex], prefixes: Optional[Sequence[str]] = None,
                   name: Optional[str] = None) -> Tuple[SimplicialComplex, List[SimplicialMap]]:
    prefixes = list(prefixes) if prefixes is not None else [f"{k}." for k in range(len(parts))]
    dims: Dict[str, int] = {}
    faces: Dict[Tuple[str, int], SimplexRef] = {}
    provenance: Dict[str, Any] = {}
    for prefix, part in zip(prefixes, parts):
        dims.update({prefix + c: d for c, d in part.dims.items()})
        faces.update({(prefix + c, i): SimplexRef(prefix + r.target, r.op)
                      for (c, i), r in part.face_table.items()})
        provenance.update({prefix + c: p for c, p in part.provenance.items()})
    if len(dims) != sum(len(p.dims) for p in parts):
        raise CubikError("prefixes do not separate the summands")
    union = SimplicialComplex(name or " + ".join(p.name for p in parts), dims, faces, provenance)
    inclusions = [SimplicialMap(part, union, {c: union.ref(prefix + c) for c in part.ids()})
                  for prefix, part in zip(prefixes, parts)]
    return union, inclusions


@dataclass
class SimplicialPushout:
    complex: SimplicialComplex
    left: SimplicialMap
    right: SimplicialMap
    representatives: Dict[str, Tuple[int, str]]

    def induced(self, left_map: SimplicialMap, right_map: SimplicialMap) -> SimplicialMap:
        maps = (left_map, right_map)
        assignment = {c: maps[side].assignment[old] for c, (side, old) in self.representatives.items()}
        return SimplicialMap(self.complex, left_map.codomain, assignment)


def pushout(f: SimplicialMap, g: SimplicialMap, name: Optional[str] = None) -> SimplicialPushout:
    """Pushout of S ← A → T; ids keep a '0.' or '1.' prefix naming their summand."""
    if f.domain is not g.domain and f.domain != g.domain:
        raise DimensionMismatch("pushout legs have different domains")
    S, T = f.codomain, g.codomain
    union, (inc_s, inc_t) = disjoint_union([S, T], ("0.", "1."))
    pairs = []
    for c in f.domain.ids():
        a, b = f.assignment[c], g.assignment[c]
        pairs.append((SimplexRef("0." + a.target, a.op), SimplexRef("1." + b.target, b.op)))
    glued = quotient(union, pairs, name or f"{S.name} +_{f.domain.name} {T.name}")
    representatives = {c: (int(rep[0]), rep[2:]) for c, rep in glued.representatives.items()}
    return SimplicialPushout(glued.complex, compose_maps(glued.projection, inc_s),
                             compose_maps(glued.projection, inc_t), representatives)


def subcomplex(S: SimplicialComplex, generators: Iterable[str],
               name: Optional[str] = None) -> Tuple[SimplicialComplex, SimplicialMap]:
    keep = set()
    stack = list(generators)
    while stack:
        c = stack.pop()
        if c in keep:
            continue
        keep.add(c)
        if S.dims[c] > 0:
            stack.extend(S.face_table[(c, i)].target for i in range(S.dims[c] + 1))
    sub = SimplicialComplex(name or f"{S.name}|sub", {c: S.dims[c] for c in keep},
                            {key: r for key, r in S.face_table.items() if key[0] in keep},
                            {c: p for c, p in S.provenance.items() if c in keep})
    return sub, SimplicialMap(sub, S, {c: S.ref(c) for c in keep})


def remove_simplices(S: SimplicialComplex, removed: Iterable[str], name: Optional[str] = None) -> SimplicialComplex:
    removed = set(removed)
    keep = [c for c in S.ids() if c not in removed]
    for c in keep:
        if S.dims[c] and any(S.face_table[(c, i)].target in removed for i in range(S.dims[c] + 1)):
            raise PreconditionError(f"cannot remove a face of the remaining simplex {c}")
    sub, _ = subcomplex(S, keep, name)
    return sub


def image(f: SimplicialMap, name: Optional[str] = None) -> Tuple[SimplicialComplex, SimplicialMap]:
    if not isinstance(f.codomain, SimplicialComplex):
        raise PreconditionError("image needs an explicit codomain")
    return subcomplex(f.codomain, {r.target for r in f.assignment.values()}, name)


@dataclass
class SimplicialMaterializeResult:
    complex: SimplicialComplex
    embedding: SimplicialMap
    ids: Dict[Any, str]


def materialize(X: SimplicialSet, max_dim: Optional[int] = None,
                name: Optional[str] = None) -> SimplicialMaterializeResult:
    """Store an implicit simplicial set explicitly up to a dimension."""
    top = X.dim if max_dim is None else max_dim
    ids: Dict[Any, str] = {}
    dims: Dict[str, int] = {}
    for n in range(top + 1):
        for k, x in enumerate(X.nondegenerate(n)):
            label = X.label(x) or f"x{n}_{k}"
            if label in dims:
                label = f"{label}#{n}_{k}"
            ids[x] = label
            dims[label] = n
    faces: Dict[Tuple[str, int], SimplexRef] = {}
    for x, c in ids.items():
        n = dims[c]
        for i in range(n + 1) if n else ():
            z, op = X.standard_form(X.face(x, i))
            faces[(c, i)] = SimplexRef(ids[z], op)
    result = SimplicialComplex(name or X.name, dims, faces)
    return SimplicialMaterializeResult(result, SimplicialMap(result, X, {c: x for x, c in ids.items()}), ids)


def opposite(S: SimplicialComplex) -> SimplicialComplex:
    """S^op: the i-th face of x is the reflected (n-i)-th face."""
    faces = {}
    for c in S.ids():
        n = S.dims[c]
        for i in range(n + 1) if n else ():
            r = S.face_table[(c, n - i)]
            faces[(c, i)] = SimplexRef(r.target, reflect(r.op))
    return SimplicialComplex(f"{S.name}^op", S.dims, faces, S.provenance)


# Nerves of posets and standard shapes ------------------------------------

class PosetNerve(SimplicialComplex):
    """
    The nerve of a finite poset: non-degenerate simplices are strict chains.

    Chain ids join element labels, with no separator when every label is a
    single character and '<' otherwise.
    """

    def __init__(self, poset: nx.DiGraph, name: str):
        closure = nx.transitive_closure_dag(poset) if nx.is_directed_acyclic_graph(poset) else None
        if closure is None:
            raise PreconditionError(f"{name}: the order relation has a cycle")
        self.poset = closure
        self.elements = list(nx.lexicographical_topological_sort(poset, key=str))
        self.position = {e: k for k, e in enumerate(self.elements)}
        self.separator = "" if all(len(str(e)) == 1 for e in self.elements) else "<"
        dims: Dict[str, int] = {}
        faces: Dict[Tuple[str, int], SimplexRef] = {}
        provenance: Dict[str, Tuple[str, ...]] = {}
        for chain in self._chains():
            c = self.chain_id(chain)
            n = len(chain) - 1
            dims[c] = n
            provenance[c] = chain
            for i in range(n + 1) if n else ():
                faces[(c, i)] = SimplexRef(self.chain_id(chain[:i] + chain[i + 1:]), identity(n - 1))
        super().__init__(name, dims, faces, provenance)

    def _chains(self) -> Iterator[Tuple[str, ...]]:
        def extend(chain: Tuple[str, ...]) -> Iterator[Tuple[str, ...]]:
            yield chain
            for e in sorted(self.poset.successors(chain[-1]), key=self.position.get):
                yield from extend(chain + (e,))
        for e in self.elements:
            yield from extend((e,))

    def leq(self, a: str, b: str) -> bool:
        return a == b or self.poset.has_edge(a, b)

    def chain_id(self, chain: Sequence[str]) -> str:
        return self.separator.join(str(e) for e in chain)

    def chain_of(self, simplex_id: str) -> Tuple[str, ...]:
        return self.provenance[simplex_id]

    def chain_ref(self, chain: Sequence[str]) -> SimplexRef:
        """The simplex named by a weakly increasing chain."""
        for a, b in zip(chain, chain[1:]):
            if not self.leq(a, b):
                raise PreconditionError(f"{list(chain)} is not a chain of {self.name}")
        strict: List[str] = []
        table = []
        for e in chain:
            if not strict or strict[-1] != e:
                strict.append(e)
            table.append(len(strict) - 1)
        return SimplexRef(self.chain_id(strict), from_table(table, len(strict) - 1))


def poset_nerve(poset: nx.DiGraph, name: str = "N(P)") -> PosetNerve:
    """Nerve of the poset whose order is generated by the edges of a DAG."""
    return PosetNerve(poset, name)


def linear_order(n: int) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(str(k) for k in range(n + 1))
    graph.add_edges_from((str(k), str(k + 1)) for k in range(n))
    return graph


@lru_cache(maxsize=None)
def simplex(n: int) -> PosetNerve:
    """Δⁿ = N([n]); the face spanned by vertices a < b < … has id 'ab…'."""
    if n < 0:
        raise InvalidOperator(f"negative simplex dimension {n}")
    return PosetNerve(linear_order(n), f"Delta{n}")


def top_id(n: int) -> str:
    return simplex(n).chain_id([str(k) for k in range(n + 1)])


def simplex_boundary(n: int) -> SimplicialComplex:
    return remove_simplices(simplex(n), [top_id(n)], f"boundary_Delta{n}")


def horn(n: int, k: int) -> SimplicialComplex:
    """Λⁿ_k: ∂Δⁿ without the face opposite vertex k."""
    if n < 1 or not 0 <= k <= n:
        raise InvalidOperator(f"no horn with n={n} k={k}")
    D = simplex(n)
    missing = D.chain_id([str(v) for v in range(n + 1) if v != k])
    return remove_simplices(D, [top_id(n), missing], f"Lambda{n}_{k}")


def j_complex() -> SimplicialComplex:
    """
    J: two triangles t1 = (1,0,1) and t2 = (0,1,0) sharing the edge e: 0→1,
    with a, b: 1→0 and the remaining edges degenerate.
    """
    dims = {"0": 0, "1": 0, "a": 1, "b": 1, "e": 1, "t1": 2, "t2": 2}
    v = lambda c: SimplexRef(c, identity(0))
    edge = lambda c: SimplexRef(c, identity(1))
    flat_on = lambda c: SimplexRef(c, degeneracy(1, 0))
    faces = {
        ("a", 0): v("0"), ("a", 1): v("1"),
        ("b", 0): v("0"), ("b", 1): v("1"),
        ("e", 0): v("1"), ("e", 1): v("0"),
        ("t1", 0): edge("e"), ("t1", 1): flat_on("1"), ("t1", 2): edge("a"),
        ("t2", 0): edge("b"), ("t2", 1): flat_on("0"), ("t2", 2): edge("e"),
    }
    return SimplicialComplex("J", dims, faces)


SIMPLICIAL_SHAPES = ("simplex", "boundary", "horn", "J")


def standard_simplicial_shape(kind: str, n: Optional[int] = None, k: Optional[int] = None) -> SimplicialComplex:
    if kind == "J":
        return j_complex()
    if n is None:
        raise InvalidOperator(f"shape {kind} needs a dimension")
    if kind == "simplex":
        return simplex(n)
    if kind == "boundary":
        return simplex_boundary(n)
    if kind == "horn":
        if k is None:
            raise InvalidOperator("horn needs --i")
        return horn(n, k)
    raise InvalidOperator(f"unknown simplicial shape {kind!r}")


# Cartesian products ------------------------------------------------------

def _collapse(values: Sequence[int], common: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Surjection merging j, j+1 for j in common, and its least section."""
    table = [0]
    for j in range(len(values) - 1):
        table.append(table[-1] + (0 if j in common else 1))
    section = [table.index(w) for w in range(table[-1] + 1)]
    return tuple(table), tuple(section)


def product_pair_id(a: SimplexRef, b: SimplexRef) -> str:
    return f"({a.render()},{b.render()})"


def _normalized_pair(a: SimplexRef, b: SimplexRef) -> SimplexRef:
    """(a, b) as a non-degenerate pair followed by the shared degeneracies."""
    alpha, beta = a.op.table(), b.op.table()
    common = [j for j in range(len(alpha) - 1) if alpha[j] == alpha[j + 1] and beta[j] == beta[j + 1]]
    table, section = _collapse(alpha, common)
    a2 = SimplexRef(a.target, from_table([alpha[v] for v in section], a.op.cod))
    b2 = SimplexRef(b.target, from_table([beta[v] for v in section], b.op.cod))
    return SimplexRef(product_pair_id(a2, b2), from_table(table, table[-1]))


def product(S: SimplicialComplex, T: SimplicialComplex, name: Optional[str] = None) -> SimplicialComplex:
    """
    S × T. Its non-degenerate n-simplices are pairs (a, b) of n-simplices
    with no common degeneracy j: a(j) = a(j+1) and b(j) = b(j+1).
    """
    dims: Dict[str, int] = {}
    faces: Dict[Tuple[str, int], SimplexRef] = {}
    provenance: Dict[str, Tuple[SimplexRef, SimplexRef]] = {}
    for n in range(S.dim + T.dim + 1):
        for a in S.simplices(n):
            for b in T.simplices(n):
                r = _normalized_pair(a, b)
                if r.is_degenerate:
                    continue
                dims[r.target] = n
                provenance[r.target] = (a, b)
                for i in range(n + 1) if n else ():
                    faces[(r.target, i)] = _normalized_pair(S.face(a, i), T.face(b, i))
    return SimplicialComplex(name or f"{S.name}x{T.name}", dims, faces, provenance)


def product_map(f: SimplicialMap, g: SimplicialMap,
                source: Optional[SimplicialComplex] = None,
                target: Optional[SimplicialComplex] = None) -> SimplicialMap:
    """f × g between explicit products."""
    source = source or product(f.domain, g.domain)
    target = target or product(f.codomain, g.codomain)
    assignment = {}
    for c in source.ids():
        a, b = source.provenance[c]
        image_a, image_b = f(a), g(b)
        assignment[c] = _pair_ref(target, image_a, image_b)
    return SimplicialMap(source, target, assignment)


def _pair_ref(P: SimplicialComplex, a: SimplexRef, b: SimplexRef) -> SimplexRef:
    """The simplex (a, b) of a product complex in standard form."""
    r = _normalized_pair(a, b)
    if r.target not in P.dims:
        raise CubikError(f"{r.target} is not a simplex of {P.name}")
    return r
