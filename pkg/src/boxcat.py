"""
Morphisms of the box category with connections.

A BoxOperator is stored in its unique normal form

    ∂_{c_1,ε'_1} … ∂_{c_r,ε'_r} γ_{b_1,ε_1} … γ_{b_q,ε_q} σ_{a_1} … σ_{a_p}

(function-composition order, rightmost acts first) with faces strictly
decreasing, connections nondecreasing (strictly when adjacent signs agree)
and degeneracies strictly increasing. Composition rewrites the concatenated
generator word with the cubical identities; evaluate() gives the monotone
vertex function used as an independent oracle.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

try:
    from .errors import DimensionMismatch, InvalidOperator
    from .rewriting import rewrite_to_normal_form
except ImportError:
    from errors import DimensionMismatch, InvalidOperator
    from rewriting import rewrite_to_normal_form

logger = logging.getLogger(__name__)

FACE = "face"
CONNECTION = "connection"
DEGENERACY = "degeneracy"

INVOLUTIONS = ("co", "coop", "op")

# Sub-box-categories by allowed connection signs.
BOX = "box"
BOX_0 = "box_0"
BOX_1 = "box_1"
BOX_EMPTY = "box_empty"

CHECK_REWRITES = os.getenv("CUBIK_CHECK_REWRITES", "").lower() in ("1", "true", "yes")


@dataclass(frozen=True, order=True)
class Generator:
    """
    A generating map of the box category.

    `dim` is the superscript n of ∂ⁿ_{i,ε} : [1]^{n-1}→[1]^n,
    σⁿ_i : [1]^n→[1]^{n-1} and γⁿ_{i,ε} : [1]^n→[1]^{n-1}.
    """

    kind: str
    index: int
    sign: Optional[int]
    dim: int

    def __post_init__(self):
        if self.kind == FACE:
            ok = 1 <= self.index <= self.dim and self.sign in (0, 1)
        elif self.kind == DEGENERACY:
            ok = 1 <= self.index <= self.dim and self.sign is None
        elif self.kind == CONNECTION:
            ok = 1 <= self.index <= self.dim - 1 and self.sign in (0, 1)
        else:
            ok = False
        if not ok:
            raise InvalidOperator(f"illegal generator {self.kind} i={self.index} "
                                  f"eps={self.sign} n={self.dim}")

    @property
    def dom(self) -> int:
        return self.dim - 1 if self.kind == FACE else self.dim

    @property
    def cod(self) -> int:
        return self.dim if self.kind == FACE else self.dim - 1

    def render(self) -> str:
        if self.kind == FACE:
            return f"d{self.index}_{self.sign}"
        if self.kind == CONNECTION:
            return f"g{self.index}_{self.sign}"
        return f"s{self.index}"

    def __str__(self) -> str:
        return self.render()

    def to_operator(self) -> "BoxOperator":
        return normalize((self,), self.dom)


def face_gen(n: int, i: int, eps: int) -> Generator:
    return Generator(FACE, i, eps, n)


def degeneracy_gen(n: int, i: int) -> Generator:
    return Generator(DEGENERACY, i, None, n)


def connection_gen(n: int, i: int, eps: int) -> Generator:
    return Generator(CONNECTION, i, eps, n)


@dataclass(frozen=True)
class VertexMap:
    """A map {0,1}^dom → {0,1}^cod given by its table of output tuples."""

    dom: int
    cod: int
    table: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def from_array(dom: int, cod: int, array: np.ndarray) -> "VertexMap":
        return VertexMap(dom, cod, tuple(tuple(int(v) for v in row) for row in array))

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int8).reshape(2 ** self.dom, self.cod)

    def __call__(self, point: Sequence[int]) -> Tuple[int, ...]:
        return self.table[vertex_index(point)]

    def is_monotone(self) -> bool:
        points = cube_vertices(self.dom)
        values = self.as_array()
        below = np.all(points[:, None, :] <= points[None, :, :], axis=2)
        value_below = np.all(values[:, None, :] <= values[None, :, :], axis=2)
        return bool(np.all(value_below[below]))

    def then(self, other: "VertexMap") -> "VertexMap":
        """other ∘ self."""
        if self.cod != other.dom:
            raise DimensionMismatch(f"cannot compose vertex maps {self.cod} -> {other.dom}")
        indices = [vertex_index(row) for row in self.table]
        return VertexMap(self.dom, other.cod, tuple(other.table[k] for k in indices))


@lru_cache(maxsize=None)
def _cube_vertices(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int8)


def cube_vertices(n: int) -> np.ndarray:
    """Vertices of [1]^n in lexicographic order, x_1 most significant."""
    return _cube_vertices(n)


def vertex_index(point: Sequence[int]) -> int:
    index = 0
    for bit in point:
        index = 2 * index + int(bit)
    return index


def _apply_generator(g: Generator, points: np.ndarray) -> np.ndarray:
    i = g.index - 1
    if g.kind == FACE:
        return np.insert(points, i, g.sign, axis=1)
    if g.kind == DEGENERACY:
        return np.delete(points, i, axis=1)
    pair = points[:, i:i + 2]
    merged = pair.max(axis=1) if g.sign == 0 else pair.min(axis=1)
    return np.concatenate([points[:, :i], merged[:, None], points[:, i + 2:]], axis=1)


def evaluate_word(word: Sequence[Generator], dom: int) -> VertexMap:
    """Vertex function of a composable word, computed from generator formulas."""
    points = cube_vertices(dom).copy()
    cod = dom
    for g in reversed(word):
        if g.dom != cod:
            raise DimensionMismatch(f"generator {g} does not apply to [1]^{cod}")
        points = _apply_generator(g, points)
        cod = g.cod
    return VertexMap.from_array(dom, cod, points)


class Classification(NamedTuple):
    in_plus: bool
    in_minus: bool
    variants: FrozenSet[str]

    @property
    def part(self) -> str:
        if self.in_plus and self.in_minus:
            return "identity"
        if self.in_plus:
            return "plus"
        if self.in_minus:
            return "minus"
        return "mixed"


@dataclass(frozen=True, order=True)
class BoxOperator:
    """A morphism [1]^dom → [1]^cod in normal form."""

    dom: int
    cod: int
    faces: Tuple[Tuple[int, int], ...] = ()
    connections: Tuple[Tuple[int, int], ...] = ()
    degens: Tuple[int, ...] = ()

    def __post_init__(self):
        p, q, r = len(self.degens), len(self.connections), len(self.faces)
        if self.dom < 0 or self.cod < 0 or self.dom - p - q + r != self.cod or self.dom - p - q < 0:
            raise InvalidOperator(f"dimension bookkeeping fails for {self!r}")
        m = self.dom
        for k, a in enumerate(self.degens, start=1):
            if not 1 <= a <= m - (p - k):
                raise InvalidOperator(f"degeneracy index out of range in {self!r}")
            if k > 1 and self.degens[k - 2] >= a:
                raise InvalidOperator(f"degeneracies not strictly increasing in {self!r}")
        d1 = m - p
        for k, (b, eps) in enumerate(self.connections, start=1):
            if eps not in (0, 1) or not 1 <= b <= d1 - (q - k) - 1:
                raise InvalidOperator(f"connection index out of range in {self!r}")
            if k > 1:
                prev_b, prev_eps = self.connections[k - 2]
                if prev_b > b or (prev_b == b and prev_eps == eps):
                    raise InvalidOperator(f"connections out of order in {self!r}")
        d0 = d1 - q
        for k, (c, eps) in enumerate(self.faces, start=1):
            if eps not in (0, 1) or not 1 <= c <= d0 + (r - k) + 1:
                raise InvalidOperator(f"face index out of range in {self!r}")
            if k > 1 and self.faces[k - 2][0] <= c:
                raise InvalidOperator(f"faces not strictly decreasing in {self!r}")

    @property
    def middle(self) -> int:
        """Dimension between the □₋ part and the face part."""
        return self.dom - len(self.degens) - len(self.connections)

    def word(self) -> Tuple[Generator, ...]:
        gens: List[Generator] = []
        d0 = self.middle
        r = len(self.faces)
        for k, (c, eps) in enumerate(self.faces, start=1):
            gens.append(face_gen(d0 + (r - k) + 1, c, eps))
        d1 = self.dom - len(self.degens)
        q = len(self.connections)
        for k, (b, eps) in enumerate(self.connections, start=1):
            gens.append(connection_gen(d1 - (q - k), b, eps))
        p = len(self.degens)
        for k, a in enumerate(self.degens, start=1):
            gens.append(degeneracy_gen(self.dom - (p - k), a))
        return tuple(gens)

    @property
    def is_identity(self) -> bool:
        return not (self.faces or self.connections or self.degens)

    @property
    def is_minus(self) -> bool:
        return not self.faces

    @property
    def is_plus(self) -> bool:
        return not (self.connections or self.degens)

    def minus_part(self) -> "BoxOperator":
        return BoxOperator(self.dom, self.middle, (), self.connections, self.degens)

    def face_part(self) -> "BoxOperator":
        return BoxOperator(self.middle, self.cod, self.faces)

    def without_first_face(self) -> "BoxOperator":
        """Drop the leftmost face: self = ∂_{c_1,ε} ∘ result."""
        if not self.faces:
            raise InvalidOperator("operator has no face to remove")
        return BoxOperator(self.dom, self.cod - 1, self.faces[1:], self.connections, self.degens)

    def evaluate(self) -> VertexMap:
        return evaluate(self)

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)


def identity(n: int) -> BoxOperator:
    return BoxOperator(n, n)


def face(n: int, i: int, eps: int) -> BoxOperator:
    """∂ⁿ_{i,ε} : [1]^{n-1} → [1]^n."""
    face_gen(n, i, eps)
    return BoxOperator(n - 1, n, faces=((i, eps),))


def degeneracy(n: int, i: int) -> BoxOperator:
    """σⁿ_i : [1]^n → [1]^{n-1}."""
    degeneracy_gen(n, i)
    return BoxOperator(n, n - 1, degens=(i,))


def connection(n: int, i: int, eps: int) -> BoxOperator:
    """γⁿ_{i,ε} : [1]^n → [1]^{n-1}."""
    connection_gen(n, i, eps)
    return BoxOperator(n, n - 1, connections=((i, eps),))


def total_degeneracy(n: int) -> BoxOperator:
    """The unique map [1]^n → [1]^0."""
    return BoxOperator(n, 0, degens=tuple(range(1, n + 1)))


def critical_edge(n: int, i: int, eps: int) -> BoxOperator:
    """
    The edge of □ⁿ adjacent to the missing face ∂_{i,ε} that contains both
    extreme vertices: coordinate i varies, every other coordinate is 1−ε.
    """
    if not 1 <= i <= n or eps not in (0, 1):
        raise InvalidOperator(f"no critical edge for n={n} i={i} eps={eps}")
    return BoxOperator(1, n, faces=tuple((j, 1 - eps) for j in range(n, 0, -1) if j != i))


def _box_rule(left: Generator, right: Generator) -> Optional[Tuple[Generator, ...]]:
    """One row of the cubical identities, oriented towards the normal form."""
    lk, rk = left.kind, right.kind
    if lk == DEGENERACY and rk == FACE:
        n, j, i, eps = right.dim, left.index, right.index, right.sign
        if j == i:
            return ()
        if j < i:
            return (face_gen(n - 1, i - 1, eps), degeneracy_gen(n - 1, j))
        return (face_gen(n - 1, i, eps), degeneracy_gen(n - 1, j - 1))

    if lk == CONNECTION and rk == FACE:
        n, j, i = right.dim, left.index, right.index
        eps, eps_c = right.sign, left.sign
        if j < i - 1:
            return (face_gen(n - 1, i - 1, eps), connection_gen(n - 1, j, eps_c))
        if j > i:
            return (face_gen(n - 1, i, eps), connection_gen(n - 1, j - 1, eps_c))
        if eps == eps_c:
            return ()
        # j ∈ {i−1, i} with opposite signs: the merged coordinate is constant ε.
        return (face_gen(n - 1, j, eps), degeneracy_gen(n - 1, j))

    if lk == DEGENERACY and rk == CONNECTION:
        n, j, i, eps = left.dim, left.index, right.index, right.sign
        if j < i:
            return (connection_gen(n, i - 1, eps), degeneracy_gen(n + 1, j))
        if j == i:
            return (degeneracy_gen(n, i), degeneracy_gen(n + 1, i))
        return (connection_gen(n, i, eps), degeneracy_gen(n + 1, j + 1))

    if lk == FACE and rk == FACE and left.index <= right.index:
        n = right.dim
        return (face_gen(n + 1, right.index + 1, right.sign), face_gen(n, left.index, left.sign))

    if lk == DEGENERACY and rk == DEGENERACY and right.index <= left.index:
        n = left.dim
        return (degeneracy_gen(n, right.index), degeneracy_gen(n + 1, left.index + 1))

    if lk == CONNECTION and rk == CONNECTION:
        n, j, i = left.dim, left.index, right.index
        if j > i:
            return (connection_gen(n, i, right.sign), connection_gen(n + 1, j + 1, left.sign))
        if j == i and left.sign == right.sign:
            return (connection_gen(n, i, right.sign), connection_gen(n + 1, i + 1, right.sign))
    return None


def _check_composable(word: Sequence[Generator], dom: Optional[int]) -> int:
    if not word:
        if dom is None:
            raise DimensionMismatch("empty word needs an explicit dimension")
        return dom
    if dom is not None and word[-1].dom != dom:
        raise DimensionMismatch(f"word starts at [1]^{word[-1].dom}, expected [1]^{dom}")
    for left, right in zip(word, word[1:]):
        if left.dom != right.cod:
            raise DimensionMismatch(f"{left} cannot follow {right}")
    return word[-1].dom


def _from_normal_word(word: Sequence[Generator], dom: int) -> BoxOperator:
    faces = tuple((g.index, g.sign) for g in word if g.kind == FACE)
    conns = tuple((g.index, g.sign) for g in word if g.kind == CONNECTION)
    degens = tuple(g.index for g in word if g.kind == DEGENERACY)
    cod = word[0].cod if word else dom
    return BoxOperator(dom, cod, faces, conns, degens)


@lru_cache(maxsize=200000)
def _normalize_cached(word: Tuple[Generator, ...], dom: int) -> BoxOperator:
    reduced = rewrite_to_normal_form(word, _box_rule)
    result = _from_normal_word(reduced, dom)
    if CHECK_REWRITES and evaluate_word(word, dom) != evaluate(result):
        raise InvalidOperator(f"rewrite changed semantics of {' '.join(map(str, word))}")
    return result


def normalize(word: Sequence[Generator], dom: Optional[int] = None) -> BoxOperator:
    """
    Normal form of a composable generator word.

    Args:
        word: Generators in composition order (rightmost acts first)
        dom: Domain dimension, required for the empty word

    Returns:
        The unique normal form with the same vertex function
    """
    start = _check_composable(word, dom)
    return _normalize_cached(tuple(word), start)


def compose(g: BoxOperator, f: BoxOperator) -> BoxOperator:
    """g ∘ f."""
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose [1]^{g.dom}->[1]^{g.cod} after "
                                f"[1]^{f.dom}->[1]^{f.cod}")
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    return _compose_cached(g, f)


@lru_cache(maxsize=200000)
def _compose_cached(g: BoxOperator, f: BoxOperator) -> BoxOperator:
    return normalize(g.word() + f.word(), f.dom)


def compose_all(*ops: BoxOperator) -> BoxOperator:
    """ops[0] ∘ ops[1] ∘ … ∘ ops[-1]."""
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = compose(op, result)
    return result


@lru_cache(maxsize=None)
def evaluate(f: BoxOperator) -> VertexMap:
    return evaluate_word(f.word(), f.dom)


def _involute_generator(g: Generator, kind: str) -> Generator:
    n = g.dim
    index, sign = g.index, g.sign
    if kind in ("co", "op"):
        if g.kind == CONNECTION:
            index = n - index
        else:
            index = n - index + 1
    if kind in ("coop", "op") and sign is not None:
        sign = 1 - sign
    return Generator(g.kind, index, sign, n)


def involute(f: BoxOperator, kind: str) -> BoxOperator:
    """Image of f under the involution co, coop or op."""
    if kind not in INVOLUTIONS:
        raise InvalidOperator(f"unknown involution {kind!r}")
    return normalize(tuple(_involute_generator(g, kind) for g in f.word()), f.dom)


def classify(f: BoxOperator) -> Classification:
    signs = {eps for _, eps in f.connections}
    variants = {BOX}
    if 1 not in signs:
        variants.add(BOX_0)
    if 0 not in signs:
        variants.add(BOX_1)
    if not signs:
        variants.add(BOX_EMPTY)
    return Classification(f.is_plus, f.is_minus, frozenset(variants))


def tensor_operator(f: BoxOperator, g: BoxOperator) -> BoxOperator:
    """f ⊗ g : [1]^{f.dom+g.dom} → [1]^{f.cod+g.cod}, acting blockwise."""
    left = tuple(Generator(x.kind, x.index, x.sign, x.dim + g.cod) for x in f.word())
    right = tuple(Generator(x.kind, x.index + f.dom, x.sign, x.dim + f.dom) for x in g.word())
    return normalize(left + right, f.dom + g.dom)


def render(f: BoxOperator) -> str:
    """Canonical text, e.g. 'd2_1 g1_0 s3'; identities render as 'id<n>'."""
    if f.is_identity:
        return f"id{f.dom}"
    return " ".join(g.render() for g in f.word())


def parse_operator(text: str, dom: int) -> BoxOperator:
    """
    Parse a rendered word and normalize it.

    Args:
        text: Space separated generators such as 'g1_0 s2', or 'id<n>'
        dom: Dimension the rightmost generator acts on

    Returns:
        The normal form of the parsed word
    """
    tokens = text.split()
    if len(tokens) == 1 and tokens[0].startswith("id"):
        try:
            n = int(tokens[0][2:])
        except ValueError:
            raise InvalidOperator(f"bad identity token {tokens[0]!r}")
        if n != dom:
            raise DimensionMismatch(f"{tokens[0]} does not act on [1]^{dom}")
        return identity(dom)

    parsed: List[Tuple[str, int, Optional[int]]] = []
    for token in tokens:
        try:
            if token[0] in "dg":
                index, sign = token[1:].split("_")
                kind = FACE if token[0] == "d" else CONNECTION
                parsed.append((kind, int(index), int(sign)))
            elif token[0] == "s":
                parsed.append((DEGENERACY, int(token[1:]), None))
            else:
                raise ValueError(token)
        except (ValueError, IndexError):
            raise InvalidOperator(f"cannot parse generator {token!r}")

    word: List[Generator] = []
    current = dom
    for kind, index, sign in reversed(parsed):
        n = current + 1 if kind == FACE else current
        g = Generator(kind, index, sign, n)
        word.append(g)
        current = g.cod
    return normalize(tuple(reversed(word)), dom)


def _increasing_sequences(length: int, bound) -> Iterator[Tuple[int, ...]]:
    """Strictly increasing sequences with seq[k-1] <= bound(k)."""
    def extend(prefix: Tuple[int, ...]):
        k = len(prefix) + 1
        if k > length:
            yield prefix
            return
        start = prefix[-1] + 1 if prefix else 1
        for value in range(start, bound(k) + 1):
            yield from extend(prefix + (value,))
    yield from extend(())


def _connection_sequences(length: int, bound) -> Iterator[Tuple[Tuple[int, int], ...]]:
    def extend(prefix):
        k = len(prefix) + 1
        if k > length:
            yield prefix
            return
        for b in range(1, bound(k) + 1):
            for eps in (0, 1):
                if prefix:
                    pb, pe = prefix[-1]
                    if pb > b or (pb == b and pe == eps):
                        continue
                yield from extend(prefix + ((b, eps),))
    yield from extend(())


def _face_sequences(length: int, bound) -> Iterator[Tuple[Tuple[int, int], ...]]:
    def extend(prefix):
        k = len(prefix) + 1
        if k > length:
            yield prefix
            return
        top = bound(k) if not prefix else min(bound(k), prefix[-1][0] - 1)
        for c in range(top, 0, -1):
            for eps in (0, 1):
                yield from extend(prefix + ((c, eps),))
    yield from extend(())


@lru_cache(maxsize=None)
def normal_forms(m: int, n: int, minus_only: bool = False) -> Tuple[BoxOperator, ...]:
    """Every syntactically legal normal form [1]^m → [1]^n, sorted."""
    results = []
    for p in range(m + 1):
        for q in range(m - p + 1):
            r = n - (m - p - q)
            if r < 0 or (minus_only and r > 0):
                continue
            d1, d0 = m - p, m - p - q
            for degens in _increasing_sequences(p, lambda k: m - (p - k)):
                for conns in _connection_sequences(q, lambda k: d1 - (q - k) - 1):
                    for faces in _face_sequences(r, lambda k: d0 + (r - k) + 1):
                        results.append(BoxOperator(m, n, faces, conns, degens))
    return tuple(sorted(results))


def minus_forms(m: int, n: int) -> Tuple[BoxOperator, ...]:
    """The □₋ operators [1]^m → [1]^n (connections and degeneracies only)."""
    return normal_forms(m, n, minus_only=True)


def generators_from(dim: int, max_dim: int) -> List[Generator]:
    """All generators whose domain is [1]^dim and codomain has dimension <= max_dim."""
    gens: List[Generator] = []
    if dim + 1 <= max_dim:
        for i in range(1, dim + 2):
            for eps in (0, 1):
                gens.append(face_gen(dim + 1, i, eps))
    for i in range(1, dim + 1):
        gens.append(degeneracy_gen(dim, i))
    for i in range(1, dim):
        for eps in (0, 1):
            gens.append(connection_gen(dim, i, eps))
    return gens


@lru_cache(maxsize=None)
def hom_set(m: int, n: int) -> Tuple[BoxOperator, ...]:
    """
    Enumerate □([1]^m, [1]^n) by breadth-first closure under post-composition
    with generators, deduplicated by vertex function.

    Args:
        m: Domain dimension
        n: Codomain dimension

    Returns:
        Sorted tuple of normal forms
    """
    bound = max(m, n)
    start = identity(m)
    seen: Dict[VertexMap, BoxOperator] = {evaluate(start): start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for g in generators_from(f.cod, bound):
            h = compose(g.to_operator(), f)
            key = evaluate(h)
            if key in seen:
                if seen[key] != h:
                    raise InvalidOperator(f"two normal forms {seen[key]} and {h} "
                                          f"share a vertex function")
                continue
            seen[key] = h
            queue.append(h)
    result = tuple(sorted(op for op in seen.values() if op.cod == n))
    logger.debug(f"hom_set({m}, {n}) has {len(result)} elements")
    return result


@lru_cache(maxsize=None)
def plus_forms(k: int, n: int) -> Tuple[BoxOperator, ...]:
    """The face maps [1]^k → [1]^n, i.e. the □₊ part of the hom-set."""
    if k > n:
        return ()
    r = n - k
    return tuple(sorted(BoxOperator(k, n, faces)
                        for faces in _face_sequences(r, lambda j: k + (r - j) + 1)))


def pattern_of(f: BoxOperator) -> str:
    """
    The sub-cube hit by the face part of f, as a word over {0, 1, *}:
    constant coordinates show their value, free ones show '*'.
    """
    cells = ["*"] * f.middle
    for c, eps in reversed(f.faces):
        cells.insert(c - 1, str(eps))
    return "".join(cells)


def operator_of_pattern(pattern: str) -> BoxOperator:
    """Inverse of pattern_of on face maps."""
    if any(ch not in "01*" for ch in pattern):
        raise InvalidOperator(f"bad cube pattern {pattern!r}")
    faces = tuple((pos + 1, int(ch)) for pos, ch in reversed(list(enumerate(pattern)))
                  if ch != "*")
    return BoxOperator(pattern.count("*"), len(pattern), faces)
