"""
Finite categories, their cubical nerves, and the fundamental category τ₁.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

try:
    from .boxcat import BoxOperator, evaluate, vertex_index
    from .complex import CubicalComplex, ImplicitComplex, ValidationReport
    from .config import get_setting
    from .errors import CubikError, DimensionMismatch, PreconditionError
    from .rewriting import knuth_bendix, reduce_word
except ImportError:
    from boxcat import BoxOperator, evaluate, vertex_index
    from complex import CubicalComplex, ImplicitComplex, ValidationReport
    from config import get_setting
    from errors import CubikError, DimensionMismatch, PreconditionError
    from rewriting import knuth_bendix, reduce_word

logger = logging.getLogger(__name__)


@dataclass
class FinCategory:
    """A finite category given by its full composition table."""

    name: str
    objects: Tuple[str, ...]
    morphisms: Dict[str, Tuple[str, str]]
    identities: Dict[str, str]
    # (g, f) -> g∘f, for every composable pair
    composition: Dict[Tuple[str, str], str]

    def source(self, f: str) -> str:
        return self.morphisms[f][0]

    def target(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, a: str, b: str) -> List[str]:
        return sorted(f for f, (s, t) in self.morphisms.items() if s == a and t == b)

    def compose(self, g: str, f: str) -> str:
        """g ∘ f."""
        if self.target(f) != self.source(g):
            raise CubikError(f"{g} cannot follow {f} in {self.name}")
        return self.composition[(g, f)]

    def validate(self) -> ValidationReport:
        violations = []
        for o in self.objects:
            ident = self.identities.get(o)
            if ident is None or self.morphisms.get(ident) != (o, o):
                violations.append(f"object {o} lacks an identity")
        for f, (a, b) in self.morphisms.items():
            if a not in self.objects or b not in self.objects:
                violations.append(f"{f} has an unknown endpoint")
        if violations:
            return ValidationReport(False, violations)
        for f, (a, b) in self.morphisms.items():
            for g in self.morphisms:
                if self.source(g) != b:
                    continue
                gf = self.composition.get((g, f))
                if gf is None or self.morphisms.get(gf) != (a, self.target(g)):
                    violations.append(f"composite {g}∘{f} missing or misplaced")
            if self.composition.get((self.identities[b], f)) != f or \
                    self.composition.get((f, self.identities[a])) != f:
                violations.append(f"unit law fails for {f}")
        if violations:
            return ValidationReport(False, violations)
        for f, g, h in itertools.product(self.morphisms, repeat=3):
            if self.target(f) == self.source(g) and self.target(g) == self.source(h):
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    violations.append(f"associativity fails for {h}, {g}, {f}")
        return ValidationReport(not violations, violations)

    def opposite(self) -> "FinCategory":
        return FinCategory(
            f"{self.name}^op",
            self.objects,
            {f: (t, s) for f, (s, t) in self.morphisms.items()},
            dict(self.identities),
            {(f, g): gf for (g, f), gf in self.composition.items()},
        )

    def inverse(self, f: str) -> Optional[str]:
        a, b = self.morphisms[f]
        for g in self.hom(b, a):
            if self.compose(g, f) == self.identities[a] and self.compose(f, g) == self.identities[b]:
                return g
        return None

    def is_isomorphism(self, f: str) -> bool:
        return self.inverse(f) is not None


def from_poset(graph: nx.DiGraph, name: str = "P") -> FinCategory:
    """
    The category of a finite poset given by a DAG of generating relations.

    Morphism a→b is named 'a->b'; identities are 'a->a'.
    """
    if not nx.is_directed_acyclic_graph(graph):
        raise PreconditionError(f"{name} is not a poset (relation graph has a cycle)")
    closure = nx.transitive_closure(graph, reflexive=True)
    objects = tuple(sorted(str(v) for v in graph.nodes))
    morphisms = {f"{a}->{b}": (str(a), str(b)) for a, b in closure.edges}
    identities = {o: f"{o}->{o}" for o in objects}
    composition = {}
    for g, (b, c) in morphisms.items():
        for f, (a, b2) in morphisms.items():
            if b == b2:
                composition[(g, f)] = f"{a}->{c}"
    return FinCategory(name, objects, morphisms, identities, composition)


def poset_category(n: int) -> FinCategory:
    """The ordinal [n] = {0 < 1 < … < n}."""
    graph = nx.DiGraph()
    graph.add_nodes_from(str(k) for k in range(n + 1))
    graph.add_edges_from((str(k), str(k + 1)) for k in range(n))
    return from_poset(graph, f"[{n}]")


def walking_isomorphism() -> FinCategory:
    morphisms = {"id0": ("0", "0"), "id1": ("1", "1"), "u": ("0", "1"), "v": ("1", "0")}
    composition = {
        ("id0", "id0"): "id0", ("id1", "id1"): "id1",
        ("u", "id0"): "u", ("id1", "u"): "u",
        ("v", "id1"): "v", ("id0", "v"): "v",
        ("v", "u"): "id0", ("u", "v"): "id1",
    }
    return FinCategory("iso", ("0", "1"), morphisms, {"0": "id0", "1": "id1"}, composition)


def terminal_category() -> FinCategory:
    return FinCategory("terminal", ("*",), {"id*": ("*", "*")}, {"*": "id*"}, {("id*", "id*"): "id*"})


def find_category_isomorphism(C: FinCategory, D: FinCategory) -> Optional[Dict[str, str]]:
    """An isomorphism of finite categories as a map on objects and morphisms, or None."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    for image in itertools.permutations(D.objects):
        on_objects = dict(zip(C.objects, image))
        homs = [(a, b) for a in C.objects for b in C.objects]
        if any(len(C.hom(a, b)) != len(D.hom(on_objects[a], on_objects[b])) for a, b in homs):
            continue
        options = [[dict(zip(C.hom(a, b), p)) for p in itertools.permutations(D.hom(on_objects[a], on_objects[b]))]
                   for a, b in homs]
        for choice in itertools.product(*options):
            on_morphisms: Dict[str, str] = {}
            for part in choice:
                on_morphisms.update(part)
            if all(on_morphisms[gf] == D.compose(on_morphisms[g], on_morphisms[f])
                   for (g, f), gf in C.composition.items()):
                return {**on_objects, **on_morphisms}
    return None


# Cubical nerve -----------------------------------------------------------

@lru_cache(maxsize=None)
def comparable_pairs(n: int) -> Tuple[Tuple[Tuple[int, int], ...], Dict[Tuple[int, int], int]]:
    """Pairs a ≤ b of vertices of [1]^n (as indices, x_1 most significant) and their positions."""
    pairs = tuple((a, b) for a in range(2 ** n) for b in range(2 ** n) if a | b == b)
    return pairs, {p: k for k, p in enumerate(pairs)}


def _coordinate(v: int, i: int, n: int) -> int:
    return (v >> (n - i)) & 1


def _drop_coordinate(v: int, i: int, n: int) -> int:
    low = v & ((1 << (n - i)) - 1)
    return ((v >> (n - i + 1)) << (n - i)) | low


@dataclass(frozen=True, order=True)
class NerveCube:
    """A functor [1]^n → C, stored by its value on every comparable pair."""

    dim: int
    arrows: Tuple[str, ...]

    def arrow(self, a: int, b: int) -> str:
        return self.arrows[comparable_pairs(self.dim)[1][(a, b)]]

    def vertex_arrow(self, v: int) -> str:
        return self.arrow(v, v)


class Nerve(ImplicitComplex):
    """N_□(C): n-cubes are functors [1]^n → C, enumerated up to a bound."""

    def __init__(self, category: FinCategory, bound: int):
        super().__init__(f"N({category.name})", bound)
        self.category = category

    def cube_dim(self, x: NerveCube) -> int:
        return x.dim

    def obj(self, x: NerveCube, v: int) -> str:
        return self.category.source(x.vertex_arrow(v))

    def act(self, x: NerveCube, op: BoxOperator) -> NerveCube:
        if op.cod != x.dim:
            raise DimensionMismatch(f"operator into [1]^{op.cod} applied to a {x.dim}-cube")
        table = evaluate(op).table
        image = [vertex_index(row) for row in table]
        pairs, _ = comparable_pairs(op.dom)
        return NerveCube(op.dom, tuple(x.arrow(image[a], image[b]) for a, b in pairs))

    def _enumerate(self, n: int) -> Iterable[NerveCube]:
        C = self.category
        if n == 0:
            return [NerveCube(0, (C.identities[o],)) for o in C.objects]
        lower = self.cubes(n - 1)
        pairs, _ = comparable_pairs(n)
        size = 2 ** (n - 1)
        found = []
        for F0 in lower:
            for F1 in lower:
                for alpha in self._transformations(F0, F1, n - 1):
                    arrows = []
                    for a, b in pairs:
                        (u, s), (w, t) = divmod(a, 2), divmod(b, 2)
                        if s == t:
                            arrows.append((F0, F1)[s].arrow(u, w))
                        else:
                            arrows.append(C.compose(alpha[w], F0.arrow(u, w)))
                    found.append(NerveCube(n, tuple(arrows)))
        logger.debug(f"{self.name}: {len(found)} functors out of [1]^{n} ({size} components each)")
        return found

    def _transformations(self, F0: NerveCube, F1: NerveCube, n: int) -> Iterable[List[str]]:
        """Natural transformations F0 ⇒ F1 between functors [1]^n → C."""
        C = self.category
        count = 2 ** n

        def extend(alpha: List[str]):
            w = len(alpha)
            if w == count:
                yield list(alpha)
                return
            for candidate in C.hom(self.obj(F0, w), self.obj(F1, w)):
                natural = True
                for k in range(n):
                    if w & (1 << k):
                        u = w ^ (1 << k)
                        if C.compose(candidate, F0.arrow(u, w)) != C.compose(F1.arrow(u, w), alpha[u]):
                            natural = False
                            break
                if natural:
                    alpha.append(candidate)
                    yield from extend(alpha)
                    alpha.pop()

        yield from extend([])

    def cubes_with_boundary(self, n: int, boundary: Mapping[Tuple[int, int], NerveCube]) -> List[NerveCube]:
        """
        Fill a (possibly open) boundary constructively: the faces fix most
        covering edges; the rest range over hom-sets, every square of the
        cube must commute and the composites must agree with the faces.
        """
        if n < 2 or not boundary:
            return super().cubes_with_boundary(n, boundary)
        C = self.category
        pairs, index = comparable_pairs(n)
        _, sub_index = comparable_pairs(n - 1)
        known: Dict[Tuple[int, int], str] = {}
        for (i, eps), y in boundary.items():
            for a, b in pairs:
                if _coordinate(a, i, n) == eps and _coordinate(b, i, n) == eps:
                    arrow = y.arrows[sub_index[(_drop_coordinate(a, i, n), _drop_coordinate(b, i, n))]]
                    if known.setdefault((a, b), arrow) != arrow:
                        return []
        if any((v, v) not in known for v in range(2 ** n)):
            return super().cubes_with_boundary(n, boundary)
        objects = {v: C.source(known[(v, v)]) for v in range(2 ** n)}
        covering = [(a, b) for a, b in pairs if bin(a ^ b).count("1") == 1]
        unknown = [p for p in covering if p not in known]
        choices = [C.hom(objects[a], objects[b]) for a, b in unknown]
        results = []
        for combo in itertools.product(*choices):
            edges = {p: known[p] for p in covering if p in known}
            edges.update(zip(unknown, combo))
            arrows = self._assemble(n, objects, edges)
            if arrows is None:
                continue
            if all(arrows[index[p]] == arrow for p, arrow in known.items()):
                results.append(NerveCube(n, arrows))
        return sorted(results)

    def _assemble(self, n: int, objects: Dict[int, str],
                  edges: Dict[Tuple[int, int], str]) -> Optional[Tuple[str, ...]]:
        C = self.category
        bits = [1 << k for k in range(n)]
        for a in range(2 ** n):
            for i, j in itertools.combinations(bits, 2):
                if a & i or a & j:
                    continue
                top = a | i | j
                one = C.compose(edges[(a | i, top)], edges[(a, a | i)])
                two = C.compose(edges[(a | j, top)], edges[(a, a | j)])
                if one != two:
                    return None
        pairs, _ = comparable_pairs(n)
        arrows = []
        for a, b in pairs:
            current, arrow = a, C.identities[objects[a]]
            for bit in bits:
                if (b ^ a) & bit:
                    arrow = C.compose(edges[(current, current | bit)], arrow)
                    current |= bit
            arrows.append(arrow)
        return tuple(arrows)

    def label(self, x: NerveCube) -> Optional[str]:
        if x.dim == 0:
            return self.obj(x, 0)
        if x.dim == 1:
            return x.arrow(0, 1)
        return None

    def vertex(self, obj: str) -> NerveCube:
        return NerveCube(0, (self.category.identities[obj],))

    def edge(self, morphism: str) -> NerveCube:
        s, t = self.category.morphisms[morphism]
        return NerveCube(1, (self.category.identities[s], morphism, self.category.identities[t]))


def nerve(category: FinCategory, bound: int) -> Nerve:
    return Nerve(category, bound)


# Fundamental category ----------------------------------------------------

Word = Tuple[str, ...]


@dataclass
class Presentation:
    """Generators are non-degenerate edges; paths are in diagrammatic order."""

    objects: List[str]
    generators: Dict[str, Tuple[str, str]]
    relations: List[Tuple[Word, Word]] = field(default_factory=list)


@dataclass
class Tau1Result:
    presentation: Presentation
    category: Optional[FinCategory]
    rules: Optional[List[Tuple[Word, Word]]] = None


def presentation(X: CubicalComplex) -> Presentation:
    """One relation (top·right = left·bottom) per non-degenerate square."""
    generators = {e: (X.face_table[(e, 1, 0)].target, X.face_table[(e, 1, 1)].target)
                  for e in X.ids(1)}

    def word(i: int, eps: int, square: str) -> Word:
        ref = X.face_table[(square, i, eps)]
        return () if ref.is_degenerate else (ref.target,)

    relations = []
    for s in X.ids(2):
        lhs = word(2, 0, s) + word(1, 1, s)
        rhs = word(1, 0, s) + word(2, 1, s)
        if lhs != rhs:
            relations.append((lhs, rhs))
    return Presentation(X.ids(0), generators, relations)


def morphism_name(src: str, word: Word) -> str:
    if not word:
        return f"id_{src}"
    return ".".join(reversed(word))


def tau1(X: CubicalComplex, max_steps: Optional[int] = None,
         max_morphisms: int = 10000) -> Tau1Result:
    """
    The fundamental category of a finite complex.

    Args:
        X: Finite complex
        max_steps: Knuth-Bendix budget (tau1.rewrite_budget by default)
        max_morphisms: Give up on normalization beyond this many morphisms

    Returns:
        Tau1Result; `category` is None when completion or enumeration did
        not finish, leaving the presentation only
    """
    pres = presentation(X)
    steps = max_steps if max_steps is not None else get_setting('tau1', 'rewrite_budget', 2000)
    rules = knuth_bendix(pres.relations, steps)
    if rules is None:
        logger.info(f"tau1({X.name}): completion did not finish, returning the presentation")
        return Tau1Result(pres, None)

    def target(src: str, w: Word) -> str:
        return pres.generators[w[-1]][1] if w else src

    seen = {(o, ()) for o in pres.objects}
    frontier = sorted(seen)
    while frontier:
        nxt = []
        for src, w in frontier:
            end = target(src, w)
            for g, (a, _) in sorted(pres.generators.items()):
                if a != end:
                    continue
                key = (src, reduce_word(w + (g,), rules))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
                    if len(seen) > max_morphisms:
                        logger.info(f"tau1({X.name}): more than {max_morphisms} morphisms")
                        return Tau1Result(pres, None, rules)
        frontier = nxt

    morphisms = {}
    composition = {}
    for src, w in seen:
        morphisms[morphism_name(src, w)] = (src, target(src, w))
    for (a, w1), (b, w2) in itertools.product(seen, repeat=2):
        if target(a, w1) == b:
            composed = reduce_word(w1 + w2, rules)
            composition[(morphism_name(b, w2), morphism_name(a, w1))] = morphism_name(a, composed)
    category = FinCategory(f"tau1({X.name})", tuple(pres.objects), morphisms,
                           {o: f"id_{o}" for o in pres.objects}, composition)
    return Tau1Result(pres, category, rules)
