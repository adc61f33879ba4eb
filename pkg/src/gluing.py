"""
Quotients of presheaves stored by non-degenerate cells.

The engine is shared by cubical and simplicial complexes. It is given the
cells of a presheaf X (by dimension), a way to act on a cell by an
operator, and pairs of parallel cells to identify. It returns the cells of
the quotient together with the standard form of the image of every old
cell.

Levels are processed bottom-up. At level k the identifications come from
the k-dimensional face restrictions of the gluing pairs; anything of lower
dimension is already settled, so a degenerate k-cube is represented by its
final standard form (class, operator) and compared syntactically.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

try:
    from .errors import DimensionMismatch, QuotientError
    from .unionfind import UnionFind
except ImportError:
    from errors import DimensionMismatch, QuotientError
    from unionfind import UnionFind

logger = logging.getLogger(__name__)

# A cell reference in standard form: (cell id, degeneracy-type operator).
Ref = Tuple[str, Any]


@dataclass(frozen=True)
class OperatorAlgebra:
    """The operations of a box-like category that the engine needs."""

    identity: Callable[[int], Any]
    compose: Callable[[Any, Any], Any]
    # injective "face" operators [k] -> [n], for k <= n
    face_operators: Callable[[int, int], Sequence[Any]]
    # (key, operator) for every codimension-one face of an n-cell
    codim_one_faces: Callable[[int], Sequence[Tuple[Hashable, Any]]]
    dom: Callable[[Any], int]


@dataclass
class GluingResult:
    dims: Dict[str, int]
    faces: Dict[Tuple[str, Hashable], Ref]
    projection: Dict[str, Ref]
    representatives: Dict[str, str]
    members: Dict[str, List[str]] = field(default_factory=dict)


def glue(dims: Dict[str, int],
         act: Callable[[str, Any], Ref],
         pairs: Sequence[Tuple[Ref, Ref]],
         algebra: OperatorAlgebra,
         choose: Optional[Callable[[List[str]], str]] = None) -> GluingResult:
    """
    Compute the quotient of a presheaf by the congruence generated by pairs.

    Args:
        dims: Dimension of every non-degenerate cell
        act: act(cell, op) returns the standard form of cell·op
        pairs: References to identify, each pair of equal dimension
        algebra: Operator calculus of the indexing category
        choose: Picks the id of a new cell among the ids of its members
                (defaults to the least id)

    Returns:
        GluingResult with the new cells, their face tables and the projection
    """
    choose = choose or min

    def act_ref(ref: Ref, op: Any) -> Ref:
        cell, degen = ref
        return act(cell, algebra.compose(degen, op))

    max_dim = max(dims.values(), default=-1)
    seeds: Dict[int, List[Tuple[Ref, Ref]]] = {k: [] for k in range(max_dim + 1)}
    for left, right in pairs:
        k0 = algebra.dom(left[1])
        if algebra.dom(right[1]) != k0:
            raise DimensionMismatch(f"cannot glue {left} to {right}: dimensions differ")
        for k in range(k0 + 1):
            for face_op in algebra.face_operators(k, k0):
                seeds[k].append((act_ref(left, face_op), act_ref(right, face_op)))

    projection: Dict[str, Ref] = {}
    new_dims: Dict[str, int] = {}
    representatives: Dict[str, str] = {}
    members: Dict[str, List[str]] = {}

    cells_by_dim: Dict[int, List[str]] = {}
    for cell, d in dims.items():
        cells_by_dim.setdefault(d, []).append(cell)

    for k in range(max_dim + 1):
        level_cells = sorted(cells_by_dim.get(k, []))
        uf: UnionFind = UnionFind(("cell", c) for c in level_cells)

        def node(ref: Ref):
            cell, degen = ref
            if dims[cell] == k:
                return ("cell", cell)
            new_cell, op = projection[cell]
            return ("deg", new_cell, algebra.compose(op, degen))

        for left, right in seeds[k]:
            uf.union(node(left), node(right))

        for group in uf.classes().values():
            degenerate = {n for n in group if n[0] == "deg"}
            cells = sorted(n[1] for n in group if n[0] == "cell")
            if len(degenerate) > 1:
                raise QuotientError(f"cells {cells} glued to distinct degenerate cubes "
                                    f"{sorted(map(str, degenerate))}")
            if degenerate:
                (_, target, op), = degenerate
                for c in cells:
                    projection[c] = (target, op)
                continue
            if not cells:
                continue
            new_id = choose(cells)
            new_dims[new_id] = k
            representatives[new_id] = new_id if new_id in cells else cells[0]
            members[new_id] = cells
            for c in cells:
                projection[c] = (new_id, algebra.identity(k))

    faces: Dict[Tuple[str, Hashable], Ref] = {}
    for new_id, k in new_dims.items():
        if k == 0:
            continue
        rep = representatives[new_id]
        for key, face_op in algebra.codim_one_faces(k):
            cell, degen = act(rep, face_op)
            target, op = projection[cell]
            faces[(new_id, key)] = (target, algebra.compose(op, degen))

    logger.debug(f"glued {len(dims)} cells into {len(new_dims)} using {len(pairs)} pairs")
    return GluingResult(new_dims, faces, projection, representatives, members)
