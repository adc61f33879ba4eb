"""
Coherent families of composites.

θ^{m,n} sends an (m,n)-cone x of a cubical quasicategory X to an
(m,n+1)-cone whose (n+1,0)-face is x. For m ≤ 1 there is a closed formula.
For m ≥ 2 the value is chosen by a six-way case split on the standard form
of x; the last case fills the boundary prescribed by lower θ values through
the open-box decomposition of B^{m,n+1,n+1} ⊆ C^{m,n+1}. The split depends
on earlier outputs (case 5), so θ is a memoized family rather than a
function of x alone.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

try:
    from .boxcat import compose, connection, critical_edge, degeneracy, face
    from .checks import CheckReport
    from .complex import CubicalSet, cube, pattern_operator
    from .cone import filling_steps, is_cone, standard_cone
    from .config import get_setting
    from .errors import CubikError, MissingFiller, PreconditionError, ThetaError
    from .logger import get_logger
    from .quasicat import OpenBoxProblem, cube_name
except ImportError:
    from boxcat import compose, connection, critical_edge, degeneracy, face
    from checks import CheckReport
    from complex import CubicalSet, cube, pattern_operator
    from cone import filling_steps, is_cone, standard_cone
    from config import get_setting
    from errors import CubikError, MissingFiller, PreconditionError, ThetaError
    from logger import get_logger
    from quasicat import OpenBoxProblem, cube_name

logger = logging.getLogger(__name__)

BASE_CASE = 0
IDENTITIES = tuple(range(1, 9))


def theta_base(X: CubicalSet, x: Any, m: int, n: int) -> Any:
    """θ^{0,n}(x) = xσ_{n+1} and θ^{1,n}(x) = xγ_{n+1,0}."""
    if m == 0:
        return X.act(x, degeneracy(n + 1, n + 1))
    if m == 1:
        return X.act(x, connection(n + 2, n + 1, 0))
    raise PreconditionError(f"θ^{{{m},{n}}} has no closed formula; use a ThetaFamily")


@dataclass(frozen=True)
class ThetaEntry:
    m: int
    n: int
    x: Any
    value: Any
    case: int


class ThetaFamily:
    """
    θ^{m,n} on the cones of X with m+n+1 ≤ bound.

    Values are computed on demand and memoized together with the case of
    the definition that produced them (0 for the closed formulas). Asking
    for case 5 builds the whole previous level, because recognizing
    θ^{m,n-1}(x') needs every x'.
    """

    def __init__(self, X: CubicalSet, bound: Optional[int] = None):
        self.X = X
        self.bound = bound if bound is not None else get_setting('suites', 'theta_bound', 4)
        if self.bound < 1:
            raise PreconditionError("a θ family needs bound >= 1")
        self._entries: Dict[Tuple[int, int, Any], ThetaEntry] = {}
        self._cones: Dict[Tuple[int, int], List[Any]] = {}
        self._images: Dict[Tuple[int, int], Dict[Any, List[Any]]] = {}

    def __repr__(self) -> str:
        return f"ThetaFamily({self.X.name}, bound={self.bound})"

    def indices(self) -> Iterator[Tuple[int, int]]:
        """(m, n) pairs in the order the definition is inductive in."""
        for m in range(self.bound):
            for n in range(self.bound - m):
                yield m, n

    def cones(self, m: int, n: int) -> List[Any]:
        """All (m,n)-cones of X, degenerate ones included."""
        if (m, n) not in self._cones:
            self._cones[(m, n)] = [x for x in self.X.cubes(m + n) if is_cone(self.X, x, m, n)]
        return self._cones[(m, n)]

    def theta(self, m: int, n: int, x: Any) -> Any:
        """θ^{m,n}(x) for an (m,n)-cone x."""
        if m < 0 or n < 0 or m + n + 1 > self.bound:
            raise PreconditionError(f"θ^{{{m},{n}}} is outside the family bound {self.bound}")
        if (m, n, x) not in self._entries and not is_cone(self.X, x, m, n):
            raise PreconditionError(f"{cube_name(self.X, x)} is not an ({m},{n})-cone")
        return self._entry(m, n, x).value

    def case_of(self, m: int, n: int, x: Any) -> int:
        self.theta(m, n, x)
        return self._entries[(m, n, x)].case

    def preimages(self, m: int, n: int, y: Any) -> List[Any]:
        """Every x' with θ^{m,n}(x') = y."""
        return list(self.level(m, n).get(y, []))

    def level(self, m: int, n: int) -> Dict[Any, List[Any]]:
        """Compute θ^{m,n} on every (m,n)-cone; returns the image index."""
        if (m, n) not in self._images:
            images: Dict[Any, List[Any]] = {}
            for x in self.cones(m, n):
                images.setdefault(self._entry(m, n, x).value, []).append(x)
            self._images[(m, n)] = images
        return self._images[(m, n)]

    def build(self) -> "ThetaFamily":
        for m, n in self.indices():
            self.level(m, n)
        cases: Dict[int, int] = {}
        for entry in self._entries.values():
            cases[entry.case] = cases.get(entry.case, 0) + 1
        get_logger().log_construction("theta_family", {
            "complex": self.X.name,
            "bound": self.bound,
            "entries": len(self._entries),
            "cases": {str(k): v for k, v in sorted(cases.items())},
        })
        return self

    def entries(self) -> List[ThetaEntry]:
        return list(self._entries.values())

    def _entry(self, m: int, n: int, x: Any) -> ThetaEntry:
        key = (m, n, x)
        entry = self._entries.get(key)
        if entry is None:
            value, case = self._dispatch(m, n, x)
            entry = ThetaEntry(m, n, x, value, case)
            self._entries[key] = entry
        return entry

    def _dispatch(self, m: int, n: int, x: Any) -> Tuple[Any, int]:
        X = self.X
        if m <= 1:
            return theta_base(X, x, m, n), BASE_CASE
        N = m + n
        _, op = X.standard_form(x)
        if op.degens and op.degens[-1] >= n + 1:
            a = op.degens[-1]
            lower = self._entry(m - 1, n, X.face(x, a, 0)).value
            return X.act(lower, degeneracy(N + 1, a + 1)), 1
        if op.connections and not op.degens:
            b, eps = op.connections[-1]
            if eps == 0 and b <= n - 1:
                lower = self._entry(m, n - 1, X.face(x, b, 0)).value
                return X.act(lower, connection(N + 1, b, 0)), 2
            if b >= n + 1:
                lower = self._entry(m - 1, n, X.face(x, b, eps)).value
                return X.act(lower, connection(N + 1, b + 1, eps)), 3
        if is_cone(X, x, m - 1, n + 1):
            return X.act(x, connection(N + 1, n + 1, 0)), 4
        if n >= 1 and self.preimages(m, n - 1, x):
            return X.act(x, connection(N + 1, n, 0)), 5
        if not op.is_identity:
            raise ThetaError(f"degenerate ({m},{n})-cone {cube_name(X, x)} [{op}] matches no case")
        return theta_lift(self, m, n, x), 6


def theta(family: ThetaFamily, m: int, n: int, x: Any) -> Any:
    return family.theta(m, n, x)


# The lift ----------------------------------------------------------------

def lift_boundary(family: ThetaFamily, m: int, n: int, x: Any) -> Dict[Tuple[int, int], Any]:
    """
    The faces of θ^{m,n}(x) fixed by (Θ1)-(Θ3): the map B^{m,n+1,n+1} → X.

    Returns:
        {(i, 0): θ^{m,n-1}(x∂_{i,0}) for i ≤ n, (n+1, 0): x,
         (i, 1): θ^{m-1,n}(x∂_{i-1,1}) for i ≥ n+2}
    """
    X = family.X
    faces: Dict[Tuple[int, int], Any] = {}
    for i in range(1, n + 1):
        faces[(i, 0)] = family._entry(m, n - 1, X.face(x, i, 0)).value
    faces[(n + 1, 0)] = x
    for i in range(n + 2, m + n + 2):
        faces[(i, 1)] = family._entry(m - 1, n, X.face(x, i - 1, 1)).value
    return faces


def lift_consistency_check(family: ThetaFamily, m: int, n: int, x: Any) -> CheckReport:
    """The face-composition equations the lift boundary has to satisfy."""
    X = family.X
    y = lift_boundary(family, m, n, x)
    N = m + n + 1
    report = CheckReport("theta_lift_boundary", parameters={"m": m, "n": n, "x": cube_name(X, x)})
    for i2 in range(1, n + 1):
        for i1 in range(1, i2):
            report.record(X.face(y[(i2, 0)], i1, 0) == X.face(y[(i1, 0)], i2 - 1, 0),
                          f"low faces {i1} < {i2}")
    for i1 in range(1, n + 1):
        report.record(X.face(y[(n + 1, 0)], i1, 0) == X.face(y[(i1, 0)], n, 0), f"low face {i1} against x")
    for i2 in range(n + 2, N + 1):
        report.record(X.face(y[(i2, 1)], n + 1, 0) == X.face(y[(n + 1, 0)], i2 - 1, 1),
                      f"x against high face {i2}")
    for i2 in range(n + 2, N + 1):
        for i1 in range(n + 2, i2):
            report.record(X.face(y[(i2, 1)], i1, 1) == X.face(y[(i1, 1)], i2 - 1, 1),
                          f"high faces {i1} < {i2}")
    return report


def _restricted(cube_id: str, i: int) -> str:
    pattern = cube_id[1:]
    return "c" + pattern[:i - 1] + pattern[i:]


def theta_lift(family: ThetaFamily, m: int, n: int, x: Any) -> Any:
    """
    Extend the boundary of lift_boundary to an (m,n+1)-cone.

    The values are tracked on the cells of C^{m,n+1}: first every cell of
    B^{m,n+1,n+1}, then one open box per decomposition step, each filled
    with the least filler that is a cone of the right shape.

    Raises:
        ThetaError: The prescribed faces disagree on an overlap
        MissingFiller: Some decomposition step has no cone filler in X
    """
    X = family.X
    N = m + n + 1
    C = standard_cone(m, n + 1)
    faces = lift_boundary(family, m, n, x)
    values: Dict[str, Any] = {}
    prescribed = []
    for c in cube(N).ids():
        pattern = c[1:]
        for (i, e), y in sorted(faces.items()):
            if pattern[i - 1] == str(e):
                prescribed.append((C.image_of(pattern_operator(c)), X.act(y, pattern_operator(_restricted(c, i)))))
    for r, v in prescribed:
        if r.op.is_identity:
            values.setdefault(r.target, v)
    for r, v in prescribed:
        if r.target not in values or X.act(values[r.target], r.op) != v:
            raise ThetaError(f"θ^{{{m},{n}}} boundary of {cube_name(X, x)} is inconsistent at {r}")

    for step in filling_steps(m, n + 1, n + 1):
        d = step.m + step.n
        boundary = {}
        for j in range(1, d + 1):
            for e in (0, 1):
                if (j, e) == step.missing:
                    continue
                r = C.image_of(compose(step.path, face(d, j, e)))
                if r.target not in values:
                    raise ThetaError(f"decomposition step {step} reached {r} before it was filled")
                boundary[(j, e)] = X.act(values[r.target], r.op)
        problem = OpenBoxProblem(X, d, step.missing[0], step.missing[1], boundary)
        fillers = [w for w in problem.candidates() if is_cone(X, w, step.m, step.n)]
        if not fillers:
            raise MissingFiller(problem, f"no ({step.m},{step.n})-cone fills {problem}")
        w = fillers[0]
        for c in cube(d).ids():
            r = C.image_of(compose(step.path, pattern_operator(c)))
            if r.op.is_identity:
                values.setdefault(r.target, X.act(w, pattern_operator(c)))
    logger.debug(f"θ^{{{m},{n}}}: lifted {cube_name(X, x)}")
    return values[C.top().target]


# Verification ------------------------------------------------------------

@dataclass
class ThetaReport:
    complex_name: str
    bound: int
    identities: Dict[Tuple[int, int, int], CheckReport] = field(default_factory=dict)
    checks: Dict[str, CheckReport] = field(default_factory=dict)

    def identity(self, m: int, n: int, k: int) -> CheckReport:
        key = (m, n, k)
        if key not in self.identities:
            self.identities[key] = CheckReport(f"theta_T{k}", parameters={"m": m, "n": n})
        return self.identities[key]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.identities.values()) and all(r.ok for r in self.checks.values())

    def totals(self) -> Dict[int, CheckReport]:
        merged = {k: CheckReport(f"theta_T{k}", parameters={"X": self.complex_name}) for k in IDENTITIES}
        for (_, _, k), report in self.identities.items():
            merged[k].merge(report)
        return merged

    def log(self) -> "ThetaReport":
        for report in self.totals().values():
            report.log()
        for report in self.checks.values():
            report.log()
        return self

    def __bool__(self) -> bool:
        return self.ok


def _try_theta(family: ThetaFamily, m: int, n: int, x: Any) -> Optional[Any]:
    try:
        return family.theta(m, n, x)
    except CubikError as e:
        logger.warning(f"θ^{{{m},{n}}}({cube_name(family.X, x)}) failed: {e}")
        return None


def _check_identities(family: ThetaFamily, report: ThetaReport, m: int, n: int) -> None:
    X = family.X
    N = m + n
    for x in family.cones(m, n):
        t = family.theta(m, n, x)
        for i in range(1, n + 1):
            report.identity(m, n, 1).record(X.face(t, i, 0) == family.theta(m, n - 1, X.face(x, i, 0)),
                                            f"{cube_name(X, x)}: face ({i},0)")
        report.identity(m, n, 2).record(X.face(t, n + 1, 0) == x, f"{cube_name(X, x)}: face ({n + 1},0)")
        if m >= 1:
            for i in range(n + 2, N + 2):
                report.identity(m, n, 3).record(
                    X.face(t, i, 1) == family.theta(m - 1, n, X.face(x, i - 1, 1)), f"{cube_name(X, x)}: face ({i},1)")

    if m >= 1:
        for x in family.cones(m - 1, n):
            t = family.theta(m - 1, n, x)
            for i in range(n + 1, N + 1):
                value = _try_theta(family, m, n, X.act(x, degeneracy(N, i)))
                report.identity(m, n, 4).record(value == X.act(t, degeneracy(N + 1, i + 1)), f"{cube_name(X, x)} s{i}")
            for i in range(n + 1, N):
                for eps in (0, 1):
                    value = _try_theta(family, m, n, X.act(x, connection(N, i, eps)))
                    report.identity(m, n, 6).record(value == X.act(t, connection(N + 1, i + 1, eps)),
                                                    f"{cube_name(X, x)} g{i}_{eps}")
        for x in family.cones(m - 1, n + 1):
            report.identity(m, n, 8).record(family.theta(m, n, x) == X.act(x, connection(N + 1, n + 1, 0)),
                                            f"{cube_name(X, x)} as an ({m - 1},{n + 1})-cone")

    if n >= 1:
        for x in family.cones(m, n - 1):
            t = family.theta(m, n - 1, x)
            for i in range(1, n):
                value = _try_theta(family, m, n, X.act(x, connection(N, i, 0)))
                report.identity(m, n, 5).record(value == X.act(t, connection(N + 1, i, 0)), f"{cube_name(X, x)} g{i}_0")
            value = _try_theta(family, m, n, t)
            report.identity(m, n, 7).record(value == X.act(t, connection(N + 1, n, 0)), f"θ({cube_name(X, x)})")


def cone_output_check(family: ThetaFamily) -> CheckReport:
    """Every stored θ^{m,n}(x) is an (m,n+1)-cone."""
    report = CheckReport("theta_cone_output", parameters={"X": family.X.name})
    for entry in family.entries():
        report.record(is_cone(family.X, entry.value, entry.m, entry.n + 1),
                      f"θ^{entry.m},{entry.n}({cube_name(family.X, entry.x)})")
    return report


def lift_case_check(family: ThetaFamily) -> CheckReport:
    """Lifted cones are non-degenerate, not (m-1,n+1)-cones and not earlier θ values."""
    X = family.X
    report = CheckReport("theta_lift_case", parameters={"X": X.name})
    for entry in family.entries():
        if entry.case != 6:
            continue
        m, n, x = entry.m, entry.n, entry.x
        witness = f"θ^{m},{n}({cube_name(X, x)})"
        report.record(not X.is_degenerate(x), f"{witness}: degenerate")
        report.record(not is_cone(X, x, m - 1, n + 1), f"{witness}: is an ({m - 1},{n + 1})-cone")
        report.record(n == 0 or not family.preimages(m, n - 1, x), f"{witness}: is an earlier θ value")
    return report


def theta_t_check(family: ThetaFamily) -> CheckReport:
    """x is lifted exactly when θ(x) is non-degenerate and not an (m-1,n+2)-cone."""
    X = family.X
    report = CheckReport("theta_t", parameters={"X": X.name})
    for entry in family.entries():
        if entry.m < 2:
            continue
        t = entry.value
        later_case_5 = not X.is_degenerate(t) and not is_cone(X, t, entry.m - 1, entry.n + 2)
        report.record((entry.case == 6) == later_case_5,
                      f"θ^{entry.m},{entry.n}({cube_name(X, entry.x)}): case {entry.case}")
    return report


def degenerate_edge_check(family: ThetaFamily) -> CheckReport:
    """The critical edge of θ^{m,0}(x) with respect to ∂_{1,0} is degenerate."""
    X = family.X
    report = CheckReport("theta_degenerate_edge", parameters={"X": X.name})
    for entry in family.entries():
        if entry.n != 0:
            continue
        edge = X.act(entry.value, critical_edge(entry.m + 1, 1, 0))
        report.record(X.is_degenerate(edge), f"θ^{entry.m},0({cube_name(X, entry.x)})")
    return report


def verify_theta(X: CubicalSet, bound: Optional[int] = None,
                 family: Optional[ThetaFamily] = None) -> ThetaReport:
    """
    Check (Θ1)-(Θ8) on every cone of X with m+n+1 ≤ bound.

    Args:
        X: A cubical quasicategory enumerable up to the bound
        bound: Largest dimension of a θ value (suites.theta_bound by default)
        family: A family to verify instead of building a fresh one

    Returns:
        ThetaReport with one CheckReport per identity and (m, n), plus the
        output-shape, lift-case, Theta-T and degenerate-edge checks
    """
    family = family or ThetaFamily(X, bound)
    family.build()
    report = ThetaReport(X.name, family.bound)
    for m, n in family.indices():
        for k in IDENTITIES:
            report.identity(m, n, k)
        _check_identities(family, report, m, n)
    for check in (cone_output_check, lift_case_check, theta_t_check, degenerate_edge_check):
        result = check(family)
        report.checks[result.name] = result
    logger.info(f"θ on {X.name} up to dimension {family.bound}: {'ok' if report.ok else 'FAILED'}")
    return report.log()


def theta_report_lines(report: ThetaReport) -> List[str]:
    lines = []
    for (m, n, k), check in sorted(report.identities.items()):
        lines.append(f"theta m={m} n={n} id=T{k} checked={check.checked} failed={check.failed}")
    for name, check in report.checks.items():
        lines.append(f"theta check={name} checked={check.checked} failed={check.failed}")
    return lines


# The counit filtration ---------------------------------------------------

def _cell(X: CubicalSet, y: Any) -> Any:
    return X.standard_form(y)[0]


def _face_closure(X: CubicalSet, generators: List[Any]) -> Set[Any]:
    cells: Set[Any] = set()
    stack = [_cell(X, g) for g in generators]
    while stack:
        z = stack.pop()
        if z in cells:
            continue
        cells.add(z)
        stack.extend(_cell(X, y) for y in X.boundary_of(z).values())
    return cells


def filtration_cells(family: ThetaFamily, m: int, n: int) -> Set[Any]:
    """
    Non-degenerate cubes of X^{m,n} up to the family bound.

    X^{m,n} is generated by every (m',n')-cone with m' < m, the (m,n')-cones
    with n' ≤ n and their θ^{m,n'} values; X^{m,-1} is the union of the
    X^{m-1,n'}.
    """
    D = family.bound
    generators: List[Any] = []
    for m2 in range(m):
        for n2 in range(D - m2 + 1):
            generators.extend(family.cones(m2, n2))
    for n2 in range(n + 1):
        if m + n2 > D:
            break
        cones = family.cones(m, n2)
        generators.extend(cones)
        if m + n2 + 1 <= D:
            generators.extend(family.theta(m, n2, x) for x in cones)
    return _face_closure(family.X, generators)


def filtration_base_check(X: CubicalSet, bound: int) -> CheckReport:
    """X^{2,-1} (closure of the cones with m ≤ 1) has the cubes of Q∫X, i.e. of the (0,k)-cones."""
    family = ThetaFamily(X, bound)
    report = CheckReport("filtration_base", parameters={"X": X.name, "bound": bound})
    q_cells = _face_closure(X, [x for k in range(bound + 1) for x in family.cones(0, k)])
    base = filtration_cells(family, 2, -1)
    report.record(q_cells == base, f"{len(base ^ q_cells)} cubes differ")
    return report.log()


def counit_step_check(X: CubicalSet, m: int, n: int, bound: Optional[int] = None,
                      family: Optional[ThetaFamily] = None) -> CheckReport:
    """
    X^{m,n-1} → X^{m,n} adjoins each lifted (m,n)-cone x by filling an inner open box.

    For every case-6 cone x: x is new, every face of θ^{m,n}(x) except
    ∂_{n+1,0} lies in X^{m,n-1}, and the (n+1,0)-critical edge is degenerate.
    """
    if m < 2 or n < 0:
        raise PreconditionError("the filtration steps start at (m, n) = (2, 0)")
    D = bound if bound is not None else m + n + 1
    if D < m + n + 1:
        raise PreconditionError(f"bound {D} is below the dimension {m + n + 1} of θ^{{{m},{n}}}")
    family = family or ThetaFamily(X, D)
    report = CheckReport("counit_step", parameters={"X": X.name, "m": m, "n": n})
    if m + n > X.dim:
        return report.log()
    earlier = filtration_cells(family, m, n - 1)
    for x in family.cones(m, n):
        if family.case_of(m, n, x) != 6:
            continue
        t = family.theta(m, n, x)
        witness = cube_name(X, x)
        report.record(_cell(X, x) not in earlier, f"{witness} is already in X^{m},{n - 1}")
        for (i, e), y in X.boundary_of(t).items():
            if (i, e) != (n + 1, 0):
                report.record(_cell(X, y) in earlier, f"{witness}: face ({i},{e}) of its θ value is new")
        report.record(X.is_degenerate(X.act(t, critical_edge(m + n + 1, n + 1, 0))),
                      f"{witness}: critical edge is not degenerate")
    return report.log()
