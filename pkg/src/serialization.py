"""
Text formats for finite complexes.

.cub:
    complex <name> dim <D>
    cube <id> <n>
    # pair <xid> <yid>          (optional provenance of the cube above)
    face <id> <i> <eps> -> <target> [<word>]
    mark <edge-id>

.sim:
    simplicial <name> dim <D>
    simplex <id> <n>
    dface <id> <i> -> <target> [<word>]

Words use the operator rendering of boxcat and simplex ('g1_0 s2', 's0',
'id1'). Ids are written dimension-major then lexicographically, so
writing a parsed file reproduces it byte for byte.
"""

import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

try:
    from .boxcat import parse_operator
    from .complex import CubeRef, CubicalComplex, validate
    from .errors import CubikError, FormatError
    from .simplex import SimplexRef, SimplicialComplex, parse_operator as parse_simplex_operator
    from .simplex import validate as validate_simplicial
except ImportError:
    from boxcat import parse_operator
    from complex import CubeRef, CubicalComplex, validate
    from errors import CubikError, FormatError
    from simplex import SimplexRef, SimplicialComplex, parse_operator as parse_simplex_operator
    from simplex import validate as validate_simplicial

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _split_word(rest: str, line_number: int) -> Tuple[str, str]:
    """'<target> [<word>]' -> (target, word)."""
    target, _, bracketed = rest.strip().partition(" ")
    bracketed = bracketed.strip()
    if not target or not (bracketed.startswith("[") and bracketed.endswith("]")):
        raise FormatError("expected '<target> [<word>]'", line_number)
    return target, bracketed[1:-1].strip()


def _header(tokens: List[str], keyword: str, line_number: int) -> Tuple[str, int]:
    if len(tokens) < 4 or tokens[0] != keyword or tokens[-2] != "dim":
        raise FormatError(f"expected '{keyword} <name> dim <D>'", line_number)
    try:
        return " ".join(tokens[1:-2]), int(tokens[-1])
    except ValueError:
        raise FormatError(f"bad dimension {tokens[-1]!r}", line_number)


def _dimension(token: str, line_number: int) -> int:
    n = int(token)
    if n < 0:
        raise FormatError(f"negative dimension {n}", line_number)
    return n


def _content_lines(text: str):
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield line_number, line


# Cubical -----------------------------------------------------------------

def complex_to_text(X: CubicalComplex) -> str:
    lines = [f"complex {X.name} dim {X.dim}"]
    for c in X.ids():
        lines.append(f"cube {c} {X.dims[c]}")
        if c in X.provenance:
            x, y = X.provenance[c]
            lines.append(f"# pair {x} {y}")
    for c in X.ids():
        for i in range(1, X.dims[c] + 1):
            for eps in (0, 1):
                r = X.face_table[(c, i, eps)]
                lines.append(f"face {c} {i} {eps} -> {r.target} [{r.op.render()}]")
    for e in X.marked_edges():
        lines.append(f"mark {e}")
    return "\n".join(lines) + "\n"


def complex_from_text(text: str) -> CubicalComplex:
    """
    Parse a .cub document.

    Raises:
        FormatError: Unknown keywords, dangling ids, malformed words, missing
                     faces, or faces violating the cubical identities
    """
    name, declared = None, None
    dims: Dict[str, int] = {}
    faces: Dict[Tuple[str, int, int], CubeRef] = {}
    marks: List[str] = []
    provenance: Dict[str, Tuple[str, str]] = {}
    last_cube = None
    for line_number, line in _content_lines(text):
        tokens = line.split()
        if name is None:
            name, declared = _header(tokens, "complex", line_number)
            continue
        keyword = tokens[0]
        try:
            if keyword == "#":
                if len(tokens) == 4 and tokens[1] == "pair" and last_cube is not None:
                    provenance[last_cube] = (tokens[2], tokens[3])
            elif keyword == "cube":
                if len(tokens) != 3:
                    raise FormatError("expected 'cube <id> <n>'", line_number)
                if tokens[1] in dims:
                    raise FormatError(f"duplicate cube {tokens[1]!r}", line_number)
                dims[tokens[1]] = _dimension(tokens[2], line_number)
                last_cube = tokens[1]
            elif keyword == "face":
                head, arrow, rest = line.partition("->")
                parts = head.split()
                if not arrow or len(parts) != 4:
                    raise FormatError("expected 'face <id> <i> <eps> -> <target> [<word>]'", line_number)
                c, i, eps = parts[1], int(parts[2]), int(parts[3])
                if c not in dims:
                    raise FormatError(f"face of undeclared cube {c!r}", line_number)
                target, word = _split_word(rest, line_number)
                if target not in dims:
                    raise FormatError(f"face points at undeclared cube {target!r}", line_number)
                op = parse_operator(word, dims[c] - 1)
                if op.cod != dims[target]:
                    raise FormatError(f"{word!r} does not land in {target}", line_number)
                faces[(c, i, eps)] = CubeRef(target, op)
            elif keyword == "mark":
                if len(tokens) != 2:
                    raise FormatError("expected 'mark <edge-id>'", line_number)
                marks.append(tokens[1])
            else:
                raise FormatError(f"unknown keyword {keyword!r}", line_number)
        except FormatError:
            raise
        except (CubikError, ValueError) as e:
            raise FormatError(str(e), line_number)
    if name is None:
        raise FormatError("empty document")
    missing = [(c, i, eps) for c, d in dims.items() for i in range(1, d + 1) for eps in (0, 1)
               if (c, i, eps) not in faces]
    if missing:
        raise FormatError(f"missing face {missing[0]}")
    try:
        X = CubicalComplex(name, dims, faces, marks, provenance)
    except CubikError as e:
        raise FormatError(str(e))
    if X.dim != declared:
        raise FormatError(f"header declares dimension {declared} but the cubes reach {X.dim}")
    try:
        report = validate(X)
    except CubikError as e:
        raise FormatError(str(e))
    if not report:
        raise FormatError(f"faces violate the cubical identities: {report.first}")
    return X


def save_complex(X: CubicalComplex, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(complex_to_text(X), encoding="utf-8")
    logger.info(f"wrote {X.name} {X.counts()} to {path}")
    return path


def load_complex(path: PathLike) -> CubicalComplex:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}")
    return complex_from_text(text)


# Simplicial --------------------------------------------------------------

def simplicial_to_text(S: SimplicialComplex) -> str:
    lines = [f"simplicial {S.name} dim {S.dim}"]
    for s in S.ids():
        lines.append(f"simplex {s} {S.dims[s]}")
    for s in S.ids():
        if S.dims[s] == 0:
            continue
        for i in range(S.dims[s] + 1):
            r = S.face_table[(s, i)]
            lines.append(f"dface {s} {i} -> {r.target} [{r.op.render()}]")
    return "\n".join(lines) + "\n"


def simplicial_from_text(text: str) -> SimplicialComplex:
    name, declared = None, None
    dims: Dict[str, int] = {}
    faces: Dict[Tuple[str, int], SimplexRef] = {}
    for line_number, line in _content_lines(text):
        tokens = line.split()
        if name is None:
            name, declared = _header(tokens, "simplicial", line_number)
            continue
        keyword = tokens[0]
        try:
            if keyword == "#":
                continue
            if keyword == "simplex":
                if len(tokens) != 3:
                    raise FormatError("expected 'simplex <id> <n>'", line_number)
                if tokens[1] in dims:
                    raise FormatError(f"duplicate simplex {tokens[1]!r}", line_number)
                dims[tokens[1]] = _dimension(tokens[2], line_number)
            elif keyword == "dface":
                head, arrow, rest = line.partition("->")
                parts = head.split()
                if not arrow or len(parts) != 3:
                    raise FormatError("expected 'dface <id> <i> -> <target> [<word>]'", line_number)
                s, i = parts[1], int(parts[2])
                if s not in dims:
                    raise FormatError(f"face of undeclared simplex {s!r}", line_number)
                target, word = _split_word(rest, line_number)
                if target not in dims:
                    raise FormatError(f"face points at undeclared simplex {target!r}", line_number)
                op = parse_simplex_operator(word, dims[s] - 1)
                if op.cod != dims[target]:
                    raise FormatError(f"{word!r} does not land in {target}", line_number)
                faces[(s, i)] = SimplexRef(target, op)
            else:
                raise FormatError(f"unknown keyword {keyword!r}", line_number)
        except FormatError:
            raise
        except (CubikError, ValueError) as e:
            raise FormatError(str(e), line_number)
    if name is None:
        raise FormatError("empty document")
    missing = [(s, i) for s, d in dims.items() if d > 0 for i in range(d + 1) if (s, i) not in faces]
    if missing:
        raise FormatError(f"missing face {missing[0]}")
    try:
        S = SimplicialComplex(name, dims, faces)
    except CubikError as e:
        raise FormatError(str(e))
    if S.dim != declared:
        raise FormatError(f"header declares dimension {declared} but the simplices reach {S.dim}")
    try:
        report = validate_simplicial(S)
    except CubikError as e:
        raise FormatError(str(e))
    if not report.ok:
        raise FormatError(f"faces violate the simplicial identities: {report.violations[0]}")
    return S


def save_simplicial(S: SimplicialComplex, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(simplicial_to_text(S), encoding="utf-8")
    logger.info(f"wrote {S.name} {S.counts()} to {path}")
    return path


def load_simplicial(path: PathLike) -> SimplicialComplex:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}")
    return simplicial_from_text(text)


def load(path: PathLike) -> Union[CubicalComplex, SimplicialComplex]:
    """Dispatch on the extension (.cub or .sim)."""
    suffix = Path(path).suffix
    if suffix == ".cub":
        return load_complex(path)
    if suffix == ".sim":
        return load_simplicial(path)
    raise FormatError(f"unknown file type {suffix!r} (expected .cub or .sim)")


def save(X: Union[CubicalComplex, SimplicialComplex], path: PathLike) -> Path:
    if isinstance(X, SimplicialComplex):
        return save_simplicial(X, path)
    return save_complex(X, path)
