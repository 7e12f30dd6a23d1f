"""Line-oriented text formats for algebras (.alg) and modules (.mod).

Algebra files:

    # comment
    field Q            (or: field GF(101))
    vertex 1 2
    arrow a: 1 -> 2
    relation a*b
    relation b*a - g*d
    relation 2*a*b + 1/3*g*d

Paths in relations are read left-to-right: a*b is "traverse a, then b".
A leading numeric token in a term is its coefficient.

Module files:

    algebra cycle2.alg     (path relative to the .mod file)
    dim 1=2 2=1
    map a = [[1,0],[0,1]]

Matrices are shaped dims(source) x dims(target) and act on row vectors by
right multiplication; omitted maps are zero.
"""

import re
from fractions import Fraction
from pathlib import Path

from .algebra import Algebra, Quiver, RelationPoly, build_algebra
from .errors import InputError
from .linalg import GF, QQ, FieldSpec, Matrix
from .modules import Representation

_NUM_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _logical_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_field(token: str) -> FieldSpec:
    token = token.strip()
    if token in ("Q", "QQ", "rationals"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", token)
    if m:
        return GF(int(m.group(1)))
    raise InputError(f"unknown field {token!r} (use Q or GF(p))")


def _parse_relation(rest: str) -> RelationPoly:
    # split into signed terms
    pieces = re.split(r"\s*([+-])\s*", rest.strip())
    if pieces and pieces[0] == "":
        pieces = pieces[1:]
    terms = []
    sign = 1
    expect_term = True
    for piece in pieces:
        if piece in ("+", "-"):
            if expect_term:
                if piece == "-":
                    sign = -sign
                continue
            sign = 1 if piece == "+" else -1
            expect_term = True
            continue
        tokens = [t for t in piece.split("*") if t]
        if not tokens:
            raise InputError(f"empty term in relation {rest!r}")
        coeff = Fraction(sign)
        if _NUM_RE.match(tokens[0]):
            coeff *= Fraction(tokens[0])
            tokens = tokens[1:]
        if not tokens:
            raise InputError(f"coefficient without a path in relation {rest!r}")
        terms.append((coeff, tuple(tokens)))
        expect_term = False
        sign = 1
    if not terms:
        raise InputError(f"empty relation {rest!r}")
    return RelationPoly(tuple(terms))


def parse_algebra_text(text: str, field_override: FieldSpec | None = None,
                       max_path_len: int = 64) -> Algebra:
    field = None
    vertices = []
    arrows = []
    relations = []
    for line in _logical_lines(text):
        head, _, rest = line.partition(" ")
        head = head.lower()
        if head == "field":
            field = parse_field(rest)
        elif head == "vertex":
            vertices.extend(rest.split())
        elif head == "arrow":
            m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", rest.strip())
            if not m:
                raise InputError(f"malformed arrow line: {line!r}")
            arrows.append((m.group(1), m.group(2), m.group(3)))
        elif head == "relation":
            relations.append(_parse_relation(rest))
        else:
            raise InputError(f"unknown directive {head!r}")
    if field is None and field_override is None:
        raise InputError("algebra file declares no field")
    if field_override is not None:
        field = field_override
    quiver = Quiver(tuple(vertices), tuple(arrows))
    return build_algebra(quiver, relations, field, max_path_len)


def load_algebra(path, field_override: FieldSpec | None = None,
                 max_path_len: int = 64) -> Algebra:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such algebra file: {p}")
    return parse_algebra_text(p.read_text(), field_override, max_path_len)


def _parse_matrix_literal(text: str, field: FieldSpec, rows: int, cols: int) -> Matrix:
    s = re.sub(r"\s+", "", text)
    if s in ("[]", "[[]]"):
        return Matrix.zeros(field, rows, cols)
    if not (s.startswith("[[") and s.endswith("]]")):
        raise InputError(f"malformed matrix literal {text!r}")
    inner = s[2:-2]
    row_strs = inner.split("],[")
    entries = []
    for rs in row_strs:
        entries.append([field.coerce(Fraction(tok)) for tok in rs.split(",") if tok != ""])
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise InputError(
            f"matrix literal is {len(entries)}x{len(entries[0]) if entries else 0}, "
            f"expected {rows}x{cols}")
    return Matrix.from_rows(field, entries, cols)


def parse_module_text(text: str, algebra: Algebra | None = None,
                      base_dir: Path | None = None,
                      field_override: FieldSpec | None = None) -> Representation:
    alg = algebra
    dims = None
    map_lines = []
    for line in _logical_lines(text):
        head, _, rest = line.partition(" ")
        head = head.lower()
        if head == "algebra":
            if alg is None:
                p = Path(rest.strip())
                if base_dir is not None and not p.is_absolute():
                    p = base_dir / p
                alg = load_algebra(p, field_override)
        elif head == "dim":
            dims = {}
            for chunk in rest.split():
                v, _, n = chunk.partition("=")
                dims[v] = int(n)
        elif head == "map":
            name, _, literal = rest.partition("=")
            map_lines.append((name.strip(), literal.strip()))
        else:
            raise InputError(f"unknown directive {head!r}")
    if alg is None:
        raise InputError("module file names no algebra and none was supplied")
    if dims is None:
        raise InputError("module file has no dim line")
    full_dims = {v: dims.get(v, 0) for v in alg.vertices}
    unknown = set(dims) - set(alg.vertices)
    if unknown:
        raise InputError(f"dim line names unknown vertices {sorted(unknown)}")
    mats = {}
    for name, s, t in alg.quiver.arrows:
        mats[name] = Matrix.zeros(alg.field, full_dims[s], full_dims[t])
    for name, literal in map_lines:
        s, t = alg.arrow_endpoints(name)
        mats[name] = _parse_matrix_literal(literal, alg.field, full_dims[s], full_dims[t])
    return Representation(alg, full_dims, mats)


def load_module(path, algebra: Algebra | None = None,
                field_override: FieldSpec | None = None) -> Representation:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such module file: {p}")
    return parse_module_text(p.read_text(), algebra, p.parent, field_override)


FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_algebra(name: str, field_override: FieldSpec | None = None) -> Algebra:
    p = FIXTURE_DIR / f"{name}.alg"
    if not p.exists():
        raise InputError(f"unknown fixture algebra {name!r}")
    return load_algebra(p, field_override)
