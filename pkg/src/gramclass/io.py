"""Reading and writing quivers, unit forms and integer matrices.

Formats
-------
Quiver JSON ``{"vertices": m, "arrows": [[s, t], ...]}`` or text whose
first line is ``m n`` followed by ``n`` lines ``s t``.
Form JSON ``{"n": n, "upper": [[...], ...]}``.
Matrix text: first line ``rows cols`` then the rows.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Union

from .errors import InvariantError, ParseError
from .exactmat import IntMatrix
from .quiver import Quiver, validate
from .unitform import UnitForm, from_quiver

Loaded = Union[Quiver, UnitForm]


def _ints(line: str, lineno: int) -> list[int]:
    out = []
    for tok in re.finditer(r"\S+", line):
        try:
            out.append(int(tok.group()))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok.group()!r}", lineno, tok.start() + 1) from None
    return out


def _lines(text: str) -> list[tuple[int, str]]:
    return [(k, ln) for k, ln in enumerate(text.splitlines(), start=1) if ln.strip()]


def _header(lines: list[tuple[int, str]], what: str) -> tuple[int, int]:
    if not lines:
        raise ParseError(f"empty {what} file", 1)
    lineno, first = lines[0]
    head = _ints(first, lineno)
    if len(head) != 2 or min(head) < 0:
        raise ParseError(f"{what} header must be two non-negative integers", lineno)
    return head[0], head[1]


def parse_matrix(text: str) -> IntMatrix:
    lines = _lines(text)
    rows, cols = _header(lines, "matrix")
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}", body[-1][0] if body else lines[0][0])
    data = []
    for lineno, ln in body:
        vals = _ints(ln, lineno)
        if len(vals) != cols:
            raise ParseError(f"expected {cols} entries, found {len(vals)}", lineno)
        data.append(vals)
    return IntMatrix(data, shape=(rows, cols))


def format_matrix(M: IntMatrix) -> str:
    out = [f"{M.rows} {M.cols}"]
    out += [" ".join(str(x) for x in M.row(i)) for i in range(M.rows)]
    return "\n".join(out) + "\n"


def _parse_quiver_text(text: str) -> Quiver:
    lines = _lines(text)
    m, n = _header(lines, "quiver")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} arrows, found {len(body)}", body[-1][0] if body else lines[0][0])
    arrows = []
    for lineno, ln in body:
        vals = _ints(ln, lineno)
        if len(vals) != 2:
            raise ParseError("an arrow line holds exactly two vertices", lineno)
        arrows.append(tuple(vals))
    return Quiver(m, tuple(arrows))


def _json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _int_rows(obj: Any, what: str) -> list[list[int]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ParseError(f"{what} must be a list of lists")
    for r in obj:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(f"{what} must hold integers")
    return obj


def _from_json(obj: Any) -> Loaded:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    if "vertices" in obj:
        m = obj["vertices"]
        if not isinstance(m, int) or isinstance(m, bool):
            raise ParseError("'vertices' must be an integer")
        arrows = _int_rows(obj.get("arrows"), "'arrows'")
        if any(len(a) != 2 for a in arrows):
            raise ParseError("each arrow is a pair [source, target]")
        return Quiver(m, tuple(tuple(a) for a in arrows))
    if "upper" in obj:
        rows = _int_rows(obj["upper"], "'upper'")
        n = obj.get("n", len(rows))
        if n != len(rows) or any(len(r) != n for r in rows):
            raise InvariantError("form matrix is n x n", f"n = {n}")
        return UnitForm(IntMatrix(rows, shape=(n, n)))
    raise ParseError("JSON object has neither 'vertices' nor 'upper'")


def parse(text: str) -> Loaded:
    """Parse a quiver (JSON or text) or a form (JSON); quivers are validated."""
    obj = _from_json(_json(text)) if text.lstrip().startswith("{") else _parse_quiver_text(text)
    if isinstance(obj, Quiver):
        validate(obj)
    return obj


def load(path: str | Path) -> Loaded:
    return parse(Path(path).read_text())


def load_matrix(path: str | Path) -> IntMatrix:
    return parse_matrix(Path(path).read_text())


def load_form_matrix(path: str | Path) -> UnitForm:
    """Unit form from a matrix text file holding its upper triangular Gram matrix."""
    M = load_matrix(path)
    if not M.is_square():
        raise InvariantError("form matrix is square", f"shape {M.shape}")
    return UnitForm(M)


def quiver_json(Q: Quiver) -> dict[str, Any]:
    return {"vertices": Q.m, "arrows": [list(a) for a in Q.arrows]}


def form_json(q: UnitForm) -> dict[str, Any]:
    return {"n": q.n, "upper": q.upper.tolist()}


def dumps(obj: Loaded, text: bool = False) -> str:
    """Canonical serialization; ``text=True`` gives the quiver text format."""
    if isinstance(obj, Quiver):
        if text:
            return "\n".join([f"{obj.m} {obj.n}"] + [f"{s} {t}" for s, t in obj.arrows]) + "\n"
        return json.dumps(quiver_json(obj)) + "\n"
    return json.dumps(form_json(obj)) + "\n"


def save(obj: Loaded, path: str | Path, text: bool = False) -> None:
    Path(path).write_text(dumps(obj, text=text))


def canonical(text: str) -> str:
    """Canonical form of a file's contents, keeping its format."""
    return dumps(parse(text), text=not text.lstrip().startswith("{"))


def as_form(obj: Loaded) -> UnitForm:
    return from_quiver(obj) if isinstance(obj, Quiver) else obj
