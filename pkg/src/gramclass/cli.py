"""Command-line front end.

Exit status: 0 on success, 2 on invalid input, 64 on usage errors and 70 if
an internal consistency check fails. JSON is printed unless ``--text`` is
given. Every congruence matrix is verified before it is printed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from . import io
from .congruence import (
    congruence_between,
    congruence_forms,
    congruence_to_standard,
    triangular_flip,
    verify,
)
from .errors import GramclassError, InternalError, ValidationError
from .exactmat import IntMatrix
from .quiver import Quiver, inverse_quiver, random_quiver
from .standard import as_partition, count_classes, partitions_part1, standard_quiver
from .unitform import UnitForm, classify, realize_as_quiver

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _jsonable(x: Any) -> Any:
    if isinstance(x, IntMatrix):
        return x.tolist()
    if isinstance(x, float) and math.isinf(x):
        return "infinity"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _dump_json(x: Any, indent: int = 0) -> str:
    """JSON with one matrix row or vector per line."""
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump_json(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, list) and x and any(isinstance(v, (list, dict)) for v in x):
        items = [pad + _dump_json(v, indent + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(x)


def _text(x: Any) -> str:
    lines = []
    for key, val in x.items():
        if isinstance(val, IntMatrix):
            val = val.tolist()
        if isinstance(val, list) and val and all(isinstance(r, list) for r in val):
            lines.append(f"{key}:")
            lines += ["  " + " ".join(str(v) for v in r) for r in val]
        elif isinstance(val, list):
            lines.append(f"{key}: " + " ".join(str(v) for v in val))
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines += ["  " + ln for ln in _text(val).splitlines()]
        else:
            lines.append(f"{key}: {_jsonable(val)}")
    return "\n".join(lines)


def _emit(payload: dict[str, Any], args: argparse.Namespace) -> None:
    if getattr(args, "text", False):
        print(_text(payload))
    else:
        print(_dump_json(_jsonable(payload)))


def _input(args: argparse.Namespace) -> Quiver | UnitForm:
    """The single input of a command: a positional file or ``--matrix-file``."""
    path = getattr(args, "file", None)
    mfile = getattr(args, "matrix_file", None)
    if (path is None) == (mfile is None):
        raise UsageError("give exactly one input: a file argument or --matrix-file")
    return io.load(path) if path is not None else io.load_form_matrix(mfile)


def cmd_classify(args: argparse.Namespace) -> dict[str, Any]:
    return classify(io.as_form(_input(args)))


def cmd_standard(args: argparse.Namespace) -> dict[str, Any]:
    pi = as_partition(int(p) for p in args.partition.split(","))
    Q = standard_quiver(pi, args.deg, "star" if args.star else "A")
    return io.quiver_json(Q)


def cmd_congruence(args: argparse.Namespace) -> dict[str, Any]:
    obj = _input(args)
    if args.target:
        q, q2 = io.as_form(obj), io.as_form(io.load(args.target))
        B = congruence_between(q, q2)
        report = verify(B, q, q2)
        if not (report["strong"] and report["unimodular"]):
            raise InternalError("congruence matrix failed verification")
        payload = {"B": B.tolist(), "verified": True}
    else:
        cert = congruence_to_standard(obj) if isinstance(obj, Quiver) else congruence_forms(obj)
        if not cert.verify():
            raise InternalError("certificate failed verification")
        B = cert.B
        payload = cert.to_json()
    if args.emit_matrix:
        Path(args.emit_matrix).write_text(io.format_matrix(B))
    return payload


def _verify_one(b_path: Path, src: Path, dst: Path) -> dict[str, Any]:
    B = io.load_matrix(b_path)
    return verify(B, io.as_form(io.load(src)), io.as_form(io.load(dst)))


def cmd_verify(args: argparse.Namespace) -> dict[str, Any]:
    if args.batch:
        if args.B or args.src or args.dst:
            raise UsageError("--batch takes no other inputs")
        root = Path(args.batch)
        cases = sorted(p.name[: -len(".B.txt")] for p in root.glob("*.B.txt"))
        jobs = []
        for case in cases:
            src = next(iter(sorted(root.glob(f"{case}.src.*"))), None)
            dst = next(iter(sorted(root.glob(f"{case}.dst.*"))), None)
            if src is None or dst is None:
                raise ValidationError(f"case {case!r} needs {case}.src.* and {case}.dst.* files")
            jobs.append((root / f"{case}.B.txt", src, dst))
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(lambda j: _verify_one(*j), jobs))
        return {"cases": [{"case": c, **r} for c, r in zip(cases, reports)]}
    if not (args.B and args.src and args.dst):
        raise UsageError("verify needs --B <matrix> <src> <dst> or --batch <dir>")
    return _verify_one(Path(args.B), Path(args.src), Path(args.dst))


def cmd_realize(args: argparse.Namespace) -> dict[str, Any]:
    return io.quiver_json(realize_as_quiver(io.as_form(_input(args))))


def cmd_invert(args: argparse.Namespace) -> dict[str, Any]:
    Q = io.load(args.file)
    if not isinstance(Q, Quiver):
        Q = realize_as_quiver(Q)
    return io.quiver_json(inverse_quiver(Q))


def cmd_count(args: argparse.Namespace) -> dict[str, Any]:
    k = count_classes(args.n, args.c)
    parts = partitions_part1(args.n - args.c + 1, args.c)
    if len(parts) != k:
        raise InternalError("class count disagrees with the enumerated partitions")
    return {"count": k, "partitions": [list(p) for p in parts]}


def cmd_random(args: argparse.Namespace) -> dict[str, Any]:
    seed = args.seed
    if seed is None:
        env = os.environ.get("GRAMCLASS_SEED", "0")
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"GRAMCLASS_SEED must be an integer, got {env!r}") from None
    return io.quiver_json(random_quiver(args.m, args.n, seed))


def cmd_flip(args: argparse.Namespace) -> dict[str, Any]:
    q = io.as_form(_input(args))
    C = triangular_flip(q)
    return {"C": C.tolist(), "verified": C.T @ q.upper @ C == q.upper.T}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--text", action="store_true", help="human-readable output")

    p = _Parser(prog="gramclass", description="Strong Gram congruence of unit forms of Dynkin type A.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("file", nargs="?", help="quiver or form file")
        sp.add_argument("--matrix-file", help="matrix text file with the upper triangular Gram matrix")

    sp = sub.add_parser("classify", parents=[common], help="invariants of a form or quiver")
    with_input(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("standard", parents=[common], help="standard extension quiver")
    sp.add_argument("--partition", required=True, help="comma separated parts, e.g. 3,1")
    sp.add_argument("--deg", type=int, required=True, help="degree of degeneracy")
    sp.add_argument("--star", action="store_true", help="star-shaped inverse variant")
    sp.set_defaults(func=cmd_standard)

    sp = sub.add_parser("congruence", parents=[common], help="strong congruence certificate")
    with_input(sp)
    sp.add_argument("--target", help="second form or quiver; congruence between the two")
    sp.add_argument("--emit-matrix", help="also write the matrix in text format to this path")
    sp.add_argument("--json", action="store_true", help="JSON output (the default)")
    sp.set_defaults(func=cmd_congruence)

    sp = sub.add_parser("verify", parents=[common], help="check a congruence matrix")
    sp.add_argument("--B", help="matrix text file")
    sp.add_argument("src", nargs="?")
    sp.add_argument("dst", nargs="?")
    sp.add_argument("--batch", help="directory of <case>.B.txt, <case>.src.*, <case>.dst.* files")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("realize", parents=[common], help="quiver realizing a form")
    with_input(sp)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("invert", parents=[common], help="inverse quiver")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_invert)

    sp = sub.add_parser("count", parents=[common], help="number of strong congruence classes")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("random", parents=[common], help="seeded random connected quiver")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None, help="defaults to $GRAMCLASS_SEED or 0")
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("flip", parents=[common], help="congruence from a form to its transpose")
    with_input(sp)
    sp.set_defaults(func=cmd_flip)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GramclassError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(payload, args)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
