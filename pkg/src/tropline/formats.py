"""Text and JSON formats shared by the library and the command line."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable

from .splits import Coloring, PhyloTree, Split, tree_from_splits

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")
_RATIO = re.compile(r"[+-]?\d+/\d+")


class MatrixParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_entry(token: str) -> Fraction:
    if _DECIMAL.fullmatch(token):
        return Fraction(token)
    if _RATIO.fullmatch(token):
        num, den = token.split("/")
        if int(den) == 0:
            raise ValueError("zero denominator")
        return Fraction(int(num), int(den))
    raise ValueError(f"not an integer, decimal or p/q fraction: {token!r}")


def parse_matrix(text: str) -> list[list[Fraction]]:
    """Parse one matrix row per line; ``#`` comments and blank lines are skipped."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            try:
                row.append(parse_entry(m.group()))
            except ValueError as exc:
                raise MatrixParseError(lineno, m.start() + 1, str(exc)) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixParseError(lineno, 1, f"row has {len(row)} entries, expected {width}")
        rows.append(row)
    if not rows:
        raise MatrixParseError(1, 1, "no matrix rows found")
    return rows


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_matrix(m: Iterable[Iterable]) -> str:
    return "\n".join(" ".join(format_rat(x) for x in row) for row in m) + "\n"


def tree_to_json(tree: PhyloTree, coloring: Coloring) -> dict:
    return {
        "N": tree.N,
        "n": coloring.n,
        "d": coloring.d,
        "splits": [
            {"members": sorted(s.members), "length": format_rat(tree.lengths[s])}
            for s in tree.sorted_splits()
        ],
    }


def tree_from_json(obj) -> tuple[PhyloTree, Coloring]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    N, n, d = int(obj["N"]), int(obj["n"]), int(obj["d"])
    if N != n + d:
        raise ValueError(f"N={N} but n+d={n + d}")
    lengths = {}
    for entry in obj.get("splits", []):
        s = Split(N, entry["members"])
        lengths[s] = parse_entry(str(entry.get("length", "1")))
    return tree_from_splits(lengths, lengths, N=N), Coloring(n, d)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
