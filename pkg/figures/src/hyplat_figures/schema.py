"""Exact-schema CSV readers for the hyplat exports we plot.

Each figure kind consumes exactly one upstream schema; the header must
match column for column, in order. A mismatch raises SchemaError carrying
the diff (missing and unexpected columns) so the CLI can report it.
"""

import csv

# figure kind -> (expected header, producing command)
SCHEMAS = {
    "scatter": (["x", "y", "even_x"], "hyplat measure --raw-points"),
    "density": (["x", "p"], "hyplat density --grid"),
    "histogram": (
        ["exponent_lo", "exponent_hi", "count"],
        "hyplat census --format csv",
    ),
}


class SchemaError(Exception):
    """Input CSV does not match the expected export schema."""

    def __init__(self, message, missing=(), unexpected=()):
        super().__init__(message)
        self.missing = tuple(missing)
        self.unexpected = tuple(unexpected)

    def diff_lines(self):
        out = []
        if self.missing:
            out.append("missing columns: " + ", ".join(self.missing))
        if self.unexpected:
            out.append("unexpected columns: " + ", ".join(self.unexpected))
        return out


def _check_header(kind, header):
    expected, source = SCHEMAS[kind]
    if header == expected:
        return
    got = list(header or [])
    missing = [c for c in expected if c not in got]
    unexpected = [c for c in got if c not in expected]
    detail = []
    if missing or unexpected:
        pass
    elif got != expected:
        # same column set, wrong order: report as a full mismatch
        missing = expected
        unexpected = got
        detail.append("column order differs")
    msg = (
        f"{kind} input must be the exact output of `{source}` "
        f"(header {','.join(expected)}; got {','.join(got) or '<empty>'})"
    )
    if detail:
        msg += "; " + "; ".join(detail)
    raise SchemaError(msg, missing=missing, unexpected=unexpected)


def read_rows(kind, path):
    """Parse the CSV at path against the kind's schema.

    Returns a list of dicts with typed values. Comment lines starting
    with '#' ahead of the header (the optional --timestamp banner) are
    skipped; anything else out of shape is a SchemaError.
    """
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown figure kind {kind!r}")
    expected, _ = SCHEMAS[kind]
    with open(path, newline="", encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: empty file", missing=expected) from None
    _check_header(kind, header)

    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(expected):
            raise SchemaError(
                f"{path}:{lineno}: expected {len(expected)} fields, got {len(rec)}"
            )
        try:
            if kind == "scatter":
                rows.append(
                    {"x": int(rec[0]), "y": int(rec[1]), "even_x": int(rec[2])}
                )
            elif kind == "density":
                rows.append({"x": float(rec[0]), "p": float(rec[1])})
            else:
                rows.append(
                    {
                        "exponent_lo": float(rec[0]),
                        "exponent_hi": float(rec[1]),
                        "count": int(rec[2]),
                    }
                )
        except ValueError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows
