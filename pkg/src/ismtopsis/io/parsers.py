"""Parsers for every input file. Each accepts CSV text or a JSON mirror.

Diagnostics carry the source name and 1-based (row, column) of the offending
cell, counting the header as row 1.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from pathlib import Path
from typing import Any

from ..concordance import RatingTable
from ..core import TFN, CategoryId, CriterionOrientation, LinguisticTerm, MotivatorId, RelationSymbol, linguistic_to_tfn
from ..errors import IncompleteFileError, IsmTopsisError, ParseError
from ..ism import MarkedBinaryMatrix, SsimMatrix
from ..topsis import WEIGHTS, CriterionWeights, ExpertRating, FuzzyMatrix

_NUMBER = re.compile(r"^[+-]?(\d+([.,]\d*)?|[.,]\d+)([eE][+-]?\d+)?$")


def _is_json(text: str) -> bool:
    return text.lstrip().startswith(("{", "["))


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", source, exc.lineno, exc.colno) from None


def _rows(text: str) -> list[tuple[int, list[str]]]:
    """CSV rows with their 1-based line number; blank rows dropped."""
    out = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if any(cell.strip() for cell in row):
            out.append((lineno, [cell.strip() for cell in row]))
    return out


def parse_number(text: Any, source: str = "<input>", row: int | None = None,
                 column: int | None = None) -> float:
    """A finite number; ``','`` and ``'.'`` are both accepted as the decimal mark."""
    if isinstance(text, bool):
        raise ParseError(f"expected a number, got {text!r}", source, row, column)
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        s = str(text).strip()
        if not _NUMBER.match(s):
            raise ParseError(f"unparseable number {s!r}", source, row, column)
        value = float(s.replace(",", "."))
    if not math.isfinite(value):
        raise ParseError(f"number {text!r} is not finite", source, row, column)
    return value


def parse_tfn_cell(cell: Any, source: str = "<input>", row: int | None = None,
                   column: int | None = None, allow_unordered: bool = False) -> TFN:
    """One TFN cell: ``"a;b;c"`` (comma decimals allowed), ``"a b c"``, a list, or a linguistic term."""
    if isinstance(cell, (list, tuple)):
        parts = list(cell)
    else:
        s = str(cell).strip()
        if s.upper() in LinguisticTerm.__members__:
            return linguistic_to_tfn(s)
        parts = s.split(";") if ";" in s else s.split()
    if len(parts) != 3:
        raise ParseError(f"expected three components, got {cell!r}", source, row, column)
    a, b, c = (parse_number(p, source, row, column) for p in parts)
    if not allow_unordered and not (a <= b <= c):
        raise ParseError(f"non-monotone triple ({a}, {b}, {c}): need a <= b <= c", source, row, column)
    try:
        return TFN(a, b, c, check_order=not allow_unordered)
    except IsmTopsisError as exc:
        raise ParseError(str(exc), source, row, column) from None


# --------------------------------------------------------------------------- SSIM

def parse_ssim(text: str, source: str = "<ssim>") -> SsimMatrix:
    """SSIM grid: header of category codes, row labels in study order.

    A symbol at (row m, column n) reads "m relates to n"; the pair may be
    given in either triangle but only once. ``*`` and blanks are ignored.
    The JSON mirror is ``{"categories": [...], "relations": [[from, to, symbol], ...]}``.
    """
    if _is_json(text):
        return _ssim_from_json(_load_json(text, source), source)
    rows = _rows(text)
    if not rows:
        raise ParseError("empty SSIM file", source)
    header_line, header = rows[0]
    columns = header[1:]
    codes = [r[0] for _, r in rows[1:]]
    if not codes:
        raise ParseError("SSIM has no category rows", source, header_line)
    if len(set(codes)) != len(codes):
        raise ParseError("duplicate category row label", source)
    if sorted(columns) != sorted(codes):
        raise ParseError(f"header codes {columns} do not match row labels {codes}", source, header_line)
    upper: dict[tuple[int, int], RelationSymbol] = {}
    for lineno, row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(f"row has {len(row)} cells, header has {len(header)}", source, lineno)
        i = codes.index(row[0])
        for col, (code, cell) in enumerate(zip(columns, row[1:]), start=2):
            if cell in ("", "*"):
                continue
            j = codes.index(code)
            try:
                symbol = RelationSymbol.parse(cell)
            except IsmTopsisError as exc:
                raise ParseError(str(exc), source, lineno, col) from None
            _add_pair(upper, i, j, symbol, codes, source, lineno, col)
    return _complete(SsimMatrix(tuple(codes), upper), source)


def _add_pair(upper, i, j, symbol, codes, source, row=None, col=None):
    if i == j:
        raise ParseError(f"relation on the diagonal for {codes[i]}", source, row, col)
    key, sym = ((i, j), symbol) if i < j else ((j, i), symbol.reversed())
    if key in upper:
        raise ParseError(f"duplicate judgment for pair ({codes[key[0]]}, {codes[key[1]]})", source, row, col)
    upper[key] = sym


def _complete(ssim: SsimMatrix, source: str) -> SsimMatrix:
    missing = ssim.missing_pairs()
    if missing:
        i, j = missing[0]
        raise IncompleteFileError(
            f"incomplete SSIM: {len(missing)} pair(s) missing, first ({ssim.codes[i]}, {ssim.codes[j]})",
            source, i + 2, None)
    return ssim


def _ssim_from_json(data: Any, source: str) -> SsimMatrix:
    try:
        codes = [str(c) for c in data["categories"]]
        relations = data["relations"]
    except (KeyError, TypeError):
        raise ParseError("JSON SSIM needs 'categories' and 'relations'", source) from None
    upper: dict[tuple[int, int], RelationSymbol] = {}
    for k, rel in enumerate(relations, start=1):
        try:
            a, b, s = rel
            i, j = codes.index(str(a)), codes.index(str(b))
            symbol = RelationSymbol.parse(str(s))
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad relation entry {rel!r}: {exc}", source, k) from None
        _add_pair(upper, i, j, symbol, codes, source, k)
    return _complete(SsimMatrix(tuple(codes), upper), source)


# ------------------------------------------------------------------ marked matrix

def parse_marked_matrix(text: str, source: str = "<matrix>") -> MarkedBinaryMatrix:
    """Square 0/1/1* grid; extra trailing columns or rows (powers, ranks) are ignored."""
    rows = _rows(text)
    if not rows:
        raise ParseError("empty matrix file", source)
    _, header = rows[0]
    labels = [r[0] for _, r in rows[1:]]
    codes = [c for c in header[1:] if c in labels]
    body = [(ln, r) for ln, r in rows[1:] if r[0] in codes]
    n = len(codes)
    values = [[False] * n for _ in range(n)]
    derived = [[False] * n for _ in range(n)]
    for lineno, row in body:
        i = codes.index(row[0])
        for col, code in enumerate(header[1:], start=2):
            if code not in codes:
                continue
            cell = row[col - 1] if col - 1 < len(row) else ""
            j = codes.index(code)
            if cell not in ("0", "1", "1*"):
                raise ParseError(f"expected 0, 1 or 1*, got {cell!r}", source, lineno, col)
            values[i][j] = cell != "0"
            derived[i][j] = cell == "1*"
    try:
        return MarkedBinaryMatrix(tuple(codes), values, derived)
    except ValueError as exc:
        raise ParseError(str(exc), source) from None


# --------------------------------------------------------------- decision matrix

def parse_decision_matrix(text: str, source: str = "<matrix>",
                          allow_unordered: bool = False) -> tuple[FuzzyMatrix, CriterionWeights]:
    """Combined decision matrix whose first data row is ``WEIGHTS``.

    CSV: header ``alternative,<criterion>...``; one TFN cell per criterion.
    JSON: ``{"criteria": [...], "weights": [[a,b,c], ...], "rows": {"M1": [[a,b,c], ...]}}``.
    """
    if _is_json(text):
        return _decision_from_json(_load_json(text, source), source, allow_unordered)
    rows = _rows(text)
    if not rows:
        raise ParseError("empty decision matrix file", source)
    header_line, header = rows[0]
    criteria = header[1:]
    if not criteria:
        raise ParseError("header lists no criteria", source, header_line)
    if len(rows) < 2 or rows[1][1][0].upper() != WEIGHTS:
        where = rows[1][0] if len(rows) > 1 else header_line + 1
        raise ParseError("missing WEIGHTS row: the first data row must be labelled WEIGHTS", source, where, 1)
    grid = _tfn_grid(rows[1:], header, source, allow_unordered)
    weights = CriterionWeights(criteria, grid[0][1])
    alts = [label for label, _ in grid[1:]]
    if len(set(alts)) != len(alts):
        raise ParseError("duplicate alternative label", source)
    return FuzzyMatrix(alts, criteria, [cells for _, cells in grid[1:]]), weights


def parse_fuzzy_matrix(text: str, source: str = "<matrix>", allow_unordered: bool = True) -> FuzzyMatrix:
    """Any TFN grid in the decision-matrix CSV layout, without a WEIGHTS row."""
    rows = _rows(text)
    if not rows:
        raise ParseError("empty matrix file", source)
    grid = _tfn_grid(rows[1:], rows[0][1], source, allow_unordered)
    return FuzzyMatrix([l for l, _ in grid], rows[0][1][1:], [c for _, c in grid])


def _tfn_grid(rows, header, source, allow_unordered):
    out = []
    for lineno, row in rows:
        if len(row) != len(header):
            raise ParseError(f"ragged row {row[0]!r}: {len(row)} cells, header has {len(header)}", source, lineno)
        cells = [parse_tfn_cell(cell, source, lineno, col, allow_unordered)
                 for col, cell in enumerate(row[1:], start=2)]
        out.append((row[0], cells))
    return out


def _decision_from_json(data, source, allow_unordered):
    try:
        criteria = [str(c) for c in data["criteria"]]
        weights_raw = data["weights"]
        rows_raw = data["rows"]
    except (KeyError, TypeError):
        raise ParseError("missing WEIGHTS row: JSON matrix needs 'criteria', 'weights' and 'rows'", source) from None
    if isinstance(weights_raw, dict):
        weights_raw = [weights_raw.get(c) for c in criteria]
    if len(weights_raw) != len(criteria):
        raise ParseError("WEIGHTS row is ragged", source, 1)
    weights = [parse_tfn_cell(w, source, 1, k + 1, allow_unordered) for k, w in enumerate(weights_raw)]
    alts, cells = [], []
    for r, (alt, row) in enumerate(rows_raw.items(), start=2):
        if isinstance(row, dict):
            row = [row.get(c) for c in criteria]
        if len(row) != len(criteria):
            raise ParseError(f"ragged row {alt!r}", source, r)
        alts.append(str(alt))
        cells.append([parse_tfn_cell(c, source, r, k + 1, allow_unordered) for k, c in enumerate(row)])
    return FuzzyMatrix(alts, criteria, cells), CriterionWeights(criteria, weights)


# ----------------------------------------------------------------- expert panel

def parse_expert_ratings(text: str, source: str = "<ratings>",
                         allow_unordered: bool = False) -> list[ExpertRating]:
    """Per-expert ratings: ``expert,alternative,criterion,rating`` (TFN cell or linguistic term).

    Rows with alternative ``WEIGHTS`` rate criterion importance.
    """
    if _is_json(text):
        data = _load_json(text, source)
        records = [(k, [str(d.get("expert", "")), str(d.get("alternative", "")),
                        str(d.get("criterion", "")), d.get("rating")]) for k, d in enumerate(data, start=1)]
    else:
        rows = _rows(text)
        if not rows:
            raise ParseError("empty ratings file", source)
        expected = ["expert", "alternative", "criterion", "rating"]
        if [h.lower() for h in rows[0][1]] != expected:
            raise ParseError(f"header must be {','.join(expected)}", source, rows[0][0])
        records = rows[1:]
    out = []
    for lineno, rec in records:
        if len(rec) != 4 or not all(str(x).strip() for x in rec[:3]) or rec[3] in (None, ""):
            raise ParseError("each rating needs expert, alternative, criterion and rating", source, lineno)
        tfn = parse_tfn_cell(rec[3], source, lineno, 4, allow_unordered)
        alt = WEIGHTS if str(rec[1]).upper() == WEIGHTS else str(rec[1])
        out.append(ExpertRating(str(rec[0]), alt, str(rec[2]), tfn))
    return out


# ------------------------------------------------------------- small key/value files

def _two_column(text: str, source: str, header: tuple[str, str]) -> list[tuple[int, str, str]]:
    if _is_json(text):
        data = _load_json(text, source)
        if not isinstance(data, dict):
            raise ParseError(f"JSON mapping from {header[0]} to {header[1]} expected", source)
        return [(k, str(a), "" if b is None else str(b)) for k, (a, b) in enumerate(data.items(), start=1)]
    rows = _rows(text)
    if not rows or [h.lower() for h in rows[0][1][:2]] != list(header):
        raise ParseError(f"header must start with {','.join(header)}", source, 1)
    out, seen = [], set()
    for lineno, row in rows[1:]:
        if len(row) < 2:
            raise ParseError("row needs two cells", source, lineno)
        if row[0] in seen:
            raise ParseError(f"duplicate key {row[0]!r}", source, lineno, 1)
        seen.add(row[0])
        out.append((lineno, row[0], row[1]))
    return out


def parse_orientations(text: str, source: str = "<orientations>") -> dict[str, CriterionOrientation]:
    out = {}
    for lineno, crit, value in _two_column(text, source, ("criterion", "orientation")):
        try:
            out[crit] = CriterionOrientation.parse(value)
        except IsmTopsisError as exc:
            raise ParseError(str(exc), source, lineno, 2) from None
    return out


def parse_category_map(text: str, source: str = "<category-map>") -> dict[str, str]:
    out = {}
    for lineno, alt, cat in _two_column(text, source, ("motivator", "category")):
        if not cat:
            raise ParseError(f"no category for {alt}", source, lineno, 2)
        out[alt] = cat
    return out


def parse_categories(text: str, source: str = "<categories>") -> list[CategoryId]:
    return [CategoryId(k, label, code)
            for k, (_, code, label) in enumerate(_two_column(text, source, ("code", "label")), start=1)]


def parse_motivators(text: str, categories: list[CategoryId],
                     source: str = "<motivators>") -> list[MotivatorId]:
    by_code = {c.code: c for c in categories}
    rows = _rows(text)
    if not rows or [h.lower() for h in rows[0][1]] != ["code", "label", "category"]:
        raise ParseError("header must be code,label,category", source, 1)
    out = []
    for k, (lineno, row) in enumerate(rows[1:], start=1):
        if len(row) != 3:
            raise ParseError("row needs code, label and category", source, lineno)
        if row[2] not in by_code:
            raise ParseError(f"unknown category {row[2]!r}", source, lineno, 3)
        out.append(MotivatorId(k, row[1], row[0], by_code[row[2]]))
    if len({m.code for m in out}) != len(out):
        raise ParseError("duplicate motivator code", source)
    return out


def parse_rating_table(text: str, source: str = "<ratings>", transpose: bool = False) -> RatingTable:
    """Kendall input: header ``rater,<subject>...`` then one row of scores per rater.

    JSON mirror: ``{"raters": {"r1": [scores...], ...}, "subjects": [...]}``.
    ``transpose`` reads subjects as rows and raters as columns instead.
    """
    if _is_json(text):
        data = _load_json(text, source)
        try:
            raters = list(data["raters"].keys())
            rows = [[parse_number(x, source, r + 2, c + 2) for c, x in enumerate(v)]
                    for r, v in enumerate(data["raters"].values())]
        except (KeyError, TypeError, AttributeError):
            raise ParseError("JSON ratings need a 'raters' mapping", source) from None
        subjects = data.get("subjects") or [f"s{j + 1}" for j in range(len(rows[0]) if rows else 0)]
    else:
        csv_rows = _rows(text)
        if len(csv_rows) < 2:
            raise ParseError("ratings table needs a header and at least one row", source)
        header = csv_rows[0][1]
        subjects, raters, rows = header[1:], [], []
        for lineno, row in csv_rows[1:]:
            if len(row) != len(header):
                raise ParseError(f"ragged row: {len(row)} cells, header has {len(header)}", source, lineno)
            raters.append(row[0])
            rows.append([parse_number(x, source, lineno, c) for c, x in enumerate(row[1:], start=2)])
    if any(len(r) != len(subjects) for r in rows):
        raise ParseError("every rater must score every subject", source)
    if transpose:
        rows = [list(col) for col in zip(*rows)]
        raters, subjects = list(subjects), list(raters)
    try:
        return RatingTable.from_rows(rows, raters=tuple(raters), subjects=tuple(subjects))
    except IsmTopsisError as exc:
        raise ParseError(str(exc), source) from None


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
