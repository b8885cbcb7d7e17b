"""Curve files and CSV reports.

A curve file has one curve per line::

    # a1 a2 a3 a4 a6 [label] [key=value ...]
    0 -1 1 0 0 11a3 cm=false rank=0
    0 0 0 -1 0 cm=true

Recognised keys are ``cm``, ``rank``, ``mu`` and ``lambda``. Everything after
``#`` is a comment.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO, Union

from .arith import EllipticCurve
from .classify import ScanReport
from .densities import DensityResult, format_6g
from .errors import ParseError, SingularCurve

_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}
_INT_KEYS = ("rank", "mu", "lambda")


@dataclass(frozen=True)
class CurveRecord:
    ainvs: tuple
    label: Optional[str] = None
    cm: Optional[bool] = None
    rank: Optional[int] = None
    mu: Optional[int] = None
    lambda_: Optional[int] = None
    line: Optional[int] = field(default=None, compare=False)

    def curve(self) -> EllipticCurve:
        return EllipticCurve(*self.ainvs, label=self.label)

    @property
    def name(self) -> str:
        return self.label or "[" + ",".join(map(str, self.ainvs)) + "]"


def parse_curve_line(text: str, line: Optional[int] = None) -> Optional[CurveRecord]:
    """Parse one line; returns None for blank and comment-only lines."""
    text = text.split("#", 1)[0].strip()
    if not text:
        return None
    tokens = text.split()
    if len(tokens) < 5:
        raise ParseError(line, f"expected 5 coefficients, found {len(tokens)} fields")
    try:
        ainvs = tuple(int(t) for t in tokens[:5])
    except ValueError:
        raise ParseError(line, f"non-integer coefficient in {' '.join(tokens[:5])!r}") from None
    label, meta = None, {}
    for i, tok in enumerate(tokens[5:]):
        if "=" not in tok:
            if i != 0:
                raise ParseError(line, f"unexpected token {tok!r}; the label must come first")
            label = tok
            continue
        key, _, value = tok.partition("=")
        key = key.lower()
        if key in meta:
            raise ParseError(line, f"duplicate key {key!r}")
        if key == "cm":
            if value.lower() not in _BOOL:
                raise ParseError(line, f"cm must be true or false, got {value!r}")
            meta[key] = _BOOL[value.lower()]
        elif key in _INT_KEYS:
            try:
                meta[key] = int(value)
            except ValueError:
                raise ParseError(line, f"{key} must be an integer, got {value!r}") from None
            if meta[key] < 0:
                raise ParseError(line, f"{key} must be nonnegative")
        else:
            raise ParseError(line, f"unknown key {key!r}")
    rec = CurveRecord(ainvs, label, meta.get("cm"), meta.get("rank"), meta.get("mu"),
                      meta.get("lambda"), line)
    try:
        rec.curve()
    except SingularCurve as exc:
        err = SingularCurve(f"line {line}: {exc}" if line is not None else str(exc))
        err.line = line
        raise err from None
    return rec


def parse_curve_file(source: Union[str, os.PathLike, TextIO, Iterable[str]]) -> list:
    """Records from a path, an open text stream, or an iterable of lines."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return parse_curve_file(fh)
    out = []
    for n, text in enumerate(source, start=1):
        rec = parse_curve_line(text, n)
        if rec is not None:
            out.append(rec)
    return out


def format_record(rec: CurveRecord) -> str:
    parts = [str(a) for a in rec.ainvs]
    if rec.label:
        parts.append(rec.label)
    if rec.cm is not None:
        parts.append(f"cm={'true' if rec.cm else 'false'}")
    for key, value in (("rank", rec.rank), ("mu", rec.mu), ("lambda", rec.lambda_)):
        if value is not None:
            parts.append(f"{key}={value}")
    return " ".join(parts)


@dataclass(frozen=True)
class VerdictRow:
    curve: str
    p: int
    conductor: int
    verdict: str
    reasons: Sequence[str] = ()


DENSITY_HEADER = ["p", "value", "X"]
SCAN_HEADER = ScanReport.CSV_HEADER.split(",")
VERDICT_HEADER = ["curve", "p", "conductor", "verdict", "reasons"]


def _rows(kind, items):
    if kind == "density":
        return DENSITY_HEADER, [[r.p, format_6g(r.value), r.X] for r in items]
    if kind == "scan":
        return SCAN_HEADER, [r.csv_row() for r in items]
    if kind == "verdict":
        return VERDICT_HEADER, [[r.curve, r.p, r.conductor, r.verdict, ";".join(r.reasons)] for r in items]
    raise ValueError(f"unknown report kind {kind!r}")


def _kind_of(item):
    if isinstance(item, DensityResult):
        return "density"
    if isinstance(item, ScanReport):
        return "scan"
    if isinstance(item, VerdictRow):
        return "verdict"
    raise TypeError(f"cannot write {type(item).__name__} as CSV")


def csv_text(report, kind: Optional[str] = None) -> str:
    """CSV (CRLF line endings) for a report or a list of reports of one kind."""
    items = list(report) if isinstance(report, (list, tuple)) else [report]
    if kind is None:
        if not items:
            raise ValueError("kind is required for an empty report")
        kind = _kind_of(items[0])
    header, rows = _rows(kind, items)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_csv(report, path: Union[str, os.PathLike, TextIO], kind: Optional[str] = None) -> None:
    text = csv_text(report, kind)
    if isinstance(path, (str, os.PathLike)):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        path.write(text)
