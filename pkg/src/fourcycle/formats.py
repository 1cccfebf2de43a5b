"""Text and JSON interchange: model matrices, CSS descriptors, CSV metadata."""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__
from .construct import CssCandidate
from .model import INF, ModelMatrix
from .numtheory import mult_order
from .perfume import Perfume, make_perfume


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)
        self.line = line


def _token(tok: str, line: int, source: str | None):
    if tok.lower() in ("inf", "∞", "-1"):
        return INF
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad entry {tok!r}", line, source) from None


def format_model(mc: ModelMatrix) -> str:
    """``J L P`` header then one whitespace-separated line per row; ``inf`` for zero blocks."""
    return f"{mc.J} {mc.L} {mc.P}\n{mc}\n"


def parse_model(text: str, source: str | None = None) -> ModelMatrix:
    """Inverse of :func:`format_model`.  Blank lines and ``#`` comments are skipped;
    ``-1`` is read as ``inf``."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, t) for i, t in lines if t and not t[0].startswith("#")]
    if not lines:
        raise ParseError("empty model matrix", None, source)
    lineno, head = lines[0]
    if len(head) != 3:
        raise ParseError("header must be 'J L P'", lineno, source)
    try:
        J, L, P = map(int, head)
    except ValueError:
        raise ParseError("header must be three integers 'J L P'", lineno, source) from None
    if J < 1 or L < 1 or P < 1:
        raise ParseError("J, L and P must be positive", lineno, source)
    body = lines[1:]
    if len(body) != J:
        raise ParseError(f"expected {J} rows, found {len(body)}", body[-1][0] if body else lineno, source)
    rows = []
    for lineno, toks in body:
        if len(toks) != L:
            raise ParseError(f"expected {L} entries, found {len(toks)}", lineno, source)
        row = [_token(t, lineno, source) for t in toks]
        for x in row:
            if x != INF and not 0 <= x < P:
                raise ParseError(f"entry {x} outside [0, {P - 1}]", lineno, source)
        rows.append(row)
    return ModelMatrix.from_rows(rows, P)


def read_model(path: str | Path) -> ModelMatrix:
    return parse_model(Path(path).read_text(), str(path))


def _rows_out(mc: ModelMatrix) -> list[list]:
    return [["inf" if x == INF else x for x in r] for r in mc.entries]


def descriptor(cand: CssCandidate, verification: dict | None = None, config: dict | None = None) -> dict:
    """JSON-ready descriptor ``{P, sigma, tau, L, mask_C, mask_D, rows_C, rows_D}`` plus metadata."""
    t = cand.perfume.order
    mask_C = list(cand.mask_C) if cand.mask_C else [1] * cand.J + [0] * (t - cand.J)
    mask_D = list(cand.mask_D) if cand.mask_D else [1] * cand.K + [0] * (t - cand.K)
    d = {
        "P": cand.P,
        "sigma": cand.perfume.sigma,
        "tau": cand.perfume.tau,
        "L": cand.L,
        "mask_C": mask_C,
        "mask_D": mask_D,
        "rows_C": _rows_out(cand.mc),
        "rows_D": _rows_out(cand.md),
    }
    if verification is not None:
        d["verification"] = verification
    d["metadata"] = {"tool": "fourcycle", "version": __version__, "config": config or {}}
    return d


def dumps_descriptor(d: dict) -> str:
    return json.dumps(d, indent=2) + "\n"


def load_descriptor(obj: dict | str | Path, validate_perfume: bool = False) -> CssCandidate:
    """Rebuild a candidate from a descriptor; the perfume is re-derived from ``(P, sigma, tau)``."""
    if not isinstance(obj, dict):
        try:
            obj = json.loads(Path(obj).read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, str(obj)) from None
    try:
        P, sigma, tau = int(obj["P"]), int(obj["sigma"]), int(obj["tau"])
        rows_C, rows_D = obj["rows_C"], obj["rows_D"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"descriptor missing or bad field: {exc}") from None

    def conv(rows):
        return [[INF if str(x).lower() == "inf" else int(x) for x in r] for r in rows]

    mc, md = ModelMatrix.from_rows(conv(rows_C), P), ModelMatrix.from_rows(conv(rows_D), P)
    if validate_perfume:
        pf = make_perfume(P, sigma, tau)
    else:
        try:
            order = mult_order(sigma, P)
        except ValueError:
            order = mc.L // 2
        pf = Perfume(P, sigma % P, tau % P, order)
    mask_C = tuple(obj["mask_C"]) if obj.get("mask_C") is not None else None
    mask_D = tuple(obj["mask_D"]) if obj.get("mask_D") is not None else None
    return CssCandidate(pf, mc, md, mask_C, mask_D)


def csv_with_metadata(body: str, config: dict) -> str:
    """Prefix a CSV body with ``#`` comment lines carrying the tool version and config."""
    meta = [f"# fourcycle {__version__}"]
    meta += [f"# {k}={v}" for k, v in config.items()]
    return "\n".join(meta) + "\n" + body


def strip_comments(text: str) -> str:
    return "".join(ln for ln in text.splitlines(keepends=True) if not ln.startswith("#"))
