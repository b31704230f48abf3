"""Text format for stripped surfaces: parser, canonical serializer, JSON.

The format is line oriented::

    strip A
      bottom (-2,2)
      top (-1/2,5) (6,7)
    glue A.top[0] ~ A.bottom[0] +

A ``top``/``bottom`` line attaches to the most recent ``strip``
declaration.  In a glue line the left reference is the domain of the
affine identification and the right one its image.  Rationals are
integers or ``p/q``; decimal literals are rejected to keep the data
exact.  The serializer emits a canonical form (strips sorted by id,
bottom before top, gluings sorted by source reference), so
``serialize(parse(text))`` is idempotent and byte-stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .model import (
    GluingSign,
    IntervalRef,
    ModelStrip,
    Rational,
    Side,
    StrippedSurface,
    make_surface,
    validate_surface,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    code: str  # SYNTAX | UNKNOWN_REF | DUPLICATE_ID | BAD_RATIONAL
    message: str

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.code}: {self.message}"


ParseResult = Union[StrippedSurface, "list[ParseError]"]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RATIONAL = re.compile(r"-?\d+(/\d+)?")
_DECIMAL = re.compile(r"-?\d+\.\d*")
_INTERVAL = re.compile(
    r"\(\s*(?P<a>-?[\d./]+)\s*,\s*(?P<b>-?[\d./]+)\s*\)"
)
_GLUE = re.compile(
    r"glue\s+(?P<src>\S+)\s*~\s*(?P<dst>\S+)\s+(?P<sign>[+-])\s*$"
)
_REF = re.compile(r"(?P<strip>[A-Za-z_][A-Za-z0-9_]*)\.(?P<side>top|bottom)\[(?P<idx>\d+)\]$")


def _parse_rational(token: str, line_no: int, col: int, errors: list[ParseError]) -> Rational | None:
    if _DECIMAL.fullmatch(token):
        errors.append(
            ParseError(
                SourceSpan(line_no, col, len(token)),
                "BAD_RATIONAL",
                f"decimal literal {token!r} rejected; use p/q",
            )
        )
        return None
    if not _RATIONAL.fullmatch(token):
        errors.append(
            ParseError(SourceSpan(line_no, col, len(token)), "BAD_RATIONAL", f"malformed rational {token!r}")
        )
        return None
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            errors.append(
                ParseError(SourceSpan(line_no, col, len(token)), "BAD_RATIONAL", "zero denominator")
            )
            return None
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def parse_surface(text: str) -> ParseResult:
    """Parse surface text; returns the surface or all recoverable errors.

    Never raises on malformed input.  On success the result passes
    validate_surface: semantic problems (touching closures, interval
    reuse, self-pairs, ...) are reported as SYNTAX errors carrying the
    validator's issue code in the message.
    """
    errors: list[ParseError] = []
    strips: list[ModelStrip] = []
    strip_lines: dict[str, int] = {}
    sides: dict[str, dict[Side, list[tuple[Rational, Rational]]]] = {}
    current: str | None = None
    glue_specs: list[tuple[str, str, str, int, str]] = []  # src, dst, sign, line, raw line text

    # Unicode minus is accepted as a one-character synonym of '-'.
    lines = text.replace("−", "-").splitlines()
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        indent = len(raw) - len(raw.lstrip())
        if not line:
            continue
        word = line.split()[0]
        if word == "strip":
            rest = line[len("strip"):].strip()
            if not _IDENT.fullmatch(rest):
                errors.append(
                    ParseError(SourceSpan(line_no, 1, len(raw)), "SYNTAX", f"expected 'strip IDENT', got {line!r}")
                )
                current = None
                continue
            if rest in sides:
                errors.append(
                    ParseError(
                        SourceSpan(line_no, indent + len("strip ") + 1, len(rest)),
                        "DUPLICATE_ID",
                        f"strip {rest!r} already declared on line {strip_lines[rest]}",
                    )
                )
                current = rest
                continue
            sides[rest] = {Side.MINUS: [], Side.PLUS: []}
            strip_lines[rest] = line_no
            current = rest
        elif word in ("top", "bottom"):
            if current is None:
                errors.append(
                    ParseError(SourceSpan(line_no, 1, len(raw)), "SYNTAX", f"{word!r} line outside a strip declaration")
                )
                continue
            body = line[len(word):]
            matches = list(_INTERVAL.finditer(body))
            leftover = _INTERVAL.sub("", body).strip()
            if leftover or not matches:
                errors.append(
                    ParseError(SourceSpan(line_no, 1, len(raw)), "SYNTAX", f"expected '({word} (a,b))+', got {line!r}")
                )
                continue
            base_col = indent + len(word) + 1
            for m in matches:
                a = _parse_rational(m.group("a"), line_no, base_col + m.start("a"), errors)
                b = _parse_rational(m.group("b"), line_no, base_col + m.start("b"), errors)
                if a is not None and b is not None:
                    sides[current][Side.from_name(word)].append((a, b))
        elif word == "glue":
            m = _GLUE.fullmatch(line)
            if not m:
                errors.append(
                    ParseError(SourceSpan(line_no, 1, len(raw)), "SYNTAX", f"expected 'glue REF ~ REF SIGN', got {line!r}")
                )
                continue
            glue_specs.append((m.group("src"), m.group("dst"), m.group("sign"), line_no, raw))
            current = None
        else:
            errors.append(
                ParseError(SourceSpan(line_no, 1, len(raw)), "SYNTAX", f"unrecognised directive {word!r}")
            )
            current = None

    for sid in sides:
        strips.append(
            ModelStrip(sid, bottom=tuple(sides[sid][Side.MINUS]), top=tuple(sides[sid][Side.PLUS]))
        )

    gluings: list[tuple[IntervalRef, IntervalRef, GluingSign]] = []
    glue_lines: dict[str, int] = {}
    surface_so_far = make_surface(strips)
    for src_txt, dst_txt, sign_txt, line_no, raw in glue_specs:
        refs: list[IntervalRef] = []
        bad = False
        for token in (src_txt, dst_txt):
            m = _REF.fullmatch(token)
            col = raw.find(token) + 1
            if not m:
                errors.append(
                    ParseError(SourceSpan(line_no, col, len(token)), "SYNTAX", f"malformed reference {token!r}")
                )
                bad = True
                continue
            ref = IntervalRef(m.group("strip"), Side.from_name(m.group("side")), int(m.group("idx")))
            if not surface_so_far.has_interval(ref):
                errors.append(
                    ParseError(SourceSpan(line_no, col, len(token)), "UNKNOWN_REF", f"no such interval {token}")
                )
                bad = True
                continue
            refs.append(ref)
        if not bad:
            gluings.append((refs[0], refs[1], GluingSign.from_char(sign_txt)))
            glue_lines[f"{refs[0]}~{refs[1]}"] = line_no

    if errors:
        return errors

    surface = make_surface(strips, gluings)
    diag = validate_surface(surface)
    if not diag.ok:
        for issue in diag.issues:
            # Map the offending reference back to a line when possible.
            line_no = 1
            if issue.ref:
                strip_id = issue.ref.split(".", 1)[0]
                line_no = strip_lines.get(strip_id, 1)
            g = next((g for g in surface.gluings if issue.ref in (str(g.src), str(g.dst))), None)
            if g is not None:
                line_no = glue_lines.get(g.id, line_no)
            errors.append(
                ParseError(SourceSpan(line_no, 1, 1), "SYNTAX", f"{issue.code}: {issue.message}")
            )
        return errors
    return surface


def _fmt_rational(q: Rational) -> str:
    return str(q)


def _fmt_interval(pair: tuple[Rational, Rational]) -> str:
    return f"({_fmt_rational(pair[0])},{_fmt_rational(pair[1])})"


def serialize_surface(surface: StrippedSurface) -> str:
    """Canonical text form; parse(serialize(s)) == s up to provenance ids."""
    out: list[str] = []
    for sid in sorted(surface.strips):
        strip = surface.strips[sid]
        out.append(f"strip {sid}")
        for side in (Side.MINUS, Side.PLUS):
            intervals = strip.side_intervals(side)
            if intervals:
                out.append(f"  {side.value} " + " ".join(_fmt_interval(p) for p in intervals))
    for g in sorted(surface.gluings, key=lambda g: g.src.sort_key):
        out.append(f"glue {g.src} ~ {g.dst} {g.sign.value}")
    return "\n".join(out) + ("\n" if out else "")


def _rational_obj(q: Rational) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def surface_to_obj(surface: StrippedSurface) -> dict:
    """JSON-ready dict with deterministic key and element ordering."""
    strips_obj = {}
    for sid in sorted(surface.strips):
        strip = surface.strips[sid]
        strips_obj[sid] = {
            "bottom": [{"a": _rational_obj(a), "b": _rational_obj(b)} for a, b in strip.bottom],
            "top": [{"a": _rational_obj(a), "b": _rational_obj(b)} for a, b in strip.top],
        }
    gluings_obj = [
        {"id": g.id, "src": str(g.src), "dst": str(g.dst), "sign": g.sign.value}
        for g in sorted(surface.gluings, key=lambda g: g.src.sort_key)
    ]
    provenance_obj = {
        str(ref): surface.provenance[ref]
        for ref in sorted(surface.provenance, key=lambda r: r.sort_key)
    }
    return {"strips": strips_obj, "gluings": gluings_obj, "provenance": provenance_obj}


def emit_json(surface: StrippedSurface) -> str:
    return json.dumps(surface_to_obj(surface), indent=2) + "\n"
