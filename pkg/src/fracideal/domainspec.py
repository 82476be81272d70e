"""Flat key-value domain descriptions.

A description is a sequence of ``key = value`` fields, one or more per line,
with ``#`` comments.  A bare kind word (``quadratic``, ``semigroup``) and a
bare comma list of generators are accepted as shorthand, so the inline form
``semigroup 2,3`` and the file form::

    kind = numerical-semigroup
    generators = 2, 3

describe the same domain.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import FracIdealError
from .numsg import NumSemigroup
from .quadratic import QuadOrder, _squarefree

KINDS = {
    "quadratic": "quadratic",
    "numerical-semigroup": "numerical-semigroup",
    "semigroup": "numerical-semigroup",
    "numsg": "numerical-semigroup",
}
INT_KEYS = ("d", "f", "bound", "samples", "seed")
LIST_KEYS = ("generators", "primes")

_FIELD = re.compile(r"([A-Za-z_][\w-]*)\s*=\s*((?:-?\d+\s*,\s*)*-?\S*)|(\S+)")
_INT_LIST = re.compile(r"^-?\d+(,-?\d+)*,?$")


class SpecParseError(FracIdealError, ValueError):
    """Malformed domain description; ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int, col: int, source: str = "<spec>"):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.source = source


@dataclass(frozen=True)
class DomainSpec:
    kind: str
    d: int | None = None
    f: int = 1
    generators: tuple[int, ...] = ()
    bound: int | None = None
    samples: int | None = None
    seed: int | None = None
    primes: tuple[int, ...] | None = None

    def build(self):
        if self.kind == "quadratic":
            return QuadOrder(self.d, self.f)
        return NumSemigroup(self.generators)

    def echo(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "quadratic":
            out["d"] = self.d
            out["f"] = self.f
        else:
            out["generators"] = list(self.generators)
        for key in ("bound", "samples", "seed"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.primes is not None:
            out["primes"] = list(self.primes)
        return out


def _normalize(text: str) -> str:
    # accept the typographic minus sign
    return text.replace("−", "-")


def _parse_int(value: str, line: int, col: int, source: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise SpecParseError(f"expected an integer, got {value!r}", line, col, source) from None


def _parse_list(value: str, line: int, col: int, source: str) -> tuple[int, ...]:
    compact = value.replace(" ", "")
    if not _INT_LIST.match(compact):
        raise SpecParseError(f"expected a comma-separated integer list, got {value!r}", line, col, source)
    return tuple(int(x) for x in compact.split(",") if x)


def parse_spec(text: str, source: str = "<spec>") -> DomainSpec:
    """Parse a description; every error carries the offending line and column."""
    fields: dict[str, object] = {}
    where: dict[str, tuple[int, int]] = {}
    last = (1, 1)

    def put(key, value, line, col, key_col=None):
        if key in fields:
            raise SpecParseError(f"duplicate key {key!r}", line, key_col or col, source)
        fields[key] = value
        where[key] = (line, col)

    for lineno, raw in enumerate(_normalize(text).splitlines(), start=1):
        body = raw.split("#", 1)[0]
        for m in _FIELD.finditer(body):
            col = m.start() + 1
            last = (lineno, col)
            if m.group(3) is not None:
                word = m.group(3)
                if word.lower() in KINDS:
                    put("kind", KINDS[word.lower()], lineno, col)
                elif _INT_LIST.match(word):
                    put("generators", _parse_list(word, lineno, col, source), lineno, col)
                else:
                    raise SpecParseError(f"unexpected token {word!r}", lineno, col, source)
                continue
            key, value = m.group(1).lower(), m.group(2).strip()
            vcol = m.start(2) + 1
            if not value:
                raise SpecParseError(f"missing value for {key!r}", lineno, vcol, source)
            if key == "kind":
                if value.lower() not in KINDS:
                    raise SpecParseError(f"unknown kind {value!r}", lineno, vcol, source)
                put(key, KINDS[value.lower()], lineno, col)
            elif key in INT_KEYS:
                put(key, _parse_int(value, lineno, vcol, source), lineno, vcol, col)
            elif key in LIST_KEYS:
                put(key, _parse_list(value, lineno, vcol, source), lineno, vcol, col)
            else:
                raise SpecParseError(f"unknown key {key!r}", lineno, col, source)
    return _validate(fields, where, last, source)


def _validate(fields: dict, where: dict, last: tuple[int, int], source: str) -> DomainSpec:
    kind = fields.get("kind")
    if kind is None:
        if "d" in fields:
            kind = "quadratic"
        elif "generators" in fields:
            kind = "numerical-semigroup"
        else:
            raise SpecParseError("cannot tell the domain kind: give kind, d or generators", *last, source)

    def err(key, message):
        return SpecParseError(message, *where.get(key, last), source)

    for key in ("bound", "samples"):
        if key in fields and fields[key] < 0:
            raise err(key, f"{key} must be non-negative")
    if "primes" in fields and any(p < 2 for p in fields["primes"]):
        raise err("primes", "primes must be at least 2")

    common = {k: fields[k] for k in ("bound", "samples", "seed") if k in fields}
    if "primes" in fields:
        common["primes"] = fields["primes"]
    if kind == "quadratic":
        if "generators" in fields:
            raise err("generators", "generators do not apply to a quadratic order")
        if "d" not in fields:
            raise SpecParseError("quadratic order needs d", *last, source)
        d, f = fields["d"], fields.get("f", 1)
        if d in (0, 1) or not _squarefree(d):
            raise err("d", f"d must be squarefree and not 0 or 1; got {d}")
        if f < 1:
            raise err("f", f"f must be a positive integer; got {f}")
        return DomainSpec("quadratic", d=d, f=f, **common)
    for key in ("d", "f"):
        if key in fields:
            raise err(key, f"{key} does not apply to a numerical semigroup")
    if "primes" in fields:
        raise err("primes", "primes apply only to quadratic orders")
    gens = fields.get("generators")
    if not gens:
        raise SpecParseError("numerical semigroup needs generators", *last, source)
    try:
        NumSemigroup(gens)
    except ValueError as exc:
        raise err("generators", str(exc)) from None
    return DomainSpec("numerical-semigroup", generators=tuple(gens), **common)


def load_spec(args: list[str]) -> DomainSpec:
    """A single existing path is read as a file; anything else is an inline description."""
    if len(args) == 1 and Path(args[0]).is_file():
        path = Path(args[0])
        return parse_spec(path.read_text(encoding="utf-8"), source=str(path))
    return parse_spec(" ".join(args), source="<inline>")
