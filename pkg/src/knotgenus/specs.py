"""Spec strings naming constructed diagrams.

Grammar::

    spec     := stage ("/" stage)*
    stage    := name [":" args]
    args     := arg ("," arg)*

The first stage builds a diagram (``unknot``, ``unlink:2``, ``kink:+``,
``torus2:5``, ``pretzel:3,1,1``, ``fourplat:2,1,1``); later stages transform
it (``mirror``, ``double:flat,n=1``, ``double:wh,n=0,clasp=+,site=3,hidden``,
``twist:0``, ``switch:2``, ``smooth:1``).
"""

from __future__ import annotations

from . import constructors as C
from .diagram import DiagramError, mirror

__all__ = ["SpecError", "build_spec", "parse_spec"]


class SpecError(ValueError):
    def __init__(self, message, column):
        self.column = column
        super().__init__(f"column {column}: {message}")


def parse_spec(text: str):
    """Split into ``[(name, positional, keyword, column), ...]``."""
    stages = []
    col = 1
    for chunk in text.split("/"):
        name, _, rest = chunk.partition(":")
        name = name.strip()
        if not name:
            raise SpecError("empty stage", col)
        pos, kw = [], {}
        acol = col + len(chunk.split(":")[0]) + 1
        if rest.strip():
            for item in rest.split(","):
                item_s = item.strip()
                if not item_s:
                    raise SpecError("empty argument", acol)
                if "=" in item_s:
                    k, _, v = item_s.partition("=")
                    kw[k.strip()] = (v.strip(), acol)
                else:
                    pos.append((item_s, acol))
                acol += len(item) + 1
        stages.append((name, pos, kw, col))
        col += len(chunk) + 1
    return stages


def _int(tok):
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"expected an integer, got {text!r}", col) from None


def _sign(tok):
    text, col = tok
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise SpecError(f"expected + or -, got {text!r}", col)


def _ints(pos, name, col, at_least=1):
    if len(pos) < at_least:
        raise SpecError(f"{name} needs at least {at_least} integer argument(s)", col)
    return tuple(_int(t) for t in pos)


def _no_kw(kw, name):
    for k, (_, c) in kw.items():
        raise SpecError(f"{name} takes no option {k!r}", c)


def _base(name, pos, kw, col):
    _no_kw(kw, name)
    if name == "unknot":
        return C.unknot()
    if name == "unlink":
        return C.unlink(_ints(pos, name, col)[0])
    if name == "kink":
        return C.kink(_sign(pos[0]) if pos else 1)
    if name == "torus2":
        (n,) = _ints(pos, name, col)[:1]
        return C.torus2(n)
    if name == "pretzel":
        return C.pretzel(_ints(pos, name, col))
    if name == "fourplat":
        return C.four_plat(_ints(pos, name, col))
    return None


def _double(d, pos, kw, col):
    if not pos:
        raise SpecError("double needs a kind: flat or wh", col)
    kind, kcol = pos[0]
    for _, c in pos[1:]:
        raise SpecError("unexpected positional argument", c)
    opts = dict(kw)
    hidden = False
    if "hidden" in opts:
        hidden = opts.pop("hidden")[0] not in ("0", "false", "no")
    n = _int(opts.pop("n")) if "n" in opts else 0
    site = _int(opts.pop("site")) if "site" in opts else None
    clasp = opts.pop("clasp")[0] if "clasp" in opts else "+"
    for k, (_, c) in opts.items():
        raise SpecError(f"unknown double option {k!r}", c)
    if kind == "flat":
        return C.flat_double(d, n, site=site, hidden=hidden)
    if kind in ("wh", "whitehead"):
        return C.whitehead_double(d, n, clasp, site=site, hidden=hidden)
    raise SpecError(f"unknown double kind {kind!r}", kcol)


def build_spec(text: str):
    """Build the diagram named by ``text``.

    Raises :class:`SpecError` (with a column) on syntax problems and
    ``DiagramError`` when a constructor rejects its arguments.
    """
    stages = parse_spec(text)
    name, pos, kw, col = stages[0]
    try:
        d = _base(name, pos, kw, col)
    except DiagramError as exc:
        raise SpecError(str(exc), col) from None
    if d is None:
        raise SpecError(f"unknown constructor {name!r}", col)
    for name, pos, kw, col in stages[1:]:
        # bare "hidden" arrives as a positional token
        flags = [t for t in pos if t[0] == "hidden"]
        pos = [t for t in pos if t[0] != "hidden"]
        if flags:
            kw = dict(kw, hidden=("1", flags[0][1]))
        try:
            if name == "mirror":
                d = mirror(d)
            elif name == "double":
                d = _double(d, pos, kw, col)
            elif name == "twist":
                d = C.twist_replace(d, _ints(pos, name, col)[0])
            elif name == "switch":
                d = C.switch(d, _ints(pos, name, col)[0])
            elif name == "smooth":
                d = C.smooth(d, _ints(pos, name, col)[0])
            else:
                raise SpecError(f"unknown transform {name!r}", col)
        except (DiagramError, IndexError) as exc:
            raise SpecError(str(exc), col) from None
    return d
