"""Oriented link diagrams as signed PD codes.

A crossing ``X[a,b,c,d]`` lists its four arcs counterclockwise, starting at
the incoming under-strand, so ``a -> c`` is the under-strand.  The over-strand
runs ``d -> b`` on a positive crossing and ``b -> d`` on a negative one.
Orientation of every arc is therefore fixed by the crossing signs; the
component partition lists each component's arcs in traversal order.

Zero-crossing components are arcs that appear in no crossing.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product

__all__ = [
    "Crossing",
    "Diagram",
    "SeifertData",
    "FaceCensus",
    "DiagramError",
    "PDParseError",
    "validate",
    "seifert_circles",
    "faces",
    "nugatory_crossings",
    "is_alternating",
    "writhe",
    "mirror",
    "is_connected_projection",
    "projection_components",
    "canonical_key",
    "isomorphic",
    "reverse_components",
    "parse_pd",
    "format_pd",
    "disjoint_union",
]


class DiagramError(ValueError):
    """Raised when an operation receives an invalid diagram."""


class PDParseError(DiagramError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.slots) != 4:
            raise DiagramError(f"crossing needs 4 slots, got {self.slots!r}")
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.sign!r}")

    @property
    def incoming(self):
        """Slot indices whose arcs end at this crossing."""
        return (0, 3) if self.sign > 0 else (0, 1)

    @property
    def outgoing(self):
        return (2, 1) if self.sign > 0 else (2, 3)

    def switched(self) -> "Crossing":
        a, b, c, d = self.slots
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), 1)

    def __str__(self):
        a, b, c, d = self.slots
        return f"X[{a},{b},{c},{d}] {'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))

    @property
    def arc_count(self) -> int:
        return sum(len(c) for c in self.components)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def free_loops(self) -> int:
        used = {x for cr in self.crossings for x in cr.slots}
        return sum(1 for comp in self.components if not (set(comp) & used))

    def raw(self):
        """Return ``(crossings, free_loops)`` with crossings as 5-tuples."""
        return tuple((*cr.slots, cr.sign) for cr in self.crossings), self.free_loops

    @classmethod
    def from_raw(cls, crossings, loops=0) -> "Diagram":
        """Build a diagram from 5-tuples, deriving and relabeling components."""
        crossings = [Crossing(tuple(c[:4]), c[4]) for c in crossings]
        heads, tails = _ends(crossings)
        comps = []
        seen = set()
        for start in sorted(heads):
            if start in seen:
                continue
            comp = []
            x = start
            while x not in seen:
                seen.add(x)
                comp.append(x)
                if x not in heads:
                    raise DiagramError(f"arc {x} has no head; not a valid oriented code")
                ci, k = heads[x]
                x = crossings[ci].slots[(k + 2) % 4]
            comps.append(comp)
        relabel = {}
        for comp in comps:
            for x in comp:
                relabel[x] = len(relabel) + 1
        new = [Crossing(tuple(relabel[x] for x in cr.slots), cr.sign) for cr in crossings]
        components = [tuple(relabel[x] for x in comp) for comp in comps]
        n = len(relabel)
        components.extend((n + i + 1,) for i in range(loops))
        return cls(tuple(new), tuple(components))

    def __str__(self):
        return format_pd(self)


@dataclass(frozen=True)
class SeifertData:
    circle_count: int
    euler_characteristic: int
    canonical_genus: int
    circles: tuple[frozenset, ...]


@dataclass(frozen=True)
class FaceCensus:
    faces: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def count(self) -> int:
        return len(self.faces)


def _ends(crossings):
    """Map each arc to its head and tail ``(crossing, slot)``."""
    heads, tails = {}, {}
    for i, cr in enumerate(crossings):
        for k in cr.incoming:
            heads[cr.slots[k]] = (i, k)
        for k in cr.outgoing:
            tails[cr.slots[k]] = (i, k)
    return heads, tails


def _positions(crossings):
    pos = defaultdict(list)
    for i, cr in enumerate(crossings):
        for k, x in enumerate(cr.slots):
            pos[x].append((i, k))
    return pos


def _require_valid(d: Diagram):
    report = validate(d)
    if report:
        raise DiagramError("invalid diagram: " + "; ".join(report))


def validate(d: Diagram) -> list[str]:
    """List every invariant violation of ``d``; empty iff ``d`` is valid."""
    problems = []
    try:
        crossings = list(d.crossings)
        comps = [tuple(c) for c in d.components]
    except TypeError as exc:  # pragma: no cover - defensive
        return [f"malformed diagram: {exc}"]
    labels = [x for comp in comps for x in comp]
    counts = defaultdict(int)
    for x in labels:
        counts[x] += 1
    for x, n in sorted(counts.items()):
        if n > 1:
            problems.append(f"arc {x} listed {n} times in component partition")
    if not comps and crossings:
        problems.append("no components given")
    pos = _positions(crossings)
    for x, where in sorted(pos.items()):
        if len(where) != 2:
            problems.append(f"arc multiplicity: arc {x} appears {len(where)} times in crossings (expected 2)")
        if x not in counts:
            problems.append(f"arc {x} is not in any component")
    for x in sorted(counts):
        if x not in pos and any(x in comp and len(comp) > 1 for comp in comps):
            problems.append(f"arc {x} appears in no crossing but its component has other arcs")
    if problems:
        return problems

    heads, tails = _ends(crossings)
    for x in sorted(pos):
        if x not in heads or x not in tails:
            problems.append(f"orientation: arc {x} is not one incoming and one outgoing end")
    if problems:
        return problems

    succ = {}
    for comp in comps:
        for i, x in enumerate(comp):
            succ[x] = comp[(i + 1) % len(comp)]
    for i, cr in enumerate(crossings):
        a, b, c, dd = cr.slots
        if succ.get(a) != c:
            problems.append(f"orientation: crossing {i} under-strand {a}->{c} disagrees with component order")
        fwd = succ.get(dd) == b
        back = succ.get(b) == dd
        if fwd and not back and cr.sign < 0:
            problems.append(f"sign: crossing {i} stored - but component order gives +")
        elif back and not fwd and cr.sign > 0:
            problems.append(f"sign: crossing {i} stored + but component order gives -")
        elif not fwd and not back:
            problems.append(f"orientation: crossing {i} over-strand {dd},{b} disagrees with component order")
    if problems:
        return problems

    for part in projection_components(d):
        sub = [crossings[i] for i in part]
        f = len(_face_orbits(sub))
        if f - len(sub) != 2:
            problems.append(
                f"Euler check: projection piece with {len(sub)} crossings has {f} faces (expected {len(sub) + 2})"
            )
    return problems


def projection_components(d: Diagram) -> list[list[int]]:
    """Crossing indices of each connected piece of the 4-valent projection."""
    crossings = d.crossings
    pos = _positions(crossings)
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for where in pos.values():
        (i, _), (j, _) = where[0], where[-1]
        parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i in range(len(crossings)):
        groups[find(i)].append(i)
    return sorted(groups.values())


def is_connected_projection(d: Diagram) -> bool:
    """True iff the projection graph (free loops included) is connected."""
    pieces = len(projection_components(d)) + d.free_loops
    return pieces <= 1


def _face_orbits(crossings):
    pos = _positions(crossings)

    def other(i, k):
        x = crossings[i].slots[k]
        a, b = pos[x]
        return b if a == (i, k) else a

    seen = set()
    orbits = []
    for i in range(len(crossings)):
        for k in range(4):
            if (i, k) in seen:
                continue
            orbit = []
            corner = (i, k)
            while corner not in seen:
                seen.add(corner)
                orbit.append(corner)
                ci, ck = corner
                corner = other(ci, (ck + 1) % 4)
            orbits.append(tuple(orbit))
    return orbits


def faces(d: Diagram) -> FaceCensus:
    """Complementary regions of a connected projection.

    A corner ``(i, k)`` is the wedge at crossing ``i`` between slots ``k`` and
    ``k+1``.  Leaving through slot ``k+1`` and arriving at slot ``k'`` lands in
    corner ``(j, k')``.
    """
    _require_valid(d)
    if not d.crossings:
        if d.component_count == 1:
            return FaceCensus(((), ()))
        raise DiagramError("projection is disconnected; take a census of each piece separately")
    if not is_connected_projection(d):
        raise DiagramError("projection is disconnected; take a census of each piece separately")
    return FaceCensus(tuple(_face_orbits(list(d.crossings))))


def nugatory_crossings(d: Diagram) -> list[int]:
    _require_valid(d)
    crossings = list(d.crossings)
    face_of = {}
    for n, orbit in enumerate(_face_orbits(crossings)):
        for corner in orbit:
            face_of[corner] = n
    return [
        i
        for i in range(len(crossings))
        if face_of[(i, 0)] == face_of[(i, 2)] or face_of[(i, 1)] == face_of[(i, 3)]
    ]


def is_alternating(d: Diagram) -> bool:
    # over slots are odd; every arc must leave on one level and arrive on the other
    _require_valid(d)
    heads, tails = _ends(d.crossings)
    return all(heads[x][1] % 2 != tails[x][1] % 2 for x in heads)


def seifert_circles(d: Diagram) -> SeifertData:
    _require_valid(d)
    crossings = d.crossings
    heads, _ = _ends(crossings)
    # oriented smoothing: incoming under joins the outgoing over, and vice versa
    turn = {1: {0: 1, 3: 2}, -1: {0: 3, 1: 2}}
    seen = set()
    circles = []
    for start in sorted(heads):
        if start in seen:
            continue
        circle = []
        x = start
        while x not in seen:
            seen.add(x)
            circle.append(x)
            i, k = heads[x]
            cr = crossings[i]
            x = cr.slots[turn[cr.sign][k]]
        circles.append(frozenset(circle))
    used = set(heads)
    for comp in d.components:
        if not set(comp) & used:
            circles.append(frozenset(comp))
    s = len(circles)
    chi = s - len(crossings)
    genus2 = 2 - d.component_count - chi
    return SeifertData(s, chi, genus2 // 2, tuple(circles))


def writhe(d: Diagram) -> int:
    return sum(cr.sign for cr in d.crossings)


def mirror(d: Diagram) -> Diagram:
    """Swap over and under at every crossing.  Arc labels are unchanged."""
    return Diagram(tuple(cr.switched() for cr in d.crossings), d.components)


def reverse_components(d: Diagram, which) -> Diagram:
    """Reverse the orientation of the components with the given indices."""
    which = set(which)
    flip = {x for n, comp in enumerate(d.components) if n in which for x in comp}
    new = []
    for cr in d.crossings:
        a, b, c, dd = cr.slots
        under_flip = a in flip
        over_flip = b in flip
        if under_flip:
            a, b, c, dd = c, dd, a, b
        sign = cr.sign * (-1 if under_flip != over_flip else 1)
        new.append((a, b, c, dd, sign))
    comps = [
        tuple(reversed(comp)) if n in which else comp for n, comp in enumerate(d.components)
    ]
    # relabel so that each component again reads in increasing traversal order
    relabel = {}
    for comp in comps:
        for x in comp:
            relabel[x] = len(relabel) + 1
    return Diagram(
        tuple(Crossing(tuple(relabel[x] for x in c[:4]), c[4]) for c in new),
        tuple(tuple(relabel[x] for x in comp) for comp in comps),
    )


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    shift = max((x for comp in d1.components for x in comp), default=0)
    crossings = list(d1.crossings) + [
        Crossing(tuple(x + shift for x in cr.slots), cr.sign) for cr in d2.crossings
    ]
    comps = list(d1.components) + [tuple(x + shift for x in comp) for comp in d2.components]
    return Diagram(tuple(crossings), tuple(comps))


# --- canonical form ---------------------------------------------------------


def raw_canonical_key(crossings) -> tuple:
    """Canonical code of a connected raw diagram (tuples ``(a,b,c,d,sign)``).

    Tries every arc as the starting point; from a start arc the labeling is
    forced (walk the component, then open the first unlabeled arc met at the
    earliest visited crossing).  The lexicographically least code wins.
    """
    if not crossings:
        return ()
    heads = {}
    at = {}
    for i, c in enumerate(crossings):
        a, b, cc, d, s = c
        heads[a] = (i, 0)
        if s > 0:
            heads[d] = (i, 3)
        else:
            heads[b] = (i, 1)
        at[i] = (a, b, cc, d)
    best = None
    for start in heads:
        label = {}
        order = []
        visited = set()
        nxt = 1
        pending = start
        while pending is not None:
            x = pending
            while x not in label:
                label[x] = nxt
                nxt += 1
                i, k = heads[x]
                if i not in visited:
                    visited.add(i)
                    order.append(i)
                x = at[i][(k + 2) % 4]
            pending = None
            for i in order:
                for y in at[i]:
                    if y not in label:
                        pending = y
                        break
                if pending is not None:
                    break
        code = tuple(sorted((label[c[0]], label[c[1]], label[c[2]], label[c[3]], c[4]) for c in crossings))
        if best is None or code < best:
            best = code
    return best


def canonical_key(d: Diagram, oriented: bool = True) -> tuple:
    """Relabeling-invariant key; equal keys iff the diagrams are isomorphic.

    With ``oriented=False`` the key is also invariant under reversing any
    subset of components.
    """
    if not oriented:
        k = d.component_count
        return min(
            canonical_key(reverse_components(d, [i for i in range(k) if mask[i]]))
            for mask in product((False, True), repeat=k)
        )
    crossings = d.crossings
    pieces = []
    for part in projection_components(d):
        pieces.append(raw_canonical_key(tuple((*crossings[i].slots, crossings[i].sign) for i in part)))
    return (tuple(sorted(pieces)), d.free_loops)


def isomorphic(d1: Diagram, d2: Diagram, oriented: bool = True) -> bool:
    if d1.crossing_count != d2.crossing_count or d1.component_count != d2.component_count:
        return False
    return canonical_key(d1, oriented) == canonical_key(d2, oriented)


# --- PD text format ---------------------------------------------------------

_CROSSING_RE = re.compile(r"^X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*([+-])$")
_COMPONENTS_RE = re.compile(r"^C:\s*((?:\(\s*(?:\d+\s*)*\)\s*)*)$")


def format_pd(d: Diagram) -> str:
    comps = "".join("(" + " ".join(str(x) for x in comp) + ")" for comp in d.components)
    lines = [f"C: {comps}"]
    lines.extend(str(cr) for cr in d.crossings)
    return "\n".join(lines) + "\n"


def parse_pd(text: str) -> Diagram:
    """Parse the PD text format; see FORMATS.md for the grammar."""
    components = None
    crossings = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw_line.find(line[0]) + 1
        if line.startswith("C:"):
            if components is not None:
                raise PDParseError("duplicate component header", lineno, col)
            m = _COMPONENTS_RE.match(line)
            if not m:
                raise PDParseError(f"malformed component header {line!r}", lineno, col)
            components = [
                tuple(int(x) for x in grp.split()) for grp in re.findall(r"\(([^)]*)\)", m.group(1))
            ]
            if any(not comp for comp in components):
                raise PDParseError("empty component", lineno, col)
            continue
        m = _CROSSING_RE.match(line)
        if not m:
            raise PDParseError(f"expected 'X[a,b,c,d] +|-', got {line!r}", lineno, col)
        slots = tuple(int(m.group(i)) for i in range(1, 5))
        sign = 1 if m.group(5) == "+" else -1
        crossings.append(Crossing(slots, sign))
    if components is None:
        raise PDParseError("missing component header 'C: (...)'")
    d = Diagram(tuple(crossings), tuple(components))
    report = validate(d)
    if report:
        raise PDParseError("invalid diagram: " + "; ".join(report))
    return d
