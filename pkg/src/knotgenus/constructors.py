"""Diagram families and diagram surgery.

Morse-style constructions run top to bottom over strand positions numbered
left to right.  A crossing kind names the diagonal that passes over:
``"nesw"`` is a right-handed half-twist, ``"nwse"`` a left-handed one.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._planar import NE, NW, SE, SW, PlanarBuilder, from_diagram
from .diagram import (
    Diagram,
    DiagramError,
    _face_orbits,
    canonical_key,
    isomorphic,
    reverse_components,
    validate,
)

__all__ = [
    "PretzelSpec",
    "FourPlatWord",
    "DoubleSpec",
    "unknot",
    "unlink",
    "kink",
    "pretzel",
    "pretzel_is_knot",
    "torus2",
    "four_plat",
    "twist_replace",
    "half_to_full",
    "full_to_half",
    "twist_bigons",
    "flat_double",
    "whitehead_double",
    "switch",
    "smooth",
    "deflation_path",
    "DeflationMove",
    "replay",
    "parallel_axis",
    "antiparallel_axis",
]

RIGHT, LEFT = "nesw", "nwse"


@dataclass(frozen=True)
class PretzelSpec:
    twists: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        if not self.twists:
            raise DiagramError("a pretzel needs at least one band")
        if any(k == 0 for k in self.twists):
            raise DiagramError("pretzel twists must be nonzero")


@dataclass(frozen=True)
class FourPlatWord:
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if len(self.exponents) % 2 == 0:
            raise DiagramError("a 4-plat word needs an odd number of blocks")
        if any(a < 1 for a in self.exponents):
            raise DiagramError("4-plat exponents must be positive")


@dataclass(frozen=True)
class DoubleSpec:
    full_twists: int = 0
    clasp: str | None = None

    def __post_init__(self):
        if self.clasp not in (None, "+", "-"):
            raise DiagramError(f"clasp must be None, '+' or '-', got {self.clasp!r}")


def unknot() -> Diagram:
    return Diagram((), ((1,),))


def unlink(k: int) -> Diagram:
    if k < 1:
        raise DiagramError("an unlink needs at least one component")
    return Diagram((), tuple((i + 1,) for i in range(k)))


def kink(sign: int = 1) -> Diagram:
    """One-crossing diagram of the unknot."""
    return Diagram.from_raw([(1, 1, 2, 2, 1) if sign > 0 else (1, 2, 2, 1, -1)])


def _check(d: Diagram) -> Diagram:
    report = validate(d)
    if report:  # pragma: no cover - constructor bug
        raise DiagramError("constructor produced an invalid diagram: " + "; ".join(report))
    return d


def pretzel_is_knot(twists) -> bool:
    n = len(twists)
    evens = sum(1 for k in twists if k % 2 == 0)
    return (n % 2 == 1 and evens <= 1) or (n % 2 == 0 and evens == 1)


def pretzel(spec) -> Diagram:
    """Standard pretzel diagram: vertical bands closed top and bottom.

    Positive entries twist like the crossings of ``torus2``, so
    ``pretzel((1, 1, 1))`` is ``torus2(3)`` turned sideways.  A two-band
    pretzel is a single vertical chain of bigons, so ``pretzel((a, b))`` is
    the mirror of ``torus2(a + b)``.  For links, component
    orientations are chosen to make as many bands antiparallel as possible.
    """
    if not isinstance(spec, PretzelSpec):
        spec = PretzelSpec(tuple(spec))
    ks = spec.twists
    n = len(ks)
    b = PlanarBuilder()
    pos = []
    b.cap(pos, 0)
    for _ in range(n - 1):
        b.cap(pos, len(pos) - 1)
    bands = []
    for i, k in enumerate(ks):
        first = len(b.overs)
        for _ in range(abs(k)):
            b.cross(pos, 2 * i, LEFT if k > 0 else RIGHT)
        bands.append(first)
    for _ in range(n - 1):
        b.cup(pos, 1)
    b.cup(pos, 0)
    d, rot = b.to_diagram()
    if d.component_count > 1:
        d = _best_pretzel_orientation(d, bands, rot)
    return _check(d)


def _best_pretzel_orientation(d, bands, rot):
    """Reverse components so that as many bands as possible are antiparallel."""
    from itertools import product

    comp_of = {x: n for n, comp in enumerate(d.components) for x in comp}
    info = []
    for i in bands:
        cr = d.crossings[i]
        inc = set(cr.incoming)
        # band strands enter from the top at builder stubs NW and NE
        anti = (((NW - rot[i]) % 4) in inc) != (((NE - rot[i]) % 4) in inc)
        info.append((anti, comp_of[cr.slots[0]], comp_of[cr.slots[1]]))
    best_score, best = -1, ()
    for mask in product((False, True), repeat=d.component_count - 1):
        flipped = {0: False, **{j + 1: m for j, m in enumerate(mask)}}
        score = sum(anti != (flipped[u] != flipped[o]) for anti, u, o in info)
        if score > best_score:
            best_score, best = score, [j for j, m in flipped.items() if m]
    return reverse_components(d, best) if best else d


def torus2(n: int) -> Diagram:
    """Closed positive 2-braid with ``n`` crossings."""
    if n < 2:
        raise DiagramError("torus2 needs n >= 2")
    b = PlanarBuilder()
    pos = []
    b.cap(pos, 0)
    b.cap(pos, 1)
    for _ in range(n):
        c = b.cross(pos, 2, RIGHT)
        b.hint(c, NW, True)
        b.hint(c, NE, True)
    b.cup(pos, 1)
    b.cup(pos, 0)
    d, _ = b.to_diagram(strict=True)
    return _check(d)


def _four_plat(word):
    if not isinstance(word, FourPlatWord):
        word = FourPlatWord(tuple(word))
    b = PlanarBuilder()
    pos = []
    b.cap(pos, 0)
    b.cap(pos, 2)
    blocks = []
    for j, a in enumerate(word.exponents):
        at = 1 if j % 2 == 0 else 0
        kind = RIGHT if j % 2 == 0 else LEFT
        blocks.append(list(range(len(b.overs), len(b.overs) + a)))
        for _ in range(a):
            b.cross(pos, at, kind)
    b.cup(pos, 0)
    b.cup(pos, 0)
    d, rot = b.to_diagram()
    return _check(d), blocks, rot


def four_plat(word) -> Diagram:
    """Alternating 4-plat of ``s2^a1 s1^-a2 ... s2^am`` with plat closure."""
    return _four_plat(word)[0]


# --- twist surgery ----------------------------------------------------------


def parallel_axis(d: Diagram, i: int) -> str:
    """Axis along which the two strands of crossing ``i`` run the same way.

    Axis ``"A"`` has ends at slots {0,1} and {2,3}; axis ``"B"`` at {1,2} and {3,0}.
    """
    return "B" if d.crossings[i].sign > 0 else "A"


def antiparallel_axis(d: Diagram, i: int) -> str:
    return "A" if d.crossings[i].sign > 0 else "B"


def _twist_region(b, top, bottom, count, kind):
    """Insert ``count`` half-twists of ``kind`` between port pairs."""
    pos = list(top)
    made = []
    for _ in range(count):
        made.append(b.cross(pos, 0, kind))
    b.link(pos[0], bottom[0])
    b.link(pos[1], bottom[1])
    return made


def _replace(d: Diagram, i: int, count: int, axis: str) -> Diagram:
    if not 0 <= i < d.crossing_count:
        raise DiagramError(f"crossing index {i} out of range")
    if axis not in ("A", "B"):
        raise DiagramError(f"axis must be 'A' or 'B', got {axis!r}")
    off = 2 if axis == "A" else 1
    b, _, ports = from_diagram(d, skip=[i])
    tr, tl, bl, br = (ports[(i, (off + j) % 4)] for j in range(4))
    kind = RIGHT if off % 2 == 1 else LEFT
    _twist_region(b, (tl, tr), (bl, br), count, kind)
    out, _ = b.to_diagram()
    return _check(out)


def twist_replace(d: Diagram, i: int, axis: str | None = None) -> Diagram:
    """Replace crossing ``i`` by three half-twists of the same handedness.

    The default axis is the one along which the two strands run in opposite
    directions, so a knot stays a knot.
    """
    return _replace(d, i, 3, axis or antiparallel_axis(d, i))


def half_to_full(d: Diagram, i: int, axis: str | None = None) -> Diagram:
    """Replace crossing ``i`` by a full twist (two crossings).

    The default axis runs the strands in parallel, which keeps every
    orientation; on a knot this always yields a 2-component link.
    """
    return _replace(d, i, 2, axis or parallel_axis(d, i))


def twist_bigons(d: Diagram) -> list[tuple[int, int, int]]:
    """Bigon faces whose two crossings form a twist (not a Reidemeister II pair).

    Each entry is ``(c1, i, c2)``: the bigon is corner ``i`` of crossing ``c1``.
    """
    crossings = list(d.crossings)
    out = []
    for orbit in _face_orbits(crossings):
        if len(orbit) != 2:
            continue
        (c1, i), (c2, j) = orbit
        if c1 == c2:
            continue
        if (i + 1) % 2 != j % 2:
            out.append((c1, i, c2))
    return sorted(out)


def full_to_half(d: Diagram, c1: int, i: int, c2: int):
    """Merge the twist bigon at corner ``(c1, i)`` into one crossing.

    Returns ``(diagram, index, axis)`` such that ``half_to_full(diagram,
    index, axis)`` rebuilds ``d`` up to orientation.
    """
    crossings = list(d.crossings)
    orbit = next(o for o in _face_orbits(crossings) if (c1, i) in o)
    if len(orbit) != 2 or c1 == c2:
        raise DiagramError("corner is not a bigon between two crossings")
    (_, _), (_, j) = orbit if orbit[0] == (c1, i) else orbit[::-1]
    if (i + 1) % 2 == j % 2:
        raise DiagramError("bigon is a Reidemeister II pair, not a twist")
    b, _, ports = from_diagram(d, skip=[c1, c2])
    tr, tl = ports[(c1, (i + 2) % 4)], ports[(c1, (i + 3) % 4)]
    bl, br = ports[(c2, (j + 2) % 4)], ports[(c2, (j + 3) % 4)]
    # the two bigon arcs disappear with their crossings
    for key in ((c1, i), (c1, (i + 1) % 4), (c2, j), (c2, (j + 1) % 4)):
        b.drop(ports[key])
    kind = RIGHT if i % 2 == 1 else LEFT
    (new,) = _twist_region(b, (tl, tr), (bl, br), 1, kind)
    out, rot = b.to_diagram()
    axis = "A" if rot[new] % 2 == 0 else "B"
    return _check(out), new, axis


# --- skein neighbours -------------------------------------------------------


def switch(d: Diagram, i: int) -> Diagram:
    crossings = list(d.crossings)
    crossings[i] = crossings[i].switched()
    return Diagram(tuple(crossings), d.components)


def smooth(d: Diagram, i: int) -> Diagram:
    """Oriented smoothing of crossing ``i``."""
    from .homfly import raw_smooth

    crossings, loops = d.raw()
    new, new_loops = raw_smooth(crossings, loops, i)
    return Diagram.from_raw(new, new_loops)


# --- doubles ----------------------------------------------------------------


def _double(d: Diagram, n: int, clasp, site=None, hidden=False, clasp_kinds=(LEFT, RIGHT)):
    report = validate(d)
    if report:
        raise DiagramError("invalid diagram: " + "; ".join(report))
    if d.component_count != 1:
        raise DiagramError("doubling is defined here for knot diagrams only")
    if d.crossing_count == 0:
        raise DiagramError("doubling needs at least one crossing")
    labels = sorted({x for cr in d.crossings for x in cr.slots})
    site = labels[0] if site is None else site
    if site not in labels:
        raise DiagramError(f"site arc {site} is not an arc of the diagram")

    b = PlanarBuilder()
    ports = {}

    def port(label, copy, end):
        key = (label, copy, end)
        if key not in ports:
            ports[key] = b.node()
        return ports[key]

    inner_site = None
    for ci, cr in enumerate(d.crossings):
        a, bb, c, dd = cr.slots
        s = cr.sign
        yp = -1 if s > 0 else 1
        ys = sorted((0, yp))
        # segment -> list of attached stubs; vertical lines x=0 (o, north), x=1 (p, south)
        grid = {}
        for x in (0, 1):
            for y in ys:
                grid[(x, y)] = b.crossing(0)  # E/W pair is over
        E, N, W, S = 0, 1, 2, 3

        def st(x, y, k):
            return b.stub(grid[(x, y)], k)

        # vertical lines
        lo, hi = ys
        for x, copy in ((0, "o"), (1, "p")):
            bottom_end = "head" if copy == "o" else "tail"
            top_end = "tail" if copy == "o" else "head"
            b.link(st(x, lo, S), port(a, copy, bottom_end))
            b.link(st(x, hi, N), port(c, copy, top_end))
            going_north = copy == "o"
            b.hint(grid[(x, lo)], S, going_north)
            b.hint(grid[(x, lo)], N, not going_north)
            b.hint(grid[(x, hi)], S, going_north)
            b.hint(grid[(x, hi)], N, not going_north)
        if hidden and ci == 0:
            inner_site = ((st(0, hi, S), st(1, hi, S)), (st(0, lo, N), st(1, lo, N)))
        else:
            b.link(st(0, lo, N), st(0, hi, S))
            b.link(st(1, lo, N), st(1, hi, S))
        # horizontal lines: y=0 original over-strand, y=yp its parallel copy
        for y, copy in ((0, "o"), (yp, "p")):
            east_going = (s > 0) == (copy == "o")
            west_lab_end = _end_of(cr, 3, copy)
            east_lab_end = _end_of(cr, 1, copy)
            b.link(st(0, y, W), port(dd, copy, west_lab_end))
            b.link(st(1, y, E), port(bb, copy, east_lab_end))
            b.link(st(0, y, E), st(1, y, W))
            for x in (0, 1):
                b.hint(grid[(x, y)], W, east_going)
                b.hint(grid[(x, y)], E, not east_going)

    twist_kind = RIGHT if n > 0 else LEFT
    for label in labels:
        o_tail, o_head = port(label, "o", "tail"), port(label, "o", "head")
        p_tail, p_head = port(label, "p", "tail"), port(label, "p", "head")
        if label != site:
            b.link(o_tail, o_head)
            b.link(p_tail, p_head)
            continue
        # local frame: the site arc runs north, its copy to the east runs south
        # ends are named by each copy's own direction, so p leaves the head block
        pos = [o_head, p_tail]
        if clasp is not None:
            clasp_at = _clasp(b, pos, clasp_kinds)
        if not hidden:
            for _ in range(2 * abs(n)):
                b.cross(pos, 0, twist_kind)
        b.link(pos[0], o_tail)
        b.link(pos[1], p_head)
    if hidden:
        top, bottom = inner_site
        _twist_region(b, top, bottom, 2 * abs(n), twist_kind)
    out, _ = b.to_diagram()
    if clasp is not None:
        signs = {out.crossings[x].sign for x in clasp_at}
        want = 1 if clasp == "+" else -1
        if signs != {want}:
            if signs != {-want}:  # pragma: no cover - geometry bug
                raise DiagramError("clasp crossings disagree in sign")
            return _double(d, n, clasp, site, hidden, clasp_kinds[::-1])
    return _check(out)


def _end_of(cr, k, copy):
    """Which end of the doubled arc at slot ``k`` sits at this crossing."""
    incoming = k in cr.incoming
    if copy == "o":
        return "head" if incoming else "tail"
    return "tail" if incoming else "head"


def _clasp(b, pos, kinds):
    """Two hooks linked by two crossings; joins the pair into one strand."""
    k1, k2 = kinds
    b.cap(pos, 2)
    x1 = b.cross(pos, 1, k1)
    x2 = b.cross(pos, 0, k2)
    b.cup(pos, 1)
    return x1, x2


def flat_double(d: Diagram, n: int = 0, site: int | None = None, hidden: bool = False) -> Diagram:
    """Blackboard double with the copy pushed right and reversed, plus ``n`` full twists."""
    return _double(d, n, None, site, hidden)


def whitehead_double(
    d: Diagram, n: int = 0, clasp: str = "+", site: int | None = None, hidden: bool = False
) -> Diagram:
    """Flat double with a clasp spliced into the site arc pair.

    ``hidden`` moves the full twists into the square of doubled crossing 0.
    """
    if clasp not in ("+", "-"):
        raise DiagramError(f"clasp must be '+' or '-', got {clasp!r}")
    return _double(d, n, clasp, site, hidden)


# --- 4-plat deflation -------------------------------------------------------


@dataclass(frozen=True)
class DeflationMove:
    """One full-twist -> half-twist step.

    ``half_to_full(after, crossing, axis)`` inverts it.
    """

    kind: str  # "lower" (a_i -> a_i - 1) or "block" (one of two block-removal steps)
    block: int
    before: tuple[int, ...]
    after: tuple[int, ...]
    crossing: int
    axis: str


def deflation_path(word) -> list[tuple[Diagram, DeflationMove]]:
    """Deflate a 2-bridge 4-plat (knot or link) down to ``s2 s1^-1 s2``.

    Returns ``(diagram_after_move, move)`` pairs; the starting diagram is
    ``four_plat(word)``.
    """
    if not isinstance(word, FourPlatWord):
        word = FourPlatWord(tuple(word))
    current, _, _ = _four_plat(word)
    exps = list(word.exponents)
    steps = []
    for j in range(len(exps)):
        while exps[j] > 1:
            target = exps[:j] + [exps[j] - 1] + exps[j + 1 :]
            want = four_plat(target)
            found = None
            for c1, i, c2 in twist_bigons(current):
                cand, new, axis = full_to_half(current, c1, i, c2)
                if isomorphic(cand, want, oriented=False):
                    found = (cand, new, axis)
                    break
            if found is None:
                raise DiagramError(f"no deflation of block {j} in {exps}")
            steps.append((found[0], DeflationMove("lower", j, tuple(exps), tuple(target), found[1], found[2])))
            current, exps = found[0], target
    while len(exps) > 3:
        target = exps[2:]
        want_key = canonical_key(four_plat(target), oriented=False)
        found = None
        for c1, i, c2 in twist_bigons(current):
            mid, new1, axis1 = full_to_half(current, c1, i, c2)
            for e1, i2, e2 in twist_bigons(mid):
                end, new2, axis2 = full_to_half(mid, e1, i2, e2)
                if canonical_key(end, oriented=False) == want_key:
                    found = (mid, new1, axis1, end, new2, axis2)
                    break
            if found:
                break
        if found is None:
            raise DiagramError(f"no block removal found for {exps}")
        mid, new1, axis1, end, new2, axis2 = found
        steps.append((mid, DeflationMove("block", 0, tuple(exps), tuple(exps), new1, axis1)))
        steps.append((end, DeflationMove("block", 0, tuple(exps), tuple(target), new2, axis2)))
        current, exps = end, target
    return steps


def replay(word, path) -> Diagram:
    """Rebuild ``four_plat(word)`` from the end of ``path`` by inflation."""
    if not path:
        return four_plat(word)
    diagrams = [four_plat(word)] + [dg for dg, _ in path]
    cur = diagrams[-1]
    for k in range(len(path) - 1, -1, -1):
        move = path[k][1]
        cur = half_to_full(cur, move.crossing, move.axis)
        if k > 0 and not isomorphic(cur, diagrams[k], oriented=False):
            raise DiagramError(f"replay diverged at step {k}")
        if k > 0:
            cur = diagrams[k]
    return cur
