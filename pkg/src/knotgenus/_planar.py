"""Unoriented planar assembly of diagrams, then orientation into PD codes.

Crossings are added with their four stubs in counterclockwise order and an
``over`` index (stubs ``over`` and ``over+2`` form the over-strand).  Stubs are
wired together, optionally through virtual nodes of degree two (caps, ports,
segments).  ``to_diagram`` resolves the wiring into arcs, orients every
component and emits a :class:`Diagram`.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import count

from .diagram import Crossing, Diagram, DiagramError

# Morse crossing stubs, counterclockwise
NE, NW, SW, SE = 0, 1, 2, 3


class PlanarBuilder:
    def __init__(self):
        self.overs = []
        self.adj = defaultdict(list)
        self.hints = {}
        self._ids = count()

    def node(self):
        return ("v", next(self._ids))

    def crossing(self, over):
        i = len(self.overs)
        self.overs.append(over)
        return i

    @staticmethod
    def stub(i, k):
        return ("x", i, k)

    def link(self, p, q):
        self.adj[p].append(q)
        self.adj[q].append(p)

    def drop(self, node):
        for other in self.adj.pop(node, []):
            if other != node and other in self.adj:
                self.adj[other] = [u for u in self.adj[other] if u != node]

    def hint(self, i, k, incoming):
        self.hints[("x", i, k)] = incoming

    # --- Morse-style construction, top to bottom --------------------------

    def cap(self, positions, i):
        v = self.node()
        positions[i:i] = [v, v]

    def cup(self, positions, i):
        self.link(positions[i], positions[i + 1])
        del positions[i : i + 2]

    def cross(self, positions, i, kind):
        """Cross positions ``i`` and ``i+1``; ``kind`` names the over diagonal."""
        over = {"nwse": NW % 2, "nesw": NE % 2}[kind]
        c = self.crossing(over)
        self.link(positions[i], self.stub(c, NW))
        self.link(positions[i + 1], self.stub(c, NE))
        positions[i] = self.stub(c, SW)
        positions[i + 1] = self.stub(c, SE)
        return c

    # --- resolution ---------------------------------------------------------

    def _arcs(self):
        """Pairs of crossing stubs joined by an arc, plus the free-loop count."""
        seen = set()
        arcs = []
        for i in range(len(self.overs)):
            for k in range(4):
                s = self.stub(i, k)
                if s in seen:
                    continue
                seen.add(s)
                prev, cur = s, self._only(s)
                while cur[0] == "v":
                    seen.add(cur)
                    nb = self.adj[cur]
                    if len(nb) != 2:
                        raise DiagramError(f"virtual node {cur} has degree {len(nb)}")
                    nxt = nb[1] if nb[0] == prev else nb[0]
                    if nb[0] == nb[1]:
                        nxt = nb[0]
                    prev, cur = cur, nxt
                seen.add(cur)
                arcs.append((s, cur))
        loops = 0
        for v in list(self.adj):
            if v[0] == "v" and v not in seen:
                loops += 1
                stack = [v]
                while stack:
                    u = stack.pop()
                    if u in seen:
                        continue
                    seen.add(u)
                    stack.extend(self.adj[u])
        return arcs, loops

    def _only(self, s):
        nb = self.adj[s]
        if len(nb) != 1:
            raise DiagramError(f"stub {s} has {len(nb)} connections")
        return nb[0]

    def to_diagram(self, strict=False, component_order=None):
        """Orient and label.

        Each component follows its first hinted stub (in crossing/slot order);
        components without hints start at their least stub as incoming.  With
        ``strict`` every hint must agree with the chosen orientation.
        Returns ``(diagram, rotation)`` where ``rotation[i]`` is the builder
        stub index that became PD slot 0 of crossing ``i``.
        """
        arcs, loops = self._arcs()
        partner = {}
        for p, q in arcs:
            partner[p] = q
            partner[q] = p
        n = len(self.overs)
        stubs = [self.stub(i, k) for i in range(n) for k in range(4)]
        # component membership via strand pass-through
        comp_of = {}
        comps = []
        for s in stubs:
            if s in comp_of:
                continue
            members = []
            cur = s
            while cur not in comp_of:
                comp_of[cur] = len(comps)
                members.append(cur)
                _, i, k = cur
                thru = self.stub(i, (k + 2) % 4)
                comp_of[thru] = len(comps)
                members.append(thru)
                cur = partner[thru]
            comps.append(members)
        # choose the starting incoming stub of each component
        starts = []
        for members in comps:
            ordered = sorted(members)
            start = ordered[0]
            for s in ordered:
                if s in self.hints:
                    start = s if self.hints[s] else partner[s]
                    break
            starts.append(start)
        if component_order is not None:
            starts = [starts[j] for j in component_order]
        incoming = set()
        label_in = {}
        label_out = {}
        comp_labels = []
        nxt = 1
        for start in starts:
            labels = []
            cur = start
            while True:
                incoming.add(cur)
                _, i, k = cur
                out = self.stub(i, (k + 2) % 4)
                arc = nxt
                nxt += 1
                labels.append(arc)
                label_out[out] = arc
                nxt_in = partner[out]
                label_in[nxt_in] = arc
                cur = nxt_in
                if cur == start:
                    break
            comp_labels.append(tuple(labels))
        if strict:
            for s, inc in self.hints.items():
                if (s in incoming) != inc:
                    raise DiagramError(f"orientation hint at {s} is inconsistent")
        crossings = []
        rotation = []
        for i in range(n):
            over = self.overs[i]
            under = [k for k in range(4) if k % 2 != over % 2]
            k0 = next(k for k in under if self.stub(i, k) in incoming)
            slots = []
            for j in range(4):
                s = self.stub(i, (k0 + j) % 4)
                slots.append(label_in[s] if s in incoming else label_out[s])
            sign = 1 if self.stub(i, (k0 + 3) % 4) in incoming else -1
            crossings.append(Crossing(tuple(slots), sign))
            rotation.append(k0)
        for _ in range(loops):
            comp_labels.append((nxt,))
            nxt += 1
        return Diagram(tuple(crossings), tuple(comp_labels)), rotation


def from_diagram(d: Diagram, skip=()):
    """Load ``d`` into a builder, leaving crossings in ``skip`` out.

    Returns ``(builder, index, ports)``: ``index`` maps kept crossing indices
    to builder indices, and ``ports[(i, k)]`` is a virtual node standing where
    slot ``k`` of skipped crossing ``i`` used to be.
    """
    b = PlanarBuilder()
    skip = set(skip)
    index = {}
    for i, cr in enumerate(d.crossings):
        if i in skip:
            continue
        index[i] = b.crossing(1)
        for k in cr.incoming:
            b.hint(index[i], k, True)
        for k in cr.outgoing:
            b.hint(index[i], k, False)
    ports = {}
    for i in skip:
        for k in range(4):
            ports[(i, k)] = b.node()

    def end(i, k):
        return ports[(i, k)] if i in skip else b.stub(index[i], k)

    where = defaultdict(list)
    for i, cr in enumerate(d.crossings):
        for k, x in enumerate(cr.slots):
            where[x].append((i, k))
    for x, ((i, k), (j, m)) in where.items():
        b.link(end(i, k), end(j, m))
    for _ in range(d.free_loops):
        v = b.node()
        b.link(v, v)
    return b, index, ports
