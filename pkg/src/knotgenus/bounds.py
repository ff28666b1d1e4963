"""Bookkeeping for z-degree bounds along skein trees.

For a crossing of either sign the skein relation gives

    M(parent) <= max(M(switched), M(smoothed) + 1)
    M(smoothed) <= max(M(K+), M(K-)) - 1

with equality whenever the two quantities in the maximum differ.  A bound
is either ``Exact(n)`` or ``UpperBound(n)``; equality only propagates when
the larger candidate is strictly larger and itself exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

__all__ = [
    "EXACT",
    "UPPER",
    "DegreeBound",
    "Exact",
    "UpperBound",
    "combine",
    "combine_smoothed",
    "SkeinEdge",
    "SkeinTree",
    "SkeinTreeError",
    "propagate",
    "LedgerMismatch",
    "LedgerTranscript",
    "ledger_tree",
    "LEDGER_CHAIN",
    "ledger_check",
    "to_dot",
]

EXACT, UPPER = "Exact", "UpperBound"


@dataclass(frozen=True, order=True)
class DegreeBound:
    kind: str
    value: int

    def __post_init__(self):
        if self.kind not in (EXACT, UPPER):
            raise ValueError(f"unknown bound kind {self.kind!r}")

    @property
    def exact(self) -> bool:
        return self.kind == EXACT

    def refines(self, other: "DegreeBound") -> bool:
        """True when every degree allowed by ``self`` is allowed by ``other``."""
        if other.exact:
            return self.exact and self.value == other.value
        return self.value <= other.value

    def admits(self, degree: int) -> bool:
        return degree == self.value if self.exact else degree <= self.value

    def weaken(self) -> "DegreeBound":
        return DegreeBound(UPPER, self.value)

    def __str__(self):
        return f"{self.kind}({self.value})"

    def to_json(self):
        return {"kind": self.kind, "value": self.value}

    @classmethod
    def from_json(cls, data, c=None):
        return cls(data["kind"], _value(data["value"], c))


def Exact(n: int) -> DegreeBound:
    return DegreeBound(EXACT, n)


def UpperBound(n: int) -> DegreeBound:
    return DegreeBound(UPPER, n)


_LINEAR = re.compile(r"^\s*(-?\d*)\s*c\s*(?:([+-])\s*(\d+))?\s*$")


def _value(v, c):
    """Integers pass through; strings like ``"2c-5"`` are evaluated at ``c``."""
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        v = v.strip()
        if re.fullmatch(r"-?\d+", v):
            return int(v)
        m = _LINEAR.match(v)
        if m:
            if c is None:
                raise SkeinTreeError(f"bound {v!r} needs a value for c")
            a = m.group(1)
            slope = 1 if a in ("", None) else (-1 if a == "-" else int(a))
            off = int(m.group(3) or 0) * (-1 if m.group(2) == "-" else 1)
            return slope * c + off
    raise SkeinTreeError(f"cannot read bound value {v!r}")


def _max_rule(a: DegreeBound, a_val: int, b: DegreeBound, b_val: int) -> DegreeBound:
    if a_val > b_val:
        return DegreeBound(a.kind, a_val)
    if b_val > a_val:
        return DegreeBound(b.kind, b_val)
    # ties say nothing about cancellation
    return UpperBound(a_val)


def combine(parent_sign: int, switched: DegreeBound, smoothed: DegreeBound) -> DegreeBound:
    """Bound on a crossing's diagram from its switch and its smoothing.

    The rule is symmetric in the sign of the crossing; ``parent_sign`` is
    kept for the record and checked only for sanity.
    """
    if parent_sign not in (1, -1):
        raise ValueError("parent_sign must be +1 or -1")
    return _max_rule(switched, switched.value, smoothed, smoothed.value + 1)


def combine_smoothed(positive: DegreeBound, negative: DegreeBound) -> DegreeBound:
    """Bound on the smoothing from both crossing states."""
    return _max_rule(positive, positive.value - 1, negative, negative.value - 1)


class SkeinTreeError(ValueError):
    pass


@dataclass(frozen=True)
class SkeinEdge:
    parent: str
    child: str
    role: str  # "switched" or "smoothed"
    parent_sign: int


@dataclass
class SkeinTree:
    nodes: list[str]
    edges: list[SkeinEdge]
    leaf_bounds: dict[str, DegreeBound]
    root: str | None = None
    notes: dict[str, str] = field(default_factory=dict)

    def children(self):
        out = {n: {} for n in self.nodes}
        for e in self.edges:
            if e.role not in ("switched", "smoothed"):
                raise SkeinTreeError(f"edge {e.parent}->{e.child}: unknown role {e.role!r}")
            if e.parent not in out or e.child not in out:
                raise SkeinTreeError(f"edge {e.parent}->{e.child} names an unknown node")
            if e.role in out[e.parent]:
                raise SkeinTreeError(f"{e.parent} has two {e.role} children")
            out[e.parent][e.role] = e
        return out

    def validate(self):
        kids = self.children()
        for n, k in kids.items():
            if k and set(k) != {"switched", "smoothed"}:
                raise SkeinTreeError(f"{n} needs exactly one switched and one smoothed child")
            if not k and n not in self.leaf_bounds:
                raise SkeinTreeError(f"leaf {n} has no bound")
            if k and n in self.leaf_bounds:
                raise SkeinTreeError(f"internal node {n} was given a leaf bound")
        self.order()
        return kids

    def order(self):
        ts = TopologicalSorter({n: [e.child for e in self.edges if e.parent == n] for n in self.nodes})
        try:
            return list(ts.static_order())
        except CycleError as exc:
            raise SkeinTreeError(f"skein tree has a cycle: {exc.args[1]}") from None

    def find_root(self):
        if self.root:
            return self.root
        kids = {e.child for e in self.edges}
        roots = [n for n in self.nodes if n not in kids]
        if len(roots) != 1:
            raise SkeinTreeError(f"expected one root, found {roots}")
        return roots[0]

    def to_json(self):
        return {
            "nodes": list(self.nodes),
            "root": self.find_root(),
            "edges": [
                {"parent": e.parent, "child": e.child, "role": e.role, "sign": "+" if e.parent_sign > 0 else "-"}
                for e in self.edges
            ],
            "leaf_bounds": {n: b.to_json() for n, b in self.leaf_bounds.items()},
        }

    @classmethod
    def from_json(cls, data, c=None):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            edges = [
                SkeinEdge(e["parent"], e["child"], e["role"], _sign(e.get("sign", "+")))
                for e in data["edges"]
            ]
            leaves = {n: DegreeBound.from_json(b, c) for n, b in data["leaf_bounds"].items()}
            nodes = list(data.get("nodes") or _nodes_from(edges, leaves))
        except (KeyError, TypeError) as exc:
            raise SkeinTreeError(f"malformed skein tree: missing {exc}") from None
        return cls(nodes, edges, leaves, data.get("root"))


def _sign(s):
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise SkeinTreeError(f"bad sign {s!r}")


def _nodes_from(edges, leaves):
    seen = []
    for n in [x for e in edges for x in (e.parent, e.child)] + list(leaves):
        if n not in seen:
            seen.append(n)
    return seen


def propagate(t: SkeinTree, order=None) -> dict[str, DegreeBound]:
    """Bounds at every node, leaves first.

    ``order`` may supply any topological order of the nodes (children
    before parents); the result does not depend on it.
    """
    kids = t.validate()
    order = t.order() if order is None else list(order)
    out = {}
    for n in order:
        k = kids[n]
        if not k:
            out[n] = t.leaf_bounds[n]
            continue
        sw, sm = k["switched"], k["smoothed"]
        if sw.child not in out or sm.child not in out:
            raise SkeinTreeError(f"order visits {n} before its children")
        out[n] = combine(sw.parent_sign, out[sw.child], out[sm.child])
    return out


# --- the labeled tree of the genus argument ----------------------------------

# (parent, switched child, smoothed child), listed bottom-up
_LEDGER_EDGES = (
    ("K_a", "K_1", "K_A"),
    ("K_b", "K_2", "K_3"),
    ("K_c", "K_a", "K_b"),
    ("K_d", "K_4", "K_5"),
    ("K_e", "K_d", "K_6"),
    ("K_f", "K_c", "K_e"),
    ("K_g", "K_B", "K_7"),
    ("K_h", "K_g", "K_8"),
    ("D(K)", "K_f", "K_h"),
)

# Offsets from 2c; the parent signs are a reconstruction (the bound rule does
# not depend on them).
_LEDGER_SIGNS = {p: 1 for p, _, _ in _LEDGER_EDGES}

_LEAVES = {
    "standard": {
        "K_1": (UPPER, -5),
        "K_A": (UPPER, -6),
        "K_2": (UPPER, -4),
        "K_3": (UPPER, -5),
        "K_4": (UPPER, -6),
        "K_5": (UPPER, -5),
        "K_6": (UPPER, -5),
        "K_B": (UPPER, -4),
        "K_7": (UPPER, -5),
        "K_8": (EXACT, -3),
    },
}
# K_8 of lower degree: the reverse direction of the argument
_LEAVES["degraded"] = dict(_LEAVES["standard"], K_8=(EXACT, -5))
# a split unknotted component lowers these leaves by the factor delta
_LEAVES["split-unknot"] = dict(
    _LEAVES["standard"], K_A=(UPPER, -7), K_3=(UPPER, -7), K_6=(UPPER, -7), K_B=(UPPER, -7), K_7=(UPPER, -7)
)

# expected internal bounds, as (kind, offset from 2c)
LEDGER_CHAIN = (
    ("K_a", UPPER, -5),
    ("K_b", UPPER, -4),
    ("K_c", UPPER, -3),
    ("K_d", UPPER, -4),
    ("K_e", UPPER, -4),
    ("K_f", UPPER, -3),
    ("K_g", UPPER, -4),
    ("K_h", EXACT, -2),
    ("D(K)", EXACT, -1),
)

DEGRADED_ROOT = (UPPER, -3)


def ledger_tree(c: int, fixture: str = "standard") -> SkeinTree:
    if c < 3:
        raise ValueError("the ledger needs c >= 3")
    try:
        leaves = _LEAVES[fixture]
    except KeyError:
        raise ValueError(f"unknown fixture {fixture!r}; choose from {sorted(_LEAVES)}") from None
    edges = []
    for p, sw, sm in _LEDGER_EDGES:
        edges.append(SkeinEdge(p, sw, "switched", _LEDGER_SIGNS[p]))
        edges.append(SkeinEdge(p, sm, "smoothed", _LEDGER_SIGNS[p]))
    bounds = {n: DegreeBound(k, 2 * c + off) for n, (k, off) in leaves.items()}
    return SkeinTree(_nodes_from(edges, bounds), edges, bounds, root="D(K)")


class LedgerMismatch(AssertionError):
    def __init__(self, c, diff):
        self.c = c
        self.diff = diff
        lines = [f"{n}: expected {e}, got {g}" for n, e, g in diff]
        super().__init__(f"ledger mismatch at c={c}: " + "; ".join(lines))

    def to_json(self):
        return {"c": self.c, "diff": [{"node": n, "expected": str(e), "got": str(g)} for n, e, g in self.diff]}


@dataclass
class LedgerTranscript:
    c: int
    fixture: str
    lines: list[tuple[str, str, str, DegreeBound]]  # node, switched, smoothed, bound
    bounds: dict[str, DegreeBound]

    @property
    def root(self) -> DegreeBound:
        return self.bounds["D(K)"]

    def text(self) -> str:
        out = [f"# skein ledger, c = {self.c} ({self.fixture})"]
        for node, sw, sm, b in self.lines:
            out.append(f"{node} <= max{{M({sw}), M({sm})+1}} -> {b}  [{_offset(b.value, self.c)}]")
        out.append(f"root {self.root}")
        return "\n".join(out)

    def to_json(self):
        return {
            "c": self.c,
            "fixture": self.fixture,
            "steps": [
                {"node": n, "switched": sw, "smoothed": sm, "bound": b.to_json(), "offset": b.value - 2 * self.c}
                for n, sw, sm, b in self.lines
            ],
            "root": self.root.to_json(),
        }


def _offset(value, c):
    off = value - 2 * c
    return "2c" if off == 0 else f"2c{off:+d}"


def ledger_check(c: int, fixture: str = "standard") -> LedgerTranscript:
    """Propagate the labeled tree at ``c`` and compare with the expected chain.

    ``fixture`` selects the leaf data: ``standard``, ``degraded`` or
    ``split-unknot``.  Raises :class:`LedgerMismatch` with a per-node diff.
    """
    tree = ledger_tree(c, fixture)
    bounds = propagate(tree)
    lines = [(p, sw, sm, bounds[p]) for p, sw, sm in _LEDGER_EDGES]
    transcript = LedgerTranscript(c, fixture, lines, bounds)
    if fixture == "degraded":
        expected = {"D(K)": DegreeBound(DEGRADED_ROOT[0], 2 * c + DEGRADED_ROOT[1])}
    else:
        expected = {n: DegreeBound(k, 2 * c + off) for n, k, off in LEDGER_CHAIN}
        if fixture == "split-unknot":
            # only the conclusion is claimed for this variant
            expected = {"D(K)": expected["D(K)"]}
    diff = [(n, e, bounds[n]) for n, e in expected.items() if bounds[n] != e]
    if diff:
        raise LedgerMismatch(c, diff)
    return transcript


def to_dot(t: SkeinTree, bounds: dict[str, DegreeBound] | None = None) -> str:
    """Graphviz rendering with the bound of each node in its label."""
    bounds = bounds if bounds is not None else propagate(t)
    out = ["digraph skein {", "  rankdir=TB;", '  node [shape=box, fontname="Helvetica"];']
    for n in t.nodes:
        label = f"{n}\\n{bounds[n]}" if n in bounds else n
        style = ", style=bold" if n in bounds and bounds[n].exact else ""
        out.append(f'  "{n}" [label="{label}"{style}];')
    for e in t.edges:
        style = "solid" if e.role == "switched" else "dashed"
        sign = "+" if e.parent_sign > 0 else "-"
        out.append(f'  "{e.parent}" -> "{e.child}" [label="{e.role[:2]}{sign}", style={style}];')
    out.append("}")
    return "\n".join(out) + "\n"
