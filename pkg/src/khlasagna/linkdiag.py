"""
Oriented, blackboard-framed link diagrams in PD notation.

A crossing ``X(i, j, k, l)`` lists its four edge labels counterclockwise,
starting with the incoming under-strand ``i``; the under-strand leaves
through ``k``.  The over-strand runs either ``l -> j`` (positive crossing)
or ``j -> l`` (negative crossing).  PD codes cannot express components
without crossings, so those are kept as a count of free loops.

Braid words ``BR[width; s1 -s2 ...]`` are closed on the right; positive
generators put the left strand over the right one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import count

__all__ = [
    "PDError",
    "PlanarDiagram",
    "SublinkSelector",
    "parse_pd",
    "parse_diagram",
    "from_braid",
    "writhe",
    "seifert_data",
    "sublink",
    "mirror",
    "disjoint_union",
    "components",
    "cable_unknot",
    "add_kink",
    "reverse_components",
    "resolution_circles",
]


class PDError(ValueError):
    """Raised for malformed or inconsistent diagram input."""


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented link diagram.

    ``over_lj[c]`` is True when the over-strand of crossing ``c`` runs from
    slot 3 (``l``) to slot 1 (``j``), i.e. when the crossing is positive.
    ``loop_components`` holds the component index of every free loop.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    over_lj: tuple[bool, ...]
    component_of: dict = field(hash=False, compare=False)
    loop_components: tuple[int, ...] = ()

    # -- derived quantities -------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if b else -1 for b in self.over_lj)

    @property
    def n_plus(self) -> int:
        return sum(self.over_lj)

    @property
    def n_minus(self) -> int:
        return len(self.over_lj) - self.n_plus

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def loops(self) -> int:
        return len(self.loop_components)

    @property
    def n_components(self) -> int:
        return len(set(self.component_of.values()) | set(self.loop_components))

    def edges(self) -> list[int]:
        return sorted({e for x in self.crossings for e in x})

    def edge_endpoints(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        """Map edge -> ((crossing, slot) it leaves, (crossing, slot) it enters)."""
        out, inn = {}, {}
        for c, x in enumerate(self.crossings):
            for slot, e in enumerate(x):
                if _slot_is_out(slot, self.over_lj[c]):
                    out[e] = (c, slot)
                else:
                    inn[e] = (c, slot)
        return {e: (out[e], inn[e]) for e in out}

    def crossing_components(self, c: int) -> tuple[int, int]:
        """(under component, over component) of crossing ``c``."""
        i, j, _, _ = self.crossings[c]
        return self.component_of[i], self.component_of[j]

    def __eq__(self, other):
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return (self.crossings == other.crossings and self.over_lj == other.over_lj
                and self.loop_components == other.loop_components
                and self.component_of == other.component_of)

    def __hash__(self):
        return hash((self.crossings, self.over_lj, self.loop_components))

    # -- serialization -----------------------------------------------------
    def to_pd(self) -> str:
        body = ", ".join("X(%d,%d,%d,%d)" % x for x in self.crossings)
        text = "PD[%s]" % body
        if self.loops:
            text += "; O(%d)" % self.loops
        return text

    def to_json(self) -> dict:
        ends = self.edge_endpoints()
        return {
            "crossings": [list(x) for x in self.crossings],
            "signs": list(self.signs),
            "orientations": {str(e): [ends[e][0][0], ends[e][1][0]] for e in sorted(ends)},
            "components": {str(e): self.component_of[e] for e in sorted(self.component_of)},
            "loops": self.loops,
            "loop_components": list(self.loop_components),
            "writhe": self.writhe,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        return "PlanarDiagram(%s, w=%d)" % (self.to_pd(), self.writhe)


def _slot_is_out(slot: int, over_lj: bool) -> bool:
    if slot == 0:
        return False
    if slot == 2:
        return True
    # over-strand: l -> j leaves through j (slot 1)
    return (slot == 1) == over_lj


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def _solve_orientations(crossings, hint=None):
    """Choose the over-strand direction of every crossing.

    Each edge must leave one slot and enter the other.  Slots 0 and 2 are
    fixed (in/out), so every edge yields either a fixed value or a parity
    relation between two crossing variables.  Classes with no fixed value
    (components running over at every crossing) take the direction in
    ``hint`` or, failing that, the one making labels increase.
    """
    n = len(crossings)
    where = {}
    for c, x in enumerate(crossings):
        for slot, e in enumerate(x):
            where.setdefault(e, []).append((c, slot))
    for e, locs in where.items():
        if len(locs) != 2:
            raise PDError("edge label %r appears %d times (expected 2)" % (e, len(locs)))

    # constraint graph: node = crossing variable b_c (True = over runs l->j)
    # out(slot1) = b, out(slot3) = not b
    adj = [[] for _ in range(n)]
    fixed = {}

    def out_expr(c, slot):
        # returns (const, var, parity): out = const  or  out = b_var xor parity
        if slot == 0:
            return (False, None, None)
        if slot == 2:
            return (True, None, None)
        return (None, c, slot == 3)

    def force(c, value):
        if c in fixed and fixed[c] != value:
            raise PDError("inconsistent orientation at crossing %d" % c)
        fixed[c] = value

    for e, ((c1, s1), (c2, s2)) in where.items():
        a = out_expr(c1, s1)
        b = out_expr(c2, s2)
        # constraint: out_a xor out_b == True
        if a[1] is None and b[1] is None:
            if a[0] == b[0]:
                raise PDError("edge %r joins two %s slots" % (e, "outgoing" if a[0] else "incoming"))
        elif a[1] is None:
            # b_var xor pb == not a_const
            force(b[1], (not a[0]) ^ b[2])
        elif b[1] is None:
            force(a[1], (not b[0]) ^ a[2])
        else:
            # b_a xor pa xor b_b xor pb == True
            rel = True ^ a[2] ^ b[2]
            if a[1] == b[1]:
                if rel:
                    raise PDError("inconsistent orientation at crossing %d" % a[1])
                continue
            adj[a[1]].append((b[1], rel))
            adj[b[1]].append((a[1], rel))

    value = [None] * n
    order = sorted(range(n), key=lambda c: (c not in fixed, c))
    for start in order:
        if value[start] is not None:
            continue
        if start in fixed:
            value[start] = fixed[start]
        elif hint is not None and hint[start] is not None:
            value[start] = hint[start]
        else:
            i, j, k, l = crossings[start]
            value[start] = (j == l + 1) or (l > j + 1)
        stack = [start]
        while stack:
            c = stack.pop()
            for d, rel in adj[c]:
                want = value[c] ^ rel
                if value[d] is None:
                    if d in fixed and fixed[d] != want:
                        raise PDError("inconsistent orientation at crossing %d" % d)
                    value[d] = want
                    stack.append(d)
                elif value[d] != want:
                    raise PDError("inconsistent orientation at crossing %d" % d)
    return tuple(value)


def _component_partition(crossings):
    uf = _UnionFind()
    for i, j, k, l in crossings:
        uf.union(i, k)
        uf.union(j, l)
    edges = sorted({e for x in crossings for e in x})
    roots = {}
    comp = {}
    for e in edges:
        r = uf.find(e)
        if r not in roots:
            roots[r] = len(roots)
        comp[e] = roots[r]
    return comp


def make_diagram(crossings, loops=0, over_lj=None, component_of=None, loop_components=None):
    """Validate and assemble a diagram.

    ``over_lj`` entries may be None to let the solver decide; explicit
    values are honoured where they are consistent.
    """
    crossings = tuple(tuple(int(v) for v in x) for x in crossings)
    for x in crossings:
        if len(x) != 4:
            raise PDError("crossing %r must have four labels" % (x,))
    if over_lj is not None and all(v is not None for v in over_lj):
        check = _solve_orientations(crossings, hint=over_lj)
        if tuple(check) != tuple(over_lj):
            raise PDError("given orientation is inconsistent with the strand labels")
        orient = tuple(bool(v) for v in over_lj)
    else:
        orient = _solve_orientations(crossings, hint=over_lj)
    if component_of is None:
        component_of = _component_partition(crossings)
    else:
        component_of = dict(component_of)
    if loop_components is None:
        first = len(set(component_of.values()))
        loop_components = tuple(range(first, first + loops))
    return PlanarDiagram(crossings, orient, component_of, tuple(loop_components))


_X_RE = re.compile(r"X\s*[\[(]\s*([^\])]*)[\])]")


def parse_pd(text: str) -> PlanarDiagram:
    """Parse ``PD[X(a,b,c,d), ...]`` with an optional ``; O(n)`` loop count."""
    src = text.strip()
    m = re.fullmatch(r"PD\s*\[(.*)\]\s*(?:;\s*O\s*\(\s*(\d+)\s*\))?\s*", src, re.S)
    if not m:
        raise PDError("malformed PD text: %r" % text)
    body, loops = m.group(1), int(m.group(2) or 0)
    crossings = []
    pos = 0
    body = body.strip()
    while pos < len(body):
        mm = _X_RE.match(body, pos)
        if not mm:
            raise PDError("malformed token near %r" % body[pos:pos + 20])
        parts = [p.strip() for p in mm.group(1).split(",")]
        if len(parts) != 4 or not all(re.fullmatch(r"-?\d+", p) for p in parts):
            raise PDError("malformed crossing %r" % mm.group(0))
        crossings.append(tuple(int(p) for p in parts))
        pos = mm.end()
        rest = re.match(r"\s*,?\s*", body[pos:])
        pos += rest.end()
    return make_diagram(crossings, loops)


def parse_braid(text: str) -> PlanarDiagram:
    m = re.fullmatch(r"\s*BR\s*\[\s*(\d+)\s*;\s*([-\s\w]*)\]\s*", text)
    if not m:
        raise PDError("malformed braid text: %r" % text)
    width = int(m.group(1))
    word = []
    for tok in m.group(2).split():
        t = re.fullmatch(r"(-?)s?(\d+)", tok)
        if not t:
            raise PDError("malformed braid generator %r" % tok)
        g = int(t.group(2))
        word.append(-g if t.group(1) else g)
    return from_braid(width, word)


def parse_diagram(text: str) -> PlanarDiagram:
    """Dispatch on ``PD[...]`` or ``BR[...]`` input."""
    s = text.strip()
    if s.startswith("BR"):
        return parse_braid(s)
    return parse_pd(s)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _braid_closure(width, tokens):
    """Close a braid word whose tokens are ``+g``/``-g`` generators or
    ``('curl', position)`` positive kinks; returns crossings, orientations
    and the position-to-component map (before relabelling)."""
    fresh = count(1)
    start = [next(fresh) for _ in range(width)]
    current = list(start)
    touched = [False] * width
    crossings, orient = [], []
    for tok in tokens:
        if isinstance(tok, tuple):
            _, p = tok
            a, b, c = current[p], next(fresh), next(fresh)
            crossings.append([a, b, c, c])
            orient.append(True)
            current[p] = b
            touched[p] = True
            continue
        g = abs(tok)
        if not 1 <= g < width:
            raise PDError("generator %d out of range for width %d" % (tok, width))
        p = g - 1
        left_in, right_in = current[p], current[p + 1]
        left_out, right_out = next(fresh), next(fresh)
        if tok > 0:
            # right strand under, left strand over (l -> j)
            crossings.append([right_in, left_out, right_out, left_in])
            orient.append(True)
        else:
            crossings.append([left_in, right_in, left_out, right_out])
            orient.append(False)
        current[p], current[p + 1] = right_out, left_out
        touched[p] = touched[p + 1] = True
    # closure: top label at position p is glued to bottom label at p
    rename = {}
    for p in range(width):
        if touched[p] or current[p] != start[p]:
            rename[current[p]] = start[p]
    uf = _UnionFind()
    for top, bottom in rename.items():
        uf.union(top, bottom)
    crossings = [[uf.find(e) for e in x] for x in crossings]
    free = [p for p in range(width) if not touched[p] and current[p] == start[p]]
    return crossings, orient, free


def _relabel(crossings, over_lj, loop_components=(), component_hint=None):
    """Relabel edges 1..E in order of first appearance and rebuild."""
    table = {}
    for x in crossings:
        for e in x:
            if e not in table:
                table[e] = len(table) + 1
    new = [tuple(table[e] for e in x) for x in crossings]
    comp = None
    if component_hint is not None:
        comp = {table[e]: c for e, c in component_hint.items() if e in table}
    return make_diagram(new, 0, over_lj=list(over_lj), component_of=comp,
                        loop_components=loop_components)


def _canonical_components(D: PlanarDiagram) -> PlanarDiagram:
    """Renumber components 0..c-1, crossing components first."""
    order = {}
    for e in sorted(D.component_of):
        c = D.component_of[e]
        if c not in order:
            order[c] = len(order)
    for c in D.loop_components:
        if c not in order:
            order[c] = len(order)
    comp = {e: order[c] for e, c in D.component_of.items()}
    loops = tuple(sorted(order[c] for c in D.loop_components))
    return PlanarDiagram(D.crossings, D.over_lj, comp, loops)


def from_braid(width: int, word) -> PlanarDiagram:
    """Closure of a braid word (list of nonzero ints, sign = crossing sign)."""
    crossings, orient, free = _braid_closure(width, list(word))
    if not crossings:
        return make_diagram([], len(free))
    D = _relabel(crossings, orient)
    base = len(set(D.component_of.values()))
    return PlanarDiagram(D.crossings, D.over_lj, D.component_of,
                         tuple(range(base, base + len(free))))


def cable_unknot(f: int, n: int, m: int) -> PlanarDiagram:
    """Blackboard cable of the f-framed unknot: n strands one way, m the other.

    Each unit of framing contributes a full twist on the n+m strands plus a
    positive curl on every strand, i.e. (n+m)**2 crossings.
    """
    if f < 0 or n < 0 or m < 0 or n + m < 1:
        raise PDError("cable needs f >= 0 and n + m >= 1")
    s = n + m
    tokens = []
    for _ in range(f):
        for _ in range(s):
            tokens.extend(range(1, s))
        tokens.extend(("curl", p) for p in range(s))
    crossings, orient, free = _braid_closure(s, tokens)
    if not crossings:
        D = make_diagram([], s)
        return D
    D = _relabel(crossings, orient)
    # the full twist is a pure braid: strand p is its own component
    D = _canonical_components(D)
    reverse = set()
    if m:
        # components are numbered in order of first edge label, which follows
        # the strand order of the first twist
        pos_comp = _braid_positions(s, tokens, D)
        reverse = {pos_comp[p] for p in range(n, s)}
    return reverse_components(D, reverse) if reverse else D


def _braid_positions(width, tokens, D):
    """Map each braid position to its component index in ``D``.

    Only valid for pure braids; positions are tracked through the first
    crossing each strand meets.
    """
    crossings, _, _ = _braid_closure(width, tokens)
    table = {}
    for x in crossings:
        for e in x:
            if e not in table:
                table[e] = len(table) + 1
    # bottom labels are 1..width before relabelling
    return {p: D.component_of[table[p + 1]] for p in range(width) if (p + 1) in table}


def reverse_components(D: PlanarDiagram, comps) -> PlanarDiagram:
    """Reverse the orientation of the given components."""
    comps = set(comps)
    crossings, over = [], []
    for c, (x, b) in enumerate(zip(D.crossings, D.over_lj)):
        under_c, over_c = D.component_of[x[0]], D.component_of[x[1]]
        if under_c in comps:
            # rotating by two slots also swaps the over-strand slots
            x = (x[2], x[3], x[0], x[1])
            b = not b
        if over_c in comps:
            b = not b
        crossings.append(x)
        over.append(b)
    return make_diagram(crossings, 0, over_lj=over, component_of=D.component_of,
                        loop_components=D.loop_components)


def mirror(D: PlanarDiagram) -> PlanarDiagram:
    """Swap over and under at every crossing (negates all signs)."""
    crossings, over = [], []
    for (i, j, k, l), b in zip(D.crossings, D.over_lj):
        if b:
            # old over-strand runs l -> j; it becomes the under-strand
            crossings.append((l, i, j, k))
            over.append(False)
        else:
            crossings.append((j, k, l, i))
            over.append(True)
    return make_diagram(crossings, 0, over_lj=over, component_of=D.component_of,
                        loop_components=D.loop_components)


def disjoint_union(D1: PlanarDiagram, D2: PlanarDiagram) -> PlanarDiagram:
    shift = max(D1.edges(), default=0)
    cshift = max(list(D1.component_of.values()) + list(D1.loop_components), default=-1) + 1
    crossings = list(D1.crossings) + [tuple(e + shift for e in x) for x in D2.crossings]
    comp = dict(D1.component_of)
    comp.update({e + shift: c + cshift for e, c in D2.component_of.items()})
    loops = tuple(D1.loop_components) + tuple(c + cshift for c in D2.loop_components)
    D = make_diagram(crossings, 0, over_lj=list(D1.over_lj) + list(D2.over_lj),
                     component_of=comp, loop_components=loops)
    return _canonical_components(D)


def components(D: PlanarDiagram) -> list[int]:
    return sorted(set(D.component_of.values()) | set(D.loop_components))


def writhe(D: PlanarDiagram) -> int:
    return D.writhe


def add_kink(D: PlanarDiagram, sign: int = 1, edge: int | None = None,
             component: int | None = None) -> PlanarDiagram:
    """Insert a curl of the given sign into ``edge`` (or a free loop of
    ``component``); the framing of that component changes by ``sign``."""
    if sign not in (1, -1):
        raise PDError("kink sign must be +1 or -1")
    if edge is None and component is not None and component in D.loop_components:
        loops = list(D.loop_components)
        loops.remove(component)
        e0 = max(D.edges(), default=0) + 1
        a, c = e0, e0 + 1
        x = (a, a, c, c) if sign > 0 else (a, c, c, a)
        comp = dict(D.component_of)
        comp.update({a: component, c: component})
        return make_diagram(list(D.crossings) + [x], 0,
                            over_lj=list(D.over_lj) + [sign > 0],
                            component_of=comp, loop_components=loops)
    if edge is None:
        if component is None:
            if not D.crossings:
                return add_kink(D, sign, component=D.loop_components[0])
            edge = D.edges()[0]
        else:
            edge = min(e for e, c in D.component_of.items() if c == component)
    ends = D.edge_endpoints()
    (c_in, s_in) = ends[edge][1]
    new_out = max(D.edges()) + 1
    loop = new_out + 1
    crossings = [list(x) for x in D.crossings]
    # the edge now enters the curl; a fresh label continues to the old target
    crossings[c_in][s_in] = new_out
    curl = (edge, new_out, loop, loop) if sign > 0 else (edge, loop, loop, new_out)
    crossings.append(curl)
    comp = dict(D.component_of)
    comp[new_out] = comp[loop] = D.component_of[edge]
    return make_diagram(crossings, 0, over_lj=list(D.over_lj) + [sign > 0],
                        component_of=comp, loop_components=D.loop_components)


# ---------------------------------------------------------------------------
# combinatorial data
# ---------------------------------------------------------------------------

def resolution_circles(D: PlanarDiagram, bits) -> list[frozenset]:
    """Circles of a resolution as sets of edge labels.

    ``bits[c] == 1`` joins (i,j)(k,l) at crossing ``c``; ``0`` joins
    (i,l)(j,k).  Free loops are appended as empty sets.
    """
    uf = _UnionFind()
    for (i, j, k, l), b in zip(D.crossings, bits):
        if b:
            uf.union(i, j)
            uf.union(k, l)
        else:
            uf.union(i, l)
            uf.union(j, k)
    groups = {}
    for e in D.edges():
        groups.setdefault(uf.find(e), set()).add(e)
    circles = sorted((frozenset(g) for g in groups.values()), key=min)
    return circles + [frozenset()] * D.loops


def oriented_bits(D: PlanarDiagram) -> tuple[int, ...]:
    """Bits selecting the oriented resolution at every crossing."""
    return tuple(1 if b else 0 for b in D.over_lj)


def seifert_data(D: PlanarDiagram) -> tuple[int, int]:
    """(number of Seifert circles k, Euler characteristic k - n)."""
    k = len(resolution_circles(D, oriented_bits(D)))
    return k, k - D.n_crossings


@dataclass(frozen=True)
class SublinkSelector:
    kept_components: frozenset

    def __init__(self, kept):
        object.__setattr__(self, "kept_components", frozenset(kept))


def sublink(D: PlanarDiagram, sel) -> PlanarDiagram:
    """Diagram of the kept components.

    Crossings between a kept and a removed component are deleted; the kept
    strand runs straight through.  Kept components left without crossings
    become free loops.
    """
    kept = sel.kept_components if isinstance(sel, SublinkSelector) else frozenset(sel)
    unknown = kept - set(components(D))
    if unknown:
        raise PDError("unknown components %r" % sorted(unknown))
    if kept == set(components(D)):
        return D
    uf = _UnionFind()
    keep_crossings = []
    for c, x in enumerate(D.crossings):
        cu, co = D.crossing_components(c)
        if cu in kept and co in kept:
            keep_crossings.append(c)
        elif cu in kept:
            uf.union(x[0], x[2])
        elif co in kept:
            uf.union(x[1], x[3])
    crossings = [tuple(uf.find(e) for e in D.crossings[c]) for c in keep_crossings]
    over = [D.over_lj[c] for c in keep_crossings]
    comp = {uf.find(e): c for e, c in D.component_of.items() if c in kept}
    used = {e for x in crossings for e in x}
    with_crossings = {comp[e] for e in used}
    loops = sorted(c for c in kept if c not in with_crossings)
    if crossings:
        Dk = _relabel(crossings, over, component_hint=comp)
        Dk = PlanarDiagram(Dk.crossings, Dk.over_lj, Dk.component_of, tuple(loops))
    else:
        Dk = PlanarDiagram((), (), {}, tuple(loops))
    return _canonical_components(Dk)
