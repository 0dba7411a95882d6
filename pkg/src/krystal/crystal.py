"""Abstract crystals, tensor products, Weyl group action and crystal graphs.

A crystal is modelled as a *structure* object carrying the operators; its
elements are plain hashable values.  ``None`` plays the role of the formal
zero element.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import BudgetError, UsageError
from .rootdata import weight_to_json

DEFAULT_BUDGET = 200_000


class Crystal:
    """Base class for regular crystals.

    Subclasses implement :meth:`wt`, :meth:`e` and :meth:`f`.  ``eps`` and
    ``phi`` default to string-length measurement (regular crystals only).
    """

    datum = None

    @property
    def index_set(self):
        return self.datum.index_set

    def wt(self, b):
        raise NotImplementedError

    def e(self, i, b):
        raise NotImplementedError

    def f(self, i, b):
        raise NotImplementedError

    def eps(self, i, b):
        n = 0
        b = self.e(i, b)
        while b is not None:
            n += 1
            b = self.e(i, b)
        return n

    def phi(self, i, b):
        return self.eps(i, b) + self.datum.pairing(i, self.wt(b))

    def f_string(self, i, b):
        """``[b, f_i b, f_i^2 b, ...]`` down to the end of the string."""
        out = [b]
        b = self.f(i, b)
        while b is not None:
            out.append(b)
            b = self.f(i, b)
        return out

    def string(self, i, b):
        """The full i-string through ``b``, listed from the top."""
        top = b
        nxt = self.e(i, top)
        while nxt is not None:
            top = nxt
            nxt = self.e(i, top)
        return self.f_string(i, top)

    def e_power(self, i, b, k):
        for _ in range(k):
            if b is None:
                return None
            b = self.e(i, b)
        return b

    def f_power(self, i, b, k):
        for _ in range(k):
            if b is None:
                return None
            b = self.f(i, b)
        return b


class TensorCrystal(Crystal):
    """The tensor product ``B1 (x) B2``.

    ``f_i`` acts on the left factor iff ``phi_i(b1) > eps_i(b2)``;
    ``e_i`` acts on the left factor iff ``phi_i(b1) >= eps_i(b2)``.
    Elements are pairs ``(b1, b2)``.
    """

    def __init__(self, left, right):
        if left.datum != right.datum:
            raise UsageError("tensor factors over different data")
        self.left = left
        self.right = right
        self.datum = left.datum

    def wt(self, b):
        return self.left.wt(b[0]) + self.right.wt(b[1])

    def eps(self, i, b):
        b1, b2 = b
        return max(self.left.eps(i, b1),
                   self.right.eps(i, b2) - self.datum.pairing(i, self.left.wt(b1)))

    def phi(self, i, b):
        b1, b2 = b
        return max(self.right.phi(i, b2),
                   self.left.phi(i, b1) + self.datum.pairing(i, self.right.wt(b2)))

    def f(self, i, b):
        b1, b2 = b
        if self.left.phi(i, b1) > self.right.eps(i, b2):
            return (self.left.f(i, b1), b2)
        c2 = self.right.f(i, b2)
        return None if c2 is None else (b1, c2)

    def e(self, i, b):
        b1, b2 = b
        if self.left.phi(i, b1) >= self.right.eps(i, b2):
            c1 = self.left.e(i, b1)
            return None if c1 is None else (c1, b2)
        return (b1, self.right.e(i, b2))


class DualCrystal(Crystal):
    """The dual crystal: ``e`` and ``f`` swapped, weights negated."""

    def __init__(self, base):
        self.base = base
        self.datum = base.datum

    def wt(self, b):
        return -self.base.wt(b)

    def e(self, i, b):
        return self.base.f(i, b)

    def f(self, i, b):
        return self.base.e(i, b)

    def eps(self, i, b):
        return self.base.phi(i, b)

    def phi(self, i, b):
        return self.base.eps(i, b)


def dualize(obj):
    """Dual of a crystal structure or of a :class:`CrystalGraph` (involutive)."""
    if isinstance(obj, CrystalGraph):
        return obj.dual()
    if isinstance(obj, DualCrystal):
        return obj.base
    return DualCrystal(obj)


# --- Weyl group action ----------------------------------------------------------

def weyl_reflect(crystal, i, b):
    """``S_{s_i} b``: ``f_i^k b`` if ``k = <h_i, wt b> >= 0``, else ``e_i^{-k} b``."""
    k = crystal.datum.pairing(i, crystal.wt(b))
    if k > 0:
        return crystal.f_power(i, b, k)
    if k < 0:
        return crystal.e_power(i, b, -k)
    return b


def weyl_action(crystal, word, b):
    """``S_w b`` for ``w = s_{i_1} ... s_{i_l}`` (rightmost letter acts first)."""
    if isinstance(word, int):
        word = (word,)
    for i in reversed(tuple(word)):
        b = weyl_reflect(crystal, i, b)
    return b


@dataclass
class ExtremalityResult:
    extremal: bool
    exhaustive: bool
    explored: int
    max_length: int
    witness: dict | None = None

    def __bool__(self):
        return self.extremal


def is_extremal(crystal, b, max_length):
    """Check the extremality conditions on ``S_w b`` for all ``l(w) <= max_length``.

    The orbit is explored breadth-first under the simple reflections, so all
    words up to the bound are covered.  ``exhaustive`` is set when the orbit
    closed before reaching the bound, in which case the answer is exact.
    """
    datum = crystal.datum
    seen = {b: ()}
    frontier = [b]
    depth = 0
    while True:
        for x in frontier:
            wt = crystal.wt(x)
            for i in crystal.index_set:
                k = datum.pairing(i, wt)
                if k >= 0 and crystal.e(i, x) is not None:
                    return ExtremalityResult(False, False, len(seen), max_length,
                                             {"word": list(seen[x]), "color": i, "operator": "e"})
                if k <= 0 and crystal.f(i, x) is not None:
                    return ExtremalityResult(False, False, len(seen), max_length,
                                             {"word": list(seen[x]), "color": i, "operator": "f"})
        if depth == max_length:
            return ExtremalityResult(True, False, len(seen), max_length)
        nxt = []
        for x in frontier:
            for i in crystal.index_set:
                y = weyl_reflect(crystal, i, x)
                if y not in seen:
                    seen[y] = (i,) + seen[x]
                    nxt.append(y)
        if not nxt:
            return ExtremalityResult(True, True, len(seen), max_length)
        frontier = nxt
        depth += 1


# --- crystal graphs ---------------------------------------------------------

class CrystalGraph:
    """A materialized crystal: vertices with weights and colored f-edges.

    An edge ``(src, i, dst)`` means ``f_i(src) = dst``.  ``elements`` keeps
    the underlying crystal elements (payloads) in vertex order.
    """

    def __init__(self, datum, elements, weights, edges, sources, colors, truncation=None):
        self.datum = datum
        self.elements = list(elements)
        self.weights = list(weights)
        self.index = {x: v for v, x in enumerate(self.elements)}
        self.colors = tuple(sorted(colors))
        self.edges = sorted(edges, key=lambda t: (t[0], t[1], t[2]))
        self.sources = list(sources)
        self.truncation = truncation
        self.fnext = {}
        self.enext = {}
        for s, i, d in self.edges:
            if (s, i) in self.fnext or (d, i) in self.enext:
                raise UsageError(f"color {i} has degree > 1 at an edge {s}->{d}")
            self.fnext[(s, i)] = d
            self.enext[(d, i)] = s

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def vertex(self, x):
        return self.index[x]

    def character(self):
        return Counter(self.weights)

    def dual(self):
        return CrystalGraph(self.datum, self.elements, [-w for w in self.weights],
                            [(d, i, s) for s, i, d in self.edges], self.sources,
                            self.colors, self.truncation)

    def restrict(self, colors):
        colors = tuple(sorted(colors))
        if not colors:
            raise UsageError("restriction needs a nonempty color set")
        keep = set(colors)
        return CrystalGraph(self.datum, self.elements, self.weights,
                            [t for t in self.edges if t[1] in keep], self.sources,
                            colors, self.truncation)

    def induced(self, vertex_ids, sources=None):
        """Subgraph on the given vertex ids (renumbered in increasing order)."""
        ids = sorted(set(vertex_ids))
        remap = {v: n for n, v in enumerate(ids)}
        edges = [(remap[s], i, remap[d]) for s, i, d in self.edges if s in remap and d in remap]
        src = [remap[v] for v in (sources if sources is not None else self.sources) if v in remap]
        return CrystalGraph(self.datum, [self.elements[v] for v in ids],
                            [self.weights[v] for v in ids], edges, src, self.colors, self.truncation)

    def highest_weight_vertices(self, colors=None):
        colors = self.colors if colors is None else colors
        return [v for v in range(len(self)) if all((v, i) not in self.enext for i in colors)]

    def is_connected(self, start, colors=None):
        return len(self._component(start, colors)) == len(self)

    def _component(self, start, colors=None):
        colors = self.colors if colors is None else colors
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for i in colors:
                for w in (self.fnext.get((v, i)), self.enext.get((v, i))):
                    if w is not None and w not in seen:
                        seen.add(w)
                        todo.append(w)
        return seen

    def to_json(self, payload=None):
        verts = []
        for v, (x, w) in enumerate(zip(self.elements, self.weights)):
            item = {"id": v, "weight": weight_to_json(w)}
            if payload is not None:
                item.update(payload(x))
            verts.append(item)
        return {
            "type": self.datum.type_tag,
            "vertices": verts,
            "edges": [{"src": s, "color": i, "dst": d} for s, i, d in self.edges],
            "sources": list(self.sources),
            "truncation": self.truncation,
        }

    def to_dot(self, label=None, name="crystal"):
        palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gray"]
        lines = [f"digraph {name} {{"]
        for v, x in enumerate(self.elements):
            text = label(x) if label else str(v)
            lines.append(f'  {v} [label="{text}"];')
        for s, i, d in self.edges:
            color = palette[self.datum.pos(i) % len(palette)]
            lines.append(f'  {s} -> {d} [label="{i}", color={color}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class GraphCrystal(Crystal):
    """Crystal structure read off a materialized graph; elements are vertex ids."""

    def __init__(self, graph):
        self.graph = graph
        self.datum = graph.datum

    def wt(self, b):
        return self.graph.weights[b]

    def f(self, i, b):
        return self.graph.fnext.get((b, i))

    def e(self, i, b):
        return self.graph.enext.get((b, i))


def bfs_closure(crystal, seeds, directions=("f",), colors=None, depth=None,
                budget=DEFAULT_BUDGET):
    """Materialize everything reachable from ``seeds`` by the allowed operators.

    Vertices are numbered breadth-first, colors in increasing order, ``f``
    before ``e``.  ``depth`` bounds the number of operator applications; the
    returned graph is the induced subgraph on the reached vertices.
    """
    colors = tuple(sorted(crystal.index_set if colors is None else colors))
    directions = tuple(d for d in ("f", "e") if d in directions)
    elements = []
    index = {}
    dist = []
    queue = deque()
    for s in seeds:
        if s not in index:
            index[s] = len(elements)
            elements.append(s)
            dist.append(0)
            queue.append(s)
    while queue:
        x = queue.popleft()
        dx = dist[index[x]]
        if depth is not None and dx >= depth:
            continue
        for i in colors:
            for d in directions:
                y = crystal.f(i, x) if d == "f" else crystal.e(i, x)
                if y is not None and y not in index:
                    if len(elements) >= budget:
                        raise BudgetError("vertex budget", budget)
                    index[y] = len(elements)
                    elements.append(y)
                    dist.append(dx + 1)
                    queue.append(y)
    edges = []
    for v, x in enumerate(elements):
        for i in colors:
            y = crystal.f(i, x)
            if y is not None and y in index:
                edges.append((v, i, index[y]))
    truncation = {"kind": "depth", "bound": depth} if depth is not None else None
    weights = [crystal.wt(x) for x in elements]
    return CrystalGraph(crystal.datum, elements, weights, edges,
                        [index[s] for s in dict.fromkeys(seeds)], colors, truncation)


def check_regular(crystal, elements, colors=None):
    """Return the first ``(element, color)`` where ``phi - eps != <h_i, wt>``, else None."""
    datum = crystal.datum
    for b in elements:
        wt = crystal.wt(b)
        for i in (colors or crystal.index_set):
            if crystal.phi(i, b) - crystal.eps(i, b) != datum.pairing(i, wt):
                return b, i
    return None


# --- isomorphism -------------------------------------------------------------

@dataclass
class IsoResult:
    isomorphic: bool
    mapping: dict = field(default_factory=dict)
    shift: object = None
    conflict: str | None = None

    def __bool__(self):
        return self.isomorphic


def iso_check(g1, s1, g2, s2, colors=None, weights="delta"):
    """Decide whether ``s1 -> s2`` extends to a color-preserving isomorphism.

    Each color has in/out degree at most one, so the map is forced by
    propagation along edges; success needs a bijection preserving edges and
    non-edges.  ``weights="delta"`` requires ``wt2(phi(v)) - wt1(v)`` to be
    one global multiple of delta (reported as ``shift``);
    ``weights="pairing"`` compares only ``<h_i, wt>`` for the compared colors;
    ``weights=None`` ignores weights.
    """
    if colors is None:
        colors = tuple(c for c in g1.colors if c in set(g2.colors))
    colors = tuple(sorted(colors))
    for g, s, name in ((g1, s1, "first"), (g2, s2, "second")):
        if not g.is_connected(s, colors):
            raise UsageError(f"{name} graph is not connected from its source under colors {colors}")
    datum = g1.datum
    shift = None
    if weights == "delta":
        diff = g2.weights[s2] - g1.weights[s1]
        if any(diff.lam):
            return IsoResult(False, conflict=f"source weights differ outside Q*delta: {diff!r}")
        shift = diff.delta

    def weights_agree(v, w):
        if weights == "delta":
            d = g2.weights[w] - g1.weights[v]
            return not any(d.lam) and d.delta == shift
        if weights == "pairing":
            return all(datum.pairing(i, g1.weights[v]) == datum.pairing(i, g2.weights[w]) for i in colors)
        return True

    mapping = {s1: s2}
    inverse = {s2: s1}
    queue = deque([s1])
    while queue:
        v = queue.popleft()
        w = mapping[v]
        if not weights_agree(v, w):
            return IsoResult(False, mapping, shift, f"weight mismatch at vertex {v} -> {w}")
        for i in colors:
            for table1, table2, op in ((g1.fnext, g2.fnext, "f"), (g1.enext, g2.enext, "e")):
                a = table1.get((v, i))
                b = table2.get((w, i))
                if (a is None) != (b is None):
                    return IsoResult(False, mapping, shift,
                                     f"{op}_{i} defined on one side only at vertex {v} -> {w}")
                if a is None:
                    continue
                if a in mapping:
                    if mapping[a] != b:
                        return IsoResult(False, mapping, shift, f"inconsistent image of {a}")
                elif b in inverse:
                    return IsoResult(False, mapping, shift, f"vertex {b} hit twice")
                else:
                    mapping[a] = b
                    inverse[b] = a
                    queue.append(a)
    if len(mapping) != len(g1) or len(mapping) != len(g2):
        return IsoResult(False, mapping, shift,
                         f"sizes differ: {len(g1)} vs {len(g2)} (matched {len(mapping)})")
    return IsoResult(True, mapping, shift)
