"""Demazure-type subsets built by string closures, and the reflection-membership test.

``b_minus(nu)`` (level > 0) is the f-closure along a reduced word, i.e. the
crystal of the finite module generated from the extremal vector ``u_nu`` by
raising operators.  ``b_plus(nu)`` (level < 0) is the same construction in
the lowest-weight crystal.  Membership in the crystal of ``U^- u_nu`` is
decided on paths by their final direction (:func:`in_opposite_demazure_ls`),
with Bruhat order computed from subwords.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .crystal import DEFAULT_BUDGET, DualCrystal, bfs_closure, weyl_action
from .errors import BudgetError, UsageError
from .paths import PathCrystal, straight_path
from .rootdata import RealRoot, _rational_inverse, weight_to_json


def _closure(step, i, members, budget):
    out = dict.fromkeys(members)
    for b in list(out):
        x = step(i, b)
        while x is not None and x not in out:
            if len(out) >= budget:
                raise BudgetError("vertex budget", budget)
            out[x] = None
            x = step(i, x)
    return list(out)


def f_closure(crystal, i, members, budget=DEFAULT_BUDGET):
    """``{f_i^k b : b in members, k >= 0}`` in a deterministic order."""
    return _closure(crystal.f, i, members, budget)


def e_closure(crystal, i, members, budget=DEFAULT_BUDGET):
    return _closure(crystal.e, i, members, budget)


def closure_along_word(crystal, word, start, direction="F", budget=DEFAULT_BUDGET):
    """Apply the closures for ``word = (i_1, ..., i_l)`` with ``i_l`` first."""
    step = f_closure if direction == "F" else e_closure
    members = [start]
    for i in reversed(tuple(word)):
        members = step(crystal, i, members, budget)
    return members


@dataclass
class DemazureSet:
    crystal: object
    members: list
    word: tuple
    direction: str
    source: object
    extremal: object
    weight: object
    anchor: object = None
    _set: frozenset = field(default=None, repr=False)

    def __post_init__(self):
        self._set = frozenset(self.members)

    def __contains__(self, b):
        return b in self._set

    def __len__(self):
        return len(self.members)

    @property
    def member_set(self):
        return self._set

    def graph(self):
        """Induced crystal graph on the members, in member order."""
        inside = self._set
        bounded = _Restricted(self.crystal, inside)
        return bfs_closure(bounded, self.members, ("f", "e"))

    def to_json(self):
        datum = self.crystal.datum
        g = self.graph()
        return {
            "host": {"type": datum.type_tag, "anchor": weight_to_json(self.anchor),
                     "dual": isinstance(self.crystal, DualCrystal)},
            "weight": weight_to_json(self.weight),
            "word": list(self.word),
            "direction": self.direction,
            "members": list(range(len(self.members))),
            "extremal": g.vertex(self.extremal),
            "graph": g.to_json(_element_payload),
        }


def _element_payload(x):
    return {"path": x.to_json()} if hasattr(x, "to_json") else {"element": repr(x)}


class _Restricted:
    """A crystal view that hides everything outside ``inside``."""

    def __init__(self, crystal, inside):
        self.crystal = crystal
        self.inside = inside
        self.datum = crystal.datum
        self.index_set = crystal.index_set

    def wt(self, b):
        return self.crystal.wt(b)

    def f(self, i, b):
        x = self.crystal.f(i, b)
        return x if x in self.inside else None

    def e(self, i, b):
        x = self.crystal.e(i, b)
        return x if x in self.inside else None


def demazure_from_word(crystal, source, word, direction="F", budget=DEFAULT_BUDGET):
    """Closure set along an explicit reduced word, anchored at ``source``."""
    datum = crystal.datum
    word = tuple(word)
    if not datum.is_reduced(word):
        raise UsageError(f"word {word} is not reduced")
    members = closure_along_word(crystal, word, source, direction, budget)
    ext = weyl_action(crystal, word, source)
    return DemazureSet(crystal, members, word, direction, source, ext,
                       crystal.wt(ext), crystal.wt(source))


def b_minus(datum, nu, word=None, crystal=None, budget=DEFAULT_BUDGET):
    """Raising-closed set through ``u_nu`` for ``level(nu) > 0``.

    Lifts ``nu`` to its dominant representative ``xi`` with ``nu = w xi``
    and applies ``F_{i_1} ... F_{i_l}`` to the straight path of ``xi``.
    """
    if datum.affine and datum.level(nu) <= 0:
        raise UsageError("b_minus needs positive level (use b_plus for negative level)")
    xi, w = datum.to_dominant(nu)
    w = datum.reduce_word(w) if word is None else tuple(word)
    if datum.act(w, xi) != nu:
        raise UsageError(f"word {w} does not send the dominant weight to {nu!r}")
    crystal = crystal or PathCrystal(datum)
    return demazure_from_word(crystal, straight_path(datum, xi), w, "F", budget)


def b_plus(datum, nu, word=None, crystal=None, budget=DEFAULT_BUDGET):
    """The dual construction for ``level(nu) < 0``, computed inside ``B(-xi)``."""
    if datum.affine and datum.level(nu) >= 0:
        raise UsageError("b_plus needs negative level (use b_minus for positive level)")
    xi_minus, w = datum.to_antidominant(nu)
    w = datum.reduce_word(w) if word is None else tuple(word)
    if datum.act(w, xi_minus) != nu:
        raise UsageError(f"word {w} does not send the antidominant weight to {nu!r}")
    dual = DualCrystal(crystal or PathCrystal(datum))
    return demazure_from_word(dual, straight_path(datum, -xi_minus), w, "E", budget)


@dataclass
class StringCheck:
    ok: bool
    color: int | None = None
    string: list | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


def string_property_check(crystal, members, kind="top", colors=None):
    """Check the three-case string property of a subset.

    With ``kind="top"`` the set must be closed under ``e_i`` and meet each
    i-string in the whole string, nothing, or its top element only.
    ``kind="bottom"`` is the mirror statement (closed under ``f_i``, bottom).
    """
    s = set(members)
    colors = crystal.index_set if colors is None else colors
    close = crystal.e if kind == "top" else crystal.f
    for i in colors:
        done = set()
        for b in members:
            if b in done:
                continue
            x = close(i, b)
            if x is not None and x not in s:
                return StringCheck(False, i, None, f"not closed under {'e' if kind == 'top' else 'f'}_{i}")
            sigma = crystal.string(i, b)
            done.update(sigma)
            hit = [x in s for x in sigma]
            end = 0 if kind == "top" else len(sigma) - 1
            if all(hit) or (hit[end] and sum(hit) == 1):
                continue
            return StringCheck(False, i, sigma, f"{i}-string meets the set in {sum(hit)} of {len(sigma)}")
    return StringCheck(True)


def root_reflection_word(datum, beta):
    """A palindromic word for ``s_beta`` given a real root (or its coefficients)."""
    if isinstance(beta, RealRoot):
        return beta.reflection_word
    coeffs = tuple(beta)
    prefix = []
    while sum(coeffs) > 1 or max(coeffs) != 1:
        for j in datum.index_set:
            if datum.root_pairing(j, coeffs) > 0:
                nxt = datum.root_reflect(j, coeffs)
                if sum(nxt) < sum(coeffs) and min(nxt) >= 0:
                    coeffs = nxt
                    prefix.append(j)
                    break
        else:
            raise UsageError(f"{tuple(beta)} is not a positive real root")
    i = datum.index_set[coeffs.index(1)]
    word = tuple(prefix)
    return word + (i,) + tuple(reversed(word))


def extremal_chain(datum, start, target, box):
    """Descents ``mu -> s_i mu`` (``<h_i, mu> > 0``) leading from ``start`` to ``target``.

    Only weights ``mu`` with ``start - mu`` inside ``box`` (simple-root
    coordinates) are visited.  Returns ``[(i, k), ...]`` or None: the crystal
    counterpart is ``f_i^k`` applied to an extremal element of weight ``mu``.
    """
    prev = {start: None}
    todo = deque([start])
    while todo:
        mu = todo.popleft()
        if mu == target:
            chain = []
            while prev[mu] is not None:
                mu, step = prev[mu]
                chain.append(step)
            return chain[::-1]
        for i in datum.index_set:
            k = datum.pairing(i, mu)
            if k <= 0:
                continue
            nu = datum.reflect(i, mu)
            if nu in prev:
                continue
            coords = _root_coordinates(datum, start - nu)
            if coords is None or any(c > b for c, b in zip(coords, box)):
                continue
            prev[nu] = (mu, (i, k))
            todo.append(nu)
    return None


def lower_reachable(crystal, start, target, budget=DEFAULT_BUDGET):
    """Whether ``target`` is ``f_{j_1} ... f_{j_m} start``; returns ``(bool, certificate)``.

    An extremal descent chain is tried first and replayed on the crystal.
    Otherwise the f-closure of ``start`` is searched, restricted to weights
    whose difference from ``start`` stays below that of ``target``
    coordinatewise, which keeps the search finite.
    """
    datum = crystal.datum
    goal = _root_coordinates(datum, crystal.wt(start) - crystal.wt(target))
    if goal is None:
        return False, None
    if all(c == 0 for c in goal):
        return start == target, []
    chain = extremal_chain(datum, crystal.wt(start), crystal.wt(target), goal)
    if chain is not None:
        x = start
        for i, k in chain:
            x = crystal.f_power(i, x, k)
        if x == target:
            return True, [list(step) for step in chain]
    seen = {start: (0,) * datum.size}
    todo = [start]
    while todo:
        x = todo.pop()
        cx = seen[x]
        for p, i in enumerate(datum.index_set):
            if cx[p] >= goal[p]:
                continue
            y = crystal.f(i, x)
            if y is None or y in seen:
                continue
            if y == target:
                return True, "search"
            if len(seen) >= budget:
                raise BudgetError("vertex budget", budget)
            seen[y] = cx[:p] + (cx[p] + 1,) + cx[p + 1:]
            todo.append(y)
    return False, None


def _root_coordinates(datum, w):
    """Coefficients of ``w`` in simple roots if it lies in the nonnegative root lattice."""
    if datum.affine:
        # only alpha_0 carries a delta coordinate
        c0 = w.delta
        idx = [datum.pos(i) for i in datum.I0]
        rhs = [w.lam[r] - datum.cartan[r][0] * c0 for r in idx]
        sub = [[datum.cartan[r][c] for c in idx] for r in idx]
        inv = _rational_inverse(sub)
        coords = [c0] + [sum(inv[r][c] * rhs[c] for c in range(len(idx))) for r in range(len(idx))]
    else:
        inv = _rational_inverse([list(r) for r in datum.cartan])
        coords = [sum(inv[r][c] * w.lam[c] for c in range(datum.size)) for r in range(datum.size)]
    if any(Fraction(c).denominator != 1 or c < 0 for c in coords):
        return None
    candidate = datum.zero()
    for i, c in zip(datum.index_set, coords):
        candidate = candidate + c * datum.alpha(i)
    if candidate != w:
        return None
    return tuple(int(c) for c in coords)


def orbit_interval(datum, mu):
    """All weights ``v xi`` with ``v <= u`` in Bruhat order, where ``mu = u xi``.

    Uses the subword property: the lower Bruhat interval of ``u`` is the set
    of products of subwords of any reduced word for ``u``.
    """
    if datum.affine and datum.level(mu) < 0:
        xi, word = datum.to_antidominant(mu)
    else:
        xi, word = datum.to_dominant(mu)
    reached = {xi}
    for i in reversed(datum.reduce_word(word)):
        reached |= {datum.reflect(i, x) for x in reached}
    return reached


def bruhat_leq(datum, nu, mu):
    """``nu <= mu`` for two weights in one Weyl orbit (minimal coset representatives)."""
    return nu in orbit_interval(datum, mu)


def initial_direction(path):
    return path.segments[0][1]


def final_direction(path):
    return path.segments[-1][1]


def in_demazure_ls(datum, path, lam):
    """Membership in the raising-closed set through ``u_lam``: initial direction ``<= lam``."""
    return bruhat_leq(datum, initial_direction(path), lam)


def in_opposite_demazure_ls(datum, path, lam):
    """Membership in the crystal of ``U^- u_lam``: final direction ``>= lam``."""
    return bruhat_leq(datum, lam, final_direction(path))


@dataclass
class PropBetaResult:
    holds: bool
    literal_b_minus: bool
    f_chain: object
    target_weight: object
    word: tuple

    def __bool__(self):
        return self.holds


def prop_beta_check(datum, lam, beta, crystal=None, budget=DEFAULT_BUDGET):
    """Test ``S_{s_beta} u_lam in B(U^- u_lam)`` at the crystal level.

    ``u_lam`` and its image are computed by the Weyl group action on paths;
    membership uses the final-direction description of ``B(U^- u_lam)``.
    ``literal_b_minus`` records membership in ``b_minus(lam)`` and
    ``f_chain`` an explicit descent chain of f-strings when one exists; both
    are informational.
    """
    coeffs = beta.coeffs if isinstance(beta, RealRoot) else tuple(beta)
    if datum.level(lam) <= 0:
        raise UsageError("prop_beta_check needs positive level")
    if datum.inner(datum.root_to_weight(coeffs), lam) < 0:
        raise UsageError("need (beta, lam) >= 0")
    crystal = crystal or PathCrystal(datum)
    xi, w = datum.to_dominant(lam)
    w = datum.reduce_word(w)
    u_lam = weyl_action(crystal, w, straight_path(datum, xi))
    sword = root_reflection_word(datum, beta)
    target = weyl_action(crystal, sword, u_lam)
    if crystal.wt(target) != datum.act(sword, lam):
        raise UsageError("Weyl group action on the crystal disagrees with the weight action")
    holds = in_opposite_demazure_ls(datum, target, lam)
    box = _root_coordinates(datum, lam - crystal.wt(target))
    chain = None if box is None else extremal_chain(datum, lam, crystal.wt(target), box)
    if chain is not None:
        x = u_lam
        for i, k in chain:
            x = crystal.f_power(i, x, k)
        if x != target:
            chain = None
    literal = target in b_minus(datum, lam, crystal=crystal, budget=budget)
    return PropBetaResult(holds, literal, chain, crystal.wt(target), sword)
