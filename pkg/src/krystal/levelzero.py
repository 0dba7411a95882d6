"""Level-zero fundamental crystals for type A_n^(1).

The finite crystal of the level-zero fundamental module is realized on
k-subsets of ``1..n+1`` (single columns) with the 0-arrows obtained by
conjugating the 1-arrows with promotion.  Its Z-cover, graded by a cocycle
lift of the weights, realizes the extremal weight crystal ``B(varpi_k)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb

from .crystal import DEFAULT_BUDGET, Crystal, bfs_closure
from .errors import BudgetError, ConfigurationError, ModelError, TheoremViolation, UsageError


def _check_type_a(datum):
    if not (datum.affine and not datum.twisted and datum.family == "A"):
        raise ConfigurationError(f"column model needs type A_n^(1), got {datum.type_tag}")


def classical_f(i, t):
    if i in t and i + 1 not in t:
        return tuple(sorted((set(t) - {i}) | {i + 1}))
    return None


def classical_e(i, t):
    if i + 1 in t and i not in t:
        return tuple(sorted((set(t) - {i + 1}) | {i}))
    return None


def promotion(t, n):
    """Add 1 to every entry modulo ``n+1`` (so ``n+1 -> 1``) and re-sort."""
    return tuple(sorted(x % (n + 1) + 1 for x in t))


def promotion_inverse(t, n):
    return tuple(sorted((x - 2) % (n + 1) + 1 for x in t))


class KRCrystal(Crystal):
    """Columns of height ``k`` for ``A_n^(1)``; weights are classical (delta = 0)."""

    def __init__(self, datum, k):
        _check_type_a(datum)
        n = datum.rank
        if not 1 <= k <= n:
            raise UsageError(f"k must lie in 1..{n}")
        self.datum = datum
        self.n = n
        self.k = k

    @property
    def top(self):
        return tuple(range(1, self.k + 1))

    def elements(self):
        from itertools import combinations
        return list(combinations(range(1, self.n + 2), self.k))

    def _pair(self, i, t):
        if i == 0:
            return int(self.n + 1 in t) - int(1 in t)
        return int(i in t) - int(i + 1 in t)

    def wt(self, t):
        return self.datum.weight([self._pair(i, t) for i in self.datum.index_set], 0)

    def f(self, i, t):
        if i == 0:
            x = classical_f(1, promotion(t, self.n))
            return None if x is None else promotion_inverse(x, self.n)
        return classical_f(i, t)

    def e(self, i, t):
        if i == 0:
            x = classical_e(1, promotion(t, self.n))
            return None if x is None else promotion_inverse(x, self.n)
        return classical_e(i, t)

    def eps(self, i, t):
        return 0 if self.e(i, t) is None else 1

    def phi(self, i, t):
        return 0 if self.f(i, t) is None else 1


def kr_crystal(datum, k):
    """Materialize the column crystal; vertex 0 is ``[1..k]``."""
    crystal = KRCrystal(datum, k)
    g = bfs_closure(crystal, [crystal.top], ("f", "e"))
    if len(g) != comb(crystal.n + 1, k):
        raise ModelError(f"column crystal has {len(g)} vertices, expected {comb(crystal.n + 1, k)}")
    return g


def special_vector(crystal):
    """The unique column with ``eps_i = 0`` on ``I_0`` and ``eps_0 <= 1``."""
    hits = [t for t in crystal.elements()
            if all(crystal.eps(i, t) == 0 for i in crystal.datum.I0) and crystal.eps(0, t) <= 1]
    if len(hits) != 1:
        raise TheoremViolation(f"expected one special vector, found {len(hits)}: {hits}")
    return hits[0]


class Cover(Crystal):
    """The Z-cover of a column crystal; elements are ``(column, m)``.

    Weights are lifted along a breadth-first spanning tree rooted at
    ``[1..k]`` with lift ``varpi_k``; a non-tree arrow shifts ``m`` by its
    cocycle value.  The deck transformation ``z`` adds 1 to ``m`` and has
    weight ``c_k delta``.
    """

    def __init__(self, base):
        self.base = base
        self.datum = datum = base.datum
        self.k = base.k
        self.c = datum.c_const(base.k)
        delta = datum.delta
        top = base.top
        lift = {top: datum.varpi(base.k)}
        queue = deque([top])
        while queue:
            t = queue.popleft()
            for i in datum.index_set:
                for s, d, sign in ((t, base.f(i, t), -1), (base.e(i, t), t, 1)):
                    other = d if sign == -1 else s
                    if other is None or other in lift:
                        continue
                    lift[other] = lift[t] + sign * datum.alpha(i)
                    queue.append(other)
        self.lift = lift
        self.shift = {}
        for t in lift:
            for i in datum.index_set:
                d = base.f(i, t)
                if d is None:
                    continue
                gap = lift[t] - datum.alpha(i) - lift[d]
                if any(gap.lam):
                    raise ModelError(f"classical weights disagree on arrow {t} -{i}-> {d}")
                m = gap.delta / self.c
                if m.denominator != 1:
                    raise ModelError(f"cocycle {gap.delta} on {t} -{i}-> {d} is not in c_k Z")
                self.shift[(t, i)] = int(m)
        self._delta = delta

    def wt(self, x):
        t, m = x
        return self.lift[t] + (m * self.c) * self._delta

    def f(self, i, x):
        t, m = x
        d = self.base.f(i, t)
        return None if d is None else (d, m + self.shift[(t, i)])

    def e(self, i, x):
        t, m = x
        s = self.base.e(i, t)
        return None if s is None else (s, m - self.shift[(s, i)])

    def eps(self, i, x):
        return self.base.eps(i, x[0])

    def phi(self, i, x):
        return self.base.phi(i, x[0])

    def z(self, x, power=1):
        return (x[0], x[1] + power)

    def element_of_weight(self, w):
        """The cover element of weight ``w`` (extremal weights have multiplicity one)."""
        for t, lw in self.lift.items():
            if lw.lam == w.lam:
                m = (w.delta - lw.delta) / self.c
                if m.denominator != 1:
                    raise UsageError(f"{w!r} is not a weight of the cover")
                return (t, int(m))
        raise UsageError(f"{w!r} is not a weight of the cover")


def affinize(datum, k):
    return Cover(KRCrystal(datum, k))


def cover_to_json(x):
    return {"base": list(x[0]), "shift": x[1]}


def xi0(datum, k):
    """``to_dominant(Lambda_0 + varpi_k)``: the dominant level-one weight and its word."""
    return datum.to_dominant(datum.Lambda(0) + datum.varpi(k))


def mu_and_kprime(datum, k):
    """``mu = w_0 varpi_k`` (classical antidominant) and ``k'`` with ``mu + varpi_k' in Z delta``."""
    mu, word = datum.to_antidominant(datum.varpi(k), classical=True)
    for kp in datum.I0:
        diff = mu + datum.varpi(kp)
        if not any(diff.lam) and diff.delta.denominator == 1:
            return mu, word, kp
    raise TheoremViolation(f"no k' with mu + varpi_k' in Z delta for {mu!r}")


@dataclass
class LevelZeroClosure:
    members: list
    difference: list
    ceiling: int
    seed: tuple
    z_seed_reached: bool


def b_plus_level0(cover, n_max=2, headroom=2, budget=DEFAULT_BUDGET):
    """Raising closure of ``{z^m u_mu : |m| <= n_max}`` inside the cover, cut at a grade ceiling.

    The closure is explored up to ``headroom`` grades above the top seed.
    ``difference`` lists members ``x`` with ``z^{-1} x`` outside the set,
    restricted to grades at most ``n_max + 1`` above ``u_mu`` so the cut
    itself does not create entries.
    """
    datum = cover.datum
    mu, _, _ = mu_and_kprime(datum, cover.k)
    u_mu = cover.element_of_weight(mu)
    ceiling = u_mu[1] + n_max + headroom
    window = u_mu[1] + n_max + 1
    seeds = [cover.z(u_mu, m) for m in range(-n_max, n_max + 1)]
    inside = {}
    queue = deque()
    for s in seeds:
        inside[s] = None
        queue.append(s)
    while queue:
        x = queue.popleft()
        for i in datum.index_set:
            y = cover.e(i, x)
            if y is not None and y[1] <= ceiling and y not in inside:
                if len(inside) >= budget:
                    raise BudgetError("vertex budget", budget)
                inside[y] = None
                queue.append(y)
    members = list(inside)
    difference = [x for x in members if x[1] <= window and cover.z(x, -1) not in inside]
    reached = _e_reachable(cover, u_mu, cover.z(u_mu), ceiling)
    return LevelZeroClosure(members, difference, ceiling, u_mu, reached)


def _e_reachable(cover, start, target, ceiling):
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        if x == target:
            return True
        for i in cover.datum.index_set:
            y = cover.e(i, x)
            if y is not None and y[1] <= ceiling and y not in seen:
                seen.add(y)
                todo.append(y)
    return False

