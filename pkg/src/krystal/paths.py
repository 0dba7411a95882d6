"""Piecewise-linear paths realizing highest-weight crystals ``B(lam)`` for dominant ``lam``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .crystal import DEFAULT_BUDGET, Crystal, bfs_closure
from .errors import UsageError
from .rootdata import _frac_str, weight_to_json


@dataclass(frozen=True)
class LSPath:
    """A piecewise linear path from 0, stored as ``(duration, direction)`` segments.

    Segments are canonical: positive reduced durations summing to 1 and no
    two adjacent equal directions, so equality is structural.
    """

    segments: tuple

    @classmethod
    def make(cls, segments):
        merged = []
        for dur, nu in segments:
            dur = Fraction(dur)
            if dur == 0:
                continue
            if merged and merged[-1][1] == nu:
                merged[-1] = (merged[-1][0] + dur, nu)
            else:
                merged.append((dur, nu))
        if sum(d for d, _ in merged) != 1:
            raise UsageError("segment durations must sum to 1")
        return cls(tuple(merged))

    @property
    def breaks(self):
        out = [Fraction(0)]
        for dur, _ in self.segments:
            out.append(out[-1] + dur)
        return out

    @property
    def dirs(self):
        return [nu for _, nu in self.segments]

    @property
    def endpoint(self):
        total = None
        for dur, nu in self.segments:
            step = dur * nu
            total = step if total is None else total + step
        return total

    def to_json(self):
        return {"breaks": [_frac_str(t) for t in self.breaks],
                "dirs": [weight_to_json(nu) for nu in self.dirs]}

    def __repr__(self):
        parts = ", ".join(f"{_frac_str(d)}*{nu.lam}" for d, nu in self.segments)
        return f"LSPath({parts})"


def straight_path(datum, lam):
    """The highest-weight element ``t -> t*lam``."""
    if not datum.is_dominant(lam):
        raise UsageError(f"{lam!r} is not dominant")
    if not lam.is_integral:
        raise UsageError(f"{lam!r} is not integral")
    return LSPath(((Fraction(1), lam),))


def concat(p1, p2):
    """``p1 * p2``: run ``p1`` then ``p2``, each at double speed."""
    half = Fraction(1, 2)
    return LSPath.make([(half * d, 2 * nu) for d, nu in p1.segments]
                       + [(half * d, 2 * nu) for d, nu in p2.segments])


def _heights(datum, i, path):
    """Values of ``<h_i, path(t)>`` at the breakpoints, plus segment slopes."""
    vals = [Fraction(0)]
    slopes = []
    for dur, nu in path.segments:
        s = Fraction(datum.pairing(i, nu))
        slopes.append(s)
        vals.append(vals[-1] + dur * s)
    return vals, slopes


def _first_hit(breaks, vals, slopes, start, level):
    """First time ``>= breaks[start]`` where the height equals ``level``."""
    if vals[start] == level:
        return breaks[start]
    for j in range(start, len(slopes)):
        lo, hi = vals[j], vals[j + 1]
        if min(lo, hi) <= level <= max(lo, hi) and slopes[j] != 0:
            return breaks[j] + (level - lo) / slopes[j]
    return None


def _last_hit_before(breaks, vals, slopes, stop_time, level):
    """Last time ``<= stop_time`` where the height equals ``level``."""
    best = None
    for j, s in enumerate(slopes):
        t_lo, t_hi = breaks[j], breaks[j + 1]
        if t_lo > stop_time:
            break
        hi_t = min(t_hi, stop_time)
        v_hi = vals[j] + (hi_t - t_lo) * s
        if s == 0:
            if vals[j] == level:
                best = hi_t
        elif min(vals[j], v_hi) <= level <= max(vals[j], v_hi):
            best = t_lo + (level - vals[j]) / s
    if best is None and vals[0] == level:
        best = Fraction(0)
    return best


def _reflect_window(datum, i, path, t0, t1):
    """Apply ``s_i`` to the directions on ``[t0, t1]``."""
    out = []
    start = Fraction(0)
    for dur, nu in path.segments:
        end = start + dur
        cuts = sorted({start, end} | {t for t in (t0, t1) if start < t < end})
        for a, b in zip(cuts, cuts[1:]):
            inside = t0 <= a and b <= t1
            out.append((b - a, datum.reflect(i, nu) if inside else nu))
        start = end
    return LSPath.make(out)


def path_f(datum, i, path):
    breaks = path.breaks
    vals, slopes = _heights(datum, i, path)
    m = min(vals)
    if vals[-1] - m < 1:
        return None
    j0 = max(j for j, v in enumerate(vals) if v == m)
    t0 = breaks[j0]
    t1 = _first_hit(breaks, vals, slopes, j0, m + 1)
    return _reflect_window(datum, i, path, t0, t1)


def path_e(datum, i, path):
    breaks = path.breaks
    vals, slopes = _heights(datum, i, path)
    m = min(vals)
    if m > -1:
        return None
    j1 = min(j for j, v in enumerate(vals) if v == m)
    t1 = breaks[j1]
    t0 = _last_hit_before(breaks, vals, slopes, t1, m + 1)
    return _reflect_window(datum, i, path, t0, t1)


class PathCrystal(Crystal):
    """The crystal of all paths over ``datum`` with memoized root operators."""

    def __init__(self, datum):
        self.datum = datum
        self._f = {}
        self._e = {}

    def wt(self, b):
        return b.endpoint

    def f(self, i, b):
        key = (i, b)
        if key not in self._f:
            self._f[key] = path_f(self.datum, i, b)
        return self._f[key]

    def e(self, i, b):
        key = (i, b)
        if key not in self._e:
            self._e[key] = path_e(self.datum, i, b)
        return self._e[key]

    def eps(self, i, b):
        vals, _ = _heights(self.datum, i, b)
        return int(-min(vals))

    def phi(self, i, b):
        vals, _ = _heights(self.datum, i, b)
        return int(vals[-1] - min(vals))

    def straight(self, lam):
        return straight_path(self.datum, lam)


def build_B(datum, lam, depth=None, budget=DEFAULT_BUDGET, crystal=None):
    """Materialize ``B(lam)`` from its straight path.

    A depth bound is required for affine data and ignored for finite ones.
    """
    crystal = crystal or PathCrystal(datum)
    u = straight_path(datum, lam)
    if datum.affine:
        if depth is None:
            raise UsageError("affine B(lam) needs a depth bound")
    else:
        depth = None
    return bfs_closure(crystal, [u], ("f",), depth=depth, budget=budget)


def lowest_weight_B(datum, neg_lam, depth=None, budget=DEFAULT_BUDGET):
    """``B(-lam)`` as the dual of ``B(lam)``; pass the lowest weight ``-lam``."""
    return build_B(datum, -neg_lam, depth, budget).dual()
