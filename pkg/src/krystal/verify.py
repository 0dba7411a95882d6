"""The acceptance catalogue: every check returns :class:`VerificationReport` records."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

from . import qops
from .crystal import TensorCrystal, bfs_closure, is_extremal, iso_check
from .demazure import (b_minus, f_closure, string_property_check, e_closure,
                       prop_beta_check)
from .crystal import DualCrystal
from .errors import BudgetError, KrystalError
from .levelzero import (Cover, KRCrystal, b_plus_level0, kr_crystal, mu_and_kprime,
                        special_vector, xi0, cover_to_json)
from .paths import PathCrystal, build_B, concat, straight_path
from .rootdata import load_datum, weight_to_json

STATUSES = ("pass", "fail", "conditional-pass")

A10_ASSUMPTION = ("the raising closure of z^m u_mu inside the Z-cover, cut at a grade ceiling, "
                  "stands in for the level-zero Demazure set")


@dataclass
class VerificationReport:
    case: str
    criterion: str
    datum: str | None
    params: dict
    status: str
    witness: object = None
    counterexample: object = None
    assumption: str | None = None
    wall_time: float = 0.0

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        out = asdict(self)
        out["wall_time"] = round(self.wall_time, 4)
        return {k: v for k, v in out.items() if v is not None}


@dataclass
class Options:
    depth: int = 6
    maxlen: int | None = None
    budget: int = 200_000
    lmax: int = 6
    type: str | None = None
    k: int | None = None
    extra: dict = field(default_factory=dict)


def _timed(case, criterion, tag, params, fn):
    t0 = time.perf_counter()
    try:
        status, witness, counter = fn()
        assumption = A10_ASSUMPTION if status == "conditional-pass" else None
    except BudgetError:
        raise
    except KrystalError as exc:
        status, witness, counter, assumption = "fail", None, {"error": type(exc).__name__, "message": str(exc)}, None
    return VerificationReport(case, criterion, tag, params, status, witness, counter, assumption,
                              time.perf_counter() - t0)


def _verdict(ok, witness=None, counter=None):
    return ("pass" if ok else "fail"), witness, (None if ok else counter)


def _wanted(opts, tag, k=None):
    if opts.type and opts.type != tag:
        return False
    if opts.k is not None and k is not None and opts.k != k:
        return False
    return True


# --- A1, A2: root data ----------------------------------------------------------

def check_dynkin_tables():
    out = []

    def twisted_case(tag, n):
        def run():
            d = load_datum(tag)
            got = {
                "(a0,a0)": d.inner(d.alpha(0), d.alpha(0)),
                "(an,an)": d.inner(d.alpha(n), d.alpha(n)),
                "delta": list(d.marks),
                "c": list(d.comarks),
            }
            want = {"(a0,a0)": 4, "(an,an)": 1, "delta": [1] + [2] * n, "c": [2] * n + [1]}
            for i in range(1, n):
                got[f"(a{i},a{i})"] = d.inner(d.alpha(i), d.alpha(i))
                want[f"(a{i},a{i})"] = 2
            return _verdict(got == want, got, {"expected": want})
        return run

    for tag, n in (("A2^(2)", 1), ("A4^(2)", 2)):
        out.append(_timed(f"A1/{tag}", "A1", tag, {}, twisted_case(tag, n)))

    def f4_case():
        d = load_datum("F4~")
        got = {"delta": list(d.marks), "c": list(d.comarks)}
        want = {"delta": [1, 2, 3, 4, 2], "c": [1, 2, 3, 2, 1]}
        return _verdict(got == want, got, {"expected": want})

    out.append(_timed("A1/F4~", "A1", "F4~", {}, f4_case))
    return out


UNTWISTED = ("A1~", "A2~", "A3~", "B3~", "C2~", "C3~", "D4~", "G2~", "F4~")
DUAL_UNTWISTED = ("D3^(2)", "D4^(2)")
A_EVEN_TWISTED = ("A2^(2)", "A4^(2)", "A6^(2)")


def check_root_lengths(max_height=10):
    out = []
    for tag in UNTWISTED + DUAL_UNTWISTED + A_EVEN_TWISTED:
        def run(tag=tag):
            d = load_datum(tag)
            values = sorted({Fraction(d.root_inner(r.coeffs, r.coeffs)) / 2
                             for r in d.real_roots_up_to_height(max_height)})
            if tag in UNTWISTED:
                ok = all(v <= 1 for v in values)
            elif tag in DUAL_UNTWISTED:
                ok = all(v >= 1 for v in values)
            else:
                ok = set(values) <= {Fraction(1, 2), Fraction(1), Fraction(2)}
            return _verdict(ok, {"half_norms": [str(v) for v in values]}, {"half_norms": [str(v) for v in values]})
        out.append(_timed(f"A2/{tag}", "A2", tag, {"height": max_height}, run))
    return out


# --- A3: quantum operators ---------------------------------------------------------

def check_qops(lmax=6):
    def run():
        results = qops.run_all(lmax)
        failed = [r.to_json() for r in results if not r.ok]
        return _verdict(not failed, {"identities": len(results)}, {"failed": failed})
    return [_timed("A3/qops", "A3", "A1,A2", {"lmax": lmax}, run)]


# --- A4: string property and reduced-word independence -------------------------

A4_CASES = (("A1~", ((1, 0), (1, 1))), ("A2~", ((1, 0, 0), (1, 1, 0))), ("A2^(2)", ((1, 0), (0, 1))))


def _demazure_family(d, crystal, source, words, step):
    memo = {(): [source]}

    def closure(w):
        if w not in memo:
            memo[w] = step(crystal, w[0], closure(w[1:]))
        return memo[w]

    groups = {}
    for w in words:
        groups.setdefault(d.act(w, d.rho), []).append(w)
    return groups, closure


def check_strings(opts):
    maxlen = opts.maxlen or 8
    out = []
    for tag, xis in A4_CASES:
        if not _wanted(opts, tag):
            continue
        for lam in xis:
            for kind in ("b_minus", "b_plus"):
                def run(tag=tag, lam=lam, kind=kind):
                    d = load_datum(tag)
                    xi = d.weight(lam)
                    base = PathCrystal(d)
                    if kind == "b_minus":
                        crystal, step, prop = base, f_closure, "top"
                    else:
                        crystal, step, prop = DualCrystal(base), e_closure, "bottom"
                    source = straight_path(d, xi)
                    groups, closure = _demazure_family(d, crystal, source, d.reduced_words(maxlen), step)
                    largest = 0
                    from .crystal import weyl_action
                    for ws in groups.values():
                        sets = {frozenset(closure(w)) for w in ws}
                        if len(sets) != 1:
                            return _verdict(False, counter={"words": [list(w) for w in ws],
                                                            "reason": "reduced-word dependence"})
                        members = closure(ws[0])
                        largest = max(largest, len(members))
                        res = string_property_check(crystal, members, prop)
                        if not res:
                            return _verdict(False, counter={"word": list(ws[0]), "color": res.color,
                                                            "reason": res.reason})
                        ext = weyl_action(crystal, ws[0], source)
                        target = crystal.wt(ext)
                        same = [b for b in members if crystal.wt(b) == target]
                        if same != [ext]:
                            return _verdict(False, counter={"word": list(ws[0]),
                                                            "reason": "extremal weight not simple in the set"})
                    return _verdict(True, {"elements": len(groups),
                                           "words": sum(len(ws) for ws in groups.values()),
                                           "largest": largest})
                sign = "" if kind == "b_minus" else "-"
                out.append(_timed(f"A4/{tag}/{kind}/{sign}{list(lam)}", "A4", tag,
                                  {"xi": list(lam), "maxlen": maxlen, "set": kind}, run))
    return out


# --- A5: extremality of u_Lambda0 (x) u_varpi_k ---------------------------------

A5_CASES = (("A1~", 1), ("A2~", 1), ("A2~", 2))


def check_extremal(opts):
    bound = opts.maxlen or 6
    out = []
    for tag, k in A5_CASES:
        if not _wanted(opts, tag, k):
            continue

        def run(tag=tag, k=k):
            d = load_datum(tag)
            cover = Cover(KRCrystal(d, k))
            crystal = TensorCrystal(PathCrystal(d), cover)
            b = (straight_path(d, d.Lambda(0)), (cover.base.top, 0))
            if crystal.wt(b) != d.Lambda(0) + d.varpi(k):
                return _verdict(False, counter={"reason": "seed weight is not Lambda_0 + varpi_k"})
            res = is_extremal(crystal, b, bound)
            return _verdict(res.extremal, {"explored": res.explored, "bound": bound,
                                           "exhaustive": res.exhaustive}, res.witness)
        out.append(_timed(f"A5/{tag}/k={k}", "A5", tag, {"k": k, "word_bound": bound}, run))
    return out


# --- A6: B(Lambda_0) (x) B(W(varpi_k)) against B(xi_0) -----------------------------

A6_CASES = (("A1~", 1), ("A2~", 1), ("A2~", 2), ("A3~", 2))


def check_tensor_hw(opts):
    depth = opts.depth
    out = []
    for tag, k in A6_CASES:
        if not _wanted(opts, tag, k):
            continue

        def run(tag=tag, k=k):
            d = load_datum(tag)
            xi, word = xi0(d, k)
            paths = PathCrystal(d)
            target = build_B(d, xi, depth, opts.budget, crystal=paths)
            kr = KRCrystal(d, k)
            special = special_vector(kr)
            u = straight_path(d, d.Lambda(0))
            g_kr = bfs_closure(TensorCrystal(paths, kr), [(u, special)], ("f",), depth=depth, budget=opts.budget)
            r1 = iso_check(target, 0, g_kr, 0, d.index_set, weights="pairing")
            cover = Cover(kr)
            g_cov = bfs_closure(TensorCrystal(paths, cover), [(u, (special, 0))], ("f",),
                                depth=depth, budget=opts.budget)
            r2 = iso_check(target, 0, g_cov, 0, d.index_set, weights="delta")
            ok = bool(r1) and bool(r2)
            witness = {"xi0": weight_to_json(xi), "word": list(word), "vertices": len(target),
                       "edges": len(target.edges), "special": list(special),
                       "delta_shift": str(r2.shift),
                       "mapping_sample": sorted(r2.mapping.items())[:10]}
            return _verdict(ok, witness, {"kr": r1.conflict, "cover": r2.conflict})
        out.append(_timed(f"A6/{tag}/k={k}", "A6", tag, {"k": k, "depth": depth}, run))
    return out


# --- A7: B(W(varpi_k)) against the Demazure set of Lambda_0 + mu as I_0-crystals ---

def check_fund_demazure(opts):
    out = []
    for n in (1, 2, 3):
        tag = f"A{n}~"
        for k in range(1, n + 1):
            if not _wanted(opts, tag, k):
                continue

            def run(tag=tag, k=k):
                d = load_datum(tag)
                mu, _, kp = mu_and_kprime(d, k)
                kr = kr_crystal(d, k).restrict(d.I0)
                dem = b_minus(d, d.Lambda(0) + mu, budget=opts.budget)
                g = dem.graph().restrict(d.I0)
                tops = g.highest_weight_vertices(d.I0)
                if len(tops) != 1:
                    return _verdict(False, counter={"reason": f"{len(tops)} I_0-highest members"})
                res = iso_check(kr, 0, g, tops[0], d.I0, weights="pairing")
                witness = {"k_prime": kp, "mu": weight_to_json(mu), "size": len(g),
                           "word": list(dem.word)}
                return _verdict(bool(res) and len(g) == comb(n + 1, k), witness, {"conflict": res.conflict})
            out.append(_timed(f"A7/{tag}/k={k}", "A7", tag, {"k": k}, run))
    return out


# --- A8: special vector ----------------------------------------------------------

def check_special(opts):
    out = []
    for n in range(1, 5):
        tag = f"A{n}~"
        for k in range(1, n + 1):
            if not _wanted(opts, tag, k):
                continue

            def run(tag=tag, k=k):
                d = load_datum(tag)
                c = KRCrystal(d, k)
                hits = [t for t in c.elements()
                        if all(c.eps(i, t) <= (1 if i == 0 else 0) for i in d.index_set)]
                return _verdict(len(hits) == 1, {"special": [list(t) for t in hits]},
                                {"candidates": [list(t) for t in hits]})
            out.append(_timed(f"A8/{tag}/k={k}", "A8", tag, {"k": k}, run))
    return out


# --- A9: reflections of extremal vectors ----------------------------------------

A9_CASES = (("A1~", ((1, 0), (1, 1))), ("A2~", ((1, 0, 0), (1, 0, 1))))


def check_propbeta(opts):
    maxlen = opts.maxlen or 4
    out = []
    for tag, xis in A9_CASES:
        if not _wanted(opts, tag):
            continue
        for lam in xis:
            def run(tag=tag, lam=lam):
                d = load_datum(tag)
                xi = d.weight(lam)
                paths = PathCrystal(d)
                roots = d.real_roots_up_to_height(8)
                weights = {}
                for w in d.reduced_words(maxlen):
                    weights.setdefault(d.act(w, xi), w)
                tested = literal = chained = 0
                for nu in weights:
                    for beta in roots:
                        if d.inner(d.root_to_weight(beta.coeffs), nu) < 0:
                            continue
                        res = prop_beta_check(d, nu, beta, crystal=paths, budget=opts.budget)
                        tested += 1
                        literal += res.literal_b_minus
                        chained += res.f_chain is not None
                        if not res:
                            return _verdict(False, counter={"lambda": weight_to_json(nu), "beta": list(beta.coeffs)})
                return _verdict(True, {"pairs": tested, "weights": len(weights), "roots": len(roots),
                                       "also_in_b_minus": literal, "explicit_f_chain": chained})
            out.append(_timed(f"A9/{tag}/{list(lam)}", "A9", tag, {"xi": list(lam), "maxlen": maxlen}, run))
    return out


# --- A10: level-zero Demazure shadow (conditional) -------------------------------

def check_cor_ue(opts):
    out = []
    for n in (1, 2):
        tag = f"A{n}~"
        for k in range(1, n + 1):
            if not _wanted(opts, tag, k):
                continue

            def run(tag=tag, k=k):
                d = load_datum(tag)
                kr = KRCrystal(d, k)
                cover = Cover(kr)
                res = b_plus_level0(cover, n_max=0, budget=opts.budget)
                bases = sorted(x[0] for x in res.difference)
                ok = (len(res.difference) == comb(n + 1, k) and bases == sorted(kr.elements())
                      and res.z_seed_reached)
                # u_Lambda0 (x) (difference set) against the Demazure set of Lambda_0 + mu
                mu, _, _ = mu_and_kprime(d, k)
                paths = PathCrystal(d)
                u = straight_path(d, d.Lambda(0))
                tens = TensorCrystal(paths, cover)
                inside = {(u, x) for x in res.difference}
                from .demazure import _Restricted
                g1 = bfs_closure(_Restricted(tens, inside), [(u, res.seed)], ("f", "e"))
                dem = b_minus(d, d.Lambda(0) + mu, crystal=paths)
                g2 = dem.graph()
                full = len(g1) == len(inside) and bool(iso_check(g1, 0, g2, g2.vertex(dem.extremal),
                                                                 d.index_set, weights="delta"))
                witness = {"difference": [cover_to_json(x) for x in res.difference],
                           "closure_size": len(res.members), "ceiling": res.ceiling,
                           "z_u_mu_reached": res.z_seed_reached, "tensor_iso_full_I": full}
                if ok and full:
                    return "conditional-pass", witness, None
                return "fail", witness, witness
            out.append(_timed(f"A10/{tag}/k={k}", "A10", tag, {"k": k}, run))
    return out


# --- A11: xi_0 ---------------------------------------------------------------------

def check_xi0(opts):
    out = []
    cases = [(f"A{n}~", k, k) for n in range(1, 5) for k in range(1, n + 1)] + [("F4~", 3, 4)]
    for tag, k, expect in cases:
        if not _wanted(opts, tag, k):
            continue

        def run(tag=tag, k=k, expect=expect):
            d = load_datum(tag)
            xi, word = xi0(d, k)
            ok = xi.lam == d.Lambda(expect).lam and d.is_dominant(xi) and d.level(xi) == 1
            return _verdict(ok, {"xi0": weight_to_json(xi), "word": list(word), "expected": f"L{expect}"},
                            {"xi0": weight_to_json(xi)})
        out.append(_timed(f"A11/{tag}/k={k}", "A11", tag, {"k": k}, run))
    return out


# --- A12: path model oracles ---------------------------------------------------------

def weyl_dimension(datum, lam):
    """``prod_{alpha > 0} (lam + rho, alpha) / (rho, alpha)`` over the finite positive roots."""
    rho = datum.rho
    num = den = Fraction(1)
    for root in datum.real_roots_up_to_height(10 ** 6):
        a = datum.root_to_weight(root.coeffs)
        num *= Fraction(datum.inner(lam + rho, a))
        den *= Fraction(datum.inner(rho, a))
    return num / den


def check_paths(opts):
    out = []
    cases = [("A1", (m,)) for m in range(5)] + [("A2", (a, b)) for a in range(4) for b in range(4)]
    for tag, lam in cases:
        if not _wanted(opts, tag):
            continue

        def run(tag=tag, lam=lam):
            d = load_datum(tag)
            w = d.weight(lam)
            n = len(build_B(d, w))
            dim = weyl_dimension(d, w)
            return _verdict(n == dim, {"vertices": n, "weyl_dimension": int(dim)}, {"vertices": n, "dim": str(dim)})
        out.append(_timed(f"A12/{tag}/{list(lam)}", "A12", tag, {"lambda": list(lam)}, run))

    def tensor_run():
        d = load_datum("A2")
        paths = PathCrystal(d)
        b1 = build_B(d, d.weight((1, 0))).elements
        b2 = build_B(d, d.weight((0, 1))).elements
        tens = TensorCrystal(paths, paths)
        pairs = [(x, y) for x in b1 for y in b2]
        for p in pairs:
            c = concat(*p)
            if paths.wt(c) != tens.wt(p):
                return _verdict(False, counter={"reason": "weight", "pair": repr(p)})
            for i in d.index_set:
                for op_t, op_p in ((tens.f, paths.f), (tens.e, paths.e)):
                    a, b = op_t(i, p), op_p(i, c)
                    if (a is None) != (b is None) or (a is not None and concat(*a) != b):
                        return _verdict(False, counter={"pair": repr(p), "color": i})
                if tens.eps(i, p) != paths.eps(i, c) or tens.phi(i, p) != paths.phi(i, c):
                    return _verdict(False, counter={"pair": repr(p), "color": i, "reason": "eps/phi"})
        g = bfs_closure(tens, pairs, ("f", "e"))
        return _verdict(True, {"elements": len(pairs), "components": len(g.highest_weight_vertices())})

    if _wanted(opts, "A2"):
        out.append(_timed("A12/A2/tensor-vs-concat", "A12", "A2", {"left": [1, 0], "right": [0, 1]}, tensor_run))
    return out


# --- registry --------------------------------------------------------------------

SELECTORS = {
    "rootdata": lambda o: check_dynkin_tables() + check_root_lengths(),
    "qops": lambda o: check_qops(o.lmax),
    "demazure": check_strings,
    "extremal": check_extremal,
    "tensor-hw": check_tensor_hw,
    "fund-demazure": check_fund_demazure,
    "special-vector": check_special,
    "propbeta": check_propbeta,
    "cor-ue": check_cor_ue,
    "xi0": check_xi0,
    "pathmodel": check_paths,
}

CRITERIA = {
    "A1": lambda o: check_dynkin_tables(),
    "A2": lambda o: check_root_lengths(),
    "A3": lambda o: check_qops(o.lmax),
    "A4": check_strings,
    "A5": check_extremal,
    "A6": check_tensor_hw,
    "A7": check_fund_demazure,
    "A8": check_special,
    "A9": check_propbeta,
    "A10": check_cor_ue,
    "A11": check_xi0,
    "A12": check_paths,
}


def run_selector(name, opts=None):
    opts = opts or Options()
    if name == "all":
        out = []
        for key in SELECTORS:
            out += SELECTORS[key](opts)
        return out
    return SELECTORS[name](opts)
