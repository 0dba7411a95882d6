"""Cartan data, weights, Weyl group action and translations.

All arithmetic is exact: integers and :class:`fractions.Fraction`.

Node numbering.  For affine data the distinguished node is always 0 and
satisfies ``a_0 = 1``.  The classical nodes follow Bourbaki and node 0 is
attached where the lowest root sits.  For the twisted family ``A_{2n}^{(2)}``
this makes node 0 the *long* end of the diagram (``(alpha_0, alpha_0) = 4``),
which is the reverse of Kac's labelling.  ``D_{n+1}^{(2)}`` is built as the
transpose of ``C_n^{(1)}`` with the same numbering.

==============  ===================================  ======================
tag             diagram (``=>`` points to short)     marks
==============  ===================================  ======================
``An~``         cycle 0-1-...-n-0                    1,1,...,1
``Bn~``         0-2, 1-2-...-(n-1)=>n                1,1,2,...,2,2
``Cn~``         0=>1-...-(n-1)<=n                    1,2,...,2,1
``Dn~``         0-2, 1-2-...-(n-2)-{n-1,n}           1,1,2,...,2,1,1
``G2~``         0-2, 1<=2 (triple)                   1,3,2
``F4~``         0-1-2=>3-4                           1,2,3,4,2
``A2^(2)``      0=>1 (quadruple)                     1,2
``A2n^(2)``     0=>1-...-(n-1)=>n                    1,2,...,2
``D(n+1)^(2)``  0<=1-...-(n-1)=>n                    1,1,...,1
==============  ===================================  ======================

Finite types (``A2``, ``B3``, ...) carry no node 0 and no ``delta``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import BudgetError, ConfigurationError, UsageError

__all__ = [
    "CartanDatum",
    "Weight",
    "RealRoot",
    "load_datum",
    "parse_weight",
    "weight_to_json",
    "weight_from_json",
]


def _norm(x):
    """Return an int when the rational value is integral."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Weight:
    """An element of Q (x) P written as ``sum_i lam[i] Lambda_i + delta * delta``.

    ``lam`` is aligned with the index set of the datum it belongs to.  For
    finite types ``delta`` is always zero.
    """

    lam: tuple
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(_norm(c) for c in self.lam))
        object.__setattr__(self, "delta", Fraction(self.delta))

    def __add__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if len(other.lam) != len(self.lam):
            raise UsageError("weights over different data")
        return Weight(tuple(a + b for a, b in zip(self.lam, other.lam)), self.delta + other.delta)

    def __sub__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if len(other.lam) != len(self.lam):
            raise UsageError("weights over different data")
        return Weight(tuple(a - b for a, b in zip(self.lam, other.lam)), self.delta - other.delta)

    def __neg__(self):
        return Weight(tuple(-a for a in self.lam), -self.delta)

    def __mul__(self, c):
        if isinstance(c, Weight):
            return NotImplemented
        return Weight(tuple(c * a for a in self.lam), c * self.delta)

    __rmul__ = __mul__

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self.lam)

    def cls(self):
        """Classical projection: forget the delta coordinate."""
        return Weight(self.lam, 0)

    def __repr__(self):
        return f"Weight({list(self.lam)}, delta={_frac_str(self.delta)})"


@dataclass(frozen=True)
class RealRoot:
    """A positive real root ``beta = w(alpha_i)`` in simple-root coordinates."""

    coeffs: tuple
    word: tuple
    index: int

    @property
    def height(self):
        return sum(self.coeffs)

    @property
    def reflection_word(self):
        """A word for ``s_beta = w s_i w^{-1}`` (not necessarily reduced)."""
        return self.word + (self.index,) + tuple(reversed(self.word))


# --- Cartan matrices -------------------------------------------------------

def _matrix(size, offset, bonds):
    """bonds: iterable of (i, j, a_ij, a_ji) on node labels starting at ``offset``."""
    a = [[0] * size for _ in range(size)]
    for p in range(size):
        a[p][p] = 2
    for i, j, aij, aji in bonds:
        a[i - offset][j - offset] = aij
        a[j - offset][i - offset] = aji
    return a


def _chain(lo, hi):
    return [(i, i + 1, -1, -1) for i in range(lo, hi)]


def _finite_bonds(family, n):
    if family == "A":
        if n < 1:
            raise ConfigurationError("A_n needs n >= 1")
        return _chain(1, n)
    if family == "B":
        if n < 2:
            raise ConfigurationError("B_n needs n >= 2")
        return _chain(1, n - 1) + [(n - 1, n, -1, -2)]
    if family == "C":
        if n < 2:
            raise ConfigurationError("C_n needs n >= 2")
        return _chain(1, n - 1) + [(n - 1, n, -2, -1)]
    if family == "D":
        if n < 4:
            raise ConfigurationError("D_n needs n >= 4")
        return _chain(1, n - 1) + [(n - 2, n, -1, -1)]
    if family == "G":
        if n != 2:
            raise ConfigurationError("G only in rank 2")
        return [(1, 2, -3, -1)]
    if family == "F":
        if n != 4:
            raise ConfigurationError("F only in rank 4")
        return [(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]
    raise ConfigurationError(f"unsupported finite family {family!r}")


def _affine_bonds(family, n, twisted):
    if not twisted:
        if family == "A":
            if n < 1:
                raise ConfigurationError("A_n^(1) needs n >= 1")
            if n == 1:
                return [(0, 1, -2, -2)]
            return _chain(0, n) + [(n, 0, -1, -1)]
        if family == "B":
            if n < 3:
                raise ConfigurationError("B_n^(1) needs n >= 3")
            return _finite_bonds("B", n) + [(0, 2, -1, -1)]
        if family == "C":
            if n < 2:
                raise ConfigurationError("C_n^(1) needs n >= 2")
            return [(0, 1, -1, -2)] + _chain(1, n - 1) + [(n - 1, n, -2, -1)]
        if family == "D":
            if n < 4:
                raise ConfigurationError("D_n^(1) needs n >= 4")
            return _finite_bonds("D", n) + [(0, 2, -1, -1)]
        if family == "G":
            if n != 2:
                raise ConfigurationError("G_2^(1) only")
            return _finite_bonds("G", 2) + [(0, 2, -1, -1)]
        if family == "F":
            if n != 4:
                raise ConfigurationError("F_4^(1) only")
            return [(0, 1, -1, -1)] + _finite_bonds("F", 4)
        raise ConfigurationError(f"unsupported untwisted family {family!r}")
    if family == "A":
        if n < 1:
            raise ConfigurationError("A_2n^(2) needs n >= 1")
        if n == 1:
            return [(0, 1, -1, -4)]
        return [(0, 1, -1, -2)] + _chain(1, n - 1) + [(n - 1, n, -1, -2)]
    if family == "D":
        if n < 2:
            raise ConfigurationError("D_(n+1)^(2) needs n >= 2")
        return [(0, 1, -2, -1)] + _chain(1, n - 1) + [(n - 1, n, -1, -2)]
    raise ConfigurationError(f"unsupported twisted family {family!r}")


def _kernel_vector(mat):
    """Minimal positive integer vector in the right kernel of an integer matrix."""
    import sympy

    ns = sympy.Matrix(mat).nullspace()
    if len(ns) != 1:
        raise ConfigurationError("Cartan matrix is not of affine type (corank != 1)")
    v = [Fraction(int(x.p), int(x.q)) for x in ns[0]]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        raise ConfigurationError("kernel vector is not positive")
    return tuple(ints)


def _rational_inverse(mat):
    import sympy

    inv = sympy.Matrix(mat).inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(r)] for r in range(inv.rows)]


_TAG = re.compile(r"^([A-G])(\d+)?(~|\^\(?2\)?)?$")


def load_datum(type_tag, rank=None):
    """Build a :class:`CartanDatum` from a tag such as ``"A1~"``, ``"A4^(2)"`` or ``"A2"``.

    ``rank`` may replace the number in the tag; for ``A^(2)`` the number in
    the tag is ``2n`` and the rank is ``n``, for ``D^(2)`` it is ``n+1``.
    """
    m = _TAG.match(type_tag.strip())
    if not m:
        raise ConfigurationError(f"unrecognised type tag {type_tag!r}")
    family, num, suffix = m.group(1), m.group(2), m.group(3)
    twisted = suffix is not None and suffix != "~"
    affine = suffix is not None
    if num is None:
        if rank is None:
            raise ConfigurationError(f"type tag {type_tag!r} needs a rank")
        n = int(rank)
    else:
        num = int(num)
        if twisted and family == "A":
            if num % 2:
                raise ConfigurationError("only A_{2n}^(2) is supported among twisted A")
            n = num // 2
        elif twisted and family == "D":
            n = num - 1
        else:
            n = num
        if rank is not None and int(rank) != n:
            raise ConfigurationError(f"rank {rank} does not match tag {type_tag!r}")
    if twisted and family not in "AD":
        raise ConfigurationError(f"unsupported twisted type {type_tag!r}")
    if affine:
        bonds = _affine_bonds(family, n, twisted)
        cartan = _matrix(n + 1, 0, bonds)
    else:
        bonds = _finite_bonds(family, n)
        cartan = _matrix(n, 1, bonds)
    return CartanDatum(family, n, cartan, affine=affine, twisted=twisted)


def _tag(family, n, affine, twisted):
    if not affine:
        return f"{family}{n}"
    if not twisted:
        return f"{family}{n}~"
    if family == "A":
        return f"A{2 * n}^(2)"
    return f"D{n + 1}^(2)"


class CartanDatum:
    """Symmetrizable Cartan datum of finite or affine type.

    Attributes follow the usual notation: ``cartan[p][q] = <h_i, alpha_j>``
    for ``i, j`` at positions ``p, q`` of :attr:`index_set`.  ``sym[i]`` is
    ``(alpha_i, alpha_i)/2``.
    """

    def __init__(self, family, rank, cartan, affine=True, twisted=False):
        self.family = family
        self.rank = rank
        self.affine = affine
        self.twisted = twisted
        self.type_tag = _tag(family, rank, affine, twisted)
        self.cartan = tuple(tuple(row) for row in cartan)
        size = len(self.cartan)
        self.index_set = tuple(range(size)) if affine else tuple(range(1, size + 1))
        self._pos = {i: p for p, i in enumerate(self.index_set)}
        self.I0 = tuple(i for i in self.index_set if i != 0)
        self._check_generalized_cartan()
        if affine:
            self.marks = _kernel_vector(self.cartan)
            self.comarks = _kernel_vector([list(col) for col in zip(*self.cartan)])
            if self.marks[0] != 1:
                raise ConfigurationError(f"{self.type_tag}: distinguished node has a_0 != 1")
            self.sym = tuple(Fraction(c, a) for c, a in zip(self.comarks, self.marks))
        else:
            self.marks = self.comarks = None
            self.sym = self._finite_symmetrizer()
        for p in range(size):
            for q in range(size):
                if self.sym[p] * self.cartan[p][q] != self.sym[q] * self.cartan[q][p]:
                    raise ConfigurationError(f"{self.type_tag}: not symmetrizable")
        self.d = math.lcm(*(s.denominator for s in self.sym))

    def _check_generalized_cartan(self):
        a = self.cartan
        for p in range(len(a)):
            if a[p][p] != 2:
                raise ConfigurationError("diagonal entries must be 2")
            for q in range(len(a)):
                if p != q and (a[p][q] > 0 or (a[p][q] == 0) != (a[q][p] == 0)):
                    raise ConfigurationError("off-diagonal sign pattern violated")

    def _finite_symmetrizer(self):
        size = len(self.cartan)
        sym = [None] * size
        sym[0] = Fraction(1)
        stack = [0]
        while stack:
            p = stack.pop()
            for q in range(size):
                if q != p and self.cartan[p][q] and sym[q] is None:
                    sym[q] = sym[p] * self.cartan[p][q] / self.cartan[q][p]
                    stack.append(q)
        top = max(sym)
        return tuple(s / top for s in sym)

    def __eq__(self, other):
        return isinstance(other, CartanDatum) and self.cartan == other.cartan and self.affine == other.affine

    def __hash__(self):
        return hash((self.cartan, self.affine))

    def __repr__(self):
        return f"CartanDatum({self.type_tag!r})"

    def __getstate__(self):
        return {"family": self.family, "rank": self.rank, "cartan": self.cartan,
                "affine": self.affine, "twisted": self.twisted}

    def __setstate__(self, state):
        self.__init__(state["family"], state["rank"], state["cartan"],
                      affine=state["affine"], twisted=state["twisted"])

    # --- basic lookups -----------------------------------------------------

    def pos(self, i):
        try:
            return self._pos[i]
        except KeyError:
            raise UsageError(f"index {i} not in {self.index_set}") from None

    def a(self, i, j):
        return self.cartan[self.pos(i)][self.pos(j)]

    def root_length2(self, i):
        """``(alpha_i, alpha_i)``."""
        return 2 * self.sym[self.pos(i)]

    @property
    def size(self):
        return len(self.index_set)

    def zero(self):
        return Weight((0,) * self.size, 0)

    def Lambda(self, i):
        lam = [0] * self.size
        lam[self.pos(i)] = 1
        return Weight(tuple(lam), 0)

    def alpha(self, j):
        q = self.pos(j)
        col = tuple(self.cartan[p][q] for p in range(self.size))
        return Weight(col, 1 if (self.affine and j == 0) else 0)

    @property
    def delta(self):
        if not self.affine:
            raise UsageError("finite type has no null root")
        return Weight((0,) * self.size, 1)

    def weight(self, lam, delta=0):
        if len(lam) != self.size:
            raise UsageError(f"expected {self.size} coordinates, got {len(lam)}")
        return Weight(tuple(lam), delta)

    def _check(self, w):
        if len(w.lam) != self.size:
            raise UsageError("weight belongs to a different datum")

    # --- pairings and the invariant form ----------------------------------

    def pairing(self, i, lam):
        """``<h_i, lam>``."""
        return lam.lam[self.pos(i)]

    def level(self, lam):
        if not self.affine:
            raise UsageError("level is defined for affine data only")
        self._check(lam)
        return _norm(sum(c * x for c, x in zip(self.comarks, lam.lam)))

    @cached_property
    def gram(self):
        """Gram matrix of the invariant form in the basis (Lambda_i..., [delta])."""
        size = self.size
        sym, a = self.sym, self.cartan
        if self.affine:
            # basis' = (alpha_0..alpha_n, Lambda_0); coordinates in (Lambda_0..Lambda_n, delta)
            m = size + 1
            M = [[0] * m for _ in range(m)]
            for q in range(size):
                for p in range(size):
                    M[p][q] = a[p][q]
            M[size][0] = 1
            M[0][size] = 1
            G1 = [[Fraction(0)] * m for _ in range(m)]
            for p in range(size):
                for q in range(size):
                    G1[p][q] = sym[p] * a[p][q]
            G1[0][size] = G1[size][0] = sym[0]
        else:
            m = size
            M = [[a[p][q] for q in range(size)] for p in range(size)]
            G1 = [[sym[p] * a[p][q] for q in range(size)] for p in range(size)]
        Minv = _rational_inverse(M)
        tmp = [[sum(G1[r][k] * Minv[k][c] for k in range(m)) for c in range(m)] for r in range(m)]
        return tuple(tuple(_norm(sum(Minv[k][r] * tmp[k][c] for k in range(m))) for c in range(m))
                     for r in range(m))

    def _vec(self, w):
        self._check(w)
        return w.lam + (w.delta,) if self.affine else w.lam

    def inner(self, lam, mu):
        """The invariant symmetric form ``(lam, mu)``."""
        x, y = self._vec(lam), self._vec(mu)
        g = self.gram
        return _norm(sum(x[r] * g[r][c] * y[c] for r in range(len(x)) if x[r] for c in range(len(y)) if y[c]))

    # --- Weyl group --------------------------------------------------------

    def reflect(self, i, lam):
        """``s_i(lam) = lam - <h_i, lam> alpha_i``."""
        k = lam.lam[self.pos(i)]
        if k == 0:
            return lam
        return lam - k * self.alpha(i)

    def act(self, word, lam):
        """Apply ``s_{i_1} ... s_{i_l}`` to ``lam`` (rightmost letter first)."""
        for i in reversed(tuple(word)):
            lam = self.reflect(i, lam)
        return lam

    def is_dominant(self, lam, indices=None):
        return all(self.pairing(i, lam) >= 0 for i in (indices or self.index_set))

    def _raise(self, lam, indices, max_steps):
        word = []
        while True:
            for i in indices:
                if self.pairing(i, lam) < 0:
                    break
            else:
                return lam, tuple(word)
            lam = self.reflect(i, lam)
            word.append(i)
            if len(word) > max_steps:
                raise BudgetError("to_dominant step bound", max_steps)

    def to_dominant(self, lam, classical=False, max_steps=10_000):
        """Return ``(lam_plus, word)`` with ``lam = act(word, lam_plus)``.

        Greedy: while some pairing is negative, reflect in the smallest such
        index.  ``classical=True`` uses only ``I_0`` and terminates for any
        weight.  In full affine mode a level-zero weight with nonzero
        classical part never becomes dominant; the step bound catches it.
        """
        self._check(lam)
        if self.affine and not classical and self.level(lam) < 0:
            raise UsageError("negative level: use to_antidominant")
        indices = self.I0 if (classical and self.affine) else self.index_set
        return self._raise(lam, indices, max_steps)

    def to_antidominant(self, lam, classical=False, max_steps=10_000):
        """Return ``(lam_minus, word)`` with ``lam = act(word, lam_minus)`` and
        all relevant pairings of ``lam_minus`` non-positive."""
        self._check(lam)
        if self.affine and not classical and self.level(lam) > 0:
            raise UsageError("positive level: use to_dominant")
        indices = self.I0 if (classical and self.affine) else self.index_set
        neg, word = self._raise(-lam, indices, max_steps)
        return -neg, word

    @cached_property
    def rho(self):
        return Weight((1,) * self.size, 0)

    def same_element(self, w1, w2):
        """Whether two words represent the same Weyl group element."""
        return self.act(w1, self.rho) == self.act(w2, self.rho)

    # --- roots in simple-root coordinates ---------------------------------

    def root_pairing(self, i, beta):
        p = self.pos(i)
        return sum(self.cartan[p][q] * b for q, b in enumerate(beta) if b)

    def root_reflect(self, i, beta):
        k = self.root_pairing(i, beta)
        if k == 0:
            return tuple(beta)
        p = self.pos(i)
        out = list(beta)
        out[p] -= k
        return tuple(out)

    def root_act(self, word, beta):
        for i in reversed(tuple(word)):
            beta = self.root_reflect(i, beta)
        return beta

    def simple_root(self, i):
        out = [0] * self.size
        out[self.pos(i)] = 1
        return tuple(out)

    def root_inner(self, beta, gamma):
        a, sym = self.cartan, self.sym
        return _norm(sum(beta[p] * gamma[q] * sym[p] * a[p][q]
                         for p in range(self.size) if beta[p] for q in range(self.size) if gamma[q]))

    def root_to_weight(self, beta):
        out = self.zero()
        for q, b in enumerate(beta):
            if b:
                out = out + b * self.alpha(self.index_set[q])
        return out

    def is_positive_root_vector(self, beta):
        return any(beta) and all(b >= 0 for b in beta)

    def reduce_word(self, word):
        """Return a reduced word for the same element.

        Letters are appended one at a time; appending ``s_i`` to a reduced
        ``u`` stays reduced iff ``u(alpha_i)`` is positive.  Otherwise the
        exchange condition locates the letter to delete: tracking
        ``gamma_t = s_{u_{t+1}} ... s_{u_m}(alpha_i)`` from the right, the
        first ``t`` with ``gamma_t = alpha_{u_t}`` is removed.
        """
        out = []
        for i in word:
            gamma = self.simple_root(i)
            drop = None
            for t in range(len(out) - 1, -1, -1):
                j = out[t]
                if gamma == self.simple_root(j):
                    drop = t
                    break
                gamma = self.root_reflect(j, gamma)
            if drop is None:
                out.append(i)
            else:
                del out[drop]
        return tuple(out)

    def is_reduced(self, word):
        return len(self.reduce_word(word)) == len(tuple(word))

    def inversion_roots(self, word):
        """``beta_t = s_{i_l} ... s_{i_{t+1}}(alpha_{i_t})`` for ``t = 1..l``."""
        word = tuple(word)
        return [self.root_act(tuple(reversed(word[t + 1:])), self.simple_root(i))
                for t, i in enumerate(word)]

    def reduced_words(self, max_length):
        """All reduced words of length ``<= max_length`` (depth-first, lexicographic)."""
        result = [()]

        def extend(word, images):
            # images[i] = word(alpha_i) for the current word
            if len(word) == max_length:
                return
            for i in self.index_set:
                if self.is_positive_root_vector(images[i]):
                    new = word + (i,)
                    result.append(new)
                    extend(new, {j: self.root_act(new, self.simple_root(j)) for j in self.index_set})

        extend((), {j: self.simple_root(j) for j in self.index_set})
        return result

    def real_roots_up_to_height(self, max_height):
        """Positive real roots of height ``<= max_height`` with a word ``w``
        and simple index ``i`` such that ``beta = w(alpha_i)``."""
        if max_height < 1:
            raise UsageError("height bound must be >= 1")
        found = {}
        frontier = []
        for i in self.index_set:
            beta = self.simple_root(i)
            found[beta] = RealRoot(beta, (), i)
            frontier.append(beta)
        while frontier:
            nxt = []
            for beta in frontier:
                root = found[beta]
                for j in self.index_set:
                    if self.root_pairing(j, beta) < 0:
                        gamma = self.root_reflect(j, beta)
                        if sum(gamma) <= max_height and gamma not in found:
                            found[gamma] = RealRoot(gamma, (j,) + root.word, root.index)
                            nxt.append(gamma)
            frontier = nxt
        return sorted(found.values(), key=lambda r: (r.height, r.coeffs))

    def c_const(self, root):
        """``c_alpha = max(1, (alpha, alpha)/2)`` for a real root or a classical index."""
        if isinstance(root, int):
            if root not in self.I0:
                raise UsageError("c_k needs k in I_0")
            beta = self.simple_root(root)
        else:
            beta = root.coeffs if isinstance(root, RealRoot) else tuple(root)
        norm = self.root_inner(beta, beta)
        if norm <= 0:
            raise UsageError("c_alpha is defined for real roots only")
        c = max(Fraction(1), Fraction(norm) / 2)
        if c.denominator != 1:
            raise ConfigurationError("c_alpha is not an integer")
        return int(c)

    # --- level zero ----------------------------------------------------------

    def varpi(self, k):
        """The level-zero fundamental weight with the fixed representative."""
        if not self.affine:
            raise UsageError("level-zero weights need affine data")
        if k not in self.I0:
            raise UsageError("varpi_k needs k in I_0")
        if self.comarks[0] == 1:
            return self.Lambda(k) - self.comarks[self.pos(k)] * self.Lambda(0)
        return Fraction(2) / self.root_length2(k) * self.Lambda(k) - self.Lambda(0)

    fundamental_level_zero = varpi

    def translation(self, xi):
        """The map ``t(xi)``; ``xi`` must have level zero."""
        if self.level(xi) != 0:
            raise UsageError("translation needs a level-zero weight")
        delta = self.delta
        xixi = Fraction(self.inner(xi, xi))

        def t(lam):
            ld = self.inner(lam, delta)
            return lam + ld * xi - (self.inner(lam, xi) + xixi / 2 * ld) * delta

        return t

    def in_P_cls0(self, xi):
        """Membership of ``cls(xi)`` in ``P_cls^0`` (level 0, integral pairings)."""
        return self.level(xi) == 0 and xi.is_integral

    def in_P_cls0_dual(self, xi):
        """Membership of ``cls(xi)`` in ``P_cls^0 dual`` (level 0, ``(alpha_i, xi)`` integral)."""
        return self.level(xi) == 0 and all(
            Fraction(self.inner(self.alpha(i), xi)).denominator == 1 for i in self.index_set)

    def in_P_tilde(self, xi):
        return self.in_P_cls0(xi) and self.in_P_cls0_dual(xi)

    def to_json(self):
        out = {"type": self.type_tag, "rank": self.rank, "cartan": [list(r) for r in self.cartan]}
        if self.affine:
            out["marks"] = list(self.marks)
            out["comarks"] = list(self.comarks)
        return out


# --- serialization -----------------------------------------------------------

def weight_to_json(w):
    return {"lambda": [c if isinstance(c, int) else _frac_str(c) for c in w.lam],
            "delta": _frac_str(w.delta)}


def weight_from_json(obj):
    return Weight(tuple(Fraction(c) for c in obj["lambda"]), Fraction(obj.get("delta", "0")))


# --- weight expressions ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([LwadsΛϖαδ])(\d*)|([-+()]))")


def parse_weight(datum, text):
    """Parse expressions like ``"s0L0"``, ``"L0+w1"``, ``"2L1-L0+d"``, ``"s1s2(L0+L1)"``.

    Symbols: ``L<i>`` fundamental weight, ``w<k>`` level-zero fundamental
    weight, ``a<i>`` simple root, ``d`` null root, ``s<i>`` reflection
    applied to the factor that follows.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse weight {text!r} at {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(("num", int(m.group(1))))
        elif m.group(2):
            sym = {"Λ": "L", "ϖ": "w", "α": "a", "δ": "d"}.get(m.group(2), m.group(2))
            idx = m.group(3)
            if sym != "d" and not idx:
                raise UsageError(f"symbol {sym} needs an index in {text!r}")
            tokens.append((sym, int(idx) if idx else None))
        else:
            tokens.append((m.group(4), None))
    tokens.append(("end", None))
    k = 0

    def peek():
        return tokens[k][0]

    def take():
        nonlocal k
        k += 1
        return tokens[k - 1]

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take()[0] == "-" else 1
        out = sign * term()
        while peek() in ("+", "-"):
            sign = -1 if take()[0] == "-" else 1
            out = out + sign * term()
        return out

    def term():
        coeff = 1
        if peek() == "num":
            coeff = take()[1]
        word = []
        while peek() == "s":
            word.append(take()[1])
        return coeff * datum.act(word, factor())

    def factor():
        kind, idx = take()
        if kind == "(":
            out = expr()
            if take()[0] != ")":
                raise UsageError(f"unbalanced parentheses in {text!r}")
            return out
        if kind == "L":
            return datum.Lambda(idx)
        if kind == "w":
            return datum.varpi(idx)
        if kind == "a":
            return datum.alpha(idx)
        if kind == "d":
            return datum.delta
        raise UsageError(f"unexpected token {kind!r} in {text!r}")

    result = expr()
    if peek() != "end":
        raise UsageError(f"trailing input in {text!r}")
    return result
