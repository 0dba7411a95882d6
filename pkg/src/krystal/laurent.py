"""Exact Laurent polynomials in ``v = q^(1/d)`` with rational coefficients."""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError


class LaurentPoly:
    """Immutable ``{exponent: coefficient}`` with no zero coefficients stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(k)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def mono(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, LaurentPoly) else cls.const(x)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    @property
    def is_unit(self):
        """Units of ``Q[v, 1/v]`` are nonzero monomials."""
        return len(self.terms) == 1

    def inverse(self):
        if not self.is_unit:
            raise UsageError(f"{self} is not invertible in the Laurent ring")
        (k, c), = self.terms.items()
        return LaurentPoly({-k: 1 / c})

    def bar(self):
        """The involution ``v -> 1/v``."""
        return LaurentPoly({-k: c for k, c in self.terms.items()})

    def divexact(self, other):
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        other = LaurentPoly.coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        quot = {}
        top_d = max(other.terms)
        lead = other.terms[top_d]
        floor = (min(rem) - min(other.terms)) if rem else 0
        while rem:
            k = max(rem) - top_d
            if k < floor:
                break
            top = max(rem)
            c = rem[top] / lead
            quot[k] = c
            for e, x in other.terms.items():
                v = rem.get(e + k, 0) - c * x
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        if rem:
            raise UsageError(f"{self} is not divisible by {other}")
        return LaurentPoly(quot)

    def __truediv__(self, other):
        return self.divexact(other)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
            else:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                parts.append(f"{coef}v^{k}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def q_int(k, e=1):
    """``[k]`` in the variable ``v^e``: ``(v^{ek} - v^{-ek}) / (v^e - v^{-e})``."""
    if k < 0:
        raise UsageError("q_int needs k >= 0")
    return LaurentPoly({e * (k - 1 - 2 * j): 1 for j in range(k)})


def q_fact(k, e=1):
    out = ONE
    for j in range(1, k + 1):
        out = out * q_int(j, e)
    return out
