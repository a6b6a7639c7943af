"""Integer Laurent polynomials in a single indeterminate ``q``.

A polynomial is stored sparsely as ``{exponent: coefficient}`` with no zero
coefficients.  Arithmetic is exact.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "quantum_int"]

_TERM = re.compile(r"^([-+−]?\d+):([-+−]?\d+)$")


class LaurentPoly:
    """Sparse integer Laurent polynomial.

    >>> q = LaurentPoly.monomial(1)
    >>> str(q * q + 1 + q ** -2)
    '-2:1 0:1 2:1'
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._coeffs: dict[int, int] = {}
        if coeffs:
            for exp, c in coeffs.items():
                if c:
                    self._coeffs[int(exp)] = int(c)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "LaurentPoly":
        """Sum of ``q**e`` over the given exponents (with multiplicity)."""
        out: dict[int, int] = {}
        for e in exponents:
            out[e] = out.get(e, 0) + 1
        return cls(out)

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int | None:
        return min(self._coeffs) if self._coeffs else None

    def max_degree(self) -> int | None:
        return max(self._coeffs) if self._coeffs else None

    # arithmetic

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            # only monomials are invertible
            if len(self._coeffs) != 1:
                raise ValueError("only a monomial has a Laurent inverse")
            (e, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * n: c ** (-n)})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    # evaluation and involutions

    def at_one(self) -> int:
        return sum(self._coeffs.values())

    def __call__(self, q):
        """Evaluate at a number (``fractions.Fraction`` keeps it exact)."""
        return sum(c * q ** e for e, c in self._coeffs.items())

    def bar(self) -> "LaurentPoly":
        """Image under ``q -> 1/q``."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    # text forms

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " ".join(f"{e}:{self._coeffs[e]}" for e in sorted(self._coeffs))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.pretty()})"

    def pretty(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs, reverse=True):
            c = self._coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: whitespace separated ``exponent:coefficient``."""
        text = text.strip()
        if text == "0" or not text:
            return cls()
        out: dict[int, int] = {}
        for tok in text.split():
            m = _TERM.match(tok)
            if not m:
                raise ValueError(f"bad polynomial term {tok!r}")
            e, c = (int(g.replace("−", "-")) for g in m.groups())
            out[e] = out.get(e, 0) + c
        return cls(out)


def quantum_int(n: int) -> LaurentPoly:
    """The quantum integer ``[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"quantum integer needs n >= 1, got {n!r}")
    return LaurentPoly({e: 1 for e in range(1 - n, n, 2)})
