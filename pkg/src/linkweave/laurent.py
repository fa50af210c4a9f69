"""Sparse integer Laurent polynomials in one variable ``A``."""

from __future__ import annotations

from typing import Iterable, Mapping, Union


class LaurentPolynomial:
    """Immutable map ``exponent -> coefficient`` with no zero coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                if not isinstance(e, int) or not isinstance(c, int):
                    raise TypeError("exponents and coefficients must be integers")
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_range(self) -> tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms), max(self._terms)

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            k = -n
            return LaurentPolynomial({-e * k: c ** k})
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_inverse(self) -> "LaurentPolynomial":
        """Return ``f(A^-1)``, the mirror-image value of a bracket."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_json(self) -> list[str]:
        return [f"{c}*A^{e}" for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, items: Iterable[str]) -> "LaurentPolynomial":
        terms = []
        for item in items:
            c, e = item.split("*A^")
            terms.append((int(e), int(c)))
        return cls(terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "" if e == 0 else ("A" if e == 1 else f"A^{e}")
            if mono and c in (1, -1):
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            parts.append(f"{coef}{mono}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


A = LaurentPolynomial.monomial(1)
DELTA = LaurentPolynomial({2: -1, -2: -1})
