"""Sparse integer Laurent polynomials in a single variable v.

Coefficients are arbitrary Python integers, so all arithmetic is exact.
The zero polynomial has an empty coefficient map; nonzero coefficients
are never stored.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class LaurentPoly:
    """An element of Z[v, v^-1], stored as {exponent: coefficient}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c = dict(coeffs.items()) if isinstance(coeffs, Mapping) else dict(coeffs)
        self._c = {e: int(x) for e, x in c.items() if x}

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def v(cls, exponent: int = 1) -> "LaurentPoly":
        return cls({exponent: 1})

    # ----- basic queries -------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self) -> int:
        """Largest exponent with nonzero coefficient; ValueError on zero."""
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def valuation(self) -> int:
        """Smallest exponent with nonzero coefficient; ValueError on zero."""
        if not self._c:
            raise ValueError("zero polynomial has no valuation")
        return min(self._c)

    def is_nonneg(self) -> bool:
        return all(x > 0 for x in self._c.values())

    # ----- arithmetic -----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, x in other._c.items():
            y = c.get(e, 0) + x
            if y:
                c[e] = y
            else:
                c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -x for e, x in self._c.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            out = LaurentPoly.__new__(LaurentPoly)
            out._c = {e: x * other for e, x in self._c.items()}
            return out
        c: dict[int, int] = {}
        for e1, x1 in self._c.items():
            for e2, x2 in other._c.items():
                e = e1 + e2
                y = c.get(e, 0) + x1 * x2
                if y:
                    c[e] = y
                else:
                    c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e + k: x for e, x in self._c.items()}
        return out

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-e: x for e, x in self._c.items()}
        return out

    def __call__(self, value: int) -> int:
        """Evaluate at an integer value (value = +-1 stays exact)."""
        if value in (1, -1):
            return sum(x * (value ** (e % 2)) for e, x in self._c.items())
        total = 0
        for e, x in self._c.items():
            if e < 0:
                raise ValueError("negative exponent at non-unit value")
            total += x * value**e
        return total

    # ----- comparison / hashing / io --------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def to_dict(self) -> dict[str, int]:
        """JSON-friendly {str(exponent): coeff} with sorted keys."""
        return {str(e): self._c[e] for e in sorted(self._c)}

    @classmethod
    def from_dict(cls, d: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(x) for e, x in d.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self!s})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            x = self._c[e]
            if e == 0:
                term = str(abs(x))
            else:
                mag = "" if abs(x) == 1 else f"{abs(x)}*"
                term = f"{mag}v" if e == 1 else f"{mag}v^{e}"
            parts.append(("- " if x < 0 else "+ ") + term)
        body = " ".join(parts)
        return body[2:] if body.startswith("+ ") else "-" + body[2:]


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
V = LaurentPoly.v(1)
VINV = LaurentPoly.v(-1)
