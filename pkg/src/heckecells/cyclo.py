"""Exact arithmetic in small cyclotomic fields Q(zeta_m).

Elements are Fraction vectors in the power basis 1, z, ..., z^(phi(m)-1)
modulo the m-th cyclotomic polynomial.  Supported conductors are the
ones that actually occur for groups of order <= 6 and +-1-valued
cocycles; mixing conductors lifts both operands to the lcm.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

# cyclotomic polynomials as ascending coefficient lists (monic, the
# leading 1 omitted): x^phi = -(c0 + c1 x + ...)
_PHI = {
    1: [-1],
    2: [1],
    3: [1, 1],
    4: [1, 0],
    6: [1, -1],
    8: [1, 0, 0, 0],
    12: [1, 0, -1, 0],
}

SUPPORTED_CONDUCTORS = tuple(sorted(_PHI))


class CycError(ArithmeticError):
    pass


def _deg(m: int) -> int:
    return len(_PHI[m])


class Cyc:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs=None):
        if m not in _PHI:
            raise CycError(f"unsupported conductor {m}")
        self.m = m
        d = _deg(m)
        c = [Fraction(0)] * d
        if coeffs is not None:
            for i, x in enumerate(coeffs):
                c[i] = Fraction(x)
        self.c = tuple(c)

    # ----- constructors ----------------------------------------------------

    @classmethod
    def rational(cls, x, m: int = 1) -> "Cyc":
        return cls(m, [Fraction(x)] + [0] * (_deg(m) - 1))

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "Cyc":
        """zeta_m^power."""
        power %= m
        vec = [Fraction(0)] * max(power + 1, 1)
        vec[power] = Fraction(1)
        return cls._reduce(m, vec)

    @classmethod
    def _reduce(cls, m: int, vec) -> "Cyc":
        d = _deg(m)
        vec = [Fraction(x) for x in vec]
        rel = _PHI[m]
        for i in range(len(vec) - 1, d - 1, -1):
            top = vec[i]
            if top:
                for j, cj in enumerate(rel):
                    vec[i - d + j] -= top * cj
            vec.pop()
        while len(vec) < d:
            vec.append(Fraction(0))
        out = cls.__new__(cls)
        out.m = m
        out.c = tuple(vec)
        return out

    # ----- conductor management ---------------------------------------------

    def lift(self, m2: int) -> "Cyc":
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise CycError("can only lift along divisibility")
        k = m2 // self.m
        out = Cyc.rational(0, m2)
        for i, x in enumerate(self.c):
            if x:
                out = out + Cyc._scale(Cyc.zeta(m2, i * k), x)
        return out

    @staticmethod
    def _scale(a: "Cyc", f: Fraction) -> "Cyc":
        out = Cyc.__new__(Cyc)
        out.m = a.m
        out.c = tuple(x * f for x in a.c)
        return out

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other, self.m)
        if self.m == other.m:
            return self, other
        m = lcm(self.m, other.m)
        if m not in _PHI:
            raise CycError(f"conductor {m} not supported")
        return self.lift(m), other.lift(m)

    # ----- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        out = Cyc.__new__(Cyc)
        out.m = a.m
        out.c = tuple(x + y for x, y in zip(a.c, b.c))
        return out

    __radd__ = __add__

    def __neg__(self):
        return Cyc._scale(self, Fraction(-1))

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc._scale(self, Fraction(other))
        a, b = self._common(other)
        d = _deg(a.m)
        vec = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        vec[i + j] += x * y
        return Cyc._reduce(a.m, vec)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via extended Euclid mod Phi_m."""
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero cyclotomic")
        d = _deg(self.m)
        phi = [Fraction(x) for x in _PHI[self.m]] + [Fraction(1)]
        a = list(self.c)
        r0, r1 = phi, a + [Fraction(0)] * (len(phi) - len(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def strip(p):
            while p and not p[-1]:
                p.pop()
            return p

        r0, r1 = strip(r0[:]), strip(r1[:])
        while True:
            if not r1:
                raise CycError("element not invertible (degenerate)")
            if len(r1) == 1:
                inv = 1 / r1[0]
                vec = [x * inv for x in s1]
                return Cyc._reduce(self.m, vec)
            q, rem = _polydiv(r0, r1)
            s_next = _polysub(s0, _polymul(q, s1))
            r0, r1 = r1, strip(rem)
            s0, s1 = s1, s_next

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc._scale(self, Fraction(1, 1) / Fraction(other))
        a, b = self._common(other)
        return a * b.inverse()

    def conj(self) -> "Cyc":
        """Complex conjugation zeta -> zeta^-1."""
        out = Cyc.rational(0, self.m)
        for i, x in enumerate(self.c):
            if x:
                out = out + Cyc._scale(Cyc.zeta(self.m, -i % self.m), x)
        return out

    # ----- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CycError(f"not rational: {self}")
        return self.c[0]

    def to_int(self) -> int:
        f = self.to_fraction()
        if f.denominator != 1:
            raise CycError(f"not an integer: {self}")
        return f.numerator

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other, self.m)
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._common(other)
        return a.c == b.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.m, self.c))

    def __repr__(self):
        if self.is_rational():
            return str(self.c[0])
        terms = []
        for i, x in enumerate(self.c):
            if x:
                terms.append(f"{x}*z{self.m}^{i}" if i else str(x))
        return " + ".join(terms)


def _polydiv(num, den):
    num = num[:]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        if not num[-1]:
            num.pop()
            continue
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        q[shift] += f
        for i, x in enumerate(den):
            num[shift + i] -= f * x
        num.pop()
    return q, num


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
            for i in range(n)]


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


def solve_linear(matrix, rhs):
    """Exact solve of an overdetermined consistent system over Cyc.

    matrix: list of rows of Cyc, rhs: list of Cyc.  Returns the unique
    solution or raises CycError if the system is inconsistent or the
    solution is not unique.
    """
    rows = [list(r) + [t] for r, t in zip(matrix, rhs)]
    ncols = len(matrix[0])
    piv = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()),
                   None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if len(piv) < ncols:
        raise CycError("solution not unique")
    for i in range(r, len(rows)):
        if not rows[i][-1].is_zero():
            raise CycError("inconsistent linear system")
    sol = [None] * ncols
    for i, c in enumerate(piv):
        sol[c] = rows[i][-1]
    return sol
