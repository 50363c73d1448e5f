"""Exact scalars, Laurent polynomials in t, truncated power series and dual numbers."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence


class DomainError(Exception):
    """Base class for mathematical errors; ``name`` is what the CLI reports."""

    @property
    def name(self) -> str:
        return type(self).__name__


class EvalAtPole(DomainError):
    pass


class NotDivisible(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class VariantMismatch(DomainError):
    pass


class SizeMismatch(DomainError):
    pass


class DuplicatePoint(DomainError):
    pass


class AlgebraMismatch(DomainError):
    pass


class NegativeExponent(DomainError):
    pass


class NotPoisson(DomainError):
    pass


class OrderTooSmall(DomainError):
    pass


class NotInPolarization(DomainError):
    pass


class TwistObstruction(DomainError):
    pass


class ZeroVector(DomainError):
    pass


class TopCoefficientZero(DomainError):
    pass


class NotTotallyEven(DomainError):
    pass


class ParseError(DomainError):
    pass


def Q(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def falling(a: int, k: int) -> int:
    """Falling factorial a(a-1)...(a-k+1); valid for negative a."""
    out = 1
    for r in range(k):
        out *= a - r
    return out


class LaurentPoly:
    """Sparse element of Q[t, 1/t]; immutable and hashable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Q(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def t_minus(cls, x, k: int = 1) -> "LaurentPoly":
        """(t - x)^k for k >= 0."""
        x = Q(x)
        return cls({j: comb(k, j) * (-x) ** (k - j) for j in range(k + 1)})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Q(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        other = _lp(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_lp(other))

    def __rsub__(self, other):
        return _lp(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Q(other)
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        other = _lp(other)
        c: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise NotInvertible("only monomials have Laurent inverses")
            (e, v), = self._c.items()
            return LaurentPoly._raw({e * k: v ** k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self, k: int = 1) -> "LaurentPoly":
        c = {}
        for e, v in self._c.items():
            f = falling(e, k)
            if f:
                c[e - k] = v * f
        return LaurentPoly._raw(c)

    def residue(self) -> Fraction:
        return self.coeff(-1)

    def __call__(self, x) -> Fraction:
        x = Q(x)
        if x == 0 and not self.is_polynomial():
            raise EvalAtPole("evaluation at 0 of a polynomial with negative exponents")
        return sum((v * x ** e for e, v in self._c.items()), Fraction(0))

    def taylor_coefficient(self, x, k: int) -> Fraction:
        """f^(k)(x)/k!, computed without forming factorials."""
        x = Q(x)
        if x == 0:
            if not self.is_polynomial():
                raise EvalAtPole("Taylor expansion at 0 of a polynomial with negative exponents")
            return self.coeff(k)
        total = Fraction(0)
        for e, v in self._c.items():
            # d^k/dt^k t^e / k! = binom(e, k) t^(e-k), with the generalized binomial
            b = Fraction(falling(e, k))
            if b:
                for r in range(2, k + 1):
                    b /= r
                total += v * b * x ** (e - k)
        return total

    def taylor(self, x, count: int) -> list:
        return [self.taylor_coefficient(x, k) for k in range(count)]

    def divide_exact(self, x) -> "LaurentPoly":
        """Return q with self = (t - x) q."""
        x = Q(x)
        if self(x) != 0:
            raise NotDivisible(f"polynomial does not vanish at {x}")
        if not self._c:
            return self
        # Synthetic division from the top exponent down: q_{e-1} = p_e + x q_e.
        lo, hi = self.min_exp(), self.max_exp()
        c = {}
        carry = Fraction(0)
        stop = lo - 1 if x == 0 else lo
        for e in range(hi, stop, -1):
            carry = self.coeff(e) + x * carry
            if carry:
                c[e - 1] = carry
        return LaurentPoly._raw(c)

    def divide_power(self, x, k: int) -> "LaurentPoly":
        out = self
        for _ in range(k):
            out = out.divide_exact(x)
        return out

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)})"

    def to_json(self):
        return [[e, str(v.numerator), str(v.denominator)] for e, v in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in data})


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"not a Laurent polynomial: {x!r}")


def format_scalar(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(p: LaurentPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, v in sorted(p.items(), reverse=True):
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if not mono:
            s = format_scalar(v)
        elif v == 1:
            s = mono
        elif v == -1:
            s = "-" + mono
        else:
            s = f"{format_scalar(v)}*{mono}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


class Jet:
    """Truncated power series c_0 + c_1 a + ... + c_{N-1} a^{N-1}.

    Coefficients may be any ring elements closed under + and * (Fractions or
    DualNumbers); the truncation order N is fixed per value.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = list(coeffs)
        if order is not None:
            zero = _zero_like(cs[0]) if cs else Fraction(0)
            cs = (cs + [zero] * order)[:order]
        if not cs:
            raise ValueError("a jet needs a positive order")
        self.coeffs = tuple(Q(c) if isinstance(c, (int, str)) else c for c in cs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int) -> "Jet":
        if not p.is_polynomial():
            raise ValueError("jets are truncated polynomials")
        return cls([p.coeff(k) for k in range(order)])

    def _check(self, other: "Jet"):
        if other.order != self.order:
            raise SizeMismatch("jets of different truncation order")

    def __add__(self, other: "Jet"):
        self._check(other)
        return Jet([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Jet"):
        self._check(other)
        return Jet([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Jet([-a for a in self.coeffs])

    def scale(self, c) -> "Jet":
        return Jet([c * a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self.scale(other)
        self._check(other)
        n = self.order
        zero = _zero_like(self.coeffs[0])
        out = [zero] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return Jet(out)

    def __pow__(self, k: int):
        one = [_one_like(self.coeffs[0])] + [_zero_like(self.coeffs[0])] * (self.order - 1)
        out = Jet(one)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "Jet":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise NotInvertible("jet with zero constant term")
        n = self.order
        inv0 = _one_like(c0) / c0
        out = [inv0]
        for k in range(1, n):
            s = _zero_like(c0)
            for j in range(1, k + 1):
                s = s + self.coeffs[j] * out[k - j]
            out.append(-(s * inv0))
        return Jet(out)

    def derivative(self) -> "Jet":
        """Formal derivative d/da; the top coefficient becomes 0 (it is unknown past the truncation)."""
        zero = _zero_like(self.coeffs[0])
        return Jet([k * self.coeffs[k] for k in range(1, self.order)] + [zero])

    def compose(self, inner: "Jet") -> "Jet":
        """self(inner(a)) for inner with zero constant term."""
        self._check(inner)
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        zero = _zero_like(self.coeffs[0])
        out = Jet([zero] * self.order)
        power = Jet([_one_like(self.coeffs[0])] + [zero] * (self.order - 1))
        for c in self.coeffs:
            out = out + power.scale(c)
            power = power * inner
        return out

    def __eq__(self, other):
        return isinstance(other, Jet) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Jet({list(self.coeffs)})"


def jet_inverse(s: Jet) -> Jet:
    return s.inverse()


class DualNumber:
    """a + b h with h^2 = 0."""

    __slots__ = ("value", "derivative")

    def __init__(self, value=0, derivative=0):
        self.value = Q(value) if isinstance(value, (int, str)) else value
        self.derivative = Q(derivative) if isinstance(derivative, (int, str)) else derivative

    @staticmethod
    def _d(x) -> "DualNumber":
        return x if isinstance(x, DualNumber) else DualNumber(Q(x), 0)

    def __add__(self, other):
        o = self._d(other)
        return DualNumber(self.value + o.value, self.derivative + o.derivative)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.value, -self.derivative)

    def __sub__(self, other):
        return self + (-self._d(other))

    def __rsub__(self, other):
        return self._d(other) - self

    def __mul__(self, other):
        o = self._d(other)
        return DualNumber(self.value * o.value, self.value * o.derivative + self.derivative * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._d(other)
        if o.value == 0:
            raise NotInvertible("dual number with zero real part")
        return DualNumber(
            self.value / o.value,
            (self.derivative * o.value - self.value * o.derivative) / (o.value * o.value),
        )

    def __rtruediv__(self, other):
        return self._d(other) / self

    def __eq__(self, other):
        if isinstance(other, DualNumber):
            return self.value == other.value and self.derivative == other.derivative
        if isinstance(other, (int, Fraction)):
            return self.value == other and self.derivative == 0
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.value, self.derivative))

    def __repr__(self):
        return f"DualNumber({self.value}, {self.derivative})"


def _zero_like(x):
    return DualNumber(0, 0) if isinstance(x, DualNumber) else Fraction(0)


def _one_like(x):
    return DualNumber(1, 0) if isinstance(x, DualNumber) else Fraction(1)


def laurent_derivative(p: LaurentPoly) -> LaurentPoly:
    return p.derivative()


def laurent_residue(p: LaurentPoly) -> Fraction:
    return p.residue()


def taylor_coefficient(p: LaurentPoly, x, k: int) -> Fraction:
    return p.taylor_coefficient(x, k)


def divide_exact(p: LaurentPoly, x) -> LaurentPoly:
    return p.divide_exact(x)


# exact linear algebra over Q, backed by flint's fmpq_mat


def _to_fmpq_mat(rows: Sequence[Sequence]):
    import flint

    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    flat = []
    for r in rows:
        for v in r:
            v = Q(v)
            flat.append(flint.fmpq(v.numerator, v.denominator))
    return flint.fmpq_mat(nr, nc, flat)


def _from_fmpq(v) -> Fraction:
    return Fraction(int(v.p), int(v.q))


def matrix_rank(rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    return _to_fmpq_mat(rows).rank()


def rref(rows: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form and pivot columns."""
    if not rows or not len(rows[0]):
        return [], []
    R, rank = _to_fmpq_mat(rows).rref()
    nc = R.ncols()
    out, pivots = [], []
    for i in range(rank):
        row = [_from_fmpq(R[i, j]) for j in range(nc)]
        pivots.append(next(j for j, v in enumerate(row) if v))
        out.append(row)
    return out, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def matrix_inverse(rows: Sequence[Sequence]) -> list:
    M = _to_fmpq_mat(rows)
    if M.rank() < M.nrows():
        raise NotInvertible("singular matrix")
    Mi = M.inv()
    return [[_from_fmpq(Mi[i, j]) for j in range(Mi.ncols())] for i in range(Mi.nrows())]


def in_row_span(rows: Sequence[Sequence], v: Sequence) -> bool:
    if not any(Q(x) for x in v):
        return True
    if not rows:
        return False
    return matrix_rank(list(rows) + [list(v)]) == matrix_rank(rows)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]
