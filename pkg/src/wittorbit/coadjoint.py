"""The group G_n of truncated coordinate changes a -> s(a) acting on g_n and its dual.

g_s sends f(a) d to f(s(a)) / s'(a) d inside k[a]/(a^(n+1)) d, so
matrix(g_s) @ matrix(g_r) == matrix(g_{r o s}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .foundations import (
    DualNumber,
    Jet,
    NotInvertible,
    Q,
    SizeMismatch,
    TopCoefficientZero,
    matmul,
    matrix_inverse,
    matrix_rank,
)


@dataclass(frozen=True)
class GroupElement:
    """g_s for s = c_1 a + ... + c_n a^n; ``coeffs`` holds (c_1, ..., c_n)."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Q(c) for c in self.coeffs)
        if len(cs) > self.n:
            raise SizeMismatch(f"G_{self.n} elements have at most {self.n} coefficients")
        cs = cs + (Fraction(0),) * (self.n - len(cs))
        if self.n and cs[0] == 0:
            raise NotInvertible("the linear coefficient c_1 must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(n, (1,))

    @classmethod
    def dilation(cls, n: int, zeta) -> "GroupElement":
        return cls(n, (zeta,))

    @classmethod
    def unipotent(cls, n: int, j: int, alpha) -> "GroupElement":
        """g_{a + alpha a^(j+1)}."""
        cs = [Fraction(0)] * n
        cs[0] = Fraction(1)
        if 1 <= j < n:
            cs[j] += Q(alpha)
        return cls(n, tuple(cs))

    def jet(self) -> Jet:
        return Jet((Fraction(0),) + self.coeffs, self.n + 1)

    def then(self, other: "GroupElement") -> "GroupElement":
        """The element whose matrix is matrix(self) @ matrix(other): s = other o self."""
        comp = other.jet().compose(self.jet())
        return GroupElement(self.n, comp.coeffs[1:])


def _matrix_from_jet(s: Jet, n: int) -> list:
    """Columns: coefficients of s^(i+1) / s' for i < n, read off at a^1..a^n."""
    inv = s.derivative().inverse()
    cols = []
    power = s
    for _ in range(n):
        col = (power * inv).coeffs
        cols.append(col[1 : n + 1])
        power = power * s
    return [[cols[i][k] for i in range(n)] for k in range(n)]


def group_matrix(g: GroupElement) -> list:
    return _matrix_from_jet(g.jet(), g.n)


def _check_size(g: GroupElement, xi: Sequence):
    if len(xi) != g.n:
        raise SizeMismatch(f"covector of size {len(xi)} for G_{g.n}")


def act_on_dual(g: GroupElement, xi: Sequence) -> tuple:
    """Contragredient action: (g.xi)(v) = xi(g^-1 v), i.e. the row vector xi @ M^-1."""
    _check_size(g, xi)
    if g.n == 0:
        return ()
    Minv = matrix_inverse(group_matrix(g))
    row = [[Q(x) for x in xi]]
    return tuple(matmul(row, Minv)[0])


def act_transpose(g: GroupElement, xi: Sequence) -> tuple:
    """The transpose action xi -> xi @ M, in which g_{zeta a} scales v*_i by zeta^i."""
    _check_size(g, xi)
    row = [[Q(x) for x in xi]]
    return tuple(matmul(row, group_matrix(g))[0])


def act_on_gn(g: GroupElement, coords: Sequence) -> tuple:
    M = group_matrix(g)
    return tuple(sum((M[k][i] * Q(c) for i, c in enumerate(coords)), Fraction(0)) for k in range(g.n))


def _pairing_matrix(xi: Sequence) -> list:
    n = len(xi)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            k = i + j
            row.append((j - i) * Q(xi[k]) if k < n else Fraction(0))
        rows.append(row)
    return rows


def orbit_dimension(xi: Sequence) -> int:
    """Rank of the form (v_i, v_j) -> xi([v_i, v_j])."""
    return matrix_rank(_pairing_matrix(xi)) if len(xi) else 0


def _require_top(xi: Sequence):
    if not xi or Q(xi[-1]) == 0:
        raise TopCoefficientZero("the top coordinate xi(v_{n-1}) must be nonzero")


def orbit_reduce(xi: Sequence) -> tuple[tuple, list]:
    """Normal form and the unipotent elements used, applied in order."""
    xi = tuple(Q(x) for x in xi)
    n = len(xi)
    if n == 1:
        return xi, []
    _require_top(xi)
    witness = []
    for j in range(1, n):
        if 2 * j == n - 1:
            continue
        target = n - 1 - j
        if xi[target] == 0:
            continue
        # the target coordinate is affine in alpha
        c0 = xi[target]
        c1 = act_on_dual(GroupElement.unipotent(n, j, 1), xi)[target]
        alpha = -c0 / (c1 - c0)
        g = GroupElement.unipotent(n, j, alpha)
        xi = act_on_dual(g, xi)
        witness.append(g)
    return xi, witness


def odd_invariant(xi: Sequence) -> Fraction:
    """gamma^2 / beta of the reduced form (n = 2m + 1 > 1)."""
    red, _ = orbit_reduce(xi)
    n = len(red)
    m = (n - 1) // 2
    return red[m] ** 2 / red[-1]


def orbit_equal(xi: Sequence, eta: Sequence) -> bool:
    """Equality of G_n-orbits over the algebraic closure of Q."""
    if len(xi) != len(eta):
        raise SizeMismatch("covectors of different sizes")
    n = len(xi)
    if n == 1:
        return Q(xi[0]) == Q(eta[0])
    _require_top(xi)
    _require_top(eta)
    if n % 2 == 0:
        return True
    return odd_invariant(xi) == odd_invariant(eta)


def closure_leq(xi: Sequence, eta: Sequence) -> bool:
    """Whether the orbit of eta lies in the closure of the orbit of xi."""
    _require_top(xi)
    dx, de = orbit_dimension(xi), orbit_dimension(eta)
    if de < dx:
        return True
    if Q(eta[-1]) == 0:
        return False
    return orbit_equal(xi, eta)


def ad_matrix(n: int, s: Sequence) -> list:
    """Matrix of ad(s(a) d) on g_n, where s = sum_k s[k] a^k (s[0] must vanish)."""
    c = [Q(x) for x in s] + [Fraction(0)] * (n + 1)
    M = [[Fraction(0)] * n for _ in range(n)]
    # s d = sum_{k>=1} c_k v_{k-1}; [v_p, v_i] = (i - p) v_{p+i}
    for i in range(n):
        for k in range(1, n + 1):
            p = k - 1
            if c[k] and p + i < n:
                M[p + i][i] += (i - p) * c[k]
    return M


def tangent_check(n: int, s: Sequence) -> bool:
    """d/dh at h = 0 of matrix(g_{a + h s}) equals ad(s d)."""
    cs = [Q(x) for x in s] + [Fraction(0)] * (n + 1)
    cs = cs[: n + 1]
    if cs[0]:
        raise ValueError("s must have zero constant term")
    coeffs = [DualNumber(Fraction(int(k == 1)), cs[k]) for k in range(n + 1)]
    M = _matrix_from_jet(Jet(coeffs, n + 1), n)
    A = ad_matrix(n, cs)
    return all(
        (M[r][c].derivative if isinstance(M[r][c], DualNumber) else 0) == A[r][c]
        for r in range(n)
        for c in range(n)
    )


def normal_form_key(xi: Sequence):
    """A hashable orbit label: n and, where orbits are not determined by n, an invariant."""
    n = len(xi)
    if n == 1:
        return (1, Q(xi[0]))
    if n % 2 == 0:
        return (n,)
    return (n, odd_invariant(xi))
