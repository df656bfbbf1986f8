"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored canonically in the power basis zeta_n^0 .. zeta_n^{phi(n)-1},
reduced modulo the n-th cyclotomic polynomial, so two elements are equal iff their
coefficient vectors are equal.  Coefficients are exact rationals; internally a
CycloNum keeps one integer numerator vector over a single positive denominator,
normalized so that gcd(den, *nums) == 1.

Levels are explicit and never auto-minimized: arithmetic requires both operands
at the same level, and callers embed into a common multiple first (see
`common_level`).  Subfield membership is decided by `descend`, which solves an
exact rational linear system; `in_ring_of_integers` tests membership in
(1/d) * Z[zeta_n].
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

Rational = Fraction

_DEFAULT_LEVEL_CAP = 30_000
_level_cap = int(os.environ.get("CYCLOWALK_LEVEL_CAP", _DEFAULT_LEVEL_CAP))


class LevelMismatch(ValueError):
    """Arithmetic between elements of different levels (embed first)."""


class NotAMultiple(ValueError):
    """Requested level change where the source level does not divide the target."""


class LevelCapExceeded(RuntimeError):
    """A level or lcm of levels exceeded the configured cap."""


def get_level_cap() -> int:
    return _level_cap


def set_level_cap(cap: int) -> None:
    global _level_cap
    if cap < 1:
        raise ValueError("level cap must be positive")
    _level_cap = cap


def _check_level(n: int) -> int:
    if n < 1:
        raise ValueError(f"level must be a positive integer, got {n}")
    if n > _level_cap:
        raise LevelCapExceeded(f"level {n} exceeds the configured cap {_level_cap}")
    return n


def common_level(a: int, b: int) -> int:
    """lcm of two levels, guarded by the level cap."""
    return _check_level(lcm(a, b))


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    """Euler's totient phi(n), via the prime factorization of n."""
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    phi, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            phi *= p - 1
            while m % p == 0:
                m //= p
                phi *= p
        p += 1 if p == 2 else 2
    if m > 1:
        phi *= m - 1
    return phi


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class CycloPoly:
    """The n-th cyclotomic polynomial, dense integer coefficients, ascending."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: "CycloNum") -> "CycloNum":
        acc = CycloNum.from_rational(x.level, 0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                term = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                if i > 0 and abs(c) == 1:
                    parts.append(f"-{term}" if c < 0 else term)
                else:
                    parts.append(f"{c}" if i == 0 else f"{c}*{term}")
        return " + ".join(reversed(parts)).replace("+ -", "- ")


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divexact_int(num: list[int], den: list[int]) -> list[int]:
    # den is monic; division must be exact over the integers.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> CycloPoly:
    """Phi_n, computed by exact division of x^n - 1 by all proper Phi_d, d | n."""
    _check_level(n)
    p = [0] * (n + 1)
    p[0], p[n] = -1, 1
    for d in _divisors(n)[:-1]:
        p = _poly_divexact_int(p, list(cyclotomic_poly(d).coeffs))
    assert len(p) - 1 == totient(n)
    return CycloPoly(n, tuple(p))


@lru_cache(maxsize=None)
def _phi_tail(n: int) -> tuple[tuple[int, int], ...]:
    # Nonzero non-leading coefficients of Phi_n, used for reduction:
    # x^phi == -sum(a_j x^j).
    coeffs = cyclotomic_poly(n).coeffs
    return tuple((j, a) for j, a in enumerate(coeffs[:-1]) if a)


def _reduce_mod_phi(n: int, coeffs: list[int]) -> list[int]:
    """Reduce an integer polynomial in zeta_n (ascending) modulo Phi_n, in place."""
    phi = totient(n)
    tail = _phi_tail(n)
    for i in range(len(coeffs) - 1, phi - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = 0
            base = i - phi
            for j, a in tail:
                coeffs[base + j] -= c * a
    del coeffs[phi:]
    coeffs.extend([0] * (phi - len(coeffs)))
    return coeffs


@lru_cache(maxsize=None)
def _embedding_roots(n: int) -> tuple[complex, ...]:
    import cmath

    return tuple(cmath.exp(2j * cmath.pi * j / n) for j in range(totient(n)))


class CycloNum:
    """An element of Q(zeta_n) in the canonical power basis.

    >>> zeta(3, 2).coeffs           # zeta_3^2 reduced mod x^2 + x + 1
    (Fraction(-1, 1), Fraction(-1, 1))
    >>> (zeta(4) * zeta(4)).coeffs  # i^2 == -1
    (Fraction(-1, 1), Fraction(0, 1))
    """

    __slots__ = ("level", "_num", "_den")

    def __init__(self, level: int, coeffs):
        """Build from rational coefficients of powers zeta_level^0, ^1, ... of
        any length; the polynomial is reduced canonically."""
        _check_level(level)
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den // gcd(den, f.denominator) * f.denominator
        nums = [int(f * den) for f in fracs]
        _reduce_mod_phi(level, nums)
        self.level = level
        self._num, self._den = _normalize(nums, den)

    @classmethod
    def _raw(cls, level: int, num: tuple[int, ...], den: int) -> "CycloNum":
        # Internal: `num` already reduced and normalized against `den`.
        self = object.__new__(cls)
        self.level = level
        self._num = num
        self._den = den
        return self

    @classmethod
    def from_rational(cls, level: int, value) -> "CycloNum":
        f = Fraction(value)
        _check_level(level)
        num = [0] * totient(level)
        num[0] = f.numerator
        return cls._raw(level, tuple(num), f.denominator)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_integral(self) -> bool:
        """True iff every power-basis coefficient is an integer."""
        return self._den == 1

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "CycloNum | None":
        if isinstance(other, CycloNum):
            if other.level != self.level:
                raise LevelMismatch(
                    f"levels {self.level} and {other.level} differ; embed first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.level, other)
        return None

    def __add__(self, other) -> "CycloNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        da, db = self._den, o._den
        if da == db:
            nums = [x + y for x, y in zip(self._num, o._num)]
            den = da
        else:
            den = da // gcd(da, db) * db
            sa, sb = den // da, den // db
            nums = [x * sa + y * sb for x, y in zip(self._num, o._num)]
        return CycloNum._raw(self.level, *_normalize(nums, den))

    __radd__ = __add__

    def __sub__(self, other) -> "CycloNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "CycloNum":
        return (-self) + other

    def __neg__(self) -> "CycloNum":
        return CycloNum._raw(self.level, tuple(-c for c in self._num), self._den)

    def __mul__(self, other) -> "CycloNum":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            nums = [c * f.numerator for c in self._num]
            return CycloNum._raw(
                self.level, *_normalize(nums, self._den * f.denominator)
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _poly_mul_int(list(self._num), list(o._num))
        _reduce_mod_phi(self.level, prod)
        return CycloNum._raw(self.level, *_normalize(prod, self._den * o._den))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CycloNum":
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = CycloNum.from_rational(self.level, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.level, other)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return (
            self.level == other.level
            and self._den == other._den
            and self._num == other._num
        )

    def __hash__(self) -> int:
        return hash((self.level, self._num, self._den))

    # -- field structure ----------------------------------------------------

    def galois(self, a: int) -> "CycloNum":
        """Image under the automorphism zeta_n -> zeta_n^a, gcd(a, n) == 1."""
        n = self.level
        a %= n
        if gcd(a, n) != 1:
            raise ValueError(f"zeta_{n} -> zeta_{n}^{a} is not an automorphism")
        out = [0] * n
        for j, c in enumerate(self._num):
            if c:
                out[(j * a) % n] += c
        _reduce_mod_phi(n, out)
        return CycloNum._raw(n, *_normalize(out, self._den))

    def conj(self) -> "CycloNum":
        """Complex conjugation, zeta_n -> zeta_n^{n-1}."""
        if self.level <= 2:
            return self
        return self.galois(self.level - 1)

    def embed(self, target: int) -> "CycloNum":
        """The same field element expressed at a level that self.level divides."""
        n = self.level
        if target % n != 0:
            raise NotAMultiple(f"level {n} does not divide target level {target}")
        _check_level(target)
        if target == n:
            return self
        step = target // n
        out = [0] * target
        for j, c in enumerate(self._num):
            if c:
                out[j * step] = c
        _reduce_mod_phi(target, out)
        return CycloNum._raw(target, *_normalize(out, self._den))

    def eval(self) -> complex:
        """Complex embedding zeta_n -> exp(2*pi*i/n)."""
        roots = _embedding_roots(self.level)
        return sum(c * r for c, r in zip(self._num, roots)) / self._den

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloNum":
        level = int(data["level"])
        coeffs = [Fraction(s) for s in data["coeffs"]]
        if len(coeffs) != totient(level):
            raise ValueError(
                f"expected {totient(level)} coefficients at level {level}, "
                f"got {len(coeffs)}"
            )
        return cls(level, coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"CycloNum(level={self.level}, 0)"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                if j == 0:
                    parts.append(f"{c}")
                elif c == 1:
                    parts.append(f"z{j}" if j > 1 else "z")
                else:
                    parts.append(f"{c}*z^{j}" if j > 1 else f"{c}*z")
        body = " + ".join(parts).replace("+ -", "- ")
        return f"CycloNum(level={self.level}, {body})"


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    g = den
    for c in nums:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if g > 1:
        den //= g
        nums = [c // g for c in nums]
    return tuple(nums), den


def zeta(n: int, power: int = 1) -> CycloNum:
    """zeta_n^power as a canonical level-n element.

    >>> zeta(4, 2).coeffs
    (Fraction(-1, 1), Fraction(0, 1))
    """
    _check_level(n)
    p = power % n
    vec = [0] * (p + 1)
    vec[p] = 1
    _reduce_mod_phi(n, vec)
    return CycloNum._raw(n, tuple(vec), 1)


# -- subfield descent ---------------------------------------------------------


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]):
    """Solve matrix @ x == rhs exactly, full pivoting; None if inconsistent.

    The system may be overdetermined; the column space is scanned for any
    nonzero pivot (magnitude is irrelevant in exact arithmetic).
    """
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    m = [row[:] + [b] for row, b in zip(matrix, rhs)]
    col_of = list(range(cols))
    rank = 0
    for _ in range(cols):
        pr = pc = -1
        for i in range(rank, rows):
            for j in range(rank, cols):
                if m[i][j]:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        m[rank], m[pr] = m[pr], m[rank]
        if pc != rank:
            for row in m:
                row[rank], row[pc] = row[pc], row[rank]
            col_of[rank], col_of[pc] = col_of[pc], col_of[rank]
        piv = m[rank][rank]
        for i in range(rows):
            if i != rank and m[i][rank]:
                f = m[i][rank] / piv
                for j in range(rank, cols + 1):
                    m[i][j] -= f * m[rank][j]
        rank += 1
    for i in range(rank, rows):
        if m[i][cols]:
            return None
    x = [Fraction(0)] * cols
    for i in range(rank):
        x[col_of[i]] = m[i][cols] / m[i][i]
    return x


def descend(x: CycloNum, n: int) -> CycloNum | None:
    """Decide whether x lies in Q(zeta_n) for n dividing x.level.

    Returns the level-n representation, or None when x is not in the subfield.
    The decision is an exact rational linear solve against the embedded basis
    zeta_n^0 .. zeta_n^{phi(n)-1}.
    """
    L = x.level
    if L % n != 0:
        raise NotAMultiple(f"{n} does not divide level {L}")
    if n == L:
        return x
    phi_n = totient(n)
    basis = [zeta(n, j).embed(L) for j in range(phi_n)]
    matrix = [[b.coeffs[i] for b in basis] for i in range(totient(L))]
    sol = _solve_exact(matrix, list(x.coeffs))
    if sol is None:
        return None
    return CycloNum(n, sol)


def is_fixed_by_subfield_galois(x: CycloNum, n: int) -> bool:
    """Redundant validator for descend: x in Q(zeta_n) iff x is fixed by every
    automorphism zeta_L -> zeta_L^a with a == 1 (mod n) and gcd(a, L) == 1."""
    L = x.level
    if L % n != 0:
        raise NotAMultiple(f"{n} does not divide level {L}")
    for a in range(1 + n, L, n):
        if gcd(a, L) == 1 and x.galois(a) != x:
            return False
    return True


def in_ring_of_integers(x: CycloNum, n: int, denominator: int = 1) -> bool:
    """True iff denominator * x lies in Z[zeta_n].

    Incompatible levels are resolved by embedding into lcm(x.level, n) and
    descending; a failed descent means x is not even in Q(zeta_n), hence False.
    """
    if denominator < 1:
        raise ValueError("denominator must be a positive integer")
    y = x * denominator
    target = common_level(y.level, n)
    if target != y.level:
        y = y.embed(target)
    if target != n:
        down = descend(y, n)
        if down is None:
            return False
        y = down
    return y.is_integral()
