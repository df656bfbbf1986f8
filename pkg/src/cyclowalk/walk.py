"""Coins, shift conventions, and evolution operators for 3-state walks on cycles.

A walk on the N-cycle carries a 3-dimensional internal state per vertex with
basis (left, stay, right).  The coin C mixes the internal state; the shift
routes the three components to the neighbouring vertices.  Everything exact is
built from `cyclo.CycloNum`; floating point appears only in state evolution and
numeric spectra.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclo import (
    CycloNum,
    common_level,
    totient,
    zeta,
    _poly_mul_int,
    _reduce_mod_phi,
    _normalize,
)


class DimensionMismatch(ValueError):
    """State or matrix dimensions do not match the walk."""


class ShiftType(enum.Enum):
    MOVING = "moving"
    FLIPFLOP = "flip-flop"

    @classmethod
    def parse(cls, name: str) -> "ShiftType":
        for member in cls:
            if member.value == name:
                return member
        raise ValueError(f"unknown shift type {name!r} (use 'moving' or 'flip-flop')")


def _dot(level: int, pairs) -> CycloNum:
    # Fused dot product: accumulate integer convolutions over a running common
    # denominator, then reduce and normalize once.
    acc: list[int] | None = None
    acc_den = 1
    for a, b in pairs:
        an, bn = a._num, b._num
        conv = _poly_mul_int(list(an), list(bn))
        d = a._den * b._den
        if acc is None:
            acc, acc_den = conv, d
            continue
        if len(conv) > len(acc):
            acc.extend([0] * (len(conv) - len(acc)))
        if acc_den == d:
            for i, c in enumerate(conv):
                acc[i] += c
        else:
            g = gcd(acc_den, d)
            new_den = acc_den // g * d
            s_old, s_new = new_den // acc_den, new_den // d
            if s_old != 1:
                for i in range(len(acc)):
                    acc[i] *= s_old
            for i, c in enumerate(conv):
                acc[i] += c * s_new
            acc_den = new_den
    if acc is None:
        return CycloNum.from_rational(level, 0)
    _reduce_mod_phi(level, acc)
    return CycloNum._raw(level, *_normalize(acc, acc_den))


class ExactMatrix:
    """Square matrix of CycloNum entries sharing one level."""

    __slots__ = ("level", "size", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DimensionMismatch("ExactMatrix requires square, non-empty rows")
        level = rows[0][0].level
        for r in rows:
            for e in r:
                if e.level != level:
                    raise DimensionMismatch("all entries must share one level")
        self.rows = rows
        self.size = len(rows)
        self.level = level

    @classmethod
    def identity(cls, size: int, level: int) -> "ExactMatrix":
        one = CycloNum.from_rational(level, 1)
        zero = CycloNum.from_rational(level, 0)
        return cls(
            [[one if i == j else zero for j in range(size)] for i in range(size)]
        )

    def __getitem__(self, ij) -> CycloNum:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.size != other.size or self.level != other.level:
            raise DimensionMismatch("matrix product needs equal sizes and levels")
        cols = list(zip(*other.rows))
        return ExactMatrix(
            [
                [_dot(self.level, zip(row, col)) for col in cols]
                for row in self.rows
            ]
        )

    def dagger(self) -> "ExactMatrix":
        return ExactMatrix(
            [
                [self.rows[j][i].conj() for j in range(self.size)]
                for i in range(self.size)
            ]
        )

    def trace(self) -> CycloNum:
        t = CycloNum.from_rational(self.level, 0)
        for i in range(self.size):
            t = t + self.rows[i][i]
        return t

    def embed(self, target: int) -> "ExactMatrix":
        if target == self.level:
            return self
        return ExactMatrix([[e.embed(target) for e in row] for row in self.rows])

    def is_identity(self) -> bool:
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if e._den != 1:
                    return False
                if i == j:
                    if e._num[0] != 1 or any(e._num[1:]):
                        return False
                elif any(e._num):
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.size == other.size
            and self.level == other.level
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.level, self.rows))

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[e.eval() for e in row] for row in self.rows], dtype=np.complex128
        )

    def __repr__(self) -> str:
        return f"ExactMatrix(size={self.size}, level={self.level})"


@dataclass(frozen=True)
class CoinMatrix:
    """An exactly unitary coin; construction fails on any non-unitary input."""

    matrix: ExactMatrix

    def __post_init__(self):
        m = self.matrix
        conj_rows = [[e.conj() for e in row] for row in m.rows]
        for i in range(m.size):
            for j in range(m.size):
                inner = _dot(m.level, zip(m.rows[i], conj_rows[j]))
                expected = 1 if i == j else 0
                if inner != expected:
                    raise ValueError(
                        f"coin is not unitary: row {i} . conj(row {j}) = "
                        f"{inner!r}, expected {expected}"
                    )

    @property
    def size(self) -> int:
        return self.matrix.size

    @property
    def level(self) -> int:
        return self.matrix.level

    def entry(self, i: int, j: int) -> CycloNum:
        return self.matrix.rows[i][j]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "entries": [[e.to_json() for e in row] for row in self.matrix.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoinMatrix":
        level = int(data["level"])
        rows = []
        for row in data["entries"]:
            out = []
            for cell in row:
                e = CycloNum.from_json(cell)
                if level % e.level != 0:
                    raise ValueError(
                        f"entry level {e.level} does not divide coin level {level}"
                    )
                out.append(e.embed(level))
            rows.append(out)
        return cls(ExactMatrix(rows))


def load_coin_file(path: str) -> CoinMatrix:
    with open(path, encoding="utf-8") as fh:
        return CoinMatrix.from_json(json.load(fh))


def grover_coin(n: int = 3) -> CoinMatrix:
    """The n x n Grover diffusion coin: 2/n - 1 on the diagonal, 2/n elsewhere.

    Entries are plain rationals, so the coin lives at level 1.
    """
    if n < 2:
        raise ValueError("Grover coin needs n >= 2")
    off = Fraction(2, n)
    diag = off - 1
    return CoinMatrix(
        ExactMatrix(
            [
                [
                    CycloNum.from_rational(1, diag if i == j else off)
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )
    )


@lru_cache(maxsize=None)
def sqrt_cyclo(m: int) -> CycloNum:
    """Exact sqrt(m) for a positive integer, as a cyclotomic number.

    sqrt(2) = zeta_8 + zeta_8^{-1}; for an odd prime p the quadratic Gauss sum
    sum_a zeta_p^{a^2} equals sqrt(p) when p = 1 (mod 4) and i*sqrt(p) when
    p = 3 (mod 4).  For n = 3 this lands at level 12 with
    sqrt(3) = zeta_12 + zeta_12^{-1}.
    """
    if m < 1:
        raise ValueError("sqrt_cyclo needs a positive integer")
    square_part = 1
    radical = []
    rest, p = m, 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            square_part *= p ** (e // 2)
            if e % 2:
                radical.append(p)
        p += 1 if p == 2 else 2
    if rest > 1:
        radical.append(rest)
    result = CycloNum.from_rational(1, square_part)
    for p in radical:
        if p == 2:
            root = zeta(8) + zeta(8, 7)
        else:
            level = p if p % 4 == 1 else 4 * p
            g = CycloNum.from_rational(level, 0)
            for a in range(p):
                g = g + zeta(level, (a * a % p) * (level // p))
            root = g if p % 4 == 1 else zeta(level, 3 * p) * g  # -i * g
        L = common_level(result.level, root.level)
        result = result.embed(L) * root.embed(L)
    return result


def fourier_coin(n: int = 3) -> CoinMatrix:
    """The n x n Fourier coin with entries zeta_n^{(u-1)(v-1)} / sqrt(n)."""
    if n < 2:
        raise ValueError("Fourier coin needs n >= 2")
    root = sqrt_cyclo(n)
    level = common_level(n, root.level)
    inv_sqrt = root.embed(level) * Fraction(1, n)
    omega = zeta(n).embed(level)
    powers = [CycloNum.from_rational(level, 1)]
    for _ in range(1, (n - 1) * (n - 1) + 1):
        powers.append(powers[-1] * omega)
    return CoinMatrix(
        ExactMatrix(
            [
                [powers[u * v] * inv_sqrt for v in range(n)]
                for u in range(n)
            ]
        )
    )


@dataclass(frozen=True)
class WalkSpec:
    """Cycle size, coin, and shift convention; determines the walk completely."""

    n: int
    coin: CoinMatrix
    shift: ShiftType = ShiftType.MOVING

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"cycle size must be >= 2, got {self.n}")
        if self.coin.size != 3:
            raise ValueError("3-state walks need a 3x3 coin")

    @property
    def level(self) -> int:
        """Level of the exact evolution operator, lcm(n, coin level)."""
        return common_level(self.n, self.coin.level)


def _routed_coin(spec: WalkSpec) -> ExactMatrix:
    # Rows of the coin as read by the shift: the flip-flop convention routes the
    # right-row leftward and vice versa, i.e. swaps rows 0 and 2.
    m = spec.coin.matrix
    if spec.shift is ShiftType.FLIPFLOP:
        m = ExactMatrix([m.rows[2], m.rows[1], m.rows[0]])
    return m


def build_blocks(spec: WalkSpec) -> list[ExactMatrix]:
    """The N momentum blocks diag(zeta_N^k, 1, zeta_N^{-k}) . C, exactly unitary,
    all at level lcm(N, coin level)."""
    L = spec.level
    c = _routed_coin(spec).embed(L)
    blocks = []
    for k in range(spec.n):
        up = zeta(L, k * (L // spec.n))
        down = zeta(L, -k * (L // spec.n))
        blocks.append(
            ExactMatrix(
                [
                    [e * up for e in c.rows[0]],
                    list(c.rows[1]),
                    [e * down for e in c.rows[2]],
                ]
            )
        )
    return blocks


def build_full(spec: WalkSpec) -> ExactMatrix:
    """The full 3N x 3N evolution operator.

    Row-block x holds the stay weight on the diagonal, the left weight in
    column x+1 and the right weight in column x-1 (mod N).  For N = 2 the two
    off-diagonal contributions land in the same block and add, which is exactly
    the special two-vertex operator.
    """
    N = spec.n
    L = spec.level
    c = _routed_coin(spec).embed(L)
    zero = CycloNum.from_rational(L, 0)
    size = 3 * N
    grid = [[zero] * size for _ in range(size)]
    for x in range(N):
        for j in range(3):
            grid[3 * x + 1][3 * x + j] = grid[3 * x + 1][3 * x + j] + c.rows[1][j]
            left = (x + 1) % N
            grid[3 * x + 0][3 * left + j] = grid[3 * x + 0][3 * left + j] + c.rows[0][j]
            right = (x - 1) % N
            grid[3 * x + 2][3 * right + j] = grid[3 * x + 2][3 * right + j] + c.rows[2][j]
    return ExactMatrix(grid)


@dataclass(frozen=True)
class WalkState:
    """Complex amplitude vector of length 3N, ordered vertex-major with
    (left, stay, right) inside each vertex block."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or len(amps) % 3 != 0:
            raise DimensionMismatch("state length must be a multiple of 3")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return len(self.amplitudes) // 3

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def vertex_probabilities(self) -> np.ndarray:
        """(N, 3) array of |amplitude|^2 per vertex and chirality."""
        return np.abs(self.amplitudes.reshape(-1, 3)) ** 2


def delta_state(n: int, vertex: int, weights=(0, 1, 0)) -> WalkState:
    """Unit state concentrated on one vertex with the given chirality weights."""
    amps = np.zeros(3 * n, dtype=np.complex128)
    w = np.asarray(weights, dtype=np.complex128)
    if w.shape != (3,):
        raise DimensionMismatch("need exactly three chirality weights")
    norm = np.linalg.norm(w)
    if norm == 0:
        raise ValueError("chirality weights must not all vanish")
    amps[3 * (vertex % n) : 3 * (vertex % n) + 3] = w / norm
    return WalkState(amps)


def uniform_state(n: int) -> WalkState:
    amps = np.full(3 * n, 1 / np.sqrt(3 * n), dtype=np.complex128)
    return WalkState(amps)


def evolve(spec: WalkSpec, initial: WalkState, steps: int) -> list[WalkState]:
    """States Psi_0 .. Psi_steps under floating-point application of the walk."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if len(initial.amplitudes) != 3 * spec.n:
        raise DimensionMismatch(
            f"state length {len(initial.amplitudes)} != 3*N = {3 * spec.n}"
        )
    if abs(initial.norm() - 1.0) > 1e-10:
        raise ValueError(f"initial state norm {initial.norm()} is not 1")
    u = build_full(spec).to_numpy()
    out = [initial]
    amps = initial.amplitudes
    for _ in range(steps):
        amps = u @ amps
        out.append(WalkState(amps))
    return out


def fourier_transform(state: WalkState | np.ndarray, n: int) -> list[np.ndarray]:
    """Momentum components sum_x exp(-2*pi*i*k*x/N) Psi(x), k = 0..N-1."""
    amps = state.amplitudes if isinstance(state, WalkState) else np.asarray(state)
    if len(amps) != 3 * n:
        raise DimensionMismatch(f"state length {len(amps)} != 3*N = {3 * n}")
    blocks = amps.reshape(n, 3)
    phases = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
    return [phases[k] @ blocks for k in range(n)]


def inverse_fourier_transform(modes: list[np.ndarray]) -> np.ndarray:
    """Inverse of `fourier_transform` (positive exponent, 1/N factor)."""
    n = len(modes)
    stacked = np.asarray(modes)
    phases = np.exp(2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
    return ((phases @ stacked) / n).reshape(3 * n)


def spectrum_numeric(spec: WalkSpec) -> list[complex]:
    """Eigenvalues of all N momentum blocks, concatenated by k.

    Each block's characteristic cubic is computed exactly, evaluated to floating
    point, and solved via its companion matrix (robust near repeated roots).
    """
    from .period import char_poly_exact

    out: list[complex] = []
    for block in build_blocks(spec):
        _, c2, c1, c0 = (c.eval() for c in char_poly_exact(block))
        companion = np.array(
            [[-c2, -c1, -c0], [1, 0, 0], [0, 1, 0]], dtype=np.complex128
        )
        out.extend(np.linalg.eigvals(companion))
    return out
