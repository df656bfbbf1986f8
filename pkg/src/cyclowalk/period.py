"""Periodicity decisions for 3-state cycle walks.

A walk is periodic iff every momentum block has finite multiplicative order.
Two exact tools decide this:

* `block_order` iterates exact matrix powers with early exit, giving the least
  t with B^t = I.
* `certify_infinite` produces a non-periodicity certificate: if the walk were
  periodic, every block eigenvalue would be a root of unity, hence an algebraic
  integer, so every symmetric function of the eigenvalues (every coefficient of
  the characteristic polynomial, after optionally splitting off exactly-known
  root-of-unity eigenvalues) would lie in Z[zeta_L] for L = lcm(N, coin level).
  An exactly verified non-integral coefficient therefore proves the period is
  infinite.  No numeric value ever decides a certificate: floating point only
  proposes root-of-unity candidates, which are confirmed or discarded exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from .cyclo import (
    CycloNum,
    _divisors,
    common_level,
    descend,
    in_ring_of_integers,
    totient,
    zeta,
)
from .walk import CoinMatrix, ExactMatrix, WalkSpec, build_blocks


@dataclass(frozen=True)
class TraceCertificate:
    """Exact witness that block k cannot have all-root-of-unity eigenvalues.

    `reduced_form` is the violating symmetric function of the block spectrum,
    descended to `target_level` and scaled by `denominator`; its coefficients at
    `violated_coefficient_indices` are not divisible by `denominator`, so the
    unscaled element is not an algebraic integer of Q(zeta_target_level).
    """

    k: int
    trace: CycloNum
    target_level: int
    reduced_form: CycloNum
    violated_coefficient_indices: tuple[int, ...]
    denominator: int

    def to_json(self) -> dict:
        return {
            "kind": "trace_nonintegrality",
            "k": self.k,
            "level": self.target_level,
            "trace": self.trace.to_json(),
            "scaled_coeffs": [str(c) for c in self.reduced_form.coeffs],
            "violations": list(self.violated_coefficient_indices),
            "denominator": self.denominator,
        }


def verify_certificate(cert: TraceCertificate) -> bool:
    """Re-check a certificate using only field arithmetic.

    Confirms that the block trace is not in Z[zeta_target_level] and that the
    recorded coefficients of the scaled form indeed violate divisibility.
    """
    if in_ring_of_integers(cert.trace, cert.target_level, 1):
        return False
    if not cert.violated_coefficient_indices:
        return False
    d = cert.denominator
    coeffs = cert.reduced_form.coeffs
    for i in cert.violated_coefficient_indices:
        if coeffs[i].denominator != 1 or coeffs[i].numerator % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Finite:
    T: int
    block_orders: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CertifiedInfinite:
    certificate: TraceCertificate


@dataclass(frozen=True)
class UnknownUpTo:
    bound: int


PeriodResult = Finite | CertifiedInfinite | UnknownUpTo


@dataclass(frozen=True)
class CoinEntryCheck:
    entry: str
    level: int
    denominator: int
    member: bool


@dataclass(frozen=True)
class CoinConditionReport:
    """Necessary condition on the coin diagonal for U_N^T = I.

    `passes` is the conjunction of the three ring memberships; a failing report
    rules out the period T exactly.
    """

    n: int
    t: int
    passes: bool
    checks: tuple[CoinEntryCheck, CoinEntryCheck, CoinEntryCheck]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "passes": self.passes,
            "checks": [
                {
                    "entry": c.entry,
                    "level": c.level,
                    "denominator": c.denominator,
                    "member": c.member,
                }
                for c in self.checks
            ],
        }


def char_poly_exact(m: ExactMatrix) -> tuple[CycloNum, CycloNum, CycloNum, CycloNum]:
    """Monic characteristic polynomial of a 3x3 block, descending coefficients:
    (1, -e1, e2, -e3) with e1 = trace, e2 = sum of principal minors, e3 = det."""
    if m.size != 3:
        raise ValueError("char_poly_exact expects a 3x3 matrix")
    r = m.rows
    e1 = r[0][0] + r[1][1] + r[2][2]
    e2 = (
        r[0][0] * r[1][1]
        - r[0][1] * r[1][0]
        + r[0][0] * r[2][2]
        - r[0][2] * r[2][0]
        + r[1][1] * r[2][2]
        - r[1][2] * r[2][1]
    )
    e3 = (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )
    one = CycloNum.from_rational(m.level, 1)
    return (one, -e1, e2, -e3)


def _poly_eval(coeffs: tuple[CycloNum, ...], x: CycloNum) -> CycloNum:
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = acc * x + c
    return acc


def _numeric_roots(coeffs: tuple[CycloNum, ...]) -> np.ndarray:
    vals = [c.eval() for c in coeffs[1:]]
    size = len(vals)
    companion = np.zeros((size, size), dtype=np.complex128)
    companion[0, :] = [-v for v in vals]
    for i in range(1, size):
        companion[i, i - 1] = 1.0
    return np.linalg.eigvals(companion)


def _deflate_unit_roots(
    poly: tuple[CycloNum, ...], level: int
) -> tuple[tuple[CycloNum, ...], list[CycloNum]]:
    """Split off the roots of `poly` that are exactly roots of unity in
    Q(zeta_level).

    The only roots of unity available are +-zeta_level^j.  Numeric eigenvalues
    (exact for normal matrices up to machine precision) propose candidates;
    each candidate is confirmed by exact evaluation before the linear factor is
    divided out, so the returned factorization is exact.
    """
    candidates: list[CycloNum] = []
    seen = set()
    for root in _numeric_roots(poly):
        angle = (np.angle(root) / (2 * np.pi)) % 1.0
        for offset in (0.0, 0.5):
            j = round((angle - offset) * level) % level
            if abs((angle - offset) * level - round((angle - offset) * level)) > 1e-6:
                continue
            cand = zeta(level, j) if offset == 0.0 else -zeta(level, j)
            if cand not in seen:
                seen.add(cand)
                candidates.append(cand)
    remaining = poly
    peeled: list[CycloNum] = []
    for u in candidates:
        while len(remaining) > 1 and _poly_eval(remaining, u).is_zero():
            quotient = [remaining[0]]
            for c in remaining[1:-1]:
                quotient.append(c + quotient[-1] * u)
            remaining = tuple(quotient)
            peeled.append(u)
    return remaining, peeled


def _minimal_containing_level(x: CycloNum, multiple_of: int) -> int:
    """Smallest n with multiple_of | n | x.level and x in Q(zeta_n).

    Decided exactly through the Galois stabilizer of x: x lies in Q(zeta_n) iff
    it is fixed by every automorphism a == 1 (mod n).
    """
    big = x.level
    fixed = {a for a in range(1, big + 1) if gcd(a, big) == 1 and x.galois(a) == x}
    for n in _divisors(big):
        if n % multiple_of == 0 and all(a in fixed for a in range(1 + n, big, n) if gcd(a, big) == 1):
            return n
    return big


def _certify_block(spec: WalkSpec, k: int, block: ExactMatrix) -> TraceCertificate | None:
    level = block.level
    poly = char_poly_exact(block)
    trace = -poly[1]
    deflated, peeled = _deflate_unit_roots(poly, level)
    if len(deflated) == 1:
        # Every eigenvalue is an exact root of unity: the block order is finite.
        return None

    variants = [(0, deflated, bool(peeled)), (1, poly, False)] if peeled else [
        (0, poly, False)
    ]
    best = None
    for rank, coeffs, twisted in variants:
        degree = len(coeffs) - 1
        for j in range(1, degree + 1):
            candidate = -coeffs[j]
            if in_ring_of_integers(candidate, level, 1):
                continue
            target = _minimal_containing_level(candidate, spec.n)
            key = (target, rank, j)
            if best is None or key < best[0]:
                best = (key, candidate, twisted)
    if best is None:
        return None

    (target, _, _), candidate, twisted = best
    descended = descend(candidate, target)
    if descended is None:
        raise RuntimeError(
            f"descent to level {target} failed for a Galois-fixed element"
        )
    d = 1
    for c in descended.coeffs:
        d = lcm(d, c.denominator)
    form = descended
    if twisted:
        form = form * zeta(target, k * (target // spec.n))
    form = form * d
    violations = tuple(
        i for i, c in enumerate(form.coeffs) if c.numerator % d != 0
    )
    return TraceCertificate(
        k=k,
        trace=trace,
        target_level=target,
        reduced_form=form,
        violated_coefficient_indices=violations,
        denominator=d,
    )


def certify_infinite(spec: WalkSpec) -> TraceCertificate | None:
    """First-k certificate of non-periodicity, or None when no block yields one.

    None does not prove periodicity; it only means the symmetric-function test
    is inconclusive for every momentum block.
    """
    for k, block in enumerate(build_blocks(spec)):
        cert = _certify_block(spec, k, block)
        if cert is not None:
            return cert
    return None


def _matrix_power(m: ExactMatrix, exponent: int) -> ExactMatrix:
    result = ExactMatrix.identity(m.size, m.level)
    base = m
    while exponent:
        if exponent & 1:
            result = result @ base
        base = base @ base if exponent > 1 else base
        exponent >>= 1
    return result


def block_order(m: ExactMatrix, t_max: int = 4096) -> Finite | UnknownUpTo:
    """Least t <= t_max with m^t = I, by iterated exact multiplication."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    power = m
    for t in range(1, t_max + 1):
        if power.is_identity():
            return Finite(t)
        power = power @ m
    return UnknownUpTo(t_max)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def walk_period(spec: WalkSpec, t_max: int = 4096) -> PeriodResult:
    """Decide the walk period.

    Runs the non-periodicity certificate first; otherwise takes the lcm of the
    exact block orders.  A returned Finite(T) is re-verified: every block's
    T-th power is the identity and no maximal proper divisor of T works.
    """
    cert = certify_infinite(spec)
    if cert is not None:
        return CertifiedInfinite(cert)
    blocks = build_blocks(spec)
    orders = []
    for block in blocks:
        result = block_order(block, t_max)
        if isinstance(result, UnknownUpTo):
            return UnknownUpTo(t_max)
        orders.append(result.T)
    period = lcm(*orders)
    for block in blocks:
        if not _matrix_power(block, period).is_identity():
            raise RuntimeError(f"verification failed: block^{period} != I")
    for p in _prime_factors(period):
        d = period // p
        if all(_matrix_power(b, d).is_identity() for b in blocks):
            raise RuntimeError(f"minimality failed: proper divisor {d} works")
    return Finite(period, tuple(orders))


def check_coin_necessary(coin: CoinMatrix, n: int, t: int) -> CoinConditionReport:
    """Necessary condition on the coin diagonal for the walk on the n-cycle to
    satisfy U^t = I: the first and third diagonal entries must lie in
    (1/n) Z[zeta_lcm(n,t)] and the middle one in (1/n) Z[zeta_t]."""
    if n < 2:
        raise ValueError("cycle size must be >= 2")
    if t < 1:
        raise ValueError("period candidate must be >= 1")
    joint = common_level(n, t)
    checks = (
        CoinEntryCheck(
            "c11", joint, n, in_ring_of_integers(coin.entry(0, 0), joint, n)
        ),
        CoinEntryCheck("c22", t, n, in_ring_of_integers(coin.entry(1, 1), t, n)),
        CoinEntryCheck(
            "c33", joint, n, in_ring_of_integers(coin.entry(2, 2), joint, n)
        ),
    )
    return CoinConditionReport(
        n=n, t=t, passes=all(c.member for c in checks), checks=checks
    )
