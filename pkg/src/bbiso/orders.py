"""Arithmetic of group orders: factorization, small/big prime splits, and the
density of orders amenable to the cyclic-extension isomorphism tests.

The classification routines decide, from the factorization of n alone, whether
groups of order n fall in the classes this library can handle.  The cutoff
between "small" and "big" primes is ceil(ln ln n); small prime powers are
additionally capped by ln n.  This exact convention is frozen by the density
tests, so do not change it casually.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np


class FactorizationError(Exception):
    """Raised when an input cannot be factored within the configured effort."""


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    if limit < 2:
        return []
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return [int(p) for p in np.nonzero(mask)[0]]


_SMALL_PRIMES = sieve_primes(10**4)

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant with a deterministic schedule of polynomial offsets.
    if n % 2 == 0:
        return 2
    for c in range(1, 256):
        x = y = 2
        d = 1
        steps = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
            if steps > 1 << 22:
                break
        if 1 < d < n:
            return d
    raise FactorizationError(f"pollard rho gave up on {n}")


def factorize(n: int) -> "FactoredInteger":
    """Full factorization by trial division then Pollard rho on survivors."""
    if n < 1:
        raise ValueError(f"cannot factor {n}: need a positive integer")
    m = n
    factors: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if _is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return FactoredInteger(n, tuple(sorted(factors.items())))


@dataclass(frozen=True)
class FactoredInteger:
    """An integer together with its full prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @classmethod
    def of(cls, n: int) -> "FactoredInteger":
        return factorize(n)

    @classmethod
    def from_factors(cls, factors) -> "FactoredInteger":
        factors = tuple(sorted((int(p), int(e)) for p, e in factors))
        prod = 1
        for p, e in factors:
            prod *= p**e
        return cls(prod, factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def p_part(self, p: int) -> int:
        return p ** self.valuation(p)

    def coprime_part(self, p: int) -> int:
        return self.value // self.p_part(p)

    def divided_by(self, d: int) -> "FactoredInteger":
        """Exact division; d must divide value."""
        if self.value % d != 0:
            raise ValueError(f"{d} does not divide {self.value}")
        out = []
        m = d
        for p, e in self.factors:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            if e - k:
                out.append((p, e - k))
        return FactoredInteger(self.value // d, tuple(out))

    def __int__(self) -> int:
        return self.value


def as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(int(n))


def threshold(n: int) -> float:
    """The small/big prime cutoff for order n: ceil(ln ln n), and 0 for n <= 2.

    Primes p <= threshold(n) count as small.  The ceiling makes the cutoff an
    integer, which is the convention the reference density figures pin down.
    """
    if n <= 2:
        return 0.0
    return float(math.ceil(math.log(math.log(n))))


def split_by_prime_bound(n: FactoredInteger, c: float) -> tuple[FactoredInteger, FactoredInteger]:
    """Write n = a*b with a the product of the prime powers p^e for p <= c."""
    small = tuple((p, e) for p, e in n.factors if p <= c)
    big = tuple((p, e) for p, e in n.factors if p > c)
    return FactoredInteger.from_factors(small), FactoredInteger.from_factors(big)


def mu(n) -> int:
    """Largest exponent in the factorization of n; mu(1) = 0."""
    f = as_factored(n)
    return max((e for _, e in f.factors), default=0)


@dataclass(frozen=True)
class OrderClassification:
    n: int
    threshold: float
    small_part: FactoredInteger
    big_part: FactoredInteger
    pseudo_square_free: bool
    two_threshold_free: bool
    separable: bool
    in_d: bool
    in_dhat: bool


def _pseudo_square_free(factors, c: float, log_n: float) -> bool:
    # big primes must appear to the first power; small prime powers stay <= ln n
    for p, e in factors:
        if p > c:
            if e > 1:
                return False
        elif p**e > log_n:
            return False
    return True


def _two_free(factors, c: float) -> bool:
    return all(p <= c for p, e in factors if e >= 2)


def _separable(factors, c: float) -> bool:
    # no prime power q^k | n may be 1 mod a big prime p | n
    for p, _ in factors:
        if p <= c:
            continue
        for q, f in factors:
            x = 1
            for _ in range(f):
                x = x * q % p
                if x == 1:
                    return False
    return True


def classify_order(n, threshold_override: float | None = None) -> OrderClassification:
    """Classify n by the structure of its factorization.

    in_d: the big part is square-free and every small prime power is at most
    ln n, so groups of order n split over a cyclic normal Hall subgroup in the
    cases the isomorphism tests rely on.  in_dhat additionally requires that
    no prime power divisor is congruent to 1 modulo a big prime divisor
    (separability) and that squares only occur at small primes.
    """
    f = as_factored(n)
    c = threshold(f.value) if threshold_override is None else float(threshold_override)
    log_n = math.log(f.value) if f.value > 1 else 0.0
    small, big = split_by_prime_bound(f, c)
    psf = _pseudo_square_free(f.factors, c, log_n)
    two = _two_free(f.factors, c)
    sep = _separable(f.factors, c)
    return OrderClassification(
        n=f.value,
        threshold=c,
        small_part=small,
        big_part=big,
        pseudo_square_free=psf,
        two_threshold_free=two,
        separable=sep,
        in_d=psf,
        in_dhat=psf and two and sep,
    )


# --- density scanning -------------------------------------------------------

_DENSITY_SEGMENT = 1 << 17


def _count_segment(args) -> int:
    """Count set members in [lo, hi) by sieving out base primes per residue."""
    lo, hi, base_primes, want_dhat = args
    size = hi - lo
    residual = list(range(lo, hi))
    factor_lists: list[list | None] = [None] * size
    for p in base_primes:
        start = -(-lo // p) * p
        for i in range(start - lo, size, p):
            m = residual[i] // p
            e = 1
            while m % p == 0:
                m //= p
                e += 1
            residual[i] = m
            fl = factor_lists[i]
            if fl is None:
                fl = factor_lists[i] = []
            fl.append((p, e))
    count = 0
    log = math.log
    ceil = math.ceil
    for i in range(size):
        n = lo + i
        if n == 1:
            count += 1
            continue
        fs = factor_lists[i] or []
        if residual[i] > 1:
            fs.append((residual[i], 1))
        c = 0.0 if n <= 2 else float(ceil(log(log(n))))
        ln_n = log(n)
        ok = True
        for p, e in fs:
            if p > c:
                if e > 1:
                    ok = False
                    break
            elif p**e > ln_n:
                ok = False
                break
        if ok and want_dhat:
            ok = _two_free(fs, c) and _separable(fs, c)
        count += ok
    return count


def density_scan(selector: str, limit: int, threads: int = 1) -> float:
    """Fraction of n in [1, limit] whose classification lands in the chosen set.

    selector is "d" (pseudo-square-free orders) or "dhat" (the separable
    refinement).  The range is cut into fixed segments whose counts are summed,
    so the result is independent of how work is distributed.
    """
    if selector not in ("d", "dhat"):
        raise ValueError(f"unknown density set {selector!r}")
    if limit < 1:
        raise ValueError("limit must be positive")
    base_primes = sieve_primes(math.isqrt(limit) + 1)
    want_dhat = selector == "dhat"
    jobs = []
    lo = 1
    while lo <= limit:
        hi = min(lo + _DENSITY_SEGMENT, limit + 1)
        jobs.append((lo, hi, base_primes, want_dhat))
        lo = hi
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(_count_segment, jobs))
    else:
        total = sum(_count_segment(j) for j in jobs)
    return total / limit
