"""Constructive recognition of abelian groups given a factored order multiple.

The central primitive is a discrete logarithm against an independent basis:
write a group element as a power product of basis elements, or certify that
it lies outside their span. Everything else (canonical invariant-factor
bases, two-way isomorphisms with cyclic products, membership programs,
presentations) is assembled from it. Costs stay polynomial in the bit
length of the order as long as the relevant primes are small; that is the
regime the callers arrange.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import ceil, log
from random import Random
from typing import Callable, Optional, Sequence

from . import slp as slib
from .blackbox import ElementSampler, GroupHandle, LasVegasError, subgroup
from .orders import FactoredInteger, as_factored, split_by_prime_bound, threshold
from .slp import SLP, GeneratorRef

_ELEMENTARY_TABLE_LIMIT = 2_000_000


@dataclass(frozen=True)
class Basis:
    """Ordered independent elements: the span is the direct product of the
    cyclic groups they generate. ``slps`` express them over the handle's
    generators."""

    handle: GroupHandle
    elements: tuple
    orders: tuple[FactoredInteger, ...]
    slps: tuple[SLP, ...]

    @property
    def span_order(self) -> FactoredInteger:
        merged: dict[int, int] = {}
        for o in self.orders:
            for p, e in o.factors:
                merged[p] = merged.get(p, 0) + e
        return FactoredInteger.from_factors(merged.items())


@dataclass(frozen=True)
class CanonicalBasis(Basis):
    """A basis whose orders form an ascending divisor chain d1 | d2 | ... | ds."""

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(o.value for o in self.orders)


def _elementary_digits(G: GroupHandle, p: int, zs: Sequence, y) -> Optional[list[int]]:
    """Solve ``y = prod zs[i]**d[i]`` with digits in [0, p).

    The zs all have order dividing p. Meet in the middle: tabulate every
    digit choice on the first half, walk the second half against the table.
    A hash join needs literal payload equality, so quotient handles fall
    back to linear scans; their spans are small by construction.
    """
    k = len(zs)
    if k == 0:
        return [] if G.is_identity(y) else None
    half = (k + 1) // 2
    if p**half > _ELEMENTARY_TABLE_LIMIT:
        raise ValueError(f"elementary solve would table {p}**{half} entries")
    zpow = []
    for z in zs:
        row = [G.identity()]
        for _ in range(p - 1):
            row.append(G.mul(row[-1], z))
        zpow.append(row)

    hashable = G.kernel_test is None
    entries: list[tuple] = [(G.identity(), ())]
    for i in range(half):
        entries = [
            (G.mul(e, zpow[i][d]), digs + (d,)) for e, digs in entries for d in range(p)
        ]
    table = {e: digs for e, digs in entries} if hashable else entries

    for tail in itertools.product(range(p), repeat=k - half):
        w = y
        for i, d in enumerate(tail):
            if d:
                w = G.mul(w, G.inv(zpow[half + i][d]))
        if hashable:
            head = table.get(w)
            if head is not None:
                return list(head) + list(tail)
        else:
            for e, digs in table:
                if G.eq(e, w):
                    return list(digs) + list(tail)
    return None


def _p_group_digits(
    G: GroupHandle, p: int, elements: Sequence, exponents: Sequence[int], g
) -> Optional[list[int]]:
    """Digits of ``g`` over an independent p-group basis, or None off the span.

    ``elements[i]`` must have order exactly ``p**exponents[i]`` with the
    cyclic factors meeting trivially. Digits are peeled from the top: the
    current residual, raised to one less than its exponent bound, lands in
    the span of the elementary pieces of the still-active coordinates, and
    one base-p digit per active coordinate comes out per stage.
    """
    k = len(elements)
    E = max(exponents, default=0)
    if E == 0:
        return [0] * k if G.is_identity(g) else None
    if not G.is_identity(G.power(g, p**E)):
        return None
    z = [
        G.power(x, p ** (e - 1)) if e >= 1 else G.identity()
        for x, e in zip(elements, exponents)
    ]
    coeffs = [0] * k
    residual = g
    for stage in range(E):
        level = E - stage
        y = G.power(residual, p ** (level - 1))
        active = [i for i in range(k) if exponents[i] >= level]
        digits = _elementary_digits(G, p, [z[i] for i in active], y)
        if digits is None:
            return None
        for i, d in zip(active, digits):
            if d:
                shift = d * p ** (exponents[i] - level)
                coeffs[i] += shift
                residual = G.mul(residual, G.inv(G.power(elements[i], shift)))
    return coeffs if G.is_identity(residual) else None


def edl_p_group(basis: Basis, g) -> Optional[list[int]]:
    """Exponent tuple of ``g`` over a p-group basis, or None off the span."""
    primes = {p for o in basis.orders for p, _ in o.factors}
    if len(primes) > 1:
        raise ValueError(f"basis orders involve several primes: {sorted(primes)}")
    if not primes:
        return [0] * len(basis.elements) if basis.handle.is_identity(g) else None
    p = primes.pop()
    exponents = [o.valuation(p) for o in basis.orders]
    return _p_group_digits(basis.handle, p, basis.elements, exponents, g)


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    if m1 == 1:
        return r2 % m2, m2
    if m2 == 1:
        return r1 % m1, m1
    step = (r2 - r1) * pow(m1, -1, m2) % m2
    return (r1 + m1 * step) % (m1 * m2), m1 * m2


def edl(basis: Basis, span_order: FactoredInteger, g) -> Optional[list[int]]:
    """Exponent vector of ``g`` over an independent abelian basis, or None.

    ``span_order`` is a factored multiple of every basis order. The problem
    splits prime by prime: a power map projects everything onto its p-part,
    the p-group solver reads the digits, and the residues recombine per
    coordinate by the Chinese Remainder Theorem. A final product comparison
    makes the answer sound even for ``g`` far outside the span.
    """
    G = basis.handle
    k = len(basis.elements)
    if k == 0:
        return [] if G.is_identity(g) else None
    M = span_order.value
    for o in basis.orders:
        if M % o.value:
            raise ValueError(f"basis order {o.value} does not divide {M}")
    residues = [0] * k
    done = [1] * k
    for p, alpha in span_order.factors:
        pa = p**alpha
        cofactor = M // pa
        proj = cofactor * pow(cofactor, -1, pa) % M if cofactor > 1 else 1
        exps = [o.valuation(p) for o in basis.orders]
        ghat = G.power(g, proj)
        if max(exps, default=0) == 0:
            if not G.is_identity(ghat):
                return None
            continue
        digits = _p_group_digits(
            G, p, [G.power(x, proj) for x in basis.elements], exps, ghat
        )
        if digits is None:
            return None
        for i in range(k):
            residues[i], done[i] = _crt_pair(residues[i], done[i], digits[i], p ** exps[i])
    combo = G.identity()
    for x, f in zip(basis.elements, residues):
        if f:
            combo = G.mul(combo, G.power(x, f))
    return residues if G.eq(combo, g) else None


def _p_exponent(G: GroupHandle, p: int, x, cap: int) -> int:
    """log_p of the order of a p-element, bounded by ``cap``."""
    e = 0
    y = x
    while not G.is_identity(y):
        y = G.power(y, p)
        e += 1
        if e > cap:
            raise ValueError(f"element order is not a power of {p} bounded by {p}**{cap}")
    return e


def _sift_prime(G: GroupHandle, p: int, items: list, cap: int) -> list:
    """Independent basis of the p-subgroup spanned by ``items``.

    Queue sifting: each element either already lies in the span, extends the
    basis by a new independent cyclic factor, or reveals a dependency that
    lets one basis element be replaced by a strictly smaller repair element,
    after which the popped element is retried. The total of basis exponents
    plus queue exponents drops or the queue shortens on every step, so the
    loop terminates.
    """
    basis: list[tuple] = []  # (element, program, exponent)
    queue = deque(items)
    while queue:
        t, wt = queue.popleft()
        if G.is_identity(t):
            continue
        e = _p_exponent(G, p, t, cap)
        digits = None
        for j in range(e + 1):
            digits = _p_group_digits(
                G,
                p,
                [b[0] for b in basis],
                [b[2] for b in basis],
                G.power(t, p**j),
            )
            if digits is not None:
                break
        if j == 0:
            continue
        nonzero = [(i, f) for i, f in enumerate(digits) if f]
        if all(f % p**j == 0 for _, f in nonzero):
            # the dependency starts at t's own depth: strip the span part
            # and keep an element of order exactly p**j
            fresh = t
            word_parts = [wt]
            for i, f in nonzero:
                fresh = G.mul(fresh, G.inv(G.power(basis[i][0], f // p**j)))
                word_parts.append(slib.power(basis[i][1], -(f // p**j)))
            basis.append((fresh, slib.product(*word_parts), j))
        else:
            # some digit has fewer factors of p than p**j: the offending
            # basis element is redundant given the rest and t, and a
            # strictly smaller repair element keeps the span intact
            beta = min(_vp(p, f) for _, f in nonzero)
            star = min(
                (i for i, f in nonzero if _vp(p, f) == beta),
                key=lambda i: (basis[i][2], i),
            )
            unit = digits[star] // p**beta
            repl = G.power(basis[star][0], unit)
            word_parts = [slib.power(basis[star][1], unit)]
            for i, f in nonzero:
                if i != star:
                    repl = G.mul(repl, G.power(basis[i][0], f // p**beta))
                    word_parts.append(slib.power(basis[i][1], f // p**beta))
            repl = G.mul(repl, G.inv(G.power(t, p ** (j - beta))))
            word_parts.append(slib.power(wt, -(p ** (j - beta))))
            del basis[star]
            queue.appendleft((t, wt))
            if not G.is_identity(repl):
                queue.appendleft((repl, slib.product(*word_parts)))
    return basis


def _vp(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def canonical_basis(G: GroupHandle, n: FactoredInteger) -> CanonicalBasis:
    """Basis of the abelian span of ``G``'s generators in invariant-factor form.

    ``n`` must be a factored multiple of every element order. Each prime is
    sifted separately; factors of equal rank are then glued across primes,
    largest with largest, which yields orders d1 | d2 | ... | ds read in
    ascending order.
    """
    per_prime: dict[int, list] = {}
    for p, alpha in n.factors:
        cop = n.value // p**alpha
        items = [
            (G.power(g, cop), slib.power(GeneratorRef(i), cop))
            for i, g in enumerate(G.generators)
        ]
        chain = _sift_prime(G, p, items, alpha)
        if chain:
            chain.sort(key=lambda b: -b[2])
            per_prime[p] = chain
    depth = max((len(c) for c in per_prime.values()), default=0)
    elements, slps, orders = [], [], []
    for rank in range(depth):
        elem = G.identity()
        parts = []
        factors = []
        for p in sorted(per_prime):
            chain = per_prime[p]
            if rank < len(chain):
                y, w, a = chain[rank]
                elem = G.mul(elem, y)
                parts.append(w)
                factors.append((p, a))
        elements.append(elem)
        slps.append(slib.product(*parts))
        orders.append(FactoredInteger.from_factors(factors))
    elements.reverse()
    slps.reverse()
    orders.reverse()
    return CanonicalBasis(
        handle=G, elements=tuple(elements), orders=tuple(orders), slps=tuple(slps)
    )


@dataclass(frozen=True)
class OneWayIso:
    """Forward-only isomorphism from a product of cyclic groups onto a span."""

    basis: Basis

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(o.value for o in self.basis.orders)

    def forward(self, vector: Sequence[int]):
        G = self.basis.handle
        if len(vector) != len(self.basis.elements):
            raise ValueError(f"expected {len(self.basis.elements)} coordinates")
        out = G.identity()
        for x, v, o in zip(self.basis.elements, vector, self.basis.orders):
            v %= o.value
            if v:
                out = G.mul(out, G.power(x, v))
        return out


@dataclass(frozen=True)
class TwoWayIso(OneWayIso):
    """Adds the inverse direction, computed by the basis discrete log."""

    exponent_multiple: FactoredInteger

    def inverse(self, g) -> Optional[list[int]]:
        return edl(self.basis, self.exponent_multiple, g)


def abel_recog_2(G: GroupHandle, n: Optional[FactoredInteger] = None) -> TwoWayIso:
    """Two-way isomorphism between the span of ``G``'s generators and the
    matching product of cyclic groups.

    Assumes the span is abelian; a non-abelian input does not crash but
    surfaces as discrete-log inconsistencies (inverse returning None for
    genuine span members), which callers treat as a refusal.
    """
    if n is None:
        n = G.known_order
    if n is None:
        raise ValueError("abelian recognition needs a factored order multiple")
    basis = canonical_basis(G, n)
    return TwoWayIso(basis=basis, exponent_multiple=n)


def iso_abelian(
    G: GroupHandle,
    H: GroupHandle,
    n,
    threshold_override=None,
    strict: bool = False,
) -> bool:
    """Isomorphism test for abelian groups of the same stated order.

    Only the subgroup of points killed by the big part of ``n`` needs
    structure: for admissible orders the big part is square-free, so both
    big Hall subgroups are cyclic and isomorphic for free, and the groups
    are isomorphic exactly when the small Hall subgroups share their
    invariant-factor chain. ``strict`` additionally checks that all
    generator pairs commute instead of trusting the caller.
    """
    n = as_factored(n)
    c = threshold(n.value) if threshold_override is None else float(threshold_override)
    small, big = split_by_prime_bound(n, c)
    if any(e > 1 for _, e in big.factors):
        raise ValueError(
            f"order {n.value} has a repeated prime above the threshold {c};"
            " the abelian comparison is not applicable"
        )
    if strict:
        for X in (G, H):
            gens = X.generators
            for i in range(len(gens)):
                for j in range(i + 1, len(gens)):
                    if not X.is_identity(X.commutator(gens[i], gens[j])):
                        raise ValueError("a generator pair fails to commute")
    chains = []
    for X in (G, H):
        gens = [X.power(g, big.value) for g in X.generators]
        slps = [slib.power(GeneratorRef(i), big.value) for i in range(len(gens))]
        A = subgroup(X, gens, slps)
        basis = canonical_basis(A, small)
        if basis.span_order.value != small.value:
            raise ValueError(
                f"a group does not have the stated order {n.value}:"
                f" its small Hall subgroup spans {basis.span_order.value},"
                f" expected {small.value}"
            )
        chains.append(basis.invariant_factors)
    return chains[0] == chains[1]


def default_trial_budget(b: int) -> int:
    """Trial count that keeps the failure chance negligible for cyclic searches."""
    if b <= 2:
        return 64
    return 64 * max(1, ceil(log(log(b)) + 1))


def cyclic_generator_random(
    B: GroupHandle,
    b: FactoredInteger,
    rng: Random,
    max_tries: Optional[int] = None,
):
    """Element of order exactly ``b`` in a group of exponent dividing ``b``.

    Las Vegas: random draws are checked against every maximal divisor, so a
    returned element is always correct; for cyclic B of order b the success
    chance per draw is phi(b)/b and the default budget makes failure
    overwhelmingly unlikely. Raises ``LasVegasError`` when the budget runs
    out, which is also the honest answer when B is secretly not cyclic.
    """
    if b.value == 1:
        return B.identity()
    if max_tries is None:
        max_tries = default_trial_budget(b.value)
    sampler = ElementSampler(B, rng)
    for _ in range(max_tries):
        z, _ = sampler.draw()
        if not B.is_identity(B.power(z, b.value)):
            raise LasVegasError(
                f"an element violates the stated exponent {b.value};"
                " the subgroup cannot be cyclic of that order"
            )
        if all(not B.is_identity(B.power(z, b.value // q)) for q in b.primes()):
            return z
    raise LasVegasError(
        f"no element of order {b.value} found in {max_tries} draws;"
        " the subgroup is most likely not cyclic of that order"
    )


def membership_from_iso(iso: TwoWayIso) -> Callable:
    """Membership test for the span underlying a two-way isomorphism.

    Returns a one-argument callable mapping a group element to a program
    over the handle's generators evaluating to it, or None for non-members.
    """

    def member(g) -> Optional[SLP]:
        vec = iso.inverse(g)
        if vec is None:
            return None
        return slib.product(
            *(slib.power(iso.basis.slps[i], v) for i, v in enumerate(vec) if v)
        )

    return member


@dataclass(frozen=True)
class ConstructivePresentation:
    """Finite presentation with concrete images and a rewriting map.

    ``relators`` are programs over abstract symbols 0..num_symbols-1;
    ``images`` realize the symbols in the group (``image_slps`` over the
    ambient handle's generators); ``rewrite`` sends a group element to a
    symbol word evaluating to it up to the handle's congruence, and to
    None outside the span.
    """

    num_symbols: int
    relators: tuple[SLP, ...]
    images: tuple
    image_slps: tuple[SLP, ...]
    rewrite: Callable


def presentation_from_iso(iso: TwoWayIso) -> ConstructivePresentation:
    """Power-and-commutator presentation read off a two-way isomorphism."""
    s = len(iso.moduli)
    relators = [slib.power(GeneratorRef(i), d) for i, d in enumerate(iso.moduli)]
    relators += [
        slib.commutator_word(GeneratorRef(i), GeneratorRef(j))
        for i in range(s)
        for j in range(i + 1, s)
    ]

    def rewrite(g) -> Optional[SLP]:
        vec = iso.inverse(g)
        if vec is None:
            return None
        return slib.product(
            *(slib.power(GeneratorRef(i), v) for i, v in enumerate(vec) if v)
        )

    return ConstructivePresentation(
        num_symbols=s,
        relators=tuple(relators),
        images=iso.basis.elements,
        image_slps=iso.basis.slps,
        rewrite=rewrite,
    )
