"""Black-box group handles and the generic operations on them.

A backend supplies the concrete arithmetic (tuples mod moduli, permutations,
or matrices over a prime field); a ``GroupHandle`` bundles a backend with a
generator tuple, straight-line programs expressing those generators over the
root tuple, an optional factored multiple of every element order, and an
optional congruence that turns the handle into a quotient by a recognizable
normal subgroup. All structural algorithms in this package speak only to
this interface.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from random import Random
from typing import Callable, Optional, Sequence

from . import slp as slib
from .orders import FactoredInteger, FactorizationError, as_factored
from .slp import SLP, GeneratorRef, Identity, Power

DEFAULT_ENUMERATION_BOUND = 10**6


class LasVegasError(RuntimeError):
    """A randomized search exhausted its trial budget."""


class EnumerationBoundError(RuntimeError):
    """A breadth-first span exceeded the allowed element count."""


class ZmodBackend:
    """Tuples added componentwise mod ``moduli``.

    With ``action`` set (two moduli only) the first coordinate twists the
    second: ``(u1, k1) * (u2, k2) = (u1 + u2, k1 * action**u2 + k2)``, so the
    generator ``(1, 0)`` conjugates ``(0, 1)`` to its ``action``-th power.
    This realizes split extensions of one cyclic group by another without
    leaving tuple arithmetic.
    """

    def __init__(self, moduli: Sequence[int], action: Optional[int] = None):
        moduli = tuple(int(m) for m in moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise ValueError("moduli must be positive integers")
        self.moduli = moduli
        self.action = None
        if action is not None:
            action = int(action) % moduli[1] if len(moduli) == 2 else int(action)
            if len(moduli) != 2:
                raise ValueError("a twisting action needs exactly two moduli")
            a, b = moduli
            from math import gcd

            if gcd(action, b) != 1:
                raise ValueError("action must be a unit for the second modulus")
            if pow(action, a, b) != 1:
                raise ValueError("action order must divide the first modulus")
            self.action = action

    def identity(self):
        return (0,) * len(self.moduli)

    def mul(self, x, y):
        if self.action is None:
            return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))
        a, b = self.moduli
        u1, k1 = x
        u2, k2 = y
        return ((u1 + u2) % a, (k1 * pow(self.action, u2, b) + k2) % b)

    def inv(self, x):
        if self.action is None:
            return tuple((-a) % m for a, m in zip(x, self.moduli))
        a, b = self.moduli
        u, k = x
        nu = (-u) % a
        return (nu, (-k * pow(self.action, nu, b)) % b)

    def eq(self, x, y):
        return x == y

    def validate(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.moduli)
            and all(isinstance(c, int) and 0 <= c < m for c, m in zip(x, self.moduli))
        )

    def encode(self, x) -> bytes:
        return repr(x).encode()


class PermBackend:
    """Permutations of ``range(degree)`` stored as image tuples.

    Products compose left to right: ``(x * y)[i] = y[x[i]]``.
    """

    def __init__(self, degree: int):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, x, y):
        return tuple(y[i] for i in x)

    def inv(self, x):
        out = [0] * self.degree
        for i, j in enumerate(x):
            out[j] = i
        return tuple(out)

    def eq(self, x, y):
        return x == y

    def validate(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.degree
            and all(isinstance(i, int) for i in x)
            and sorted(x) == list(range(self.degree))
        )

    def encode(self, x) -> bytes:
        return repr(x).encode()


class MatModBackend:
    """Square matrices over a prime field, stored as tuples of row tuples."""

    def __init__(self, dim: int, prime: int):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if prime < 2:
            raise ValueError("modulus must be a prime, at least 2")
        self.dim = dim
        self.prime = prime

    def identity(self):
        n = self.dim
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def mul(self, x, y):
        n, p = self.dim, self.prime
        cols = tuple(zip(*y))
        return tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in x
        )

    def inv(self, x):
        n, p = self.dim, self.prime
        aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(x)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] % p), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            scale = pow(aug[col][col], -1, p)
            aug[col] = [v * scale % p for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [(v - factor * w) % p for v, w in zip(aug[r], aug[col])]
        return tuple(tuple(row[n:]) for row in aug)

    def eq(self, x, y):
        return x == y

    def validate(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.dim
            and all(
                isinstance(row, tuple)
                and len(row) == self.dim
                and all(isinstance(v, int) and 0 <= v < self.prime for v in row)
                for row in x
            )
        )

    def encode(self, x) -> bytes:
        return repr(x).encode()


@dataclass(frozen=True)
class GroupHandle:
    """A group given by generators over a backend.

    ``gen_slps[i]`` expresses ``generators[i]`` over the root generator
    tuple, so witnesses produced deep in a subgroup chain remain replayable
    against the original input. ``known_order``, when present, is a factored
    multiple of every element order. ``kernel_test`` turns the handle into
    the quotient by a recognizable normal subgroup: elements compare equal
    exactly when they differ by a kernel element.
    """

    backend: object
    generators: tuple
    gen_slps: tuple[SLP, ...]
    known_order: Optional[FactoredInteger] = None
    kernel_test: Optional[Callable] = None

    @classmethod
    def root(
        cls,
        backend,
        generators: Sequence,
        known_order: Optional[FactoredInteger] = None,
    ) -> "GroupHandle":
        gens = tuple(generators)
        if not gens:
            raise ValueError("a handle needs at least one generator")
        return cls(
            backend=backend,
            generators=gens,
            gen_slps=tuple(GeneratorRef(i) for i in range(len(gens))),
            known_order=as_factored(known_order) if known_order is not None else None,
        )

    def identity(self):
        return self.backend.identity()

    def mul(self, x, y):
        return self.backend.mul(x, y)

    def inv(self, x):
        return self.backend.inv(x)

    def power(self, x, k: int):
        return slib.pow_element(x, k, self.backend)

    def conjugate(self, x, g):
        """x conjugated by g, i.e. g^-1 x g."""
        return self.mul(self.backend.inv(g), self.mul(x, g))

    def commutator(self, x, y):
        return self.mul(self.backend.inv(self.mul(y, x)), self.mul(x, y))

    def eq(self, x, y) -> bool:
        if self.kernel_test is not None:
            return bool(self.kernel_test(self.mul(self.backend.inv(x), y)))
        return self.backend.eq(x, y)

    def is_identity(self, x) -> bool:
        if self.kernel_test is not None:
            return bool(self.kernel_test(x))
        return self.backend.eq(x, self.identity())

    def evaluate(self, program: SLP):
        return slib.evaluate(program, self.generators, self.backend)

    def element_order(self, x) -> FactoredInteger:
        """Exact order of ``x``, found by descending from ``known_order``.

        For each prime power p^e in the known multiple, strip p's as long as
        the power stays trivial. The cost is polynomial in the bit length of
        the known order.
        """
        if self.known_order is None:
            raise FactorizationError("element_order needs a factored order multiple")
        order_factors = []
        for p, e in self.known_order.factors:
            reduced = self.power(x, self.known_order.value // p**e)
            k = 0
            while not self.is_identity(reduced):
                reduced = self.power(reduced, p)
                k += 1
            if k:
                order_factors.append((p, k))
        return FactoredInteger.from_factors(order_factors)


def random_element(G: GroupHandle, rng: Random, steps: int = 50):
    """Pseudo-random element with a program expressing it over ``G``'s generators.

    Product replacement on a slot table seeded with the generators: each step
    multiplies one slot by another slot or its inverse, tracking the same
    operation on programs. A fresh table per call keeps results reproducible
    from the rng alone.
    """
    gens = G.generators
    size = max(10, len(gens))
    slots = [gens[i % len(gens)] for i in range(size)]
    words: list[SLP] = [GeneratorRef(i % len(gens)) for i in range(size)]
    for _ in range(max(steps, 50)):
        i = rng.randrange(size)
        j = rng.randrange(size - 1)
        if j >= i:
            j += 1
        if rng.getrandbits(1):
            slots[i] = G.mul(slots[i], slots[j])
            words[i] = slib.product(words[i], words[j])
        else:
            slots[i] = G.mul(slots[i], G.inv(slots[j]))
            words[i] = slib.product(words[i], slib.inverse(words[j]))
    i = rng.randrange(size)
    return slots[i], words[i]


class ElementSampler:
    """Product-replacement state reused across many draws.

    Cheaper than ``random_element`` when a loop needs a stream of elements;
    the table persists, so consecutive draws are correlated the way a random
    walk is, which is fine for Las Vegas searches that verify every candidate.
    """

    def __init__(self, G: GroupHandle, rng: Random, burn_in: int = 50):
        self.G = G
        self.rng = rng
        gens = G.generators
        size = max(10, len(gens))
        self.slots = [gens[i % len(gens)] for i in range(size)]
        self.words: list[SLP] = [GeneratorRef(i % len(gens)) for i in range(size)]
        for _ in range(burn_in):
            self._step()

    def _step(self) -> int:
        size = len(self.slots)
        i = self.rng.randrange(size)
        j = self.rng.randrange(size - 1)
        if j >= i:
            j += 1
        if self.rng.getrandbits(1):
            self.slots[i] = self.G.mul(self.slots[i], self.slots[j])
            self.words[i] = slib.product(self.words[i], self.words[j])
        else:
            self.slots[i] = self.G.mul(self.slots[i], self.G.inv(self.slots[j]))
            self.words[i] = slib.product(self.words[i], slib.inverse(self.words[j]))
        return i

    def draw(self):
        i = self._step()
        return self.slots[i], self.words[i]


def _span_contains(G: GroupHandle, span: list, x) -> bool:
    if G.kernel_test is None:
        return x in span if isinstance(span, set) else any(G.backend.eq(s, x) for s in span)
    return any(G.eq(s, x) for s in span)


def enumerate_elements(G: GroupHandle, bound: int = DEFAULT_ENUMERATION_BOUND) -> list:
    """All elements of the span, breadth-first from the identity.

    Distinctness is up to the handle's equality, so a quotient handle
    enumerates coset representatives. Raises ``EnumerationBoundError`` when
    the span exceeds ``bound``.
    """
    identity = G.identity()
    hashable = G.kernel_test is None
    elements = [identity]
    seen = {identity} if hashable else None
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in G.generators:
                y = G.mul(x, g)
                if hashable:
                    if y in seen:
                        continue
                    seen.add(y)
                else:
                    if any(G.eq(e, y) for e in elements):
                        continue
                elements.append(y)
                if len(elements) > bound:
                    raise EnumerationBoundError(
                        f"span exceeds {bound} elements; raise the bound to enumerate"
                    )
                next_frontier.append(y)
        frontier = next_frontier
    return elements


def _closure_with_slps(
    G: GroupHandle, seeds: Sequence, seed_slps: Sequence[SLP]
) -> tuple[list, list[SLP]]:
    """Normal closure of the seeds under conjugation by ``G``'s generators.

    Grows the generating set to a fixed point: every conjugate of a current
    closure generator by a group generator must land in the span of the
    current set. Span membership is checked by breadth-first enumeration,
    so this is for small subgroups only.
    """
    gens = list(seeds)
    gen_words = list(seed_slps)
    gen_inv_pairs = list(zip(G.generators, G.gen_slps))
    while True:
        sub = GroupHandle(
            backend=G.backend,
            generators=tuple(gens) if gens else (G.identity(),),
            gen_slps=tuple(gen_words) if gen_words else (Identity(),),
            known_order=G.known_order,
            kernel_test=G.kernel_test,
        )
        span = enumerate_elements(sub)
        grew = False
        for x, wx in list(zip(gens, gen_words)):
            for g, wg in gen_inv_pairs:
                y = G.conjugate(x, g)
                if not _span_contains(G, span, y):
                    gens.append(y)
                    gen_words.append(slib.product(slib.inverse(wg), wx, wg))
                    grew = True
        if not grew:
            return gens, gen_words


def normal_closure(G: GroupHandle, seeds: Sequence) -> list:
    """Elements generating the smallest normal subgroup containing ``seeds``."""
    placeholder = [Identity() for _ in seeds]
    gens, _ = _closure_with_slps(G, list(seeds), placeholder)
    return gens


def derived_subgroup(G: GroupHandle) -> GroupHandle:
    """The commutator subgroup as a handle over the same root tuple.

    Deterministic: seeds are the pairwise generator commutators, closed
    under conjugation. Witness programs survive through ``gen_slps``.
    """
    seeds = []
    seed_words: list[SLP] = []
    gens = G.generators
    words = G.gen_slps
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = G.commutator(gens[i], gens[j])
            if G.is_identity(c):
                continue
            seeds.append(c)
            seed_words.append(slib.commutator_word(words[i], words[j]))
    if not seeds:
        return GroupHandle(
            backend=G.backend,
            generators=(G.identity(),),
            gen_slps=(Identity(),),
            known_order=G.known_order,
            kernel_test=G.kernel_test,
        )
    closure_gens, closure_words = _closure_with_slps(G, seeds, seed_words)
    return GroupHandle(
        backend=G.backend,
        generators=tuple(closure_gens),
        gen_slps=tuple(closure_words),
        known_order=G.known_order,
        kernel_test=G.kernel_test,
    )


def quotient(G: GroupHandle, predicate: Callable) -> GroupHandle:
    """The same generators, compared modulo the normal subgroup ``predicate`` tests."""
    return dataclasses.replace(G, kernel_test=predicate)


def subgroup(G: GroupHandle, elements: Sequence, slps: Sequence[SLP]) -> GroupHandle:
    """Handle on a subgroup, with programs given over ``G``'s generators."""
    elements = tuple(elements)
    slps = tuple(slps)
    if len(elements) != len(slps):
        raise ValueError("each subgroup generator needs a program")
    if not elements:
        elements = (G.identity(),)
        slps = (Identity(),)
    root_slps = tuple(slib.substitute(w, G.gen_slps) for w in slps)
    return GroupHandle(
        backend=G.backend,
        generators=elements,
        gen_slps=root_slps,
        known_order=G.known_order,
        kernel_test=G.kernel_test,
    )
