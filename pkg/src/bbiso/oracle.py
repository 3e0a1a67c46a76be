"""Exhaustive ground-truth checks for small groups.

Everything here works on full multiplication tables and ignores all
structure theory, so results are trustworthy references for the randomized
and algebraic paths elsewhere in the package. Costs are quadratic to
exponential in the group order; the default size cap keeps that honest.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blackbox import GroupHandle, enumerate_elements

DEFAULT_TABLE_BOUND = 200


@dataclass(frozen=True)
class CayleyTable:
    """Multiplication table over elements in discovery order; index 0 is the identity."""

    elements: tuple
    table: tuple[tuple[int, ...], ...]
    generator_indices: tuple[int, ...]
    element_orders: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_commutative(self) -> bool:
        m = self.order
        return all(
            self.table[i][j] == self.table[j][i] for i in range(m) for j in range(i + 1, m)
        )


def enumerate_table(G: GroupHandle, bound: int = DEFAULT_TABLE_BOUND) -> CayleyTable:
    """Span ``G`` and fill the complete multiplication table.

    Works through the handle's equality, so a quotient handle yields the
    table of the quotient group on coset representatives.
    """
    elements = enumerate_elements(G, bound)
    m = len(elements)
    plain = G.kernel_test is None
    if plain:
        index = {x: i for i, x in enumerate(elements)}

        def index_of(x):
            return index[x]

    else:

        def index_of(x):
            for i, e in enumerate(elements):
                if G.eq(e, x):
                    return i
            raise RuntimeError("product escaped the enumerated span")

    table = tuple(
        tuple(index_of(G.mul(x, y)) for y in elements) for x in elements
    )
    generator_indices = tuple(index_of(g) for g in G.generators)
    element_orders = []
    for i in range(m):
        k = table[0][i]
        n = 1
        while k != 0:
            k = table[k][i]
            n += 1
        element_orders.append(n)
    return CayleyTable(
        elements=tuple(elements),
        table=table,
        generator_indices=generator_indices,
        element_orders=tuple(element_orders),
    )


def exhaustive_membership(T: CayleyTable, indices) -> frozenset[int]:
    """Index set of the subgroup generated by the given element indices."""
    gens = tuple(indices)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens:
                j = T.table[i][g]
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return frozenset(seen)


def minimal_generating_tuple(T: CayleyTable) -> tuple[int, ...]:
    """Lexicographically least generating tuple of least size.

    Depth-first over index tuples, pruning branches that cannot reach the
    full order even if every remaining slot contributed the largest element
    order available.
    """
    m = T.order
    if m == 1:
        return ()
    max_order = max(T.element_orders)

    def extend(prefix: tuple[int, ...], span: frozenset[int], slots: int):
        if len(span) == m:
            return prefix
        if slots == 0 or len(span) * max_order**slots < m:
            return None
        start = prefix[-1] + 1 if prefix else 1
        for c in range(start, m):
            if c in span:
                continue
            found = extend(prefix + (c,), exhaustive_membership(T, prefix + (c,)), slots - 1)
            if found is not None:
                return found
        return None

    for size in range(1, m + 1):
        found = extend((), frozenset({0}), size)
        if found is not None:
            return found
    raise RuntimeError("a finite table always has a generating tuple")


def _image_map(
    T1: CayleyTable, gens: tuple[int, ...], T2: CayleyTable, targets: tuple[int, ...]
):
    """Homomorphic image assignment on the span of ``gens``, or None.

    Breadth-first: every (element, generator) product is checked on both
    sides, which pins the map down on the whole span and verifies
    multiplicativity there; a used-image set enforces injectivity.
    """
    img = {0: 0}
    used = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g, t in zip(gens, targets):
                j = T1.table[i][g]
                jt = T2.table[img[i]][t]
                known = img.get(j)
                if known is not None:
                    if known != jt:
                        return None
                elif jt in used:
                    return None
                else:
                    img[j] = jt
                    used.add(jt)
                    nxt.append(j)
        frontier = nxt
    return img


def _extends_to_isomorphism(
    T1: CayleyTable, gens: tuple[int, ...], T2: CayleyTable, targets: tuple[int, ...]
) -> bool:
    img = _image_map(T1, gens, T2, targets)
    return img is not None and len(img) == T1.order


def brute_force_iso(T1: CayleyTable, T2: CayleyTable) -> bool:
    """Isomorphism test by exhausting generator images.

    The element-order multiset is compared first; when it differs the groups
    cannot be isomorphic, and for abelian groups it is already decisive, so
    the expensive search only runs on order-profile twins.  Target tuples are
    grown one slot at a time and a prefix is abandoned as soon as its partial
    image map breaks injectivity or multiplicativity, which is what keeps
    many-generator groups (say, elementary abelian ones) searchable.  Slots
    advance in index order, so the first accepted tuple, and hence the
    verdict, is independent of how the search is chunked.
    """
    if T1.order != T2.order:
        return False
    if sorted(T1.element_orders) != sorted(T2.element_orders):
        return False
    if T1.order == 1:
        return True
    gens = minimal_generating_tuple(T1)
    candidate_lists = [
        [j for j in range(T2.order) if T2.element_orders[j] == T1.element_orders[g]]
        for g in gens
    ]

    def extend(level: int, chosen: tuple[int, ...]) -> bool:
        if level == len(gens):
            return True
        for t in candidate_lists[level]:
            trial = chosen + (t,)
            if _image_map(T1, gens[: level + 1], T2, trial) is None:
                continue
            if extend(level + 1, trial):
                return True
        return False

    return extend(0, ())
