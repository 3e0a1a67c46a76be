"""Straight-line programs over an indexed generator tuple.

A program is an immutable expression tree whose leaves name generators by
position, so the same program can be replayed against any concrete
generator tuple. Power nodes evaluate by repeated squaring, which keeps
evaluation polynomial in the bit length of the exponent. Trees are often
shared (substitution reuses subtrees), so evaluation and rewriting memoize
on node identity and run iteratively to stay clear of recursion limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class SLP:
    """Common base for program nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Identity(SLP):
    pass


@dataclass(frozen=True, slots=True)
class GeneratorRef(SLP):
    index: int


@dataclass(frozen=True, slots=True)
class Product(SLP):
    left: SLP
    right: SLP


@dataclass(frozen=True, slots=True)
class Inverse(SLP):
    child: SLP


@dataclass(frozen=True, slots=True)
class Power(SLP):
    child: SLP
    exponent: int


def product(*factors: SLP) -> SLP:
    """Left fold of the non-trivial factors; empty product is Identity."""
    result: SLP | None = None
    for f in factors:
        if isinstance(f, Identity):
            continue
        result = f if result is None else Product(result, f)
    return Identity() if result is None else result


def inverse(node: SLP) -> SLP:
    if isinstance(node, Identity):
        return node
    if isinstance(node, Inverse):
        return node.child
    return Inverse(node)


def power(node: SLP, exponent: int) -> SLP:
    if exponent == 0 or isinstance(node, Identity):
        return Identity()
    if exponent == 1:
        return node
    return Power(node, exponent)


def commutator_word(a: SLP, b: SLP) -> SLP:
    return product(inverse(a), inverse(b), a, b)


def pow_element(x, exponent: int, ops):
    """Repeated squaring in the backend; negative exponents invert first."""
    if exponent < 0:
        x = ops.inv(x)
        exponent = -exponent
    result = ops.identity()
    base = x
    while exponent:
        if exponent & 1:
            result = ops.mul(result, base)
        exponent >>= 1
        if exponent:
            base = ops.mul(base, base)
    return result


def evaluate(program: SLP, generators: Sequence, ops):
    """Fold a program into a concrete element.

    ``ops`` needs ``identity()``, ``mul(x, y)`` and ``inv(x)``; any backend
    satisfies this. Shared subtrees are computed once.
    """
    memo: dict[int, object] = {}
    stack = [program]
    while stack:
        node = stack[-1]
        key = id(node)
        if key in memo:
            stack.pop()
            continue
        if isinstance(node, Identity):
            memo[key] = ops.identity()
        elif isinstance(node, GeneratorRef):
            memo[key] = generators[node.index]
        elif isinstance(node, Inverse):
            ck = id(node.child)
            if ck not in memo:
                stack.append(node.child)
                continue
            memo[key] = ops.inv(memo[ck])
        elif isinstance(node, Power):
            ck = id(node.child)
            if ck not in memo:
                stack.append(node.child)
                continue
            memo[key] = pow_element(memo[ck], node.exponent, ops)
        elif isinstance(node, Product):
            lk, rk = id(node.left), id(node.right)
            missing = False
            if rk not in memo:
                stack.append(node.right)
                missing = True
            if lk not in memo:
                stack.append(node.left)
                missing = True
            if missing:
                continue
            memo[key] = ops.mul(memo[lk], memo[rk])
        else:
            raise TypeError(f"not an SLP node: {node!r}")
        stack.pop()
    return memo[id(program)]


def substitute(program: SLP, replacements: Sequence[SLP]) -> SLP:
    """Rewrite generator references through ``replacements``.

    Used to express an element of a derived subgroup chain in terms of the
    original generators: a program over a subgroup's generators composed
    with the subgroup generators' own programs yields a program over the
    root tuple. Unchanged subtrees are reused.
    """
    memo: dict[int, SLP] = {}
    stack = [program]
    while stack:
        node = stack[-1]
        key = id(node)
        if key in memo:
            stack.pop()
            continue
        if isinstance(node, Identity):
            memo[key] = node
        elif isinstance(node, GeneratorRef):
            memo[key] = replacements[node.index]
        elif isinstance(node, Inverse):
            ck = id(node.child)
            if ck not in memo:
                stack.append(node.child)
                continue
            new_child = memo[ck]
            memo[key] = node if new_child is node.child else Inverse(new_child)
        elif isinstance(node, Power):
            ck = id(node.child)
            if ck not in memo:
                stack.append(node.child)
                continue
            new_child = memo[ck]
            memo[key] = node if new_child is node.child else Power(new_child, node.exponent)
        elif isinstance(node, Product):
            lk, rk = id(node.left), id(node.right)
            missing = False
            if rk not in memo:
                stack.append(node.right)
                missing = True
            if lk not in memo:
                stack.append(node.left)
                missing = True
            if missing:
                continue
            nl, nr = memo[lk], memo[rk]
            memo[key] = node if (nl is node.left and nr is node.right) else Product(nl, nr)
        else:
            raise TypeError(f"not an SLP node: {node!r}")
        stack.pop()
    return memo[id(program)]


def node_count(program: SLP) -> int:
    """Number of distinct nodes (a DAG size, not the unfolded word length)."""
    seen: set[int] = set()
    stack = [program]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Product):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, (Inverse, Power)):
            stack.append(node.child)
    return len(seen)
