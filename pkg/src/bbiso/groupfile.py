"""Strict JSON input format for generator-presented groups.

Three kinds are accepted. Every integer is a plain decimal JSON number and
``generators`` is always a non-empty list:

    {"kind": "zmod", "moduli": [m1, ...], "generators": [[..], ..]}
    {"kind": "perm", "degree": m, "generators": [[0-based images], ..]}
    {"kind": "matmod", "prime": p, "dim": d, "generators": [[[row], ..], ..]}

Each form optionally carries ``order`` (the group order) and
``order_factors`` (its factorization as ``[[p, e], ...]``). Unknown fields
are rejected rather than ignored, so a typo fails loudly instead of
silently changing the group.
"""

from __future__ import annotations

import json
from typing import Optional

from .blackbox import GroupHandle, MatModBackend, PermBackend, ZmodBackend
from .orders import FactoredInteger, _is_prime, factorize


class GroupFileError(ValueError):
    """The text is not a well-formed group description."""


_COMMON_KEYS = {"kind", "generators", "order", "order_factors"}
_KEYS_BY_KIND = {
    "zmod": _COMMON_KEYS | {"moduli"},
    "perm": _COMMON_KEYS | {"degree"},
    "matmod": _COMMON_KEYS | {"prime", "dim"},
}


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GroupFileError(f"{what} must be an integer, got {value!r}")
    return value


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list):
        raise GroupFileError(f"{what} must be a list")
    return [_int(v, what) for v in value]


def _parse_known_order(data: dict) -> Optional[FactoredInteger]:
    order = data.get("order")
    raw_factors = data.get("order_factors")
    if order is not None:
        order = _int(order, "order")
        if order < 1:
            raise GroupFileError("order must be positive")
    if raw_factors is None:
        return factorize(order) if order is not None else None
    if not isinstance(raw_factors, list):
        raise GroupFileError("order_factors must be a list of [prime, exponent] pairs")
    pairs = []
    for entry in raw_factors:
        if not isinstance(entry, list) or len(entry) != 2:
            raise GroupFileError("order_factors entries must be [prime, exponent] pairs")
        p = _int(entry[0], "order_factors prime")
        e = _int(entry[1], "order_factors exponent")
        if e < 1:
            raise GroupFileError(f"exponent of {p} must be at least 1")
        if p < 2 or not _is_prime(p):
            raise GroupFileError(f"{p} is not prime")
        pairs.append((p, e))
    if len({p for p, _ in pairs}) != len(pairs):
        raise GroupFileError("order_factors lists a prime twice")
    known = FactoredInteger.from_factors(pairs)
    if order is not None and known.value != order:
        raise GroupFileError(
            f"order {order} does not match the product of order_factors {known.value}"
        )
    return known


def parse_group(text: str) -> GroupHandle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"invalid JSON: {exc}") from None
    return parse_group_dict(data)


def parse_group_dict(data) -> GroupHandle:
    if not isinstance(data, dict):
        raise GroupFileError("a group file must be a JSON object")
    kind = data.get("kind")
    if kind not in _KEYS_BY_KIND:
        raise GroupFileError(f"unknown kind {kind!r}; expected zmod, perm or matmod")
    extra = set(data) - _KEYS_BY_KIND[kind]
    if extra:
        raise GroupFileError(f"unknown fields for kind {kind}: {sorted(extra)}")
    raw_gens = data.get("generators")
    if not isinstance(raw_gens, list) or not raw_gens:
        raise GroupFileError("generators must be a non-empty list")
    known_order = _parse_known_order(data)

    if kind == "zmod":
        if "moduli" not in data:
            raise GroupFileError("zmod needs moduli")
        moduli = _int_list(data["moduli"], "moduli")
        if not moduli or any(m < 1 for m in moduli):
            raise GroupFileError("moduli must be positive integers")
        backend = ZmodBackend(moduli)
        gens = []
        for g in raw_gens:
            vec = tuple(_int_list(g, "generator entry"))
            if not backend.validate(vec):
                raise GroupFileError(
                    f"generator {g} is not a reduced tuple for moduli {moduli}"
                )
            gens.append(vec)
    elif kind == "perm":
        if "degree" not in data:
            raise GroupFileError("perm needs degree")
        degree = _int(data["degree"], "degree")
        if degree < 1:
            raise GroupFileError("degree must be positive")
        backend = PermBackend(degree)
        gens = []
        for g in raw_gens:
            images = tuple(_int_list(g, "permutation image"))
            if not backend.validate(images):
                raise GroupFileError(
                    f"generator {g} is not a permutation of 0..{degree - 1}"
                )
            gens.append(images)
    else:
        if "prime" not in data or "dim" not in data:
            raise GroupFileError("matmod needs prime and dim")
        prime = _int(data["prime"], "prime")
        dim = _int(data["dim"], "dim")
        if prime < 2 or not _is_prime(prime):
            raise GroupFileError(f"{prime} is not prime")
        if dim < 1:
            raise GroupFileError("dim must be positive")
        backend = MatModBackend(dim, prime)
        gens = []
        for g in raw_gens:
            if not isinstance(g, list):
                raise GroupFileError("matrix generators must be lists of rows")
            mat = tuple(tuple(_int_list(row, "matrix entry")) for row in g)
            if not backend.validate(mat):
                raise GroupFileError(
                    f"generator is not a {dim}x{dim} matrix reduced mod {prime}"
                )
            try:
                backend.inv(mat)
            except ValueError:
                raise GroupFileError("matrix generator is singular") from None
            gens.append(mat)

    return GroupHandle.root(backend, gens, known_order=known_order)


def load_group(path: str) -> GroupHandle:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from None
    return parse_group(text)


def group_to_dict(G: GroupHandle) -> dict:
    """Inverse of parsing, for handles whose backend has a file form."""
    backend = G.backend
    if isinstance(backend, ZmodBackend):
        if backend.action is not None:
            raise GroupFileError("twisted tuple groups have no file form")
        data = {
            "kind": "zmod",
            "moduli": list(backend.moduli),
            "generators": [list(g) for g in G.generators],
        }
    elif isinstance(backend, PermBackend):
        data = {
            "kind": "perm",
            "degree": backend.degree,
            "generators": [list(g) for g in G.generators],
        }
    elif isinstance(backend, MatModBackend):
        data = {
            "kind": "matmod",
            "prime": backend.prime,
            "dim": backend.dim,
            "generators": [[list(row) for row in g] for g in G.generators],
        }
    else:
        raise GroupFileError(f"no file form for backend {type(backend).__name__}")
    if G.known_order is not None:
        data["order"] = G.known_order.value
        data["order_factors"] = [list(pair) for pair in G.known_order.factors]
    return data


def dump_group(G: GroupHandle) -> str:
    return json.dumps(group_to_dict(G), indent=2) + "\n"
