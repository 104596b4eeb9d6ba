"""Coefficient rings and sparse group-ring arithmetic ``R[G]``.

Only ``Z`` and ``Z/m`` are provided as coefficient rings.  There is no
division in ``R[G]``: it has zero divisors, e.g. ``(1 - w)(1 + w + w^2) = 0``
in ``Z[C3]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .groups import AbelianGroup, GroupElement, GroupMismatch


class RingMismatch(ValueError):
    """Raised when elements over different coefficient rings are combined."""


@dataclass(frozen=True)
class CoefficientRing:
    """``Z`` when ``modulus == 0``, otherwise ``Z/modulus``."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"modulus must be 0 (integers) or >= 2, got {self.modulus}")

    @classmethod
    def integers(cls) -> CoefficientRing:
        return cls(0)

    @classmethod
    def mod(cls, m: int) -> CoefficientRing:
        return cls(m)

    @property
    def kind(self) -> str:
        return "integers" if self.modulus == 0 else "integers-mod-m"

    def reduce(self, n: int) -> int:
        return n % self.modulus if self.modulus else n

    def __str__(self):
        return "Z" if self.modulus == 0 else f"Z/{self.modulus}"

    def to_json(self) -> dict:
        if self.modulus == 0:
            return {"kind": "integers"}
        return {"kind": "integers-mod-m", "modulus": self.modulus}

    @classmethod
    def from_json(cls, data) -> CoefficientRing:
        if isinstance(data, int):
            return cls(data)
        if data.get("kind", "integers") == "integers":
            return cls(0)
        return cls(int(data["modulus"]))


ZZ = CoefficientRing(0)


class GroupRingElement:
    """An element of ``R[G]`` stored as ``{group element: nonzero coefficient}``.

    Instances are treated as immutable.
    """

    __slots__ = ("ring", "group", "_terms", "_hash")

    def __init__(self, ring: CoefficientRing, group: AbelianGroup, terms: Mapping | Iterable = ()):
        self.ring = ring
        self.group = group
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            g = group.element(g)
            acc[g] = acc.get(g, 0) + c
        self._terms = {g: c for g, c in ((g, ring.reduce(c)) for g, c in acc.items()) if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring, group, terms: dict) -> GroupRingElement:
        # terms must already be reduced and zero-free
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.group = group
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring: CoefficientRing, group: AbelianGroup) -> GroupRingElement:
        return cls._raw(ring, group, {})

    @classmethod
    def one(cls, ring: CoefficientRing, group: AbelianGroup) -> GroupRingElement:
        return cls.monomial(ring, group, group.identity, 1)

    @classmethod
    def monomial(cls, ring, group, g: GroupElement, c: int = 1) -> GroupRingElement:
        c = ring.reduce(c)
        return cls._raw(ring, group, {group.element(g): c} if c else {})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self) -> set:
        return set(self._terms)

    def coeff(self, g: GroupElement) -> int:
        return self._terms.get(tuple(g), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: GroupRingElement) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.group != other.group:
            raise GroupMismatch(f"group mismatch: {self.group} vs {other.group}")

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return embed_int(other, self.ring, self.group)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.reduce
        terms = dict(self._terms)
        for g, c in other._terms.items():
            s = red(terms.get(g, 0) + c)
            if s:
                terms[g] = s
            else:
                terms.pop(g, None)
        return GroupRingElement._raw(self.ring, self.group, terms)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.reduce
        return GroupRingElement._raw(
            self.ring, self.group, {g: red(-c) for g, c in self._terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mul, red = self.group.mul, self.ring.reduce
        acc: dict = {}
        for g1, c1 in self._terms.items():
            for g2, c2 in other._terms.items():
                g = mul(g1, g2)
                acc[g] = acc.get(g, 0) + c1 * c2
        terms = {g: c for g, c in ((g, red(c)) for g, c in acc.items()) if c}
        return GroupRingElement._raw(self.ring, self.group, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, n: int) -> GroupRingElement:
        red = self.ring.reduce
        terms = {g: c for g, c in ((g, red(c * n)) for g, c in self._terms.items()) if c}
        return GroupRingElement._raw(self.ring, self.group, terms)

    def shift(self, h: GroupElement) -> GroupRingElement:
        """Multiply by the group element ``h``."""
        mul = self.group.mul
        return GroupRingElement._raw(
            self.ring, self.group, {mul(g, h): c for g, c in self._terms.items()}
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("no inverses in a group ring")
        result = GroupRingElement.one(self.ring, self.group)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_group(self, target: AbelianGroup, f) -> GroupRingElement:
        """Push forward along a group map ``f`` (must be a homomorphism for
        the result to mean anything algebraically)."""
        return GroupRingElement(self.ring, target, [(f(g), c) for g, c in self._terms.items()])

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = embed_int(other, self.ring, self.group)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.ring == other.ring and self.group == other.group and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.group, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{list(g)}" for g, c in self.items())

    def pretty(self, symbol: str = "w") -> str:
        return format_element(self, symbol)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list:
        return [{"element": list(g), "coeff": c} for g, c in self.items()]

    @classmethod
    def from_json(cls, data: list, ring: CoefficientRing, group: AbelianGroup) -> GroupRingElement:
        return cls(ring, group, [(tuple(t["element"]), int(t["coeff"])) for t in data])


def embed_int(n: int, ring: CoefficientRing, group: AbelianGroup) -> GroupRingElement:
    """``n`` times the identity of ``G``, with ``n`` mapped into ``R``."""
    return GroupRingElement.monomial(ring, group, group.identity, n)


def gre_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    a._check(b)
    return a + b


def gre_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    a._check(b)
    return a * b


gre_embed_int = embed_int


def format_element(x: GroupRingElement, symbol: str = "w") -> str:
    """Human-readable form; cyclic groups use powers of ``symbol``."""
    if x.is_zero():
        return "0"
    cyclic = x.group.rank == 1
    parts = []
    for g, c in x.items():
        if x.group.rank == 0 or all(v == 0 for v in g):
            mono = ""
        elif cyclic:
            mono = symbol if g[0] == 1 else f"{symbol}^{g[0]}"
        else:
            mono = "g" + str(tuple(g)).replace(" ", "")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}{mono}")
    return " + ".join(parts).replace("+ -", "- ")
