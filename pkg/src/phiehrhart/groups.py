"""Finitely generated Abelian groups in invariant-factor form.

Group elements are plain tuples of integer coordinates; coordinate ``i``
lives in ``0..d_i-1`` for a finite factor ``d_i`` and is unconstrained for a
free factor (``d_i == 0``).  All reduction goes through the owning group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

GroupElement = tuple


class GroupMismatch(ValueError):
    """Raised when values from structurally different groups are combined."""


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/d_1 x ... x Z/d_k`` with ``d_i == 0`` meaning a copy of ``Z``."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 0 for d in factors):
            raise ValueError(f"negative invariant factor in {factors}")
        # trivial factors carry no information
        object.__setattr__(self, "invariant_factors", tuple(d for d in factors if d != 1))

    @classmethod
    def trivial(cls) -> AbelianGroup:
        return cls(())

    @classmethod
    def cyclic(cls, r: int) -> AbelianGroup:
        return cls((r,))

    @classmethod
    def free(cls, rank: int = 1) -> AbelianGroup:
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        """Number of coordinates of an element."""
        return len(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return 0 not in self.invariant_factors

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, coords: Sequence[int]) -> GroupElement:
        """Reduce an arbitrary integer vector to its canonical representative."""
        if len(coords) != self.rank:
            raise GroupMismatch(
                f"element {tuple(coords)} has {len(coords)} coordinates, group {self} has {self.rank}"
            )
        return tuple(c % d if d else int(c) for c, d in zip(coords, self.invariant_factors))

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple(
            (x + y) % d if d else x + y for x, y, d in zip(a, b, self.invariant_factors)
        )

    def inv(self, a: GroupElement) -> GroupElement:
        return tuple((-x) % d if d else -x for x, d in zip(a, self.invariant_factors))

    def power(self, a: GroupElement, k: int) -> GroupElement:
        return tuple((x * k) % d if d else x * k for x, d in zip(a, self.invariant_factors))

    def contains(self, a: GroupElement) -> bool:
        if len(a) != self.rank:
            return False
        return all(d == 0 or 0 <= x < d for x, d in zip(a, self.invariant_factors))

    def elements(self) -> Iterator[GroupElement]:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return product(*(range(d) for d in self.invariant_factors))

    def check(self, other: AbelianGroup) -> None:
        if self != other:
            raise GroupMismatch(f"group mismatch: {self} vs {other}")

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join("Z" if d == 0 else f"C{d}" for d in self.invariant_factors)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> AbelianGroup:
        return cls(tuple(data["invariant_factors"]))


def elt_mul(G: AbelianGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    return G.mul(a, b)


def elt_inv(G: AbelianGroup, a: GroupElement) -> GroupElement:
    return G.inv(a)


def group_product(
    A: AbelianGroup, B: AbelianGroup
) -> tuple[AbelianGroup, Callable[[GroupElement], GroupElement], Callable[[GroupElement], GroupElement]]:
    """Direct product ``A x B`` together with its two coordinate injections.

    The factor lists are concatenated as given (after the usual removal of
    trivial factors), so ``C3 x Z`` has factors ``(3, 0)``.
    """
    AB = AbelianGroup(A.invariant_factors + B.invariant_factors)
    zeros_a, zeros_b = A.identity, B.identity

    def inject_left(a):
        return tuple(a) + zeros_b

    def inject_right(b):
        return zeros_a + tuple(b)

    return AB, inject_left, inject_right


class LatticeHomomorphism:
    """A homomorphism ``Z^d -> G`` fixed by the images of ``e_1, ..., e_d``."""

    __slots__ = ("group", "images")

    def __init__(self, group: AbelianGroup, images: Sequence[Sequence[int]]):
        self.group = group
        self.images = tuple(group.element(g) for g in images)

    @classmethod
    def trivial(cls, dim: int, group: AbelianGroup | None = None) -> LatticeHomomorphism:
        group = group if group is not None else AbelianGroup.trivial()
        return cls(group, [group.identity] * dim)

    @classmethod
    def diagonal(cls, dim: int, group: AbelianGroup, g: Sequence[int]) -> LatticeHomomorphism:
        """Every basis vector goes to the same element ``g``."""
        return cls(group, [g] * dim)

    @property
    def ambient_dim(self) -> int:
        return len(self.images)

    def __call__(self, alpha: Sequence[int]) -> GroupElement:
        if len(alpha) != len(self.images):
            raise ValueError(
                f"vector of length {len(alpha)} given to a homomorphism on Z^{len(self.images)}"
            )
        acc = [0] * self.group.rank
        for a, img in zip(alpha, self.images):
            if a:
                for i, x in enumerate(img):
                    acc[i] += a * x
        return self.group.element(acc)

    apply = __call__

    def invert(self) -> LatticeHomomorphism:
        """The homomorphism ``alpha -> phi(alpha)^-1``."""
        return LatticeHomomorphism(self.group, [self.group.inv(g) for g in self.images])

    def extend(self, extra: Sequence[Sequence[int]]) -> LatticeHomomorphism:
        return LatticeHomomorphism(self.group, list(self.images) + [tuple(g) for g in extra])

    def __eq__(self, other):
        if not isinstance(other, LatticeHomomorphism):
            return NotImplemented
        return self.group == other.group and self.images == other.images

    def __hash__(self):
        return hash((self.group, self.images))

    def __repr__(self):
        return f"LatticeHomomorphism({self.group}, {list(self.images)})"

    def to_json(self) -> dict:
        return {"images": [list(g) for g in self.images]}

    @classmethod
    def from_json(cls, data: dict, group: AbelianGroup) -> LatticeHomomorphism:
        return cls(group, data["images"])


def hom_apply(phi: LatticeHomomorphism, alpha: Sequence[int]) -> GroupElement:
    return phi(alpha)


def hom_invert(phi: LatticeHomomorphism) -> LatticeHomomorphism:
    return phi.invert()
