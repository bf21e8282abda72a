"""Set-valued antiderivatives over a fixed additive map.

For a derivation d the integral of x collects every y with d(y) = x.
The result is either empty or a coset of Ker(d); the canonical
representative is the member with the smallest index.  The same
construction over the Jordan law gives the Jordan integral.

Set arithmetic on element sets is pairwise (A + B = {a + b}, A * B =
{a * b}); by convention an empty operand makes the result empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .maps import AdditiveMap, MapLawError
from .rings import ElementSet, FiniteRing, RingError


class Integral:
    """Empty, or the coset representative + kernel of one integral value.

    Keeps its provenance: the ring, the map, and the integrated element.
    """

    __slots__ = ("ring", "map", "x", "representative", "kernel")

    def __init__(self, ring: FiniteRing, dmap: AdditiveMap, x: int,
                 representative: Optional[int], kernel: Optional[ElementSet]):
        self.ring = ring
        self.map = dmap
        self.x = x
        self.representative = representative
        self.kernel = kernel

    @property
    def is_empty(self) -> bool:
        return self.representative is None

    def __len__(self) -> int:
        return 0 if self.is_empty else len(self.kernel)

    def contains(self, y: int) -> bool:
        if self.is_empty:
            return False
        return self.ring.sub(y, self.representative) in self.kernel

    __contains__ = contains

    def as_set(self) -> ElementSet:
        if self.is_empty:
            return ElementSet(self.ring, ())
        members = self.ring.add_table[self.representative, np.asarray(self.kernel.elements)]
        return ElementSet(self.ring, members)

    def __eq__(self, other) -> bool:
        """Set equality: same kernel and representatives in the same coset."""
        if not isinstance(other, Integral):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return (self.kernel.elements == other.kernel.elements
                and self.ring.sub(self.representative, other.representative) in self.kernel)

    def __hash__(self):
        return hash((id(self.ring), self.representative,
                     None if self.kernel is None else self.kernel.elements))

    def __repr__(self) -> str:
        if self.is_empty:
            return "Integral(empty)"
        return f"Integral({self.as_set()!r})"

    def to_json(self, materialize: bool = False) -> dict:
        if self.is_empty:
            return {"status": "empty"}
        out = {
            "status": "coset",
            "representative": int(self.representative),
            "kernel": [int(e) for e in self.kernel.elements],
            "size": len(self.kernel),
        }
        if materialize:
            out["elements"] = [int(e) for e in self.as_set().elements]
        return out


def _integrate_with_flag(ring: FiniteRing, dmap: AdditiveMap, x: int,
                         flag: str, method: str) -> Integral:
    if dmap.ring is not ring:
        raise RingError("map belongs to a different ring")
    if flag == "derivation" and not dmap.is_derivation:
        raise MapLawError("map is not a validated derivation")
    if flag == "jordan" and not dmap.is_jordan:
        raise MapLawError("map is not a validated Jordan derivation")
    x = int(x)
    if not 0 <= x < ring.size:
        raise RingError(f"element index {x} out of range for ring of size {ring.size}")
    if method == "scan":
        members = [y for y in range(ring.size) if int(dmap.table[y]) == x]
        rep = members[0] if members else None
    elif method == "index":
        pre = dmap.preimages.get(x, ())
        rep = pre[0] if pre else None
    else:
        raise ValueError(f"unknown method {method!r}")
    if rep is None:
        return Integral(ring, dmap, x, None, None)
    return Integral(ring, dmap, x, rep, dmap.kernel)


def integrate(ring: FiniteRing, dmap: AdditiveMap, x: int,
              method: str = "index") -> Integral:
    """All y with d(y) = x, for a validated derivation d."""
    return _integrate_with_flag(ring, dmap, x, "derivation", method)


def jordan_integrate(ring: FiniteRing, dmap: AdditiveMap, x: int,
                     method: str = "index") -> Integral:
    """All y with δ(y) = x, for a validated Jordan derivation δ."""
    return _integrate_with_flag(ring, dmap, x, "jordan", method)


# ---------------------------------------------------------------------------
# Set arithmetic


def _set_binop(a: ElementSet, b: ElementSet, table: np.ndarray) -> ElementSet:
    if a.ring is not b.ring:
        raise RingError("element sets belong to different rings")
    if not a.elements or not b.elements:
        # empty-absorbing convention
        return ElementSet(a.ring, ())
    ia = np.asarray(a.elements)
    ib = np.asarray(b.elements)
    return ElementSet(a.ring, np.unique(table[np.ix_(ia, ib)]))


def set_add(a: ElementSet, b: ElementSet) -> ElementSet:
    """Pairwise sums; empty if either operand is empty."""
    return _set_binop(a, b, a.ring.add_table)


def set_mul(a: ElementSet, b: ElementSet) -> ElementSet:
    """Pairwise products; empty if either operand is empty."""
    return _set_binop(a, b, a.ring.mul_table)


def integral_contains(integral: Integral, y: int) -> bool:
    """Membership without materializing the coset."""
    return integral.contains(y)


def integral_equals(left: Integral, right: Integral) -> bool:
    """Equality via shared kernel and representative difference."""
    return left == right


def integral_as_set(integral: Integral) -> ElementSet:
    """Materialize the integral; empty integrals give the empty set."""
    return integral.as_set()


# ---------------------------------------------------------------------------
# Image structure


def is_proper(ring: FiniteRing, dmap: AdditiveMap) -> tuple[bool, Optional[tuple]]:
    """Is the image of the map closed under multiplication?

    The image of an additive map is automatically an additive subgroup,
    so multiplicative closure is the whole question.  On failure the
    witness is the first (u, v, u*v) with u, v in the image and u*v not.
    """
    img = dmap.image
    arr = np.asarray(img.elements)
    for u in img.elements:
        row = ring.mul_table[u, arr]
        outside = ~np.isin(row, arr)
        if outside.any():
            v = int(arr[int(np.argmax(outside))])
            return False, (int(u), v, int(ring.mul_table[u, v]))
    return True, None


@dataclass(frozen=True)
class QuotientView:
    """R partitioned into kernel cosets, with the induced map to image(d).

    cosets are ordered by representative (their minimum element);
    index_map sends each element to its coset position; coset_images[i]
    is the common d-value of coset i.  Construction verifies that the
    induced map is a well-defined additive bijection onto the image.
    """

    ring: FiniteRing
    map: AdditiveMap
    cosets: tuple[ElementSet, ...]
    index_map: tuple[int, ...]
    coset_images: tuple[int, ...]


def quotient_view(ring: FiniteRing, dmap: AdditiveMap) -> QuotientView:
    if dmap.ring is not ring:
        raise RingError("map belongs to a different ring")
    kernel = dmap.kernel
    karr = np.asarray(kernel.elements)
    index_map = [-1] * ring.size
    cosets: list[ElementSet] = []
    images: list[int] = []
    for e in range(ring.size):
        if index_map[e] != -1:
            continue
        members = np.sort(ring.add_table[e, karr])
        cid = len(cosets)
        for m in members:
            if index_map[int(m)] != -1:
                raise MapLawError("kernel cosets do not partition the ring")
            index_map[int(m)] = cid
        values = {int(dmap.table[int(m)]) for m in members}
        if len(values) != 1:
            raise MapLawError("induced map is not well defined on a coset")
        cosets.append(ElementSet(ring, members))
        images.append(values.pop())
    if len(set(images)) != len(cosets) or len(cosets) != len(dmap.image):
        raise MapLawError("induced map is not a bijection onto the image")
    for i, ci in enumerate(cosets):
        ri = ci.elements[0]
        for j, cj in enumerate(cosets):
            rj = cj.elements[0]
            k = index_map[ring.add(ri, rj)]
            if ring.add(images[i], images[j]) != images[k]:
                raise MapLawError("induced map is not additive on cosets")
    return QuotientView(ring, dmap, tuple(cosets), tuple(index_map), tuple(images))
