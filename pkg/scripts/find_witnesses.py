#!/usr/bin/env python3
"""Print the three headline witnesses the library can produce.

1. The smallest ring with a Jordan derivation that is not a derivation,
   and the point where its integral operator separates from every
   derivation's.
2. A 2x2 matrix-ring product whose two Leibniz parts both have empty
   integrals while the product itself is integrable.
3. The characteristic-2 collapse of the triangular-pattern image, next to
   the characteristic-3 case where the image stays full and closed.

Each block recomputes from scratch; nothing is cached between runs.
"""
from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ringlab import (Matrix, TriPattern, Zn, build_ring,
                     enumerate_derivations, find_jordan_not_derivation,
                     inner_derivation, integrate, is_proper,
                     jordan_integrate, spec_name)


def separation_block() -> None:
    print("== Jordan map separated from every derivation ==")
    for n in range(2, 9):
        ring = build_ring(Zn(n))
        delta = find_jordan_not_derivation(ring)
        if delta is None:
            continue
        ders = enumerate_derivations(ring)
        print(f"ring {spec_name(ring.spec)}: delta table {delta.as_tuple()}, "
              f"{len(ders)} derivation(s)")
        for x in range(ring.size):
            j = jordan_integrate(ring, delta, x)
            if all(integrate(ring, d, x) != j for d in ders):
                print(f"  separates at x={x}: j_delta({x}) = {j.as_set()!r}, "
                      f"i_d({x}) = "
                      + ", ".join(repr(integrate(ring, d, x).as_set())
                                  for d in ders))
                break
        if n >= 4:
            break


def empty_parts_block() -> None:
    print("== product integrable while both parts are not ==")
    for p in (2, 3):
        ring = build_ring(Matrix(Zn(p), 2))
        d = inner_derivation(ring, ring.parse("E11"))
        e12, e21 = ring.parse("E12"), ring.parse("E21")
        left = integrate(ring, d, ring.mul(d(e12), e21))
        right = integrate(ring, d, ring.mul(e12, d(e21)))
        whole = integrate(ring, d, d(ring.mul(e12, e21)))
        proper, wit = is_proper(ring, d)
        print(f"ring {spec_name(ring.spec)}, d = inner at E11:")
        print(f"  i_d(d(E12)*E21) empty: {left.is_empty}; "
              f"i_d(E12*d(E21)) empty: {right.is_empty}; "
              f"E12*E21 in i_d(d(E12*E21)): {whole.contains(ring.mul(e12, e21))}")
        labels = None if proper else tuple(ring.label(w) for w in wit)
        print(f"  image closed under multiplication: {proper}"
              + ("" if proper else f", witness {labels}"))


def pattern_block() -> None:
    print("== triangular-pattern image, char 2 vs char 3 ==")
    for base in (2, 3):
        ring = build_ring(TriPattern(Zn(base)))
        d = inner_derivation(ring, ring.parse("A"))
        upper = [x for x in range(ring.size)
                 if ring.value(x)[0] == 0 and ring.value(x)[4] == 0]
        proper, wit = is_proper(ring, d)
        print(f"ring {spec_name(ring.spec)}: |image| = {len(d.image)} "
              f"of {len(upper)} strictly-upper elements; proper = {proper}"
              + ("" if proper else f", witness {wit}"))


def main() -> int:
    separation_block()
    print()
    empty_parts_block()
    print()
    pattern_block()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
