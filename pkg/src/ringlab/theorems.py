"""Exhaustive checkers for the algebraic laws of set-valued antiderivatives.

Every checker quantifies over concrete ring elements and produces a
TheoremReport: pass, fail (with witnesses), or skipped when the ring or
map does not satisfy the hypotheses.  Instance spaces are enumerated
exhaustively up to a configurable threshold, above which a seeded
stratified sample is drawn and the seed recorded in the report.

Checker ids, in the fixed order run_suite uses:

basic              membership facts, surjectivity and injectivity criteria
kernel-constants   integer multiples of unity land in the kernel
coset-structure    every nonempty integral is a kernel coset, uniquely
kernel-scaling     kernel elements scale integrals into integrals
combination-rules  sum/product/inverse membership rules
additivity-parts   additivity of integrals and integration by parts
power-rules        power and inverse-power membership rules
jordan-suite       the Jordan-law analogues of the above
separation         a Jordan non-derivation is told apart from every derivation
herstein           on 2-torsion-free prime rings, Jordan implies Leibniz
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .integrals import Integral, integrate, jordan_integrate, set_add
from .maps import (AdditiveMap, MapLawError, check_derivation,
                   enumerate_derivations, enumerate_jordan_derivations)
from .rings import ElementSet, FiniteRing, RingError, spec_to_json

MAX_WITNESSES = 25


@dataclass
class CheckerConfig:
    max_n: int = 8                      # window for integer multiples of unity
    max_exp: int = 6                    # largest exponent in power rules
    sample_threshold: int = 10_000_000  # instance spaces above this are sampled
    sample_size: int = 50_000
    seed: int = 0


@dataclass
class TheoremReport:
    checker: str
    status: str                          # pass | fail | skipped
    reason: Optional[str]
    instances: int
    witnesses: list
    seed: Optional[int]
    runtime: float
    ring_spec: Optional[dict] = None
    map_desc: Optional[str] = None

    def to_json(self) -> dict:
        out = {"checker": self.checker, "status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        out["instances"] = self.instances
        out["witnesses"] = self.witnesses
        if self.seed is not None:
            out["seed"] = self.seed
        out["runtime"] = round(self.runtime, 6)
        return out


class _Recorder:
    """Collects instance counts and witnesses for one checker run."""

    def __init__(self, checker: str, ring: FiniteRing):
        self.checker = checker
        self.ring = ring
        self.t0 = time.perf_counter()
        self.instances = 0
        self.witnesses: list[dict] = []
        self.failed = False
        self.seed: Optional[int] = None

    def check(self, ok: bool, witness: dict) -> bool:
        self.instances += 1
        if not ok:
            self.failed = True
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness)
        return ok

    def note(self, witness: dict):
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def skip(self, reason: str) -> TheoremReport:
        return TheoremReport(self.checker, "skipped", reason, self.instances,
                             self.witnesses, self.seed,
                             time.perf_counter() - self.t0,
                             ring_spec=spec_to_json(self.ring.spec))

    def finish(self) -> TheoremReport:
        status = "fail" if self.failed else "pass"
        if status == "fail":
            assert self.witnesses, "failing reports must carry witnesses"
        return TheoremReport(self.checker, status, None, self.instances,
                             self.witnesses, self.seed,
                             time.perf_counter() - self.t0,
                             ring_spec=spec_to_json(self.ring.spec))


def _require_map(ring: FiniteRing, dmap: AdditiveMap, law: str):
    if dmap.ring is not ring:
        raise RingError("map belongs to a different ring")
    if law == "derivation" and not dmap.is_derivation:
        raise MapLawError("map is not a validated derivation")
    if law == "jordan" and not dmap.is_jordan:
        raise MapLawError("map is not a validated Jordan derivation")


def _pair_stream(n: int, config: CheckerConfig, rec: _Recorder):
    """All (x, y) pairs, or a seeded stratified sample when too many."""
    if n * n <= config.sample_threshold:
        for x in range(n):
            for y in range(n):
                yield x, y
        return
    rng = random.Random(config.seed)
    rec.seed = config.seed
    rec.note({"kind": "sampled", "sample_size": config.sample_size,
              "space": n * n})
    per = max(1, config.sample_size // n)
    for x in range(n):
        for _ in range(per):
            yield x, rng.randrange(n)


class _IntegralCache:
    """Memoized integrals of one map, by integrated element."""

    def __init__(self, ring, dmap, law):
        self.ring = ring
        self.dmap = dmap
        self.law = law
        self._cache: dict[int, Integral] = {}
        self._sets: dict[int, ElementSet] = {}

    def __call__(self, x: int) -> Integral:
        got = self._cache.get(x)
        if got is None:
            fn = integrate if self.law == "derivation" else jordan_integrate
            got = fn(self.ring, self.dmap, x)
            self._cache[x] = got
        return got

    def as_set(self, x: int) -> ElementSet:
        got = self._sets.get(x)
        if got is None:
            got = self(x).as_set()
            self._sets[x] = got
        return got


# ---------------------------------------------------------------------------
# basic


def verify_basic(ring: FiniteRing, dmap: AdditiveMap,
                 config: Optional[CheckerConfig] = None) -> TheoremReport:
    """Membership facts and the surjectivity/injectivity criteria."""
    _require_map(ring, dmap, "derivation")
    rec = _Recorder("basic", ring)
    ints = _IntegralCache(ring, dmap, "derivation")
    n = ring.size

    rec.check(ints(ring.zero).contains(ring.zero), {"kind": "zero-membership"})
    for x in range(n):
        v = int(dmap.table[x])
        rec.check(ints(v).contains(x),
                  {"kind": "element-not-in-own-integral", "x": x})
    for x in range(n):
        cur = ints(x)
        if cur.is_empty:
            rec.instances += 1
            continue
        values = {int(dmap.table[y]) for y in cur.as_set()}
        rec.check(values == {x},
                  {"kind": "integral-maps-outside", "x": x,
                   "values": sorted(values)})
    surjective = len(dmap.image) == n
    all_nonempty = all(not ints(x).is_empty for x in range(n))
    rec.check(surjective == all_nonempty,
              {"kind": "surjectivity-criterion", "surjective": surjective,
               "all_nonempty": all_nonempty})
    injective = len(dmap.kernel) == 1
    all_single = all(len(dmap.preimages.get(x, ())) == 1 for x in range(n))
    rec.check(injective == all_single,
              {"kind": "injectivity-criterion", "injective": injective,
               "all_singletons": all_single})
    return rec.finish()


# ---------------------------------------------------------------------------
# kernel-constants


def verify_kernel_constants(ring: FiniteRing, dmap: AdditiveMap,
                            config: Optional[CheckerConfig] = None) -> TheoremReport:
    """Integer multiples of unity, and their inverse-scaled combinations,
    always land in the kernel; adding them to any antiderivative stays in
    the same integral."""
    _require_map(ring, dmap, "derivation")
    config = config or CheckerConfig()
    rec = _Recorder("kernel-constants", ring)
    if ring.unity is None:
        return rec.skip("ring has no unity")
    period = ring.additive_order(ring.unity)
    if period <= 2 * config.max_n + 1:
        ns = list(range(period))
        rec.note({"kind": "range-capped", "additive_order_of_unity": period})
    else:
        ns = list(range(-config.max_n, config.max_n + 1))
    kern = dmap.kernel
    bolds = {m: ring.bold(m) for m in ns}
    inverses = {m: ring.invert(bolds[m]) for m in ns}

    for m in ns:
        b = bolds[m]
        rec.check(b in kern, {"kind": "bold-not-in-kernel", "n": m, "element": b})
        rec.check(ring.neg(b) in kern,
                  {"kind": "bold-negative-not-in-kernel", "n": m})
    for m in ns:
        ib = inverses[m]
        if ib is None:
            continue
        for mm in ns:
            b = bolds[mm]
            rec.check(ring.mul(ib, b) in kern,
                      {"kind": "scaled-bold-not-in-kernel", "n": m, "m": mm})
            rec.check(ring.mul(b, ib) in kern,
                      {"kind": "bold-scaled-not-in-kernel", "n": m, "m": mm})

    ints = _IntegralCache(ring, dmap, "derivation")
    invertible_ns = [m for m in ns if inverses[m] is not None]
    for y in range(ring.size):
        x = int(dmap.table[y])
        cur = ints(x)
        for m in invertible_ns:
            ib = inverses[m]
            for mm in ns:
                b = bolds[mm]
                rec.check(cur.contains(ring.add(y, ring.mul(ib, b))),
                          {"kind": "shifted-left", "y": y, "n": m, "m": mm})
                rec.check(cur.contains(ring.add(y, ring.mul(b, ib))),
                          {"kind": "shifted-right", "y": y, "n": m, "m": mm})
    return rec.finish()


# ---------------------------------------------------------------------------
# coset-structure


def verify_coset_structure(ring: FiniteRing, dmap: AdditiveMap,
                           config: Optional[CheckerConfig] = None) -> TheoremReport:
    """Every nonempty integral equals y + Ker(d) for each of its members,
    with each member reached by exactly one kernel offset."""
    _require_map(ring, dmap, "derivation")
    rec = _Recorder("coset-structure", ring)
    karr = np.asarray(dmap.kernel.elements)
    for x in sorted(dmap.preimages):
        members = dmap.preimages[x]
        expect = np.asarray(members)
        for y in members:
            shifted = ring.add_table[y, karr]
            rec.check(bool(np.array_equal(np.sort(shifted), expect)),
                      {"kind": "coset-mismatch", "x": x, "y": int(y)})
            rec.check(len(np.unique(shifted)) == len(karr),
                      {"kind": "nonunique-kernel-offset", "x": x, "y": int(y)})
    return rec.finish()


# ---------------------------------------------------------------------------
# kernel-scaling


def verify_kernel_scaling(ring: FiniteRing, dmap: AdditiveMap,
                          config: Optional[CheckerConfig] = None) -> TheoremReport:
    """Multiplying an integral by a kernel element lands inside the integral
    of the scaled element, with equality for invertible kernel elements;
    also records one witness that the inclusion can be strict."""
    _require_map(ring, dmap, "derivation")
    rec = _Recorder("kernel-scaling", ring)
    pre = dmap.preimages
    strict_seen = False
    for w in dmap.kernel.elements:
        invertible = ring.unity is not None and ring.invert(w) is not None
        for x in range(ring.size):
            members = pre.get(x)
            wx = ring.mul(w, x)
            xw = ring.mul(x, w)
            if members is None:
                rec.instances += 2  # both inclusions hold vacuously
                continue
            arr = np.asarray(members)
            left = set(map(int, ring.mul_table[w, arr]))
            right = set(map(int, ring.mul_table[arr, w]))
            target_l = set(pre.get(wx, ()))
            target_r = set(pre.get(xw, ()))
            rec.check(left <= target_l,
                      {"kind": "left-scaling-escape", "w": int(w), "x": x})
            rec.check(right <= target_r,
                      {"kind": "right-scaling-escape", "w": int(w), "x": x})
            rec.check(bool(target_l) and bool(target_r),
                      {"kind": "scaled-integral-empty", "w": int(w), "x": x})
            if invertible:
                rec.check(left == target_l,
                          {"kind": "left-scaling-not-equal", "w": int(w), "x": x})
                rec.check(right == target_r,
                          {"kind": "right-scaling-not-equal", "w": int(w), "x": x})
            elif not strict_seen and left < target_l:
                rec.note({"kind": "strict-inclusion", "w": int(w), "x": x,
                          "scaled_size": len(left), "integral_size": len(target_l)})
                strict_seen = True
    return rec.finish()


# ---------------------------------------------------------------------------
# combination-rules


def verify_combination_rules(ring: FiniteRing, dmap: AdditiveMap,
                             config: Optional[CheckerConfig] = None) -> TheoremReport:
    """Sums and products of antiderivatives integrate the matching
    combinations, plus the inverse membership rules on unity rings."""
    _require_map(ring, dmap, "derivation")
    config = config or CheckerConfig()
    rec = _Recorder("combination-rules", ring)
    ints = _IntegralCache(ring, dmap, "derivation")
    table = dmap.table
    n = ring.size

    for y1, y2 in _pair_stream(n, config, rec):
        x1 = int(table[y1])
        x2 = int(table[y2])
        rec.check(ints(ring.add(x1, x2)).contains(ring.add(y1, y2)),
                  {"kind": "sum-rule", "y1": y1, "y2": y2})
        target = ring.add(ring.mul(x1, y2), ring.mul(y1, x2))
        rec.check(ints(target).contains(ring.mul(y1, y2)),
                  {"kind": "product-rule", "y1": y1, "y2": y2})

    for x in sorted(dmap.preimages):
        members = dmap.preimages[x]
        twox = ring.add(x, x)
        for y in members:
            for z in members:
                rec.check(ints(twox).contains(ring.add(y, z)),
                          {"kind": "same-integral-sum", "x": x, "y": int(y), "z": int(z)})
                target = ring.add(ring.mul(x, z), ring.mul(y, x))
                rec.check(ints(target).contains(ring.mul(y, z)),
                          {"kind": "same-integral-product", "x": x, "y": int(y), "z": int(z)})

    if ring.unity is not None:
        commutative = ring.is_commutative()
        for y in range(n):
            yi = ring.invert(y)
            if yi is None:
                continue
            x = int(table[y])
            target = ring.neg(ring.mul(ring.mul(yi, x), yi))
            rec.check(ints(target).contains(yi),
                      {"kind": "inverse-rule", "y": y})
            if commutative:
                target2 = ring.neg(ring.mul(ring.mul(yi, yi), x))
                rec.check(ints(target2).contains(yi),
                          {"kind": "inverse-rule-commutative", "y": y})
    return rec.finish()


# ---------------------------------------------------------------------------
# additivity-parts


def verify_additivity_and_parts(ring: FiniteRing, dmap: AdditiveMap,
                                config: Optional[CheckerConfig] = None) -> TheoremReport:
    """When both integrals are nonempty their pairwise sum is the integral
    of the sum, and x*y lies in the two-part sum; records one witness pair
    whose part integrals are both empty."""
    _require_map(ring, dmap, "derivation")
    config = config or CheckerConfig()
    rec = _Recorder("additivity-parts", ring)
    ints = _IntegralCache(ring, dmap, "derivation")
    table = dmap.table
    n = ring.size

    img = dmap.image.elements
    for u in img:
        for v in img:
            summed = set_add(ints.as_set(u), ints.as_set(v))
            expect = ints.as_set(ring.add(u, v))
            rec.check(summed == expect,
                      {"kind": "integral-additivity", "x": int(u), "y": int(v)})

    sum_cache: dict[tuple[int, int], ElementSet] = {}
    empty_witnessed = False
    for x, y in _pair_stream(n, config, rec):
        a = ring.mul(int(table[x]), y)
        b = ring.mul(x, int(table[y]))
        ia = ints(a)
        ib = ints(b)
        if ia.is_empty or ib.is_empty:
            rec.instances += 1
            if not empty_witnessed and ia.is_empty and ib.is_empty:
                rec.note({"kind": "parts-preconditions-empty", "x": x, "y": y,
                          "dx_times_y": a, "x_times_dy": b})
                empty_witnessed = True
            continue
        key = (ia.representative, ib.representative)
        total = sum_cache.get(key)
        if total is None:
            total = set_add(ia.as_set(), ib.as_set())
            sum_cache[key] = total
        rec.check(ring.mul(x, y) in total,
                  {"kind": "parts-membership", "x": x, "y": y})
    return rec.finish()


# ---------------------------------------------------------------------------
# power-rules


def verify_power_rules(ring: FiniteRing, dmap: AdditiveMap,
                       config: Optional[CheckerConfig] = None) -> TheoremReport:
    """Power membership rules on commutative unity rings, including
    negative exponents for invertible elements and the inverse-scaled
    transfer rules."""
    _require_map(ring, dmap, "derivation")
    config = config or CheckerConfig()
    rec = _Recorder("power-rules", ring)
    if ring.unity is None:
        return rec.skip("ring has no unity")
    if not ring.is_commutative():
        return rec.skip("ring is not commutative")
    N = config.max_exp
    ints = _IntegralCache(ring, dmap, "derivation")
    table = dmap.table
    one = ring.unity
    exps = list(range(-N, N + 1))
    bolds = {e: ring.bold(e) for e in exps}
    inv_bolds = {e: ring.invert(bolds[e]) for e in exps}

    for x in range(ring.size):
        dx = int(table[x])
        powers = [one]
        for _ in range(N + 1):
            powers.append(ring.mul(powers[-1], x))
        for e in range(1, N + 1):
            target = ring.mul(bolds[e], ring.mul(powers[e - 1], dx))
            rec.check(ints(target).contains(powers[e]),
                      {"kind": "power-rule", "x": x, "n": e})
            ib = inv_bolds[e]
            if ib is not None:
                scaled = ring.mul(powers[e - 1], dx)
                rec.check(ints(scaled).contains(ring.mul(ib, powers[e])),
                          {"kind": "power-rule-scaled", "x": x, "n": e})
        xi = ring.invert(x)
        if xi is None:
            continue
        ipowers = [one]
        for _ in range(N + 1):
            ipowers.append(ring.mul(ipowers[-1], xi))

        def power(e: int) -> int:
            return powers[e] if e >= 0 else ipowers[-e]

        for e in range(1, N + 1):
            target = ring.neg(ring.mul(bolds[e], ring.mul(ipowers[e + 1], dx)))
            rec.check(ints(target).contains(ipowers[e]),
                      {"kind": "inverse-power-rule", "x": x, "n": e})
        for e in exps:
            target = ring.mul(bolds[e], ring.mul(power(e - 1), dx))
            rec.check(ints(target).contains(power(e)),
                      {"kind": "integer-power-rule", "x": x, "n": e})
            ib = inv_bolds[e]
            if ib is not None:
                scaled = ring.mul(power(e - 1), dx)
                rec.check(ints(scaled).contains(ring.mul(ib, power(e))),
                          {"kind": "integer-power-rule-scaled", "x": x, "n": e})

    # transfer rules: scaling an antiderivative by an invertible integer
    for e in exps:
        ib = inv_bolds[e]
        if ib is None:
            continue
        b = bolds[e]
        for y in range(ring.size):
            ny = ring.mul(b, y)
            for xx in dmap.preimages.get(ny, ()):
                rec.check(ints(y).contains(ring.mul(ib, xx)),
                          {"kind": "transfer-down", "n": e, "y": y, "x": int(xx)})
            target_y = int(table[ring.mul(b, y)])
            rec.check(ints(ring.mul(ib, target_y)).contains(y),
                      {"kind": "transfer-up", "n": e, "x": y})
    return rec.finish()


# ---------------------------------------------------------------------------
# jordan-suite


def verify_jordan_suite(ring: FiniteRing, delta: AdditiveMap,
                        config: Optional[CheckerConfig] = None) -> TheoremReport:
    """The Jordan-law analogues: membership, coset structure, additivity,
    two-sided integration by parts, combination rules, and the
    surjectivity/injectivity criteria."""
    _require_map(ring, delta, "jordan")
    config = config or CheckerConfig()
    rec = _Recorder("jordan-suite", ring)
    ints = _IntegralCache(ring, delta, "jordan")
    table = delta.table
    kern = delta.kernel
    n = ring.size

    rec.check(ints(ring.zero).contains(ring.zero), {"kind": "zero-membership"})

    pre = delta.preimages
    for x in sorted(pre):
        members = pre[x]
        for y in members:
            for z in members:
                rec.check(ring.sub(y, z) in kern,
                          {"kind": "difference-not-in-kernel", "x": x,
                           "y": int(y), "z": int(z)})

    for x in range(n):
        rec.check(ints(int(table[x])).contains(x),
                  {"kind": "element-not-in-own-integral", "x": x})

    karr = np.asarray(kern.elements)
    for x in sorted(pre):
        members = pre[x]
        expect = np.asarray(members)
        for y in members:
            shifted = ring.add_table[y, karr]
            rec.check(bool(np.array_equal(np.sort(shifted), expect)),
                      {"kind": "coset-mismatch", "x": x, "y": int(y)})
        values = {int(table[y]) for y in members}
        rec.check(values == {x},
                  {"kind": "integral-maps-outside", "x": x})

    img = delta.image.elements
    for u in img:
        for v in img:
            summed = set_add(ints.as_set(u), ints.as_set(v))
            rec.check(summed == ints.as_set(ring.add(u, v)),
                      {"kind": "integral-additivity", "x": int(u), "y": int(v)})

    sum_cache: dict[tuple, ElementSet] = {}

    def cached_sum(*integrals) -> ElementSet:
        key = tuple(i.representative for i in integrals)
        got = sum_cache.get(key)
        if got is None:
            got = integrals[0].as_set()
            for other in integrals[1:]:
                got = set_add(got, other.as_set())
            sum_cache[key] = got
        return got

    for x, y in _pair_stream(n, config, rec):
        dx = int(table[x])
        dy = int(table[y])
        parts = (ints(ring.mul(dx, y)), ints(ring.mul(x, dy)),
                 ints(ring.mul(dy, x)), ints(ring.mul(y, dx)))
        if any(p.is_empty for p in parts):
            rec.instances += 1
        else:
            total = cached_sum(*parts)
            rec.check(ring.jordan(x, y) in total,
                      {"kind": "jordan-parts-membership", "x": x, "y": y})
        x1, x2 = dx, dy
        rec.check(ints(ring.add(x1, x2)).contains(ring.add(x, y)),
                  {"kind": "sum-rule", "y1": x, "y2": y})
        target = ring.add(ring.add(ring.mul(x1, y), ring.mul(x, x2)),
                          ring.add(ring.mul(x2, x), ring.mul(y, x1)))
        rec.check(ints(target).contains(ring.jordan(x, y)),
                  {"kind": "jordan-product-rule", "y1": x, "y2": y})

    surjective = len(delta.image) == n
    all_nonempty = all(not ints(x).is_empty for x in range(n))
    rec.check(surjective == all_nonempty,
              {"kind": "surjectivity-criterion", "surjective": surjective,
               "all_nonempty": all_nonempty})
    injective = len(kern) == 1
    all_single = all(len(pre.get(x, ())) == 1 for x in range(n))
    rec.check(injective == all_single,
              {"kind": "injectivity-criterion", "injective": injective,
               "all_singletons": all_single})
    return rec.finish()


# ---------------------------------------------------------------------------
# separation


def verify_separation(ring: FiniteRing, delta: AdditiveMap,
                      config: Optional[CheckerConfig] = None) -> TheoremReport:
    """The given Jordan non-derivation is distinguished from every
    derivation of the ring by some integral value."""
    if delta.ring is not ring:
        raise RingError("map belongs to a different ring")
    if not delta.is_jordan:
        raise MapLawError("map is not a validated Jordan derivation")
    if delta.is_derivation:
        raise MapLawError("map is a derivation")
    rec = _Recorder("separation", ring)
    derivations = enumerate_derivations(ring)
    for i, d in enumerate(derivations):
        found = None
        for x in range(ring.size):
            if integrate(ring, d, x) != jordan_integrate(ring, delta, x):
                found = x
                break
        rec.check(found is not None,
                  {"kind": "indistinguishable",
                   "derivation": [int(v) for v in d.table]})
        if found is not None:
            rec.note({"kind": "separated", "derivation_index": i, "x": found})
    return rec.finish()


def find_jordan_not_derivation(ring: FiniteRing, progress=None) -> Optional[AdditiveMap]:
    """The canonically first Jordan derivation that fails the Leibniz law."""
    for jmap in enumerate_jordan_derivations(ring, progress):
        if not jmap.is_derivation:
            return jmap
    return None


# ---------------------------------------------------------------------------
# herstein


def herstein_check(ring: FiniteRing, config: Optional[CheckerConfig] = None,
                   progress=None) -> TheoremReport:
    """On a 2-torsion-free prime ring, every Jordan derivation satisfies
    the Leibniz law."""
    rec = _Recorder("herstein", ring)
    if not ring.is_n_torsion_free(2):
        return rec.skip("not 2-torsion-free")
    if not ring.is_prime():
        return rec.skip("not prime")
    for jmap in enumerate_jordan_derivations(ring, progress):
        ok, witness = check_derivation(ring, jmap.table)
        rec.check(ok, {"kind": "jordan-not-derivation",
                       "table": [int(v) for v in jmap.table],
                       "pair": witness})
    return rec.finish()


# ---------------------------------------------------------------------------
# run_suite


CHECKER_ORDER = (
    "basic",
    "kernel-constants",
    "coset-structure",
    "kernel-scaling",
    "combination-rules",
    "additivity-parts",
    "power-rules",
    "jordan-suite",
    "separation",
    "herstein",
)

_DERIVATION_CHECKERS = {
    "basic": verify_basic,
    "kernel-constants": verify_kernel_constants,
    "coset-structure": verify_coset_structure,
    "kernel-scaling": verify_kernel_scaling,
    "combination-rules": verify_combination_rules,
    "additivity-parts": verify_additivity_and_parts,
    "power-rules": verify_power_rules,
}


def _skipped(checker: str, ring: FiniteRing, reason: str) -> TheoremReport:
    return TheoremReport(checker, "skipped", reason, 0, [], None, 0.0,
                         ring_spec=spec_to_json(ring.spec))


def _run_checker(ring: FiniteRing, amap: AdditiveMap, checker: str,
                 config: CheckerConfig) -> TheoremReport:
    if checker in _DERIVATION_CHECKERS:
        if not amap.is_derivation:
            return _skipped(checker, ring, "map is not a validated derivation")
        return _DERIVATION_CHECKERS[checker](ring, amap, config)
    if checker == "jordan-suite":
        if not amap.is_jordan:
            return _skipped(checker, ring, "map is not a validated Jordan derivation")
        return verify_jordan_suite(ring, amap, config)
    if checker == "separation":
        if not amap.is_jordan:
            return _skipped(checker, ring, "map is not a validated Jordan derivation")
        if amap.is_derivation:
            return _skipped(checker, ring, "map is a derivation")
        return verify_separation(ring, amap, config)
    raise RingError(f"unknown checker {checker!r}")


def run_suite(ring: FiniteRing, maps: list[tuple[str, AdditiveMap]],
              checkers="all", config: Optional[CheckerConfig] = None,
              jobs: int = 1) -> list[TheoremReport]:
    """Run the selected checkers over each (descriptor, map) pair in the
    fixed order, with the ring-level herstein checker once at the end.
    Results are deterministic regardless of jobs."""
    config = config or CheckerConfig()
    if checkers == "all" or checkers is None:
        selected = list(CHECKER_ORDER)
    else:
        selected = list(checkers)
        unknown = [c for c in selected if c not in CHECKER_ORDER]
        if unknown:
            raise RingError(f"unknown checker ids: {', '.join(unknown)}")

    tasks = []
    for desc, amap in maps:
        for cid in CHECKER_ORDER:
            if cid == "herstein" or cid not in selected:
                continue
            tasks.append((desc, amap, cid))

    def run_one(task):
        desc, amap, cid = task
        report = _run_checker(ring, amap, cid, config)
        report.map_desc = desc
        return report

    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_one, tasks))
    else:
        reports = [run_one(t) for t in tasks]

    if "herstein" in selected:
        report = herstein_check(ring, config)
        report.map_desc = None
        reports.append(report)
    return reports


def suite_status(reports: list[TheoremReport]) -> str:
    return "fail" if any(r.status == "fail" for r in reports) else "pass"
