"""Structural analysis of finite permutation groups.

Small groups (order up to the enumeration cap) are analysed through their
Cayley table; the structural routines (normal closure, derived and power
subgroups, the fixed-point Frobenius test) also work on larger groups.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

import numpy as np
import sympy

from .permcalc import (
    DEFAULT_ENUMERATION_CAP,
    ElementSet,
    EnumerationCapExceeded,
    PermGroup,
    Permutation,
    SubgroupBuilder,
)

DEFAULT_PAIR_SCAN_BOUND = 20_000
DEFAULT_SAMPLE_PAIRS = 20_000
QUOTIENT_INDEX_LIMIT = 10_000

# simple groups of order at most 5000; each order belongs to exactly one of them
# (a classification fact this module assumes rather than checks)
SIMPLE_GROUPS_BY_ORDER = {
    60: "A5",
    168: "PSL(2,7)",
    360: "A6",
    504: "PSL(2,8)",
    660: "PSL(2,11)",
    1092: "PSL(2,13)",
    2448: "PSL(2,17)",
    2520: "A7",
    3420: "PSL(2,19)",
    4080: "PSL(2,16)",
}


class NotTransitiveError(ValueError):
    pass


class NotAbelianError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


def _prime_factors(n: int) -> list[int]:
    return sorted(sympy.factorint(n))


def _is_prime_power(n: int, p: int | None = None) -> bool:
    f = sympy.factorint(n)
    if n == 1:
        return True
    return len(f) == 1 and (p is None or p in f)


# --------------------------------------------------------------------------
# Cayley-table view of a small group


class Cayley:
    """Elements of a small group with multiplication, inverses and orders by index."""

    def __init__(self, group: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP):
        self.group = group
        self.elements: ElementSet = group.enumerate_elements(cap)
        self.n = len(self.elements)
        self.T = self.elements.mul_table()
        self.e = self.elements.index(group.identity())
        self.inv = np.argmax(self.T == self.e, axis=1)
        self.arange = np.arange(self.n)

    @classmethod
    def of(cls, group: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> "Cayley":
        cached = getattr(group, "_cayley", None)
        if cached is None:
            cached = cls(group, cap)
            group._cayley = cached
        return cached

    @cached_property
    def orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        cur = self.arange.copy()
        k = 1
        while True:
            hit = (cur == self.e) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.T[cur, self.arange]
            k += 1

    def perm(self, i: int) -> Permutation:
        return self.elements[int(i)]

    def index(self, w: Permutation) -> int:
        return self.elements.index(w)

    def power(self, xs: np.ndarray, k: int) -> np.ndarray:
        out = np.full(np.shape(xs), self.e)
        for _ in range(k):
            out = self.T[out, xs]
        return out

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        member = np.zeros(self.n, dtype=bool)
        member[self.e] = True
        frontier = np.array([self.e])
        if len(gens) == 0:
            return frontier
        while len(frontier):
            new = np.unique(self.T[frontier][:, gens].ravel())
            new = new[~member[new]]
            member[new] = True
            frontier = new
        return np.flatnonzero(member)

    def generators_of(self, subset: np.ndarray) -> list[int]:
        """A small generating set for the subgroup ``subset``, chosen greedily."""
        gens: list[int] = []
        have = np.zeros(self.n, dtype=bool)
        have[self.e] = True
        # larger orders first keeps the generating sets short
        for i in sorted(subset.tolist(), key=lambda i: (-self.orders[i], i)):
            if not have[i]:
                gens.append(i)
                have[self.closure(gens)] = True
        return gens

    def subgroup(self, subset: np.ndarray) -> PermGroup:
        gens = [self.perm(i) for i in self.generators_of(subset)]
        return PermGroup(gens, self.group.degree)

    def subset_of(self, h: PermGroup) -> np.ndarray:
        return self.closure(self.index(g) for g in h.generators)

    def conj(self, x, g):
        """``g^-1 x g`` on indices (broadcasting)."""
        return self.T[self.T[self.inv[g], x], g]

    def conjugacy_class(self, x: int) -> np.ndarray:
        return np.unique(self.conj(x, self.arange))

    @cached_property
    def classes(self) -> list[np.ndarray]:
        seen = np.zeros(self.n, dtype=bool)
        out = []
        for i in range(self.n):
            if not seen[i]:
                c = self.conjugacy_class(i)
                seen[c] = True
                out.append(c)
        return out

    def centralizer(self, x: int, within: np.ndarray | None = None) -> np.ndarray:
        s = self.arange if within is None else within
        return s[self.T[x, s] == self.T[s, x]]

    def is_abelian(self, s: np.ndarray) -> bool:
        block = self.T[np.ix_(s, s)]
        return bool(np.array_equal(block, block.T))

    def is_normal(self, s: np.ndarray) -> bool:
        member = np.zeros(self.n, dtype=bool)
        member[s] = True
        return bool(member[self.conj(s[:, None], self.arange[None, :])].all())

    def normal_closure(self, seeds: Iterable[int]) -> np.ndarray:
        seeds = list(seeds)
        if not seeds:
            return np.array([self.e])
        conjugates = np.unique(self.conj(np.asarray(seeds)[:, None], self.arange[None, :]))
        return self.closure(conjugates)

    def commutator_subgroup(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        comm = self.T[self.T[self.inv[a][:, None], self.inv[b][None, :]], self.T[a[:, None], b[None, :]]]
        return self.closure(np.unique(comm))

    def exponent(self, s: np.ndarray) -> int:
        return math.lcm(*self.orders[s].tolist())

    def is_cyclic(self, s: np.ndarray) -> bool:
        return bool((self.orders[s] == len(s)).any())

    def nilpotency_class(self, s: np.ndarray, max_class: int = 64) -> int | None:
        """Class of the subgroup ``s`` via its lower central series (None if not nilpotent)."""
        if len(s) == 1:
            return 0
        term = s
        for c in range(1, max_class + 1):
            nxt = self.commutator_subgroup(term, s)
            if len(nxt) == 1:
                return c
            if len(nxt) == len(term):
                return None
            term = nxt
        return None

    def coset_action(self, subgroup: np.ndarray, gens: Sequence[int], within: np.ndarray | None = None) -> PermGroup:
        """Action of ``gens`` by right multiplication on the right cosets of ``subgroup`` in ``within``."""
        within = self.arange if within is None else within
        label = np.full(self.n, -1, dtype=np.int64)
        reps = []
        for g in within.tolist():
            if label[g] < 0:
                label[self.T[subgroup, g]] = len(reps)
                reps.append(g)
        perms = [Permutation([int(label[self.T[r, x]]) for r in reps]) for x in gens]
        return PermGroup(perms, degree=len(reps))


# --------------------------------------------------------------------------
# spectra, classes, distinguished subgroups


@dataclass(frozen=True)
class OrderSpectrum:
    counts: dict[int, int]

    @property
    def order(self) -> int:
        return sum(self.counts.values())

    @property
    def primes(self) -> set[int]:
        """Primes occurring as element orders (the set written pi(G))."""
        return {p for n in self.counts for p in _prime_factors(n)} if self.counts else set()

    def gamma(self, n: int) -> int:
        return self.counts.get(n, 0)


def order_spectrum(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> OrderSpectrum:
    cay = Cayley.of(g, cap)
    vals, counts = np.unique(cay.orders, return_counts=True)
    return OrderSpectrum({int(v): int(c) for v, c in zip(vals, counts)})


def elements_of_order(g: PermGroup, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> ElementSet:
    """The set of elements of order exactly ``n``."""
    cay = Cayley.of(g, cap)
    return ElementSet(cay.elements.rows[cay.orders == n])


def conjugacy_class(g: PermGroup, w: Permutation, cap: int = DEFAULT_ENUMERATION_CAP) -> ElementSet:
    cay = Cayley.of(g, cap)
    return ElementSet(cay.elements.rows[cay.conjugacy_class(cay.index(w))])


def conjugacy_classes(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> list[ElementSet]:
    cay = Cayley.of(g, cap)
    return [ElementSet(cay.elements.rows[c]) for c in cay.classes]


def normal_closure(g: PermGroup, seeds: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of ``g`` containing ``seeds``."""
    n = SubgroupBuilder(g.degree)
    queue = [s for s in seeds if n.add(s)]
    while queue:
        h = queue.pop(0)
        for x in g.generators:
            c = h.conj(x)
            if n.add(c):
                queue.append(c)
    return n.group()


def derived_subgroup(g: PermGroup) -> PermGroup:
    gs = g.generators
    comms = [~a * ~b * a * b for i, a in enumerate(gs) for b in gs[i + 1 :]]
    return normal_closure(g, comms)


def power_subgroup(g: PermGroup, k: int) -> PermGroup:
    """``{n^k : n in g}`` for abelian ``g`` (generated by k-th powers of generators)."""
    if not g.is_abelian():
        raise NotAbelianError("power_subgroup needs an abelian group")
    return PermGroup([x**k for x in g.generators], g.degree)


def exponent_of(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    if g.is_abelian():
        return math.lcm(1, *(x.order() for x in g.generators))
    if g.order() > cap:
        raise EnumerationCapExceeded(g.order(), cap)
    cay = Cayley.of(g, cap)
    return cay.exponent(cay.arange)


def abelian_invariants(g: PermGroup) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ...`` of an abelian group."""
    if not g.is_abelian():
        raise NotAbelianError("abelian_invariants needs an abelian group")
    n = g.order()
    factors: list[int] = []
    for p, e in sympy.factorint(n).items():
        # |G^(p^j)|_p shrinks by p^(number of cyclic factors of order > p^j)
        sizes = []
        j = 0
        while True:
            sub = power_subgroup(g, p**j).order() if j else n
            sizes.append(sympy.multiplicity(p, sub))
            if sizes[-1] == 0:
                break
            j += 1
        at_least = [sizes[j] - sizes[j + 1] for j in range(len(sizes) - 1)]
        parts = []
        for j, cnt in enumerate(at_least):
            more = at_least[j + 1] if j + 1 < len(at_least) else 0
            parts += [p ** (j + 1)] * (cnt - more)
        factors.append(sorted(parts, reverse=True))
    # combine primary parts into invariant factors
    width = max((len(f) for f in factors), default=0)
    inv = [1] * width
    for f in factors:
        for i, q in enumerate(f):
            inv[i] *= q
    return sorted(inv)


def abelian_label(invariants: Sequence[int]) -> str:
    if not invariants:
        return "1"
    return " x ".join(f"C{d}" for d in invariants)


# --------------------------------------------------------------------------
# Frobenius groups


@dataclass
class FrobeniusReport:
    verdict: bool
    kernel: PermGroup | None = None
    complement: PermGroup | None = None
    kernel_order: int | None = None
    complement_order: int | None = None
    witness: dict[str, Any] | None = None

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict}
        if self.kernel_order is not None:
            d["kernel_order"] = self.kernel_order
        if self.complement_order is not None:
            d["complement_order"] = self.complement_order
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def frobenius_check(
    g: PermGroup, stabilizer: PermGroup | None = None, cap: int = DEFAULT_ENUMERATION_CAP
) -> FrobeniusReport:
    """Fixed-point test for a transitive group.

    The group is Frobenius iff the point stabilizer is a proper nontrivial
    subgroup whose non-identity elements fix only the base point.  The kernel
    is then the identity together with the fixed-point-free elements.
    """
    if not g.is_transitive():
        raise NotTransitiveError("frobenius_check needs a transitive group")
    h = stabilizer if stabilizer is not None else g.stabilizer(0)
    point = 0
    if stabilizer is not None:
        fixed = set(range(g.degree))
        for x in h.generators:
            fixed &= set(x.fixed_points().tolist())
        if not fixed:
            raise ValueError("stabilizer fixes no point")
        point = min(fixed)
    order, h_order = g.order(), h.order()
    if h_order == 1:
        return FrobeniusReport(False, complement=h, complement_order=1, witness={"reason": "point stabilizer is trivial"})
    if h_order == order:
        return FrobeniusReport(False, complement=h, complement_order=h_order, witness={"reason": "stabilizer is the whole group"})
    for x in h.enumerate_elements(cap):
        if x.is_identity():
            continue
        fp = x.fixed_points()
        if len(fp) > 1:
            return FrobeniusReport(
                False,
                complement=h,
                complement_order=h_order,
                witness={
                    "reason": "non-identity element fixes at least two points",
                    "element": str(x),
                    "fixed_points": len(fp),
                },
            )
    kernel = _frobenius_kernel(g, h, point, cap)
    if kernel is None:
        return FrobeniusReport(False, complement=h, complement_order=h_order, witness={"reason": "kernel could not be located"})
    k_order = kernel.order()
    return FrobeniusReport(True, kernel, h, k_order, h_order)


def _frobenius_kernel(g: PermGroup, h: PermGroup, point: int, cap: int) -> PermGroup | None:
    n = g.degree
    if g.order() <= cap:
        cay = Cayley.of(g, cap)
        rows = cay.elements.rows
        fpf = np.flatnonzero((rows != np.arange(n)).all(axis=1))
        subset = np.union1d(fpf, [cay.e])
        if len(cay.closure(subset)) != len(subset):
            return None
        kernel = cay.subgroup(subset)
    else:
        # the fixed-point-free generator combinations lie in the kernel
        gs = list(g.generators)
        candidates = [~a * ~b * a * b for a in gs for b in gs] + [a * ~b for a in gs for b in gs] + gs
        seeds = [c for c in candidates if not c.is_identity() and len(c.fixed_points()) == 0]
        if not seeds:
            return None
        kernel = normal_closure(g, seeds)
    # a transitive normal subgroup of order n is regular and meets h trivially
    if kernel.order() * h.order() != g.order() or kernel.order() != n or not kernel.is_transitive():
        return None
    if not kernel.is_normal_in(g):
        return None
    return kernel


def abstract_frobenius_criterion(g: PermGroup, kernel: PermGroup, complement: PermGroup, cap=DEFAULT_ENUMERATION_CAP) -> bool:
    """Check ``C_kernel(h) = 1`` for every non-identity ``h`` in the complement, exhaustively."""
    cay = Cayley.of(g, cap)
    k = cay.subset_of(kernel)
    h = cay.subset_of(complement)
    if len(k) * len(h) != cay.n or len(np.intersect1d(k, h)) != 1 or not cay.is_normal(k):
        return False
    return all(len(cay.centralizer(x, within=k)) == 1 for x in h if x != cay.e)


# --------------------------------------------------------------------------
# identification


def _cyclic_complement(g: PermGroup, kernel: PermGroup) -> Permutation | None:
    """An element generating a complement to the abelian ``kernel`` that acts fixed-point-freely."""
    m = g.order() // kernel.order()
    primes = _prime_factors(m) if m > 1 else []
    gs = list(g.generators)
    candidates = gs + [a * b for a in gs for b in gs] + [a * ~b for a in gs for b in gs]
    for c in candidates:
        if c.order() != m:
            continue
        if any(kernel.is_member(c ** (m // p)) for p in primes):
            continue
        if all(_acts_fixed_point_freely(kernel, c ** (m // p)) for p in primes):
            return c
    return None


def _acts_fixed_point_freely(kernel: PermGroup, h: Permutation) -> bool:
    # on an abelian kernel, k -> k^-1 k^h is a homomorphism; trivial fixed points iff injective
    images = [~k * k.conj(h) for k in kernel.generators]
    return PermGroup(images, kernel.degree).order() == kernel.order()


def _is_simple(g: PermGroup, cap: int) -> bool | None:
    if g.order() == 1:
        return False
    if g.order() > cap:
        return None
    cay = Cayley.of(g, cap)
    for c in cay.classes:
        rep = int(c[0])
        if rep == cay.e:
            continue
        if len(cay.normal_closure([rep])) != cay.n:
            return False
    return True


def _dihedral_label(g: PermGroup, cap: int) -> str | None:
    n = g.order()
    if n < 6 or n % 2 or n > cap:
        return None
    m = n // 2
    cay = Cayley.of(g, cap)
    rots = np.flatnonzero(cay.orders == m)
    if not len(rots):
        return None
    x = int(rots[0])
    cyc = cay.closure([x])
    outside = np.setdiff1d(np.flatnonzero(cay.orders == 2), cyc)
    for y in outside.tolist():
        if cay.conj(x, y) == cay.inv[x]:
            return "S3" if n == 6 else f"D{n}"
    return None


def identify_group(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> str:
    """Name the group using a small decision tree; falls through to ``unrecognized``."""
    n = g.order()
    if n == 1:
        return "1"
    if g.is_abelian():
        return abelian_label(abelian_invariants(g))
    label = _dihedral_label(g, cap)
    if label:
        return label
    k = derived_subgroup(g)
    if k.order() > 1 and k.is_abelian():
        c = _cyclic_complement(g, k)
        if c is not None:
            m = n // k.order()
            return f"({abelian_label(abelian_invariants(k))}) : C{m}"
    simple = _is_simple(g, cap)
    if simple and n in SIMPLE_GROUPS_BY_ORDER:
        return SIMPLE_GROUPS_BY_ORDER[n]
    props = ["simple" if simple else "non-abelian"]
    props.append(f"derived order {k.order()}")
    if n <= cap:
        props.append(f"exponent {exponent_of(g, cap)}")
    return f"unrecognized, order {n} ({', '.join(props)})"


# --------------------------------------------------------------------------
# hypothesis (H) and the structural theorems


@dataclass
class HypothesisReport:
    holds: bool
    holds_subset_reading: bool
    primes: list[int]
    h1_equal: bool
    h1_subset: bool
    h2: bool
    mode: str
    pairs_checked: int
    max_product_order: int
    witness: dict[str, Any] | None = None

    def to_dict(self) -> dict:
        d = {
            "holds": self.holds,
            "holds_subset_reading": self.holds_subset_reading,
            "primes": self.primes,
            "h1_equal": self.h1_equal,
            "h1_subset": self.h1_subset,
            "h2": self.h2,
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "max_product_order": self.max_product_order,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def check_hypothesis_H(
    g: PermGroup,
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
    pair_bound: int = DEFAULT_PAIR_SCAN_BOUND,
    samples: int = DEFAULT_SAMPLE_PAIRS,
    seed: int = 0,
) -> HypothesisReport:
    """Check pi(G) = {2,3} and that products of elements of order <= 4 have order <= 9.

    Exhaustive when the group is enumerable and has at most ``pair_bound``
    elements of order <= 4; otherwise seeded random pairs are tested and the
    mode is reported as ``probabilistic``.
    """
    if g.order() > cap:
        return _check_h_sampled(g, samples, seed)
    cay = Cayley.of(g, cap)
    orders = cay.orders
    primes = sorted(order_spectrum(g, cap).primes)
    small = np.flatnonzero(orders <= 4)
    small = small[np.argsort(orders[small], kind="stable")]
    witness = None
    worst = 1
    if len(small) <= pair_bound:
        mode = "exhaustive"
        checked = 0
        for x in small.tolist():
            prod_orders = orders[cay.T[x, small]]
            checked += len(small)
            worst = max(worst, int(prod_orders.max()))
            if witness is None:
                bad = np.flatnonzero(prod_orders > 9)
                if len(bad):
                    y = int(small[bad[0]])
                    witness = _pair_witness(cay.perm(x), cay.perm(y), int(orders[x]), int(orders[y]), int(prod_orders[bad[0]]))
    else:
        mode = "probabilistic"
        rng = np.random.default_rng(seed)
        xs = small[rng.integers(len(small), size=samples)]
        ys = small[rng.integers(len(small), size=samples)]
        prod_orders = orders[cay.T[xs, ys]]
        checked = samples
        worst = int(prod_orders.max())
        bad = np.flatnonzero(prod_orders > 9)
        if len(bad):
            i = bad[0]
            witness = _pair_witness(cay.perm(xs[i]), cay.perm(ys[i]), int(orders[xs[i]]), int(orders[ys[i]]), int(prod_orders[i]))
    return _h_report(primes, witness is None, mode, checked, worst, witness)


def _pair_witness(x, y, ox, oy, oxy):
    return {"x": str(x), "y": str(y), "order_x": ox, "order_y": oy, "order_xy": oxy}


def _h_report(primes, h2, mode, checked, worst, witness):
    h1_equal = set(primes) == {2, 3}
    h1_subset = set(primes) <= {2, 3}
    return HypothesisReport(h1_equal and h2, h1_subset and h2, primes, h1_equal, h1_subset, h2, mode, checked, worst, witness)


def _check_h_sampled(g: PermGroup, samples: int, seed: int) -> HypothesisReport:
    rng = random.Random(seed)
    # the primes dividing |G| all occur as element orders (Cauchy)
    primes = _prime_factors(g.order())
    pool = []
    tries = 0
    while len(pool) < 64 and tries < 20 * 64:
        x = g.random_element(rng)
        tries += 1
        if x.order() <= 4:
            pool.append(x)
    witness = None
    worst = 1
    checked = 0
    budget = min(samples, 2000)
    for _ in range(budget if pool else 0):
        x, y = rng.choice(pool), rng.choice(pool)
        o = (x * y).order()
        checked += 1
        worst = max(worst, o)
        if o > 9 and witness is None:
            witness = _pair_witness(x, y, x.order(), y.order(), o)
    return _h_report(primes, witness is None, "probabilistic", checked, worst, witness)


@dataclass
class CentralizerReport:
    verdict: bool
    involutions: int
    witness: dict[str, Any] | None = None

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "involutions": self.involutions}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def involution_centralizers_cyclic(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> CentralizerReport:
    """Is ``C_G(a)`` a cyclic 2-group for every involution ``a``?"""
    cay = Cayley.of(g, cap)
    invols = np.flatnonzero(cay.orders == 2)
    for a in invols.tolist():
        c = cay.centralizer(a)
        if not _is_prime_power(len(c), 2):
            reason = "centralizer is not a 2-group"
        elif not cay.is_cyclic(c):
            reason = "centralizer is not cyclic"
        else:
            continue
        return CentralizerReport(False, len(invols), {"involution": str(cay.perm(a)), "centralizer_order": len(c), "reason": reason})
    return CentralizerReport(True, len(invols))


def o_p_subgroup(g: PermGroup, p: int, cap: int = DEFAULT_ENUMERATION_CAP) -> PermGroup:
    """Largest normal p-subgroup."""
    cay = Cayley.of(g, cap)
    return cay.subgroup(_o_p(cay, p))


def _o_p(cay: Cayley, p: int, within: np.ndarray | None = None) -> np.ndarray:
    reps = []
    for c in cay.classes:
        rep = int(c[0])
        if rep != cay.e and _is_prime_power(int(cay.orders[rep]), p):
            ncl = cay.normal_closure([rep])
            if _is_prime_power(len(ncl), p):
                reps.append(rep)
    return cay.normal_closure(reps)


def omega_subgroup(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> PermGroup:
    """Subgroup generated by the elements of prime order."""
    cay = Cayley.of(g, cap)
    s = _omega(cay)
    if not cay.is_normal(s):
        raise AssertionError("omega subgroup is not normal")
    return cay.subgroup(s)


def _omega(cay: Cayley) -> np.ndarray:
    prime_order = [i for i in range(cay.n) if sympy.isprime(int(cay.orders[i]))]
    return cay.closure(prime_order)


def quotient_group(g: PermGroup, n: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> PermGroup:
    """Permutation image of ``g`` acting on the cosets of the normal subgroup ``n``."""
    cay = Cayley.of(g, cap)
    s = cay.subset_of(n)
    if not n.is_subgroup_of(g) or not cay.is_normal(s):
        raise NotNormalError("quotient needs a normal subgroup")
    index = cay.n // len(s)
    if index > QUOTIENT_INDEX_LIMIT:
        raise ValueError(f"index {index} too large for a quotient")
    return cay.coset_action(s, [cay.index(x) for x in g.generators])


@dataclass
class TheoremVerdict:
    applicable: bool
    conclusion_holds: bool
    case: str | None = None
    data: dict[str, Any] = field(default_factory=dict)
    witnesses: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"applicable": self.applicable, "conclusion_holds": self.conclusion_holds}
        if self.case is not None:
            d["case"] = self.case
        d["data"] = self.data
        if self.witnesses:
            d["witnesses"] = self.witnesses
        return d


def _subgroup_label(cay: Cayley, s: np.ndarray) -> str:
    return identify_group(cay.subgroup(s))


def _acts_freely(cay: Cayley, acting: np.ndarray, on: np.ndarray) -> bool:
    return all(len(cay.centralizer(c, within=on)) == 1 for c in acting.tolist() if c != cay.e)


def _complements(cay: Cayley, normal: np.ndarray, size: int, candidates: Iterable[np.ndarray]):
    for c in candidates:
        if len(c) == size and len(np.intersect1d(c, normal)) == 1:
            yield c


def _cyclic_candidates(cay: Cayley, p: int, size: int, first: np.ndarray | None = None):
    """Cyclic p-subgroups of the given size, the preferred one first."""
    if first is not None:
        yield first
    for x in np.flatnonzero(cay.orders == size).tolist():
        if _is_prime_power(size, p):
            yield cay.closure([x])


def theorem1_decompose(g: PermGroup, stabilizer: PermGroup | None = None, cap: int = DEFAULT_ENUMERATION_CAP) -> TheoremVerdict:
    """Check hypotheses and conclusion ``G = O3(G) : C`` with ``C`` cyclic acting regularly."""
    cay = Cayley.of(g, cap)
    h = check_hypothesis_H(g, cap=cap)
    cent = involution_centralizers_cyclic(g, cap)
    witnesses = []
    if not h.holds:
        witnesses.append({"check": "hypothesis H", **(h.witness or {"primes": h.primes})})
    if not cent.verdict:
        witnesses.append({"check": "involution centralizers", **cent.witness})
    applicable = h.holds and cent.verdict
    if not applicable:
        return TheoremVerdict(False, False, witnesses=witnesses)
    o3 = _o_p(cay, 3)
    data: dict[str, Any] = {"order": cay.n, "O3_order": len(o3)}
    o3_abelian = cay.is_abelian(o3)
    o3_exp = cay.exponent(o3)
    data.update(O3_abelian=o3_abelian, O3_exponent=o3_exp, O3=_subgroup_label(cay, o3))
    size = cay.n // len(o3)
    first = cay.subset_of(stabilizer) if stabilizer is not None else None
    complement = None
    for c in _complements(cay, o3, size, _cyclic_candidates(cay, 2, size, first)):
        if _is_prime_power(len(c), 2) and cay.is_cyclic(c) and _acts_freely(cay, c, o3):
            complement = c
            break
    holds = o3_abelian and o3_exp <= 9 and complement is not None
    if complement is not None:
        data.update(C_order=len(complement), C=_subgroup_label(cay, complement), C_acts_regularly=True)
    else:
        witnesses.append({"check": "complement", "reason": f"no cyclic 2-subgroup of order {size} acting regularly on O3"})
    if not o3_abelian or o3_exp > 9:
        witnesses.append({"check": "O3", "abelian": o3_abelian, "exponent": o3_exp})
    return TheoremVerdict(True, holds, data=data, witnesses=witnesses)


def _two_generated_subgroups(cay: Cayley, pool: np.ndarray, size: int):
    seen = set()
    for i, x in enumerate(pool.tolist()):
        for y in pool[i + 1 :].tolist():
            s = cay.closure([x, y])
            if len(s) == size:
                key = s.tobytes()
                if key not in seen:
                    seen.add(key)
                    yield s


def theorem2_classify(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> TheoremVerdict:
    """Match ``g`` against the three shapes allowed for (H)-groups without elements of order 6."""
    cay = Cayley.of(g, cap)
    h = check_hypothesis_H(g, cap=cap)
    witnesses = []
    if not h.holds:
        witnesses.append({"check": "hypothesis H", **(h.witness or {"primes": h.primes})})
    six = np.flatnonzero(cay.orders == 6)
    if len(six):
        witnesses.append({"check": "no element of order 6", "element": str(cay.perm(six[0])), "order": 6})
    if witnesses:
        return TheoremVerdict(False, False, witnesses=witnesses)

    o2, o3 = _o_p(cay, 2), _o_p(cay, 3)
    data: dict[str, Any] = {"order": cay.n, "O2_order": len(o2), "O3_order": len(o3)}
    diagnostics = []

    # case (1): O3 abelian of exponent <= 9, complement cyclic or quaternion of order 8, 16
    size = cay.n // len(o3)
    if len(o3) > 1 and _is_prime_power(size, 2) and cay.is_abelian(o3) and cay.exponent(o3) <= 9:
        twos = np.flatnonzero(np.isin(cay.orders, [2, 4, 8, 16, 32, 64]))
        cands = list(_cyclic_candidates(cay, 2, size))
        for t in _complements(cay, o3, size, cands):
            data.update(O3=_subgroup_label(cay, o3), O3_exponent=cay.exponent(o3), T_order=size, T=_subgroup_label(cay, t), T_shape="cyclic")
            return TheoremVerdict(True, True, "1", data)
        if size in (8, 16):
            for t in _complements(cay, o3, size, _two_generated_subgroups(cay, twos, size)):
                if np.count_nonzero(cay.orders[t] == 2) == 1:
                    data.update(O3=_subgroup_label(cay, o3), O3_exponent=cay.exponent(o3), T_order=size, T=f"Q{size}", T_shape="quaternion")
                    return TheoremVerdict(True, True, "1", data)
        diagnostics.append("case 1: no cyclic or quaternion complement to O3")
    else:
        diagnostics.append("case 1: O3 trivial, not abelian of exponent <= 9, or of non-2-power index")

    # case (2): O2 of class <= 2 and exponent <= 8, R a 3-group with a unique subgroup of order 3 acting freely
    size = cay.n // len(o2)
    if len(o2) > 1 and _is_prime_power(size, 3) and size > 1:
        cls = cay.nilpotency_class(o2)
        exp2 = cay.exponent(o2)
        if cls is not None and cls <= 2 and exp2 <= 8:
            # a 3-group with a unique subgroup of order 3 is cyclic
            for r in _complements(cay, o2, size, _cyclic_candidates(cay, 3, size)):
                if _acts_freely(cay, r, o2):
                    data.update(O2=_subgroup_label(cay, o2), O2_exponent=exp2, O2_class=cls, R_order=size, R=_subgroup_label(cay, r))
                    return TheoremVerdict(True, True, "2", data)
        diagnostics.append("case 2: no 3-complement acting freely on a suitable O2")
    else:
        diagnostics.append("case 2: index of O2 is not a nontrivial power of 3")

    # case (3): O2 of exponent <= 4 and class <= 2, complement dihedral of order 6 or 18
    size = cay.n // len(o2)
    if size in (6, 18):
        cls = cay.nilpotency_class(o2)
        exp2 = cay.exponent(o2)
        if cls is not None and cls <= 2 and exp2 <= 4:
            d = _dihedral_complement(cay, o2, size)
            if d is not None:
                data.update(O2=_subgroup_label(cay, o2), O2_exponent=exp2, O2_class=cls, D_order=size, D=_subgroup_label(cay, d))
                return TheoremVerdict(True, True, "3", data)
        diagnostics.append("case 3: no dihedral complement to a suitable O2")
    else:
        diagnostics.append("case 3: index of O2 is not 6 or 18")
    return TheoremVerdict(True, False, None, data, [{"check": "case match", "diagnostics": diagnostics}])


def _dihedral_complement(cay: Cayley, normal: np.ndarray, size: int) -> np.ndarray | None:
    m = size // 2
    rots = np.flatnonzero(cay.orders == m)
    invols = np.flatnonzero(cay.orders == 2)
    for b in rots.tolist():
        for a in invols.tolist():
            if cay.conj(b, a) != cay.inv[b]:
                continue
            d = cay.closure([a, b])
            if len(d) == size and len(np.intersect1d(d, normal)) == 1:
                return d
    return None


def corollary1_check(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> TheoremVerdict:
    """Exponent of Omega(G) divides 72 and G/Omega(G) has one of the permitted shapes."""
    cay = Cayley.of(g, cap)
    h = check_hypothesis_H(g, cap=cap)
    six = np.flatnonzero(cay.orders == 6)
    applicable = h.holds and not len(six)
    om = _omega(cay)
    exp = cay.exponent(om)
    quotient = cay.coset_action(om, [cay.index(x) for x in g.generators])
    q_order = quotient.order()
    q_label = identify_group(quotient, cap)
    allowed_two = q_label in ("C2 x C2", "D8") or (q_label.startswith("C") and " x " not in q_label)
    if q_order == 1:
        shape = "trivial"
    elif _is_prime_power(q_order, 3):
        shape = "3-group"
    elif _is_prime_power(q_order, 2) and allowed_two:
        shape = "2-group"
    elif q_label == "S3":
        shape = "S3"
    else:
        shape = None
    data = {"Omega_order": len(om), "Omega_exponent": exp, "quotient_order": q_order, "quotient": q_label, "quotient_shape": shape}
    holds = applicable and 72 % exp == 0 and shape is not None
    witnesses = []
    if not h.holds:
        witnesses.append({"check": "hypothesis H", **(h.witness or {"primes": h.primes})})
    if len(six):
        witnesses.append({"check": "no element of order 6", "element": str(cay.perm(six[0])), "order": 6})
    return TheoremVerdict(applicable, holds, data=data, witnesses=witnesses)


# --------------------------------------------------------------------------
# finite content of the lemmas


def involution_products(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[str, Any]:
    """Conjugacy of involutions and the orders of their pairwise products."""
    cay = Cayley.of(g, cap)
    invols = np.flatnonzero(cay.orders == 2)
    if not len(invols):
        return {"involutions": 0, "single_class": True, "product_orders": []}
    cls = cay.conjugacy_class(int(invols[0]))
    prods = cay.T[np.ix_(invols, invols)]
    return {
        "involutions": len(invols),
        "single_class": bool(np.array_equal(cls, invols)),
        "product_orders": sorted(set(cay.orders[prods].ravel().tolist())),
    }


def theta_partition(g: PermGroup, t: Permutation | None = None, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[str, Any]:
    """Class of an order-4 element, its inverses, and how they cover the order-4 elements."""
    cay = Cayley.of(g, cap)
    fours = np.flatnonzero(cay.orders == 4)
    ti = cay.index(t) if t is not None else int(fours[0])
    theta = cay.conjugacy_class(ti)
    theta_inv = np.unique(cay.inv[theta])
    return {
        "theta": theta,
        "theta_inv": theta_inv,
        "gamma4": fours,
        "disjoint": len(np.intersect1d(theta, theta_inv)) == 0,
        "covers": bool(np.array_equal(np.union1d(theta, theta_inv), fours)),
    }


def lemma6_identities(g: PermGroup, theta: np.ndarray, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[str, Any]:
    """Check (tu)^2 = (tu^-1)^9 = (tu^2)^4 = 1 for all t, u in ``theta``."""
    cay = Cayley.of(g, cap)
    t, u = theta[:, None], theta[None, :]
    tu = cay.T[t, u]
    tu_inv = cay.T[t, cay.inv[u]]
    tu2 = cay.T[t, cay.T[u, u]]
    ok2 = cay.power(tu, 2) == cay.e
    ok9 = cay.power(tu_inv, 9) == cay.e
    ok4 = cay.power(tu2, 4) == cay.e
    return {
        "pairs": int(tu.size),
        "square": bool(ok2.all()),
        "ninth": bool(ok9.all()),
        "fourth": bool(ok4.all()),
        "failures": int((~(ok2 & ok9 & ok4)).sum()),
    }


def involution_subgroup(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[str, Any]:
    """Structure of the subgroup generated by all involutions."""
    cay = Cayley.of(g, cap)
    invols = np.flatnonzero(cay.orders == 2)
    r = cay.closure(invols)
    o3 = _o_p_within(cay, r, 3)
    split_all = all(
        len(np.intersect1d(o3, [a])) == 0 and len(o3) * 2 == len(r) for a in invols.tolist()
    )
    a = int(invols[0]) if len(invols) else cay.e
    action = cay.coset_action(np.array(sorted({cay.e, a})), cay.generators_of(r), within=r)
    frob = frobenius_check(action, cap=cap)
    return {
        "order": len(r),
        "O3_order": len(o3),
        "O3_abelian": cay.is_abelian(o3),
        "O3_exponent": cay.exponent(o3),
        "split_over_every_involution": split_all,
        "frobenius": frob.verdict,
        "frobenius_kernel_order": frob.kernel_order,
        "free_action": _acts_freely(cay, np.array([cay.e, a]), o3),
        "label": _subgroup_label(cay, r),
    }


def _o_p_within(cay: Cayley, s: np.ndarray, p: int) -> np.ndarray:
    """Largest normal p-subgroup of the subgroup ``s``, via the group's table."""
    sub = cay.subgroup(s)
    inner = Cayley.of(sub)
    local = _o_p(inner, p)
    return np.sort(np.array([cay.index(inner.perm(i)) for i in local]))


def three_centralizers(g: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[str, Any]:
    """For order-3 elements inverted by an involution: is the centralizer abelian of exponent <= 9, inverted by it?"""
    cay = Cayley.of(g, cap)
    threes = np.flatnonzero(cay.orders == 3)
    invols = np.flatnonzero(cay.orders == 2)
    checked = 0
    ok = True
    for x in threes.tolist():
        inverters = [a for a in invols.tolist() if cay.conj(x, a) == cay.inv[x]]
        if not inverters:
            continue
        c = cay.centralizer(x)
        a = inverters[0]
        checked += 1
        good = (
            _is_prime_power(len(c), 3)
            and cay.is_abelian(c)
            and cay.exponent(c) <= 9
            and bool(np.array_equal(cay.conj(c, a), cay.inv[c]))
        )
        ok = ok and good
    return {"checked": checked, "holds": ok}
