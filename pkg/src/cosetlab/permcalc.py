"""Permutation groups: deterministic Schreier-Sims, membership, enumeration.

Permutations act on the right: ``p^(g*h) = (p^g)^h``.  Points are 0-based.
"""

from __future__ import annotations

import math
import random
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ENUMERATION_CAP = 5000

_INDEX = np.int64


class EnumerationCapExceeded(ValueError):
    """Raised when a group is too large to list element by element."""

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"group order {order} exceeds enumeration cap {cap}; use structural methods")


class Permutation:
    __slots__ = ("_a", "_key")

    def __init__(self, images: Iterable[int]):
        a = np.array(list(images) if not isinstance(images, np.ndarray) else images, dtype=_INDEX)
        if a.ndim != 1 or not np.array_equal(np.sort(a), np.arange(len(a))):
            raise ValueError("images do not form a permutation")
        self._a = a
        self._a.setflags(write=False)
        self._key = None

    @classmethod
    def _raw(cls, a: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        a.setflags(write=False)
        p._a = a
        p._key = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(np.arange(n, dtype=_INDEX))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        a = np.arange(n, dtype=_INDEX)
        for cyc in cycles:
            for i, p in enumerate(cyc):
                a[p] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self._a.tolist())

    def __call__(self, point: int) -> int:
        return int(self._a[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation._raw(other._a[self._a])

    def __invert__(self) -> "Permutation":
        inv = np.empty_like(self._a)
        inv[self._a] = np.arange(len(self._a), dtype=_INDEX)
        return Permutation._raw(inv)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else ~self
        k = abs(k)
        out = np.arange(self.degree, dtype=_INDEX)
        b = base._a
        while k:
            if k & 1:
                out = b[out]
            b = b[b]
            k >>= 1
        return Permutation._raw(out)

    def conj(self, g: "Permutation") -> "Permutation":
        """``g^-1 self g``."""
        return ~g * self * g

    def _bytes(self) -> bytes:
        if self._key is None:
            self._key = self._a.tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._bytes() == other._bytes()

    def __hash__(self) -> int:
        return hash(self._bytes())

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(len(self._a))))

    def fixed_points(self) -> np.ndarray:
        return np.flatnonzero(self._a == np.arange(len(self._a)))

    def cycles(self) -> list[tuple[int, ...]]:
        a = self._a.tolist()
        seen = [False] * len(a)
        out = []
        for i in range(len(a)):
            if seen[i] or a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = a[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return element_order(self)

    def __str__(self) -> str:
        cs = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cs) if cs else "()"

    def __repr__(self) -> str:
        return f"Permutation({self})"


def element_order(w: Permutation) -> int:
    """Least ``k >= 1`` with ``w^k = 1``: the lcm of the cycle lengths."""
    a = w.array.tolist()
    seen = bytearray(len(a))
    k = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            n += 1
        k = math.lcm(k, n)
    return k


# explicit inverse transversals are cached while they fit in this many bytes
TRANSVERSAL_CACHE_BYTES = 256 * 2**20


class _Level:
    """One step of the stabilizer chain, with a Schreier vector for the orbit.

    Inverse coset representatives are also cached row by row while the
    memory budget allows; beyond that they are recomputed from the vector.
    """

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.invs: list[np.ndarray] = []
        # label[p] = index of the generator that first reached p, -2 at the base point
        self.label = np.full(degree, -1, dtype=np.int32)
        self.label[point] = -2
        self.orbit = [point]
        dtype = np.int16 if degree < 2**15 else np.int32
        self._cache_limit = TRANSVERSAL_CACHE_BYTES // (degree * np.dtype(dtype).itemsize)
        self._pos = np.full(degree, -1, dtype=np.int64)
        self._pos[point] = 0
        self._uinv: list[np.ndarray] | None = [np.arange(degree, dtype=dtype)]

    def add_gen(self, g: np.ndarray) -> None:
        inv = np.empty_like(g)
        inv[g] = np.arange(len(g), dtype=_INDEX)
        self.gens.append(g)
        self.invs.append(inv)
        label = self.label
        # existing tree entries are never relabelled, so transversals stay stable
        k = len(self.gens) - 1
        frontier = []
        for p in self.orbit:
            q = int(g[p])
            if label[q] == -1:
                label[q] = k
                frontier.append(q)
        i = 0
        while i < len(frontier):
            p = frontier[i]
            i += 1
            for s, h in enumerate(self.gens):
                q = int(h[p])
                if label[q] == -1:
                    label[q] = s
                    frontier.append(q)
        for q in frontier:
            self._pos[q] = len(self.orbit)
            self.orbit.append(q)
        self._extend_cache()

    def _extend_cache(self) -> None:
        rows = self._uinv
        if rows is None:
            return
        if len(self.orbit) > self._cache_limit:
            self._uinv = None
            return
        for p in self.orbit[len(rows):]:
            s = self.label[p]
            prev = int(self.invs[s][p])
            # u_p = u_prev * s, so u_p^-1 = s^-1 * u_prev^-1
            rows.append(rows[self._pos[prev]][self.invs[s]])

    def __contains__(self, p: int) -> bool:
        return self.label[p] != -1

    def strip_step(self, h: np.ndarray, beta: int) -> np.ndarray:
        """``h * u_beta^-1`` where ``u_beta`` maps the base point to ``beta``."""
        if self._uinv is not None:
            return self._uinv[self._pos[beta]][h].astype(_INDEX)
        label = self.label
        while True:
            s = label[beta]
            if s == -2:
                return h
            inv = self.invs[s]
            h = inv[h]
            beta = int(inv[beta])

    def transversal(self, beta: int) -> np.ndarray:
        if self._uinv is not None:
            u = np.empty(len(self.label), dtype=_INDEX)
            u[self._uinv[self._pos[beta]]] = np.arange(len(self.label), dtype=_INDEX)
            return u
        path = []
        label = self.label
        while label[beta] != -2:
            s = label[beta]
            path.append(s)
            beta = int(self.invs[s][beta])
        u = np.arange(len(label), dtype=_INDEX)
        for s in reversed(path):
            u = self.gens[s][u]
        return u

    def all_transversals(self) -> list[np.ndarray]:
        """Coset representatives in orbit order (first is the identity)."""
        u = {self.point: np.arange(len(self.label), dtype=_INDEX)}
        out = []
        for p in self.orbit:
            if p not in u:
                s = self.label[p]
                prev = int(self.invs[s][p])
                u[p] = self.gens[s][u[prev]]
            out.append(u[p])
        return out


class _StabChain:
    """Deterministic Schreier-Sims, extended one generator at a time."""

    def __init__(self, degree: int, base: Sequence[int] = ()):
        self.degree = degree
        self.ident = np.arange(degree, dtype=_INDEX)
        self.levels: list[_Level] = [_Level(b, degree) for b in base]
        # tested[i] holds (orbit position, generator index) pairs already sifted
        self.tested: list[set] = [set() for _ in self.levels]

    def strip(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            beta = int(h[lv.point])
            if beta not in lv:
                return h, j
            h = lv.strip_step(h, beta)
        return h, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        y, j = self.strip(g)
        return j == len(self.levels) and bool(np.array_equal(y, self.ident))

    def _add_strong(self, y: np.ndarray, start: int, j: int) -> None:
        if j == len(self.levels):
            moved = np.flatnonzero(y != self.ident)
            self.levels.append(_Level(int(moved[0]), self.degree))
            self.tested.append(set())
        for lv in self.levels[start : j + 1]:
            lv.add_gen(y)

    def extend(self, g: np.ndarray) -> bool:
        """Add ``g`` to the group; returns False if it was already a member."""
        y, j = self.strip(g)
        if j == len(self.levels) and np.array_equal(y, self.ident):
            return False
        self._add_strong(y, 0, j)
        self._complete(j)
        return True

    def _complete(self, i: int) -> None:
        levels = self.levels
        while i >= 0:
            lv = levels[i]
            tested = self.tested[i]
            found = None
            for pos, gamma in enumerate(lv.orbit):
                for s in range(len(lv.gens)):
                    if (pos, s) in tested:
                        continue
                    tested.add((pos, s))
                    h = lv.gens[s][lv.transversal(gamma)]
                    h = lv.strip_step(h, int(h[lv.point]))
                    y, j = self.strip(h, i + 1)
                    if not np.array_equal(y, self.ident):
                        found = (y, j)
                        break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            y, j = found
            self._add_strong(y, i + 1, j)
            i = j


class PermGroup:
    """Group generated by permutations of ``0..degree-1``.

    The base and strong generating set are built on first use.  ``base`` may
    prescribe leading base points; further points are chosen as the smallest
    point moved by a new strong generator.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None, base: Sequence[int] = ()):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators must share the group's degree")
        self.degree = degree
        self.generators = gens
        self._base_prefix = tuple(base)
        self._elements = None

    def __repr__(self) -> str:
        gens = ", ".join(map(str, self.generators))
        return f"PermGroup(degree={self.degree}, order={self.order()}, generators=[{gens}])"

    # -- stabilizer chain ------------------------------------------------------

    @cached_property
    def _stab_chain(self) -> _StabChain:
        chain = _StabChain(self.degree, self._base_prefix)
        for p in self.generators:
            chain.extend(p.array)
        return chain

    @property
    def _chain(self) -> list[_Level]:
        return self._stab_chain.levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._chain]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for lv in self._chain:
            for g in lv.gens:
                seen.setdefault(g.tobytes(), g)
        return [Permutation._raw(g.copy()) for g in seen.values()]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lv.orbit) for lv in self._chain]

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    def is_member(self, w: Permutation) -> bool:
        if w.degree != self.degree:
            raise ValueError("degree mismatch")
        return self._stab_chain.contains(w.array)

    __contains__ = is_member

    def stabilizer(self, point: int) -> "PermGroup":
        """Point stabilizer, read off a chain whose first base point is ``point``."""
        chain = self._chain
        if not chain or chain[0].point != point:
            chain = PermGroup(self.generators, self.degree, base=(point,))._chain
            if chain[0].point != point:
                raise AssertionError("prescribed base point was not used")
        gens = [Permutation._raw(g.copy()) for g in chain[1].gens] if len(chain) > 1 else []
        return PermGroup(gens, self.degree)

    # -- elementary queries ------------------------------------------------

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        frontier = [point]
        arrays = [g.array for g in self.generators]
        while frontier:
            p = frontier.pop()
            for g in arrays:
                q = int(g[p])
                if q not in seen:
                    seen.add(q)
                    frontier.append(q)
        return seen

    def orbits(self) -> list[set[int]]:
        out = []
        seen: set[int] = set()
        for p in range(self.degree):
            if p not in seen:
                o = self.orbit(p)
                seen |= o
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1 :])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.is_member(g) for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(
            self.is_member(h.conj(g)) for h in self.generators for g in other.generators
        )

    def subgroup(self, gens: Iterable[Permutation]) -> "PermGroup":
        return PermGroup(list(gens), self.degree)

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniformly distributed element, as a product of random coset representatives."""
        g = np.arange(self.degree, dtype=_INDEX)
        for lv in reversed(self._chain):
            u = lv.transversal(lv.orbit[rng.randrange(len(lv.orbit))])
            g = u[g]
        return Permutation._raw(g)

    # -- enumeration -----------------------------------------------------------

    def enumerate_elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> "ElementSet":
        order = self.order()
        if order > cap:
            raise EnumerationCapExceeded(order, cap)
        if self._elements is None:
            rows = np.arange(self.degree, dtype=_INDEX)[None, :]
            for lv in reversed(self._chain):
                us = lv.all_transversals()
                rows = np.concatenate([u[rows] for u in us], axis=0)
            self._elements = ElementSet(rows, base=tuple(self.base))
        return self._elements

    def elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> "ElementSet":
        return self.enumerate_elements(cap)


class SubgroupBuilder:
    """Grow a group one generator at a time without rebuilding its chain."""

    def __init__(self, degree: int):
        self.degree = degree
        self.generators: list[Permutation] = []
        self._chain = _StabChain(degree)

    def add(self, g: Permutation) -> bool:
        """Add ``g``; returns False (and keeps the generators) if it was already a member."""
        if g.is_identity() or not self._chain.extend(g.array):
            return False
        self.generators.append(g)
        return True

    def __contains__(self, g: Permutation) -> bool:
        return self._chain.contains(g.array)

    def order(self) -> int:
        return math.prod(len(lv.orbit) for lv in self._chain.levels)

    def group(self) -> PermGroup:
        """Snapshot as a PermGroup; the builder must not be extended afterwards."""
        g = PermGroup(self.generators, self.degree)
        g.__dict__["_stab_chain"] = self._chain
        return g


class ElementSet:
    """Distinct permutations held as rows of an array, sorted lexicographically."""

    def __init__(self, rows: np.ndarray, base: Sequence[int] | None = None):
        rows = np.asarray(rows, dtype=_INDEX)
        if rows.ndim != 2:
            raise ValueError("rows must be two-dimensional")
        if len(rows):
            order = np.lexsort(rows.T[::-1])
            rows = rows[order]
            if len(rows) > 1 and np.any(np.all(rows[1:] == rows[:-1], axis=1)):
                raise ValueError("duplicate elements")
        rows.setflags(write=False)
        self.rows = rows
        self.base = tuple(base) if base is not None else None
        self._index: dict[bytes, int] | None = None
        self._table = None

    @classmethod
    def from_perms(cls, perms: Iterable[Permutation], degree: int) -> "ElementSet":
        uniq = {p: None for p in perms}
        rows = np.array([p.array for p in uniq], dtype=_INDEX).reshape(len(uniq), degree)
        return cls(rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> Permutation:
        return Permutation._raw(self.rows[i].copy())

    def __iter__(self) -> Iterator[Permutation]:
        return (self[i] for i in range(len(self)))

    def index(self, w: Permutation) -> int:
        if self._index is None:
            self._index = {r.tobytes(): i for i, r in enumerate(self.rows)}
        return self._index[w.array.tobytes()]

    def __contains__(self, w: Permutation) -> bool:
        try:
            self.index(w)
        except KeyError:
            return False
        return True

    def perms(self) -> list[Permutation]:
        return list(self)

    # -- Cayley table ------------------------------------------------------

    def mul_table(self) -> np.ndarray:
        """``T[i, j]`` is the index of ``self[i] * self[j]``; needs a closed set with a base."""
        if self._table is None:
            if self.base is None:
                raise ValueError("a base is needed to identify products")
            rows = self.rows
            n, d = rows.shape
            base = np.array(self.base, dtype=_INDEX)
            if len(base) == 0:
                self._table = np.zeros((n, n), dtype=_INDEX)
                return self._table
            radix = d ** np.arange(len(base), dtype=object)
            if d ** len(base) >= 2**62:
                raise ValueError("base images too large to encode")
            radix = np.array(radix.tolist(), dtype=_INDEX)
            keys = rows[:, base] @ radix
            sorter = np.argsort(keys)
            skeys = keys[sorter]
            table = np.empty((n, n), dtype=_INDEX)
            bimg = rows[:, base]
            chunk = max(1, 2_000_000 // max(1, n * len(base)))
            for start in range(0, n, chunk):
                stop = min(n, start + chunk)
                # (e_i * e_j)[b] = e_j[e_i[b]]
                prod = rows[np.arange(n)[None, :, None], bimg[start:stop][:, None, :]]
                k = prod @ radix
                pos = np.searchsorted(skeys, k)
                table[start:stop] = sorter[pos]
            self._table = table
        return self._table


def cyclic_group(n: int) -> PermGroup:
    """Regular cyclic group of order ``n``."""
    return PermGroup([Permutation([(i + 1) % n for i in range(n)])], degree=n)


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], degree=max(n, 1))
    gens = [Permutation.from_cycles(n, tuple(range(n)))]
    gens.append(Permutation.from_cycles(n, (0, 1)))
    return PermGroup(gens, degree=n)


def dihedral_group(n: int) -> PermGroup:
    """``D_2n`` acting on the vertices of an n-gon (``n >= 3``) or regularly for ``n <= 2``."""
    if n <= 2:
        m = 2 * n
        # regular action on the group elements a^e b^f
        if n == 1:
            return PermGroup([Permutation([1, 0]), Permutation([1, 0])], degree=2)
        return PermGroup([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])], degree=m)
    a = Permutation([(-i) % n for i in range(n)])
    b = Permutation([(1 - i) % n for i in range(n)])
    return PermGroup([a, b], degree=n)


def direct_product(*groups: PermGroup) -> PermGroup:
    offset = 0
    total = sum(g.degree for g in groups)
    gens = []
    for g in groups:
        for p in g.generators:
            a = np.arange(total, dtype=_INDEX)
            a[offset : offset + g.degree] = p.array + offset
            gens.append(Permutation(a))
        offset += g.degree
    return PermGroup(gens, degree=total)


def sl2_3() -> PermGroup:
    """SL(2,3) acting on the 8 nonzero vectors of GF(3)^2."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    where = {v: i for i, v in enumerate(vecs)}

    def act(m):
        (p, q), (r, s) = m
        return Permutation([where[((x * p + y * r) % 3, (x * q + y * s) % 3)] for x, y in vecs])

    return PermGroup([act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))], degree=8)
