"""Todd-Coxeter coset enumeration (HLT and Felsch strategies).

Cosets are numbered from 1; coset 1 is the subgroup itself.  Columns come in
pairs, ``2*i`` for generator ``i`` and ``2*i + 1`` for its inverse, and 0 marks
an undefined entry.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .presentation import Presentation, SubgroupSpec, Word, cyclically_reduce

log = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 1_000_000


class Status(str, enum.Enum):
    COMPLETED = "completed"
    EXCEEDED = "exceeded-max-cosets"
    ABORTED = "aborted"


class Strategy(str, enum.Enum):
    HLT = "hlt"
    FELSCH = "felsch"


class IncompleteTableError(ValueError):
    pass


@dataclass(frozen=True)
class CosetTable:
    """Action table of the generators on cosets.

    ``rows[i]`` describes coset ``i + 1``; entry ``rows[i][col]`` is the image
    coset (1-based) or 0.
    """

    rank: int
    rows: tuple[tuple[int, ...], ...]
    alive: tuple[bool, ...] = ()
    definitions: int = 0
    max_live: int = 0

    def __post_init__(self):
        if not self.alive:
            object.__setattr__(self, "alive", (True,) * len(self.rows))

    @property
    def ncols(self) -> int:
        return 2 * self.rank

    @property
    def size(self) -> int:
        return len(self.rows)

    def image(self, coset: int, col: int) -> int:
        return self.rows[coset - 1][col]

    @property
    def is_complete(self) -> bool:
        return all(self.alive) and all(all(r) for r in self.rows)

    def trace(self, coset: int, w: Word) -> int:
        """Image of ``coset`` under ``w`` (0 if the trace hits an undefined entry)."""
        c = coset
        for a in w:
            c = self.rows[c - 1][_col(a)]
            if c == 0:
                return 0
        return c

    def dump(self) -> str:
        lines = [f"cosets={self.size} generators={self.rank}"]
        lines += [" ".join(map(str, r)) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "CosetTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(kv.split("=") for kv in lines[0].split())
        n, k = int(head["cosets"]), int(head["generators"])
        rows = tuple(tuple(int(v) for v in ln.split()) for ln in lines[1 : n + 1])
        if len(rows) != n or any(len(r) != 2 * k for r in rows):
            raise ValueError("table dump does not match its header")
        return cls(k, rows)

    def relabel(self, perm: Sequence[int]) -> "CosetTable":
        """Rename coset ``c`` to ``perm[c - 1]`` (a permutation of 1..N)."""
        n = self.size
        new = [None] * n
        for c, row in enumerate(self.rows, 1):
            new[perm[c - 1] - 1] = tuple(perm[d - 1] if d else 0 for d in row)
        return CosetTable(self.rank, tuple(new), definitions=self.definitions, max_live=self.max_live)


@dataclass(frozen=True)
class EnumerationStats:
    definitions: int = 0
    coincidences: int = 0
    max_live: int = 0


@dataclass(frozen=True)
class EnumerationResult:
    status: Status
    table: CosetTable
    stats: EnumerationStats = field(default_factory=EnumerationStats)
    strategy: Strategy = Strategy.HLT

    @property
    def completed(self) -> bool:
        return self.status is Status.COMPLETED

    @property
    def index(self) -> int | None:
        return self.table.size if self.completed else None


def _col(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def _relator_columns(p: Presentation) -> list[list[int]]:
    """Cyclically reduced relators, one per class of rotations and inverses."""
    seen = set()
    out = []
    for r in p.relators:
        r = cyclically_reduce(r)
        if not r:
            continue
        letters = r.letters
        inv = tuple(-a for a in reversed(letters))
        key = min(
            min(letters[i:] + letters[:i] for i in range(len(letters))),
            min(inv[i:] + inv[:i] for i in range(len(inv))),
        )
        if key in seen:
            continue
        seen.add(key)
        out.append([_col(a) for a in letters])
    # short relators first: they close cosets quickly
    out.sort(key=len)
    return out


class _Enumeration:
    def __init__(self, p: Presentation, h: SubgroupSpec, max_cosets: int):
        self.rank = p.rank
        self.ncols = 2 * p.rank
        self.relators = _relator_columns(p)
        self.subgens = [[_col(a) for a in w] for w in h.generators if w]
        self.max_cosets = max_cosets
        # row 0 is a dummy so coset numbers index directly
        self.table: list[list[int]] = [[0] * self.ncols, [0] * self.ncols]
        self.parent: list[int] = [0, 1]
        self.live = 1
        self.max_live = 1
        self.definitions = 0
        self.coincidences = 0
        self.deductions: list[tuple[int, int]] | None = None

    # -- primitive steps ---------------------------------------------------

    def new_coset(self) -> int:
        if self.live >= self.max_cosets:
            raise _Exhausted
        d = len(self.table)
        self.table.append([0] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.definitions += 1
        if self.live > self.max_live:
            self.max_live = self.live
        return d

    def define(self, c: int, x: int) -> int:
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        if self.deductions is not None:
            self.deductions.append((c, x))
        return d

    def rep(self, c: int) -> int:
        parent = self.parent
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k = self.rep(k)
        l = self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        rep = self.rep
        deductions = self.deductions
        queue: list[int] = []
        self.coincidences += 1
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row_e = table[e]
            for x in range(self.ncols):
                f = row_e[x]
                if not f:
                    continue
                xi = x ^ 1
                table[f][xi] = 0
                e1 = rep(e)
                f1 = rep(f)
                g = table[e1][x]
                if g:
                    self._merge(f1, g, queue)
                else:
                    g = table[f1][xi]
                    if g:
                        self._merge(e1, g, queue)
                    else:
                        table[e1][x] = f1
                        table[f1][xi] = e1
                        if deductions is not None:
                            deductions.append((e1, x))

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        table = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            row = table[f]
            while i <= j and row[w[i]]:
                f = row[w[i]]
                row = table[f]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            row = table[b]
            while j >= i and row[w[j] ^ 1]:
                b = row[w[j] ^ 1]
                row = table[b]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                if self.deductions is not None:
                    self.deductions.append((f, w[i]))
                return
            self.define(f, w[i])

    def scan(self, c: int, w: list[int]) -> None:
        """Scan without defining: deduce on a single gap, merge on closure."""
        table = self.table
        f = b = c
        i, j = 0, len(w) - 1
        row = table[f]
        while i <= j and row[w[i]]:
            f = row[w[i]]
            row = table[f]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        row = table[b]
        while j >= i and row[w[j] ^ 1]:
            b = row[w[j] ^ 1]
            row = table[b]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][w[i]] = b
            table[b][w[i] ^ 1] = f
            self.deductions.append((f, w[i]))

    # -- compaction ----------------------------------------------------------

    def maybe_compact(self, c: int) -> int:
        """Drop dead rows if they are the majority; returns the remapped ``c``."""
        n = len(self.table) - 1
        if n - self.live <= n // 2:
            return c
        parent = self.parent
        mapping = [0] * (n + 1)
        k = 0
        for old in range(1, n + 1):
            if parent[old] == old:
                k += 1
                mapping[old] = k
        new_table = [[0] * self.ncols]
        for old in range(1, n + 1):
            if parent[old] == old:
                new_table.append([mapping[self.rep(d)] if d else 0 for d in self.table[old]])
        self.table = new_table
        self.parent = list(range(k + 1))
        # c itself may be dead: continue from the next live row after it
        return sum(1 for old in range(1, c) if mapping[old]) + 1

    # -- strategies ----------------------------------------------------------

    def run_hlt(self) -> None:
        for w in self.subgens:
            self.scan_and_fill(1, w)
        c = 1
        while c < len(self.table):
            c = self.maybe_compact(c)
            if c >= len(self.table):
                break
            if self.parent[c] == c:
                for w in self.relators:
                    self.scan_and_fill(c, w)
                    if self.parent[c] != c:
                        break
                else:
                    row = self.table[c]
                    for x in range(self.ncols):
                        if not row[x]:
                            self.define(c, x)
            c += 1

    def process_deductions(self) -> None:
        deductions = self.deductions
        by_col = self.rotations
        while deductions:
            c, x = deductions.pop()
            if self.parent[c] != c:
                continue
            for w in by_col[x]:
                self.scan(c, w)
                if self.parent[c] != c:
                    break
            c = self.rep(c)
            d = self.table[c][x]
            if d and self.parent[d] == d:
                for w in by_col[x ^ 1]:
                    self.scan(d, w)
                    if self.parent[d] != d:
                        break

    def run_felsch(self) -> None:
        self.deductions = []
        rotations: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for w in self.relators:
            inv = [x ^ 1 for x in reversed(w)]
            for base in (w, inv):
                for i in range(len(base)):
                    rot = tuple(base[i:] + base[:i])
                    if rot not in seen:
                        seen.add(rot)
                        rotations[rot[0]].append(list(rot))
        self.rotations = rotations
        for w in self.subgens:
            self.scan_and_fill(1, w)
            self.process_deductions()
        c = 1
        while c < len(self.table):
            if not self.deductions:
                c = self.maybe_compact(c)
                if c >= len(self.table):
                    break
            for x in range(self.ncols):
                if self.parent[c] != c:
                    break
                if not self.table[c][x]:
                    self.define(c, x)
                    self.process_deductions()
            c += 1

    # -- output --------------------------------------------------------------

    def live_table(self, *, complete: bool) -> CosetTable:
        n = len(self.table) - 1
        parent = self.parent
        mapping = [0] * (n + 1)
        k = 0
        for old in range(1, n + 1):
            if parent[old] == old:
                k += 1
                mapping[old] = k
        rows = tuple(
            tuple(mapping[self.rep(d)] if d else 0 for d in self.table[old])
            for old in range(1, n + 1)
            if parent[old] == old
        )
        return CosetTable(self.rank, rows, definitions=self.definitions, max_live=self.max_live)


class _Exhausted(Exception):
    pass


def enumerate_cosets(
    p: Presentation,
    h: SubgroupSpec | Sequence[Word] = (),
    *,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
) -> EnumerationResult:
    """Enumerate the cosets of ``<h>`` in the group presented by ``p``."""
    if not isinstance(h, SubgroupSpec):
        h = SubgroupSpec(tuple(h))
    h.validate(p)
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    strategy = Strategy(strategy)
    e = _Enumeration(p, h, max_cosets)
    status = Status.COMPLETED
    try:
        if strategy is Strategy.HLT:
            e.run_hlt()
        else:
            e.run_felsch()
    except _Exhausted:
        status = Status.EXCEEDED
    table = e.live_table(complete=status is Status.COMPLETED)
    stats = EnumerationStats(e.definitions, e.coincidences, e.max_live)
    log.debug("enumeration %s: %s, %d live, %s", p.name, status.value, table.size, stats)
    if status is Status.COMPLETED:
        table = standardize_table(table)
    return EnumerationResult(status, table, stats, strategy)


def standardize_table(t: CosetTable) -> CosetTable:
    """Renumber cosets in order of first appearance scanning rows then columns."""
    if not t.is_complete:
        raise IncompleteTableError("only complete tables can be standardized")
    order = [0] * (t.size + 1)
    order[1] = 1
    queue = [1]
    nxt = 2
    i = 0
    while i < len(queue):
        c = queue[i]
        i += 1
        for d in t.rows[c - 1]:
            if not order[d]:
                order[d] = nxt
                nxt += 1
                queue.append(d)
    if nxt != t.size + 1:
        raise IncompleteTableError("table is not connected from coset 1")
    return t.relabel(order[1:])


def check_table(t: CosetTable, p: Presentation, h: SubgroupSpec | Sequence[Word] = ()) -> list[str]:
    """Return a list of violated coset-table properties (empty when sound)."""
    problems = []
    gens = h.generators if isinstance(h, SubgroupSpec) else tuple(h)
    if not t.is_complete:
        return ["table is not complete"]
    n = t.size
    for x in range(t.ncols):
        col = [r[x] for r in t.rows]
        if sorted(col) != list(range(1, n + 1)):
            problems.append(f"column {x} is not a bijection")
            continue
        inv = [r[x ^ 1] for r in t.rows]
        if any(inv[col[c] - 1] != c + 1 for c in range(n)):
            problems.append(f"column {x ^ 1} is not the inverse of column {x}")
    for r in p.relators:
        for c in range(1, n + 1):
            if t.trace(c, r) != c:
                problems.append(f"relator {p.format_word(r)} does not close at coset {c}")
                break
    for w in gens:
        if t.trace(1, w) != 1:
            problems.append(f"subgroup generator {p.format_word(w)} does not fix coset 1")
    return problems


def to_permutation_rep(t: CosetTable):
    """Permutation group on cosets (points 0..N-1) generated by the generator columns."""
    from .permcalc import PermGroup, Permutation

    if not t.is_complete:
        raise IncompleteTableError("only complete tables give a permutation representation")
    gens = [Permutation([r[2 * i] - 1 for r in t.rows]) for i in range(t.rank)]
    return PermGroup(gens, degree=t.size)
