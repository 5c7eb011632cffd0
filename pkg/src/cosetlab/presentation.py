"""Words, presentations and a parser for the usual relator notation.

Letters are signed 1-based integers: generator ``i`` is ``i + 1`` and its
inverse is ``-(i + 1)``.  Conventions::

    [u, v] = u^-1 v^-1 u v        u^v = v^-1 u v
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class PresentationError(ValueError):
    """Base class for everything the parser and builders reject."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int, token: str | None = None):
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        if token is not None:
            where += f", near {token!r}"
        super().__init__(f"{message} ({where})")


class UndeclaredGeneratorError(PresentationSyntaxError):
    pass


class EmptyRelatorError(PresentationError):
    pass


def free_reduce(letters: Iterable[int]) -> "Word":
    """Cancel adjacent ``g g^-1`` pairs until none remain."""
    stack: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return Word(tuple(stack))


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  The empty word is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        for a, b in zip(letters, letters[1:]):
            if a == -b:
                raise ValueError(f"word {letters} is not freely reduced")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "Word":
        a = index + 1
        return cls((a if exponent > 0 else -a,) * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return free_reduce(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return invert_word(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert_word(self)
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, by: "Word") -> "Word":
        """``self^by = by^-1 self by``."""
        return ~by * self * by

    def max_generator(self) -> int:
        return max((abs(a) for a in self.letters), default=0)


def invert_word(w: Word) -> Word:
    return Word(tuple(-a for a in reversed(w.letters)))


def commutator(u: Word, v: Word) -> Word:
    return ~u * ~v * u * v


def cyclically_reduce(w: Word) -> Word:
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1])


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator names in {self.generators}")
        for g in self.generators:
            if not _NAME_RE.match(g):
                raise PresentationError(f"bad generator name {g!r}")
        k = len(self.generators)
        for r in self.relators:
            if not r:
                raise EmptyRelatorError("relators must be nonempty words")
            if r.max_generator() > k:
                raise PresentationError(f"relator {r.letters} uses an undeclared generator")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def gen(self, name: str) -> Word:
        return Word.gen(self.generators.index(name))

    def format_word(self, w: Word) -> str:
        return format_word(w, self.generators)

    def render(self) -> str:
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class SubgroupSpec:
    generators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def validate(self, p: Presentation) -> None:
        for w in self.generators:
            if w.max_generator() > p.rank:
                raise PresentationError(f"subgroup word {w.letters} uses an undeclared generator")


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        a = letters[i]
        run = (j - i) * (1 if a > 0 else -1)
        name = names[abs(a) - 1]
        parts.append(name if run == 1 else f"{name}^{run}")
        i = j
    return "*".join(parts)


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<int>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[<>|,()\[\]^*])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int = 1, col0: int = 1) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationSyntaxError("unexpected character", line, col0 + pos, text[pos])
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), line, col0 + pos))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok], end_line: int, end_col: int):
        self.toks = toks
        self.i = 0
        self.end = _Tok("eof", "", end_line, end_col)
        self.names: dict[str, int] = {}

    def peek(self) -> _Tok:
        return self.toks[self.i] if self.i < len(self.toks) else self.end

    def next(self) -> _Tok:
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise PresentationSyntaxError(msg, tok.line, tok.col, tok.text or "<end of input>")

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.kind != "op" or t.text != text:
            self.fail(f"expected {text!r}")
        return self.next()

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == text

    def gens(self) -> list[str]:
        out = []
        while True:
            t = self.next()
            if t.kind != "name":
                self.fail("expected a generator name", t)
            if t.text in self.names:
                self.fail("duplicate generator", t)
            self.names[t.text] = len(self.names)
            out.append(t.text)
            if not self.at(","):
                return out
            self.next()

    def starts_atom(self) -> bool:
        t = self.peek()
        return t.kind == "name" or (t.kind == "op" and t.text in "([")

    def relator(self) -> Word:
        if not self.starts_atom():
            self.fail("expected a relator")
        w = self.term()
        while True:
            if self.at("*"):
                self.next()
                if not self.starts_atom():
                    self.fail("expected a factor after '*'")
            elif not self.starts_atom():
                return w
            w = w * self.term()

    def term(self) -> Word:
        w = self.atom()
        while self.at("^"):
            self.next()
            t = self.peek()
            if t.kind == "int":
                self.next()
                w = w ** int(t.text)
            elif self.starts_atom():
                w = w.conj(self.atom())
            else:
                self.fail("expected an integer or a word after '^'")
        return w

    def atom(self) -> Word:
        t = self.next()
        if t.kind == "name":
            if t.text not in self.names:
                raise UndeclaredGeneratorError(
                    f"undeclared generator {t.text!r}", t.line, t.col, t.text
                )
            return Word.gen(self.names[t.text])
        if t.text == "(":
            w = self.relator()
            self.expect(")")
            return w
        if t.text == "[":
            u = self.relator()
            self.expect(",")
            v = self.relator()
            self.expect("]")
            return commutator(u, v)
        self.fail("expected a generator, '(' or '['", t)


def _checked(w: Word, tok: _Tok) -> Word:
    if not w:
        raise EmptyRelatorError(f"relator at line {tok.line}, column {tok.col} reduces to the empty word")
    return w


def _parse_inline(text: str, name: str | None) -> Presentation:
    lines = text.split("\n")
    toks = []
    for n, line in enumerate(lines, 1):
        toks.extend(_tokenize(line.split("#", 1)[0], n))
    p = _Parser(toks, len(lines), len(lines[-1]) + 1)
    p.expect("<")
    gens = p.gens()
    p.expect("|")
    rels = []
    while True:
        start = p.peek()
        rels.append(_checked(p.relator(), start))
        if not p.at(","):
            break
        p.next()
    p.expect(">")
    if p.peek().kind != "eof":
        p.fail("trailing input after '>'")
    return Presentation(tuple(gens), tuple(rels), name)


def _parse_file_form(text: str, name: str | None) -> Presentation:
    gens: list[str] | None = None
    names: dict[str, int] = {}
    rels: list[Word] = []
    in_relators = False
    for n, raw in enumerate(text.split("\n"), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        key, sep, rest = stripped.partition(":")
        key = key.strip().lower()
        if sep and key in ("generators", "relators", "name"):
            rest_col = col + stripped.index(":") + 1
            if key == "name":
                name = rest.strip() or name
                in_relators = False
            elif key == "generators":
                if gens is not None:
                    raise PresentationSyntaxError("generators declared twice", n, col, "generators:")
                parser = _Parser(_tokenize(rest, n, rest_col), n, len(line) + 1)
                gens = parser.gens()
                if parser.peek().kind != "eof":
                    parser.fail("unexpected token in generator list")
                names = parser.names
                in_relators = False
            else:
                if gens is None:
                    raise PresentationSyntaxError("relators before generators", n, col, "relators:")
                in_relators = True
                if rest.strip():
                    rels.extend(_file_relators(rest, n, rest_col, names, len(line) + 1))
            continue
        if not in_relators:
            raise PresentationSyntaxError("expected 'generators:' or 'relators:'", n, col, stripped.split()[0])
        rels.extend(_file_relators(line, n, 1, names, len(line) + 1))
    if gens is None:
        raise PresentationSyntaxError("missing 'generators:' line", 1, 1)
    return Presentation(tuple(gens), tuple(rels), name)


def _file_relators(text, line, col, names, end_col) -> list[Word]:
    parser = _Parser(_tokenize(text, line, col), line, end_col)
    parser.names = names
    out = []
    while parser.peek().kind != "eof":
        start = parser.peek()
        out.append(_checked(parser.relator(), start))
        if parser.at(","):
            parser.next()
        elif parser.peek().kind != "eof":
            parser.fail("expected ',' or end of line")
    return out


def parse_presentation(text: str, name: str | None = None) -> Presentation:
    """Parse either ``< gens | rels >`` or the keyworded multi-line form."""
    body = "\n".join(line.split("#", 1)[0] for line in text.split("\n"))
    if body.strip().startswith("<"):
        return _parse_inline(text, name)
    return _parse_file_form(text, name)


def parse_word(text: str, p: Presentation) -> Word:
    """Parse a single word over ``p``'s generators (empty or ``1`` is the identity)."""
    if text.strip() in ("", "1"):
        return Word()
    parser = _Parser(_tokenize(text), 1, len(text) + 1)
    parser.names = {g: i for i, g in enumerate(p.generators)}
    w = parser.relator()
    if parser.peek().kind != "eof":
        parser.fail("trailing input")
    return w


# --------------------------------------------------------------------------
# the presentations used by the reproduction suite

def lemma2_presentation(i: int, j: int) -> Presentation:
    t, x = Word.gen(0), Word.gen(1)
    rels = (t**4, x**3, (t**2 * x) ** 2, (t * x) ** i, commutator(t, x) ** j)
    return Presentation(("t", "x"), rels, f"lemma2({i},{j})")


def lemma4_presentation(i: int, j: int) -> Presentation:
    t, x = Word.gen(0), Word.gen(1)
    rels = (
        t**4,
        x**9,
        (t**2 * x) ** 2,
        commutator(x, x.conj(t)),
        (t * x) ** i,
        commutator(t, x) ** j,
    )
    return Presentation(("t", "x"), rels, f"lemma4({i},{j})")


def lemma7_relator_system() -> list[tuple[tuple[int, int, int], int, Word]]:
    """The indexed family ``(t_l t_m^t_n)^2, (t_l^-1 t_m^t_n)^9, (t_l^2 t_m^t_n)^4``.

    Returns 81 entries ``((l, m, n), exponent, word)`` with 1-based indices.
    The three entries ``(t_l^-1 t_l^t_l)^9`` are the empty word.
    """
    ts = [Word.gen(k) for k in range(3)]
    out = []
    for l, m, n in itertools.product(range(3), repeat=3):
        v = ts[m].conj(ts[n])
        key = (l + 1, m + 1, n + 1)
        out.append((key, 2, (ts[l] * v) ** 2))
        out.append((key, 9, (~ts[l] * v) ** 9))
        out.append((key, 4, (ts[l] ** 2 * v) ** 4))
    return out


def lemma7_presentation() -> Presentation:
    rels = tuple(w for _, _, w in lemma7_relator_system() if w)
    return Presentation(("t1", "t2", "t3"), rels, "lemma7")


def dihedral_presentation(n: int) -> Presentation:
    if n < 1:
        raise PresentationError("dihedral(n) needs n >= 1")
    a, b = Word.gen(0), Word.gen(1)
    return Presentation(("a", "b"), (a**2, b**2, (a * b) ** n), f"dihedral({n})")


_KEY_RE = re.compile(r"\s*(\w+)\s*(?:\(\s*([\d\s,]*)\))?\s*\Z")


def builtin_presentation(key: str) -> Presentation:
    """Look up ``lemma2(i,j)``, ``lemma4(i,j)``, ``lemma7`` or ``dihedral(n)``."""
    m = _KEY_RE.match(key)
    if m is None:
        raise KeyError(f"unknown presentation key {key!r}")
    head = m.group(1)
    args = [int(a) for a in m.group(2).split(",")] if m.group(2) else []
    if head in ("lemma2", "lemma4") and len(args) == 2 and set(args) <= {8, 9}:
        build = lemma2_presentation if head == "lemma2" else lemma4_presentation
        return build(*args)
    if head == "lemma7" and not args:
        return lemma7_presentation()
    if head == "dihedral" and len(args) == 1 and args[0] >= 1:
        return dihedral_presentation(args[0])
    raise KeyError(f"unknown presentation key {key!r}")
