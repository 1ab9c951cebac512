"""Symbols, words and cycles over Z_q.

Words are plain tuples of ints. A :class:`Cycle` is a word read cyclically;
two cycles compare equal when one is a rotation of the other. Positions are
1-based everywhere, so ``index_of`` agrees with the hand-computed positions
used in the construction formulas.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence, Union

from dbhom.errors import NotFound

MAX_Q = 2 ** 16


@dataclass(frozen=True)
class Alphabet:
    """Z_q with exact modular arithmetic."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"alphabet size must be an integer >= 2, got {self.q!r}")
        if self.q > MAX_Q:
            raise ValueError(f"alphabet size {self.q} exceeds {MAX_Q}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def is_unit(self, a: int) -> bool:
        return gcd(a % self.q, self.q) == 1

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise ValueError(f"{a} is not invertible mod {self.q}")
        return pow(a % self.q, -1, self.q)

    def units(self) -> list[int]:
        return [a for a in range(1, self.q) if gcd(a, self.q) == 1]

    def symbols(self) -> range:
        return range(self.q)


AlphabetLike = Union[Alphabet, int]


def _q(alphabet: AlphabetLike) -> int:
    return alphabet.q if isinstance(alphabet, Alphabet) else int(alphabet)


def least_rotation(s: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(s)
    if n == 0:
        return 0
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if sj != s[(k + i + 1) % n]:
            # i == -1 here
            if sj < s[k % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


@dataclass(frozen=True, eq=False)
class Cycle:
    """A cyclic word over Z_q.

    ``symbols`` is the stored linear representation; equality and hashing
    use the lexicographically least rotation, so the stored start only
    matters for positional queries such as :func:`index_of`.
    """

    symbols: tuple
    q: int

    def __post_init__(self):
        syms = tuple(int(s) for s in self.symbols)
        if not syms:
            raise ValueError("a cycle needs at least one symbol")
        if any(s < 0 or s >= self.q for s in syms):
            raise ValueError(f"cycle symbols must lie in 0..{self.q - 1}")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def parse(cls, text: str, q: int) -> "Cycle":
        return cls(parse_symbols(text, q), q)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    @cached_property
    def canonical(self) -> tuple:
        k = least_rotation(self.symbols)
        return self.symbols[k:] + self.symbols[:k]

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.q == other.q and len(self) == len(other) and self.canonical == other.canonical

    def __hash__(self):
        return hash((self.q, self.canonical))

    def __repr__(self):
        return f"Cycle([{render(self.symbols, self.q)}], q={self.q})"

    def __str__(self):
        return render(self.symbols, self.q)

    def rotate(self, k: int) -> "Cycle":
        """Cycle whose stored representation starts at 0-based offset k."""
        k %= len(self)
        return Cycle(self.symbols[k:] + self.symbols[:k], self.q)

    def windows(self, n: int) -> list[tuple]:
        """Cyclic n-windows; window i (0-based) ends at symbol i."""
        return windows(self.symbols, n)

    def oriented(self, n: int) -> "Cycle":
        """Rotate so the all-zero n-pattern ends the representation."""
        pos = index_of((0,) * n, self)
        return self.rotate(pos)

    def is_oriented(self, n: int) -> bool:
        return index_of((0,) * n, self) == len(self)

    def render(self) -> str:
        return render(self.symbols, self.q)


Symbols = Union[Sequence[int], Cycle]


def windows(symbols: Sequence[int], n: int) -> list[tuple]:
    """All cyclic n-windows, the i-th one ending at position i (0-based).

    Windows longer than the word wrap around more than once, which is what
    self loops and other short cycles of a high-order digraph need.
    """
    s = tuple(symbols)
    L = len(s)
    return [tuple(s[(i - n + 1 + t) % L] for t in range(n)) for i in range(L)]


def render(symbols: Iterable[int], q: int) -> str:
    """Digit string for q <= 10, comma separated decimals otherwise."""
    if q <= 10:
        return "".join(str(s) for s in symbols)
    return ",".join(str(s) for s in symbols)


def parse_symbols(text: str, q: int) -> tuple:
    text = text.strip()
    if "," in text or q > 10:
        parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    else:
        parts = list(text.replace(" ", ""))
    try:
        syms = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"cannot parse symbol string {text!r}") from None
    if not syms:
        raise ValueError("empty symbol string")
    bad = [s for s in syms if not 0 <= s < q]
    if bad:
        raise ValueError(f"symbol {bad[0]} is outside Z_{q}")
    return syms


def order_of(length: int, q: int) -> int:
    """n such that q**n == length; ValueError if there is none."""
    n, size = 0, 1
    while size < length:
        size *= q
        n += 1
    if size != length or n == 0:
        raise ValueError(f"length {length} is not a positive power of {q}")
    return n


def weight(w: Symbols, alphabet: AlphabetLike) -> int:
    return sum(w) % _q(alphabet)


def translate(w, lam: int, alphabet: AlphabetLike):
    """Add lam to every symbol; returns the same kind of object it was given."""
    q = _q(alphabet)
    syms = tuple((s + lam) % q for s in w)
    if isinstance(w, Cycle):
        return Cycle(syms, q)
    if isinstance(w, list):
        return list(syms)
    return syms


def conjugates(v: Sequence[int], alphabet: AlphabetLike) -> set:
    """Words sharing v's successor set, i.e. v with its first symbol replaced."""
    if len(v) < 1:
        raise ValueError("conjugates need a non-empty word")
    tail = tuple(v[1:])
    return {(a,) + tail for a in range(_q(alphabet))}


def index_of(x: Sequence[int], C: Symbols) -> int:
    """1-based index of the last symbol of the first cyclic occurrence of x."""
    s = tuple(C)
    x = tuple(x)
    L, n = len(s), len(x)
    if n == 0:
        raise ValueError("empty pattern")
    for end in range(L):
        if all(s[(end - n + 1 + t) % L] == x[t] for t in range(n)):
            return end + 1
    raise NotFound(f"{render(x, max(max(x) + 1, 2))} does not occur in the cycle")


def is_primitive(C: Symbols, alphabet: AlphabetLike, n: int) -> bool:
    """True iff no n-window of C is a nonzero translate of another."""
    q = _q(alphabet)
    normal = set()
    for w in set(windows(tuple(C), n)):
        # two windows are translates iff their differences to w[0] agree
        key = tuple((s - w[0]) % q for s in w)
        if key in normal:
            return False
        normal.add(key)
    return True
