"""Brute-force verifiers.

Nothing here imports the constructive modules (homo, construct, binary2):
kernels are read only through their ``q``, ``k`` and ``table`` attributes,
and every check re-derives what it needs by direct enumeration.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

from dbhom.core import Cycle
from dbhom.errors import TooLarge

ENUMERATION_GUARD = 64


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    order: int
    alphabet: int
    length: int
    missing_windows: int
    duplicate_windows: int
    first_violation: Optional[tuple] = None  # (1-based index, word)

    def lines(self) -> list[str]:
        fv = "none"
        if self.first_violation is not None:
            idx, word = self.first_violation
            fv = f"{idx}:{','.join(map(str, word))}"
        return [
            f"ok={'true' if self.ok else 'false'}",
            f"order={self.order}",
            f"alphabet={self.alphabet}",
            f"length={self.length}",
            f"missing_windows={self.missing_windows}",
            f"duplicate_windows={self.duplicate_windows}",
            f"first_violation={fv}",
        ]

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        if self.first_violation is not None:
            d["first_violation"] = [self.first_violation[0], list(self.first_violation[1])]
        return d


def _codes(symbols: Sequence[int], q: int, n: int) -> list[int]:
    """Integer code of each cyclic n-window, the i-th ending at symbol i."""
    L = len(symbols)
    top = q ** (n - 1)
    code = 0
    # prime with the n-1 symbols preceding position 0 (cyclically)
    for t in range(n - 1):
        code = code * q + symbols[(t - n + 1) % L]
    out = []
    for i in range(L):
        code = (code % top) * q + symbols[i]
        out.append(code)
    return out


def _decode(code: int, q: int, n: int) -> tuple:
    word = []
    for _ in range(n):
        word.append(code % q)
        code //= q
    return tuple(reversed(word))


def is_de_bruijn(C, q: int, n: int) -> VerificationReport:
    """Check that every word of Z_q^n occurs exactly once as a cyclic n-window."""
    symbols = tuple(C)
    if any(not 0 <= s < q for s in symbols):
        raise ValueError(f"symbols must lie in 0..{q - 1}")
    if not symbols:
        return VerificationReport(False, n, q, 0, q ** n, 0, None)
    codes = _codes(symbols, q, n)
    seen = set()
    dups = 0
    first = None
    for i, c in enumerate(codes):
        if c in seen:
            dups += 1
            if first is None:
                first = (i + 1, _decode(c, q, n))
        seen.add(c)
    missing = q ** n - len(seen)
    ok = missing == 0 and dups == 0 and len(symbols) == q ** n
    return VerificationReport(ok, n, q, len(symbols), missing, dups, first)


def is_vertex_disjoint(C, q: int, n: int) -> bool:
    symbols = tuple(C)
    codes = _codes(symbols, q, n)
    return len(set(codes)) == len(codes)


def enumerate_de_bruijn(q: int, n: int) -> Iterator[Cycle]:
    """Every De Bruijn cycle of order n, each once, oriented at the zero word.

    Plain Hamiltonian-cycle backtracking in B_n(q) from the all-zero vertex.
    """
    size = q ** n
    if size > ENUMERATION_GUARD:
        raise TooLarge(f"q^n = {size} exceeds {ENUMERATION_GUARD}")
    mod = q ** (n - 1)
    used = [False] * size
    used[0] = True
    path = []  # symbols appended after the initial zero window

    def extend(v):
        if len(path) == size - 1:
            # closing edge must return to the zero vertex
            if (v % mod) == 0:
                yield Cycle(tuple(path) + (0,), q)
            return
        for x in range(q):
            w = (v % mod) * q + x
            if not used[w]:
                used[w] = True
                path.append(x)
                yield from extend(w)
                path.pop()
                used[w] = False

    yield from extend(0)


def vertex_disjoint_cycles(q: int, n: int, max_length: int) -> Iterator[Cycle]:
    """All simple cycles of B_n(q) with at most max_length vertices.

    Each cycle is reported once, as the string of last symbols of its
    vertices starting from its smallest vertex.
    """
    size = q ** n
    mod = q ** (n - 1)
    for start in range(size):
        on_path = {start}
        path = [start]

        def walk(v):
            for x in range(q):
                w = (v % mod) * q + x
                if w == start:
                    yield Cycle(tuple(u % q for u in path[1:]) + (start % q,), q)
                elif w > start and w not in on_path and len(path) < max_length:
                    on_path.add(w)
                    path.append(w)
                    yield from walk(w)
                    path.pop()
                    on_path.discard(w)

        yield from walk(start)


def _kernel_value(d, xs) -> int:
    idx = 0
    for x in xs:
        idx = idx * d.q + x
    return d.table[idx]


def _image(d, word) -> tuple:
    span = d.k + 1
    return tuple(_kernel_value(d, word[i:i + span]) for i in range(len(word) - d.k))


def lift_paths(d, base, n: int) -> Optional[list]:
    """Brute-force preimage rows of a vertex-disjoint base cycle.

    Counts, by dynamic programming over the last k symbols, the words whose
    image is the linearised base; returns the rows (one per k-prefix) when
    every prefix has exactly one, otherwise None.
    """
    q, k = d.q, d.k
    c = tuple(base)
    l = len(c)
    lin = [c[i % l] for i in range(l + n - 1)]
    nstates = q ** k
    mod = q ** (k - 1)
    # completions[i][s]: number of ways to finish from state s before lin[i]
    completions = [None] * (len(lin) + 1)
    completions[-1] = [1] * nstates
    for i in range(len(lin) - 1, -1, -1):
        nxt = completions[i + 1]
        cur = [0] * nstates
        target = lin[i]
        for s in range(nstates):
            base_idx = s * q
            total = 0
            for x in range(q):
                if d.table[base_idx + x] == target:
                    total += nxt[(s % mod) * q + x]
            cur[s] = total
        completions[i] = cur
    if any(v != 1 for v in completions[0]):
        return None
    rows = []
    for s0 in range(nstates):
        s = s0
        word = list(_decode(s0, q, k))
        for i, target in enumerate(lin):
            for x in range(q):
                s2 = (s % mod) * q + x
                if d.table[s * q + x] == target and completions[i + 1][s2]:
                    word.append(x)
                    s = s2
                    break
        rows.append(tuple(word))
    return rows


def has_lift_property(d, base, n: int) -> bool:
    """q^k disjoint preimage paths of length |base|, one per k-prefix."""
    rows = lift_paths(d, base, n)
    if rows is None:
        return False
    l = len(tuple(base))
    span = n + d.k
    seen = set()
    for row in rows:
        for j in range(l):
            w = row[j:j + span]
            if w in seen:
                return False
            seen.add(w)
    return len(seen) == (d.q ** d.k) * l


def check_lift_structure(d, base, expected, n: Optional[int] = None) -> bool:
    """Recompute the preimage of ``base`` by scanning all of B_{n+k}(q).

    ``expected`` is anything with a ``cycles`` attribute (or an iterable of
    cycles).  The cycles must be vertex disjoint, cover the preimage vertex
    set exactly and follow the preimage edges around the base.
    """
    q, k = d.q, d.k
    c = tuple(base)
    l = len(c)
    if n is None:
        n = getattr(expected, "n", None)
    if n is None:
        raise ValueError("base order n is required")
    base_windows = [tuple(c[(i + t) % l] for t in range(n)) for i in range(l)]
    if len(set(base_windows)) != l:
        return False
    where = {w: i for i, w in enumerate(base_windows)}
    span = n + k
    pre = {}
    for x in product(range(q), repeat=span):
        img = _image(d, x)
        if img in where:
            pre[x] = where[img]
    if len(pre) != (q ** k) * l:
        return False
    # each preimage vertex must have exactly one preimage successor
    succ = {}
    for x, i in pre.items():
        nxt = [x[1:] + (s,) for s in range(q)]
        nxt = [y for y in nxt if pre.get(y) == (i + 1) % l]
        if len(nxt) != 1:
            return False
        succ[x] = nxt[0]
    truth = []
    visited = set()
    for x in pre:
        if x in visited:
            continue
        cyc = []
        y = x
        while y not in visited:
            visited.add(y)
            cyc.append(y[-1])
            y = succ[y]
        if y != x:
            return False
        truth.append(Cycle(tuple(cyc), q))
    cycles = list(getattr(expected, "cycles", expected))
    covered = []
    for cyc in cycles:
        s = tuple(cyc)
        L = len(s)
        for i in range(L):
            covered.append(tuple(s[(i - span + 1 + t) % L] for t in range(span)))
    if len(covered) != len(set(covered)) or set(covered) != set(pre):
        return False
    return Counter(truth) == Counter(Cycle(tuple(cy), q) for cy in cycles)
