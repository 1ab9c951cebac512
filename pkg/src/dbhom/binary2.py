"""Binary span-3 lifting with d(x1, x2, x3) = x1 + x2 + x3.

The preimage of a binary De Bruijn cycle of order n is one short cycle of
length 2^n (from the unique fixed seed) and one long cycle of length
3*2^n through the other three seeds.  Swapping the successors of a
conjugate pair split between them gives an order-(n+2) De Bruijn cycle.
"""
from __future__ import annotations

from dataclasses import dataclass

from dbhom.core import Cycle, index_of, order_of
from dbhom.errors import NoPairFound, NotDeBruijn, PairNotConjugate, PairNotSplit
from dbhom.homo import d2_kernel, lift_cycle_decomposition, seed_map

D2 = d2_kernel()


@dataclass(frozen=True)
class FixedSeedReport:
    n: int
    n_parity: int
    a: tuple  # (a0, a1, a2)
    seed: tuple  # (z1, z2)
    cycle_lengths: tuple

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"n_mod_2={self.n_parity}",
            f"a={''.join(map(str, self.a))}",
            f"seed={''.join(map(str, self.seed))}",
            f"lengths={'/'.join(map(str, self.cycle_lengths))}",
        ]


def _order(b: Cycle) -> int:
    if b.q != 2:
        raise NotDeBruijn("base must be binary")
    try:
        n = order_of(len(b), 2)
    except ValueError as exc:
        raise NotDeBruijn(str(exc)) from None
    if len(set(b.windows(n))) != len(b):
        raise NotDeBruijn(f"base is not a binary De Bruijn cycle of order {n}")
    return n


def residue_sums(b) -> tuple:
    """(a0, a1, a2): parity of the symbols at 1-based positions congruent to 0, 1, 2 mod 3."""
    a = [0, 0, 0]
    for p, bit in enumerate(b, start=1):
        a[p % 3] ^= bit
    return tuple(a)


def seed_formula(n: int, a: tuple) -> tuple:
    a0, a1, a2 = a
    if n % 2 == 0:
        return ((a0 + a1) % 2, (a1 + a2) % 2)
    return ((a0 + a2) % 2, (a1 + a0) % 2)


def fixed_seed(b: Cycle) -> FixedSeedReport:
    """Closed-form fixed seed for b as stored (the sums depend on the rotation)."""
    n = _order(b)
    a = residue_sums(b.symbols)
    seed = seed_formula(n, a)
    lengths = tuple(sorted(len(c) for c in lift_cycle_decomposition(D2, b, n).cycles))
    return FixedSeedReport(n, n % 2, a, seed, lengths)


def decompose_d2(b: Cycle) -> tuple[Cycle, Cycle]:
    """(short, long) preimage cycles; short is read from the fixed seed."""
    n = _order(b)
    dec = lift_cycle_decomposition(D2, b, n)
    if len(dec.cycles) != 2:
        raise AssertionError(f"expected two preimage cycles, got {len(dec.cycles)}")
    short, long_ = sorted(dec.cycles, key=len)
    if (len(short), len(long_)) != (2 ** n, 3 * 2 ** n):
        raise AssertionError(f"unexpected cycle lengths {len(short)}, {len(long_)}")
    return short, long_


def fixed_points(b: Cycle) -> list[tuple]:
    """Fixed points of the seed map of d^(2) over b, computed by lifting."""
    return [s for s, t in seed_map(D2, b.symbols).items() if s == t]


def find_cross_join(short: Cycle, long_: Cycle, n_out: int) -> tuple[tuple, tuple]:
    """First window v of ``short`` whose conjugate lies on ``long_``."""
    on_long = set(long_.windows(n_out))
    L = len(short)
    s = short.symbols
    for start in range(L):
        v = tuple(s[(start + t) % L] for t in range(n_out))
        v2 = (1 - v[0],) + v[1:]
        if v2 in on_long:
            return v, v2
    raise NoPairFound("no window of the short cycle has its conjugate on the long cycle")


def _check_pair(v, v2):
    if len(v) != len(v2) or v[1:] != v2[1:] or v[0] == v2[0]:
        raise PairNotConjugate(f"{v} and {v2} are not conjugate")


def join(short: Cycle, long_: Cycle, pair: tuple) -> Cycle:
    """Swap the successors of v (on short) and v' (on long) to merge the cycles."""
    v, v2 = tuple(pair[0]), tuple(pair[1])
    _check_pair(v, v2)
    n = len(v)
    short_w, long_w = set(short.windows(n)), set(long_.windows(n))
    if v not in short_w or v2 not in long_w or v2 in short_w or v in long_w:
        raise PairNotSplit("v must lie only on the short cycle and v' only on the long one")
    a = short.rotate(index_of(v, short))
    b = long_.rotate(index_of(v2, long_))
    return Cycle(a.symbols + b.symbols, short.q)


def split(cycle: Cycle, pair: tuple) -> tuple[Cycle, Cycle]:
    """Inverse of :func:`join`: swap successors of two conjugates on one cycle."""
    v, v2 = tuple(pair[0]), tuple(pair[1])
    _check_pair(v, v2)
    rot = cycle.rotate(index_of(v, cycle))
    cut = index_of(v2, rot)
    return Cycle(rot.symbols[cut:], cycle.q), Cycle(rot.symbols[:cut], cycle.q)


def join_d2(b: Cycle) -> Cycle:
    """Order-(n+2) De Bruijn cycle from an order-n binary one."""
    short, long_ = decompose_d2(b)
    pair = find_cross_join(short, long_, _order(b) + 2)
    return join(short, long_, pair)
