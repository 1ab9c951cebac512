"""Recursive construction of q-ary De Bruijn cycles from lower-order ones.

Every level lifts the previous cycle through a linear kernel
d(x1, x2) = (q - beta) x1 + beta x2, which splits B_j(q) into q translated
cycles C_0..C_{q-1}, and then joins them through the translates of an
alternating string.  Cycles handed between levels are oriented at the zero
word: the all-zero pattern ends the stored representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice, product
from math import gcd
from typing import Iterator, Optional, Sequence

import numpy as np

from dbhom.core import Alphabet, AlphabetLike, Cycle, _q, index_of, order_of
from dbhom.errors import (
    BadLambda,
    BadParameters,
    EvenAlphabetNeedsBase,
    GammaZero,
    NotDeBruijnInput,
)
from dbhom.homo import HomKernel, linear_coefficients


@dataclass(frozen=True)
class JoinType:
    """Cross-join variant (i; lam): start at C_i, step between cycles by lam."""

    i: int
    lam: int
    q: int

    def __post_init__(self):
        if not 0 <= self.i < self.q:
            raise BadParameters(f"i={self.i} is not in Z_{self.q}")
        if gcd(self.lam % self.q, self.q) != 1:
            raise BadLambda(f"gcd(lambda={self.lam}, q={self.q}) != 1")


@dataclass(frozen=True)
class ConstructionPlan:
    """Parameters of one run of the recursive generator.

    B, L, I hold (beta_j, lambda_j, i_j) for each level j above the base.
    Without ``base`` (odd q only) the base is [1, 2, ..., q-1, 0] of order 1,
    so each list has n - 1 entries; with an external base of order b they
    have n - b entries.
    """

    q: int
    n: int
    B: tuple
    L: tuple
    I: tuple
    base: Optional[Cycle] = field(default=None, compare=False)

    def __post_init__(self):
        Alphabet(self.q)
        for name in ("B", "L", "I"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        b = self.base_order
        if self.n < b:
            raise BadParameters(f"target order n={self.n} is below the base order {b}")
        if not len(self.B) == len(self.L) == len(self.I) == self.n - b:
            raise BadParameters(
                f"B, L and I must each have n - {b} = {self.n - b} entries "
                f"(got {len(self.B)}, {len(self.L)}, {len(self.I)})"
            )
        q = self.q
        for j, (beta, lam, i) in enumerate(zip(self.B, self.L, self.I), start=b + 1):
            if gcd(beta % q, q) != 1:
                raise BadParameters(f"gcd(beta_{j}={beta}, q={q}) != 1")
            if gcd(lam % q, q) != 1:
                raise BadLambda(f"gcd(lambda_{j}={lam}, q={q}) != 1")
            if not 0 <= i < q:
                raise BadParameters(f"i_{j}={i} is not in Z_{q}")

    @property
    def base_order(self) -> int:
        if self.base is None:
            if self.q % 2 == 0:
                raise EvenAlphabetNeedsBase(
                    f"q={self.q} is even: supply an order >= 2 base cycle"
                )
            return 1
        return order_of(len(self.base), self.q)

    def label(self) -> str:
        fmt = lambda xs: ",".join(str(x) for x in xs)
        return f"{fmt(self.B)};{fmt(self.L)};{fmt(self.I)}"


def base_cycle(alphabet: AlphabetLike, base: Optional[Cycle] = None) -> Cycle:
    """Order-1 start [1, 2, ..., q-1, 0]; even q must pass its own base."""
    q = _q(alphabet)
    if base is not None:
        return _checked_base(base, q)
    if q % 2 == 0:
        raise EvenAlphabetNeedsBase(
            f"[1..{q - 1},0] has weight {q // 2} for q={q}; supply an order >= 2 base cycle"
        )
    return Cycle(tuple(range(1, q)) + (0,), q)


def _is_full_cycle(symbols: Sequence[int], q: int, n: int) -> bool:
    L = len(symbols)
    if L != q ** n:
        return False
    return len({tuple(symbols[(i + t) % L] for t in range(n)) for i in range(L)}) == L


def _checked_base(base: Cycle, q: int) -> Cycle:
    if base.q != q:
        raise BadParameters(f"base cycle is over Z_{base.q}, plan is over Z_{q}")
    try:
        b = order_of(len(base), q)
    except ValueError as exc:
        raise NotDeBruijnInput(str(exc)) from None
    if not _is_full_cycle(base.symbols, q, b):
        raise NotDeBruijnInput(f"base is not a De Bruijn cycle of order {b}")
    if sum(base) % q:
        raise NotDeBruijnInput("base cycle must have weight 0 to lift into q separate cycles")
    return base.oriented(b)


def _kernel_params(d: HomKernel) -> tuple[int, int]:
    try:
        alpha, beta = linear_coefficients(d)
    except ValueError as exc:
        raise BadParameters(str(exc)) from None
    q = d.q
    if (alpha + beta) % q or gcd(beta, q) != 1:
        raise BadParameters(f"kernel needs alpha + beta = 0 and gcd(beta, q) = 1 (alpha={alpha}, beta={beta})")
    return alpha, beta


def _lead_with_run(gamma: Cycle, c: int, m: int) -> tuple:
    """Rotate gamma so that its unique run c^m sits at the front."""
    end = index_of((c,) * m, gamma)  # 1-based end of the run
    return gamma.rotate(end - m).symbols


def _validate_step_input(gamma: Cycle, d: HomKernel, a: int, lam: int) -> tuple[int, int, int]:
    q = d.q
    if gamma.q != q:
        raise BadParameters("cycle and kernel use different alphabets")
    try:
        m = order_of(len(gamma), q)
    except ValueError as exc:
        raise NotDeBruijnInput(str(exc)) from None
    if not _is_full_cycle(gamma.symbols, q, m):
        raise NotDeBruijnInput(f"input is not a De Bruijn cycle of order {m}")
    if gcd(lam % q, q) != 1:
        raise BadLambda(f"gcd(lambda={lam}, q={q}) != 1")
    if not 0 <= a < q:
        raise BadParameters(f"a={a} is not in Z_{q}")
    alpha, beta = _kernel_params(d)
    if sum(gamma) % q:
        raise NotDeBruijnInput("input cycle must have weight 0")
    return m, alpha, beta


def algorithm_A(gamma: Cycle, d: HomKernel, a: int, lam: int) -> Cycle:
    """Lift an order-(n-1) De Bruijn cycle into q translated cycles and join them.

    ``lam`` is the step of the alternating strings; the constant run of
    ``gamma`` that lifts onto them is beta*lam.  The first lifted cycle
    starts with ``a``.  Output is oriented at the zero word.
    """
    m, alpha, beta = _validate_step_input(gamma, d, a, lam)
    q = d.q
    n = m + 1
    N = q ** m
    c = (beta * lam) % q
    binv = pow(beta, -1, q)
    lead = _lead_with_run(gamma, c, m)
    linear = lead + lead[:m]
    x = [a]
    for g in linear:
        x.append(binv * (g - alpha * x[-1]) % q)
    # rows[r] = x + r*lam; row r's first n-window is an alternating string
    rows = [[(v + r * lam) % q for v in x] for r in range(q)]
    # last symbols of the q alternating vertices, then each row's remaining body
    out = [rows[r][n - 1] for r in range(q)]
    for r in range(q - 1, -1, -1):
        out.extend(rows[r][n:N + n - 1])
    return Cycle(tuple(out), q).oriented(n)


def algorithm_B(gamma: Cycle, d: HomKernel, a: int, lam: int) -> Cycle:
    """Same output as :func:`algorithm_A`, built from q copies of the shortened cycle."""
    m, alpha, beta = _validate_step_input(gamma, d, a, lam)
    q = d.q
    n = m + 1
    c = (beta * lam) % q
    binv = pow(beta, -1, q)
    lead = _lead_with_run(gamma, c, m)
    shortened = lead[m:] + (c,) * (m - 1)
    stream = shortened * q
    x = [a]
    for _ in range(2, n + q):
        x.append((x[-1] + lam) % q)
    for i in range(n + q, q ** n + 1):
        g = stream[i - n - q]
        x.append(binv * (g - alpha * x[-1]) % q)
    return Cycle(tuple(x), q).oriented(n)


def cross_join_position(alphabet: AlphabetLike, n: int, i: int, lam: int, gamma: int) -> int:
    """1-based end position of the constant word gamma^(n+1) in an oriented type-(i; lam) cycle."""
    q = _q(alphabet)
    if n < 1:
        raise BadParameters("n must be >= 1")
    gamma %= q
    if gamma == 0:
        raise GammaZero("gamma must be nonzero")
    if gcd(lam % q, q) != 1:
        raise BadLambda(f"gcd(lambda={lam}, q={q}) != 1")
    i %= q
    linv = pow(lam % q, -1, q)
    m = ((gamma - i) * linv) % q
    qn = q ** n
    if i == 0:
        return (q - m) * qn + m
    m2 = ((-i) * linv) % q
    assert m != m2
    if m < m2:
        return (m2 - m) * (qn - 1)
    return (m2 - m) * (qn - 1) + q * qn


def lift_oriented(gamma: np.ndarray, beta: int, q: int) -> np.ndarray:
    """C_0: the lift of an oriented weight-0 cycle that is itself oriented.

    With alpha = -beta the lift is x_p = x_{p-1} + beta^{-1} gamma_p, x_0 = 0,
    so the j-window of C_0 ending at p sits over the (j-1)-window of gamma
    ending at p.
    """
    binv = pow(beta, -1, q)
    return np.cumsum(gamma.astype(np.int64) * binv) % q


def splice(c0: np.ndarray, q: int, pos: int, i: int, lam: int) -> np.ndarray:
    """Join C_k = C_0 + k (k in Z_q) through the alternating strings ending at ``pos``.

    The joined cycle runs A_i -> A_{i+lam} -> ... around the alternating
    strings, then back through every C_k; it is written starting just
    after the zero word that ends C_0, so the result is oriented.
    """
    N = len(c0)
    linv = pow(lam, -1, q)
    mp = (-i * linv) % q
    parts = []

    def C(k):
        return (c0 + k) % q

    def back(k):
        # first pos-1 symbols of C_{i+k*lam}, then the tail of C_{i+(k-1)*lam}
        parts.append(C(i + k * lam)[:pos - 1])
        parts.append(C(i + (k - 1) * lam)[pos:])

    for k in range(mp, 0, -1):
        back(k)
    parts.append(C(i)[:pos])
    parts.append(np.array([C(i + k * lam)[pos - 1] for k in range(1, q - 1)], dtype=c0.dtype))
    parts.append(C(i + (q - 1) * lam)[pos - 1:])
    for k in range(q - 1, mp, -1):
        back(k)
    out = np.concatenate(parts)
    assert len(out) == q * N
    return out


def _level_position(q: int, j: int, base_order: int, prev: np.ndarray, prev_i, prev_lam, gamma: int) -> int:
    if j == base_order + 1:
        if base_order == 1:
            return gamma  # [1, 2, ..., q-1, 0] holds gamma at index gamma
        return index_of((gamma,) * base_order, tuple(int(v) for v in prev))
    return cross_join_position(q, j - 2, prev_i, prev_lam, gamma)


def _step(prev: np.ndarray, q: int, j: int, base_order: int, beta: int, lam: int, i: int, prev_i, prev_lam) -> np.ndarray:
    c0 = lift_oriented(prev, beta, q)
    gamma = (beta * lam) % q
    pos = _level_position(q, j, base_order, prev, prev_i, prev_lam, gamma)
    return splice(c0, q, pos, i, lam)


def algorithm_AA(plan: ConstructionPlan) -> Cycle:
    """Run the recursive generator; the result is oriented at the zero word."""
    q = plan.q
    base = base_cycle(q, plan.base)
    b = plan.base_order
    seq = np.array(base.symbols, dtype=np.int64)
    prev_i = prev_lam = None
    for j, beta, lam, i in zip(range(b + 1, plan.n + 1), plan.B, plan.L, plan.I):
        seq = _step(seq, q, j, b, beta % q, lam % q, i, prev_i, prev_lam)
        prev_i, prev_lam = i, lam % q
    return Cycle(tuple(int(v) for v in seq), q)


def family_size(q: int, levels: int) -> int:
    phi = len(Alphabet(q).units())
    return (q * phi * phi) ** levels


def enumerate_family(
    alphabet: AlphabetLike, n: int, limit: Optional[int] = None, base: Optional[Cycle] = None
) -> Iterator[tuple[ConstructionPlan, Cycle]]:
    """All plans of order n in lexicographic (B, L, I) order, with their cycles.

    Intermediate levels are cached by their parameter prefix, so the cost is
    one splice per plan rather than one per level per plan.
    """
    q = _q(alphabet)
    given = base
    base = base_cycle(q, base)
    b = order_of(len(base), q)
    if n < b + 1:
        raise BadParameters(f"n must exceed the base order {b}")
    levels = n - b
    units = Alphabet(q).units()
    cache = {(): np.array(base.symbols, dtype=np.int64)}

    def build(params):
        # params: tuple of (beta, lam, i) per level
        if params in cache:
            return cache[params]
        prev = build(params[:-1])
        j = b + len(params)
        beta, lam, i = params[-1]
        prev_i, prev_lam = (params[-2][2], params[-2][1]) if len(params) > 1 else (None, None)
        seq = _step(prev, q, j, b, beta, lam, i, prev_i, prev_lam)
        if len(params) < levels:
            cache[params] = seq
        return seq

    plans = (
        (B, L, I)
        for B in product(units, repeat=levels)
        for L in product(units, repeat=levels)
        for I in product(range(q), repeat=levels)
    )
    for B, L, I in islice(plans, limit):
        seq = build(tuple(zip(B, L, I)))
        plan = ConstructionPlan(q, n, B, L, I, given)
        yield plan, Cycle(tuple(int(v) for v in seq), q)
