"""Homomorphisms B_{n+k}(q) -> B_n(q) given by a sliding kernel of k+1 symbols.

A kernel is stored extensionally as a dense table indexed in mixed radix
(x_1 most significant).  Property (D) is tested through the Latin-square
condition on (x_1, x_{k+1}); lifting solves the kernel for its last variable
with a precomputed inverse table.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from dbhom.core import AlphabetLike, Cycle, _q
from dbhom.errors import (
    InvalidBeta,
    NotPropertyD,
    NotVertexDisjoint,
    TooLarge,
    WordTooShort,
)

COUNT_GUARD = 10 ** 7


@dataclass(frozen=True)
class HomKernel:
    q: int
    k: int
    table: tuple
    provenance: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("kernel span k must be >= 1")
        table = tuple(int(v) for v in self.table)
        if len(table) != self.q ** (self.k + 1):
            raise ValueError(f"kernel table needs {self.q ** (self.k + 1)} entries, got {len(table)}")
        if any(not 0 <= v < self.q for v in table):
            raise ValueError("kernel values must lie in Z_q")
        object.__setattr__(self, "table", table)

    @property
    def arity(self) -> int:
        return self.k + 1

    def index(self, xs: Sequence[int]) -> int:
        idx = 0
        for x in xs:
            idx = idx * self.q + x
        return idx

    def __call__(self, *xs: int) -> int:
        if len(xs) != self.k + 1:
            raise TypeError(f"kernel takes {self.k + 1} arguments")
        return self.table[self.index(xs)]

    def inputs(self):
        return product(range(self.q), repeat=self.k + 1)

    @cached_property
    def property_D(self) -> bool:
        return _latin_in_ends(self)

    @cached_property
    def last_inverse(self) -> tuple:
        """inv[prefix * q + target] = the unique x_{k+1} with d(prefix, x_{k+1}) = target."""
        q = self.q
        inv = [-1] * (q ** (self.k + 1))
        for prefix in range(q ** self.k):
            row = self.table[prefix * q:(prefix + 1) * q]
            for x, target in enumerate(row):
                if inv[prefix * q + target] != -1:
                    raise NotPropertyD("kernel is not bijective in its last variable")
                inv[prefix * q + target] = x
        return tuple(inv)


def _latin_in_ends(d: HomKernel) -> bool:
    q, k = d.q, d.k
    full = set(range(q))
    for middle in product(range(q), repeat=k - 1):
        for a in range(q):
            row = {d(a, *middle, b) for b in range(q)}
            col = {d(b, *middle, a) for b in range(q)}
            if row != full or col != full:
                return False
    return True


def kernel_from_function(q: int, k: int, f: Callable[..., int], provenance: str = "custom") -> HomKernel:
    table = tuple(f(*xs) % q for xs in product(range(q), repeat=k + 1))
    return HomKernel(q, k, table, provenance)


def make_linear_kernel(alphabet: AlphabetLike, beta: int) -> HomKernel:
    """d(x1, x2) = alpha*x1 + beta*x2 with alpha = q - beta."""
    q = _q(alphabet)
    beta %= q
    if gcd(beta, q) != 1:
        raise InvalidBeta(f"gcd(beta={beta}, q={q}) != 1")
    alpha = (q - beta) % q
    return kernel_from_function(q, 1, lambda x1, x2: alpha * x1 + beta * x2, f"linear({alpha},{beta})")


def linear_coefficients(d: HomKernel) -> tuple[int, int]:
    """(alpha, beta) of a span-2 kernel of the form alpha*x1 + beta*x2.

    Raises ValueError if the table is not of that form.
    """
    if d.k != 1:
        raise ValueError("not a k=1 kernel")
    q = d.q
    c = d(0, 0)
    alpha, beta = (d(1, 0) - c) % q, (d(0, 1) - c) % q
    if c != 0 or any(d(x, y) != (alpha * x + beta * y) % q for x in range(q) for y in range(q)):
        raise ValueError("kernel is not linear")
    return alpha, beta


def lempel() -> HomKernel:
    """Lempel's D-morphism d(x1, x2) = x1 + x2 over Z_2."""
    return kernel_from_function(2, 1, lambda a, b: a + b, "lempel")


def d1_kernel() -> HomKernel:
    return kernel_from_function(2, 2, lambda a, b, c: a + c, "d1")


def d2_kernel() -> HomKernel:
    return kernel_from_function(2, 2, lambda a, b, c: a + b + c, "d2")


def trimming_kernel(q: int, k: int) -> HomKernel:
    """d(x_1..x_{k+1}) = x_{k+1}: drops the k leftmost symbols."""
    return kernel_from_function(q, k, lambda *xs: xs[-1], "trimming")


_TERM = re.compile(r"^(\d*)\*?((?:x\d+\*?)*)$")


def kernel_from_expression(q: int, expr: str) -> HomKernel:
    """Kernel from a polynomial such as ``x1+x3``, ``2x1+x2`` or ``x1+x2x3+x4``.

    k is one less than the highest variable index that appears.
    """
    text = expr.replace(" ", "")
    if not text:
        raise ValueError("empty kernel expression")
    if text[0] not in "+-":
        text = "+" + text
    terms = []
    for sign, body in re.findall(r"([+-])([^+-]+)", text):
        m = _TERM.match(body)
        if m is None or not (m.group(1) or m.group(2)):
            raise ValueError(f"cannot parse term {body!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if sign == "-":
            coef = -coef
        vars_ = [int(v) for v in re.findall(r"x(\d+)", m.group(2))]
        if any(v < 1 for v in vars_):
            raise ValueError("variables are numbered from x1")
        terms.append((coef, vars_))
    if "".join(s + b for s, b in re.findall(r"([+-])([^+-]+)", text)) != text:
        raise ValueError(f"cannot parse kernel expression {expr!r}")
    top = max((max(v) for _, v in terms if v), default=0)
    if top < 2:
        raise ValueError("a kernel expression must mention at least x2")

    def f(*xs):
        total = 0
        for coef, vars_ in terms:
            t = coef
            for v in vars_:
                t *= xs[v - 1]
            total += t
        return total

    return kernel_from_function(q, top - 1, f, f"expr({expr})")


def apply(d: HomKernel, w: Sequence[int]) -> tuple:
    """Sliding-window image of a word of length n+k: a word of length n."""
    w = tuple(w)
    if len(w) <= d.k:
        raise WordTooShort(f"word of length {len(w)} has no image under a span-{d.k + 1} kernel")
    span = d.k + 1
    return tuple(d.table[d.index(w[i:i + span])] for i in range(len(w) - d.k))


def is_property_D(d: HomKernel) -> bool:
    return d.property_D


def _require_D(d: HomKernel):
    if not d.property_D:
        raise NotPropertyD("kernel is not a Latin square in its first and last variables")


def lift_sequence(d: HomKernel, base: Iterable[int], seed: Sequence[int]) -> tuple:
    """Solve d(z_i..z_{i+k}) = base_i for i = 1..L starting from ``seed``."""
    _require_D(d)
    seed = tuple(seed)
    if len(seed) != d.k:
        raise ValueError(f"seed must have length k={d.k}")
    q, k = d.q, d.k
    inv = d.last_inverse
    mod = q ** (k - 1)
    z = list(seed)
    prefix = d.index(seed)
    for c in base:
        x = inv[prefix * q + c]
        z.append(x)
        prefix = (prefix % mod) * q + x
    return tuple(z)


@dataclass(frozen=True)
class LiftDecomposition:
    """Preimage of a vertex-disjoint base cycle under a property-(D) kernel.

    ``cycles[i]`` is the lifted cycle that starts at ``starts[i]`` and its
    stored symbols are the concatenated traversals, so its (n+k)-windows are
    the preimage vertices.  ``seed_map`` sends each k-prefix to the suffix
    left after one traversal of the base.
    """

    base: Cycle
    n: int
    k: int
    cycles: tuple
    starts: tuple
    seed_map: dict

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


def smallest_disjoint_order(base: Cycle) -> int:
    for n in range(1, len(base) + 1):
        if len(set(base.windows(n))) == len(base):
            return n
    raise NotVertexDisjoint("the base cycle repeats a window at every order")


def lift_cycle_decomposition(d: HomKernel, base: Cycle, n: Optional[int] = None) -> LiftDecomposition:
    _require_D(d)
    if base.q != d.q:
        raise ValueError("kernel and base cycle use different alphabets")
    if n is None:
        n = smallest_disjoint_order(base)
    elif len(set(base.windows(n))) != len(base):
        raise NotVertexDisjoint(f"base cycle repeats an {n}-window")
    q, k, l = d.q, d.k, len(base)
    smap = seed_map(d, base)
    seen = set()
    cycles, starts = [], []
    for seed in product(range(q), repeat=k):
        if seed in seen:
            continue
        symbols = []
        s = seed
        for _ in range(q ** k):
            seen.add(s)
            z = lift_sequence(d, base.symbols, s)
            symbols.extend(z[:l])
            s = smap[s]
            if s == seed:
                break
        else:
            raise NotPropertyD("lift did not close within q^k traversals")
        cycles.append(Cycle(tuple(symbols), q))
        starts.append(seed)
    return LiftDecomposition(base, n, k, tuple(cycles), tuple(starts), smap)


def seed_map(d: HomKernel, base: Sequence[int]) -> dict:
    """Map each k-seed to the last k symbols of its lift over one traversal."""
    _require_D(d)
    syms = tuple(base)
    out = {}
    for seed in product(range(d.q), repeat=d.k):
        out[seed] = lift_sequence(d, syms, seed)[-d.k:]
    if len(set(out.values())) != len(out):
        raise NotPropertyD("induced seed map is not a bijection")
    return out


@lru_cache(maxsize=None)
def latin_square_count(q: int) -> int:
    """Number of q x q Latin squares.

    Reduced squares (first row and column in natural order) are enumerated by
    backtracking; every Latin square is a row and column relabelling of
    exactly one of them, giving the factor q!(q-1)!.
    """
    if q > 6:
        raise TooLarge(f"Latin square enumeration is limited to q <= 6 (got {q})")
    from math import factorial

    # reduced square: row 0 and column 0 are 0..q-1, so row r starts with r
    rows = [{r} for r in range(q)]
    cols = [{c} for c in range(q)]
    cells = [(r, c) for r in range(1, q) for c in range(1, q)]
    count = 0

    def place(i):
        nonlocal count
        if i == len(cells):
            count += 1
            return
        r, c = cells[i]
        for v in range(q):
            if v in rows[r] or v in cols[c]:
                continue
            rows[r].add(v)
            cols[c].add(v)
            place(i + 1)
            rows[r].discard(v)
            cols[c].discard(v)

    place(0)
    return count * factorial(q) * factorial(q - 1)


def count_property_D(alphabet: AlphabetLike, k: int) -> int:
    """Number of span-(k+1) kernels over Z_q with property (D).

    Each of the q^(k-1) middle assignments independently carries a Latin
    square in (x_1, x_{k+1}), so the count is the product of A_q over them.
    """
    q = _q(alphabet)
    if k < 1:
        raise ValueError("k must be >= 1")
    if q ** (k + 1) > COUNT_GUARD:
        raise TooLarge(f"q^(k+1) = {q ** (k + 1)} exceeds {COUNT_GUARD}")
    per_assignment = latin_square_count(q)
    total = 1
    for _ in product(range(q), repeat=k - 1):
        total *= per_assignment
    return total


# -- kernel exchange format -------------------------------------------------

def format_kernel(d: HomKernel) -> str:
    lines = [f"q={d.q} k={d.k}"]
    for xs in d.inputs():
        lines.append(" ".join(str(x) for x in xs) + f" -> {d(*xs)}")
    return "\n".join(lines) + "\n"


def _parse_assignments(text: str) -> dict:
    out = {}
    for tok in text.split():
        if "=" not in tok:
            raise ValueError(f"expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def parse_kernel_spec(spec: str) -> HomKernel:
    """One-line spec: ``q=3 beta=1`` or ``q=2 d=x1+x3``."""
    head, _, rest = spec.strip().partition(" d=")
    fields = _parse_assignments(head)
    if "q" not in fields:
        raise ValueError("kernel spec needs q=<int>")
    q = int(fields["q"])
    if rest:
        return kernel_from_expression(q, rest)
    if "beta" in fields:
        return make_linear_kernel(q, int(fields["beta"]))
    raise ValueError("kernel spec needs beta=<int> or d=<expression>")


def parse_kernel(text: str) -> HomKernel:
    """Parse the kernel file format (header ``q=<int> k=<int>`` then table lines)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty kernel file")
    header = _parse_assignments(lines[0].replace("linear", ""))
    if "q" not in header:
        raise ValueError("kernel header must give q=<int>")
    q = int(header["q"])
    body = lines[1:]
    linear = [ln for ln in lines if ln.startswith("linear")]
    if linear:
        beta = _parse_assignments(linear[0][len("linear"):]).get("beta")
        if beta is None:
            raise ValueError("linear kernel needs beta=<int>")
        if "k" in header and int(header["k"]) != 1:
            raise ValueError("linear kernels have k=1")
        return make_linear_kernel(q, int(beta))
    if "k" not in header:
        raise ValueError("kernel header must give k=<int>")
    k = int(header["k"])
    size = q ** (k + 1)
    table = [None] * size
    for ln in body:
        lhs, arrow, rhs = ln.partition("->")
        if not arrow:
            raise ValueError(f"malformed kernel line {ln!r}")
        xs = [int(t) for t in lhs.split()]
        if len(xs) != k + 1 or any(not 0 <= x < q for x in xs):
            raise ValueError(f"malformed kernel line {ln!r}")
        idx = 0
        for x in xs:
            idx = idx * q + x
        if table[idx] is not None:
            raise ValueError(f"duplicate kernel entry {ln!r}")
        table[idx] = int(rhs)
    if any(v is None for v in table):
        raise ValueError(f"kernel table is not total: expected {size} lines")
    return HomKernel(q, k, tuple(table), "custom")
