"""Exact arithmetic on tuples of residues and the cyclic pair-sum map.

The central object is an immutable tuple over Z_m.  The map of interest
sends (a_0, ..., a_{n-1}) to (a_0+a_1, a_1+a_2, ..., a_{n-1}+a_0), every
sum taken mod m and every index mod n.  Iterating it is available through
three interchangeable strategies (single stepping, an explicit binomial
sum, and exponentiation of 1+x in Z_m[x]/(x^n - 1)) so that the test
suite can play them against each other.

All operations are pure functions on immutable values and are safe to
call from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass

MODULUS_CAP = 1 << 32  # keeps per-component products inside 64-bit intermediates

# advance() steps directly while that is cheaper than exponentiating the
# polynomial 1+x; the crossover constant is tunable, correctness is not
# affected by it.
STEP_FACTOR = 4


@dataclass(frozen=True)
class ResidueTuple:
    """An n-tuple of residues mod m.  Index arithmetic is always mod n."""

    components: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        m = self.modulus
        if not isinstance(m, int) or not 2 <= m <= MODULUS_CAP:
            raise ValueError(f"modulus must be an integer in [2, 2^32], got {m!r}")
        comps = tuple(self.components)
        if len(comps) < 1:
            raise ValueError("tuple length must be at least 1")
        for c in comps:
            if not 0 <= c < m:
                raise ValueError(f"component {c} out of range [0, {m})")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __str__(self) -> str:
        return format_tuple(self)


def basic_tuple(m: int, n: int) -> ResidueTuple:
    """(1, 0, ..., 0) over Z_m: the orbit generator realizing the maximal cycle."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    return ResidueTuple((1,) + (0,) * (n - 1), m)


def apply_T(a: ResidueTuple) -> ResidueTuple:
    """One application of the pair-sum map."""
    comps = a.components
    m, n = a.modulus, a.n
    return ResidueTuple(
        tuple((comps[i] + comps[(i + 1) % n]) % m for i in range(n)), m
    )


def apply_H(a: ResidueTuple) -> ResidueTuple:
    """Left rotation by one position."""
    comps = a.components
    return ResidueTuple(comps[1:] + comps[:1], a.modulus)


def component_sum(a: ResidueTuple) -> int:
    """Sum of all components mod m."""
    return sum(a.components) % a.modulus


def alternating_sum(a: ResidueTuple) -> int:
    """Sign-alternating sum of components mod m, normalized into [0, m)."""
    s = 0
    for i, c in enumerate(a.components):
        s += -c if i & 1 else c
    return s % a.modulus


def sigma_profile(a: ResidueTuple, block: int) -> tuple[int, ...]:
    """Strided alternating sums, one per index inside a block.

    Splits the tuple into blocks of size `block` (which must divide n) and
    returns, for each offset j < block, sum_i (-1)^i a[block*i + j] mod m.
    Mod 2 the signs are immaterial and these degenerate to plain sums.
    """
    m, n = a.modulus, a.n
    if not isinstance(block, int) or block < 1 or n % block:
        raise ValueError(f"block size {block!r} does not divide tuple length {n}")
    count = n // block
    comps = a.components
    out = []
    for j in range(block):
        s = 0
        for i in range(count):
            c = comps[block * i + j]
            s += -c if i & 1 else c
        out.append(s % m)
    return tuple(out)


def _pascal_row_mod(k: int, m: int) -> list[int]:
    # exact big-integer row C(k, 0..k), reduced mod m only at the end
    row = [1 % m] * (k + 1)
    c = 1
    for j in range(1, k + 1):
        c = c * (k - j + 1) // j
        row[j] = c % m
    return row


def _advance_step(a: ResidueTuple, k: int) -> ResidueTuple:
    for _ in range(k):
        a = apply_T(a)
    return a


def _advance_binomial(a: ResidueTuple, k: int) -> ResidueTuple:
    # the k-th iterate has components sum_j C(k, j) * a_{i+j}
    m, n = a.modulus, a.n
    row = _pascal_row_mod(k, m)
    comps = a.components
    out = []
    for i in range(n):
        s = 0
        for j, c in enumerate(row):
            if c:
                s += c * comps[(i + j) % n]
        out.append(s % m)
    return ResidueTuple(tuple(out), m)


def _cyclic_mul(u: list[int], v: list[int], m: int, n: int) -> list[int]:
    out = [0] * n
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    t = i + j
                    if t >= n:
                        t -= n
                    out[t] = (out[t] + ui * vj) % m
    return out


def _advance_polypow(a: ResidueTuple, k: int) -> ResidueTuple:
    # square-and-multiply on 1+x in Z_m[x]/(x^n - 1); the coefficient of x^t
    # collects C(k, j) over all j = t mod n, so one correlation pass finishes.
    m, n = a.modulus, a.n
    acc = [0] * n
    acc[0] = 1 % m
    base = [0] * n
    base[0] = 1 % m
    base[1 % n] = (base[1 % n] + 1) % m
    e = k
    while e:
        if e & 1:
            acc = _cyclic_mul(acc, base, m, n)
        e >>= 1
        if e:
            base = _cyclic_mul(base, base, m, n)
    comps = a.components
    out = []
    for i in range(n):
        s = 0
        for t, q in enumerate(acc):
            if q:
                s += q * comps[(i + t) % n]
        out.append(s % m)
    return ResidueTuple(tuple(out), m)


_ADVANCE_STRATEGIES = {
    "step": _advance_step,
    "binomial": _advance_binomial,
    "polypow": _advance_polypow,
}


def advance(a: ResidueTuple, k: int, strategy: str = "auto") -> ResidueTuple:
    """The k-th iterate of the pair-sum map applied to `a`.

    `strategy` picks the route: "step", "binomial", "polypow", or "auto"
    (stepping for small k, polynomial exponentiation otherwise).  All
    strategies agree; the choice only affects cost.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"iteration count must be a nonnegative integer, got {k!r}")
    if k == 0:
        return a
    if strategy == "auto":
        if k <= STEP_FACTOR * a.n * max(1, k.bit_length()):
            return _advance_step(a, k)
        return _advance_polypow(a, k)
    try:
        return _ADVANCE_STRATEGIES[strategy](a, k)
    except KeyError:
        raise ValueError(f"unknown advance strategy {strategy!r}") from None


def format_tuple(a: ResidueTuple) -> str:
    """Render as the text form `m:n:c0,c1,...,c{n-1}`."""
    return f"{a.modulus}:{a.n}:{','.join(map(str, a.components))}"


def parse_tuple(text: str) -> ResidueTuple:
    """Parse the text form `m:n:c0,c1,...,c{n-1}`."""
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValueError(f"expected m:n:c0,...,c{{n-1}}, got {text!r}")
    try:
        m = int(parts[0])
        n = int(parts[1])
        comps = tuple(int(c) for c in parts[2].split(","))
    except ValueError:
        raise ValueError(f"non-integer field in tuple text {text!r}") from None
    if len(comps) != n:
        raise ValueError(f"declared length {n} but {len(comps)} components in {text!r}")
    return ResidueTuple(comps, m)
