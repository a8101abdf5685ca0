"""Degree sequences: parsing, graphicality tests and the reductions used by the
inductive constructions (laying off, lifting, the minus-two shift and the
complementary sequence)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement, groupby


class SequenceError(ValueError):
    """Malformed sequence text or a violated operation precondition."""


@dataclass(frozen=True)
class DegreeSequence:
    """A non-increasing integer sequence ``(d_1, ..., d_n)``.

    The constructor sorts its input, so ``DegreeSequence((5, 6, 5))`` and
    ``DegreeSequence((6, 5, 5))`` are the same value.
    """

    degrees: tuple[int, ...]

    def __post_init__(self):
        degs = tuple(sorted((int(d) for d in self.degrees), reverse=True))
        if not degs:
            raise SequenceError("a degree sequence needs at least one entry")
        if degs[-1] < 0:
            raise SequenceError(f"negative degree in {degs}")
        object.__setattr__(self, "degrees", degs)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def max(self) -> int:
        return self.degrees[0]

    @property
    def min(self) -> int:
        return self.degrees[-1]

    def d(self, i: int) -> int:
        """1-based access, so ``seq.d(1)`` is the largest entry."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.degrees[i - 1]

    def f(self) -> int:
        """``max{i : d_i >= i}`` (0 when no index qualifies)."""
        best = 0
        for i, d in enumerate(self.degrees, start=1):
            if d >= i:
                best = i
        return best

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, idx):
        return self.degrees[idx]

    def __str__(self):
        return format_exponent(self.degrees)


def format_exponent(degrees) -> str:
    parts = []
    for value, run in groupby(degrees):
        k = len(list(run))
        parts.append(f"{value}^{k}" if k > 1 else str(value))
    return "(" + ",".join(parts) + ")"


_TERM = re.compile(r"^(-?\d+)(?:\^(-?\d+))?$")


def parse(text: str) -> DegreeSequence:
    """Parse exponent notation such as ``"6^3,5^4"`` or ``"(7, 6^2, 5^5)"``."""
    body = re.sub(r"\s+", "", text)
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        raise SequenceError("empty sequence")
    degrees: list[int] = []
    for token in body.split(","):
        m = _TERM.match(token)
        if m is None:
            raise SequenceError(f"malformed term {token!r}")
        value = int(m.group(1))
        count = 1 if m.group(2) is None else int(m.group(2))
        if count <= 0:
            raise SequenceError(f"exponent must be positive in {token!r}")
        degrees.extend([value] * count)
    return DegreeSequence(tuple(degrees))


def _seq(seq) -> DegreeSequence:
    if isinstance(seq, DegreeSequence):
        return seq
    if isinstance(seq, str):
        return parse(seq)
    return DegreeSequence(tuple(seq))


def is_graphic(seq) -> bool:
    """Erdős–Gallai test over ``1 <= k <= f(seq)``."""
    seq = _seq(seq)
    d = seq.degrees
    n = seq.n
    if seq.total % 2 or d[0] > n - 1:
        return False
    prefix = 0
    for k in range(1, seq.f() + 1):
        prefix += d[k - 1]
        rhs = k * (k - 1) + sum(min(k, x) for x in d[k:])
        if prefix > rhs:
            return False
    return True


def laying_sequence(seq) -> DegreeSequence:
    """Remove the last entry ``d_n`` and decrement the ``d_n`` largest."""
    seq = _seq(seq)
    d = seq.degrees
    n, dn = seq.n, seq.min
    if n < 2 or dn < 1 or dn > n - 1:
        raise SequenceError(f"cannot lay off d_n={dn} from {seq}")
    rest = [x - 1 for x in d[:dn]] + list(d[dn:n - 1])
    return DegreeSequence(tuple(rest))


def lifting_sequence(seq) -> DegreeSequence:
    """Remove ``d_n`` and decrement only the ``d_n - 2`` largest entries."""
    seq = _seq(seq)
    d = seq.degrees
    n, dn = seq.n, seq.min
    if n < 2 or dn < 2 or dn - 2 > n - 1:
        raise SequenceError(f"cannot form the lifting sequence of {seq}")
    k = dn - 2
    rest = [x - 1 for x in d[:k]] + list(d[k:n - 1])
    return DegreeSequence(tuple(rest))


def minus2_sequence(seq) -> DegreeSequence:
    seq = _seq(seq)
    if seq.min < 2:
        raise SequenceError(f"minimum entry of {seq} is below 2")
    return DegreeSequence(tuple(x - 2 for x in seq.degrees))


def complement_sequence(seq) -> DegreeSequence:
    seq = _seq(seq)
    n = seq.n
    if seq.max > n - 1:
        raise SequenceError(f"{seq} has an entry above n-1={n - 1}")
    return DegreeSequence(tuple(n - 1 - x for x in seq.degrees))


def is_graphic_small_gap(seq) -> bool | None:
    """Sufficient test ``n >= floor((d_1 + d_n + 1)^2 / 4) / d_n``.

    Returns True when the inequality holds and None when it is inconclusive.
    An entry above ``n - 1`` cannot satisfy the inequality, so it is reported
    as inconclusive rather than rejected.
    """
    seq = _seq(seq)
    d1, dn, n = seq.max, seq.min, seq.n
    if dn <= 0 or seq.total % 2:
        raise SequenceError(f"small-gap test needs 0 < d_n and an even sum: {seq}")
    # n * d_n >= floor(...) avoids the division
    if n * dn >= (d1 + dn + 1) ** 2 // 4:
        return True
    return None


def _in_s1(d: tuple[int, ...], n: int) -> bool:
    for k in range(0, n - 3):
        if (k - n) % 2:
            continue
        if d == (n - 1,) * 2 + (3,) * (n - k - 2) + (2,) * k:
            return True
    return False


def _in_s2(d: tuple[int, ...], n: int) -> bool:
    head, tail = d[:4], d[4:]
    return (
        all(x == 2 for x in tail)
        and n - 1 >= head[0]
        and head[3] >= 3
        and sum(head) == 2 * n + 4
    )


def in_exceptional_set(seq) -> bool:
    """Membership in the exceptional family that has no Z3-connected realization."""
    seq = _seq(seq)
    d, n = seq.degrees, seq.n
    if _in_s1(d, n) or _in_s2(d, n):
        return True
    return n % 2 == 0 and d == (n - 1,) + (3,) * (n - 1)


def is_z3_realizable(seq) -> bool:
    seq = _seq(seq)
    if seq.n < 5 or seq.min < 2 or not is_graphic(seq):
        raise SequenceError(f"Z3 criterion needs a graphic sequence with n >= 5 and d_n >= 2: {seq}")
    return seq.total >= 4 * seq.n - 4 and not in_exceptional_set(seq)


def is_s3_realizable(seq) -> bool:
    seq = _seq(seq)
    if seq.min <= 0:
        raise SequenceError(f"S3 criterion needs positive entries: {seq}")
    if not is_graphic(seq):
        raise SequenceError(f"{seq} is not graphic")
    return seq.total >= 6 * seq.n - 4 and seq.min >= 4


def s3_conditions(seq) -> dict[str, bool]:
    """Itemized verdicts for the two S3 conditions (plus graphicality)."""
    seq = _seq(seq)
    return {
        "graphic": is_graphic(seq),
        "sum": seq.total >= 6 * seq.n - 4,
        "min_degree": seq.min >= 4,
    }


def graphic_sequences(n: int, lo: int = 0, hi: int | None = None):
    """Every graphic sequence of length ``n`` with entries in ``[lo, hi]``,
    in reverse lexicographic order."""
    if n < 1:
        return
    hi = n - 1 if hi is None else min(hi, n - 1)
    for combo in combinations_with_replacement(range(hi, lo - 1, -1), n):
        if sum(combo) % 2 == 0 and is_graphic(combo):
            yield DegreeSequence(combo)
