"""Dyck vectors, their deficit profiles, the product coefficient, and the
encoding as lattice paths below the diagonal.

A Dyck vector of length k is a sequence (p_1, ..., p_k) of nonnegative
integers whose prefix sums never exceed the index: sum(p_1..p_j) <= j for
every j.  Vectors are plain tuples of ints throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import SelfCheckError

EAST, NORTH = 0, 1


def binom(m: int, n: int) -> int:
    """Binomial coefficient as a total function: 0 whenever n not in 0..m."""
    if n < 0 or n > m:
        return 0
    return math.comb(m, n)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def validate_dyck(p: Sequence[int]) -> None:
    """Raise ValueError naming the first offending index if p is not a Dyck vector."""
    total = 0
    for j, entry in enumerate(p, start=1):
        if not isinstance(entry, int) or entry < 0:
            raise ValueError(f"not a Dyck vector: entry p_{j} = {entry!r} is not a nonnegative integer")
        total += entry
        if total > j:
            raise ValueError(f"not a Dyck vector: prefix sum {total} exceeds index {j}")


def is_dyck(p: Sequence[int]) -> bool:
    try:
        validate_dyck(p)
    except ValueError:
        return False
    return True


def enumerate_dyck(k: int) -> Iterator[tuple[int, ...]]:
    """Yield every Dyck vector of length k exactly once, in lexicographic order.

    There are catalan(k+1) of them.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    prefix: list[int] = []

    def rec(j: int, total: int) -> Iterator[tuple[int, ...]]:
        if j > k:
            yield tuple(prefix)
            return
        for entry in range(j - total + 1):
            prefix.append(entry)
            yield from rec(j + 1, total + entry)
            prefix.pop()

    yield from rec(1, 0)


def count_dyck(k: int) -> int:
    """Count Dyck vectors of length k without enumerating them.

    Dynamic programming over the running deficit j - sum(p_1..p_j); this is
    independent of the closed-form Catalan expression it is checked against.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    # counts[d] = number of length-j prefixes with deficit d
    counts = [1]
    for _ in range(k):
        nxt = [0] * (len(counts) + 1)
        for d, c in enumerate(counts):
            # p_{j+1} = d + 1 - d' maps deficit d to any d' in 0..d+1
            for d2 in range(d + 2):
                nxt[d2] += c
        counts = nxt
    return sum(counts)


def deficit_profile(p: Sequence[int]) -> tuple[int, ...]:
    """The deficits D_0..D_k with D_j = j - sum(p_1..p_j); all >= 0, D_0 = 0."""
    validate_dyck(p)
    out = [0]
    total = 0
    for j, entry in enumerate(p, start=1):
        total += entry
        out.append(j - total)
    return tuple(out)


def coeff_cp(p: Sequence[int]) -> int:
    """The coefficient attached to a Dyck vector.

    Computed as prod_j [2*binom(D_{j-1}, p_j - 1) + binom(D_{j-1}, p_j)] and
    cross-checked against the restricted rational product
    prod_{p_j != 0} (2 + D_j/p_j) * binom(D_{j-1}, p_j - 1).
    """
    d = deficit_profile(p)
    result = 1
    for j, entry in enumerate(p, start=1):
        result *= 2 * binom(d[j - 1], entry - 1) + binom(d[j - 1], entry)

    alt = Fraction(1)
    for j, entry in enumerate(p, start=1):
        if entry != 0:
            alt *= (2 + Fraction(d[j], entry)) * binom(d[j - 1], entry - 1)
    if alt != result:
        raise SelfCheckError(f"coefficient formulas disagree for {tuple(p)}: {result} vs {alt}")
    return result


def coefficient_table(k: int) -> dict[tuple[int, ...], int]:
    """All (vector, coefficient) pairs for length k, in lexicographic order."""
    return {p: coeff_cp(p) for p in enumerate_dyck(k)}


def validate_path(steps: Sequence[int]) -> None:
    """Check a 0/1 step sequence is a balanced path staying weakly below the diagonal."""
    east = north = 0
    for i, s in enumerate(steps, start=1):
        if s == EAST:
            east += 1
        elif s == NORTH:
            north += 1
        else:
            raise ValueError(f"malformed path: step {i} = {s!r} is not 0 (East) or 1 (North)")
        if north > east:
            raise ValueError(f"malformed path: prefix violation at step {i} (North steps exceed East steps)")
    if east != north:
        raise ValueError(f"malformed path: {east} East steps vs {north} North steps")


def vector_to_path(p: Sequence[int]) -> tuple[int, ...]:
    """Encode a Dyck vector of length k as a path with k+1 East and k+1 North steps.

    Entry p_j becomes the vertical run after the j-th East step; the final
    East step is followed by the run D_k + 1 that closes the path on the
    diagonal.  The empty vector maps to the empty path.
    """
    validate_dyck(p)
    if len(p) == 0:
        return ()
    steps: list[int] = []
    for entry in p:
        steps.append(EAST)
        steps.extend([NORTH] * entry)
    steps.append(EAST)
    steps.extend([NORTH] * (len(p) + 1 - sum(p)))
    return tuple(steps)


def path_to_vector(steps: Sequence[int]) -> tuple[int, ...]:
    """Decode a path to its Dyck vector: vertical run lengths, omitting the last.

    Inverse of vector_to_path; a path with m East steps yields a vector of
    length m - 1, and the empty path yields the empty vector.
    """
    validate_path(steps)
    if len(steps) == 0:
        return ()
    runs: list[int] = []
    for s in steps:
        if s == EAST:
            runs.append(0)
        else:
            runs[-1] += 1
    return tuple(runs[:-1])
