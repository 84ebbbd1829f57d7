"""Sparse integer polynomials in the variables X_1..X_k and B, and the two
independent computations of the weighted forest sum they must reconcile.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from . import dyck, forests

TermKey = tuple[int, tuple[int, ...]]  # (power of B, exponent vector)


class MultiPoly:
    """Integer-coefficient sum of terms c * B^d * X^p with a fixed variable count.

    Terms live in a dict keyed by (d, p); zero coefficients are never stored
    and iteration is in the canonical order (d ascending, p lexicographic).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[TermKey, int] | None = None):
        self.nvars = nvars
        self.terms: dict[TermKey, int] = {}
        if terms:
            for (bdeg, expo), coeff in terms.items():
                self.add_term(coeff, bdeg, expo)

    def add_term(self, coeff: int, bdeg: int, expo: Sequence[int]) -> None:
        expo = tuple(expo)
        if len(expo) != self.nvars:
            raise ValueError(f"exponent vector {expo} has {len(expo)} entries, expected {self.nvars}")
        if bdeg < 0 or any(e < 0 for e in expo):
            raise ValueError("negative exponents are not allowed")
        if coeff == 0:
            return
        key = (bdeg, expo)
        new = self.terms.get(key, 0) + coeff
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    def items(self) -> Iterator[tuple[TermKey, int]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        out = MultiPoly(self.nvars, self.terms)
        for (bdeg, expo), coeff in other.terms.items():
            out.add_term(coeff, bdeg, expo)
        return out

    def mul_monomial(self, coeff: int, bdeg: int, expo: Sequence[int]) -> "MultiPoly":
        """Multiply by a single monomial (handy for building test values)."""
        expo = tuple(expo)
        if len(expo) != self.nvars:
            raise ValueError("exponent vector length mismatch")
        out = MultiPoly(self.nvars)
        for (d, p), c in self.terms.items():
            out.add_term(c * coeff, d + bdeg, tuple(a + b for a, b in zip(p, expo)))
        return out

    def specialize_ones(self) -> int:
        """The value at B = X_1 = ... = X_k = 1, i.e. the coefficient sum."""
        return sum(self.terms.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (bdeg, expo), coeff in self.items():
            factors = []
            if coeff != 1:
                factors.append(str(coeff))
            if bdeg == 1:
                factors.append("B")
            elif bdeg > 1:
                factors.append(f"B^{bdeg}")
            if self.nvars:
                factors.append("X^(" + ",".join(str(e) for e in expo) + ")")
            if not factors:
                factors.append("1")
            parts.append(" ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {dict(sorted(self.terms.items()))!r})"

    def to_json_terms(self) -> list[dict]:
        return [{"b": bdeg, "p": list(expo), "c": coeff} for (bdeg, expo), coeff in self.items()]

    @classmethod
    def from_json_terms(cls, nvars: int, rows: list[dict]) -> "MultiPoly":
        out = cls(nvars)
        for row in rows:
            out.add_term(row["c"], row["b"], tuple(row["p"]))
        return out


def sigma_formula(k: int) -> MultiPoly:
    """Sum over Dyck vectors of coeff * B^(final deficit) * X^p."""
    out = MultiPoly(k)
    for p in dyck.enumerate_dyck(k):
        out.add_term(dyck.coeff_cp(p), dyck.deficit_profile(p)[k], p)
    return out


def sigma_bruteforce(k: int) -> MultiPoly:
    """Sum over all (k+1)! forests of 2^(trees-1) * B^(root children) * X^(exponents)."""
    out = MultiPoly(k)
    for f in forests.enumerate_forests(forests.standard_labels(k)):
        expo, tree_count, root_children = forests.monomial(f)
        out.add_term(2 ** (tree_count - 1), root_children, expo)
    return out


def poly_equal(a: MultiPoly, b: MultiPoly) -> tuple[bool, tuple[TermKey, int, int] | None]:
    """Exact equality; on failure also return (term key, coeff in a, coeff in b)
    for the canonically first differing term."""
    if a.terms == b.terms and a.nvars == b.nvars:
        return True, None
    for key in sorted(set(a.terms) | set(b.terms)):
        ca, cb = a.terms.get(key, 0), b.terms.get(key, 0)
        if ca != cb:
            return False, (key, ca, cb)
    # same terms but different declared variable counts
    return False, ((0, ()), a.nvars, b.nvars)
