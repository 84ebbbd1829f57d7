"""Strictly decreasing rooted labeled forests on totally ordered label sets.

A forest is a partial father map with father(v) > v, so the maximal label
is always a root.  Labels are positive ints, primed positive ints (a second
alphabet ordered below the unprimed one), and the distinguished empty root
``ROOT`` which is maximal in any label set.  Children are recovered from
the father map and always reported in increasing label order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .dyck import validate_dyck


class _EmptyRoot:
    __slots__ = ()

    def __repr__(self) -> str:
        return "∘"


ROOT = _EmptyRoot()


@dataclass(frozen=True)
class Primed:
    """A label from the second alphabet 1', 2', ...; orders below all ints."""

    n: int

    def __repr__(self) -> str:
        return f"{self.n}'"


def label_key(v) -> tuple[int, int]:
    """Sort key realizing primed < unprimed < ROOT, each alphabet by value."""
    if isinstance(v, Primed):
        return (0, v.n)
    if isinstance(v, int):
        return (1, v)
    if v is ROOT:
        return (2, 0)
    raise ValueError(f"not a forest label: {v!r}")


def label_str(v, ascii_root: bool = False) -> str:
    if v is ROOT:
        return "o" if ascii_root else "∘"
    return repr(v) if isinstance(v, Primed) else str(v)


def parse_label(s: str):
    if s in ("o", "∘"):
        return ROOT
    if s.endswith("'"):
        return Primed(int(s[:-1]))
    return int(s)


class Forest:
    """Immutable strictly decreasing forest given by labels and a father map."""

    __slots__ = ("labels", "father", "_children")

    def __init__(self, labels: Iterable, father: Mapping):
        labels = tuple(sorted(labels, key=label_key))
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        label_set = set(labels)
        children: dict = {v: [] for v in labels}
        for v, f in father.items():
            if v not in label_set:
                raise ValueError(f"father map defined on {v!r} which is not a label")
            if f not in label_set:
                raise ValueError(f"father of {v!r} is {f!r}, not a label")
            if label_key(f) <= label_key(v):
                raise ValueError(f"father must be strictly larger: father({v!r}) = {f!r}")
            children[f].append(v)
        for v in children:
            children[v].sort(key=label_key)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "father", dict(father))
        object.__setattr__(self, "_children", {v: tuple(c) for v, c in children.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Forest is immutable")

    @property
    def roots(self) -> tuple:
        return tuple(v for v in self.labels if v not in self.father)

    @property
    def tree_count(self) -> int:
        return len(self.labels) - len(self.father)

    def children(self, v) -> tuple:
        return self._children[v]

    def nchild(self, v) -> int:
        return len(self._children[v])

    def descendants(self, v) -> tuple:
        """v together with everything below it, in increasing label order."""
        out = []
        stack = [v]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(self._children[node])
        return tuple(sorted(out, key=label_key))

    def subtree(self, v) -> "Forest":
        nodes = self.descendants(v)
        node_set = set(nodes)
        return Forest(nodes, {w: self.father[w] for w in nodes if self.father.get(w) in node_set})

    def trees(self) -> list["Forest"]:
        return [self.subtree(r) for r in self.roots]

    def drop_max_tree(self) -> "Forest":
        """The forest with the tree rooted at the maximal label removed."""
        if not self.labels:
            return self
        gone = set(self.descendants(self.labels[-1]))
        keep = [v for v in self.labels if v not in gone]
        return Forest(keep, {v: f for v, f in self.father.items() if v not in gone})

    def preorder(self) -> list:
        """Roots in increasing order, each followed by its subtree depth-first."""
        out = []

        def visit(v):
            out.append(v)
            for c in self._children[v]:
                visit(c)

        for r in self.roots:
            visit(r)
        return out

    def text(self, ascii_root: bool = False) -> str:
        """Canonical nested form, one group per tree ordered by root label."""

        def node(v) -> str:
            inner = "".join(" " + node(c) for c in self._children[v])
            return f"({label_str(v, ascii_root)}{inner})"

        return " ".join(node(r) for r in self.roots)

    def to_json(self) -> dict:
        return {
            "labels": [label_str(v, ascii_root=True) for v in self.labels],
            "father": {label_str(v, ascii_root=True): label_str(f, ascii_root=True)
                       for v, f in sorted(self.father.items(), key=lambda it: label_key(it[0]))},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Forest":
        labels = [parse_label(s) for s in data["labels"]]
        father = {parse_label(v): parse_label(f) for v, f in data.get("father", {}).items()}
        return cls(labels, father)

    def _key(self):
        return (self.labels, tuple(sorted(self.father.items(), key=lambda it: label_key(it[0]))))

    def __eq__(self, other) -> bool:
        return isinstance(other, Forest) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Forest[{self.text()}]"


def standard_labels(k: int) -> tuple:
    """The label set [k] plus the empty root."""
    return tuple(range(1, k + 1)) + (ROOT,)


def enumerate_forests(labels: Iterable) -> Iterator[Forest]:
    """Yield every strictly decreasing forest on the label set, |S|! in all.

    Each node independently picks a strictly larger father or stays a root;
    choices run root-first, fathers in increasing order.
    """
    ordered = tuple(sorted(labels, key=label_key))
    options = [(None,) + ordered[i + 1:] for i in range(len(ordered))]
    for choice in itertools.product(*options):
        father = {v: f for v, f in zip(ordered, choice) if f is not None}
        yield Forest(ordered, father)


def trees_on(nodes: Sequence) -> Iterator[Forest]:
    """All strictly decreasing trees on a node set (rooted at its maximum)."""
    ordered = tuple(sorted(nodes, key=label_key))
    if not ordered:
        raise ValueError("a tree needs at least one node")
    options = [ordered[i + 1:] for i in range(len(ordered) - 1)]
    for choice in itertools.product(*options):
        yield Forest(ordered, dict(zip(ordered, choice)))


def enumerate_trees(labels: Iterable) -> Iterator[Forest]:
    """All |S|! trees with node set S plus the empty root."""
    ordered = tuple(sorted(labels, key=label_key))
    if ordered and ordered[-1] is ROOT:
        raise ValueError("the empty root is implied and must not be passed")
    yield from trees_on(ordered + (ROOT,))


def graft(tree: Forest, j) -> list[Forest]:
    """All trees obtained by attaching j below one node of the tree.

    j must be strictly smaller than every node; the results follow the
    preorder of the host tree, one per node.
    """
    if tree.tree_count != 1:
        raise ValueError("graft expects a tree (exactly one root)")
    if any(label_key(j) >= label_key(v) for v in tree.labels):
        raise ValueError(f"graft label {j!r} must be smaller than every node")
    out = []
    for v in tree.preorder():
        out.append(Forest(tree.labels + (j,), {**tree.father, j: v}))
    return out


def expand_covariant(labels: Iterable) -> list[Forest]:
    """Iterate grafting over the labels in decreasing order from the bare root.

    The result is checked to be exactly the trees on the label set, each
    produced once.
    """
    from .errors import SelfCheckError

    ordered = sorted(labels, key=label_key)
    trees = [Forest((ROOT,), {})]
    for j in reversed(ordered):
        trees = [g for t in trees for g in graft(t, j)]
    expected = {t._key() for t in enumerate_trees(ordered)}
    got = [t._key() for t in trees]
    if len(got) != len(set(got)) or set(got) != expected:
        raise SelfCheckError(f"grafting expansion of {ordered} does not match the tree enumeration")
    return trees


def exponent_map(forest: Forest) -> dict:
    """Exponent of each non-root label: child count, plus one at forest roots."""
    root_set = set(forest.roots)
    return {v: forest.nchild(v) + (1 if v in root_set else 0)
            for v in forest.labels if v is not ROOT}


def monomial(forest: Forest) -> tuple[tuple[int, ...], int, int]:
    """(exponent vector over [k], number of trees, child count of the empty root).

    Requires the labels to be [k] plus the empty root; the exponent vector
    is always a Dyck vector.
    """
    k = len(forest.labels) - 1
    if forest.labels != standard_labels(k):
        raise ValueError("monomial requires labels [k] plus the empty root")
    expo = exponent_map(forest)
    return tuple(expo[j] for j in range(1, k + 1)), forest.tree_count, forest.nchild(ROOT)


def prune(forest: Forest) -> Forest:
    """Move the empty root's children under the maximal label k, then rename
    k as the empty root.  Maps forests on [k] + root to forests on [k-1] + root."""
    k = len(forest.labels) - 1
    if forest.labels != standard_labels(k):
        raise ValueError("prune requires labels [k] plus the empty root")
    if k == 0:
        raise ValueError("cannot prune the bare root")
    father = {}
    for v in range(1, k):
        f = forest.father.get(v)
        if f is None:
            continue
        father[v] = ROOT if (f is ROOT or f == k) else f
    return Forest(standard_labels(k - 1), father)


def fiber(p: Sequence[int]) -> list[Forest]:
    """All forests on [k] + root whose exponent vector equals p, by filtering."""
    validate_dyck(p)
    target = tuple(p)
    k = len(target)
    return [f for f in enumerate_forests(standard_labels(k)) if monomial(f)[0] == target]


def cprime(p: Sequence[int]) -> int:
    """Sum of 2^(trees - 1) over the fiber of p; equals the product coefficient."""
    return sum(2 ** (f.tree_count - 1) for f in fiber(p))


def decorate(mu: Mapping, forest: Forest) -> Forest:
    """Adjoin a new lower alphabet by the map mu: each new label gets its
    image as father.  Roots are unchanged and child counts add up."""
    label_set = set(forest.labels)
    new = sorted(mu, key=label_key)
    for v in new:
        if v in label_set:
            raise ValueError(f"decoration label {v!r} already present")
        if forest.labels and label_key(v) >= label_key(forest.labels[0]):
            raise ValueError(f"decoration label {v!r} must order below the forest labels")
        if mu[v] not in label_set:
            raise ValueError(f"decoration target {mu[v]!r} is not a node of the forest")
    return Forest(forest.labels + tuple(new), {**forest.father, **mu})
