"""Permutations, their actions on vectors and matrices, symmetry groups, orbits.

Index convention, fixed once for the whole package: permutations are 0-based
internally and act on vectors by (s.x)_i = x[s(i)] and on square matrices by
(s.W)_ij = W[s(i), s(j)].  Display uses 1-based cycle notation, e.g. the swap
of the second and third component prints as "(32)".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError

#: brute-force symmetry search is capped at this pattern length (8! = 40320)
MAX_BRUTE_FORCE_N = 8

_ATOL = 1e-12


def as_pattern(x) -> np.ndarray:
    """Validate and convert a pattern to a read-only float vector."""
    a = np.asarray(x, dtype=float)
    if a.ndim != 1 or a.size < 1:
        raise ValueError(f"pattern must be a nonempty 1-d sequence, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("pattern entries must be finite")
    a = a.copy()
    a.flags.writeable = False
    return a


def is_binary(x) -> bool:
    a = np.asarray(x, dtype=float)
    return bool(np.all((a == 0.0) | (a == 1.0)))


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1}."""

    map: tuple

    def __post_init__(self):
        m = tuple(int(i) for i in self.map)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a bijection of 0..{len(m) - 1}: {m}")
        object.__setattr__(self, "map", m)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    def is_identity(self) -> bool:
        return self.map == tuple(range(self.n))

    def compose(self, other: "Permutation") -> "Permutation":
        """Composition u with u(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("permutation length mismatch")
        return Permutation(tuple(self.map[other.map[i]] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.map):
            inv[j] = i
        return Permutation(tuple(inv))

    def act(self, x) -> np.ndarray:
        """(s.x)_i = x[s(i)]."""
        a = np.asarray(x, dtype=float)
        if a.shape != (self.n,):
            raise ValueError(f"pattern length {a.shape} does not match permutation size {self.n}")
        return a[list(self.map)]

    def act_matrix(self, w) -> np.ndarray:
        """(s.W)_ij = W[s(i), s(j)]."""
        a = np.asarray(w, dtype=float)
        if a.shape != (self.n, self.n):
            raise ValueError(f"matrix shape {a.shape} does not match permutation size {self.n}")
        idx = list(self.map)
        return a[np.ix_(idx, idx)]

    def cycles(self):
        """Nontrivial cycles, each starting at its largest element (display order)."""
        seen = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.map[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.map[j]
            if len(cyc) > 1:
                top = cyc.index(max(cyc))
                out.append(tuple(cyc[top:] + cyc[:top]))
        return out

    def __str__(self):
        cycs = self.cycles()
        if not cycs:
            return "e"
        return "".join("(" + "".join(str(i + 1) for i in c) + ")" for c in cycs)


class SymmetryGroup:
    """A finite set of equal-size permutations forming a group."""

    def __init__(self, elements, validate: bool = True):
        elems = frozenset(elements)
        if not elems:
            raise ValueError("a group needs at least the identity element")
        sizes = {s.n for s in elems}
        if len(sizes) != 1:
            raise ValueError("group elements must all have the same size")
        self.n = sizes.pop()
        self.elements = elems
        if validate:
            e = Permutation.identity(self.n)
            if e not in elems:
                raise ValueError("group is missing the identity element")
            for s in elems:
                if s.inverse() not in elems:
                    raise ValueError(f"group is missing the inverse of {s}")
                for t in elems:
                    if s.compose(t) not in elems:
                        raise ValueError(f"group is not closed: {s} * {t} missing")

    @classmethod
    def trivial(cls, n: int) -> "SymmetryGroup":
        return cls([Permutation.identity(n)], validate=False)

    @classmethod
    def symmetric(cls, n: int) -> "SymmetryGroup":
        """The full symmetric group S_n (brute-force enumeration)."""
        if n > MAX_BRUTE_FORCE_N:
            raise CapabilityError(f"S_{n} enumeration is capped at n <= {MAX_BRUTE_FORCE_N}")
        return cls([Permutation(p) for p in itertools.permutations(range(n))], validate=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda s: s.map))

    def __contains__(self, s):
        return s in self.elements

    def __eq__(self, other):
        return isinstance(other, SymmetryGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __str__(self):
        return "{" + ", ".join(str(s) for s in self) + "}"


class PatternSet:
    """A finite set of distinct, equal-length real patterns.

    Membership testing is exact for binary patterns and uses an absolute
    tolerance of 1e-12 otherwise.
    """

    def __init__(self, items):
        arrays = [as_pattern(x) for x in items]
        if not arrays:
            raise ValueError("pattern set must be nonempty")
        lengths = {a.shape[0] for a in arrays}
        if len(lengths) != 1:
            raise ValueError(f"patterns have mixed lengths: {sorted(lengths)}")
        self.n = lengths.pop()
        for i, a in enumerate(arrays):
            for b in arrays[:i]:
                if np.allclose(a, b, rtol=0.0, atol=_ATOL):
                    raise ValueError(f"duplicate pattern {a.tolist()}")
        self.items = tuple(arrays)

    @property
    def matrix(self) -> np.ndarray:
        """Items stacked as rows, shape (len(self), n)."""
        return np.array(self.items)

    def is_binary(self) -> bool:
        return all(is_binary(a) for a in self.items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, x):
        a = np.asarray(x, dtype=float)
        if a.shape != (self.n,):
            return False
        if self.is_binary() and is_binary(a):
            return any(np.array_equal(a, b) for b in self.items)
        return any(np.allclose(a, b, rtol=0.0, atol=_ATOL) for b in self.items)

    def __eq__(self, other):
        if not isinstance(other, PatternSet) or len(self) != len(other):
            return False
        return all(a in other for a in self.items)

    def __repr__(self):
        return f"PatternSet({[a.tolist() for a in self.items]})"


@dataclass(frozen=True)
class OrbitPartition:
    """Disjoint orbit blocks whose union is the original pattern set."""

    blocks: tuple  # of PatternSet

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


# --- module-level operation wrappers -------------------------------------

def permutation_compose(s: Permutation, t: Permutation) -> Permutation:
    """u = s o t in index space: u(i) = s(t(i))."""
    return s.compose(t)


def act_on_vector(s: Permutation, x) -> np.ndarray:
    return s.act(x)


def act_on_matrix(s: Permutation, w) -> np.ndarray:
    return s.act_matrix(w)


def symmetry_group(x: PatternSet, cap: int = MAX_BRUTE_FORCE_N) -> SymmetryGroup:
    """All permutations mapping the set into itself, by brute force over S_n."""
    if x.n > cap:
        raise CapabilityError(
            f"symmetry search enumerates all {x.n}! permutations; capped at n <= {cap}")
    found = []
    for p in itertools.permutations(range(x.n)):
        s = Permutation(p)
        if all(s.act(a) in x for a in x):
            found.append(s)
    return SymmetryGroup(found, validate=False)


def orbits(x: PatternSet, g: SymmetryGroup) -> OrbitPartition:
    """Partition the set into orbits under the group action."""
    if x.n != g.n:
        raise ValueError("pattern length does not match group size")
    for s in g:
        for a in x:
            if s.act(a) not in x:
                raise ValueError(f"group element {s} does not stabilize the pattern set")
    remaining = list(range(len(x)))
    items = list(x)
    blocks = []
    while remaining:
        seed = remaining.pop(0)
        block = [seed]
        for s in g:
            y = s.act(items[seed])
            for j in list(remaining):
                if np.allclose(y, items[j], rtol=0.0, atol=_ATOL):
                    remaining.remove(j)
                    block.append(j)
        # close the block under the action (orbits of size > 2 need a sweep)
        changed = True
        while changed:
            changed = False
            for i in list(block):
                for s in g:
                    y = s.act(items[i])
                    for j in list(remaining):
                        if np.allclose(y, items[j], rtol=0.0, atol=_ATOL):
                            remaining.remove(j)
                            block.append(j)
                            changed = True
        blocks.append(PatternSet([items[i] for i in sorted(block)]))
    return OrbitPartition(tuple(blocks))


def pair_orbits(n: int, g: SymmetryGroup):
    """Equivalence classes of index pairs (i, j) under (i, j) -> (s(i), s(j)).

    Returns a tuple of classes, each a sorted tuple of (i, j) pairs; the
    classes are ordered by their smallest pair (row-major).  One free weight
    per class is what a group-compatible matrix allows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if g.n != n:
        raise ValueError("group size does not match n")
    seen = set()
    classes = []
    for i in range(n):
        for j in range(n):
            if (i, j) in seen:
                continue
            cls = {(s(i), s(j)) for s in g}
            seen |= cls
            classes.append(tuple(sorted(cls)))
    classes.sort(key=lambda c: c[0])
    return tuple(classes)
