"""Young-diagram bookkeeping for the K-types of U(a, b).

A dominant element ``H = (x; y)`` of the compact Cartan determines two nested
partitions ``alpha ⊆ beta`` inside the ``a × b`` box: row ``i`` of ``alpha``
counts the ``y_j`` strictly below ``x_i`` and row ``i`` of ``beta`` counts the
``y_j`` weakly below it.  Pairs arising this way are called *compatible*.

Only the order type of the entries of ``H`` matters, so dominant elements are
always integer vectors here, and realizing a pair never needs more than
``a + b`` distinct levels.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, NamedTuple, Sequence


class NotDominantError(ValueError):
    """Raised when an H vector is not non-increasing in each block."""


class IncompatiblePairError(ValueError):
    """Raised when a partition pair is not realized by any dominant element.

    The offending pair's :class:`SkewReport` is attached as ``report``.
    """

    def __init__(self, message: str, report: "SkewReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class GroupShape:
    """Ranks ``(a, b)`` of the two compact factors of ``K = U(a) × U(b)``."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("group ranks must be integers")
        if self.a < 1 or self.b < 1:
            raise ValueError(f"U({self.a},{self.b}): both ranks must be >= 1")

    @property
    def area(self) -> int:
        return self.a * self.b

    def __str__(self):
        return f"U({self.a},{self.b})"


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        # Rows past the last nonzero part are empty.
        return self.parts[i] if i < len(self.parts) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise ValueError(f"{self} has more than {n} rows")
        return self.parts + (0,) * (n - len(self.parts))

    def contains(self, other: "Partition") -> bool:
        """True if the diagram of ``other`` lies inside this one."""
        return len(other) <= len(self) and all(
            other[i] <= self[i] for i in range(len(other))
        )

    def fits(self, rows: int, cols: int) -> bool:
        return len(self.parts) <= rows and all(p <= cols for p in self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "∅"


def _as_partition(value) -> Partition:
    if isinstance(value, Partition):
        return value
    return Partition(tuple(value))


@dataclass(frozen=True)
class PartitionPair:
    """A nested pair ``alpha ⊆ beta ⊆ a × b``.

    Well-formedness is checked on construction; compatibility is not (use
    :func:`is_compatible`).
    """

    alpha: Partition
    beta: Partition
    shape: GroupShape

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_partition(self.alpha))
        object.__setattr__(self, "beta", _as_partition(self.beta))
        a, b = self.shape.a, self.shape.b
        if not self.beta.fits(a, b):
            raise ValueError(f"beta={self.beta} does not fit in the {a}x{b} box")
        if not self.beta.contains(self.alpha):
            raise ValueError(f"alpha={self.alpha} is not inside beta={self.beta}")

    @classmethod
    def of(cls, alpha: Sequence[int], beta: Sequence[int], a: int, b: int):
        return cls(Partition(tuple(alpha)), Partition(tuple(beta)), GroupShape(a, b))

    def sort_key(self):
        a = self.shape.a
        return (self.alpha.padded(a), self.beta.padded(a))

    def __str__(self):
        return f"{self.shape} alpha={self.alpha} beta={self.beta}"


@dataclass(frozen=True)
class DominantElement:
    """Integer vector ``H = (x_1 >= ... >= x_a ; y_1 >= ... >= y_b)``."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        x, y = tuple(self.x), tuple(self.y)
        for v in x + y:
            if not isinstance(v, int):
                raise TypeError(f"H entries must be integers, got {v!r}")
        for name, seq in (("x", x), ("y", y)):
            if any(seq[k] < seq[k + 1] for k in range(len(seq) - 1)):
                raise NotDominantError(
                    f"{name}={seq} is not non-increasing; sort it explicitly"
                )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def shape(self) -> GroupShape:
        return GroupShape(len(self.x), len(self.y))

    def entries(self) -> tuple[int, ...]:
        """The diagonal ``(x_1..x_a, y_1..y_b)`` of H as a gl(a+b) element."""
        return self.x + self.y

    def negated(self) -> "DominantElement":
        """``-H`` re-sorted into dominant position."""
        return DominantElement(
            tuple(-v for v in reversed(self.x)), tuple(-v for v in reversed(self.y))
        )

    def __str__(self):
        return f"H=({','.join(map(str, self.x))}; {','.join(map(str, self.y))})"


class SkewComponent(NamedTuple):
    row_range: tuple[int, int]
    col_range: tuple[int, int]
    cells: int
    is_rectangle: bool


class SkewReport(NamedTuple):
    components: tuple[SkewComponent, ...]
    admissible: bool

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "components": [
                {
                    "rowRange": list(c.row_range),
                    "colRange": list(c.col_range),
                    "cells": c.cells,
                    "isRectangle": c.is_rectangle,
                }
                for c in self.components
            ],
        }


class Degree(NamedTuple):
    R: int
    bidegree: tuple[int, int]


def _check_shape(H: DominantElement, shape: GroupShape):
    if len(H.x) != shape.a or len(H.y) != shape.b:
        raise ValueError(f"{H} does not have the block sizes of {shape}")


def partitions_from_dominant(H: DominantElement, shape: GroupShape | None = None):
    """Partition pair attached to a dominant element.

    >>> H = DominantElement((2, 0), (1, 0, -1))
    >>> p = partitions_from_dominant(H)
    >>> p.alpha.parts, p.beta.parts
    ((3, 1), (3, 2))
    """
    if shape is None:
        shape = H.shape
    _check_shape(H, shape)
    alpha = tuple(sum(1 for y in H.y if x > y) for x in H.x)
    beta = tuple(sum(1 for y in H.y if x >= y) for x in H.x)
    return PartitionPair(Partition(alpha), Partition(beta), shape)


def skew_report(pair: PartitionPair) -> SkewReport:
    """Edge-connected components of ``beta \\ alpha`` (1-based rows/columns)."""
    a = pair.shape.a
    cells = {
        (i + 1, c + 1)
        for i in range(a)
        for c in range(pair.alpha[i], pair.beta[i])
    }
    components = []
    seen: set[tuple[int, int]] = set()
    for start in sorted(cells):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            r, c = stack.pop()
            comp.append((r, c))
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        rows = [r for r, _ in comp]
        cols = [c for _, c in comp]
        rr, cr = (min(rows), max(rows)), (min(cols), max(cols))
        box = (rr[1] - rr[0] + 1) * (cr[1] - cr[0] + 1)
        components.append(SkewComponent(rr, cr, len(comp), box == len(comp)))
    return SkewReport(tuple(components), all(c.is_rectangle for c in components))


is_admissible_skew = skew_report


def _construct_dominant(pair: PartitionPair) -> DominantElement | None:
    """Least-tied dominant element for ``pair``, or None if none exists.

    Work with ``z_k = y_{b+1-k}`` (y ascending).  Row ``i`` forces
    ``z_{alpha_i+1} = ... = z_{beta_i} = x_i``; every other relation can be
    made strict.  So impose exactly the forced ties and test the round trip.
    """
    a, b = pair.shape.a, pair.shape.b
    alpha, beta = pair.alpha.padded(a), pair.beta.padded(a)

    # Forced ties are unions of index intervals, so blocks stay contiguous.
    tied_to_prev = [False] * (b + 1)  # tied_to_prev[k]: z_k == z_{k-1}, 1-based
    for lo, hi in zip(alpha, beta):
        for k in range(lo + 2, hi + 1):
            tied_to_prev[k] = True
    rank = [0] * (b + 1)
    for k in range(2, b + 1):
        rank[k] = rank[k - 1] + (0 if tied_to_prev[k] else 1)
    zval = [0] + [2 * rank[k] + 1 for k in range(1, b + 1)]

    x = []
    for lo, hi in zip(alpha, beta):
        if hi > lo:
            x.append(zval[lo + 1])
        else:
            x.append(zval[lo] + 1 if lo >= 1 else 0)
    y = tuple(reversed(zval[1:]))
    try:
        H = DominantElement(tuple(x), y)
    except NotDominantError:
        return None
    if partitions_from_dominant(H, pair.shape) != pair:
        return None
    # Compress to consecutive levels 0, 1, 2, ... preserving the order type.
    levels = {v: n for n, v in enumerate(sorted(set(H.entries())))}
    return DominantElement(tuple(levels[v] for v in H.x), tuple(levels[v] for v in H.y))


def is_compatible(pair: PartitionPair) -> bool:
    """True iff some dominant element realizes ``pair``."""
    return _construct_dominant(pair) is not None


def dominant_from_pair(pair: PartitionPair) -> DominantElement:
    """A dominant element with entries in ``0..a+b`` realizing ``pair``.

    Raises :class:`IncompatiblePairError` (carrying the skew report) when
    the pair is not compatible.
    """
    H = _construct_dominant(pair)
    if H is None:
        raise IncompatiblePairError(f"{pair} is not compatible", skew_report(pair))
    return H


def cohomological_degree(pair: PartitionPair) -> Degree:
    """``R = |alpha| + ab - |beta|`` with bidegree ``(|alpha|, ab - |beta|)``."""
    if not is_compatible(pair):
        raise IncompatiblePairError(f"{pair} is not compatible", skew_report(pair))
    k = pair.alpha.size
    l = pair.shape.area - pair.beta.size
    return Degree(k + l, (k, l))


def rectangle_pair(i: int, j: int, shape: GroupShape) -> PartitionPair:
    """The pair ``(i^a, (b-j)^a)`` labelling the K-type ``V_{i,j}``."""
    if i < 0 or j < 0 or i + j > shape.b:
        raise ValueError(f"V_{{{i},{j}}} of {shape} needs i,j >= 0 and i+j <= b")
    return PartitionPair(
        Partition((i,) * shape.a), Partition((shape.b - j,) * shape.a), shape
    )


def iter_partitions_in_box(rows: int, cols: int) -> Iterator[Partition]:
    """All partitions fitting in ``rows × cols``, in lexicographic order of padded parts."""

    def rec(prefix: tuple[int, ...], cap: int):
        if len(prefix) == rows:
            yield prefix
            return
        for v in range(cap + 1):
            yield from rec(prefix + (v,), v)

    for padded in sorted(rec((), cols)):
        yield Partition(padded)


@lru_cache(maxsize=None)
def _compatible_pairs(shape: GroupShape) -> tuple[PartitionPair, ...]:
    box = list(iter_partitions_in_box(shape.a, shape.b))
    out = []
    for alpha in box:
        for beta in box:
            if beta.contains(alpha):
                pair = PartitionPair(alpha, beta, shape)
                if is_compatible(pair):
                    out.append(pair)
    return tuple(sorted(out, key=PartitionPair.sort_key))


def enumerate_compatible(shape: GroupShape) -> list[PartitionPair]:
    """Every compatible pair in the box, sorted by ``(alpha, beta)`` padded to ``a`` rows."""
    return list(_compatible_pairs(shape))


def iter_dominant(shape: GroupShape, levels: int | None = None) -> Iterator[DominantElement]:
    """Every dominant element with entries in ``0..levels`` (default ``a + b``)."""
    top = shape.a + shape.b if levels is None else levels
    values = range(top, -1, -1)
    for x in combinations_with_replacement(values, shape.a):
        for y in combinations_with_replacement(values, shape.b):
            yield DominantElement(x, y)


def complement_flip(pair: PartitionPair) -> PartitionPair:
    """Image of ``pair`` under ``H -> -H``: box complements of beta and alpha, swapped."""
    a, b = pair.shape.a, pair.shape.b
    al, be = pair.alpha.padded(a), pair.beta.padded(a)
    new_alpha = tuple(b - be[a - 1 - i] for i in range(a))
    new_beta = tuple(b - al[a - 1 - i] for i in range(a))
    return PartitionPair(Partition(new_alpha), Partition(new_beta), pair.shape)
