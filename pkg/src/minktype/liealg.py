"""Matrix model of gl(a+b) ⊃ k = gl(a) ⊕ gl(b), with p = p⁺ ⊕ p⁻.

Rows and columns of gl(a+b) are numbered 1..a+b.  The noncompact part p has
the basis

* ``plus(i, j)  = E_{i, a+j}``  (upper-right block, spans p⁺)
* ``minus(i, j) = E_{a+j, i}``  (lower-left block, spans p⁻)

for ``1 <= i <= a``, ``1 <= j <= b``.  Basis positions are fixed once and
for all: every plus index (lexicographic in (i, j)) precedes every minus
index.  Sign conventions downstream depend on this order only.

The basis is declared orthonormal; the Killing form on p differs from this
by a positive scalar, which no containment or nonvanishing verdict sees.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .shapes import DominantElement, GroupShape, _check_shape

PLUS, MINUS = "plus", "minus"


class NonCompactGeneratorError(ValueError):
    pass


class BasisIndex(NamedTuple):
    sign: str
    i: int
    j: int

    def position(self, shape: GroupShape) -> int:
        offset = 0 if self.sign == PLUS else shape.area
        return offset + (self.i - 1) * shape.b + (self.j - 1)

    def matrix_entry(self, shape: GroupShape) -> tuple[int, int]:
        """(row, column) of the elementary matrix this index stands for."""
        if self.sign == PLUS:
            return (self.i, shape.a + self.j)
        return (shape.a + self.j, self.i)

    def weight(self, shape: GroupShape) -> tuple[int, ...]:
        """Weight under the diagonal torus: ``e_row - e_col``."""
        row, col = self.matrix_entry(shape)
        w = [0] * (shape.a + shape.b)
        w[row - 1] += 1
        w[col - 1] -= 1
        return tuple(w)

    def label(self, shape: GroupShape) -> str:
        row, col = self.matrix_entry(shape)
        if row < 10 and col < 10:
            return f"E{row}{col}"
        return f"E{row},{col}"


def plus(i: int, j: int) -> BasisIndex:
    return BasisIndex(PLUS, i, j)


def minus(i: int, j: int) -> BasisIndex:
    return BasisIndex(MINUS, i, j)


@lru_cache(maxsize=None)
def p_basis(shape: GroupShape) -> tuple[BasisIndex, ...]:
    """The basis of p in canonical (position) order."""
    a, b = shape.a, shape.b
    return tuple(
        BasisIndex(sign, i, j)
        for sign in (PLUS, MINUS)
        for i in range(1, a + 1)
        for j in range(1, b + 1)
    )


def index_at(shape: GroupShape, pos: int) -> BasisIndex:
    return p_basis(shape)[pos]


def from_matrix_entry(shape: GroupShape, row: int, col: int) -> BasisIndex:
    a = shape.a
    if row <= a < col:
        return plus(row, col - a)
    if col <= a < row:
        return minus(col, row - a)
    raise ValueError(f"E_{{{row},{col}}} is not in p for {shape}")


def is_compact(s: int, t: int, shape: GroupShape) -> bool:
    a, n = shape.a, shape.a + shape.b
    if not (1 <= s <= n and 1 <= t <= n):
        return False
    return (s <= a) == (t <= a)


def compact_generators(shape: GroupShape, diagonal: bool = False) -> list[tuple[int, int]]:
    """All ``(s, t)`` with ``E_{st}`` in k, optionally including the torus."""
    n = shape.a + shape.b
    return [
        (s, t)
        for s in range(1, n + 1)
        for t in range(1, n + 1)
        if is_compact(s, t, shape) and (diagonal or s != t)
    ]


def ad_action_on_p(s: int, t: int, v: BasisIndex, shape: GroupShape) -> list[tuple[int, BasisIndex]]:
    """Coordinates of ``[E_{st}, v]`` as ``[(coefficient, index), ...]``."""
    if not is_compact(s, t, shape):
        raise NonCompactGeneratorError(f"E_{{{s},{t}}} is not in k for {shape}")
    row, col = v.matrix_entry(shape)
    # [E_st, E_rc] = δ_{t,r} E_{s,c} - δ_{c,s} E_{r,t}
    terms: dict[tuple[int, int], int] = {}
    if t == row:
        terms[(s, col)] = terms.get((s, col), 0) + 1
    if col == s:
        terms[(row, t)] = terms.get((row, t), 0) - 1
    return [
        (c, from_matrix_entry(shape, r, cc))
        for (r, cc), c in sorted(terms.items())
        if c != 0
    ]


@lru_cache(maxsize=None)
def action_table(shape: GroupShape, s: int, t: int) -> dict[int, tuple[tuple[int, int], ...]]:
    """``position -> ((coef, position'), ...)`` for the action of ``E_{st}`` on p."""
    table = {}
    for v in p_basis(shape):
        out = ad_action_on_p(s, t, v, shape)
        if out:
            table[v.position(shape)] = tuple((c, w.position(shape)) for c, w in out)
    return table


def bracket_compact(z: tuple[int, int], w: tuple[int, int]) -> list[tuple[int, tuple[int, int]]]:
    """``[E_z, E_w]`` as a combination of elementary matrices."""
    (s, t), (u, v) = z, w
    out: dict[tuple[int, int], int] = {}
    if t == u:
        out[(s, v)] = out.get((s, v), 0) + 1
    if v == s:
        out[(u, t)] = out.get((u, t), 0) - 1
    return [(c, e) for e, c in sorted(out.items()) if c]


@dataclass(frozen=True)
class ParabolicData:
    """The θ-stable parabolic q(H): its p ∩ u and the compact roots in u."""

    H: DominantElement
    shape: GroupShape
    p_cap_u: tuple[BasisIndex, ...]
    compact_u: tuple[tuple[int, int], ...]

    @property
    def R(self) -> int:
        return len(self.p_cap_u)

    @property
    def bidegree(self) -> tuple[int, int]:
        k = sum(1 for v in self.p_cap_u if v.sign == PLUS)
        return (k, self.R - k)


def parabolic_from_dominant(H: DominantElement, shape: GroupShape | None = None) -> ParabolicData:
    """Roots positive on H: ``u = ⊕_{τ(H) > 0} g^τ``.

    The root of ``E_{st}`` evaluates to ``H_s - H_t`` on H.
    """
    if shape is None:
        shape = H.shape
    _check_shape(H, shape)
    h = H.entries()
    p_cap_u = tuple(
        v for v in p_basis(shape)
        if h[v.matrix_entry(shape)[0] - 1] > h[v.matrix_entry(shape)[1] - 1]
    )
    compact_u = tuple(
        (s, t) for s, t in compact_generators(shape) if h[s - 1] > h[t - 1]
    )
    return ParabolicData(H, shape, p_cap_u, compact_u)


@dataclass(frozen=True)
class EmbeddingShape:
    """``H = U(p, q)`` sitting in ``G = U(p, q+r)`` on the first ``p + q`` coordinates."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        if self.p < 1 or self.q < 0 or self.r < 0:
            raise ValueError(f"bad embedding (p,q,r)=({self.p},{self.q},{self.r})")
        if self.q + self.r < 1:
            raise ValueError("U(p, q+r) needs q + r >= 1")

    @property
    def g_shape(self) -> GroupShape:
        return GroupShape(self.p, self.q + self.r)

    @property
    def h_shape(self) -> GroupShape:
        return GroupShape(self.p, self.q)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


class EmbeddingMap(NamedTuple):
    inclusion: dict
    p_cap_r: tuple[BasisIndex, ...]


def embedding_basis_map(e: EmbeddingShape) -> EmbeddingMap:
    """Basis of p ∩ h mapped into p for G, and the canonical basis of p ∩ r."""
    G = e.g_shape
    inclusion = {}
    if e.q >= 1:
        for v in p_basis(e.h_shape):
            inclusion[v] = BasisIndex(v.sign, v.i, v.j)
    p_cap_r = tuple(v for v in p_basis(G) if v.j > e.q)
    return EmbeddingMap(inclusion, p_cap_r)


def position_map(e: EmbeddingShape) -> dict[int, int]:
    """Bit-position version of the inclusion p ∩ h -> p."""
    if e.q < 1:
        return {}
    H, G = e.h_shape, e.g_shape
    return {v.position(H): w.position(G) for v, w in embedding_basis_map(e).inclusion.items()}


def compact_generators_of_subgroup(e: EmbeddingShape) -> list[tuple[int, int]]:
    """Off-diagonal generators of k ∩ h, as gl(p+q+r) index pairs."""
    p, q = e.p, e.q
    block_a = range(1, p + 1)
    block_b = range(p + 1, p + q + 1)
    return [(s, t) for blk in (block_a, block_b) for s in blk for t in blk if s != t]
