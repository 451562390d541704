"""Sparse exterior algebra of p with exact rational coefficients.

A monomial is a bit mask over the ``2ab`` basis positions of p; bit ``k`` set
means basis vector ``k`` occurs.  The monomial ``m_S`` stands for
``e_{s_1} ∧ ... ∧ e_{s_n}`` with ``s_1 < ... < s_n``.  Monomials are ordered
by their sorted position tuples, lexicographically.

A :class:`Multivector` is bihomogeneous: every monomial in it has the same
number of p⁺ factors and the same number of p⁻ factors.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .liealg import (
    BasisIndex,
    EmbeddingShape,
    action_table,
    index_at,
    is_compact,
    NonCompactGeneratorError,
    p_basis,
    position_map,
)
from .shapes import GroupShape

SERIAL_VERSION = 1


@lru_cache(maxsize=1 << 16)
def positions_of(mask: int) -> tuple[int, ...]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def mask_of(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def monomial_key(mask: int) -> tuple[int, ...]:
    return positions_of(mask)


def bidegree_of(mask: int, shape: GroupShape) -> tuple[int, int]:
    low = (1 << shape.area) - 1
    return ((mask & low).bit_count(), (mask >> shape.area).bit_count())


def merge_sign(left: int, right: int) -> int:
    """Sign of ``m_left ∧ m_right = ± m_{left ∪ right}`` (masks disjoint)."""
    inversions = 0
    r = right
    while r:
        low = r & -r
        t = low.bit_length() - 1
        inversions += (left >> (t + 1)).bit_count()
        r ^= low
    return -1 if inversions & 1 else 1


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed")
    return Fraction(c)


class Multivector:
    """Immutable bihomogeneous element of Λ*p.

    ``terms`` maps monomial masks to nonzero Fractions.  Construction drops
    zero coefficients and rejects monomials of the wrong bidegree.
    """

    __slots__ = ("shape", "bidegree", "terms")

    def __init__(self, shape: GroupShape, bidegree: tuple[int, int], terms: Mapping[int, object] = ()):
        clean = {}
        for m, c in dict(terms).items():
            c = _as_fraction(c)
            if c == 0:
                continue
            if bidegree_of(m, shape) != tuple(bidegree):
                raise ValueError(
                    f"monomial {positions_of(m)} has bidegree {bidegree_of(m, shape)}, "
                    f"expected {tuple(bidegree)}"
                )
            clean[m] = c
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "bidegree", (int(bidegree[0]), int(bidegree[1])))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def _raw(cls, shape, bidegree, terms: dict) -> "Multivector":
        # Trusted internal path: terms already clean and homogeneous.
        obj = object.__new__(cls)
        object.__setattr__(obj, "shape", shape)
        object.__setattr__(obj, "bidegree", bidegree)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, shape: GroupShape, bidegree=(0, 0)) -> "Multivector":
        return cls._raw(shape, tuple(bidegree), {})

    @classmethod
    def one(cls, shape: GroupShape) -> "Multivector":
        return cls._raw(shape, (0, 0), {0: Fraction(1)})

    @classmethod
    def monomial(cls, shape: GroupShape, positions: Iterable[int], coef=1) -> "Multivector":
        """``coef · e_{p_1} ∧ e_{p_2} ∧ ...`` in the order given (sign included)."""
        result = cls.one(shape) * coef
        for p in positions:
            result = result.wedge(cls.basis_vector(shape, p))
        return result

    @classmethod
    def basis_vector(cls, shape: GroupShape, v: int | BasisIndex) -> "Multivector":
        pos = v.position(shape) if isinstance(v, BasisIndex) else int(v)
        if not 0 <= pos < 2 * shape.area:
            raise ValueError(f"basis position {pos} out of range for {shape}")
        bideg = (1, 0) if pos < shape.area else (0, 1)
        return cls._raw(shape, bideg, {1 << pos: Fraction(1)})

    @classmethod
    def wedge_of(cls, shape: GroupShape, indices: Iterable[BasisIndex]) -> "Multivector":
        return cls.monomial(shape, [v.position(shape) for v in indices])

    @property
    def degree(self) -> int:
        return self.bidegree[0] + self.bidegree[1]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(mask, coefficient) pairs in canonical monomial order."""
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def coefficient(self, mask: int) -> Fraction:
        return self.terms.get(mask, Fraction(0))

    def _check_same_space(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if self.shape != other.shape:
            raise ValueError(f"{self.shape} vs {other.shape}")
        if self.bidegree != other.bidegree:
            raise ValueError(f"bidegree {self.bidegree} vs {other.bidegree}")

    def __add__(self, other):
        self._check_same_space(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Multivector._raw(self.shape, self.bidegree, out)

    def __neg__(self):
        return Multivector._raw(self.shape, self.bidegree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Multivector):
            return NotImplemented
        s = _as_fraction(scalar)
        if s == 0:
            return Multivector.zero(self.shape, self.bidegree)
        return Multivector._raw(self.shape, self.bidegree, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / _as_fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.bidegree == other.bidegree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.shape, self.bidegree, frozenset(self.terms.items())))

    def wedge(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    __xor__ = wedge

    def norm2(self) -> Fraction:
        return inner_product(self, self)

    def __repr__(self):
        return f"Multivector({self.shape}, {self.bidegree}, {format_multivector(self)})"

    def __str__(self):
        return format_multivector(self)

    def to_json(self) -> dict:
        return {
            "version": SERIAL_VERSION,
            "a": self.shape.a,
            "b": self.shape.b,
            "bidegree": list(self.bidegree),
            "terms": [
                [list(positions_of(m)), f"{c.numerator}/{c.denominator}"]
                for m, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Multivector":
        if data.get("version") != SERIAL_VERSION:
            raise ValueError(f"unsupported multivector format version {data.get('version')!r}")
        shape = GroupShape(int(data["a"]), int(data["b"]))
        terms = {}
        for positions, coef in data["terms"]:
            if list(positions) != sorted(set(positions)):
                raise ValueError(f"index list {positions} is not strictly increasing")
            terms[mask_of(positions)] = Fraction(coef)
        return cls(shape, tuple(data["bidegree"]), terms)


def monomial_label(mask: int, shape: GroupShape) -> str:
    if mask == 0:
        return "1"
    return "∧".join(index_at(shape, p).label(shape) for p in positions_of(mask))


def format_multivector(v: Multivector) -> str:
    if not v.terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(v.items()):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        body = monomial_label(m, v.shape)
        if c != 1:
            body = f"{c}·{body}" if m else str(c)
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product; signs from the merge permutation of the factors."""
    if u.shape != v.shape:
        raise ValueError(f"{u.shape} vs {v.shape}")
    bideg = (u.bidegree[0] + v.bidegree[0], u.bidegree[1] + v.bidegree[1])
    out: dict[int, Fraction] = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            if m1 & m2:
                continue
            m = m1 | m2
            c = c1 * c2 if merge_sign(m1, m2) > 0 else -(c1 * c2)
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
    return Multivector._raw(u.shape, bideg, out)


def coproduct_component(v: Multivector, k: int, l: int) -> dict[tuple[int, int], Fraction]:
    """Degree-(k, l) part of the dual of the wedge product.

    Returns the formal sum ``Σ c · m_T ⊗ m_U`` as ``{(mask_T, mask_U): c}``.
    With orthonormal monomials it is the adjoint of ``wedge``:
    ``<x ∧ y, z> = <x ⊗ y, coproduct_component(z, deg x, deg y)>``.
    """
    if k < 0 or l < 0 or k + l != v.degree:
        raise ValueError(f"cannot split degree {v.degree} as ({k}, {l})")
    out: dict[tuple[int, int], Fraction] = {}
    for m, c in v.terms.items():
        pos = positions_of(m)
        for T in combinations(pos, k):
            mt = mask_of(T)
            mu = m ^ mt
            key = (mt, mu)
            val = out.get(key, 0) + (c if merge_sign(mt, mu) > 0 else -c)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def tensor_pairing(x: Multivector, y: Multivector, tensor: Mapping[tuple[int, int], Fraction]) -> Fraction:
    """``<x ⊗ y, tensor>`` for a formal sum returned by :func:`coproduct_component`."""
    total = Fraction(0)
    for (mt, mu), c in tensor.items():
        cx = x.terms.get(mt)
        if cx is None:
            continue
        cy = y.terms.get(mu)
        if cy is not None:
            total += c * cx * cy
    return total


def inner_product(u: Multivector, v: Multivector) -> Fraction:
    if u.shape != v.shape:
        raise ValueError(f"{u.shape} vs {v.shape}")
    if u.bidegree != v.bidegree:
        return Fraction(0)
    if len(u.terms) > len(v.terms):
        u, v = v, u
    total = Fraction(0)
    vt = v.terms
    for m, c in u.terms.items():
        d = vt.get(m)
        if d is not None:
            total += c * d
    return total


def k_action(s: int, t: int, v: Multivector) -> Multivector:
    """Derivation action of ``E_{st}`` in k on a multivector."""
    shape = v.shape
    if not is_compact(s, t, shape):
        raise NonCompactGeneratorError(f"E_{{{s},{t}}} is not in k for {shape}")
    table = action_table(shape, s, t)
    out: dict[int, Fraction] = {}
    for m, c in v.terms.items():
        for p in positions_of(m):
            images = table.get(p)
            if not images:
                continue
            rest = m ^ (1 << p)
            for coef, q in images:
                if q != p and (rest >> q) & 1:
                    continue
                # Slot of e_p now holds e_q; sorting it into place crosses the
                # factors strictly between p and q.
                lo, hi = (p, q) if p < q else (q, p)
                between = ((rest >> (lo + 1)) & ((1 << max(hi - lo - 1, 0)) - 1)).bit_count()
                val = c * coef
                if between & 1:
                    val = -val
                nm = rest | (1 << q)
                sm = out.get(nm, 0) + val
                if sm:
                    out[nm] = sm
                else:
                    del out[nm]
    return Multivector._raw(shape, v.bidegree, out)


def push_forward(v: Multivector, e: EmbeddingShape) -> Multivector:
    """Image of ``v ∈ Λ(p ∩ h)`` under the inclusion into Λp for G.

    The inclusion preserves the relative order of basis positions, so no
    signs appear.
    """
    if v.shape != e.h_shape:
        raise ValueError(f"{v} does not live in Λp of {e.h_shape}")
    pmap = position_map(e)
    out = {}
    for m, c in v.terms.items():
        out[mask_of(pmap[p] for p in positions_of(m))] = c
    return Multivector._raw(e.g_shape, v.bidegree, out)


def graded_basis(shape: GroupShape, bidegree: tuple[int, int]) -> list[int]:
    """All monomial masks of the given bidegree, in canonical order."""
    n = shape.area
    k, l = bidegree
    plus_sets = [mask_of(c) for c in combinations(range(n), k)]
    minus_sets = [mask_of(n + x for x in c) for c in combinations(range(n), l)]
    masks = [pm | mm for pm in plus_sets for mm in minus_sets]
    return sorted(masks, key=monomial_key)


def graded_dimension(shape: GroupShape, bidegree: tuple[int, int]) -> int:
    from math import comb

    return comb(shape.area, bidegree[0]) * comb(shape.area, bidegree[1])


__all__ = [
    "Multivector",
    "wedge",
    "coproduct_component",
    "tensor_pairing",
    "inner_product",
    "k_action",
    "push_forward",
    "graded_basis",
    "graded_dimension",
    "positions_of",
    "mask_of",
    "monomial_key",
    "merge_sign",
    "p_basis",
]
