"""Minimal K-types V_{alpha,beta} as explicit subspaces of Λ^{k,l}p.

``V(q)`` is the k-module generated by the top wedge of ``p ∩ u``.  We build
it by closing that single monomial under the off-diagonal generators of k and
keep the result in reduced row-echelon form over the canonical monomial
order, so two subspaces are equal exactly when their bases are.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .extalg import (
    Multivector,
    graded_basis,
    inner_product,
    k_action,
    monomial_key,
    positions_of,
)
from .liealg import compact_generators, index_at, parabolic_from_dominant
from .shapes import (
    DominantElement,
    GroupShape,
    IncompatiblePairError,
    Partition,
    PartitionPair,
    cohomological_degree,
    dominant_from_pair,
    skew_report,
)

SUBSPACE_VERSION = 1


class BidegreeMismatchError(ValueError):
    pass


class Echelon:
    """Incremental reduced row-echelon basis of sparse rational vectors.

    Vectors are ``{mask: Fraction}`` dicts.  Each row has pivot coefficient 1
    at its smallest monomial and no other row has a nonzero entry there.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        out = dict(vec)
        # Rows vanish on each other's pivots, so one sweep suffices.
        for piv in [m for m in out if m in self.rows]:
            c = out.get(piv)
            if not c:
                continue
            for m, d in self.rows[piv].items():
                val = out.get(m, 0) - c * d
                if val:
                    out[m] = val
                else:
                    out.pop(m, None)
        return out

    def insert(self, vec: dict[int, Fraction]) -> dict[int, Fraction] | None:
        """Add ``vec``; return its nonzero residual, or None if already spanned."""
        res = self.reduce(vec)
        if not res:
            return None
        piv = min(res, key=monomial_key)
        inv = 1 / res[piv]
        row = {m: c * inv for m, c in res.items()}
        for other in self.rows.values():
            c = other.get(piv)
            if c:
                for m, d in row.items():
                    val = other.get(m, 0) - c * d
                    if val:
                        other[m] = val
                    else:
                        del other[m]
        self.rows[piv] = row
        return res

    def basis_terms(self) -> list[dict[int, Fraction]]:
        return [self.rows[p] for p in sorted(self.rows, key=monomial_key)]


@dataclass(frozen=True, eq=False)
class KTypeSubspace:
    """A subspace of one bidegree piece of Λp, with a canonical RREF basis.

    ``pair``/``H``/``generator`` are set when the subspace is a K-type built
    by :func:`ktype_subspace`; generic subspaces (such as T-map images) leave
    them as None.
    """

    shape: GroupShape
    bidegree: tuple[int, int]
    basis: tuple[Multivector, ...]
    pair: PartitionPair | None = None
    H: DominantElement | None = None
    generator: Multivector | None = field(default=None, repr=False)

    @classmethod
    def from_vectors(cls, shape, bidegree, vectors: Iterable[Multivector], **labels):
        ech = Echelon()
        for v in vectors:
            if v.shape != shape or v.bidegree != tuple(bidegree):
                raise BidegreeMismatchError(f"{v!r} is not in bidegree {bidegree} of {shape}")
            ech.insert(v.terms)
        return cls._from_echelon(shape, tuple(bidegree), ech, **labels)

    @classmethod
    def _from_echelon(cls, shape, bidegree, ech: Echelon, **labels):
        basis = tuple(Multivector._raw(shape, bidegree, dict(t)) for t in ech.basis_terms())
        return cls(shape, bidegree, basis, **labels)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _pivots(self) -> dict[int, dict[int, Fraction]]:
        return {min(v.terms, key=monomial_key): v.terms for v in self.basis}

    @cached_property
    def _orthogonal(self) -> tuple[tuple[Multivector, Fraction], ...]:
        # Exact Gram-Schmidt: (u_k, |u_k|^2) with the u_k pairwise orthogonal.
        out = []
        for v in self.basis:
            w = v
            for u, n2 in out:
                c = inner_product(w, u)
                if c:
                    w = w - u * (c / n2)
            out.append((w, w.norm2()))
        return tuple(out)

    def _check(self, v: Multivector):
        if v.shape != self.shape or v.bidegree != self.bidegree:
            raise BidegreeMismatchError(
                f"vector in {v.shape} bidegree {v.bidegree}; "
                f"subspace lives in {self.shape} bidegree {self.bidegree}"
            )

    def residual(self, v: Multivector) -> Multivector:
        """Echelon remainder of ``v``; zero iff ``v`` lies in the subspace."""
        self._check(v)
        out = dict(v.terms)
        for piv in [m for m in out if m in self._pivots]:
            c = out.get(piv)
            if not c:
                continue
            for m, d in self._pivots[piv].items():
                val = out.get(m, 0) - c * d
                if val:
                    out[m] = val
                else:
                    out.pop(m, None)
        return Multivector._raw(self.shape, self.bidegree, out)

    def coefficients(self, v: Multivector) -> list[Fraction]:
        """``<v, u_k> / |u_k|^2`` against the orthogonalized basis."""
        self._check(v)
        return [inner_product(v, u) / n2 for u, n2 in self._orthogonal]

    def project(self, v: Multivector) -> Multivector:
        return project_onto(self, v)

    def contains(self, v: Multivector) -> bool:
        return contains(self, v)

    def issubset(self, other: "KTypeSubspace") -> bool:
        if (self.shape, self.bidegree) != (other.shape, other.bidegree):
            return False
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, KTypeSubspace):
            return NotImplemented
        return subspace_equal(self, other)

    __hash__ = object.__hash__

    def to_json(self) -> dict:
        data = {
            "version": SUBSPACE_VERSION,
            "shape": [self.shape.a, self.shape.b],
            "bidegree": list(self.bidegree),
            "dim": self.dim,
            "basis": [v.to_json() for v in self.basis],
        }
        if self.pair is not None:
            data["pair"] = {
                "alpha": list(self.pair.alpha.parts),
                "beta": list(self.pair.beta.parts),
            }
        if self.H is not None:
            data["H"] = {"x": list(self.H.x), "y": list(self.H.y)}
        if self.generator is not None:
            data["generator"] = self.generator.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> "KTypeSubspace":
        if data.get("version") != SUBSPACE_VERSION:
            raise ValueError(f"unsupported subspace format version {data.get('version')!r}")
        shape = GroupShape(*data["shape"])
        bidegree = tuple(data["bidegree"])
        basis = tuple(Multivector.from_json(v) for v in data["basis"])
        if len(basis) != data["dim"]:
            raise ValueError("dim does not match basis length")
        labels = {}
        if "pair" in data:
            labels["pair"] = PartitionPair(
                Partition(tuple(data["pair"]["alpha"])),
                Partition(tuple(data["pair"]["beta"])),
                shape,
            )
        if "H" in data:
            labels["H"] = DominantElement(tuple(data["H"]["x"]), tuple(data["H"]["y"]))
        if "generator" in data:
            labels["generator"] = Multivector.from_json(data["generator"])
        sub = cls(shape, bidegree, basis, **labels)
        # A stored basis must already be the canonical RREF of its span.
        if cls.from_vectors(shape, bidegree, basis).basis != basis:
            raise ValueError("stored basis is not in canonical echelon form")
        return sub


def generator_vector(H: DominantElement, shape: GroupShape | None = None) -> Multivector:
    """Top wedge of ``p ∩ u(H)``, factors in canonical order."""
    par = parabolic_from_dominant(H, shape)
    return Multivector.wedge_of(par.shape, par.p_cap_u)


def closure(
    generator: Multivector,
    generators: Sequence[tuple[int, int]] | None = None,
    trace: list[int] | None = None,
) -> Echelon:
    """Span of all words in ``generators`` applied to ``generator``.

    Breadth first; each round applies every generator to the vectors found
    in the previous round.  When ``trace`` is given the dimension after each
    round is appended to it.
    """
    shape = generator.shape
    if generators is None:
        generators = compact_generators(shape)
    ech = Echelon()
    frontier = []
    if ech.insert(generator.terms) is not None:
        frontier.append(generator)
    if trace is not None:
        trace.append(len(ech))
    while frontier:
        nxt = []
        for v in frontier:
            for s, t in generators:
                w = k_action(s, t, v)
                if not w:
                    continue
                res = ech.insert(w.terms)
                if res is not None:
                    nxt.append(Multivector._raw(shape, v.bidegree, res))
        frontier = nxt
        if trace is not None and frontier:
            trace.append(len(ech))
    return ech


def ktype_from_dominant(H: DominantElement, shape: GroupShape | None = None) -> KTypeSubspace:
    """``V(q(H))``, built directly from the generator of H (no pair lookup)."""
    from .shapes import partitions_from_dominant

    if shape is None:
        shape = H.shape
    gen = generator_vector(H, shape)
    ech = closure(gen)
    return KTypeSubspace._from_echelon(
        shape, gen.bidegree, ech,
        pair=partitions_from_dominant(H, shape), H=H, generator=gen,
    )


@lru_cache(maxsize=256)
def _ktype_cached(pair: PartitionPair) -> KTypeSubspace:
    H = dominant_from_pair(pair)
    return ktype_from_dominant(H, pair.shape)


def ktype_subspace(pair: PartitionPair, shape: GroupShape | None = None) -> KTypeSubspace:
    """The K-type ``V_{alpha,beta}`` of a compatible pair."""
    if shape is not None and shape != pair.shape:
        raise ValueError(f"pair lives in {pair.shape}, not {shape}")
    try:
        cohomological_degree(pair)
    except IncompatiblePairError:
        raise IncompatiblePairError(f"{pair} is not compatible", skew_report(pair)) from None
    return _ktype_cached(pair)


def project_onto(S: KTypeSubspace, v: Multivector) -> Multivector:
    """Orthogonal projection of ``v`` onto ``S`` (monomials orthonormal)."""
    coeffs = S.coefficients(v)
    out = Multivector.zero(S.shape, S.bidegree)
    for c, (u, _) in zip(coeffs, S._orthogonal):
        if c:
            out = out + u * c
    return out


def contains(S: KTypeSubspace, v: Multivector) -> bool:
    return not S.residual(v)


def subspace_equal(S: KTypeSubspace, T: KTypeSubspace) -> bool:
    if (S.shape, S.bidegree) != (T.shape, T.bidegree):
        raise BidegreeMismatchError(
            f"cannot compare {S.shape}{S.bidegree} with {T.shape}{T.bidegree}"
        )
    return S.basis == T.basis


def full_space(shape: GroupShape, bidegree: tuple[int, int]) -> list[Multivector]:
    """The monomial basis of Λ^{k,l}p."""
    bidegree = tuple(bidegree)
    return [Multivector._raw(shape, bidegree, {m: Fraction(1)}) for m in graded_basis(shape, bidegree)]


def monomial_weight(mask: int, shape: GroupShape) -> tuple[int, ...]:
    w = [0] * (shape.a + shape.b)
    for p in positions_of(mask):
        for k, c in enumerate(index_at(shape, p).weight(shape)):
            w[k] += c
    return tuple(w)


def highest_weight_multiplicity(S: KTypeSubspace) -> int:
    """Number of independent k-highest-weight vectors of the generator's weight.

    Counts the joint kernel of the raising operators ``E_{st}`` (``s < t``,
    same block) on the full weight space of Λ^{k,l}p.  A value of 1 means the
    K-type of that highest weight occurs once in this bidegree.
    """
    gen = S.generator if S.generator is not None else S.basis[0]
    target = monomial_weight(next(iter(gen.terms)), S.shape)
    weight_space = [
        m for m in graded_basis(S.shape, S.bidegree) if monomial_weight(m, S.shape) == target
    ]
    raising = [(s, t) for s, t in compact_generators(S.shape) if s < t]
    # Kernel of the stacked linear map, computed from the images of the
    # monomials: rank-nullity on the matrix with one column per monomial.
    rows: dict[tuple[tuple[int, int], int], dict[int, Fraction]] = {}
    for col, m in enumerate(weight_space):
        v = Multivector._raw(S.shape, S.bidegree, {m: Fraction(1)})
        for z in raising:
            for mm, c in k_action(*z, v).terms.items():
                rows.setdefault((z, mm), {})[col] = c
    ech = Echelon()
    for row in rows.values():
        ech.insert(row)
    return len(weight_space) - len(ech)
