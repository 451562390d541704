"""Witness-carrying checks of the finite-dimensional statements about
``H = U(p, q)`` inside ``G = U(p, q+r)``.

Every check recomputes its claim from scratch with exact arithmetic and
returns a :class:`CheckReport`.  A failing report always carries an explicit
witness: the offending vector together with its orthogonal residual, or the
vanishing image.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal

from .extalg import Multivector, push_forward, wedge
from .ktypes import Echelon, KTypeSubspace, full_space, ktype_subspace, project_onto
from .liealg import EmbeddingShape, embedding_basis_map
from .shapes import rectangle_pair

REPORT_VERSION = 1

PASS, FAIL = "pass", "fail"


class ParameterError(ValueError):
    pass


def _frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@dataclass
class CheckReport:
    check_id: str
    params: dict
    verdict: str
    dims: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    witness: dict | None = None
    reason: str | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def canonical(self) -> dict:
        """Everything except timing; identical inputs give identical output."""
        return {
            "version": REPORT_VERSION,
            "checkId": self.check_id,
            "params": dict(self.params),
            "verdict": self.verdict,
            "dims": dict(self.dims),
            "values": dict(self.values),
            "witness": self.witness,
            "reason": self.reason,
        }

    def to_json(self) -> dict:
        return {"canonical": self.canonical(), "elapsed": round(self.elapsed, 6)}

    def summary(self) -> str:
        p = self.params
        args = ",".join(str(p[k]) for k in ("p", "q", "r", "i", "j") if k in p)
        dims = " ".join(f"{k}={v}" for k, v in self.dims.items())
        line = f"{self.verdict.upper():4} {self.check_id}({args}) {dims}"
        if self.reason:
            line += f" [{self.reason}]"
        return line


def _params(e: EmbeddingShape, i=None, j=None) -> dict:
    out = {"p": e.p, "q": e.q, "r": e.r}
    if i is not None:
        out["i"], out["j"] = i, j
    return out


def _check_range(e: EmbeddingShape, i: int, j: int):
    if i < 0 or j < 0:
        raise ParameterError(f"i={i}, j={j} must be non-negative")
    if i + j + e.r > e.q:
        raise ParameterError(f"need i + j + r <= q, got {i}+{j}+{e.r} > {e.q}")


def _omega(e: EmbeddingShape) -> Multivector:
    return Multivector.wedge_of(e.g_shape, embedding_basis_map(e).p_cap_r)


def omega_vector(e: EmbeddingShape) -> Multivector:
    """Top wedge of ``p ∩ r`` (the normal directions of H in G), canonical order."""
    if e.r < 1:
        raise ParameterError("omega_H needs r >= 1")
    return _omega(e)


def V(i: int, j: int, shape) -> KTypeSubspace:
    return ktype_subspace(rectangle_pair(i, j, shape))


def _membership_witness(S: KTypeSubspace, w: Multivector) -> dict:
    return {"vector": w.to_json(), "residual": (w - project_onto(S, w)).to_json()}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def omega_prim(e: EmbeddingShape) -> Multivector:
    """Orthogonal projection of ``omega_H`` onto ``V^G_{r,r}``."""
    return project_onto(V(e.r, e.r, e.g_shape), omega_vector(e))


@_timed
def check_omega_prim(e: EmbeddingShape) -> CheckReport:
    """``omega_H`` has a nonzero component in ``V^G_{r,r}``."""
    if e.r < 1 or e.r > e.q:
        raise ParameterError(f"omega-prim needs 1 <= r <= q, got r={e.r}, q={e.q}")
    target = V(e.r, e.r, e.g_shape)
    omega = omega_vector(e)
    prim = project_onto(target, omega)
    ok = bool(prim)
    return CheckReport(
        "omega-prim",
        _params(e),
        PASS if ok else FAIL,
        dims={"V_rr": target.dim},
        values={"omega_prim_norm2": _frac(prim.norm2()), "omega_norm2": _frac(omega.norm2())},
        witness={"omega": omega.to_json(), "omega_prim": prim.to_json()},
    )


@_timed
def check_restriction(e: EmbeddingShape, i: int, j: int) -> CheckReport:
    """``V^H_{i,j}``, pushed into Λp for G, lies inside ``V^G_{i,j}``."""
    _check_range(e, i, j)
    VH = V(i, j, e.h_shape)
    VG = V(i, j, e.g_shape)
    dims = {"V_H": VH.dim, "V_G": VG.dim}
    for v in VH.basis:
        w = push_forward(v, e)
        if not VG.contains(w):
            return CheckReport(
                "restriction", _params(e, i, j), FAIL, dims=dims,
                witness=_membership_witness(VG, w),
                reason="embedded vector not in V^G_{i,j}",
            )
    return CheckReport("restriction", _params(e, i, j), PASS, dims=dims)


@_timed
def check_tensor_inclusion(e: EmbeddingShape, i: int, j: int) -> CheckReport:
    """``v ∧ omega_H`` lies in ``V^G_{i+r,j+r}`` for every v in embedded ``V^H_{i,j}``."""
    _check_range(e, i, j)
    VH = V(i, j, e.h_shape)
    target = V(i + e.r, j + e.r, e.g_shape)
    omega = _omega(e)
    dims = {"V_H": VH.dim, "target": target.dim}
    for v in VH.basis:
        w = wedge(push_forward(v, e), omega)
        if not target.contains(w):
            return CheckReport(
                "tensor-inclusion", _params(e, i, j), FAIL, dims=dims,
                witness=_membership_witness(target, w),
                reason="v ∧ omega_H not in V^G_{i+r,j+r}",
            )
    return CheckReport("tensor-inclusion", _params(e, i, j), PASS, dims=dims)


DomainRight = Literal["full", "vrr"]


def t_map_image(
    e: EmbeddingShape, i: int, j: int, domain_right: DomainRight = "vrr", stop_when_full: bool = True
) -> KTypeSubspace:
    """Span of ``proj_{V^G_{i+r,j+r}}(v ∧ w)`` over v in ``V^G_{i,j}``.

    ``w`` runs over the monomials of Λ^{rp,rp}p (``"full"``) or over a basis
    of ``V^G_{r,r}`` (``"vrr"``).  Other bidegrees of Λ^{2rp}p wedge into the
    wrong bidegree and project to zero, so they are skipped.  The image sits
    inside the target, so iteration may stop once it fills the target.
    """
    _check_range(e, i, j)
    G, r, p = e.g_shape, e.r, e.p
    target = V(i + r, j + r, G)
    left = V(i, j, G).basis
    if domain_right == "full":
        right = full_space(G, (r * p, r * p))
    elif domain_right == "vrr":
        right = V(r, r, G).basis
    else:
        raise ParameterError(f"unknown domain {domain_right!r}")
    ech = Echelon()
    for v in left:
        for w in right:
            img = project_onto(target, wedge(v, w))
            if img:
                ech.insert(img.terms)
            if stop_when_full and len(ech) == target.dim:
                break
        if stop_when_full and len(ech) == target.dim:
            break
    return KTypeSubspace._from_echelon(G, target.bidegree, ech)


@_timed
def check_t_image_equality(e: EmbeddingShape, i: int, j: int) -> CheckReport:
    """The T-image from ``V^G_{i,j} ⊗ Λ^{rp,rp}p`` equals the one from ``V^G_{i,j} ⊗ V^G_{r,r}``."""
    _check_range(e, i, j)
    small = t_map_image(e, i, j, "vrr")
    big = t_map_image(e, i, j, "full")
    target = V(i + e.r, j + e.r, e.g_shape)
    dims = {"image_vrr": small.dim, "image_full": big.dim, "target": target.dim}
    params = _params(e, i, j)
    for v in small.basis:
        if not big.contains(v):
            return CheckReport(
                "t-image-equality", params, FAIL, dims=dims,
                values={"subset": False, "equal": False},
                witness={"vector": v.to_json(), "residual": big.residual(v).to_json()},
                reason="vrr-image not contained in full image",
            )
    for v in big.basis:
        if not small.contains(v):
            return CheckReport(
                "t-image-equality", params, FAIL, dims=dims,
                values={"subset": True, "equal": False},
                witness={"vector": v.to_json(), "residual": small.residual(v).to_json()},
                reason="strict inclusion of images",
            )
    return CheckReport(
        "t-image-equality", params, PASS, dims=dims, values={"subset": True, "equal": True}
    )


@_timed
def check_t_nonvanishing(e: EmbeddingShape, i: int, j: int) -> CheckReport:
    """``V^G_{i,j} ⊗ V^G_{r,r} -> V^G_{i+r,j+r}`` (wedge then project) is nonzero."""
    _check_range(e, i, j)
    img = t_map_image(e, i, j, "vrr")
    target = V(i + e.r, j + e.r, e.g_shape)
    dims = {"image": img.dim, "target": target.dim}
    if img.dim >= 1:
        return CheckReport("t-nonvanishing", _params(e, i, j), PASS, dims=dims)
    return CheckReport(
        "t-nonvanishing", _params(e, i, j), FAIL, dims=dims,
        witness={"image": Multivector.zero(e.g_shape, target.bidegree).to_json()},
        reason="T vanishes on V_{i,j} ⊗ V_{r,r}",
    )


CHECKS: dict[str, Callable[..., CheckReport]] = {
    "omega-prim": check_omega_prim,
    "restriction": check_restriction,
    "tensor-inclusion": check_tensor_inclusion,
    "t-image-equality": check_t_image_equality,
    "t-nonvanishing": check_t_nonvanishing,
}

IJ_CHECKS = ("restriction", "tensor-inclusion", "t-image-equality", "t-nonvanishing")


def run_check(check_id: str, e: EmbeddingShape, i: int | None = None, j: int | None = None) -> CheckReport:
    if check_id not in CHECKS:
        raise KeyError(check_id)
    if check_id == "omega-prim":
        return CHECKS[check_id](e)
    if i is None or j is None:
        raise ParameterError(f"{check_id} needs i and j")
    return CHECKS[check_id](e, i, j)


def ij_range(e: EmbeddingShape, max_ij: int | None = None) -> list[tuple[int, int]]:
    top = e.q if max_ij is None else max_ij
    return [
        (i, j)
        for i in range(top + 1)
        for j in range(top + 1)
        if i + j + e.r <= e.q
    ]


def run_suite(e: EmbeddingShape, max_ij: int | None = None) -> list[CheckReport]:
    """All registered checks over ``i + j + r <= q`` (and ``i, j <= max_ij``).

    Errors inside a check become failed reports carrying the error text.
    """
    jobs: list[tuple[str, tuple]] = []
    if 1 <= e.r <= e.q:
        jobs.append(("omega-prim", ()))
    for i, j in ij_range(e, max_ij):
        for cid in IJ_CHECKS:
            jobs.append((cid, (i, j)))
    reports = []
    for cid, ij in jobs:
        try:
            reports.append(run_check(cid, e, *ij))
        except Exception as exc:  # noqa: BLE001 - recorded in the report
            params = _params(e, *ij) if ij else _params(e)
            reports.append(
                CheckReport(cid, params, FAIL, witness={"error": type(exc).__name__},
                            reason=str(exc))
            )
    return reports


def suite_passed(reports: list[CheckReport]) -> bool:
    return all(r.passed for r in reports)
