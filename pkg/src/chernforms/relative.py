"""Relative cochains (global form, off-support primitive) and their calculus.

A relative cochain is a pair (alpha, beta): alpha defined on the whole
chart, beta off a closed support region, with the differential
d(alpha, beta) = (d alpha, alpha|_off - d beta). The graded product needs a
two-piece partition of unity (phi1, phi2) subordinate to the complements of
the two supports; the extension map p_chi turns a cochain into a globally
defined form using a cutoff that is 1 near the support.

Mixed-degree pairs are handled through the degree involution
iota(omega) = sum (-1)^k omega^{(k)}, which reduces to the usual
(-1)^{k_1} signs on homogeneous cochains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exterior import (
    ChartPoint,
    FormField,
    FormValue,
    as_point,
    degree_involution,
    differentiate_value,
    exterior_derivative,
    wedge,
)
from .jets import Jet, jet_value
from .quadrature import gauss_hermite, gauss_legendre

__all__ = [
    "SupportDescriptor",
    "RelativeCochain",
    "d_rel",
    "product_phi",
    "p_chi",
    "integrate_compact",
    "integrate_fiber",
]


@dataclass
class SupportDescriptor:
    """Where a cochain's primitive is unavailable.

    ``contains(p)`` says whether p lies in the support region;
    ``clearance(p)`` is a nonnegative margin for sample-point safety
    (how far p is from the support, in whatever scale the scenario uses).
    """

    contains: Callable[[ChartPoint], bool]
    clearance: Callable[[ChartPoint], float]

    @staticmethod
    def nowhere(chart_dim: int) -> "SupportDescriptor":
        return SupportDescriptor(lambda p: False, lambda p: np.inf)

    def intersect(self, other: "SupportDescriptor") -> "SupportDescriptor":
        return SupportDescriptor(
            lambda p: self.contains(p) and other.contains(p),
            lambda p: max(self.clearance(p), other.clearance(p)),
        )


@dataclass
class RelativeCochain:
    """A pair (alpha, beta) with beta a primitive of alpha off the support."""

    alpha: FormField
    beta: FormField
    support: SupportDescriptor
    degree: int | None = None

    @property
    def chart_dim(self) -> int:
        return self.alpha.chart_dim


def d_rel(c: RelativeCochain) -> RelativeCochain:
    """The relative differential (d alpha, alpha|_off - d beta)."""

    def beta_eval(p: ChartPoint) -> FormValue:
        return c.alpha(p) - differentiate_value(c.beta(p))

    return RelativeCochain(
        alpha=exterior_derivative(c.alpha),
        beta=FormField(c.chart_dim, beta_eval, domain=c.beta.domain),
        support=c.support,
        degree=None if c.degree is None else c.degree + 1,
    )


def _jet_is_zero(coeff) -> bool:
    """True when a scalar coefficient vanishes with all stored derivatives."""
    if isinstance(coeff, Jet):
        if coeff.value != 0.0 or np.any(coeff.grad):
            return False
        return coeff.hess is None or not np.any(coeff.hess)
    return coeff == 0.0


def product_phi(
    a1: RelativeCochain,
    a2: RelativeCochain,
    phis: tuple[FormField, FormField],
) -> RelativeCochain:
    """Graded product of relative cochains through a partition pair.

    alpha = alpha1 ^ alpha2;
    beta  = phi1 beta1 ^ alpha2 + iota(alpha1) ^ phi2 beta2
            + d phi1 ^ iota(beta1) ^ beta2.

    The partition must be subordinate to the support complements: phi1
    vanishes near supp(a1) and phi2 near supp(a2). Where a phi weight is
    identically zero the corresponding primitive is never evaluated.
    """
    phi1, phi2 = phis
    m = a1.chart_dim
    if a2.chart_dim != m:
        raise ValueError("chart dimension mismatch")

    def alpha_eval(p: ChartPoint) -> FormValue:
        return wedge(a1.alpha(p), a2.alpha(p))

    def beta_eval(p: ChartPoint) -> FormValue:
        f1 = phi1(p)
        f2 = phi2(p)
        w1 = f1.coefficient(())
        w2 = f2.coefficient(())
        need1 = not _jet_is_zero(w1)
        need2 = not _jet_is_zero(w2)
        out = FormValue.zero(m)
        b1 = a1.beta(p) if need1 else None
        b2 = a2.beta(p) if need2 else None
        if need1:
            out = out + wedge(b1 * w1, a2.alpha(p))
        if need2:
            out = out + wedge(degree_involution(a1.alpha(p)), b2 * w2)
        if need1 and need2:
            dphi1 = differentiate_value(f1)
            if dphi1.terms:
                out = out + wedge(dphi1, wedge(degree_involution(b1), b2))
        return out

    degree = None
    if a1.degree is not None and a2.degree is not None:
        degree = a1.degree + a2.degree
    return RelativeCochain(
        alpha=FormField(m, alpha_eval),
        beta=FormField(m, beta_eval),
        support=a1.support.intersect(a2.support),
        degree=degree,
    )


def p_chi(c: RelativeCochain, chi: FormField) -> FormField:
    """Globally defined representative chi alpha + d chi ^ beta.

    ``chi`` must be identically 1 on a neighborhood of the support, so the
    second term (the only one needing beta) lives where beta exists.
    """
    m = c.chart_dim

    def evaluate(p: ChartPoint) -> FormValue:
        chi_val = chi(p)
        w = chi_val.coefficient(())
        out = c.alpha(p) * w
        dchi = differentiate_value(chi_val)
        if dchi.terms and not all(_jet_is_zero(v) for v in dchi.terms.values()):
            out = out + wedge(dchi, c.beta(p))
        return out

    return FormField(m, evaluate, name="p_chi")


def integrate_compact(
    field: FormField, box: list[tuple[float, float]], order: int = 64
) -> complex:
    """Integrate the top-degree coefficient over a product box.

    Tensor Gauss-Legendre with ``order`` nodes per axis; the orientation is
    the coordinate order dx_1 ... dx_m. Summation follows the fixed
    lexicographic node order, so results are reproducible bit-for-bit.
    """
    m = field.chart_dim
    if len(box) != m:
        raise ValueError("box does not match the chart dimension")
    axes = [gauss_legendre(order, a, b) for a, b in box]
    top = tuple(range(1, m + 1))
    total = 0.0 + 0.0j
    idx = [0] * m
    nodes = [ax[0] for ax in axes]
    weights = [ax[1] for ax in axes]
    point = np.empty(m)
    while True:
        w = 1.0
        for k in range(m):
            point[k] = nodes[k][idx[k]]
            w *= weights[k][idx[k]]
        total += w * field(ChartPoint(point)).value(top)
        k = m - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < order:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            return total


def integrate_fiber(
    field: FormField,
    fiber_dims: tuple[int, ...],
    mode: str = "compact",
    base_point=None,
    order: int = 48,
    half_width: float | None = None,
    gauss_scale: float = 1.0,
) -> FormValue:
    """Push a form on the total chart down the fiber coordinates.

    Extracts, with the sign of moving the fiber differentials to the right,
    the terms whose fiber part is the full fiber volume form, integrates
    their coefficients over the fiber, and relabels the surviving base
    indices to 1..m_base (keeping their order). Fiber orientation is the
    listed order of ``fiber_dims``.

    mode "compact" integrates over [-half_width, half_width]^d with
    Gauss-Legendre; mode "gaussian" uses Gauss-Hermite weights for
    integrands decaying like exp(-gauss_scale * |x|^2) and covers the whole
    fiber.
    """
    m = field.chart_dim
    fiber = tuple(fiber_dims)
    if sorted(set(fiber)) != sorted(fiber):
        raise ValueError("fiber dims must be distinct")
    d = len(fiber)
    base_dims = [i for i in range(1, m + 1) if i not in set(fiber)]
    relabel = {dim: k + 1 for k, dim in enumerate(base_dims)}
    base = as_point(base_point if base_point is not None else [])
    if base.dim != len(base_dims):
        raise ValueError("base point does not match non-fiber dimensions")

    if mode == "compact":
        if half_width is None:
            raise ValueError("compact mode needs half_width")
        x1, w1 = gauss_legendre(order, -half_width, half_width)
        axes = [(x1, w1)] * d
    elif mode == "gaussian":
        y, wgh = gauss_hermite(order)
        root = np.sqrt(gauss_scale)
        axes = [(y / root, wgh * np.exp(y * y) / root)] * d
    else:
        raise ValueError(f"unknown mode {mode!r}")

    # Sign from permuting dx_fiber to the right within each sorted index,
    # composed with the orientation of the listed fiber order.
    sort_perm = sorted(range(d), key=lambda k: fiber[k])
    orient = 1
    seen = []
    for k in sort_perm:
        orient *= (-1) ** sum(1 for s in seen if s > k)
        seen.append(k)
    fiber_sorted = tuple(sorted(fiber))
    fiber_set = set(fiber)

    coords = np.empty(m)
    for k, dim in enumerate(base_dims):
        coords[dim - 1] = base.coords[k]

    out: dict[tuple[int, ...], complex] = {}
    idx = [0] * d
    while True:
        w = 1.0
        for k in range(d):
            coords[fiber[k] - 1] = axes[k][0][idx[k]]
            w *= axes[k][1][idx[k]]
        fv = field(ChartPoint(coords))
        for index, coeff in fv.terms.items():
            fpart = tuple(i for i in index if i in fiber_set)
            if fpart != fiber_sorted:
                continue
            sign = orient
            trailing_base = 0
            for i in reversed(index):
                if i in fiber_set:
                    if trailing_base % 2 == 1:
                        sign = -sign
                else:
                    trailing_base += 1
            new_index = tuple(relabel[i] for i in index if i not in fiber_set)
            val = sign * w * jet_value(coeff)
            out[new_index] = out.get(new_index, 0.0) + val
        k = d - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < len(axes[k][0]):
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            break
    return FormValue(len(base_dims), out, validate=False)
