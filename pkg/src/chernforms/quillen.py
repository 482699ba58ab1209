"""Superconnection character forms for morphisms of graded bundles.

Data: a morphism sigma: E+ -> E- over a chart (invertible off a compact
support region) and an auxiliary connection given by an odd form-valued
matrix omega. The self-adjoint odd matrix v = [[0, sigma*], [sigma, 0]]
drives the scaled curvature

    F(sigma, A, t) = -t^2 v^2 + i t [d + omega, v] + (d omega + omega^2),

whose exponential yields the character form Ch = Str e^F, the transgression
eta = -Str(i v e^F), and the off-support primitive beta = int_t^inf eta.
The pair (Ch(A), beta) is a relative cocycle; a cutoff chi that is 1 near
the support turns it into the compactly supported representative
chi Ch(A) + d chi ^ beta.

Products of two morphisms combine through the graded tensor sum; the
mismatch between beta of the product and the product of the relative
cocycles is d of an explicit double transgression integral (b_forms).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exterior import ChartPoint, FormField, FormValue, as_point
from .jets import jet_constant
from .quadrature import barycentric_matrix, chebyshev_nodes, gauss_legendre
from .relative import RelativeCochain, SupportDescriptor, p_chi
from .superlinalg import (
    ParitySplit,
    SuperMatrixForm,
    _slots_to_coefficient,
    d_bracket,
    graded_exp,
    jet_slots,
    lincomb,
    smallest_eigenvalue,
    star_product,
    supertrace,
)

__all__ = [
    "MorphismBundle",
    "SuperConnectionData",
    "v_sigma",
    "curvature",
    "chern_form",
    "eta_form",
    "beta_form",
    "delta_form",
    "ch_rel",
    "ch_sup_rep",
    "tensor_morphism",
    "tensor_connection",
    "b_forms",
]

# Quadrature plan for the beta tail: integrate eta on [t_lo, T0] with
# T0 = max(T0_FLOOR, T0_SCALE/sqrt(h)); then h T0^2 >= T0_SCALE^2 and the
# dropped tail is O(e^{-T0_SCALE^2}) of the local scale.
T0_FLOOR = 4.0
T0_SCALE = 8.0
BETA_QUAD_TOL = 1e-10

# Chebyshev cache used by the double-integral correction forms.
BFORM_CHEB_ORDER = 72
BFORM_GL_ORDER = 40


@dataclass
class MorphismBundle:
    """A graded-bundle morphism over one chart.

    ``sigma(point)`` returns the matrix of sigma: E+ -> E- as a jet stack of
    shape (1 + m + m^2, minus_dim, plus_dim): value, gradients, row-major
    Hessian. ``support`` describes where sigma fails to be invertible;
    ``growth`` optionally records (radius, lower bound) hints for how
    sigma^* sigma grows outside that radius.
    """

    split: ParitySplit
    chart_dim: int
    sigma: Callable[[ChartPoint], np.ndarray]
    support: SupportDescriptor
    growth: tuple[float, float] | None = None


@dataclass
class SuperConnectionData:
    """Auxiliary odd connection matrix; ``None`` omega means d alone.

    ``omega(point)`` returns a SuperMatrixForm with order-2 jets and only
    positive form degrees.
    """

    omega: Callable[[ChartPoint], SuperMatrixForm] | None = None


def v_sigma(b: MorphismBundle, point, order: int = 2) -> SuperMatrixForm:
    """The odd self-adjoint matrix [[0, sigma*], [sigma, 0]] at a point."""
    p = as_point(point)
    sig = np.asarray(b.sigma(p), dtype=complex)
    m = b.chart_dim
    slots = jet_slots(order, m)
    if sig.shape[0] < slots:
        raise ValueError("sigma jets do not carry the requested order")
    sig = sig[:slots]
    np_, nm = b.split.plus_dim, b.split.minus_dim
    if sig.shape[1:] != (nm, np_):
        raise ValueError("sigma block has the wrong shape")
    n = b.split.dim
    arr = np.zeros((slots, n, n), dtype=complex)
    arr[:, np_:, :np_] = sig
    arr[:, :np_, np_:] = np.conj(np.swapaxes(sig, -1, -2))
    return SuperMatrixForm(b.split, m, {(): arr})


class _CurvaturePieces:
    """Point-local ingredients of F(t) = -t^2 V2 + t X + Y."""

    __slots__ = ("v", "v2", "x", "y", "h")

    def __init__(self, b: MorphismBundle, a: SuperConnectionData, point, order: int):
        if order not in (0, 1):
            raise ValueError("curvature jets are carried at order 0 or 1")
        v_hi = v_sigma(b, point, order=order + 1)
        self.v = v_hi.truncate_order(order)
        self.v2 = star_product(self.v, self.v).truncate_order(order)
        x = d_bracket(v_hi).truncate_order(order)
        y = None
        if a.omega is not None:
            om = a.omega(point)
            x = x + star_product(om, self.v) + star_product(self.v, om)
            y = d_bracket(om).truncate_order(order) + star_product(
                om, om
            ).truncate_order(order)
        self.x = 1j * x
        self.y = y
        h = smallest_eigenvalue(self.v2.component(())[0])
        self.h = max(h, 0.0)

    def at(self, t: float) -> SuperMatrixForm:
        parts = [(-t * t, self.v2)]
        if t != 0.0:
            parts.append((t, self.x))
        if self.y is not None:
            parts.append((1.0, self.y))
        if len(parts) == 1 and t == 0.0:
            parts = [(0.0, self.v2)]
        return lincomb(parts)

    def batch(self, ts: np.ndarray) -> SuperMatrixForm:
        """F(t) for a whole t-array, stacked on a leading axis."""
        mats = [self.v2, self.x] + ([self.y] if self.y is not None else [])
        coeffs = [-(ts**2), ts] + ([np.ones_like(ts)] if self.y is not None else [])
        split, m = self.v2.split, self.v2.chart_dim
        out: dict[tuple[int, ...], np.ndarray] = {}
        for c, mat in zip(coeffs, mats):
            for i, arr in mat.components.items():
                term = c[:, None, None, None] * arr[None, ...]
                out[i] = out[i] + term if i in out else term
        return SuperMatrixForm(split, m, out)


def curvature(
    b: MorphismBundle, a: SuperConnectionData, t: float, jet_order: int = 0
) -> Callable[[ChartPoint], SuperMatrixForm]:
    """The scaled curvature F(sigma, A, t) as a point function."""

    def at_point(point):
        return _CurvaturePieces(b, a, point, jet_order).at(t)

    return at_point


def chern_form(
    b: MorphismBundle, a: SuperConnectionData, t: float, jet_order: int = 0
) -> FormField:
    """Str exp F(sigma, A, t); at t = 0 this is the character of A alone."""
    if t == 0.0 and a.omega is None:
        # F(0) vanishes, so the character is the constant Str(I) = p - q.
        const = complex(b.split.plus_dim - b.split.minus_dim)
        m = b.chart_dim

        def evaluate_const(p: ChartPoint) -> FormValue:
            c = const if jet_order == 0 else jet_constant(const, m, jet_order)
            return FormValue(m, {(): c}, validate=False)

        return FormField(m, evaluate_const, name="chern(t=0)")

    def evaluate(p: ChartPoint) -> FormValue:
        f = _CurvaturePieces(b, a, p, jet_order).at(t)
        return supertrace(graded_exp(f))

    return FormField(b.chart_dim, evaluate, name=f"chern(t={t})")


def eta_form(
    b: MorphismBundle, a: SuperConnectionData, t: float, jet_order: int = 0
) -> FormField:
    """The transgression -Str(i v exp F), satisfying dCh/dt = -d eta."""

    def evaluate(p: ChartPoint) -> FormValue:
        pieces = _CurvaturePieces(b, a, p, jet_order)
        e = graded_exp(pieces.at(t))
        return supertrace(star_product(1j * pieces.v, e)) * (-1.0)

    return FormField(b.chart_dim, evaluate, name=f"eta(t={t})")


def _eta_batch(pieces: _CurvaturePieces, ts: np.ndarray) -> SuperMatrixForm:
    """(i v) exp F(t) for an array of t values (leading batch axis)."""
    e = graded_exp(pieces.batch(ts))
    iv = SuperMatrixForm(
        pieces.v.split,
        pieces.v.chart_dim,
        {i: (1j * c)[None, ...] for i, c in pieces.v.components.items()},
    )
    return star_product(iv, e)


def _eta_values(pieces: _CurvaturePieces, ts: np.ndarray) -> dict:
    """eta(t) coefficients as arrays {index -> (T, slots)}."""
    prod = _eta_batch(pieces, ts)
    g = pieces.v.split.grading().astype(complex)
    out = {}
    for i, c in prod.components.items():
        out[i] = -np.einsum("tskk,k->ts", c, g)
    return out


def _tail_cutoff(h: float, t_lo: float) -> float:
    if h <= 0.0:
        raise ValueError("morphism is degenerate here (no spectral gap)")
    return max(T0_FLOOR, T0_SCALE / np.sqrt(h), t_lo + 1.0)


def _quad_eta(pieces, t_lo: float, t_hi: float, order: int) -> dict:
    ts, ws = gauss_legendre(order, t_lo, t_hi)
    vals = _eta_values(pieces, ts)
    return {i: np.tensordot(ws, arr, axes=(0, 0)) for i, arr in vals.items()}


def _integrate_eta(pieces, t_lo: float, t_hi: float) -> dict:
    order = 32
    prev = _quad_eta(pieces, t_lo, t_hi, order)
    while order < 256:
        order *= 2
        cur = _quad_eta(pieces, t_lo, t_hi, order)
        delta = 0.0
        for i in cur:
            ref = prev.get(i)
            d = np.abs(cur[i] - ref).max() if ref is not None else np.abs(cur[i]).max()
            delta = max(delta, d)
        if delta < BETA_QUAD_TOL:
            return cur
        prev = cur
    return prev


def _slots_form(arrs: dict, m: int) -> FormValue:
    return FormValue(
        m, {i: _slots_to_coefficient(a, m) for i, a in arrs.items()}, validate=False
    )


def beta_form(
    b: MorphismBundle,
    a: SuperConnectionData,
    t_lo: float = 0.0,
    jet_order: int = 0,
) -> FormField:
    """The primitive beta = int_{t_lo}^inf eta dt, defined off the support.

    The integrand decays like e^{-h t^2} with h the smallest eigenvalue of
    v^2 at the point, so the quadrature stops at T0 = max(4, 8/sqrt(h));
    the dropped tail is below the 1e-10 doubling tolerance.
    """
    m = b.chart_dim

    def evaluate(p: ChartPoint) -> FormValue:
        pieces = _CurvaturePieces(b, a, p, jet_order)
        t_hi = _tail_cutoff(pieces.h, t_lo)
        return _slots_form(_integrate_eta(pieces, t_lo, t_hi), m)

    return FormField(
        m,
        evaluate,
        domain=lambda p: not b.support.contains(p),
        name="beta",
    )


def delta_form(
    b: MorphismBundle,
    a: SuperConnectionData,
    t_hi: float,
    jet_order: int = 0,
) -> FormField:
    """The finite transgression int_0^{t_hi} eta dt (defined everywhere)."""
    m = b.chart_dim

    def evaluate(p: ChartPoint) -> FormValue:
        pieces = _CurvaturePieces(b, a, p, jet_order)
        return _slots_form(_integrate_eta(pieces, 0.0, t_hi), m)

    return FormField(m, evaluate, name="delta")


def ch_rel(
    b: MorphismBundle, a: SuperConnectionData, jet_order: int = 0
) -> RelativeCochain:
    """The relative cocycle (Ch(A), beta)."""
    return RelativeCochain(
        alpha=chern_form(b, a, 0.0, jet_order=jet_order),
        beta=beta_form(b, a, 0.0, jet_order=jet_order),
        support=b.support,
        degree=None,
    )


def ch_sup_rep(
    b: MorphismBundle,
    a: SuperConnectionData,
    chi: FormField,
    jet_order: int = 0,
) -> FormField:
    """Compactly supported representative chi Ch(A) + d chi ^ beta."""
    return p_chi(ch_rel(b, a, jet_order=jet_order), chi)


# -- tensor products ----------------------------------------------------------


def _tensor_layout(s1: ParitySplit, s2: ParitySplit):
    """Basis order of E1 (x) E2: even pairs first ((+,+), (-,-)), then odd."""
    p1, m1 = s1.plus_dim, s1.minus_dim
    p2, m2 = s2.plus_dim, s2.minus_dim
    pairs = []
    for i in range(p1):
        for k in range(p2):
            pairs.append((i, k))
    for i in range(p1, p1 + m1):
        for k in range(p2, p2 + m2):
            pairs.append((i, k))
    for i in range(p1, p1 + m1):
        for k in range(p2):
            pairs.append((i, k))
    for i in range(p1):
        for k in range(p2, p2 + m2):
            pairs.append((i, k))
    index = {pair: pos for pos, pair in enumerate(pairs)}
    split = ParitySplit(p1 * p2 + m1 * m2, m1 * p2 + p1 * m2)
    return pairs, index, split


def _embed_factor(
    arr: np.ndarray, s1: ParitySplit, s2: ParitySplit, which: int
) -> np.ndarray:
    """Embed an endomorphism of one factor into E1 (x) E2 (forms-first).

    which = 1: M (x) Id, no signs. which = 2: Id (x) N, with the Koszul sign
    (-1)^{(par(k)+par(l)) par(j)} on the entry at ((j,k),(j,l)).
    """
    pairs, index, split = _tensor_layout(s1, s2)
    n = split.dim
    out = np.zeros(arr.shape[:-2] + (n, n), dtype=complex)
    g1 = s1.grading()
    g2 = s2.grading()
    if which == 1:
        n1 = s1.dim
        n2 = s2.dim
        for i in range(n1):
            for j in range(n1):
                for k in range(n2):
                    out[..., index[(i, k)], index[(j, k)]] += arr[..., i, j]
    else:
        n1 = s1.dim
        n2 = s2.dim
        for k in range(n2):
            for l in range(n2):
                sgn_kl = g2[k] * g2[l]
                for j in range(n1):
                    sign = 1.0 if (sgn_kl > 0 or g1[j] > 0) else -1.0
                    out[..., index[(j, k)], index[(j, l)]] += sign * arr[..., k, l]
    return out


def tensor_morphism(b1: MorphismBundle, b2: MorphismBundle) -> MorphismBundle:
    """The product morphism on E1 (x) E2 (graded tensor sum of the v's)."""
    if b1.chart_dim != b2.chart_dim:
        raise ValueError("chart dimension mismatch")
    _, _, split = _tensor_layout(b1.split, b2.split)
    np_tot = split.plus_dim

    def sigma(point):
        v1 = v_sigma(b1, point, order=2).component(())
        v2 = v_sigma(b2, point, order=2).component(())
        big = _embed_factor(v1, b1.split, b2.split, 1) + _embed_factor(
            v2, b1.split, b2.split, 2
        )
        return big[:, np_tot:, :np_tot]

    return MorphismBundle(
        split=split,
        chart_dim=b1.chart_dim,
        sigma=sigma,
        support=b1.support.intersect(b2.support),
    )


def tensor_connection(
    b1: MorphismBundle,
    b2: MorphismBundle,
    a1: SuperConnectionData,
    a2: SuperConnectionData,
) -> SuperConnectionData:
    """omega1 (x) Id + Id (x) omega2 on the product bundle."""
    if a1.omega is None and a2.omega is None:
        return SuperConnectionData(None)
    _, _, split = _tensor_layout(b1.split, b2.split)
    m = b1.chart_dim

    def omega(point):
        comps: dict[tuple[int, ...], np.ndarray] = {}
        if a1.omega is not None:
            for i, c in a1.omega(point).components.items():
                comps[i] = _embed_factor(c, b1.split, b2.split, 1)
        if a2.omega is not None:
            for i, c in a2.omega(point).components.items():
                term = _embed_factor(c, b1.split, b2.split, 2)
                comps[i] = comps[i] + term if i in comps else term
        return SuperMatrixForm(split, m, comps)

    return SuperConnectionData(omega)


# -- the double transgression integrals ---------------------------------------


def _wedge_slot_arrays(e1: dict, e2: dict, weights: np.ndarray, m: int) -> dict:
    """sum_n w_n eta1[n] ^ eta2[n] for coefficient arrays {idx -> (N, S)}."""
    from .exterior import merge_multiindex

    out: dict[tuple[int, ...], np.ndarray] = {}
    for i1, c1 in e1.items():
        for i2, c2 in e2.items():
            sign, merged = merge_multiindex(i1, i2)
            if sign == 0:
                continue
            s = min(c1.shape[1], c2.shape[1])
            prod = np.empty((c1.shape[0], s), dtype=complex)
            prod[:, 0] = c1[:, 0] * c2[:, 0]
            if s > 1:
                prod[:, 1:s] = (
                    c1[:, 0:1] * c2[:, 1:s] + c1[:, 1:s] * c2[:, 0:1]
                )
            acc = sign * np.tensordot(weights, prod, axes=(0, 0))
            out[merged] = out[merged] + acc if merged in out else acc
    return out


def b_forms(
    b1: MorphismBundle,
    a1: SuperConnectionData,
    b2: MorphismBundle,
    a2: SuperConnectionData,
    phis: tuple[FormField, FormField],
    jet_order: int = 1,
) -> tuple[FormField, FormField]:
    """The ordered double integrals of eta1 ^ eta2 against the partition.

    B1 integrates over 0 <= t <= s (eta1 at the larger argument) weighted by
    phi1; B2 over 0 <= s <= t weighted by phi2. Their difference is a
    primitive of beta_12 - beta_diamond.
    """
    phi1, phi2 = phis
    m = b1.chart_dim
    cache: dict[bytes, tuple[FormValue, FormValue]] = {}

    def compute(p: ChartPoint) -> tuple[FormValue, FormValue]:
        key = p.coords.tobytes()
        if key in cache:
            return cache[key]
        pc1 = _CurvaturePieces(b1, a1, p, jet_order)
        pc2 = _CurvaturePieces(b2, a2, p, jet_order)
        t_hi = _tail_cutoff(min(pc1.h, pc2.h), 0.0)
        nodes = chebyshev_nodes(BFORM_CHEB_ORDER, 0.0, t_hi)
        eta1_nodes = _eta_values(pc1, nodes)
        eta2_nodes = _eta_values(pc2, nodes)

        s_nodes, s_w = gauss_legendre(BFORM_GL_ORDER, 0.0, t_hi)
        u_nodes, u_w = gauss_legendre(BFORM_GL_ORDER, 0.0, 1.0)
        inner = np.outer(s_nodes, u_nodes).reshape(-1)
        weights = (np.outer(s_nodes * s_w, u_w)).reshape(-1)

        p_outer = barycentric_matrix(nodes, s_nodes)
        p_inner = barycentric_matrix(nodes, inner)

        def interp(vals: dict, mat: np.ndarray) -> dict:
            return {i: mat @ c for i, c in vals.items()}

        def tile_outer(vals: dict) -> dict:
            return {
                i: np.repeat(c, BFORM_GL_ORDER, axis=0) for i, c in vals.items()
            }

        # B1: eta1(s) ^ eta2(s u), s in [0, t_hi], u in [0, 1], Jacobian s.
        e1_outer = tile_outer(interp(eta1_nodes, p_outer))
        e2_inner = interp(eta2_nodes, p_inner)
        raw1 = _wedge_slot_arrays(e1_outer, e2_inner, weights, m)
        # B2: eta1(t u) ^ eta2(t), t in [0, t_hi], u in [0, 1], Jacobian t.
        e1_inner = interp(eta1_nodes, p_inner)
        e2_outer = tile_outer(interp(eta2_nodes, p_outer))
        raw2 = _wedge_slot_arrays(e1_inner, e2_outer, weights, m)

        w1 = phi1(p).coefficient(())
        w2 = phi2(p).coefficient(())
        fv1 = _slots_form(raw1, m) * w1
        fv2 = _slots_form(raw2, m) * w2
        cache[key] = (fv1, fv2)
        return cache[key]

    field1 = FormField(m, lambda p: compute(p)[0], name="B1")
    field2 = FormField(m, lambda p: compute(p)[1], name="B2")
    return field1, field2
