"""Z/2-graded matrices with differential-form entries, and their exponentials.

A ``SuperMatrixForm`` stores a form-valued endomorphism of a graded vector
space C^{p|q} as components ``{multi-index I -> array}``; the array for I
holds the (n x n) matrix coefficient of dx_I, stacked over jet slots so that
first (and optionally second) coordinate derivatives ride along through all
products and exponentials.

Component calculus ("forms first" ordering):

* product:    (M * N)[K] = sum_{I disjoint J, I u J = K}
              sign(I,J) * M[I] @ (g^{|I|} N[J] g^{|I|}),
              where g = diag(+1 on the even block, -1 on the odd block);
* supertrace: Str(M)[I] = sum_i g_ii M[I]_ii;
* d-bracket:  [d, M][{k} merge I] += sign * (g @ d_k M[I] @ g).

``graded_exp`` embeds M into End(Lambda(C^m) (x) E) by the left regular
representation of the form factor (an algebra isomorphism onto its image)
and runs Taylor scaling-and-squaring there; ``volterra_exp`` is the
independent route that expands e^{H+R} around a form-degree-0 Hermitian part
by iterated simplex integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .exterior import FormValue, epsilon_sign, merge_multiindex
from .jets import Jet

__all__ = [
    "ParitySplit",
    "SuperMatrixForm",
    "HermitianEndo",
    "star_product",
    "supertrace",
    "d_bracket",
    "graded_exp",
    "volterra_exp",
    "graded_norm",
    "smallest_eigenvalue",
    "identity_form",
    "lincomb",
]

# Hard cap on the regular-representation size n * 2^m used by graded_exp.
MAX_EXP_DIM = 4096

# Taylor scaling-and-squaring parameters: scale until the ring norm is at
# most TAYLOR_RADIUS, then sum TAYLOR_TERMS terms.
TAYLOR_RADIUS = 0.5
TAYLOR_TERMS = 20


@dataclass(frozen=True)
class ParitySplit:
    """Dimensions of the even (+) and odd (-) summands of a graded space."""

    plus_dim: int
    minus_dim: int

    @property
    def dim(self) -> int:
        return self.plus_dim + self.minus_dim

    def grading(self) -> np.ndarray:
        """The +-1 parity vector (plus block first)."""
        return np.concatenate(
            [np.ones(self.plus_dim), -np.ones(self.minus_dim)]
        )


def jet_slots(order: int, chart_dim: int) -> int:
    """Number of stacked derivative slots for a given jet order."""
    if order == 0:
        return 1
    if order == 1:
        return 1 + chart_dim
    if order == 2:
        return 1 + chart_dim + chart_dim * chart_dim
    raise ValueError(f"unsupported jet order {order}")


def order_of_slots(slots: int, chart_dim: int) -> int:
    for order in (0, 1, 2):
        if slots == jet_slots(order, chart_dim):
            return order
    raise ValueError(f"array has {slots} slots, not a jet layout for m={chart_dim}")


def jet_matmul(a: np.ndarray, b: np.ndarray, chart_dim: int) -> np.ndarray:
    """Matrix product over the jet ring.

    ``a`` and ``b`` have shape (..., S, n, n); the slot axis holds value,
    then gradients, then (optionally) the row-major Hessian. Mixed orders
    are truncated to the smaller one.
    """
    m = chart_dim
    slots = min(a.shape[-3], b.shape[-3])
    a = a[..., :slots, :, :]
    b = b[..., :slots, :, :]
    order = order_of_slots(slots, m)
    a0 = a[..., 0:1, :, :]
    b0 = b[..., 0:1, :, :]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    np.matmul(a0, b0, out=out[..., 0:1, :, :])
    if order >= 1:
        ga = a[..., 1 : 1 + m, :, :]
        gb = b[..., 1 : 1 + m, :, :]
        out[..., 1 : 1 + m, :, :] = np.matmul(a0, gb) + np.matmul(ga, b0)
    if order == 2:
        ha = a[..., 1 + m :, :, :]
        hb = b[..., 1 + m :, :, :]
        cross = np.einsum("...aij,...bjk->...abik", ga, gb)
        cross = cross + np.swapaxes(cross, -4, -3)
        hess = np.matmul(a0, hb) + np.matmul(ha, b0)
        hess += cross.reshape(cross.shape[:-4] + (m * m,) + cross.shape[-2:])
        out[..., 1 + m :, :, :] = hess
    return out


@dataclass
class SuperMatrixForm:
    """Form-valued graded endomorphism on one chart (see module docstring).

    ``components[I]`` has shape (..., S, n, n): optional leading batch axes,
    jet slots S, then the matrix.
    """

    split: ParitySplit
    chart_dim: int
    components: dict[tuple[int, ...], np.ndarray]

    def __post_init__(self):
        n = self.split.dim
        self.components = {
            tuple(i): np.asarray(c, dtype=complex) for i, c in self.components.items()
        }
        for i, c in self.components.items():
            if c.shape[-1] != n or c.shape[-2] != n:
                raise ValueError(f"component {i} is not {n}x{n}")

    @property
    def slots(self) -> int:
        for c in self.components.values():
            return c.shape[-3]
        return 1

    @property
    def jet_order(self) -> int:
        return order_of_slots(self.slots, self.chart_dim)

    def __add__(self, other: "SuperMatrixForm") -> "SuperMatrixForm":
        return lincomb([(1.0, self), (1.0, other)])

    def __sub__(self, other: "SuperMatrixForm") -> "SuperMatrixForm":
        return lincomb([(1.0, self), (-1.0, other)])

    def __mul__(self, scalar) -> "SuperMatrixForm":
        return SuperMatrixForm(
            self.split,
            self.chart_dim,
            {i: c * scalar for i, c in self.components.items()},
        )

    __rmul__ = __mul__

    def truncate_order(self, order: int) -> "SuperMatrixForm":
        s = jet_slots(order, self.chart_dim)
        if s >= self.slots:
            return self
        return SuperMatrixForm(
            self.split,
            self.chart_dim,
            {i: c[..., :s, :, :] for i, c in self.components.items()},
        )

    def component(self, index: tuple[int, ...]) -> np.ndarray:
        n = self.split.dim
        try:
            return self.components[tuple(index)]
        except KeyError:
            return np.zeros((self.slots, n, n), dtype=complex)

    def batch_select(self, b: int) -> "SuperMatrixForm":
        """Strip one leading batch axis at position b along axis 0."""
        return SuperMatrixForm(
            self.split,
            self.chart_dim,
            {i: c[b] for i, c in self.components.items()},
        )

    def entry(self, row: int, col: int) -> FormValue:
        """The (row, col) matrix entry as a form value (0-based indices)."""
        out = {}
        m = self.chart_dim
        for i, c in self.components.items():
            out[i] = _slots_to_coefficient(c[..., row, col], m)
        return FormValue(self.chart_dim, out, validate=False)


def _slots_to_coefficient(slot_vec: np.ndarray, m: int):
    """Convert a stacked slot vector (S,) into a Jet or plain complex."""
    s = slot_vec.shape[0]
    if s == 1:
        return complex(slot_vec[0])
    if s == 1 + m:
        return Jet(slot_vec[0], slot_vec[1:])
    return Jet(slot_vec[0], slot_vec[1 : 1 + m], slot_vec[1 + m :].reshape(m, m))


def coefficient_to_slots(coeff, m: int, order: int) -> np.ndarray:
    """Inverse of :func:`_slots_to_coefficient` at a requested order."""
    s = jet_slots(order, m)
    out = np.zeros(s, dtype=complex)
    if isinstance(coeff, Jet):
        out[0] = coeff.value
        if order >= 1:
            out[1 : 1 + m] = coeff.grad
        if order == 2 and coeff.hess is not None:
            out[1 + m :] = coeff.hess.reshape(-1)
    else:
        out[0] = coeff
    return out


def identity_form(split: ParitySplit, chart_dim: int, order: int = 0) -> SuperMatrixForm:
    s = jet_slots(order, chart_dim)
    n = split.dim
    block = np.zeros((s, n, n), dtype=complex)
    block[0] = np.eye(n)
    return SuperMatrixForm(split, chart_dim, {(): block})


def lincomb(pairs) -> SuperMatrixForm:
    """Linear combination sum_k c_k M_k of graded matrices on one chart."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty linear combination")
    split = pairs[0][1].split
    m = pairs[0][1].chart_dim
    out: dict[tuple[int, ...], np.ndarray] = {}
    for c, mat in pairs:
        if mat.split != split or mat.chart_dim != m:
            raise ValueError("mismatched graded matrices in linear combination")
        for i, arr in mat.components.items():
            term = c * arr
            out[i] = out[i] + term if i in out else term
    return SuperMatrixForm(split, m, out)


def star_product(a: SuperMatrixForm, b: SuperMatrixForm) -> SuperMatrixForm:
    """The graded product of two form-valued matrices."""
    if a.split != b.split or a.chart_dim != b.chart_dim:
        raise ValueError("mismatched graded matrices")
    g = a.split.grading()
    m = a.chart_dim
    out: dict[tuple[int, ...], np.ndarray] = {}
    for i_left, c_left in a.components.items():
        odd = len(i_left) % 2 == 1
        for i_right, c_right in b.components.items():
            sign, merged = merge_multiindex(i_left, i_right)
            if sign == 0:
                continue
            rhs = g[:, None] * c_right * g[None, :] if odd else c_right
            term = jet_matmul(c_left, rhs, m)
            if sign < 0:
                term = -term
            out[merged] = out[merged] + term if merged in out else term
    return SuperMatrixForm(a.split, m, out)


def supertrace(mat: SuperMatrixForm) -> FormValue:
    """Graded trace, one form coefficient per stored component."""
    g = mat.split.grading()
    m = mat.chart_dim
    out = {}
    for i, c in mat.components.items():
        tr = np.einsum("...skk,k->...s", c, g.astype(complex))
        if tr.ndim != 1:
            raise ValueError("supertrace of a batched matrix; select a batch first")
        out[i] = _slots_to_coefficient(tr, m)
    return FormValue(m, out, validate=False)


def d_bracket(mat: SuperMatrixForm) -> SuperMatrixForm:
    """The graded commutator [d, M]; consumes one jet order of M."""
    order = mat.jet_order
    if order == 0:
        raise ValueError("d-bracket needs jet coefficients (order >= 1)")
    m = mat.chart_dim
    g = mat.split.grading()
    twist = g[:, None] * g[None, :]
    s_out = jet_slots(order - 1, m)
    out: dict[tuple[int, ...], np.ndarray] = {}
    for i, c in mat.components.items():
        for k in range(1, m + 1):
            sign, merged = merge_multiindex((k,), i)
            if sign == 0:
                continue
            sliced = np.empty(c.shape[:-3] + (s_out,) + c.shape[-2:], dtype=complex)
            sliced[..., 0, :, :] = c[..., k, :, :]
            if order == 2:
                base = 1 + m + (k - 1) * m
                sliced[..., 1 : 1 + m, :, :] = c[..., base : base + m, :, :]
            term = (sign * sliced) * twist
            out[merged] = out[merged] + term if merged in out else term
    return SuperMatrixForm(mat.split, m, out)


# -- the regular-representation exponential ---------------------------------


@lru_cache(maxsize=8)
def _subset_index(m: int):
    subs = [()]
    for k in range(1, m + 1):
        subs.extend(combinations(range(1, m + 1), k))
    subs.sort(key=lambda t: (len(t), t))
    return tuple(subs), {s: i for i, s in enumerate(subs)}


@lru_cache(maxsize=8)
def _left_mult_blocks(m: int):
    """For each multi-index I, the list of (row, col, sign) wedge actions."""
    subs, index = _subset_index(m)
    table = {}
    for left in subs:
        acts = []
        for right in subs:
            sign, merged = merge_multiindex(left, right)
            if sign != 0:
                acts.append((index[merged], index[right], sign))
        table[left] = tuple(acts)
    return table


def _ring_norm(components: dict, m: int) -> float:
    """A submultiplicative bound used only to pick the scaling exponent."""
    total = 0.0
    for c in components.values():
        order = order_of_slots(c.shape[-3], m)
        flat = c.reshape((-1,) + c.shape[-3:])
        col_sums = np.abs(flat).sum(axis=-2)
        norms = col_sums.max(axis=-1)
        weights = np.ones(c.shape[-3])
        if order == 2:
            weights[1 + m :] = 0.5
        total += float((norms * weights).sum(axis=-1).max())
    return total


def graded_exp(mat: SuperMatrixForm) -> SuperMatrixForm:
    """Exponential of a graded form-valued matrix.

    Embeds into End(Lambda(C^m) (x) E) via left multiplication on the form
    factor, then runs Taylor scaling-and-squaring in the jet ring. Works for
    any batch shape; the representation size n * 2^m is capped.
    """
    m = mat.chart_dim
    n = mat.split.dim
    two_m = 1 << m
    if n * two_m > MAX_EXP_DIM:
        raise ValueError(
            f"regular representation dimension {n * two_m} exceeds {MAX_EXP_DIM}"
        )
    subs, index = _subset_index(m)
    blocks = _left_mult_blocks(m)
    g = mat.split.grading()
    slots = mat.slots
    batch = ()
    for c in mat.components.values():
        batch = np.broadcast_shapes(batch, c.shape[:-3])

    big = np.zeros(batch + (slots, two_m * n, two_m * n), dtype=complex)
    view = big.reshape(batch + (slots, two_m, n, two_m, n))
    for i, c in mat.components.items():
        twisted = c * g[None, :] if len(i) % 2 == 1 else c
        for row, col, sign in blocks[i]:
            view[..., row, :, col, :] += sign * twisted

    nrm = _ring_norm(mat.components, m)
    squarings = 0
    if nrm > TAYLOR_RADIUS:
        squarings = int(np.ceil(np.log2(nrm / TAYLOR_RADIUS)))
        big = big / (2.0**squarings)

    eye = np.zeros_like(big)
    eye[..., 0, :, :] = np.eye(two_m * n)
    acc = eye.copy()
    term = eye.copy()
    for j in range(1, TAYLOR_TERMS + 1):
        term = jet_matmul(term, big, m) / j
        acc = acc + term
    for _ in range(squarings):
        acc = jet_matmul(acc, acc, m)

    res = acc.reshape(batch + (slots, two_m, n, two_m, n))
    out: dict[tuple[int, ...], np.ndarray] = {}
    for i in subs:
        block = res[..., index[i], :, 0, :]
        if len(i) % 2 == 1:
            block = block * g[None, :]
        out[i] = block
    return SuperMatrixForm(mat.split, m, out)


def graded_norm(mat: SuperMatrixForm) -> float:
    """Sum of operator norms of the (value-slot) components."""
    total = 0.0
    for c in mat.components.values():
        v = c[..., 0, :, :]
        if v.ndim != 2:
            raise ValueError("graded_norm of a batched matrix; select a batch first")
        total += float(np.linalg.norm(v, ord=2))
    return total


# -- the Hermitian-anchor exponential ----------------------------------------


@dataclass
class HermitianEndo:
    """A plain Hermitian endomorphism (form degree 0)."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        h = self.matrix
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError("expected a square matrix")
        scale = 1.0 + float(np.abs(h).max())
        if np.abs(h - h.conj().T).max() > 1e-12 * scale:
            raise ValueError("matrix is not Hermitian")


def smallest_eigenvalue(h) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    mat = h.matrix if isinstance(h, HermitianEndo) else np.asarray(h, dtype=complex)
    return float(np.linalg.eigvalsh(mat)[0])


@lru_cache(maxsize=32)
def _gl_unit(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def _simplex_nodes(k: int, order: int):
    """Nodes (s_1..s_{k+1}) and weights for the ordered k-simplex.

    The simplex {s_i >= 0, sum = 1} is reached from the unit cube through
    the ordered variables tau_j = u_1 ... u_j with Jacobian
    prod u_i^{k-i}.
    """
    u1, w1 = _gl_unit(order)
    grids = np.meshgrid(*([u1] * k), indexing="ij")
    u = np.stack([a.reshape(-1) for a in grids], axis=1)
    wgrids = np.meshgrid(*([w1] * k), indexing="ij")
    w = np.prod(np.stack([a.reshape(-1) for a in wgrids], axis=1), axis=1)
    tau = np.cumprod(u, axis=1)
    jac = np.ones_like(w)
    for i in range(k):
        jac *= u[:, i] ** (k - 1 - i)
    s = np.empty((u.shape[0], k + 1))
    s[:, 0] = 1.0 - tau[:, 0]
    for j in range(1, k):
        s[:, j] = tau[:, j - 1] - tau[:, j]
    s[:, k] = tau[:, k - 1]
    return s, w * jac


def volterra_exp(h, r: SuperMatrixForm, quad_order: int = 12) -> SuperMatrixForm:
    """e^{H + R} for Hermitian degree-0 H and nilpotent positive-degree R.

    Expands around e^{H} by iterated integrals over simplices; the series
    terminates once the form degree exceeds the chart dimension. This route
    shares no exponential code with :func:`graded_exp`.
    """
    hmat = h.matrix if isinstance(h, HermitianEndo) else HermitianEndo(h).matrix
    if () in r.components:
        raise ValueError("perturbation must have no degree-0 part")
    m = r.chart_dim
    split = r.split
    n = split.dim
    if hmat.shape[0] != n:
        raise ValueError("Hermitian part size does not match the graded space")
    r = r.truncate_order(0)

    mean = np.trace(hmat) / n
    if np.abs(hmat - mean * np.eye(n)).max() <= 1e-13 * (1.0 + np.abs(hmat).max()):
        # Central H: e^{H+R} = e^{mean} * sum_k R^k / k!, exactly.
        acc = identity_form(split, m)
        term = identity_form(split, m)
        for k in range(1, m + 1):
            term = star_product(term, r) * (1.0 / k)
            acc = acc + term
        return acc * np.exp(mean)

    w, u = np.linalg.eigh(hmat)

    def exp_sh(s: np.ndarray) -> SuperMatrixForm:
        phases = np.exp(np.outer(s, w))
        mats = np.einsum("ij,bj,kj->bik", u, phases, u.conj())
        return SuperMatrixForm(split, m, {(): mats[:, None, :, :]})

    total = SuperMatrixForm(
        split, m, {(): (u @ np.diag(np.exp(w)) @ u.conj().T)[None, :, :]}
    )
    r_b = SuperMatrixForm(split, m, {i: c[None, ...] for i, c in r.components.items()})
    for k in range(1, m + 1):
        s, weights = _simplex_nodes(k, quad_order)
        chain = exp_sh(s[:, 0])
        for j in range(1, k + 1):
            chain = star_product(chain, r_b)
            chain = star_product(chain, exp_sh(s[:, j]))
        contrib = {
            i: np.tensordot(weights, c, axes=(0, 0))
            for i, c in chain.components.items()
        }
        total = total + SuperMatrixForm(split, m, contrib)
    return total
