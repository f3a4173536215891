"""Limit kernels on L^2(R) written as chains of contour-node matrices.

Every kernel has the shape e^{mu(v-u)} * [u-side row] @ couplings @ [v-side column]
where each factor is sampled at quadrature nodes of a contour.  The vertical
lines Re(z) = const are deformed into wedges with the same vertex: rays at
+-0.55 pi for variables whose integrand carries 1/G (zeta, omega), and rays at
+-pi/3 or +-pi/4 for variables carrying G (z, w), so the cubic term decays
along each ray.  The left rays stay close to vertical because e^{-zeta u}
grows along them for large u; steeper rays keep that growth (and the
cancellation it causes) small.  When z and w are coupled, the vertex further right gets the
shallower ray so the two contours move apart instead of running parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import ContourPlacementError, ParameterError, TruncationError
from ..quadrature.contours import Wedge
from ..quadrature.fredholm import NystromScheme
from .scaling import KPZCoords, delta_coords

LEFT, STEEP, SHALLOW = 0.55 * math.pi, math.pi / 3, math.pi / 4


def G_exponent(z, c: KPZCoords):
    z = np.asarray(z, dtype=complex)
    return c.t * z ** 3 / 3 + c.t ** (2 / 3) * c.x * z ** 2 - c.t ** (1 / 3) * c.xi * z


def G_limit(z, c: KPZCoords):
    """exp(t z^3/3 + t^(2/3) x z^2 - t^(1/3) xi z)."""
    return np.exp(G_exponent(z, c))


@dataclass(frozen=True)
class KernelConfig:
    """Free knobs of the limit kernels.

    ``D1``/``D2`` default to base/3 and base/2 with base = min(min lambda, 1.5);
    ``mu`` defaults to 1 + max(d1, d2, D1, D2).  Ordering of D1, D2 is fixed per
    kernel (swapped for the '>' kernels).
    """
    d1: float = 1.0
    d2: float = 1.0
    D1: float | None = None
    D2: float | None = None
    mu: float | None = None
    L: float = 10.0
    per_half: int = 48
    per_panel: int = 16
    max_panel: float = 0.5
    theta_radius: float = 1.5
    theta_nodes: int = 64
    decay_tol: float = 1e-10
    auto_L: bool = True

    def __post_init__(self):
        for name in ("d1", "d2", "L"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive")
        for name in ("D1", "D2"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ParameterError(f"{name} must be positive")
        if self.mu is not None and not self.mu > 0:
            raise ParameterError("mu must be positive")

    def offsets(self, lambdas=()) -> tuple:
        """(D1, D2) for the '<' ordering."""
        base = min(min(lambdas, default=1.5), 1.5)
        D1 = self.D1 if self.D1 is not None else base / 3
        D2 = self.D2 if self.D2 is not None else base / 2
        return D1, D2

    def resolved_mu(self, lambdas=()) -> float:
        if self.mu is not None:
            return self.mu
        return 1.0 + max(self.d1, self.d2, *self.offsets(lambdas))

    def scheme(self) -> NystromScheme:
        return NystromScheme.split_at_zero(self.L, 2 * max(8, round(self.per_half * self.L / 20)))

    def refined(self) -> "KernelConfig":
        return replace(self, per_half=2 * self.per_half, per_panel=2 * self.per_panel)


@dataclass(frozen=True)
class TwoTimeCoords:
    first: KPZCoords
    second: KPZCoords
    delta: KPZCoords = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", delta_coords(self.first, self.second))

    @classmethod
    def from_delta(cls, first: KPZCoords, delta: KPZCoords) -> "TwoTimeCoords":
        """Pair whose increment coordinates are ``delta``."""
        t2 = first.t + delta.t
        r2, r1 = t2 / delta.t, first.t / delta.t
        second = KPZCoords(t2, (delta.x + r1 ** (2 / 3) * first.x) / r2 ** (2 / 3),
                           (delta.xi + r1 ** (1 / 3) * first.xi) / r2 ** (1 / 3))
        return cls(first, second)

    def swapped(self) -> "TwoTimeCoords":
        """Pair with the first block and the increment exchanged."""
        return TwoTimeCoords.from_delta(self.delta, self.first)


def _ray_length(vertex: float, angle: float, c: KPZCoords, sign: int, lin: float) -> float:
    """Smallest ray length past which |exp(sign*G-exponent + lin|z|)| < e^-40."""
    s = np.arange(0.25, 60.0, 0.125)
    z = vertex + s * np.exp(1j * angle)
    val = sign * G_exponent(z, c).real + lin * np.abs(z)
    bad = np.nonzero(val > -40.0)[0]
    if len(bad) == 0:
        return 1.0
    k = bad[-1] + 1
    if k >= len(s):
        raise TruncationError("integrand does not decay along the contour ray")
    return float(s[k])


def _wedge(vertex, angle, c, sign, lin, gap, cfg: KernelConfig) -> Wedge:
    length = _ray_length(vertex, angle, c, sign, lin)
    levels = max(3, math.ceil(math.log2(length / max(gap, 1e-12))) + 1)
    return Wedge(vertex, angle, length, cfg.per_panel, levels, cfg.max_panel)


def _prod(lambdas, s):
    out = np.ones_like(s)
    for lam in lambdas:
        out = out * (lam - s)
    return out


class ChainKernel:
    """Kernel e^{mu(v-u)} ind(u, v) * rows(u) @ middle @ cols(v).

    ``rows(u)`` returns an array (len(u), k), ``cols(v)`` returns (k', len(v))
    and ``middle`` is (k, k').
    """

    def __init__(self, rows, middle, cols, mu: float, row_ind=None, col_ind=None):
        self.rows, self.middle, self.cols = rows, middle, cols
        self.mu = mu
        self.row_ind, self.col_ind = row_ind, col_ind

    def grid(self, u, v) -> np.ndarray:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        v = np.atleast_1d(np.asarray(v, dtype=float))
        out = (self.rows(u) @ self.middle) @ self.cols(v)
        out = out * np.exp(self.mu * (v[None, :] - u[:, None]))
        if self.row_ind is not None:
            out = out * self.row_ind(u)[:, None]
        if self.col_ind is not None:
            out = out * self.col_ind(v)[None, :]
        return out

    def __call__(self, u, v):
        """Elementwise values for broadcastable u, v."""
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        flat_u, flat_v = u.ravel(), v.ravel()
        uu, iu = np.unique(flat_u, return_inverse=True)
        vv, iv = np.unique(flat_v, return_inverse=True)
        g = self.grid(uu, vv)
        return g[iu, iv].reshape(u.shape)


class SumKernel:
    def __init__(self, terms):
        self.terms = list(terms)     # (coefficient, kernel)

    def grid(self, u, v):
        return sum(c * k.grid(u, v) for c, k in self.terms)

    def __call__(self, u, v):
        return sum(c * k(u, v) for c, k in self.terms)


def _le0(y):
    return (y <= 0).astype(float)


def _lt0(y):
    return (y < 0).astype(float)


def _gt0(y):
    return (y > 0).astype(float)


class LimitKernels:
    """Contours and kernels for one pair of space-time points.

    ``lambdas`` may be empty (the homogeneous case).  J kernels need
    D1, D2 < min(lambdas).
    """

    def __init__(self, coords: TwoTimeCoords, lambdas=(), cfg: KernelConfig | None = None):
        self.cfg = cfg or KernelConfig()
        self.coords = coords
        self.lambdas = tuple(float(v) for v in lambdas)
        if any(not lam > 0 for lam in self.lambdas):
            raise ParameterError("every lambda must be positive")
        self.mu = self.cfg.resolved_mu(self.lambdas)
        self.D1, self.D2 = self.cfg.offsets(self.lambdas)
        if not self.D1 < self.D2:
            raise ContourPlacementError(f"need D1 < D2 for the '<' ordering, got {self.D1}, {self.D2}")
        lam_min = min(self.lambdas, default=math.inf)
        if max(self.D1, self.D2) >= lam_min:
            raise ContourPlacementError(
                f"D1, D2 must be below min lambda = {lam_min:.6g}")
        self._cache: dict = {}

    # contours ------------------------------------------------------------
    def _lin(self):
        return self.cfg.L + 1.0

    def _gap_right(self, vertex, other):
        lam_min = min(self.lambdas, default=math.inf)
        return min(vertex, abs(other - vertex), lam_min - vertex, vertex + self.cfg.d1)

    def contour(self, name: str, order: str = "<"):
        """Nodes and weights for zeta, omega (left wedges) or z, w (right wedges)."""
        key = (name, order)
        if key in self._cache:
            return self._cache[key]
        c1, dc = self.coords.first, self.coords.delta
        lin = self._lin()
        D_z, D_w = (self.D1, self.D2) if order == "<" else (self.D2, self.D1)
        if name == "zeta":
            wd = _wedge(-self.cfg.d1, LEFT, c1, -1, lin, self.cfg.d1, self.cfg)
        elif name == "omega":
            wd = _wedge(-self.cfg.d2, LEFT, dc, -1, lin, self.cfg.d2, self.cfg)
        elif name == "z":
            ang = STEEP if D_z < D_w else SHALLOW
            wd = _wedge(D_z, ang, c1, 1, lin, self._gap_right(D_z, D_w), self.cfg)
        elif name == "w":
            ang = STEEP if D_w < D_z else SHALLOW
            wd = _wedge(D_w, ang, dc, 1, lin, self._gap_right(D_w, D_z), self.cfg)
        else:
            raise ParameterError(f"unknown contour {name!r}")
        self._cache[key] = wd.rule()
        return self._cache[key]

    # building blocks ------------------------------------------------------
    def _zeta_rows(self, weight_zeta: bool, lam: bool, order="<"):
        s, ws = self.contour("zeta", order)
        c1 = self.coords.first
        base = ws * np.exp(-G_exponent(s, c1))
        if lam:
            base = base * _prod(self.lambdas, s)
        if weight_zeta:
            base = base * s
        return lambda u: base[None, :] * np.exp(-np.outer(u, s))

    def _omega_cols(self, inv_omega: bool = False, order="<"):
        s, ws = self.contour("omega", order)
        base = ws * np.exp(-G_exponent(s, self.coords.delta))
        if inv_omega:
            base = base / s
        return lambda v: base[:, None] * np.exp(np.outer(s, v))

    def _z_diag(self, lam: bool, inv_z: bool, order="<"):
        z, wz = self.contour("z", order)
        d = wz * np.exp(G_exponent(z, self.coords.first))
        if lam:
            d = d / _prod(self.lambdas, z)
        if inv_z:
            d = d / z
        return z, d

    def _w_diag(self, inv_w: bool = False, order="<"):
        w, ww = self.contour("w", order)
        d = ww * np.exp(G_exponent(w, self.coords.delta))
        if inv_w:
            d = d / w
        return w, d

    # kernels ---------------------------------------------------------------
    def _single_pair(self, lam: bool, k_form: bool, indicator) -> ChainKernel:
        rows = self._zeta_rows(k_form, lam)
        s, _ = self.contour("zeta")
        z, d = self._z_diag(lam, k_form)
        middle = 1.0 / (z[None, :] - s[:, None])
        cols = lambda v: d[:, None] * np.exp(np.outer(z, v))
        return ChainKernel(rows, middle, cols, self.mu, col_ind=indicator)

    def J1(self) -> ChainKernel:
        return self._single_pair(True, False, _le0)

    def K1(self) -> ChainKernel:
        return self._single_pair(False, True, _lt0)

    def J2(self) -> ChainKernel:
        w, d = self._w_diag()
        s, _ = self.contour("omega")
        rows = lambda u: d[None, :] * np.exp(-np.outer(u, w))
        middle = 1.0 / (w[:, None] - s[None, :])
        return ChainKernel(rows, middle, self._omega_cols(), self.mu, row_ind=_gt0)

    def _quartic(self, order: str, lam: bool, k_form: bool) -> ChainKernel:
        if order not in ("<", ">"):
            raise ParameterError(f"order must be '<' or '>', got {order!r}")
        s, _ = self.contour("zeta", order)
        o, _ = self.contour("omega", order)
        z, dz = self._z_diag(lam, k_form, order)
        w, dw = self._w_diag(False, order)
        C1 = 1.0 / (z[None, :] - s[:, None])
        C3 = 1.0 / (z[:, None] - w[None, :])
        C2 = 1.0 / (w[:, None] - o[None, :])
        middle = ((C1 * dz[None, :]) @ C3) * dw[None, :] @ C2
        return ChainKernel(self._zeta_rows(k_form, lam, order), middle,
                           self._omega_cols(False, order), self.mu)

    def J3(self, order: str) -> ChainKernel:
        return self._quartic(order, True, False)

    def K3(self, order: str) -> ChainKernel:
        return self._quartic(order, False, True)

    # rank-one pieces ----------------------------------------------------------
    def a_fn(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        s, ws = self.contour("zeta")
        vals = np.exp(-np.outer(y, s) - G_exponent(s, self.coords.first)[None, :]) @ ws
        return np.exp(-self.mu * y) * vals

    def b_fn(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        return np.exp(self.mu * y) * _lt0(y)

    def c_fn(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        w, dw = self._w_diag(inv_w=True)
        o, _ = self.contour("omega")
        vals = (dw @ (1.0 / (w[:, None] - o[None, :]))) @ self._omega_cols()(y)
        return np.exp(self.mu * y) * vals

    def d_fn(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        vals = np.sum(self._omega_cols(inv_omega=True)(y), axis=0)
        return np.exp(self.mu * y) * vals

    def rank_one(self, right: str) -> ChainKernel:
        """K_ab, K_ac or K_ad as a ChainKernel with unit conjugation."""
        g = {"b": self.b_fn, "c": self.c_fn, "d": self.d_fn}[right]
        return ChainKernel(lambda u: self.a_fn(u)[:, None], np.ones((1, 1)),
                           lambda v: g(v)[None, :], 0.0)

    # assembled kernels ------------------------------------------------------
    def bbp_kernels(self):
        """(F1, F2) = (J2 - J1 + J3<, J1 - J2 - J3>)."""
        J1, J2 = self.J1(), self.J2()
        return (SumKernel([(1, J2), (-1, J1), (1, self.J3("<"))]),
                SumKernel([(1, J1), (-1, J2), (-1, self.J3(">"))]))

    def brownian_kernels(self, printed_signs: bool = False):
        """(K1, K2) of the one-sided Brownian start.

        The small-lambda limits of the J kernels, checked pointwise, are
        J1 -> K1 + K_ab, J3< -> K< - K_ac and J3> -> K> - K_ac - K_ad; the
        kernels below follow from them.  ``printed_signs`` flips the K_ab and
        K_ac terms for comparison with the alternative sign choice.
        """
        J2, K1 = self.J2(), self.K1()
        ab, ac, ad = self.rank_one("b"), self.rank_one("c"), self.rank_one("d")
        s = -1 if printed_signs else 1
        return (SumKernel([(1, J2), (-1, K1), (1, self.K3("<")), (-s, ab), (-s, ac)]),
                SumKernel([(1, K1), (-1, J2), (-1, self.K3(">")), (s, ab), (s, ac),
                           (1, ad)]))


def decay_measure(kernels, L: float, probe: int = 64) -> float:
    """Conjugation-invariant size of the kernels at the truncation boundary.

    For each boundary point b = +-L this is the largest of |K(b, b)| and
    |K(b, u) K(u, b)| over a probe grid of [-L, L]: the 1x1 and 2x2 minors
    that truncation drops.  The factors e^{mu(v-u)} cancel in both.
    """
    grid = np.linspace(-L, L, probe)
    ends = np.array([-L, L])
    worst = 0.0
    for k in kernels:
        rows = k.grid(ends, grid)
        cols = k.grid(grid, ends).T
        worst = max(worst, float(np.max(np.abs(rows * cols))),
                    float(np.max(np.abs(np.diag(k.grid(ends, ends))))))
    return worst


def J_kernel(which: str, u, v, coords: TwoTimeCoords, lambdas=(), cfg: KernelConfig | None = None):
    """Pointwise values of J1, J2, J3_less or J3_greater."""
    lk = LimitKernels(coords, lambdas, cfg)
    k = {"J1": lk.J1, "J2": lk.J2, "J3_less": lambda: lk.J3("<"),
         "J3_greater": lambda: lk.J3(">")}.get(which)
    if k is None:
        raise ParameterError(f"unknown kernel {which!r}")
    return k()(u, v)


def K_kernel(which: str, u, v, coords: TwoTimeCoords, cfg: KernelConfig | None = None):
    """Pointwise values of K_less, K_greater or K1."""
    lk = LimitKernels(coords, (), cfg)
    k = {"K1": lk.K1, "K_less": lambda: lk.K3("<"), "K_greater": lambda: lk.K3(">")}.get(which)
    if k is None:
        raise ParameterError(f"unknown kernel {which!r}")
    return k()(u, v)


def rank_one_functions(y, coords: TwoTimeCoords, cfg: KernelConfig | None = None) -> tuple:
    """(a(y), b(y), c(y), d(y))."""
    lk = LimitKernels(coords, (), cfg)
    return lk.a_fn(y), lk.b_fn(y), lk.c_fn(y), lk.d_fn(y)
