"""Exact residue calculus for factored integrands.

Every finite-model integrand is of the form

    const * z**zpow * prod_r (z - r)**e_r * exp(c z)

with integer exponents.  ``Factored`` stores that data and evaluates
residues at finite poles (local Taylor expansion) and Laurent coefficients at
infinity (expansion in s = 1/z).  Arithmetic is generic: Fractions give exact
results, floats/complex/mpmath numbers give floating results.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..errors import ContractError


def _one_like(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(1)
    mod = type(x).__module__
    if mod.startswith("mpmath"):
        import mpmath
        return mpmath.mpf(1)
    if isinstance(x, complex):
        return 1.0 + 0j
    return 1.0


def _norm_root(r):
    if isinstance(r, (int, np.integer)) and not isinstance(r, bool):
        return Fraction(int(r))
    return r


def apply_linear_power(S: list, c, e: int) -> list:
    """Multiply the truncated series S(s) by (1 - c s)**e in place (O(len * |e|))."""
    n = len(S)
    if abs(e) > 4 * n and n > 1:
        coef = [S[0] * 0 + 1]
        for k in range(1, n):
            coef.append(coef[-1] * (e - k + 1) * (-c) / k)
        S[:] = series_mul(S, coef, n)
        return S
    if e > 0:
        for _ in range(e):
            for k in range(n - 1, 0, -1):
                S[k] = S[k] - c * S[k - 1]
    elif e < 0:
        for _ in range(-e):
            for k in range(1, n):
                S[k] = S[k] + c * S[k - 1]
    return S


def exp_series(c, n: int, one) -> list:
    out = [one]
    for k in range(1, n):
        out.append(out[-1] * c / k)
    return out


def series_mul(a: Sequence, b: Sequence, n: int) -> list:
    zero = a[0] * 0
    out = [zero] * n
    for i in range(min(n, len(a))):
        if a[i] == 0:
            continue
        for j in range(min(n - i, len(b))):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


class Factored:
    """const * z**zpow * prod (z - r)**e * exp(exp_coeff * z)."""

    __slots__ = ("const", "zpow", "factors", "exp_coeff")

    def __init__(self, const, zpow: int = 0, factors: dict | None = None, exp_coeff=0):
        self.const = const
        self.zpow = int(zpow)
        self.exp_coeff = exp_coeff
        self.factors = {}
        for r, e in (factors or {}).items():
            self._add(r, e)

    def _add(self, r, e):
        r = _norm_root(r)
        if r == 0:
            self.zpow += int(e)
            return
        e = self.factors.get(r, 0) + int(e)
        if e:
            self.factors[r] = e
        else:
            self.factors.pop(r, None)

    def copy(self) -> "Factored":
        return Factored(self.const, self.zpow, dict(self.factors), self.exp_coeff)

    def times(self, const=1, zpow: int = 0, factors: dict | None = None,
              exp_coeff=0) -> "Factored":
        out = self.copy()
        out.const = out.const * const
        out.zpow += int(zpow)
        out.exp_coeff = out.exp_coeff + exp_coeff
        for r, e in (factors or {}).items():
            out._add(r, e)
        return out

    @property
    def degree(self) -> int:
        """Total degree at infinity (ignores the exponential factor)."""
        return self.zpow + sum(self.factors.values())

    def poles(self) -> list:
        out = [r for r, e in self.factors.items() if e < 0]
        if self.zpow < 0:
            out.append(Fraction(0))
        return out

    # numeric evaluation on arrays of nodes
    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        val = complex(self.const) * z ** self.zpow
        for r, e in self.factors.items():
            val = val * (z - complex(r)) ** e
        if self.exp_coeff:
            val = val * np.exp(complex(self.exp_coeff) * z)
        return val

    def log_abs(self, z):
        """log |f(z)| evaluated stably (used for contour diagnostics)."""
        z = np.asarray(z, dtype=complex)
        out = math.log(abs(complex(self.const))) + self.zpow * np.log(np.abs(z))
        for r, e in self.factors.items():
            out = out + e * np.log(np.abs(z - complex(r)))
        if self.exp_coeff:
            out = out + np.real(complex(self.exp_coeff) * z)
        return out

    # residues
    def residue(self, root):
        """Residue at a finite point."""
        root = _norm_root(root)
        one = _one_like(self.const)
        if root == 0:
            order = -self.zpow
            if order <= 0:
                return self.const * 0
            S = [one] + [one * 0] * (order - 1)
            scale = self.const
            for r, e in self.factors.items():
                # (eps - r)^e = (-r)^e (1 - eps/r)^e
                scale = scale * (-r) ** e
                apply_linear_power(S, one / r, e)
            if self.exp_coeff:
                S = series_mul(S, exp_series(self.exp_coeff, order, one), order)
            return scale * S[order - 1]
        order = -self.factors.get(root, 0)
        if order <= 0:
            return self.const * 0
        S = [one] + [one * 0] * (order - 1)
        scale = self.const
        if self.zpow:
            scale = scale * root ** self.zpow
            apply_linear_power(S, -one / root, self.zpow)
        for r, e in self.factors.items():
            if r == root:
                continue
            d = root - r
            scale = scale * d ** e
            apply_linear_power(S, -one / d, e)
        if self.exp_coeff:
            import cmath
            ez = (cmath.exp(complex(self.exp_coeff * root)) if not _is_mp(self.exp_coeff)
                  else _mp_exp(self.exp_coeff * root))
            scale = scale * ez
            S = series_mul(S, exp_series(self.exp_coeff, order, one), order)
        return scale * S[order - 1]

    def residue_sum(self, roots: Iterable):
        total = self.const * 0
        for r in roots:
            total = total + self.residue(r)
        return total

    def infinity_series(self, n: int) -> list:
        """First n coefficients of S(s) with f(z) = const z**degree S(1/z)."""
        if self.exp_coeff:
            raise ContractError("no Laurent expansion at infinity with exp factor")
        one = _one_like(self.const)
        S = [one] + [one * 0] * (n - 1)
        for r, e in self.factors.items():
            apply_linear_power(S, r, e)
        return S

    def laurent_infinity(self, kmin: int, kmax: int | None = None) -> dict:
        """Coefficients {k: phi_k} of z**k at infinity for kmin <= k <= kmax."""
        D = self.degree
        if kmax is None:
            kmax = D
        kmax = min(kmax, D)
        if kmax < kmin:
            return {}
        S = self.infinity_series(D - kmin + 1)
        return {k: self.const * S[D - k] for k in range(kmin, kmax + 1)}

    def integral_all(self):
        """(1/2 pi i) times the integral over a circle enclosing every finite pole."""
        if self.exp_coeff:
            return self.residue_sum(self.poles())
        D = self.degree
        if D + 1 < 0:
            return self.const * 0
        return self.const * self.infinity_series(D + 2)[D + 1]


def _is_mp(x) -> bool:
    return type(x).__module__.startswith("mpmath")


def _mp_exp(x):
    import mpmath
    return mpmath.exp(x)


def cauchy_outer(f: Factored, g: Factored):
    """(1/2 pi i)^2 int_{|z|=R1} int_{|w|=R2} f(z) g(w) / (z - w), R1 > R2.

    Both circles enclose all finite poles of f and g.  The inner w-integral
    leaves the principal part of g at infinity, hence the value is
    sum_{n >= 1} phi_{n-1} gamma_{-n} in terms of Laurent coefficients.
    """
    Df = f.degree
    if Df < 0:
        return f.const * 0 * g.const
    phi = f.laurent_infinity(0, Df)
    gam = g.laurent_infinity(-(Df + 1), -1)
    total = f.const * 0 * g.const
    for n in range(1, Df + 2):
        total = total + phi[n - 1] * gam.get(-n, 0)
    return total


def cauchy_inner(f: Factored, g: Factored):
    """Same integrand with R2 > R1: -sum_{n >= 1} gamma_{n-1} phi_{-n}."""
    Dg = g.degree
    if Dg < 0:
        return f.const * 0 * g.const
    gam = g.laurent_infinity(0, Dg)
    phi = f.laurent_infinity(-(Dg + 1), -1)
    total = f.const * 0 * g.const
    for n in range(1, Dg + 2):
        total = total + gam[n - 1] * phi.get(-n, 0)
    return -total


def _poly_shift(coeffs: Sequence, r, n: int) -> list:
    """Coefficients of p(r + eps) up to eps**(n-1); coeffs[k] multiplies z**k."""
    deg = len(coeffs) - 1
    out = []
    for k in range(n):
        if k > deg:
            out.append(coeffs[0] * 0)
            continue
        acc = coeffs[0] * 0
        for d in range(k, deg + 1):
            acc = acc + coeffs[d] * math.comb(d, k) * r ** (d - k)
        out.append(acc)
    return out


def residue_sum_rational(numerator: Sequence, denominator_factors: Sequence,
                         enclosed: Iterable):
    """Sum of residues of numerator(z) / prod (z - root)**mult at enclosed roots.

    ``numerator`` holds polynomial coefficients in increasing degree.
    Roots must be listed once; multiplicities are handled by Taylor expansion.
    """
    roots = [(_norm_root(r), int(mu)) for r, mu in denominator_factors]
    seen = set()
    for r, mu in roots:
        if r in seen:
            raise ContractError(f"root {r} listed twice in denominator factors")
        if mu < 1:
            raise ContractError(f"multiplicity {mu} of root {r} must be positive")
        seen.add(r)
    mult = dict(roots)
    coeffs = [(_norm_root(c)) for c in numerator]
    total = coeffs[0] * 0 if coeffs else 0
    for r in enclosed:
        r = _norm_root(r)
        if r not in mult:
            raise ContractError(f"enclosed point {r} is not a denominator root")
        mu = mult[r]
        one = _one_like(r)
        S = _poly_shift(coeffs, r, mu)
        scale = one
        for r2, mu2 in roots:
            if r2 == r:
                continue
            d = r - r2
            scale = scale / d ** mu2
            # (d + eps)^(-mu2) = d^(-mu2) (1 - (-1/d) eps)^(-mu2)
            apply_linear_power(S, -one / d, -mu2)
        total = total + scale * S[mu - 1]
    return total


def principal_part(f: Factored, q) -> list:
    """[(k, c_k)] with f(z) = sum_k c_k (z - q)**(-k) + regular near q."""
    q = _norm_root(q)
    order = -f.zpow if q == 0 else -f.factors.get(q, 0)
    out = []
    for k in range(1, order + 1):
        c = f.times(factors={q: k - 1}).residue(q)
        if c != 0:
            out.append((k, c))
    return out


def double_contour(f: Factored, g: Factored, f_poles, g_poles, layout: str):
    """(1/2 pi i)^2 int dz int dw f(z) g(w) / (z - w).

    ``f_poles``/``g_poles`` are the poles enclosed by the z- and w-contours.
    ``layout`` is "z_outer" (z-contour surrounds the w-contour),
    "w_outer", or "disjoint" (neither contour meets the other's interior).
    """
    f_poles = [_norm_root(p) for p in f_poles]
    g_poles = [_norm_root(p) for p in g_poles]
    total = f.const * 0 * g.const
    if layout in ("z_outer", "disjoint"):
        # inner w-integral leaves sum_k c_k / (z - q)^k
        for q in g_poles:
            for k, c in principal_part(g, q):
                h = f.times(factors={q: -k})
                poles = list(f_poles)
                if layout == "z_outer" and q not in poles:
                    poles.append(q)
                total = total + c * h.residue_sum(poles)
        return total
    if layout == "w_outer":
        for p in f_poles:
            for k, c in principal_part(f, p):
                h = g.times(factors={p: -k})
                poles = list(g_poles)
                if p not in poles:
                    poles.append(p)
                total = total - c * h.residue_sum(poles)
        return total
    raise ContractError(f"unknown contour layout {layout!r}")
