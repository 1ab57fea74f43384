"""Three-dimensional Walker metrics and their Ricci solitons.

Coordinates are ``(t, x, y)`` and the metric is

    g = [[0, 0, 1], [0, eps, 0], [1, 0, f(x, y)]]

with ``eps = +-1``; ``d/dt`` is the parallel null field.  Geometry is
evaluated from closed forms, with finite-difference oracles alongside.
Everything that evaluates at a point also accepts numpy arrays for
``t, x, y`` (broadcast elementwise); Fraction inputs with a structured
``f`` stay exact.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .soliton import CausalCharacter

_EXACT = (int, Fraction)


def _frac(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12)
    return Fraction(v)


# polynomials in y ------------------------------------------------------------


class Poly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def coerce(cls, p) -> "Poly":
        if isinstance(p, Poly):
            return p
        if isinstance(p, (list, tuple)):
            return cls(p)
        return cls([p])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, y):
        if isinstance(y, _EXACT):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * y + c
            return acc
        acc = 0.0 * np.asarray(y, dtype=float) if isinstance(y, np.ndarray) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * y + float(c)
        return acc

    def deriv(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __add__(self, other) -> "Poly":
        o = Poly.coerce(other).coeffs
        n = max(len(self.coeffs), len(o))
        return Poly([(self.coeffs[k] if k < len(self.coeffs) else 0) + (o[k] if k < len(o) else 0)
                     for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        o = Poly.coerce(other).coeffs
        if not self.coeffs or not o:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            return self.coeffs == Poly.coerce(other).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


Y = Poly([0, 1])


# defining functions ----------------------------------------------------------


@dataclass(frozen=True)
class StructuredF:
    """f = kappa x^2 + x P(y) + Q(y)  (the locally symmetric case)."""

    kappa: Fraction
    P: Poly = field(default_factory=Poly)
    Q: Poly = field(default_factory=Poly)

    def __post_init__(self):
        object.__setattr__(self, "kappa", _frac(self.kappa))
        object.__setattr__(self, "P", Poly.coerce(self.P))
        object.__setattr__(self, "Q", Poly.coerce(self.Q))

    def _k(self, x):
        return self.kappa if isinstance(x, _EXACT) else float(self.kappa)

    def f(self, x, y):
        return self._k(x) * x * x + x * self.P(y) + self.Q(y)

    def f_x(self, x, y):
        return 2 * self._k(x) * x + self.P(y)

    def f_y(self, x, y):
        return x * self.P.deriv()(y) + self.Q.deriv()(y)

    def f_xx(self, x, y):
        k = self._k(x)
        return k + k + 0 * x

    @property
    def flat(self) -> bool:
        return self.kappa == 0

    def to_json(self) -> dict:
        return {"kappa": str(self.kappa), "P": self.P.to_json(), "Q": self.Q.to_json()}


@dataclass(frozen=True)
class CallableF:
    """A general defining function with user supplied partials."""

    func: Callable
    fx: Callable
    fy: Callable
    fxx: Callable

    def f(self, x, y):
        return self.func(x, y)

    def f_x(self, x, y):
        return self.fx(x, y)

    def f_y(self, x, y):
        return self.fy(x, y)

    def f_xx(self, x, y):
        return self.fxx(x, y)

    def is_flat_on(self, samples: Sequence[tuple[float, float]], tol: float = 1e-12) -> bool:
        return all(abs(self.fxx(x, y)) <= tol for x, y in samples)

    @property
    def flat(self) -> bool:
        pts = [(float(x), float(y)) for x, y in itertools.product(np.linspace(-1, 1, 7), repeat=2)]
        return self.is_flat_on(pts)


@dataclass(frozen=True)
class WalkerMetric:
    eps: int
    f: StructuredF | CallableF

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")

    @property
    def flat(self) -> bool:
        return self.f.flat

    def matrix(self, x, y):
        fv = self.f.f(x, y)
        return [[0, 0, 1], [0, self.eps, 0], [1, 0, fv]]

    def inverse(self, x, y):
        fv = self.f.f(x, y)
        return [[-fv, 0, 1], [0, Fraction(1, self.eps) if isinstance(x, _EXACT) else 1.0 / self.eps, 0], [1, 0, 0]]


# connection and curvature ----------------------------------------------------


def christoffels(m: WalkerMetric, point) -> list[list[list]]:
    """gamma[i][j][k] = d_k component of nabla_{d_i} d_j in (t, x, y) order."""
    _, x, y = point
    fx, fy = m.f.f_x(x, y), m.f.f_y(x, y)
    zero = 0 * fx
    G = [[[zero] * 3 for _ in range(3)] for _ in range(3)]
    G[1][2][0] = G[2][1][0] = fx / 2
    G[2][2][0] = fy / 2
    G[2][2][1] = -fx / (2 * m.eps)
    return G


def fd_christoffels(m: WalkerMetric, point, h: float = 1e-4) -> np.ndarray:
    """Koszul formula with centered differences of the metric entries only."""
    t, x, y = (float(v) for v in point)
    base = np.array([t, x, y])

    def metric_at(p):
        return np.array(m.matrix(p[1], p[2]), dtype=float)

    dg = []
    for l in range(3):
        e = np.zeros(3)
        e[l] = h
        dg.append((metric_at(base + e) - metric_at(base - e)) / (2 * h))
    ginv = np.linalg.inv(metric_at(base))
    # Gamma^k_ij = 1/2 g^{kl} (d_i g_lj + d_j g_li - d_l g_ij)
    out = np.zeros((3, 3, 3))
    for i, j, k in itertools.product(range(3), repeat=3):
        out[i, j, k] = 0.5 * sum(ginv[k, l] * (dg[i][l, j] + dg[j][l, i] - dg[l][i, j]) for l in range(3))
    return out


def christoffel_fd_error(m: WalkerMetric, points, h: float) -> float:
    return max(float(np.max(np.abs(np.array(christoffels(m, p), dtype=float) - fd_christoffels(m, p, h))))
               for p in points)


def walker_ricci(m: WalkerMetric, point):
    """(ric, ric_op) in the coordinate basis; ric_op = g^{-1} ric."""
    _, x, y = point
    fxx = m.f.f_xx(x, y)
    zero = 0 * fxx
    ric = [[zero] * 3 for _ in range(3)]
    ric[2][2] = -fxx / (2 * m.eps)
    ginv = m.inverse(x, y)
    op = [[sum(ginv[i][k] * ric[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    return ric, op


def ricci_squared(m: WalkerMetric, point):
    _, op = walker_ricci(m, point)
    return [[sum(op[i][k] * op[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


# vector fields ----------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """A function of y together with its first two derivatives."""

    value: Callable
    d1: Callable
    d2: Callable | None = None

    def __call__(self, y):
        return self.value(y)

    @classmethod
    def poly(cls, p) -> "Profile":
        p = Poly.coerce(p)
        return cls(p, p.deriv(), p.deriv().deriv())

    @classmethod
    def zero(cls) -> "Profile":
        return cls.poly(Poly())


@dataclass(frozen=True)
class StructuredField:
    """X = (t (lam - beta) - eps x w' + mu,  lam x / 2 + w,  beta y + gamma)."""

    eps: int
    lam: float
    gamma: float
    w: Profile
    mu: Profile
    beta: float = 0

    def components(self, t, x, y):
        A = t * (self.lam - self.beta) - self.eps * x * self.w.d1(y) + self.mu(y)
        B = self.lam * x / 2 + self.w(y)
        C = self.beta * y + self.gamma + 0 * x
        return A, B, C

    def partials(self, t, x, y) -> dict:
        zero = 0 * (t + x + y)
        return {
            "A_t": self.lam - self.beta + zero,
            "A_x": -self.eps * self.w.d1(y) + zero,
            "A_y": -self.eps * x * self.w.d2(y) + self.mu.d1(y),
            "B_t": zero,
            "B_x": self.lam / 2 + zero,
            "B_y": self.w.d1(y) + zero,
            "C_t": zero,
            "C_x": zero,
            "C_y": self.beta + zero,
        }


@dataclass(frozen=True)
class RawField:
    """X = (A, B, C) given by callables of (t, x, y).

    ``partials`` may map names like ``"A_t"`` to callables; missing ones
    are taken by centered differences with step ``h``.
    """

    A: Callable
    B: Callable
    C: Callable
    partial_funcs: dict = field(default_factory=dict)
    h: float = 1e-4

    def components(self, t, x, y):
        return self.A(t, x, y), self.B(t, x, y), self.C(t, x, y)

    def partials(self, t, x, y) -> dict:
        out = {}
        for name, fn in (("A", self.A), ("B", self.B), ("C", self.C)):
            for v, var in enumerate("txy"):
                key = f"{name}_{var}"
                if key in self.partial_funcs:
                    out[key] = self.partial_funcs[key](t, x, y)
                else:
                    out[key] = _centered(fn, (t, x, y), v, self.h)
        return out


def _centered(fn, p, v, h):
    hi = list(p)
    lo = list(p)
    hi[v] = hi[v] + h
    lo[v] = lo[v] - h
    return (fn(*hi) - fn(*lo)) / (2 * h)


PARALLEL_FIELD = RawField(lambda t, x, y: 1 + 0 * t, lambda t, x, y: 0 * t, lambda t, x, y: 0 * t,
                          {k: (lambda t, x, y: 0 * t) for k in
                           ("A_t", "A_x", "A_y", "B_t", "B_x", "B_y", "C_t", "C_x", "C_y")})


def walker_lie_derivative(m: WalkerMetric, X, point):
    """L_X g in the coordinate basis, entry by entry from the partials of X."""
    t, x, y = point
    A, B, C = X.components(t, x, y)
    d = X.partials(t, x, y)
    e = m.eps
    f, fx, fy = m.f.f(x, y), m.f.f_x(x, y), m.f.f_y(x, y)
    l11 = 2 * d["C_t"]
    l12 = e * d["B_t"] + d["C_x"]
    l13 = d["A_t"] + d["C_y"] + f * d["C_t"]
    l22 = 2 * e * d["B_x"]
    l23 = d["A_x"] + e * d["B_y"] + f * d["C_x"]
    l33 = B * fx + C * fy + 2 * (d["A_y"] + f * d["C_y"])
    return [[l11, l12, l13], [l12, l22, l23], [l13, l23, l33]]


def soliton_equations(m: WalkerMetric, X, lam, point):
    """The six entries of L_X g + Ric - lam g (order 11, 22, 33, 12, 13, 23)."""
    L = walker_lie_derivative(m, X, point)
    ric, _ = walker_ricci(m, point)
    g = m.matrix(point[1], point[2])
    return [L[i][j] + ric[i][j] - lam * g[i][j] for i, j in ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))]


@dataclass(frozen=True)
class GridSpec:
    lo: float = -1.0
    hi: float = 1.0
    n: int = 20

    def axes(self):
        return np.linspace(self.lo, self.hi, self.n)

    def mesh(self):
        a = self.axes()
        T, Xg, Yg = np.meshgrid(a, a, a, indexing="ij")
        return T.ravel(), Xg.ravel(), Yg.ravel()


def soliton_residual(m: WalkerMetric, X, lam, grid: GridSpec | None = None) -> float:
    """Max-norm of the soliton equations over a tensor grid in (t, x, y)."""
    grid = grid or GridSpec()
    eqs = soliton_equations(m, X, lam, grid.mesh())
    return float(max(np.max(np.abs(np.asarray(e, dtype=float) + np.zeros(grid.n ** 3))) for e in eqs))


# reduction of the soliton system ----------------------------------------------

SYMBOLS = ("w''", "w", "mu'", "1")


class LinearForm:
    """sum_s coeff[s](y) * s, with s among w'', w, mu', 1."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: Poly.coerce(v) for k, v in (terms or {}).items() if Poly.coerce(v)}

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Poly()) + v
        return LinearForm(out)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + other.scale(-1)

    def scale(self, p) -> "LinearForm":
        p = Poly.coerce(p)
        return LinearForm({k: v * p for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return "LinearForm(" + ", ".join(f"{k}: {v!r}" for k, v in sorted(self.terms.items())) + ")"

    def to_json(self) -> dict:
        return {k: self.terms[k].to_json() for k in SYMBOLS if k in self.terms}


def _xpoly_mul(a: list, b: list) -> list:
    out = [LinearForm() for _ in range(len(a) + len(b) - 1)]
    for i, p in enumerate(a):
        for j, lf in enumerate(b):
            out[i + j] = out[i + j] + lf.scale(p)
    return out


def _xpoly_add(*polys: list) -> list:
    n = max(len(p) for p in polys)
    out = [LinearForm() for _ in range(n)]
    for p in polys:
        for i, lf in enumerate(p):
            out[i] = out[i] + lf
    return out


def _const(p) -> LinearForm:
    return LinearForm({"1": p})


@dataclass
class ReducedEquation:
    """What is left of the soliton system once the field has been integrated.

    ``x_coefficients[k]`` (structured f only) is the coefficient of x^k, each
    a linear form in w'', w, mu' with polynomial coefficients in y; all must
    vanish.  ``flags`` names branches that force the metric to be flat.
    """

    eps: int
    lam: Fraction
    beta: Fraction
    gamma: Fraction
    alpha: Fraction
    x_coefficients: list[LinearForm] | None
    flags: list[str]
    f: StructuredF | CallableF

    @property
    def consistent(self) -> bool:
        return not self.flags

    def evaluate(self, x, y, w: Profile, mu: Profile):
        """Left side minus right side of the remaining PDE at (x, y)."""
        e, f = self.eps, self.f
        return (2 * self.beta * f.f(x, y) - self.lam * f.f(x, y) + 2 * mu.d1(y) - 2 * e * x * w.d2(y)
                + f.f_y(x, y) * (self.beta * y + self.gamma) + f.f_x(x, y) * (self.lam * x / 2 + w(y))
                - f.f_xx(x, y) / (2 * e))

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "lambda": str(self.lam),
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "alpha": str(self.alpha),
            "flags": self.flags,
            "x_coefficients": None if self.x_coefficients is None else [c.to_json() for c in self.x_coefficients],
        }


def reduce_general(m: WalkerMetric, lam, beta, gamma, alpha=0) -> ReducedEquation:
    lam, beta, gamma, alpha = (_frac(v) for v in (lam, beta, gamma, alpha))
    e = m.eps
    flags = []
    if alpha and not m.flat:
        flags.append("alpha_requires_flat")
    coeffs = None
    if isinstance(m.f, StructuredF):
        F = m.f
        fx_ = [F.Q, F.P, Poly.const(F.kappa)]
        f_x = [F.P, Poly.const(2 * F.kappa)]
        f_y = [F.Q.deriv(), F.P.deriv()]
        v = Poly([gamma, beta])
        # remaining PDE, collected in powers of x
        terms = _xpoly_add(
            _xpoly_mul(fx_, [_const(2 * beta - lam)]),
            [LinearForm({"mu'": 2})],
            [LinearForm(), LinearForm({"w''": -2 * e})],
            _xpoly_mul(f_y, [_const(v)]),
            _xpoly_mul(f_x, [LinearForm({"w": 1}), _const(lam / 2)]),
            [_const(-F.kappa / e)],
        )
        while terms and not terms[-1]:
            terms.pop()
        coeffs = terms
        if len(coeffs) > 2:
            # a constant x^2 coefficient cannot be absorbed by w or mu
            flags.append("beta_forces_flat")
    return ReducedEquation(e, lam, beta, gamma, alpha, coeffs, flags, m.f)


def symmetric_system(F: StructuredF, eps: int, lam, gamma) -> tuple[LinearForm, LinearForm]:
    """The two equations for (w, mu) in the symmetric case, as lhs - rhs."""
    lam, gamma = _frac(lam), _frac(gamma)
    eq_w = LinearForm({"w''": 2 * eps, "w": -2 * F.kappa, "1": -(gamma * F.P.deriv() - lam / 2 * F.P)})
    eq_mu = LinearForm({"mu'": 2, "1": -(Fraction(F.kappa, 1) / eps + lam * F.Q - gamma * F.Q.deriv()),
                        "w": F.P})
    return eq_w, eq_mu


# symmetric case solver -------------------------------------------------------


@dataclass
class SymmetricSolution:
    y: np.ndarray
    w_samples: np.ndarray
    dw_samples: np.ndarray
    mu_samples: np.ndarray
    w: Profile
    mu: Profile
    eps: int
    lam: float
    gamma: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["y", "w", "mu"])
        for row in zip(self.y, self.w_samples, self.mu_samples):
            wr.writerow([repr(float(v)) for v in row])
        return buf.getvalue()


def solve_symmetric(F: StructuredF, lam, gamma, w0=0.0, w0p=0.0, eps: int = 1,
                    interval: tuple[float, float] = (-1.0, 1.0), h: float = 1e-3) -> SymmetricSolution:
    """Integrate the (w, mu) system from y = 0 with mu(0) = 0.

    Fixed-step RK4 on the state (w, w', mu) in both directions.  The
    returned profiles are Hermite interpolants; w'' and mu' are the
    derivatives of the interpolants of w' and mu.
    """
    if F.flat:
        raise ValueError("the symmetric reduction needs kappa != 0")
    k = float(F.kappa)
    lam, gamma = float(lam), float(gamma)
    P, dP, Q, dQ = F.P, F.P.deriv(), F.Q, F.Q.deriv()

    def d2w(y, w):
        return (2 * k * w + gamma * dP(y) - 0.5 * lam * P(y)) / (2 * eps)

    def dmu(y, w):
        return 0.5 * (k / eps - P(y) * w + lam * Q(y) - gamma * dQ(y))

    def rhs(y, s):
        return np.array([s[1], d2w(y, s[0]), dmu(y, s[0])])

    def march(end):
        n = int(round(abs(end) / h))
        step = end / n if n else 0.0
        ys, states = [0.0], [np.array([float(w0), float(w0p), 0.0])]
        y, s = 0.0, states[0]
        for i in range(n):
            k1 = rhs(y, s)
            k2 = rhs(y + step / 2, s + step / 2 * k1)
            k3 = rhs(y + step / 2, s + step / 2 * k2)
            k4 = rhs(y + step, s + step * k3)
            s = s + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            y = (i + 1) * step
            ys.append(y)
            states.append(s)
        return ys, states

    lo, hi = interval
    yl, sl = march(lo) if lo < 0 else ([0.0], [np.array([float(w0), float(w0p), 0.0])])
    yr, sr = march(hi) if hi > 0 else ([0.0], [])
    ys = np.array(yl[::-1] + yr[1:])
    S = np.array(sl[::-1] + sr[1:])
    w, dw, mu = S[:, 0], S[:, 1], S[:, 2]
    ddw = np.array([d2w(a, b) for a, b in zip(ys, w)])
    dmus = np.array([dmu(a, b) for a, b in zip(ys, w)])
    w_spline = CubicHermiteSpline(ys, w, dw)
    dw_spline = CubicHermiteSpline(ys, dw, ddw)
    mu_spline = CubicHermiteSpline(ys, mu, dmus)
    w_prof = Profile(w_spline, dw_spline, dw_spline.derivative())
    mu_prof = Profile(mu_spline, mu_spline.derivative())
    return SymmetricSolution(ys, w, dw, mu, w_prof, mu_prof, eps, lam, gamma)


def build_soliton_field(w: Profile, mu: Profile, lam, gamma, eps: int = 1) -> StructuredField:
    return StructuredField(eps, float(lam) if not isinstance(lam, _EXACT) else lam,
                           float(gamma) if not isinstance(gamma, _EXACT) else gamma, w, mu)


def field_from_solution(sol: SymmetricSolution) -> StructuredField:
    return build_soliton_field(sol.w, sol.mu, sol.lam, sol.gamma, sol.eps)


# causal character ------------------------------------------------------------


def field_norm(m: WalkerMetric, X, point):
    """g(X, X) = 2 A C + eps B^2 + f C^2."""
    t, x, y = point
    A, B, C = X.components(t, x, y)
    return 2 * A * C + m.eps * B * B + m.f.f(x, y) * C * C


def causal_character_field(m: WalkerMetric, X, point, tol: float = 1e-12) -> CausalCharacter:
    q = field_norm(m, X, point)
    if isinstance(q, _EXACT):
        s = (q > 0) - (q < 0)
    else:
        s = 0 if abs(q) <= tol else (1 if q > 0 else -1)
    return {1: CausalCharacter.SPACELIKE, 0: CausalCharacter.NULL, -1: CausalCharacter.TIMELIKE}[s]


def causal_map(m: WalkerMetric, X, grid: GridSpec | None = None, tol: float = 1e-12) -> dict:
    """Counts of each causal character over the grid, plus min and max of g(X, X)."""
    grid = grid or GridSpec()
    q = np.asarray(field_norm(m, X, grid.mesh()), dtype=float) + np.zeros(grid.n ** 3)
    return {
        "spacelike": int(np.sum(q > tol)),
        "timelike": int(np.sum(q < -tol)),
        "null": int(np.sum(np.abs(q) <= tol)),
        "min": float(q.min()),
        "max": float(q.max()),
        "varies": bool(q.max() > tol and q.min() < -tol),
    }
