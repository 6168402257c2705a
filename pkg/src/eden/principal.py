"""Expansive principal algebraic Z-actions: X_f = {x in (R/Z)^Z : f*x = 0 mod 1}.

Convolution convention: (f*x)_n = sum_k f_k x_(n-k).

* invertibility of f in l1(Z) is decided exactly: roots on the unit circle are
  common roots of p and its reciprocal, and a self-reciprocal factor r has such
  roots iff h(s) with r(t) = t^d h(t + 1/t) has real roots in [-2, 2];
* the inverse w = f^-1 is computed by discrete Fourier inversion, with tails
  certified by Cauchy estimates on circles inside the root-free annulus;
* points of X_f are represented as x = (c*w) mod 1 for finitely supported
  integer generators c, which is also how weak specification is realised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from eden.errors import CapacityError, GapError, InvalidInput
from eden.laurent import LaurentPoly

MAX_TRUNCATION = 1 << 16
ROOT_MARGIN = 1e-6


def _check_nonzero(f: LaurentPoly):
    if not isinstance(f, LaurentPoly):
        raise InvalidInput("expected a LaurentPoly")
    if f.is_zero:
        raise InvalidInput("the zero polynomial is not invertible")


def _sympy_poly(coeffs):
    t = sympy.Symbol("t")
    return sympy.Poly(list(reversed([int(c) for c in coeffs])), t), t


def _dickson(j: int, s):
    """t^j + t^-j as a polynomial in s = t + 1/t (j >= 1)."""
    prev, cur = sympy.Integer(2), s
    for _ in range(j - 1):
        prev, cur = cur, sympy.expand(s * cur - prev)
    return cur


def unit_circle_root_count(f: LaurentPoly) -> int:
    """Number of distinct roots of f on the unit circle, decided in exact arithmetic."""
    _check_nonzero(f)
    p, t = _sympy_poly(f.coeffs)
    if p.degree() == 0:
        return 0
    recip = sympy.Poly(list(reversed(p.all_coeffs())), t)
    g = sympy.gcd(p, recip)
    if g.degree() == 0:
        return 0
    count = 0
    for z in (1, -1):
        if g.eval(z) == 0:
            count += 1
            while g.eval(z) == 0:
                g = sympy.Poly(sympy.quo(g.as_expr(), t - z, t), t)
    if g.degree() == 0:
        return count
    sqf = sympy.Poly(sympy.sqf_part(g.as_expr()), t)
    coeffs = list(reversed(sqf.all_coeffs()))  # ascending; palindromic of even degree 2d
    d = len(coeffs) // 2
    s = sympy.Symbol("s")
    h = sympy.Integer(coeffs[d]) + sum(sympy.Integer(coeffs[d + j]) * _dickson(j, s) for j in range(1, d + 1))
    h = sympy.Poly(sympy.expand(h), s)
    # each real root s in (-2, 2) gives a conjugate pair on the circle; s = +-2 was removed above
    return count + 2 * int(h.count_roots(-2, 2))


def _min_modulus_on_circle(coeffs, offset, radius: float, samples: int = 1024):
    """Certified lower bound on min |f| over |z| = radius, via sampling plus a Lipschitz bound."""
    exps = np.arange(len(coeffs)) + offset
    c = np.asarray(coeffs, dtype=float)
    lip = float(np.sum(np.abs(c * exps) * radius ** exps.astype(float)))
    n = samples
    while True:
        theta = 2 * np.pi * np.arange(n) / n
        z = radius * np.exp(1j * theta)
        vals = np.abs(np.polyval(c[::-1], z) * z ** offset)
        sampled = float(vals.min())
        bound = sampled - lip * np.pi / n
        if bound > 0 or n >= (1 << 22):
            return bound, sampled, n
        n *= 4


@dataclass(frozen=True)
class Invertibility:
    invertible: bool
    margin: float  # certified lower bound on min |f| on the unit circle (0 when not invertible)
    sampled_min: float
    witness: complex | None = None  # a root (numerically) on the unit circle when not invertible
    roots: tuple = ()

    def to_dict(self) -> dict:
        out = {"invertible": self.invertible, "margin": self.margin, "sampled_min": self.sampled_min}
        if self.witness is not None:
            out["witness"] = {"re": self.witness.real, "im": self.witness.imag}
        return out


def _roots(f: LaurentPoly) -> np.ndarray:
    if len(f.coeffs) <= 1:
        return np.array([], dtype=complex)
    return np.roots(np.asarray(f.coeffs[::-1], dtype=float))


def is_l1_invertible(f: LaurentPoly) -> Invertibility:
    """Exact decision of "no roots on the unit circle" with a certified margin or a root witness."""
    _check_nonzero(f)
    roots = _roots(f)
    on_circle = unit_circle_root_count(f)
    if on_circle:
        near = min(roots, key=lambda z: abs(abs(z) - 1.0))
        near = complex(round(near.real, 12) + 0.0, round(near.imag, 12) + 0.0)
        return Invertibility(False, 0.0, 0.0, near, tuple(roots))
    bound, sampled, _ = _min_modulus_on_circle(f.coeffs, f.offset, 1.0)
    return Invertibility(True, max(bound, 0.0), sampled, None, tuple(roots))


@dataclass(frozen=True)
class SummableHomoclinic:
    """w_n for |n| <= M with a certified tail and the residual ||f*w - delta_0||_1 of the truncation."""

    coefficients: np.ndarray = field(repr=False)
    M: int
    tail_bound: float
    residual: float
    decay_rate: float  # asymptotic rate from the roots (plus margin)
    certified_constant: float  # |w_n| <= C * r^|n| with r = certified_rate
    certified_rate: float

    def at(self, n: int) -> float:
        return float(self.coefficients[n + self.M]) if -self.M <= n <= self.M else 0.0

    def tail_beyond(self, r: int) -> float:
        """Certified bound on sum_{|n| > r} |w_n|."""
        if r >= self.M:
            return self.tail_bound
        w = np.abs(self.coefficients)
        inner = float(w.sum() - w[self.M - r: self.M + r + 1].sum())
        return inner + self.tail_bound

    def tail_one_sided(self, r: int) -> float:
        """Bound on max(sum_{n >= r} |w_n|, sum_{n <= -r} |w_n|) for r >= 0."""
        w = np.abs(self.coefficients)
        if r > self.M:
            return self.tail_bound
        right = float(w[self.M + r:].sum())
        left = float(w[: self.M - r + 1].sum())
        return max(right, left) + self.tail_bound

    def l1_norm(self) -> float:
        return float(np.abs(self.coefficients).sum())

    def to_dict(self, full: bool = False) -> dict:
        out = {
            "M": self.M,
            "tail_bound": self.tail_bound,
            "residual": self.residual,
            "decay_rate": self.decay_rate,
            "certified_constant": self.certified_constant,
            "certified_rate": self.certified_rate,
            "w0": self.at(0),
            "l1_norm": self.l1_norm(),
        }
        if full:
            out["coefficients"] = [float(v) for v in self.coefficients]
        return out


def convolve(f: LaurentPoly, x: np.ndarray, start: int):
    """(f*x) for x given on [start, start+len); returns (values, new start)."""
    return np.convolve(np.asarray(f.coeffs, dtype=float), x), start + f.offset


def _annulus(f: LaurentPoly, roots: np.ndarray):
    inner = [abs(r) for r in roots if abs(r) < 1]
    outer = [abs(r) for r in roots if abs(r) > 1]
    r_out = math.sqrt(min(outer)) if outer else 4.0
    r_in = math.sqrt(max(inner)) if inner else 0.25
    rate = max(max(inner, default=0.0), 1 / min(outer) if outer else 0.0) + ROOT_MARGIN
    return r_in, r_out, min(rate, 1.0)


def _winding(coeffs, offset, radius: float, n: int) -> int:
    """Winding number of the polynomial part t^-offset f around 0 on |z| = radius."""
    theta = 2 * np.pi * np.arange(n + 1) / n
    z = radius * np.exp(1j * theta)
    vals = np.polyval(np.asarray(coeffs, dtype=float)[::-1], z)
    d = np.angle(vals[1:] / vals[:-1])
    return int(round(float(d.sum()) / (2 * np.pi)))


def l1_inverse(f: LaurentPoly, tol: float = 1e-9) -> SummableHomoclinic:
    """w = f^-1 in l1(Z) with ||f*w - delta_0||_1 + tail_bound <= tol."""
    inv = is_l1_invertible(f)
    if not inv.invertible:
        raise InvalidInput(f"f = {f.pretty()} has roots on the unit circle and no l1 inverse")
    if tol <= 0:
        raise InvalidInput("tolerance must be positive")
    roots = np.asarray(inv.roots, dtype=complex)
    r_in, r_out, rate = _annulus(f, roots)
    # certify the annulus r_in <= |z| <= r_out is root-free: bounded away from 0 on both circles and
    # the same number of roots inside each boundary circle as inside the unit circle
    m_out, _, n_out = _min_modulus_on_circle(f.coeffs, f.offset, r_out)
    m_in, _, n_in = _min_modulus_on_circle(f.coeffs, f.offset, r_in)
    _, _, n_unit = _min_modulus_on_circle(f.coeffs, f.offset, 1.0)
    if m_out <= 0 or m_in <= 0:
        raise InvalidInput("could not certify a root-free annulus around the unit circle")
    windings = {_winding(f.coeffs, f.offset, r, 4 * n) for r, n in ((r_in, n_in), (1.0, n_unit), (r_out, n_out))}
    if len(windings) != 1:
        raise InvalidInput("roots found between the certification circles")
    # Cauchy: |w_n| <= r_out^-n / m_out (n > 0) and |w_n| <= r_in^|n| / m_in (n < 0)
    q_out, q_in = 1 / r_out, r_in
    C = max(1 / m_out, 1 / m_in)
    cert_rate = max(q_out, q_in)

    def tail(M):
        right = q_out ** (M + 1) / (1 - q_out) / m_out
        left = q_in ** (M + 1) / (1 - q_in) / m_in
        return right + left

    M = 1
    while tail(M) > tol / 4:
        M *= 2
        if M > MAX_TRUNCATION:
            raise CapacityError("tolerance unachievable within the truncation limit")
    while True:
        N = 1 << max(3, math.ceil(math.log2(4 * M + 1)))
        theta = 2 * np.pi * np.arange(N) / N
        z = np.exp(1j * theta)
        fz = f(z)
        spectrum = np.fft.fft(1.0 / fz) / N  # spectrum[n mod N] ~ w_n
        idx = np.arange(-M, M + 1) % N
        w = spectrum[idx].real
        conv, start = convolve(f, w, -M)
        target = np.zeros_like(conv)
        target[-start] = 1.0
        residual = float(np.abs(conv - target).sum())
        if residual + tail(M) <= tol:
            return SummableHomoclinic(w, M, tail(M), residual, rate, C, cert_rate)
        M *= 2
        if M > MAX_TRUNCATION:
            raise CapacityError("tolerance unachievable within the truncation limit")


def mod1_dist(a):
    """Distance to 0 on R/Z: min(frac(a), 1 - frac(a))."""
    frac = np.mod(a, 1.0)
    return np.minimum(frac, 1.0 - frac)


@dataclass
class PrincipalPoint:
    """A point of X_f on the index range [start, start + len(values)), values in [0, 1).

    ``generator`` (index -> integer) records x = (c*w) mod 1 when known.
    """

    f: LaurentPoly
    start: int
    values: np.ndarray = field(repr=False)
    generator: dict | None = None
    tail_bound: float = 0.0
    relation_residual: float = 0.0

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    def at(self, n: int) -> float:
        if self.start <= n < self.stop:
            return float(self.values[n - self.start])
        return 0.0

    def window_values(self, lo: int, hi: int) -> np.ndarray:
        return np.array([self.at(n) for n in range(lo, hi + 1)])

    def summability(self) -> float:
        return float(mod1_dist(self.values).sum())

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "values": [float(v) for v in self.values],
            "generator": {str(k): int(v) for k, v in sorted(self.generator.items())} if self.generator else None,
            "tail_bound": self.tail_bound,
            "relation_residual": self.relation_residual,
            "summability": self.summability(),
        }


def relation_residual(f: LaurentPoly, values: np.ndarray, start: int) -> float:
    """max dist((f*x)_n, 0) over indices where f*x is fully determined by the represented values."""
    conv, cstart = convolve(f, values, start)
    span = len(f.coeffs) - 1
    inner = conv[span: len(conv) - span] if len(conv) > 2 * span else conv[:0]
    return float(mod1_dist(inner).max()) if len(inner) else 0.0


def synthesize(f: LaurentPoly, w: SummableHomoclinic, generator: dict, lo: int, hi: int) -> np.ndarray:
    """Real values of (c*w)_n for n in [lo, hi] (not reduced mod 1)."""
    out = np.zeros(hi - lo + 1)
    for k, c in generator.items():
        if not c:
            continue
        n = np.arange(lo, hi + 1)
        d = n - int(k)
        mask = np.abs(d) <= w.M
        out[mask] += c * w.coefficients[d[mask] + w.M]
    return out


def fundamental_homoclinic(f: LaurentPoly, tol: float = 1e-9, M: int | None = None) -> PrincipalPoint:
    """x = w mod 1 on [-M, M]; f*x = delta_0 = 0 mod 1 and sum dist(x_n, 0) <= ||w||_1."""
    w = l1_inverse(f, tol)
    if M is not None and M > w.M:
        w = _extend(f, w, M)
    span = w.M if M is None else M
    values = np.mod(w.coefficients[w.M - span: w.M + span + 1], 1.0)
    point = PrincipalPoint(f, -span, values, {0: 1}, w.tail_beyond(span))
    point.relation_residual = relation_residual(f, w.coefficients[w.M - span: w.M + span + 1], -span)
    return point


def _extend(f: LaurentPoly, w: SummableHomoclinic, M: int) -> SummableHomoclinic:
    tol = w.residual + w.tail_bound
    while w.M < M:
        tol /= 1e3
        w = l1_inverse(f, max(tol, 1e-15))
        if tol <= 1e-15 and w.M < M:
            padded = np.zeros(2 * M + 1)
            padded[M - w.M: M + w.M + 1] = w.coefficients
            return SummableHomoclinic(padded, M, w.tail_bound, w.residual, w.decay_rate,
                                      w.certified_constant, w.certified_rate)
    return w


def point_from_generator(f: LaurentPoly, generator: dict, lo: int, hi: int, tol: float = 1e-12) -> PrincipalPoint:
    """The point (c*w) mod 1 sampled on [lo, hi]."""
    w = l1_inverse(f, tol)
    generator = {int(k): int(v) for k, v in generator.items() if int(v)}
    vals = synthesize(f, w, generator, lo, hi)
    cmax = sum(abs(v) for v in generator.values())
    return PrincipalPoint(f, lo, np.mod(vals, 1.0), generator, cmax * w.tail_bound,
                          relation_residual(f, vals, lo))


def recover_generator(f: LaurentPoly, point: PrincipalPoint) -> dict:
    """Integer c with (c*w) = point mod 1, from rounding f*lift on the represented range."""
    conv, start = convolve(f, point.values, point.start)
    span = len(f.coeffs) - 1
    gen = {}
    for i in range(span, len(conv) - span):
        c = int(round(conv[i]))
        if abs(conv[i] - c) > 1e-6:
            raise InvalidInput("target values are not a point of X_f (f*x is not integral)")
        if c:
            gen[start + i] = c
    return gen


@dataclass(frozen=True)
class GlueResult:
    point: PrincipalPoint
    achieved: tuple  # sup mod-1 distance on each target window
    required_separation: int
    restriction_radius: int

    def to_dict(self) -> dict:
        return {
            "achieved": list(self.achieved),
            "required_separation": self.required_separation,
            "restriction_radius": self.restriction_radius,
            "point": self.point.to_dict(),
        }


def _window_bounds(window) -> tuple:
    if hasattr(window, "bounds"):
        (lo,), (hi,) = window.bounds()
        return lo, hi
    lo, hi = window
    return int(lo), int(hi)


def required_separation(w: SummableHomoclinic, eps: float, total_mass: float, radius: int) -> int:
    """Smallest window distance (next start - previous end) keeping interference <= eps/4.

    A generator restricted to window +- radius contributes at most
    total_mass * max(sum_{n >= s} |w_n|, sum_{n <= -s} |w_n|) at distance s.
    """
    if total_mass <= 0:
        return radius + 1
    s = 1
    while total_mass * w.tail_one_sided(s) > eps / 4:
        s += 1
        if s > 2 * w.M + 2:
            raise CapacityError("the decay of w is too slow for the requested eps")
    return radius + s


def glue_specification(f: LaurentPoly, targets, eps: float, tol: float = 1e-12) -> GlueResult:
    """One point of X_f that eps-shadows every target on its window.

    Each target is (window, PrincipalPoint). Its integer generator is used when
    present, otherwise recovered by rounding f*x and re-verified. Generators are
    restricted to window +- R with R chosen so the self-error is <= eps/4, and
    windows must be far enough apart that interference is <= eps/4.
    """
    if not 0 < eps < 0.5:
        raise InvalidInput("eps must lie in (0, 1/2)")
    w = l1_inverse(f, tol)
    parsed = []
    for window, point in targets:
        lo, hi = _window_bounds(window)
        if lo > hi:
            raise InvalidInput("target windows must be nonempty intervals")
        gen = point.generator if point.generator is not None else recover_generator(f, point)
        check = np.mod(synthesize(f, w, gen, lo, hi), 1.0)
        mismatch = float(mod1_dist(check - point.window_values(lo, hi)).max())
        if mismatch > max(1e-6, 10 * point.tail_bound):
            raise InvalidInput(f"target on [{lo}, {hi}] is not reproduced by integer combinations of "
                               f"homoclinic translates (mismatch {mismatch:.3g})")
        parsed.append((lo, hi, gen, point))
    # restriction radius: dropping generator mass outside window +- R costs <= mass * tail(R)
    restricted, radius = [], 0
    for lo, hi, gen, point in parsed:
        def dropped(R):
            return sum(abs(c) for k, c in gen.items() if not lo - R <= k <= hi + R)

        R = 0
        while dropped(R) * w.tail_beyond(R) > eps / 4:
            R += 1
        radius = max(radius, R)
        restricted.append((lo, hi, {k: c for k, c in gen.items() if lo - R <= k <= hi + R}, point))
    total_mass = sum(sum(abs(c) for c in g.values()) for _, _, g, _ in restricted)
    need = required_separation(w, eps, total_mass, radius) if len(restricted) > 1 else 0
    ordered = sorted(restricted, key=lambda r: r[0])
    for (lo1, hi1, *_), (lo2, hi2, *_) in zip(ordered, ordered[1:]):
        if lo2 - hi1 < need:
            raise GapError(f"windows [{lo1}, {hi1}] and [{lo2}, {hi2}] are {lo2 - hi1} apart; "
                           f"eps = {eps:g} needs {need}", need)
    combined = {}
    for _, _, gen, _ in restricted:
        for k, c in gen.items():
            combined[k] = combined.get(k, 0) + c
    lo_all = min(r[0] for r in restricted) - w.M
    hi_all = max(r[1] for r in restricted) + w.M
    vals = synthesize(f, w, combined, lo_all, hi_all)
    point = PrincipalPoint(f, lo_all, np.mod(vals, 1.0), combined,
                           sum(abs(c) for c in combined.values()) * w.tail_bound,
                           relation_residual(f, vals, lo_all))
    achieved = []
    for lo, hi, _, target in restricted:
        d = mod1_dist(point.window_values(lo, hi) - target.window_values(lo, hi))
        achieved.append(float(d.max()))
    if max(achieved) > eps:
        raise GapError(f"achieved distance {max(achieved):.3g} exceeds eps = {eps:g}", need)
    return GlueResult(point, tuple(achieved), need, radius)
