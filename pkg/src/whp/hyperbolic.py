"""Numerical self-intersection oracle via hyperbolic geometry.

The surface group is realized as a discrete group of isometries of the
upper half-plane: the punctured torus as the commutator subgroup of the
modular group (generators hyperbolic, boundary class parabolic), the
thrice-punctured sphere as the level-2 congruence subgroup (all three
boundary classes parabolic).

Self-intersections of the closed geodesic of a primitive hyperbolic class w
are counted through the universal cover: crossings of the axis of w with
its group translates, one count per translate class modulo the cyclic group
of w acting along the axis.  Translates are enumerated by a pruned ball
search.  Group elements are exact integer matrices; the geometric
predicates are floating point with hard separation thresholds, and any
ambiguity raises instead of rounding.

Parabolic classes are boundary-parallel and carry no geodesic; a k-fold
boundary power needs k - 1 crossings.  General powers w = u^k wind k times
around the primitive geodesic: k^2 * si(u) + (k - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .surfaces import SurfaceSpec
from .words import CyclicWord, Word


class NumericalDegeneracy(RuntimeError):
    """A geometric predicate fell below the separation threshold."""


class UnsupportedSurface(ValueError):
    """No built-in discrete realization for this (genus, boundary) pair."""


Mat = tuple[int, int, int, int]  # integer 2x2 matrix, row major


def _mat_mul(m: Mat, n: Mat) -> Mat:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mat_inv(m: Mat) -> Mat:
    a, b, c, d = m
    if a * d - b * c != 1:
        raise ValueError("matrices must lie in SL(2, Z)")
    return (d, -b, -c, a)


_REALIZATIONS: dict[tuple[int, int], tuple[Mat, ...]] = {
    # commutator-subgroup generators of the modular group (punctured torus)
    (1, 1): ((1, 1, 1, 2), (1, -1, -1, 2)),
    # level-2 congruence generators (thrice-punctured sphere)
    (0, 3): ((1, 2, 0, 1), (1, 0, -2, 1)),
}


def generator_matrices(surface: SurfaceSpec) -> tuple[Mat, ...]:
    key = (surface.genus, surface.boundary_count)
    if key not in _REALIZATIONS:
        raise UnsupportedSurface(
            f"no built-in hyperbolic realization for genus {key[0]}, boundary {key[1]}"
        )
    return _REALIZATIONS[key]


def matrix_of_word(surface: SurfaceSpec, w: Word) -> Mat:
    gens = generator_matrices(surface)
    mats = {i + 1: g for i, g in enumerate(gens)}
    mats.update({-(i + 1): _mat_inv(g) for i, g in enumerate(gens)})
    out: Mat = (1, 0, 0, 1)
    for c in w.codes:
        out = _mat_mul(out, mats[c])
    return out


def _commutes_projectively(g: Mat, m: Mat) -> bool:
    gm = _mat_mul(g, m)
    mg = _mat_mul(m, g)
    return gm == mg or gm == tuple(-x for x in mg)


# ---------------------------------------------------------------------------
# Floating geometry in the upper half-plane
# ---------------------------------------------------------------------------


def _apply(m: Mat, x: float) -> float:
    a, b, c, d = m
    den = c * x + d
    if den == 0.0:
        raise NumericalDegeneracy("translate endpoint at infinity")
    return (a * x + b) / den


def _hyp_dist(p: complex, q: complex) -> float:
    return math.acosh(1 + abs(p - q) ** 2 / (2 * p.imag * q.imag))


@dataclass
class _Axis:
    m: Mat
    x_rep: float
    x_att: float
    lam: float  # attracting eigenvalue magnitude, > 1

    @property
    def ell(self) -> float:
        return 2.0 * math.log(self.lam)

    def frame(self, z: complex) -> complex:
        """Orientation-preserving map sending the axis to the imaginary axis,
        repelling endpoint to 0 and attracting endpoint to infinity."""
        num = z - self.x_rep
        den = (z - self.x_att) if self.x_rep > self.x_att else (self.x_att - z)
        return num / den

    def frame_boundary(self, y: float) -> float:
        num = y - self.x_rep
        den = (y - self.x_att) if self.x_rep > self.x_att else (self.x_att - y)
        if den == 0.0:
            raise NumericalDegeneracy("translate endpoint equals an axis endpoint")
        return num / den

    def param(self, z: complex) -> float:
        """Signed position along the axis of the foot of z."""
        return math.log(abs(self.frame(z)))

    def point_at(self, t: float) -> complex:
        """Point of the axis at parameter t."""
        w = complex(0.0, math.exp(t))
        if self.x_rep > self.x_att:
            return (self.x_rep - w * self.x_att) / (1.0 - w)
        return (self.x_rep + w * self.x_att) / (1.0 + w)


def _axis_of(m: Mat) -> _Axis:
    a, b, c, d = m
    tr = a + d
    disc = tr * tr - 4
    if disc <= 0 or c == 0:
        raise NumericalDegeneracy("matrix does not define a transverse axis")
    sq = math.sqrt(disc)
    if tr > 0:
        lam_att, lam_rep = (tr + sq) / 2, (tr - sq) / 2
    else:
        lam_att, lam_rep = (tr - sq) / 2, (tr + sq) / 2
    x_att = (lam_att - d) / c
    x_rep = (lam_rep - d) / c
    return _Axis(m, x_rep, x_att, abs(lam_att))


def _dist_to_axis_segment(axis: _Axis, p: complex, lo: float, hi: float) -> float:
    """Distance from p to the axis arc between parameters lo and hi."""
    w = axis.frame(p)
    if w.imag <= 0.0:
        raise NumericalDegeneracy("point left the upper half-plane under the frame map")
    t = math.log(abs(w))
    d_line = math.asinh(abs(w.real) / w.imag)
    if lo <= t <= hi:
        return d_line
    target = axis.point_at(lo if t < lo else hi)
    return _hyp_dist(p, target)


def _enumerate_ball(
    surface: SurfaceSpec,
    axis: _Axis,
    keep_radius: float,
    expand_radius: float,
    depth: int,
    max_states: int,
) -> list[Mat]:
    base = axis.point_at(0.0)
    base_c = complex(base.real, base.imag)
    gens = generator_matrices(surface)
    step: dict[int, Mat] = {i + 1: g for i, g in enumerate(gens)}
    step.update({-(i + 1): _mat_inv(g) for i, g in enumerate(gens)})
    frontier: list[tuple[Mat, int]] = [((1, 0, 0, 1), 0)]
    kept: list[Mat] = []
    count = 0
    ell = axis.ell
    rounds = 0
    while frontier and rounds < depth:
        rounds += 1
        nxt: list[tuple[Mat, int]] = []
        for mat, last in frontier:
            for c, g in step.items():
                if c == -last:
                    continue
                m2 = _mat_mul(mat, g)
                a, b, cc, dd = m2
                den = cc * base_c + dd
                p = (a * base_c + b) / den
                if p.imag <= 0.0:
                    raise NumericalDegeneracy("orbit point left the half-plane")
                d = _dist_to_axis_segment(axis, p, 0.0, ell)
                if d > expand_radius:
                    continue
                count += 1
                if count > max_states:
                    raise NumericalDegeneracy(
                        f"ball enumeration exceeded {max_states} states"
                    )
                if d <= keep_radius:
                    kept.append(m2)
                nxt.append((m2, c))
        frontier = nxt
    return kept


# ---------------------------------------------------------------------------
# Exact arithmetic in Q(sqrt(D)): values (a + b*sqrt(D)) / c, integer triples
# ---------------------------------------------------------------------------


def _quad_sign(a: int, b: int, D: int) -> int:
    """Exact sign of a + b*sqrt(D)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare a^2 against b^2 D
    lhs, rhs = a * a, b * b * D
    if lhs == rhs:
        return 0
    if a > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def _quad_log_abs(a: int, b: int, D: int) -> float:
    """log |a + b*sqrt(D)| without cancellation."""
    if b == 0:
        if a == 0:
            raise NumericalDegeneracy("log of zero in exact endpoint arithmetic")
        return math.log(abs(a))
    if a == 0:
        return math.log(abs(b)) + 0.5 * math.log(D)
    if (a > 0) == (b > 0):
        return _log_sum(a, b, D)
    # |a + b sqrt(D)| = |a^2 - b^2 D| / |a - b sqrt(D)|, no cancellation below
    norm = a * a - b * b * D
    if norm == 0:
        raise NumericalDegeneracy("rational point equals a quadratic endpoint")
    return math.log(abs(norm)) - _log_sum(a, -b, D)


def _log_sum(a: int, b: int, D: int) -> float:
    # a and b share a sign here: evaluate via log1p on the smaller term
    la = math.log(abs(a))
    lb = math.log(abs(b)) + 0.5 * math.log(D)
    if la < lb:
        la, lb = lb, la
    return la + math.log1p(math.exp(lb - la))


class _ExactBoundary:
    """Exact endpoint geometry for the axis of an integer hyperbolic matrix."""

    def __init__(self, m: Mat):
        a, b, c, d = m
        tr = a + d
        D = tr * tr - 4
        if D <= 0 or c == 0:
            raise NumericalDegeneracy("matrix does not define a transverse axis")
        self.D = D
        # fixed points ((tr - 2d) +/- sqrt(D)) / (2c); attracting has the
        # sqrt sign matching the sign of the trace
        s = 1 if tr > 0 else -1
        self.att = (tr - 2 * d, s, 2 * c)
        self.rep = (tr - 2 * d, -s, 2 * c)
        # rep - att = -2s sqrt(D) / (2c); frame flips the denominator
        # exactly when rep < att, matching _Axis.frame
        self.frame_orientation = -s * (1 if c > 0 else -1)

    def apply(self, g: Mat, x: tuple[int, int, int]) -> tuple[int, int, int]:
        """Moebius image of (a + b sqrt(D))/c under the integer matrix g."""
        A, B, C, E = g
        a, b, c = x
        n1, n2 = A * a + B * c, A * b
        d1, d2 = C * a + E * c, C * b
        # rationalize: multiply by the conjugate of the denominator
        u = n1 * d1 - n2 * d2 * self.D
        v = n2 * d1 - n1 * d2
        w = d1 * d1 - d2 * d2 * self.D
        if w == 0:
            raise NumericalDegeneracy("translate endpoint at infinity")
        return (u, v, w)

    def frame_value(self, y: tuple[int, int, int]) -> tuple[int, float]:
        """(sign, log magnitude) of (y - rep)/(y - att), orientation fixed."""
        num = self._sub(y, self.rep)
        den = self._sub(y, self.att)
        s = self._sign(num) * self._sign(den) * self.frame_orientation
        l = self._log_abs(num) - self._log_abs(den)
        return s, l

    def _sub(self, x, y):
        xa, xb, xc = x
        ya, yb, yc = y
        return (xa * yc - ya * xc, xb * yc - yb * xc, xc * yc)

    def _sign(self, x):
        a, b, c = x
        s = _quad_sign(a, b, self.D)
        return s * ((c > 0) - (c < 0))

    def _log_abs(self, x):
        a, b, c = x
        if a == 0 and b == 0:
            raise NumericalDegeneracy("translate endpoint equals an axis endpoint")
        return _quad_log_abs(a, b, self.D) - math.log(abs(c))


def count_primitive_crossings(
    surface: SurfaceSpec,
    u: Word,
    margin: float = 3.0,
    depth: int = 64,
    max_states: int = 600_000,
    atol: float = 1e-7,
    guard: float = 1e-4,
) -> int:
    """Self-intersections of the closed geodesic of a primitive hyperbolic u."""
    m = matrix_of_word(surface, u)
    axis = _axis_of(m)
    exact = _ExactBoundary(m)
    ell = axis.ell
    keep_radius = ell / 2 + 0.6
    kept = _enumerate_ball(
        surface, axis, keep_radius, keep_radius + margin, depth, max_states
    )
    incidences: list[tuple[float, float]] = []
    for g in kept:
        if _commutes_projectively(g, m):
            continue  # same axis: no transverse crossing
        s1, l1 = exact.frame_value(exact.apply(g, exact.rep))
        s2, l2 = exact.frame_value(exact.apply(g, exact.att))
        if s1 == 0 or s2 == 0:
            raise NumericalDegeneracy("translate endpoint on the axis boundary")
        if s1 == s2:
            continue  # both endpoints on one side of the axis: no crossing
        # crossing height e^t with t the mean of the endpoint log magnitudes
        t = 0.5 * (l1 + l2)
        q = math.floor(t / ell)
        l_neg = (l1 if s1 < 0 else l2) - q * ell
        l_pos = (l1 if s1 > 0 else l2) - q * ell
        incidences.append((l_neg, l_pos))
    distinct = _cluster_keys(incidences, atol, guard)
    if len(distinct) % 2:
        raise NumericalDegeneracy("odd crossing incidence count")
    return len(distinct) // 2


def _cluster_keys(values: list[tuple[float, ...]], atol: float, guard: float):
    """Deduplicate log-scale float tuples; gaps inside the guard band abort."""
    out: list[tuple[float, ...]] = []
    for v in values:
        matched = None
        for u in out:
            d = max(abs(x - y) for x, y in zip(u, v))
            if d <= atol:
                matched = u
                break
            if d <= guard:
                raise NumericalDegeneracy(
                    f"crossing data separated by {d}, inside the guard band"
                )
        if matched is None:
            out.append(v)
    return out


def si_numeric(
    surface: SurfaceSpec,
    w: CyclicWord,
    length_cap: int = 8,
    margin: float = 3.0,
    max_states: int = 600_000,
) -> int:
    """Numerical minimal self-intersection count of the class of w."""
    if w.is_identity:
        raise ValueError("the trivial class has no curve representative")
    if len(w) > length_cap:
        raise ValueError(f"word length {len(w)} exceeds the configured cap {length_cap}")
    root, k = w.primitive_root()
    m = matrix_of_word(surface, root.as_word())
    tr = m[0] + m[3]
    if abs(tr) < 2:
        raise NumericalDegeneracy("elliptic class in a torsion-free group")
    if abs(tr) == 2:
        # parabolic <=> boundary-parallel: k - 1 crossings for the k-th power
        return k - 1
    base = count_primitive_crossings(
        surface, root.as_word(), margin=margin, max_states=max_states
    )
    return k * k * base + (k - 1)
