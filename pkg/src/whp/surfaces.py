"""Curves on compact orientable surfaces with boundary.

The fundamental group of a genus-g surface with b >= 1 boundary components
is free of rank 2g + b - 1 on the standard generators; the first boundary
word is the product of commutators times the remaining boundary generators.
The surface is realized as the thickening of a one-vertex ribbon graph whose
faces are exactly the boundary words, which pins down a planar (cyclic)
order of the 2N directed letters around the vertex.

Minimal self-intersection numbers are computed by linked-pair counting:
a primitive cyclic word of length n has one strand per rotation, each
rotation contributes a bi-infinite periodic line through the base vertex of
the universal cover, and two rotations cross exactly when their endpoint
pairs interleave in the circular order of ends.  Powers wind: for w = u^k
with u primitive the count is k^2 * si(u) + (k - 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .whitehead import (
    CYCLIC,
    EXACT,
    Coordinate,
    EQUIVALENT,
    TupleInstance,
    equivalent,
)
from .words import (
    Alphabet,
    Automorphism,
    CyclicWord,
    Endomorphism,
    EPSILON,
    Word,
    cyclic_reduce,
    inner_automorphism,
    transporter,
)


class SurfaceError(ValueError):
    """Invalid surface data: unsupported (g, b) or inconsistent boundary."""


def standard_boundary_words(genus: int, boundary_count: int) -> tuple[Word, ...]:
    """Boundary classes of the standard presentation.

    Generators are a1, b1, ..., ag, bg, z2, ..., zb (rank 2g + b - 1); the
    first boundary word is [a1,b1]...[ag,bg] z2...zb and the others are the
    zi themselves.
    """
    rank = 2 * genus + boundary_count - 1
    codes: list[int] = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        codes.extend([a, b, -a, -b])
    z_start = 2 * genus + 1
    zs = list(range(z_start, rank + 1))
    first = Word(tuple(codes + zs))
    return (first,) + tuple(Word((z,)) for z in zs)


def _ribbon_order(genus: int, boundary_count: int, rank: int) -> tuple[int, ...]:
    """Cyclic order of the 2N directed letters realizing the standard faces.

    Faces are prescribed as the first boundary word plus the inverses of the
    remaining boundary generators; the vertex order is recovered from the
    face permutation and must close into a single 2N-cycle.
    """
    boundary = standard_boundary_words(genus, boundary_count)
    faces: list[tuple[int, ...]] = [boundary[0].codes]
    faces.extend((-w.codes[0],) for w in boundary[1:])
    phi: dict[int, int] = {}
    for face in faces:
        for p, c in enumerate(face):
            if c in phi:
                raise SurfaceError("face letters do not partition the directed letters")
            phi[c] = face[(p + 1) % len(face)]
    letters = [c for i in range(1, rank + 1) for c in (i, -i)]
    if set(phi) != set(letters):
        raise SurfaceError("faces do not cover every directed letter")
    psi = {d: phi[-d] for d in letters}
    order = [letters[0]]
    seen = {letters[0]}
    cur = letters[0]
    for _ in range(2 * rank - 1):
        cur = psi[cur]
        if cur in seen:
            raise SurfaceError("ribbon order does not close into a single cycle")
        seen.add(cur)
        order.append(cur)
    # psi is sigma-prev, so reverse to get the forward cyclic order.
    return tuple(reversed(order))


@dataclass(frozen=True)
class SurfaceSpec:
    """Orientable genus-g surface with b >= 1 boundary circles."""

    genus: int
    boundary_count: int
    alphabet: Alphabet = field(compare=False)
    boundary_words: tuple[Word, ...] = field(compare=False)

    def __post_init__(self) -> None:
        if self.boundary_count < 1:
            raise SurfaceError("at least one boundary component required")
        rank = 2 * self.genus + self.boundary_count - 1
        if rank < 1:
            raise SurfaceError("the disk is not supported (trivial group)")
        if self.alphabet.rank != rank:
            raise SurfaceError(f"alphabet rank must be {rank}")
        std = standard_boundary_words(self.genus, self.boundary_count)
        if self.boundary_words != std:
            raise SurfaceError("boundary words must follow the standard presentation")
        for w in self.boundary_words:
            if w.is_identity:
                raise SurfaceError("boundary words must be nontrivial")

    @staticmethod
    def standard(genus: int, boundary_count: int) -> "SurfaceSpec":
        rank = 2 * genus + boundary_count - 1
        return SurfaceSpec(
            genus,
            boundary_count,
            Alphabet.of_rank(rank),
            standard_boundary_words(genus, boundary_count),
        )

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def ribbon_order(self) -> tuple[int, ...]:
        return _ribbon_order(self.genus, self.boundary_count, self.rank)

    def boundary_root_classes(self) -> list[CyclicWord]:
        return [CyclicWord.of(w) for w in self.boundary_words]


# ---------------------------------------------------------------------------
# Linked-pair self-intersection counting
# ---------------------------------------------------------------------------


def _cyclic_sign(order_pos: dict[int, int], x: int, y: int, z: int) -> int:
    n = len(order_pos)
    s = (order_pos[y] - order_pos[x]) % n
    t = (order_pos[z] - order_pos[x]) % n
    return 1 if s < t else -1


def _end_order(order_pos: dict[int, int], p, q, r) -> int:
    """Circular orientation of three distinct ends from a common basepoint."""
    i = 0
    while p[i] == q[i] == r[i]:
        i += 1
    a, b, c = p[i], q[i], r[i]
    if a != b and b != c and a != c:
        return _cyclic_sign(order_pos, a, b, c)
    if a == b:
        j = i
        while p[j] == q[j]:
            j += 1
        return _cyclic_sign(order_pos, p[j], q[j], -p[j - 1])
    if b == c:
        j = i
        while q[j] == r[j]:
            j += 1
        return _cyclic_sign(order_pos, -q[j - 1], q[j], r[j])
    j = i
    while p[j] == r[j]:
        j += 1
    return _cyclic_sign(order_pos, p[j], -p[j - 1], r[j])


def _is_power_of(s: Word, w: Word) -> bool:
    n = len(w)
    if len(s) % n:
        return False
    k = len(s) // n
    return s == w**k or s == w ** (-k)


def _same_crossing_class(w: Word, g: Word, h: Word) -> bool:
    """Whether g and h lie in the same <w>-double coset, up to inversion."""
    n = len(w)
    for cand in (h, h.inverse()):
        window = (len(g) + len(cand)) // n + 4
        for a in range(-window, window + 1):
            # w^a * cand * w^b == g  <=>  w^b == cand^-1 w^-a g
            rest = cand.inverse() * w ** (-a) * g
            if _is_power_of(rest, w):
                return True
    return False


def _linked_pairs(surface: SurfaceSpec, core: tuple[int, ...]) -> int:
    """Crossing count of a primitive cyclic word via linked rotation pairs.

    A pair of rotations is linked when the endpoint pairs of their lifted
    lines interleave in the circular order of ends.  Linked pairs name the
    same geometric crossing exactly when their relative translations agree
    up to the <w>-action on both sides and inversion, so the count is over
    crossing classes, not raw pairs.
    """
    n = len(core)
    if n == 0:
        return 0
    order = surface.ribbon_order()
    order_pos = {c: i for i, c in enumerate(order)}
    depth = 4 * n + 8
    plus = []
    minus = []
    for i in range(n):
        plus.append(tuple(core[(i + p) % n] for p in range(depth)))
        minus.append(tuple(-core[(i - 1 - p) % n] for p in range(depth)))
    cmp_len = 2 * n + 2

    def same_end(x, y) -> bool:
        return x[:cmp_len] == y[:cmp_len]

    w = Word(core)
    classes: list[Word] = []
    for i in range(n):
        for j in range(i + 1, n):
            ends_i = (plus[i], minus[i])
            ends_j = (plus[j], minus[j])
            if any(same_end(x, y) for x in ends_i for y in ends_j):
                continue
            o1 = _end_order(order_pos, plus[i], plus[j], minus[i])
            o2 = _end_order(order_pos, plus[i], minus[j], minus[i])
            if o1 == o2:
                continue
            g = Word(core[:i]) * Word(core[:j]).inverse()
            if not any(_same_crossing_class(w, g, rep) for rep in classes):
                classes.append(g)
    return len(classes)


def self_intersection(surface: SurfaceSpec, w: CyclicWord) -> int:
    """Minimal number of transverse self-intersections of the class of w."""
    if w.is_identity:
        raise ValueError("the trivial class has no curve representative")
    surface.alphabet.check_codes(w.codes)
    root, k = w.primitive_root()
    base = _linked_pairs(surface, root.codes)
    return k * k * base + (k - 1)


# ---------------------------------------------------------------------------
# QH exponent candidates (boundary-twisting automorphism search)
# ---------------------------------------------------------------------------


def _boundary_parallel_data(
    surface: SurfaceSpec, w: Word
) -> Optional[tuple[int, CyclicWord]]:
    """(boundary index, root class) when w is conjugate to a boundary power."""
    if w.is_identity:
        return None
    cls = CyclicWord.of(w)
    root, _ = cls.primitive_root()
    for idx, beta in enumerate(surface.boundary_words):
        beta_cls = CyclicWord.of(beta)
        if root == beta_cls or root == beta_cls.inverse_class():
            return idx, root
    return None


@dataclass(frozen=True)
class QHExponentQuery:
    surface: SurfaceSpec
    u: Word
    v: Word
    c: Word
    d: Word

    def __post_init__(self) -> None:
        for w in (self.u, self.v, self.c, self.d):
            self.surface.alphabet.check_codes(w.codes)
        dc = _boundary_parallel_data(self.surface, self.c)
        dd = _boundary_parallel_data(self.surface, self.d)
        if dc is None or dd is None:
            raise SurfaceError("c and d must be conjugates of powers of boundary words")
        # the two cyclic subgroups must be distinct (they may be conjugate,
        # e.g. two peripheral conjugates on a one-boundary surface)
        root_c, _ = self.c.primitive_root()
        root_d, _ = self.d.primitive_root()
        if root_c == root_d or root_c == root_d.inverse():
            raise SurfaceError("c and d must generate distinct cyclic subgroups")


def boundary_preserving_generators(surface: SurfaceSpec) -> list[Automorphism]:
    """Generators of the subgroup of automorphisms fixing every boundary
    class (with orientation).

    For the punctured torus this is the inner automorphisms together with
    the two standard twists a -> ab and b -> ba (a lift of SL(2, Z)); for
    the thrice-punctured sphere and the annulus it is the inner
    automorphisms alone (any automorphism fixing all three peripheral
    classes is inner).  Other surfaces are not built in.
    """
    alphabet = surface.alphabet
    gens: list[Automorphism] = []
    for i in range(alphabet.rank):
        for sign in (1, -1):
            gens.append(inner_automorphism(alphabet, Word((sign * (i + 1),))))
    key = (surface.genus, surface.boundary_count)
    if key == (1, 1):
        a, b = Word((1,)), Word((2,))
        twist_a = Automorphism(
            Endomorphism(alphabet, (a * b, b)),
            Endomorphism(alphabet, (a * b.inverse(), b)),
        )
        twist_b = Automorphism(
            Endomorphism(alphabet, (a, b * a)),
            Endomorphism(alphabet, (a, b * a.inverse())),
        )
        gens.extend([twist_a, twist_a.inverted(), twist_b, twist_b.inverted()])
    elif key not in ((0, 3), (0, 2)):
        raise SurfaceError(
            f"no built-in boundary-preserving generators for genus {key[0]}, "
            f"boundary {key[1]}"
        )
    for g in gens:
        for beta in surface.boundary_words:
            if CyclicWord.of(g(beta)) != CyclicWord.of(beta):
                raise SurfaceError("generator does not preserve a boundary class")
    return gens


def _word_orbit_search(
    alphabet: Alphabet,
    gens: Sequence[Automorphism],
    start: tuple[Word, ...],
    goal: tuple[Word, ...],
    slack: int,
    max_states: int,
) -> Optional[Automorphism]:
    """BFS over exact word-tuple states; returns the composed map on success."""
    cap = max(sum(len(w) for w in start), sum(len(w) for w in goal)) + slack
    if start == goal:
        return Automorphism.identity(alphabet)
    seen: dict[tuple, tuple] = {start: None}
    frontier = [start]
    while frontier:
        nxt: list[tuple[Word, ...]] = []
        for state in frontier:
            for g in gens:
                img = tuple(g(w) for w in state)
                if sum(len(w) for w in img) > cap or img in seen:
                    continue
                seen[img] = (state, g)
                if img == goal:
                    auto = Automorphism.identity(alphabet)
                    cur = img
                    steps = []
                    while seen[cur] is not None:
                        prev, step = seen[cur]
                        steps.append(step)
                        cur = prev
                    for step in reversed(steps):
                        auto = step.compose(auto)
                    return auto
                if len(seen) >= max_states:
                    return None
                nxt.append(img)
        frontier = nxt
    return None


def _exponent_tuple_instances(
    q: QHExponentQuery, us: Sequence[Word], vs: Sequence[Word], ms, ns
) -> tuple[TupleInstance, TupleInstance]:
    alphabet = q.surface.alphabet
    coords_u: list[Coordinate] = []
    coords_v: list[Coordinate] = []
    group = 0
    for u_i, v_i, m, n in zip(us, vs, ms, ns):
        shifted = (q.d ** (-m)) * u_i * (q.c ** (-n))
        coords_u.append(Coordinate(EXACT, shifted, group))
        coords_v.append(Coordinate(EXACT, v_i, group))
        group += 1
    for fixed in (q.c, q.d, *q.surface.boundary_words):
        coords_u.append(Coordinate(CYCLIC, fixed, group))
        coords_v.append(Coordinate(CYCLIC, fixed, group))
        group += 1
    return (
        TupleInstance(alphabet, tuple(coords_u)),
        TupleInstance(alphabet, tuple(coords_v)),
    )


def _twist_conjugators(
    q: QHExponentQuery, alpha: Automorphism
) -> Optional[tuple[Word, Word]]:
    """delta, gamma with alpha(d) = d^delta and alpha(c) = c^gamma."""
    sol_d = transporter(q.d, alpha(q.d))
    sol_c = transporter(q.c, alpha(q.c))
    if sol_d is None or sol_c is None:
        return None
    return sol_d[0], sol_c[0]


def exponent_bound(q: QHExponentQuery) -> int:
    """Conservative search box: si(v) + |u| + |v| + 2."""
    return self_intersection(q.surface, CyclicWord.of(q.v)) + len(q.u) + len(q.v) + 2


def _decide_exponent_point(
    q: QHExponentQuery,
    us: Sequence[Word],
    vs: Sequence[Word],
    ms: Sequence[int],
    ns: Sequence[int],
    slack: int,
    max_states: int,
) -> Optional[Automorphism]:
    """A boundary-preserving automorphism with alpha(d^-m u c^-n) = v
    coordinate-wise, or None.

    The cyclic constraints on c, d and the boundary words hold for every
    element of the boundary-preserving subgroup, so only the exact word
    conditions are searched.
    """
    gens = boundary_preserving_generators(q.surface)
    start = tuple(
        (q.d ** (-m)) * u_i * (q.c ** (-n)) for u_i, m, n in zip(us, ms, ns)
    )
    alpha = _word_orbit_search(
        q.surface.alphabet, gens, start, tuple(vs), slack, max_states
    )
    if alpha is None:
        return None
    conj = _twist_conjugators(q, alpha)
    assert conj is not None, "internal: witness does not preserve c, d classes"
    delta, gamma = conj
    for u_i, v_i, m, n in zip(us, vs, ms, ns):
        lhs = alpha(u_i)
        rhs = (q.d ** m).conjugate(delta) * v_i * (q.c ** n).conjugate(gamma)
        assert lhs == rhs, "internal: exponent witness identity failed"
    return alpha


def qh_exponent_candidates(
    q: QHExponentQuery,
    bound: Optional[int] = None,
    slack: int = 8,
    max_states: int = 120_000,
) -> list[tuple[int, int, Automorphism]]:
    """All (m, n) in the box admitting a boundary-preserving automorphism
    with alpha(u) = d^(m delta) v c^(n gamma), alpha(c) = c^gamma,
    alpha(d) = d^delta; each candidate carries a verified witness.

    Points where the inner search exhausts its budget are omitted; every
    returned entry is verified exactly.
    """
    B = exponent_bound(q) if bound is None else bound
    si_v = self_intersection(q.surface, CyclicWord.of(q.v))
    results: list[tuple[int, int, Automorphism]] = []
    for m in range(-B, B + 1):
        for n in range(-B, B + 1):
            shifted = (q.d ** (-m)) * q.u * (q.c ** (-n))
            if shifted.is_identity != q.v.is_identity:
                continue
            if not shifted.is_identity and (
                self_intersection(q.surface, CyclicWord.of(shifted)) != si_v
            ):
                continue
            alpha = _decide_exponent_point(q, [q.u], [q.v], [m], [n], slack, max_states)
            if alpha is not None:
                results.append((m, n, alpha))
    return results


def qh_exponent_candidates_multi(
    q: QHExponentQuery,
    us: Sequence[Word],
    vs: Sequence[Word],
    bound: Optional[int] = None,
    slack: int = 8,
    max_states: int = 120_000,
) -> list[tuple[tuple[int, ...], tuple[int, ...], Automorphism]]:
    """Simultaneous version: one automorphism for all coordinates at once."""
    if len(us) != len(vs):
        raise ValueError("tuple length mismatch")
    if not us:
        return []
    per_coordinate: list[list[tuple[int, int]]] = []
    for u_i, v_i in zip(us, vs):
        qi = QHExponentQuery(q.surface, u_i, v_i, q.c, q.d)
        cands = qh_exponent_candidates(qi, bound=bound, slack=slack,
                                       max_states=max_states)
        per_coordinate.append([(m, n) for m, n, _ in cands])
    results = []
    for combo in itertools.product(*per_coordinate):
        ms = tuple(m for m, _ in combo)
        ns = tuple(n for _, n in combo)
        alpha = _decide_exponent_point(q, us, vs, ms, ns, slack, max_states)
        if alpha is not None:
            results.append((ms, ns, alpha))
    return results
