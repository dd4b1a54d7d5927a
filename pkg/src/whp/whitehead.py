"""Whitehead's algorithm for free groups.

Elementary (Whitehead) automorphisms come in two kinds: signed permutations
of the generators (type I) and multiplier/cut-set maps (type II).  Peak
reduction lets us minimize tuples of conjugacy classes greedily and then
decide orbit equivalence by searching the finite graph of minimal tuples
connected by length-preserving elementary moves.

Exact-word coordinates and shared-conjugator coordinate groups are handled
by a bounded search on top of the complete cyclic decision; exhausting the
bound yields an explicit "inconclusive" outcome, never a false negative.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .words import (
    Alphabet,
    AlphabetError,
    Automorphism,
    CyclicWord,
    Endomorphism,
    EPSILON,
    Word,
    cyclic_reduce,
    free_reduce_codes,
    least_rotation,
    transporter,
)

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# Elementary automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeI:
    """Signed permutation: generator i+1 maps to the letter images[i]."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(abs(c) for c in self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a signed permutation")


@dataclass(frozen=True)
class TypeII:
    """Multiplier/cut-set map (a, A) with a in A and a^-1 not in A.

    Letters x outside {a, a^-1} map to x*a when x in A only, to a^-1*x when
    x^-1 in A only, to a^-1*x*a when both are, and stay fixed otherwise;
    a itself is fixed.
    """

    multiplier: int
    cut: frozenset[int]

    def __post_init__(self) -> None:
        if self.multiplier not in self.cut or -self.multiplier in self.cut:
            raise ValueError("cut set must contain the multiplier and not its inverse")


@dataclass(frozen=True)
class WhiteheadAuto:
    kind: Union[TypeI, TypeII]

    def letter_image(self, code: int) -> tuple[int, ...]:
        k = self.kind
        if isinstance(k, TypeI):
            img = k.images[abs(code) - 1]
            return (img,) if code > 0 else (-img,)
        a = k.multiplier
        if code == a or code == -a:
            return (code,)
        left = -code in k.cut
        right = code in k.cut
        out: list[int] = []
        if left:
            out.append(-a)
        out.append(code)
        if right:
            out.append(a)
        return tuple(out)

    def table(self, rank: int) -> dict[int, tuple[int, ...]]:
        return _auto_table(self, rank)

    def inverse_move(self) -> "WhiteheadAuto":
        k = self.kind
        if isinstance(k, TypeI):
            inv = [0] * len(k.images)
            for i, img in enumerate(k.images):
                inv[abs(img) - 1] = (i + 1) if img > 0 else -(i + 1)
            return WhiteheadAuto(TypeI(tuple(inv)))
        a = k.multiplier
        return WhiteheadAuto(TypeII(-a, frozenset(k.cut - {a}) | {-a}))

    def to_endomorphism(self, alphabet: Alphabet) -> Endomorphism:
        t = self.table(alphabet.rank)
        return Endomorphism(alphabet, tuple(Word(t[i + 1]) for i in range(alphabet.rank)))

    def to_automorphism(self, alphabet: Alphabet) -> Automorphism:
        return Automorphism(
            self.to_endomorphism(alphabet),
            self.inverse_move().to_endomorphism(alphabet),
        )

    @property
    def is_identity(self) -> bool:
        k = self.kind
        if isinstance(k, TypeI):
            return all(img == i + 1 for i, img in enumerate(k.images))
        return len(k.cut) == 1


@lru_cache(maxsize=None)
def _auto_table(wa: WhiteheadAuto, rank: int) -> dict[int, tuple[int, ...]]:
    t: dict[int, tuple[int, ...]] = {}
    for i in range(1, rank + 1):
        t[i] = wa.letter_image(i)
        t[-i] = wa.letter_image(-i)
    return t


def _letters_in_order(rank: int) -> list[int]:
    out: list[int] = []
    for i in range(1, rank + 1):
        out.extend((i, -i))
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(rank: int) -> tuple[WhiteheadAuto, ...]:
    autos: list[WhiteheadAuto] = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            autos.append(WhiteheadAuto(TypeI(tuple(p * s for p, s in zip(perm, signs)))))
    for a in _letters_in_order(rank):
        rest = [x for x in _letters_in_order(rank) if x != a and x != -a]
        for mask in range(1 << len(rest)):
            cut = {a}
            for bit, x in enumerate(rest):
                if mask >> bit & 1:
                    cut.add(x)
            autos.append(WhiteheadAuto(TypeII(a, frozenset(cut))))
    return tuple(autos)


def enumerate_whitehead_autos(alphabet: Alphabet) -> list[WhiteheadAuto]:
    """All type-I signed permutations, then all 2n*2^(2n-2) type-II moves."""
    return list(_enumerate_cached(alphabet.rank))


# ---------------------------------------------------------------------------
# Tuple instances
# ---------------------------------------------------------------------------

EXACT = "exact"
CYCLIC = "cyclic"


@dataclass(frozen=True)
class Coordinate:
    kind: str
    word: Word
    group: int

    def __post_init__(self) -> None:
        if self.kind not in (EXACT, CYCLIC):
            raise ValueError(f"unknown coordinate kind {self.kind!r}")


class ShapeMismatch(ValueError):
    """Source and target tuples have different tags or grouping shapes."""


@dataclass(frozen=True)
class TupleInstance:
    alphabet: Alphabet
    coords: tuple[Coordinate, ...]

    def __post_init__(self) -> None:
        groups: dict[int, list[int]] = {}
        for j, c in enumerate(self.coords):
            self.alphabet.check_codes(c.word.codes)
            groups.setdefault(c.group, []).append(j)
        for members in groups.values():
            kinds = {self.coords[j].kind for j in members}
            if EXACT in kinds and len(members) > 1:
                raise ValueError("exact coordinates must form singleton groups")

    @staticmethod
    def cyclic(alphabet: Alphabet, words: Sequence[Word]) -> "TupleInstance":
        return TupleInstance(
            alphabet, tuple(Coordinate(CYCLIC, w, j) for j, w in enumerate(words))
        )

    @staticmethod
    def exact(alphabet: Alphabet, words: Sequence[Word]) -> "TupleInstance":
        return TupleInstance(
            alphabet, tuple(Coordinate(EXACT, w, j) for j, w in enumerate(words))
        )

    def groups(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for j, c in enumerate(self.coords):
            out.setdefault(c.group, []).append(j)
        return {g: tuple(m) for g, m in out.items()}

    def group_sizes(self) -> dict[int, int]:
        return {g: len(m) for g, m in self.groups().items()}

    def shape(self) -> tuple:
        blocks = tuple(sorted(tuple(m) for m in self.groups().values()))
        return (tuple(c.kind for c in self.coords), blocks)

    def words(self) -> tuple[Word, ...]:
        return tuple(c.word for c in self.coords)


def total_length(t: TupleInstance) -> int:
    """Sum of word lengths; cyclic coordinates count their cyclic length."""
    out = 0
    for c in t.coords:
        out += len(c.word) if c.kind == EXACT else len(CyclicWord.of(c.word))
    return out


def _state_of(t: TupleInstance) -> tuple:
    """Dedup key: exact/grouped words verbatim, singleton-cyclic as classes."""
    sizes = t.group_sizes()
    key = []
    for c in t.coords:
        if c.kind == CYCLIC and sizes[c.group] == 1:
            key.append(("c",) + cyclic_reduce(c.word)[0].codes)
        else:
            key.append(("e",) + c.word.codes)
    return tuple(key)


def _apply_move(t: TupleInstance, wa: WhiteheadAuto) -> TupleInstance:
    table = wa.table(t.alphabet.rank)
    sizes = t.group_sizes()
    new = []
    for c in t.coords:
        codes = free_reduce_codes(
            tuple(itertools.chain.from_iterable(table[x] for x in c.word.codes))
        )
        word = Word(codes)
        if c.kind == CYCLIC and sizes[c.group] == 1:
            word = CyclicWord.of(word).as_word()
        new.append(Coordinate(c.kind, word, c.group))
    return TupleInstance(t.alphabet, tuple(new))


def _apply_automorphism(t: TupleInstance, auto: Automorphism) -> TupleInstance:
    return TupleInstance(
        t.alphabet,
        tuple(Coordinate(c.kind, auto(c.word), c.group) for c in t.coords),
    )


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitWitness:
    """A verified certificate: steps, their composition, and conjugators."""

    steps: tuple[Union[WhiteheadAuto, Automorphism], ...]
    composed: Automorphism
    per_group_conjugators: tuple[tuple[int, Word], ...] = ()

    def conjugator_of(self, group: int) -> Word:
        for g, w in self.per_group_conjugators:
            if g == group:
                return w
        return EPSILON

    def verify(self, u: TupleInstance, v: TupleInstance) -> bool:
        if u.shape() != v.shape():
            return False
        sizes = u.group_sizes()
        for uj, vj in zip(u.coords, v.coords):
            img = self.composed(uj.word)
            if uj.kind == EXACT:
                if img != vj.word:
                    return False
            elif sizes[uj.group] == 1:
                if cyclic_reduce(img)[0] != cyclic_reduce(vj.word)[0]:
                    return False
            else:
                h = self.conjugator_of(uj.group)
                if img.conjugate(h) != vj.word:
                    return False
        return True


@dataclass
class EquivalenceResult:
    status: str
    witness: Optional[OrbitWitness] = None
    bound: Optional[int] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.status == EQUIVALENT


def _compose_steps(
    alphabet: Alphabet, steps: Sequence[Union[WhiteheadAuto, Automorphism]]
) -> Automorphism:
    auto = Automorphism.identity(alphabet)
    for step in steps:
        step_auto = step.to_automorphism(alphabet) if isinstance(step, WhiteheadAuto) else step
        auto = step_auto.compose(auto)
    return auto


# ---------------------------------------------------------------------------
# Minimization and equivalence
# ---------------------------------------------------------------------------


def minimize(t: TupleInstance) -> tuple[TupleInstance, OrbitWitness]:
    """Greedy peak reduction: apply strictly length-decreasing moves.

    Ties are broken by enumeration order, so the result is deterministic.
    The witness re-applied to the input reproduces the output exactly.
    """
    autos = enumerate_whitehead_autos(t.alphabet)
    current = _canonicalize(t)
    steps: list[WhiteheadAuto] = []
    length = total_length(current)
    improved = True
    while improved and length > 0:
        improved = False
        for wa in autos:
            cand = _apply_move(current, wa)
            cand_len = total_length(cand)
            if cand_len < length:
                current, length = cand, cand_len
                steps.append(wa)
                improved = True
                break
    witness = OrbitWitness(tuple(steps), _compose_steps(t.alphabet, steps))
    return current, witness


def _canonicalize(t: TupleInstance) -> TupleInstance:
    sizes = t.group_sizes()
    coords = []
    for c in t.coords:
        word = c.word
        if c.kind == CYCLIC and sizes[c.group] == 1:
            word = CyclicWord.of(word).as_word()
        coords.append(Coordinate(c.kind, word, c.group))
    return TupleInstance(t.alphabet, tuple(coords))


def _is_all_cyclic_singletons(t: TupleInstance) -> bool:
    sizes = t.group_sizes()
    return all(c.kind == CYCLIC and sizes[c.group] == 1 for c in t.coords)


def _level_bfs(
    start: TupleInstance, goal_state: tuple, max_states: int
) -> tuple[Optional[list[WhiteheadAuto]], bool]:
    """Search the equal-length move graph for the goal state.

    Returns (path, truncated): a move list when found, plus whether the
    state cap cut the search short (only relevant for negative answers).
    """
    autos = enumerate_whitehead_autos(start.alphabet)
    length = total_length(start)
    start_state = _state_of(start)
    if start_state == goal_state:
        return [], False
    parents: dict[tuple, tuple[tuple, WhiteheadAuto]] = {start_state: None}
    frontier = deque([start])
    truncated = False
    while frontier:
        node = frontier.popleft()
        node_state = _state_of(node)
        for wa in autos:
            cand = _apply_move(node, wa)
            if total_length(cand) != length:
                continue
            state = _state_of(cand)
            if state in parents:
                continue
            parents[state] = (node_state, wa)
            if state == goal_state:
                path = []
                cur = state
                while parents[cur] is not None:
                    prev, move = parents[cur]
                    path.append(move)
                    cur = prev
                path.reverse()
                return path, truncated
            if len(parents) >= max_states:
                truncated = True
                continue
            frontier.append(cand)
    return None, truncated


def equivalent(
    u: TupleInstance,
    v: TupleInstance,
    bound: Optional[int] = None,
    max_states: int = 500_000,
) -> EquivalenceResult:
    """Decide whether some automorphism carries u to v (up to the tags).

    All-cyclic instances with singleton groups are decided completely via
    peak reduction plus a search through minimal tuples.  Exact coordinates
    and shared-conjugator groups get a sound bounded search; running out of
    budget reports "inconclusive" with the bound used.
    """
    if u.alphabet != v.alphabet:
        raise ShapeMismatch("alphabet mismatch")
    if u.shape() != v.shape():
        raise ShapeMismatch("tuple tags or grouping shapes differ")
    if bound is None:
        bound = total_length(u) + total_length(v) + 4

    if _is_all_cyclic_singletons(u):
        return _equivalent_cyclic(u, v, max_states)
    return _equivalent_bounded(u, v, bound, max_states)


def _equivalent_cyclic(
    u: TupleInstance, v: TupleInstance, max_states: int
) -> EquivalenceResult:
    u_min, wit_u = minimize(u)
    v_min, wit_v = minimize(v)
    if total_length(u_min) != total_length(v_min):
        return EquivalenceResult(INEQUIVALENT)
    path, truncated = _level_bfs(u_min, _state_of(v_min), max_states)
    if path is None:
        if truncated:
            return EquivalenceResult(INCONCLUSIVE, note="minimal-level state cap hit")
        return EquivalenceResult(INEQUIVALENT)
    alphabet = u.alphabet
    steps = (
        wit_u.steps
        + tuple(path)
        + tuple(wa.inverse_move() for wa in reversed(wit_v.steps))
    )
    composed = _compose_steps(alphabet, steps)
    witness = OrbitWitness(steps, composed)
    assert witness.verify(u, v), "internal: cyclic witness failed verification"
    return EquivalenceResult(EQUIVALENT, witness)


def _relaxed(t: TupleInstance) -> TupleInstance:
    return TupleInstance(
        t.alphabet,
        tuple(Coordinate(CYCLIC, c.word, j) for j, c in enumerate(t.coords)),
    )


def _solve_group_conjugator(
    images: Sequence[Word], targets: Sequence[Word], window: int
) -> Optional[Word]:
    """One h with images[j]^h == targets[j] for all j, or None."""
    pivot = None
    for j, img in enumerate(images):
        if not img.is_identity:
            pivot = j
            break
    if pivot is None:
        return EPSILON if all(t.is_identity for t in targets) else None
    sol = transporter(images[pivot], targets[pivot])
    if sol is None:
        return None
    g0, z = sol
    if z.is_identity:
        candidates: Iterable[Word] = (g0,)
    else:
        # solution set is the left coset <z> * g0 with z the root of the pivot
        candidates = (z**m * g0 for m in range(-window, window + 1))
    for h in candidates:
        if all(img.conjugate(h) == tgt for img, tgt in zip(images, targets)):
            return h
    return None


def _goal_check(
    state: TupleInstance, v: TupleInstance, window: int
) -> Optional[tuple[tuple[int, Word], ...]]:
    sizes = v.group_sizes()
    conjugators: list[tuple[int, Word]] = []
    for group, members in v.groups().items():
        kinds = {v.coords[j].kind for j in members}
        if kinds == {EXACT}:
            if any(state.coords[j].word != v.coords[j].word for j in members):
                return None
        elif len(members) == 1 and sizes[group] == 1:
            j = members[0]
            if (
                cyclic_reduce(state.coords[j].word)[0]
                != cyclic_reduce(v.coords[j].word)[0]
            ):
                return None
        else:
            h = _solve_group_conjugator(
                [state.coords[j].word for j in members],
                [v.coords[j].word for j in members],
                window,
            )
            if h is None:
                return None
            conjugators.append((group, h))
    return tuple(conjugators)


def _equivalent_bounded(
    u: TupleInstance, v: TupleInstance, bound: int, max_states: int
) -> EquivalenceResult:
    relax = _equivalent_cyclic(_relaxed(u), _relaxed(v), max_states)
    if relax.status == INEQUIVALENT:
        return EquivalenceResult(INEQUIVALENT, note="cyclic relaxation fails")
    if relax.status == INCONCLUSIVE:
        return EquivalenceResult(INCONCLUSIVE, bound=bound, note=relax.note)

    autos = enumerate_whitehead_autos(u.alphabet)
    start = _canonicalize(u)
    cap = bound
    window = bound
    start_key = _state_of(start)
    seen: dict[tuple, tuple] = {start_key: None}
    frontier = deque([(start, start_key)])
    pruned = False

    conj = _goal_check(start, v, window)
    if conj is not None:
        witness = OrbitWitness((), Automorphism.identity(u.alphabet), conj)
        if witness.verify(u, v):
            return EquivalenceResult(EQUIVALENT, witness, bound=bound)

    while frontier:
        node, node_key = frontier.popleft()
        for wa in autos:
            cand = _apply_move(node, wa)
            if total_length(cand) > cap:
                pruned = True
                continue
            key = _state_of(cand)
            if key in seen:
                continue
            seen[key] = (node_key, wa)
            conj = _goal_check(cand, v, window)
            if conj is not None:
                steps: list[WhiteheadAuto] = []
                cur = key
                while seen[cur] is not None:
                    prev, move = seen[cur]
                    steps.append(move)
                    cur = prev
                steps.reverse()
                composed = _compose_steps(u.alphabet, steps)
                witness = OrbitWitness(tuple(steps), composed, conj)
                if witness.verify(u, v):
                    return EquivalenceResult(EQUIVALENT, witness, bound=bound)
                continue
            if len(seen) >= max_states:
                pruned = True
                continue
            frontier.append((cand, key))

    if pruned:
        return EquivalenceResult(
            INCONCLUSIVE, bound=bound, note=f"exact search exhausted at bound {bound}"
        )
    return EquivalenceResult(INEQUIVALENT, bound=bound, note="orbit closed under bound")


# ---------------------------------------------------------------------------
# Basis verification (Nielsen reduction + Stallings folding)
# ---------------------------------------------------------------------------


def _abelianization_det(e: Endomorphism) -> int:
    n = e.alphabet.rank
    m = [[0] * n for _ in range(n)]
    for i, img in enumerate(e.images):
        for c in img.codes:
            m[i][abs(c) - 1] += 1 if c > 0 else -1
    return _int_det(m)


def _int_det(m: list[list[int]]) -> int:
    # Bareiss fraction-free elimination; exact over Z.
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _stallings_is_whole_group(words: Sequence[Word], rank: int) -> bool:
    """Fold the subgroup graph of <words>; whole group iff it folds to a rose."""
    # Vertices are ints; station[(v, c)] = w means an edge labeled c from v.
    parent: dict[int, int] = {0: 0}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> int:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
        return rx

    next_vertex = 1
    edges: list[tuple[int, int, int]] = []  # (from, to, positive label code)
    for w in words:
        cur = 0
        for idx, c in enumerate(w.codes):
            dst = 0 if idx == len(w.codes) - 1 else next_vertex
            if dst == next_vertex:
                parent[next_vertex] = next_vertex
                next_vertex += 1
            if c > 0:
                edges.append((cur, dst, c))
            else:
                edges.append((dst, cur, -c))
            cur = dst

    changed = True
    while changed:
        changed = False
        out_map: dict[tuple[int, int], int] = {}
        in_map: dict[tuple[int, int], int] = {}
        for src, dst, lab in edges:
            s, d = find(src), find(dst)
            if (s, lab) in out_map and find(out_map[(s, lab)]) != d:
                union(d, out_map[(s, lab)])
                changed = True
                break
            out_map[(s, lab)] = d
            if (d, lab) in in_map and find(in_map[(d, lab)]) != s:
                union(s, in_map[(d, lab)])
                changed = True
                break
            in_map[(d, lab)] = s
        if not changed:
            # also merge parallel duplicates
            dedup = {(find(s), find(d), lab) for s, d, lab in edges}
            edges = list(dedup)
    folded = {(find(s), find(d), lab) for s, d, lab in edges}
    base = find(0)
    if any(find(s) != base or find(d) != base for s, d, lab in folded):
        return False
    return {lab for _, _, lab in folded} == set(range(1, rank + 1))


def _nielsen_moves(n: int) -> list[tuple[int, int, str, int]]:
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for side in ("r", "l"):
                for sign in (1, -1):
                    out.append((i, j, side, sign))
    return out


def verify_basis(images: Endomorphism) -> Optional[Automorphism]:
    """Promote an endomorphism to an Automorphism if its images form a basis.

    Greedy Nielsen reduction with move tracking finds the inverse; a
    Stallings fold provides the independent yes/no and guards the greedy
    phase against stalls.
    """
    alphabet = images.alphabet
    n = alphabet.rank
    if abs(_abelianization_det(images)) != 1:
        return None
    if not _stallings_is_whole_group(images.images, n):
        return None

    # Nielsen reduction, tracking phi = phi_current o nu for each move nu.
    current = list(images.images)
    moves: list[tuple[int, int, str, int]] = []
    move_set = _nielsen_moves(n)

    def try_strict() -> bool:
        for mv in move_set:
            i, j, side, sign = mv
            other = current[j] if sign > 0 else current[j].inverse()
            cand = current[i] * other if side == "r" else other * current[i]
            if len(cand) < len(current[i]):
                current[i] = cand
                moves.append(mv)
                return True
        return False

    while try_strict():
        pass

    # Tie-breaking pass: allow length-preserving moves that lower a fixed
    # lexicographic weight, escaping plateaus without cycling.
    def weight() -> tuple:
        return tuple(sorted((len(w), w.codes) for w in current))

    improved = True
    while improved:
        improved = False
        base = weight()
        for mv in _nielsen_moves(n):
            i, j, side, sign = mv
            other = current[j] if sign > 0 else current[j].inverse()
            cand = current[i] * other if side == "r" else other * current[i]
            if len(cand) > len(current[i]):
                continue
            saved = current[i]
            current[i] = cand
            if (len(cand) < len(saved)) or weight() < base:
                moves.append(mv)
                improved = True
                break
            current[i] = saved
        if improved:
            while try_strict():
                pass

    if any(len(w) != 1 for w in current) or sorted(
        abs(w.codes[0]) for w in current
    ) != list(range(1, n + 1)):
        raise RuntimeError("basis confirmed by folding but Nielsen reduction stalled")

    # current = tau(gens) for a signed permutation tau; phi = tau o nu_k^-1 ... nu_1^-1
    tau = Endomorphism(alphabet, tuple(current))
    inverse = Endomorphism.identity(alphabet)
    for mv in moves:
        inverse = inverse.compose(_nielsen_endo(alphabet, mv))
    tau_inv = _signed_perm_inverse(alphabet, tau)
    inverse = inverse.compose(tau_inv)
    return Automorphism(images, inverse)


def _nielsen_endo(alphabet: Alphabet, mv: tuple[int, int, str, int]) -> Endomorphism:
    i, j, side, sign = mv
    gens = [Word((k + 1,)) for k in range(alphabet.rank)]
    other = gens[j] if sign > 0 else gens[j].inverse()
    gens[i] = gens[i] * other if side == "r" else other * gens[i]
    return Endomorphism(alphabet, tuple(gens))


def _signed_perm_inverse(alphabet: Alphabet, tau: Endomorphism) -> Endomorphism:
    inv = [Word() for _ in range(alphabet.rank)]
    for i, img in enumerate(tau.images):
        c = img.codes[0]
        inv[abs(c) - 1] = Word(((i + 1) if c > 0 else -(i + 1),))
    return Endomorphism(alphabet, tuple(inv))
