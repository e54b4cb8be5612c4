"""Bruhat order, interval posets, and the maximal-quotient splitting check.

Comparisons use the lifting recursion on the least left descent of the
larger element (which is the first letter of its canonical word).
Intervals are built by enumerating subwords of the top element's reduced
word with canonical-form dedup: scanning the word left to right and
closing under "keep or multiply" yields exactly the lower cone, because
the subword property makes every subword product a member of it.  Cones
are memoized per system and shared across prefixes.
"""

from __future__ import annotations

from .core import CoxeterSystem, InputError, PreconditionError


def bruhat_leq(sys: CoxeterSystem, u, v) -> bool:
    """Whether u <= v in Bruhat order (u, v canonical words)."""
    u = tuple(u)
    v = tuple(v)
    if len(u) > len(v):
        return False
    if u == v:
        return True
    cache = sys.caches.setdefault("leq", {})
    res = cache.get((u, v))
    if res is not None:
        return res
    uu, vv = u, v
    mask = None
    while True:
        if not uu:
            res = True
            break
        if len(uu) >= len(vv):
            res = uu == vv
            break
        s = vv[0]
        vv = vv[1:]
        if mask is None:
            mask = sys.descent_mask(uu, "left")
        if mask >> s & 1:
            uu = sys.multiply_gen(uu, s, "left")
            mask = None
    cache[(u, v)] = res
    return res


def cone(sys: CoxeterSystem, v) -> tuple:
    """The lower cone [e, v], sorted by (length, word).

    v must be a canonical word: the construction scans its letters and
    relies on every prefix being reduced.
    """
    v = tuple(v)
    cache = sys.caches.setdefault("cone", {})
    got = cache.get(v)
    if got is None:
        if not v:
            got = ((),)
        else:
            prev = cone(sys, v[:-1])
            s = v[-1]
            elems = set(prev)
            elems.update(sys.multiply_gen(z, s, "right") for z in prev)
            got = tuple(sorted(elems, key=lambda w: (len(w), w)))
        cache[v] = got
    return got


def cone_set(sys: CoxeterSystem, v) -> frozenset:
    cache = sys.caches.setdefault("cone_set", {})
    v = tuple(v)
    got = cache.get(v)
    if got is None:
        got = frozenset(cone(sys, v))
        cache[v] = got
    return got


def subword_leq_oracle(sys: CoxeterSystem, u, v) -> bool:
    """Decide u <= v by raw enumeration of all 2^l subwords of v.

    Deliberately brute force; kept as an independent cross-check of
    bruhat_leq and of the cone construction.
    """
    u = tuple(u)
    v = tuple(v)
    seen = set()
    for bits in range(1 << len(v)):
        sub = tuple(s for i, s in enumerate(v) if bits >> i & 1)
        seen.add(sys.canonicalize(sub)[0])
    return u in seen


class IntervalPoset:
    """A Bruhat interval under the induced order.

    ground is sorted by (length, word); ranks are lengths relative to the
    bottom; covers are index pairs (lower, upper); marked is the index
    set of the parabolic subset when one was requested, else None.
    """

    def __init__(self, system, bottom, top, J, ground, covers, marked):
        self.system = system
        self.bottom = bottom
        self.top = top
        self.J = J
        self.ground = tuple(ground)
        self.index = {z: i for i, z in enumerate(self.ground)}
        self.ranks = tuple(len(z) - len(bottom) for z in self.ground)
        self.covers = tuple(covers)
        self.marked = None if marked is None else frozenset(marked)
        self._up_bits = None
        self._adj = None
        self._invariants = None
        self._fingerprint = None

    @property
    def size(self) -> int:
        return len(self.ground)

    def is_marked(self, i: int) -> bool:
        return self.marked is None or i in self.marked

    def rank_sizes(self) -> tuple:
        top_rank = self.ranks[-1] if self.ground else 0
        sizes = [0] * (top_rank + 1)
        for r in self.ranks:
            sizes[r] += 1
        return tuple(sizes)

    def marked_rank_sizes(self) -> tuple:
        top_rank = self.ranks[-1] if self.ground else 0
        sizes = [0] * (top_rank + 1)
        for i, r in enumerate(self.ranks):
            if self.is_marked(i):
                sizes[r] += 1
        return tuple(sizes)

    def adjacency(self):
        """(down, up): lists of cover neighbors per element index."""
        if self._adj is None:
            down = [[] for _ in self.ground]
            up = [[] for _ in self.ground]
            for i, j in self.covers:
                up[i].append(j)
                down[j].append(i)
            self._adj = (down, up)
        return self._adj

    def up_bits(self) -> list[int]:
        """Per element, the bitmask of interval elements above or equal to it."""
        if self._up_bits is None:
            _, up = self.adjacency()
            bits = [0] * self.size
            order = sorted(range(self.size), key=lambda i: -self.ranks[i])
            for i in order:
                m = 1 << i
                for j in up[i]:
                    m |= bits[j]
                bits[i] = m
            self._up_bits = bits
        return self._up_bits

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up_bits()[i] >> j & 1)

    def element_invariants(self) -> tuple:
        """Per element: (rank, down degree, up degree, ideal size, filter
        size, marked flag).  Preserved by any marked poset isomorphism."""
        if self._invariants is None:
            down, up = self.adjacency()
            ups = self.up_bits()
            filt = [m.bit_count() for m in ups]
            ideal = [0] * self.size
            for m in ups:
                i = m
                while i:
                    low = i & -i
                    ideal[low.bit_length() - 1] += 1
                    i ^= low
            self._invariants = tuple(
                (
                    self.ranks[i],
                    len(down[i]),
                    len(up[i]),
                    ideal[i],
                    filt[i],
                    self.is_marked(i),
                )
                for i in range(self.size)
            )
        return self._invariants

    def fingerprint(self) -> tuple:
        """Isomorphism-invariant summary used to prune candidate pairs."""
        if self._fingerprint is None:
            self._fingerprint = (
                self.size,
                self.rank_sizes(),
                self.marked_rank_sizes(),
                len(self.covers),
                tuple(sorted(self.element_invariants())),
            )
        return self._fingerprint

    def __repr__(self):
        return (
            f"<IntervalPoset |{self.size}| "
            f"[{self.system.word_str(self.bottom) or 'e'}, "
            f"{self.system.word_str(self.top) or 'e'}]>"
        )


def _require_canonical(sys, w, name):
    w = tuple(w)
    if sys.canonicalize(w)[0] != w:
        raise InputError(f"{name} is not a canonical reduced word")
    return w


def _build_interval(sys, u, v, J, max_len):
    u = _require_canonical(sys, u, "u")
    v = _require_canonical(sys, v, "v")
    if len(v) > max_len:
        raise PreconditionError(
            f"top element has length {len(v)} > cutoff {max_len}"
        )
    if J is not None:
        J = sys.check_subset(J)
        for name, w in (("u", u), ("v", v)):
            if not sys.is_min_rep(w, J):
                raise PreconditionError(f"{name} is not in W^J")
    if not bruhat_leq(sys, u, v):
        raise PreconditionError("u is not <= v in Bruhat order")
    ground = [z for z in cone(sys, v) if bruhat_leq(sys, u, z)]
    by_rank: dict[int, list[int]] = {}
    for i, z in enumerate(ground):
        by_rank.setdefault(len(z) - len(u), []).append(i)
    covers = []
    for r in sorted(by_rank):
        uppers = by_rank.get(r + 1, ())
        for j in uppers:
            above = cone_set(sys, ground[j])
            for i in by_rank[r]:
                if ground[i] in above:
                    covers.append((i, j))
    covers.sort()
    marked = None
    if J is not None:
        marked = [i for i, z in enumerate(ground) if sys.is_min_rep(z, J)]
    return IntervalPoset(sys, u, v, J, ground, covers, marked)


def interval(sys: CoxeterSystem, u, v, max_len: int = 18) -> IntervalPoset:
    """The full Bruhat interval [u, v]."""
    return _build_interval(sys, u, v, None, max_len)


def parabolic_interval(sys: CoxeterSystem, u, v, J, max_len: int = 18) -> IntervalPoset:
    """The interval [u, v] with the quotient subset [u, v]^J marked.

    Endpoints must be minimal coset representatives for J.
    """
    return _build_interval(sys, u, v, sys.check_subset(J), max_len)


def deodhar_criterion(sys: CoxeterSystem, u, v) -> bool:
    """Compare u, v through all maximal-quotient projections.

    Equivalent to bruhat_leq(u, v): the Bruhat order is determined by its
    images in the maximal quotients.  Kept as an independent cross-check.
    """
    u = tuple(u)
    v = tuple(v)
    for s in sys.generators:
        J = frozenset(sys.generators) - {s}
        if not bruhat_leq(
            sys,
            sys.project_to_quotient(u, J, "right"),
            sys.project_to_quotient(v, J, "right"),
        ):
            return False
    return True
