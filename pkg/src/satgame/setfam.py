"""k-subsets of [n], set families and the covering-number machinery.

Sets are stored as sorted tuples together with an integer bit mask
(bit ``e`` is set iff ``e`` is an element), so that intersection tests are a
single ``&``.  Every stream produced here is in lexicographic order.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError, StateError


def _check_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParameterError(f"{name} must be an integer, got {value!r}")
    return value


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Params:
    """Universe size ``n`` and set size ``k``."""

    n: int
    k: int

    def __post_init__(self):
        _check_int("n", self.n)
        _check_int("k", self.k)
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def board_size(self) -> int:
        return math.comb(self.n, self.k)

    def kset(self, elements: Iterable[int]) -> "KSet":
        s = KSet(tuple(sorted(elements)), self.n)
        if len(s) != self.k:
            raise ParameterError(f"expected a {self.k}-set, got {s}")
        return s


@dataclass(frozen=True, order=True, slots=True)
class KSet:
    """A set of integers from ``1..n`` in canonical sorted form."""

    elements: tuple[int, ...]
    n: int = field(compare=True)
    mask: int = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        els = tuple(self.elements)
        for e in els:
            if isinstance(e, bool) or not isinstance(e, int):
                raise ParameterError(f"set elements must be integers, got {e!r}")
            if not 1 <= e <= self.n:
                raise ParameterError(f"element {e} outside [1, {self.n}]")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ParameterError(f"elements must be strictly increasing: {els}")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "mask", to_mask(els))

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "KSet":
        return cls(mask_elements(mask), n)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def intersects(a: KSet, b: KSet) -> bool:
    if a.n != b.n:
        raise ParameterError(f"universe mismatch: n={a.n} vs n={b.n}")
    return bool(a.mask & b.mask)


@dataclass(frozen=True)
class SetFamily:
    """Ordered, duplicate-free sequence of k-sets over one universe.

    Order is insertion order, so a family doubles as a game history.  Being
    intersecting is *not* enforced here; see :meth:`is_intersecting`.
    """

    params: Params
    members: tuple[KSet, ...] = ()
    _masks: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        members = tuple(self.members)
        p = self.params
        for s in members:
            if not isinstance(s, KSet):
                raise ParameterError(f"family members must be KSet, got {s!r}")
            if s.n != p.n or len(s) != p.k:
                raise ParameterError(f"{s} is not a {p.k}-subset of [{p.n}]")
        masks = frozenset(s.mask for s in members)
        if len(masks) != len(members):
            raise ParameterError("duplicate member in family")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "_masks", masks)

    @classmethod
    def of(cls, params: Params, sets: Iterable[Iterable[int]] = ()) -> "SetFamily":
        return cls(params, tuple(params.kset(s) for s in sets))

    def add(self, s: KSet) -> "SetFamily":
        return SetFamily(self.params, self.members + (s,))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[KSet]:
        return iter(self.members)

    def __contains__(self, s) -> bool:
        return isinstance(s, KSet) and s.mask in self._masks

    @property
    def masks(self) -> list[int]:
        return [s.mask for s in self.members]

    def is_intersecting(self) -> bool:
        ms = self.masks
        return all(a & b for a, b in itertools.combinations(ms, 2))

    def first_disjoint(self, s: KSet) -> KSet | None:
        """Return the first member disjoint from ``s`` (None if there is none)."""
        for f in self.members:
            if not f.mask & s.mask:
                return f
        return None

    def as_lists(self) -> list[list[int]]:
        return [list(s.elements) for s in self.members]


# --------------------------------------------------------------------------
# board enumeration and legality


def gen_ksubsets(p: Params) -> Iterator[KSet]:
    if not isinstance(p, Params):
        raise ParameterError("gen_ksubsets expects Params")
    for combo in itertools.combinations(range(1, p.n + 1), p.k):
        yield KSet(combo, p.n)


def _require_intersecting(fam: SetFamily) -> None:
    if not fam.is_intersecting():
        raise StateError("claimed family is not intersecting")


def legal_moves(claimed: SetFamily) -> Iterator[KSet]:
    """All unclaimed k-sets meeting every member, by enumeration of the board."""
    _require_intersecting(claimed)
    ms = claimed.masks
    for s in gen_ksubsets(claimed.params):
        m = s.mask
        if s in claimed:
            continue
        if all(m & f for f in ms):
            yield s


def can_cover(members: Sequence[int], t: int, allowed: int) -> bool:
    """Is there a set of at most ``t`` points from ``allowed`` meeting every mask?"""
    if not members:
        return True
    if t <= 0:
        return False
    best = None
    best_count = None
    for m in members:
        c = (m & allowed).bit_count()
        if best_count is None or c < best_count:
            best, best_count = m, c
            if c <= 1:
                break
    options = best & allowed
    if not options:
        return False
    while options:
        low = options & -options
        options ^= low
        rest = [m for m in members if not m & low]
        if can_cover(rest, t - 1, allowed):
            return True
        # covers through this point are exhausted
        allowed &= ~low
    return False


def first_legal_move(
    claimed: SetFamily,
    order: Sequence[int] | None = None,
    containing: Iterable[int] = (),
) -> KSet | None:
    """Smallest legal move with respect to an element ordering.

    With the default ordering ``1..n`` this is the lexicographically smallest
    unclaimed k-set meeting every member of ``claimed``.  Any other ordering
    gives the smallest legal move after relabelling, which is how the random
    baseline samples moves on boards too large to enumerate.  Points listed in
    ``containing`` are forced into the move.  Works at any ``n``: the search
    only branches while the remaining members are still coverable.
    """
    p = claimed.params
    n, k = p.n, p.k
    order = list(range(1, n + 1)) if order is None else list(order)
    forced = to_mask(containing)
    if forced.bit_count() > k:
        return None
    ms = [m for m in claimed.masks if not m & forced]
    taken = claimed._masks
    # suffix[i]: mask of order[i:]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    suffix = [s & ~forced for s in suffix]

    def dfs(idx: int, chosen: int, need: int, uncovered: list[int]) -> int | None:
        if need == 0:
            if not uncovered and chosen not in taken:
                return chosen
            return None
        while idx < n and (forced >> order[idx]) & 1:
            idx += 1
        allowed = suffix[idx]
        if allowed.bit_count() < need:
            return None
        if not can_cover(uncovered, need, allowed):
            return None
        bit = 1 << order[idx]
        found = dfs(idx + 1, chosen | bit, need - 1, [u for u in uncovered if not u & bit])
        if found is not None:
            return found
        return dfs(idx + 1, chosen, need, uncovered)

    found = dfs(0, forced, k - forced.bit_count(), ms)
    return None if found is None else KSet.from_mask(found, n)


def is_maximal_intersecting(fam: SetFamily) -> bool:
    _require_intersecting(fam)
    return first_legal_move(fam) is None


def complete_to_maximal(fam: SetFamily) -> SetFamily:
    """Greedily add the lexicographically smallest legal move until none is left."""
    _require_intersecting(fam)
    while True:
        s = first_legal_move(fam)
        if s is None:
            return fam
        fam = fam.add(s)


# --------------------------------------------------------------------------
# covering number


def _lex_min_cover(members: list[int], t: int, candidates: list[int]) -> list[int]:
    if not members:
        return []
    for i, e in enumerate(candidates):
        bit = 1 << e
        if not any(m & bit for m in members):
            continue
        rest = [m for m in members if not m & bit]
        later = candidates[i + 1:]
        if can_cover(rest, t - 1, to_mask(later)):
            return [e] + _lex_min_cover(rest, t - 1, later)
    raise AssertionError("no cover of the announced size")  # unreachable


def min_cover_of_masks(members: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Covering number and lexicographically smallest minimum cover of raw masks."""
    members = list(members)
    if not members:
        raise ParameterError("covering number of an empty family is undefined")
    if any(m == 0 for m in members):
        raise ParameterError("cannot cover an empty set")
    universe = 0
    for m in members:
        universe |= m
    t = 1
    while not can_cover(members, t, universe):
        t += 1
    cover = _lex_min_cover(members, t, list(mask_elements(universe)))
    return t, tuple(cover)


def covering_number(fam: SetFamily) -> tuple[int, tuple[int, ...]]:
    """Exact minimum hitting set of ``fam`` by branch and bound.

    Returns ``(tau, cover)`` where ``cover`` is the lexicographically smallest
    minimum cover.
    """
    if len(fam) == 0:
        raise ParameterError("covering number of an empty family is undefined")
    return min_cover_of_masks(fam.masks)


def covering_number_exhaustive(fam: SetFamily) -> tuple[int, tuple[int, ...]]:
    """Oracle for :func:`covering_number`: scan all subsets of [n] by size."""
    if len(fam) == 0:
        raise ParameterError("covering number of an empty family is undefined")
    ms = fam.masks
    n = fam.params.n
    for t in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), t):
            c = to_mask(combo)
            if all(m & c for m in ms):
                return t, combo
    raise AssertionError("unreachable: [n] covers any family of non-empty sets")


def degree_j(fam: SetFamily, j: int) -> int:
    """Largest number of members sharing a common ``j``-subset."""
    _check_int("j", j)
    if not 1 <= j <= fam.params.k:
        raise ParameterError(f"need 1 <= j <= k={fam.params.k}, got {j}")
    counts = Counter()
    for s in fam:
        counts.update(itertools.combinations(s.elements, j))
    return max(counts.values(), default=0)


def point_degrees(sets: Iterable[KSet]) -> Counter:
    counts = Counter()
    for s in sets:
        counts.update(s.elements)
    return counts


@dataclass(frozen=True)
class SizeBoundReport:
    size: int
    tau: int
    lower: int
    upper: int

    @property
    def passed(self) -> bool:
        return self.lower <= self.size <= self.upper


def check_size_bounds(fam: SetFamily) -> SizeBoundReport:
    """Evaluate C(n-tau, k-tau) <= |F| <= k^tau C(n-tau, k-tau) on a maximal family."""
    if len(fam) == 0 or not is_maximal_intersecting(fam):
        raise StateError("size bounds need a maximal intersecting family")
    n, k = fam.params.n, fam.params.k
    tau, _ = covering_number(fam)
    base = math.comb(n - tau, k - tau)
    return SizeBoundReport(size=len(fam), tau=tau, lower=base, upper=k**tau * base)


def degree_chain_violations(fam: SetFamily, tau: int | None = None) -> list[tuple[int, int, int]]:
    """Triples ``(j, d_j, d_{j+1})`` with j < tau and d_j > k * d_{j+1}."""
    if tau is None:
        tau, _ = covering_number(fam)
    k = fam.params.k
    out = []
    for j in range(1, min(tau, k)):
        dj, dj1 = degree_j(fam, j), degree_j(fam, j + 1)
        if dj > k * dj1:
            out.append((j, dj, dj1))
    return out


# --------------------------------------------------------------------------
# cover certificates


@dataclass(frozen=True)
class CoverCertificate:
    """A point set ``cover`` and k+1 claimed sets whose residues outside it are
    non-empty and pairwise disjoint."""

    cover: tuple[int, ...]
    witnesses: tuple[KSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "cover", tuple(sorted(set(self.cover))))
        object.__setattr__(self, "witnesses", tuple(self.witnesses))

    @property
    def size(self) -> int:
        return len(self.cover)

    def to_dict(self) -> dict:
        return {
            "cover": list(self.cover),
            "witnesses": [list(w.elements) for w in self.witnesses],
        }

    @classmethod
    def from_dict(cls, d: dict, params: Params) -> "CoverCertificate":
        return cls(tuple(d["cover"]), tuple(params.kset(w) for w in d["witnesses"]))


def check_disjointness_certificate(cert: CoverCertificate, p: Params) -> bool:
    if len(cert.witnesses) != p.k + 1:
        raise ParameterError(f"need exactly k+1={p.k + 1} witnesses, got {len(cert.witnesses)}")
    for w in cert.witnesses:
        if w.n != p.n or len(w) != p.k:
            raise ParameterError(f"witness {w} is not a {p.k}-subset of [{p.n}]")
    ms = [w.mask for w in cert.witnesses]
    if not all(a & b for a, b in itertools.combinations(ms, 2)):
        return False
    c = to_mask(cert.cover)
    seen = 0
    for m in ms:
        r = m & ~c
        if not r or r & seen:
            return False
        seen |= r
    return True
