"""Finite posets over string labels, stored as transitively closed bitsets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class PosetError(ValueError):
    pass


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Poset:
    """Strict partial order.

    ``down[i]`` / ``up[i]`` are int bitsets of the elements strictly below /
    above element ``i``.  Elements keep the order in which they were given.
    """

    __slots__ = ("labels", "index", "down", "up", "_covers")

    def __init__(self, labels: Iterable[str], relations: Iterable[tuple[str, str]] = ()):
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise PosetError("duplicate element labels")
        n = len(self.labels)
        preds: list[set[int]] = [set() for _ in range(n)]
        for a, b in relations:
            try:
                i, j = self.index[a], self.index[b]
            except KeyError as exc:
                raise PosetError(f"unknown element {exc.args[0]!r}") from None
            if i == j:
                raise PosetError(f"{a} < {a} violates irreflexivity")
            preds[j].add(i)
        order = _topo(n, preds)
        if order is None:
            raise PosetError("relation contains a cycle (not antisymmetric)")
        down = [0] * n
        for j in order:
            acc = 0
            for i in preds[j]:
                acc |= down[i] | (1 << i)
            down[j] = acc
        up = [0] * n
        for j in range(n):
            for i in _bits(down[j]):
                up[i] |= 1 << j
        self.down = down
        self.up = up
        self._covers = None

    @classmethod
    def _from_bits(cls, labels, down, up) -> "Poset":
        P = cls.__new__(cls)
        P.labels = tuple(labels)
        P.index = {lab: i for i, lab in enumerate(P.labels)}
        P.down = list(down)
        P.up = list(up)
        P._covers = None
        return P

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {self.relation_size()} relations)"

    def lt(self, a: str, b: str) -> bool:
        return bool(self.down[self.index[b]] >> self.index[a] & 1)

    def comparable(self, a: str, b: str) -> bool:
        i, j = self.index[a], self.index[b]
        return i == j or bool(self.down[j] >> i & 1) or bool(self.down[i] >> j & 1)

    def relation_size(self) -> int:
        return sum(bin(d).count("1") for d in self.down)

    def relations(self) -> list[tuple[str, str]]:
        L = self.labels
        return [(L[i], L[j]) for j in range(len(L)) for i in _bits(self.down[j])]

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs ``(i, j)``: ``i < j`` with nothing in between."""
        if self._covers is None:
            out = []
            for j, dj in enumerate(self.down):
                below_others = 0
                for i in _bits(dj):
                    below_others |= self.down[i]
                for i in _bits(dj & ~below_others):
                    out.append((i, j))
            self._covers = out
        return self._covers

    def height(self) -> int:
        """Number of elements in a longest chain."""
        memo = [0] * len(self)
        for j in _topo(len(self), [set(_bits(d)) for d in self.down]):
            memo[j] = 1 + max((memo[i] for i in _bits(self.down[j])), default=0)
        return max(memo, default=0)

    def subposet(self, keep: Iterable[str]) -> "Poset":
        keep = list(keep)
        idx = [self.index[k] for k in keep]
        rel = [(keep[a], keep[b]) for a, i in enumerate(idx) for b, j in enumerate(idx)
               if self.down[j] >> i & 1]
        return Poset(keep, rel)

    def relabel(self, mapping) -> "Poset":
        return Poset._from_bits([mapping[x] for x in self.labels], self.down, self.up)

    def same_order(self, other: "Poset") -> bool:
        """Equal as labelled posets (element order ignored)."""
        if set(self.labels) != set(other.labels):
            return False
        return set(self.relations()) == set(other.relations())


def _topo(n: int, preds: Sequence[set[int]]) -> list[int] | None:
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for j in range(n):
        for i in preds[j]:
            succ[i].append(j)
            indeg[j] += 1
    stack = [i for i in range(n - 1, -1, -1) if indeg[i] == 0]
    order = []
    while stack:
        i = stack.pop()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    return order if len(order) == n else None


def dual_poset(P: Poset) -> Poset:
    return Poset._from_bits(P.labels, P.up, P.down)


def critical_pairs(P: Poset) -> list[tuple[str, str]]:
    """All critical pairs ``(a, b)``: incomparable, everything below ``a`` is
    below ``b`` and everything above ``b`` is above ``a``."""
    n = len(P)
    out = []
    for a in range(n):
        da, ua = P.down[a], P.up[a]
        for b in range(n):
            if a == b or (P.down[b] >> a & 1) or (da >> b & 1):
                continue
            if da & ~P.down[b] == 0 and P.up[b] & ~ua == 0:
                out.append((P.labels[a], P.labels[b]))
    out.sort()
    return out


def incomparable_pairs(P: Poset) -> list[tuple[str, str]]:
    n = len(P)
    return [(P.labels[a], P.labels[b]) for a in range(n) for b in range(n)
            if a != b and not (P.down[b] >> a & 1) and not (P.down[a] >> b & 1)]


def reversing_extension(P: Poset, S: Iterable[tuple[str, str]]) -> list[str] | None:
    """A linear extension (lowest first) placing ``b`` below ``a`` for every
    ``(a, b)`` in ``S``, or None if ``S`` contains an alternating cycle."""
    n = len(P)
    preds = [set(_bits(d)) for d in P.down]
    for a, b in S:
        i, j = P.index[a], P.index[b]
        if P.down[j] >> i & 1 or P.down[i] >> j & 1:
            raise PosetError(f"pair ({a}, {b}) is comparable")
        preds[i].add(j)
    order = _topo(n, preds)
    return None if order is None else [P.labels[i] for i in order]


def is_reversible(P: Poset, S: Iterable[tuple[str, str]]) -> bool:
    return reversing_extension(P, S) is not None


@dataclass
class RealizerCheck:
    ok: bool
    kind: str = ""  # "", "not-extension" or "unreversed"
    extension: int | None = None
    pair: tuple[str, str] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_realizer(P: Poset, extensions: Sequence[Sequence[str]]) -> RealizerCheck:
    """Check that ``extensions`` (each listed lowest first) realize ``P``.

    Raises :class:`PosetError` if an order is not a permutation of the
    elements; otherwise returns the first violation found, if any.
    """
    labels = set(P.labels)
    positions = []
    for t, L in enumerate(extensions):
        if len(L) != len(P) or set(L) != labels:
            missing = sorted(labels - set(L))[:3]
            extra = sorted(set(L) - labels)[:3]
            raise PosetError(f"extension {t} is not a permutation of the elements "
                             f"(missing {missing}, unexpected {extra}, length {len(L)})")
        pos = [0] * len(P)
        for k, lab in enumerate(L):
            pos[P.index[lab]] = k
        positions.append(pos)
    for t, pos in enumerate(positions):
        for i, j in P.covers():
            if pos[i] > pos[j]:
                a, b = P.labels[i], P.labels[j]
                return RealizerCheck(False, "not-extension", t, (a, b),
                                     f"extension {t} puts {b} below {a} but {a} < {b}")
    for a, b in critical_pairs(P):
        i, j = P.index[a], P.index[b]
        if not any(pos[j] < pos[i] for pos in positions):
            return RealizerCheck(False, "unreversed", None, (a, b),
                                 f"critical pair ({a}, {b}) is not reversed")
    return RealizerCheck(True)
