"""Reduced ordered binary decision diagrams with weighted model counting.

Nodes live in a manager-owned store with a unique table keyed by
(variable, low, high), so every Boolean function over the manager's
variables has exactly one reference: equality of functions is equality of
refs. Variable indices increase strictly along every path from the root to a
terminal. Negation is computed through the same memoized apply machinery as
conjunction and disjunction (no complement edges).
"""

from __future__ import annotations

import sys
from typing import Iterable, Mapping

from .errors import ForeignRefError, MissingWeightError, UnmappedAxiomError

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_LEAF = sys.maxsize  # variable index of the two terminals


class BddRef:
    """Handle to a node or terminal; only valid within its manager."""

    __slots__ = ("manager", "idx")

    def __init__(self, manager: "BddManager", idx: int):
        self.manager = manager
        self.idx = idx

    def __eq__(self, other):
        return (isinstance(other, BddRef) and other.manager is self.manager
                and other.idx == self.idx)

    def __hash__(self):
        return hash((id(self.manager), self.idx))

    def __repr__(self):
        return f"BddRef({self.idx})"


class BddManager:
    def __init__(self, var_count: int = 0):
        self.var_count = var_count
        # idx 0 and 1 are the Zero and One terminals
        self._var: list[int] = [_LEAF, _LEAF]
        self._lo: list[int] = [0, 1]
        self._hi: list[int] = [0, 1]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._cache: dict[tuple, int] = {}

    # -- refs -----------------------------------------------------------------

    @property
    def zero(self) -> BddRef:
        return BddRef(self, 0)

    @property
    def one(self) -> BddRef:
        return BddRef(self, 1)

    def _check(self, ref: BddRef) -> int:
        if not isinstance(ref, BddRef) or ref.manager is not self:
            raise ForeignRefError("reference does not belong to this manager")
        return ref.idx

    def add_var(self) -> int:
        """Append one variable (lowest in the order) and return its index."""
        self.var_count += 1
        return self.var_count - 1

    def var(self, i: int) -> BddRef:
        if not 0 <= i < self.var_count:
            raise ValueError(f"variable index {i} out of range 0..{self.var_count - 1}")
        return BddRef(self, self._mk(i, 0, 1))

    # -- construction ------------------------------------------------------------

    def _mk(self, v: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (v, lo, hi)
        idx = self._unique.get(key)
        if idx is None:
            idx = len(self._var)
            self._var.append(v)
            self._lo.append(lo)
            self._hi.append(hi)
            self._unique[key] = idx
        return idx

    def _and(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1 or a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("and", a, b)
        r = self._cache.get(key)
        if r is None:
            va, vb = self._var[a], self._var[b]
            v = min(va, vb)
            a0, a1 = (self._lo[a], self._hi[a]) if va == v else (a, a)
            b0, b1 = (self._lo[b], self._hi[b]) if vb == v else (b, b)
            r = self._mk(v, self._and(a0, b0), self._and(a1, b1))
            self._cache[key] = r
        return r

    def _or(self, a: int, b: int) -> int:
        if a == 1 or b == 1:
            return 1
        if a == 0:
            return b
        if b == 0 or a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("or", a, b)
        r = self._cache.get(key)
        if r is None:
            va, vb = self._var[a], self._var[b]
            v = min(va, vb)
            a0, a1 = (self._lo[a], self._hi[a]) if va == v else (a, a)
            b0, b1 = (self._lo[b], self._hi[b]) if vb == v else (b, b)
            r = self._mk(v, self._or(a0, b0), self._or(a1, b1))
            self._cache[key] = r
        return r

    def _not(self, a: int) -> int:
        if a < 2:
            return 1 - a
        key = ("not", a)
        r = self._cache.get(key)
        if r is None:
            r = self._mk(self._var[a], self._not(self._lo[a]), self._not(self._hi[a]))
            self._cache[key] = r
        return r

    def and_(self, a: BddRef, b: BddRef) -> BddRef:
        return BddRef(self, self._and(self._check(a), self._check(b)))

    def or_(self, a: BddRef, b: BddRef) -> BddRef:
        return BddRef(self, self._or(self._check(a), self._check(b)))

    def not_(self, a: BddRef) -> BddRef:
        return BddRef(self, self._not(self._check(a)))

    def is_zero(self, f: BddRef) -> bool:
        return self._check(f) == 0

    # -- justification DNFs ---------------------------------------------------------

    def from_justifications(self, justifications: Iterable[frozenset],
                            var_of: Mapping[int, int],
                            certain_ids: frozenset = frozenset()) -> BddRef:
        """BDD of the DNF: one conjunct of axiom variables per justification.

        Axiom ids in ``certain_ids`` have no variable and contribute the
        constant One to their conjunction; a justification made only of such
        ids therefore makes the whole formula One. An empty justification set
        yields Zero.
        """
        f = 0
        for just in sorted(justifications, key=lambda j: (len(j), tuple(sorted(j)))):
            term = 1
            for aid in sorted(just, reverse=True):
                if aid in var_of:
                    term = self._and(self._mk(var_of[aid], 0, 1), term)
                elif aid not in certain_ids:
                    raise UnmappedAxiomError(
                        f"axiom id {aid} has no variable and is not marked certain"
                    )
            f = self._or(f, term)
            if f == 1:
                break
        return BddRef(self, f)

    # -- weighted model counting --------------------------------------------------

    def probability(self, f: BddRef, weights: Mapping[int, float]) -> float:
        """P(f = 1) for independent variables with P(X_i = 1) = weights[i].

        Levels skipped along an edge need no correction: marginalising an
        unconstrained variable is weight-neutral.
        """
        root = self._check(f)
        memo: dict[int, float] = {0: 0.0, 1: 1.0}

        def walk(n: int) -> float:
            p = memo.get(n)
            if p is None:
                v = self._var[n]
                try:
                    w = weights[v]
                except KeyError:
                    raise MissingWeightError(f"no weight for variable {v}") from None
                p = w * walk(self._hi[n]) + (1.0 - w) * walk(self._lo[n])
                memo[n] = p
            return p

        return walk(root)

    # -- debugging ---------------------------------------------------------------

    def to_dot(self, f: BddRef, name: str = "bdd") -> str:
        """DOT graph of ``f``: solid high edges, dashed low edges."""
        root = self._check(f)
        lines = [f"digraph {name} {{"]
        seen: set[int] = set()
        stack = [root]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            if n < 2:
                lines.append(f'  n{n} [shape=box, label="{n}"];')
                continue
            lines.append(f'  n{n} [shape=circle, label="x{self._var[n]}"];')
            lines.append(f"  n{n} -> n{self._hi[n]};")
            lines.append(f"  n{n} -> n{self._lo[n]} [style=dashed];")
            stack.append(self._lo[n])
            stack.append(self._hi[n])
        lines.append("}")
        return "\n".join(lines) + "\n"
