"""Index-coded lookup tables for a finite ring.

Element ``i`` is ``ring.element(i)``; index 0 is always zero.  Everything the
exhaustive deciders touch is a numpy gather on these tables.

Quadruples ``(x, y, z, w)`` are enumerated with ``x`` varying fastest, so the
quad with flat index ``k`` is ``x = k % n``, ``y = k // n % n`` and so on.  The
same flat index read the other way round (``a`` slowest) enumerates matrices
``[[a, b], [c, d]]``.
"""

from __future__ import annotations

import functools

import numpy as np


class FiniteTables:
    def __init__(self, ring):
        self.ring = ring
        elems = ring.element_list
        n = self.n = len(elems)
        index = ring._index
        vals = [e.value for e in elems]

        add = np.empty((n, n), dtype=np.intp)
        mul = np.empty((n, n), dtype=np.intp)
        for i, u in enumerate(vals):
            for j in range(i, n):
                v = vals[j]
                add[i, j] = add[j, i] = index[ring._add(u, v)]
                mul[i, j] = mul[j, i] = index[ring._mul(u, v)]
        self.add = add
        self.mul = mul
        self.neg = np.array([index[ring._neg(u)] for u in vals], dtype=np.intp)
        self.sub = add[:, self.neg]
        self.add_list = add.tolist()
        self.mul_list = mul.tolist()
        self.zero = 0
        self.one = index[ring.one.value]

        is_one = mul == self.one
        self.inv = np.where(is_one.any(axis=1), is_one.argmax(axis=1), -1)

        nil = np.zeros(n, dtype=bool)
        for i in range(n):
            x = i
            for _ in range(n):
                if x == 0:
                    nil[i] = True
                    break
                x = mul[x, i]
        self.nilpotent = nil
        self.zero_divisor = (mul[:, 1:] == 0).any(axis=1) if n > 1 else np.ones(n, bool)

        # quot[a, b]: first q (element order) with a*q == b, else -1
        quot = np.full((n, n), -1, dtype=np.intp)
        for q in range(n - 1, -1, -1):
            quot[np.arange(n), mul[:, q]] = q
        self.quot = quot

    # -- ideals (built on first use; quartic in n) ---------------------------
    @functools.cached_property
    def _ideals(self):
        n = self.n
        ids: dict[frozenset, int] = {}
        members: list[np.ndarray] = []

        def intern(s: frozenset) -> int:
            k = ids.get(s)
            if k is None:
                k = ids[s] = len(members)
                members.append(np.array(sorted(s), dtype=np.intp))
            return k

        pair = np.empty((n, n), dtype=np.intp)
        for a in range(n):
            ra = self.mul[a]
            for b in range(a, n):
                s = frozenset(self.add[np.ix_(ra, self.mul[b])].ravel().tolist())
                pair[a, b] = pair[b, a] = intern(s)
        # close under sums
        k = 0
        sums: dict[tuple[int, int], int] = {}
        while k < len(members):
            for j in range(k + 1):
                s = frozenset(self.add[np.ix_(members[k], members[j])].ravel().tolist())
                sums[k, j] = sums[j, k] = intern(s)
            k += 1
        m = len(members)
        table = np.empty((m, m), dtype=np.intp)
        for (i, j), v in sums.items():
            table[i, j] = v
        has_one = np.array([self.one in set(x.tolist()) for x in members])
        principal = np.array([pair[a, 0] for a in range(n)], dtype=np.intp)
        return pair, table, members, has_one, principal

    @property
    def pair_ideal(self) -> np.ndarray:
        return self._ideals[0]

    @property
    def ideal_sum(self) -> np.ndarray:
        return self._ideals[1]

    @property
    def ideal_members(self) -> list[np.ndarray]:
        return self._ideals[2]

    @property
    def ideal_has_one(self) -> np.ndarray:
        return self._ideals[3]

    @property
    def principal(self) -> np.ndarray:
        return self._ideals[4]

    def ideal_of(self, gens) -> int:
        """Ideal id of the ideal generated by element indices ``gens``."""
        k = self.principal[0]
        for g in gens:
            k = self.ideal_sum[k, self.principal[g]]
        return int(k)

    def unimodular(self, a, b, c, d):
        """Vectorized test that the entries generate the unit ideal."""
        return self.ideal_has_one[self.ideal_sum[self.pair_ideal[a, b], self.pair_ideal[c, d]]]

    def unimodular_pair(self, a, b):
        return self.ideal_has_one[self.pair_ideal[a, b]]

    # -- quads ---------------------------------------------------------------
    @functools.cached_property
    def quads(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        n = self.n
        k = np.arange(n**4, dtype=np.intp)
        return k % n, k // n % n, k // (n * n) % n, k // (n**3)

    @functools.cached_property
    def quad_products(self) -> dict[str, np.ndarray]:
        x, y, z, w = self.quads
        mul = self.mul
        xw, xz, yw, yz = mul[x, w], mul[x, z], mul[y, w], mul[y, z]
        return {"xw": xw, "xz": xz, "yw": yw, "yz": yz, "det": self.sub[xw, yz]}

    @functools.cached_property
    def chunks(self) -> list[tuple[int, int]]:
        total = self.n**4
        cuts = [0] + [c for c in (256, 4096) if c < total] + [total]
        return list(zip(cuts[:-1], cuts[1:]))

    @functools.cached_property
    def orbit_labels(self) -> np.ndarray:
        """Smallest flat index in each matrix's orbit under ``A -> P A Q`` and
        transposition, with ``P, Q`` ranging over elementary and diagonal
        invertible matrices."""
        n = self.n
        a, b, c, d = self.matrices()

        def flat(a, b, c, d):
            return ((a * n + b) * n + c) * n + d

        mul, add = self.mul, self.add
        perms = [flat(a, c, b, d)]
        for r in range(1, n):
            perms += [
                flat(add[a, mul[r, c]], add[b, mul[r, d]], c, d),
                flat(a, b, add[c, mul[r, a]], add[d, mul[r, b]]),
                flat(add[a, mul[r, b]], b, add[c, mul[r, d]], d),
                flat(a, add[b, mul[r, a]], c, add[d, mul[r, c]]),
            ]
        for u in np.flatnonzero(self.inv >= 0):
            if u != self.one:
                perms += [flat(mul[u, a], mul[u, b], c, d), flat(mul[u, a], b, mul[u, c], d)]
        labels = np.arange(n**4, dtype=np.intp)
        while True:
            new = labels.copy()
            for p in perms:
                np.minimum(new, labels[p], out=new)
                np.minimum.at(new, p, labels)
            new = new[new]
            if np.array_equal(new, labels):
                return labels
            labels = new

    def matrices(self):
        """Flat arrays ``a, b, c, d`` enumerating all of M_2(R), ``a`` slowest."""
        x, y, z, w = self.quads
        return w, z, y, x
