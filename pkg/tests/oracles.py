"""Brute-force reference implementations used only by the tests.

They work on plain Python lists taken from the ring tables and share no code
with the library's algorithms.
"""

from __future__ import annotations

from itertools import product


def _tables(ring):
    return ring.add_table.tolist(), ring.mul_table.tolist(), ring.zero, ring.order


def subgroup_closure(add, zero, elems):
    group = {zero, *elems}
    while True:
        new = {add[a][b] for a in group for b in group} - group
        if not new:
            return frozenset(group)
        group |= new


def all_additive_subgroups(ring) -> set[frozenset[int]]:
    """Every additive subgroup, grown one generator at a time from {0}."""
    add, _, zero, n = _tables(ring)
    found = {frozenset([zero])}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for x in range(n):
                if x in H:
                    continue
                G = subgroup_closure(add, zero, H | {x})
                if G not in found:
                    found.add(G)
                    nxt.append(G)
        frontier = nxt
    return found


def closed_under(ring, members, sidedness: str) -> bool:
    mul = ring.mul_table.tolist()
    left = sidedness in ("left", "two-sided")
    right = sidedness in ("right", "two-sided")
    for r in range(ring.order):
        for x in members:
            if left and mul[r][x] not in members:
                return False
            if right and mul[x][r] not in members:
                return False
    return True


def brute_ideals(ring, sidedness: str) -> set[frozenset[int]]:
    return {H for H in all_additive_subgroups(ring) if closed_under(ring, H, sidedness)}


def product_set(ring, A, B) -> frozenset[int]:
    """Additive span of all products a*b."""
    add, mul, zero, _ = _tables(ring)
    return subgroup_closure(add, zero, {mul[a][b] for a in A for b in B})


def brute_nilpotency_index(ring, members) -> int | None:
    """Least k with every k-fold product of members equal to zero, for k <= order."""
    _, mul, zero, n = _tables(ring)
    members = list(members)
    # k-fold products of single elements span I^k, so checking element tuples suffices
    prods = set(members)
    for k in range(1, n + 1):
        if prods <= {zero}:
            return k
        prods = {mul[p][x] for p in prods for x in members}
    return None


def brute_nil_essential(ring, I, ideals, within=None) -> bool:
    zero = ring.zero
    within = frozenset(range(ring.order)) if within is None else within
    for mu in ideals:
        if mu <= within and (I & mu) == {zero} and brute_nilpotency_index(ring, mu) is None:
            return False
    return True


def brute_essential(ring, I, ideals, within=None) -> bool:
    zero = ring.zero
    within = frozenset(range(ring.order)) if within is None else within
    return all(not (mu <= within and (I & mu) == {zero} and mu != {zero}) for mu in ideals)


def brute_fraction_classes(ring, S) -> int:
    """Number of classes of R x S under (r,s) ~ (r',s') iff u(rs' - r's) = 0 for some u in S."""
    add, mul, zero, n = _tables(ring)
    neg = [next(y for y in range(n) if add[x][y] == zero) for x in range(n)]
    pairs = list(product(range(n), sorted(S)))
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, (r, s) in enumerate(pairs):
        for j, (r2, s2) in enumerate(pairs):
            diff = add[mul[r][s2]][neg[mul[r2][s]]]
            if any(mul[u][diff] == zero for u in S):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(pairs))})


def is_multiplicatively_closed(ring, S) -> bool:
    mul = ring.mul_table.tolist()
    return ring.one in S and ring.zero not in S and all(mul[a][b] in S for a in S for b in S)
