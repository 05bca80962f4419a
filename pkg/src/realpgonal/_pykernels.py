"""Pure-Python implementations of the table kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and result; ``kernels`` picks one at import time.
Tables arrive as whatever ``prepare`` returned (lists of lists here).
"""

from __future__ import annotations

import numpy as np


def prepare(table: np.ndarray):
    return table.tolist()


def prepare_vector(vec: np.ndarray):
    return [int(v) for v in vec]


def closure(table, identity: int, gens) -> list[int]:
    seen = [False] * len(table)
    seen[identity] = True
    out = [identity]
    gens = [int(g) for g in gens]
    i = 0
    while i < len(out):
        row = table[out[i]]
        for g in gens:
            y = row[g]
            if not seen[y]:
                seen[y] = True
                out.append(y)
        i += 1
    out.sort()
    return out


def closure_size(table, identity: int, gens) -> int:
    return len(closure(table, identity, gens))


def element_orders(table, identity: int) -> list[int]:
    n = len(table)
    orders = [0] * n
    for g in range(n):
        if orders[g]:
            continue
        k, x = 1, g
        while x != identity:
            x = table[x][g]
            k += 1
        orders[g] = k
    return orders


def conjugacy_labels(table, inv, gens) -> list[int]:
    """Label each element with the least element of its conjugacy class."""
    n = len(table)
    label = [-1] * n
    gens = [int(g) for g in gens]
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = table[table[g][x]][inv[g]]
                if label[y] < 0:
                    label[y] = start
                    stack.append(y)
    return label


def normalizer_elements(table, inv, member, hgens) -> list[int]:
    """All g with g h g^-1 in H for every generator h of H (member is a 0/1 mask)."""
    out = []
    hgens = [int(h) for h in hgens]
    for g in range(len(table)):
        row = table[g]
        gi = inv[g]
        for h in hgens:
            if not member[table[row[h]][gi]]:
                break
        else:
            out.append(g)
    return out


def centralizer_elements(table, elems) -> list[int]:
    out = []
    elems = [int(s) for s in elems]
    for g in range(len(table)):
        row = table[g]
        for s in elems:
            if row[s] != table[s][g]:
                break
        else:
            out.append(g)
    return out


def is_associative(table) -> bool:
    t = np.asarray(table)
    for a in range(t.shape[0]):
        # (a b) c == a (b c) for all b, c
        if not np.array_equal(t[t[a]], t[a][t]):
            return False
    return True


def search_epis(table, inv, orders, w, identity, periods, links, has_cycle, limit,
                shard=0, nshards=1):
    """Depth-first search for surface-kernel image tuples of a genus-0 signature.

    Generator order is x_1..x_r, then (when has_cycle) e, c_0..c_s.
    Candidates are scanned in increasing index, so results come out in
    lexicographic order. Returns (results, complete) where complete is
    False if ``limit`` results were reached before the search finished.
    With ``nshards > 1`` only the top-level branches (x_1, or c_0 when there
    are no proper periods) whose position is ``shard`` mod ``nshards`` are explored.
    """
    n = len(table)
    r = len(periods)
    s = len(links)
    conformal = [g for g in range(n) if w[g] == 1]
    reflections = [g for g in range(n) if w[g] == -1 and orders[g] == 2]
    xcands = [[g for g in conformal if orders[g] == m] for m in periods]
    results = []
    images = [0] * (r + (2 + s if has_cycle else 0))

    def surjective() -> bool:
        return closure_size(table, identity, images) == n

    def rec_c(j, e):
        # j indexes c_j, images[r + 1 + j]
        pos = r + 1 + j
        if j == 0:
            cands = reflections
            if r == 0 and nshards > 1:
                cands = cands[shard::nshards]
        else:
            prev = images[pos - 1]
            want = links[j - 1]
            cands = [c for c in reflections if orders[table[prev][c]] == want]
        for c in cands:
            images[pos] = c
            if j == s:
                c0 = images[r + 1]
                # c_0 e^-1 c_s e
                if table[table[table[c0][inv[e]]][c]][e] != identity:
                    continue
                if surjective():
                    results.append(tuple(images))
                    if len(results) >= limit:
                        return False
            elif not rec_c(j + 1, e):
                return False
        return True

    def rec_x(i, prod):
        if i == r:
            if has_cycle:
                for e in conformal:
                    if table[prod][e] != identity:
                        continue
                    images[r] = e
                    if not rec_c(0, e):
                        return False
                return True
            if prod == identity and surjective():
                results.append(tuple(images))
                if len(results) >= limit:
                    return False
            return True
        cands = xcands[i]
        if i == 0 and nshards > 1:
            cands = cands[shard::nshards]
        for x in cands:
            images[i] = x
            if not rec_x(i + 1, table[prod][x]):
                return False
        return True

    complete = rec_x(0, identity)
    return results, complete
