"""Pruned depth-first search for irreducible shadows of a fixed genus.

Points 0..2n-1 are visited left to right; each point either opens an arc or
closes one of the open arcs.  Branches are cut as soon as they

* close a 1-arc or complete a stack of length two,
* close an arc that crosses nothing and can no longer be crossed,
* leave a group of closed arcs that no open arc can reconnect,
* push the genus of the closed arcs, alone or together with any single open
  arc, above the target.

Leaves are connected, stack-free matchings; the genus check there is exact.
The kernel is compiled with numba when available.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

UNSEEN = -2
OPEN = -1


@njit(cache=True)
def _closed_genus(partner, p, extra=-1):
    """Genus of the arcs closed at or before p, plus the open arc at ``extra`` if given.

    The open arc is completed by a virtual endpoint just right of p.
    """
    m2 = 0
    index = np.full(p + 2, -1, np.int64)
    for q in range(p + 1):
        if partner[q] >= 0 or q == extra:
            index[q] = m2
            m2 += 1
    if extra >= 0:
        index[p + 1] = m2
        m2 += 1
    if m2 == 0:
        return 0
    pts = np.empty(m2, np.int64)
    for q in range(p + 2):
        if index[q] >= 0:
            pts[index[q]] = q
    seen = np.zeros(m2, np.bool_)
    r = 0
    for s in range(m2):
        if not seen[s]:
            r += 1
            k = s
            while not seen[k]:
                seen[k] = True
                nxt = pts[(k + 1) % m2]
                if nxt == p + 1:
                    k = index[extra]
                elif nxt == extra:
                    k = index[p + 1]
                else:
                    k = index[partner[nxt]]
    return (1 + m2 // 2 - r) // 2


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _groups_reachable(partner, p, nopen):
    """Every crossing class of closed arcs touches an open arc (or all arcs form one class)."""
    parent = np.arange(p + 1)
    for a in range(p + 1):
        pa = partner[a]
        if not (pa > a or pa == OPEN):
            continue
        for b in range(a + 1, p + 1):
            pb = partner[b]
            if not (pb > b or pb == OPEN):
                continue
            if pa == OPEN:
                continue
            if b < pa and (pb == OPEN or pb > pa):
                ra = _find(parent, a)
                rb = _find(parent, b)
                if ra != rb:
                    parent[ra] = rb
    if nopen == 0:
        root = -1
        for a in range(p + 1):
            if partner[a] > a:
                ra = _find(parent, a)
                if root == -1:
                    root = ra
                elif ra != root:
                    return False
        return True
    has_open = np.zeros(p + 1, np.bool_)
    for a in range(p + 1):
        if partner[a] == OPEN:
            has_open[_find(parent, a)] = True
    for a in range(p + 1):
        if partner[a] > a and not has_open[_find(parent, a)]:
            return False
    return True


@njit(cache=True)
def _close_ok(partner, i, p, nopen, total, target_genus):
    if p == i + 1:
        return False
    if partner[p - 1] == i + 1:
        return False
    if nopen == 0 and p < total - 1:
        return False
    crossed = False
    for q in range(i + 1, p):
        pq = partner[q]
        if pq == OPEN or (pq >= 0 and pq < i):
            crossed = True
            break
    if not crossed:
        return False
    if not _groups_reachable(partner, p, nopen):
        return False
    if _closed_genus(partner, p, -1) > target_genus:
        return False
    # each open arc alone must also keep the genus in range
    for q in range(p):
        if partner[q] == OPEN and _closed_genus(partner, p, q) > target_genus:
            return False
    return True


@njit(cache=True)
def search_shadows(n_arcs, target_genus, first_partner, out):
    """Fill ``out`` rows with partner arrays of the shadows found; return the count.

    ``first_partner`` pins the partner of point 0 (-1 leaves it free).  A
    return value of -1 means ``out`` was too small.
    """
    total = 2 * n_arcs
    partner = np.full(total, UNSEEN, np.int64)
    opens = np.empty(total, np.int64)
    nopen = 0
    choice = np.full(total + 1, -1, np.int64)
    removed_at = np.zeros(total, np.int64)
    found = 0
    p = 0
    while p >= 0:
        if p == total:
            if _closed_genus(partner, total - 1, -1) == target_genus:
                if found >= out.shape[0]:
                    return -1
                for q in range(total):
                    out[found, q] = partner[q]
                found += 1
            p -= 1
            # undo the move at p
            if choice[p] == 0:
                nopen -= 1
                partner[p] = UNSEEN
            else:
                k = removed_at[p]
                i = partner[p]
                for s in range(nopen, k, -1):
                    opens[s] = opens[s - 1]
                opens[k] = i
                nopen += 1
                partner[i] = OPEN
                partner[p] = UNSEEN
            continue

        advanced = False
        c = choice[p] + 1
        while c <= nopen:
            if c == 0:
                # open a new arc if it can still be closed
                if nopen + 1 <= total - p - 1 and p != first_partner:
                    opens[nopen] = p
                    nopen += 1
                    partner[p] = OPEN
                    choice[p] = 0
                    advanced = True
                    break
            else:
                k = c - 1
                i = opens[k]
                pinned = first_partner >= 0 and (i == 0) != (p == first_partner)
                if not pinned:
                    for s in range(k, nopen - 1):
                        opens[s] = opens[s + 1]
                    nopen -= 1
                    partner[i] = p
                    partner[p] = i
                    if _close_ok(partner, i, p, nopen, total, target_genus):
                        removed_at[p] = k
                        choice[p] = c
                        advanced = True
                        break
                    for s in range(nopen, k, -1):
                        opens[s] = opens[s - 1]
                    opens[k] = i
                    nopen += 1
                    partner[i] = OPEN
                    partner[p] = UNSEEN
            c += 1

        if advanced:
            p += 1
            if p < total:
                choice[p] = -1
            continue

        choice[p] = -1
        p -= 1
        if p < 0:
            break
        if choice[p] == 0:
            nopen -= 1
            partner[p] = UNSEEN
        else:
            k = removed_at[p]
            i = partner[p]
            for s in range(nopen, k, -1):
                opens[s] = opens[s - 1]
            opens[k] = i
            nopen += 1
            partner[i] = OPEN
            partner[p] = UNSEEN
    return found


def run_search(n_arcs: int, target_genus: int, first_partner: int = -1) -> list[tuple[tuple[int, int], ...]]:
    """Arc lists (1-based) of all irreducible shadows with the given size and genus."""
    if n_arcs < 2:
        return []
    cap = 1024
    while True:
        out = np.zeros((cap, 2 * n_arcs), np.int64)
        count = search_shadows(n_arcs, target_genus, first_partner, out)
        if count >= 0:
            break
        cap *= 4
    result = []
    for row in out[:count]:
        arcs = tuple((q + 1, int(row[q]) + 1) for q in range(2 * n_arcs) if row[q] > q)
        result.append(arcs)
    return result
