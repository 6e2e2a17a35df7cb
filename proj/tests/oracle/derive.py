"""Independent brute-force values frozen into the C++ unit tests.

Colourings are rebuilt here from their definitions; nothing is shared with
the library. Run: python3 tests/oracle/derive.py
"""
from itertools import permutations


def bollobas_erdos(k):
    n = 4 * k + 1
    def c(u, v):
        d = abs(u - v)
        return 0 if min(d, n - d) <= k else 1
    return n, c


def layered(n, l):
    colours = {}
    fresh = l + 1
    for u in range(l):
        for v in range(u + 1, l):
            colours[(u, v)] = fresh
            fresh += 1
    def c(u, v):
        u, v = min(u, v), max(u, v)
        if v < l:
            return colours[(u, v)]
        if u < l:
            return u + 1
        return 1
    return n, c


def modular(n, mod):
    """c(u, v) = (u + v) mod m."""
    return n, lambda u, v: (u + v) % mod


def product(n, mod):
    """c(u, v) = (u v + u + v) mod m."""
    return n, lambda u, v: (u * v + u + v) % mod


def proper_cycle(c, cyc):
    m = len(cyc)
    return all(c(cyc[i - 1], cyc[i]) != c(cyc[i], cyc[(i + 1) % m]) for i in range(m))


def proper_path(c, p):
    return all(c(p[i - 1], p[i]) != c(p[i], p[i + 1]) for i in range(1, len(p) - 1))


def pc_cycles(n, c):
    """Canonical PC cycles: smallest vertex first, second < last."""
    out = []
    def grow(path, used):
        if len(path) >= 3 and path[1] < path[-1] and proper_cycle(c, path):
            out.append(tuple(path))
        for v in range(path[0] + 1, n):
            if v in used:
                continue
            if len(path) >= 2 and c(path[-2], path[-1]) == c(path[-1], v):
                continue
            used.add(v)
            path.append(v)
            grow(path, used)
            path.pop()
            used.discard(v)
    for s in range(n):
        grow([s], {s})
    return out


def longest_path_order(n, c):
    best = 1
    def grow(path, used):
        nonlocal best
        best = max(best, len(path))
        for v in range(n):
            if v in used:
                continue
            if len(path) >= 2 and c(path[-2], path[-1]) == c(path[-1], v):
                continue
            used.add(v)
            path.append(v)
            grow(path, used)
            path.pop()
            used.discard(v)
    for s in range(n):
        grow([s], {s})
    return best


def ham_cycle_count(n, c):
    return sum(1 for cyc in pc_cycles(n, c) if len(cyc) == n)


def has_two_factor(n, c):
    cycles = pc_cycles(n, c)
    by_min = {}
    for cyc in cycles:
        by_min.setdefault(cyc[0], []).append(frozenset(cyc))
    def cover(left):
        if not left:
            return True
        s = min(left)
        return any(cyc <= left and cover(left - cyc) for cyc in by_min.get(s, []))
    return cover(frozenset(range(n)))


def count_absorbing(n, c, quad):
    x1, x2, y1, y2 = quad
    rest = [v for v in range(n) if v not in quad]
    total = 0
    for z in permutations(rest, 4):
        z1, z2, z3, z4 = z
        if not proper_path(c, z):
            continue
        if not proper_path(c, (z1, z2, x1, x2)):
            continue
        if not proper_path(c, (y1, y2, z3, z4)):
            continue
        total += 1
    return total


def tournament_cycles(m):
    core = 2 * m - 1
    arcs = set()
    for i in range(core):
        for j in range(1, m):
            arcs.add((i, (i + j) % core))
    for v in range(core):
        arcs.add((core, v))
    n = 2 * m
    # directed cycles, counted once per vertex cycle with orientation fixed
    count = 0
    def grow(path):
        nonlocal count
        last = path[-1]
        for v in range(path[0], n):
            if (last, v) not in arcs:
                continue
            if v == path[0]:
                if len(path) >= 3:
                    count += 1
                continue
            if v in path:
                continue
            grow(path + [v])
    for s in range(n):
        grow([s])
    return count


if __name__ == "__main__":
    for k in (1, 2):
        n, c = bollobas_erdos(k)
        cyc = pc_cycles(n, c)
        print(f"bollobas_erdos({k}): pc_cycles={len(cyc)} longest_cycle={max(map(len, cyc), default=0)}"
              f" ham_cycles={ham_cycle_count(n, c)} longest_path={longest_path_order(n, c)}"
              f" two_factor={has_two_factor(n, c)}")
    for (n, l) in ((8, 2), (10, 3), (9, 4)):
        nn, c = layered(n, l)
        cyc = pc_cycles(nn, c)
        print(f"layered({n},{l}): pc_cycles={len(cyc)} longest_cycle={max(map(len, cyc), default=0)}"
              f" longest_path={longest_path_order(nn, c)}")
    for m in (2, 3):
        print(f"t2m({m}): directed_cycles={tournament_cycles(m)}")
    for n, mod in ((7, 3), (8, 3), (9, 4)):
        nn, c = modular(n, mod)
        cyc = pc_cycles(nn, c)
        print(f"modular({n},{mod}): pc_cycles={len(cyc)} ham_cycles={ham_cycle_count(nn, c)}"
              f" two_factor={has_two_factor(nn, c)} longest_path={longest_path_order(nn, c)}")
    for n, mod in ((7, 3), (8, 4), (9, 5)):
        nn, c = product(n, mod)
        cyc = pc_cycles(nn, c)
        print(f"product({n},{mod}): pc_cycles={len(cyc)} ham_cycles={ham_cycle_count(nn, c)}"
              f" two_factor={has_two_factor(nn, c)} longest_path={longest_path_order(nn, c)}"
              f" longest_cycle={max(map(len, cyc), default=0)}")
    for fam, n, mod, quad in (("modular", 9, 3, (0, 1, 2, 3)), ("modular", 10, 4, (0, 5, 2, 7)),
                              ("product", 11, 5, (3, 1, 4, 9)), ("product", 12, 7, (11, 0, 6, 2))):
        nn, c = (modular if fam == "modular" else product)(n, mod)
        print(f"count_absorbing({fam}({n},{mod}), {quad}) = {count_absorbing(nn, c, quad)}")
