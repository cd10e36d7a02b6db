"""Independent oracles used across the test suite.

These deliberately avoid the library's orbit-stabilizer and
integer-partition routes: equivariant maps are found by backtracking
over raw assignments checked against every group element, and
substitution counts are summed over explicitly generated set partitions.
"""

import itertools

from espece.groups import all_permutations


def brute_equivariant_maps(src, tgt, perms=None):
    """All equivariant maps src -> tgt by constraint-checked backtracking."""
    perms = all_permutations(src.degree) if perms is None else perms
    pts = list(src.points)
    maps = []
    assign = {}

    def consistent(x):
        fx = assign[x]
        for s in perms:
            y = src.act(s, x)
            if y in assign and assign[y] != tgt.act(s, fx):
                return False
        return True

    def rec(i):
        if i == len(pts):
            maps.append(dict(assign))
            return
        x = pts[i]
        for t in tgt.points:
            assign[x] = t
            if consistent(x):
                rec(i + 1)
            del assign[x]

    rec(0)
    return maps


def brute_equivariant_count(src, tgt):
    return len(brute_equivariant_maps(src, tgt))


def exhaustive_equivariant_count(src, tgt):
    """The dumbest possible count: every function, every permutation."""
    perms = all_permutations(src.degree)
    count = 0
    for images in itertools.product(tgt.points, repeat=len(src.points)):
        f = dict(zip(src.points, images))
        if all(
            f[src.act(s, x)] == tgt.act(s, f[x]) for s in perms for x in src.points
        ):
            count += 1
    return count


def find_equivariant_bijection(a, b):
    """Search for an equivariant bijection between two small actions."""
    if len(a.points) != len(b.points):
        return None
    perms = all_permutations(a.degree)
    for images in itertools.permutations(b.points):
        f = dict(zip(a.points, images))
        if all(f[a.act(s, x)] == b.act(s, f[x]) for s in perms for x in a.points):
            return f
    return None


def set_partitions(labels):
    labels = tuple(labels)
    if not labels:
        yield ()
        return
    first, rest = labels[0], labels[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + (tuple(sorted((first,) + part[i])),) + part[i + 1 :]
        yield ((first,),) + part


def substitution_count_oracle(f_counts, g_counts, n):
    """|(f o g)[n]| summed over explicit set partitions of {1..n}."""
    total = 0
    for part in set_partitions(range(1, n + 1)):
        term = f_counts[len(part)]
        for block in part:
            term *= g_counts[len(block)]
        total += term
    return total
