#!/usr/bin/env python3
"""Independent reference for the trivial-crossing fixtures.

Reads MCD files and prints, per file, the set of crossings removed by the
monogon / bigon / free-end-slide rules. It shares no code with the C++
library. Each file is reduced under several shuffled rule orders and the
script aborts if the resulting sets disagree.

    python3 trivial_oracle.py FILE...
"""

import random
import re
import sys


def parse(path):
    cables = {}
    with open(path) as fh:
        for line in fh:
            m = re.match(r"cable (\d+):(.*)", line.strip())
            if not m:
                continue
            visits = []
            for tok in m.group(2).split():
                x, d = tok[1:].split("@")
                visits.append((int(x), int(d)))
            cables[int(m.group(1))] = visits
    return cables


def slots(cab, x):
    return [(c, i) for c, vs in cab.items() for i, (y, _) in enumerate(vs) if y == x]


def depth(cab, s):
    return cab[s[0]][s[1]][1]


def at(cab, c, i):
    if 0 <= i < len(cab[c]):
        return cab[c][i][0]
    return None


def bigon_next(cab, x, over, under, step):
    """Crossing y one step along the over strand that closes a bigon with x."""
    c, i = over
    y = at(cab, c, i + step)
    if y is None or y == x:
        return None
    sy = slots(cab, y)
    if len(sy) != 2 or (c, i + step) not in sy or depth(cab, (c, i + step)) != 1:
        return None
    other = [s for s in sy if s != (c, i + step)][0]
    if other[0] != under[0] or abs(other[1] - under[1]) != 1:
        return None
    return y


def candidates(cab):
    found = []
    xs = sorted({x for vs in cab.values() for x, _ in vs})
    for x in xs:
        s = slots(cab, x)
        if len(s) != 2:
            continue
        (c1, i1), (c2, i2) = s
        if c1 == c2 and abs(i1 - i2) == 1:
            found.append({x})
        if all(i == 0 or i == len(cab[c]) - 1 for c, i in s):
            found.append({x})
        tops = [t for t in s if depth(cab, t) == 1]
        if len(tops) != 1:
            continue
        over = tops[0]
        under = [t for t in s if t != over][0]
        y = bigon_next(cab, x, over, under, +1)
        if y is not None and bigon_next(cab, x, over, under, -1) is None:
            found.append({x, y})
    return found


def reduce(cables, rng):
    cab = {c: list(vs) for c, vs in cables.items()}
    trivial = set()
    while True:
        cands = candidates(cab)
        if not cands:
            return trivial
        pick = rng.choice(cands) if rng else cands[0]
        for c in cab:
            cab[c] = [v for v in cab[c] if v[0] not in pick]
        trivial |= pick


def main(paths):
    for path in paths:
        cables = parse(path)
        reference = reduce(cables, None)
        for seed in range(8):
            other = reduce(cables, random.Random(seed))
            if other != reference:
                sys.exit(f"{path}: order-dependent result {sorted(reference)} vs {sorted(other)}")
        print(path.rsplit("/", 1)[-1], " ".join(str(x) for x in sorted(reference)) or "-")


if __name__ == "__main__":
    main(sys.argv[1:])
