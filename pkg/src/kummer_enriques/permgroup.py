"""Deterministic Schreier-Sims for permutation groups on ``range(n)``.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``.
``compose(a, b)`` applies ``b`` first.
"""


def compose(a, b):
    return tuple(a[x] for x in b)


def invert(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_identity(p):
    return all(i == x for i, x in enumerate(p))


def check_perm(p, n):
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValueError("not a permutation of the point set")


class StabilizerChain:
    """Base and strong generating set for ``<gens>``."""

    def __init__(self, gens, degree):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base = []
        self.levels = []  # levels[i]: strong generators fixing base[:i]
        self._trans = []
        for g in gens:
            check_perm(g, degree)
        gens = [tuple(g) for g in gens if not is_identity(g)]
        if gens:
            self._new_level(gens[0])
            for g in gens:
                if g not in self.levels[0]:
                    self.levels[0].append(g)
            self._trans[0] = None
            self._complete()

    def _new_level(self, g):
        b = next(i for i, x in enumerate(g) if x != i)
        self.base.append(b)
        self.levels.append([])
        self._trans.append(None)

    def transversal(self, i):
        if self._trans[i] is None:
            b = self.base[i]
            gens = self.levels[i]
            t = {b: self.identity}
            queue = [b]
            for x in queue:
                ux = t[x]
                for s in gens:
                    y = s[x]
                    if y not in t:
                        t[y] = compose(s, ux)
                        queue.append(y)
            self._trans[i] = t
        return self._trans[i]

    def sift(self, g, start=0):
        for i in range(start, len(self.base)):
            t = self.transversal(i)
            x = g[self.base[i]]
            if x not in t:
                return g, i
            g = compose(invert(t[x]), g)
        return g, len(self.base)

    def _add(self, g, upto):
        if upto == len(self.base):
            self._new_level(g)
        for k in range(0, upto + 1):
            if g not in self.levels[k]:
                self.levels[k].append(g)
                self._trans[k] = None

    def _complete(self):
        j = len(self.base) - 1
        while j >= 0:
            restart = None
            t = self.transversal(j)
            for x, ux in list(t.items()):
                for s in list(self.levels[j]):
                    h = compose(invert(t[s[x]]), compose(s, ux))
                    if is_identity(h):
                        continue
                    r, level = self.sift(h, j + 1)
                    if not is_identity(r):
                        self._add(r, level)
                        restart = level
                        break
                if restart is not None:
                    break
            if restart is not None:
                j = min(restart, len(self.base) - 1)
            else:
                j -= 1

    def orbit_lengths(self):
        return [len(self.transversal(i)) for i in range(len(self.base))]

    def order(self):
        n = 1
        for k in self.orbit_lengths():
            n *= k
        return n

    def contains(self, g):
        r, _ = self.sift(tuple(g))
        return is_identity(r)


def group_order(gens, degree):
    return StabilizerChain(gens, degree).order()


def orbits(gens, degree):
    """Orbit partition of ``range(degree)`` under ``gens`` (sorted lists)."""
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        for x in orb:
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(orb))
    return out
