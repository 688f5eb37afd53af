"""Splittings NS = U + W and the search for W = D4 + D4 + D7.

A primitive isotropic F with (F, NS) = Z and a vector s with (F, s) = 1
split off a hyperbolic plane: NS = <F, s'> + W with s' = s - (s^2/2) F.
Re-splitting U + W along a different isotropic vector F = 2e + b f + v
(v in W, v^2 = -4b) replaces W by another lattice of the same genus, one
Kneser 2-step away.  :func:`find_splitting` walks from both ends, from a
splitting that exists inside NS and from the abstract target, and stops as
soon as the two walks meet in one isometry class.
"""

import logging
import random
from fractions import Fraction

from . import lattice, linalg

log = logging.getLogger(__name__)


def _xgcd_combination(values):
    """Integers c with sum(c_i * values_i) = gcd(values) >= 0."""
    g, coeffs = 0, [0] * len(values)
    for i, p in enumerate(values):
        if p == 0:
            continue
        if g == 0:
            g, coeffs = p, [0] * len(values)
            coeffs[i] = 1
            continue
        a0, a1, r0, r1 = 1, 0, g, p
        b0, b1 = 0, 1
        while r1:
            q = r0 // r1
            a0, a1 = a1, a0 - q * a1
            b0, b1 = b1, b0 - q * b1
            r0, r1 = r1, r0 - q * r1
        coeffs = [a0 * c for c in coeffs]
        coeffs[i] += b0
        g = r0
    if g < 0:
        g, coeffs = -g, [-c for c in coeffs]
    return g, coeffs


def hyperbolic_partner(lat, f):
    """s' in ``lat`` with (f, s') = 1 and s'^2 = 0, or None when (f, lat) != Z."""
    amb = lat.ambient
    pairings = [amb.inner(f, b) for b in lat.basis]
    if any(Fraction(x).denominator != 1 for x in pairings):
        return None
    g, coeffs = _xgcd_combination([int(x) for x in pairings])
    if g != 1:
        return None
    s = lat.combination(coeffs)
    half = Fraction(amb.inner(s, s), 2)
    return lattice._vec([a - half * b for a, b in zip(s, f)])


def split_off(lat, f):
    """(f, s', W) with lat = <f, s'> + W and W LLL reduced."""
    if lat.ambient.inner(f, f) != 0:
        raise lattice.LatticeError("vector is not isotropic")
    s = hyperbolic_partner(lat, f)
    if s is None:
        raise lattice.LatticeError("isotropic vector does not pair to 1 with the lattice")
    w = lattice.orthogonal_complement(lat, lattice.Sublattice(lat.ambient, [f, s]))
    return f, s, w.reduced()


def _ip(g, x, y):
    return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) if x[i]
               for j in range(len(y)) if y[j])


def resplit(gram, rng):
    """One random re-splitting of U + W (W given by ``gram``).

    Returns ``(rows, new_gram)``: ``rows`` are the coordinates in U + W of a
    basis (F, s', w'_1, ...) whose Gram matrix is U + new_gram.
    """
    n = len(gram)
    g = lattice.block_diagonal(lattice.hyperbolic_plane(), [list(r) for r in gram])
    amb = lattice.AmbientSpace(g)
    full = lattice.Sublattice(amb, linalg.identity(n + 2))
    unit = [[int(k == i) for k in range(n + 2)] for i in range(n + 2)]
    while True:
        v = [0, 0] + [rng.randint(0, 1) for _ in range(n)]
        norm = _ip(g, v, v)
        if not any(v) or norm % 4:
            continue
        b = -norm // 4
        odd = [i for i in range(2, n + 2) if _ip(g, v, unit[i]) % 2]
        if b % 2 == 0 and not odd:
            continue
        f = [2, b] + v[2:]
        _, s, w = split_off(full, lattice._vec(f))
        rows = [list(f), list(s)] + [list(x) for x in w.basis]
        return rows, [list(r) for r in w.gram]


def class_key(gram):
    """Cheap isometry invariant: root system and number of norm -4 vectors."""
    lat = lattice.standard_lattice(gram)
    n4 = sum(1 for _, n in lattice.short_vector_coordinates(gram, 4) if n == -4)
    return lattice.root_system(lat), n4


def find_splitting(lat, start_vectors, target_gram, seed=0, max_steps=400):
    """Basis of ``lat`` with Gram matrix U + ``target_gram``.

    ``start_vectors`` are isotropic vectors of ``lat`` giving known
    splittings.  Forward nodes carry the images in ``lat`` of a basis of
    U + X; backward nodes carry the coordinates in U + Y of the target
    basis.  Returns the list of basis vectors, or None after ``max_steps``.
    """
    rng = random.Random(seed)
    target = [list(r) for r in target_gram]
    fwd, bwd = [], []
    fwd_keys, bwd_keys = {}, {}

    def add(side, keys, node):
        key = class_key(node[0])
        side.append(node)
        keys.setdefault(key, []).append(node)
        return key

    for f in start_vectors:
        f, s, w = split_off(lat, f)
        add(fwd, fwd_keys, ([list(r) for r in w.gram], [f, s] + list(w.basis)))
    ident = [lattice._vec(r) for r in linalg.identity(len(target) + 2)]
    add(bwd, bwd_keys, (target, ident))

    for step in range(max_steps):
        forward = step % 2 == 0
        if forward:
            x, phi = rng.choice(fwd)
            rows, gram = resplit(x, rng)
            images = [lattice._vec(linalg.vec_mat(r, [list(p) for p in phi])) for r in rows]
            node = (gram, images)
            key = add(fwd, fwd_keys, node)
            pairs = [(node, o) for o in bwd_keys.get(key, [])]
        else:
            y, theta = rng.choice(bwd)
            rows, gram = resplit(y, rng)
            inv = linalg.inverse(rows)
            coords = [lattice._vec(linalg.vec_mat(list(t), inv)) for t in theta]
            node = (gram, coords)
            key = add(bwd, bwd_keys, node)
            pairs = [(o, node) for o in fwd_keys.get(key, [])]
        log.info("step %d %s %s", step, "forward" if forward else "backward", key)
        for (x, phi), (y, theta) in pairs[:2]:
            p = lattice.isometry_search(lattice.standard_lattice(y), lattice.standard_lattice(x))
            if p is None:
                continue
            basis = []
            for t in theta:
                u = list(t[:2]) + linalg.vec_mat(list(t[2:]), p)
                basis.append(lattice._vec(linalg.vec_mat(u, [list(q) for q in phi])))
            return basis
    return None
