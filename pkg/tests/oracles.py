"""Brute-force reference implementations over F_2.

Nothing here calls the library's linear algebra: Hom spaces are found by
trying every tuple of matrices, ideals by closing sets of composites under
addition, and stable properties straight from their definitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

P = 2


def all_matrices(rows: int, cols: int):
    for bits in itertools.product(range(P), repeat=rows * cols):
        yield np.array(bits, dtype=np.int64).reshape(rows, cols)


def all_vectors(n: int):
    for bits in itertools.product(range(P), repeat=n):
        yield np.array(bits, dtype=np.int64)


@dataclass(frozen=True)
class Rep:
    """A representation of a quiver: dims per vertex, arrows (name, i, j)."""

    dims: tuple
    arrows: tuple  # ((name, i, j), ...) with integer vertex indices
    maps: tuple  # matrices in arrow order

    def key(self):
        return (self.dims, tuple(m.tobytes() for m in self.maps))


def from_library(m) -> Rep:
    vs = list(m.algebra.vertices)
    arrows = tuple((a.name, vs.index(a.source), vs.index(a.target)) for a in m.algebra.quiver.arrows)
    return Rep(tuple(m.dims[v] for v in vs), arrows, tuple(m.maps[a[0]] % P for a in arrows))


def is_hom(x: Rep, y: Rep, phi) -> bool:
    for (name, i, j), mx, my in zip(x.arrows, x.maps, y.maps):
        if np.any((phi[j] @ mx - my @ phi[i]) % P):
            return False
    return True


def homs(x: Rep, y: Rep) -> list[tuple]:
    """Every morphism x -> y, by exhaustive enumeration."""
    spaces = [list(all_matrices(y.dims[v], x.dims[v])) for v in range(len(x.dims))]
    return [phi for phi in itertools.product(*spaces) if is_hom(x, y, phi)]


def compose(g, f):
    return tuple((a @ b) % P for a, b in zip(g, f))


def add(f, g):
    return tuple((a + b) % P for a, b in zip(f, g))


def key(f):
    return tuple(m.tobytes() for m in f)


def identity(x: Rep):
    return tuple(np.eye(d, dtype=np.int64) for d in x.dims)


def additive_closure(elements, zero) -> dict:
    out = {key(zero): zero}
    frontier = list(out.values())
    gens = list(elements)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                s = add(a, g)
                if key(s) not in out:
                    out[key(s)] = s
                    new.append(s)
        frontier = new
    return out


class BruteStable:
    """Stable category modulo add(t) for a single generator t, decided by
    enumeration against a finite list of test objects."""

    def __init__(self, t: Rep, test_objects: list[Rep]):
        self.t = t
        self.tests = test_objects
        self._ideal: dict = {}
        self._homs: dict = {}

    def homs(self, x, y):
        k = (x.key(), y.key())
        if k not in self._homs:
            self._homs[k] = homs(x, y)
        return self._homs[k]

    def ideal(self, x: Rep, y: Rep) -> dict:
        k = (x.key(), y.key())
        if k not in self._ideal:
            comps = [compose(g, h) for h in self.homs(x, self.t) for g in self.homs(self.t, y)]
            zero = tuple(np.zeros((y.dims[v], x.dims[v]), dtype=np.int64) for v in range(len(x.dims)))
            self._ideal[k] = additive_closure(comps, zero)
        return self._ideal[k]

    def zero(self, f, x, y) -> bool:
        return key(f) in self.ideal(x, y)

    def mono(self, f, x, y) -> bool:
        for u_obj in self.tests:
            for u in self.homs(u_obj, x):
                if self.zero(compose(f, u), u_obj, y) and not self.zero(u, u_obj, x):
                    return False
        return True

    def epi(self, f, x, y) -> bool:
        for v_obj in self.tests:
            for v in self.homs(y, v_obj):
                if self.zero(compose(v, f), x, v_obj) and not self.zero(v, y, v_obj):
                    return False
        return True

    def iso(self, f, x, y) -> bool:
        idx, idy = identity(x), identity(y)
        for g in self.homs(y, x):
            if self.zero(add(compose(g, f), idx), x, x) and self.zero(add(compose(f, g), idy), y, y):
                return True
        return False


# --- kA3 over F_2 with per-vertex dimension at most one --------------------

A3_ARROWS = (("a", 0, 1), ("b", 1, 2))


def a3_small_modules() -> list[Rep]:
    """All 13 representations of 1 -> 2 -> 3 with every dimension <= 1."""
    out = []
    for dims in itertools.product((0, 1), repeat=3):
        choices = []
        for _, i, j in A3_ARROWS:
            choices.append([np.array([[0]]), np.array([[1]])] if dims[i] and dims[j] else [np.zeros((dims[j], dims[i]), dtype=np.int64)])
        for maps in itertools.product(*choices):
            out.append(Rep(dims, A3_ARROWS, tuple(np.asarray(m, dtype=np.int64) for m in maps)))
    return out


def a3_indecomposables() -> list[Rep]:
    """The six interval modules [i, j]."""
    out = []
    for i in range(3):
        for j in range(i, 3):
            dims = tuple(1 if i <= v <= j else 0 for v in range(3))
            maps = tuple(
                np.array([[1]]) if dims[s] and dims[t] else np.zeros((dims[t], dims[s]), dtype=np.int64)
                for _, s, t in A3_ARROWS
            )
            out.append(Rep(dims, A3_ARROWS, maps))
    return out


P1_A3 = Rep((1, 1, 1), A3_ARROWS, (np.array([[1]]), np.array([[1]])))


def a3_in_add_p1(x: Rep) -> bool:
    """x is a sum of copies of P1 exactly when both arrow maps are bijective."""
    a, b = x.maps
    d = x.dims
    return d[0] == d[1] == d[2] and all(
        m.shape[0] == 0 or round(abs(np.linalg.det(m))) % 2 == 1 for m in (a, b)
    )


# --- pullback / pushout corners by enumeration -----------------------------


def _vectors_at(x: Rep, v: int):
    return list(all_vectors(x.dims[v]))


def corner_in_add_p1_pullback(st: BruteStable, f, x: Rep, y: Rep) -> bool:
    """Pullback of f with the precover made of every nonzero map P1 -> y."""
    maps = [p for p in st.homs(P1_A3, y) if any(np.any(m) for m in p)]
    n = len(maps)
    # T_Y = P1^n; its vector at vertex v is in F_2^n and maps by identity arrows
    sets = []
    for v in range(3):
        pts = []
        for xv in _vectors_at(x, v):
            fx = (f[v] @ xv) % P
            for t in all_vectors(n):
                pt = np.zeros(y.dims[v], dtype=np.int64)
                for k in range(n):
                    pt = (pt + t[k] * maps[k][v][:, 0]) % P
                if np.array_equal(fx, pt):
                    pts.append((xv, t))
        sets.append(pts)
    if not (len(sets[0]) == len(sets[1]) == len(sets[2])):
        return False
    for (name, i, j), mx in zip(x.arrows, x.maps):
        seen = set()
        for xv, t in sets[i]:
            img = (((mx @ xv) % P).tobytes(), t.tobytes())
            if img in seen:
                return False
            seen.add(img)
    return True


def corner_in_add_p1_pushout(st: BruteStable, f, x: Rep, y: Rep) -> bool:
    """Pushout of f with the preenvelope made of every nonzero map x -> P1."""
    maps = [m for m in st.homs(x, P1_A3) if any(np.any(c) for c in m)]
    n = len(maps)
    cosets_by_vertex = []
    for v in range(3):
        rel = set()
        for xv in _vectors_at(x, v):
            fy = (f[v] @ xv) % P
            mt = np.array([int((maps[k][v] @ xv)[0] % P) if maps[k][v].size else 0 for k in range(n)], dtype=np.int64)
            rel.add((fy.tobytes(), ((-mt) % P).tobytes()))
        rel_vecs = [(np.frombuffer(a, dtype=np.int64), np.frombuffer(b, dtype=np.int64)) for a, b in rel]

        def canon(yv, t, rel_vecs=rel_vecs):
            return min(
                (((yv + a) % P).tobytes(), ((t + b) % P).tobytes()) for a, b in rel_vecs
            )

        cosets = {}
        for yv in _vectors_at(y, v):
            for t in all_vectors(n):
                cosets.setdefault(canon(yv, t), (yv, t))
        cosets_by_vertex.append((cosets, canon))
    sizes = [len(c[0]) for c in cosets_by_vertex]
    if not (sizes[0] == sizes[1] == sizes[2]):
        return False
    for (name, i, j), my in zip(y.arrows, y.maps):
        cos_i, _ = cosets_by_vertex[i]
        _, canon_j = cosets_by_vertex[j]
        images = set()
        for yv, t in cos_i.values():
            images.add(canon_j((my @ yv) % P, t))
        if len(images) != len(cos_i):
            return False
    return True


# --- Ext^1 for quivers without relations -----------------------------------


def euler_form(x: Rep, y: Rep) -> int:
    s = sum(a * b for a, b in zip(x.dims, y.dims))
    return s - sum(x.dims[i] * y.dims[j] for _, i, j in x.arrows)


def ext1_dim_hereditary(x: Rep, y: Rep) -> int:
    """dim Ext^1 = dim Hom - <dim x, dim y> for a path algebra without relations."""
    hom_dim = len(homs(x, y)).bit_length() - 1
    return hom_dim - euler_form(x, y)
