"""The abelian category of finite-dimensional representations.

Hom spaces are solution spaces of the intertwining equations; kernels,
images and cokernels are computed vertexwise with canonical (row-echelon)
bases, so every construction here is deterministic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import (
    AlgebraMismatch,
    BudgetExceeded,
    ShapeMismatch,
    SourceMismatch,
    TargetMismatch,
    ValidationError,
)
from .linalg import Field, Subspace
from .quiver import Morphism, Representation, check_same_algebra, opposite, projective, zero_module

# --- Hom spaces -------------------------------------------------------------


@dataclass(eq=False)
class HomSpace:
    """A basis of Hom(source, target), stored as a row-echelon subspace of
    flattened vertex maps so coordinates are read off at pivot columns."""

    source: Representation
    target: Representation
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[Morphism]:
        return [Morphism.from_vector(self.source, self.target, row) for row in self.space.basis]

    def element(self, coeffs) -> Morphism:
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        if self.dim == 0:
            return Morphism.zero(self.source, self.target)
        vec = (coeffs @ self.space.basis) % self.space.field.p
        return Morphism.from_vector(self.source, self.target, vec)

    def coordinates(self, f: Morphism) -> np.ndarray | None:
        return self.space.coordinates(f.vector())

    def __contains__(self, f: Morphism) -> bool:
        return self.coordinates(f) is not None


def _offsets(source: Representation, target: Representation) -> dict[str, int]:
    out, k = {}, 0
    for v in source.algebra.vertices:
        out[v] = k
        k += target.dims[v] * source.dims[v]
    return out


def hom_system(m: Representation, n: Representation) -> np.ndarray:
    """Matrix whose null space is Hom(m, n) in flattened coordinates."""
    check_same_algebra(m, n)
    alg = m.algebra
    p = alg.field.p
    off = _offsets(m, n)
    ncols = sum(n.dims[v] * m.dims[v] for v in alg.vertices)
    blocks = []
    for a in alg.quiver.arrows:
        i, j = a.source, a.target
        rows = n.dims[j] * m.dims[i]
        if rows == 0:
            continue
        block = np.zeros((rows, ncols), dtype=np.int64)
        # phi_j M_a - N_a phi_i, row-major vec(A X B) = (A kron B^T) vec(X)
        if m.dims[j] and n.dims[j]:
            block[:, off[j]:off[j] + n.dims[j] * m.dims[j]] += np.kron(np.eye(n.dims[j], dtype=np.int64), m.maps[a.name].T)
        if m.dims[i] and n.dims[i]:
            block[:, off[i]:off[i] + n.dims[i] * m.dims[i]] -= np.kron(n.maps[a.name], np.eye(m.dims[i], dtype=np.int64))
        blocks.append(block % p)
    if not blocks:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def hom(m: Representation, n: Representation) -> HomSpace:
    if m.algebra != n.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    fld = m.field
    system = hom_system(m, n)
    return HomSpace(m, n, fld.kernel_basis(system))


hom_basis = hom


def solve_combination(columns: Sequence[np.ndarray], rhs: np.ndarray, fld: Field) -> np.ndarray | None:
    """Coefficients ``c`` with ``sum c_k columns[k] == rhs``, or None."""
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1)
    if not columns:
        return np.zeros(0, dtype=np.int64) if not np.any(rhs % fld.p) else None
    a = np.stack([np.asarray(c, dtype=np.int64).reshape(-1) for c in columns], axis=1)
    sol = fld.solve_affine(a, rhs)
    return None if sol is None else sol[0]


def lift_through(g: Morphism, f: Morphism) -> Morphism | None:
    """Some ``h`` with ``g @ h == f`` (f factors through g), or None."""
    if not g.target.equals(f.target):
        raise TargetMismatch("lift_through needs a common target")
    space = hom(f.source, g.source)
    c = solve_combination([(g @ b).vector() for b in space.basis], f.vector(), f.field)
    return None if c is None else space.element(c)


def extend_along(g: Morphism, f: Morphism) -> Morphism | None:
    """Some ``h`` with ``h @ g == f`` (f extends along g), or None."""
    if not g.source.equals(f.source):
        raise SourceMismatch("extend_along needs a common source")
    space = hom(g.target, f.target)
    c = solve_combination([(b @ g).vector() for b in space.basis], f.vector(), f.field)
    return None if c is None else space.element(c)


# --- submodules, kernels, images, cokernels --------------------------------


def submodule(m: Representation, columns: Mapping[str, np.ndarray], name: str | None = None) -> Morphism:
    """Inclusion of the submodule spanned vertexwise by ``columns``.

    The spanning vectors are normalised to a row-echelon basis; a
    ValidationError is raised if the subspaces are not arrow-stable.
    """
    fld = m.field
    spaces: dict[str, Subspace] = {}
    for v in m.algebra.vertices:
        cols = np.asarray(columns.get(v, np.zeros((m.dims[v], 0))), dtype=np.int64)
        if cols.size == 0:
            spaces[v] = Subspace.zero(fld, m.dims[v])
        else:
            spaces[v] = fld.span(cols.reshape(m.dims[v], -1).T, m.dims[v])
    return _submodule_from_spaces(m, spaces, name)


def _submodule_from_spaces(m: Representation, spaces: Mapping[str, Subspace], name=None) -> Morphism:
    p = m.field.p
    maps = {}
    for a in m.algebra.quiver.arrows:
        si, sj = spaces[a.source], spaces[a.target]
        img = (m.maps[a.name] @ si.basis.T) % p
        coords = img[list(sj.pivots), :] if sj.dim else np.zeros((0, si.dim), dtype=np.int64)
        if np.any((sj.basis.T @ coords - img) % p):
            raise ValidationError(f"subspace is not stable under arrow {a.name}")
        maps[a.name] = coords
    sub = Representation(m.algebra, {v: s.dim for v, s in spaces.items()}, maps, name=name, validate=False)
    return Morphism(sub, m, {v: s.basis.T for v, s in spaces.items()}, validate=False)


def generated_submodule(m: Representation, vectors: Mapping[str, Sequence], name: str | None = None) -> Morphism:
    """Inclusion of the smallest submodule containing the given vectors
    (``vectors[v]`` is a list of elements of ``m`` at vertex ``v``)."""
    fld = m.field
    spaces = {}
    for v in m.algebra.vertices:
        vecs = [np.asarray(x, dtype=np.int64).reshape(-1) for x in vectors.get(v, ())]
        spaces[v] = fld.span(np.array(vecs), m.dims[v]) if vecs else Subspace.zero(fld, m.dims[v])
    changed = True
    while changed:
        changed = False
        for a in m.algebra.quiver.arrows:
            src, dst = spaces[a.source], spaces[a.target]
            if not src.dim:
                continue
            img = (m.maps[a.name] @ src.basis.T) % fld.p
            if all(col in dst for col in img.T):
                continue
            spaces[a.target] = fld.span(np.concatenate([dst.basis, img.T], axis=0), dst.ambient_dim)
            changed = True
    return _submodule_from_spaces(m, spaces, name)


def kernel(f: Morphism) -> Morphism:
    fld = f.field
    spaces = {v: fld.kernel_basis(f.maps[v]) for v in f.algebra.vertices}
    return _submodule_from_spaces(f.source, spaces)


def image(f: Morphism) -> tuple[Morphism, Morphism]:
    """Epi-mono factorization ``f = mono @ epi``."""
    fld = f.field
    p = fld.p
    spaces = {v: fld.span(f.maps[v].T, f.target.dims[v]) for v in f.algebra.vertices}
    mono = _submodule_from_spaces(f.target, spaces)
    epi_maps = {}
    for v, s in spaces.items():
        epi_maps[v] = f.maps[v][list(s.pivots), :] % p if s.dim else np.zeros((0, f.source.dims[v]), dtype=np.int64)
    epi = Morphism(f.source, mono.source, epi_maps, validate=False)
    return epi, mono


def cokernel(f: Morphism) -> Morphism:
    """Projection ``target -> target / im(f)``."""
    fld = f.field
    p = fld.p
    y = f.target
    q: dict[str, np.ndarray] = {}
    piv: dict[str, list[int]] = {}
    for v in f.algebra.vertices:
        s = fld.kernel_basis(f.maps[v].T) if y.dims[v] else Subspace.zero(fld, 0)
        q[v] = s.basis
        piv[v] = list(s.pivots)
    maps = {}
    for a in f.algebra.quiver.arrows:
        i, j = a.source, a.target
        maps[a.name] = ((q[j] @ y.maps[a.name]) % p)[:, piv[i]]
    c = Representation(f.algebra, {v: len(q[v]) for v in q}, maps, validate=False)
    return Morphism(y, c, q, validate=False)


@dataclass(eq=False)
class Factorization:
    kernel: Morphism
    image_epi: Morphism
    image_mono: Morphism
    cokernel: Morphism


def factorize(f: Morphism) -> Factorization:
    epi, mono = image(f)
    return Factorization(kernel(f), epi, mono, cokernel(f))


def quotient(m: Representation, inclusion: Morphism) -> Morphism:
    if not inclusion.target.equals(m):
        raise TargetMismatch("inclusion must land in the module being quotiented")
    return cokernel(inclusion)


def descend(q: Morphism, h: Morphism) -> Morphism:
    """Given an epimorphism ``q: Z -> C`` and ``h: Z -> W`` vanishing on
    ker(q), the unique ``h'`` with ``h' @ q == h``."""
    fld = q.field
    p = fld.p
    maps = {}
    for v in q.algebra.vertices:
        r = fld.solve_matrix(q.maps[v], np.eye(q.target.dims[v], dtype=np.int64))
        if r is None:
            raise ValidationError("descend needs an epimorphism")
        maps[v] = (h.maps[v] @ r) % p
    out = Morphism(q.target, h.target, maps, validate=False)
    if not (out @ q).equals(h):
        raise ValidationError("morphism does not vanish on the kernel")
    return out


def restrict(j: Morphism, h: Morphism) -> Morphism:
    """Given a monomorphism ``j: K -> Y`` and ``h: X -> Y`` with image in
    im(j), the unique ``h'`` with ``j @ h' == h``."""
    fld = j.field
    maps = {}
    for v in j.algebra.vertices:
        x = fld.solve_matrix(j.maps[v], h.maps[v])
        if x is None:
            raise ValidationError("morphism does not land in the subobject")
        maps[v] = x
    return Morphism(h.source, j.source, maps, validate=False)


# --- direct sums, pullbacks, pushouts --------------------------------------


@dataclass(eq=False)
class Biproduct:
    module: Representation
    summands: list[Representation]
    injections: list[Morphism]
    projections: list[Morphism]


def direct_sum(ms: Sequence[Representation], alg=None, name: str | None = None) -> Biproduct:
    ms = list(ms)
    if not ms:
        if alg is None:
            raise ValueError("empty direct sum needs an algebra")
        return Biproduct(zero_module(alg), [], [], [])
    check_same_algebra(*ms)
    alg = ms[0].algebra
    dims = {v: sum(m.dims[v] for m in ms) for v in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        blk = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        r = c = 0
        for m in ms:
            h, w = m.maps[a.name].shape
            blk[r:r + h, c:c + w] = m.maps[a.name]
            r += h
            c += w
        maps[a.name] = blk
    total = Representation(alg, dims, maps, name=name, validate=False)
    injections, projections = [], []
    offs = {v: 0 for v in alg.vertices}
    for m in ms:
        inj, proj = {}, {}
        for v in alg.vertices:
            e = np.zeros((dims[v], m.dims[v]), dtype=np.int64)
            e[offs[v]:offs[v] + m.dims[v], :] = np.eye(m.dims[v], dtype=np.int64)
            inj[v] = e
            proj[v] = e.T.copy()
            offs[v] += m.dims[v]
        injections.append(Morphism(m, total, inj, validate=False))
        projections.append(Morphism(total, m, proj, validate=False))
    return Biproduct(total, ms, injections, projections)


def hstack(fs: Sequence[Morphism], target: Representation | None = None) -> Morphism:
    """``[f1, f2, ...]: X1 ⊕ X2 ⊕ ... -> Y``."""
    fs = list(fs)
    if not fs:
        if target is None:
            raise ValueError("empty hstack needs a target")
        return Morphism.zero(zero_module(target.algebra), target)
    y = fs[0].target
    for f in fs[1:]:
        if not f.target.equals(y):
            raise TargetMismatch("hstack needs a common target")
    bp = direct_sum([f.source for f in fs])
    maps = {v: np.concatenate([f.maps[v] for f in fs], axis=1) for v in y.algebra.vertices}
    return Morphism(bp.module, y, maps, validate=False)


def vstack(fs: Sequence[Morphism], source: Representation | None = None) -> Morphism:
    """``[f1; f2; ...]: X -> Y1 ⊕ Y2 ⊕ ...``."""
    fs = list(fs)
    if not fs:
        if source is None:
            raise ValueError("empty vstack needs a source")
        return Morphism.zero(source, zero_module(source.algebra))
    x = fs[0].source
    for f in fs[1:]:
        if not f.source.equals(x):
            raise SourceMismatch("vstack needs a common source")
    bp = direct_sum([f.target for f in fs])
    maps = {v: np.concatenate([f.maps[v] for f in fs], axis=0) for v in x.algebra.vertices}
    return Morphism(x, bp.module, maps, validate=False)


@dataclass(eq=False)
class Square:
    """A corner object with its two legs."""

    corner: Representation
    first: Morphism
    second: Morphism


def pullback(f: Morphism, g: Morphism) -> Square:
    """Pullback of ``f: X -> Y`` and ``g: W -> Y``: legs ``Z -> X`` and ``Z -> W``."""
    if not f.target.equals(g.target):
        raise TargetMismatch("pullback needs a common target")
    h = hstack([f, g.scale(-1)])
    k = kernel(h)
    bp = direct_sum([f.source, g.source])
    return Square(k.source, bp.projections[0] @ k, bp.projections[1] @ k)


def pushout(f: Morphism, g: Morphism) -> Square:
    """Pushout of ``f: Y -> X`` and ``g: Y -> W``: legs ``X -> Z`` and ``W -> Z``."""
    if not f.source.equals(g.source):
        raise SourceMismatch("pushout needs a common source")
    h = vstack([f, g.scale(-1)])
    c = cokernel(h)
    bp = direct_sum([f.target, g.target])
    return Square(c.target, c @ bp.injections[0], c @ bp.injections[1])


# --- radical, socle, top, covers and envelopes -----------------------------


def radical(m: Representation) -> Morphism:
    cols = {}
    for v in m.algebra.vertices:
        imgs = [m.maps[a.name] for a in m.algebra.quiver.arrows_to(v)]
        cols[v] = np.concatenate(imgs, axis=1) if imgs else np.zeros((m.dims[v], 0), dtype=np.int64)
    return submodule(m, cols)


def socle(m: Representation) -> Morphism:
    fld = m.field
    spaces = {}
    for v in m.algebra.vertices:
        outs = [m.maps[a.name] for a in m.algebra.quiver.arrows_from(v)]
        if outs:
            spaces[v] = fld.kernel_basis(np.concatenate(outs, axis=0))
        else:
            spaces[v] = Subspace.full(fld, m.dims[v])
    return _submodule_from_spaces(m, spaces)


def top(m: Representation) -> Morphism:
    return cokernel(radical(m))


def radical_socle_top(m: Representation) -> tuple[Morphism, Morphism, Morphism]:
    return radical(m), socle(m), top(m)


def from_projective(m: Representation, v: str, x, pv: Representation | None = None) -> Morphism:
    """The morphism P_v -> m sending the trivial path at ``v`` to ``x``."""
    alg = m.algebra
    pv = pv or projective(alg, v)
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    maps = {}
    for w in alg.vertices:
        paths = alg.paths_between(v, w)
        cols = [(m.path_matrix(path) @ x) % alg.field.p for path in paths]
        maps[w] = np.stack(cols, axis=1) if cols else np.zeros((m.dims[w], 0), dtype=np.int64)
    return Morphism(pv, m, maps)


def projective_cover(m: Representation) -> Morphism:
    """Minimal epimorphism from a sum of indecomposable projectives."""
    alg = m.algebra
    rad = radical(m)
    pieces = []
    for v in alg.vertices:
        lifts = m.field.extend_to_basis(rad.maps[v], m.dims[v])
        if lifts.shape[1]:
            pv = projective(alg, v)
            pieces.extend(from_projective(m, v, lifts[:, k], pv) for k in range(lifts.shape[1]))
    return hstack(pieces, target=m)


def injective_envelope(m: Representation) -> Morphism:
    """Essential monomorphism into a sum of indecomposable injectives,
    obtained as the dual of the projective cover over the opposite algebra."""
    cover = projective_cover(opposite(m))
    env = opposite(cover.source)
    return Morphism(m, env, {v: a.T.copy() for v, a in cover.maps.items()}, validate=False)


def envelope(m: Representation, side: str = "injective") -> Morphism:
    if side == "injective":
        return injective_envelope(m)
    if side == "projective":
        return projective_cover(m)
    raise ValueError(f"side must be 'injective' or 'projective', not {side!r}")


# --- splitting -------------------------------------------------------------


@dataclass(eq=False)
class Splitness:
    is_split_mono: bool
    is_split_epi: bool
    retraction: Morphism | None = None
    section: Morphism | None = None


def section_of(f: Morphism) -> Morphism | None:
    """Some ``s`` with ``f @ s == id``, or None."""
    return lift_through(f, Morphism.identity(f.target))


def retraction_of(f: Morphism) -> Morphism | None:
    """Some ``r`` with ``r @ f == id``, or None."""
    return extend_along(f, Morphism.identity(f.source))


def splitness(f: Morphism) -> Splitness:
    r = retraction_of(f) if f.is_mono() else None
    s = section_of(f) if f.is_epi() else None
    return Splitness(r is not None, s is not None, r, s)


def is_projective(m: Representation) -> bool:
    return section_of(projective_cover(m)) is not None


def is_injective(m: Representation) -> bool:
    return retraction_of(injective_envelope(m)) is not None


# --- isomorphism -----------------------------------------------------------

EXHAUSTIVE_ISO_LIMIT = 4096


def find_isomorphism(m: Representation, n: Representation, seed: int = 0, tries: int = 200) -> Morphism | None:
    """An isomorphism m -> n, or None.

    Exhaustive over projective coefficient classes when the Hom space is
    small; otherwise random combinations (Schwartz-Zippel over F_p), so a
    None answer is then probabilistic.
    """
    if m.dim_vector() != n.dim_vector():
        return None
    if m.is_zero():
        return Morphism.zero(m, n)
    space = hom(m, n)
    d, p = space.dim, m.field.p
    if d == 0:
        return None
    if p ** d <= EXHAUSTIVE_ISO_LIMIT:
        for coeffs in _projective_points(p, d):
            f = space.element(coeffs)
            if f.is_iso():
                return f
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        f = space.element([rng.randrange(p) for _ in range(d)])
        if f.is_iso():
            return f
    return None


def is_isomorphic(m: Representation, n: Representation) -> bool:
    return find_isomorphism(m, n) is not None


def _projective_points(p: int, d: int):
    """Nonzero vectors of F_p^d whose first nonzero entry is 1."""
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + tail


def coefficient_vectors(p: int, d: int, limit: int | None = None):
    """Nonzero coefficient vectors up to scaling, in a fixed order."""
    for k, c in enumerate(_projective_points(p, d)):
        if limit is not None and k >= limit:
            return
        yield c


# --- submodule enumeration -------------------------------------------------

DEFAULT_SUBMODULE_BUDGET = 6


def all_subspaces(fld: Field, n: int) -> Iterable[Subspace]:
    """Every subspace of F_p^n, once each, by enumerating echelon forms."""
    p = fld.p
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                b = np.zeros((k, n), dtype=np.int64)
                for r, pc in enumerate(pivots):
                    b[r, pc] = 1
                for (r, c), val in zip(free, values):
                    b[r, c] = val
                yield Subspace(fld, n, b, tuple(pivots))


def enumerate_submodules(m: Representation, budget: int = DEFAULT_SUBMODULE_BUDGET, force: bool = False) -> list[Morphism]:
    """All submodules of ``m`` as inclusions (exponential; gated by budget)."""
    if m.total_dim > budget:
        raise BudgetExceeded(f"total dimension {m.total_dim} exceeds submodule budget {budget}")
    if m.field.p != 2 and not force:
        raise BudgetExceeded("submodule enumeration runs over F_2 only unless forced")
    alg = m.algebra
    fld = m.field
    p = fld.p
    choices = [list(all_subspaces(fld, m.dims[v])) for v in alg.vertices]
    out = []
    for combo in itertools.product(*choices):
        spaces = dict(zip(alg.vertices, combo))
        ok = True
        for a in alg.quiver.arrows:
            img = (m.maps[a.name] @ spaces[a.source].basis.T) % p
            target = spaces[a.target]
            for col in img.T:
                if col not in target:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(_submodule_from_spaces(m, spaces))
    return out


# --- extensions ------------------------------------------------------------


@dataclass(eq=False)
class ShortExactSequence:
    mono: Morphism
    epi: Morphism

    def validate(self):
        if not self.mono.target.equals(self.epi.source):
            raise ShapeMismatch("sequence maps are not composable")
        if not self.mono.is_mono():
            raise ValidationError("left map is not a monomorphism")
        if not self.epi.is_epi():
            raise ValidationError("right map is not an epimorphism")
        if not (self.epi @ self.mono).is_zero():
            raise ValidationError("composite is not zero")
        for v in self.mono.algebra.vertices:
            if self.mono.source.dims[v] + self.epi.target.dims[v] != self.mono.target.dims[v]:
                raise ValidationError(f"sequence is not exact at vertex {v}")
        return self

    @property
    def middle(self) -> Representation:
        return self.mono.target

    def splits(self) -> bool:
        return section_of(self.epi) is not None


@dataclass(eq=False)
class Ext1:
    """Ext^1(y, t) from the projective presentation 0 -> K -> P -> y -> 0."""

    y: Representation
    t: Representation
    cover: Morphism
    inclusion: Morphism
    cocycle_space: HomSpace
    coboundaries: Subspace
    cocycles: list[Morphism] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.cocycles)

    def is_coboundary(self, c: Morphism) -> bool:
        return c.vector() in self.coboundaries


def ext1(y: Representation, t: Representation) -> Ext1:
    check_same_algebra(y, t)
    fld = y.field
    cover = projective_cover(y)
    inc = kernel(cover)
    space = hom(inc.source, t)
    images = [(g @ inc).vector() for g in hom(cover.source, t).basis]
    ambient = sum(inc.source.dims[v] * t.dims[v] for v in y.algebra.vertices)
    coboundaries = fld.span(np.array(images), ambient) if images else Subspace.zero(fld, ambient)
    reps: list[Morphism] = []
    current = coboundaries
    for b in space.basis:
        if b.vector() not in current:
            reps.append(b)
            current = fld.span(np.concatenate([current.basis, b.vector()[None, :]]), ambient)
    return Ext1(y, t, cover, inc, space, coboundaries, reps)


def extension_from_cocycle(y: Representation, t: Representation, c: Morphism, ext: Ext1 | None = None) -> ShortExactSequence:
    """The extension 0 -> t -> X -> y -> 0 obtained by pushing the
    projective presentation of ``y`` out along the cocycle ``c: K -> t``."""
    ext = ext or ext1(y, t)
    inc = ext.inclusion
    if not (c.source.equals(inc.source) and c.target.equals(t)):
        raise ShapeMismatch("cocycle must be a morphism from the syzygy K to t")
    sq = pushout(inc, c)
    q = hstack([sq.first, sq.second])
    e = descend(q, hstack([ext.cover, Morphism.zero(t, y)]))
    return ShortExactSequence(sq.second, e).validate()
