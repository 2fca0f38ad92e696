"""Computations in the stable category A/<T>.

A morphism is stably zero when it factors through an object of add(T).
Every decision procedure returns a :class:`StableVerdict` whose
certificate is a dictionary of named morphisms together with linear
relations between their composites, so any answer can be re-checked
without trusting the code that produced it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .exceptions import (
    NotProjectiveGenerator,
    NotStableEpi,
    NotStrongMono,
    StableCatError,
    ValidationError,
)
from .linalg import Subspace
from .modules import (
    HomSpace,
    cokernel,
    extend_along,
    generated_submodule,
    hom,
    hstack,
    image,
    is_projective,
    kernel,
    lift_through,
    pullback,
    pushout,
    section_of,
    solve_combination,
    splitness,
    submodule,
    vstack,
)
from .quiver import Morphism, PathAlgebra, Representation, check_same_algebra, opposite

# A relation is a list of terms (coefficient, names); names are listed in
# the order the morphisms are applied, so ("h", "g") stands for g∘h.
Term = tuple[int, tuple[str, ...]]


def fingerprint(m: Representation) -> tuple:
    arrows = m.algebra.quiver.arrows
    return (m.dim_vector(), tuple(m.maps[a.name].tobytes() for a in arrows))


@dataclass(eq=False)
class StableVerdict:
    """Answer of a decision procedure plus the data that justifies it.

    ``relations`` must all evaluate to the zero morphism.  ``refutations``
    lists claims of the form (kind, name) that back a negative answer and
    can only be rechecked against a context: ``not_stable_zero`` (the named
    morphism does not factor through T) and ``no_section`` (the named
    epimorphism has no section).
    """

    answer: bool
    route: str
    certificate: dict[str, Morphism] = field(default_factory=dict)
    relations: list[list[Term]] = field(default_factory=list)
    refutations: list[tuple[str, str]] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def composite(self, names: Sequence[str]) -> Morphism:
        out = self.certificate[names[0]]
        for n in names[1:]:
            out = self.certificate[n] @ out
        return out

    def failed_relations(self) -> list[int]:
        bad = []
        for k, rel in enumerate(self.relations):
            total = None
            for coef, names in rel:
                term = self.composite(names).scale(coef)
                total = term if total is None else total + term
            if total is not None and not total.is_zero():
                bad.append(k)
        return bad

    def verify(self, ctx: "StableContext | None" = None) -> bool:
        """Recheck every relation; with a context, also recheck refutations."""
        try:
            if self.failed_relations():
                return False
        except (ValidationError, KeyError):
            return False
        if ctx is None:
            return True
        for kind, name in self.refutations:
            f = self.certificate[name]
            if kind == "not_stable_zero" and ctx.factor(f) is not None:
                return False
            if kind == "no_section" and section_of(f) is not None:
                return False
        return True


class StableContext:
    """The stable category of modules over ``algebra`` modulo add(generators).

    Hom spaces and approximations are cached per module (by content), so
    repeated decisions on the same objects are cheap.  Projectivity of the
    generators is checked once; operations that rely on it raise
    :class:`NotProjectiveGenerator` otherwise.
    """

    def __init__(self, algebra: PathAlgebra, generators: Iterable[Representation], name: str | None = None):
        gens = list(generators)
        if not gens:
            raise ValidationError("a stable context needs at least one generator")
        for g in gens:
            if g.algebra != algebra:
                raise ValidationError(f"generator {g.name or g!r} lives over a different algebra")
        self.algebra = algebra
        self.generators = gens
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()
        self.projective_flags = [is_projective(g) for g in gens]

    @property
    def projective(self) -> bool:
        return all(self.projective_flags)

    def require_projective(self, op: str):
        if not self.projective:
            bad = [g.name or repr(g) for g, ok in zip(self.generators, self.projective_flags) if not ok]
            raise NotProjectiveGenerator(f"{op} needs projective generators; not projective: {', '.join(bad)}")

    def opposite(self) -> "StableContext":
        return StableContext(self.algebra.opposite(), [opposite(g) for g in self.generators], self.name)

    def _cached(self, key, build: Callable):
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        value = build()
        with self._lock:
            return self._cache.setdefault(key, value)

    # --- cached building blocks -----------------------------------------

    def hom(self, x: Representation, y: Representation) -> HomSpace:
        return self._cached(("hom", fingerprint(x), fingerprint(y)), lambda: hom(x, y))

    def precover(self, m: Representation) -> Morphism:
        def build():
            pieces = [b for g in self.generators for b in hom(g, m).basis]
            return hstack(pieces, target=m)

        return self._cached(("precover", fingerprint(m)), build)

    def preenvelope(self, m: Representation) -> Morphism:
        def build():
            pieces = [b for g in self.generators for b in hom(m, g).basis]
            return vstack(pieces, source=m)

        return self._cached(("preenvelope", fingerprint(m)), build)

    def ideal(self, x: Representation, y: Representation) -> Subspace:
        def build():
            vecs = []
            for g in self.generators:
                for h in self.hom(x, g).basis:
                    vecs.extend((k @ h).vector() for k in self.hom(g, y).basis)
            ambient = sum(x.dims[v] * y.dims[v] for v in x.algebra.vertices)
            return x.field.span(np.array(vecs), ambient) if vecs else Subspace.zero(x.field, ambient)

        return self._cached(("ideal", fingerprint(x), fingerprint(y)), build)

    def factor(self, f: Morphism) -> tuple[Morphism, Morphism] | None:
        """``(through, then)`` with ``then @ through == f`` and ``through`` the
        preenvelope of the source, or None when f is not stably zero."""
        mu = self.preenvelope(f.source)
        space = self.hom(mu.target, f.target)
        c = solve_combination([(b @ mu).vector() for b in space.basis], f.vector(), f.field)
        return None if c is None else (mu, space.element(c))

    def contains(self, m: Representation) -> bool:
        return section_of(self.precover(m)) is not None


# --- ideal, stable Hom, approximations -------------------------------------


def ideal_basis(ctx: StableContext, x: Representation, y: Representation) -> Subspace:
    """Morphisms x -> y factoring through add(T), as flattened vectors."""
    check_same_algebra(x, y)
    return ctx.ideal(x, y)


def stable_hom_dim(ctx: StableContext, x: Representation, y: Representation) -> int:
    return ctx.hom(x, y).dim - ideal_basis(ctx, x, y).dim


def approximation(ctx: StableContext, m: Representation, side: str = "precover") -> Morphism:
    if side == "precover":
        return ctx.precover(m)
    if side == "preenvelope":
        return ctx.preenvelope(m)
    raise ValueError(f"side must be 'precover' or 'preenvelope', not {side!r}")


def loop_suspension(ctx: StableContext, m: Representation, side: str = "loop") -> Representation:
    if side == "loop":
        return kernel(ctx.precover(m)).source
    if side == "suspension":
        return cokernel(ctx.preenvelope(m)).target
    raise ValueError(f"side must be 'loop' or 'suspension', not {side!r}")


def loop(ctx: StableContext, m: Representation) -> Representation:
    return loop_suspension(ctx, m, "loop")


def suspension(ctx: StableContext, m: Representation) -> Representation:
    return loop_suspension(ctx, m, "suspension")


# --- verdict helpers -------------------------------------------------------


def _attach_zero(v: StableVerdict, ctx: StableContext, name: str, prefix: str) -> bool:
    """Decide whether certificate[name] is stably zero and record why."""
    f = v.certificate[name]
    fac = ctx.factor(f)
    if fac is None:
        v.refutations.append(("not_stable_zero", name))
        return False
    through, then = fac
    v.certificate[f"{prefix}_through"] = through
    v.certificate[f"{prefix}_then"] = then
    v.relations.append([(1, (f"{prefix}_through", f"{prefix}_then")), (-1, (name,))])
    return True


def _attach_in_add(v: StableVerdict, ctx: StableContext, m: Representation, prefix: str) -> bool:
    p = ctx.precover(m)
    s = section_of(p)
    v.certificate[f"{prefix}_precover"] = p
    if s is None:
        v.refutations.append(("no_section", f"{prefix}_precover"))
        return False
    v.certificate[f"{prefix}_section"] = s
    v.certificate[f"{prefix}_id"] = Morphism.identity(m)
    v.relations.append([(1, (f"{prefix}_section", f"{prefix}_precover")), (-1, (f"{prefix}_id",))])
    return True


# --- decisions -------------------------------------------------------------


def is_stable_zero(ctx: StableContext, f: Morphism) -> StableVerdict:
    in_ideal = f.vector() in ideal_basis(ctx, f.source, f.target)
    v = StableVerdict(False, "factorization through the preenvelope of the source", {"f": f})
    v.answer = _attach_zero(v, ctx, "f", "factor")
    if v.answer != in_ideal:
        raise StableCatError("ideal membership and preenvelope factorization disagree")
    return v


def is_in_add(ctx: StableContext, m: Representation) -> StableVerdict:
    v = StableVerdict(False, "section of the canonical precover")
    v.answer = _attach_in_add(v, ctx, m, "m")
    return v


def is_stable_mono(ctx: StableContext, f: Morphism) -> StableVerdict:
    p = ctx.precover(f.target)
    sq = pullback(f, p)
    v = StableVerdict(
        False,
        "pullback along the canonical precover of the target; leg to the source tested for factoring through T",
        {"f": f, "precover": p, "leg": sq.first, "other_leg": sq.second},
    )
    v.relations.append([(1, ("leg", "f")), (-1, ("other_leg", "precover"))])
    v.answer = _attach_zero(v, ctx, "leg", "leg")
    if f.is_epi() and ctx.projective:
        # for an epimorphism, stable monos are exactly those whose kernel
        # inclusion factors through T
        k = kernel(f)
        v.details["kernel_inclusion_factors"] = ctx.factor(k) is not None
        v.details["routes_agree"] = v.details["kernel_inclusion_factors"] == v.answer
    return v


def is_stable_epi(ctx: StableContext, f: Morphism) -> StableVerdict:
    mu = ctx.preenvelope(f.source)
    sq = pushout(f, mu)
    v = StableVerdict(
        False,
        "pushout along the canonical preenvelope of the source; leg from the target tested for factoring through T",
        {"f": f, "preenvelope": mu, "leg": sq.first, "other_leg": sq.second},
    )
    v.relations.append([(1, ("f", "leg")), (-1, ("preenvelope", "other_leg"))])
    v.answer = _attach_zero(v, ctx, "leg", "leg")
    if f.is_epi() and ctx.projective:
        ok, witness = kernel_coincidence(ctx, f)
        v.details["kernel_coincidence"] = ok
        v.details["routes_agree"] = ok == v.answer
    return v


def kernel_coincidence(ctx: StableContext, f: Morphism) -> tuple[bool, Morphism | None]:
    """For an epimorphism f with kernel K: is there a map X -> mu(K) agreeing
    with the preenvelope mu on K?  Returns the answer and such a map."""
    k = kernel(f)
    mu = ctx.preenvelope(f.source)
    q, _ = image(mu @ k)
    t = extend_along(k, q)
    return t is not None, t


def is_stable_strong_mono(ctx: StableContext, f: Morphism) -> StableVerdict:
    p = ctx.precover(f.target)
    sq = pullback(f, p)
    v = StableVerdict(
        False,
        "corner of the pullback along the canonical precover tested for membership in add(T)",
        {"f": f, "precover": p, "leg": sq.first, "other_leg": sq.second},
    )
    v.relations.append([(1, ("leg", "f")), (-1, ("other_leg", "precover"))])
    v.answer = _attach_in_add(v, ctx, sq.corner, "corner")
    if f.is_epi() and ctx.projective:
        v.details["kernel_in_add"] = ctx.contains(kernel(f).source)
        v.details["routes_agree"] = v.details["kernel_in_add"] == v.answer
    return v


def is_stable_strong_epi(ctx: StableContext, f: Morphism) -> StableVerdict:
    mu = ctx.preenvelope(f.source)
    sq = pushout(f, mu)
    v = StableVerdict(
        False,
        "corner of the pushout along the canonical preenvelope tested for membership in add(T)",
        {"f": f, "preenvelope": mu, "leg": sq.first, "other_leg": sq.second},
    )
    v.relations.append([(1, ("f", "leg")), (-1, ("preenvelope", "other_leg"))])
    v.answer = _attach_in_add(v, ctx, sq.corner, "corner")
    if f.is_epi() and ctx.projective:
        _, j = image(mu @ kernel(f))
        v.details["kernel_image_splits"] = splitness(j).is_split_mono
        v.details["routes_agree"] = v.details["kernel_image_splits"] == v.answer
    return v


def _one_sided_inverse(ctx: StableContext, f: Morphism, side: str):
    """Solve g∘f - id_X = u∘mu^X (side 'left') or f∘g - id_Y = u∘mu^Y
    (side 'right') for g: Y -> X and u, as one affine system."""
    x, y = f.source, f.target
    base = x if side == "left" else y
    mu = ctx.preenvelope(base)
    gs = ctx.hom(y, x).basis
    us = ctx.hom(mu.target, base).basis
    cols = [((g @ f) if side == "left" else (f @ g)).vector() for g in gs]
    cols += [(u @ mu).scale(-1).vector() for u in us]
    c = solve_combination(cols, Morphism.identity(base).vector(), f.field)
    if c is None:
        return None
    n = len(gs)
    g = sum((b.scale(int(k)) for b, k in zip(gs, c[:n])), Morphism.zero(y, x))
    u = sum((b.scale(int(k)) for b, k in zip(us, c[n:])), Morphism.zero(mu.target, base))
    return g, mu, u


def is_stable_iso(ctx: StableContext, f: Morphism) -> StableVerdict:
    x, y = f.source, f.target
    v = StableVerdict(False, "two-sided inverse modulo the ideal, by affine solvability", {"f": f})
    left = _one_sided_inverse(ctx, f, "left")
    right = _one_sided_inverse(ctx, f, "right")
    v.details["left_inverse"] = left is not None
    v.details["right_inverse"] = right is not None
    if left is not None and right is not None:
        g1, mu_x, u1 = left
        g2, mu_y, u2 = right
        v.certificate.update(
            g_left=g1, mu_source=mu_x, u_left=u1, id_source=Morphism.identity(x),
            g_right=g2, mu_target=mu_y, u_right=u2, id_target=Morphism.identity(y),
        )
        v.relations.append([(1, ("f", "g_left")), (-1, ("id_source",)), (-1, ("mu_source", "u_left"))])
        v.relations.append([(1, ("g_right", "f")), (-1, ("id_target",)), (-1, ("mu_target", "u_right"))])
        v.certificate["inverse_difference"] = g1 - g2
        if not _attach_zero(v, ctx, "inverse_difference", "difference"):
            raise StableCatError("left and right stable inverses differ")
        v.answer = True
    if f.is_epi() and ctx.projective:
        v.details["split_epi_kernel_in_add"] = splitness(f).is_split_epi and ctx.contains(kernel(f).source)
        v.details["routes_agree"] = v.details["split_epi_kernel_in_add"] == v.answer
    return v


# --- representatives -------------------------------------------------------


def epi_representative(ctx: StableContext, f: Morphism) -> Morphism:
    """An epimorphism ``[f, g]: X ⊕ T -> Y`` stably equal to ``f``.

    The cokernel projection of f is stably zero, so it factors as p∘mu
    through the preenvelope of Y; g is a lift of p along the cokernel
    projection, which exists because T is projective.
    """
    ctx.require_projective("epi_representative")
    if not is_stable_epi(ctx, f).answer:
        raise NotStableEpi("morphism is not an epimorphism in the stable category")
    c = cokernel(f)
    fac = ctx.factor(c)
    if fac is None:
        raise StableCatError("cokernel projection of a stable epimorphism must factor through T")
    _, p = fac
    g = lift_through(c, p)
    if g is None:
        raise StableCatError("lift through the cokernel failed for a projective generator sum")
    out = hstack([f, g])
    if not out.is_epi():
        raise StableCatError("epi representative is not surjective")
    return out


def strong_mono_representative(ctx: StableContext, f: Morphism) -> Morphism:
    """``[f, p_Y]: X ⊕ T_Y -> Y``, whose kernel lies in add(T)."""
    if not is_stable_strong_mono(ctx, f).answer:
        raise NotStrongMono("morphism is not a strong monomorphism in the stable category")
    g = hstack([f, ctx.precover(f.target)])
    if not ctx.contains(kernel(g).source):
        raise StableCatError("kernel of the strong mono representative is not in add(T)")
    return g


# --- Serre classes ---------------------------------------------------------


def torsion_part(m: Representation, support: Iterable[str]) -> Morphism:
    """Inclusion of the largest submodule supported on ``support``.

    Start from the full spaces at supported vertices and repeatedly drop
    vectors whose arrow images leave the candidate, until nothing changes.
    """
    support = set(support)
    fld = m.field
    spaces = {
        v: Subspace.full(fld, m.dims[v]) if v in support else Subspace.zero(fld, m.dims[v])
        for v in m.algebra.vertices
    }
    changed = True
    while changed:
        changed = False
        for a in m.algebra.quiver.arrows:
            src, dst = spaces[a.source], spaces[a.target]
            if not src.dim:
                continue
            # rows annihilating dst; keep c with q @ M_a @ B c = 0
            q = fld.kernel_basis(dst.basis).basis if dst.ambient_dim else np.zeros((0, 0), dtype=np.int64)
            cond = (q @ m.maps[a.name] @ src.basis.T) % fld.p
            if not np.any(cond):
                continue
            keep = fld.kernel_basis(cond)
            new = (keep.basis @ src.basis) % fld.p
            spaces[a.source] = fld.span(new, src.ambient_dim)
            changed = True
    cols = {v: s.basis.T for v, s in spaces.items()}
    return submodule(m, cols)


def outside_part(m: Representation, support: Iterable[str]) -> Morphism:
    """Inclusion of the submodule generated by the spaces off ``support``."""
    support = set(support)
    vectors = {v: list(np.eye(m.dims[v], dtype=np.int64)) for v in m.algebra.vertices if v not in support}
    return generated_submodule(m, vectors)


class SerreContext(StableContext):
    """A stable context where T is the Serre class of modules supported on a
    vertex set.  Approximations are the torsion inclusion and the quotient by
    the part generated off the support; no projectivity is assumed."""

    def __init__(self, algebra: PathAlgebra, support: Iterable[str], name: str | None = None):
        support = set(support)
        unknown = support - set(algebra.vertices)
        if unknown:
            raise ValidationError(f"Serre support names unknown vertices {sorted(unknown)}")
        self.algebra = algebra
        self.support = frozenset(support)
        self.generators = []
        self.name = name
        self._cache = {}
        self._lock = threading.Lock()
        self.projective_flags = [False]

    def opposite(self) -> "SerreContext":
        return SerreContext(self.algebra.opposite(), self.support, self.name)

    def supported(self, m: Representation) -> bool:
        return m.support() <= self.support

    def precover(self, m: Representation) -> Morphism:
        return self._cached(("precover", fingerprint(m)), lambda: torsion_part(m, self.support))

    def preenvelope(self, m: Representation) -> Morphism:
        return self._cached(("preenvelope", fingerprint(m)), lambda: cokernel(outside_part(m, self.support)))

    def ideal(self, x: Representation, y: Representation) -> Subspace:
        def build():
            mu = self.preenvelope(x)
            vecs = [(b @ mu).vector() for b in self.hom(mu.target, y).basis]
            ambient = sum(x.dims[v] * y.dims[v] for v in x.algebra.vertices)
            return x.field.span(np.array(vecs), ambient) if vecs else Subspace.zero(x.field, ambient)

        return self._cached(("ideal", fingerprint(x), fingerprint(y)), build)

    def contains(self, m: Representation) -> bool:
        return self.supported(m)
