"""Balance and weak balance of stable categories.

A stable category is balanced when every morphism that is both a
monomorphism and an epimorphism there is an isomorphism, and weakly
balanced when the same holds for strong monomorphisms that are strong
epimorphisms.  Refutations are always certified witness morphisms; the
positive side is either structural (a criterion that settles the question
for every module) or an honest "undetermined" after a bounded search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exceptions import BudgetExceeded, NotApplicable, NotMono, SourceNotInT, StableCatError
from .modules import (
    ShortExactSequence,
    cokernel,
    coefficient_vectors,
    direct_sum,
    enumerate_submodules,
    ext1,
    extend_along,
    extension_from_cocycle,
    image,
    injective_envelope,
    is_projective,
    kernel,
    splitness,
)
from .quiver import Morphism, PathAlgebra, Representation
from .stable import (
    SerreContext,
    StableContext,
    StableVerdict,
    is_stable_epi,
    is_stable_iso,
    is_stable_mono,
    is_stable_strong_epi,
    is_stable_strong_mono,
    torsion_part,
)

BALANCED = "balanced"
NOT_BALANCED = "not_balanced"
NOT_WEAKLY_BALANCED = "not_weakly_balanced"
UNDETERMINED = "undetermined"


@dataclass(eq=False)
class BalanceReport:
    verdict: str
    route: str
    witnesses: dict[str, Morphism] = field(default_factory=dict)
    verdicts: dict[str, StableVerdict] = field(default_factory=dict)
    log: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def witness(self) -> Morphism | None:
        return self.witnesses.get("f")

    def verify(self, ctx: StableContext | None = None) -> bool:
        """Every attached verdict certificate rechecks, and a negative verdict
        has the mono/epi/non-iso pattern it claims."""
        if not all(v.verify(ctx) for v in self.verdicts.values()):
            return False
        if self.verdict == NOT_BALANCED:
            need = {"mono": True, "epi": True, "iso": False}
        elif self.verdict == NOT_WEAKLY_BALANCED:
            need = {"strong_mono": True, "strong_epi": True, "iso": False}
        else:
            return True
        return all(k in self.verdicts and self.verdicts[k].answer == want for k, want in need.items())


# --- Serre classes ---------------------------------------------------------


@dataclass(frozen=True)
class SerreClass:
    """Modules whose composition factors are simples at ``support``."""

    support: frozenset

    def __init__(self, support: Iterable[str]):
        object.__setattr__(self, "support", frozenset(str(v) for v in support))

    def contains(self, m: Representation) -> bool:
        return m.support() <= self.support

    def context(self, algebra: PathAlgebra) -> SerreContext:
        return SerreContext(algebra, self.support)


def _serre(s) -> SerreClass:
    return s if isinstance(s, SerreClass) else SerreClass(s)


def serre_torsion(x: Representation, s) -> ShortExactSequence:
    """The canonical sequence 0 -> t(x) -> x -> x/t(x) -> 0."""
    inc = torsion_part(x, _serre(s).support)
    seq = ShortExactSequence(inc, cokernel(inc))
    seq.validate()
    return seq


@dataclass(frozen=True)
class SerreEquivalence:
    mono_lhs: bool
    mono_rhs: bool
    epi_lhs: bool
    epi_rhs: bool

    @property
    def holds(self) -> bool:
        return self.mono_lhs == self.mono_rhs and self.epi_lhs == self.epi_rhs


def check_serre_prop(f: Morphism, s, ctx: SerreContext | None = None) -> SerreEquivalence:
    """Stable mono/epi of f against support-membership of kernel/cokernel."""
    s = _serre(s)
    ctx = ctx or s.context(f.algebra)
    return SerreEquivalence(
        is_stable_mono(ctx, f).answer,
        s.contains(kernel(f).source),
        is_stable_epi(ctx, f).answer,
        s.contains(cokernel(f).target),
    )


def support_is_union_of_components(algebra: PathAlgebra, support: Iterable[str]) -> bool:
    support = set(support)
    return all((a.source in support) == (a.target in support) for a in algebra.quiver.arrows)


def _mono_epi_report(ctx: StableContext, f: Morphism, report: BalanceReport) -> bool:
    vs = {"mono": is_stable_mono(ctx, f), "epi": is_stable_epi(ctx, f), "iso": is_stable_iso(ctx, f)}
    if vs["mono"].answer and vs["epi"].answer and not vs["iso"].answer:
        report.verdicts.update(vs)
        report.witnesses["f"] = f
        return True
    return False


def check_serre_balance(s, test_modules: Sequence[Representation], algebra: PathAlgebra | None = None) -> BalanceReport:
    """Look for a failure of A = T ⊕ T^perp on the test modules.

    A module whose torsion part is not a summand, or whose torsion-free
    quotient maps nonzero into T, yields a morphism that is mono and epi
    but not iso in the stable category.  If every test module is clean
    the verdict is balanced only when the support is a union of connected
    components of the quiver, which makes the decomposition global.
    """
    s = _serre(s)
    mods = list(test_modules)
    if algebra is None:
        if not mods:
            raise ValueError("need an algebra or at least one test module")
        algebra = mods[0].algebra
    ctx = s.context(algebra)
    report = BalanceReport(UNDETERMINED, "torsion part split and torsion-free part orthogonal to T")
    for n, x in enumerate(mods):
        label = x.name or f"module {n}"
        seq = serre_torsion(x, s)
        free = seq.epi.target
        split = seq.splits()
        mu = ctx.preenvelope(free)
        orthogonal = mu.target.is_zero()
        report.log.append(f"{label}: torsion split={split}, free part maps to T={not orthogonal}")
        candidates = []
        if not orthogonal:
            candidates.append(("kernel of the preenvelope of the torsion-free part", kernel(mu)))
        if not split:
            candidates.append(("torsion-free projection", seq.epi))
        for what, f in candidates:
            if _mono_epi_report(ctx, f, report):
                report.verdict = NOT_BALANCED
                report.route = f"{what} of {label} is mono and epi but not iso"
                return report
            report.log.append(f"{label}: {what} did not certify (unexpected)")
        if candidates:
            raise StableCatError(f"{label} breaks the decomposition but no witness certified")
    report.stats["components"] = support_is_union_of_components(algebra, s.support)
    if report.stats["components"]:
        report.verdict = BALANCED
        report.route = "support is a union of connected components, so every module splits into T and its complement"
    return report


# --- weak balance ----------------------------------------------------------


@dataclass(eq=False)
class GeneratorCheck:
    generator: Representation
    envelope: Morphism
    envelope_projective: bool
    restriction_rank: int
    witness: Morphism | None

    @property
    def passed(self) -> bool:
        return self.generator.is_zero() or self.restriction_rank > 0


@dataclass(eq=False)
class WeakBalanceReport:
    checks: list[GeneratorCheck]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


def check_weak_balance_sufficient(ctx: StableContext) -> WeakBalanceReport:
    """For each generator, does some map into T extend along its injective
    envelope with nonzero restriction?  All passing implies weak balance."""
    ctx.require_projective("check_weak_balance_sufficient")
    checks = []
    for t in ctx.generators:
        eps = injective_envelope(t)
        e = eps.target
        rank, witness = 0, None
        if not t.is_zero():
            rows = []
            for tj in ctx.generators:
                for g in ctx.hom(e, tj).basis:
                    r = g @ eps
                    if not r.is_zero() and witness is None:
                        witness = r
                    rows.append(r.vector())
                if rows:
                    rank = max(rank, t.field.rank(np.array(rows)))
                    rows = []
        checks.append(GeneratorCheck(t, eps, is_projective(e), rank, witness))
    return WeakBalanceReport(checks)


def check_map_detects_mono(ctx: StableContext, j: Morphism) -> StableVerdict:
    """Is there a map h: X -> T_i with h∘j nonzero, for a mono j: T -> X?"""
    if not j.is_mono():
        raise NotMono("expected a monomorphism")
    if not ctx.contains(j.source):
        raise SourceNotInT("source of the monomorphism is not in add(T)")
    v = StableVerdict(False, "some map into a generator is nonzero on the image", {"j": j})
    for t in ctx.generators:
        for h in ctx.hom(j.target, t).basis:
            if not (h @ j).is_zero():
                v.answer = True
                v.certificate["h"] = h
                return v
    return v


@dataclass(eq=False)
class CoincidenceSearch:
    status: str  # "witness" or "exhausted"
    witness: Morphism | None
    tried: int
    log: list[str] = field(default_factory=list)


def _coincides(mu: Morphism, h: Morphism) -> bool:
    """Is there a map X -> im(h∘mu) agreeing with h on the image of mu?"""
    e, _ = image(h @ mu)
    return extend_along(mu, e) is not None


def search_coincidence_failure(ctx: StableContext, mu: Morphism, budget: int = 10000) -> CoincidenceSearch:
    """Search maps h: X -> T' such that nothing X -> (h∘mu)(T) agrees with h
    on T, for a non-split mono mu: T -> X.  Only a found witness is
    conclusive; "exhausted" reports the enumeration ran dry."""
    ctx.require_projective("search_coincidence_failure")
    if not mu.is_mono():
        raise NotMono("expected a monomorphism")
    if not ctx.contains(mu.source):
        raise SourceNotInT("source of the monomorphism is not in add(T)")
    if splitness(mu).is_split_mono:
        raise NotApplicable("split monomorphisms are outside the condition")
    x = mu.target
    tried = 0

    def candidates() -> Iterator[Morphism]:
        yield ctx.preenvelope(x)
        targets = list(ctx.generators)
        if len(targets) > 1:
            targets.append(direct_sum(ctx.generators).module)
        for t in targets:
            space = ctx.hom(x, t)
            for c in coefficient_vectors(x.field.p, space.dim):
                yield space.element(c)

    for h in candidates():
        if tried >= budget:
            break
        tried += 1
        if not _coincides(mu, h):
            return CoincidenceSearch("witness", h, tried)
    return CoincidenceSearch("exhausted", None, tried)


# names used by the operation catalogue
check_thm54_cond5 = check_map_detects_mono
check_thm46_cond3 = search_coincidence_failure


# --- counterexample search -------------------------------------------------


def _candidates(ctx: StableContext, mods: list[Representation], seed: int) -> Iterator[tuple[str, Morphism]]:
    fld = ctx.algebra.field
    live = [m for m in mods if not ctx.contains(m)]
    pairs = [(x, y) for x in live for y in live]
    label = {id(m): m.name or f"#{k}" for k, m in enumerate(mods)}

    for x, y in pairs:
        for k, b in enumerate(ctx.hom(x, y).basis):
            yield f"hom basis {k} {label[id(x)]}->{label[id(y)]}", b

    for x in live:
        for t in ctx.generators:
            for k, b in enumerate(ctx.hom(t, x).basis):
                _, inc = image(b)
                if ctx.contains(inc.source) and not inc.source.is_zero():
                    yield f"projection of {label[id(x)]} onto quotient by image {k} of {t.name or 'generator'}", cokernel(inc)
        if fld.p == 2:
            try:
                subs = enumerate_submodules(x)
            except BudgetExceeded:
                subs = []
            for k, inc in enumerate(subs):
                if not inc.source.is_zero() and ctx.contains(inc.source):
                    yield f"projection of {label[id(x)]} by submodule {k}", cokernel(inc)

    for y in live:
        for t in ctx.generators:
            ext = ext1(y, t)
            for k, c in enumerate(ext.cocycles):
                seq = extension_from_cocycle(y, t, c, ext)
                yield f"extension {k} of {label[id(y)]} by {t.name or 'generator'}", seq.epi

    rng = random.Random(seed)
    for x, y in pairs:
        space = ctx.hom(x, y)
        if space.dim < 2:
            continue
        for _ in range(4):
            c = [rng.randrange(fld.p) for _ in range(space.dim)]
            yield f"random combination {label[id(x)]}->{label[id(y)]}", space.element(c)


def search_counterexample(
    ctx: StableContext,
    test_modules: Sequence[Representation],
    mode: str = "balance",
    budget: int = 10000,
    seed: int = 0,
) -> BalanceReport:
    """Try structured candidate morphisms in a fixed order; the first one that
    is (strong) mono and (strong) epi but not iso refutes (weak) balance."""
    if mode not in ("balance", "weak_balance"):
        raise ValueError(f"mode must be 'balance' or 'weak_balance', not {mode!r}")
    mods = list(test_modules)
    report = BalanceReport(UNDETERMINED, "no counterexample among the candidates")
    tried = 0
    exhausted = True
    for what, f in _candidates(ctx, mods, seed):
        if tried >= budget:
            exhausted = False
            break
        tried += 1
        # a stably zero map is never a counterexample: if either end is
        # outside add(T) its identity refutes mono or epi, otherwise f is iso
        if f.vector() in ctx.ideal(f.source, f.target):
            continue
        if mode == "balance":
            a = is_stable_mono(ctx, f)
            if not a.answer:
                continue
            b = is_stable_epi(ctx, f)
            if not b.answer:
                continue
            names = ("mono", "epi")
        else:
            a = is_stable_strong_mono(ctx, f)
            if not a.answer:
                continue
            b = is_stable_strong_epi(ctx, f)
            if not b.answer:
                continue
            names = ("strong_mono", "strong_epi")
        c = is_stable_iso(ctx, f)
        if c.answer:
            continue
        report.verdict = NOT_BALANCED if mode == "balance" else NOT_WEAKLY_BALANCED
        report.route = f"{what}: certified {names[0]} and {names[1]} but not iso"
        report.witnesses["f"] = f
        report.verdicts.update({names[0]: a, names[1]: b, "iso": c})
        for extra, fn in (("mono", is_stable_mono), ("epi", is_stable_epi),
                          ("strong_mono", is_stable_strong_mono), ("strong_epi", is_stable_strong_epi)):
            if extra not in report.verdicts:
                report.verdicts[extra] = fn(ctx, f)
        break
    report.stats.update(candidates=tried, candidates_exhausted=exhausted and report.verdict == UNDETERMINED, seed=seed)
    report.log.append(f"tried {tried} candidate morphisms")
    return report


# --- hereditary case -------------------------------------------------------


@dataclass(eq=False)
class HereditaryReport:
    verdict: str
    hypothesis: dict[str, bool]
    closure: dict[str, bool]
    failure: tuple[Representation, Morphism] | None = None
    log: list[str] = field(default_factory=list)

    @property
    def hypothesis_holds(self) -> bool:
        return all(self.hypothesis.values())

    @property
    def closure_holds(self) -> bool:
        return all(self.closure.values())


def check_hereditary(
    ctx: StableContext,
    test_modules: Sequence[Representation],
    budget: int = 6,
    force: bool = False,
) -> HereditaryReport:
    """Audit that submodules of generators are projective, then test whether
    the modules with no maps into T are closed under submodules (on the
    corpus).  The verdict follows the hereditary criterion when the audit
    passes: closure means balanced, a failing submodule means not balanced."""
    ctx.require_projective("check_hereditary")
    hyp, clo = {}, {}
    failure = None
    log = []
    for k, t in enumerate(ctx.generators):
        name = t.name or f"generator {k}"
        subs = enumerate_submodules(t, budget=budget, force=force)
        hyp[name] = all(is_projective(s.source) for s in subs)
        log.append(f"{name}: {len(subs)} submodules, all projective={hyp[name]}")

    def orthogonal(m: Representation) -> bool:
        return all(ctx.hom(m, t).dim == 0 for t in ctx.generators)

    for k, x in enumerate(test_modules):
        name = x.name or f"module {k}"
        if not orthogonal(x):
            continue
        subs = enumerate_submodules(x, budget=budget, force=force)
        bad = next((s for s in subs if not orthogonal(s.source)), None)
        clo[name] = bad is None
        if bad is not None and failure is None:
            failure = (x, bad)
        log.append(f"{name}: {len(subs)} submodules, closure={clo[name]}")
    if not all(hyp.values()):
        verdict = UNDETERMINED
    else:
        verdict = BALANCED if all(clo.values()) else NOT_BALANCED
    return HereditaryReport(verdict, hyp, clo, failure, log)
