"""Built-in scenarios: small algebras with named modules, morphisms and the
facts we expect to hold about them.

Convention: an arrow ``a: i -> j`` acts as a linear map M_i -> M_j and
``projective(v)`` is spanned by the paths starting at ``v``.  Algebras given
in the literature by left modules over kQ/I are therefore entered here on the
opposite quiver with reversed relations, so that ``projective(v)`` is the
left ideal generated by the idempotent at v.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .exceptions import UnknownScenario
from .linalg import Field
from .modules import (
    cokernel,
    descend,
    direct_sum,
    from_projective,
    generated_submodule,
    hom,
    hstack,
    injective_envelope,
    is_isomorphic,
    is_projective,
    projective_cover,
    socle,
)
from .quiver import Morphism, PathAlgebra, Quiver, Representation, injective, projective, simple
from .stable import SerreContext, StableContext


@dataclass(frozen=True)
class Fact:
    """``check`` applied to the named entities ``args`` should give ``expected``."""

    check: str
    args: tuple[str, ...]
    expected: Any
    label: str


@dataclass(eq=False)
class Scenario:
    name: str
    algebra: PathAlgebra
    modules: dict[str, Representation]
    morphisms: dict[str, Morphism]
    subcategories: dict[str, list[str]] = field(default_factory=dict)
    serre: dict[str, list[str]] = field(default_factory=dict)
    facts: list[Fact] = field(default_factory=list)
    corpus: list[str] = field(default_factory=list)
    notes: str = ""

    def context(self, sub: str | None = None) -> StableContext:
        sub = sub or next(iter(self.subcategories))
        return StableContext(self.algebra, [self.modules[n] for n in self.subcategories[sub]], sub)

    def serre_context(self, name: str | None = None) -> SerreContext:
        name = name or next(iter(self.serre))
        return SerreContext(self.algebra, self.serre[name], name)

    def corpus_modules(self) -> list[Representation]:
        names = self.corpus or list(self.modules)
        return [self.modules[n] for n in names]

    def evaluate(self, fact: Fact):
        return CHECKS[fact.check](self, *fact.args)

    def check_facts(self) -> list[tuple[Fact, Any, bool]]:
        out = []
        for fact in self.facts:
            got = self.evaluate(fact)
            out.append((fact, got, got == fact.expected))
        return out


# --- fact evaluators -------------------------------------------------------


def _stable(op: str) -> Callable:
    def run(sc: Scenario, f: str, sub: str = "T"):
        from . import stable

        return getattr(stable, op)(sc.context(sub), sc.morphisms[f]).answer

    return run


def _weak_balance(sc: Scenario, sub: str = "T"):
    from .balance import check_weak_balance_sufficient

    return check_weak_balance_sufficient(sc.context(sub)).all_pass


def _search(mode: str) -> Callable:
    def run(sc: Scenario, sub: str = "T"):
        from .balance import search_counterexample

        return search_counterexample(sc.context(sub), sc.corpus_modules(), mode=mode).verdict

    return run


def _serre_balance(sc: Scenario, name: str):
    from .balance import check_serre_balance

    return check_serre_balance(sc.serre[name], sc.corpus_modules(), sc.algebra).verdict


def _serre_witness(sc: Scenario, name: str, f: str):
    from .balance import check_serre_balance

    rep = check_serre_balance(sc.serre[name], sc.corpus_modules(), sc.algebra)
    return rep.witness is not None and rep.witness.equals(sc.morphisms[f])


CHECKS: dict[str, Callable] = {
    "hom_dim": lambda sc, x, y: hom(sc.modules[x], sc.modules[y]).dim,
    "stable_hom_dim": lambda sc, x, y, sub="T": _stable_hom_dim(sc, x, y, sub),
    "stable_zero": _stable("is_stable_zero"),
    "stable_mono": _stable("is_stable_mono"),
    "stable_epi": _stable("is_stable_epi"),
    "strong_mono": _stable("is_stable_strong_mono"),
    "strong_epi": _stable("is_stable_strong_epi"),
    "stable_iso": _stable("is_stable_iso"),
    "in_add": lambda sc, m, sub="T": sc.context(sub).contains(sc.modules[m]),
    "loop_dims": lambda sc, m, sub="T": _loop(sc, m, sub, "loop"),
    "suspension_dims": lambda sc, m, sub="T": _loop(sc, m, sub, "suspension"),
    "is_projective": lambda sc, m: is_projective(sc.modules[m]),
    "envelope_projective": lambda sc, m: is_projective(injective_envelope(sc.modules[m]).target),
    "envelope_is": lambda sc, m, e: is_isomorphic(injective_envelope(sc.modules[m]).target, sc.modules[e]),
    "isomorphic": lambda sc, m, n: is_isomorphic(sc.modules[m], sc.modules[n]),
    "dims": lambda sc, m: sc.modules[m].dim_vector(),
    "weak_balance_sufficient": _weak_balance,
    "balance_search": _search("balance"),
    "weak_balance_search": _search("weak_balance"),
    "serre_balance": _serre_balance,
    "serre_witness": _serre_witness,
    "stable_category_zero": lambda sc, sub="T": all(sc.context(sub).contains(m) for m in sc.corpus_modules()),
}


def _stable_hom_dim(sc: Scenario, x: str, y: str, sub: str) -> int:
    from .stable import stable_hom_dim

    return stable_hom_dim(sc.context(sub), sc.modules[x], sc.modules[y])


def _loop(sc: Scenario, m: str, sub: str, side: str) -> tuple[int, ...]:
    from .stable import loop_suspension

    return loop_suspension(sc.context(sub), sc.modules[m], side).dim_vector()


# --- scenarios -------------------------------------------------------------


def linear_quiver(n: int) -> Quiver:
    vs = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple((f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    return Quiver(vs, arrows)


def a3(p: int = 101) -> Scenario:
    """kA3 as 1 -> 2 -> 3 with T = add(P1), the projective-injective module.

    The literature labels the same fixture 3 -> 2 -> 1 with T = add(P3);
    vertex i here is vertex 4 - i there.
    """
    q = Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "2", "3")))
    alg = PathAlgebra(q, field=Field(p))
    mods: dict[str, Representation] = {}
    for v in alg.vertices:
        mods[f"P{v}"] = projective(alg, v)
    for v in alg.vertices:
        mods[f"S{v}"] = simple(alg, v)
    for v in alg.vertices:
        mods[f"I{v}"] = injective(alg, v)
    f = projective_cover(mods["S2"])
    f = Morphism(mods["P2"], mods["S2"], f.maps)
    j = injective_envelope(mods["S2"])
    j = Morphism(mods["S2"], mods["I2"], j.maps)
    top = cokernel(socle(mods["I2"]))
    pmap = Morphism(mods["I2"], mods["S1"], top.maps)
    morphs = {"f": f, "j": j, "p": pmap, "jf": j @ f}
    facts = [
        Fact("stable_epi", ("f",), False, "cover of S2 is not a stable epimorphism"),
        Fact("stable_mono", ("f",), False, "cover of S2 is not a stable monomorphism"),
        Fact("strong_mono", ("f",), False, "kernel S3 of the cover is not in add(T)"),
        Fact("stable_zero", ("jf",), True, "envelope after cover factors through T"),
        Fact("stable_zero", ("p",), False, "top projection of I2 is stably nonzero"),
        Fact("loop_dims", ("S2",), (0, 0, 0), "loop of S2 vanishes"),
        Fact("stable_hom_dim", ("S2", "S2"), 1, "S2 is stably nonzero"),
        Fact("stable_hom_dim", ("P2", "S2"), 1, "stable Hom(P2, S2)"),
        Fact("suspension_dims", ("P2",), (1, 0, 0), "suspension of P2 is S1"),
        Fact("in_add", ("S3",), False, "S3 is not in add(T)"),
        Fact("in_add", ("P1",), True, "generator lies in add(T)"),
        Fact("weak_balance_sufficient", (), True, "projective-injective generator"),
        Fact("balance_search", (), "undetermined", "projective-injective T admits no counterexample"),
    ]
    return Scenario(
        "a3", alg, mods, morphs, {"T": ["P1"]}, {}, facts,
        corpus=["P1", "P2", "P3", "S1", "S2", "S3", "I2"],
        notes="kA3 1->2->3, T = add(P1) with P1 projective-injective",
    )


SIX_VERTEX_ARROWS = (
    ("alpha", "1", "2"),
    ("delta", "4", "1"),
    ("gamma", "3", "4"),
    ("beta", "2", "3"),
    ("x", "5", "2"),
    ("y", "6", "5"),
)
SIX_VERTEX_RELATIONS = (
    ("y", "x"),
    ("x", "beta"),
    ("beta", "gamma"),
    ("gamma", "delta", "alpha"),
    ("delta", "alpha", "beta"),
)


def _path_vector(alg: PathAlgebra, m: Representation, start: str, arrows: tuple[str, ...]) -> np.ndarray:
    """Coordinates of a path inside projective(start)."""
    path = alg.path(*arrows, start=start)
    basis = alg.paths_between(start, path.target)
    vec = np.zeros(len(basis), dtype=np.int64)
    vec[basis.index(path)] = 1
    return vec


def six_vertex(p: int = 101) -> Scenario:
    """The six-vertex bound quiver whose stable category modulo projectives is
    weakly balanced but not balanced.

    Entered on the opposite of the drawn quiver: arrows alpha: 1->2,
    delta: 4->1, gamma: 3->4, beta: 2->3, x: 5->2, y: 6->5, relations
    (y,x), (x,beta), (beta,gamma), (gamma,delta,alpha), (delta,alpha,beta).
    E = (Ae4 ⊕ Ae5)/N with N generated by (-delta alpha, x) at vertex 2.
    """
    alg = PathAlgebra(Quiver(tuple("123456"), SIX_VERTEX_ARROWS), SIX_VERTEX_RELATIONS, Field(p))
    mods: dict[str, Representation] = {}
    for v in alg.vertices:
        mods[f"Ae{v}"] = projective(alg, v).renamed(f"Ae{v}")
    p4, p5 = mods["Ae4"], mods["Ae5"]
    bp = direct_sum([p4, p5], name="Ae4+Ae5")
    gen = np.concatenate([
        (-_path_vector(alg, p4, "4", ("delta", "alpha"))) % p,
        _path_vector(alg, p5, "5", ("x",)),
    ])
    n_inc = generated_submodule(bp.module, {"2": [gen]}, name="N")
    q = cokernel(n_inc)
    e = q.target.renamed("E")
    q = Morphism(bp.module, e, q.maps, validate=False)
    i = q @ bp.injections[0]
    j = q @ bp.injections[1]
    # f: (a, b) -> a gamma lands in Ae3; g: (a, b) -> b y lands in Ae6
    f_top = from_projective(mods["Ae3"], "4", _path_vector(alg, mods["Ae3"], "3", ("gamma",)), p4)
    g_top = from_projective(mods["Ae6"], "5", _path_vector(alg, mods["Ae6"], "6", ("y",)), p5)
    f = descend(q, hstack([f_top, Morphism.zero(p5, mods["Ae3"])]))
    g = descend(q, hstack([Morphism.zero(p4, mods["Ae6"]), g_top]))
    quot = cokernel(i)
    e_mod = quot.target.renamed("E/Ae4")
    quot = Morphism(e, e_mod, quot.maps, validate=False)
    a_mod = direct_sum([mods[f"Ae{v}"] for v in alg.vertices], name="A").module
    # E and its quotient first, so corpus-order searches meet them early
    mods = {"E": e, "E/Ae4": e_mod, **mods, "N": n_inc.source.renamed("N"), "A": a_mod}
    morphs = {"i": i, "j": j, "f": f, "g": g, "q": quot}
    facts = [
        Fact("hom_dim", ("E", "A"), 2, "Hom(E, A) is 2-dimensional"),
        Fact("dims", ("N",), (0, 1, 0, 0, 0, 0), "N is simple at vertex 2"),
        Fact("envelope_is", ("Ae4", "E"), True, "E is the injective envelope of Ae4"),
        Fact("envelope_is", ("Ae5", "E"), True, "E is the injective envelope of Ae5"),
        Fact("isomorphic", ("E/Ae4", "A"), False, "E/Ae4 is not the regular module"),
        Fact("dims", ("E/Ae4",), (0, 0, 0, 0, 1, 0), "E/Ae4 is simple at vertex 5"),
    ]
    for v in "1236":
        facts.append(Fact("envelope_projective", (f"Ae{v}",), True, f"envelope of Ae{v} is projective"))
    for v in "45":
        facts.append(Fact("envelope_projective", (f"Ae{v}",), False, f"envelope of Ae{v} is not projective"))
    facts += [
        Fact("weak_balance_sufficient", (), True, "every generator has a nonzero restriction image"),
        Fact("stable_mono", ("q",), True, "E -> E/Ae4 is a stable monomorphism"),
        Fact("stable_epi", ("q",), True, "E -> E/Ae4 is a stable epimorphism"),
        Fact("strong_mono", ("q",), True, "kernel Ae4 of E -> E/Ae4 lies in T"),
        Fact("strong_epi", ("q",), False, "E -> E/Ae4 is not a strong epimorphism"),
        Fact("stable_iso", ("q",), False, "E -> E/Ae4 is not a stable isomorphism"),
        Fact("balance_search", (), "not_balanced", "not balanced"),
        Fact("weak_balance_search", (), "undetermined", "weakly balanced: no counterexample"),
    ]
    return Scenario(
        "six_vertex", alg, mods, morphs,
        {"T": [f"Ae{v}" for v in alg.vertices]}, {}, facts,
        corpus=["E", "E/Ae4"] + [f"Ae{v}" for v in alg.vertices],
        notes="six-vertex monomial algebra, T = add(A)",
    )


def tn(n: int, p: int = 101) -> Scenario:
    """kA_n (upper triangular matrices) with T = add(P1), projective-injective."""
    if n < 1:
        raise UnknownScenario("tn(n) needs n >= 1")
    alg = PathAlgebra(linear_quiver(n), field=Field(p))
    mods: dict[str, Representation] = {}
    for v in alg.vertices:
        mods[f"P{v}"] = projective(alg, v)
        mods[f"S{v}"] = simple(alg, v)
    facts = [
        Fact("is_projective", ("P1",), True, "P1 is projective"),
        Fact("envelope_projective", ("P1",), True, "P1 is injective"),
        Fact("balance_search", (), "undetermined", "projective-injective T admits no counterexample"),
    ]
    if n == 1:
        facts.append(Fact("stable_category_zero", (), True, "semisimple: stable category is zero"))
    return Scenario(
        f"tn({n})", alg, mods, {}, {"T": ["P1"]}, {}, facts,
        notes=f"kA_{n} 1->...->{n}, T = add(P1)",
    )


def a2_serre(p: int = 101) -> Scenario:
    """kA2 as 1 -> 2 with the Serre class of modules supported at the sink."""
    alg = PathAlgebra(Quiver(("1", "2"), (("a", "1", "2"),)), field=Field(p))
    mods = {"P1": projective(alg, "1"), "S1": simple(alg, "1"), "S2": simple(alg, "2")}
    top = cokernel(socle(mods["P1"]))
    morphs = {"f": Morphism(mods["P1"], mods["S1"], top.maps)}
    facts = [
        Fact("serre_balance", ("sink",), "not_balanced", "torsion part of P1 does not split"),
        Fact("serre_witness", ("sink", "f"), True, "witness is P1 -> S1"),
    ]
    return Scenario(
        "a2_serre", alg, mods, morphs, {"T": ["S2"]}, {"sink": ["2"]}, facts,
        corpus=["P1", "S1", "S2"],
        notes="kA2 1->2, Serre class supported at vertex 2",
    )


SCENARIOS = ("a3", "six_vertex", "tn(n)", "a2_serre")


def builtin(name: str, p: int = 101) -> Scenario:
    m = re.fullmatch(r"tn\((\d+)\)|t(\d+)", name)
    if m:
        return tn(int(m.group(1) or m.group(2)), p)
    builders = {"a3": a3, "six_vertex": six_vertex, "a2_serre": a2_serre}
    if name not in builders:
        raise UnknownScenario(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}")
    return builders[name](p)
