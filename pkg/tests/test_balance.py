import pytest

from stablecat import balance, stable
from stablecat.catalog import a2_serre, a3, six_vertex, tn
from stablecat.exceptions import NotApplicable, NotMono, SourceNotInT
from stablecat.linalg import Field
from stablecat.modules import direct_sum, hom, is_isomorphic, projective_cover, radical, socle
from stablecat.quiver import Morphism, PathAlgebra, Quiver, Representation, projective, simple


@pytest.fixture(scope="module")
def six():
    return six_vertex(2)


def test_weak_balance_sufficient_on_six_vertex(six):
    wb = balance.check_weak_balance_sufficient(six.context())
    assert wb.all_pass
    proj = {c.generator.name: c.envelope_projective for c in wb.checks}
    assert proj == {"Ae1": True, "Ae2": True, "Ae3": True, "Ae4": False, "Ae5": False, "Ae6": True}
    for c in wb.checks:
        assert c.witness is not None and not c.witness.is_zero()


def test_six_vertex_is_not_balanced(six):
    ctx = six.context()
    rep = balance.search_counterexample(ctx, six.corpus_modules(), "balance")
    assert rep.verdict == balance.NOT_BALANCED
    assert rep.verify(ctx)
    assert is_isomorphic(rep.witness.target, six.modules["E/Ae4"])
    assert rep.stats["candidates"] >= 1 and not rep.stats["candidates_exhausted"]


def test_six_vertex_weak_search_finds_nothing(six):
    ctx = six.context()
    rep = balance.search_counterexample(ctx, six.corpus_modules(), "weak_balance")
    assert rep.verdict == balance.UNDETERMINED
    assert rep.stats["candidates_exhausted"]


def test_search_respects_budget(six):
    rep = balance.search_counterexample(six.context(), six.corpus_modules(), "balance", budget=0)
    assert rep.verdict == balance.UNDETERMINED
    assert not rep.stats["candidates_exhausted"]


def test_search_is_deterministic_for_a_seed(six):
    ctx = six.context()
    a = balance.search_counterexample(ctx, six.corpus_modules(), seed=7)
    b = balance.search_counterexample(ctx, six.corpus_modules(), seed=7)
    assert a.route == b.route and a.witness.equals(b.witness)


def test_search_mode_is_validated(six):
    with pytest.raises(ValueError):
        balance.search_counterexample(six.context(), [], "sideways")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_injective_generator_gives_no_counterexample(n):
    sc = tn(n, 2)
    rep = balance.search_counterexample(sc.context(), list(sc.modules.values()))
    assert rep.verdict == balance.UNDETERMINED and rep.stats["candidates_exhausted"]


def test_a3_hereditary_criterion():
    sc = a3(2)
    rep = balance.check_hereditary(sc.context(), sc.corpus_modules())
    assert rep.hypothesis_holds and rep.verdict == balance.BALANCED


def test_hereditary_criterion_detects_failure():
    alg = PathAlgebra(Quiver(("1", "2"), (("a", "1", "2"),)), field=Field(2))
    s2 = simple(alg, "2")
    ctx = stable.StableContext(alg, [s2], "S2")
    rep = balance.check_hereditary(ctx, [projective(alg, "1"), simple(alg, "1")])
    assert rep.verdict == balance.NOT_BALANCED
    module, sub = rep.failure
    assert module.dim_vector() == (1, 1) and sub.source.dim_vector() == (0, 1)


def test_serre_torsion_sequence():
    sc = a2_serre(2)
    seq = balance.serre_torsion(sc.modules["P1"], ["2"])
    assert seq.mono.source.dim_vector() == (0, 1)
    assert seq.epi.target.dim_vector() == (1, 0)
    assert not seq.splits()


def test_serre_balance_on_a2():
    sc = a2_serre(2)
    rep = balance.check_serre_balance(["2"], sc.corpus_modules(), sc.algebra)
    assert rep.verdict == balance.NOT_BALANCED
    assert rep.witness.equals(sc.morphisms["f"])
    assert rep.verify(sc.serre_context("sink"))


def test_serre_balance_on_disconnected_algebra():
    alg = PathAlgebra(Quiver(("1", "2"), ()), field=Field(3))
    mods = [Representation(alg, {"1": a, "2": b}) for a in range(2) for b in range(2)]
    assert balance.check_serre_balance(["1"], mods, alg).verdict == balance.BALANCED
    assert balance.support_is_union_of_components(alg, ["1"])


def test_serre_balance_without_evidence_is_undetermined():
    alg = PathAlgebra(Quiver(("1", "2"), (("a", "1", "2"),)), field=Field(2))
    # only modules whose torsion part splits off
    mods = [simple(alg, "1"), simple(alg, "2")]
    rep = balance.check_serre_balance(["2"], mods, alg)
    assert rep.verdict == balance.UNDETERMINED


def test_serre_proposition_on_a2():
    sc = a2_serre(2)
    for f in (sc.morphisms["f"], Morphism.identity(sc.modules["P1"])):
        assert balance.check_serre_prop(f, ["2"]).holds


def test_maps_into_t_detect_the_inclusions_on_six_vertex(six):
    ctx = six.context()
    i = six.morphisms["i"]
    assert balance.check_map_detects_mono(ctx, i).answer
    with pytest.raises(NotMono):
        balance.check_map_detects_mono(ctx, six.morphisms["q"])
    with pytest.raises(SourceNotInT):
        balance.check_map_detects_mono(ctx, Morphism.identity(six.modules["E"]))


def test_coincidence_search_finds_witness_on_a3():
    sc = a3(2)
    p1, p2 = sc.modules["P1"], sc.modules["P2"]
    ctx = stable.StableContext(sc.algebra, [p1, p2], "P1+P2")
    mu = socle(p1)  # the socle S3 is not in add(T)
    with pytest.raises(SourceNotInT):
        balance.search_coincidence_failure(ctx, mu)
    # P2 sits inside P1 as its radical, without splitting
    mu = Morphism(p2, p1, radical(p1).maps)
    found = balance.search_coincidence_failure(ctx, mu)
    assert found.status == "witness" and found.witness is not None


def test_coincidence_search_rejects_split_monos():
    sc = a3(2)
    p1, s2 = sc.modules["P1"], sc.modules["S2"]
    bp = direct_sum([p1, s2])
    ctx = sc.context()
    with pytest.raises(NotApplicable):
        balance.search_coincidence_failure(ctx, bp.injections[0])


def test_balance_report_verify_rejects_wrong_pattern(six):
    ctx = six.context()
    rep = balance.search_counterexample(ctx, six.corpus_modules(), "balance")
    rep.verdicts["iso"] = stable.is_stable_iso(ctx, Morphism.identity(six.modules["E"]))
    assert not rep.verify(ctx)


def test_projective_cover_of_s2_is_not_a_counterexample():
    sc = a3(5)
    ctx = sc.context()
    f = projective_cover(sc.modules["S2"])
    assert not (stable.is_stable_mono(ctx, f).answer and stable.is_stable_epi(ctx, f).answer)


def test_map_detection_fails_for_the_socle_of_p1_in_a2():
    alg = PathAlgebra(Quiver(("1", "2"), (("a", "1", "2"),)), field=Field(2))
    s2, p1 = simple(alg, "2"), projective(alg, "1")
    ctx = stable.StableContext(alg, [s2], "S2")
    j = Morphism(s2, p1, socle(p1).maps)
    assert not balance.check_map_detects_mono(ctx, j).answer
    assert balance.check_map_detects_mono(ctx, Morphism.identity(s2)).answer


def test_map_detection_on_a_split_inclusion():
    sc = a3(2)
    bp = direct_sum([sc.modules["P1"], sc.modules["S2"]])
    v = balance.check_map_detects_mono(sc.context(), bp.injections[0])
    assert v.answer and not (v.certificate["h"] @ bp.injections[0]).is_zero()


@pytest.mark.parametrize("name", ["i", "j"])
def test_coincidence_search_is_exhausted_on_six_vertex(six, name):
    found = balance.search_coincidence_failure(six.context(), six.morphisms[name])
    assert found.status == "exhausted" and found.witness is None


def test_catalogue_names_are_aliases():
    assert balance.check_thm54_cond5 is balance.check_map_detects_mono
    assert balance.check_thm46_cond3 is balance.search_coincidence_failure


def test_no_coincidence_failures_means_no_counterexample_on_a3():
    # P1 is injective, so every mono out of add(P1) splits and the
    # coincidence condition holds vacuously; the search must agree
    sc = a3(2)
    ctx = sc.context()
    corpus = sc.corpus_modules()
    for x in corpus:
        for b in hom(sc.modules["P1"], x).basis:
            if b.is_mono():
                with pytest.raises(NotApplicable):
                    balance.search_coincidence_failure(ctx, b)
    assert balance.search_counterexample(ctx, corpus).verdict == balance.UNDETERMINED


def test_serre_balanced_evidence_agrees_with_search():
    alg = PathAlgebra(Quiver(("1", "2"), ()), field=Field(2))
    mods = [Representation(alg, {"1": a, "2": b}) for a in range(3) for b in range(3)]
    assert balance.check_serre_balance(["1"], mods, alg).verdict == balance.BALANCED
    rep = balance.search_counterexample(stable.SerreContext(alg, ["1"]), mods)
    assert rep.verdict == balance.UNDETERMINED and rep.stats["candidates_exhausted"]


def test_serre_support_of_every_vertex_is_balanced():
    sc = a2_serre(2)
    rep = balance.check_serre_balance(["1", "2"], sc.corpus_modules(), sc.algebra)
    assert rep.verdict == balance.BALANCED


def test_hereditary_criterion_on_a_semisimple_algebra():
    alg = PathAlgebra(Quiver(("1", "2"), ()), field=Field(2))
    ctx = stable.StableContext(alg, [projective(alg, "1"), projective(alg, "2")], "A")
    rep = balance.check_hereditary(ctx, [Representation(alg, {"1": 1, "2": 2})])
    assert rep.verdict == balance.BALANCED
