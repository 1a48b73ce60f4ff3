import json

import pytest

from dataset_generation.semigroup_corpus_to_jsonl import (SemigroupRecord, semigroup_corpus, small_groups,
                                                          write_corpus)
from src.algebra.examples_categories import cyclic_group, stock_example
from src.algebra.mutual_actions import Axiom
from src.algebra.presentations import (Presentation, PresentationMode, WordAnswer, action_presentation,
                                       class_representative, extend_gen_actions, extension_checks,
                                       normal_form_census, product_presentation_experiment, table_census,
                                       twisted_iii_check, word_problem, zs_presentation)
from src.algebra.rewriting import make_ruleset, parse_word, word_label
from src.models.base_models import GenActions, Verdict
from src.models.errors import AlphabetCollision, FuelExhausted, HypothesisFailed
from src.utils.fuel import Fuel


def _word_of(P, x):
    label = P.label(x)
    return () if label == "1" else parse_word(label)


class TestTableCensus:
    def test_semigroup_corpus(self):
        corpus = semigroup_corpus(4, 200, 0)
        assert len(corpus) >= 122
        for P in corpus:
            complete, census = table_census(P, "semigroup")
            assert complete.verdict == Verdict.PASS
            assert census.verdict == Verdict.PASS
            assert census.details["classes"] == P.size

    def test_small_groups_as_monoids(self):
        groups = small_groups()
        assert len(groups) == 14
        for name, G in groups.items():
            complete, census = table_census(G, "monoid")
            assert complete.verdict == Verdict.PASS, name
            assert census.details["classes"] == G.size, name

    def test_group_kind_refused(self, klein):
        with pytest.raises(ValueError):
            table_census(klein, "group")

    def test_write_corpus(self, tmp_path):
        path = tmp_path / "corpus" / "semigroups.jsonl"
        assert write_corpus(str(path), limit=10) == 24
        lines = path.read_text(encoding="utf-8").splitlines()
        records = [SemigroupRecord(**json.loads(line)) for line in lines]
        assert len(records) == 24
        assert sum(r.source == "group" for r in records) == 14
        assert all(r.is_monoid for r in records if r.is_group)


class TestCensus:
    def test_missing_element(self):
        c3 = make_ruleset(("a",), [("aaa", "φ")])
        report = normal_form_census(c3, cyclic_group(6), lambda w: (2 * len(w)) % 6)
        assert report.verdict == Verdict.FAIL
        assert report.witness == ("missing", "g")

    def test_collision(self):
        c3 = make_ruleset(("a",), [("aaa", "φ")])
        report = normal_form_census(c3, cyclic_group(3), lambda w: 0)
        assert report.verdict == Verdict.FAIL
        assert report.witness == ("collision", "", "a")

    def test_rule_breaks(self):
        c3 = make_ruleset(("a",), [("aaa", "φ")])
        report = normal_form_census(c3, cyclic_group(3), len)
        assert report.witness == ("rule", "aaa", "")


class TestProductPresentations:
    def test_generators_mode(self, s3_c3_c2):
        presU, presA = s3_c3_c2.presentations["U"], s3_c3_c2.presentations["A"]
        pres = zs_presentation(presU, presA, s3_c3_c2.actions, "generators")
        census = pres.checks[0]
        assert census.verdict == Verdict.PASS
        assert census.details["classes"] == 6
        assert pres.origin["W"] == (5, 6)
        assert [r.lhs for r in pres.rules_from("W")] == [("f", "r"), ("f", "s")]
        assert pres.is_complete()

    def test_full_mode_keeps_every_pair(self, s3_c3_c2):
        presU, presA = s3_c3_c2.presentations["U"], s3_c3_c2.presentations["A"]
        pres = zs_presentation(presU, presA, s3_c3_c2.actions, PresentationMode.FULL)
        assert len(pres.w_pairs) == 6
        assert len(pres.rules_from("W")) == 2
        assert pres.checks[0].details["classes"] == 6

    def test_alphabet_collision(self, s3_c3_c2):
        pres = Presentation.of(make_ruleset(("x",), [("xx", "φ")]))
        with pytest.raises(AlphabetCollision):
            zs_presentation(pres, pres, s3_c3_c2.actions)

    def test_full_mode_needs_finite(self, s3_c3_c2):
        free = stock_example("free-swap").actions
        presU = Presentation.of(make_ruleset(("x", "y"), []))
        presA = s3_c3_c2.presentations["A"]
        with pytest.raises(HypothesisFailed):
            zs_presentation(presU, presA, free, "full")

    def test_experiment(self, s3_c3_c2):
        presU, presA = s3_c3_c2.presentations["U"], s3_c3_c2.presentations["A"]
        records = product_presentation_experiment({"c3-c2": (presU, presA, s3_c3_c2.actions)})
        assert records["c3-c2"]["factors_complete"]
        assert records["c3-c2"]["product"] == Verdict.PASS.value


class TestGeneratorActions:
    def test_action_presentation(self):
        GA = stock_example("zappa-int").gen_actions
        pres, report = action_presentation(GA)
        assert report.verdict == Verdict.PASS
        assert pres.rules.rules[0].lhs == ("y", "x")
        assert pres.rules.rules[0].rhs == ("x", "y", "y")

    def test_collision(self, s3_c3_c2):
        GA = s3_c3_c2.gen_actions.model_copy(update={"Y": ("r",)})
        with pytest.raises(AlphabetCollision):
            action_presentation(GA)

    def test_extension(self):
        ext = extend_gen_actions(stock_example("zappa-int").gen_actions)
        assert ext.dot(("y",), ("x", "x")) == ("x", "x")
        assert ext.exp(("y",), ("x", "x")) == ("y",) * 4
        assert ext.exp(("y", "y"), ("x",)) == ("y",) * 4

    def test_extension_checks(self):
        ext = extend_gen_actions(stock_example("zappa-int").gen_actions, bound=2)
        reports = extension_checks(ext, bound=2)
        assert {r.axiom for r in reports} >= {Axiom.P2A_FWD.value, Axiom.P6.value}
        assert all(r.holds() for r in reports)

    def test_twisted_iii(self, s3_c3_c2):
        presU, presA = s3_c3_c2.presentations["U"], s3_c3_c2.presentations["A"]
        report, induced = twisted_iii_check(presU, presA, s3_c3_c2.gen_actions)
        assert report.verdict == Verdict.PASS
        assert induced.A.elements() == [(), ("f",)]
        AP = s3_c3_c2.actions
        for a in induced.A.elements():
            for u in induced.U.elements():
                ia, iu = AP.A.index_of(word_label(a)), AP.U.index_of(word_label(u))
                assert induced.dot(a, u) == _word_of(AP.U, AP.dot(ia, iu))
                assert induced.exp(a, u) == _word_of(AP.A, AP.exp(ia, iu))

    def test_extension_shares_fuel(self):
        GA = stock_example("zappa-int").gen_actions
        fuel = Fuel(10_000)
        ext = extend_gen_actions(GA, fuel)
        assert ext.exp(("y",), ("x", "x")) == ("y",) * 4
        assert fuel.spent > 0
        tight = extend_gen_actions(GA, Fuel(3))
        with pytest.raises(FuelExhausted):
            tight.dot(("y",), ("x",) * 4)

    def test_twisted_iii_with_fuel(self, s3_c3_c2):
        presU, presA = s3_c3_c2.presentations["U"], s3_c3_c2.presentations["A"]
        fuel = Fuel(100_000, "induced")
        report, induced = twisted_iii_check(presU, presA, s3_c3_c2.gen_actions, fuel=fuel)
        assert report.verdict == Verdict.PASS
        assert 0 < fuel.spent <= fuel.limit
        assert induced.dot(("f",), ("r",)) == ("s",)

    def test_twisted_iii_alphabets(self, s3_c3_c2):
        presA = s3_c3_c2.presentations["A"]
        other = Presentation.of(make_ruleset(("p",), [("pp", "φ")]))
        with pytest.raises(ValueError):
            twisted_iii_check(other, presA, s3_c3_c2.gen_actions)

    def test_twisted_iii_accepts_equal_dot_images(self):
        presU = Presentation.of(make_ruleset(("x", "z"), [("zx", "xz")]))
        presA = Presentation.of(make_ruleset(("y",), []))
        GA = GenActions(X=("x", "z"), Y=("y",), dot={("y", "x"): "x", ("y", "z"): "x"},
                        exp={("y", "x"): ("y",), ("y", "z"): ("y",)})
        report, induced = twisted_iii_check(presU, presA, GA)
        assert report.verdict == Verdict.PASS
        assert induced.dot(("y",), ("z", "x")) == induced.dot(("y",), ("x", "z")) == ("x", "x")

    def test_twisted_iii_rejects_unrelated_dot_images(self):
        presU = Presentation.of(make_ruleset(("x", "z"), [("zx", "xz")]))
        presA = Presentation.of(make_ruleset(("y",), []))
        GA = GenActions(X=("x", "z"), Y=("y",), dot={("y", "x"): "z", ("y", "z"): "x"},
                        exp={("y", "x"): ("y", "y"), ("y", "z"): ("y", "y")})
        with pytest.raises(HypothesisFailed) as err:
            twisted_iii_check(presU, presA, GA)
        assert err.value.witness == ("zx->xz", "y", "dot")


class TestWordProblem:
    def test_commutation_not_complete(self):
        RS = make_ruleset(("a", "b"), [("ab", "ba")])
        assert word_problem(RS, ("a", "b"), ("b", "a")) == WordAnswer.EQUAL
        assert word_problem(RS, ("a", "b"), ("a", "a")) == WordAnswer.DISTINCT
        assert class_representative(RS, ("b", "a")) == ("a", "b")

    def test_dihedral(self):
        pres = stock_example("dihedral-wp").presentations["W"]
        assert word_problem(pres, ("f", "r"), ("r", "r", "f")) == WordAnswer.EQUAL
        assert word_problem(pres, ("r",), ("f",)) == WordAnswer.DISTINCT
        assert class_representative(pres, ("f", "r", "f")) == ("r", "r")

    def test_bicyclic(self, data_store):
        pres = data_store.load_presentation("presentations/bicyclic.json")
        assert word_problem(pres, ("p", "q", "p", "q"), ("p", "q")) == WordAnswer.EQUAL
        assert word_problem(pres, ("p", "q"), ("q", "p")) == WordAnswer.DISTINCT

    def test_inconclusive(self):
        RS = make_ruleset(("a", "b"), [("a", "aa")])
        assert word_problem(RS, ("a",), ("b",), fuel=30) == WordAnswer.INCONCLUSIVE
