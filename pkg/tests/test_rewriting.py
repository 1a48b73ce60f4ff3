import pytest
from hypothesis import given

from src.algebra.examples_categories import stock_example
from src.algebra.rewriting import (ClosureKind, RelProperty, WordMonoid, all_relations, bounded_relation,
                                   certify_complete, check_rel_property, critical_pairs, cw_vector,
                                   format_word, irreducible_words, irreducibles, joinable, make_ruleset,
                                   newman_survey, normal_forms_abstract, normalization_trace, normalize_word,
                                   parse_word, random_relations, rel_closure, rpo_greater,
                                   string_local_confluence, table_presentation, termination_certificate,
                                   word_rewrite_step)
from src.models.base_models import AbstractRel, CertKind, TerminationCert, Verdict
from src.models.errors import FuelExhausted, KindCheckFailed, NotComplete, NotTerminating, ShapeMismatch
from tests.strategies import relations, words


@pytest.fixture(scope="module")
def doubling():
    return stock_example("zappa-int").presentations["W"].rules


@pytest.fixture(scope="module")
def dihedral():
    return stock_example("dihedral-wp").presentations["W"].rules


class TestAbstractRelations:
    def test_closures(self, data_store):
        fork = data_store.load_relation("relations/fork.json")
        assert len(rel_closure(fork, ClosureKind.REFLEXIVE_TRANSITIVE).edges) == 5
        assert len(rel_closure(fork, ClosureKind.EQUIVALENCE).edges) == 9
        assert rel_closure(fork, "symmetric").edges == frozenset({(0, 1), (1, 0), (0, 2), (2, 0)})

    def test_fork_not_confluent(self, data_store):
        fork = data_store.load_relation("relations/fork.json")
        report = check_rel_property(fork, RelProperty.CONFLUENT)
        assert report.verdict == Verdict.FAIL
        assert report.witness == (1, 2)
        with pytest.raises(NotComplete):
            normal_forms_abstract(fork)

    def test_diamond_normal_forms(self, data_store):
        diamond = data_store.load_relation("relations/diamond.json")
        assert irreducibles(diamond) == [3]
        assert normal_forms_abstract(diamond) == {0: 3, 1: 3, 2: 3, 3: 3}
        for prop in RelProperty:
            assert check_rel_property(diamond, prop).holds()

    def test_local_without_global(self, data_store):
        R = data_store.load_relation("relations/non_terminating_local.json")
        assert check_rel_property(R, "terminating").verdict == Verdict.FAIL
        assert check_rel_property(R, "locally_confluent").verdict == Verdict.PASS
        confluent = check_rel_property(R, "confluent")
        assert confluent.verdict == Verdict.FAIL
        assert confluent.witness == (2, 3)

    def test_cycle(self):
        R = AbstractRel(size=2, edges=frozenset({(0, 1), (1, 0)}))
        report = check_rel_property(R, RelProperty.TERMINATING)
        assert set(report.witness) == {0, 1}
        with pytest.raises(NotTerminating):
            normal_forms_abstract(R)

    def test_self_loops_ignored(self):
        R = AbstractRel(size=2, edges=frozenset({(0, 0), (0, 1)}))
        assert check_rel_property(R, RelProperty.TERMINATING).holds()
        assert irreducibles(R) == [1]

    def test_exhaustive_small_relations(self):
        report = newman_survey(all_relations(4, 6))
        assert report.verdict == Verdict.PASS
        assert report.details["checked"] == 14893

    def test_random_relations(self):
        report = newman_survey(random_relations(6, 1000, seed=7))
        assert report.verdict == Verdict.PASS
        assert report.details["checked"] == 1000

    @given(relations())
    def test_confluence_chain(self, R):
        flags = {p: check_rel_property(R, p).holds() for p in RelProperty}
        if flags[RelProperty.STRONGLY_CONFLUENT]:
            assert flags[RelProperty.CONFLUENT]
        assert flags[RelProperty.CONFLUENT] == flags[RelProperty.CHURCH_ROSSER]
        if flags[RelProperty.CONFLUENT]:
            assert flags[RelProperty.LOCALLY_CONFLUENT]
        if flags[RelProperty.TERMINATING]:
            assert flags[RelProperty.LOCALLY_CONFLUENT] == flags[RelProperty.CONFLUENT]


class TestWords:
    def test_bracketed_names(self):
        assert format_word(("x", "ab", "y")) == "x[ab]y"
        assert parse_word("x[ab]y") == ("x", "ab", "y")
        assert parse_word("φ") == ()

    def test_stray_letter(self):
        with pytest.raises(ValueError):
            parse_word("xz", ("x", "y"))

    def test_one_step(self, doubling):
        assert word_rewrite_step(doubling, ("y", "x", "y", "x")) == {
            ("x", "y", "y", "y", "x"), ("y", "x", "x", "y", "y"),
        }

    @pytest.mark.parametrize("n", range(11))
    def test_doubling_normal_form(self, doubling, n):
        assert normalize_word(doubling, ("y",) + ("x",) * n) == ("x",) * n + ("y",) * (2 ** n)

    def test_trace_decreases_cw_vector(self, doubling):
        trace = normalization_trace(doubling, ("y", "x", "x", "x", "x"))
        assert trace[-1] == ("x",) * 4 + ("y",) * 16
        vectors = [cw_vector(w, {"x"}) for w in trace]
        assert all(a > b for a, b in zip(vectors, vectors[1:]))

    def test_fuel(self, doubling):
        with pytest.raises(FuelExhausted):
            normalize_word(doubling, ("y",) + ("x",) * 10, fuel=100)

    def test_irreducible_words(self, s3_c3_c2):
        assert irreducible_words(s3_c3_c2.presentations["U"].rules) == [(), ("r",), ("s",)]
        free = make_ruleset(("a", "b"), [])
        assert len(irreducible_words(free, 2)) == 7

    def test_bounded_relation(self):
        RS = make_ruleset(("a", "b"), [("ba", "ab")])
        R, listed = bounded_relation(RS, 2)
        assert R.size == len(listed) == 7
        assert R.edges == frozenset({(listed.index(("b", "a")), listed.index(("a", "b")))})

    @given(words(("x", "y"), max_length=5))
    def test_commutation_sorts(self, w):
        RS = make_ruleset(("x", "y"), [("yx", "xy")])
        nf = normalize_word(RS, w)
        assert sorted(nf) == list(nf) == sorted(w)


class TestConfluence:
    def test_overlap(self):
        RS = make_ruleset(("a", "b", "c"), [("ab", "c"), ("bc", "a")])
        assert critical_pairs(RS) == [(("a", "b", "c"), ("c", "c"), ("a", "a"))]
        report = string_local_confluence(RS)
        assert report.verdict == Verdict.FAIL
        assert report.witness == ("abc", "cc", "aa")

    def test_containment(self):
        RS = make_ruleset(("a", "b"), [("aba", "b"), ("b", "a")])
        assert (("a", "b", "a"), ("b",), ("a", "a", "a")) in critical_pairs(RS)

    def test_joinable(self):
        RS = make_ruleset(("a", "b"), [("a", "aa")])
        assert joinable(RS, ("a",), ("a",)) == Verdict.PASS
        assert joinable(RS, ("a",), ("b",), fuel=50) == Verdict.INCONCLUSIVE
        finite = make_ruleset(("a", "b", "c"), [("a", "b"), ("a", "c")])
        assert joinable(finite, ("b",), ("c",)) == Verdict.FAIL

    def test_dihedral_complete(self, dihedral):
        assert string_local_confluence(dihedral).verdict == Verdict.PASS
        cert = TerminationCert(kind=CertKind.RECURSIVE_PATH, order=("r", "f"))
        assert certify_complete(dihedral, cert).verdict == Verdict.PASS


class TestTermination:
    def test_length_lex_fails_on_dihedral(self, dihedral):
        report = termination_certificate(dihedral, TerminationCert(kind=CertKind.LENGTH_LEX))
        assert report.verdict == Verdict.FAIL
        assert report.witness == (2, "fr", "rrf")

    def test_rpo(self):
        rank = {"r": 0, "f": 1}
        assert rpo_greater(("f", "r"), ("r", "r", "f"), rank)
        assert not rpo_greater(("r", "r", "f"), ("f", "r"), rank)
        assert rpo_greater(("r",), (), rank)

    def test_cw_measure(self, doubling):
        report = termination_certificate(doubling, TerminationCert(kind=CertKind.CW_MEASURE))
        assert report.verdict == Verdict.PASS
        assert report.details == {"x_letters": ["x"], "y_letters": ["y"]}

    def test_cw_measure_shape(self, dihedral):
        with pytest.raises(ShapeMismatch):
            termination_certificate(dihedral, TerminationCert(kind=CertKind.CW_MEASURE))

    def test_no_certificate(self):
        RS = make_ruleset(("a", "b"), [("ab", "ba")])
        report = certify_complete(RS)
        assert report.verdict == Verdict.INCONCLUSIVE

    def test_length_lex_order(self):
        RS = make_ruleset(("a", "b"), [("ba", "ab")])
        assert termination_certificate(RS, TerminationCert(kind=CertKind.LENGTH_LEX)).holds()
        flipped = TerminationCert(kind=CertKind.LENGTH_LEX, order=("b", "a"))
        assert not termination_certificate(RS, flipped).holds()


class TestTablePresentations:
    def test_monoid_drops_identity(self, klein):
        RS = table_presentation(klein, "monoid")
        assert RS.alphabet == ("a", "b", "c")
        assert len(RS.rules) == 9
        assert certify_complete(RS).verdict == Verdict.PASS

    def test_semigroup_rules(self, c6):
        RS = table_presentation(c6, "semigroup")
        assert len(RS.rules) == 36
        assert RS.alphabet == c6.names

    def test_group_adds_inverses(self, klein):
        RS = table_presentation(klein, "group")
        assert "a^-1" in RS.alphabet
        assert len(RS.rules) == 9 + 6

    def test_kind_check(self, groupoid):
        with pytest.raises(KindCheckFailed):
            table_presentation(groupoid, "monoid")


class TestWordMonoid:
    def test_free_lclm(self):
        U = WordMonoid.free(("x", "y"))
        assert U.lclm(("x",), ("y", "x")) == (("y", "x"), ("y",), ())
        assert U.lclm(("x",), ("y",)) is None
        assert U.is_free and not U.is_finite

    def test_free_elements(self):
        U = WordMonoid.free(("x", "y"), max_length=2)
        assert U.elements() == [(), ("x",), ("y",), ("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")]

    def test_presented_c3(self, s3_c3_c2):
        U = WordMonoid(rules=s3_c3_c2.presentations["U"].rules)
        assert U.is_finite
        assert U.mul(("r",), ("r",)) == ("s",)
        assert U.inverse(("r",)) == ("s",)
        M = U.to_magma()
        assert M.names == ("1", "r", "s")
        assert M.global_identity() == 0
