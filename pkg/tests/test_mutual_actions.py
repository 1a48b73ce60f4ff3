import numpy as np
import pytest

from src.algebra.examples_categories import free_swap_actions
from src.algebra.magma_core import restrict
from src.algebra.mutual_actions import (Axiom, ProductDomain, check_axiom, check_axioms,
                                        commuting_pairs_act_trivially, corrupt, derive_internal_actions,
                                        expand_axioms, family_properties, family_property,
                                        lclm_coconfluence_witness, preserves_actions, recheck_axiom,
                                        strong_coconfluence_witness, trivial_actions, zs_identity_witnesses)
from src.models.base_models import Verdict
from src.models.errors import FactorizationAmbiguous, FactorizationMissing, NotClosed


class TestDerive:
    def test_s4_factorization(self, s4_c4):
        M = s4_c4.magma
        AP, table = derive_internal_actions(M, s4_c4.subsets["U"], s4_c4.subsets["A"])
        assert (AP.U.size, AP.A.size) == (6, 4)
        assert len(AP.h_pairs()) == 24
        assert len(table.factors) == 24
        for x, (u, a) in table.factors.items():
            assert M.mul(table.u_embedding[u], table.a_embedding[a]) == x
            assert table.compose(u, a) == x

    def test_actions_read_off_products(self, s4_c4):
        M = s4_c4.magma
        AP, table = derive_internal_actions(M, s4_c4.subsets["U"], s4_c4.subsets["A"])
        for a, u in AP.h_pairs():
            lhs = M.mul(table.a_embedding[a], table.u_embedding[u])
            rhs = M.mul(table.u_embedding[AP.dot(a, u)], table.a_embedding[AP.exp(a, u)])
            assert lhs == rhs

    def test_not_closed(self, s4_c4):
        M = s4_c4.magma
        four_cycle = next(a for a in s4_c4.subsets["A"] if M.mul(a, a) != 0)
        with pytest.raises(NotClosed):
            derive_internal_actions(M, [0, four_cycle], s4_c4.subsets["U"])

    def test_missing_factorization(self, c6):
        with pytest.raises(FactorizationMissing) as err:
            derive_internal_actions(c6, [0], [0, 2, 4])
        assert err.value.element == "g"

    def test_ambiguous_factorization(self, s4_c4):
        s3 = s4_c4.subsets["U"]
        with pytest.raises(FactorizationAmbiguous):
            derive_internal_actions(s4_c4.magma, s3, s3)

    def test_identity_witnesses(self, s4_c4):
        M = s4_c4.magma
        AP, table = derive_internal_actions(M, s4_c4.subsets["U"], s4_c4.subsets["A"])
        report = zs_identity_witnesses(M, AP, table)
        assert report.verdict == Verdict.PASS
        assert set(report.details["alpha_u"].values()) == {"1"}

    def test_commuting_pairs(self, c6):
        AP, table = derive_internal_actions(c6, [0, 3], [0, 2, 4])
        assert commuting_pairs_act_trivially(c6, AP, table).holds()


class TestAxioms:
    def test_expand(self):
        assert expand_axioms(["P2a"]) == [Axiom.P2A_FWD, Axiom.P2A_BWD]
        assert len(expand_axioms(["P7"])) == 8
        assert len(expand_axioms(["all"])) == len(Axiom)
        assert expand_axioms(["P6", "P6"]) == [Axiom.P6]

    def test_group_factorization_satisfies_catalog(self, s4_c4):
        reports = check_axioms(s4_c4.actions, None, ["P1", "P2", "P3", "P6", "P7"])
        assert all(r.verdict == Verdict.PASS for r in reports), [r for r in reports if not r.holds()]

    def test_trivial_actions_are_multiplicative(self, c6, klein):
        AP = trivial_actions(klein, c6)
        assert all(r.holds() for r in check_axioms(AP, None, ["P2", "P7"]))

    def test_partial_domain_breaks_closure(self, s4_c4):
        AP = s4_c4.actions
        E = ProductDomain(pairs=frozenset({(0, 0)}))
        report = check_axiom(AP, E, "P1a")
        assert report.verdict == Verdict.FAIL
        assert recheck_axiom(AP, E, "P1a", report.witness)

    def test_word_domains_pass_up_to_bound(self):
        AP = free_swap_actions()
        reports = check_axioms(AP, None, ["P2", "P6", "P7a", "P7d"], bound=2)
        assert {r.verdict for r in reports} == {Verdict.PASS_UP_TO_FUEL}
        assert "length <= 2" in reports[0].notes[0]


class TestCorruption:
    def test_single_entry_is_caught_and_rechecked(self, s4_c4):
        AP = s4_c4.actions
        rng = np.random.default_rng(20240611)
        pairs = AP.h_pairs()
        for _ in range(120):
            family = "dot" if rng.random() < 0.5 else "exp"
            key = pairs[int(rng.integers(len(pairs)))]
            codomain = AP.U if family == "dot" else AP.A
            current = getattr(AP, family)(*key)
            value = int(rng.choice([x for x in range(codomain.size) if x != current]))
            bad = corrupt(AP, family, key, value)
            failing = [r for r in check_axioms(bad, None, ["P2", "P7"]) if r.verdict == Verdict.FAIL]
            assert failing, (family, key, value)
            for report in failing:
                assert recheck_axiom(bad, None, report.axiom, report.witness)
                assert not recheck_axiom(AP, None, report.axiom, report.witness)
                assert len(report.details["labels"]) == len(report.witness)

    def test_corrupt_outside_h(self, s4_c4):
        with pytest.raises(KeyError):
            corrupt(s4_c4.actions, "dot", (99, 0), 0)

    def test_word_actions_cannot_be_corrupted(self):
        with pytest.raises(ValueError):
            corrupt(free_swap_actions(), "dot", (0, ()), ())


class TestFamilies:
    def test_semidirect_exp_is_trivial(self, s4_klein):
        table = family_properties(s4_klein.actions)
        assert table["exp"]["trivial"].verdict == Verdict.PASS
        assert table["dot"]["trivial"].verdict == Verdict.FAIL
        assert table["dot"]["injective"].verdict == Verdict.PASS

    def test_general_product_moves_both(self, s4_c4):
        assert family_property(s4_c4.actions, "exp", "trivial").verdict == Verdict.FAIL
        assert family_property(s4_c4.actions, "dot", "trivial").verdict == Verdict.FAIL

    def test_free_swap_strong_coconfluence(self):
        AP = free_swap_actions()
        assert check_axiom(AP, None, "P8", bound=3).holds()
        gamma, p, q = strong_coconfluence_witness(AP, 1, ("x",), 1, ("y", "x"))
        assert gamma == 1
        assert p + ("x",) == q + ("y", "x")
        assert lclm_coconfluence_witness(AP, 1, ("x",), 1, ("y", "x")) == 1


class TestMorphisms:
    def test_identity_maps_preserve(self, s4_c4):
        AP = s4_c4.actions
        assert preserves_actions(lambda u: u, lambda a: a, AP, AP).holds()

    def test_corrupted_target_is_detected(self, s4_c4):
        AP = s4_c4.actions
        a, u = AP.h_pairs()[5]
        bad = corrupt(AP, "exp", (a, u), (AP.exp(a, u) + 1) % AP.A.size)
        report = preserves_actions(lambda v: v, lambda b: b, AP, bad)
        assert report.verdict == Verdict.FAIL
        assert report.witness == (a, u)

    def test_restriction_to_subgroup(self, c6):
        AP, _ = derive_internal_actions(c6, [0, 3], [0, 2, 4])
        c2, _ = restrict(c6, [0, 3])
        assert AP.U.same_table(c2)
