import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from src.algebra.examples_categories import cyclic_group, free_swap_actions, stock_example, symmetric_group
from src.algebra.magma_core import build_magma, generated_subset, is_homomorphism, isomorphic
from src.algebra.mutual_actions import trivial_actions
from src.algebra.zs_product import (ProductKind, assoc_chain_iso, chain_composite, classify_product,
                                    external_product, group_product, identity_embeddings, inverse_form_check,
                                    lclm_transport_check, monoid_product, product_lclm, reconstruction_iso,
                                    transfer_checks, verify_embedding_functions)
from src.models.base_models import EmbeddingFns, ParenTree, Verdict
from src.models.errors import (ClauseFailed, ConditionFailed, HypothesisFailed, NoCommonLeftMultipleFound,
                               NotCategorical)


@pytest.fixture(scope="module")
def s4_chain():
    M, perms = symmetric_group(4)

    def gen(*images):
        return sorted(generated_subset(M, [perms.index(Permutation(list(g))) for g in images] + [0]))

    klein = gen([1, 0, 3, 2], [2, 3, 0, 1])
    c3 = gen([1, 2, 0, 3])
    c2 = gen([1, 0, 2, 3])
    c4 = gen([1, 2, 3, 0])
    return M, {"V": klein, "C3": c3, "C2": c2, "C4": c4}


class TestReconstruction:
    def test_s4_reconstruction(self, s4_c4):
        M = s4_c4.magma
        iso = reconstruction_iso(M, s4_c4.subsets["U"], s4_c4.subsets["A"])
        assert iso.source.size == 24
        assert iso.is_bijective()
        assert is_homomorphism(iso).holds()
        P = iso.source
        for x in range(P.size):
            for y in range(P.size):
                assert iso(P.mul(x, y)) == M.mul(iso(x), iso(y))

    def test_not_categorical(self):
        square = build_magma(2, ["a", "b"], [(0, 0, 1)])
        with pytest.raises(NotCategorical):
            reconstruction_iso(square, [0], [1])

    def test_external_closure_reports(self, s3_c3_c2):
        ZS = external_product(s3_c3_c2.actions)
        assert all(r.holds() for r in ZS.closure)
        assert ZS.totality.verdict == Verdict.PASS
        assert ZS.dropped == []


class TestMonoidAndGroupProducts:
    def test_conjugation_gives_s3(self, s3_c3_c2):
        AP = s3_c3_c2.actions
        ZS = monoid_product(AP.U, AP.A, AP)
        S3, _ = symmetric_group(3)
        assert isomorphic(ZS.to_magma(), S3)
        assert ZS.global_identity() == (AP.U.index_of("1"), AP.A.index_of("1"))

    def test_trivial_actions_give_c6(self, s3_c3_c2):
        AP = s3_c3_c2.actions
        ZS = monoid_product(AP.U, AP.A, trivial_actions(AP.A, AP.U))
        assert isomorphic(ZS.to_magma(), cyclic_group(6))

    def test_group_product_is_s4(self, s4_c4):
        AP = s4_c4.actions
        ZS = group_product(AP.U, AP.A, AP)
        assert isomorphic(ZS.to_magma(), s4_c4.magma)
        assert all(ZS.inverse(x) is not None for x in ZS.elements())

    @pytest.mark.parametrize("name", ["s4-s3-c4", "s4-s3-klein", "c6-c2-c3"])
    def test_inverse_form(self, name):
        AP = stock_example(name).actions
        ZS = group_product(AP.U, AP.A, AP)
        assert inverse_form_check(ZS).verdict == Verdict.PASS

    def test_monoid_hypothesis_failure(self):
        U = build_magma(2, ["1", "z"], [(0, 0, 0), (0, 1, 1), (1, 0, 1)])
        A = cyclic_group(2)
        with pytest.raises(HypothesisFailed):
            monoid_product(U, A, trivial_actions(A, U))

    def test_group_hypothesis_failure(self):
        U = build_magma(2, ["1", "z"], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
        A = cyclic_group(2)
        with pytest.raises(HypothesisFailed):
            group_product(U, A, trivial_actions(A, U))

    @pytest.mark.parametrize("name,kind", [
        ("s4-s3-klein", ProductKind.SEMIDIRECT),
        ("s4-s3-c4", ProductKind.GENERAL),
        ("c6-c2-c3", ProductKind.DIRECT),
    ])
    def test_classify(self, name, kind):
        assert classify_product(stock_example(name).actions) == kind

    @pytest.mark.parametrize("name", ["s4-s3-c4", "s4-s3-klein", "s3-c3-c2"])
    def test_transfer_never_fails(self, name):
        ZS = external_product(stock_example(name).actions)
        reports = transfer_checks(ZS)
        assert reports
        assert all(r.verdict in (Verdict.PASS, Verdict.NOT_APPLICABLE) for r in reports)
        assert any(r.property == "assoc" and r.verdict == Verdict.PASS for r in reports)

    def test_transfer_needs_finite_factors(self):
        with pytest.raises(ValueError):
            transfer_checks(external_product(free_swap_actions()))


class TestEmbeddingFunctions:
    def test_identity_embeddings(self, s3_c3_c2):
        AP = s3_c3_c2.actions
        report, (into_a, into_u) = verify_embedding_functions(AP, None, identity_embeddings(AP))
        assert report.verdict == Verdict.PASS
        assert is_homomorphism(into_a).holds() and is_homomorphism(into_u).holds()
        assert len(set(into_a.mapping)) == AP.A.size

    def test_bad_i_clause(self, s3_c3_c2):
        AP = s3_c3_c2.actions
        good = identity_embeddings(AP)
        r = AP.U.index_of("r")
        bad = EmbeddingFns(i={a: r for a in AP.A.elements()}, j=good.j)
        with pytest.raises(ClauseFailed) as err:
            verify_embedding_functions(AP, None, bad)
        assert err.value.clause == "i1"
        assert err.value.witness == (0,)


class TestProductLclm:
    def test_free_swap(self):
        ZS = external_product(free_swap_actions())
        x, y = (("x",), 0), (("y", "x"), 0)
        found = product_lclm(ZS, x, y)
        assert found.multiple == (("y", "x"), 0)
        assert found.left_cofactor == (("y",), 0)
        assert found.right_cofactor == ((), 0)
        assert all(found.checks.values())

    def test_free_swap_is_least(self):
        ZS = external_product(free_swap_actions())
        x, y = (("x",), 0), (("y", "x"), 0)
        found = product_lclm(ZS, x, y)
        elems = ZS.elements(3)
        for k1 in elems:
            left = ZS.maybe_mul(k1, x)
            for k2 in elems:
                if left is not None and left == ZS.maybe_mul(k2, y):
                    assert any(ZS.maybe_mul(k, found.multiple) == left for k in elems)

    def test_seeded_pairs_against_brute_force(self):
        ZS = external_product(free_swap_actions())
        small, cofactors = ZS.elements(3), ZS.elements(4)
        rng = np.random.default_rng(5)
        for i, j in rng.integers(0, len(small), size=(50, 2)):
            x, y = small[i], small[j]
            common = {ZS.maybe_mul(k1, x) for k1 in cofactors} & {ZS.maybe_mul(k2, y) for k2 in cofactors}
            common.discard(None)
            if not common:
                with pytest.raises(NoCommonLeftMultipleFound):
                    product_lclm(ZS, x, y)
                continue
            found = product_lclm(ZS, x, y)
            assert found.multiple in common
            for m in common:
                assert any(ZS.maybe_mul(k, found.multiple) == m for k in cofactors)

    def test_same_element(self):
        ZS = external_product(free_swap_actions())
        x = (("x", "y"), 1)
        found = product_lclm(ZS, x, x)
        assert found.multiple == x
        assert found.left_cofactor == found.right_cofactor == ((), 0)

    def test_no_common_multiple(self):
        ZS = external_product(free_swap_actions())
        with pytest.raises(NoCommonLeftMultipleFound):
            product_lclm(ZS, (("x",), 0), (("y",), 0))

    def test_u_must_be_cancellative(self):
        U = build_magma(2, ["1", "z"], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
        ZS = external_product(trivial_actions(cyclic_group(2), U))
        with pytest.raises(HypothesisFailed):
            product_lclm(ZS, (0, 0), (1, 0))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 23), st.integers(0, 23))
    def test_group_product_pairs(self, i, j):
        AP = stock_example("s4-s3-c4").actions
        ZS = group_product(AP.U, AP.A, AP)
        x, y = ZS.elements()[i], ZS.elements()[j]
        found = product_lclm(ZS, x, y)
        assert all(found.checks.values())
        assert ZS.maybe_mul(found.left_cofactor, x) == found.multiple == ZS.maybe_mul(found.right_cofactor, y)

    def test_transport_on_free_swap(self):
        AP = free_swap_actions()
        assert lclm_transport_check(AP, ("x",), ("y", "x"), 1).holds()


class TestAssocChain:
    @pytest.mark.parametrize("tree", ["((1 2) 3)", "(1 (2 3))"])
    def test_s4_three_factors(self, s4_chain, tree):
        M, sub = s4_chain
        report = assoc_chain_iso(M, [sub["V"], sub["C3"], sub["C2"]], ParenTree.parse(tree))
        assert report.verdict == Verdict.PASS
        assert report.details["nodes"] == 2
        assert report.details["elements"] == 24

    def test_single_factor(self, s4_chain):
        M, _ = s4_chain
        report = assoc_chain_iso(M, [range(24)], ParenTree.parse("1"))
        assert report.verdict == Verdict.PASS
        assert report.details["nodes"] == 0

    def test_span_not_closed(self, s4_chain):
        # C3 C4 has twelve elements but is not a subgroup
        M, sub = s4_chain
        with pytest.raises(ConditionFailed) as err:
            assoc_chain_iso(M, [sub["C2"], sub["C3"], sub["C4"]], ParenTree.left_comb(3))
        assert err.value.index == "d"
        assert err.value.witness[:2] == (2, 3)

    def test_factorization_not_unique(self):
        C4 = cyclic_group(4, "r")
        with pytest.raises(ConditionFailed) as err:
            assoc_chain_iso(C4, [[0, 2], [0, 2]], ParenTree.left_comb(2))
        assert err.value.index == "b"

    def test_tree_must_span(self, s4_chain):
        M, sub = s4_chain
        with pytest.raises(ValueError):
            assoc_chain_iso(M, [sub["V"], sub["C3"]], ParenTree.left_comb(3))

    def test_composite(self, s4_chain):
        M, sub = s4_chain
        factors = [sub["V"], sub["C3"], sub["C2"]]
        composite = chain_composite(M, factors, ParenTree.left_comb(3), ParenTree.right_comb(3))
        assert len(composite) == 24
        for ((u, v), a), (u2, (v2, a2)) in composite.items():
            assert (u, v, a) == (u2, v2, a2)
