import pytest

from src.algebra.examples_categories import (STOCK_EXAMPLES, SituationOne, SituationTwo,
                                             category_as_magma, category_from_group, characterization_search,
                                             complement_check, complement_rigidity, convert_zs_actions,
                                             cyclic_group, int_ext_roundtrip, magma_as_category,
                                             pair_groupoid, perm_name, product_category, stock_example,
                                             subcategory, symmetric_group, vertex_group_groupoid)
from src.algebra.magma_core import build_magma, check_property, isomorphic
from src.algebra.mutual_actions import corrupt
from src.models.base_models import FiniteCategory, GroupoidBundle, Verdict
from src.models.errors import (EmbeddingNotInjective, IllFormedCategory, SituationCheckFailed,
                               UnknownExample)


class TestCategories:
    def test_two_objects(self, data_store):
        C = data_store.load_category("categories/two_objects.json")
        P = category_as_magma(C)
        assert P.size == 4
        assert not P.defined(P.index_of("f"), P.index_of("f"))
        assert P.mul(P.index_of("g"), P.index_of("f")) == P.index_of("1x")
        back = magma_as_category(P)
        assert set(back.objects) == {"1x", "1y"}
        assert category_as_magma(back).same_table(P)

    def test_missing_composite(self):
        C = pair_groupoid(("a", "b"))
        compose = dict(C.compose)
        del compose[("a->b", "a->a")]
        with pytest.raises(IllFormedCategory):
            category_as_magma(FiniteCategory(objects=C.objects, morphisms=C.morphisms, compose=compose))

    def test_group_is_one_object(self, c6):
        C = magma_as_category(c6)
        assert C.objects == ("1",)
        assert len(C.morphisms) == 6

    def test_not_categorical(self):
        with pytest.raises(IllFormedCategory):
            magma_as_category(build_magma(2, None, [(0, 0, 1)]))

    def test_groupoid_constructors(self):
        S3, _ = symmetric_group(3)
        G = vertex_group_groupoid(("a", "b"), S3)
        P = category_as_magma(G)
        assert P.size == 24
        assert check_property(P, "categorical").holds()
        assert len(magma_as_category(P).objects) == 2
        single = category_as_magma(product_category(category_from_group(cyclic_group(1)), S3))
        assert isomorphic(single, S3)

    def test_subcategory(self):
        G = vertex_group_groupoid(("a", "b"), cyclic_group(2, "c"))
        vertex = subcategory(G, ["(a->a,1)", "(a->a,c)"])
        assert vertex.objects == ("a",)
        assert isomorphic(category_as_magma(vertex), cyclic_group(2))
        with pytest.raises(IllFormedCategory):
            subcategory(G, ["(a->a,1)", "(a->a,c)", "(b->b,1)", "(a->b,1)"])

    def test_characterization_search(self):
        report = characterization_search(max_size=3, samples=300, seed=0)
        assert report.verdict == Verdict.PASS
        assert report.details["qualifying"] > 0
        assert report.details["counterexamples"] == 0


class TestConvert:
    def test_klein_bundle(self, data_store):
        sit = data_store.load_situation("bundles/klein_bundle.json")
        AP, report = convert_zs_actions(sit.bundle, sit.A)
        assert report.verdict == Verdict.PASS
        assert AP.U.size == 2 and AP.A.size == 2
        assert all(AP.dot(a, u) == u and AP.exp(a, u) == a for a, u in AP.h_pairs())

    def test_groupoid_s3_c2(self):
        sit = stock_example("groupoid-s3-c2").situation
        AP, report = convert_zs_actions(sit.bundle, sit.A)
        assert report.verdict == Verdict.PASS
        assert AP.A.size == 12
        assert any(AP.exp(a, u) != a for a, u in AP.h_pairs())

    def test_embedding_not_injective(self, data_store):
        sit = data_store.load_situation("bundles/klein_bundle.json")
        B = sit.bundle
        bad = GroupoidBundle(G=B.G, U=B.U, phi={"*": ("e", "e")})
        with pytest.raises(EmbeddingNotInjective):
            convert_zs_actions(bad, sit.A)


class TestRoundtrip:
    @pytest.mark.parametrize("name,start", [
        ("pair-groupoid-c2", "I"),
        ("groupoid-s3-c2", "I"),
        ("s3-c3-c2", "II"),
    ])
    def test_stock_situations(self, name, start):
        report = int_ext_roundtrip(stock_example(name).situation)
        assert report.verdict == Verdict.PASS
        assert report.details["start"] == start

    def test_klein_bundle(self, data_store):
        report = int_ext_roundtrip(data_store.load_situation("bundles/klein_bundle.json"))
        assert report.details == {"morphisms": 4, "objects": 1, "start": "I"}

    def test_identity_condition_first(self, s3_c3_c2):
        sit = s3_c3_c2.situation
        AP = sit.AP
        r, s = AP.U.index_of("r"), AP.U.index_of("s")
        broken = SituationTwo(A=sit.A, U=sit.U, AP=corrupt(AP, "dot", (0, r), s))
        with pytest.raises(SituationCheckFailed) as err:
            int_ext_roundtrip(broken)
        assert err.value.condition == "2"

    def test_situation_one_type(self, s3_c3_c2):
        assert isinstance(stock_example("pair-groupoid-c2").situation, SituationOne)
        assert isinstance(s3_c3_c2.situation, SituationTwo)


class TestComplements:
    @pytest.mark.parametrize("name", ["s4-s3-c4", "s4-s3-klein"])
    def test_s4_complements(self, name):
        ex = stock_example(name)
        report = complement_check(ex.magma, ex.subsets["U"], ex.subsets["A"])
        assert report.verdict == Verdict.PASS
        assert report.details["products"] == 24

    def test_overlap(self, s4_c4):
        s3 = s4_c4.subsets["U"]
        report = complement_check(s4_c4.magma, s3, s3)
        assert report.verdict == Verdict.FAIL
        assert report.witness[0] == "intersection"

    def test_rigidity(self):
        ex = stock_example("s3xz2-jkl")
        report = complement_rigidity(ex.magma, ex.subsets["J"], ex.subsets["L"])
        assert report.verdict == Verdict.PASS
        assert report.details["isomorphic"]
        assert report.details["carrying"] == 0
        assert complement_check(ex.magma, ex.subsets["K"], ex.subsets["J"]).holds()
        assert complement_check(ex.magma, ex.subsets["K"], ex.subsets["L"]).holds()


class TestStock:
    def test_registry(self):
        assert len(STOCK_EXAMPLES) == 10
        for name in STOCK_EXAMPLES:
            assert stock_example(name).name == name

    def test_unknown(self):
        with pytest.raises(UnknownExample):
            stock_example("s5")

    def test_groups(self):
        S3, perms = symmetric_group(3)
        assert S3.size == 6 and perm_name(perms[0]) == "1"
        assert cyclic_group(4, "r").names == ("1", "r", "r^2", "r^3")
