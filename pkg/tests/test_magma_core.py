from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.magma_core import (MagmaProperty, automorphisms, build_magma, check_property, common_left_factors,
                                    common_left_multiples, direct_product, find_isomorphism,
                                    generated_subset, identities_of, is_group, is_homomorphism, is_lclm,
                                    is_monoid, is_semigroup, isomorphic, lclm, magma_from_function,
                                    naive_isomorphism, restrict, units_of)
from src.models.base_models import Verdict
from src.models.errors import DuplicateEntry, DuplicateName, IndexOutOfRange, NotClosed
from tests.strategies import full_magmas, partial_magmas, relabelled, small_groups


def _assoc_everywhere(P):
    return all(P.mul(P.mul(a, b), c) == P.mul(a, P.mul(b, c)) for a, b, c in product(range(P.size), repeat=3))


def _right_identity(P, a):
    before = [x for x in range(P.size) if P.defined(x, a)]
    return bool(before) and all(P.mul(x, a) == x for x in before)


def _left_identity(P, a):
    after = [x for x in range(P.size) if P.defined(a, x)]
    return bool(after) and all(P.mul(a, x) == x for x in after)


def _definition_holds(P, prop):
    """Re-evaluate a property straight from its quantified definition."""
    E = range(P.size)
    m = P.table.get
    triples = list(product(E, repeat=3))
    pairs = list(product(E, repeat=2))

    def ab_c(a, b, c):
        ab = m((a, b))
        return None if ab is None else m((ab, c))

    def a_bc(a, b, c):
        bc = m((b, c))
        return None if bc is None else m((a, bc))

    def left_multiples(a):
        return {m((p, a)) for p in E} - {None}

    def right_multiples(a):
        return {m((a, p)) for p in E} - {None}

    glob = next((e for e in E if all(m((e, a)) == a == m((a, e)) for a in E)), None)
    right_assoc = all(ab_c(*w) is None or ab_c(*w) == a_bc(*w) for w in triples)
    left_assoc = all(a_bc(*w) is None or a_bc(*w) == ab_c(*w) for w in triples)
    left_canc = all(m((a, b)) is None or m((a, b)) != m((a, c)) or b == c for a, b, c in triples)
    right_canc = all(m((a, c)) is None or m((a, c)) != m((b, c)) or a == b for a, b, c in triples)
    has_right = all(any(m((x, a)) == x and _right_identity(P, a) for a in E) for x in E)
    has_left = all(any(m((a, x)) == x and _left_identity(P, a) for a in E) for x in E)

    def has_lclm(a, b):
        common = left_multiples(a) & left_multiples(b)
        return not common or any(all(any(m((k, l)) == c for k in E) for c in common) for l in common)

    return {
        "right_assoc": right_assoc,
        "left_assoc": left_assoc,
        "assoc": right_assoc and left_assoc,
        "categorical": right_assoc and left_assoc and all(
            m((a, b)) is None or m((b, c)) is None or (ab_c(a, b, c) is not None and a_bc(a, b, c) is not None)
            for a, b, c in triples),
        "full": all(P.defined(a, b) for a, b in pairs),
        "left_canc": left_canc,
        "right_canc": right_canc,
        "strongly_left_canc": left_canc and all(m((a, b)) != a or b == glob for a, b in pairs),
        "strongly_right_canc": right_canc and all(m((a, b)) != b or a == glob for a, b in pairs),
        "common_right_multiples": all(right_multiples(a) & right_multiples(b) for a, b in pairs),
        "least_common_left_multiples": all(has_lclm(a, b) for a, b in pairs),
        "has_right_identities": has_right,
        "has_left_identities": has_left,
        "has_full_identities": has_right and has_left,
        "has_global_identity": glob is not None,
        "left_inverses_wrt_right_identities": all(
            not _right_identity(P, b) or not P.defined(a, b) or any(m((x, a)) == b for x in E)
            for a, b in pairs),
        "digraph_rule": all(
            not (P.defined(a, b) and P.defined(c, b) and P.defined(c, d)) or P.defined(a, d)
            for a, b, c, d in product(E, repeat=4)),
    }[prop.value]


def _cancellative_semigroup(P):
    return all(check_property(P, p).holds() for p in ("full", "assoc", "left_canc", "right_canc"))


class TestBuild:
    def test_triples_and_pairs_agree(self):
        P = build_magma(2, ["e", "x"], [(0, 0, 0), ((0, 1), 1), (1, 0, 1)])
        assert P.table == {(0, 0): 0, (0, 1): 1, (1, 0): 1}
        assert not P.defined(1, 1)
        assert P.label(1) == "x"
        assert P.index_of("x") == 1

    def test_default_names_are_indices(self):
        assert build_magma(3, None, []).names == ("0", "1", "2")

    def test_duplicate_pair(self):
        with pytest.raises(DuplicateEntry) as err:
            build_magma(2, None, [(0, 1, 0), (0, 1, 1)])
        assert err.value.witness == (0, 1)

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            build_magma(2, None, [(0, 2, 0)])

    def test_duplicate_name(self):
        with pytest.raises(DuplicateName):
            build_magma(2, ["a", "a"], [])

    def test_magma_from_function_checks_closure(self):
        with pytest.raises(NotClosed):
            magma_from_function([0, 1], lambda a, b: a + b)

    def test_restrict_and_embedding(self, c6):
        sub, embedding = restrict(c6, [0, 2, 4])
        assert embedding == (0, 2, 4)
        assert sub.names == ("1", "g^2", "g^4")
        assert is_group(sub)
        with pytest.raises(NotClosed):
            restrict(c6, [0, 1])

    def test_generated_subset(self, c6):
        assert generated_subset(c6, [2]) == frozenset({0, 2, 4})
        assert generated_subset(c6, [1]) == frozenset(range(6))


class TestProperties:
    def test_groupoid_is_categorical_not_full(self, groupoid):
        assert check_property(groupoid, "categorical").verdict == Verdict.PASS
        assert check_property(groupoid, "digraph_rule").verdict == Verdict.PASS
        assert check_property(groupoid, "has_full_identities").verdict == Verdict.PASS
        report = check_property(groupoid, "full")
        assert report.verdict == Verdict.FAIL
        assert report.witness == (0, 1)
        assert check_property(groupoid, "has_global_identity").verdict == Verdict.FAIL

    def test_groups_pass_everything_group_like(self, klein, c6):
        for P in (klein, c6):
            assert is_semigroup(P) and is_monoid(P) and is_group(P)
            for prop in ("left_canc", "right_canc", "strongly_left_canc", "least_common_left_multiples",
                         "common_right_multiples", "left_inverses_wrt_right_identities"):
                assert check_property(P, prop).holds(), prop

    def test_unknown_property(self, klein):
        with pytest.raises(ValueError):
            check_property(klein, "commutative")

    @given(full_magmas(max_size=3))
    def test_full_tables_assoc_matches_triple_loop(self, P):
        expected = _assoc_everywhere(P)
        for prop in ("assoc", "right_assoc", "left_assoc"):
            assert check_property(P, prop).holds() == expected

    @given(partial_magmas(max_size=3))
    def test_witness_is_least_violation(self, P):
        report = check_property(P, "full")
        missing = [w for w in product(range(P.size), repeat=2) if w not in P.table]
        if missing:
            assert report.witness == missing[0]
        else:
            assert report.verdict == Verdict.PASS

    @given(partial_magmas(max_size=3))
    def test_categorical_implies_assoc(self, P):
        if check_property(P, "categorical").holds():
            assert check_property(P, "assoc").holds()

    @settings(max_examples=150, deadline=None)
    @given(st.one_of(partial_magmas(max_size=6), full_magmas(max_size=6), small_groups()))
    def test_every_property_matches_its_definition(self, P):
        for prop in MagmaProperty:
            report = check_property(P, prop)
            assert report.holds() == _definition_holds(P, prop), prop.value
            assert report.holds() or report.witness is not None


class TestIdentities:
    def test_groupoid_identities(self, groupoid):
        flags = identities_of(groupoid)
        assert flags[0].full_id and flags[1].full_id
        assert not flags[2].full_id and not flags[3].full_id
        assert flags[2].right_id_for == (0,)
        assert not any(f.global_id for f in flags.values())
        assert units_of(groupoid) == frozenset()

    def test_group_units(self, c6):
        assert units_of(c6) == frozenset(range(6))
        assert identities_of(c6)[0].global_id

    def test_zero_monoid_units(self):
        P = build_magma(2, ["1", "z"], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
        assert units_of(P) == frozenset({0})


class TestMultiples:
    def test_group_lclm_is_identity(self, c6):
        assert lclm(c6, 1, 2) == (0, 5, 4)
        assert is_lclm(c6, 1, 2, 3)

    def test_common_left_multiples_cofactors(self, c6):
        found = common_left_multiples(c6, 1, 2)
        assert set(found) == set(range(6))
        for m, pairs in found.items():
            for p, q in pairs:
                assert c6.mul(p, 1) == m == c6.mul(q, 2)

    def test_groupoid_multiples(self, groupoid):
        # 1x and 1y end at different objects, so no left multiples agree
        assert common_left_multiples(groupoid, 0, 1) == {}
        assert lclm(groupoid, 0, 1) is None
        assert lclm(groupoid, 2, 0) == (0, 3, 0)

    def test_common_left_factors(self, c6):
        assert common_left_factors(c6, 1, 2) == frozenset(range(6))


class TestIdentityLaws:
    @given(st.one_of(partial_magmas(max_size=6), small_groups()))
    def test_at_most_one_full_identity_per_side(self, P):
        flags = identities_of(P)
        if check_property(P, "right_assoc").holds():
            for f in flags.values():
                assert len([a for a in f.right_id_for if flags[a].full_id]) <= 1
        if check_property(P, "left_assoc").holds():
            for x in range(P.size):
                left_for_x = [a for a in range(P.size) if P.defined(a, x) and P.mul(a, x) == x]
                assert len([a for a in left_for_x if flags[a].full_id]) <= 1

    @given(st.one_of(partial_magmas(max_size=6), small_groups()))
    def test_one_sided_identities_are_full_and_idempotent(self, P):
        if not check_property(P, "has_full_identities").holds():
            return
        for a, f in identities_of(P).items():
            if f.right_id_for_magma or f.left_id_for_magma:
                assert f.full_id
                assert P.defined(a, a) and P.mul(a, a) == a

    def test_groupoid_identities_are_full(self, groupoid):
        flags = identities_of(groupoid)
        assert check_property(groupoid, "has_full_identities").holds()
        assert [x for x, f in flags.items() if f.right_id_for_magma] == [0, 1]
        assert all(flags[x].full_id for x in (0, 1))


class TestCancellativeLaws:
    @settings(max_examples=60, deadline=None)
    @given(st.one_of(full_magmas(max_size=6), small_groups()))
    def test_cancellation_is_strong(self, P):
        if not _cancellative_semigroup(P):
            return
        assert check_property(P, "strongly_left_canc").holds()
        assert check_property(P, "strongly_right_canc").holds()
        one = P.global_identity()
        if one is not None:
            for a, b in product(range(P.size), repeat=2):
                if P.mul(a, b) == one:
                    assert P.mul(b, a) == one

    @settings(max_examples=60, deadline=None)
    @given(st.one_of(full_magmas(max_size=6), small_groups()))
    def test_lclms_are_unit_multiples(self, P):
        if not _cancellative_semigroup(P):
            return
        units = units_of(P)
        for a, b in product(range(P.size), repeat=2):
            lclms = {c for c in range(P.size) if is_lclm(P, a, b, c)}
            found = lclm(P, a, b)
            assert (found is None) == (not lclms)
            for l in lclms:
                assert lclms == {P.mul(u, l) for u in units}

    @settings(max_examples=60, deadline=None)
    @given(st.one_of(full_magmas(max_size=6), small_groups()))
    def test_lclm_iff_common_left_factors_are_units(self, P):
        if not _cancellative_semigroup(P):
            return
        units = units_of(P)
        for a, b in product(range(P.size), repeat=2):
            if lclm(P, a, b) is None:
                continue
            for x, y in product(range(P.size), repeat=2):
                if P.mul(x, a) == P.mul(y, b):
                    assert is_lclm(P, a, b, P.mul(x, a)) == (common_left_factors(P, x, y) <= units)


class TestIsomorphism:
    def test_automorphism_counts(self, klein, c6):
        assert len(automorphisms(klein)) == 6
        assert len(automorphisms(c6)) == 2

    def test_direct_product_of_cyclic_groups(self, c6):
        c2, _ = restrict(c6, [0, 3])
        c3, _ = restrict(c6, [0, 2, 4])
        assert isomorphic(direct_product(c2, c3), c6)

    def test_klein_is_not_cyclic(self, klein, c6):
        c4 = magma_from_function(list(range(4)), lambda a, b: (a + b) % 4)
        assert not isomorphic(klein, c4)

    @settings(max_examples=60)
    @given(st.data())
    def test_relabelled_copy_is_found(self, data):
        P = data.draw(partial_magmas(max_size=4))
        Q = data.draw(relabelled(P))
        iso = find_isomorphism(P, Q)
        assert iso is not None
        assert iso.is_bijective()
        assert is_homomorphism(iso).holds()

    @settings(max_examples=80)
    @given(partial_magmas(max_size=3), partial_magmas(max_size=3))
    def test_agrees_with_naive_search(self, P, Q):
        assert (find_isomorphism(P, Q) is None) == (naive_isomorphism(P, Q) is None)
