"""Finite categories as partial multiplications, groupoid bundles and the stock examples."""

from functools import lru_cache
from itertools import permutations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sympy.combinatorics import Permutation

from src.algebra.magma_core import (automorphisms, build_magma, check_property, find_isomorphism,
                                    generated_subset, identities_of, is_homomorphism,
                                    magma_from_function, restrict)
from src.algebra.mutual_actions import ActionPair, check_axioms, derive_internal_actions
from src.algebra.presentations import Presentation, action_presentation
from src.algebra.rewriting import WordMonoid, make_ruleset
from src.algebra.zs_product import ZSProduct, external_product, monoid_product
from src.models.base_models import (CertKind, FiniteCategory, GenActions, GroupoidBundle, Magma,
                                    Morphism, MorphismSpec, PropertyReport, TerminationCert, Verdict)
from src.models.errors import (EmbeddingNotInjective, IllFormedCategory, SituationCheckFailed,
                               UnknownExample, ZSError)
from src.utils.logging_utils import category_logger


# ---------------------------------------------------------------------------
# Categories and magmas

def category_as_magma(C: FiniteCategory) -> Magma:
    """Morphisms under composition; a after b is defined iff src(a) == tgt(b).

    Raises:
        IllFormedCategory: composition disagrees with sources and targets, an
            object lacks an identity, or the table is not categorical with
            full identities and the digraph rule
    """
    names = C.morphism_names
    index = {name: i for i, name in enumerate(names)}
    for a, b in C.compose:
        if a not in index or b not in index:
            raise IllFormedCategory(f"composition mentions unknown morphism in {(a, b)}", (a, b))
    for a, b in product(names, repeat=2):
        composable = C.src(a) == C.tgt(b)
        present = (a, b) in C.compose
        if composable != present:
            raise IllFormedCategory(f"{a} after {b}: {'missing' if composable else 'not composable'}", (a, b))
        if present:
            c = C.compose[(a, b)]
            if c not in index or C.src(c) != C.src(b) or C.tgt(c) != C.tgt(a):
                raise IllFormedCategory(f"{a} after {b} = {c} has the wrong ends", (a, b, c))
    for obj in C.objects:
        if C.identity(obj) is None:
            raise IllFormedCategory(f"object {obj} has no identity", ("identity", obj))

    P = build_magma(len(names), names, [((index[a], index[b]), index[c]) for (a, b), c in C.compose.items()])
    for prop in ("categorical", "has_full_identities", "digraph_rule"):
        report = check_property(P, prop)
        if not report.holds():
            raise IllFormedCategory(f"composition fails {prop}", (prop,) + tuple(names[k] for k in report.witness))
    category_logger.debug(f"category with {len(C.objects)} objects, {len(names)} morphisms")
    return P


def magma_as_category(P: Magma) -> FiniteCategory:
    """Read a categorical magma with full identities and the digraph rule as a category.

    Objects are the full identities; src(a) is the identity e with ae = a,
    tgt(a) the identity e with ea = a.

    Raises:
        IllFormedCategory: a condition fails or the reading is inconsistent
    """
    for prop in ("categorical", "has_full_identities", "digraph_rule"):
        report = check_property(P, prop)
        if not report.holds():
            raise IllFormedCategory(f"magma fails {prop}", (prop,) + tuple(report.witness))
    flags = identities_of(P)
    idents = [e for e in range(P.size) if flags[e].full_id]

    def end(a: int, right: bool) -> int:
        hits = [e for e in idents
                if (P.defined(a, e) and P.mul(a, e) == a if right else P.defined(e, a) and P.mul(e, a) == a)]
        if len(hits) != 1:
            raise IllFormedCategory(f"{P.names[a]} has {len(hits)} {'sources' if right else 'targets'}",
                                    ("source" if right else "target", P.names[a]))
        return hits[0]

    src = {a: end(a, True) for a in range(P.size)}
    tgt = {a: end(a, False) for a in range(P.size)}
    for a, b in product(range(P.size), repeat=2):
        if P.defined(a, b) != (src[a] == tgt[b]):
            raise IllFormedCategory(f"definedness of {P.names[a]}{P.names[b]} does not follow the ends",
                                    ("domain", P.names[a], P.names[b]))
    return FiniteCategory(
        objects=tuple(P.names[e] for e in idents),
        morphisms=tuple(MorphismSpec(name=P.names[a], src=P.names[src[a]], tgt=P.names[tgt[a]])
                        for a in range(P.size)),
        compose={(P.names[a], P.names[b]): P.names[c] for (a, b), c in P.table.items()},
    )


def _random_magma(rng: np.random.Generator, size: int) -> Magma:
    density = rng.uniform(0.2, 0.9)
    mask = rng.random((size, size)) < density
    values = rng.integers(0, size, (size, size))
    return build_magma(size, None, [((i, j), int(values[i, j])) for i, j in zip(*np.nonzero(mask))])


def _small_magmas(max_size: int):
    """Every partial magma on at most max_size elements (3^4 of size two)."""
    for n in range(1, max_size + 1):
        pairs = list(product(range(n), repeat=2))
        for choice in product(range(n + 1), repeat=len(pairs)):
            yield build_magma(n, None, [(p, v) for p, v in zip(pairs, choice) if v < n])


def characterization_search(max_size: int = 5, samples: int = 2000, seed: int = 0,
                            exhaustive_size: int = 2) -> PropertyReport:
    """Look for magmas that pass categorical, full identities and the digraph
    rule without coming from a category.

    Carriers up to ``exhaustive_size`` are enumerated; larger ones are sampled.
    """
    rng = np.random.default_rng(seed)

    def candidates():
        yield from _small_magmas(min(exhaustive_size, max_size))
        for _ in range(samples):
            yield _random_magma(rng, int(rng.integers(exhaustive_size + 1, max_size + 1))) \
                if max_size > exhaustive_size else _random_magma(rng, max_size)

    qualifying, counterexamples = 0, []
    for P in candidates():
        if not all(check_property(P, p).holds() for p in ("categorical", "has_full_identities", "digraph_rule")):
            continue
        qualifying += 1
        try:
            back = category_as_magma(magma_as_category(P))
            if not back.same_table(P):
                counterexamples.append(P)
        except ZSError:
            counterexamples.append(P)
    details = {"qualifying": qualifying, "counterexamples": len(counterexamples), "seed": seed}
    category_logger.info(f"characterization search: {qualifying} qualifying magmas, "
                         f"{len(counterexamples)} not from a category")
    if counterexamples:
        first = counterexamples[0]
        return PropertyReport(property="category_characterization", verdict=Verdict.FAIL,
                              witness=(first.size, tuple(sorted(first.table.items()))), details=details)
    return PropertyReport(property="category_characterization", verdict=Verdict.PASS, details=details)


# ---------------------------------------------------------------------------
# Constructors

def pair_groupoid(objects: Sequence[str]) -> FiniteCategory:
    """One morphism x->y for every ordered pair of objects."""
    morphisms = tuple(MorphismSpec(name=f"{x}->{y}", src=x, tgt=y) for x in objects for y in objects)
    compose = {(f"{y}->{z}", f"{x}->{y}"): f"{x}->{z}" for x in objects for y in objects for z in objects}
    return FiniteCategory(objects=tuple(objects), morphisms=morphisms, compose=compose)


def category_from_group(G: Magma, obj: str = "*") -> FiniteCategory:
    """A monoid as a one-object category; morphisms keep the element names."""
    return FiniteCategory(
        objects=(obj,),
        morphisms=tuple(MorphismSpec(name=n, src=obj, tgt=obj) for n in G.names),
        compose={(G.names[a], G.names[b]): G.names[c] for (a, b), c in G.table.items()},
    )


def product_category(C: FiniteCategory, G: Magma) -> FiniteCategory:
    """C x G with G a monoid on every hom-set; morphism (c, g) is named "(c,g)"."""
    def name(c: str, g: int) -> str:
        return f"({c},{G.names[g]})"

    morphisms = tuple(MorphismSpec(name=name(m.name, g), src=m.src, tgt=m.tgt)
                      for m in C.morphisms for g in range(G.size))
    compose = {(name(a, g), name(b, h)): name(c, G.mul(g, h))
               for (a, b), c in C.compose.items() for g, h in product(range(G.size), repeat=2)
               if G.defined(g, h)}
    return FiniteCategory(objects=C.objects, morphisms=morphisms, compose=compose)


def vertex_group_groupoid(objects: Sequence[str], G: Magma) -> FiniteCategory:
    """The connected groupoid on the objects with every vertex group G."""
    return product_category(pair_groupoid(objects), G)


def subcategory(C: FiniteCategory, names: Sequence[str]) -> FiniteCategory:
    """The morphisms in ``names`` with the objects whose identities they contain.

    Raises:
        IllFormedCategory: not closed, or a morphism's end has no identity here
    """
    keep = set(names)
    objects = tuple(x for x in C.objects if C.identity(x) in keep)
    for m in C.morphisms:
        if m.name in keep and (m.src not in objects or m.tgt not in objects):
            raise IllFormedCategory(f"{m.name} has an end without identity", ("identity", m.name))
    compose = {}
    for (a, b), c in C.compose.items():
        if a in keep and b in keep:
            if c not in keep:
                raise IllFormedCategory(f"{a} after {b} = {c} leaves the subcategory", ("closure", a, b))
            compose[(a, b)] = c
    return FiniteCategory(objects=objects, morphisms=tuple(m for m in C.morphisms if m.name in keep),
                          compose=compose)


# ---------------------------------------------------------------------------
# Transport of actions through per-object embeddings

def _check_embeddings(B: GroupoidBundle) -> None:
    U, G = B.U, B.G
    for x in G.objects:
        images = B.phi.get(x)
        if images is None or len(images) != U.size:
            raise EmbeddingNotInjective(f"phi_{x} is not defined on all of U", (x,))
        if len(set(images)) != U.size:
            raise EmbeddingNotInjective(f"phi_{x} is not injective", (x,))
        for name in images:
            if G.src(name) != x or G.tgt(name) != x:
                raise EmbeddingNotInjective(f"phi_{x} leaves the vertex monoid at {x}", (x, name))
        for (a, b), c in U.table.items():
            if G.compose.get((images[a], images[b])) != images[c]:
                raise EmbeddingNotInjective(f"phi_{x} is not a homomorphism", (x, U.names[a], U.names[b]))


def _package_violation(C: FiniteCategory, AP: ActionPair) -> Optional[Tuple[str, Tuple[Any, ...]]]:
    """The first failure of the identity and end equalities ("2") or of P2a-d ("1")."""
    A, U = AP.A, AP.U
    one = U.global_identity()
    members = set(A.names)
    for x in C.objects:
        ident = C.identity(x)
        if ident not in members:
            continue
        ix = A.index_of(ident)
        for u in U.elements():
            if AP.dot(ix, u) != u or AP.exp(ix, u) != ix:
                return "2", (ident, U.label(u))
    for a in A.elements():
        if AP.dot(a, one) != one or AP.exp(a, one) != a:
            return "2", (A.label(a), U.label(one))
        for u in U.elements():
            image = A.label(AP.exp(a, u))
            if C.src(image) != C.src(A.label(a)) or C.tgt(image) != C.tgt(A.label(a)):
                return "2", (A.label(a), U.label(u))
    for report in check_axioms(AP, None, ["P2"]):
        if not report.holds():
            return "1", (report.axiom,) + tuple(report.details.get("labels", report.witness or ()))
    return None


def convert_zs_actions(B: GroupoidBundle, A_names: Sequence[str]) -> Tuple[ActionPair, PropertyReport]:
    """Actions on A x U read off G = U-hat A and transported through the phi_x.

    For alpha: x -> y, alpha^u = alpha^(phi_x(u)) and
    alpha.u = phi_y^-1(alpha.(phi_x(u))). The report covers P2a-d, the
    identity equalities and S(alpha^u) = S(alpha), T(alpha^u) = T(alpha).

    Raises:
        EmbeddingNotInjective: some phi_x is not a monomorphism into G_x
        NotClosed, FactorizationMissing, FactorizationAmbiguous: G is not U-hat A
    """
    G, U = B.G, B.U
    _check_embeddings(B)
    M = category_as_magma(G)
    index = {name: i for i, name in enumerate(M.names)}
    u_hat = {index[name] for images in B.phi.values() for name in images}
    AP_hat, table = derive_internal_actions(M, u_hat, [index[n] for n in A_names])
    A = AP_hat.A
    hat_local = {M.names[m]: i for i, m in enumerate(table.u_embedding)}
    phi_inverse = {(x, name): k for x, images in B.phi.items() for k, name in enumerate(images)}

    dot, exp = {}, {}
    for ia in range(A.size):
        x, y = G.src(A.names[ia]), G.tgt(A.names[ia])
        for k in range(U.size):
            iu = hat_local[B.phi[x][k]]
            dot[(ia, k)] = phi_inverse[(y, AP_hat.U.names[AP_hat.dot(ia, iu)])]
            exp[(ia, k)] = AP_hat.exp(ia, iu)
    AP = ActionPair(A=A, U=U, dot_table=dot, exp_table=exp, name="converted")

    failure = _package_violation(G, AP)
    if failure is None:
        report = PropertyReport(property="converted_actions", verdict=Verdict.PASS)
    else:
        report = PropertyReport(property="converted_actions", verdict=Verdict.FAIL, witness=failure,
                                notes=[f"condition {failure[0]} fails"])
    category_logger.info(f"converted actions on {A.size} x {U.size}: {report.verdict.value}")
    return AP, report


# ---------------------------------------------------------------------------
# Internal and external descriptions

class SituationOne(BaseModel):
    """A category with a groupoid bundle and a subcategory A with G = U-hat A."""
    model_config = ConfigDict(frozen=True)

    bundle: GroupoidBundle
    A: Tuple[str, ...] = Field(..., description="Morphism names of the subcategory A")


class SituationTwo(BaseModel):
    """A category A, a group U and actions on all of A x U."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: FiniteCategory
    U: Magma
    AP: ActionPair = Field(..., description="Actions whose A is category_as_magma(A)")


def _pair_name(U: Magma, A: Magma, u: int, a: int) -> str:
    return f"({U.names[u]},{A.names[a]})"


def external_category(sit: SituationTwo) -> Tuple[FiniteCategory, ZSProduct]:
    """U x A under the twisted product, with S(u, alpha) = S(alpha) and T(u, alpha) = T(alpha).

    Raises:
        SituationCheckFailed: "exists" when definedness does not follow A,
            "identity" when (1, 1_x) is not the identity at x
    """
    AP, C, U = sit.AP, sit.A, sit.U
    A = AP.A
    ZS = external_product(AP)
    elems = ZS.elements()
    names = {x: _pair_name(U, A, *x) for x in elems}
    for x, y in product(elems, repeat=2):
        if ZS.defined(x, y) != A.defined(x[1], y[1]):
            raise SituationCheckFailed("exists", (names[x], names[y]))
    category = FiniteCategory(
        objects=C.objects,
        morphisms=tuple(MorphismSpec(name=names[x], src=C.src(A.names[x[1]]), tgt=C.tgt(A.names[x[1]]))
                        for x in elems),
        compose={(names[x], names[y]): names[ZS.mul(x, y)]
                 for x, y in product(elems, repeat=2) if ZS.defined(x, y)},
    )
    one = U.global_identity()
    for obj in C.objects:
        expected = _pair_name(U, A, one, A.index_of(C.identity(obj)))
        if category.identity(obj) != expected:
            raise SituationCheckFailed("identity", (obj,))
    try:
        category_as_magma(category)
    except IllFormedCategory as err:
        raise SituationCheckFailed("category", err.witness)
    return category, ZS


def internal_situation(category: FiniteCategory, sit: SituationTwo) -> SituationOne:
    """A-hat = {(1, alpha)} and U-hat = {(u, 1_x)} inside the external category."""
    U, A, C = sit.U, sit.AP.A, sit.A
    one = U.global_identity()
    phi = {x: tuple(_pair_name(U, A, u, A.index_of(C.identity(x))) for u in range(U.size))
           for x in C.objects}
    a_hat = tuple(_pair_name(U, A, one, a) for a in range(A.size))
    return SituationOne(bundle=GroupoidBundle(G=category, U=U, phi=phi), A=a_hat)


def _same_actions(AP: ActionPair, AP2: ActionPair, rename: Callable[[str], str]) -> Optional[Tuple[str, str]]:
    """First (alpha, u) where AP2 differs from AP with A renamed."""
    for a, u in AP.h_pairs():
        a2 = AP2.A.index_of(rename(AP.A.names[a]))
        if AP2.dot(a2, u) != AP.dot(a, u) or AP2.A.names[AP2.exp(a2, u)] != rename(AP.A.names[AP.exp(a, u)]):
            return AP.A.names[a], AP.U.names[u]
    return None


def _from_situation_one(sit: SituationOne) -> Dict[str, Any]:
    B = sit.bundle
    AP, package = convert_zs_actions(B, sit.A)
    if not package.holds():
        raise SituationCheckFailed(package.witness[0], package.witness[1:])
    two = SituationTwo(A=subcategory(B.G, sit.A), U=B.U, AP=AP)
    category, ZS = external_category(two)

    # (u, alpha) -> phi_T(alpha)(u) alpha is an isomorphism onto G
    M = category_as_magma(B.G)
    P = category_as_magma(category)
    g_index = {name: i for i, name in enumerate(M.names)}
    mapping = []
    for u, a in ZS.elements():
        alpha = AP.A.names[a]
        mapping.append(g_index[B.G.compose[(B.phi[B.G.tgt(alpha)][u], alpha)]])
    iso = Morphism(source=P, target=M, mapping=tuple(mapping))
    hom = is_homomorphism(iso)
    if not iso.is_bijective() or not hom.holds() or len(P.table) != len(M.table):
        raise SituationCheckFailed("iso", hom.witness or ("not bijective",))

    back = internal_situation(category, two)
    AP2, _ = convert_zs_actions(back.bundle, back.A)
    one = B.U.names[B.U.global_identity()]
    diff = _same_actions(AP, AP2, lambda n: f"({one},{n})")
    if diff is not None:
        raise SituationCheckFailed("roundtrip", diff)
    return {"morphisms": M.size, "objects": len(B.G.objects)}


def int_ext_roundtrip(sit: Union[SituationOne, SituationTwo]) -> PropertyReport:
    """Pass between the internal and external descriptions and back.

    From I: convert, build the external category, check the canonical
    isomorphism onto G, then read the actions off again. From II: check
    the conditions, build the external category, pass to its internal
    description and check the actions come back unchanged.

    Raises:
        SituationCheckFailed: condition id ("1", "2", "exists", "identity",
            "category", "iso", "roundtrip") with its witness
    """
    if isinstance(sit, SituationOne):
        details = _from_situation_one(sit)
        details["start"] = "I"
    else:
        if tuple(sit.AP.A.names) != category_as_magma(sit.A).names:
            raise ValueError("the actions' A must be the morphism magma of the category")
        failure = _package_violation(sit.A, sit.AP)
        if failure is not None:
            category_logger.warning(f"situation II condition {failure[0]} fails at {failure[1]}")
            raise SituationCheckFailed(failure[0], failure[1])
        category, _ = external_category(sit)
        one_sit = internal_situation(category, sit)
        AP2, _ = convert_zs_actions(one_sit.bundle, one_sit.A)
        one = sit.U.names[sit.U.global_identity()]
        diff = _same_actions(sit.AP, AP2, lambda n: f"({one},{n})")
        if diff is not None:
            raise SituationCheckFailed("roundtrip", diff)
        details = _from_situation_one(one_sit)
        details["start"] = "II"
    category_logger.info(f"roundtrip from situation {details['start']} passes")
    return PropertyReport(property="int_ext_roundtrip", verdict=Verdict.PASS, details=details)


# ---------------------------------------------------------------------------
# Complements

def complement_check(M: Magma, U_subset: Sequence[int], A_subset: Sequence[int]) -> PropertyReport:
    """U n A = {1} and UA = M."""
    U, A = set(U_subset), set(A_subset)
    meet = U & A
    one = M.global_identity()
    if meet != {one}:
        return PropertyReport(property="complement", verdict=Verdict.FAIL,
                              witness=("intersection",) + tuple(M.names[x] for x in sorted(meet)))
    products = {M.mul(u, a) for u, a in product(sorted(U), sorted(A)) if M.defined(u, a)}
    if len(products) != M.size:
        return PropertyReport(property="complement", verdict=Verdict.FAIL,
                              witness=("products", len(products)))
    return PropertyReport(property="complement", verdict=Verdict.PASS, details={"products": len(products)})


def complement_rigidity(M: Magma, J: Sequence[int], L: Sequence[int]) -> PropertyReport:
    """Whether some automorphism of M carries J onto L, given J and L isomorphic."""
    (PJ, _), (PL, _) = restrict(M, J), restrict(M, L)
    same_type = find_isomorphism(PJ, PL) is not None
    autos = automorphisms(M)
    target = set(L)
    carrying = [f for f in autos if {f(j) for j in J} == target]
    details = {"isomorphic": same_type, "automorphisms": len(autos), "carrying": len(carrying)}
    category_logger.info(f"rigidity: {details}")
    if carrying:
        return PropertyReport(property="complement_rigidity", verdict=Verdict.FAIL,
                              witness=tuple(carrying[0].mapping), details=details)
    return PropertyReport(property="complement_rigidity", verdict=Verdict.PASS, details=details)


# ---------------------------------------------------------------------------
# Stock examples

class StockExample(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    description: str = ""
    magma: Optional[Magma] = Field(default=None, description="The ambient table")
    subsets: Dict[str, Tuple[int, ...]] = Field(default_factory=dict, description="Named subsets of the magma")
    actions: Optional[ActionPair] = None
    presentations: Dict[str, Presentation] = Field(default_factory=dict, description="U, A or the whole monoid")
    gen_actions: Optional[GenActions] = None
    situation: Optional[Union[SituationOne, SituationTwo]] = None


def perm_name(p: Permutation) -> str:
    """Cycle notation, "1" for the identity."""
    if p.is_Identity:
        return "1"
    return "".join("(" + " ".join(str(i) for i in cycle) + ")" for cycle in p.cyclic_form)


def symmetric_group(n: int) -> Tuple[Magma, List[Permutation]]:
    """S_n under function-order composition, (ab)(i) = a(b(i)); the identity is element 0."""
    perms = [Permutation(list(p)) for p in permutations(range(n))]
    return magma_from_function(perms, lambda a, b: Permutation.rmul(a, b), [perm_name(p) for p in perms]), perms


def cyclic_group(n: int, gen: str = "g") -> Magma:
    names = ["1", gen] + [f"{gen}^{k}" for k in range(2, n)]
    return magma_from_function(list(range(n)), lambda a, b: (a + b) % n, names[:n])


def _subset(M: Magma, perms: List[Permutation], keep: Callable[[Permutation], bool]) -> Tuple[int, ...]:
    return tuple(i for i, p in enumerate(perms) if keep(p))


def _generated(M: Magma, perms: List[Permutation], *gens: Permutation) -> Tuple[int, ...]:
    return tuple(sorted(generated_subset(M, [perms.index(g) for g in gens] + [0])))


def _s4_with(complement: str) -> StockExample:
    M, perms = symmetric_group(4)
    s3 = _subset(M, perms, lambda p: p(3) == 3)
    if complement == "c4":
        c4 = _generated(M, perms, Permutation([1, 2, 3, 0]))
        AP, _ = derive_internal_actions(M, s3, c4)
        return StockExample(name="s4-s3-c4", description="S4 = S3 C4 (U = S3, A = C4)", magma=M,
                            subsets={"U": s3, "A": c4}, actions=AP)
    klein = _generated(M, perms, Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1]))
    AP, _ = derive_internal_actions(M, klein, s3)
    return StockExample(name="s4-s3-klein", description="S4 = V S3 (U = Klein four, A = S3)", magma=M,
                        subsets={"U": klein, "A": s3}, actions=AP)


def _s3xz2() -> StockExample:
    _, perms = symmetric_group(3)
    elems = [(p, y) for y in (0, 1) for p in perms]
    names = [f"({perm_name(p)},{'y' if y else '1'})" for p, y in elems]
    H = magma_from_function(elems, lambda a, b: (Permutation.rmul(a[0], b[0]), (a[1] + b[1]) % 2), names)
    K = tuple(i for i, (_, y) in enumerate(elems) if y == 0)
    J = tuple(sorted(generated_subset(H, [names.index("((0 1),y)"), 0])))
    L = tuple(sorted(generated_subset(H, [names.index("(1,y)"), 0])))
    return StockExample(name="s3xz2-jkl", description="H = S3 x Z2, K = S3 x 1, J = <((0 1),y)>, L = <(1,y)>",
                        magma=H, subsets={"J": J, "K": K, "L": L})


def _c3_c2_pieces():
    presU = Presentation.of(make_ruleset(("r", "s"), [("rr", "s"), ("ss", "r"), ("rs", "φ"), ("sr", "φ")]))
    presA = Presentation.of(make_ruleset(("f",), [("ff", "φ")]))
    U, A = WordMonoid(rules=presU.rules).to_magma(), WordMonoid(rules=presA.rules).to_magma()
    swap = {U.index_of("1"): U.index_of("1"), U.index_of("r"): U.index_of("s"), U.index_of("s"): U.index_of("r")}
    f = A.index_of("f")
    dot = {(a, u): (swap[u] if a == f else u) for a in range(A.size) for u in range(U.size)}
    exp = {(a, u): a for a in range(A.size) for u in range(U.size)}
    AP = ActionPair(A=A, U=U, dot_table=dot, exp_table=exp, name="conjugation")
    GA = GenActions(X=("r", "s"), Y=("f",), dot={("f", "r"): "s", ("f", "s"): "r"},
                    exp={("f", "r"): ("f",), ("f", "s"): ("f",)})
    return presU, presA, AP, GA


def _s3_c3_c2() -> StockExample:
    presU, presA, AP, GA = _c3_c2_pieces()
    P = monoid_product(AP.U, AP.A, AP).to_magma()
    two = SituationTwo(A=category_from_group(AP.A), U=AP.U, AP=AP)
    return StockExample(name="s3-c3-c2", description="S3 = C3 x| C2 by conjugation, with presentations",
                        magma=P, actions=AP, presentations={"U": presU, "A": presA}, gen_actions=GA,
                        situation=two)


def _c6_c2_c3() -> StockExample:
    M = cyclic_group(6)
    U, A = (0, 3), (0, 2, 4)
    AP, _ = derive_internal_actions(M, U, A)
    return StockExample(name="c6-c2-c3", description="C6 = C2 C3, direct", magma=M,
                        subsets={"U": U, "A": A}, actions=AP)


def _pair_groupoid_c2() -> StockExample:
    C2 = cyclic_group(2, "c")
    pair = pair_groupoid(("a", "b"))
    G = product_category(pair, C2)
    phi = {x: (f"({x}->{x},1)", f"({x}->{x},c)") for x in pair.objects}
    A = tuple(f"({m},1)" for m in pair.morphism_names)
    sit = SituationOne(bundle=GroupoidBundle(G=G, U=C2, phi=phi), A=A)
    return StockExample(name="pair-groupoid-c2", description="pair groupoid on {a,b} times C2, U = C2",
                        magma=category_as_magma(G), situation=sit)


def _groupoid_s3_c2() -> StockExample:
    S3, perms = symmetric_group(3)
    C2 = cyclic_group(2, "σ")
    pair = pair_groupoid(("a", "b"))
    G = product_category(pair, S3)
    c3 = [perm_name(p) for p in perms if p.is_even]
    phi = {"a": ("(a->a,1)", "(a->a,(0 1))"), "b": ("(b->b,1)", "(b->b,(1 2))")}
    A = tuple(f"({m},{g})" for m in pair.morphism_names for g in c3)
    sit = SituationOne(bundle=GroupoidBundle(G=G, U=C2, phi=phi), A=A)
    return StockExample(name="groupoid-s3-c2",
                        description="groupoid with vertex groups S3 on {a,b}, A with vertex groups C3, "
                                    "C2 embedded as <(0 1)> at a and <(1 2)> at b",
                        magma=category_as_magma(G), situation=sit)


def free_swap_actions(max_length: Optional[int] = None) -> ActionPair:
    """U = {x,y}*, A = C2 = {1, σ}; σ swaps letters and σ^w = σ."""
    U = WordMonoid.free(("x", "y")) if max_length is None else WordMonoid.free(("x", "y"), max_length)
    A = cyclic_group(2, "σ")
    flip = {"x": "y", "y": "x"}
    return ActionPair(A=A, U=U, name="free-swap",
                      dot_fn=lambda a, w: tuple(w) if a == 0 else tuple(flip[c] for c in w),
                      exp_fn=lambda a, w: a)


def _free_swap() -> StockExample:
    return StockExample(name="free-swap", description="free monoid on x, y with C2 swapping letters",
                        actions=free_swap_actions())


def _zappa_int() -> StockExample:
    GA = GenActions(X=("x",), Y=("y",), dot={("y", "x"): "x"}, exp={("y", "x"): ("y", "y")})
    pres, _ = action_presentation(GA)
    return StockExample(name="zappa-int", description="<x, y | yx -> xyy>", gen_actions=GA,
                        presentations={"W": pres})


def _dihedral_wp() -> StockExample:
    RS = make_ruleset(("r", "f"), [("rrr", "φ"), ("ff", "φ"), ("fr", "rrf")])
    pres = Presentation.of(RS, TerminationCert(kind=CertKind.RECURSIVE_PATH, order=("r", "f")))
    return StockExample(name="dihedral-wp", description="<r, f | rrr -> 1, ff -> 1, fr -> rrf>",
                        presentations={"W": pres})


_REGISTRY: Dict[str, Callable[[], StockExample]] = {
    "s4-s3-c4": lambda: _s4_with("c4"),
    "s4-s3-klein": lambda: _s4_with("klein"),
    "s3xz2-jkl": _s3xz2,
    "s3-c3-c2": _s3_c3_c2,
    "c6-c2-c3": _c6_c2_c3,
    "pair-groupoid-c2": _pair_groupoid_c2,
    "groupoid-s3-c2": _groupoid_s3_c2,
    "free-swap": _free_swap,
    "zappa-int": _zappa_int,
    "dihedral-wp": _dihedral_wp,
}

STOCK_EXAMPLES = tuple(_REGISTRY)


@lru_cache(maxsize=None)
def stock_example(name: str) -> StockExample:
    """Prebuilt tables, subsets, actions and presentations by name.

    Raises:
        UnknownExample: name is not registered
    """
    if name not in _REGISTRY:
        raise UnknownExample(f"no stock example {name!r}; known: {', '.join(STOCK_EXAMPLES)}", name)
    category_logger.debug(f"building stock example {name}")
    return _REGISTRY[name]()
