"""External and internal Zappa-Szep products, their properties and their lclms."""

from enum import Enum
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from src.algebra.magma_core import (build_magma, check_property, domain_left_identity,
                                    domain_right_identity, is_group, is_homomorphism, is_lclm,
                                    is_monoid, lclm as magma_lclm, restrict)
from src.algebra.mutual_actions import (ActionPair, Axiom, ProductDomain, check_axiom,
                                        check_axioms, derive_internal_actions)
from src.config.config import LCLM_SEARCH_LENGTH
from src.models.base_models import (AxiomReport, EmbeddingFns, LclmWitness, Magma, Morphism,
                                    ParenTree, PropertyReport, Verdict)
from src.models.errors import (ClauseFailed, ConditionFailed, FuelExhausted, HypothesisFailed,
                               NoCommonLeftMultipleFound, NotCategorical, ReconstructionFailed,
                               ZSError)
from src.utils.fuel import Fuel
from src.utils.logging_utils import product_logger

Element = Tuple[Any, Any]


class ProductKind(str, Enum):
    DIRECT = "direct"
    SEMIDIRECT = "semidirect"
    GENERAL = "general"


class ZSProduct(BaseModel):
    """Pairs (u, alpha) of E under (u, alpha)(v, beta) = (u(alpha.v), alpha^v beta).

    The product is defined iff (alpha, v) is in H, u D (alpha.v) in U and
    alpha^v D beta in A.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    AP: ActionPair
    E: ProductDomain = Field(default_factory=ProductDomain.full)
    provenance: str = Field(default="external", description="external | internal")
    closure: List[AxiomReport] = Field(default_factory=list, description="P1a-c on E")
    totality: Optional[PropertyReport] = Field(default=None, description="H inside the projections of E")

    _cache: Dict[str, Any] = PrivateAttr(default_factory=dict)

    @property
    def U(self) -> Any:
        return self.AP.U

    @property
    def A(self) -> Any:
        return self.AP.A

    @property
    def is_finite(self) -> bool:
        return self.AP.is_finite

    def elements(self, bound: Optional[int] = None) -> List[Element]:
        key = ("elements", bound)
        if key not in self._cache:
            self._cache[key] = [(u, a) for u in self.U.elements(bound) for a in self.A.elements(bound)
                                if self.E.contains(u, a)]
        return self._cache[key]

    def defined(self, x: Element, y: Element) -> bool:
        (u, a), (v, b) = x, y
        if not self.AP.in_h(a, v):
            return False
        return self.U.defined(u, self.AP.dot(a, v)) and self.A.defined(self.AP.exp(a, v), b)

    def mul(self, x: Element, y: Element) -> Element:
        (u, a), (v, b) = x, y
        return self.U.mul(u, self.AP.dot(a, v)), self.A.mul(self.AP.exp(a, v), b)

    def maybe_mul(self, x: Element, y: Element) -> Optional[Element]:
        return self.mul(x, y) if self.defined(x, y) else None

    def label(self, x: Element) -> str:
        return f"({self.U.label(x[0])},{self.A.label(x[1])})"

    def contains(self, x: Any) -> bool:
        return (isinstance(x, tuple) and len(x) == 2 and self.U.contains(x[0])
                and self.A.contains(x[1]) and self.E.contains(*x))

    def is_right_identity(self, x: Element, bound: Optional[int] = None) -> bool:
        return domain_right_identity(self, x, bound)

    def is_left_identity(self, x: Element, bound: Optional[int] = None) -> bool:
        return domain_left_identity(self, x, bound)

    def global_identity(self) -> Optional[Element]:
        if "global" not in self._cache:
            found = None
            if self.is_finite:
                elems = self.elements()
                for e in elems:
                    if all(self.maybe_mul(e, x) == x and self.maybe_mul(x, e) == x for x in elems):
                        found = e
                        break
            else:
                one_u, one_a = self.U.global_identity(), self.A.global_identity()
                if one_u is not None and one_a is not None:
                    found = (one_u, one_a)
            self._cache["global"] = found
        return self._cache["global"]

    def inverse(self, x: Element) -> Optional[Element]:
        e = self.global_identity()
        if e is None:
            return None
        for y in self.elements():
            if self.maybe_mul(x, y) == e and self.maybe_mul(y, x) == e:
                return y
        return None

    def to_magma(self) -> Magma:
        """The product table over E; products landing outside E are dropped and listed
        in ``dropped``."""
        if not self.is_finite:
            raise ValueError("only finite products have a table")
        if "magma" not in self._cache:
            elems = self.elements()
            index = {x: i for i, x in enumerate(elems)}
            entries, dropped = [], []
            for x, y in product(elems, repeat=2):
                if not self.defined(x, y):
                    continue
                z = self.mul(x, y)
                if z in index:
                    entries.append(((index[x], index[y]), index[z]))
                else:
                    dropped.append((self.label(x), self.label(y), self.label(z)))
            if dropped:
                product_logger.warning(f"{len(dropped)} products leave E; first {dropped[0]}")
            self._cache["dropped"] = dropped
            self._cache["magma"] = build_magma(len(elems), [self.label(x) for x in elems], entries)
        return self._cache["magma"]

    @property
    def dropped(self) -> List[Tuple[str, str, str]]:
        self.to_magma()
        return self._cache["dropped"]

    def index(self, x: Element) -> int:
        return self.elements().index(x)


# ---------------------------------------------------------------------------
# Construction

def _totality(AP: ActionPair, E: ProductDomain) -> PropertyReport:
    if not AP.is_finite:
        return PropertyReport(property="h_within_projections", verdict=Verdict.NOT_APPLICABLE,
                              notes=["infinite domains"])
    us = {u for u in AP.U.elements() for a in AP.A.elements() if E.contains(u, a)}
    alphas = {a for u in AP.U.elements() for a in AP.A.elements() if E.contains(u, a)}
    for a, u in AP.h_pairs():
        if a not in alphas or u not in us:
            return PropertyReport(property="h_within_projections", verdict=Verdict.FAIL, witness=(a, u))
    return PropertyReport(property="h_within_projections", verdict=Verdict.PASS)


def external_product(AP: ActionPair, E: Optional[ProductDomain] = None,
                     provenance: str = "external") -> ZSProduct:
    """Put the twisted product on E (all of U x A by default) and attach closure reports."""
    E = E or ProductDomain.full()
    closure = check_axioms(AP, E, ["P1"])
    ZS = ZSProduct(AP=AP, E=E, provenance=provenance, closure=closure, totality=_totality(AP, E))
    product_logger.info(
        f"{provenance} product {AP.name or ''}: closure "
        f"{', '.join(f'{r.axiom}={r.verdict.value}' for r in closure)}"
    )
    return ZS


def _categorical_or_raise(M: Magma) -> None:
    report = check_property(M, "categorical")
    if not report.holds():
        product_logger.warning(f"magma is not categorical at {report.witness}")
        raise NotCategorical("multiplication is not categorical", report.witness)


def reconstruction_iso(M: Magma, U_subset: Iterable[int], A_subset: Iterable[int]) -> Morphism:
    """The isomorphism (u, alpha) -> u alpha from the external product on
    E = D n (U x A), with the derived actions, onto M.

    Raises:
        NotCategorical: M's multiplication is not categorical
        ReconstructionFailed: definedness or products disagree somewhere
    """
    _categorical_or_raise(M)
    AP, table = derive_internal_actions(M, U_subset, A_subset)
    E = ProductDomain(pairs=frozenset(
        (iu, ia) for (iu, u), (ia, a) in product(enumerate(table.u_embedding), enumerate(table.a_embedding))
        if M.defined(u, a)
    ))
    ZS = external_product(AP, E, provenance="internal")
    P = ZS.to_magma()
    mapping = tuple(M.mul(table.u_embedding[u], table.a_embedding[a]) for u, a in ZS.elements())
    for x, y in product(range(P.size), repeat=2):
        fx, fy = mapping[x], mapping[y]
        if P.defined(x, y) != M.defined(fx, fy):
            raise ReconstructionFailed(f"definedness differs at {P.names[x]}, {P.names[y]}",
                                       (P.names[x], P.names[y]))
        if P.defined(x, y) and mapping[P.mul(x, y)] != M.mul(fx, fy):
            raise ReconstructionFailed(f"products differ at {P.names[x]}, {P.names[y]}",
                                       (P.names[x], P.names[y]))
    product_logger.info(f"reconstruction matches on {P.size} elements")
    return Morphism(source=P, target=M, mapping=mapping)


# ---------------------------------------------------------------------------
# Embedding functions

def _full_identity(dom: Any, x: Any) -> bool:
    return dom.is_right_identity(x) and dom.is_left_identity(x)


def _embedding_clauses(AP: ActionPair, E: ProductDomain, i: Dict, j: Dict):
    """Yield (clause id, witness) for every violated clause."""
    U, A = AP.U, AP.A
    for u in U.elements():
        ju = j[u]
        if not _full_identity(A, ju):
            yield "j1", (u,)
        for v in U.elements():
            if U.defined(u, v) and not (j[u] == j[v] == j[U.mul(u, v)]):
                yield "j2", (u, v)
        if not E.contains(u, ju):
            yield "j3", (u,)
        if not AP.in_h(ju, u):
            yield "j4", (u,)
        else:
            if AP.dot(ju, u) != u:
                yield "j5", (u,)
            if AP.exp(ju, u) != ju:
                yield "j6", (u,)
        if not A.defined(ju, ju):
            yield "j7", (u,)
    for a in A.elements():
        ia = i[a]
        if not _full_identity(U, ia):
            yield "i1", (a,)
        for b in A.elements():
            if A.defined(a, b) and not (i[a] == i[b] == i[A.mul(a, b)]):
                yield "i2", (a, b)
        if not E.contains(ia, a):
            yield "i3", (a,)
        if not AP.in_h(a, ia):
            yield "i4", (a,)
        else:
            if AP.dot(a, ia) != ia:
                yield "i5", (a,)
            if AP.exp(a, ia) != a:
                yield "i6", (a,)
        if not U.defined(ia, ia):
            yield "i7", (a,)
    for a, u in AP.h_pairs():
        if not (U.defined(i[a], AP.dot(a, u)) and A.defined(AP.exp(a, u), j[u])):
            yield "h", (a, u)
    for u, a in product(U.elements(), A.elements()):
        if not E.contains(u, a):
            continue
        ju, ia = j[u], i[a]
        ok = (AP.in_h(ju, ia) and AP.dot(ju, ia) == ia and AP.exp(ju, ia) == ju
              and U.defined(u, ia) and A.defined(ju, a))
        if not ok:
            yield "e", (u, a)


def verify_embedding_functions(AP: ActionPair, E: Optional[ProductDomain],
                               emb: EmbeddingFns) -> Tuple[PropertyReport, Tuple[Morphism, Morphism]]:
    """Check every clause of the embedding-function definition, then the embeddings.

    Returns the report and the homomorphic embeddings A -> E, alpha -> (i(alpha), alpha)
    and U -> E, u -> (u, j(u)), after checking unique factorization
    (u, j(u))(i(alpha), alpha) of every element of E and that the embeddings
    carry the actions: (i(alpha), alpha)(u, j(u)) = (alpha.u, alpha^u).

    Raises:
        ClauseFailed: the first violated clause with its witness
    """
    E = E or ProductDomain.full()
    i, j = emb.i, emb.j
    first = next(_embedding_clauses(AP, E, i, j), None)
    if first is not None:
        clause, witness = first
        product_logger.warning(f"embedding clause {clause} fails at {witness}")
        raise ClauseFailed(clause, witness)

    ZS = external_product(AP, E)
    P = ZS.to_magma()
    into_a = Morphism(source=AP.A, target=P, mapping=tuple(ZS.index((i[a], a)) for a in AP.A.elements()))
    into_u = Morphism(source=AP.U, target=P, mapping=tuple(ZS.index((u, j[u])) for u in AP.U.elements()))
    for clause, f in (("hom_A", into_a), ("hom_U", into_u)):
        report = is_homomorphism(f)
        if not report.holds():
            raise ClauseFailed(clause, report.witness)

    for x in ZS.elements():
        splits = [(u, a) for u, a in product(AP.U.elements(), AP.A.elements())
                  if ZS.maybe_mul((u, j[u]), (i[a], a)) == x]
        if splits != [x]:
            raise ClauseFailed("unique", (x, tuple(splits)))
    for a, u in AP.h_pairs():
        if ZS.maybe_mul((i[a], a), (u, j[u])) != (AP.dot(a, u), AP.exp(a, u)):
            raise ClauseFailed("actions", (a, u))
    return PropertyReport(property="embedding_functions", verdict=Verdict.PASS), (into_a, into_u)


def identity_embeddings(AP: ActionPair) -> EmbeddingFns:
    """i = 1_U and j = 1_A, the embedding functions of monoid factors."""
    one_u, one_a = AP.U.global_identity(), AP.A.global_identity()
    return EmbeddingFns(i={a: one_u for a in AP.A.elements()}, j={u: one_a for u in AP.U.elements()})


# ---------------------------------------------------------------------------
# Monoid and group products

def _require(AP: ActionPair, tags: Sequence[str]) -> List[AxiomReport]:
    reports = check_axioms(AP, None, tags)
    for report in reports:
        if not report.holds():
            product_logger.warning(f"hypothesis {report.axiom} fails: {report.witness}")
            raise HypothesisFailed(f"hypothesis {report.axiom} fails", report)
    return reports


def _require_kind(dom: Any, check, what: str, side: str) -> None:
    if isinstance(dom, Magma) and not check(dom):
        raise HypothesisFailed(f"{side} is not a {what}", side)
    if not isinstance(dom, Magma) and dom.global_identity() is None:
        raise HypothesisFailed(f"{side} has no global identity", side)


def monoid_product(U: Any, A: Any, AP: ActionPair) -> ZSProduct:
    """U x A under the twisted product, a monoid with identity (1_U, 1_A).

    Raises:
        HypothesisFailed: a factor is not a monoid, or one of P2a-d, P6,
            P7a, P7d, P7e, P7f fails (carrying the failing report)
    """
    _require_kind(U, is_monoid, "monoid", "U")
    _require_kind(A, is_monoid, "monoid", "A")
    _require(AP, ["P6", "P2", "P7a", "P7d", "P7e", "P7f"])
    ZS = external_product(AP)
    if ZS.is_finite:
        P = ZS.to_magma()
        one = ZS.index((U.global_identity(), A.global_identity()))
        if not is_monoid(P) or P.global_identity() != one:
            raise HypothesisFailed("product table is not a monoid with identity (1, 1)", one)
    product_logger.info(f"monoid product built ({'finite' if ZS.is_finite else 'word'} carrier)")
    return ZS


def group_product(U: Magma, A: Magma, AP: ActionPair) -> ZSProduct:
    _require_kind(U, is_group, "group", "U")
    _require_kind(A, is_group, "group", "A")
    _require(AP, ["P6", "P2", "P7"])
    ZS = external_product(AP)
    if not is_group(ZS.to_magma()):
        raise HypothesisFailed("product table is not a group", None)
    product_logger.info(f"group product of order {len(ZS.elements())}")
    return ZS


def classify_product(AP: ActionPair) -> ProductKind:
    """direct when both actions are trivial, semidirect when only exp is, general otherwise."""
    h = AP.h_pairs()
    exp_trivial = all(AP.exp(a, u) == a for a, u in h)
    dot_trivial = all(AP.dot(a, u) == u for a, u in h)
    if exp_trivial and dot_trivial:
        return ProductKind.DIRECT
    if exp_trivial:
        return ProductKind.SEMIDIRECT
    return ProductKind.GENERAL


def inverse_form_check(ZS: ZSProduct) -> PropertyReport:
    """(alpha^u)^-1 = (alpha^-1)^(alpha.u) on every (alpha, u) of H."""
    AP = ZS.AP
    for a, u in AP.h_pairs():
        a_inv = AP.A.inverse(a)
        lhs = AP.A.inverse(AP.exp(a, u))
        rhs = AP.exp(a_inv, AP.dot(a, u)) if a_inv is not None else None
        if lhs is None or lhs != rhs:
            return PropertyReport(property="inverse_form", verdict=Verdict.FAIL, witness=(a, u))
    return PropertyReport(property="inverse_form", verdict=Verdict.PASS)


# ---------------------------------------------------------------------------
# Transfer of properties from the factors to the product

def _implication(name: str, hypotheses: Dict[str, bool], conclusion: PropertyReport) -> PropertyReport:
    unmet = [h for h, ok in hypotheses.items() if not ok]
    if unmet:
        return PropertyReport(property=name, verdict=Verdict.NOT_APPLICABLE,
                              notes=[f"unmet hypotheses: {', '.join(unmet)}"])
    if conclusion.holds():
        return PropertyReport(property=name, verdict=Verdict.PASS)
    return PropertyReport(property=name, verdict=Verdict.FAIL, witness=conclusion.witness,
                          notes=[f"conclusion {conclusion.property} fails"])


def _right_identities_split(ZS: ZSProduct, P: Magma) -> PropertyReport:
    for k, (u, a) in enumerate(ZS.elements()):
        if P.is_right_identity(k) and not (ZS.U.is_right_identity(u) and ZS.A.is_right_identity(a)):
            return PropertyReport(property="right_identities_split", verdict=Verdict.FAIL, witness=(k,))
    return PropertyReport(property="right_identities_split", verdict=Verdict.PASS)


def _right_identities_combine(ZS: ZSProduct, P: Magma) -> PropertyReport:
    for k, (u, a) in enumerate(ZS.elements()):
        if ZS.U.is_right_identity(u) and ZS.A.is_right_identity(a) and not P.is_right_identity(k):
            return PropertyReport(property="right_identities_combine", verdict=Verdict.FAIL, witness=(k,))
    return PropertyReport(property="right_identities_combine", verdict=Verdict.PASS)


def transfer_checks(ZS: ZSProduct) -> List[PropertyReport]:
    """Each hypothesis bundle on the factors that holds must give its conclusion on the product.

    Reports are not-applicable where the hypotheses fail.
    """
    U, A, AP = ZS.U, ZS.A, ZS.AP
    if not (isinstance(U, Magma) and isinstance(A, Magma)):
        raise ValueError("transfer checks need finite factors")
    P = ZS.to_magma()
    ax = {a: check_axiom(AP, ZS.E, a).holds() for a in Axiom}
    p2 = all(v for k, v in ax.items() if k.value.startswith("P2"))

    def both(prop: str) -> bool:
        return check_property(U, prop).holds() and check_property(A, prop).holds()

    full_e = ZS.E.is_full
    out = [
        _implication("right_assoc", {
            "factors right_assoc": both("right_assoc"),
            "P2a=> P2b=> P2c<= P2d<=": all(ax[a] for a in (Axiom.P2A_FWD, Axiom.P2B_FWD,
                                                          Axiom.P2C_BWD, Axiom.P2D_BWD)),
        }, check_property(P, "right_assoc")),
        _implication("left_assoc", {
            "factors left_assoc": both("left_assoc"),
            "P2a<= P2b<= P2c=> P2d=>": all(ax[a] for a in (Axiom.P2A_BWD, Axiom.P2B_BWD,
                                                          Axiom.P2C_FWD, Axiom.P2D_FWD)),
        }, check_property(P, "left_assoc")),
        _implication("assoc", {"factors assoc": both("assoc"), "P2": p2}, check_property(P, "assoc")),
        _implication("categorical", {
            "factors categorical": both("categorical"), "P2": p2,
            "P3": ax[Axiom.P3A] and ax[Axiom.P3B],
        }, check_property(P, "categorical")),
        _implication("right_canc", {"factors right_canc": both("right_canc"), "P4a": ax[Axiom.P4A]},
                     check_property(P, "right_canc")),
        _implication("common_right_multiples", {
            "factors common_right_multiples": both("common_right_multiples"),
            "P6": ax[Axiom.P6], "P5a": ax[Axiom.P5A],
        }, check_property(P, "common_right_multiples")),
        _implication("semigroup", {
            "factors semigroups": both("full") and both("assoc"), "P2": p2, "P6": ax[Axiom.P6],
        }, PropertyReport(property="semigroup", verdict=Verdict.PASS)
            if check_property(P, "full").holds() and check_property(P, "assoc").holds()
            else PropertyReport(property="semigroup", verdict=Verdict.FAIL, witness=("semigroup",))),
        _implication("right_identities_split", {
            "E = U x A": full_e, "P7a P7e P7g": ax[Axiom.P7A] and ax[Axiom.P7E] and ax[Axiom.P7G],
        }, _right_identities_split(ZS, P)),
        _implication("right_identities_combine", {
            "E = U x A": full_e, "P7a P7e": ax[Axiom.P7A] and ax[Axiom.P7E],
        }, _right_identities_combine(ZS, P)),
        _implication("has_right_identities", {
            "E = U x A": full_e, "factors have right identities": both("has_right_identities"),
            "P7a P7e P7g P5a": all(ax[a] for a in (Axiom.P7A, Axiom.P7E, Axiom.P7G, Axiom.P5A)),
        }, check_property(P, "has_right_identities")),
        _implication("left_inverses_wrt_right_identities", {
            "E = U x A": full_e,
            "factors have left inverses": both("left_inverses_wrt_right_identities"),
            "P2a P2c": all(ax[a] for a in (Axiom.P2A_FWD, Axiom.P2A_BWD, Axiom.P2C_FWD, Axiom.P2C_BWD)),
            "P7a P7c P7e P7g P5b": all(ax[a] for a in (Axiom.P7A, Axiom.P7C, Axiom.P7E, Axiom.P7G, Axiom.P5B)),
        }, check_property(P, "left_inverses_wrt_right_identities")),
    ]
    for report in out:
        product_logger.debug(f"transfer {report.property}: {report.verdict.value}")
    return out


# ---------------------------------------------------------------------------
# Least common left multiples

def _u_lclm(U: Any, a: Any, b: Any) -> Optional[Tuple[Any, Any, Any]]:
    if isinstance(U, Magma):
        return magma_lclm(U, a, b)
    return U.lclm(a, b)


def _u_is_lclm(U: Any, a: Any, b: Any, l: Any) -> bool:
    if isinstance(U, Magma):
        return is_lclm(U, a, b, l)
    found = U.lclm(a, b)
    return found is not None and found[0] == l


def _product_hypotheses(ZS: ZSProduct) -> None:
    U, A = ZS.U, ZS.A
    if not (isinstance(A, Magma) and is_group(A)):
        raise HypothesisFailed("A is not a finite group", "A")
    if isinstance(U, Magma):
        for prop in ("left_canc", "right_canc", "least_common_left_multiples"):
            report = check_property(U, prop)
            if not report.holds():
                raise HypothesisFailed(f"U fails {prop}", report)
        if not is_monoid(U):
            raise HypothesisFailed("U is not a monoid", "U")
    elif not getattr(U, "is_free", False):
        raise HypothesisFailed("word domain U must be a free monoid", "U")
    report = check_axiom(ZS.AP, ZS.E, Axiom.P8)
    if not report.holds():
        raise HypothesisFailed("P8 (strong coconfluence of exp) fails", report)


def _search_cofactors(ZS: ZSProduct, x: Element, y: Element, fuel: Fuel) -> Tuple[Element, Element]:
    """Least cofactors (p, alpha), (q, beta) with (p, alpha) x = (q, beta) y, A-components first."""
    us = ZS.U.elements(LCLM_SEARCH_LENGTH)
    for a, b in product(ZS.A.elements(), repeat=2):
        for p in us:
            left = ZS.maybe_mul((p, a), x)
            fuel.spend()
            if left is None:
                continue
            for q in us:
                if ZS.maybe_mul((q, b), y) == left:
                    return (p, a), (q, b)
    raise NoCommonLeftMultipleFound(f"no common left multiple with cofactors up to length {LCLM_SEARCH_LENGTH}",
                                    (x, y))


def product_lclm(ZS: ZSProduct, x: Element, y: Element,
                 witness: Optional[Tuple[Element, Element]] = None,
                 fuel: Optional[int] = None, check_hypotheses: bool = True) -> LclmWitness:
    """Least common left multiple of x = (u, theta) and y = (v, phi) in a product of a
    cancellative monoid with lclms by a group.

    Cofactors (p, alpha), (q, beta) of some common left multiple are taken
    from ``witness`` or searched for. Then r(alpha.u) = s(beta.v) is the lclm
    of (alpha.u, beta.v) in U, and (r, alpha) x = (s, beta) y is the lclm in
    the product.

    Raises:
        HypothesisFailed: U, A or P8 fail the required properties
        NoCommonLeftMultipleFound: the search found no common left multiple
    """
    if check_hypotheses:
        _product_hypotheses(ZS)
    budget = Fuel.coerce(fuel, "lclm search")
    u, v = x[0], y[0]

    if witness is None:
        try:
            witness = _search_cofactors(ZS, x, y, budget)
        except FuelExhausted as err:
            raise NoCommonLeftMultipleFound(f"fuel ran out looking for a common left multiple: {err}", (x, y))
    (p, a), (q, b) = witness
    m = ZS.maybe_mul((p, a), x)
    if m is None or m != ZS.maybe_mul((q, b), y):
        raise HypothesisFailed("supplied cofactors do not give a common left multiple", witness)

    au, bv = ZS.AP.dot(a, u), ZS.AP.dot(b, v)
    found = _u_lclm(ZS.U, au, bv)
    if found is None:
        raise HypothesisFailed("U has no lclm for the acted pair", (au, bv))
    _, r, s = found
    left, right = (r, a), (s, b)
    multiple = ZS.maybe_mul(left, x)
    if multiple is None:
        raise HypothesisFailed("lclm cofactor does not multiply x", (left, x))

    checks = {
        "cofactors_agree": multiple == ZS.maybe_mul(right, y),
        "u_level_lclm": _u_is_lclm(ZS.U, au, bv, ZS.U.mul(r, au)),
        "witness_is_multiple": any(ZS.maybe_mul(k, multiple) == m for k in ZS.elements(LCLM_SEARCH_LENGTH)),
    }
    product_logger.debug(f"lclm of {ZS.label(x)}, {ZS.label(y)}: {multiple} {checks}")
    return LclmWitness(left_cofactor=left, right_cofactor=right, multiple=multiple, checks=checks)


def lclm_transport_check(AP: ActionPair, u: Any, v: Any, gamma: Any) -> PropertyReport:
    """For the lclm l = wu = zv in U, alpha = gamma^w and beta = gamma^z,
    q = gamma.l equals (gamma.w)(alpha.u) and (gamma.z)(beta.v) and is an lclm
    of (alpha.u, beta.v)."""
    U = AP.U
    found = _u_lclm(U, u, v)
    if found is None:
        return PropertyReport(property="lclm_transport", verdict=Verdict.NOT_APPLICABLE,
                              notes=["u and v have no lclm"])
    l, w, z = found
    alpha, beta = AP.exp(gamma, w), AP.exp(gamma, z)
    q = AP.dot(gamma, l)
    au, bv = AP.dot(alpha, u), AP.dot(beta, v)
    via_u = U.mul(AP.dot(gamma, w), au)
    via_v = U.mul(AP.dot(gamma, z), bv)
    if q != via_u or q != via_v:
        return PropertyReport(property="lclm_transport", verdict=Verdict.FAIL, witness=(u, v, gamma),
                              notes=["gamma.l does not factor through the acted pair"])
    if not _u_is_lclm(U, au, bv, q):
        return PropertyReport(property="lclm_transport", verdict=Verdict.FAIL, witness=(u, v, gamma),
                              notes=["gamma.l is not an lclm of the acted pair"])
    return PropertyReport(property="lclm_transport", verdict=Verdict.PASS)


# ---------------------------------------------------------------------------
# Iterated products

def _product_of(M: Magma, xs: Sequence[int]) -> Optional[int]:
    acc = xs[0]
    for x in xs[1:]:
        if not M.defined(acc, x):
            return None
        acc = M.mul(acc, x)
    return acc


def _span_set(M: Magma, factors: Sequence[Sequence[int]], i: int, j: int) -> set:
    """W_i^j, the defined products u_i ... u_j (1-based, inclusive)."""
    out = set()
    for xs in product(*factors[i - 1:j]):
        x = _product_of(M, xs)
        if x is not None:
            out.add(x)
    return out


def check_chain_conditions(M: Magma, factors: Sequence[Sequence[int]]) -> Dict[int, Tuple[int, ...]]:
    """Conditions (a)-(d) of an n-fold unique factorization.

    Returns each element's factorization (u_1, ..., u_n).

    Raises:
        ConditionFailed: index 'a', 'b', 'c' or 'd' with its witness
    """
    n = len(factors)
    report = check_property(M, "categorical")
    if not report.holds():
        raise ConditionFailed("a", report.witness)

    found: Dict[int, List[Tuple[int, ...]]] = {x: [] for x in range(M.size)}
    for xs in product(*factors):
        x = _product_of(M, xs)
        if x is not None:
            found[x].append(xs)
    for x in range(M.size):
        if len(found[x]) != 1:
            raise ConditionFailed("b", (M.names[x], tuple(tuple(M.names[k] for k in xs) for xs in found[x])))

    for i in range(n - 1):
        for u in factors[i]:
            if not any(M.defined(u, w) and M.mul(u, w) == u for w in factors[i + 1]):
                raise ConditionFailed("c", (i + 1, M.names[u], "right"))
    for j in range(1, n):
        for u in factors[j]:
            if not any(M.defined(w, u) and M.mul(w, u) == u for w in factors[j - 1]):
                raise ConditionFailed("c", (j + 1, M.names[u], "left"))

    for i in range(1, n + 1):
        for j in range(i, n + 1):
            W = _span_set(M, factors, i, j)
            for a, b in product(sorted(W), repeat=2):
                if M.defined(a, b) and M.mul(a, b) not in W:
                    raise ConditionFailed("d", (i, j, M.names[a], M.names[b]))
    return {x: xs[0] for x, xs in found.items()}


def _verify_tree(M: Magma, factors: Sequence[Sequence[int]], tree: ParenTree) -> int:
    """Reconstruct every internal node as the product of its two spans; returns node count."""
    if tree.leaf is not None:
        return 0
    leaves = tree.leaves()
    i, j = leaves[0], leaves[-1]
    k = tree.left.leaves()[-1]
    W, embedding = restrict(M, _span_set(M, factors, i, j))
    local = {x: n for n, x in enumerate(embedding)}
    left = [local[x] for x in _span_set(M, factors, i, k)]
    right = [local[x] for x in _span_set(M, factors, k + 1, j)]
    reconstruction_iso(W, left, right)
    return 1 + _verify_tree(M, factors, tree.left) + _verify_tree(M, factors, tree.right)


def assoc_chain_iso(M: Magma, factors: Sequence[Iterable[int]], tree: ParenTree) -> PropertyReport:
    """Check (a)-(d), then that E(u_1, ..., u_n) -> u_1 ... u_n is an isomorphism for the tree.

    Raises:
        ConditionFailed: one of (a)-(d) fails
    """
    factors = [sorted(set(f)) for f in factors]
    if not tree.spans(len(factors)):
        raise ValueError(f"tree {tree.render()} does not have leaves 1..{len(factors)}")
    check_chain_conditions(M, factors)
    try:
        nodes = _verify_tree(M, factors, tree)
    except ZSError as err:
        return PropertyReport(property="assoc_chain", verdict=Verdict.FAIL,
                              witness=(tree.render(), str(err)))
    product_logger.info(f"tree {tree.render()}: {nodes} reconstructions verified")
    return PropertyReport(property="assoc_chain", verdict=Verdict.PASS,
                          details={"tree": tree.render(), "nodes": nodes, "elements": M.size})


def _nest(tree: ParenTree, names: Sequence[str]) -> Any:
    if tree.leaf is not None:
        return names[tree.leaf - 1]
    return (_nest(tree.left, names), _nest(tree.right, names))


def chain_composite(M: Magma, factors: Sequence[Iterable[int]], first: ParenTree,
                    second: ParenTree) -> Dict[Any, Any]:
    """The bijection E1(u_1, ..., u_n) -> u_1 ... u_n -> E2(u_1, ..., u_n) as nested name pairs."""
    factors = [sorted(set(f)) for f in factors]
    for tree in (first, second):
        report = assoc_chain_iso(M, factors, tree)
        if not report.holds():
            raise ReconstructionFailed(f"tree {tree.render()} does not reconstruct", report.witness)
    splits = check_chain_conditions(M, factors)
    out = {}
    for xs in splits.values():
        names = [M.names[k] for k in xs]
        out[_nest(first, names)] = _nest(second, names)
    return out
