"""Mutual actions between two multiplicative domains and the P1-P8 axiom catalog."""

from enum import Enum
from itertools import product
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.algebra.magma_core import lclm as magma_lclm, restrict
from src.config.config import AXIOM_WORD_LENGTH
from src.models.base_models import AxiomReport, Magma, PropertyReport, Verdict
from src.models.errors import (FactorizationAmbiguous, FactorizationMissing, FuelExhausted,
                               NotClosed)
from src.utils.logging_utils import actions_logger

Pair = Tuple[Any, Any]


class ProductDomain(BaseModel):
    """The subset E of U x A on which the product is put; ``pairs=None`` is all of U x A."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pairs: Optional[FrozenSet[Tuple[Any, Any]]] = Field(default=None, description="(u, alpha) members")

    @classmethod
    def full(cls) -> "ProductDomain":
        return cls()

    @property
    def is_full(self) -> bool:
        return self.pairs is None

    def contains(self, u: Any, alpha: Any) -> bool:
        return self.pairs is None or (u, alpha) in self.pairs


class ActionPair(BaseModel):
    """Domains U and A with actions dot: H -> U and exp: H -> A on H inside A x U.

    Finite action pairs keep both actions as tables keyed by (alpha, u).
    Word-domain pairs supply ``dot_fn`` / ``exp_fn`` and, when H is not
    all of A x U, the predicate ``h_fn``.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: Any = Field(..., description="Acting domain (a MulDomain)")
    U: Any = Field(..., description="Acted-on domain (a MulDomain)")
    h: Optional[FrozenSet[Tuple[Any, Any]]] = Field(default=None, description="H as explicit pairs; None is A x U")
    dot_table: Dict[Tuple[Any, Any], Any] = Field(default_factory=dict, description="(alpha, u) -> alpha.u")
    exp_table: Dict[Tuple[Any, Any], Any] = Field(default_factory=dict, description="(alpha, u) -> alpha^u")
    dot_fn: Optional[Callable[[Any, Any], Any]] = None
    exp_fn: Optional[Callable[[Any, Any], Any]] = None
    h_fn: Optional[Callable[[Any, Any], bool]] = None
    name: str = Field(default="", description="Label used in logs and files")

    @model_validator(mode="after")
    def _tables_cover_h(self):
        if self.dot_fn is not None or self.exp_fn is not None:
            return self
        if not (self.A.is_finite and self.U.is_finite):
            raise ValueError("infinite domains need dot_fn and exp_fn")
        expected = set(self.h_pairs())
        for family, table, codomain in (("dot", self.dot_table, self.U), ("exp", self.exp_table, self.A)):
            keys = set(table)
            if keys != expected:
                stray = sorted(keys ^ expected)[0]
                raise ValueError(f"{family} is not defined on exactly H (first difference {stray})")
            for key, value in table.items():
                if not codomain.contains(value):
                    raise ValueError(f"{family}{key} = {value} lies outside its codomain")
        return self

    @property
    def is_finite(self) -> bool:
        return self.A.is_finite and self.U.is_finite

    @property
    def tabulated(self) -> bool:
        return self.dot_fn is None and self.exp_fn is None

    def in_h(self, alpha: Any, u: Any) -> bool:
        if self.h is not None:
            return (alpha, u) in self.h
        if self.h_fn is not None:
            return bool(self.h_fn(alpha, u))
        return True

    def dot(self, alpha: Any, u: Any) -> Optional[Any]:
        if not self.in_h(alpha, u):
            return None
        return self.dot_fn(alpha, u) if self.dot_fn is not None else self.dot_table.get((alpha, u))

    def exp(self, alpha: Any, u: Any) -> Optional[Any]:
        if not self.in_h(alpha, u):
            return None
        return self.exp_fn(alpha, u) if self.exp_fn is not None else self.exp_table.get((alpha, u))

    def h_pairs(self, bound: Optional[int] = None) -> List[Pair]:
        return [(a, u) for a in self.A.elements(bound) for u in self.U.elements(bound) if self.in_h(a, u)]


class FactorizationTable(BaseModel):
    """Unique factorization x = u alpha of every element of a finite magma.

    ``factors`` maps each element index of M to (u, alpha) in the local
    indices of the restricted U and A; the embeddings map local indices
    back into M.
    """
    model_config = ConfigDict(frozen=True)

    factors: Dict[int, Tuple[int, int]] = Field(..., description="x -> (local u, local alpha)")
    u_embedding: Tuple[int, ...] = Field(..., description="local U index -> M index")
    a_embedding: Tuple[int, ...] = Field(..., description="local A index -> M index")

    def compose(self, u: int, alpha: int) -> int:
        """The element of M factoring as (u, alpha)."""
        lookup = {pair: x for x, pair in self.factors.items()}
        return lookup[(u, alpha)]


# ---------------------------------------------------------------------------
# Constructors

def trivial_actions(A: Any, U: Any, bound: Optional[int] = None) -> ActionPair:
    """alpha.u = u and alpha^u = alpha on all of A x U."""
    if A.is_finite and U.is_finite:
        pairs = [(a, u) for a in A.elements() for u in U.elements()]
        return ActionPair(A=A, U=U, dot_table={(a, u): u for a, u in pairs},
                          exp_table={(a, u): a for a, u in pairs}, name="trivial")
    return ActionPair(A=A, U=U, dot_fn=lambda a, u: u, exp_fn=lambda a, u: a, name="trivial")


def action_pair_from_tables(A: Magma, U: Magma, dot: Dict[Pair, int], exp: Dict[Pair, int],
                            h: Optional[Iterable[Pair]] = None, name: str = "") -> ActionPair:
    return ActionPair(A=A, U=U, h=None if h is None else frozenset(h),
                      dot_table=dict(dot), exp_table=dict(exp), name=name)


def _check_closed(M: Magma, subset: FrozenSet[int], label: str) -> None:
    for a, b in product(sorted(subset), repeat=2):
        if M.defined(a, b) and M.mul(a, b) not in subset:
            actions_logger.warning(f"{label} is not closed: {M.names[a]}*{M.names[b]}")
            raise NotClosed(label, (M.names[a], M.names[b], M.names[M.mul(a, b)]))


def derive_internal_actions(M: Magma, U_subset: Iterable[int],
                            A_subset: Iterable[int]) -> Tuple[ActionPair, FactorizationTable]:
    """Read off the mutual actions of an internal unique factorization M = U A.

    For alpha in A and u in U with alpha u defined, alpha u factors uniquely
    as u' alpha', and alpha.u = u', alpha^u = alpha'.

    Args:
        M (Magma): The ambient magma
        U_subset (Iterable[int]): Indices of U in M
        A_subset (Iterable[int]): Indices of A in M

    Returns:
        Tuple[ActionPair, FactorizationTable]: Actions on the restricted
        magmas U and A, and every element's factorization

    Raises:
        NotClosed: U or A is not closed under M's product
        FactorizationMissing: some element is no product u alpha
        FactorizationAmbiguous: some element is two such products
    """
    U_set, A_set = frozenset(U_subset), frozenset(A_subset)
    _check_closed(M, U_set, "U")
    _check_closed(M, A_set, "A")

    U, u_emb = restrict(M, U_set)
    A, a_emb = restrict(M, A_set)
    found: Dict[int, List[Tuple[int, int]]] = {x: [] for x in range(M.size)}
    for (iu, u), (ia, a) in product(enumerate(u_emb), enumerate(a_emb)):
        if M.defined(u, a):
            found[M.mul(u, a)].append((iu, ia))
    for x in range(M.size):
        options = found[x]
        if len(options) > 1:
            first, second = options[0], options[1]
            actions_logger.warning(f"{M.names[x]} factors more than once")
            raise FactorizationAmbiguous(
                M.names[x],
                (U.names[first[0]], A.names[first[1]]),
                (U.names[second[0]], A.names[second[1]]),
            )
        if not options:
            actions_logger.warning(f"{M.names[x]} has no factorization")
            raise FactorizationMissing(M.names[x])
    factors = {x: options[0] for x, options in found.items()}

    dot, exp = {}, {}
    for (ia, a), (iu, u) in product(enumerate(a_emb), enumerate(u_emb)):
        if M.defined(a, u):
            dot[(ia, iu)], exp[(ia, iu)] = factors[M.mul(a, u)]
    AP = ActionPair(A=A, U=U, h=frozenset(dot), dot_table=dot, exp_table=exp, name="internal")
    actions_logger.info(f"derived actions: |U|={U.size}, |A|={A.size}, |H|={len(dot)}")
    return AP, FactorizationTable(factors=factors, u_embedding=u_emb, a_embedding=a_emb)


# ---------------------------------------------------------------------------
# The axiom catalog

class Axiom(str, Enum):
    P1A = "P1a"
    P1B = "P1b"
    P1C = "P1c"
    P2A_FWD = "P2a=>"
    P2A_BWD = "P2a<="
    P2B_FWD = "P2b=>"
    P2B_BWD = "P2b<="
    P2C_FWD = "P2c=>"
    P2C_BWD = "P2c<="
    P2D_FWD = "P2d=>"
    P2D_BWD = "P2d<="
    P3A = "P3a"
    P3B = "P3b"
    P4A = "P4a"
    P4B = "P4b"
    P5A = "P5a"
    P5B = "P5b"
    P6 = "P6"
    P7A = "P7a"
    P7B = "P7b"
    P7C = "P7c"
    P7D = "P7d"
    P7E = "P7e"
    P7F = "P7f"
    P7G = "P7g"
    P7H = "P7h"
    P8 = "P8"


# Bare tags that stand for both directions.
AXIOM_GROUPS: Dict[str, Tuple[Axiom, ...]] = {
    "P2a": (Axiom.P2A_FWD, Axiom.P2A_BWD),
    "P2b": (Axiom.P2B_FWD, Axiom.P2B_BWD),
    "P2c": (Axiom.P2C_FWD, Axiom.P2C_BWD),
    "P2d": (Axiom.P2D_FWD, Axiom.P2D_BWD),
    "P2": tuple(a for a in Axiom if a.value.startswith("P2")),
    "P1": (Axiom.P1A, Axiom.P1B, Axiom.P1C),
    "P3": (Axiom.P3A, Axiom.P3B),
    "P4": (Axiom.P4A, Axiom.P4B),
    "P5": (Axiom.P5A, Axiom.P5B),
    "P7": tuple(a for a in Axiom if a.value.startswith("P7")),
}


def expand_axioms(tags: Iterable[str]) -> List[Axiom]:
    """'P2a' -> [P2a=>, P2a<=], 'P7' -> P7a..P7h, 'all' -> the catalog."""
    out: List[Axiom] = []
    for tag in tags:
        if tag == "all":
            members = tuple(Axiom)
        else:
            members = AXIOM_GROUPS.get(tag, (Axiom(tag),))
        out.extend(a for a in members if a not in out)
    return out


class _Ctx:
    """Shared lookups for the tuple predicates."""

    def __init__(self, AP: ActionPair, E: ProductDomain, bound: Optional[int]):
        self.AP, self.E, self.bound = AP, E, bound
        self.A, self.U = AP.A, AP.U
        self._elems = {"A": AP.A.elements(bound), "U": AP.U.elements(bound)}

    def elems(self, slot: str) -> List[Any]:
        return self._elems[slot]

    def a_mul(self, a, b):
        return self.A.mul(a, b) if self.A.defined(a, b) else None

    def u_mul(self, u, v):
        return self.U.mul(u, v) if self.U.defined(u, v) else None


def _both(left: Optional[Any], right: Optional[Any]) -> bool:
    """Both sides computed, and they agree."""
    return left is not None and right is not None and left == right


# Each side of a P2 identity returns its value, or None when it or an
# intermediate product is undefined.

def _p2a_sides(c: _Ctx, a, b, u):
    ab = c.a_mul(a, b)
    left = c.AP.dot(ab, u) if ab is not None else None
    bu = c.AP.dot(b, u)
    right = c.AP.dot(a, bu) if bu is not None else None
    return left, right


def _p2b_sides(c: _Ctx, a, b, u):
    ab = c.a_mul(a, b)
    left = c.AP.exp(ab, u) if ab is not None else None
    right = None
    bu, b_u = c.AP.dot(b, u), c.AP.exp(b, u)
    if bu is not None:
        a_bu = c.AP.exp(a, bu)
        if a_bu is not None:
            right = c.a_mul(a_bu, b_u)
    return left, right


def _p2c_sides(c: _Ctx, a, u, v):
    uv = c.u_mul(u, v)
    left = c.AP.dot(a, uv) if uv is not None else None
    right = None
    au, a_u = c.AP.dot(a, u), c.AP.exp(a, u)
    if au is not None:
        a_u_v = c.AP.dot(a_u, v)
        if a_u_v is not None:
            right = c.u_mul(au, a_u_v)
    return left, right


def _p2d_sides(c: _Ctx, a, u, v):
    uv = c.u_mul(u, v)
    left = c.AP.exp(a, uv) if uv is not None else None
    a_u = c.AP.exp(a, u)
    right = c.AP.exp(a_u, v) if a_u is not None else None
    return left, right


def _forward(sides):
    def bad(c: _Ctx, *xs) -> bool:
        left, right = sides(c, *xs)
        return left is not None and not _both(left, right)
    return bad


def _backward(sides):
    def bad(c: _Ctx, *xs) -> bool:
        left, right = sides(c, *xs)
        return right is not None and not _both(left, right)
    return bad


def _p1a(c: _Ctx, a, u) -> bool:
    return c.AP.in_h(a, u) and not c.E.contains(c.AP.dot(a, u), c.AP.exp(a, u))


def _p1b(c: _Ctx, u, a, v) -> bool:
    vu = c.u_mul(v, u)
    return c.E.contains(u, a) and vu is not None and not c.E.contains(vu, a)


def _p1c(c: _Ctx, u, a, b) -> bool:
    ab = c.a_mul(a, b)
    return c.E.contains(u, a) and ab is not None and not c.E.contains(u, ab)


def _p3a(c: _Ctx, a, b, u) -> bool:
    ab = c.a_mul(a, b)
    return ab is not None and c.AP.in_h(b, u) and not c.AP.in_h(ab, u)


def _p3b(c: _Ctx, a, u, v) -> bool:
    uv = c.u_mul(u, v)
    return uv is not None and c.AP.in_h(a, u) and not c.AP.in_h(a, uv)


def _exp_injective(c: _Ctx, a, b, u) -> bool:
    return a != b and _both(c.AP.exp(a, u), c.AP.exp(b, u))


def _dot_injective(c: _Ctx, a, u, v) -> bool:
    return u != v and _both(c.AP.dot(a, u), c.AP.dot(a, v))


def _dot_surjective(c: _Ctx, a, v) -> bool:
    return not any(c.AP.dot(a, u) == v for u in c.elems("U") if c.AP.in_h(a, u))


def _exp_surjective(c: _Ctx, u, b) -> bool:
    return not any(c.AP.exp(a, u) == b for a in c.elems("A") if c.AP.in_h(a, u))


def _p6(c: _Ctx, a, u) -> bool:
    return not c.AP.in_h(a, u)


def _p7a(c: _Ctx, a, u) -> bool:
    return c.U.is_right_identity(u, c.bound) and c.AP.in_h(a, u) and c.AP.exp(a, u) != a


def _p7b(c: _Ctx, a, u) -> bool:
    return c.U.is_left_identity(u, c.bound) and c.AP.in_h(a, u) and c.AP.exp(a, u) != a


def _p7c(c: _Ctx, a, u) -> bool:
    return c.A.is_right_identity(a, c.bound) and c.AP.in_h(a, u) and c.AP.dot(a, u) != u


def _p7d(c: _Ctx, a, u) -> bool:
    return c.A.is_left_identity(a, c.bound) and c.AP.in_h(a, u) and c.AP.dot(a, u) != u


def _p7e(c: _Ctx, a, u) -> bool:
    if not c.U.is_right_identity(u, c.bound):
        return False
    return not c.AP.in_h(a, u) or not c.U.is_right_identity(c.AP.dot(a, u), c.bound)


def _p7f(c: _Ctx, a, u) -> bool:
    if not c.A.is_left_identity(a, c.bound):
        return False
    return not c.AP.in_h(a, u) or not c.A.is_left_identity(c.AP.exp(a, u), c.bound)


def _p7g(c: _Ctx, a, u) -> bool:
    return (c.AP.in_h(a, u) and c.U.is_right_identity(c.AP.dot(a, u), c.bound)
            and not c.U.is_right_identity(u, c.bound))


def _p7h(c: _Ctx, a, u) -> bool:
    return (c.AP.in_h(a, u) and c.A.is_left_identity(c.AP.exp(a, u), c.bound)
            and not c.A.is_left_identity(a, c.bound))


def _u_common_left_multiple(c: _Ctx, u, v) -> bool:
    return any(c.u_mul(p, u) is not None and c.u_mul(p, u) == c.u_mul(q, v)
               for p in c.elems("U") for q in c.elems("U"))


def _strong_exp_witness(c: _Ctx, a, u, b, v) -> Optional[Tuple[Any, Any, Any]]:
    for g in c.elems("A"):
        for p in c.elems("U"):
            if c.AP.exp(g, p) != a:
                continue
            pu = c.u_mul(p, u)
            if pu is None:
                continue
            for q in c.elems("U"):
                if c.AP.exp(g, q) == b and c.u_mul(q, v) == pu:
                    return g, p, q
    return None


def _exp_strongly_coconfluent(c: _Ctx, a, u, b, v) -> bool:
    if not _both(c.AP.exp(a, u), c.AP.exp(b, v)):
        return False
    if not _u_common_left_multiple(c, u, v):
        return False
    return _strong_exp_witness(c, a, u, b, v) is None


# slot pattern, predicate, existential (a miss on an infinite domain is inconclusive)
_CATALOG: Dict[Axiom, Tuple[str, Callable[..., bool], bool]] = {
    Axiom.P1A: ("AU", _p1a, False),
    Axiom.P1B: ("UAU", _p1b, False),
    Axiom.P1C: ("UAA", _p1c, False),
    Axiom.P2A_FWD: ("AAU", _forward(_p2a_sides), False),
    Axiom.P2A_BWD: ("AAU", _backward(_p2a_sides), False),
    Axiom.P2B_FWD: ("AAU", _forward(_p2b_sides), False),
    Axiom.P2B_BWD: ("AAU", _backward(_p2b_sides), False),
    Axiom.P2C_FWD: ("AUU", _forward(_p2c_sides), False),
    Axiom.P2C_BWD: ("AUU", _backward(_p2c_sides), False),
    Axiom.P2D_FWD: ("AUU", _forward(_p2d_sides), False),
    Axiom.P2D_BWD: ("AUU", _backward(_p2d_sides), False),
    Axiom.P3A: ("AAU", _p3a, False),
    Axiom.P3B: ("AUU", _p3b, False),
    Axiom.P4A: ("AAU", _exp_injective, False),
    Axiom.P4B: ("AUU", _dot_injective, False),
    Axiom.P5A: ("AU", _dot_surjective, True),
    Axiom.P5B: ("UA", _exp_surjective, True),
    Axiom.P6: ("AU", _p6, False),
    Axiom.P7A: ("AU", _p7a, False),
    Axiom.P7B: ("AU", _p7b, False),
    Axiom.P7C: ("AU", _p7c, False),
    Axiom.P7D: ("AU", _p7d, False),
    Axiom.P7E: ("AU", _p7e, False),
    Axiom.P7F: ("AU", _p7f, False),
    Axiom.P7G: ("AU", _p7g, False),
    Axiom.P7H: ("AU", _p7h, False),
    Axiom.P8: ("AUAU", _exp_strongly_coconfluent, True),
}


def _tuples(c: _Ctx, slots: str) -> Iterator[Tuple[Any, ...]]:
    return product(*(c.elems(s) for s in slots))


def _labels(AP: ActionPair, slots: str, witness: Tuple[Any, ...]) -> List[str]:
    doms = {"A": AP.A, "U": AP.U}
    return [doms[s].label(x) for s, x in zip(slots, witness)]


def _bound_for(AP: ActionPair, bound: Optional[int]) -> Optional[int]:
    if AP.is_finite:
        return None
    return AXIOM_WORD_LENGTH if bound is None else bound


def _run_check(AP: ActionPair, name: str, slots: str, bad: Callable[..., bool],
               existential: bool, c: _Ctx, report_cls, tag_field: str):
    passing = Verdict.PASS if AP.is_finite else Verdict.PASS_UP_TO_FUEL
    try:
        witness = next((xs for xs in _tuples(c, slots) if bad(c, *xs)), None)
    except FuelExhausted as err:
        actions_logger.debug(f"{name}: fuel ran out ({err})")
        return report_cls(**{tag_field: name}, verdict=Verdict.INCONCLUSIVE,
                          notes=[f"fuel exhausted: {err}"])
    if witness is None:
        notes = [] if AP.is_finite else [f"checked over words of length <= {c.bound}"]
        return report_cls(**{tag_field: name}, verdict=passing, notes=notes)
    labels = _labels(AP, slots, witness)
    if existential and not AP.is_finite:
        return report_cls(**{tag_field: name}, verdict=Verdict.INCONCLUSIVE,
                          notes=["no witness within the enumeration bound"],
                          details={"candidate": labels})
    actions_logger.debug(f"{name} fails at {labels}")
    return report_cls(**{tag_field: name}, verdict=Verdict.FAIL, witness=tuple(witness),
                      details={"labels": labels})


def check_axiom(AP: ActionPair, E: Optional[ProductDomain], axiom,
                bound: Optional[int] = None) -> AxiomReport:
    """Evaluate one directional axiom over every enumerated tuple.

    Finite domains are checked exhaustively. Word domains are checked over
    words up to ``bound`` letters and pass only up to that bound; running
    out of fuel gives an inconclusive report.
    """
    axiom = Axiom(axiom)
    E = E or ProductDomain.full()
    slots, bad, existential = _CATALOG[axiom]
    c = _Ctx(AP, E, _bound_for(AP, bound))
    return _run_check(AP, axiom.value, slots, bad, existential, c, AxiomReport, "axiom")


def check_axioms(AP: ActionPair, E: Optional[ProductDomain], tags: Iterable[str],
                 bound: Optional[int] = None) -> List[AxiomReport]:
    return [check_axiom(AP, E, axiom, bound) for axiom in expand_axioms(tags)]


def recheck_axiom(AP: ActionPair, E: Optional[ProductDomain], axiom, witness: Tuple[Any, ...]) -> bool:
    """True iff the axiom's condition is violated at this one tuple."""
    axiom = Axiom(axiom)
    slots, bad, _ = _CATALOG[axiom]
    c = _Ctx(AP, E or ProductDomain.full(), _bound_for(AP, None))
    return bad(c, *witness)


def corrupt(AP: ActionPair, family: str, key: Pair, value: Any) -> ActionPair:
    """A copy of a tabulated pair with one entry of one action replaced."""
    if not AP.tabulated:
        raise ValueError("only tabulated action pairs can be corrupted")
    field = {"dot": "dot_table", "exp": "exp_table"}[family]
    table = dict(getattr(AP, field))
    if key not in table:
        raise KeyError(f"{key} is outside H")
    table[key] = value
    return AP.model_copy(update={field: table, "name": f"{AP.name}!{family}{key}"})


# ---------------------------------------------------------------------------
# One-parameter families

FAMILY_PROPERTIES = ("injective", "surjective", "confluent", "coconfluent",
                     "strongly_coconfluent", "multiplicative", "trivial")


def _exp_confluent(c: _Ctx, a, u, v) -> bool:
    au, av = c.AP.exp(a, u), c.AP.exp(a, v)
    if au is None or av is None:
        return False
    ends_u = {c.AP.exp(au, p) for p in c.elems("U")} - {None}
    ends_v = {c.AP.exp(av, q) for q in c.elems("U")} - {None}
    return not ends_u & ends_v


def _exp_coconfluent(c: _Ctx, a, u, b, v) -> bool:
    if not _both(c.AP.exp(a, u), c.AP.exp(b, v)):
        return False
    for g in c.elems("A"):
        images = {c.AP.exp(g, p) for p in c.elems("U")}
        if a in images and b in images:
            return False
    return True


def _exp_trivial(c: _Ctx, a, u) -> bool:
    return c.AP.in_h(a, u) and c.AP.exp(a, u) != a


def _dot_confluent(c: _Ctx, u, a, b) -> bool:
    au, bu = c.AP.dot(a, u), c.AP.dot(b, u)
    if au is None or bu is None:
        return False
    ends_a = {c.AP.dot(g, au) for g in c.elems("A")} - {None}
    ends_b = {c.AP.dot(d, bu) for d in c.elems("A")} - {None}
    return not ends_a & ends_b


def _dot_coconfluent(c: _Ctx, a, u, b, v) -> bool:
    if not _both(c.AP.dot(a, u), c.AP.dot(b, v)):
        return False
    for w in c.elems("U"):
        images = {c.AP.dot(g, w) for g in c.elems("A")}
        if u in images and v in images:
            return False
    return True


def _a_common_right_multiple(c: _Ctx, a, b) -> bool:
    return any(c.a_mul(a, x) is not None and c.a_mul(a, x) == c.a_mul(b, y)
               for x in c.elems("A") for y in c.elems("A"))


def _strong_dot_witness(c: _Ctx, a, u, b, v) -> Optional[Tuple[Any, Any, Any]]:
    for w in c.elems("U"):
        for g in c.elems("A"):
            if c.AP.dot(g, w) != u:
                continue
            ag = c.a_mul(a, g)
            if ag is None:
                continue
            for d in c.elems("A"):
                if c.AP.dot(d, w) == v and c.a_mul(b, d) == ag:
                    return w, g, d
    return None


def _dot_strongly_coconfluent(c: _Ctx, a, u, b, v) -> bool:
    if not _both(c.AP.dot(a, u), c.AP.dot(b, v)):
        return False
    if not _a_common_right_multiple(c, a, b):
        return False
    return _strong_dot_witness(c, a, u, b, v) is None


def _dot_trivial(c: _Ctx, a, u) -> bool:
    return c.AP.in_h(a, u) and c.AP.dot(a, u) != u


_FAMILIES: Dict[str, Dict[str, Tuple[str, Callable[..., bool], bool]]] = {
    "exp": {
        "injective": ("AAU", _exp_injective, False),
        "surjective": ("UA", _exp_surjective, True),
        "confluent": ("AUU", _exp_confluent, True),
        "coconfluent": ("AUAU", _exp_coconfluent, True),
        "strongly_coconfluent": ("AUAU", _exp_strongly_coconfluent, True),
        "multiplicative": ("AUU", _backward(_p2d_sides), False),
        "trivial": ("AU", _exp_trivial, False),
    },
    "dot": {
        "injective": ("AUU", _dot_injective, False),
        "surjective": ("AU", _dot_surjective, True),
        "confluent": ("UAA", _dot_confluent, True),
        "coconfluent": ("AUAU", _dot_coconfluent, True),
        "strongly_coconfluent": ("AUAU", _dot_strongly_coconfluent, True),
        "multiplicative": ("AAU", _backward(_p2a_sides), False),
        "trivial": ("AU", _dot_trivial, False),
    },
}


def family_property(AP: ActionPair, family: str, prop: str, bound: Optional[int] = None) -> PropertyReport:
    slots, bad, existential = _FAMILIES[family][prop]
    c = _Ctx(AP, ProductDomain.full(), _bound_for(AP, bound))
    return _run_check(AP, f"{family}.{prop}", slots, bad, existential, c, PropertyReport, "property")


def family_properties(AP: ActionPair, bound: Optional[int] = None) -> Dict[str, Dict[str, PropertyReport]]:
    """Every family property of both actions.

    exp is a family over the parameter set U with base set A; dot is a
    family over the parameter set A with base set U, so its parameters
    compose on the left.
    """
    out: Dict[str, Dict[str, PropertyReport]] = {}
    for family in ("exp", "dot"):
        out[family] = {prop: family_property(AP, family, prop, bound) for prop in FAMILY_PROPERTIES}
        full = all(AP.in_h(a, u) for a in AP.A.elements(_bound_for(AP, bound))
                   for u in AP.U.elements(_bound_for(AP, bound)))
        if not full:
            for prop in ("surjective", "confluent"):
                report = out[family][prop]
                out[family][prop] = report.model_copy(update={"notes": report.notes + ["family is partial"]})
    return out


def strong_coconfluence_witness(AP: ActionPair, alpha: Any, u: Any, beta: Any, v: Any,
                                bound: Optional[int] = None) -> Optional[Tuple[Any, Any, Any]]:
    """(gamma, p, q) with alpha = gamma^p, beta = gamma^q and pu = qv, if any."""
    c = _Ctx(AP, ProductDomain.full(), _bound_for(AP, bound))
    return _strong_exp_witness(c, alpha, u, beta, v)


def lclm_coconfluence_witness(AP: ActionPair, alpha: Any, u: Any, beta: Any, v: Any) -> Optional[Any]:
    """gamma with alpha = gamma^a and beta = gamma^b, where l = au = bv is the lclm of (u, v).

    Returns None when U has no lclm for (u, v) or no such gamma exists.
    """
    U = AP.U
    if isinstance(U, Magma):
        found = magma_lclm(U, u, v)
        if found is None:
            return None
        _, a, b = found
    else:
        found = U.lclm(u, v)
        if found is None:
            return None
        _, a, b = found
    for g in AP.A.elements(_bound_for(AP, None)):
        if AP.exp(g, a) == alpha and AP.exp(g, b) == beta:
            return g
    return None


# ---------------------------------------------------------------------------
# Identities and morphisms of action pairs

def zs_identity_witnesses(M: Magma, AP: ActionPair, table: FactorizationTable) -> PropertyReport:
    """For each u of U with some u beta defined in M, a left identity alpha_u of A with u alpha_u = u."""
    found: Dict[str, str] = {}
    for iu, u in enumerate(table.u_embedding):
        if not any(M.defined(u, b) for b in table.a_embedding):
            continue
        choice = next((ia for ia, a in enumerate(table.a_embedding)
                       if AP.A.is_left_identity(ia) and M.defined(u, a) and M.mul(u, a) == u), None)
        if choice is None:
            return PropertyReport(property="zs_identities", verdict=Verdict.FAIL, witness=(iu,),
                                  details={"labels": [AP.U.label(iu)]})
        found[AP.U.label(iu)] = AP.A.label(choice)
    return PropertyReport(property="zs_identities", verdict=Verdict.PASS, details={"alpha_u": found})


def preserves_actions(f: Callable[[Any], Any], g: Callable[[Any], Any],
                      AP: ActionPair, AP2: ActionPair, bound: Optional[int] = None) -> PropertyReport:
    """f: U -> U' and g: A -> A' carry H into H' and commute with both actions."""
    for a, u in AP.h_pairs(_bound_for(AP, bound)):
        ga, fu = g(a), f(u)
        if not AP2.in_h(ga, fu):
            return PropertyReport(property="preserves_actions", verdict=Verdict.FAIL,
                                  witness=(a, u), notes=["image pair leaves H"])
        if g(AP.exp(a, u)) != AP2.exp(ga, fu) or f(AP.dot(a, u)) != AP2.dot(ga, fu):
            return PropertyReport(property="preserves_actions", verdict=Verdict.FAIL,
                                  witness=(a, u), notes=["an action is not preserved"])
    return PropertyReport(property="preserves_actions", verdict=Verdict.PASS)


def commuting_pairs_act_trivially(M: Magma, AP: ActionPair, table: FactorizationTable) -> PropertyReport:
    """Where u alpha = alpha u in M, alpha.u = u and alpha^u = alpha."""
    for (ia, a), (iu, u) in product(enumerate(table.a_embedding), enumerate(table.u_embedding)):
        if M.defined(u, a) and M.defined(a, u) and M.mul(u, a) == M.mul(a, u):
            if AP.dot(ia, iu) != iu or AP.exp(ia, iu) != ia:
                return PropertyReport(property="commuting_trivial", verdict=Verdict.FAIL, witness=(ia, iu))
    return PropertyReport(property="commuting_trivial", verdict=Verdict.PASS)
