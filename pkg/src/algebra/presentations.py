"""Presentations of twisted products and of mutual actions given on generators."""

from collections import deque
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from src.algebra.mutual_actions import ActionPair, check_axioms
from src.algebra.rewriting import (FuelLike, WordMonoid, certify_complete, format_word, table_presentation,
                                   irreducible_words, normalize_word, parse_word,
                                   string_local_confluence, termination_certificate,
                                   word_rewrite_step)
from src.algebra.zs_product import ZSProduct, monoid_product
from src.config.config import EMPTY_WORD_NAME
from src.models.base_models import (AxiomReport, CertKind, GenActions, Magma, PropertyReport, Rule,
                                    RuleKind, RuleSet, TerminationCert, Verdict, Word)
from src.models.errors import AlphabetCollision, FuelExhausted, HypothesisFailed
from src.utils.fuel import Fuel
from src.utils.logging_utils import presentation_logger


class Presentation(BaseModel):
    """A rule set with the provenance of its rules.

    ``origin`` maps "R" (relations of U), "T" (relations of A) and "W" (the
    pairs alpha u -> (alpha.u)(alpha^u)) to rule indices. ``w_pairs`` keeps
    every W pair, including the ones that are identical on both sides and so
    do not become rules.
    """
    model_config = ConfigDict(frozen=True)

    rules: RuleSet
    origin: Dict[str, Tuple[int, ...]] = Field(default_factory=dict, description="R / T / W -> rule indices")
    x_letters: Tuple[str, ...] = Field(default=(), description="Generators of U")
    y_letters: Tuple[str, ...] = Field(default=(), description="Generators of A")
    w_pairs: Tuple[Tuple[Word, Word], ...] = Field(default=(), description="All W pairs")
    cert: Optional[TerminationCert] = Field(default=None, description="Termination certificate to try first")
    checks: Tuple[PropertyReport, ...] = Field(default=(), description="Attached consistency reports")

    _cache: Dict[str, Any] = PrivateAttr(default_factory=dict)

    @classmethod
    def of(cls, RS: RuleSet, cert: Optional[TerminationCert] = None) -> "Presentation":
        return cls(rules=RS, cert=cert)

    def rules_from(self, tag: str) -> List[Rule]:
        return [self.rules.rules[k] for k in self.origin.get(tag, ())]

    def completeness(self, fuel: FuelLike = None) -> PropertyReport:
        """Termination by the attached certificate, the length orders, or the
        recursive path order with U letters below A letters; then local confluence."""
        if "complete" in self._cache:
            return self._cache["complete"]
        report = None
        candidates = [self.cert] if self.cert is not None else []
        candidates.append(None)
        if self.x_letters or self.y_letters:
            candidates.append(TerminationCert(kind=CertKind.RECURSIVE_PATH,
                                              order=self.x_letters + self.y_letters))
        for cert in candidates:
            report = certify_complete(self.rules, cert, fuel)
            if report.verdict != Verdict.INCONCLUSIVE or report.witness is not None:
                break
        self._cache["complete"] = report
        return report

    def is_complete(self, fuel: FuelLike = None) -> bool:
        return self.completeness(fuel).verdict == Verdict.PASS

    def normal_form(self, w: Sequence[str], fuel: FuelLike = None) -> Word:
        return normalize_word(self.rules, w, fuel)


PresLike = Union[Presentation, RuleSet]


def _as_presentation(pres: PresLike) -> Presentation:
    return pres if isinstance(pres, Presentation) else Presentation.of(pres)


def _word_of(dom: Any, x: Any) -> Word:
    """The word naming an element: words are themselves, table elements are read off their label."""
    if isinstance(x, tuple):
        return x
    label = dom.label(x)
    return () if label == EMPTY_WORD_NAME else parse_word(label)


def _letter_element(dom: Any, letter: str) -> Any:
    if isinstance(dom, Magma):
        return dom.index_of(letter)
    return dom.normal_form((letter,))


def _check_disjoint(xs: Iterable[str], ys: Iterable[str]) -> None:
    common = sorted(set(xs) & set(ys))
    if common:
        presentation_logger.warning(f"alphabets share {common}")
        raise AlphabetCollision(f"generators {common} appear in both alphabets", tuple(common))


# ---------------------------------------------------------------------------
# Census

def normal_form_census(pres: PresLike, carrier: Any, evaluate: Callable[[Word], Any],
                       max_length: int = 8, fuel: FuelLike = None, nonempty: bool = False) -> PropertyReport:
    """Compare the irreducible words of a presentation with a finite carrier.

    Every rule must evaluate to equal values, and evaluation must be a
    bijection from irreducible words (up to ``max_length``) onto the carrier.
    ``nonempty`` leaves out the empty word, for semigroup presentations.
    """
    RS = _as_presentation(pres).rules
    budget = Fuel.coerce(fuel, "census")
    for rule in RS.rules:
        budget.spend()
        if evaluate(rule.lhs) != evaluate(rule.rhs):
            return PropertyReport(property="normal_form_census", verdict=Verdict.FAIL,
                                  witness=("rule", format_word(rule.lhs), format_word(rule.rhs)),
                                  notes=["a rule does not hold in the carrier"])
    words = [w for w in irreducible_words(RS, max_length) if w or not nonempty]
    seen: Dict[Any, Word] = {}
    for w in words:
        budget.spend()
        value = evaluate(w)
        if value in seen:
            return PropertyReport(property="normal_form_census", verdict=Verdict.FAIL,
                                  witness=("collision", format_word(seen[value]), format_word(w)),
                                  details={"classes": len(words)})
        seen[value] = w
    missing = [x for x in carrier.elements() if x not in seen]
    if missing:
        return PropertyReport(property="normal_form_census", verdict=Verdict.FAIL,
                              witness=("missing", carrier.label(missing[0])),
                              details={"classes": len(words), "carrier": len(carrier.elements())})
    notes = []
    if words and len(words[-1]) == max_length:
        notes.append(f"irreducible words reach the length bound {max_length}")
    return PropertyReport(property="normal_form_census", verdict=Verdict.PASS, notes=notes,
                          details={"classes": len(words), "carrier": len(carrier.elements())})


def product_evaluator(ZS: ZSProduct, x_letters: Sequence[str]) -> Callable[[Word], Any]:
    """Evaluate words over X u Y in the product: x -> (x, 1), y -> (1, y)."""
    one_u, one_a = ZS.U.global_identity(), ZS.A.global_identity()
    xs = set(x_letters)

    def evaluate(w: Word) -> Any:
        acc = (one_u, one_a)
        for letter in w:
            if letter in xs:
                acc = ZS.mul(acc, (_letter_element(ZS.U, letter), one_a))
            else:
                acc = ZS.mul(acc, (one_u, _letter_element(ZS.A, letter)))
        return acc

    return evaluate


def table_census(P: Magma, kind: Union[str, RuleKind], fuel: FuelLike = None) -> List[PropertyReport]:
    """Completeness of a semigroup or monoid table presentation, then its census.

    Irreducible words should be the single letters (and the empty word for
    monoids), one per element.
    """
    kind = RuleKind(kind)
    if kind == RuleKind.GROUP:
        raise ValueError("the census applies to semigroup and monoid table presentations")
    pres = Presentation.of(table_presentation(P, kind))
    complete = pres.completeness(fuel)
    if not complete.holds():
        return [complete]
    one = P.global_identity()

    def evaluate(w: Word) -> Any:
        value = one
        for letter in w:
            x = P.index_of(letter)
            value = x if value is None else P.mul(value, x)
        return value

    census = normal_form_census(pres, P, evaluate, max_length=2, fuel=fuel,
                                nonempty=kind == RuleKind.SEMIGROUP)
    return [complete, census]


# ---------------------------------------------------------------------------
# Product presentations

class PresentationMode(str, Enum):
    FULL = "full"
    GENERATORS = "generators"


def _w_pairs_full(AP: ActionPair) -> List[Tuple[Word, Word]]:
    pairs = []
    for a, u in AP.h_pairs():
        lhs = _word_of(AP.A, a) + _word_of(AP.U, u)
        rhs = _word_of(AP.U, AP.dot(a, u)) + _word_of(AP.A, AP.exp(a, u))
        pairs.append((lhs, rhs))
    return pairs


def _w_pairs_generators(AP: ActionPair, xs: Sequence[str], ys: Sequence[str]) -> List[Tuple[Word, Word]]:
    pairs = []
    for y, x in product(ys, xs):
        a, u = _letter_element(AP.A, y), _letter_element(AP.U, x)
        dot, exp = _word_of(AP.U, AP.dot(a, u)), _word_of(AP.A, AP.exp(a, u))
        if len(dot) != 1 or dot[0] not in xs:
            raise HypothesisFailed(f"{y}.{x} = {format_word(dot) or EMPTY_WORD_NAME} is not a generator of U",
                                   (y, x, "dot"))
        if len(exp) != 1 or exp[0] not in ys:
            raise HypothesisFailed(f"{y}^{x} = {format_word(exp) or EMPTY_WORD_NAME} is not a generator of A",
                                   (y, x, "exp"))
        pairs.append(((y, x), dot + exp))
    return pairs


def zs_presentation(presU: PresLike, presA: PresLike, AP: ActionPair,
                    mode: Union[str, PresentationMode] = PresentationMode.GENERATORS,
                    census_length: int = 8, fuel: FuelLike = None) -> Presentation:
    """<X u Y | R u T u W> for the twisted product of the presented monoids.

    Raises:
        AlphabetCollision: X and Y share a generator
        HypothesisFailed: the monoid-product hypotheses fail, a finite mode
            was asked of infinite domains, or (generators mode) an action
            leaves the generators
    """
    mode = PresentationMode(mode)
    pu, pa = _as_presentation(presU), _as_presentation(presA)
    xs, ys = pu.rules.alphabet, pa.rules.alphabet
    _check_disjoint(xs, ys)
    if mode == PresentationMode.FULL and not AP.is_finite:
        raise HypothesisFailed("the full presentation needs finite factors", "finite")
    ZS = monoid_product(AP.U, AP.A, AP)

    w_pairs = _w_pairs_full(AP) if mode == PresentationMode.FULL else _w_pairs_generators(AP, xs, ys)
    rules = list(pu.rules.rules) + list(pa.rules.rules)
    n_r, n_t = len(pu.rules.rules), len(pa.rules.rules)
    w_rules = [Rule(lhs=lhs, rhs=rhs) for lhs, rhs in w_pairs if lhs and lhs != rhs]
    rules.extend(w_rules)
    pres = Presentation(
        rules=RuleSet(alphabet=xs + ys, rules=tuple(rules), kind=RuleKind.MONOID),
        origin={"R": tuple(range(n_r)), "T": tuple(range(n_r, n_r + n_t)),
                "W": tuple(range(n_r + n_t, len(rules)))},
        x_letters=xs, y_letters=ys, w_pairs=tuple(w_pairs),
    )
    presentation_logger.info(
        f"{mode.value} presentation: {len(xs) + len(ys)} generators, {n_r} + {n_t} + {len(w_rules)} rules "
        f"({len(w_pairs)} W pairs)"
    )
    if not ZS.is_finite:
        return pres
    census = normal_form_census(pres, ZS, product_evaluator(ZS, xs), census_length, fuel)
    presentation_logger.debug(f"census: {census.verdict.value} {census.details}")
    return pres.model_copy(update={"checks": (census,)})


def product_presentation_experiment(cases: Dict[str, Tuple[PresLike, PresLike, ActionPair]],
                                    fuel: FuelLike = None) -> Dict[str, Dict[str, Any]]:
    """Record whether the generator-level product presentation is complete
    when both factor presentations are. Nothing is expected either way."""
    records: Dict[str, Dict[str, Any]] = {}
    for name, (presU, presA, AP) in cases.items():
        pu, pa = _as_presentation(presU), _as_presentation(presA)
        factors = pu.is_complete(fuel) and pa.is_complete(fuel)
        if not factors:
            records[name] = {"factors_complete": False, "product": Verdict.NOT_APPLICABLE.value}
            continue
        try:
            pres = zs_presentation(pu, pa, AP, PresentationMode.GENERATORS, fuel=fuel)
        except HypothesisFailed as err:
            records[name] = {"factors_complete": True, "product": Verdict.NOT_APPLICABLE.value,
                             "reason": str(err)}
            continue
        report = pres.completeness(fuel)
        records[name] = {"factors_complete": True, "product": report.verdict.value,
                         "witness": report.witness}
        presentation_logger.info(f"experiment {name}: product presentation {report.verdict.value}")
    return records


# ---------------------------------------------------------------------------
# Actions given on generators

def action_presentation(GA: GenActions, pattern_length: int = 6) -> Tuple[Presentation, PropertyReport]:
    """<X u Y | y x -> (y.x)(y^x)> with its completeness report.

    Termination is certified by the C_w measure; every overlap of two left
    sides would need a letter to be in both X and Y, so there are no
    critical pairs. Irreducible words are X-words followed by Y-words.
    """
    _check_disjoint(GA.X, GA.Y)
    w_pairs = tuple(((y, x), (GA.dot[(y, x)],) + tuple(GA.exp[(y, x)])) for y in GA.Y for x in GA.X)
    RS = RuleSet(alphabet=GA.X + GA.Y, rules=tuple(Rule(lhs=l, rhs=r) for l, r in w_pairs))
    cert = TerminationCert(kind=CertKind.CW_MEASURE, x_letters=GA.X, y_letters=GA.Y)
    pres = Presentation(rules=RS, origin={"W": tuple(range(len(w_pairs)))}, x_letters=GA.X,
                        y_letters=GA.Y, w_pairs=w_pairs, cert=cert)

    termination = termination_certificate(RS, cert)
    local = string_local_confluence(RS)
    ys = set(GA.Y)
    stray = next((w for w in irreducible_words(RS, pattern_length)
                  if any(a in ys and b not in ys for a, b in zip(w, w[1:]))), None)
    if stray is not None:
        report = PropertyReport(property="complete", verdict=Verdict.FAIL, witness=("pattern", format_word(stray)))
    elif termination.holds() and local.verdict == Verdict.PASS:
        report = PropertyReport(property="complete", verdict=Verdict.PASS,
                                details={"termination": termination.property,
                                         "critical_pairs": local.details.get("critical_pairs", 0)})
    else:
        report = PropertyReport(property="complete", verdict=local.verdict, witness=local.witness)
    presentation_logger.info(f"action presentation with {len(w_pairs)} rules: {report.verdict.value}")
    return pres, report


def _splitter(GA: GenActions, fuel: FuelLike) -> Callable[[Word, Word], Tuple[Word, Word]]:
    pres, _ = action_presentation(GA)
    ys = set(GA.Y)

    @lru_cache(maxsize=None)
    def split(alpha: Word, u: Word) -> Tuple[Word, Word]:
        nf = normalize_word(pres.rules, alpha + u, fuel)
        cut = next((i for i, letter in enumerate(nf) if letter in ys), len(nf))
        return nf[:cut], nf[cut:]

    return split


def extend_gen_actions(GA: GenActions, fuel: FuelLike = None, bound: Optional[int] = None) -> ActionPair:
    """dot and exp on Y* x X*, read off the normal form u'alpha' of alpha u.

    An int bounds each normalization; a Fuel instance is shared by all of them.

    Raises:
        FuelExhausted: a normalization runs out of fuel
    """
    split = _splitter(GA, fuel)
    U = WordMonoid.free(GA.X) if bound is None else WordMonoid.free(GA.X, bound)
    A = WordMonoid.free(GA.Y) if bound is None else WordMonoid.free(GA.Y, bound)
    return ActionPair(A=A, U=U, name="extended",
                      dot_fn=lambda a, u: split(tuple(a), tuple(u))[0],
                      exp_fn=lambda a, u: split(tuple(a), tuple(u))[1])


def extension_checks(AP: ActionPair, bound: Optional[int] = None) -> List[AxiomReport]:
    """The identities the word-level extension satisfies: P2a-d, P6 and P7a-f."""
    return check_axioms(AP, None, ["P2", "P6", "P7a", "P7b", "P7c", "P7d", "P7e", "P7f"], bound)


# ---------------------------------------------------------------------------
# Word problem and representatives

class WordAnswer(str, Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    INCONCLUSIVE = "inconclusive"


def _congruence_class(RS: RuleSet, w: Word, budget: Fuel, seen: Set[Word],
                      stop: Optional[Word] = None) -> bool:
    """Breadth-first walk of the congruence class of w, rules used both ways.

    Fills ``seen`` as it goes; True once the class is exhausted, False when
    ``stop`` is reached first.
    """
    backwards = RuleSet(alphabet=RS.alphabet, rules=tuple(Rule(lhs=r.rhs, rhs=r.lhs) for r in RS.rules if r.rhs))
    empty_rhs = [r for r in RS.rules if not r.rhs]
    seen.add(w)
    frontier = deque([w])
    while frontier:
        word = frontier.popleft()
        if stop is not None and word == stop:
            return False
        budget.spend()
        nexts = word_rewrite_step(RS, word) | word_rewrite_step(backwards, word)
        for r in empty_rhs:
            for i in range(len(word) + 1):
                nexts.add(word[:i] + r.lhs + word[i:])
        for nxt in nexts:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return True


def word_problem(pres: PresLike, w1: Sequence[str], w2: Sequence[str], fuel: FuelLike = None) -> WordAnswer:
    """Decide w1 ~ w2 by normal forms when complete, else by a bounded search of the class."""
    w1, w2 = tuple(w1), tuple(w2)
    if w1 == w2:
        return WordAnswer.EQUAL
    p = _as_presentation(pres)
    budget = Fuel.coerce(fuel, "word problem")
    seen: Set[Word] = set()
    try:
        if p.is_complete(budget.remaining):
            same = p.normal_form(w1, budget) == p.normal_form(w2, budget)
            return WordAnswer.EQUAL if same else WordAnswer.DISTINCT
        exhausted = _congruence_class(p.rules, w1, budget, seen, stop=w2)
    except FuelExhausted:
        presentation_logger.debug(f"word problem {format_word(w1)} ~ {format_word(w2)}: fuel ran out")
        return WordAnswer.EQUAL if w2 in seen else WordAnswer.INCONCLUSIVE
    if w2 in seen:
        return WordAnswer.EQUAL
    return WordAnswer.DISTINCT if exhausted else WordAnswer.INCONCLUSIVE


def class_representative(pres: PresLike, w: Sequence[str], fuel: FuelLike = None) -> Word:
    """The normal form when complete, else the length-lex least word met within fuel."""
    p = _as_presentation(pres)
    budget = Fuel.coerce(fuel, "representative")
    if p.is_complete(budget.remaining):
        return p.normal_form(w, budget)
    rank = {x: i for i, x in enumerate(p.rules.alphabet)}
    seen: Set[Word] = set()
    try:
        _congruence_class(p.rules, tuple(w), budget, seen)
    except FuelExhausted:
        presentation_logger.debug(f"class of {format_word(w)} cut off after {len(seen)} words")
    return min(seen, key=lambda v: (len(v), [rank[c] for c in v]))


# ---------------------------------------------------------------------------
# Actions induced on the presented monoids

def _rule_text(rule: Rule) -> str:
    return f"{format_word(rule.lhs) or 'φ'}->{format_word(rule.rhs) or 'φ'}"


def _equivalent(p: Presentation, a: Word, b: Word, fuel: FuelLike) -> bool:
    answer = word_problem(p, a, b, fuel)
    if answer == WordAnswer.INCONCLUSIVE:
        raise FuelExhausted(f"could not decide {format_word(a)} ~ {format_word(b)}", (a, b))
    return answer == WordAnswer.EQUAL


def _words(alphabet: Sequence[str], max_length: int) -> List[Word]:
    out: List[Word] = [()]
    for n in range(1, max_length + 1):
        out.extend(product(alphabet, repeat=n))
    return out


def twisted_iii_check(presU: PresLike, presA: PresLike, GA: GenActions, fuel: FuelLike = None,
                      sample_length: int = 3) -> Tuple[PropertyReport, ActionPair]:
    """Check that generator-level actions pass to the presented monoids.

    For every (u, v) in R and generator alpha, alpha.u and alpha.v are equal
    words or (alpha.u, alpha.v) or its reverse is in R, and alpha^u ~ alpha^v.
    For every (alpha, beta) in T and generator u, alpha.u = beta.u and
    alpha^u ~ beta^u. On success the induced actions on normal forms are
    returned, after re-checking on all words up to ``sample_length`` that
    one-step rewrites of either argument change dot only within its class
    (exactly, when the rewrite is in A) and exp only within its class.

    Raises:
        AlphabetCollision: X and Y share a generator
        HypothesisFailed: witness (rule, generator, side)
        FuelExhausted: an equivalence could not be decided within fuel
    """
    pu, pa = _as_presentation(presU), _as_presentation(presA)
    xs, ys = pu.rules.alphabet, pa.rules.alphabet
    _check_disjoint(xs, ys)
    if set(GA.X) != set(xs) or set(GA.Y) != set(ys):
        raise ValueError("generator actions do not match the presentations' alphabets")
    budget = Fuel.coerce(fuel, "induced actions")
    ext = extend_gen_actions(GA, budget)
    r_pairs = {(r.lhs, r.rhs) for r in pu.rules.rules}

    def fail(rule: Rule, gen: str, side: str):
        presentation_logger.warning(f"hypothesis fails at {_rule_text(rule)}, {gen}, {side}")
        raise HypothesisFailed(f"rule {_rule_text(rule)} with generator {gen} breaks the {side} clause",
                               (_rule_text(rule), gen, side))

    for rule, y in product(pu.rules.rules, ys):
        du, dv = ext.dot((y,), rule.lhs), ext.dot((y,), rule.rhs)
        if du != dv and (du, dv) not in r_pairs and (dv, du) not in r_pairs:
            fail(rule, y, "dot")
        if not _equivalent(pa, ext.exp((y,), rule.lhs), ext.exp((y,), rule.rhs), budget):
            fail(rule, y, "exp")
    for rule, x in product(pa.rules.rules, xs):
        if ext.dot(rule.lhs, (x,)) != ext.dot(rule.rhs, (x,)):
            fail(rule, x, "dot")
        if not _equivalent(pa, ext.exp(rule.lhs, (x,)), ext.exp(rule.rhs, (x,)), budget):
            fail(rule, x, "exp")

    report = _recheck_induced(pu, pa, ext, xs, ys, sample_length, budget)
    U, A = WordMonoid(rules=pu.rules), WordMonoid(rules=pa.rules)
    lifted = extend_gen_actions(GA, fuel)
    induced = ActionPair(
        A=A, U=U, name="induced",
        dot_fn=lambda a, u: class_representative(pu, lifted.dot(tuple(a), tuple(u)), fuel),
        exp_fn=lambda a, u: class_representative(pa, lifted.exp(tuple(a), tuple(u)), fuel),
    )
    if not (pu.is_complete(fuel) and pa.is_complete(fuel)):
        report = report.model_copy(update={"notes": report.notes + ["representatives are not normal forms"]})
    presentation_logger.info(f"induced actions: {report.verdict.value}")
    return report, induced


def _recheck_induced(pu: Presentation, pa: Presentation, ext: ActionPair, xs: Sequence[str],
                     ys: Sequence[str], sample_length: int, fuel: FuelLike) -> PropertyReport:
    checked = 0
    for alpha, u in product(_words(ys, sample_length), _words(xs, sample_length)):
        dot, exp = ext.dot(alpha, u), ext.exp(alpha, u)
        for alpha2 in word_rewrite_step(pa.rules, alpha):
            checked += 1
            if ext.dot(alpha2, u) != dot:
                return PropertyReport(property="induced_actions", verdict=Verdict.FAIL,
                                      witness=(format_word(alpha), format_word(alpha2), format_word(u), "dot"))
            if not _equivalent(pa, ext.exp(alpha2, u), exp, fuel):
                return PropertyReport(property="induced_actions", verdict=Verdict.FAIL,
                                      witness=(format_word(alpha), format_word(alpha2), format_word(u), "exp"))
        for u2 in word_rewrite_step(pu.rules, u):
            checked += 1
            if not _equivalent(pu, ext.dot(alpha, u2), dot, fuel):
                return PropertyReport(property="induced_actions", verdict=Verdict.FAIL,
                                      witness=(format_word(alpha), format_word(u), format_word(u2), "dot"))
            if not _equivalent(pa, ext.exp(alpha, u2), exp, fuel):
                return PropertyReport(property="induced_actions", verdict=Verdict.FAIL,
                                      witness=(format_word(alpha), format_word(u), format_word(u2), "exp"))
    for alpha, x in product(_words(ys, sample_length), xs):
        image = ext.dot(alpha, (x,))
        if len(image) != 1:
            return PropertyReport(property="induced_actions", verdict=Verdict.FAIL,
                                  witness=(format_word(alpha), x, "generator image"))
    return PropertyReport(property="induced_actions", verdict=Verdict.PASS,
                          details={"rewrites_checked": checked, "sample_length": sample_length})
