"""Finite sets with partial multiplication and exhaustive property checkers."""

from enum import Enum
from itertools import permutations, product
from typing import (Any, Callable, Dict, FrozenSet, Hashable, Iterable, Iterator,
                    List, Optional, Protocol, Sequence, Tuple, runtime_checkable)

from src.config.config import ISO_CANDIDATE_CAP
from src.models.base_models import IdentityFlags, Magma, Morphism, PropertyReport, Verdict
from src.models.errors import DuplicateEntry, DuplicateName, IndexOutOfRange, NotClosed
from src.utils.fuel import Fuel
from src.utils.logging_utils import magma_logger


@runtime_checkable
class MulDomain(Protocol):
    """What products and action checks need from a carrier.

    Implemented by Magma (finite), WordMonoid (words, fuel-bounded) and
    ZSProduct (pairs).
    """

    @property
    def is_finite(self) -> bool: ...

    def elements(self, bound: Optional[int] = None) -> List[Any]: ...

    def defined(self, a: Any, b: Any) -> bool: ...

    def mul(self, a: Any, b: Any) -> Any: ...

    def label(self, a: Any) -> str: ...

    def is_right_identity(self, a: Any, bound: Optional[int] = None) -> bool: ...

    def is_left_identity(self, a: Any, bound: Optional[int] = None) -> bool: ...

    def global_identity(self) -> Optional[Any]: ...

    def inverse(self, a: Any) -> Optional[Any]: ...


def domain_right_identity(dom: MulDomain, a: Any, bound: Optional[int] = None) -> bool:
    """a is a right identity for the domain: xa = x whenever xDa, for at least one x."""
    seen = False
    for x in dom.elements(bound):
        if dom.defined(x, a):
            seen = True
            if dom.mul(x, a) != x:
                return False
    return seen


def domain_left_identity(dom: MulDomain, a: Any, bound: Optional[int] = None) -> bool:
    seen = False
    for x in dom.elements(bound):
        if dom.defined(a, x):
            seen = True
            if dom.mul(a, x) != x:
                return False
    return seen


def domain_common_left_multiple(dom: MulDomain, u: Any, v: Any,
                                bound: Optional[int] = None) -> Optional[Tuple[Any, Any]]:
    """Some (p, q) with pu = qv among enumerated cofactors, or None."""
    elems = dom.elements(bound)
    for p in elems:
        if not dom.defined(p, u):
            continue
        pu = dom.mul(p, u)
        for q in elems:
            if dom.defined(q, v) and dom.mul(q, v) == pu:
                return p, q
    return None


class MagmaProperty(str, Enum):
    RIGHT_ASSOC = "right_assoc"
    LEFT_ASSOC = "left_assoc"
    ASSOC = "assoc"
    CATEGORICAL = "categorical"
    FULL = "full"
    LEFT_CANC = "left_canc"
    RIGHT_CANC = "right_canc"
    STRONGLY_LEFT_CANC = "strongly_left_canc"
    STRONGLY_RIGHT_CANC = "strongly_right_canc"
    COMMON_RIGHT_MULTIPLES = "common_right_multiples"
    LEAST_COMMON_LEFT_MULTIPLES = "least_common_left_multiples"
    HAS_RIGHT_IDENTITIES = "has_right_identities"
    HAS_LEFT_IDENTITIES = "has_left_identities"
    HAS_FULL_IDENTITIES = "has_full_identities"
    HAS_GLOBAL_IDENTITY = "has_global_identity"
    LEFT_INVERSES_WRT_RIGHT_IDENTITIES = "left_inverses_wrt_right_identities"
    DIGRAPH_RULE = "digraph_rule"


# ---------------------------------------------------------------------------
# Construction

def build_magma(size: int, names: Optional[Sequence[str]], entries: Iterable) -> Magma:
    """Build a magma from ((i, j), k) entries meaning i*j = k.

    Args:
        size (int): Carrier size
        names (Optional[Sequence[str]]): Distinct display names; indices when empty
        entries (Iterable): ((i, j), k) items, or (i, j, k) triples

    Returns:
        Magma: The magma with exactly the given domain and table
    """
    if size < 0:
        raise IndexOutOfRange(f"negative carrier size {size}", size)
    names = tuple(names) if names else tuple(str(i) for i in range(size))
    if len(names) != size:
        raise IndexOutOfRange(f"{len(names)} names for a carrier of size {size}", len(names))
    seen_names = set()
    for name in names:
        if name in seen_names:
            raise DuplicateName(f"name {name!r} used twice", name)
        seen_names.add(name)

    table: Dict[Tuple[int, int], int] = {}
    for entry in entries:
        if len(entry) == 3:
            i, j, k = entry
        else:
            (i, j), k = entry
        for idx in (i, j, k):
            if not (isinstance(idx, int) and 0 <= idx < size):
                raise IndexOutOfRange(f"index {idx} outside 0..{size - 1}", (i, j, k))
        if (i, j) in table:
            raise DuplicateEntry(f"pair ({i},{j}) given twice", (i, j))
        table[(i, j)] = k
    return Magma(size=size, names=names, table=table)


def magma_from_function(elements: Sequence[Hashable],
                        op: Callable[[Any, Any], Optional[Any]],
                        names: Optional[Sequence[str]] = None) -> Magma:
    """Tabulate op over elements; op returns None where undefined."""
    index = {x: i for i, x in enumerate(elements)}
    entries = []
    for a, b in product(range(len(elements)), repeat=2):
        value = op(elements[a], elements[b])
        if value is None:
            continue
        if value not in index:
            raise NotClosed("carrier", (elements[a], elements[b], value))
        entries.append(((a, b), index[value]))
    return build_magma(len(elements), names or [str(x) for x in elements], entries)


def generated_subset(P: Magma, gens: Iterable[int]) -> FrozenSet[int]:
    """Closure of gens under the partial product."""
    found = list(dict.fromkeys(gens))
    members = set(found)
    pos = 0
    while pos < len(found):
        c = found[pos]
        pos += 1
        for b in found[:pos]:
            for x, y in ((c, b), (b, c)):
                z = P.table.get((x, y))
                if z is not None and z not in members:
                    members.add(z)
                    found.append(z)
    return frozenset(members)


def restrict(P: Magma, subset: Iterable[int]) -> Tuple[Magma, Tuple[int, ...]]:
    """The sub-table on a closed subset, re-indexed in increasing order.

    Returns:
        Tuple[Magma, Tuple[int, ...]]: The restriction and the embedding
        (local index -> index in P)
    """
    members = tuple(sorted(set(subset)))
    local = {x: i for i, x in enumerate(members)}
    entries = []
    for a, b in product(members, repeat=2):
        c = P.table.get((a, b))
        if c is None:
            continue
        if c not in local:
            raise NotClosed("restriction", (P.names[a], P.names[b]))
        entries.append(((local[a], local[b]), local[c]))
    return build_magma(len(members), [P.names[x] for x in members], entries), members


def direct_product(P: Magma, Q: Magma) -> Magma:
    """Componentwise product, defined iff defined in both factors."""
    pairs = [(a, b) for a in range(P.size) for b in range(Q.size)]
    return magma_from_function(
        pairs,
        lambda x, y: ((P.table[(x[0], y[0])], Q.table[(x[1], y[1])])
                      if (x[0], y[0]) in P.table and (x[1], y[1]) in Q.table else None),
        [f"({P.names[a]},{Q.names[b]})" for a, b in pairs],
    )


# ---------------------------------------------------------------------------
# Property checks

def _violations(P: Magma, prop: MagmaProperty) -> Iterator[Tuple[int, ...]]:
    n, t = P.size, P.table
    d = t.__contains__
    glob = P.global_identity()
    rng = range(n)

    def right_assoc_bad(a, b, c):
        if not (d((a, b)) and d((t[(a, b)], c))):
            return False
        return not (d((b, c)) and d((a, t[(b, c)])) and t[(t[(a, b)], c)] == t[(a, t[(b, c)])])

    def left_assoc_bad(a, b, c):
        if not (d((b, c)) and d((a, t[(b, c)]))):
            return False
        return not (d((a, b)) and d((t[(a, b)], c)) and t[(t[(a, b)], c)] == t[(a, t[(b, c)])])

    if prop == MagmaProperty.RIGHT_ASSOC:
        yield from (w for w in product(rng, repeat=3) if right_assoc_bad(*w))
    elif prop == MagmaProperty.LEFT_ASSOC:
        yield from (w for w in product(rng, repeat=3) if left_assoc_bad(*w))
    elif prop == MagmaProperty.ASSOC:
        yield from (w for w in product(rng, repeat=3) if right_assoc_bad(*w) or left_assoc_bad(*w))
    elif prop == MagmaProperty.CATEGORICAL:
        for a, b, c in product(rng, repeat=3):
            if right_assoc_bad(a, b, c) or left_assoc_bad(a, b, c):
                yield a, b, c
            elif d((a, b)) and d((b, c)) and not (d((a, t[(b, c)])) and d((t[(a, b)], c))):
                yield a, b, c
    elif prop == MagmaProperty.FULL:
        yield from (w for w in product(rng, repeat=2) if not d(w))
    elif prop in (MagmaProperty.LEFT_CANC, MagmaProperty.STRONGLY_LEFT_CANC):
        for a, b, c in product(rng, repeat=3):
            if b != c and d((a, b)) and d((a, c)) and t[(a, b)] == t[(a, c)]:
                yield a, b, c
        if prop == MagmaProperty.STRONGLY_LEFT_CANC:
            for a, b in product(rng, repeat=2):
                if d((a, b)) and t[(a, b)] == a and b != glob:
                    yield a, b
    elif prop in (MagmaProperty.RIGHT_CANC, MagmaProperty.STRONGLY_RIGHT_CANC):
        for a, b, c in product(rng, repeat=3):
            if a != b and d((a, c)) and d((b, c)) and t[(a, c)] == t[(b, c)]:
                yield a, b, c
        if prop == MagmaProperty.STRONGLY_RIGHT_CANC:
            for a, b in product(rng, repeat=2):
                if d((a, b)) and t[(a, b)] == b and a != glob:
                    yield a, b
    elif prop == MagmaProperty.COMMON_RIGHT_MULTIPLES:
        for a, b in product(rng, repeat=2):
            right_a = {t[(a, p)] for p in rng if d((a, p))}
            if not any(d((b, q)) and t[(b, q)] in right_a for q in rng):
                yield a, b
    elif prop == MagmaProperty.LEAST_COMMON_LEFT_MULTIPLES:
        for a, b in product(rng, repeat=2):
            if common_left_multiples(P, a, b) and lclm(P, a, b) is None:
                yield a, b
    elif prop in (MagmaProperty.HAS_RIGHT_IDENTITIES, MagmaProperty.HAS_LEFT_IDENTITIES,
                  MagmaProperty.HAS_FULL_IDENTITIES):
        want_right = prop != MagmaProperty.HAS_LEFT_IDENTITIES
        want_left = prop != MagmaProperty.HAS_RIGHT_IDENTITIES
        for x in rng:
            has_right = any(d((x, a)) and t[(x, a)] == x and P.is_right_identity(a) for a in rng)
            has_left = any(d((a, x)) and t[(a, x)] == x and P.is_left_identity(a) for a in rng)
            if (want_right and not has_right) or (want_left and not has_left):
                yield (x,)
    elif prop == MagmaProperty.HAS_GLOBAL_IDENTITY:
        if glob is None:
            yield ()
    elif prop == MagmaProperty.LEFT_INVERSES_WRT_RIGHT_IDENTITIES:
        for a, b in product(rng, repeat=2):
            if P.is_right_identity(b) and d((a, b)):
                if not any(d((x, a)) and t[(x, a)] == b for x in rng):
                    yield a, b
    elif prop == MagmaProperty.DIGRAPH_RULE:
        for a, b, c, e in product(rng, repeat=4):
            if d((a, b)) and d((c, b)) and d((c, e)) and not d((a, e)):
                yield a, b, c, e
    else:
        raise ValueError(f"unknown property {prop}")


def check_property(P: Magma, prop) -> PropertyReport:
    """Evaluate one multiplication property over the whole carrier.

    Args:
        P (Magma): Carrier and table
        prop: A MagmaProperty or its string tag

    Returns:
        PropertyReport: pass, or fail with the lexicographically least witness
    """
    prop = MagmaProperty(prop)
    notes: List[str] = []
    if prop == MagmaProperty.LEAST_COMMON_LEFT_MULTIPLES and not is_semigroup(P):
        notes.append("carrier is not a semigroup; the definition is applied literally")
    if prop == MagmaProperty.STRONGLY_RIGHT_CANC:
        notes.append("mirror of strongly_left_canc (reader-supplied definition)")
    witness = next(_violations(P, prop), None)
    verdict = Verdict.PASS if witness is None else Verdict.FAIL
    magma_logger.debug(f"{prop.value} on magma of size {P.size}: {verdict.value} {witness}")
    return PropertyReport(property=prop.value, verdict=verdict, witness=witness, notes=notes)


def _holds(P: Magma, *props: MagmaProperty) -> bool:
    return all(next(_violations(P, p), None) is None for p in props)


def is_semigroup(P: Magma) -> bool:
    return _holds(P, MagmaProperty.FULL, MagmaProperty.ASSOC)


def is_monoid(P: Magma) -> bool:
    return is_semigroup(P) and P.global_identity() is not None


def is_group(P: Magma) -> bool:
    return is_monoid(P) and len(units_of(P)) == P.size


def identities_of(P: Magma) -> Dict[int, IdentityFlags]:
    """Identity classification of every element."""
    glob = P.global_identity()
    flags = {}
    for x in range(P.size):
        right_for_x = tuple(a for a in range(P.size)
                            if P.defined(x, a) and P.mul(x, a) == x)
        is_right = P.is_right_identity(x)
        is_left = P.is_left_identity(x)
        flags[x] = IdentityFlags(
            right_id_for=right_for_x,
            right_id_for_magma=is_right,
            left_id_for_magma=is_left,
            full_id=is_right and is_left,
            global_id=(x == glob),
        )
    return flags


def units_of(P: Magma) -> FrozenSet[int]:
    """Elements with a two-sided inverse relative to the global identity."""
    if P.global_identity() is None:
        return frozenset()
    return frozenset(a for a in range(P.size) if P.inverse(a) is not None)


# ---------------------------------------------------------------------------
# Multiples

def common_left_multiples(P: Magma, a: int, b: int) -> Dict[int, List[Tuple[int, int]]]:
    """Map each common left multiple m = pa = qb to its cofactor pairs (p, q)."""
    left_a: Dict[int, List[int]] = {}
    for p in range(P.size):
        if P.defined(p, a):
            left_a.setdefault(P.mul(p, a), []).append(p)
    found: Dict[int, List[Tuple[int, int]]] = {}
    for q in range(P.size):
        if P.defined(q, b):
            m = P.mul(q, b)
            for p in left_a.get(m, []):
                found.setdefault(m, []).append((p, q))
    return {m: sorted(pairs) for m, pairs in sorted(found.items())}


def is_lclm(P: Magma, a: int, b: int, candidate: int) -> bool:
    """candidate is a common left multiple dividing every other on the left."""
    multiples = common_left_multiples(P, a, b)
    if candidate not in multiples:
        return False
    return all(any(P.defined(k, candidate) and P.mul(k, candidate) == m for k in range(P.size))
               for m in multiples)


def lclm(P: Magma, a: int, b: int) -> Optional[Tuple[int, int, int]]:
    """Least common left multiple (l, p, q) with l = pa = qb.

    Among valid lclms the least index is returned, with the least cofactor
    pair producing it. None when (a, b) has no common left multiple, or
    none of its common left multiples divides all the others.
    """
    multiples = common_left_multiples(P, a, b)
    for candidate in multiples:
        if all(any(P.defined(k, candidate) and P.mul(k, candidate) == m for k in range(P.size))
               for m in multiples):
            p, q = multiples[candidate][0]
            return candidate, p, q
    if multiples:
        magma_logger.debug(f"({a},{b}) has common left multiples but no least one")
    return None


def common_left_factors(P: Magma, x: int, y: int) -> FrozenSet[int]:
    """Elements f with x = fa and y = fb for some a, b."""
    return frozenset(
        f for f in range(P.size)
        if any(P.defined(f, a) and P.mul(f, a) == x for a in range(P.size))
        and any(P.defined(f, b) and P.mul(f, b) == y for b in range(P.size))
    )


# ---------------------------------------------------------------------------
# Homomorphisms and isomorphisms

def is_homomorphism(f: Morphism) -> PropertyReport:
    """f(D) inside the target domain and f(ab) = f(a)f(b) on the source domain."""
    target = f.target
    for a, b in sorted(f.source.table):
        image = (f(a), f(b))
        if image not in target.table or target.table[image] != f(f.source.table[(a, b)]):
            return PropertyReport(property="homomorphism", verdict=Verdict.FAIL, witness=(a, b))
    return PropertyReport(property="homomorphism", verdict=Verdict.PASS)


def _power_orbit(P: Magma, x: int) -> int:
    seen = [x]
    y = x
    while P.defined(y, x):
        y = P.mul(y, x)
        if y in seen:
            break
        seen.append(y)
    return len(seen)


def _signature(P: Magma, x: int) -> Tuple[int, int, bool, int]:
    row = sum(1 for y in range(P.size) if P.defined(x, y))
    col = sum(1 for y in range(P.size) if P.defined(y, x))
    return row, col, P.table.get((x, x)) == x, _power_orbit(P, x)


def generating_set(P: Magma) -> List[int]:
    """A small generating set, grown greedily by largest closure gain."""
    gens: List[int] = []
    covered: FrozenSet[int] = frozenset()
    while len(covered) < P.size:
        best, best_cover = None, covered
        for x in range(P.size):
            if x in covered:
                continue
            cover = generated_subset(P, gens + [x])
            if len(cover) > len(best_cover):
                best, best_cover = x, cover
        gens.append(best)
        covered = best_cover
    return gens


def _extend(P: Magma, Q: Magma, seed: Dict[int, int]) -> Optional[Dict[int, int]]:
    """Grow a partial map along products; None on any contradiction."""
    mapping = dict(seed)
    inverse = {v: k for k, v in mapping.items()}
    if len(inverse) != len(mapping):
        return None
    done: List[int] = []
    queue = list(mapping)
    while queue:
        c = queue.pop()
        done.append(c)
        for b in done:
            for x, y in ((c, b), (b, c)):
                z = P.table.get((x, y))
                if z is None:
                    continue
                img = Q.table.get((mapping[x], mapping[y]))
                if img is None:
                    return None
                if z in mapping:
                    if mapping[z] != img:
                        return None
                elif img in inverse:
                    return None
                else:
                    mapping[z] = img
                    inverse[img] = z
                    queue.append(z)
    return mapping


def _isomorphisms(P: Magma, Q: Magma, cap: int) -> Iterator[Morphism]:
    if P.size != Q.size or len(P.table) != len(Q.table):
        return
    sig_q = _group_by_signature(Q)
    sig_p = _group_by_signature(P)
    if {k: len(v) for k, v in sig_p.items()} != {k: len(v) for k, v in sig_q.items()}:
        return
    gens = generating_set(P)
    options = [sig_q.get(_signature(P, g), []) for g in gens]
    budget = Fuel(cap, "isomorphism candidates")
    for images in product(*options):
        if len(set(images)) != len(images):
            continue
        budget.spend()
        mapping = _extend(P, Q, dict(zip(gens, images)))
        if mapping is None or len(mapping) != P.size:
            continue
        candidate = Morphism(source=P, target=Q, mapping=tuple(mapping[a] for a in range(P.size)))
        if is_homomorphism(candidate).holds():
            yield candidate


def _group_by_signature(P: Magma) -> Dict[Tuple, List[int]]:
    groups: Dict[Tuple, List[int]] = {}
    for x in range(P.size):
        groups.setdefault(_signature(P, x), []).append(x)
    return groups


def find_isomorphism(P: Magma, Q: Magma, cap: int = ISO_CANDIDATE_CAP) -> Optional[Morphism]:
    """Brute-force isomorphism search pinned by generator images.

    Raises FuelExhausted when more than ``cap`` candidates would be tried.
    """
    found = next(_isomorphisms(P, Q, cap), None)
    magma_logger.debug(f"isomorphism search {P.size} -> {Q.size}: {'found' if found else 'none'}")
    return found


def automorphisms(P: Magma, cap: int = ISO_CANDIDATE_CAP) -> List[Morphism]:
    return list(_isomorphisms(P, P, cap))


def isomorphic(P: Magma, Q: Magma, cap: int = ISO_CANDIDATE_CAP) -> bool:
    return find_isomorphism(P, Q, cap) is not None


def naive_isomorphism(P: Magma, Q: Magma) -> Optional[Morphism]:
    """Try every bijection; only for tiny carriers and cross-checks."""
    if P.size != Q.size:
        return None
    for perm in permutations(range(Q.size)):
        candidate = Morphism(source=P, target=Q, mapping=perm)
        if len(P.table) == len(Q.table) and is_homomorphism(candidate).holds():
            return candidate
    return None
