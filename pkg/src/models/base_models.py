"""Base Pydantic models for the knit-products toolkit."""

import re
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

# A word is a tuple of generator names; the empty tuple is the empty word.
Word = Tuple[str, ...]


class Verdict(str, Enum):
    """Outcome of a check."""
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"
    PASS_UP_TO_FUEL = "pass-up-to-fuel"
    INCONCLUSIVE = "inconclusive"

    def holds(self) -> bool:
        return self in (Verdict.PASS, Verdict.PASS_UP_TO_FUEL)


class ReportBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: Verdict = Field(..., description="pass / fail / not-applicable / pass-up-to-fuel / inconclusive")
    witness: Optional[Tuple[Any, ...]] = Field(default=None, description="Tuple explaining a failure")
    notes: List[str] = Field(default_factory=list, description="Unmet hypotheses and remarks")
    details: Dict[str, Any] = Field(default_factory=dict, description="Extra data for printing")

    @model_validator(mode="after")
    def _failures_carry_witness(self):
        if self.verdict == Verdict.FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")
        return self

    def holds(self) -> bool:
        return self.verdict.holds()


class PropertyReport(ReportBase):
    """Verdict of one named property."""
    property: str = Field(..., description="Property tag")


class AxiomReport(ReportBase):
    """Verdict of one axiom of the mutual-action catalog."""
    axiom: str = Field(..., description="Axiom tag such as P2a=> or P7e")


class Magma(BaseModel):
    """A finite carrier 0..size-1 with a partial multiplication table.

    ``table`` maps each pair of the domain D to its product; pairs absent
    from ``table`` are outside D.
    """
    model_config = ConfigDict(frozen=True)

    size: int = Field(..., ge=0, description="Carrier size")
    names: Tuple[str, ...] = Field(..., description="Display name per element")
    table: Dict[Tuple[int, int], int] = Field(default_factory=dict, description="Partial product table")

    _cache: Dict[str, Any] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _table_closes(self):
        if len(self.names) != self.size:
            raise ValueError(f"expected {self.size} names, got {len(self.names)}")
        for (a, b), c in self.table.items():
            if not (0 <= a < self.size and 0 <= b < self.size and 0 <= c < self.size):
                raise ValueError(f"table entry ({a},{b})->{c} leaves the carrier")
        return self

    # MulDomain interface
    @property
    def is_finite(self) -> bool:
        return True

    def elements(self, bound: Optional[int] = None) -> List[int]:
        return list(range(self.size))

    def defined(self, a: int, b: int) -> bool:
        return (a, b) in self.table

    def mul(self, a: int, b: int) -> int:
        return self.table[(a, b)]

    def label(self, a: int) -> str:
        return self.names[a]

    def contains(self, a: Any) -> bool:
        return isinstance(a, int) and 0 <= a < self.size

    @property
    def domain(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.table)

    def index_of(self, name: str) -> int:
        if "index" not in self._cache:
            self._cache["index"] = {n: i for i, n in enumerate(self.names)}
        return self._cache["index"][name]

    def _identity_sets(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        if "identities" not in self._cache:
            right, left = set(), set()
            for a in range(self.size):
                before = [x for x in range(self.size) if (x, a) in self.table]
                if before and all(self.table[(x, a)] == x for x in before):
                    right.add(a)
                after = [x for x in range(self.size) if (a, x) in self.table]
                if after and all(self.table[(a, x)] == x for x in after):
                    left.add(a)
            self._cache["identities"] = (frozenset(right), frozenset(left))
        return self._cache["identities"]

    def is_right_identity(self, a: int, bound: Optional[int] = None) -> bool:
        return a in self._identity_sets()[0]

    def is_left_identity(self, a: int, bound: Optional[int] = None) -> bool:
        return a in self._identity_sets()[1]

    def global_identity(self) -> Optional[int]:
        if "global" not in self._cache:
            found = None
            for e in range(self.size):
                if all(self.table.get((e, a)) == a and self.table.get((a, e)) == a
                       for a in range(self.size)):
                    found = e
                    break
            self._cache["global"] = found
        return self._cache["global"]

    def inverse(self, a: int) -> Optional[int]:
        e = self.global_identity()
        if e is None:
            return None
        for b in range(self.size):
            if self.table.get((a, b)) == e and self.table.get((b, a)) == e:
                return b
        return None

    def same_table(self, other: "Magma") -> bool:
        return self.size == other.size and self.table == other.table


class Morphism(BaseModel):
    """A total map between carriers, claimed (not assumed) to be a homomorphism."""
    model_config = ConfigDict(frozen=True)

    source: Magma = Field(..., description="Source magma")
    target: Magma = Field(..., description="Target magma")
    mapping: Tuple[int, ...] = Field(..., description="Image of each source element")

    @model_validator(mode="after")
    def _total(self):
        if len(self.mapping) != self.source.size:
            raise ValueError("map must be total on the source carrier")
        if any(not 0 <= v < self.target.size for v in self.mapping):
            raise ValueError("map leaves the target carrier")
        return self

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.mapping)) == self.source.size


class IdentityFlags(BaseModel):
    """Identity classification of one element."""
    model_config = ConfigDict(frozen=True)

    right_id_for: Tuple[int, ...] = Field(default=(), description="Elements a with xDa and xa=x")
    right_id_for_magma: bool = False
    left_id_for_magma: bool = False
    full_id: bool = False
    global_id: bool = False


class Rule(BaseModel):
    model_config = ConfigDict(frozen=True)

    lhs: Word = Field(..., description="Left-hand side")
    rhs: Word = Field(..., description="Right-hand side")


class RuleKind(str, Enum):
    SEMIGROUP = "semigroup"
    MONOID = "monoid"
    GROUP = "group"


class RuleSet(BaseModel):
    """Alphabet plus an ordered list of rewriting rules."""
    model_config = ConfigDict(frozen=True)

    alphabet: Tuple[str, ...] = Field(..., description="Generator names")
    rules: Tuple[Rule, ...] = Field(default=(), description="Rules in declared order")
    kind: RuleKind = Field(default=RuleKind.MONOID, description="semigroup | monoid | group")

    @model_validator(mode="after")
    def _rules_fit(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has repeated generators")
        letters = set(self.alphabet)
        for rule in self.rules:
            if not rule.lhs:
                raise ValueError("rules need a nonempty left side")
            if self.kind == RuleKind.SEMIGROUP and not rule.rhs:
                raise ValueError("semigroup rules need a nonempty right side")
            stray = (set(rule.lhs) | set(rule.rhs)) - letters
            if stray:
                raise ValueError(f"rule uses letters outside the alphabet: {sorted(stray)}")
        return self


class CertKind(str, Enum):
    LENGTH_REDUCING = "length_reducing"
    LENGTH_LEX = "length_lex"
    CW_MEASURE = "cw_measure"
    RECURSIVE_PATH = "recursive_path"


class TerminationCert(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: CertKind
    order: Tuple[str, ...] = Field(default=(), description="Letter order, smallest first (length_lex, recursive_path)")
    x_letters: Tuple[str, ...] = Field(default=(), description="X letters for cw_measure; inferred when empty")
    y_letters: Tuple[str, ...] = Field(default=(), description="Y letters for cw_measure; inferred when empty")


class AbstractRel(BaseModel):
    """A binary relation on 0..size-1."""
    model_config = ConfigDict(frozen=True)

    size: int = Field(..., ge=0)
    edges: FrozenSet[Tuple[int, int]] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def _edges_inside(self):
        for a, b in self.edges:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise ValueError(f"edge ({a},{b}) leaves the carrier")
        return self

    def matrix(self) -> np.ndarray:
        grid = np.zeros((self.size, self.size), dtype=bool)
        for a, b in self.edges:
            grid[a, b] = True
        return grid

    @classmethod
    def from_matrix(cls, grid: np.ndarray) -> "AbstractRel":
        rows, cols = np.nonzero(grid)
        return cls(size=grid.shape[0], edges=frozenset(zip(rows.tolist(), cols.tolist())))


class GenActions(BaseModel):
    """Generator-level actions: dot on Y x X into X, exp on Y x X into Y-words."""
    model_config = ConfigDict(frozen=True)

    X: Tuple[str, ...]
    Y: Tuple[str, ...]
    dot: Dict[Tuple[str, str], str]
    exp: Dict[Tuple[str, str], Word]

    @model_validator(mode="after")
    def _total_on_generators(self):
        for y in self.Y:
            for x in self.X:
                if (y, x) not in self.dot or (y, x) not in self.exp:
                    raise ValueError(f"actions undefined at ({y},{x})")
                if self.dot[(y, x)] not in self.X:
                    raise ValueError(f"dot({y},{x}) is not a generator of X")
                if any(letter not in self.Y for letter in self.exp[(y, x)]):
                    raise ValueError(f"exp({y},{x}) is not a word over Y")
        return self


class MorphismSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    src: str
    tgt: str


class FiniteCategory(BaseModel):
    """Objects, morphisms with source and target, and a partial composition.

    ``compose[(a, b)]`` is a after b, defined when src(a) == tgt(b).
    """
    model_config = ConfigDict(frozen=True)

    objects: Tuple[str, ...]
    morphisms: Tuple[MorphismSpec, ...]
    compose: Dict[Tuple[str, str], str]

    _cache: Dict[str, Any] = PrivateAttr(default_factory=dict)

    def spec(self, name: str) -> MorphismSpec:
        if "specs" not in self._cache:
            self._cache["specs"] = {m.name: m for m in self.morphisms}
        return self._cache["specs"][name]

    def src(self, name: str) -> str:
        return self.spec(name).src

    def tgt(self, name: str) -> str:
        return self.spec(name).tgt

    @property
    def morphism_names(self) -> Tuple[str, ...]:
        return tuple(m.name for m in self.morphisms)

    def identity(self, obj: str) -> Optional[str]:
        """The loop at obj that composes neutrally on both sides, if any."""
        for m in self.morphisms:
            if m.src != obj or m.tgt != obj:
                continue
            neutral = all(
                self.compose.get((m.name, other.name)) == other.name
                for other in self.morphisms if other.tgt == obj
            ) and all(
                self.compose.get((other.name, m.name)) == other.name
                for other in self.morphisms if other.src == obj
            )
            if neutral:
                return m.name
        return None


class GroupoidBundle(BaseModel):
    """A category G, a group U and per-object embeddings phi_x of U into G_x.

    ``phi[x][k]`` is the morphism that U's element k lands on at object x.
    """
    model_config = ConfigDict(frozen=True)

    G: FiniteCategory
    U: Magma
    phi: Dict[str, Tuple[str, ...]]


class EmbeddingFns(BaseModel):
    model_config = ConfigDict(frozen=True)

    i: Dict[Any, Any] = Field(..., description="A -> U")
    j: Dict[Any, Any] = Field(..., description="U -> A")


class LclmWitness(BaseModel):
    model_config = ConfigDict(frozen=True)

    left_cofactor: Tuple[Any, Any] = Field(..., description="(p, alpha) multiplying x on the left")
    right_cofactor: Tuple[Any, Any] = Field(..., description="(q, beta) multiplying y on the left")
    multiple: Tuple[Any, Any] = Field(..., description="The common left multiple l")
    checks: Dict[str, bool] = Field(default_factory=dict, description="Post-verification outcomes")


class ParenTree(BaseModel):
    """Binary bracketing of factors 1..n: a leaf index or a (left, right) node."""
    model_config = ConfigDict(frozen=True)

    leaf: Optional[int] = None
    left: Optional["ParenTree"] = None
    right: Optional["ParenTree"] = None

    @model_validator(mode="after")
    def _leaf_or_node(self):
        if (self.leaf is None) == (self.left is None or self.right is None):
            raise ValueError("a tree node is either a leaf or has two children")
        return self

    def leaves(self) -> List[int]:
        if self.leaf is not None:
            return [self.leaf]
        return self.left.leaves() + self.right.leaves()

    def spans(self, n: int) -> bool:
        return self.leaves() == list(range(1, n + 1))

    def render(self) -> str:
        if self.leaf is not None:
            return str(self.leaf)
        return f"({self.left.render()} {self.right.render()})"

    @classmethod
    def parse(cls, text: str) -> "ParenTree":
        """Read trees written like ``((1 2) 3)``."""
        tokens = re.findall(r"\(|\)|\d+", text)
        pos = 0

        def walk() -> "ParenTree":
            nonlocal pos
            if pos >= len(tokens):
                raise ValueError(f"unexpected end of tree {text!r}")
            tok = tokens[pos]
            pos += 1
            if tok == "(":
                left = walk()
                right = walk()
                if pos >= len(tokens) or tokens[pos] != ")":
                    raise ValueError(f"expected ')' in tree {text!r}")
                pos += 1
                return cls(left=left, right=right)
            if tok == ")":
                raise ValueError(f"unexpected ')' in tree {text!r}")
            return cls(leaf=int(tok))

        tree = walk()
        if pos != len(tokens):
            raise ValueError(f"trailing input in tree {text!r}")
        return tree

    @classmethod
    def left_comb(cls, n: int) -> "ParenTree":
        tree = cls(leaf=1)
        for k in range(2, n + 1):
            tree = cls(left=tree, right=cls(leaf=k))
        return tree

    @classmethod
    def right_comb(cls, n: int) -> "ParenTree":
        tree = cls(leaf=n)
        for k in range(n - 1, 0, -1):
            tree = cls(left=cls(leaf=k), right=tree)
        return tree


class Command(BaseModel):
    """One parsed CLI invocation."""
    verb: str = Field(..., description="Subcommand name")
    inputs: List[str] = Field(default_factory=list, description="Positional input paths or names")
    flags: Dict[str, Any] = Field(default_factory=dict, description="Verb options")
    output: Optional[str] = Field(default=None, description="Path given with -o")


class CommandResult(BaseModel):
    """What a verb produced: a verdict, a JSON payload and readable text."""
    verb: str
    verdict: Verdict
    payload: Dict[str, Any] = Field(default_factory=dict)
    text: str = ""
    written: List[str] = Field(default_factory=list, description="Files emitted")
