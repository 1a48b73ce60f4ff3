import os
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AbelianGroup, CyclicGroup, DihedralGroup
from tqdm.auto import tqdm

from src.algebra.examples_categories import perm_name
from src.algebra.magma_core import build_magma, is_group, is_monoid, is_semigroup, magma_from_function
from src.config.config import DATA_DIR
from src.models.base_models import Magma


# Step 1: Define the record written per table
class SemigroupRecord(BaseModel):
    name: str = Field(..., description="Corpus label")
    source: str = Field(..., description="exhaustive / transformations / group")
    size: int = Field(..., description="Carrier size")
    names: List[str] = Field(..., description="Element names")
    table: List[Tuple[int, int, int]] = Field(..., description="i*j = k entries")
    is_monoid: bool = Field(..., description="Has a global identity")
    is_group: bool = Field(..., description="Every element is a unit")


# Step 2: Tables of small semigroups
def exhaustive_semigroups(max_size: int = 3) -> Iterable[Magma]:
    """Every associative full table on at most max_size elements (not up to isomorphism)."""
    for n in range(1, max_size + 1):
        pairs = list(product(range(n), repeat=2))
        for values in product(range(n), repeat=len(pairs)):
            P = build_magma(n, None, list(zip(pairs, values)))
            if is_semigroup(P):
                yield P


def _closure(gens: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    found = list(dict.fromkeys(gens))
    pos = 0
    while pos < len(found):
        f = found[pos]
        pos += 1
        for g in list(found):
            for h in (tuple(f[i] for i in g), tuple(g[i] for i in f)):
                if h not in found:
                    found.append(h)
    return found


def transformation_semigroups(max_size: int = 4, samples: int = 200, seed: int = 0) -> Iterable[Magma]:
    """Subsemigroups of full transformation semigroups generated by one or two random maps."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        degree = int(rng.integers(2, 5))
        gens = [tuple(int(v) for v in rng.integers(0, degree, degree)) for _ in range(int(rng.integers(1, 3)))]
        maps = _closure(gens)
        if len(maps) > max_size:
            continue
        # (f g)(i) = f(g(i))
        yield magma_from_function(maps, lambda f, g: tuple(f[i] for i in g), ["".join(map(str, f)) for f in maps])


def semigroup_corpus(max_size: int = 4, samples: int = 200, seed: int = 0) -> List[Magma]:
    """Exhaustive tables up to size 3 plus sampled transformation semigroups, without repeated tables."""
    corpus: List[Magma] = []
    seen = set()
    sources = [exhaustive_semigroups(min(max_size, 3))]
    if max_size > 3:
        sources.append(transformation_semigroups(max_size, samples, seed))
    for source in sources:
        for P in source:
            key = (P.size, tuple(sorted(P.table.items())))
            if key not in seen:
                seen.add(key)
                corpus.append(P)
    return corpus


# Step 3: Groups of order at most 8
def _permutation_group(G) -> Magma:
    perms = list(G.generate())
    identity = next(p for p in perms if p.is_Identity)
    perms.remove(identity)
    perms.insert(0, identity)
    return magma_from_function(perms, lambda a, b: Permutation.rmul(a, b), [perm_name(p) for p in perms])


def quaternion_group() -> Magma:
    """Q8 as the 2x2 complex matrices generated by I = diag(i, -i) and J = [[0, 1], [-1, 0]]."""
    gens = [np.array([[1j, 0], [0, -1j]]), np.array([[0, 1], [-1, 0]], dtype=complex)]

    def key(m: np.ndarray) -> Tuple[complex, ...]:
        return tuple(complex(round(z.real), round(z.imag)) for z in m.flatten())

    elements = {key(np.eye(2, dtype=complex)): np.eye(2, dtype=complex)}
    frontier = list(elements.values())
    while frontier:
        m = frontier.pop()
        for g in gens:
            p = m @ g
            if key(p) not in elements:
                elements[key(p)] = p
                frontier.append(p)
    keys = list(elements)
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    labels = {(1, 0, 0, 1): "1", (-1, 0, 0, -1): "-1", (1j, 0, 0, -1j): "i", (-1j, 0, 0, 1j): "-i",
              (0, 1, -1, 0): "j", (0, -1, 1, 0): "-j", (0, 1j, 1j, 0): "k", (0, -1j, -1j, 0): "-k"}
    ordered = sorted(keys, key=lambda k: names.index(labels[k]))
    return magma_from_function(ordered, lambda a, b: key(np.array(a).reshape(2, 2) @ np.array(b).reshape(2, 2)),
                               [labels[k] for k in ordered])


def small_groups() -> Dict[str, Magma]:
    """Every group of order at most 8, one table per isomorphism type."""
    groups = {f"C{n}": _permutation_group(CyclicGroup(n)) for n in range(1, 9)}
    groups["C2xC2"] = _permutation_group(AbelianGroup(2, 2))
    groups["S3"] = _permutation_group(DihedralGroup(3))
    groups["C2xC4"] = _permutation_group(AbelianGroup(2, 4))
    groups["C2xC2xC2"] = _permutation_group(AbelianGroup(2, 2, 2))
    groups["D4"] = _permutation_group(DihedralGroup(4))
    groups["Q8"] = quaternion_group()
    return groups


def _record(name: str, source: str, P: Magma) -> SemigroupRecord:
    return SemigroupRecord(name=name, source=source, size=P.size, names=list(P.names),
                           table=[(i, j, k) for (i, j), k in sorted(P.table.items())],
                           is_monoid=is_monoid(P), is_group=is_group(P))


# Step 4: Write the corpus as JSONL
def write_corpus(output_jsonl: str, max_size: int = 4, samples: int = 200, seed: int = 0,
                 limit: Optional[int] = None) -> int:
    corpus = semigroup_corpus(max_size, samples, seed)[:limit]
    groups = small_groups()
    os.makedirs(os.path.dirname(output_jsonl) or ".", exist_ok=True)
    count = 0
    with open(output_jsonl, "w", encoding="utf-8") as outfile:
        for k, P in enumerate(tqdm(corpus, desc="Semigroups")):
            source = "exhaustive" if P.names[0].isdigit() and len(P.names[0]) == 1 else "transformations"
            outfile.write(_record(f"sg{k:04d}", source, P).model_dump_json() + "\n")
            count += 1
        for name, G in tqdm(groups.items(), desc="Groups"):
            outfile.write(_record(name, "group", G).model_dump_json() + "\n")
            count += 1
    print(f"Wrote {count} tables to {output_jsonl}")
    return count


if __name__ == "__main__":
    output_jsonl = os.path.join(DATA_DIR, "corpus", "semigroups.jsonl")
    write_corpus(output_jsonl)
