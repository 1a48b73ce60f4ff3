"""JSON artifact store for magmas, actions, presentations, relations, categories and reports."""

import json
import os
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from src.algebra.examples_categories import SituationOne, SituationTwo, category_as_magma
from src.algebra.magma_core import build_magma
from src.algebra.mutual_actions import ActionPair
from src.algebra.presentations import Presentation
from src.algebra.rewriting import WordMonoid, format_word, make_ruleset, parse_word
from src.algebra.zs_product import ZSProduct
from src.config.config import (ACTIONS_FILE_SCHEMA, BUNDLE_FILE_SCHEMA, CATEGORY_FILE_SCHEMA,
                               GEN_ACTIONS_FILE_SCHEMA, MAGMA_FILE_SCHEMA, PRESENTATION_FILE_SCHEMA,
                               RELATION_FILE_SCHEMA)
from src.models.base_models import (AbstractRel, FiniteCategory, GenActions, GroupoidBundle, Magma,
                                    MorphismSpec, ReportBase, TerminationCert)
from src.models.errors import ArtifactError, ZSError
from src.utils.logging_utils import cli_logger

Domain = Union[Magma, WordMonoid]


def _check_schema(data: Any, schema: Dict[str, Any], kind: str) -> None:
    if not isinstance(data, dict):
        raise ArtifactError(f"{kind} file must hold a JSON object", kind)
    for key, expected in schema.items():
        if key not in data:
            raise ArtifactError(f"{kind} file is missing key {key!r}", key)
        if not isinstance(data[key], expected):
            raise ArtifactError(f"{kind} file: {key!r} has the wrong type", key)


class ArtifactStore:
    """Reads and writes every file format of the toolkit.

    Relative paths resolve against ``base_dir``; references inside a file
    (an actions file naming its magmas by path) resolve against that file's
    directory.
    """

    def __init__(self, base_dir: Optional[str] = None):
        """Initialize the store.

        Args:
            base_dir (Optional[str]): Directory relative paths resolve against
        """
        self.base_dir = base_dir or os.getcwd()

    def _path(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    # -- raw JSON -----------------------------------------------------------

    def read_json(self, path: str) -> Any:
        file_path = self._path(path)
        with open(file_path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ArtifactError(f"{path} is not valid JSON: {e}", path)
        cli_logger.debug(f"Loaded {file_path}")
        return data

    def write_json(self, data: Any, path: str) -> str:
        """Write with sorted keys so identical values give identical bytes."""
        file_path = self._path(path)
        parent = os.path.dirname(file_path)
        if parent and not os.path.exists(parent):
            os.makedirs(parent)
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
            f.write("\n")
        cli_logger.debug(f"Saved {file_path}")
        return file_path

    # -- magmas ---------------------------------------------------------------

    def magma_to_dict(self, P: Magma) -> dict:
        return {
            "size": P.size,
            "names": list(P.names),
            "table": [[i, j, k] for (i, j), k in sorted(P.table.items())],
        }

    def _dict_to_magma(self, data: dict) -> Magma:
        _check_schema(data, MAGMA_FILE_SCHEMA, "magma")
        try:
            return build_magma(data["size"], data["names"], [tuple(entry) for entry in data["table"]])
        except (ZSError, TypeError, ValueError) as e:
            raise ArtifactError(f"bad magma table: {e}", getattr(e, "witness", None))

    def save_magma(self, P: Magma, path: str) -> str:
        return self.write_json(self.magma_to_dict(P), path)

    def load_magma(self, path: str) -> Magma:
        return self._dict_to_magma(self.read_json(path))

    # -- presentations --------------------------------------------------------

    def _presentation_to_dict(self, pres: Presentation) -> dict:
        RS = pres.rules
        data = {
            "alphabet": list(RS.alphabet),
            "kind": RS.kind.value,
            "rules": [[format_word(r.lhs), format_word(r.rhs)] for r in RS.rules],
        }
        if pres.cert is not None:
            data["cert"] = pres.cert.model_dump(mode="json")
        if pres.origin:
            data["origin"] = {tag: list(idx) for tag, idx in pres.origin.items()}
            data["x_letters"] = list(pres.x_letters)
            data["y_letters"] = list(pres.y_letters)
        return data

    def _dict_to_presentation(self, data: dict) -> Presentation:
        _check_schema(data, PRESENTATION_FILE_SCHEMA, "presentation")
        try:
            RS = make_ruleset(data["alphabet"], [tuple(r) for r in data["rules"]], data["kind"])
            cert = TerminationCert(**data["cert"]) if data.get("cert") else None
            return Presentation(
                rules=RS,
                cert=cert,
                origin={tag: tuple(idx) for tag, idx in data.get("origin", {}).items()},
                x_letters=tuple(data.get("x_letters", ())),
                y_letters=tuple(data.get("y_letters", ())),
            )
        except (ValidationError, ValueError, TypeError) as e:
            raise ArtifactError(f"bad presentation: {e}")

    def save_presentation(self, pres: Presentation, path: str) -> str:
        return self.write_json(self._presentation_to_dict(pres), path)

    def load_presentation(self, path: str) -> Presentation:
        return self._dict_to_presentation(self.read_json(path))

    # -- actions --------------------------------------------------------------

    def _domain_to_dict(self, dom: Domain) -> dict:
        if isinstance(dom, Magma):
            return self.magma_to_dict(dom)
        return self._presentation_to_dict(Presentation.of(dom.rules))

    def _dict_to_domain(self, value: Any, base: str) -> Domain:
        if isinstance(value, str):
            value = self.read_json(os.path.join(base, value))
        if isinstance(value, dict) and "size" in value:
            return self._dict_to_magma(value)
        if isinstance(value, dict) and "alphabet" in value:
            return WordMonoid(rules=self._dict_to_presentation(value).rules)
        raise ArtifactError("a domain must be a magma or a presentation", value)

    @staticmethod
    def _encode(dom: Domain, x: Any) -> Any:
        return x if isinstance(dom, Magma) else format_word(x)

    @staticmethod
    def _decode(dom: Domain, x: Any) -> Any:
        if isinstance(dom, Magma):
            if not isinstance(x, int) or not 0 <= x < dom.size:
                raise ArtifactError(f"{x!r} is not an element index", x)
            return x
        return dom.normal_form(parse_word(x, dom.alphabet))

    def _actions_to_dict(self, AP: ActionPair) -> dict:
        if not AP.is_finite:
            raise ArtifactError("only actions between finite domains can be saved", AP.name)
        A, U = AP.A, AP.U
        pairs = AP.h_pairs()
        full = AP.h is None and AP.h_fn is None
        return {
            "A": self._domain_to_dict(A),
            "U": self._domain_to_dict(U),
            "H": "full" if full else [[self._encode(A, a), self._encode(U, u)] for a, u in pairs],
            "dot": [[self._encode(A, a), self._encode(U, u), self._encode(U, AP.dot(a, u))] for a, u in pairs],
            "exp": [[self._encode(A, a), self._encode(U, u), self._encode(A, AP.exp(a, u))] for a, u in pairs],
            "name": AP.name,
        }

    def _dict_to_actions(self, data: dict, base: str = "") -> ActionPair:
        _check_schema(data, ACTIONS_FILE_SCHEMA, "actions")
        A = self._dict_to_domain(data["A"], base)
        U = self._dict_to_domain(data["U"], base)
        if not (A.is_finite and U.is_finite):
            raise ArtifactError("action tables need finite domains")
        try:
            h = None
            if data["H"] != "full":
                h = frozenset((self._decode(A, a), self._decode(U, u)) for a, u in data["H"])
            dot = {(self._decode(A, a), self._decode(U, u)): self._decode(U, v) for a, u, v in data["dot"]}
            exp = {(self._decode(A, a), self._decode(U, u)): self._decode(A, b) for a, u, b in data["exp"]}
            return ActionPair(A=A, U=U, h=h, dot_table=dot, exp_table=exp, name=data.get("name", ""))
        except ValidationError as e:
            raise ArtifactError(f"bad action tables: {e.errors()[0]['msg']}")
        except (TypeError, ValueError) as e:
            raise ArtifactError(f"bad action entry: {e}")

    def save_actions(self, AP: ActionPair, path: str) -> str:
        return self.write_json(self._actions_to_dict(AP), path)

    def load_actions(self, path: str) -> ActionPair:
        return self._dict_to_actions(self.read_json(path), os.path.dirname(self._path(path)))

    def save_product(self, ZS: ZSProduct, path: str) -> str:
        """E, the pair table and provenance, next to the actions."""
        P = ZS.to_magma()
        data = {
            "actions": self._actions_to_dict(ZS.AP),
            "E": "full" if ZS.E.is_full else [[self._encode(ZS.U, u), self._encode(ZS.A, a)]
                                              for u, a in sorted(ZS.E.pairs)],
            "provenance": ZS.provenance,
            "product": self.magma_to_dict(P),
        }
        return self.write_json(data, path)

    # -- generator-level actions ---------------------------------------------

    def _gen_actions_to_dict(self, GA: GenActions) -> dict:
        return {
            "X": list(GA.X),
            "Y": list(GA.Y),
            "dot": [[y, x, v] for (y, x), v in sorted(GA.dot.items())],
            "exp": [[y, x, format_word(w)] for (y, x), w in sorted(GA.exp.items())],
        }

    def _dict_to_gen_actions(self, data: dict) -> GenActions:
        _check_schema(data, GEN_ACTIONS_FILE_SCHEMA, "gen-actions")
        try:
            return GenActions(
                X=tuple(data["X"]),
                Y=tuple(data["Y"]),
                dot={(y, x): v for y, x, v in data["dot"]},
                exp={(y, x): parse_word(w, data["Y"]) for y, x, w in data["exp"]},
            )
        except (ValidationError, ValueError, TypeError) as e:
            raise ArtifactError(f"bad gen-actions: {e}")

    def save_gen_actions(self, GA: GenActions, path: str) -> str:
        return self.write_json(self._gen_actions_to_dict(GA), path)

    def load_gen_actions(self, path: str) -> GenActions:
        return self._dict_to_gen_actions(self.read_json(path))

    # -- relations ------------------------------------------------------------

    def _dict_to_relation(self, data: dict) -> AbstractRel:
        _check_schema(data, RELATION_FILE_SCHEMA, "relation")
        try:
            return AbstractRel(size=data["size"], edges=frozenset(tuple(e) for e in data["edges"]))
        except (ValidationError, TypeError) as e:
            raise ArtifactError(f"bad relation: {e}")

    def save_relation(self, R: AbstractRel, path: str) -> str:
        return self.write_json({"size": R.size, "edges": [list(e) for e in sorted(R.edges)]}, path)

    def load_relation(self, path: str) -> AbstractRel:
        return self._dict_to_relation(self.read_json(path))

    # -- categories and bundles -----------------------------------------------

    def _category_to_dict(self, C: FiniteCategory) -> dict:
        return {
            "objects": list(C.objects),
            "morphisms": [m.model_dump() for m in C.morphisms],
            "compose": [[a, b, c] for (a, b), c in sorted(C.compose.items())],
        }

    def _dict_to_category(self, data: dict) -> FiniteCategory:
        _check_schema(data, CATEGORY_FILE_SCHEMA, "category")
        try:
            return FiniteCategory(
                objects=tuple(data["objects"]),
                morphisms=tuple(MorphismSpec(**m) for m in data["morphisms"]),
                compose={(a, b): c for a, b, c in data["compose"]},
            )
        except (ValidationError, ValueError, TypeError) as e:
            raise ArtifactError(f"bad category: {e}")

    def save_category(self, C: FiniteCategory, path: str) -> str:
        return self.write_json(self._category_to_dict(C), path)

    def load_category(self, path: str) -> FiniteCategory:
        return self._dict_to_category(self.read_json(path))

    def _situation_to_dict(self, sit: Union[SituationOne, SituationTwo]) -> dict:
        if isinstance(sit, SituationOne):
            B = sit.bundle
            data = self._category_to_dict(B.G)
            data["U"] = self.magma_to_dict(B.U)
            data["phi"] = {x: [[B.U.names[k], m] for k, m in enumerate(images)] for x, images in B.phi.items()}
            data["A"] = list(sit.A)
            return data
        actions = self._actions_to_dict(sit.AP)
        return {"category": self._category_to_dict(sit.A), "U": actions["U"],
                "dot": actions["dot"], "exp": actions["exp"]}

    def _dict_to_situation(self, data: dict, base: str = "") -> Union[SituationOne, SituationTwo]:
        if isinstance(data, dict) and "category" in data:
            C = self._dict_to_category(data["category"])
            A = category_as_magma(C)
            actions = {"A": self.magma_to_dict(A), "U": data.get("U"), "H": "full",
                       "dot": data.get("dot"), "exp": data.get("exp")}
            AP = self._dict_to_actions(actions, base)
            return SituationTwo(A=C, U=AP.U, AP=AP)
        _check_schema(data, BUNDLE_FILE_SCHEMA, "bundle")
        G = self._dict_to_category(data)
        U = self._dict_to_domain(data["U"], base)
        if not isinstance(U, Magma):
            raise ArtifactError("a bundle's U must be a finite magma")
        try:
            phi = {}
            for x, pairs in data["phi"].items():
                images = dict(pairs)
                phi[x] = tuple(images[name] for name in U.names)
            A = tuple(data.get("A", G.morphism_names))
            return SituationOne(bundle=GroupoidBundle(G=G, U=U, phi=phi), A=A)
        except KeyError as e:
            raise ArtifactError(f"phi misses an element of U: {e}")
        except (ValidationError, ValueError, TypeError) as e:
            raise ArtifactError(f"bad bundle: {e}")

    def save_situation(self, sit: Union[SituationOne, SituationTwo], path: str) -> str:
        return self.write_json(self._situation_to_dict(sit), path)

    def load_situation(self, path: str) -> Union[SituationOne, SituationTwo]:
        return self._dict_to_situation(self.read_json(path), os.path.dirname(self._path(path)))

    # -- reports --------------------------------------------------------------

    @staticmethod
    def report_to_dict(report: ReportBase) -> dict:
        return report.model_dump(mode="json")

    def save_reports(self, reports: List[ReportBase], path: str) -> str:
        return self.write_json([self.report_to_dict(r) for r in reports], path)
