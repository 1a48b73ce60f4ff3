"""Verb dispatch: every CLI verb maps to exactly one library operation."""

from typing import Any, Callable, Dict, List, Optional, Sequence

from src.algebra import examples_categories as cats
from src.algebra import magma_core as mc
from src.algebra import mutual_actions as ma
from src.algebra import presentations as pr
from src.algebra import rewriting as rw
from src.algebra import zs_product as zs
from src.models.base_models import (CertKind, CommandResult, Command, Magma, ParenTree, PropertyReport,
                                    ReportBase, TerminationCert, Verdict)
from src.models.errors import ArtifactError, UnknownExample
from src.utils.logging_utils import cli_logger
from src.utils.persistence import ArtifactStore

EXAMPLE_PREFIX = "example:"


# ---------------------------------------------------------------------------
# Input resolution

def _example(ref: str) -> Optional[cats.StockExample]:
    if not ref.startswith(EXAMPLE_PREFIX):
        return None
    return cats.stock_example(ref[len(EXAMPLE_PREFIX):].split(":")[0])


def _missing(ref: str, what: str):
    return UnknownExample(f"{ref} has no {what}", ref)


def load_actions(store: ArtifactStore, ref: str) -> ma.ActionPair:
    """An actions file, or ``example:NAME``."""
    ex = _example(ref)
    if ex is None:
        return store.load_actions(ref)
    if ex.actions is None:
        raise _missing(ref, "actions")
    return ex.actions


def load_presentation(store: ArtifactStore, ref: str) -> pr.Presentation:
    """A presentation file, or ``example:NAME:TAG`` with TAG one of U, A, W."""
    ex = _example(ref)
    if ex is None:
        return store.load_presentation(ref)
    tag = ref.split(":")[2] if ref.count(":") >= 2 else "W"
    if tag not in ex.presentations:
        raise _missing(ref, f"presentation {tag}")
    return ex.presentations[tag]


def load_gen_actions(store: ArtifactStore, ref: str):
    ex = _example(ref)
    if ex is None:
        return store.load_gen_actions(ref)
    if ex.gen_actions is None:
        raise _missing(ref, "generator actions")
    return ex.gen_actions


def load_magma(store: ArtifactStore, ref: str) -> Magma:
    ex = _example(ref)
    if ex is None:
        return store.load_magma(ref)
    if ex.magma is None:
        raise _missing(ref, "magma")
    return ex.magma


def load_situation(store: ArtifactStore, ref: str):
    ex = _example(ref)
    if ex is None:
        return store.load_situation(ref)
    if ex.situation is None:
        raise _missing(ref, "situation")
    return ex.situation


def element(dom: Any, text: str) -> Any:
    """An element by name (finite magmas) or by word (word monoids)."""
    if isinstance(dom, Magma):
        if text in dom.names:
            return dom.index_of(text)
        if text.isdigit() and int(text) < dom.size:
            return int(text)
        raise ArtifactError(f"no element named {text!r}", text)
    return dom.normal_form(rw.parse_word(text, dom.alphabet))


def pair_element(AP: ma.ActionPair, text: str):
    """A product element written "u|alpha"."""
    if "|" not in text:
        raise ArtifactError(f"product elements are written u|alpha, got {text!r}", text)
    u, a = text.split("|", 1)
    return element(AP.U, u), element(AP.A, a)


def subset(P: Magma, names: Sequence[str]) -> List[int]:
    return [element(P, n) for n in names]


# ---------------------------------------------------------------------------
# Result helpers

def aggregate(verdicts: Sequence[Verdict]) -> Verdict:
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS


def report_line(report: ReportBase) -> str:
    tag = getattr(report, "property", None) or getattr(report, "axiom", "")
    line = f"{tag}: {report.verdict.value}"
    labels = report.details.get("labels")
    if labels or report.witness is not None:
        line += f" at {labels or list(report.witness)}"
    if report.notes:
        line += f" ({'; '.join(report.notes)})"
    return line


def from_reports(verb: str, reports: List[ReportBase], **payload) -> CommandResult:
    return CommandResult(
        verb=verb,
        verdict=aggregate([r.verdict for r in reports]),
        payload={"reports": [r.model_dump(mode="json") for r in reports], **payload},
        text="\n".join(report_line(r) for r in reports),
    )


def _written(cmd: Command, save: Callable[[str], str]) -> List[str]:
    return [save(cmd.output)] if cmd.output else []


def _with_reports(cmd: Command, store: ArtifactStore, reports: List[ReportBase]) -> CommandResult:
    """Checker verbs have no artifact of their own; -o writes the reports."""
    written = _written(cmd, lambda path: store.save_reports(reports, path))
    return from_reports(cmd.verb, reports).model_copy(update={"written": written})


# ---------------------------------------------------------------------------
# magma_core verbs

def do_check(cmd: Command, store: ArtifactStore) -> CommandResult:
    P = load_magma(store, cmd.inputs[0])
    props = cmd.flags.get("prop") or [p.value for p in mc.MagmaProperty]
    reports = [mc.check_property(P, p) for p in props]
    return _with_reports(cmd, store, reports)


def do_identities(cmd: Command, store: ArtifactStore) -> CommandResult:
    P = load_magma(store, cmd.inputs[0])
    flags = mc.identities_of(P)
    payload = {P.names[x]: f.model_dump(mode="json") for x, f in flags.items()}
    text = "\n".join(
        f"{P.names[x]}: right={f.right_id_for_magma} left={f.left_id_for_magma} "
        f"full={f.full_id} global={f.global_id} right_for={[P.names[a] for a in f.right_id_for]}"
        for x, f in flags.items())
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"identities": payload}, text=text)


def do_units(cmd: Command, store: ArtifactStore) -> CommandResult:
    P = load_magma(store, cmd.inputs[0])
    units = [P.names[x] for x in sorted(mc.units_of(P))]
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"units": units},
                         text=f"units: {', '.join(units) or '(none)'}")


def do_lclm(cmd: Command, store: ArtifactStore) -> CommandResult:
    P = load_magma(store, cmd.inputs[0])
    a, b = element(P, cmd.inputs[1]), element(P, cmd.inputs[2])
    found = mc.lclm(P, a, b)
    if found is None:
        return CommandResult(verb=cmd.verb, verdict=Verdict.FAIL, payload={"lclm": None},
                             text=f"{P.names[a]} and {P.names[b]} have no least common left multiple")
    l, p, q = (P.names[k] for k in found)
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"lclm": l, "p": p, "q": q},
                         text=f"lclm = {l} = {p}{P.names[a]} = {q}{P.names[b]}")


# ---------------------------------------------------------------------------
# mutual_actions verbs

def do_derive_actions(cmd: Command, store: ArtifactStore) -> CommandResult:
    M = load_magma(store, cmd.inputs[0])
    AP, table = ma.derive_internal_actions(M, subset(M, cmd.flags["U"]), subset(M, cmd.flags["A"]))
    report = ma.zs_identity_witnesses(M, AP, table)
    written = _written(cmd, lambda path: store.save_actions(AP, path))
    text = "\n".join(f"{AP.A.label(a)} . {AP.U.label(u)} = {AP.U.label(AP.dot(a, u))}, "
                     f"{AP.A.label(a)} ^ {AP.U.label(u)} = {AP.A.label(AP.exp(a, u))}"
                     for a, u in AP.h_pairs())
    return CommandResult(verb=cmd.verb, verdict=report.verdict, text=text, written=written,
                         payload={"h": len(AP.h_pairs()), "identities": report.model_dump(mode="json")})


def do_check_axiom(cmd: Command, store: ArtifactStore) -> CommandResult:
    AP = load_actions(store, cmd.inputs[0])
    tags = cmd.flags.get("axiom") or ["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"]
    return _with_reports(cmd, store, ma.check_axioms(AP, None, tags, cmd.flags.get("bound")))


def do_families(cmd: Command, store: ArtifactStore) -> CommandResult:
    AP = load_actions(store, cmd.inputs[0])
    table = ma.family_properties(AP, cmd.flags.get("bound"))
    reports = [r for family in table.values() for r in family.values()]
    # family properties describe the actions; none of them is a failure of the input
    result = from_reports(cmd.verb, reports)
    return result.model_copy(update={"verdict": Verdict.PASS})


# ---------------------------------------------------------------------------
# zs_product verbs

def _product_result(cmd: Command, store: ArtifactStore, ZS: zs.ZSProduct) -> CommandResult:
    P = ZS.to_magma()
    written = _written(cmd, lambda path: store.save_magma(P, path))
    if cmd.flags.get("product_file"):
        written.append(store.save_product(ZS, cmd.flags["product_file"]))
    reports: List[ReportBase] = list(ZS.closure) + ([ZS.totality] if ZS.totality else [])
    result = from_reports(cmd.verb, reports, size=P.size, dropped=ZS.dropped)
    text = f"product with {P.size} elements, {len(P.table)} defined products"
    return result.model_copy(update={"text": "\n".join(filter(None, [text, result.text])), "written": written})


def do_product(cmd: Command, store: ArtifactStore) -> CommandResult:
    return _product_result(cmd, store, zs.external_product(load_actions(store, cmd.inputs[0])))


def do_monoid_product(cmd: Command, store: ArtifactStore) -> CommandResult:
    AP = load_actions(store, cmd.inputs[0])
    return _product_result(cmd, store, zs.monoid_product(AP.U, AP.A, AP))


def do_group_product(cmd: Command, store: ArtifactStore) -> CommandResult:
    AP = load_actions(store, cmd.inputs[0])
    return _product_result(cmd, store, zs.group_product(AP.U, AP.A, AP))


def do_reconstruct(cmd: Command, store: ArtifactStore) -> CommandResult:
    M = load_magma(store, cmd.inputs[0])
    iso = zs.reconstruction_iso(M, subset(M, cmd.flags["U"]), subset(M, cmd.flags["A"]))
    pairs = {iso.source.names[k]: M.names[iso(k)] for k in range(iso.source.size)}
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"iso": pairs},
                         text="\n".join(f"{p} -> {x}" for p, x in pairs.items()))


def do_classify(cmd: Command, store: ArtifactStore) -> CommandResult:
    AP = load_actions(store, cmd.inputs[0])
    kind = zs.classify_product(AP)
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"kind": kind.value}, text=kind.value)


def do_product_lclm(cmd: Command, store: ArtifactStore) -> CommandResult:
    AP = load_actions(store, cmd.inputs[0])
    ZS = zs.external_product(AP)
    x, y = pair_element(AP, cmd.flags["x"]), pair_element(AP, cmd.flags["y"])
    found = zs.product_lclm(ZS, x, y, fuel=cmd.flags.get("fuel"))
    payload = {
        "multiple": ZS.label(found.multiple),
        "left_cofactor": ZS.label(found.left_cofactor),
        "right_cofactor": ZS.label(found.right_cofactor),
        "checks": found.checks,
    }
    verdict = Verdict.PASS if all(found.checks.values()) else Verdict.FAIL
    text = (f"lclm = {payload['multiple']} = {payload['left_cofactor']}{ZS.label(x)} "
            f"= {payload['right_cofactor']}{ZS.label(y)}")
    return CommandResult(verb=cmd.verb, verdict=verdict, payload=payload, text=text)


def do_assoc_chain(cmd: Command, store: ArtifactStore) -> CommandResult:
    M = load_magma(store, cmd.inputs[0])
    factors = [subset(M, names) for names in cmd.flags["factor"]]
    tree = ParenTree.parse(cmd.flags["tree"]) if cmd.flags.get("tree") else ParenTree.left_comb(len(factors))
    report = zs.assoc_chain_iso(M, factors, tree)
    result = from_reports(cmd.verb, [report])
    if cmd.flags.get("versus") and report.holds():
        composite = zs.chain_composite(M, factors, tree, ParenTree.parse(cmd.flags["versus"]))
        lines = [f"{k} -> {v}" for k, v in composite.items()]
        result = result.model_copy(update={"text": "\n".join([result.text] + lines),
                                           "payload": {**result.payload, "composite": [[repr(k), repr(v)]
                                                       for k, v in composite.items()]}})
    return result


# ---------------------------------------------------------------------------
# rewriting verbs

def do_closure(cmd: Command, store: ArtifactStore) -> CommandResult:
    R = store.load_relation(cmd.inputs[0])
    closed = rw.rel_closure(R, cmd.flags["kind"])
    written = _written(cmd, lambda path: store.save_relation(closed, path))
    edges = [list(e) for e in sorted(closed.edges)]
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"size": closed.size, "edges": edges},
                         text=f"{len(edges)} edges: {edges}", written=written)


def do_rel_check(cmd: Command, store: ArtifactStore) -> CommandResult:
    R = store.load_relation(cmd.inputs[0])
    props = cmd.flags.get("prop") or [p.value for p in rw.RelProperty]
    return _with_reports(cmd, store, [rw.check_rel_property(R, p) for p in props])


def do_normal_forms(cmd: Command, store: ArtifactStore) -> CommandResult:
    R = store.load_relation(cmd.inputs[0])
    forms = rw.normal_forms_abstract(R)
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"normal_forms": forms},
                         text="\n".join(f"{a} -> {b}" for a, b in sorted(forms.items())))


def _word(pres: pr.Presentation, text: str):
    return rw.parse_word(text, pres.rules.alphabet)


def do_rewrite(cmd: Command, store: ArtifactStore) -> CommandResult:
    pres = load_presentation(store, cmd.inputs[0])
    steps = sorted(rw.word_label(w) for w in rw.word_rewrite_step(pres.rules, _word(pres, cmd.flags["word"])))
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"successors": steps},
                         text="\n".join(steps) if steps else "(irreducible)")


def do_normalize(cmd: Command, store: ArtifactStore) -> CommandResult:
    pres = load_presentation(store, cmd.inputs[0])
    w = _word(pres, cmd.flags["word"])
    if cmd.flags.get("trace"):
        trace = rw.normalization_trace(pres.rules, w, cmd.flags.get("fuel"))
        labels = [rw.format_word(v) for v in trace]
        return CommandResult(verb=cmd.verb, verdict=Verdict.PASS,
                             payload={"normal_form": labels[-1], "trace": labels}, text="\n".join(labels))
    nf = rw.format_word(rw.normalize_word(pres.rules, w, cmd.flags.get("fuel")))
    return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"normal_form": nf}, text=nf)


def do_local_confluence(cmd: Command, store: ArtifactStore) -> CommandResult:
    pres = load_presentation(store, cmd.inputs[0])
    return from_reports(cmd.verb, [rw.string_local_confluence(pres.rules, cmd.flags.get("fuel"))])


def do_termination(cmd: Command, store: ArtifactStore) -> CommandResult:
    pres = load_presentation(store, cmd.inputs[0])
    if not cmd.flags.get("cert"):
        return from_reports(cmd.verb, [pres.completeness(cmd.flags.get("fuel"))])
    cert = TerminationCert(kind=CertKind(cmd.flags["cert"]), order=tuple(cmd.flags.get("order") or ()),
                           x_letters=tuple(cmd.flags.get("x_letters") or ()),
                           y_letters=tuple(cmd.flags.get("y_letters") or ()))
    return from_reports(cmd.verb, [rw.termination_certificate(pres.rules, cert)])


def do_table_pres(cmd: Command, store: ArtifactStore) -> CommandResult:
    P = load_magma(store, cmd.inputs[0])
    kind = cmd.flags["kind"]
    pres = pr.Presentation.of(rw.table_presentation(P, kind))
    if kind == "group":
        reports: List[ReportBase] = [pres.completeness(cmd.flags.get("fuel"))]
    else:
        reports = list(pr.table_census(P, kind, cmd.flags.get("fuel")))
    written = _written(cmd, lambda path: store.save_presentation(pres, path))
    result = from_reports(cmd.verb, reports, rules=len(pres.rules.rules))
    return result.model_copy(update={"written": written})


# ---------------------------------------------------------------------------
# presentations verbs

def do_zs_pres(cmd: Command, store: ArtifactStore) -> CommandResult:
    presU, presA = load_presentation(store, cmd.inputs[0]), load_presentation(store, cmd.inputs[1])
    AP = load_actions(store, cmd.inputs[2])
    pres = pr.zs_presentation(presU, presA, AP, cmd.flags.get("mode") or "generators",
                              fuel=cmd.flags.get("fuel"))
    written = _written(cmd, lambda path: store.save_presentation(pres, path))
    reports: List[ReportBase] = list(pres.checks) + [pres.completeness(cmd.flags.get("fuel"))]
    result = from_reports(cmd.verb, reports, rules=[[rw.format_word(r.lhs), rw.format_word(r.rhs)]
                                                    for r in pres.rules.rules])
    return result.model_copy(update={"written": written})


def do_action_pres(cmd: Command, store: ArtifactStore) -> CommandResult:
    GA = load_gen_actions(store, cmd.inputs[0])
    pres, report = pr.action_presentation(GA)
    written = _written(cmd, lambda path: store.save_presentation(pres, path))
    return from_reports(cmd.verb, [report]).model_copy(update={"written": written})


def do_extend_actions(cmd: Command, store: ArtifactStore) -> CommandResult:
    GA = load_gen_actions(store, cmd.inputs[0])
    AP = pr.extend_gen_actions(GA, cmd.flags.get("fuel"), cmd.flags.get("bound"))
    return from_reports(cmd.verb, pr.extension_checks(AP, cmd.flags.get("bound")))


def do_twisted3(cmd: Command, store: ArtifactStore) -> CommandResult:
    presU, presA = load_presentation(store, cmd.inputs[0]), load_presentation(store, cmd.inputs[1])
    GA = load_gen_actions(store, cmd.inputs[2])
    report, induced = pr.twisted_iii_check(presU, presA, GA, cmd.flags.get("fuel"))
    written = []
    if cmd.output and induced.is_finite:
        written.append(store.save_actions(induced, cmd.output))
    return from_reports(cmd.verb, [report]).model_copy(update={"written": written})


def do_wp(cmd: Command, store: ArtifactStore) -> CommandResult:
    pres = load_presentation(store, cmd.inputs[0])
    answer = pr.word_problem(pres, _word(pres, cmd.flags["w1"]), _word(pres, cmd.flags["w2"]),
                             cmd.flags.get("fuel"))
    verdict = {pr.WordAnswer.EQUAL: Verdict.PASS, pr.WordAnswer.DISTINCT: Verdict.FAIL,
               pr.WordAnswer.INCONCLUSIVE: Verdict.INCONCLUSIVE}[answer]
    return CommandResult(verb=cmd.verb, verdict=verdict, payload={"answer": answer.value}, text=answer.value)


# ---------------------------------------------------------------------------
# examples_categories verbs

def do_category(cmd: Command, store: ArtifactStore) -> CommandResult:
    reports: List[ReportBase] = []
    payload: Dict[str, Any] = {}
    written: List[str] = []
    if cmd.inputs:
        C = store.load_category(cmd.inputs[0])
        P = cats.category_as_magma(C)
        payload["magma"] = store.magma_to_dict(P)
        reports.append(PropertyReport(property="category", verdict=Verdict.PASS,
                                      details={"objects": len(C.objects), "morphisms": P.size}))
        written = _written(cmd, lambda path: store.save_magma(P, path))
    if cmd.flags.get("search"):
        reports.append(cats.characterization_search(cmd.flags.get("max_size") or 5,
                                                    cmd.flags.get("samples") or 2000,
                                                    cmd.flags.get("seed") or 0))
    if not reports:
        raise ArtifactError("category needs a category file or --search")
    return from_reports(cmd.verb, reports, **payload).model_copy(update={"written": written})


def do_convert(cmd: Command, store: ArtifactStore) -> CommandResult:
    sit = load_situation(store, cmd.inputs[0])
    if not isinstance(sit, cats.SituationOne):
        raise ArtifactError("convert needs a bundle (situation I)")
    AP, report = cats.convert_zs_actions(sit.bundle, sit.A)
    written = _written(cmd, lambda path: store.save_actions(AP, path))
    return from_reports(cmd.verb, [report]).model_copy(update={"written": written})


def do_roundtrip(cmd: Command, store: ArtifactStore) -> CommandResult:
    return from_reports(cmd.verb, [cats.int_ext_roundtrip(load_situation(store, cmd.inputs[0]))])


def do_example(cmd: Command, store: ArtifactStore) -> CommandResult:
    if cmd.flags.get("list") or not cmd.inputs:
        return CommandResult(verb=cmd.verb, verdict=Verdict.PASS, payload={"examples": list(cats.STOCK_EXAMPLES)},
                             text="\n".join(cats.STOCK_EXAMPLES))
    ex = cats.stock_example(cmd.inputs[0])
    written: List[str] = []
    emits = {
        "emit_actions": (ex.actions, store.save_actions),
        "emit_magma": (ex.magma, store.save_magma),
        "emit_gen_actions": (ex.gen_actions, store.save_gen_actions),
        "emit_situation": (ex.situation, store.save_situation),
    }
    for flag, (value, save) in emits.items():
        if cmd.flags.get(flag):
            if value is None:
                raise _missing(ex.name, flag[len("emit_"):].replace("_", " "))
            written.append(save(value, cmd.flags[flag]))
    for tag, path in cmd.flags.get("emit_presentation") or []:
        if tag not in ex.presentations:
            raise _missing(ex.name, f"presentation {tag}")
        written.append(store.save_presentation(ex.presentations[tag], path))

    reports: List[ReportBase] = []
    if ex.magma is not None and {"U", "A"} <= set(ex.subsets):
        reports.append(cats.complement_check(ex.magma, ex.subsets["U"], ex.subsets["A"]))
    if ex.magma is not None and {"J", "L"} <= set(ex.subsets):
        reports.append(cats.complement_rigidity(ex.magma, ex.subsets["J"], ex.subsets["L"]))
    if ex.actions is not None and ex.actions.is_finite:
        kind = zs.classify_product(ex.actions)
        reports.append(PropertyReport(property="classify", verdict=Verdict.PASS, details={"kind": kind.value}))
    result = from_reports(cmd.verb, reports, name=ex.name, description=ex.description)
    text = "\n".join(filter(None, [f"{ex.name}: {ex.description}", result.text]))
    return result.model_copy(update={"text": text, "written": written})


VERBS: Dict[str, Callable[[Command, ArtifactStore], CommandResult]] = {
    "check": do_check,
    "identities": do_identities,
    "units": do_units,
    "lclm": do_lclm,
    "derive-actions": do_derive_actions,
    "check-axiom": do_check_axiom,
    "families": do_families,
    "product": do_product,
    "reconstruct": do_reconstruct,
    "monoid-product": do_monoid_product,
    "group-product": do_group_product,
    "classify": do_classify,
    "product-lclm": do_product_lclm,
    "assoc-chain": do_assoc_chain,
    "closure": do_closure,
    "rel-check": do_rel_check,
    "normal-forms": do_normal_forms,
    "rewrite": do_rewrite,
    "normalize": do_normalize,
    "local-confluence": do_local_confluence,
    "termination": do_termination,
    "table-pres": do_table_pres,
    "zs-pres": do_zs_pres,
    "action-pres": do_action_pres,
    "extend-actions": do_extend_actions,
    "twisted3": do_twisted3,
    "wp": do_wp,
    "category": do_category,
    "convert": do_convert,
    "roundtrip": do_roundtrip,
    "example": do_example,
}


class Orchestrator:
    """Runs parsed commands against an artifact store."""

    def __init__(self, store: Optional[ArtifactStore] = None):
        self.store = store or ArtifactStore()

    def process(self, cmd: Command) -> CommandResult:
        """Dispatch one command.

        Args:
            cmd (Command): Parsed verb, inputs, flags and output path

        Returns:
            CommandResult: Verdict, payload, text and written files
        """
        handler = VERBS.get(cmd.verb)
        if handler is None:
            raise ValueError(f"Unknown verb: {cmd.verb}")
        cli_logger.debug(f"dispatching {cmd.verb} on {cmd.inputs}")
        result = handler(cmd, self.store)
        cli_logger.debug(f"{cmd.verb}: {result.verdict.value}")
        return result
