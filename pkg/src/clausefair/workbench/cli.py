"""Command-line interface: one verb per workflow step.

Exit codes: 0 success, 1 usage error, 2 data error, 3 external-service
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from clausefair.annotation.models import Annotation
from clausefair.annotation.workflow import assign_batch
from clausefair.classifier.backend import load_checkpoint, predict
from clausefair.corpus.html_ingest import ingest_html
from clausefair.corpus.sentences import Sentence, extract_sentences
from clausefair.corpus.split import SplitConfig, stratified_split
from clausefair.errors import (
    DataError,
    ExternalServiceError,
    UsageError,
)
from clausefair.gateway.augment import generate_candidates, review_candidate
from clausefair.gateway.classify import classify_prompted
from clausefair.gateway.client import HttpLlmClient, MockLlmClient
from clausefair.gateway.prompts import builtin_template
from clausefair.labels import Label
from clausefair.workbench.config import load_config
from clausefair.workbench.experiments import RunRecord, run_experiment
from clausefair.workbench.reporting import report_json, report_text
from clausefair.workbench.workspace import Workspace


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _label(value: str) -> Label:
    try:
        return Label.from_string(value)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _workspace(args) -> Workspace:
    if not args.store:
        raise UsageError("--store is required for this command")
    return Workspace(args.store)


def _llm_client(args):
    if getattr(args, "mock_script", None):
        return MockLlmClient.from_script(args.mock_script)
    if getattr(args, "llm_url", None):
        return HttpLlmClient(args.llm_url)
    raise UsageError("provide --mock-script or --llm-url")


def _print(payload):
    print(json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True))


def cmd_ingest(args) -> int:
    workspace = _workspace(args)
    for path in args.files:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"no such file: {p}")
        doc_id = args.doc_id or p.stem
        doc = ingest_html(
            p.read_text(encoding="utf-8"), doc_id, domain_tag=args.domain
        )
        sentences = extract_sentences(doc)
        workspace.store.put_document(doc)
        workspace.store.put_sentences(sentences)
        print(
            f"{doc_id}: {len(doc.sections)} sections, {len(sentences)} sentences "
            f"({sum(1 for s in sentences if s.redacted)} redacted)"
        )
    return 0


def cmd_split(args) -> int:
    workspace = _workspace(args)
    ratios = tuple(float(x) for x in args.ratios.split(","))
    cfg = SplitConfig(ratios=ratios, seed=args.seed)
    split = stratified_split(workspace.store.labeled_examples(), cfg)
    workspace.save_split(args.name, cfg, split)
    _print({b: len(split.bucket(b)) for b in ("train", "validation", "test")})
    return 0


def cmd_assign(args) -> int:
    workspace = _workspace(args)
    if args.sentences:
        sentence_ids = args.sentences.split(",")
    else:
        sentence_ids = [
            s.sentence_id
            for s in workspace.store.sentences(include_redacted=False)
            if workspace.store.get_label(s.sentence_id) is None
        ]
    assignment = assign_batch(sentence_ids, args.annotators.split(","))
    _print({sid: list(pair) for sid, pair in assignment.items()})
    return 0


def cmd_annotate(args) -> int:
    workspace = _workspace(args)
    outcome = workspace.add_annotation(
        Annotation(
            sentence_id=args.sentence_id,
            annotator_id=args.annotator,
            label=_label(args.label),
            timestamp=args.timestamp,
        )
    )
    _print(outcome)
    return 0


def cmd_adjudicate(args) -> int:
    workspace = _workspace(args)
    example = workspace.adjudicate(
        args.sentence_id, args.adjudicator, _label(args.label), args.timestamp
    )
    _print({"sentence_id": example.sentence_id, "label": example.label.value,
            "provenance": example.provenance.value})
    return 0


def cmd_kappa(args) -> int:
    workspace = _workspace(args)
    kappa, pairs = workspace.kappa()
    _print({"kappa": kappa, "pairs": pairs})
    return 0


def cmd_augment(args) -> int:
    workspace = _workspace(args)
    client = _llm_client(args)
    template = builtin_template(args.template)
    batch = generate_candidates(
        client,
        template,
        args.n,
        batch_id=args.batch_id or f"batch-{len(workspace.list_batches()) + 1:03d}",
        existing_texts=[s.text for s in workspace.store.sentences()],
    )
    workspace.save_batch(batch)
    _print(batch.stats())
    return 0


def cmd_review(args) -> int:
    workspace = _workspace(args)
    batch = workspace.load_batch(args.batch)
    review_candidate(batch, args.index, args.reviewer, not args.reject)
    workspace.save_batch(batch)
    _print(batch.stats())
    return 0


def _run_from_config(args, allowed: tuple[str, ...]) -> int:
    if not args.config:
        raise UsageError("--config is required for this command")
    cfg = load_config(args.config)
    if cfg.technique not in allowed:
        raise UsageError(
            f"config technique {cfg.technique!r} does not match this command "
            f"(expected one of {list(allowed)})"
        )
    record = run_experiment(cfg)
    print(report_text([record]))
    return 0


def cmd_train(args) -> int:
    return _run_from_config(args, ("vanilla", "data_augmentation"))


def cmd_selftrain(args) -> int:
    return _run_from_config(args, ("data_augmentation_self_train",))


def cmd_classify(args) -> int:
    workspace = _workspace(args)
    model_path = workspace.root / "models" / f"{args.model}.npz"
    if not model_path.exists():
        raise DataError(f"no model named {args.model!r} in {workspace.root}")
    model = load_checkpoint(model_path)
    sentence = Sentence(
        sentence_id="adhoc/0", doc_id="adhoc", section_path="s0/c0",
        position=0, text=args.text,
    )
    prediction = predict(model, [sentence])[0]
    _print(
        {
            "label": prediction.predicted.value,
            "distribution": prediction.distribution.to_list(),
            "confidence": prediction.confidence,
        }
    )
    return 0


def cmd_prompt_classify(args) -> int:
    if args.config:
        return _run_from_config(args, ("direct_prompt", "cot_prompt"))
    if not args.text:
        raise UsageError("provide --text for one sentence or --config for a run")
    client = _llm_client(args)
    template = builtin_template(args.template)
    label, rationale = classify_prompted(client, template, args.text)
    _print({"label": label.value, "rationale": rationale})
    return 0


def cmd_eval(args) -> int:
    workspace = _workspace(args)
    record = RunRecord.from_dict(workspace.load_run(args.run))
    print(report_text([record], extended=args.extended))
    return 0


def cmd_report(args) -> int:
    workspace = _workspace(args)
    names = args.runs.split(",") if args.runs else workspace.list_runs()
    if not names:
        raise DataError("no runs recorded yet")
    records = [RunRecord.from_dict(workspace.load_run(n)) for n in names]
    if args.json:
        print(report_json(records, extended=args.extended))
    else:
        print(report_text(records, extended=args.extended))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from clausefair.workbench.service import create_app

    if not args.store:
        raise UsageError("--store is required for serve")
    app = create_app(args.store, llm_script=args.mock_script, llm_base_url=args.llm_url)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="clausefair", description=__doc__)
    parser.add_argument("--store", help="workspace root directory")
    parser.add_argument("--seed", type=int, default=0, help="random seed")
    parser.add_argument("--config", help="experiment config file (JSON)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest HTML contract files")
    p.add_argument("files", nargs="+")
    p.add_argument("--doc-id", default="")
    p.add_argument("--domain", default="")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("split", help="stratified train/validation/test split")
    p.add_argument("--ratios", default="0.5,0.2,0.3")
    p.add_argument("--name", default="default")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("assign", help="assign sentences to two annotators each")
    p.add_argument("--annotators", required=True, help="comma-separated ids")
    p.add_argument("--sentences", default="", help="comma-separated sentence ids")
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser("annotate", help="record one annotation")
    p.add_argument("--sentence-id", required=True)
    p.add_argument("--annotator", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--timestamp", default="")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("adjudicate", help="resolve a disagreement")
    p.add_argument("--sentence-id", required=True)
    p.add_argument("--adjudicator", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--timestamp", default="")
    p.set_defaults(func=cmd_adjudicate)

    p = sub.add_parser("kappa", help="inter-annotator agreement")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("augment", help="generate synthetic candidates")
    p.add_argument("--template", default="augment-unilateral-termination")
    p.add_argument("--n", type=int, default=25)
    p.add_argument("--batch-id", default="")
    p.add_argument("--mock-script")
    p.add_argument("--llm-url")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("review", help="review one synthetic candidate")
    p.add_argument("--batch", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--reviewer", required=True)
    p.add_argument("--reject", action="store_true")
    p.set_defaults(func=cmd_review)

    p = sub.add_parser("train", help="run a (non-self-training) training experiment")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("selftrain", help="run a self-training experiment")
    p.set_defaults(func=cmd_selftrain)

    p = sub.add_parser("classify", help="classify one sentence with a stored model")
    p.add_argument("--model", required=True)
    p.add_argument("--text", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("prompt-classify", help="classify via LLM prompting")
    p.add_argument("--template", default="classify-cot")
    p.add_argument("--text", default="")
    p.add_argument("--mock-script")
    p.add_argument("--llm-url")
    p.set_defaults(func=cmd_prompt_classify)

    p = sub.add_parser("eval", help="print metrics for one stored run")
    p.add_argument("--run", required=True)
    p.add_argument("--extended", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("report", help="results table across runs")
    p.add_argument("--runs", default="", help="comma-separated run names (default all)")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--mock-script")
    p.add_argument("--llm-url")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ExternalServiceError as exc:
        print(f"external service error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
