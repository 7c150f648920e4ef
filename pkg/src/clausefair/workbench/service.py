"""HTTP service exposing the workbench over JSON endpoints."""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from clausefair.annotation.models import Annotation
from clausefair.classifier.backend import load_checkpoint, predict
from clausefair.corpus.html_ingest import ingest_html
from clausefair.corpus.sentences import Sentence, extract_sentences
from clausefair.corpus.split import SplitConfig, stratified_split
from clausefair.errors import (
    ClauseFairError,
    ConflictError,
    DataError,
    DuplicateReview,
    ExternalServiceError,
    NotPending,
    SelfAdjudication,
    UsageError,
)
from clausefair.gateway.augment import generate_candidates, review_candidate
from clausefair.gateway.client import HttpLlmClient, MockLlmClient
from clausefair.gateway.prompts import builtin_template
from clausefair.labels import Label
from clausefair.workbench.config import parse_config
from clausefair.workbench.experiments import run_experiment
from clausefair.workbench.workspace import Workspace


def _http_error(exc: ClauseFairError) -> HTTPException:
    if isinstance(exc, NotPending):
        return HTTPException(status_code=404, detail=str(exc))
    if isinstance(exc, (ConflictError, SelfAdjudication, DuplicateReview)):
        return HTTPException(status_code=409, detail=str(exc))
    if isinstance(exc, ExternalServiceError):
        return HTTPException(status_code=502, detail=str(exc))
    if isinstance(exc, (DataError, UsageError)):
        return HTTPException(status_code=400, detail=str(exc))
    return HTTPException(status_code=500, detail=str(exc))


class DocumentIn(BaseModel):
    doc_id: str
    html: str
    domain_tag: str = ""
    source_uri: str = ""


class AnnotationIn(BaseModel):
    sentence_id: str
    annotator_id: str
    label: str
    timestamp: str = ""
    guideline_trace: list[str] = Field(default_factory=list)


class AdjudicationIn(BaseModel):
    adjudicator_id: str
    final_label: str
    timestamp: str = ""


class SplitIn(BaseModel):
    name: str = "default"
    ratios: tuple[float, float, float] = (0.5, 0.2, 0.3)
    seed: int = 0


class BatchIn(BaseModel):
    template_id: str
    n: int = 25
    batch_id: str = ""


class ReviewIn(BaseModel):
    index: int
    reviewer_id: str
    accept: bool


class ClassifyIn(BaseModel):
    model: str
    sentence: str


class TrainStatus:
    def __init__(self):
        self.lock = threading.Lock()
        self.state = "idle"
        self.experiment: str | None = None
        self.error: str | None = None

    def snapshot(self) -> dict:
        return {"state": self.state, "experiment": self.experiment, "error": self.error}


def create_app(
    store_root: str | Path,
    *,
    llm_script: str | None = None,
    llm_base_url: str | None = None,
) -> FastAPI:
    app = FastAPI(title="clausefair workbench", version="0.1.0")
    workspace = Workspace(store_root)
    status = TrainStatus()
    model_cache: dict[str, object] = {}

    def _label(value: str) -> Label:
        try:
            return Label.from_string(value)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    def _llm_client():
        if llm_script:
            return MockLlmClient.from_script(llm_script)
        if llm_base_url:
            return HttpLlmClient(llm_base_url)
        raise HTTPException(
            status_code=503,
            detail="no LLM configured; start the service with --llm-script "
            "or --llm-url to enable generation endpoints",
        )

    @app.post("/documents", status_code=201)
    def post_document(doc_in: DocumentIn):
        try:
            doc = ingest_html(
                doc_in.html,
                doc_in.doc_id,
                domain_tag=doc_in.domain_tag,
                source_uri=doc_in.source_uri,
            )
            sentences = extract_sentences(doc)
            workspace.store.put_document(doc)
            workspace.store.put_sentences(sentences)
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return {
            "doc_id": doc.doc_id,
            "sections": len(doc.sections),
            "sentences": len(sentences),
            "redacted": sum(1 for s in sentences if s.redacted),
        }

    @app.get("/sentences")
    def get_sentences(
        split: str | None = Query(default=None),
        split_name: str = Query(default="default"),
        labeled: bool | None = Query(default=None),
        include_redacted: bool = Query(default=False),
    ):
        sentences = workspace.store.sentences(include_redacted=include_redacted)
        if split is not None:
            try:
                bucket = workspace.load_split(split_name).bucket(split)
            except ClauseFairError as exc:
                raise _http_error(exc) from exc
            sentences = [s for s in sentences if s.sentence_id in bucket]
        out = []
        for s in sentences:
            record = s.to_dict()
            label = workspace.store.get_label(s.sentence_id)
            if label is not None:
                record["label"] = label.label.value
                record["provenance"] = label.provenance.value
            if labeled is True and label is None:
                continue
            if labeled is False and label is not None:
                continue
            out.append(record)
        return {"sentences": out, "count": len(out)}

    @app.post("/splits", status_code=201)
    def post_split(split_in: SplitIn):
        try:
            cfg = SplitConfig(ratios=tuple(split_in.ratios), seed=split_in.seed)
            split = stratified_split(workspace.store.labeled_examples(), cfg)
            workspace.save_split(split_in.name, cfg, split)
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return {
            "name": split_in.name,
            "sizes": {b: len(split.bucket(b)) for b in ("train", "validation", "test")},
        }

    @app.post("/annotations", status_code=201)
    def post_annotation(ann_in: AnnotationIn):
        annotation = Annotation(
            sentence_id=ann_in.sentence_id,
            annotator_id=ann_in.annotator_id,
            label=_label(ann_in.label),
            timestamp=ann_in.timestamp,
            guideline_trace=tuple(ann_in.guideline_trace),
        )
        try:
            outcome = workspace.add_annotation(annotation)
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return outcome

    @app.get("/adjudications")
    def get_adjudications(status_filter: str = Query(default="pending", alias="status")):
        if status_filter == "pending":
            items = []
            for request in workspace.queue.pending():
                record = {
                    "sentence_id": request.sentence_id,
                    "labels": [l.value for l in request.labels],
                    "annotators": list(request.annotators),
                }
                if workspace.store.has_sentence(request.sentence_id):
                    record["text"] = workspace.store.get_sentence(request.sentence_id).text
                items.append(record)
            return {"adjudications": items, "count": len(items)}
        if status_filter == "closed":
            return {
                "adjudications": [r.to_dict() for r in workspace.adjudications],
                "count": len(workspace.adjudications),
            }
        raise HTTPException(status_code=400, detail="status must be pending or closed")

    @app.post("/adjudications/{sentence_id:path}")
    def post_adjudication(sentence_id: str, adj_in: AdjudicationIn):
        try:
            example = workspace.adjudicate(
                sentence_id,
                adj_in.adjudicator_id,
                _label(adj_in.final_label),
                adj_in.timestamp,
            )
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return {"sentence_id": sentence_id, "label": example.label.value,
                "provenance": example.provenance.value}

    @app.get("/metrics/kappa")
    def get_kappa():
        try:
            kappa, pairs = workspace.kappa()
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return {"kappa": kappa, "pairs": pairs}

    @app.post("/augment/batches", status_code=201)
    def post_batch(batch_in: BatchIn):
        client = _llm_client()
        try:
            template = builtin_template(batch_in.template_id)
            existing = [s.text for s in workspace.store.sentences()]
            batch = generate_candidates(
                client,
                template,
                batch_in.n,
                batch_id=batch_in.batch_id or f"batch-{len(workspace.list_batches())+1:03d}",
                existing_texts=existing,
            )
            workspace.save_batch(batch)
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return batch.stats()

    @app.get("/augment/batches/{batch_id}")
    def get_batch(batch_id: str):
        try:
            return workspace.load_batch(batch_id).to_dict()
        except ClauseFairError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.post("/augment/batches/{batch_id}/review")
    def post_review(batch_id: str, review_in: ReviewIn):
        try:
            batch = workspace.load_batch(batch_id)
        except ClauseFairError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        try:
            review_candidate(batch, review_in.index, review_in.reviewer_id, review_in.accept)
            workspace.save_batch(batch)
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return batch.stats()

    @app.post("/experiments", status_code=201)
    def post_experiment(config: dict):
        if "data" in config and isinstance(config["data"], dict):
            config["data"].setdefault("store", str(workspace.root))
        else:
            config.setdefault("data", {"store": str(workspace.root)})
        try:
            cfg = parse_config(config, base_dir=workspace.root)
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        with status.lock:
            if status.state == "running":
                raise HTTPException(status_code=409, detail="a training job is already running")
            status.state = "running"
            status.experiment = cfg.name
            status.error = None
        try:
            record = run_experiment(cfg)
        except ClauseFairError as exc:
            with status.lock:
                status.state = "failed"
                status.error = str(exc)
            raise _http_error(exc) from exc
        with status.lock:
            status.state = "done"
        return record.to_dict()

    @app.get("/experiments/{name}")
    def get_experiment(name: str):
        try:
            return workspace.load_run(name)
        except ClauseFairError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/experiments/{name}/predictions")
    def get_experiment_predictions(name: str):
        try:
            record = workspace.load_run(name)
        except ClauseFairError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        path = record.get("artifacts", {}).get("predictions")
        if not path or not Path(path).exists():
            raise HTTPException(status_code=404, detail=f"run {name!r} kept no predictions")
        predictions = [
            json.loads(line)
            for line in Path(path).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        return {"name": name, "predictions": predictions, "count": len(predictions)}

    @app.post("/classify")
    def post_classify(classify_in: ClassifyIn):
        model_path = workspace.root / "models" / f"{classify_in.model}.npz"
        if not model_path.exists():
            raise HTTPException(status_code=404, detail=f"no model named {classify_in.model!r}")
        if classify_in.model not in model_cache:
            model_cache[classify_in.model] = load_checkpoint(model_path)
        model = model_cache[classify_in.model]
        sentence = Sentence(
            sentence_id="adhoc/0", doc_id="adhoc", section_path="s0/c0",
            position=0, text=classify_in.sentence,
        )
        try:
            prediction = predict(model, [sentence])[0]
        except ClauseFairError as exc:
            raise _http_error(exc) from exc
        return {
            "label": prediction.predicted.value,
            "distribution": prediction.distribution.to_list(),
            "confidence": prediction.confidence,
        }

    @app.get("/train/status")
    def get_train_status():
        with status.lock:
            return status.snapshot()

    return app
