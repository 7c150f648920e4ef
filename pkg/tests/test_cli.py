import json

import pytest

from clausefair.fixtures import (
    build_augmentation_script,
    build_fixture_store,
    write_script,
)
from clausefair.workbench.cli import main

HTML_DOC = """
<h2>Termination</h2>
<p>Company may terminate this agreement at any time. Supplier shall comply.</p>
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ingest_split_flow(tmp_path, capsys):
    html = tmp_path / "contract.html"
    html.write_text(HTML_DOC, encoding="utf-8")
    store = str(tmp_path / "store")
    code, out, _ = run(capsys, "--store", store, "ingest", str(html))
    assert code == 0
    assert "2 sentences" in out

    # annotate both sentences to agreement, then split
    for sid in ("contract/s0/c0/p0", "contract/s0/c0/p1"):
        for annotator, label in (("a", "fair"), ("b", "fair")):
            code, _, _ = run(
                capsys, "--store", store, "annotate",
                "--sentence-id", sid, "--annotator", annotator, "--label", label,
            )
            assert code == 0


def test_annotation_disagreement_adjudication_kappa(tmp_path, capsys):
    html = tmp_path / "contract.html"
    html.write_text(HTML_DOC, encoding="utf-8")
    store = str(tmp_path / "store")
    run(capsys, "--store", store, "ingest", str(html))
    sid = "contract/s0/c0/p0"
    run(capsys, "--store", store, "annotate", "--sentence-id", sid,
        "--annotator", "a", "--label", "fair")
    code, out, _ = run(capsys, "--store", store, "annotate", "--sentence-id", sid,
                       "--annotator", "b", "--label", "clearly unfair")
    assert code == 0
    assert json.loads(out)["status"] == "adjudication_required"

    code, out, _ = run(capsys, "--store", store, "adjudicate", "--sentence-id", sid,
                       "--adjudicator", "c", "--label", "clearly unfair")
    assert code == 0
    assert json.loads(out)["provenance"] == "adjudicated"

    code, out, _ = run(capsys, "--store", store, "kappa")
    assert code == 0
    assert json.loads(out)["pairs"] == 1


def test_assign_balanced(tmp_path, capsys):
    store = str(tmp_path / "store")
    code, out, _ = run(capsys, "--store", store, "assign",
                       "--annotators", "a,b,c,d", "--sentences", "s1,s2,s3,s4")
    assert code == 0
    assignment = json.loads(out)
    assert len(assignment) == 4
    assert all(len(set(pair)) == 2 for pair in assignment.values())


def test_self_adjudication_exit_code(tmp_path, capsys):
    html = tmp_path / "contract.html"
    html.write_text(HTML_DOC, encoding="utf-8")
    store = str(tmp_path / "store")
    run(capsys, "--store", store, "ingest", str(html))
    sid = "contract/s0/c0/p0"
    run(capsys, "--store", store, "annotate", "--sentence-id", sid,
        "--annotator", "a", "--label", "fair")
    run(capsys, "--store", store, "annotate", "--sentence-id", sid,
        "--annotator", "b", "--label", "clearly unfair")
    code, _, err = run(capsys, "--store", store, "adjudicate", "--sentence-id", sid,
                       "--adjudicator", "a", "--label", "fair")
    assert code == 2
    assert "data error" in err


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "kappa")  # no --store
    assert code == 1


def test_unknown_subcommand_exit_code(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 1


def test_augment_review_and_external_error(tmp_path, capsys):
    store = tmp_path / "store"
    workspace, corpus = build_fixture_store(store, seed=7, unlabeled_per_class=0)
    script_path = tmp_path / "augment.json"
    write_script(build_augmentation_script(corpus, n=5), script_path)

    code, out, _ = run(capsys, "--store", str(store), "augment",
                       "--mock-script", str(script_path), "--n", "5", "--batch-id", "b1")
    assert code == 0
    assert json.loads(out)["candidates"] == 5

    code, out, _ = run(capsys, "--store", str(store), "review",
                       "--batch", "b1", "--index", "0", "--reviewer", "r1")
    assert code == 0

    # exhausted script -> transport error -> exit 3
    empty = tmp_path / "empty.json"
    empty.write_text('{"responses": []}')
    code, _, err = run(capsys, "--store", str(store), "augment",
                       "--mock-script", str(empty), "--batch-id", "b2")
    assert code == 3
    assert "external service" in err


def test_train_eval_report_classify(tmp_path, capsys):
    store = tmp_path / "store"
    workspace, corpus = build_fixture_store(store, seed=7)
    cfg = {
        "name": "cli-van",
        "technique": "vanilla",
        "backend": "hashed-logreg",
        "seed": 7,
        "split": {"ratios": [0.5, 0.2, 0.3], "seed": 7},
        "train": {"batch_size": 16, "learning_rate": 5.0, "epochs": 60,
                  "warmup_steps": 10, "weight_decay": 0.0001, "dropout": 0.0,
                  "max_sequence_length": 256, "seed": 7},
        "data": {"store": str(store)},
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))

    code, out, _ = run(capsys, "--config", str(cfg_path), "train")
    assert code == 0
    assert "Vanilla" in out and "Accuracy" in out

    code, out, _ = run(capsys, "--store", str(store), "eval", "--run", "cli-van")
    assert code == 0

    code, out, _ = run(capsys, "--store", str(store), "report", "--extended")
    assert code == 0
    assert "Macro F1" in out

    code, out, _ = run(capsys, "--store", str(store), "classify",
                       "--model", "cli-van", "--text", "Some clause text here.")
    assert code == 0
    assert json.loads(out)["label"] in {"fair", "potentially_unfair", "clearly_unfair"}

    # technique mismatch is a usage error
    code, _, err = run(capsys, "--config", str(cfg_path), "selftrain")
    assert code == 1


def test_prompt_classify_single(tmp_path, capsys):
    script = tmp_path / "script.json"
    script.write_text(json.dumps({"responses": ["Therefore, the sentence is Potentially Unfair."]}))
    code, out, _ = run(capsys, "prompt-classify", "--text", "Vendor shall act promptly.",
                       "--mock-script", str(script))
    assert code == 0
    assert json.loads(out)["label"] == "potentially_unfair"
