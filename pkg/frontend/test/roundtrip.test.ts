import { beforeEach, describe, expect, it } from "vitest";

import { ApiError, WorkbenchApi } from "../src/api.js";
import { renderAdjudicateView, renderAnnotateView } from "../src/views.js";
import { buildAnnotateQueue } from "../src/queue.js";
import { emptyAnswers, suggestLabel } from "../src/checklist.js";
import { FixtureService } from "./fixture_service.js";

// With CLAUSEFAIR_API_URL set, the same flows run against a live
// workbench service; by default they run against the in-memory double.
const LIVE_URL = process.env.CLAUSEFAIR_API_URL;

function makeApi(): { api: WorkbenchApi; fixture: FixtureService | null } {
  if (LIVE_URL) {
    return { api: new WorkbenchApi(LIVE_URL), fixture: null };
  }
  const fixture = new FixtureService();
  fixture.seedSentences([
    "Company may terminate this agreement at any time.",
    "Supplier shall comply with reasonable requests.",
  ]);
  return { api: new WorkbenchApi("", fixture.handler), fixture };
}

describe("annotate -> disagreement -> adjudicate round-trip", () => {
  let api: WorkbenchApi;

  beforeEach(() => {
    ({ api } = makeApi());
  });

  it("decrements the pending queue", async () => {
    const { sentences } = await api.listSentences();
    const open = buildAnnotateQueue(sentences);
    expect(open.length).toBeGreaterThan(0);
    const target = open[0].sentenceId;

    const first = await api.submitAnnotation({
      sentence_id: target,
      annotator_id: "ui-ann-a",
      label: "fair",
    });
    expect(first.status).toBe("recorded");

    const second = await api.submitAnnotation({
      sentence_id: target,
      annotator_id: "ui-ann-b",
      label: "clearly_unfair",
    });
    expect(second.status).toBe("adjudication_required");

    const before = await api.pendingAdjudications();
    expect(before.count).toBeGreaterThanOrEqual(1);
    const mine = before.adjudications.find((a) => a.sentence_id === target);
    expect(mine).toBeDefined();
    expect(mine!.labels).toEqual(["fair", "clearly_unfair"]);

    // a primary annotator cannot resolve their own disagreement
    await expect(
      api.submitAdjudication(target, {
        adjudicator_id: "ui-ann-a",
        final_label: "fair",
      }),
    ).rejects.toMatchObject({ status: 409 });

    const resolved = await api.submitAdjudication(target, {
      adjudicator_id: "ui-ann-c",
      final_label: "clearly_unfair",
    });
    expect(resolved.provenance).toBe("adjudicated");

    const after = await api.pendingAdjudications();
    expect(after.count).toBe(before.count - 1);

    // the sentence now carries exactly one final label
    const labeled = await api.listSentences({ labeled: true });
    const record = labeled.sentences.find((s) => s.sentence_id === target);
    expect(record?.label).toBe("clearly_unfair");
    expect(record?.provenance).toBe("adjudicated");
  });

  it("rejects duplicate annotations with a conflict", async () => {
    const { sentences } = await api.listSentences();
    const open = buildAnnotateQueue(sentences);
    const target = open[open.length - 1].sentenceId;
    await api.submitAnnotation({
      sentence_id: target,
      annotator_id: "ui-dup",
      label: "fair",
    });
    await expect(
      api.submitAnnotation({
        sentence_id: target,
        annotator_id: "ui-dup",
        label: "fair",
      }),
    ).rejects.toSatisfy((error: unknown) => {
      return error instanceof ApiError && error.status === 409;
    });
  });
});

describe("view rendering", () => {
  it("annotate view pre-fills the checklist suggestion as overridable", () => {
    const answers = emptyAnswers();
    answers.clear_imbalance_between_parties = true;
    const suggested = suggestLabel(answers);
    const html = renderAnnotateView(
      {
        sentenceId: "x",
        text: "Purchaser may modify the policies at any time.",
        contextBefore: null,
        contextAfter: null,
        mode: "annotate",
        existingLabels: [],
        confidence: null,
      },
      answers,
      suggested,
      suggested,
      1,
    );
    expect(html).toContain("Checklist suggestion");
    expect(html).toContain('value="clearly_unfair" selected');
    expect(html).toContain("<select"); // still overridable by hand
  });

  it("adjudicate view shows both primary labels side by side", () => {
    const html = renderAdjudicateView([
      {
        sentence_id: "s",
        labels: ["fair", "potentially_unfair"],
        annotators: ["a", "b"],
        text: "Sentence under dispute.",
      },
    ]);
    expect(html).toContain("Fair");
    expect(html).toContain("Potentially Unfair");
    expect(html).toContain("Sentence under dispute.");
  });

  it("empty queues render an empty state", () => {
    expect(renderAdjudicateView([])).toContain("empty-state");
    expect(renderAnnotateView(null, emptyAnswers(), "fair", null, 0)).toContain(
      "empty-state",
    );
  });

  it("never renders a label outside the three-class space", () => {
    expect(() =>
      renderAdjudicateView([
        {
          sentence_id: "s",
          labels: ["fair", "somewhat_unfair"],
          annotators: ["a", "b"],
          text: "x",
        },
      ]),
    ).toThrow(/not a renderable label/);
  });
});
