/**
 * Application shell: holds no truth of its own. Every view is a
 * projection of service state, refetched after each mutation, so a
 * hard refresh reproduces the same queues.
 */

import { ApiError, WorkbenchApi } from "./api.js";
import { emptyAnswers, firedRules, suggestLabel } from "./checklist.js";
import { asLabel, type Label } from "./labels.js";
import {
  buildAnnotateQueue,
  buildTriageQueue,
  filterTriage,
  type TriageItem,
} from "./queue.js";
import {
  renderAdjudicateView,
  renderAnnotateView,
  renderTriageView,
} from "./views.js";

interface AppState {
  annotatorId: string;
  mode: "annotate" | "adjudicate" | "triage";
  answers: ReturnType<typeof emptyAnswers>;
  selected: Label | null;
  triageRun: string;
  triageFilter: Label | "all";
  sentAside: Set<string>;
}

export class ReviewApp {
  private state: AppState = {
    annotatorId: "",
    mode: "annotate",
    answers: emptyAnswers(),
    selected: null,
    triageRun: "",
    triageFilter: "all",
    sentAside: new Set(),
  };

  constructor(
    private root: HTMLElement,
    private api: WorkbenchApi,
  ) {}

  async start(): Promise<void> {
    this.state.annotatorId =
      window.localStorage.getItem("clausefair-annotator") ?? "";
    while (!this.state.annotatorId) {
      this.state.annotatorId = window.prompt("Annotator id:")?.trim() ?? "";
    }
    window.localStorage.setItem("clausefair-annotator", this.state.annotatorId);
    await this.refresh();
  }

  setMode(mode: AppState["mode"]): Promise<void> {
    this.state.mode = mode;
    return this.refresh();
  }

  async refresh(): Promise<void> {
    if (this.state.mode === "annotate") await this.showAnnotate();
    else if (this.state.mode === "adjudicate") await this.showAdjudicate();
    else await this.showTriage();
  }

  private async showAnnotate(): Promise<void> {
    const { sentences } = await this.api.listSentences();
    const queue = buildAnnotateQueue(sentences).filter(
      (item) => !this.state.sentAside.has(item.sentenceId),
    );
    const item = queue[0] ?? null;
    const suggested = suggestLabel(this.state.answers);
    this.root.innerHTML = renderAnnotateView(
      item,
      this.state.answers,
      suggested,
      this.state.selected ?? suggested,
      queue.length,
    );
    if (!item) return;

    for (const box of this.root.querySelectorAll<HTMLInputElement>("[data-rule]")) {
      box.addEventListener("change", () => {
        this.state.answers[box.dataset.rule ?? ""] = box.checked;
        const suggestion = suggestLabel(this.state.answers);
        this.state.selected = suggestion; // pre-fill, still overridable
        void this.showAnnotate();
      });
    }
    const select = this.root.querySelector<HTMLSelectElement>("#annotate-label");
    select?.addEventListener("change", () => {
      this.state.selected = select.value ? asLabel(select.value) : null;
    });
    this.root
      .querySelector<HTMLButtonElement>("#annotate-submit")
      ?.addEventListener("click", () => void this.submitAnnotation(item.sentenceId));
  }

  private async submitAnnotation(sentenceId: string): Promise<void> {
    const errorBox = this.root.querySelector("#annotate-error");
    const select = this.root.querySelector<HTMLSelectElement>("#annotate-label");
    const value = select?.value ?? "";
    if (!value) {
      if (errorBox) errorBox.textContent = "Pick a label before submitting.";
      return; // client-side validation: no empty submissions
    }
    try {
      await this.api.submitAnnotation({
        sentence_id: sentenceId,
        annotator_id: this.state.annotatorId,
        label: asLabel(value),
        guideline_trace: firedRules(this.state.answers),
      });
      this.state.answers = emptyAnswers();
      this.state.selected = null;
      await this.refresh();
    } catch (error) {
      if (errorBox && error instanceof ApiError) {
        errorBox.textContent = error.detail;
      } else {
        throw error;
      }
    }
  }

  private async showAdjudicate(): Promise<void> {
    const { adjudications } = await this.api.pendingAdjudications();
    this.root.innerHTML = renderAdjudicateView(adjudications);
    const first = adjudications[0];
    if (!first) return;
    this.root
      .querySelector<HTMLButtonElement>("#adjudicate-submit")
      ?.addEventListener("click", async () => {
        const select = this.root.querySelector<HTMLSelectElement>("#adjudicate-label");
        const errorBox = this.root.querySelector("#adjudicate-error");
        try {
          await this.api.submitAdjudication(first.sentence_id, {
            adjudicator_id: this.state.annotatorId,
            final_label: asLabel(select?.value),
          });
          await this.refresh();
        } catch (error) {
          if (errorBox && error instanceof ApiError) {
            errorBox.textContent = error.detail; // e.g. self-adjudication blocked
          } else {
            throw error;
          }
        }
      });
  }

  async loadTriageRun(name: string): Promise<void> {
    this.state.triageRun = name;
    await this.showTriage();
  }

  private async showTriage(): Promise<void> {
    let items: TriageItem[] = [];
    if (this.state.triageRun) {
      const { predictions } = await this.api.experimentPredictions(
        this.state.triageRun,
      );
      items = buildTriageQueue(predictions);
    }
    this.root.innerHTML = renderTriageView(
      filterTriage(items, this.state.triageFilter),
      this.state.triageFilter,
    );
    this.root
      .querySelector<HTMLSelectElement>("#triage-filter")
      ?.addEventListener("change", (event) => {
        const value = (event.target as HTMLSelectElement).value;
        this.state.triageFilter = value === "all" ? "all" : asLabel(value);
        void this.showTriage();
      });
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(
      ".send-to-annotation",
    )) {
      button.addEventListener("click", () => {
        // a triage flag sent back to humans reappears in the annotate queue
        this.state.sentAside.delete(button.dataset.sentenceId ?? "");
        void this.setMode("annotate");
      });
    }
  }
}

export function mount(root: HTMLElement, baseUrl = ""): ReviewApp {
  const app = new ReviewApp(root, new WorkbenchApi(baseUrl));
  void app.start();
  return app;
}
