/** Typed client over the workbench HTTP API (the only backend). */

export interface SentenceRecord {
  sentence_id: string;
  doc_id: string;
  section_path: string;
  position: number;
  text: string;
  redacted: boolean;
  label?: string;
  provenance?: string;
}

export interface PendingAdjudication {
  sentence_id: string;
  labels: [string, string];
  annotators: [string, string];
  text?: string;
}

export interface PredictionRecord {
  sentence_id: string;
  predicted: string;
  confidence?: number;
  distribution?: number[];
  gold?: string;
  text?: string;
}

export interface AnnotationOutcome {
  status: "recorded" | "agreed" | "adjudication_required";
  label?: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class WorkbenchApi {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof body === "object" && body !== null && "detail" in body
          ? String((body as { detail: unknown }).detail)
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return body as T;
  }

  listSentences(params: { labeled?: boolean } = {}): Promise<{
    sentences: SentenceRecord[];
    count: number;
  }> {
    const query = new URLSearchParams();
    if (params.labeled !== undefined) query.set("labeled", String(params.labeled));
    const text = query.toString();
    return this.request(`/sentences${text ? "?" + text : ""}`);
  }

  submitAnnotation(input: {
    sentence_id: string;
    annotator_id: string;
    label: string;
    guideline_trace?: string[];
  }): Promise<AnnotationOutcome> {
    return this.request("/annotations", {
      method: "POST",
      body: JSON.stringify(input),
    });
  }

  pendingAdjudications(): Promise<{
    adjudications: PendingAdjudication[];
    count: number;
  }> {
    return this.request("/adjudications?status=pending");
  }

  submitAdjudication(
    sentenceId: string,
    input: { adjudicator_id: string; final_label: string },
  ): Promise<{ sentence_id: string; label: string; provenance: string }> {
    return this.request(`/adjudications/${sentenceId}`, {
      method: "POST",
      body: JSON.stringify(input),
    });
  }

  experimentPredictions(name: string): Promise<{
    name: string;
    predictions: PredictionRecord[];
    count: number;
  }> {
    return this.request(`/experiments/${encodeURIComponent(name)}/predictions`);
  }

  kappa(): Promise<{ kappa: number; pairs: number }> {
    return this.request("/metrics/kappa");
  }
}
