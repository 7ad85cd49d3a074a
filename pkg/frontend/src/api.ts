/** Thin typed client for the practice service. All numbers shown in the UI
    come from these payloads; the client never computes ratings itself. */

export type Group = "none" | "control" | "control+impact";

export interface LearnerSummary {
  learner_id: string;
  group: Group;
  rating: number | null;
  level: string | null;
  state: string;
  screens: string[];
}

export interface ExerciseView {
  id: string;
  topic: string;
  statement: string;
  choices: string[];
  rating: number;
}

export interface SeriesPayload {
  topic: string;
  exercises: ExerciseView[];
  expected_p: number[];
  pending: string[];
  answered: number;
  state: string;
  practice_explainer: string;
}

export interface AttemptResult {
  exercise_id: string;
  correct: boolean;
  expected_p: number;
  learner_pre: number;
  learner_post: number;
  delta: number;
  level: string;
  state: string;
}

export interface SteerResult {
  step: number;
  pre: number;
  post: number;
  level: string;
  state: string;
}

export interface HistoryPoint {
  kind: string;
  pre: number;
  post: number;
  level: string;
  detail: string;
  ts: string;
}

export interface HistoryPayload {
  learner_id: string;
  rating: number;
  points: HistoryPoint[];
}

export interface ScreensPayload {
  screens: string[];
  practice_explainer: string;
}

/** Domain failure reported by the service: {code, message, state}. */
export class ApiError extends Error {
  readonly code: string;
  readonly state: string | null;
  readonly status: number;

  constructor(status: number, code: string, message: string, state: string | null) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.state = state;
  }
}

async function parse(resp: Response): Promise<unknown> {
  const body = await resp.json().catch(() => null);
  if (resp.ok) return body;
  if (body && typeof body === "object" && "code" in body) {
    const err = body as { code: string; message: string; state: string | null };
    throw new ApiError(resp.status, err.code, err.message, err.state);
  }
  // schema-level rejections come back in FastAPI's own shape
  throw new ApiError(resp.status, "bad-request", JSON.stringify(body), null);
}

export class Client {
  constructor(readonly base: string) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  private async get(path: string): Promise<unknown> {
    return parse(await fetch(this.url(path)));
  }

  private async post(path: string, body?: unknown): Promise<unknown> {
    return parse(
      await fetch(this.url(path), {
        method: "POST",
        headers: body === undefined ? {} : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      }),
    );
  }

  async health(): Promise<{ status: string; learners: number }> {
    return (await this.get("/health")) as { status: string; learners: number };
  }

  /** The server draws the research group; the client cannot choose it. */
  async register(learnerId: string): Promise<LearnerSummary> {
    return (await this.post("/learners", { learner_id: learnerId })) as LearnerSummary;
  }

  async learner(learnerId: string): Promise<LearnerSummary> {
    return (await this.get(`/learners/${encodeURIComponent(learnerId)}`)) as LearnerSummary;
  }

  async setMastery(learnerId: string, sliderPosition: number): Promise<{ rating: number; level: string; state: string }> {
    return (await this.post(`/learners/${encodeURIComponent(learnerId)}/mastery`, {
      slider_position: sliderPosition,
    })) as { rating: number; level: string; state: string };
  }

  async ackExplanation(learnerId: string): Promise<{ state: string }> {
    return (await this.post(`/learners/${encodeURIComponent(learnerId)}/explanation-ack`)) as { state: string };
  }

  async series(learnerId: string, topic?: string): Promise<SeriesPayload> {
    const query = topic ? `?topic=${encodeURIComponent(topic)}` : "";
    return (await this.get(`/learners/${encodeURIComponent(learnerId)}/series${query}`)) as SeriesPayload;
  }

  async attempt(learnerId: string, exerciseId: string, answerIndex: number): Promise<AttemptResult> {
    return (await this.post(`/learners/${encodeURIComponent(learnerId)}/attempts`, {
      exercise_id: exerciseId,
      answer_index: answerIndex,
    })) as AttemptResult;
  }

  async steer(learnerId: string, step: number): Promise<SteerResult> {
    return (await this.post(`/learners/${encodeURIComponent(learnerId)}/steer`, { step })) as SteerResult;
  }

  async ackImpact(learnerId: string): Promise<{ state: string }> {
    return (await this.post(`/learners/${encodeURIComponent(learnerId)}/impact-ack`)) as { state: string };
  }

  async history(learnerId: string): Promise<HistoryPayload> {
    return (await this.get(`/learners/${encodeURIComponent(learnerId)}/history`)) as HistoryPayload;
  }

  async screens(learnerId: string): Promise<ScreensPayload> {
    return (await this.get(`/learners/${encodeURIComponent(learnerId)}/screens`)) as ScreensPayload;
  }

  async questionnaire(
    learnerId: string,
    answers: Record<string, number>,
    freeText: Record<string, string>,
  ): Promise<{ stored: boolean; state: string }> {
    return (await this.post(`/learners/${encodeURIComponent(learnerId)}/questionnaire`, {
      answers,
      free_text: freeText,
    })) as { stored: boolean; state: string };
  }
}
