import { ApiError, Client, type AttemptResult } from "./api";
import type { Lang } from "./i18n";
import { ClientSession } from "./session";
import {
  explanationScreen,
  feedbackScreen,
  freeUseScreen,
  impactScreen,
  masteryScreen,
  questionnaireScreen,
  registerScreen,
  seriesScreen,
  showError,
  steerScreen,
  topicScreen,
  type SeriesHandlers,
} from "./screens";

export interface AppOptions {
  base: string;
  lang: Lang;
}

/** View names as rendered; a superset of session screens because the series
    screen splits into topic picking, answering and feedback. */
export type View =
  | "register"
  | "mastery"
  | "explanation"
  | "topic"
  | "series"
  | "feedback"
  | "steer"
  | "impact"
  | "questionnaire"
  | "free-use";

/** Single-session controller. Every flow-advancing action waits for the
    server's reply before the next screen renders; nothing is shown
    optimistically. */
export class App {
  readonly client: Client;
  readonly lang: Lang;
  session: ClientSession | null = null;
  /** Every view this session has rendered, for gating checks. */
  readonly seenViews = new Set<View>();

  private readonly root: HTMLElement;
  private view: View = "register";
  private feedback: AttemptResult | null = null;
  private lastTopic: string | null = null;
  private freePractice = false;
  private pending: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, options: AppOptions) {
    this.root = root;
    this.client = new Client(options.base);
    this.lang = options.lang;
  }

  mount(): void {
    this.show("register", registerScreen(this.lang, (id) => this.register(id)));
  }

  currentView(): View {
    return this.view;
  }

  /** Settles when every queued action (and its render) is done. */
  idle(): Promise<void> {
    return this.pending;
  }

  private show(view: View, element: HTMLElement): void {
    this.view = view;
    this.seenViews.add(view);
    this.root.replaceChildren(element);
  }

  private run(action: () => Promise<void>): void {
    this.pending = this.pending.then(action).catch((err) => {
      if (err instanceof ApiError) {
        const screen = this.root.firstElementChild as HTMLElement | null;
        if (screen) showError(screen, `[${err.code}] ${err.message}`);
        return;
      }
      throw err;
    });
  }

  private register(id: string): void {
    this.run(async () => {
      const summary = await this.client.register(id);
      this.session = new ClientSession(summary);
      await this.render();
    });
  }

  private seriesHandlers(): SeriesHandlers {
    return {
      requestSeries: (topic) =>
        this.run(async () => {
          const session = this.session!;
          session.series = await this.client.series(session.id, topic);
          this.lastTopic = session.series.topic;
          session.applyState(session.series.state);
          await this.render();
        }),
      answer: (exerciseId, answerIndex) =>
        this.run(async () => {
          const session = this.session!;
          const wasLast = session.series !== null && session.series.pending.length === 1;
          const result = await this.client.attempt(session.id, exerciseId, answerIndex);
          this.feedback = result;
          session.rating = result.learner_post;
          session.level = result.level;
          session.applyState(result.state);
          if (wasLast) session.series = null;
          await this.render();
        }),
      advance: () =>
        this.run(async () => {
          this.feedback = null;
          await this.render();
        }),
    };
  }

  private async render(): Promise<void> {
    const session = this.session;
    if (!session) {
      this.show("register", registerScreen(this.lang, (id) => this.register(id)));
      return;
    }

    if (this.feedback) {
      const result = this.feedback;
      this.show(
        "feedback",
        feedbackScreen(result, this.lang, () => this.seriesHandlers().advance()),
      );
      return;
    }

    const screen = session.screen();
    switch (screen) {
      case "mastery":
        this.show(
          "mastery",
          masteryScreen(this.lang, (position) =>
            this.run(async () => {
              const res = await this.client.setMastery(session.id, position);
              session.rating = res.rating;
              session.level = res.level;
              session.applyState(res.state);
              await this.render();
            }),
          ),
        );
        return;
      case "explanation":
        this.show(
          "explanation",
          explanationScreen(session, this.lang, () =>
            this.run(async () => {
              const res = await this.client.ackExplanation(session.id);
              session.applyState(res.state);
              await this.render();
            }),
          ),
        );
        return;
      case "series":
        await this.renderSeries(session);
        return;
      case "steer":
        this.show(
          "steer",
          steerScreen(this.lang, (step) =>
            this.run(async () => {
              const res = await this.client.steer(session.id, step);
              session.rating = res.post;
              session.level = res.level;
              session.applyState(res.state);
              await this.render();
            }),
          ),
        );
        return;
      case "impact": {
        // the chart wants the full timeline plus the authoritative rating
        const history = await this.client.history(session.id);
        session.historyCache = history.points;
        session.rating = history.rating;
        const last = history.points[history.points.length - 1];
        if (last) session.level = last.level;
        this.show(
          "impact",
          impactScreen(session, this.lang, () =>
            this.run(async () => {
              const res = await this.client.ackImpact(session.id);
              session.applyState(res.state);
              await this.render();
            }),
          ),
        );
        return;
      }
      case "questionnaire":
        this.show(
          "questionnaire",
          questionnaireScreen(this.lang, (answers, freeText) =>
            this.run(async () => {
              const res = await this.client.questionnaire(session.id, answers, freeText);
              session.applyState(res.state);
              await this.render();
            }),
          ),
        );
        return;
      case "free-use":
        if (this.freePractice && session.series) {
          this.show("series", seriesScreen(session, session.series, this.lang, this.seriesHandlers()));
          return;
        }
        this.show(
          "free-use",
          freeUseScreen(this.lang, () =>
            this.run(async () => {
              this.freePractice = true;
              const series = await this.client.series(session.id, this.lastTopic ?? undefined);
              session.series = series;
              await this.render();
            }),
          ),
        );
        return;
    }
  }

  private async renderSeries(session: ClientSession): Promise<void> {
    if (!session.series) {
      this.show("topic", topicScreen(this.lang, this.lastTopic, this.seriesHandlers()));
      return;
    }
    // re-read the open series so progress reflects the server, not the client
    session.series = await this.client.series(session.id);
    this.lastTopic = session.series.topic;
    this.show("series", seriesScreen(session, session.series, this.lang, this.seriesHandlers()));
  }
}

export function mountApp(root: HTMLElement, options: AppOptions): App {
  const app = new App(root, options);
  app.mount();
  return app;
}
