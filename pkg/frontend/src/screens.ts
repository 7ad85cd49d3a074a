import type { AttemptResult, SeriesPayload } from "./api";
import { masteryChart } from "./chart";
import { LIKERT_LABELS, QUESTIONNAIRE_ITEMS, t, type Lang } from "./i18n";
import type { ClientSession } from "./session";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Inline error slot present on every screen; fed by server rejections. */
export function showError(screen: HTMLElement, message: string): void {
  let slot = screen.querySelector<HTMLElement>(".error");
  if (!slot) {
    slot = el("div", "error");
    screen.prepend(slot);
  }
  slot.textContent = message;
  slot.hidden = false;
}

export function registerScreen(lang: Lang, onRegister: (id: string) => void): HTMLElement {
  const screen = el("section", "screen screen-register");
  screen.appendChild(el("h1", "", t(lang, "register.heading")));
  screen.appendChild(el("p", "", t(lang, "register.prompt")));
  const input = el("input", "login-name");
  input.placeholder = t(lang, "register.placeholder");
  const button = el("button", "submit", t(lang, "register.submit"));
  button.addEventListener("click", () => {
    if (input.value.trim()) onRegister(input.value.trim());
  });
  screen.append(input, button);
  return screen;
}

/* Label offsets for the five mastery thresholds on a [0,1] slider. */
const MASTERY_STOPS: readonly { pos: number; label: string }[] = [
  { pos: 0.0, label: "novice" },
  { pos: 0.25, label: "advanced beginner" },
  { pos: 0.5, label: "competent" },
  { pos: 0.75, label: "proficient" },
  { pos: 1.0, label: "expert" },
];

export function masteryScreen(lang: Lang, onSubmit: (position: number) => void): HTMLElement {
  const screen = el("section", "screen screen-mastery");
  screen.appendChild(el("h1", "", t(lang, "mastery.heading")));
  screen.appendChild(el("p", "", t(lang, "mastery.prompt")));

  const slider = el("input", "mastery-slider");
  slider.type = "range";
  slider.min = "0";
  slider.max = "1";
  slider.step = "0.01";
  slider.value = "0.5";

  const scale = el("div", "mastery-scale");
  const tags: HTMLElement[] = [];
  for (const stop of MASTERY_STOPS) {
    const tag = el("span", "threshold-label", stop.label);
    tag.style.left = `${stop.pos * 100}%`;
    tag.dataset.pos = String(stop.pos);
    scale.appendChild(tag);
    tags.push(tag);
  }

  const highlight = () => {
    const value = Number(slider.value);
    let active = 0;
    MASTERY_STOPS.forEach((stop, i) => {
      if (value >= stop.pos) active = i;
    });
    tags.forEach((tag, i) => tag.classList.toggle("active", i === active));
  };
  slider.addEventListener("input", highlight);
  highlight();

  const button = el("button", "submit", t(lang, "mastery.submit"));
  button.addEventListener("click", () => {
    if (button.disabled) return;
    button.disabled = true; // one shot; the server refuses re-initialisation anyway
    onSubmit(Number(slider.value));
  });

  screen.append(slider, scale, button);
  return screen;
}

export function explanationScreen(
  session: ClientSession,
  lang: Lang,
  onAck: () => void,
): HTMLElement {
  const screen = el("section", "screen screen-explanation");
  for (const key of session.explanationScreens) {
    const panel = el("article", `explainer explainer-${key}`);
    panel.appendChild(el("p", "", t(lang, `explain.${key}`)));
    screen.appendChild(panel);
  }
  const button = el("button", "submit", t(lang, "explain.continue"));
  button.addEventListener("click", () => {
    button.disabled = true;
    onAck();
  });
  screen.appendChild(button);
  return screen;
}

export interface SeriesHandlers {
  requestSeries(topic: string | undefined): void;
  answer(exerciseId: string, answerIndex: number): void;
  advance(): void;
}

/** Topic picker shown while no series is open. */
export function topicScreen(lang: Lang, previousTopic: string | null, handlers: SeriesHandlers): HTMLElement {
  const screen = el("section", "screen screen-topic");
  screen.appendChild(el("h1", "", t(lang, "series.topic.label")));
  const input = el("input", "topic-input");
  if (previousTopic) input.value = previousTopic;
  const button = el("button", "submit", t(lang, "series.topic.submit"));
  button.addEventListener("click", () => {
    handlers.requestSeries(input.value.trim() || undefined);
  });
  screen.append(input, button);
  return screen;
}

/** One exercise at a time, in the order the server fixed. */
export function seriesScreen(
  session: ClientSession,
  series: SeriesPayload,
  lang: Lang,
  handlers: SeriesHandlers,
): HTMLElement {
  const screen = el("section", "screen screen-series");
  const seriesNo = session.state.series ?? 1;
  screen.appendChild(el("h1", "", t(lang, "series.heading", { n: seriesNo })));
  const explainer =
    lang === "en" ? series.practice_explainer : t(lang, "series.practice_explainer");
  screen.appendChild(el("p", "practice-explainer", explainer));

  const currentId = series.pending[0];
  const exercise = series.exercises.find((e) => e.id === currentId);
  if (!exercise) {
    screen.appendChild(el("p", "error", t(lang, "error.generic")));
    return screen;
  }

  const total = series.answered + series.pending.length;
  screen.appendChild(
    el("p", "progress", t(lang, "series.progress", { i: series.answered + 1, n: total })),
  );
  screen.appendChild(el("p", "statement", exercise.statement));

  const list = el("div", "choices");
  exercise.choices.forEach((choice, index) => {
    const button = el("button", "choice", choice);
    button.dataset.index = String(index);
    button.addEventListener("click", () => {
      for (const b of list.querySelectorAll("button")) b.disabled = true;
      handlers.answer(exercise.id, index);
    });
    list.appendChild(button);
  });
  screen.appendChild(list);
  return screen;
}

/** Correctness feedback after an attempt; numbers straight from the server. */
export function feedbackScreen(result: AttemptResult, lang: Lang, onNext: () => void): HTMLElement {
  const screen = el("section", "screen screen-feedback");
  const verdict = result.correct ? t(lang, "answer.correct") : t(lang, "answer.incorrect");
  screen.appendChild(el("h1", result.correct ? "verdict correct" : "verdict incorrect", verdict));
  const delta = result.delta >= 0 ? `+${result.delta.toFixed(1)}` : result.delta.toFixed(1);
  screen.appendChild(el("p", "delta", `${result.learner_pre.toFixed(0)} → ${result.learner_post.toFixed(0)} (${delta})`));
  const button = el("button", "submit", t(lang, "answer.next"));
  button.addEventListener("click", () => {
    button.disabled = true;
    onNext();
  });
  screen.appendChild(button);
  return screen;
}

export function steerScreen(lang: Lang, onSteer: (step: number) => void): HTMLElement {
  const screen = el("section", "screen screen-steer");
  screen.appendChild(el("h1", "", t(lang, "steer.heading")));
  screen.appendChild(el("p", "", t(lang, "steer.prompt")));

  const row = el("div", "steer-row");
  row.appendChild(el("span", "endpoint easier", t(lang, "steer.easier")));
  const slider = el("input", "steer-slider");
  slider.type = "range";
  slider.min = "-10";
  slider.max = "10";
  slider.step = "1"; // 21 detents
  slider.value = "0";
  row.appendChild(slider);
  row.appendChild(el("span", "endpoint harder", t(lang, "steer.harder")));
  screen.appendChild(row);

  const readout = el("p", "steer-value", "0");
  slider.addEventListener("input", () => {
    readout.textContent = String(Number(slider.value));
  });
  screen.appendChild(readout);

  const button = el("button", "submit", t(lang, "steer.submit"));
  button.addEventListener("click", () => {
    button.disabled = true;
    onSteer(Number(slider.value));
  });
  screen.appendChild(button);
  return screen;
}

export function impactScreen(session: ClientSession, lang: Lang, onAck: () => void): HTMLElement {
  const screen = el("section", "screen screen-impact");
  screen.appendChild(el("h1", "", t(lang, "impact.heading")));
  screen.appendChild(el("p", "impact-explainer", t(lang, "impact.explainer")));

  // trailing run of the history: attempts of the latest series, then its steer
  const points = session.historyCache;
  let steerDelta = 0;
  let answersDelta = 0;
  let i = points.length - 1;
  if (i >= 0 && points[i]!.kind === "steer") {
    steerDelta = points[i]!.post - points[i]!.pre;
    i -= 1;
  }
  while (i >= 0 && points[i]!.kind === "attempt") {
    answersDelta += points[i]!.post - points[i]!.pre;
    i -= 1;
  }
  const fmt = (v: number) => (v >= 0 ? `+${v.toFixed(1)}` : v.toFixed(1));
  screen.appendChild(
    el("p", "impact-latest", t(lang, "impact.latest", { answers: fmt(answersDelta), steer: fmt(steerDelta) })),
  );

  screen.appendChild(el("p", "chart-caption", t(lang, "chart.caption")));
  screen.appendChild(
    masteryChart(points, session.rating ?? 0, session.level ?? "novice", { lang }),
  );

  const button = el("button", "submit", t(lang, "impact.continue"));
  button.addEventListener("click", () => {
    button.disabled = true;
    onAck();
  });
  screen.appendChild(button);
  return screen;
}

export const ITEM_IDS: readonly string[] = Array.from({ length: 31 }, (_, i) => `Q${i + 1}`);

export interface QuestionnaireDraft {
  answers: Record<string, number>;
  trust: string;
  remarks: string;
}

/** Items still blocking submission: unanswered ids plus "trust" when the
    mandatory free text is blank. */
export function questionnaireMissing(draft: QuestionnaireDraft): string[] {
  const missing = ITEM_IDS.filter((id) => !(id in draft.answers));
  if (!draft.trust.trim()) missing.push("trust");
  return missing;
}

export function questionnaireScreen(
  lang: Lang,
  onSubmit: (answers: Record<string, number>, freeText: Record<string, string>) => void,
): HTMLElement {
  const screen = el("section", "screen screen-questionnaire");
  screen.appendChild(el("h1", "", t(lang, "quest.heading")));
  screen.appendChild(el("p", "", t(lang, "quest.prompt")));

  const draft: QuestionnaireDraft = { answers: {}, trust: "", remarks: "" };
  const itemNodes = new Map<string, HTMLElement>();

  const submit = el("button", "submit", t(lang, "quest.submit"));
  const hint = el("p", "missing-hint", t(lang, "quest.missing"));

  const refresh = () => {
    const missing = questionnaireMissing(draft);
    submit.disabled = missing.length > 0;
    hint.hidden = missing.length === 0;
    for (const [id, node] of itemNodes) {
      node.classList.toggle("missing", missing.includes(id));
    }
  };

  const form = el("div", "items");
  for (const id of ITEM_IDS) {
    const item = el("fieldset", "item");
    item.dataset.item = id;
    item.appendChild(el("legend", "", `${id}. ${QUESTIONNAIRE_ITEMS[lang][id]}`));
    const scale = el("div", "likert");
    for (let value = 1; value <= 7; value++) {
      const label = el("label");
      const radio = el("input");
      radio.type = "radio";
      radio.name = id;
      radio.value = String(value);
      radio.title = LIKERT_LABELS[lang][value - 1] ?? String(value);
      radio.addEventListener("change", () => {
        draft.answers[id] = value;
        refresh();
      });
      label.append(radio, document.createTextNode(String(value)));
      scale.appendChild(label);
    }
    item.appendChild(scale);
    form.appendChild(item);
    itemNodes.set(id, item);
  }
  screen.appendChild(form);

  const trustField = el("fieldset", "item free-text");
  trustField.dataset.item = "trust";
  trustField.appendChild(el("legend", "", t(lang, "quest.trust.label")));
  const trust = el("textarea", "trust-text");
  trust.addEventListener("input", () => {
    draft.trust = trust.value;
    refresh();
  });
  trustField.appendChild(trust);
  screen.appendChild(trustField);
  itemNodes.set("trust", trustField);

  const remarksField = el("fieldset", "item free-text optional");
  remarksField.appendChild(el("legend", "", t(lang, "quest.remarks.label")));
  const remarks = el("textarea", "remarks-text");
  remarks.addEventListener("input", () => {
    draft.remarks = remarks.value;
  });
  remarksField.appendChild(remarks);
  screen.appendChild(remarksField);

  screen.append(hint, submit);
  submit.addEventListener("click", () => {
    if (questionnaireMissing(draft).length > 0) return;
    submit.disabled = true;
    const freeText: Record<string, string> = { trust: draft.trust.trim() };
    if (draft.remarks.trim()) freeText.remarks = draft.remarks.trim();
    onSubmit({ ...draft.answers }, freeText);
  });
  refresh();
  return screen;
}

export function freeUseScreen(lang: Lang, onMore: () => void): HTMLElement {
  const screen = el("section", "screen screen-free-use");
  screen.appendChild(el("h1", "", t(lang, "free.heading")));
  const button = el("button", "submit", t(lang, "free.continue"));
  button.addEventListener("click", onMore);
  screen.appendChild(button);
  return screen;
}
