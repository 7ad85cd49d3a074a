import type { Group, HistoryPoint, LearnerSummary, SeriesPayload } from "./api";

export type Phase =
  | "REGISTERED"
  | "MASTERY_SET"
  | "EXPLAINED"
  | "PRACTISING"
  | "AWAIT_STEER"
  | "AWAIT_IMPACT_ACK"
  | "QUESTIONNAIRE"
  | "FREE_USE";

export interface FlowState {
  phase: Phase;
  series: number | null;
  item: number | null;
}

const STATE_RE = /^([A-Z_]+)(?:\((\d+)(?:,(\d+))?\))?$/;

/** Parse the server's state string, e.g. "PRACTISING(2,1)" or "FREE_USE". */
export function parseState(text: string): FlowState {
  const match = STATE_RE.exec(text);
  if (!match) throw new Error(`unparseable state: ${JSON.stringify(text)}`);
  const [, phase, series, item] = match;
  const known: readonly Phase[] = [
    "REGISTERED",
    "MASTERY_SET",
    "EXPLAINED",
    "PRACTISING",
    "AWAIT_STEER",
    "AWAIT_IMPACT_ACK",
    "QUESTIONNAIRE",
    "FREE_USE",
  ];
  if (!known.includes(phase as Phase)) throw new Error(`unknown phase: ${phase}`);
  return {
    phase: phase as Phase,
    series: series === undefined ? null : Number(series),
    item: item === undefined ? null : Number(item),
  };
}

export type Screen =
  | "mastery"
  | "explanation"
  | "series"
  | "steer"
  | "impact"
  | "questionnaire"
  | "free-use";

/** Map a server state to the screen the client may show.

    The state string is authoritative: the server only ever reports steer or
    impact states to groups that are allowed them. A mismatch here means the
    client is desynchronized, so it is an error rather than a fallback. */
export function screenFor(state: FlowState, group: Group): Screen {
  switch (state.phase) {
    case "REGISTERED":
      return "mastery";
    case "MASTERY_SET":
      return "explanation";
    case "EXPLAINED":
    case "PRACTISING":
      return "series";
    case "AWAIT_STEER":
      if (group === "none") throw new Error("steer state reported for a none-group session");
      return "steer";
    case "AWAIT_IMPACT_ACK":
      if (group !== "control+impact") {
        throw new Error(`impact state reported for group ${group}`);
      }
      return "impact";
    case "QUESTIONNAIRE":
      return "questionnaire";
    case "FREE_USE":
      return "free-use";
  }
}

/** Screens a group can ever meet; used to keep affordances hidden up front. */
export function reachableScreens(group: Group): readonly Screen[] {
  const base: Screen[] = ["mastery", "explanation", "series", "questionnaire", "free-use"];
  if (group === "none") return base;
  if (group === "control") return [...base, "steer"];
  return [...base, "steer", "impact"];
}

/** Client-side mirror of one learner's flow. Holds only what the server
    said; every mutation happens by storing a fresh server payload. */
export class ClientSession {
  readonly id: string;
  readonly group: Group;
  state: FlowState;
  rating: number | null;
  level: string | null;
  explanationScreens: string[];
  series: SeriesPayload | null = null;
  historyCache: HistoryPoint[] = [];

  constructor(summary: LearnerSummary) {
    this.id = summary.learner_id;
    this.group = summary.group;
    this.state = parseState(summary.state);
    this.rating = summary.rating;
    this.level = summary.level;
    this.explanationScreens = [...summary.screens];
  }

  screen(): Screen {
    return screenFor(this.state, this.group);
  }

  applySummary(summary: LearnerSummary): void {
    this.state = parseState(summary.state);
    this.rating = summary.rating;
    this.level = summary.level;
  }

  applyState(stateText: string): void {
    this.state = parseState(stateText);
  }
}
