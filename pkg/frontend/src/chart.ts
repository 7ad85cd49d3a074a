import type { HistoryPoint } from "./api";
import { LEVEL_NAMES, type Lang } from "./i18n";

const SVG_NS = "http://www.w3.org/2000/svg";

/** The five mastery thresholds, used as horizontal guide lines. Display
    geometry only; every plotted value comes from the server. */
export const BAND_EDGES: readonly { at: number; label: string }[] = [
  { at: 1000, label: "novice" },
  { at: 1250, label: "advanced beginner" },
  { at: 1500, label: "competent" },
  { at: 1750, label: "proficient" },
  { at: 2000, label: "expert" },
];

export interface ChartOptions {
  width: number;
  height: number;
  lang: Lang;
}

const DEFAULTS: ChartOptions = { width: 560, height: 260, lang: "en" };

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

/** Render the mastery timeline as an SVG line chart.

    One circle per history point; segments ending in a steering event are
    dashed so self-steering stands apart from answer-driven movement. The
    last point is annotated with the server-reported level. */
export function masteryChart(
  points: readonly HistoryPoint[],
  rating: number,
  level: string,
  options?: Partial<ChartOptions>,
): SVGSVGElement {
  const opts = { ...DEFAULTS, ...options };
  const pad = { left: 56, right: 116, top: 16, bottom: 20 };
  const innerW = opts.width - pad.left - pad.right;
  const innerH = opts.height - pad.top - pad.bottom;

  const values = points.map((p) => p.post);
  const lo = Math.min(1000, ...values) - 60;
  const hi = Math.max(2000, ...values) + 60;

  const x = (i: number): number =>
    pad.left + (points.length <= 1 ? innerW / 2 : (i / (points.length - 1)) * innerW);
  const y = (v: number): number => pad.top + innerH - ((v - lo) / (hi - lo)) * innerH;

  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${opts.width} ${opts.height}`);
  svg.setAttribute("class", "mastery-chart");
  svg.setAttribute("role", "img");

  for (const band of BAND_EDGES) {
    const guide = svgEl("line");
    guide.setAttribute("class", "band");
    guide.setAttribute("data-at", String(band.at));
    guide.setAttribute("x1", String(pad.left));
    guide.setAttribute("x2", String(pad.left + innerW));
    guide.setAttribute("y1", String(y(band.at)));
    guide.setAttribute("y2", String(y(band.at)));
    svg.appendChild(guide);

    const tag = svgEl("text");
    tag.setAttribute("class", "band-label");
    tag.setAttribute("x", String(pad.left + innerW + 6));
    tag.setAttribute("y", String(y(band.at) + 3));
    tag.textContent = LEVEL_NAMES[opts.lang][band.label] ?? band.label;
    svg.appendChild(tag);
  }

  for (let i = 1; i < points.length; i++) {
    const seg = svgEl("line");
    const kind = points[i]!.kind === "steer" ? "seg-steer" : "seg-attempt";
    seg.setAttribute("class", `seg ${kind}`);
    seg.setAttribute("x1", String(x(i - 1)));
    seg.setAttribute("y1", String(y(points[i - 1]!.post)));
    seg.setAttribute("x2", String(x(i)));
    seg.setAttribute("y2", String(y(points[i]!.post)));
    svg.appendChild(seg);
  }

  points.forEach((p, i) => {
    const dot = svgEl("circle");
    dot.setAttribute("class", "pt");
    dot.setAttribute("data-kind", p.kind);
    dot.setAttribute("data-value", String(p.post));
    dot.setAttribute("cx", String(x(i)));
    dot.setAttribute("cy", String(y(p.post)));
    dot.setAttribute("r", "3.5");
    svg.appendChild(dot);
  });

  if (points.length > 0) {
    const label = svgEl("text");
    label.setAttribute("class", "current-level");
    label.setAttribute("x", String(x(points.length - 1)));
    label.setAttribute("y", String(y(rating) - 10));
    label.setAttribute("text-anchor", "end");
    label.textContent = `${Math.round(rating)} (${LEVEL_NAMES[opts.lang][level] ?? level})`;
    svg.appendChild(label);
  }

  return svg;
}
