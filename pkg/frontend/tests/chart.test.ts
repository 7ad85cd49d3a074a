// @vitest-environment jsdom
import { describe, expect, it } from "vitest";
import type { HistoryPoint } from "../src/api";
import { BAND_EDGES, masteryChart } from "../src/chart";

function point(kind: string, pre: number, post: number): HistoryPoint {
  return { kind, pre, post, level: "competent", detail: "", ts: "2026-08-17T00:00:00+00:00" };
}

const FOUR_POINTS: HistoryPoint[] = [
  point("init", 1500, 1500),
  point("attempt", 1500, 1538.4),
  point("attempt", 1538.4, 1428.1),
  point("steer", 1428.1, 1456.7),
];

describe("masteryChart", () => {
  it("draws exactly one point per history event", () => {
    const svg = masteryChart(FOUR_POINTS, 1456.7, "competent");
    expect(svg.querySelectorAll("circle.pt")).toHaveLength(4);
  });

  it("labels the last point with the server rating and level", () => {
    const svg = masteryChart(FOUR_POINTS, 1456.7, "competent");
    const label = svg.querySelector("text.current-level");
    expect(label?.textContent).toBe("1457 (competent)");
    const dots = svg.querySelectorAll("circle.pt");
    expect(dots[dots.length - 1]?.getAttribute("data-value")).toBe("1456.7");
  });

  it("shows the five mastery bands as horizontal guides", () => {
    const svg = masteryChart(FOUR_POINTS, 1456.7, "competent");
    const bands = [...svg.querySelectorAll("line.band")];
    expect(bands).toHaveLength(5);
    expect(bands.map((b) => b.getAttribute("data-at"))).toEqual(
      BAND_EDGES.map((b) => String(b.at)),
    );
    // guides are ordered top of chart = higher rating
    const ys = bands.map((b) => Number(b.getAttribute("y1")));
    for (let i = 1; i < ys.length; i++) expect(ys[i]!).toBeLessThan(ys[i - 1]!);
  });

  it("dashes segments that end in a steering event", () => {
    const svg = masteryChart(FOUR_POINTS, 1456.7, "competent");
    const segments = [...svg.querySelectorAll("line.seg")];
    expect(segments).toHaveLength(3);
    expect(segments.filter((s) => s.classList.contains("seg-steer"))).toHaveLength(1);
    expect(segments.filter((s) => s.classList.contains("seg-attempt"))).toHaveLength(2);
  });

  it("renders attempt-only histories without steer styling", () => {
    const svg = masteryChart(FOUR_POINTS.slice(0, 3), 1428.1, "competent");
    expect(svg.querySelectorAll(".seg-steer")).toHaveLength(0);
  });

  it("handles a single point without segments", () => {
    const svg = masteryChart([point("init", 1500, 1500)], 1500, "competent");
    expect(svg.querySelectorAll("circle.pt")).toHaveLength(1);
    expect(svg.querySelectorAll("line.seg")).toHaveLength(0);
  });

  it("translates band labels for dutch sessions", () => {
    const svg = masteryChart(FOUR_POINTS, 1456.7, "competent", { lang: "nl" });
    const labels = [...svg.querySelectorAll("text.band-label")].map((t) => t.textContent);
    expect(labels).toContain("bekwaam");
    expect(labels).toContain("gevorderde beginner");
  });
});
