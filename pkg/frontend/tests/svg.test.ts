import { describe, expect, it } from "vitest";

import { buildGraph } from "../src/graph.js";
import { renderGraphSvg } from "../src/svg.js";
import { DRONE_DOA } from "./fixtures.js";

function count(haystack: string, needle: RegExp): number {
  return (haystack.match(needle) ?? []).length;
}

describe("renderGraphSvg", () => {
  it("draws the drone automaton per the visual conventions", () => {
    const svg = renderGraphSvg(buildGraph(DRONE_DOA));
    // 4 circle-shaped states (one of them the final, drawn doubled) + 1 diamond
    expect(count(svg, /data-shape="circle"/g)).toBe(3);
    expect(count(svg, /data-shape="doublecircle"/g)).toBe(1);
    expect(count(svg, /data-shape="diamond"/g)).toBe(1);
    expect(count(svg, /data-shape="(?:circle|doublecircle)"/g)).toBe(4);
    // 8 labeled transition edges: 6 method + 2 result
    expect(count(svg, /data-kind="method"/g)).toBe(6);
    expect(count(svg, /data-kind="result"/g)).toBe(2);
    expect(count(svg, /class="edge"/g)).toBe(8);
    // gray arrow into the initial state
    expect(svg).toContain('data-start-arrow="Idle"');
    expect(count(svg, /stroke="gray"/g)).toBe(1);
  });

  it("is deterministic", () => {
    const model = buildGraph(DRONE_DOA);
    expect(renderGraphSvg(model)).toBe(renderGraphSvg(model));
  });

  it("carries full signatures as tooltips", () => {
    const svg = renderGraphSvg(buildGraph(DRONE_DOA));
    expect(svg).toContain("<title>void moveTo(double, double)</title>");
    expect(svg).toContain("<title>Boolean hasArrived()</title>");
  });

  it("escapes markup-significant characters", () => {
    const svg = renderGraphSvg(buildGraph({
      ...DRONE_DOA,
      methods: DRONE_DOA.methods.map((m) =>
        m.name === "moveTo" ? { ...m, params: ["List<double>"] } : m),
    }));
    expect(svg).toContain("List&lt;double&gt;");
    expect(svg).not.toContain("List<double>");
  });

  it("renders self loops as visible arcs", () => {
    const svg = renderGraphSvg(buildGraph(DRONE_DOA));
    const selfLoop = svg.split("\n").find(
      (line) => line.includes('data-source="Flying"') && line.includes('data-target="Flying"'));
    expect(selfLoop).toBeDefined();
    expect(selfLoop).toContain("C ");
  });
});
