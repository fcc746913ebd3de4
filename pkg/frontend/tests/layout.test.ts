import { describe, expect, it } from "vitest";

import { buildGraph } from "../src/graph.js";
import { layoutGraph, mulberry32 } from "../src/layout.js";
import { DRONE_DOA } from "./fixtures.js";

describe("mulberry32", () => {
  it("is deterministic per seed", () => {
    const a = mulberry32(7);
    const b = mulberry32(7);
    const c = mulberry32(8);
    const first = [a(), a(), a()];
    expect([b(), b(), b()]).toEqual(first);
    expect([c(), c(), c()]).not.toEqual(first);
    for (const value of first) {
      expect(value).toBeGreaterThanOrEqual(0);
      expect(value).toBeLessThan(1);
    }
  });
});

describe("layoutGraph", () => {
  it("same seed, same picture", () => {
    const model = buildGraph(DRONE_DOA);
    const first = layoutGraph(model, { seed: 42 });
    const second = layoutGraph(model, { seed: 42 });
    expect(Object.fromEntries(second)).toEqual(Object.fromEntries(first));
  });

  it("a different seed moves things", () => {
    const model = buildGraph(DRONE_DOA);
    const first = layoutGraph(model, { seed: 42 });
    const second = layoutGraph(model, { seed: 1337 });
    const moved = [...first.keys()].some((id) => {
      const a = first.get(id)!;
      const b = second.get(id)!;
      return Math.hypot(a.x - b.x, a.y - b.y) > 1;
    });
    expect(moved).toBe(true);
  });

  it("keeps every node inside the viewport", () => {
    const model = buildGraph(DRONE_DOA);
    const positions = layoutGraph(model, { width: 720, height: 480 });
    expect(positions.size).toBe(model.nodes.length);
    for (const point of positions.values()) {
      expect(point.x).toBeGreaterThanOrEqual(0);
      expect(point.x).toBeLessThanOrEqual(720);
      expect(point.y).toBeGreaterThanOrEqual(0);
      expect(point.y).toBeLessThanOrEqual(480);
    }
  });

  it("spreads distinct nodes apart", () => {
    const model = buildGraph(DRONE_DOA);
    const positions = layoutGraph(model);
    const points = [...positions.values()];
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        const gap = Math.hypot(points[i].x - points[j].x, points[i].y - points[j].y);
        expect(gap).toBeGreaterThan(30);
      }
    }
  });
});
