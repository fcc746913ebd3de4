/** Force-directed layout with a fixed seed, so the same automaton always
 * lands in the same picture. */

import { GraphModel } from "./graph.js";

export interface Point {
  x: number;
  y: number;
}

/** Small deterministic PRNG (mulberry32). */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  seed?: number;
  iterations?: number;
}

/**
 * Fruchterman-Reingold style simulation: nodes repel, edges attract, the
 * initial state is pulled toward the left edge. Deterministic for a given
 * (model, options) pair.
 */
export function layoutGraph(model: GraphModel, options: LayoutOptions = {}): Map<string, Point> {
  const width = options.width ?? 720;
  const height = options.height ?? 480;
  const seed = options.seed ?? 42;
  const iterations = options.iterations ?? 250;

  const ids = model.nodes.map((n) => n.id);
  const positions = new Map<string, Point>();
  if (ids.length === 0) {
    return positions;
  }
  const random = mulberry32(seed);
  ids.forEach((id, index) => {
    const angle = (2 * Math.PI * index) / ids.length;
    positions.set(id, {
      x: width / 2 + (width / 4) * Math.cos(angle) + (random() - 0.5) * 40,
      y: height / 2 + (height / 4) * Math.sin(angle) + (random() - 0.5) * 40,
    });
  });

  const area = width * height;
  const k = Math.sqrt(area / ids.length) * 0.6;
  const margin = 48;

  for (let step = 0; step < iterations; step++) {
    const temperature = (1 - step / iterations) * (width / 10) + 1;
    const force = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = positions.get(ids[i])!;
        const b = positions.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let distance = Math.hypot(dx, dy);
        if (distance < 0.01) {
          // deterministic tie-break for coincident nodes
          dx = 0.01 * (i - j);
          dy = 0.01;
          distance = Math.hypot(dx, dy);
        }
        const repulsion = (k * k) / distance;
        force.get(ids[i])!.x += (dx / distance) * repulsion;
        force.get(ids[i])!.y += (dy / distance) * repulsion;
        force.get(ids[j])!.x -= (dx / distance) * repulsion;
        force.get(ids[j])!.y -= (dy / distance) * repulsion;
      }
    }

    for (const edge of model.edges) {
      if (edge.source === edge.target) {
        continue;
      }
      const a = positions.get(edge.source);
      const b = positions.get(edge.target);
      if (!a || !b) {
        continue;
      }
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const distance = Math.max(Math.hypot(dx, dy), 0.01);
      const attraction = (distance * distance) / k;
      force.get(edge.source)!.x -= (dx / distance) * attraction;
      force.get(edge.source)!.y -= (dy / distance) * attraction;
      force.get(edge.target)!.x += (dx / distance) * attraction;
      force.get(edge.target)!.y += (dy / distance) * attraction;
    }

    // nudge the entry state leftward so protocols read left to right
    const entry = force.get(model.initial);
    if (entry) {
      entry.x -= k * 0.8;
    }

    for (const id of ids) {
      const position = positions.get(id)!;
      const push = force.get(id)!;
      const magnitude = Math.max(Math.hypot(push.x, push.y), 0.01);
      const limited = Math.min(magnitude, temperature);
      position.x += (push.x / magnitude) * limited;
      position.y += (push.y / magnitude) * limited;
      position.x = Math.min(width - margin, Math.max(margin, position.x));
      position.y = Math.min(height - margin, Math.max(margin, position.y));
    }
  }

  for (const point of positions.values()) {
    point.x = Math.round(point.x * 100) / 100;
    point.y = Math.round(point.y * 100) / 100;
  }
  return positions;
}
