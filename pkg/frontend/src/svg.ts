/** Turn a graph model plus layout into an SVG document (as a string, so the
 * renderer stays testable without a DOM). */

import { GraphEdge, GraphModel } from "./graph.js";
import { layoutGraph, LayoutOptions, Point } from "./layout.js";

const NODE_RADIUS = 26;

export function renderGraphSvg(model: GraphModel, options: LayoutOptions = {}): string {
  const width = options.width ?? 720;
  const height = options.height ?? 480;
  const positions = layoutGraph(model, { ...options, width, height });
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}"` +
    ` width="${width}" height="${height}" data-graph="doa">`);
  parts.push(
    "<defs>" +
    '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7"' +
    ' markerHeight="7" orient="auto-start-reverse">' +
    '<path d="M 0 0 L 10 5 L 0 10 z" fill="#4a7ab5"/></marker>' +
    '<marker id="arrow-start" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8"' +
    ' markerHeight="8" orient="auto-start-reverse">' +
    '<path d="M 0 0 L 10 5 L 0 10 z" fill="#9aa0a6"/></marker>' +
    "</defs>");

  const initial = positions.get(model.initial);
  if (initial) {
    const fromX = Math.max(initial.x - NODE_RADIUS - 52, 4);
    parts.push(
      `<line class="start-arrow" data-start-arrow="${escapeAttr(model.initial)}"` +
      ` x1="${fromX}" y1="${initial.y}" x2="${initial.x - NODE_RADIUS - 2}"` +
      ` y2="${initial.y}" stroke="gray" stroke-width="2" marker-end="url(#arrow-start)"/>`);
  }

  for (const edge of model.edges) {
    const line = renderEdge(edge, model.edges, positions);
    if (line) {
      parts.push(line);
    }
  }

  for (const node of model.nodes) {
    const at = positions.get(node.id);
    if (!at) {
      continue;
    }
    parts.push(renderNode(node.id, node.shape, at));
  }

  parts.push("</svg>");
  return parts.join("\n");
}

function renderNode(id: string, shape: string, at: Point): string {
  const pieces: string[] = [`<g class="node" data-node="${escapeAttr(id)}" data-shape="${shape}">`];
  if (shape === "diamond") {
    const r = NODE_RADIUS + 4;
    const points = [
      `${at.x},${at.y - r}`, `${at.x + r},${at.y}`,
      `${at.x},${at.y + r}`, `${at.x - r},${at.y}`,
    ].join(" ");
    pieces.push(`<polygon points="${points}" fill="#fff7e0" stroke="#b58a2a" stroke-width="1.5"/>`);
  } else {
    pieces.push(
      `<circle cx="${at.x}" cy="${at.y}" r="${NODE_RADIUS}"` +
      ' fill="#e8f0fb" stroke="#4a7ab5" stroke-width="1.5"/>');
    if (shape === "doublecircle") {
      pieces.push(
        `<circle cx="${at.x}" cy="${at.y}" r="${NODE_RADIUS - 5}"` +
        ' fill="none" stroke="#4a7ab5" stroke-width="1.5"/>');
    }
  }
  pieces.push(
    `<text x="${at.x}" y="${at.y + 4}" text-anchor="middle" class="node-label">` +
    `${escapeText(id)}</text>`);
  pieces.push("</g>");
  return pieces.join("");
}

function renderEdge(edge: GraphEdge, all: GraphEdge[],
                    positions: Map<string, Point>): string | null {
  const from = positions.get(edge.source);
  const to = positions.get(edge.target);
  if (!from || !to) {
    return null;
  }
  const attrs =
    `class="edge" data-edge-label="${escapeAttr(edge.label)}" data-kind="${edge.kind}"` +
    ` data-source="${escapeAttr(edge.source)}" data-target="${escapeAttr(edge.target)}"`;
  const title = `<title>${escapeText(edge.title)}</title>`;

  if (edge.source === edge.target) {
    const path =
      `M ${from.x - 10} ${from.y - NODE_RADIUS + 4} ` +
      `C ${from.x - 34} ${from.y - NODE_RADIUS - 44}, ` +
      `${from.x + 34} ${from.y - NODE_RADIUS - 44}, ` +
      `${from.x + 10} ${from.y - NODE_RADIUS + 4}`;
    return `<g ${attrs}>${title}` +
      `<path d="${path}" fill="none" stroke="#4a7ab5" stroke-width="1.5" marker-end="url(#arrow)"/>` +
      `<text x="${from.x}" y="${from.y - NODE_RADIUS - 48}" text-anchor="middle"` +
      ` class="edge-label">${escapeText(edge.label)}</text></g>`;
  }

  // parallel edges between the same pair bend apart
  const siblings = all.filter(
    (e) => (e.source === edge.source && e.target === edge.target) ||
           (e.source === edge.target && e.target === edge.source));
  const rank = siblings.indexOf(edge);
  const bend = siblings.length > 1 ? (rank - (siblings.length - 1) / 2) * 36 : 0;

  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const distance = Math.max(Math.hypot(dx, dy), 0.01);
  const unitX = dx / distance;
  const unitY = dy / distance;
  const startX = from.x + unitX * NODE_RADIUS;
  const startY = from.y + unitY * NODE_RADIUS;
  const endX = to.x - unitX * (NODE_RADIUS + 3);
  const endY = to.y - unitY * (NODE_RADIUS + 3);
  const midX = (startX + endX) / 2 - unitY * bend;
  const midY = (startY + endY) / 2 + unitX * bend;
  const path = `M ${startX} ${startY} Q ${midX} ${midY} ${endX} ${endY}`;
  const labelX = (startX + endX) / 2 - unitY * (bend * 0.75 + 10);
  const labelY = (startY + endY) / 2 + unitX * (bend * 0.75 + 10) - 4;
  return `<g ${attrs}>${title}` +
    `<path d="${path}" fill="none" stroke="#4a7ab5" stroke-width="1.5" marker-end="url(#arrow)"/>` +
    `<text x="${labelX}" y="${labelY}" text-anchor="middle" class="edge-label">` +
    `${escapeText(edge.label)}</text></g>`;
}

function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function escapeAttr(text: string): string {
  return escapeText(text).replace(/"/g, "&quot;");
}
