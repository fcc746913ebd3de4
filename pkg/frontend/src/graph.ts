/** Renderable graph model, derived from an automaton document and nothing else. */

import {
  DoaDocument,
  methodText,
} from "./types.js";

export type NodeShape = "circle" | "doublecircle" | "diamond";

export interface GraphNode {
  id: string;
  shape: NodeShape;
  initial: boolean;
}

export interface GraphEdge {
  source: string;
  target: string;
  /** Short text drawn on the edge (method name or result label). */
  label: string;
  /** Full signature, shown as a tooltip. */
  title: string;
  kind: "method" | "result";
}

export interface GraphModel {
  nodes: GraphNode[];
  edges: GraphEdge[];
  /** Target of the gray entry arrow. */
  initial: string;
}

/**
 * Build the graph for a document. The reserved `end` state is part of the
 * picture whenever the automaton mentions it, declared or not.
 */
export function buildGraph(doc: DoaDocument): GraphModel {
  const declared = new Map<string, GraphNode>();
  let initial = "";
  for (const state of doc.states) {
    const shape: NodeShape =
      state.kind === "internal" ? "diamond"
        : state.final ? "doublecircle"
          : "circle";
    declared.set(state.name, { id: state.name, shape, initial: state.initial });
    if (state.initial) {
      initial = state.name;
    }
  }

  const edges: GraphEdge[] = [];
  for (const t of doc.methodTransitions) {
    const method = doc.methods[t.method];
    edges.push({
      source: t.from,
      target: t.to,
      label: method ? method.name : `#${t.method}`,
      title: method ? methodText(method) : `#${t.method}`,
      kind: "method",
    });
  }
  for (const t of doc.resultTransitions) {
    edges.push({
      source: t.from,
      target: t.to,
      label: t.label,
      title: t.label,
      kind: "result",
    });
  }

  const mentionsEnd =
    initial === "end" ||
    edges.some((e) => e.target === "end") ||
    doc.states.some((s) => s.name === "end");
  if (mentionsEnd && !declared.has("end")) {
    declared.set("end", { id: "end", shape: "doublecircle", initial: false });
  }

  return { nodes: [...declared.values()], edges, initial };
}

/** Parse editor text as an automaton document; null when it is not one. */
export function tryParseDoaDocument(text: string): DoaDocument | null {
  let value: unknown;
  try {
    value = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof value !== "object" || value === null) {
    return null;
  }
  const doc = value as Partial<DoaDocument>;
  if (!Array.isArray(doc.states) || !Array.isArray(doc.methods) ||
      !Array.isArray(doc.methodTransitions) || !Array.isArray(doc.resultTransitions)) {
    return null;
  }
  return doc as DoaDocument;
}
