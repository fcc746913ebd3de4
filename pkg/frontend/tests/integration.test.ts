/** Round trip against the real conversion service.
 *
 * Spawns the Python service from the repository root; skips (with a notice)
 * when that is not possible, e.g. in a frontend-only checkout.
 */

import { spawn, ChildProcess } from "node:child_process";
import { existsSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { buildGraph, tryParseDoaDocument } from "../src/graph.js";
import { EditorSession } from "../src/session.js";
import { behaviorallyEquivalent } from "./equiv.js";
import { DRONE_PROTOCOL } from "./fixtures.js";

const PORT = 8931;
const BASE = process.env.SERVICE_URL ?? `http://127.0.0.1:${PORT}`;
const repoRoot = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

let server: ChildProcess | null = null;
let available = false;

async function healthy(): Promise<boolean> {
  try {
    const response = await fetch(`${BASE}/healthz`);
    return response.ok;
  } catch {
    return false;
  }
}

beforeAll(async () => {
  if (await healthy()) {
    available = true;
    return;
  }
  if (!existsSync(join(repoRoot, "src", "typestate_doa"))) {
    return;
  }
  server = spawn(
    "python3",
    ["-m", "uvicorn", "typestate_doa.service:app", "--port", String(PORT),
     "--log-level", "warning"],
    {
      cwd: repoRoot,
      env: { ...process.env, PYTHONPATH: join(repoRoot, "src") },
      stdio: "ignore",
    });
  for (let attempt = 0; attempt < 50; attempt++) {
    await new Promise((resolve) => setTimeout(resolve, 200));
    if (await healthy()) {
      available = true;
      return;
    }
  }
}, 20_000);

afterAll(() => {
  server?.kill();
});

describe("editor round trip through the live service", () => {
  it("compile, decompile, recompile preserves the behavior", async (context) => {
    if (!available) {
      context.skip();
      return;
    }
    const client = new ServiceClient(BASE);
    const session = new EditorSession(client);

    // typestate -> automaton
    session.setText(DRONE_PROTOCOL);
    await session.convert();
    expect(session.canExport).toBe(true);
    const graph = session.graph()!;
    const circleish = graph.nodes.filter(
      (n) => n.shape === "circle" || n.shape === "doublecircle");
    expect(circleish).toHaveLength(4);
    expect(graph.nodes.filter((n) => n.shape === "diamond")).toHaveLength(1);
    expect(graph.edges).toHaveLength(8);
    expect(graph.initial).toBe("Idle");
    const compiled = session.doaDocument!;

    // switch panes to the document and decompile it
    session.adoptResult();
    expect(session.mode).toBe("doa-json");
    await session.convert();
    expect(session.resultKind).toBe("protocol");
    const regenerated = session.resultText!;
    expect(regenerated).toContain("typestate Protocol {");

    // the regenerated protocol compiles to an equivalent automaton
    const again = await client.post("/api/compile", {
      kind: "typestate",
      payload: regenerated,
    });
    expect(again.status).toBe(200);
    expect(again.body!.ok).toBe(true);
    const recompiled = tryParseDoaDocument(again.body!.result!)!;
    expect(behaviorallyEquivalent(compiled, recompiled)).toBe(true);
  }, 20_000);

  it("diagnostics flow through for broken protocols", async (context) => {
    if (!available) {
      context.skip();
      return;
    }
    const session = new EditorSession(new ServiceClient(BASE));
    session.setText("typestate x { a = { void m(): ghost } }");
    await session.convert();
    expect(session.canExport).toBe(false);
    expect(session.diagnostics.map((d) => d.code)).toContain("E_UNDEFINED_STATE");
  }, 20_000);

  it("drone graph matches the unit fixture through the wire", async (context) => {
    if (!available) {
      context.skip();
      return;
    }
    const client = new ServiceClient(BASE);
    const compiled = await client.post("/api/compile", {
      kind: "typestate",
      payload: DRONE_PROTOCOL,
    });
    const doc = tryParseDoaDocument(compiled.body!.result!)!;
    const graph = buildGraph(doc);
    expect(graph.edges.filter((e) => e.kind === "method")).toHaveLength(6);
    expect(graph.edges.filter((e) => e.kind === "result")).toHaveLength(2);
  }, 20_000);
});
