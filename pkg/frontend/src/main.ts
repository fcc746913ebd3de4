/** DOM wiring for the editor page. */

import { ServiceClient } from "./api.js";
import { copyToClipboard, exportSvgAsPng } from "./export.js";
import { renderGraphSvg } from "./svg.js";
import { EditorSession } from "./session.js";
import { DiagnosticDoc, InputMode } from "./types.js";

const GRAPH_WIDTH = 720;
const GRAPH_HEIGHT = 480;

const SAMPLE_PROTOCOL = `typestate DroneProtocol {
    Idle = { void takeOff(): Hovering }
    Hovering = { void land(): Idle,
                 void moveTo(double, double): Flying }
    Flying = { void moveTo(double, double): Flying,
               void stop(): Hovering,
               Boolean hasArrived(): <True: Hovering, False: Flying> }
}
`;

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function describeLocation(diagnostic: DiagnosticDoc): string {
  const location = diagnostic.location;
  if (location && typeof location === "object") {
    return `${location.line}:${location.column}`;
  }
  if (typeof location === "string" && location) {
    return location;
  }
  return "";
}

function main(): void {
  const input = element<HTMLTextAreaElement>("input");
  const modeSelect = element<HTMLSelectElement>("mode");
  const convertButton = element<HTMLButtonElement>("convert");
  const adoptButton = element<HTMLButtonElement>("adopt");
  const exportButton = element<HTMLButtonElement>("export-png");
  const copyButton = element<HTMLButtonElement>("copy-json");
  const staleBadge = element<HTMLSpanElement>("stale");
  const banner = element<HTMLDivElement>("banner");
  const diagnosticsList = element<HTMLUListElement>("diagnostics");
  const graphPane = element<HTMLDivElement>("graph");
  const rawPane = element<HTMLPreElement>("raw");

  const client = new ServiceClient("");
  const session = new EditorSession(client, refresh);

  function refresh(): void {
    convertButton.disabled = !session.canConvert || session.busy;
    exportButton.disabled = !session.canExport;
    copyButton.disabled = !session.canExport;
    adoptButton.disabled = session.resultKind === null;
    adoptButton.textContent =
      session.resultKind === "protocol" ? "Edit as typestate" : "Edit as doa-json";
    staleBadge.hidden = !session.stale;
    convertButton.textContent = session.busy ? "Working…" : "Do";

    banner.hidden = session.networkError === null;
    banner.textContent = session.networkError ?? "";

    diagnosticsList.replaceChildren(
      ...session.diagnostics.map((diagnostic) => {
        const item = document.createElement("li");
        item.className = `diagnostic ${diagnostic.severity}`;
        const where = describeLocation(diagnostic);
        item.textContent =
          `${diagnostic.severity}[${diagnostic.code}]` +
          (where ? ` at ${where}` : "") + `: ${diagnostic.message}`;
        const location = diagnostic.location;
        if (location && typeof location === "object") {
          item.classList.add("jumpable");
          item.addEventListener("click", () => {
            input.focus();
            input.setSelectionRange(location.offset, location.offset + 1);
          });
        }
        return item;
      }));

    const model = session.graph();
    if (model) {
      graphPane.innerHTML = renderGraphSvg(model, {
        width: GRAPH_WIDTH, height: GRAPH_HEIGHT,
      });
    } else {
      graphPane.innerHTML = '<p class="placeholder">No automaton rendered yet.</p>';
    }
    rawPane.textContent = session.resultText ?? "";
  }

  input.addEventListener("input", () => session.setText(input.value));
  modeSelect.addEventListener("change", () => {
    session.setMode(modeSelect.value as InputMode);
  });
  convertButton.addEventListener("click", () => {
    void session.convert();
  });
  adoptButton.addEventListener("click", () => {
    session.adoptResult();
    input.value = session.text;
    modeSelect.value = session.mode;
  });
  exportButton.addEventListener("click", () => {
    const model = session.graph();
    if (!model) {
      return;
    }
    const svg = renderGraphSvg(model, { width: GRAPH_WIDTH, height: GRAPH_HEIGHT });
    void exportSvgAsPng(svg, GRAPH_WIDTH, GRAPH_HEIGHT, "automaton.png");
  });
  copyButton.addEventListener("click", () => {
    if (session.doaText !== null) {
      void copyToClipboard(session.doaText);
    }
  });

  input.value = SAMPLE_PROTOCOL;
  session.setText(SAMPLE_PROTOCOL);
  refresh();
}

document.addEventListener("DOMContentLoaded", main);
