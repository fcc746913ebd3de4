/** Editor session state: what is in the left pane, what the last conversion
 * produced, and whether the two are in sync. No DOM access here. */

import { ApiResult, ConvertRequestBody, Endpoint, kindForMode } from "./api.js";
import { buildGraph, GraphModel, tryParseDoaDocument } from "./graph.js";
import { ConvertResponse, DiagnosticDoc, DoaDocument, InputMode } from "./types.js";

export interface ConversionPort {
  post(endpoint: Endpoint, body: ConvertRequestBody,
       signal?: AbortSignal): Promise<ApiResult>;
}

export type ResultKind = "doa-json" | "protocol" | null;

export class EditorSession {
  mode: InputMode = "typestate";
  text = "";
  protocolName = "Protocol";

  /** Document behind the rendered graph; null when nothing is rendered. */
  doaDocument: DoaDocument | null = null;
  /** Raw text of the automaton document (what copy-to-clipboard sends). */
  doaText: string | null = null;
  resultText: string | null = null;
  resultKind: ResultKind = null;
  diagnostics: DiagnosticDoc[] = [];
  networkError: string | null = null;
  busy = false;

  private lastConvertedText: string | null = null;
  private lastConvertedMode: InputMode | null = null;
  private inFlight: AbortController | null = null;
  private generation = 0;

  constructor(private readonly client: ConversionPort,
              private readonly onChange: () => void = () => {}) {}

  get canConvert(): boolean {
    return this.text.trim().length > 0;
  }

  get canExport(): boolean {
    return this.doaDocument !== null;
  }

  /** True when the left pane changed after the last conversion. */
  get stale(): boolean {
    if (this.lastConvertedText === null) {
      return false;
    }
    return this.text !== this.lastConvertedText || this.mode !== this.lastConvertedMode;
  }

  setText(text: string): void {
    this.text = text;
    this.onChange();
  }

  setMode(mode: InputMode): void {
    this.mode = mode;
    this.onChange();
  }

  /** Load the last conversion result into the left pane (the design loop). */
  adoptResult(): void {
    if (this.resultKind === "doa-json" && this.doaText !== null) {
      this.mode = "doa-json";
      this.text = this.doaText;
    } else if (this.resultKind === "protocol" && this.resultText !== null) {
      this.mode = "typestate";
      this.text = this.resultText;
    }
    this.onChange();
  }

  /** Convert the left pane; a newer call supersedes an unfinished one. */
  async convert(): Promise<void> {
    if (!this.canConvert) {
      return;
    }
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    const ticket = ++this.generation;
    const snapshotText = this.text;
    const snapshotMode = this.mode;
    this.busy = true;
    this.networkError = null;
    this.onChange();

    const endpoint: Endpoint =
      snapshotMode === "doa-json" ? "/api/decompile" : "/api/compile";
    const body: ConvertRequestBody = {
      kind: kindForMode(snapshotMode),
      payload: snapshotText,
    };
    if (snapshotMode === "doa-json") {
      body.options = { name: this.protocolName };
    }

    let outcome: ApiResult;
    try {
      outcome = await this.client.post(endpoint, body, controller.signal);
    } catch (failure) {
      if (ticket !== this.generation) {
        return; // superseded; a newer conversion owns the panes
      }
      this.busy = false;
      this.networkError = failure instanceof Error ? failure.message : String(failure);
      this.onChange();
      return;
    }
    if (ticket !== this.generation) {
      return;
    }
    this.busy = false;
    this.lastConvertedText = snapshotText;
    this.lastConvertedMode = snapshotMode;
    this.applyOutcome(snapshotMode, snapshotText, outcome);
    this.onChange();
  }

  private applyOutcome(mode: InputMode, inputText: string, outcome: ApiResult): void {
    const response: ConvertResponse | null = outcome.body;
    if (outcome.status !== 200 || response === null) {
      this.clearResult();
      this.diagnostics = [];
      this.networkError = `service rejected the request (HTTP ${outcome.status})`;
      return;
    }
    this.diagnostics = response.diagnostics ?? [];
    if (!response.ok || response.result === undefined) {
      this.clearResult();
      return;
    }
    if (mode === "doa-json") {
      // graph renders the document being decompiled; result is protocol text
      this.doaDocument = tryParseDoaDocument(inputText);
      this.doaText = inputText;
      this.resultText = response.result;
      this.resultKind = "protocol";
    } else {
      this.doaDocument = tryParseDoaDocument(response.result);
      this.doaText = response.result;
      this.resultText = response.result;
      this.resultKind = "doa-json";
    }
  }

  private clearResult(): void {
    this.doaDocument = null;
    this.doaText = null;
    this.resultText = null;
    this.resultKind = null;
  }

  graph(): GraphModel | null {
    return this.doaDocument ? buildGraph(this.doaDocument) : null;
  }
}
