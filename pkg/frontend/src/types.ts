/** Wire formats shared with the conversion service. */

export interface DoaStateDoc {
  name: string;
  kind: "external" | "internal";
  initial: boolean;
  final: boolean;
}

export interface DoaMethodDoc {
  returnType: string;
  name: string;
  params: string[];
}

export interface DoaMethodTransitionDoc {
  from: string;
  /** Index into the document's methods list. */
  method: number;
  to: string;
}

export interface DoaResultTransitionDoc {
  from: string;
  label: string;
  to: string;
}

export interface DoaDocument {
  schemaVersion: string;
  states: DoaStateDoc[];
  methods: DoaMethodDoc[];
  labels: string[];
  methodTransitions: DoaMethodTransitionDoc[];
  resultTransitions: DoaResultTransitionDoc[];
}

export interface PositionDoc {
  line: number;
  column: number;
  offset: number;
}

export interface DiagnosticDoc {
  severity: "error" | "warning";
  code: string;
  message: string;
  location?: PositionDoc | string | null;
}

export interface ConvertResponse {
  ok: boolean;
  result?: string;
  diagnostics: DiagnosticDoc[];
}

/** What the left pane currently holds. */
export type InputMode = "typestate" | "ast-json" | "doa-json";

export function methodText(method: DoaMethodDoc): string {
  return `${method.returnType} ${method.name}(${method.params.join(", ")})`;
}
