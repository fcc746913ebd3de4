/** Thin client for the conversion service. */

import { ConvertResponse, InputMode } from "./types.js";

export type Endpoint = "/api/compile" | "/api/decompile" | "/api/ast" | "/api/validate";

export interface ConvertRequestBody {
  kind: "typestate" | "ast" | "doa";
  payload: string;
  options?: { name?: string };
}

export interface ApiResult {
  status: number;
  body: ConvertResponse | null;
}

/** Maps an editor mode to the request kind the service expects. */
export function kindForMode(mode: InputMode): "typestate" | "ast" | "doa" {
  switch (mode) {
    case "typestate":
      return "typestate";
    case "ast-json":
      return "ast";
    case "doa-json":
      return "doa";
  }
}

export class ServiceClient {
  constructor(private readonly baseUrl: string = "") {}

  async post(endpoint: Endpoint, body: ConvertRequestBody,
             signal?: AbortSignal): Promise<ApiResult> {
    const response = await fetch(this.baseUrl + endpoint, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    let parsed: ConvertResponse | null = null;
    try {
      parsed = (await response.json()) as ConvertResponse;
    } catch {
      parsed = null;
    }
    return { status: response.status, body: parsed };
  }
}
