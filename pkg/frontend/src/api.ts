// Thin typed client over the service API. All state lives server-side;
// this file only moves JSON.

import type {
  HomeColumns,
  NetlistJson,
  SimulateResponse,
  StatsJson,
  StimulusJson,
  SubmissionMeta,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

export interface LoginResult {
  token: string;
  user_id: string;
  name: string;
  role: string;
}

export class ApiClient {
  token: string | null = null;

  constructor(
    private base = "",
    private fetchFn: typeof fetch = fetch.bind(globalThis),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const resp = await this.fetchFn(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      let code = "ERROR";
      let message = resp.statusText;
      try {
        const payload = await resp.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, message, resp.status);
    }
    return (await resp.json()) as T;
  }

  async login(name: string, password: string): Promise<LoginResult> {
    const result = await this.request<LoginResult>("POST", "/api/login", { name, password });
    this.token = result.token;
    return result;
  }

  home(): Promise<HomeColumns> {
    return this.request("GET", "/api/home");
  }

  createProject(name: string, repr: string, payload = "", column = "PLAYGROUND") {
    return this.request<{ id: string }>("POST", "/api/projects", {
      name,
      repr,
      payload,
      column,
    });
  }

  getProject(id: string) {
    return this.request<{ id: string; name: string; repr: string; payload: string; col: string }>(
      "GET",
      `/api/projects/${id}`,
    );
  }

  saveProject(id: string, payload: string, name?: string) {
    return this.request("PUT", `/api/projects/${id}`, { payload, name });
  }

  submit(projectId: string, body: { payload?: string; repr?: string; top?: string; stimulus?: StimulusJson }) {
    return this.request<SubmissionMeta>("POST", `/api/projects/${projectId}/submissions`, body);
  }

  history(projectId: string) {
    return this.request<SubmissionMeta[]>("GET", `/api/projects/${projectId}/submissions`);
  }

  simulate(body: {
    repr: "NETLIST" | "VHDL";
    payload: string;
    top?: string;
    stimulus: StimulusJson;
    watch?: "PORTS" | "ALL_NETS";
  }): Promise<SimulateResponse> {
    return this.request("POST", "/api/simulate", body);
  }

  simulateNetlist(doc: NetlistJson, stimulus: StimulusJson, watch: "PORTS" | "ALL_NETS" = "ALL_NETS") {
    return this.simulate({ repr: "NETLIST", payload: JSON.stringify(doc), stimulus, watch });
  }

  stats(assignmentId: string): Promise<StatsJson> {
    return this.request("GET", `/api/assignments/${assignmentId}/stats`);
  }

  postNotice(title: string, body: string) {
    return this.request<{ id: string }>("POST", "/api/notices", { title, body });
  }

  setExampleVisibility(projectId: string, visible: boolean) {
    return this.request("POST", `/api/examples/${projectId}/visibility`, { visible });
  }
}
