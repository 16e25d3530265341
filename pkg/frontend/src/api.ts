// Typed client for the configurator service. The UI never computes
// constraint semantics itself: everything it displays comes from these
// response bodies.

export type Value = string | number;

export interface Requirement {
  polarity: "req" | "nreq";
  component: string;
  property?: string;
  value?: Value;
}

export interface Assignment {
  component: string;
  property: string;
  value: Value;
}

export interface SolutionBody {
  assignments: Assignment[];
  present: string[];
}

export interface ViolationBody {
  rule: string;
  message: string;
  atoms: string[];
  origin?: string;
}

export interface SolveResponse {
  status: "SAT" | "UNSAT" | "CAPPED" | "BUDGET_EXCEEDED";
  solutions: SolutionBody[];
  violations: ViolationBody[];
}

export interface WhatIfResponse {
  values: Value[];
  mayBeAbsent: boolean;
  mustBePresent: boolean;
}

export interface DomainCell {
  component: string;
  property: string;
  values: Value[];
}

export interface PartonomyEdge {
  whole: string;
  part: string;
  kind: "mandatory" | "optional";
}

export interface InstanceSummary {
  id: string;
  components: string[];
  domains: DomainCell[];
  partonomy: PartonomyEdge[];
  constraints: Record<string, number>;
  userRequirements: Requirement[];
}

export interface Position {
  line: number;
  column: number;
}

export interface Warning {
  severity?: string;
  code: string;
  message: string;
  position?: Position;
  fact?: string;
}

export interface CreateResponse {
  id: string;
  warnings: Warning[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly position?: Position,
    readonly diagnostics?: Warning[],
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const parsed = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        parsed.code ?? "UNKNOWN",
        parsed.message ?? response.statusText,
        parsed.position,
        parsed.diagnostics,
      );
    }
    return parsed as T;
  }

  createInstance(source: string): Promise<CreateResponse> {
    return this.request("POST", "/api/instances", { source });
  }

  getInstance(id: string): Promise<InstanceSummary> {
    return this.request("GET", `/api/instances/${id}`);
  }

  solve(
    id: string,
    requirements: Requirement[],
    maxModels = 1,
    minimalOnly = false,
  ): Promise<SolveResponse> {
    return this.request("POST", `/api/instances/${id}/solve`, {
      maxModels,
      minimalOnly,
      requirements,
    });
  }

  whatif(
    id: string,
    requirements: Requirement[],
    component: string,
    property: string,
  ): Promise<WhatIfResponse> {
    return this.request("POST", `/api/instances/${id}/whatif`, {
      requirements,
      component,
      property,
    });
  }

  check(id: string, assignments: Assignment[]): Promise<{ violations: ViolationBody[] }> {
    return this.request("POST", `/api/instances/${id}/check`, { assignments });
  }
}
