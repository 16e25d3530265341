import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import type { FetchLike } from "../src/api.js";

interface Call {
  url: string;
  method?: string;
  body?: string;
}

function fakeFetch(
  handler: (call: Call) => { status?: number; body: unknown },
): { fetchFn: FetchLike; calls: Call[] } {
  const calls: Call[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const call: Call = {
      url,
      method: init?.method,
      body: typeof init?.body === "string" ? init.body : undefined,
    };
    calls.push(call);
    const { status = 200, body } = handler(call);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("ApiClient", () => {
  it("sends the requirement list verbatim in solve requests", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({
      body: { status: "SAT", solutions: [], violations: [] },
    }));
    const client = new ApiClient("", fetchFn);
    const requirements = [
      { polarity: "req" as const, component: "basket" },
      { polarity: "req" as const, component: "front_wheel", property: "size", value: 26 },
    ];
    await client.solve("abc", requirements, 1, false);
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("/api/instances/abc/solve");
    expect(calls[0].method).toBe("POST");
    expect(JSON.parse(calls[0].body!)).toEqual({
      maxModels: 1,
      minimalOnly: false,
      requirements,
    });
  });

  it("encodes what-if requests with component and property", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({
      body: { values: [], mayBeAbsent: false, mustBePresent: false },
    }));
    const client = new ApiClient("", fetchFn);
    await client.whatif("abc", [], "front_wheel", "type");
    expect(JSON.parse(calls[0].body!)).toEqual({
      requirements: [],
      component: "front_wheel",
      property: "type",
    });
  });

  it("prefixes a configured base url", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({ body: { id: "x", warnings: [] } }));
    const client = new ApiClient("http://localhost:8000", fetchFn);
    await client.createInstance("domain(a,type,t).");
    expect(calls[0].url).toBe("http://localhost:8000/api/instances");
  });

  it("raises ApiError with code and position on failure bodies", async () => {
    const { fetchFn } = fakeFetch(() => ({
      status: 422,
      body: {
        code: "PARSE_ERROR",
        message: "expected ')'",
        position: { line: 3, column: 9 },
      },
    }));
    const client = new ApiClient("", fetchFn);
    const failure = await client.createInstance("domain(x.").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(422);
    expect(failure.code).toBe("PARSE_ERROR");
    expect(failure.position).toEqual({ line: 3, column: 9 });
  });
});
