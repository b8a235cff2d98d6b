/**
 * Test scaffolding: fixtures captured from a seeded analytics server, and a
 * recording fetch stub that serves them byte-for-byte.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { vi } from "vitest";

export function fixtureRaw(name: string): string {
  return readFileSync(join(process.cwd(), "tests", "fixtures", `${name}.json`), "utf-8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureRaw(name)) as T;
}

export const STUDENT_ID = "student-001";
export const QUIZ_ID = "quiz-0001";

const ROUTES: [RegExp, string][] = [
  [/^\/api\/class\/affect\?/, "class_affect_stress"],
  [/^\/api\/class\/topics$/, "class_topics"],
  [/^\/api\/class\/study-methods$/, "class_study_methods"],
  [/^\/api\/students$/, "students"],
  [/^\/api\/students\/student-001\/affect$/, "student_affect"],
  [/^\/api\/students\/student-001\/bloom$/, "student_bloom"],
  [/^\/api\/students\/student-001\/topics$/, "student_topics"],
  [/^\/api\/students\/student-001\/study-methods$/, "student_study_methods"],
  [/^\/api\/quizzes\/quiz-0001$/, "quiz_detail"],
];

export interface FetchStub {
  calls: string[];
  restore: () => void;
}

/** Replace global fetch with a router over the captured fixtures. */
export function stubFetch(): FetchStub {
  const calls: string[] = [];
  const mock = vi.fn(async (input: RequestInfo | URL) => {
    const path = String(input);
    calls.push(path);
    const route = ROUTES.find(([pattern]) => pattern.test(path));
    if (!route) {
      return { ok: false, status: 404, json: async () => ({ detail: "not found" }) };
    }
    const raw = fixtureRaw(route[1]);
    return { ok: true, status: 200, json: async () => JSON.parse(raw) };
  });
  const original = globalThis.fetch;
  globalThis.fetch = mock as unknown as typeof fetch;
  return {
    calls,
    restore: () => {
      globalThis.fetch = original;
    },
  };
}
