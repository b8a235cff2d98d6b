/**
 * View state, encoded in the URL query string so every navigation state is a
 * shareable deep link.
 */

export const DIMENSIONS = ["stress", "curiosity", "confusion", "agitation"] as const;
export type Dimension = (typeof DIMENSIONS)[number];

export interface ViewState {
  scope: "class" | "student";
  studentId: string | null;
  dimension: Dimension;
  from: string | null;
  to: string | null;
  quizId: string | null;
}

export const DEFAULT_STATE: ViewState = {
  scope: "class",
  studentId: null,
  dimension: "stress",
  from: null,
  to: null,
  quizId: null,
};

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.scope === "student" && state.studentId) {
    params.set("student", state.studentId);
  }
  if (state.dimension !== "stress") params.set("dimension", state.dimension);
  if (state.from) params.set("from", state.from);
  if (state.to) params.set("to", state.to);
  if (state.quizId) params.set("quiz", state.quizId);
  const query = params.toString();
  return query ? `?${query}` : "";
}

export function decodeState(search: string): ViewState {
  const params = new URLSearchParams(search);
  const student = params.get("student");
  const dimension = params.get("dimension");
  return {
    scope: student ? "student" : "class",
    studentId: student,
    dimension: DIMENSIONS.includes(dimension as Dimension)
      ? (dimension as Dimension)
      : "stress",
    from: params.get("from"),
    to: params.get("to"),
    quizId: params.get("quiz"),
  };
}
