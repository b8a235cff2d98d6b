/**
 * Dashboard bootstrap: wires URL state, polling refresh, and the panel
 * renderers together. Served as static assets by the analytics service.
 */

import { ApiClient } from "./api.js";
import { fetchDashboardData } from "./controller.js";
import { decodeState, DIMENSIONS, encodeState, type ViewState } from "./state.js";
import {
  renderBloomTable,
  renderClassAffect,
  renderQuizDetail,
  renderQuizNotFound,
  renderStudentAffect,
  renderStudentList,
  renderTopics,
  renderStudyMethods,
  showErrorBanner,
} from "./views.js";

const POLL_INTERVAL_MS = 30_000;

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

export function startDashboard(client = new ApiClient()): void {
  let state = decodeState(window.location.search);
  let refreshing = false;

  const banner = byId("error-banner");
  const scopeTitle = byId("scope-title");
  const dimensionSelect = byId("dimension-select") as HTMLSelectElement;
  const fromInput = byId("from-input") as HTMLInputElement;
  const toInput = byId("to-input") as HTMLInputElement;

  for (const dim of DIMENSIONS) {
    const option = document.createElement("option");
    option.value = dim;
    option.textContent = dim;
    dimensionSelect.appendChild(option);
  }

  function navigate(next: ViewState): void {
    state = next;
    window.history.pushState(null, "", window.location.pathname + encodeState(state));
    void refresh();
  }

  async function refresh(): Promise<void> {
    if (refreshing) return; // poll tick while a refresh is already in flight
    refreshing = true;
    try {
      const data = await fetchDashboardData(client, state);
      showErrorBanner(banner, null);
      document.body.classList.remove("stale");

      scopeTitle.textContent =
        state.scope === "student" ? `Student ${state.studentId}` : "Whole class";
      dimensionSelect.value = state.dimension;
      fromInput.value = state.from ?? "";
      toInput.value = state.to ?? "";

      renderStudentList(byId("student-list"), data.studentIds, state.studentId, (id) =>
        navigate({ ...state, scope: id ? "student" : "class", studentId: id }),
      );
      if (data.classAffect) {
        renderClassAffect(byId("affect-chart"), data.classAffect);
      } else if (data.studentAffect) {
        renderStudentAffect(byId("affect-chart"), data.studentAffect, state.dimension);
      }
      renderTopics(byId("topics-panel"), data.topics);
      renderStudyMethods(byId("methods-panel"), data.methods);
      renderBloomTable(byId("bloom-panel"), data.bloom, data.disclaimer);
      if (data.quizNotFound && state.quizId) {
        renderQuizNotFound(byId("quiz-panel"), state.quizId);
      } else if (data.quiz) {
        renderQuizDetail(byId("quiz-panel"), data.quiz);
      }
    } catch (error) {
      // keep whatever is on screen, but flag it as stale
      showErrorBanner(banner, `API unreachable: ${String(error)} — data may be stale`);
      document.body.classList.add("stale");
    } finally {
      refreshing = false;
    }
  }

  dimensionSelect.addEventListener("change", () =>
    navigate({ ...state, dimension: dimensionSelect.value as ViewState["dimension"] }),
  );
  fromInput.addEventListener("change", () =>
    navigate({ ...state, from: fromInput.value || null }),
  );
  toInput.addEventListener("change", () =>
    navigate({ ...state, to: toInput.value || null }),
  );
  window.addEventListener("popstate", () => {
    state = decodeState(window.location.search);
    void refresh();
  });

  void refresh();
  window.setInterval(() => void refresh(), POLL_INTERVAL_MS);
}

// auto-start in the browser; tests import the pieces directly instead
if (typeof document !== "undefined" && document.getElementById("app")) {
  startDashboard();
}
