import { beforeEach, describe, expect, it } from "vitest";

import type { ClassAffect, Envelope, QuizDetail, StudyMethods } from "../src/api.js";
import type { BloomStep } from "../src/api.js";
import {
  renderBloomTable,
  renderClassAffect,
  renderQuizDetail,
  renderStudyMethods,
  renderTopics,
} from "../src/views.js";
import { fixture, fixtureRaw } from "./helpers.js";

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "";
  container = document.createElement("div");
  document.body.appendChild(container);
});

describe("topic table", () => {
  it("renders rows byte-equal to the API payload, in payload order", () => {
    const payload = fixture<Envelope<{ topics: string[] }>>("class_topics");
    renderTopics(container, payload.data.topics);
    const cells = [...container.querySelectorAll("td")].map((td) => td.textContent);
    expect(cells).toEqual(payload.data.topics);
    // every rendered string appears verbatim in the raw response bytes
    const raw = fixtureRaw("class_topics");
    for (const cell of cells) {
      expect(raw).toContain(JSON.stringify(cell));
    }
  });

  it("shows a placeholder for an empty list", () => {
    renderTopics(container, []);
    expect(container.querySelector("td.empty")?.textContent).toBe("no topics yet");
  });
});

describe("study-method chart", () => {
  it("bar values equal the API counts", () => {
    const payload =
      fixture<Envelope<{ methods: StudyMethods }>>("class_study_methods");
    renderStudyMethods(container, payload.data.methods);
    const bars = [...container.querySelectorAll("rect.bar")];
    const byLabel = Object.fromEntries(
      bars.map((bar) => [bar.getAttribute("data-label"), bar.getAttribute("data-value")]),
    );
    expect(byLabel).toEqual({
      "Q&A": String(payload.data.methods.question_answering),
      Quizzes: String(payload.data.methods.quizzes),
      Summary: String(payload.data.methods.summary),
      Flashcards: String(payload.data.methods.flashcards),
    });
  });

  it("zero counts still render four bars", () => {
    renderStudyMethods(container, {
      question_answering: 0, quizzes: 0, summary: 0, flashcards: 0,
    });
    expect(container.querySelectorAll("rect.bar")).toHaveLength(4);
  });
});

describe("quiz detail", () => {
  it("one bar per question, values equal seconds, colors follow correctness", () => {
    const payload = fixture<Envelope<QuizDetail>>("quiz_detail");
    renderQuizDetail(container, payload);
    const attempt = payload.data.attempts[0];
    const bars = [...container.querySelectorAll("rect.bar")];
    expect(bars).toHaveLength(attempt.per_question_seconds.length);
    bars.forEach((bar, i) => {
      expect(bar.getAttribute("data-value")).toBe(String(attempt.per_question_seconds[i]));
      expect(bar.classList.contains("correct")).toBe(attempt.correct_flags[i]);
      expect(bar.classList.contains("incorrect")).toBe(!attempt.correct_flags[i]);
    });
  });

  it("bar heights are proportional to seconds", () => {
    const payload = fixture<Envelope<QuizDetail>>("quiz_detail");
    renderQuizDetail(container, payload);
    const seconds = payload.data.attempts[0].per_question_seconds;
    const heights = [...container.querySelectorAll("rect.bar")].map((bar) =>
      Number(bar.getAttribute("height")),
    );
    for (let i = 1; i < seconds.length; i++) {
      expect(heights[i] / heights[0]).toBeCloseTo(seconds[i] / seconds[0], 9);
    }
  });

  it("summary line shows the payload score untouched", () => {
    const payload = fixture<Envelope<QuizDetail>>("quiz_detail");
    renderQuizDetail(container, payload);
    const attempt = payload.data.attempts[0];
    const summary = container.querySelector(".quiz-summary")?.textContent ?? "";
    expect(summary).toContain(`${attempt.score.correct}/${attempt.score.total}`);
    expect(summary).toContain(`${attempt.total_seconds} s`);
  });
});

describe("bloom table and hover disclaimer", () => {
  function render(): { payload: Envelope<{ progression: BloomStep[] }>; table: Element; tooltip: HTMLElement } {
    const payload =
      fixture<Envelope<{ student_id: string; progression: BloomStep[] }>>("student_bloom");
    renderBloomTable(container, payload.data.progression, payload.disclaimer);
    const table = container.querySelector("table.bloom-table")!;
    const tooltip = container.querySelector<HTMLElement>(".disclaimer-tooltip")!;
    return { payload, table, tooltip };
  }

  it("rows equal the progression payload", () => {
    const { payload, table } = render();
    const rows = [...table.querySelectorAll("tbody tr")].map((tr) => {
      const [time, level] = tr.querySelectorAll("td");
      return { timestamp: time.textContent, level: level.textContent };
    });
    expect(rows).toEqual(payload.data.progression);
  });

  it("disclaimer is absent from the layout until hover", () => {
    const { tooltip } = render();
    expect(tooltip.hidden).toBe(true);
  });

  it("hover shows the exact envelope disclaimer string, leave hides it", () => {
    const { payload, table, tooltip } = render();
    table.dispatchEvent(new MouseEvent("mouseenter"));
    expect(tooltip.hidden).toBe(false);
    expect(tooltip.textContent).toBe(payload.disclaimer);
    expect(tooltip.textContent).toBe(
      "This data is not 100% factual and should be used as a reference only.",
    );
    table.dispatchEvent(new MouseEvent("mouseleave"));
    expect(tooltip.hidden).toBe(true);
  });
});

describe("affect chart", () => {
  it("points equal the series values and every course event gets a bar", () => {
    const payload = fixture<Envelope<ClassAffect>>("class_affect_stress");
    renderClassAffect(container, payload);
    const pointValues = [...container.querySelectorAll("circle.point")].map((c) =>
      c.getAttribute("data-value"),
    );
    expect(pointValues).toEqual(payload.data.series.map((p) => String(p.value)));
    const bars = [...container.querySelectorAll("line.event-bar")];
    expect(bars.map((b) => b.getAttribute("data-label"))).toEqual(
      payload.data.course_events.map((e) => e.label),
    );
  });

  it("empty series shows the placeholder but still draws event bars", () => {
    const payload = fixture<Envelope<ClassAffect>>("class_affect_stress");
    const empty = { ...payload, data: { ...payload.data, series: [] } };
    renderClassAffect(container, empty);
    expect(container.querySelector("text.placeholder")?.textContent).toBe("no data in range");
    expect(container.querySelectorAll("line.event-bar").length).toBe(
      payload.data.course_events.length,
    );
  });
});
