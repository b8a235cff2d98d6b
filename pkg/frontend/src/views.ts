/**
 * DOM renderers for each dashboard panel. Every cell and bar is filled
 * straight from an API payload value — the only arithmetic here is chart
 * coordinate scaling, which lives in charts.ts.
 */

import type {
  BloomStep,
  ClassAffect,
  Envelope,
  QuizDetail,
  StudentAffect,
  StudyMethods,
} from "./api.js";
import { barChart, lineChart } from "./charts.js";

function clear(el: HTMLElement): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

export function renderClassAffect(
  container: HTMLElement,
  payload: Envelope<ClassAffect>,
): void {
  clear(container);
  const points = payload.data.series.map((s) => ({
    time: s.bucket_start,
    value: s.value,
  }));
  container.appendChild(lineChart(points, payload.data.course_events));
}

export function renderStudentAffect(
  container: HTMLElement,
  payload: Envelope<StudentAffect>,
  dimension: keyof StudentAffect["points"][number]["affect"],
): void {
  clear(container);
  const points = payload.data.points.map((p) => ({
    time: p.timestamp,
    value: p.affect[dimension],
  }));
  container.appendChild(lineChart(points, payload.data.course_events));
}

export function renderTopics(container: HTMLElement, topics: string[]): void {
  clear(container);
  const table = document.createElement("table");
  table.className = "topic-table";
  const body = table.createTBody();
  for (const topic of topics) {
    const cell = body.insertRow().insertCell();
    cell.textContent = topic;
  }
  if (topics.length === 0) {
    const cell = body.insertRow().insertCell();
    cell.textContent = "no topics yet";
    cell.className = "empty";
  }
  container.appendChild(table);
}

const METHOD_LABELS: [keyof StudyMethods, string][] = [
  ["question_answering", "Q&A"],
  ["quizzes", "Quizzes"],
  ["summary", "Summary"],
  ["flashcards", "Flashcards"],
];

export function renderStudyMethods(container: HTMLElement, methods: StudyMethods): void {
  clear(container);
  const items = METHOD_LABELS.map(([key, label]) => ({
    label,
    value: methods[key],
    cssClass: `method-${key}`,
  }));
  container.appendChild(barChart(items));
}

export function renderQuizDetail(
  container: HTMLElement,
  payload: Envelope<QuizDetail>,
): void {
  clear(container);
  const heading = document.createElement("h3");
  heading.textContent = `Quiz ${payload.data.quiz_id}`;
  container.appendChild(heading);

  for (const attempt of payload.data.attempts) {
    const block = document.createElement("div");
    block.className = "quiz-attempt";

    const summary = document.createElement("p");
    summary.className = "quiz-summary";
    summary.textContent =
      `${attempt.student_id} — ${attempt.topic}: ` +
      `${attempt.score.correct}/${attempt.score.total} correct, ` +
      `${attempt.total_seconds} s total`;
    block.appendChild(summary);

    // one bar per question, green/red by correctness, height ∝ seconds
    const bars = attempt.per_question_seconds.map((seconds, i) => ({
      label: `Q${i + 1}`,
      value: seconds,
      cssClass: attempt.correct_flags[i] ? "correct" : "incorrect",
    }));
    block.appendChild(barChart(bars));
    container.appendChild(block);
  }
}

export function renderQuizNotFound(container: HTMLElement, quizId: string): void {
  clear(container);
  const notice = document.createElement("p");
  notice.className = "not-found";
  notice.textContent = `quiz ${quizId} not found`;
  container.appendChild(notice);
}

/**
 * Bloom progression table. The disclaimer tooltip is attached here: it is
 * absent from the layout until the table is hovered, and its text is the
 * envelope's disclaimer string verbatim.
 */
export function renderBloomTable(
  container: HTMLElement,
  progression: BloomStep[],
  disclaimer: string,
): void {
  clear(container);
  const wrapper = document.createElement("div");
  wrapper.className = "bloom-wrapper";

  const table = document.createElement("table");
  table.className = "bloom-table";
  const head = table.createTHead().insertRow();
  for (const title of ["Time", "Cognitive level"]) {
    const th = document.createElement("th");
    th.textContent = title;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const step of progression) {
    const row = body.insertRow();
    row.insertCell().textContent = step.timestamp;
    const level = row.insertCell();
    level.textContent = step.level;
    level.className = `level-${step.level.toLowerCase()}`;
  }

  const tooltip = document.createElement("div");
  tooltip.className = "disclaimer-tooltip";
  tooltip.hidden = true;
  tooltip.textContent = disclaimer;

  table.addEventListener("mouseenter", () => {
    tooltip.hidden = false;
  });
  table.addEventListener("mouseleave", () => {
    tooltip.hidden = true;
  });

  wrapper.appendChild(table);
  wrapper.appendChild(tooltip);
  container.appendChild(wrapper);
}

export function renderStudentList(
  container: HTMLElement,
  studentIds: string[],
  selected: string | null,
  onSelect: (id: string | null) => void,
): void {
  clear(container);
  const list = document.createElement("ul");
  list.className = "student-list";

  const classItem = document.createElement("li");
  const classLink = document.createElement("a");
  classLink.textContent = "Whole class";
  classLink.href = "#";
  classLink.className = selected === null ? "active" : "";
  classLink.addEventListener("click", (event) => {
    event.preventDefault();
    onSelect(null);
  });
  classItem.appendChild(classLink);
  list.appendChild(classItem);

  for (const id of studentIds) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.textContent = id;
    link.href = "#";
    link.dataset.studentId = id;
    link.className = selected === id ? "active" : "";
    link.addEventListener("click", (event) => {
      event.preventDefault();
      onSelect(id);
    });
    item.appendChild(link);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function showErrorBanner(banner: HTMLElement, message: string | null): void {
  if (message === null) {
    banner.hidden = true;
    banner.textContent = "";
  } else {
    banner.hidden = false;
    banner.textContent = message;
  }
}
