/**
 * Fetch orchestration for one view state: decides which documented endpoints
 * the current scope needs and fetches them together. Kept separate from the
 * DOM bootstrap so the endpoint choreography is directly testable.
 */

import type {
  ApiClient,
  BloomStep,
  ClassAffect,
  Envelope,
  QuizDetail,
  StudentAffect,
  StudyMethods,
} from "./api.js";
import { ApiError } from "./api.js";
import type { ViewState } from "./state.js";

export interface DashboardData {
  studentIds: string[];
  classAffect: Envelope<ClassAffect> | null;
  studentAffect: Envelope<StudentAffect> | null;
  bloom: BloomStep[];
  topics: string[];
  methods: StudyMethods;
  quiz: Envelope<QuizDetail> | null;
  quizNotFound: boolean;
  disclaimer: string;
}

export async function fetchDashboardData(
  client: ApiClient,
  state: ViewState,
): Promise<DashboardData> {
  const studentsPromise = client.students();

  let quiz: Envelope<QuizDetail> | null = null;
  let quizNotFound = false;
  const quizPromise = state.quizId
    ? client.quiz(state.quizId).catch((error: unknown) => {
        if (error instanceof ApiError && error.status === 404) return null;
        throw error;
      })
    : Promise.resolve(null);

  if (state.scope === "student" && state.studentId) {
    const id = state.studentId;
    const [students, affect, bloom, topics, methods, quizResult] = await Promise.all([
      studentsPromise,
      client.studentAffect(id),
      client.studentBloom(id),
      client.studentTopics(id),
      client.studentStudyMethods(id),
      quizPromise,
    ]);
    quiz = quizResult;
    quizNotFound = state.quizId !== null && quizResult === null;
    return {
      studentIds: students.data.student_ids,
      classAffect: null,
      studentAffect: affect,
      bloom: bloom.data.progression,
      topics: topics.data.topics,
      methods: methods.data.methods,
      quiz,
      quizNotFound,
      disclaimer: affect.disclaimer,
    };
  }

  const [students, affect, topics, methods, quizResult] = await Promise.all([
    studentsPromise,
    client.classAffect(state.dimension, state.from ?? undefined, state.to ?? undefined),
    client.classTopics(),
    client.classStudyMethods(),
    quizPromise,
  ]);
  quiz = quizResult;
  quizNotFound = state.quizId !== null && quizResult === null;
  return {
    studentIds: students.data.student_ids,
    classAffect: affect,
    studentAffect: null,
    bloom: [], // class scope has no single progression; table shown per student
    topics: topics.data.topics,
    methods: methods.data.methods,
    quiz,
    quizNotFound,
    disclaimer: affect.disclaimer,
  };
}
