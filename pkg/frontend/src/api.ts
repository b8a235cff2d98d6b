/**
 * Typed client for the classpulse analytics API.
 *
 * The dashboard is a pure consumer: every number shown on screen comes out of
 * one of these payloads unchanged. Concurrent fetches of the same path are
 * deduplicated, and every request is appended to `requestLog` so tests (and
 * the debug console) can see exactly which endpoints a view touched.
 */

export interface Envelope<T> {
  data: T;
  disclaimer: string;
}

export interface AffectScores {
  stress: number;
  curiosity: number;
  confusion: number;
  agitation: number;
}

export interface SeriesPoint {
  bucket_start: string;
  value: number;
}

export interface CourseEvent {
  kind: string;
  label: string;
  date: string;
}

export interface ClassAffect {
  dimension: string;
  bucket_seconds: number;
  series: SeriesPoint[];
  course_events: CourseEvent[];
}

export interface MetricPoint {
  timestamp: string;
  affect: AffectScores;
  topic: string;
  bloom: string | null;
  exploratory: boolean;
  degraded: boolean;
}

export interface StudentAffect {
  student_id: string;
  points: MetricPoint[];
  course_events: CourseEvent[];
}

export interface BloomStep {
  timestamp: string;
  level: string;
}

export interface BloomProgression {
  student_id: string;
  progression: BloomStep[];
}

export interface StudyMethods {
  question_answering: number;
  quizzes: number;
  summary: number;
  flashcards: number;
}

export interface QuizAttempt {
  student_id: string;
  topic: string;
  started: string;
  completed: string;
  total_seconds: number;
  per_question_seconds: number[];
  correct_flags: boolean[];
  score: { correct: number; total: number };
}

export interface QuizDetail {
  quiz_id: string;
  attempts: QuizAttempt[];
}

export class ApiError extends Error {
  constructor(public readonly status: number, public readonly path: string) {
    super(`${status} from ${path}`);
  }
}

export class ApiClient {
  readonly requestLog: string[] = [];
  private inflight = new Map<string, Promise<unknown>>();

  constructor(private baseUrl = "") {}

  private get<T>(path: string): Promise<Envelope<T>> {
    const pending = this.inflight.get(path);
    if (pending) return pending as Promise<Envelope<T>>;

    this.requestLog.push(path);
    const promise = fetch(this.baseUrl + path)
      .then((response) => {
        if (!response.ok) throw new ApiError(response.status, path);
        return response.json() as Promise<Envelope<T>>;
      })
      .finally(() => this.inflight.delete(path));
    this.inflight.set(path, promise);
    return promise;
  }

  classAffect(
    dimension: string,
    from?: string,
    to?: string,
  ): Promise<Envelope<ClassAffect>> {
    const params = new URLSearchParams({ dimension });
    if (from) params.set("from", from);
    if (to) params.set("to", to);
    return this.get(`/api/class/affect?${params}`);
  }

  students(): Promise<Envelope<{ student_ids: string[] }>> {
    return this.get("/api/students");
  }

  studentAffect(id: string): Promise<Envelope<StudentAffect>> {
    return this.get(`/api/students/${encodeURIComponent(id)}/affect`);
  }

  studentBloom(id: string): Promise<Envelope<BloomProgression>> {
    return this.get(`/api/students/${encodeURIComponent(id)}/bloom`);
  }

  studentTopics(id: string): Promise<Envelope<{ student_id: string; topics: string[] }>> {
    return this.get(`/api/students/${encodeURIComponent(id)}/topics`);
  }

  studentStudyMethods(id: string): Promise<Envelope<{ student_id: string; methods: StudyMethods }>> {
    return this.get(`/api/students/${encodeURIComponent(id)}/study-methods`);
  }

  classTopics(): Promise<Envelope<{ topics: string[] }>> {
    return this.get("/api/class/topics");
  }

  classStudyMethods(): Promise<Envelope<{ methods: StudyMethods }>> {
    return this.get("/api/class/study-methods");
  }

  quiz(id: string): Promise<Envelope<QuizDetail>> {
    return this.get(`/api/quizzes/${encodeURIComponent(id)}`);
  }
}
