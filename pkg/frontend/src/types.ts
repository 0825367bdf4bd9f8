// Wire-format types shared with the service. These mirror the published
// JSON schemas; the UI never invents fields of its own here.

export type LogicChar = "0" | "1" | "X" | "Z";

export interface PinRefJson {
  component: string;
  pin: string;
}

export interface InstanceJson {
  id: string;
  part: string;
  params: Record<string, number>;
  position: [number, number];
}

export interface NetJson {
  id: string;
  label?: string;
  endpoints: PinRefJson[];
}

export interface PortJson {
  name: string;
  net: string;
}

export interface NetlistJson {
  format_version: 1;
  name: string;
  instances: InstanceJson[];
  nets: NetJson[];
  top_inputs: PortJson[];
  top_outputs: PortJson[];
}

export type SignalSpecJson =
  | { kind: "CONSTANT"; value: LogicChar }
  | { kind: "CLOCK"; freq_hz: number; duty: number; phase_ns: number }
  | { kind: "PATTERN"; edges: [number, LogicChar][] };

export interface StimulusJson {
  format_version: 1;
  horizon_ns: number;
  assignments: Record<string, SignalSpecJson>;
}

export interface TraceJson {
  signals: string[];
  horizon_ns: number;
  changes: Record<string, [number, LogicChar][]>;
}

export interface SimulateResponse {
  ok: boolean;
  trace?: TraceJson;
  log?: string[];
  fault?: string | null;
  diagnostics?: string[];
}

export interface ProjectMeta {
  id: string;
  name: string;
  column: string;
  repr: string;
  assignment_id: string | null;
  visible: boolean;
  created_at: string;
  updated_at: string;
}

export interface NoticeJson {
  id: string;
  title: string;
  body: string;
  author: string;
  posted_at: string;
}

export interface HomeColumns {
  attention: NoticeJson[];
  homework: ProjectMeta[];
  playground: ProjectMeta[];
  example: ProjectMeta[];
}

export interface SubmissionMeta {
  id: string;
  project_id: string;
  submitter: string;
  submitted_at: string;
  repr: string;
  score: number | null;
  report: GradeReportJson | null;
  trace: string | null;
  log: string;
}

export interface GradeReportJson {
  score: number;
  passed: number;
  total: number;
  test_points: {
    id: string;
    verdict: "PASS" | "FAIL";
    first_mismatch: {
      signal: string;
      time_ns: number;
      expected: string;
      actual: string;
    } | null;
  }[];
  diagnostics: string[];
}

export interface StudentRecord {
  user_id: string;
  name: string;
  project_id: string;
  submission_count: number;
  submission_times: string[];
  submission_scores: (number | null)[];
  final_score: number;
}

export interface StatsJson {
  assignment_id: string;
  title: string;
  deadline: string;
  roster_size: number;
  submitted_count: number;
  submitted_ratio: number;
  solved_count: number;
  total_submissions: number;
  tries_before_success: Record<string, number>;
  hourly: number[];
  per_student: StudentRecord[];
}
