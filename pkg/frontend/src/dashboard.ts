// Instructor dashboard: the cohort numbers come straight off the stats
// endpoint and are rendered verbatim; nothing is recomputed client-side.

import type { ApiClient } from "./api.js";
import type { StatsJson, StudentRecord, SubmissionMeta } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function barChart(
  docRef: Document,
  values: { label: string; count: number }[],
  title: string,
): SVGSVGElement {
  const width = Math.max(260, values.length * 26 + 60);
  const height = 180;
  const maxCount = Math.max(1, ...values.map((v) => v.count));
  const svg = docRef.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("role", "img");
  svg.dataset.title = title;
  const caption = docRef.createElementNS(SVG_NS, "text");
  caption.setAttribute("x", "8");
  caption.setAttribute("y", "14");
  caption.setAttribute("class", "chart-title");
  caption.textContent = title;
  svg.appendChild(caption);
  const plotH = height - 50;
  values.forEach((v, i) => {
    const barH = Math.round((v.count / maxCount) * plotH);
    const x = 30 + i * 26;
    const rect = docRef.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(x));
    rect.setAttribute("y", String(20 + plotH - barH));
    rect.setAttribute("width", "18");
    rect.setAttribute("height", String(barH));
    rect.setAttribute("class", "bar");
    rect.dataset.label = v.label;
    rect.dataset.count = String(v.count);
    svg.appendChild(rect);
    const label = docRef.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x + 2));
    label.setAttribute("y", String(height - 18));
    label.setAttribute("class", "bar-label");
    label.textContent = v.label;
    svg.appendChild(label);
    if (v.count > 0) {
      const count = docRef.createElementNS(SVG_NS, "text");
      count.setAttribute("x", String(x + 2));
      count.setAttribute("y", String(14 + plotH - barH));
      count.setAttribute("class", "bar-count");
      count.textContent = String(v.count);
      svg.appendChild(count);
    }
  });
  return svg;
}

export class Dashboard {
  stats: StatsJson | null = null;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  async load(assignmentId: string): Promise<void> {
    this.stats = await this.api.stats(assignmentId);
    this.renderSummary();
  }

  renderSummary(): void {
    const stats = this.stats;
    if (!stats) return;
    const docRef = this.root.ownerDocument;
    this.root.innerHTML = "";

    const head = docRef.createElement("div");
    head.className = "dash-head";
    const ratio = docRef.createElement("p");
    ratio.className = "dash-ratio";
    ratio.textContent =
      `${stats.submitted_count}/${stats.roster_size} students submitted at least once; ` +
      `${stats.solved_count} reached full marks.`;
    head.appendChild(ratio);
    const title = docRef.createElement("h2");
    title.textContent = stats.title;
    this.root.appendChild(title);
    this.root.appendChild(head);

    const tries = Object.entries(stats.tries_before_success).map(([label, count]) => ({
      label,
      count,
    }));
    const maxTries = Math.max(1, ...tries.map((t) => Number(t.label)));
    const filled = [];
    for (let n = 1; n <= maxTries; n++) {
      filled.push({
        label: String(n),
        count: stats.tries_before_success[String(n)] ?? 0,
      });
    }
    const triesChart = barChart(docRef, filled, "Submissions until first full score");
    triesChart.classList.add("tries-chart");
    this.root.appendChild(triesChart);

    const hourly = stats.hourly.map((count, hour) => ({ label: String(hour), count }));
    const hourlyChart = barChart(docRef, hourly, "Submissions per hour of day");
    hourlyChart.classList.add("hourly-chart");
    this.root.appendChild(hourlyChart);

    const table = docRef.createElement("table");
    table.className = "dash-students";
    table.innerHTML =
      "<thead><tr><th>student</th><th>submissions</th><th>scores</th><th>final</th></tr></thead>";
    const body = docRef.createElement("tbody");
    for (const record of stats.per_student) {
      const row = docRef.createElement("tr");
      row.dataset.projectId = record.project_id;
      row.dataset.name = record.name;
      row.innerHTML =
        `<td>${record.name}</td><td>${record.submission_count}</td>` +
        `<td>${record.submission_scores.map((s) => s ?? "-").join(" ")}</td>` +
        `<td>${record.final_score}</td>`;
      row.addEventListener("click", () => void this.drillDown(record));
      body.appendChild(row);
    }
    table.appendChild(body);
    this.root.appendChild(table);
  }

  async drillDown(record: StudentRecord): Promise<SubmissionMeta[]> {
    const history = await this.api.history(record.project_id);
    const docRef = this.root.ownerDocument;
    const panel = docRef.createElement("div");
    panel.className = "dash-drilldown";
    const heading = docRef.createElement("h3");
    heading.textContent = `${record.name}: submission history`;
    panel.appendChild(heading);
    const list = docRef.createElement("ol");
    for (const sub of history) {
      const item = docRef.createElement("li");
      item.dataset.submissionId = sub.id;
      item.textContent = `${sub.submitted_at} score ${sub.score ?? "-"} (${sub.repr})`;
      list.appendChild(item);
    }
    panel.appendChild(list);
    this.root.querySelector(".dash-drilldown")?.remove();
    this.root.appendChild(panel);
    return history;
  }
}
