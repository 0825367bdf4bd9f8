// The student home page: Attention, Homework, Playground and Example as
// four columns, straight from GET /api/home.

import type { ApiClient } from "./api.js";
import type { HomeColumns, ProjectMeta } from "./types.js";

export class HomePage {
  columns: HomeColumns | null = null;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private onOpenProject: (project: ProjectMeta) => void,
  ) {}

  async load(): Promise<void> {
    this.columns = await this.api.home();
    this.render();
  }

  render(): void {
    const columns = this.columns;
    if (!columns) return;
    const docRef = this.root.ownerDocument;
    this.root.innerHTML = "";
    const grid = docRef.createElement("div");
    grid.className = "home-grid";

    const attention = docRef.createElement("section");
    attention.className = "home-column attention";
    attention.innerHTML = "<h2>Attention</h2>";
    for (const notice of columns.attention) {
      const card = docRef.createElement("article");
      card.className = "notice";
      card.innerHTML =
        `<strong>${notice.title}</strong><p>${notice.body}</p>` +
        `<footer>${notice.author} - ${notice.posted_at}</footer>`;
      attention.appendChild(card);
    }
    grid.appendChild(attention);

    const sections: [string, ProjectMeta[]][] = [
      ["Homework", columns.homework],
      ["Playground", columns.playground],
      ["Example", columns.example],
    ];
    for (const [title, projects] of sections) {
      const section = docRef.createElement("section");
      section.className = `home-column ${title.toLowerCase()}`;
      section.innerHTML = `<h2>${title}</h2>`;
      for (const project of projects) {
        const card = docRef.createElement("button");
        card.className = "project-card";
        card.dataset.projectId = project.id;
        card.textContent = `${project.name} (${project.repr})`;
        card.addEventListener("click", () => this.onOpenProject(project));
        section.appendChild(card);
      }
      grid.appendChild(section);
    }
    this.root.appendChild(grid);
  }
}
