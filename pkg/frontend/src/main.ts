// Browser entry point: wires the static form and the rendered panels to
// SessionApp. Keep logic out of here; everything testable lives in the
// imported modules.

import { ServiceClient } from "./api.js";
import { SessionApp } from "./app.js";
import type { SessionMode } from "./types.js";

const root = document.querySelector<HTMLElement>("#app");
const form = document.querySelector<HTMLFormElement>("#create-form");
const setupError = document.querySelector<HTMLElement>("#setup-error");
if (root === null || form === null || setupError === null) {
  throw new Error("static page is missing its mount points");
}

const app = new SessionApp(new ServiceClient(""), (html) => {
  root.innerHTML = html;
});
app.render();

function field<T extends Element>(selector: string): T {
  const el = form!.querySelector<T>(selector);
  if (el === null) {
    throw new Error(`missing form field ${selector}`);
  }
  return el;
}

async function readJsonFile(input: HTMLInputElement, label: string): Promise<unknown> {
  const file = input.files?.[0];
  if (file === undefined) {
    throw new Error(`choose a ${label} file`);
  }
  try {
    return JSON.parse(await file.text());
  } catch {
    throw new Error(`${label} file is not valid JSON`);
  }
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void (async () => {
    setupError.textContent = "";
    try {
      const schema = await readJsonFile(field<HTMLInputElement>("#schema-file"), "schema");
      const workload = await readJsonFile(field<HTMLInputElement>("#workload-file"), "workload");
      const constraints: unknown = JSON.parse(field<HTMLTextAreaElement>("#constraints").value);
      const mode = field<HTMLSelectElement>("#mode").value as SessionMode;
      const seed = Number(field<HTMLInputElement>("#seed").value) || 0;
      await app.create({ schema, workload, constraints, mode, config: { seed } });
    } catch (err) {
      setupError.textContent = String(err instanceof Error ? err.message : err);
    }
  })();
});

async function saveTable(): Promise<void> {
  const saved = await app.download();
  if (saved === null) {
    return;
  }
  const blob = new Blob([saved.text], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = saved.filename;
  document.body.appendChild(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(url);
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (target === null || target.hasAttribute("disabled")) {
    return;
  }
  switch (target.dataset["action"]) {
    case "step":
      void app.step();
      break;
    case "refine":
      void app.refine();
      break;
    case "accept":
      void app.accept();
      break;
    case "abort":
      void app.abort();
      break;
    case "download":
      void saveTable();
      break;
  }
});

root.addEventListener("change", (event) => {
  const box = event.target;
  if (box instanceof HTMLInputElement && box.dataset["vertex"] !== undefined && !box.disabled) {
    app.toggle(Number(box.dataset["vertex"]));
  }
});
