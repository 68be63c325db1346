// Browser entry point: wires the static form and the rendered panels to
// SessionApp. Keep logic out of here; everything testable lives in the
// imported modules.
import { ServiceClient } from "./api.js";
import { SessionApp } from "./app.js";
const root = document.querySelector("#app");
const form = document.querySelector("#create-form");
const setupError = document.querySelector("#setup-error");
if (root === null || form === null || setupError === null) {
    throw new Error("static page is missing its mount points");
}
const app = new SessionApp(new ServiceClient(""), (html) => {
    root.innerHTML = html;
});
app.render();
function field(selector) {
    const el = form.querySelector(selector);
    if (el === null) {
        throw new Error(`missing form field ${selector}`);
    }
    return el;
}
async function readJsonFile(input, label) {
    const file = input.files?.[0];
    if (file === undefined) {
        throw new Error(`choose a ${label} file`);
    }
    try {
        return JSON.parse(await file.text());
    }
    catch {
        throw new Error(`${label} file is not valid JSON`);
    }
}
form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
        setupError.textContent = "";
        try {
            const schema = await readJsonFile(field("#schema-file"), "schema");
            const workload = await readJsonFile(field("#workload-file"), "workload");
            const constraints = JSON.parse(field("#constraints").value);
            const mode = field("#mode").value;
            const seed = Number(field("#seed").value) || 0;
            await app.create({ schema, workload, constraints, mode, config: { seed } });
        }
        catch (err) {
            setupError.textContent = String(err instanceof Error ? err.message : err);
        }
    })();
});
async function saveTable() {
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
    const target = event.target.closest("[data-action]");
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
