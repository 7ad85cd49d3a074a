import { mountApp } from "./app";
import type { Lang } from "./i18n";

const params = new URLSearchParams(location.search);
const base = params.get("api") ?? "http://127.0.0.1:8000";
const lang: Lang = params.get("lang") === "nl" ? "nl" : "en";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
mountApp(root, { base, lang });

export { mountApp };
