import { mount } from "./app.js";

// Single configuration knob: the API base URL, overridable per deployment
// via ?api=http://host:port.
const DEFAULT_API = "http://127.0.0.1:8787";
const api = new URLSearchParams(window.location.search).get("api") ?? DEFAULT_API;

mount(document, api.replace(/\/$/, ""));
