import { ApiError, ServiceClient } from "./api.js";
import { renderSummary } from "./summary.js";
import { renderReview } from "./review.js";
import { formatClock } from "./format.js";
const client = new ServiceClient();
const app = document.getElementById("app");
let sessions = [];
let activeReview = null;
function el(tag, className, text) {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text !== undefined)
        node.textContent = text;
    return node;
}
function parseHash() {
    const parts = window.location.hash.replace(/^#\/?/, "").split("/");
    const id = parts[0] ? decodeURIComponent(parts[0]) : null;
    const screen = parts[1] === "review" ? "review" : "summary";
    return { id, screen };
}
function renderError(host, message) {
    host.textContent = "";
    const box = el("div", "error-box");
    box.appendChild(el("p", undefined, message));
    const back = el("a", undefined, "back to sessions");
    back.href = "#/";
    box.appendChild(back);
    host.appendChild(box);
}
function renderSessionList(host) {
    host.textContent = "";
    host.appendChild(el("h2", undefined, "sessions"));
    if (sessions.length === 0) {
        host.appendChild(el("p", "insufficient", "no sessions in the data directory"));
        return;
    }
    const list = el("ul", "session-list");
    for (const session of sessions) {
        const item = el("li", "session-row");
        const link = el("a", "session-link");
        link.href = `#/${encodeURIComponent(session.session_id)}/summary`;
        link.appendChild(el("strong", undefined, session.session_id));
        const bits = [formatClock(session.duration)];
        bits.push(session.analyzed ? "analyzed" : "not analyzed");
        if (!session.media_available)
            bits.push("no media");
        link.appendChild(el("span", "meta", bits.join(" | ")));
        item.appendChild(link);
        list.appendChild(item);
    }
    host.appendChild(list);
}
function renderTabs(host, session, screen) {
    const nav = el("nav", "tabs");
    const back = el("a", "tab", "sessions");
    back.href = "#/";
    nav.appendChild(back);
    for (const name of ["summary", "review"]) {
        const tab = el("a", name === screen ? "tab active" : "tab", name);
        tab.href = `#/${encodeURIComponent(session.session_id)}/${name}`;
        nav.appendChild(tab);
    }
    host.appendChild(nav);
    const body = el("div", "screen-body");
    host.appendChild(body);
    return body;
}
async function route() {
    if (!app)
        return;
    activeReview?.stop();
    activeReview = null;
    const { id, screen } = parseHash();
    if (sessions.length === 0) {
        try {
            sessions = await client.sessions();
        }
        catch (err) {
            renderError(app, `service unreachable: ${err instanceof Error ? err.message : String(err)}`);
            return;
        }
    }
    if (!id) {
        renderSessionList(app);
        return;
    }
    const session = sessions.find((s) => s.session_id === id);
    if (!session) {
        renderError(app, `unknown session '${id}'`);
        return;
    }
    app.textContent = "";
    const body = renderTabs(app, session, screen);
    try {
        if (screen === "review") {
            activeReview = await renderReview(body, client, session);
        }
        else {
            const summary = await client.summary(session.session_id);
            renderSummary(body, summary);
        }
    }
    catch (err) {
        if (err instanceof ApiError && err.status === 404) {
            renderError(body, `session '${id}' is not analyzed yet`);
        }
        else {
            renderError(body, `failed to load: ${err instanceof Error ? err.message : String(err)}`);
        }
    }
}
window.addEventListener("hashchange", () => {
    void route();
});
void route();
//# sourceMappingURL=main.js.map