import { PlaybackController } from "./playback.js";
import { ReviewSync, SliceCache } from "./sync.js";
import { drawCursor, drawEventStrip, drawTrace, drawWindowStrip, tintStale } from "./charts/series.js";
import { get2d } from "./charts/context.js";
import { traceAges, traceWindow, TRACE_SPAN_SECONDS } from "./trace.js";
import { formatClock, labelize } from "./format.js";
/** Strip panels show this much media time around the playhead. */
const VIEWPORT_SECONDS = 120;
function el(tag, className, text) {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text !== undefined)
        node.textContent = text;
    return node;
}
/** Sliding viewport [from, to] around the cursor, clamped to the session. */
export function viewport(time, duration, span = VIEWPORT_SECONDS) {
    if (duration <= span)
        return [0, duration];
    let from = time - span / 2;
    from = Math.max(0, Math.min(from, duration - span));
    return [from, from + span];
}
/** A canvas with a title bar, a stale badge, and a synchronized cursor. */
class StripPanel {
    draw;
    root;
    cursorTime = 0;
    status = "loading";
    canvas;
    ctx;
    badge;
    lastDrawn = -1;
    constructor(title, width, height, draw) {
        this.draw = draw;
        this.root = el("section", "panel review-panel");
        const bar = el("div", "panel-bar");
        bar.appendChild(el("h3", "panel-title", title));
        this.badge = el("span", "badge hidden", "stale");
        bar.appendChild(this.badge);
        this.root.appendChild(bar);
        this.canvas = el("canvas");
        this.canvas.width = width;
        this.canvas.height = height;
        this.root.appendChild(this.canvas);
        this.ctx = get2d(this.canvas);
    }
    setCursor(time) {
        this.cursorTime = time;
        // redraw only when the cursor moved enough to shift a pixel
        if (Math.abs(time - this.lastDrawn) < 0.02)
            return;
        this.render();
    }
    setStatus(status) {
        if (status === this.status)
            return;
        this.status = status;
        this.badge.textContent = status === "loading" ? "loading" : "stale";
        this.badge.classList.toggle("hidden", status === "fresh");
        this.render();
    }
    refresh() {
        this.render();
    }
    render() {
        this.lastDrawn = this.cursorTime;
        this.draw(this.ctx, this.canvas.width, this.canvas.height, this.cursorTime);
        if (this.status === "stale")
            tintStale(this.ctx, this.canvas.width, this.canvas.height);
    }
}
/** The transport row also follows the shared cursor, like any other panel. */
class ControlsPanel {
    timeLabel;
    seekBar;
    duration;
    dragging = false;
    constructor(timeLabel, seekBar, duration) {
        this.timeLabel = timeLabel;
        this.seekBar = seekBar;
        this.duration = duration;
    }
    setCursor(time) {
        this.timeLabel.textContent = `${formatClock(time)} / ${formatClock(this.duration)}`;
        if (!this.dragging)
            this.seekBar.value = String(time);
    }
    beginDrag() {
        this.dragging = true;
    }
    endDrag() {
        this.dragging = false;
    }
}
function browserModes(video, container) {
    return {
        async enter(mode) {
            if (mode === "fullscreen") {
                await container.requestFullscreen?.();
            }
            else if (mode === "pip" && "requestPictureInPicture" in video) {
                await video.requestPictureInPicture();
            }
        },
        async exit(mode) {
            if (mode === "fullscreen") {
                if (document.fullscreenElement)
                    await document.exitFullscreen();
            }
            else if (mode === "pip" && document.pictureInPictureElement) {
                await document.exitPictureInPicture();
            }
        },
    };
}
export async function renderReview(host, client, session) {
    host.textContent = "";
    const layout = el("div", "review");
    const main = el("div", "review-main");
    const side = el("aside", "event-list");
    layout.appendChild(main);
    layout.appendChild(side);
    host.appendChild(layout);
    // video + transport
    const videoWrap = el("div", "video-wrap");
    const video = el("video");
    video.preload = "auto";
    if (session.media_available) {
        video.src = client.mediaUrl(session.session_id);
    }
    else {
        videoWrap.appendChild(el("p", "insufficient", "no media file for this session"));
    }
    videoWrap.appendChild(video);
    main.appendChild(videoWrap);
    const controller = new PlaybackController(video, browserModes(video, videoWrap));
    const controls = el("div", "controls");
    const playBtn = el("button", "play-btn", "play");
    const timeLabel = el("span", "time-label", `0:00 / ${formatClock(session.duration)}`);
    const seekBar = el("input");
    seekBar.type = "range";
    seekBar.min = "0";
    seekBar.max = String(session.duration);
    seekBar.step = "0.1";
    seekBar.value = "0";
    const speedBar = el("input");
    speedBar.type = "range";
    speedBar.min = "1";
    speedBar.max = "3";
    speedBar.step = "0.05";
    speedBar.value = "1";
    const speedLabel = el("span", "speed-label", "1x");
    const pipBtn = el("button", undefined, "pip");
    const fullBtn = el("button", undefined, "fullscreen");
    controls.append(playBtn, timeLabel, seekBar, el("span", "speed-caption", "speed"), speedBar, speedLabel, pipBtn, fullBtn);
    main.appendChild(controls);
    playBtn.addEventListener("click", () => controller.togglePlay());
    video.addEventListener("play", () => (playBtn.textContent = "pause"));
    video.addEventListener("pause", () => (playBtn.textContent = "play"));
    video.addEventListener("enterpictureinpicture", () => (pipBtn.textContent = "exit pip"));
    video.addEventListener("leavepictureinpicture", () => {
        controller.noteModeExited("pip");
        pipBtn.textContent = "pip";
    });
    document.addEventListener("fullscreenchange", () => {
        if (!document.fullscreenElement)
            controller.noteModeExited("fullscreen");
    });
    speedBar.addEventListener("input", () => {
        const speed = controller.setSpeed(parseFloat(speedBar.value));
        speedBar.value = String(speed);
        speedLabel.textContent = `${speed}x`;
    });
    pipBtn.addEventListener("click", () => {
        void controller.setMode(controller.state().mode === "pip" ? "normal" : "pip");
    });
    fullBtn.addEventListener("click", () => {
        void controller.setMode(controller.state().mode === "fullscreen" ? "normal" : "fullscreen");
    });
    // synchronized panels over the slice cache
    const cache = new SliceCache(client, session.session_id, session.duration);
    const eventsPanel = new StripPanel("events", 640, 90, (ctx, w, h, t) => {
        const [from, to] = viewport(t, session.duration);
        drawEventStrip(ctx, w, h, cache.eventsAround(t), from, to);
        drawCursor(ctx, w, h, from, to, t);
    });
    const speechPanel = new StripPanel("speech fraction (10 s windows)", 640, 70, (ctx, w, h, t) => {
        const [from, to] = viewport(t, session.duration);
        drawWindowStrip(ctx, w, h, cache.windowsAround(t), from, to, "speech_fraction", 1);
        drawCursor(ctx, w, h, from, to, t);
    });
    const tracePanel = new StripPanel("position, past minute", 300, 200, (ctx, w, h, t) => {
        const samples = traceWindow(cache.trackAround(t), t, TRACE_SPAN_SECONDS);
        drawTrace(ctx, w, h, samples, traceAges(samples, t, TRACE_SPAN_SECONDS));
    });
    const controlsPanel = new ControlsPanel(timeLabel, seekBar, session.duration);
    seekBar.addEventListener("pointerdown", () => controlsPanel.beginDrag());
    seekBar.addEventListener("change", () => {
        controller.seekTo(parseFloat(seekBar.value));
        controlsPanel.endDrag();
    });
    const panelRow = el("div", "review-panels");
    const strips = el("div", "review-strips");
    strips.appendChild(eventsPanel.root);
    strips.appendChild(speechPanel.root);
    panelRow.appendChild(strips);
    panelRow.appendChild(tracePanel.root);
    main.appendChild(panelRow);
    const sync = new ReviewSync(video, cache, [eventsPanel, speechPanel, tracePanel, controlsPanel]);
    sync.start();
    // full-session event list for jump navigation
    side.appendChild(el("h3", "panel-title", "events"));
    const list = el("ul");
    side.appendChild(list);
    try {
        const slice = await client.timeline(session.session_id);
        renderEventList(list, slice.events, controller);
    }
    catch {
        list.appendChild(el("li", "insufficient", "timeline unavailable"));
    }
    return { stop: () => sync.stop() };
}
function renderEventList(list, events, controller) {
    for (const event of events) {
        const item = el("li", "event-row");
        const button = el("button", "event-jump");
        button.appendChild(el("span", "event-time", formatClock(event.start)));
        button.appendChild(el("span", "event-kind", labelize(event.kind)));
        button.appendChild(el("span", "event-source", event.source));
        button.addEventListener("click", () => controller.seekToEvent(event));
        item.appendChild(button);
        list.appendChild(item);
    }
    if (events.length === 0) {
        list.appendChild(el("li", "insufficient", "no events"));
    }
}
//# sourceMappingURL=review.js.map