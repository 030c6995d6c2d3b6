export function get2d(canvas) {
    const ctx = canvas.getContext("2d");
    if (!ctx)
        throw new Error("canvas 2d context unavailable");
    // CanvasRenderingContext2D satisfies Draw2D at runtime; the style properties
    // are just wider (gradients, patterns) than the strings we assign.
    return ctx;
}
//# sourceMappingURL=context.js.map