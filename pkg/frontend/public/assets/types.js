/**
 * Document shapes served by the session review service. The dashboard never
 * recomputes analytics; everything rendered comes straight from these payloads.
 */
export {};
//# sourceMappingURL=types.js.map