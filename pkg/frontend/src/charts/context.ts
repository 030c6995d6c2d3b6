/**
 * The slice of CanvasRenderingContext2D the charts actually use. Tests drive
 * the drawing code with a recording stub of this interface; the browser path
 * goes through get2d below.
 */
export interface Draw2D {
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  font: string;
  textAlign: string;
  textBaseline: string;
  globalAlpha: number;
  save(): void;
  restore(): void;
  beginPath(): void;
  closePath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, radius: number, startAngle: number, endAngle: number, counterclockwise?: boolean): void;
  rect(x: number, y: number, width: number, height: number): void;
  fill(): void;
  stroke(): void;
  fillRect(x: number, y: number, width: number, height: number): void;
  clearRect(x: number, y: number, width: number, height: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
}

export function get2d(canvas: HTMLCanvasElement): Draw2D {
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  // CanvasRenderingContext2D satisfies Draw2D at runtime; the style properties
  // are just wider (gradients, patterns) than the strings we assign.
  return ctx as unknown as Draw2D;
}
