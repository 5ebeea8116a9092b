import { Item, Scene } from "./scene.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function num(x: number): string {
  return Number(x.toFixed(3)).toString();
}

function item(it: Item): string {
  switch (it.kind) {
    case "rect": {
      const stroke = it.stroke ? ` stroke="${it.stroke}" stroke-width="1"` : "";
      return `<rect x="${num(it.x)}" y="${num(it.y)}" width="${num(it.w)}" height="${num(it.h)}" fill="${it.fill}"${stroke}/>`;
    }
    case "line": {
      const dash = it.dash ? ` stroke-dasharray="${it.dash.join(" ")}"` : "";
      return `<line x1="${num(it.x1)}" y1="${num(it.y1)}" x2="${num(it.x2)}" y2="${num(it.y2)}" stroke="${it.stroke}" stroke-width="${it.width ?? 1}"${dash}/>`;
    }
    case "polyline": {
      const pts = it.points.map(([x, y]) => `${num(x)},${num(y)}`).join(" ");
      const dash = it.dash ? ` stroke-dasharray="${it.dash.join(" ")}"` : "";
      return `<polyline points="${pts}" fill="none" stroke="${it.stroke}" stroke-width="${it.width ?? 1.5}"${dash} stroke-linejoin="round"/>`;
    }
    case "circle": {
      const stroke = it.stroke ? ` stroke="${it.stroke}" stroke-width="1"` : "";
      return `<circle cx="${num(it.cx)}" cy="${num(it.cy)}" r="${num(it.r)}" fill="${it.fill}"${stroke}/>`;
    }
    case "text":
      return (
        `<text x="${num(it.x)}" y="${num(it.y)}" font-size="${it.size}" fill="${it.fill}" ` +
        `text-anchor="${it.anchor}" font-family="Helvetica, Arial, sans-serif">${esc(it.text)}</text>`
      );
  }
}

export function toSvg(scene: Scene): string {
  const head =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" ` +
    `viewBox="0 0 ${scene.width} ${scene.height}">`;
  const bg = `<rect x="0" y="0" width="${scene.width}" height="${scene.height}" fill="${scene.background}"/>`;
  return [head, bg, ...scene.items.map(item), "</svg>", ""].join("\n");
}
