/**
 * Hand-rolled SVG charts: an affect time series with vertical course-event
 * bars, and a simple value bar chart. No chart library, no client-side
 * statistics — only coordinate scaling of values the API already computed.
 */

const SVG_NS = "http://www.w3.org/2000/svg";

function svg(tag: string, attrs: Record<string, string | number>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

export interface TimePoint {
  time: string; // RFC 3339
  value: number;
}

export interface EventMarker {
  date: string; // calendar date
  label: string;
  kind: string;
}

const WIDTH = 720;
const HEIGHT = 220;
const PAD = { left: 36, right: 12, top: 12, bottom: 28 };

/** Affect line chart; event markers are drawn even when the series is empty. */
export function lineChart(points: TimePoint[], events: EventMarker[]): SVGSVGElement {
  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "line-chart",
    role: "img",
  }) as SVGSVGElement;

  const times = points.map((p) => Date.parse(p.time));
  const eventTimes = events.map((e) => Date.parse(`${e.date}T12:00:00Z`));
  const all = times.concat(eventTimes);
  const minT = all.length ? Math.min(...all) : 0;
  const maxT = all.length ? Math.max(...all) : 1;
  const spanT = maxT - minT || 1;
  const x = (t: number) =>
    PAD.left + ((t - minT) / spanT) * (WIDTH - PAD.left - PAD.right);
  const y = (v: number) =>
    HEIGHT - PAD.bottom - ((v - 1) / 9) * (HEIGHT - PAD.top - PAD.bottom);

  // y axis: the 1..10 score range
  for (const tick of [1, 5, 10]) {
    chart.appendChild(svg("line", {
      x1: PAD.left, x2: WIDTH - PAD.right, y1: y(tick), y2: y(tick), class: "grid",
    }));
    const label = svg("text", { x: 4, y: y(tick) + 4, class: "tick" });
    label.textContent = String(tick);
    chart.appendChild(label);
  }

  // vertical course-event bars with labels
  for (const event of events) {
    const ex = x(Date.parse(`${event.date}T12:00:00Z`));
    chart.appendChild(svg("line", {
      x1: ex, x2: ex, y1: PAD.top, y2: HEIGHT - PAD.bottom,
      class: `event-bar event-${event.kind}`,
      "data-kind": event.kind,
      "data-label": event.label,
    }));
    const text = svg("text", {
      x: ex, y: HEIGHT - 8, class: "event-label", "text-anchor": "middle",
    });
    text.textContent = event.label;
    chart.appendChild(text);
  }

  if (points.length === 0) {
    const placeholder = svg("text", {
      x: WIDTH / 2, y: HEIGHT / 2, class: "placeholder", "text-anchor": "middle",
    });
    placeholder.textContent = "no data in range";
    chart.appendChild(placeholder);
    return chart;
  }

  const path = points
    .map((p, i) => `${i ? "L" : "M"}${x(Date.parse(p.time))},${y(p.value)}`)
    .join(" ");
  chart.appendChild(svg("path", { d: path, class: "series" }));
  for (const p of points) {
    chart.appendChild(svg("circle", {
      cx: x(Date.parse(p.time)), cy: y(p.value), r: 3,
      class: "point", "data-value": p.value,
    }));
  }
  return chart;
}

export interface BarItem {
  label: string;
  value: number;
  cssClass?: string;
}

/** Horizontal-axis bar chart; bar heights proportional to values. */
export function barChart(items: BarItem[], maxValue?: number): SVGSVGElement {
  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "bar-chart",
    role: "img",
  }) as SVGSVGElement;
  const top = maxValue ?? Math.max(1, ...items.map((i) => i.value));
  const innerW = WIDTH - PAD.left - PAD.right;
  const slot = items.length ? innerW / items.length : innerW;
  const barW = Math.min(56, slot * 0.6);

  items.forEach((item, i) => {
    const h = (item.value / top) * (HEIGHT - PAD.top - PAD.bottom);
    const cx = PAD.left + slot * i + slot / 2;
    chart.appendChild(svg("rect", {
      x: cx - barW / 2,
      y: HEIGHT - PAD.bottom - h,
      width: barW,
      height: h,
      class: `bar ${item.cssClass ?? ""}`.trim(),
      "data-value": item.value,
      "data-label": item.label,
    }));
    const value = svg("text", {
      x: cx, y: HEIGHT - PAD.bottom - h - 4, class: "bar-value", "text-anchor": "middle",
    });
    value.textContent = String(item.value);
    chart.appendChild(value);
    const label = svg("text", {
      x: cx, y: HEIGHT - 8, class: "bar-label", "text-anchor": "middle",
    });
    label.textContent = item.label;
    chart.appendChild(label);
  });
  return chart;
}
