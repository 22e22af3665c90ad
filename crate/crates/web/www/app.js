import init, { grover_curve, gms_curves, rref_apply } from "./pkg/qgms_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, series, hlines = []) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  ctx.clearRect(0, 0, w, h);
  const tMax = Math.max(1, ...series.flatMap((s) => s.points.map((p) => p[0])));
  const x = (t) => pad + (t / tMax) * (w - 2 * pad);
  const y = (p) => h - pad - p * (h - 2 * pad);
  ctx.strokeStyle = "#888";
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  ctx.moveTo(pad, y(1)); ctx.lineTo(pad, y(0)); ctx.lineTo(x(tMax), y(0));
  ctx.stroke();
  ctx.fillText("1", 10, y(1) + 4);
  ctx.fillText("0", 10, y(0) + 4);
  ctx.fillText(String(tMax), x(tMax) - 8, h - 10);
  for (const { value, color } of hlines) {
    ctx.strokeStyle = color;
    ctx.setLineDash([4, 4]);
    ctx.beginPath(); ctx.moveTo(pad, y(value)); ctx.lineTo(x(tMax), y(value)); ctx.stroke();
    ctx.setLineDash([]);
  }
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    s.points.forEach(([t, p], i) => (i ? ctx.lineTo(x(t), y(p)) : ctx.moveTo(x(t), y(p))));
    ctx.stroke();
    if (s.dots) {
      ctx.fillStyle = s.color;
      for (const [t, p] of s.points) ctx.fillRect(x(t) - 2, y(p) - 2, 4, 4);
    }
  }
}

function guard(infoId, f) {
  try {
    f();
  } catch (e) {
    $(infoId).innerHTML = `<span class="err">${e.message ?? e}</span>`;
  }
}

function runGrover() {
  guard("g-info", () => {
    const v = JSON.parse(grover_curve(num("g-q"), num("g-t")));
    $("g-info").textContent = `N = ${v.n}, optimal iterations from the series: ${v.series == null ? "n/a" : v.series.toFixed(2)}`;
    plot($("g-plot"), [
      { color: "#999", points: v.points.map((p) => [p.t, p.closed_form]) },
      { color: "#c33", dots: true, points: v.points.map((p) => [p.t, p.simulated]) },
    ]);
  });
}

function runGms() {
  guard("k-info", () => {
    $("k-info").textContent = "running...";
    const v = JSON.parse(gms_curves(num("k-m"), num("k-n"), num("k-l"), num("k-t"), num("k-s")));
    const best = Math.max(...v.curve.map((p) => p.p_marked));
    $("k-info").textContent =
      `marked outcomes ${v.n_support}, r = ${v.r_support}, P_max = ${v.p_max.toFixed(4)} ` +
      `(estimate ${v.p_max_estimate.toFixed(4)}), best simulated ${best.toFixed(4)}`;
    plot(
      $("k-plot"),
      [
        { color: "#c33", dots: true, points: v.curve.map((p) => [p.t, p.p_marked]) },
        { color: "#36c", points: v.qaa_curve.map((p) => [p.t, p.p_marked]) },
        { color: "#393", points: v.hybrid.map((p) => [p.t, p.p_key]) },
      ],
      [{ value: v.p_max, color: "#999" }],
    );
  });
}

function runRref() {
  guard("r-info", () => {
    const v = JSON.parse(rref_apply($("r-in").value));
    const r = v.resources;
    $("r-info").innerHTML =
      `circuit output: <code>${v.circuit_output.join(" / ")}</code>, classical: <code>${v.classical.join(" / ")}</code>, ` +
      `rank ${v.rank}, ${v.matches ? "match" : "MISMATCH"}<br>` +
      `${v.qubits} qubits, ${v.gates} gates, ${JSON.stringify(r)}`;
    $("r-net").textContent = v.netlist;
  });
}

await init();
$("g-run").onclick = runGrover;
$("k-run").onclick = runGms;
$("r-run").onclick = runRref;
runGrover();
runRref();
