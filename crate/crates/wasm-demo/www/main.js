import init, { blochView, regionView, landauRow } from "./pkg/pharmonic_wasm.js";

const $ = (id) => document.getElementById(id);

function show(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.classList.toggle("err", isError);
}

function drawBloch() {
  const p = Number($("bloch-p").value);
  const m = Number($("bloch-m").value);
  $("bloch-p-val").textContent = p;
  const canvas = $("bloch-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let view;
  try {
    view = blochView(p, m, 400);
  } catch (e) {
    show("bloch-out", e.message ?? String(e), true);
    return;
  }
  const curve = view.curve();
  let top = 0;
  for (let i = 1; i < curve.length; i += 2) top = Math.max(top, curve[i]);
  top *= 1.1;
  const pad = 30;
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  const x = (y) => pad + y * w;
  const yv = (v) => canvas.height - pad - (v / top) * h;

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, canvas.height - pad);
  ctx.lineTo(canvas.width - pad, canvas.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.fillText("0", pad - 4, canvas.height - pad + 14);
  ctx.fillText("1", canvas.width - pad - 4, canvas.height - pad + 14);
  ctx.fillText(top.toFixed(2), 2, pad);

  ctx.strokeStyle = "#1f5fbf";
  ctx.lineWidth = 2;
  ctx.beginPath();
  for (let i = 0; i < curve.length; i += 2) {
    const px = x(curve[i]);
    const py = yv(curve[i + 1]);
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  }
  ctx.stroke();
  ctx.lineWidth = 1;

  const y = view.yStar;
  if (!Number.isNaN(y)) {
    ctx.fillStyle = "#c0392b";
    ctx.beginPath();
    ctx.arc(x(y), yv(view.phiAtStar), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
  show(
    "bloch-out",
    `y*      = ${Number.isNaN(y) ? "degenerate (φ constant)" : y.toFixed(10)}\n` +
      `φ_p(y*) = ${view.phiAtStar.toFixed(10)}\n` +
      `bound   = ${view.bound.toFixed(10)}`,
  );
}

function drawRegion() {
  const p = Number($("region-p").value);
  const re = Number($("region-re").value);
  const im = Number($("region-im").value);
  const n = Number($("region-n").value);
  const canvas = $("region-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let view;
  try {
    view = regionView(p, re, im, n);
  } catch (e) {
    show("region-out", e.message ?? String(e), true);
    return;
  }
  const c = canvas.width / 2;
  const s = c - 10;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.arc(c, c, s, 0, 2 * Math.PI);
  ctx.stroke();
  ctx.fillStyle = "rgba(31, 95, 191, 0.6)";
  const pts = view.points();
  for (let i = 0; i < pts.length; i += 2) {
    ctx.fillRect(c + pts[i] * s - 1, c - pts[i + 1] * s - 1, 2, 2);
  }
  show("region-out", `${pts.length / 2} samples, coverage radius ${view.coverageRadius.toFixed(4)}`);
}

function solveLandau() {
  const thm = Number($("landau-thm").value);
  const m = Number($("landau-m").value);
  const p = Number($("landau-p").value);
  try {
    const [rho, r] = landauRow(thm, m, p);
    show("landau-out", `ρ = ${rho.toPrecision(8)}\nR = ${r.toPrecision(8)}`);
  } catch (e) {
    show("landau-out", e.message ?? String(e), true);
  }
}

await init();
for (const id of ["bloch-p", "bloch-m"]) $(id).addEventListener("input", drawBloch);
for (const id of ["region-p", "region-re", "region-im", "region-n"]) $(id).addEventListener("change", drawRegion);
for (const id of ["landau-thm", "landau-m", "landau-p"]) $(id).addEventListener("input", solveLandau);
drawBloch();
drawRegion();
solveLandau();
