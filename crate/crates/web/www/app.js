import init, { generate, score, path_length_histogram } from "./pkg/textworlds_web.js";

const $ = (id) => document.getElementById(id);

function showError(el, err) {
  el.textContent = String(err);
  el.classList.add("error");
}

function drawMap(rooms) {
  const c = $("map");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  if (rooms.length === 0) return;
  const xs = rooms.map((r) => r.x);
  const ys = rooms.map((r) => r.y);
  const minX = Math.min(...xs), maxY = Math.max(...ys);
  const cols = Math.max(...xs) - minX + 1;
  const rows = maxY - Math.min(...ys) + 1;
  const cell = Math.min((c.width - 20) / cols, (c.height - 20) / rows, 90);
  const at = (r) => [10 + (r.x - minX) * cell, 10 + (maxY - r.y) * cell];
  ctx.strokeStyle = "#999";
  for (const a of rooms) {
    for (const b of rooms) {
      if (Math.abs(a.x - b.x) + Math.abs(a.y - b.y) === 1) {
        const [ax, ay] = at(a), [bx, by] = at(b);
        ctx.beginPath();
        ctx.moveTo(ax + cell / 2, ay + cell / 2);
        ctx.lineTo(bx + cell / 2, by + cell / 2);
        ctx.stroke();
      }
    }
  }
  ctx.font = "12px system-ui";
  ctx.textAlign = "center";
  for (const r of rooms) {
    const [x, y] = at(r);
    ctx.fillStyle = "#e8f0fe";
    ctx.fillRect(x + 6, y + 6, cell - 12, cell - 12);
    ctx.strokeStyle = "#4a6fa5";
    ctx.strokeRect(x + 6, y + 6, cell - 12, cell - 12);
    ctx.fillStyle = "#222";
    ctx.fillText(r.name, x + cell / 2, y + cell / 2 + 4);
  }
}

function drawHistogram(h) {
  const c = $("hist");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const max = Math.max(...h.counts, 1);
  const w = (c.width - 20) / h.counts.length;
  ctx.font = "12px system-ui";
  ctx.textAlign = "center";
  h.counts.forEach((n, i) => {
    const bar = ((c.height - 40) * n) / max;
    ctx.fillStyle = "#4a6fa5";
    ctx.fillRect(10 + i * w + 4, c.height - 20 - bar, w - 8, bar);
    ctx.fillStyle = "#222";
    ctx.fillText(String(i + 1), 10 + i * w + w / 2, c.height - 5);
    ctx.fillText((n / h.samples).toFixed(2), 10 + i * w + w / 2, c.height - 24 - bar);
  });
}

function onGenerate() {
  const prefix = $("prefix");
  prefix.classList.remove("error");
  try {
    const v = JSON.parse(generate($("task").value, BigInt($("seed").value || 0)));
    prefix.textContent = v.scenario.prefix;
    $("target").textContent = v.scenario.target;
    $("tgt").value = v.scenario.target;
    drawMap(v.rooms);
  } catch (e) {
    showError(prefix, e);
  }
}

function onScore() {
  const s = JSON.parse(score($("pred").value, $("tgt").value));
  $("scores").textContent = `exact ${s.exact}\nsubstring ${s.substring.toFixed(4)}\nbleu ${s.bleu.toFixed(4)}`;
}

function onHistogram() {
  try {
    const h = JSON.parse(path_length_histogram($("mode").value, Number($("samples").value), 1n));
    drawHistogram(h);
  } catch (e) {
    showError($("status"), e);
  }
}

await init();
$("status").textContent = "Ready.";
$("gen").addEventListener("click", onGenerate);
$("score").addEventListener("click", onScore);
$("hist-run").addEventListener("click", onHistogram);
onGenerate();
