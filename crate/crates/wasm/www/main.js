import init, { latticeSvg, levelTable, refinementSvg } from "./pkg/smirnov_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guard(f) {
  $("error").textContent = "";
  try {
    f();
  } catch (e) {
    $("error").textContent = String(e);
  }
}

function showLevels() {
  const m = num("m"), n = num("n");
  $("picture").innerHTML = latticeSvg(m, n);
  const doc = JSON.parse(levelTable(m, n, num("digits")));
  const rows = doc.levels
    .map((l) => `<tr><td>${l.r}</td><td>${l.profile}</td><td>${l.level}</td><td>${l.decimal}</td></tr>`)
    .join("");
  $("summary").innerHTML = `
    <p>${doc.total_paths} paths, ${doc.natural_levels} natural levels,
       ${doc.saturated_levels} levels after saturated refinement.<br>
       ${doc.refinements} refinements, ${doc.saturated_refinements} saturated.</p>
    <table><tr><th>r</th><th>profile</th><th>level</th><th>decimal</th></tr>${rows}</table>`;
}

function showRefinement() {
  $("picture").innerHTML = refinementSvg(num("m"), num("n"), num("index"), $("saturated").checked);
}

await init();
$("draw").addEventListener("click", () => guard(showLevels));
$("refine").addEventListener("click", () => guard(showRefinement));
guard(showLevels);
