import init, { ordinal_report, check_dilator, compare_terms } from "./pkg/wpo_web.js";

const $ = (id) => document.getElementById(id);

function show(out, json, render) {
  const r = JSON.parse(json);
  out.classList.toggle("error", "error" in r);
  out.textContent = "error" in r ? r.error : render(r);
}

function ordinal() {
  show($("ord-out"), ordinal_report($("ord-expr").value), (r) => {
    const lines = [`${r.normalForm}  (${r.kind})`];
    if (r.fundamentalSequence.length) lines.push(`fundamental sequence: ${r.fundamentalSequence.join(", ")}, ...`);
    lines.push(`o(Seq) = ${r.seq}`, `o(M)   = ${r.multiset}`);
    return lines.join("\n");
  });
}

function check() {
  const out = $("chk-out");
  out.textContent = "checking...";
  // let the message paint before the synchronous check runs
  setTimeout(() => {
    const json = check_dilator(
      $("chk-spec").value,
      $("chk-prop").value,
      Number($("chk-poset").value),
      Number($("chk-elem").value),
    );
    show(out, json, (r) => r.text);
  }, 0);
}

function terms() {
  show($("tw-out"), compare_terms($("tw-spec").value, $("tw-s").value, $("tw-t").value), (r) =>
    [
      `s ${r.relation} t`,
      `s: length ${r.s.length}, height ${r.s.height}`,
      `t: length ${r.t.length}, height ${r.t.height}`,
    ].join("\n"),
  );
}

const leaves = { multiset: "( ; [] )", seq: "( ; ⟨⟩ )", "star(seq)": "( ; ⟨⟩ )" };

$("tw-spec").addEventListener("change", () => {
  const leaf = leaves[$("tw-spec").value];
  const multi = $("tw-spec").value === "multiset";
  $("tw-s").value = multi ? "( ( ; [] ) ; [0,0] )" : `( ${leaf} ; ⟨0,0⟩ )`;
  $("tw-t").value = multi ? "( ( ( ; [] ) ; [0] ) ; [0] )" : `( ( ${leaf} ; ⟨0⟩ ) ; ⟨0⟩ )`;
});

await init();
$("ord-go").addEventListener("click", ordinal);
$("chk-go").addEventListener("click", check);
$("tw-go").addEventListener("click", terms);
$("ord-expr").addEventListener("keydown", (e) => e.key === "Enter" && ordinal());
ordinal();
