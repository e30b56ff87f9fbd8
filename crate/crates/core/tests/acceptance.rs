//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wpo_core::dilator::DilatorSpec;
use wpo_core::kruskal::{Audit, TermSystem};
use wpo_core::normality::{
    check_dilator_quasi_embedding, check_property, replay, Bounds, Property, Transformation,
};
use wpo_core::order::{enumerate_posets, lower_set, FinitePoset};
use wpo_core::ordinal::{check_normal_function, otype_of, Ordinal, OrdinalMap, OtypeQuery};
use wpo_core::syntax::{format_element, parse_ordinal};
use wpo_core::verdict::{Counterexample, Verdict};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pass(v: &Verdict) -> Result<(), String> {
    ensure(v.passed(), || format!("expected pass, got:\n{}", v.to_text()))
}

fn check(spec: &DilatorSpec, p: Property, poset: usize, elem: usize) -> Result<Verdict, String> {
    check_property(spec, p, Bounds::new(poset, elem)).map_err(|e| e.to_string())
}

fn seq() -> DilatorSpec {
    DilatorSpec::Seq
}

fn mset() -> DilatorSpec {
    DilatorSpec::Multiset
}

fn ord(s: &str) -> Ordinal {
    parse_ordinal(s).expect("oracle literal parses")
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for spec in [seq(), mset(), DilatorSpec::Identity] {
        let v = check(&spec, Property::Axioms, 4, 3)?;
        pass(&v)?;
        total += v.instances_checked;
    }
    Ok(format!("seq, multiset, identity pass axioms at 4/3 ({total} instances)"))
}

/// The expected failure of strong normality for sequences.
fn is_two_chain_witness(v: &Verdict) -> Result<(), String> {
    let Some(Counterexample::Dilator(w)) = &v.counterexample else {
        return Err(format!("no dilator counterexample:\n{}", v.to_text()));
    };
    let chain = FinitePoset::with_closure(["0", "1"], [("0", "1")]).unwrap();
    ensure(
        w.clause == "strongly-normal"
            && w.posets == [chain.clone()]
            && w.posets[0].to_text() == chain.to_text()
            && w.elements.len() == 1
            && format_element(&w.posets[0], &w.elements[0].1) == "seq⟨0 0⟩"
            && w.points.len() == 1
            && w.posets[0].id(w.points[0].1) == "1",
        || format!("unexpected counterexample:\n{}", v.to_text()),
    )?;
    ensure(replay(&seq(), w) == Ok(true), || "counterexample does not replay".into())
}

fn criterion_2() -> Outcome {
    pass(&check(&seq(), Property::Normal, 4, 3)?)?;
    pass(&check(&seq(), Property::AczelNormal, 4, 3)?)?;
    for (p, e) in [(3, 3), (4, 4)] {
        let v = check(&seq(), Property::StronglyNormal, p, e)?;
        ensure(!v.passed(), || format!("seq passed strong normality at {p}/{e}"))?;
        is_two_chain_witness(&v)?;
    }
    pass(&check(&mset(), Property::StronglyNormal, 4, 4)?)?;
    let specs = [
        seq(),
        mset(),
        DilatorSpec::Identity,
        DilatorSpec::star(seq()),
        DilatorSpec::star(mset()),
        DilatorSpec::compose(mset(), seq()),
        DilatorSpec::compose(seq(), mset()),
        DilatorSpec::compose(seq(), seq()),
    ];
    for spec in &specs {
        for (p, e) in [(2, 3), (3, 3)] {
            let aczel = check(spec, Property::AczelNormal, p, e)?;
            let normal = check(spec, Property::Normal, p, e)?;
            ensure(!aczel.passed() || normal.passed(), || {
                format!("{spec}: aczel-normal passed but normal failed at {p}/{e}")
            })?;
        }
    }
    Ok("seq normal+aczel at 4/3, strong-normal witness (two-chain, ⟨0,0⟩, y=1), multiset strong at 4/4, aczel ⇒ normal on 8 specs".into())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for spec in [seq(), mset()] {
        for n in 0..=4 {
            for x in enumerate_posets(n, false).map_err(|e| e.to_string())? {
                for a in x.ids() {
                    let mu_a = spec.mu(&x, a).map_err(|e| e.to_string())?;
                    let supp = spec.support_ids(&x, &mu_a);
                    ensure(supp.len() == 1 && supp.contains(a), || format!("{spec}: supp(μ({a})) = {supp:?}"))?;
                    for b in x.ids() {
                        let mu_b = spec.mu(&x, b).map_err(|e| e.to_string())?;
                        let lhs = x.leq_ids(a, b).unwrap();
                        let rhs = spec.leq(&x, &mu_a, &mu_b).map_err(|e| e.to_string())?;
                        ensure(lhs == rhs, || format!("{spec}: μ is not an embedding at ({a},{b}) on\n{x}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("supp(μ(x)) = {{x}} and μ embeds, seq and multiset, posets ≤ 4 ({checked} pairs)"))
}

fn criterion_4() -> Outcome {
    let star_seq = DilatorSpec::star(seq());
    pass(&check(&star_seq, Property::StronglyNormal, 3, 3)?)?;
    let star_mset = DilatorSpec::star(mset());
    let mut compared = 0u64;
    for n in 0..=3 {
        for x in enumerate_posets(n, false).map_err(|e| e.to_string())? {
            let elems = mset().elements(&x, 3).map_err(|e| e.to_string())?;
            for s in &elems {
                for t in &elems {
                    let a = mset().leq(&x, s, t).unwrap();
                    let b = star_mset.leq(&x, s, t).unwrap();
                    ensure(a == b, || format!("star(multiset) differs on {} vs {}", format_element(&x, s), format_element(&x, t)))?;
                    compared += 1;
                }
            }
        }
    }
    let b = Bounds::new(3, 3);
    let id = check_dilator_quasi_embedding(Transformation::IdentityCarrier, &star_seq, &seq(), b).map_err(|e| e.to_string())?;
    pass(&id)?;
    let ms = check_dilator_quasi_embedding(Transformation::MsetToSeq, &mset(), &star_seq, b).map_err(|e| e.to_string())?;
    pass(&ms)?;
    Ok(format!("star(seq) strongly normal, star(multiset) = multiset on {compared} pairs, identity-carrier and mset-to-seq quasi embeddings"))
}

fn criterion_5() -> Outcome {
    let sys = TermSystem::new(mset()).map_err(|e| e.to_string())?;
    let po = sys.audit(Audit::PartialOrder, 7).map_err(|e| e.to_string())?;
    pass(&po)?;
    let fp = sys.audit(Audit::FixedPointEq, 6).map_err(|e| e.to_string())?;
    pass(&fp)?;
    let wide = TermSystem::new(mset()).and_then(|s| s.with_kernel_bound(4)).map_err(|e| e.to_string())?;
    pass(&wide.audit(Audit::PartialOrder, 7).map_err(|e| e.to_string())?)?;
    pass(&wide.audit(Audit::FixedPointEq, 6).map_err(|e| e.to_string())?)?;
    Ok(format!(
        "multiset partial-order ≤ 7 ({} instances), fixed-point-eq ≤ 6 ({} instances), also at kernel bound 4",
        po.instances_checked, fp.instances_checked
    ))
}

fn criterion_6() -> Outcome {
    for spec in [mset(), DilatorSpec::star(seq())] {
        for k in [2, 4] {
            let sys = TermSystem::new(spec.clone()).and_then(|s| s.with_kernel_bound(k)).map_err(|e| e.to_string())?;
            pass(&sys.audit(Audit::HeightLemma, 7).map_err(|e| e.to_string())?)?;
        }
    }
    let sys = TermSystem::new(seq()).map_err(|e| e.to_string())?;
    let v = sys.audit(Audit::HeightLemma, 7).map_err(|e| e.to_string())?;
    let Some(Counterexample::Terms(w)) = &v.counterexample else {
        return Err(format!("seq passed the height lemma:\n{}", v.to_text()));
    };
    let shown: Vec<String> = w.terms.iter().map(ToString::to_string).collect();
    ensure(
        shown == ["( ( ; ⟨⟩ ) ; ⟨0,0⟩ )", "( ( ( ; ⟨⟩ ) ; ⟨0⟩ ) ; ⟨0⟩ )"]
            && w.terms.iter().map(|t| t.height()).collect::<Vec<_>>() == [1, 2],
        || format!("unexpected pair:\n{}", v.to_text()),
    )?;
    ensure(!sys.leq(&w.terms[0], &w.terms[1]), || "pair is comparable".into())?;
    ensure(!v.notes.is_empty(), || "missing strong-normality note".into())?;
    let wide = TermSystem::new(seq()).and_then(|s| s.with_kernel_bound(4)).map_err(|e| e.to_string())?;
    ensure(!wide.audit(Audit::HeightLemma, 7).map_err(|e| e.to_string())?.passed(), || {
        "seq passed the height lemma at kernel bound 4".into()
    })?;
    Ok("multiset and star(seq) pass at ≤ 7 (kernel bounds 2 and 4); seq fails with heights (1,2)".into())
}

const PROBES: [(&str, &str); 11] = [
    ("0", "1"),
    ("1", "w"),
    ("2", "w^w"),
    ("3", "w^(w^2)"),
    ("w", "w^(w^w)"),
    ("w+1", "w^(w^(w+1))"),
    ("w^w", "w^(w^(w^w))"),
    ("phi(1,0)", "w^(w^(phi(1,0)+1))"),
    ("phi(1,0)+2", "w^(w^(phi(1,0)+3))"),
    ("phi(1,1)", "w^(w^(phi(1,1)+1))"),
    ("phi(2,0)", "w^(w^(phi(2,0)+1))"),
];

fn criterion_7() -> Outcome {
    for (arg, seq_value) in PROBES {
        let a = ord(arg);
        let got = otype_of(&OtypeQuery::Seq(a.clone()));
        ensure(got == ord(seq_value), || format!("o(Seq({arg})) = {got}, expected {seq_value}"))?;
        let m = otype_of(&OtypeQuery::Multiset(a.clone()));
        let expected = ord(&format!("w^({arg})"));
        ensure(m == expected, || format!("o(M({arg})) = {m}, expected {expected}"))?;
    }
    Ok(format!("{} probes, seq and multiset", PROBES.len()))
}

fn normal_probes() -> Vec<Ordinal> {
    ["w", "w^2", "w^w", "phi(1,0)", "phi(1,1)"].map(ord).to_vec()
}

fn criterion_8() -> Outcome {
    let probes = normal_probes();
    for f in [OrdinalMap::MultisetOtype, OrdinalMap::OmegaPow] {
        pass(&check_normal_function(f, &probes, 200, 0).map_err(|e| e.to_string())?)?;
    }
    let v = check_normal_function(OrdinalMap::SeqOtype, &probes, 200, 0).map_err(|e| e.to_string())?;
    let Some(Counterexample::Continuity(c)) = &v.counterexample else {
        return Err(format!("seq-otype did not fail continuity:\n{}", v.to_text()));
    };
    let expected: Vec<(Ordinal, Ordinal)> = [
        ("phi(1,0)", "w^(w^(phi(1,0)+1))"),
        ("phi(1,1)", "w^(w^(phi(1,1)+1))"),
    ]
    .map(|(a, b)| (ord(a), ord(b)))
    .to_vec();
    let got: Vec<(Ordinal, Ordinal)> = c.gaps.iter().map(|g| (g.sup.clone(), g.value.clone())).collect();
    ensure(got == expected, || format!("gap pairs differ:\n{}", v.to_text()))?;
    ensure(c.gaps.iter().zip(&expected).all(|(g, (e, _))| g.limit == *e), || "gap limits differ".into())?;
    for lambda in ["w", "w^w"] {
        let note = format!("continuity at {}: holds", ord(lambda));
        ensure(v.notes.contains(&note), || format!("missing `{note}`:\n{}", v.to_text()))?;
    }
    Ok("multiset-otype and omega-pow normal; seq-otype gaps exactly at phi(1,0), phi(1,1)".into())
}

fn criterion_9() -> Outcome {
    let probes = normal_probes();
    let mut summary = Vec::new();
    for (spec, f) in [(seq(), OrdinalMap::SeqOtype), (mset(), OrdinalMap::MultisetOtype)] {
        pass(&check(&spec, Property::Flat, 3, 3)?)?;
        pass(&check(&spec, Property::GraphLike, 3, 3)?)?;
        let strong = check(&spec, Property::StronglyNormal, 4, 4)?.passed();
        let normal = check_normal_function(f, &probes, 200, 0).map_err(|e| e.to_string())?.passed();
        ensure(strong == normal, || format!("{spec}: strongly-normal {strong} vs normal-function {normal}"))?;
        let word = |b: bool| if b { "pass" } else { "fail" };
        summary.push(format!("{spec} {}/{}", word(strong), word(normal)));
    }
    ensure(summary == ["seq fail/fail", "multiset pass/pass"], || summary.join(", "))?;
    Ok(summary.join(", "))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for n in 0..=4 {
        for x in enumerate_posets(n, false).map_err(|e| e.to_string())? {
            let best = x
                .ids()
                .iter()
                .map(|id| lower_set(&x, id).unwrap().len() + 1)
                .max()
                .unwrap_or(0);
            ensure(best == x.len(), || format!("max |L(x)|+1 = {best} on\n{x}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} labeled posets"))
}

fn criterion_11(elapsed: Duration) -> Outcome {
    ensure(elapsed <= Duration::from_secs(30 * 60), || format!("suite took {elapsed:?}"))?;
    let json = |v: &Verdict| serde_json::to_string(v).unwrap();
    let a = json(&check(&seq(), Property::StronglyNormal, 3, 3)?);
    let b = json(&check(&seq(), Property::StronglyNormal, 3, 3)?);
    ensure(a == b, || "checker output differs between runs".into())?;
    let probes = normal_probes();
    for seed in [0, 7] {
        let x = json(&check_normal_function(OrdinalMap::SeqOtype, &probes, 200, seed).unwrap());
        let y = json(&check_normal_function(OrdinalMap::SeqOtype, &probes, 200, seed).unwrap());
        ensure(x == y, || format!("normal-function output differs for seed {seed}"))?;
    }
    let audit = || {
        let sys = TermSystem::new(seq()).unwrap();
        json(&sys.audit(Audit::HeightLemma, 7).unwrap())
    };
    ensure(audit() == audit(), || "term audit output differs between runs".into())?;
    Ok(format!("criteria 1-10 took {:.1}s; repeated runs identical", elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("dilator axioms", criterion_1),
        ("normality hierarchy", criterion_2),
        ("unit laws", criterion_3),
        ("strongly normal completion", criterion_4),
        ("Kruskal fixed point", criterion_5),
        ("height lemma", criterion_6),
        ("ordinal golden table", criterion_7),
        ("normal-function analyzer", criterion_8),
        ("strong normality vs normal functions", criterion_9),
        ("finite order types", criterion_10),
    ];
    let mut failures = 0;
    let mut report = |k: usize, name: &str, result: Outcome, took: Duration| {
        match result {
            Ok(detail) => println!("criterion {k:>2} [{name}]: PASS ({detail}; {:.2}s)", took.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("criterion {k:>2} [{name}]: FAIL ({:.2}s)\n{why}", took.as_secs_f64());
            }
        }
    };
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        report(k + 1, name, result, t.elapsed());
    }
    let t = Instant::now();
    let result = criterion_11(start.elapsed());
    report(11, "runtime and determinism", result, t.elapsed());
    if failures == 0 {
        println!("acceptance: 11/11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
