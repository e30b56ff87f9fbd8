use std::sync::Arc;

use wpo_core::dilator::{DilatorElement, DilatorSpec};
use wpo_core::normality::{
    check_dilator_quasi_embedding, check_property, mset_to_seq_partial_report, replay, star_completion, Bounds,
    Property, Transformation,
};
use wpo_core::order::{enumerate_posets, FinitePoset};
use wpo_core::syntax::{format_element, parse_spec};
use wpo_core::verdict::{Counterexample, DilatorWitness, Outcome, Verdict};
use wpo_core::Error;

fn specs() -> Vec<DilatorSpec> {
    [
        "seq",
        "multiset",
        "identity",
        "star(seq)",
        "star(multiset)",
        "star(identity)",
        "compose(multiset,seq)",
        "compose(seq,multiset)",
        "compose(seq,identity)",
    ]
    .iter()
    .map(|s| parse_spec(s).unwrap())
    .collect()
}

fn check(spec: &DilatorSpec, property: Property, p: usize, e: usize) -> Verdict {
    check_property(spec, property, Bounds::new(p, e)).unwrap()
}

fn witness(v: &Verdict) -> &DilatorWitness {
    match v.counterexample.as_ref().expect("failing verdict has a counterexample") {
        Counterexample::Dilator(w) => w,
        other => panic!("unexpected counterexample {other:?}"),
    }
}

fn shapes(max: usize) -> Vec<Arc<FinitePoset>> {
    (0..=max).flat_map(|n| enumerate_posets(n, true).unwrap()).map(Arc::new).collect()
}

#[test]
fn every_verdict_is_consistent_and_failures_replay() {
    for spec in specs() {
        for property in Property::ALL {
            let v = check(&spec, property, 3, 2);
            assert_eq!(v.passed(), v.counterexample.is_none(), "{spec} {property}");
            assert_eq!(v.bounds["maxPosetSize"], 3);
            assert_eq!(v.property, property.name());
            if !v.passed() {
                assert!(replay(&spec, witness(&v)).unwrap(), "{spec} {property} does not replay");
            }
        }
    }
}

#[test]
fn aczel_normal_implies_normal() {
    for spec in specs() {
        for (p, e) in [(2, 3), (3, 2), (3, 3)] {
            if check(&spec, Property::AczelNormal, p, e).passed() {
                assert!(check(&spec, Property::Normal, p, e).passed(), "{spec} at {p}/{e}");
            }
        }
    }
}

#[test]
fn strongly_normal_implies_remark_condition() {
    for spec in specs() {
        if check(&spec, Property::StronglyNormal, 3, 2).passed() {
            assert!(check(&spec, Property::RemarkCondition, 3, 2).passed(), "{spec}");
        }
    }
}

#[test]
fn star_of_aczel_normal_is_strongly_normal() {
    for spec in specs() {
        let Ok(star) = star_completion(&spec) else { continue };
        if check(&spec, Property::AczelNormal, 3, 2).passed() {
            assert!(check(&star, Property::Axioms, 3, 2).passed(), "{star}");
            assert!(check(&star, Property::StronglyNormal, 3, 2).passed(), "{star}");
        }
    }
}

#[test]
fn built_in_hierarchy() {
    for spec in [DilatorSpec::Seq, DilatorSpec::Multiset] {
        assert!(check(&spec, Property::Normal, 4, 3).passed());
        assert!(check(&spec, Property::AczelNormal, 4, 3).passed());
        assert!(check(&spec, Property::Flat, 3, 3).passed());
        assert!(check(&spec, Property::GraphLike, 3, 3).passed());
    }
    assert!(check(&DilatorSpec::Multiset, Property::StronglyNormal, 4, 3).passed());
    assert!(check(&DilatorSpec::Multiset, Property::StronglyNormalLinear, 4, 4).passed());
    assert!(!check(&DilatorSpec::Seq, Property::StronglyNormalLinear, 3, 3).passed());
}

/// Brute force over the strong-normality premise for seq: the least poset
/// and element size with `supp σ < y` but `σ ≰ ⟨y⟩`.
#[test]
fn seq_strong_normality_witness_is_minimal() {
    let seq = DilatorSpec::Seq;
    let mut least: Option<(usize, usize)> = None;
    for x in shapes(3) {
        for s in seq.elements(&x, 3).unwrap() {
            for y in 0..x.len() {
                let premise = seq.support(&s).iter().all(|&i| x.lt(i, y));
                let mu = seq.mu(&x, x.id(y)).unwrap();
                if premise && !seq.leq(&x, &s, &mu).unwrap() {
                    let key = (x.len(), s.size());
                    least = Some(least.map_or(key, |k| k.min(key)));
                }
            }
        }
    }
    assert_eq!(least, Some((2, 2)));

    let v = check(&seq, Property::StronglyNormal, 3, 3);
    let w = witness(&v);
    assert_eq!(v.result, Outcome::Fail);
    assert_eq!(w.clause, "strongly-normal");
    assert_eq!(w.posets, vec![FinitePoset::chain(2)]);
    assert_eq!(w.elements[0].1.size(), 2);
    assert_eq!(format_element(&w.posets[0], &w.elements[0].1), "seq⟨0 0⟩");
    assert_eq!(w.points, vec![(0, 1)]);
}

#[test]
fn star_order_matches_its_definition() {
    let seq = DilatorSpec::Seq;
    let star = DilatorSpec::star(seq.clone());
    for x in shapes(3) {
        let elems = seq.elements(&x, 3).unwrap();
        for s in &elems {
            for t in &elems {
                let lifted = seq.support(t).iter().any(|&y| seq.support(s).iter().all(|&i| x.lt(i, y)));
                let expected = seq.leq(&x, s, t).unwrap() || lifted;
                assert_eq!(star.leq(&x, s, t).unwrap(), expected);
            }
        }
    }
    let two = FinitePoset::chain(2);
    assert!(star.leq(&two, &DilatorElement::seq_of_points([0, 0]), &DilatorElement::seq_of_points([1])).unwrap());
}

#[test]
fn star_of_multiset_adds_nothing() {
    let m = DilatorSpec::Multiset;
    let star = DilatorSpec::star(m.clone());
    for x in shapes(3) {
        let elems = m.elements(&x, 3).unwrap();
        for s in &elems {
            assert_eq!(star.support(s), m.support(s));
            for t in &elems {
                assert_eq!(star.leq(&x, s, t).unwrap(), m.leq(&x, s, t).unwrap());
            }
        }
    }
}

#[test]
fn star_flatness_is_measured() {
    // no claim either way; the verdicts only have to be well formed
    for spec in [DilatorSpec::star(DilatorSpec::Seq), DilatorSpec::star(DilatorSpec::Multiset)] {
        for property in [Property::Flat, Property::GraphLike] {
            let v = check(&spec, property, 3, 2);
            if !v.passed() {
                assert!(replay(&spec, witness(&v)).unwrap());
            }
        }
    }
}

#[test]
fn registered_quasi_embeddings() {
    let b = Bounds::new(3, 3);
    let seq = DilatorSpec::Seq;
    let mset = DilatorSpec::Multiset;
    let star = DilatorSpec::star(seq.clone());
    assert!(check_dilator_quasi_embedding(Transformation::MsetToSeq, &mset, &seq, b).unwrap().passed());
    assert!(check_dilator_quasi_embedding(Transformation::MsetToSeq, &mset, &star, b).unwrap().passed());
    assert!(check_dilator_quasi_embedding(Transformation::IdentityCarrier, &star, &seq, b).unwrap().passed());

    let back = check_dilator_quasi_embedding(Transformation::IdentityCarrier, &seq, &star, b).unwrap();
    assert!(!back.passed());
    let w = witness(&back);
    assert_eq!(w.posets, vec![FinitePoset::chain(2)]);

    assert!(matches!(
        check_dilator_quasi_embedding(Transformation::MsetToSeq, &seq, &mset, b),
        Err(Error::TransformationMismatch { .. })
    ));
    assert!(matches!("frobnicate".parse::<Transformation>(), Err(Error::UnknownTransformation(_))));
    assert_eq!("msetToSeq".parse::<Transformation>().unwrap(), Transformation::MsetToSeq);
}

#[test]
fn mset_to_seq_report_on_partial_orders() {
    let v = mset_to_seq_partial_report(Bounds::new(4, 3)).unwrap();
    assert!(v.passed(), "{}", v.to_text());
    assert!(v.instances_checked > 0);
}

#[test]
fn bounds_are_guarded() {
    assert!(matches!(
        check_property(&DilatorSpec::Seq, Property::Normal, Bounds::new(6, 2)),
        Err(Error::BoundExceeded { .. })
    ));
    assert!(matches!(
        check_property(&DilatorSpec::Seq, Property::Normal, Bounds::new(2, 7)),
        Err(Error::BoundExceeded { .. })
    ));
    assert!(matches!("nonsense".parse::<Property>(), Err(_)));
    for property in Property::ALL {
        assert_eq!(property.name().parse::<Property>().unwrap(), property);
    }
}

#[test]
fn verdicts_are_deterministic() {
    let a = check(&DilatorSpec::Seq, Property::StronglyNormal, 3, 3);
    let b = check(&DilatorSpec::Seq, Property::StronglyNormal, 3, 3);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.instances_checked, b.instances_checked);
    let json: serde_json::Value = serde_json::to_value(&a).unwrap();
    assert_eq!(json["result"], "fail");
    assert_eq!(json["counterexample"]["clause"], "strongly-normal");
    assert!(json["instancesChecked"].as_u64().unwrap() > 0);
}
