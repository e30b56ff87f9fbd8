//! Bounded pass/fail reports with replayable counterexamples.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::dilator::DilatorElement;
use crate::kruskal::KruskalTerm;
use crate::order::{FinitePoset, OrderMap};
use crate::ordinal::Ordinal;
use crate::syntax::format_element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub property: String,
    pub subject: String,
    pub result: Outcome,
    pub bounds: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(rename = "instancesChecked")]
    pub instances_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(property: impl Into<String>, subject: impl Into<String>, bounds: &[(&str, u64)]) -> Self {
        Verdict {
            property: property.into(),
            subject: subject.into(),
            result: Outcome::Pass,
            bounds: bounds.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            counterexample: None,
            instances_checked: 0,
            measure: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    pub(crate) fn fail_with(mut self, cx: Counterexample) -> Self {
        self.result = Outcome::Fail;
        self.counterexample = Some(cx);
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let result = match self.result {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        };
        let bounds: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(
            out,
            "{} {}: {} ({}; {} instances)",
            self.subject,
            self.property,
            result,
            bounds.join(", "),
            self.instances_checked
        );
        if let Some(m) = self.measure {
            let _ = writeln!(out, "  measure: {m}");
        }
        if let Some(cx) = &self.counterexample {
            out.push_str(&cx.to_text());
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Counterexample {
    Dilator(DilatorWitness),
    Terms(TermWitness),
    Monotonicity(MonotonicityWitness),
    Continuity(ContinuityWitness),
}

impl Counterexample {
    pub fn clause(&self) -> &str {
        match self {
            Counterexample::Dilator(w) => w.clause,
            Counterexample::Terms(w) => w.clause,
            Counterexample::Monotonicity(_) => "monotonicity",
            Counterexample::Continuity(_) => "continuity",
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "  clause: {}", self.clause());
        match self {
            Counterexample::Dilator(w) => {
                for (k, p) in w.posets.iter().enumerate() {
                    let _ = writeln!(out, "  poset {k}: {}", p.to_text().replace('\n', " | "));
                }
                for m in &w.maps {
                    let _ = writeln!(out, "  map: {}", m.to_text());
                }
                for (home, e) in &w.elements {
                    let _ = writeln!(out, "  element (poset {home}): {}", format_element(&w.posets[*home], e));
                }
                for (home, p) in &w.points {
                    let _ = writeln!(out, "  point (poset {home}): {}", w.posets[*home].id(*p));
                }
            }
            Counterexample::Terms(w) => {
                for t in &w.terms {
                    let _ = writeln!(out, "  term: {t}  (length {}, height {})", t.length(), t.height());
                }
            }
            Counterexample::Monotonicity(w) => {
                let _ = writeln!(out, "  {} < {} but f gives {} >= {}", w.below, w.above, w.image_below, w.image_above);
            }
            Counterexample::Continuity(w) => {
                for g in &w.gaps {
                    let _ = writeln!(out, "  at {}: sup side {} < value {}", g.limit, g.sup, g.value);
                }
            }
        }
        out
    }
}

/// A failing instance of a dilator property. Elements and points record
/// the index of the poset they live on.
#[derive(Clone, Debug)]
pub struct DilatorWitness {
    pub clause: &'static str,
    pub posets: Vec<FinitePoset>,
    pub maps: Vec<OrderMap>,
    pub elements: Vec<(usize, DilatorElement)>,
    pub points: Vec<(usize, usize)>,
}

impl DilatorWitness {
    /// Poset sizes, element sizes and serialization: the minimality key.
    pub fn rank(&self) -> (usize, usize, String) {
        let size = self.posets.iter().map(FinitePoset::len).sum();
        let elems = self.elements.iter().map(|(_, e)| e.size()).sum();
        (size, elems, self.serialize_text())
    }

    fn serialize_text(&self) -> String {
        let mut s = String::new();
        for p in &self.posets {
            s.push_str(&p.to_text());
            s.push('\n');
        }
        for m in &self.maps {
            s.push_str(&m.to_text());
            s.push('\n');
        }
        for (h, e) in &self.elements {
            s.push_str(&format_element(&self.posets[*h], e));
            s.push('\n');
        }
        for (h, p) in &self.points {
            s.push_str(self.posets[*h].id(*p));
            s.push('\n');
        }
        s
    }
}

impl Serialize for DilatorWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DilatorWitness", 5)?;
        st.serialize_field("clause", self.clause)?;
        let posets: Vec<String> = self.posets.iter().map(FinitePoset::to_text).collect();
        st.serialize_field("posets", &posets)?;
        let maps: Vec<String> = self.maps.iter().map(OrderMap::to_text).collect();
        st.serialize_field("maps", &maps)?;
        let elements: Vec<String> = self
            .elements
            .iter()
            .map(|(h, e)| format_element(&self.posets[*h], e))
            .collect();
        st.serialize_field("elements", &elements)?;
        let points: Vec<&str> = self.points.iter().map(|(h, p)| self.posets[*h].id(*p)).collect();
        st.serialize_field("points", &points)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct TermWitness {
    pub clause: &'static str,
    pub terms: Vec<KruskalTerm>,
}

impl Serialize for TermWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TermWitness", 2)?;
        st.serialize_field("clause", self.clause)?;
        let terms: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct MonotonicityWitness {
    pub below: Ordinal,
    pub above: Ordinal,
    pub image_below: Ordinal,
    pub image_above: Ordinal,
}

impl Serialize for MonotonicityWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MonotonicityWitness", 4)?;
        st.serialize_field("below", &self.below.to_string())?;
        st.serialize_field("above", &self.above.to_string())?;
        st.serialize_field("imageBelow", &self.image_below.to_string())?;
        st.serialize_field("imageAbove", &self.image_above.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuityWitness {
    pub gaps: Vec<ContinuityGap>,
}

/// `f` jumps at `limit`: the images below it stay under `sup`, while
/// `f(limit) = value` lies strictly above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityGap {
    pub limit: Ordinal,
    pub sup: Ordinal,
    pub value: Ordinal,
}

impl Serialize for ContinuityGap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ContinuityGap", 3)?;
        st.serialize_field("limit", &self.limit.to_string())?;
        st.serialize_field("sup", &self.sup.to_string())?;
        st.serialize_field("value", &self.value.to_string())?;
        st.end()
    }
}
