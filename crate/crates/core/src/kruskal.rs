//! The initial Kruskal fixed point of a normal dilator as explicit terms.
//!
//! A term `∘(a, σ)` stores its distinct subterms `a` sorted by their printed
//! form and a kernel `σ` over positions `0..|a|` with full support. The
//! printed form `( s₁ , … ; payload )` doubles as term identity.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::dilator::{DilatorElement, DilatorSpec, Label, MAX_ELEMENT_SIZE};
use crate::error::{Error, Result};
use crate::normality::{check_property, Bounds, Property};
use crate::order::FinitePoset;
use crate::syntax::format_payload;
use crate::verdict::{Counterexample, TermWitness, Verdict};

/// Largest length accepted by [`TermSystem::enumerate`].
pub const MAX_TERM_LENGTH: u64 = 9;

/// Kernel size bound used by enumeration unless configured otherwise.
pub const DEFAULT_KERNEL_BOUND: usize = 2;

#[derive(Clone)]
pub struct KruskalTerm(Arc<TermNode>);

struct TermNode {
    subterms: Vec<KruskalTerm>,
    kernel: DilatorElement,
    repr: Arc<str>,
    length: u64,
    height: u64,
}

impl KruskalTerm {
    pub fn subterms(&self) -> &[KruskalTerm] {
        &self.0.subterms
    }

    pub fn kernel(&self) -> &DilatorElement {
        &self.0.kernel
    }

    /// `l(∘(a,σ)) = 1 + Σ_{s∈a} 2·l(s)`.
    pub fn length(&self) -> u64 {
        self.0.length
    }

    /// `h(∘(a,σ)) = max({0} ∪ {h(s)+1 | s ∈ a})`.
    pub fn height(&self) -> u64 {
        self.0.height
    }

    pub fn repr(&self) -> &str {
        &self.0.repr
    }

    pub fn is_leaf(&self) -> bool {
        self.0.subterms.is_empty()
    }
}

impl PartialEq for KruskalTerm {
    fn eq(&self, other: &Self) -> bool {
        self.0.repr == other.0.repr
    }
}

impl Eq for KruskalTerm {}

impl Hash for KruskalTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.repr.hash(state);
    }
}

impl Ord for KruskalTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.repr.cmp(&other.0.repr)
    }
}

impl PartialOrd for KruskalTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KruskalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.repr)
    }
}

impl fmt::Debug for KruskalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KruskalTerm({})", self.0.repr)
    }
}

type Memo = HashMap<(Arc<str>, Arc<str>), bool>;

/// Terms over one dilator together with the comparison cache.
pub struct TermSystem {
    spec: DilatorSpec,
    kernel_bound: usize,
    memo: Mutex<Memo>,
}

fn certified(spec: &DilatorSpec) -> bool {
    match spec {
        DilatorSpec::Identity | DilatorSpec::Seq | DilatorSpec::Multiset => true,
        DilatorSpec::Star(inner) => certified(inner),
        DilatorSpec::Compose(..) => false,
    }
}

impl TermSystem {
    /// Built-in dilators are accepted directly; anything else has to pass
    /// the normality check at posets ≤ 3 and elements ≤ 2.
    pub fn new(spec: DilatorSpec) -> Result<Self> {
        if !certified(&spec) && !check_property(&spec, Property::Normal, Bounds::new(3, 2))?.passed() {
            return Err(Error::NotNormal(spec.to_string()));
        }
        Ok(TermSystem {
            spec,
            kernel_bound: DEFAULT_KERNEL_BOUND,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_kernel_bound(mut self, bound: usize) -> Result<Self> {
        if bound > MAX_ELEMENT_SIZE {
            return Err(Error::BoundExceeded {
                what: "kernel size",
                given: bound,
                max: MAX_ELEMENT_SIZE,
            });
        }
        self.kernel_bound = bound;
        Ok(self)
    }

    pub fn spec(&self) -> &DilatorSpec {
        &self.spec
    }

    pub fn kernel_bound(&self) -> usize {
        self.kernel_bound
    }

    /// `∘(a, σ)` with `σ` indexing `a` in canonical order.
    pub fn mk_term(&self, mut subterms: Vec<KruskalTerm>, kernel: DilatorElement) -> Result<KruskalTerm> {
        subterms.sort();
        if let Some(w) = subterms.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSubterm(w[0].to_string()));
        }
        let a = self.subterm_poset(&subterms)?;
        self.spec.validate(&a, &kernel)?;
        let payload = format_payload(&kernel);
        if self.spec.support(&kernel).len() != subterms.len() {
            return Err(Error::NotInTrace(payload));
        }
        let repr = if subterms.is_empty() {
            format!("( ; {payload} )")
        } else {
            let subs: Vec<&str> = subterms.iter().map(KruskalTerm::repr).collect();
            format!("( {} ; {payload} )", subs.join(" , "))
        };
        let length = 1 + subterms.iter().map(|s| 2 * s.length()).sum::<u64>();
        let height = subterms.iter().map(|s| s.height() + 1).max().unwrap_or(0);
        Ok(KruskalTerm(Arc::new(TermNode {
            subterms,
            kernel,
            repr: repr.into(),
            length,
            height,
        })))
    }

    /// The least-sized term without subterms, if `W(∅)` has one.
    pub fn leaf(&self) -> Option<KruskalTerm> {
        let empty = FinitePoset::empty();
        let kernel = self.spec.elements(&empty, 0).ok()?.into_iter().next()?;
        self.mk_term(Vec::new(), kernel).ok()
    }

    /// The finite poset of `terms` under the term order, named by their
    /// printed forms.
    pub fn subterm_poset(&self, terms: &[KruskalTerm]) -> Result<FinitePoset> {
        let n = terms.len();
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = self.leq(&terms[i], &terms[j]);
            }
        }
        let ids = terms.iter().map(|t| t.repr().to_owned()).collect();
        FinitePoset::from_matrix(ids, matrix).map_err(|e| match e {
            Error::AxiomViolation { .. } => Error::SubordersNotPartial(e.to_string()),
            other => other,
        })
    }

    pub fn leq(&self, s: &KruskalTerm, t: &KruskalTerm) -> bool {
        let key = (s.0.repr.clone(), t.0.repr.clone());
        if let Some(&v) = self.memo.lock().expect("memo lock").get(&key) {
            return v;
        }
        let v = self.leq_step(s, t, &|a, b| self.leq(a, b));
        self.memo.lock().expect("memo lock").insert(key, v);
        v
    }

    /// The same recursion without the cache.
    pub fn leq_unmemoized(&self, s: &KruskalTerm, t: &KruskalTerm) -> bool {
        self.leq_step(s, t, &|a, b| self.leq_unmemoized(a, b))
    }

    pub fn lt(&self, s: &KruskalTerm, t: &KruskalTerm) -> bool {
        s != t && self.leq(s, t)
    }

    fn leq_step(&self, s: &KruskalTerm, t: &KruskalTerm, rec: &dyn Fn(&KruskalTerm, &KruskalTerm) -> bool) -> bool {
        if t.subterms().iter().any(|r| rec(s, r)) {
            return true;
        }
        let mut union: Vec<&KruskalTerm> = s.subterms().iter().chain(t.subterms()).collect();
        union.sort();
        union.dedup();
        let place = |sub: &[KruskalTerm]| -> Vec<usize> {
            sub.iter()
                .map(|x| union.binary_search(&x).expect("subterm is in the union"))
                .collect()
        };
        let (ps, pt) = (place(s.subterms()), place(t.subterms()));
        let sigma = s.kernel().map_points(&|i| ps[i]);
        let tau = t.kernel().map_points(&|i| pt[i]);
        self.spec.leq_by(&sigma, &tau, &|a, b| match (a, b) {
            (Label::Point(i), Label::Point(j)) => rec(union[*i], union[*j]),
            _ => false,
        })
    }

    /// `κ(σ)` for `σ` over the poset of `ambient` terms.
    pub fn kappa(&self, ambient: &[KruskalTerm], sigma: &DilatorElement) -> Result<KruskalTerm> {
        let mut sorted = ambient.to_vec();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::AmbientMismatch("ambient terms are not distinct".into()));
        }
        let x = self.subterm_poset(ambient)?;
        self.spec.validate(&x, sigma)?;
        let support = self.spec.support(sigma);
        let mut subs: Vec<KruskalTerm> = support.iter().map(|&i| ambient[i].clone()).collect();
        subs.sort();
        let mut rank = vec![usize::MAX; ambient.len()];
        for &i in &support {
            rank[i] = subs.binary_search(&ambient[i]).expect("support term is listed");
        }
        self.mk_term(subs, sigma.map_points(&|i| rank[i]))
    }

    /// `κ⁻¹(t)`: the kernel over the subterms of `t`.
    pub fn kappa_inv(&self, t: &KruskalTerm) -> (Vec<KruskalTerm>, DilatorElement) {
        (t.subterms().to_vec(), t.kernel().clone())
    }

    /// Every term of length at most `length_bound` whose kernels, at every
    /// depth, have size at most the kernel bound. Sorted by length, then by
    /// printed form.
    pub fn enumerate(&self, length_bound: u64) -> Result<Vec<KruskalTerm>> {
        if length_bound > MAX_TERM_LENGTH {
            return Err(Error::BoundExceeded {
                what: "term length",
                given: length_bound as usize,
                max: MAX_TERM_LENGTH as usize,
            });
        }
        let mut terms: Vec<KruskalTerm> = Vec::new();
        for length in (1..=length_bound).step_by(2) {
            let budget = (length - 1) / 2;
            let mut subsets = Vec::new();
            choose(&terms, 0, budget, self.kernel_bound, &mut Vec::new(), &mut subsets);
            let mut fresh = Vec::new();
            for subset in subsets {
                let mut subs: Vec<KruskalTerm> = subset.into_iter().cloned().collect();
                subs.sort();
                let a = self.subterm_poset(&subs)?;
                for kernel in self.spec.elements(&a, self.kernel_bound)? {
                    if self.spec.support(&kernel).len() == subs.len() {
                        fresh.push(self.mk_term(subs.clone(), kernel)?);
                    }
                }
            }
            fresh.sort();
            terms.extend(fresh);
        }
        Ok(terms)
    }

    pub fn audit(&self, check: Audit, length_bound: u64) -> Result<Verdict> {
        let terms = self.enumerate(length_bound)?;
        let bounds = [("maxLength", length_bound), ("kernelBound", self.kernel_bound as u64)];
        let mut verdict = Verdict::new(check.name(), self.spec.to_string(), &bounds);
        let n = terms.len();
        let matrix: Vec<Vec<bool>> = terms
            .par_iter()
            .map(|s| terms.iter().map(|t| self.leq(s, t)).collect())
            .collect();
        let mut worst: Option<((u64, String), TermWitness)> = None;
        let mut offer = |clause: &'static str, picked: &[usize]| {
            let ts: Vec<KruskalTerm> = picked.iter().map(|&i| terms[i].clone()).collect();
            let rank = (
                ts.iter().map(KruskalTerm::length).sum::<u64>(),
                ts.iter().map(KruskalTerm::repr).collect::<Vec<_>>().join("\n"),
            );
            if worst.as_ref().is_none_or(|(r, _)| rank < *r) {
                worst = Some((rank, TermWitness { clause, terms: ts }));
            }
        };
        match check {
            Audit::PartialOrder => {
                for i in 0..n {
                    verdict.instances_checked += 1;
                    if !matrix[i][i] {
                        offer("po-reflexivity", &[i]);
                    }
                    for j in 0..n {
                        verdict.instances_checked += 1;
                        if i != j && matrix[i][j] && matrix[j][i] {
                            offer("po-antisymmetry", &[i, j]);
                        }
                        if !matrix[i][j] {
                            continue;
                        }
                        for k in 0..n {
                            verdict.instances_checked += 1;
                            if matrix[j][k] && !matrix[i][k] {
                                offer("po-transitivity", &[i, j, k]);
                            }
                        }
                    }
                }
            }
            Audit::FixedPointEq => {
                let x = self.subterm_poset(&terms)?;
                let position: HashMap<&str, usize> = terms.iter().enumerate().map(|(i, t)| (t.repr(), i)).collect();
                let lift = |t: &KruskalTerm| -> Result<(Vec<usize>, DilatorElement)> {
                    let places: Vec<usize> = t
                        .subterms()
                        .iter()
                        .map(|s| {
                            position
                                .get(s.repr())
                                .copied()
                                .ok_or_else(|| Error::AmbientMismatch(format!("subterm {s} was not enumerated")))
                        })
                        .collect::<Result<_>>()?;
                    let kernel = t.kernel().map_points(&|i| places[i]);
                    Ok((places, kernel))
                };
                let lifted: Vec<(Vec<usize>, DilatorElement)> = terms.iter().map(lift).collect::<Result<_>>()?;
                for (i, t) in terms.iter().enumerate() {
                    verdict.instances_checked += 1;
                    let (ambient, sigma) = self.kappa_inv(t);
                    if self.kappa(&ambient, &sigma)? != *t {
                        offer("kappa-round-trip", &[i]);
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        verdict.instances_checked += 1;
                        let coded = self.spec.leq(&x, &lifted[i].1, &lifted[j].1)?;
                        let below_support = lifted[j].0.iter().any(|&y| matrix[i][y]);
                        if matrix[i][j] != (coded || below_support) {
                            offer("fixed-point-eq", &[i, j]);
                        }
                    }
                }
            }
            Audit::HeightLemma => {
                let strongly = self.spec.has_mu()
                    && check_property(&self.spec, Property::StronglyNormal, Bounds::new(3, 3))?.passed();
                if !strongly {
                    verdict.notes.push(format!(
                        "{} fails the strongly-normal check at posets ≤ 3 and elements ≤ 3, so the height lemma's hypothesis is not met",
                        self.spec
                    ));
                }
                for i in 0..n {
                    for j in 0..n {
                        if terms[i].height() >= terms[j].height() {
                            continue;
                        }
                        verdict.instances_checked += 1;
                        if !matrix[i][j] {
                            offer("height-lemma", &[i, j]);
                        }
                    }
                }
            }
            Audit::BadSequenceProbe => {
                let below: Vec<usize> = (0..n)
                    .map(|j| (0..n).filter(|&i| i != j && matrix[i][j]).count())
                    .collect();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| below[b].cmp(&below[a]).then(terms[a].cmp(&terms[b])));
                let mut bad = true;
                for (p, &i) in order.iter().enumerate() {
                    for &j in &order[p + 1..] {
                        verdict.instances_checked += 1;
                        bad &= !matrix[i][j];
                    }
                }
                if bad {
                    verdict.measure = Some(n as u64);
                    let listed: Vec<&str> = order.iter().take(12).map(|&i| terms[i].repr()).collect();
                    let suffix = if n > 12 { ", …" } else { "" };
                    verdict.notes.push(format!("bad sequence: {}{suffix}", listed.join(", ")));
                } else {
                    verdict.notes.push("descending arrangement is not bad; the term order is not antisymmetric".into());
                    verdict.measure = Some(0);
                }
                verdict.notes.push("search result only; no pass/fail claim".into());
            }
        }
        Ok(match worst {
            Some((_, w)) => verdict.fail_with(Counterexample::Terms(w)),
            None => verdict,
        })
    }
}

fn choose<'a>(
    pool: &'a [KruskalTerm],
    from: usize,
    budget: u64,
    max_items: usize,
    current: &mut Vec<&'a KruskalTerm>,
    out: &mut Vec<Vec<&'a KruskalTerm>>,
) {
    if budget == 0 {
        out.push(current.clone());
        return;
    }
    if current.len() == max_items {
        return;
    }
    for i in from..pool.len() {
        if pool[i].length() <= budget {
            current.push(&pool[i]);
            choose(pool, i + 1, budget - pool[i].length(), max_items, current, out);
            current.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Audit {
    PartialOrder,
    FixedPointEq,
    HeightLemma,
    BadSequenceProbe,
}

impl Audit {
    pub fn name(&self) -> &'static str {
        match self {
            Audit::PartialOrder => "partial-order",
            Audit::FixedPointEq => "fixed-point-eq",
            Audit::HeightLemma => "height-lemma",
            Audit::BadSequenceProbe => "bad-sequence-probe",
        }
    }
}

impl FromStr for Audit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Audit::PartialOrder, Audit::FixedPointEq, Audit::HeightLemma, Audit::BadSequenceProbe]
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownIdentifier(s.to_owned()))
    }
}
