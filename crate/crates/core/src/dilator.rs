//! Coded PO-dilators.
//!
//! `W(X)` is infinite even for finite `X`, so a dilator is represented by
//! decision procedures (order, support, renaming, unit) plus a bounded
//! enumerator. Elements are payloads over [`Label`]s. At the bottom layer a
//! label is a carrier position of the ambient poset; a composite
//! `compose(V, W)` uses elements of `W(X)` as the labels of a `V` payload.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::{FinitePoset, OrderMap};

/// Largest element size accepted by [`DilatorSpec::elements`].
pub const MAX_ELEMENT_SIZE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DilatorSpec {
    Identity,
    /// Finite sequences under Higman's ordering.
    Seq,
    /// Finite multisets under the Dershowitz–Manna ordering.
    Multiset,
    /// The strongly normal completion `W*` of an Aczel-normal `W`.
    Star(Box<DilatorSpec>),
    /// `compose(outer, inner)` maps `X` to `outer(inner(X))`.
    Compose(Box<DilatorSpec>, Box<DilatorSpec>),
}

/// Payload shape of a spec's elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Identity,
    Seq,
    Multiset,
}

impl DilatorSpec {
    pub fn star(inner: DilatorSpec) -> Self {
        DilatorSpec::Star(Box::new(inner))
    }

    pub fn compose(outer: DilatorSpec, inner: DilatorSpec) -> Self {
        DilatorSpec::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn shape(&self) -> Shape {
        match self {
            DilatorSpec::Identity => Shape::Identity,
            DilatorSpec::Seq => Shape::Seq,
            DilatorSpec::Multiset => Shape::Multiset,
            DilatorSpec::Star(inner) => inner.shape(),
            DilatorSpec::Compose(outer, _) => outer.shape(),
        }
    }

    /// Every built-in spec carries a unit `μ`.
    pub fn has_mu(&self) -> bool {
        match self {
            DilatorSpec::Identity | DilatorSpec::Seq | DilatorSpec::Multiset => true,
            DilatorSpec::Star(inner) => inner.has_mu(),
            DilatorSpec::Compose(outer, inner) => outer.has_mu() && inner.has_mu(),
        }
    }

    /// The spec with every `star(·)` removed; `W` and `W*` share carriers.
    pub fn carrier_spec(&self) -> DilatorSpec {
        match self {
            DilatorSpec::Star(inner) => inner.carrier_spec(),
            DilatorSpec::Compose(outer, inner) => {
                DilatorSpec::compose(outer.carrier_spec(), inner.carrier_spec())
            }
            other => other.clone(),
        }
    }

    /// `W ≤ W'` test over `X`. Both elements are validated against `X`.
    pub fn leq(&self, x: &FinitePoset, s: &DilatorElement, t: &DilatorElement) -> Result<bool> {
        self.validate(x, s)?;
        self.validate(x, t)?;
        Ok(self.leq_points(x, s, t))
    }

    /// Strict order: `s ≤ t` and `s ≠ t`.
    pub fn lt(&self, x: &FinitePoset, s: &DilatorElement, t: &DilatorElement) -> Result<bool> {
        Ok(s != t && self.leq(x, s, t)?)
    }

    /// Unvalidated order test over carrier positions of `x`.
    pub(crate) fn leq_points(&self, x: &FinitePoset, s: &DilatorElement, t: &DilatorElement) -> bool {
        self.leq_by(s, t, &|a, b| match (a, b) {
            (Label::Point(i), Label::Point(j)) => x.leq(*i, *j),
            _ => false,
        })
    }

    /// Order with respect to an arbitrary partial order on bottom-layer
    /// labels.
    pub(crate) fn leq_by(&self, s: &DilatorElement, t: &DilatorElement, base: &dyn Fn(&Label, &Label) -> bool) -> bool {
        match self {
            DilatorSpec::Identity | DilatorSpec::Seq | DilatorSpec::Multiset => payload_leq(s, t, base),
            DilatorSpec::Star(inner) => {
                if inner.leq_by(s, t, base) {
                    return true;
                }
                let below = inner.support_by(s);
                inner
                    .support_by(t)
                    .iter()
                    .any(|y| below.iter().all(|x| x != y && base(x, y)))
            }
            DilatorSpec::Compose(outer, inner) => outer.leq_by(s, t, &|a, b| match (a, b) {
                (Label::Elem(u), Label::Elem(v)) => inner.leq_by(u, v, base),
                _ => false,
            }),
        }
    }

    /// Support as sorted carrier positions.
    pub fn support(&self, s: &DilatorElement) -> Vec<usize> {
        self.support_by(s)
            .into_iter()
            .filter_map(|l| match l {
                Label::Point(i) => Some(i),
                Label::Elem(_) => None,
            })
            .collect()
    }

    pub fn support_ids(&self, x: &FinitePoset, s: &DilatorElement) -> BTreeSet<String> {
        self.support(s).into_iter().map(|i| x.id(i).to_owned()).collect()
    }

    /// Support at the layer this spec is applied to, sorted and distinct.
    pub(crate) fn support_by(&self, s: &DilatorElement) -> Vec<Label> {
        let labels = match self {
            DilatorSpec::Identity | DilatorSpec::Seq | DilatorSpec::Multiset => s.labels().cloned().collect(),
            DilatorSpec::Star(inner) => return inner.support_by(s),
            DilatorSpec::Compose(outer, inner) => {
                let mut out = Vec::new();
                for l in outer.support_by(s) {
                    if let Label::Elem(e) = l {
                        out.extend(inner.support_by(&e));
                    }
                }
                out
            }
        };
        let set: BTreeSet<Label> = labels.into_iter().collect();
        set.into_iter().collect()
    }

    /// `W(f)(s)`.
    pub fn rename(&self, f: &OrderMap, s: &DilatorElement) -> Result<DilatorElement> {
        self.validate(f.source(), s)?;
        Ok(s.map_points(&|i| f.apply(i)))
    }

    /// `μ_X(x)`.
    pub fn mu(&self, x: &FinitePoset, id: &str) -> Result<DilatorElement> {
        if !self.has_mu() {
            return Err(Error::NoMu(self.to_string()));
        }
        Ok(self.mu_point(x.require(id)?))
    }

    pub(crate) fn mu_point(&self, i: usize) -> DilatorElement {
        self.mu_by(Label::Point(i))
    }

    fn mu_by(&self, label: Label) -> DilatorElement {
        match self {
            DilatorSpec::Identity => DilatorElement::Id(label),
            DilatorSpec::Seq => DilatorElement::Seq(vec![label]),
            DilatorSpec::Multiset => DilatorElement::Multiset(vec![(label, 1)]),
            DilatorSpec::Star(inner) => inner.mu_by(label),
            DilatorSpec::Compose(outer, inner) => outer.mu_by(Label::Elem(Box::new(inner.mu_by(label)))),
        }
    }

    /// Whether `s` lies in the trace over `a`: its support is all of `a`.
    pub fn has_full_support(&self, a: &FinitePoset, s: &DilatorElement) -> Result<bool> {
        self.validate(a, s)?;
        Ok(self.support(s).len() == a.len())
    }

    /// Every element over `x` whose size is at most `size_bound`, ordered by
    /// size and then lexicographically.
    pub fn elements(&self, x: &FinitePoset, size_bound: usize) -> Result<Vec<DilatorElement>> {
        if size_bound > MAX_ELEMENT_SIZE {
            return Err(Error::BoundExceeded {
                what: "element size",
                given: size_bound,
                max: MAX_ELEMENT_SIZE,
            });
        }
        let pool: Vec<Label> = (0..x.len()).map(Label::Point).collect();
        let mut out = self.elements_by(&pool, size_bound);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn elements_by(&self, pool: &[Label], bound: usize) -> Vec<DilatorElement> {
        match self {
            DilatorSpec::Identity => pool
                .iter()
                .filter(|l| l.weight() <= bound)
                .map(|l| DilatorElement::Id(l.clone()))
                .collect(),
            DilatorSpec::Seq => {
                let mut out = Vec::new();
                sequences(pool, bound, &mut Vec::new(), &mut out);
                out.into_iter().map(DilatorElement::Seq).collect()
            }
            DilatorSpec::Multiset => {
                let mut out = Vec::new();
                multisets(pool, 0, bound, &mut Vec::new(), &mut out);
                out.into_iter().map(DilatorElement::multiset).collect()
            }
            DilatorSpec::Star(inner) => inner.elements_by(pool, bound),
            DilatorSpec::Compose(outer, inner) => {
                if bound == 0 {
                    return outer.elements_by(&[], 0);
                }
                let labels: Vec<Label> = inner
                    .elements_by(pool, bound - 1)
                    .into_iter()
                    .map(|e| Label::Elem(Box::new(e)))
                    .collect();
                outer.elements_by(&labels, bound)
            }
        }
    }

    /// Checks that `s` is a well-formed element of this spec over `x`.
    pub fn validate(&self, x: &FinitePoset, s: &DilatorElement) -> Result<()> {
        let n = x.len();
        self.validate_by(s, &|l| match l {
            Label::Point(i) if *i < n => Ok(()),
            Label::Point(i) => Err(Error::AmbientMismatch(format!(
                "position {i} outside a carrier of size {n}"
            ))),
            Label::Elem(_) => Err(Error::AmbientMismatch("nested element where a point was expected".into())),
        })
    }

    fn validate_by(&self, s: &DilatorElement, label_ok: &dyn Fn(&Label) -> Result<()>) -> Result<()> {
        match self {
            DilatorSpec::Star(inner) => inner.validate_by(s, label_ok),
            DilatorSpec::Compose(outer, inner) => outer.validate_by(s, &|l| match l {
                Label::Elem(e) => inner.validate_by(e, label_ok),
                Label::Point(_) => Err(Error::AmbientMismatch(format!(
                    "`{self}` expects nested elements as labels"
                ))),
            }),
            base => {
                let ok_shape = matches!(
                    (base.shape(), s),
                    (Shape::Identity, DilatorElement::Id(_))
                        | (Shape::Seq, DilatorElement::Seq(_))
                        | (Shape::Multiset, DilatorElement::Multiset(_))
                );
                if !ok_shape {
                    return Err(Error::AmbientMismatch(format!("element shape does not match `{base}`")));
                }
                if let DilatorElement::Multiset(entries) = s {
                    let canonical = entries.iter().all(|(_, c)| *c >= 1)
                        && entries.windows(2).all(|w| w[0].0 < w[1].0);
                    if !canonical {
                        return Err(Error::AmbientMismatch("multiset is not a canonical count map".into()));
                    }
                }
                s.labels().try_for_each(label_ok)
            }
        }
    }
}

impl fmt::Display for DilatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DilatorSpec::Identity => f.write_str("identity"),
            DilatorSpec::Seq => f.write_str("seq"),
            DilatorSpec::Multiset => f.write_str("multiset"),
            DilatorSpec::Star(inner) => write!(f, "star({inner})"),
            DilatorSpec::Compose(outer, inner) => write!(f, "compose({outer},{inner})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Carrier position in the ambient poset.
    Point(usize),
    /// Element of the inner dilator of a composite.
    Elem(Box<DilatorElement>),
}

impl Label {
    /// Contribution of one occurrence to an element's size.
    pub fn weight(&self) -> usize {
        match self {
            Label::Point(_) => 1,
            Label::Elem(e) => 1 + e.size(),
        }
    }

    fn map_points(&self, f: &dyn Fn(usize) -> usize) -> Label {
        match self {
            Label::Point(i) => Label::Point(f(*i)),
            Label::Elem(e) => Label::Elem(Box::new(e.map_points(f))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DilatorElement {
    Id(Label),
    Seq(Vec<Label>),
    /// Count map sorted by label; every count is at least one.
    Multiset(Vec<(Label, u32)>),
}

impl DilatorElement {
    /// Builds a canonical multiset from labels listed with repetition.
    pub fn multiset(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut labels: Vec<Label> = labels.into_iter().collect();
        labels.sort();
        let mut entries: Vec<(Label, u32)> = Vec::new();
        for l in labels {
            match entries.last_mut() {
                Some((last, c)) if *last == l => *c += 1,
                _ => entries.push((l, 1)),
            }
        }
        DilatorElement::Multiset(entries)
    }

    pub fn seq_of_points(points: impl IntoIterator<Item = usize>) -> Self {
        DilatorElement::Seq(points.into_iter().map(Label::Point).collect())
    }

    pub fn multiset_of_points(points: impl IntoIterator<Item = usize>) -> Self {
        DilatorElement::multiset(points.into_iter().map(Label::Point))
    }

    /// Top-layer labels, with repetition.
    pub fn labels(&self) -> Box<dyn Iterator<Item = &Label> + '_> {
        match self {
            DilatorElement::Id(l) => Box::new(std::iter::once(l)),
            DilatorElement::Seq(ls) => Box::new(ls.iter()),
            DilatorElement::Multiset(entries) => Box::new(
                entries
                    .iter()
                    .flat_map(|(l, c)| std::iter::repeat_n(l, *c as usize)),
            ),
        }
    }

    /// Sequence length, multiset cardinality, 1 for identity; nested labels
    /// add their own size.
    pub fn size(&self) -> usize {
        self.labels().map(Label::weight).sum()
    }

    /// Applies `f` to every carrier position, re-canonicalizing multisets.
    pub fn map_points(&self, f: &dyn Fn(usize) -> usize) -> DilatorElement {
        match self {
            DilatorElement::Id(l) => DilatorElement::Id(l.map_points(f)),
            DilatorElement::Seq(ls) => DilatorElement::Seq(ls.iter().map(|l| l.map_points(f)).collect()),
            DilatorElement::Multiset(_) => DilatorElement::multiset(self.labels().map(|l| l.map_points(f))),
        }
    }

    fn variant(&self) -> u8 {
        match self {
            DilatorElement::Id(_) => 0,
            DilatorElement::Seq(_) => 1,
            DilatorElement::Multiset(_) => 2,
        }
    }
}

// Lexicographic on the label list written out with repetition, so that
// `[0 0] < [0 1]` as it reads.
impl Ord for DilatorElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.variant()
            .cmp(&other.variant())
            .then_with(|| self.labels().cmp(other.labels()))
    }
}

impl PartialOrd for DilatorElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn payload_leq(s: &DilatorElement, t: &DilatorElement, base: &dyn Fn(&Label, &Label) -> bool) -> bool {
    match (s, t) {
        (DilatorElement::Id(a), DilatorElement::Id(b)) => base(a, b),
        (DilatorElement::Seq(xs), DilatorElement::Seq(ys)) => higman_embeds(xs, ys, base),
        (DilatorElement::Multiset(xs), DilatorElement::Multiset(ys)) => multiset_leq(xs, ys, base),
        _ => false,
    }
}

/// Searches for a strictly increasing index map `h` with `xs[i] ≤ ys[h(i)]`.
fn higman_embeds(xs: &[Label], ys: &[Label], base: &dyn Fn(&Label, &Label) -> bool) -> bool {
    fn go(xs: &[Label], ys: &[Label], from: usize, base: &dyn Fn(&Label, &Label) -> bool) -> bool {
        let Some((first, rest)) = xs.split_first() else {
            return true;
        };
        if ys.len() - from < xs.len() {
            return false;
        }
        (from..ys.len()).any(|j| base(first, &ys[j]) && go(rest, ys, j + 1, base))
    }
    go(xs, ys, 0, base)
}

/// Every `x ∈ σ∖τ` has some `y ∈ τ∖σ` with `x < y`.
fn multiset_leq(xs: &[(Label, u32)], ys: &[(Label, u32)], base: &dyn Fn(&Label, &Label) -> bool) -> bool {
    let count = |entries: &[(Label, u32)], l: &Label| {
        entries
            .binary_search_by(|(k, _)| k.cmp(l))
            .map(|i| entries[i].1)
            .unwrap_or(0)
    };
    let excess_t: Vec<&Label> = ys
        .iter()
        .filter(|(l, c)| *c > count(xs, l))
        .map(|(l, _)| l)
        .collect();
    xs.iter()
        .filter(|(l, c)| *c > count(ys, l))
        .all(|(x, _)| excess_t.iter().any(|y| x != *y && base(x, y)))
}

fn sequences(pool: &[Label], budget: usize, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
    out.push(cur.clone());
    for l in pool {
        let w = l.weight();
        if w <= budget {
            cur.push(l.clone());
            sequences(pool, budget - w, cur, out);
            cur.pop();
        }
    }
}

fn multisets(pool: &[Label], from: usize, budget: usize, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
    out.push(cur.clone());
    for (k, l) in pool.iter().enumerate().skip(from) {
        let w = l.weight();
        if w <= budget {
            cur.push(l.clone());
            multisets(pool, k, budget - w, cur, out);
            cur.pop();
        }
    }
}

/// The canonical copy `|a|` on `{0,…,k-1}` together with `en_a: |a| → a`.
/// Position `i` of `|a|` is the `i`-th identifier of `a` in lexicographic
/// order.
pub fn canonize(a: &FinitePoset) -> (FinitePoset, OrderMap) {
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| a.id(i).cmp(a.id(j)));
    let copy = FinitePoset::from_fn(a.len(), |i, j| a.leq(order[i], order[j]));
    let en = OrderMap::new(
        std::sync::Arc::new(copy.clone()),
        std::sync::Arc::new(a.clone()),
        order,
        crate::order::MapKind::Embedding,
    )
    .expect("relabeling is an isomorphism");
    (copy, en)
}

/// An element written as its support `a` (identifiers in `en_a` order) and a
/// kernel over `|a|` with full support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodedElement {
    pub support: Vec<String>,
    pub support_poset: FinitePoset,
    pub kernel: DilatorElement,
}

impl DilatorSpec {
    /// The pair `(a, σ₀)` with `a = supp(σ)` and `σ = W(ι ∘ en_a)(σ₀)`.
    pub fn encode(&self, x: &FinitePoset, s: &DilatorElement) -> Result<CodedElement> {
        self.validate(x, s)?;
        let positions = self.support(s);
        let (support_poset, en) = canonize(&x.suborder(&positions));
        let support: Vec<String> = (0..support_poset.len())
            .map(|i| en.target().id(en.apply(i)).to_owned())
            .collect();
        let mut to_kernel = vec![usize::MAX; x.len()];
        for (k, id) in support.iter().enumerate() {
            to_kernel[x.require(id)?] = k;
        }
        let kernel = s.map_points(&|i| to_kernel[i]);
        Ok(CodedElement {
            support,
            support_poset,
            kernel,
        })
    }

    pub fn decode(&self, x: &FinitePoset, c: &CodedElement) -> Result<DilatorElement> {
        let positions: Vec<usize> = c.support.iter().map(|id| x.require(id)).collect::<Result<_>>()?;
        self.validate(&c.support_poset, &c.kernel)?;
        Ok(c.kernel.map_points(&|i| positions[i]))
    }

    /// Compares two coded elements by moving both kernels into `W(|a∪b|)`.
    pub fn coded_leq(&self, x: &FinitePoset, s: &CodedElement, t: &CodedElement) -> Result<bool> {
        let mut union: BTreeSet<&str> = s.support.iter().map(String::as_str).collect();
        union.extend(t.support.iter().map(String::as_str));
        let positions: Vec<usize> = union.iter().map(|id| x.require(id)).collect::<Result<_>>()?;
        for c in [s, t] {
            let own: Vec<usize> = c.support.iter().map(|id| x.require(id)).collect::<Result<_>>()?;
            if c.support_poset != canonize(&x.suborder(&own)).0 {
                return Err(Error::AmbientMismatch("support poset is not the suborder of the ambient".into()));
            }
        }
        let (joint, en) = canonize(&x.suborder(&positions));
        let index_of = |id: &str| {
            (0..joint.len())
                .find(|&k| en.target().id(en.apply(k)) == id)
                .expect("identifier in the union")
        };
        let lift = |c: &CodedElement| {
            let table: Vec<usize> = c.support.iter().map(|id| index_of(id)).collect();
            c.kernel.map_points(&|i| table[i])
        };
        self.leq(&joint, &lift(s), &lift(t))
    }
}

/// Lists a multiset's elements with multiplicity, ascending along the
/// linearization `ext` of `x`.
pub fn mset_to_seq(x: &FinitePoset, ext: &OrderMap, s: &DilatorElement) -> Result<DilatorElement> {
    if **ext.target() != *x || !ext.is_surjective() {
        return Err(Error::AmbientMismatch("extension is not a linearization of the ambient".into()));
    }
    DilatorSpec::Multiset.validate(x, s)?;
    let mut rank = vec![0; x.len()];
    for i in 0..x.len() {
        rank[ext.apply(i)] = i;
    }
    let mut points: Vec<usize> = s
        .labels()
        .map(|l| match l {
            Label::Point(i) => *i,
            Label::Elem(_) => unreachable!("validated as a bottom-layer multiset"),
        })
        .collect();
    points.sort_by_key(|&p| rank[p]);
    Ok(DilatorElement::seq_of_points(points))
}
