//! Bounded exhaustive checkers for the normality hierarchy.
//!
//! Every quantifier ranges over labeled posets up to the poset bound,
//! elements up to the element bound, and embeddings or quasi embeddings
//! between the tested posets. Instances are grouped into levels by total
//! poset size; a level is evaluated completely and in parallel, the least
//! failure under [`DilatorWitness::rank`] is kept, and later levels are
//! skipped once something failed.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::dilator::{mset_to_seq, DilatorElement, DilatorSpec};
use crate::error::{Error, Result};
use crate::order::{enumerate_maps, enumerate_posets, linear_extensions, map_graphs, FinitePoset, MapKind, OrderMap};
use crate::verdict::{Counterexample, DilatorWitness, Verdict};

/// Posets at most this large take part in the functor-composition clause.
pub const COMPOSITION_POSET_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Axioms,
    Normal,
    AczelNormal,
    StronglyNormal,
    StronglyNormalLinear,
    Flat,
    GraphLike,
    RemarkCondition,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Axioms,
        Property::Normal,
        Property::AczelNormal,
        Property::StronglyNormal,
        Property::StronglyNormalLinear,
        Property::Flat,
        Property::GraphLike,
        Property::RemarkCondition,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Axioms => "axioms",
            Property::Normal => "normal",
            Property::AczelNormal => "aczel-normal",
            Property::StronglyNormal => "strongly-normal",
            Property::StronglyNormalLinear => "strongly-normal-linear",
            Property::Flat => "flat",
            Property::GraphLike => "graph-like",
            Property::RemarkCondition => "remark-condition",
        }
    }

    pub fn needs_mu(&self) -> bool {
        matches!(
            self,
            Property::AczelNormal
                | Property::StronglyNormal
                | Property::StronglyNormalLinear
                | Property::RemarkCondition
        )
    }

    fn map_kind(&self) -> Option<MapKind> {
        match self {
            Property::Normal => None,
            Property::Axioms | Property::AczelNormal | Property::StronglyNormal | Property::StronglyNormalLinear => {
                Some(MapKind::Embedding)
            }
            Property::Flat | Property::GraphLike | Property::RemarkCondition => Some(MapKind::Quasi),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownIdentifier(s.to_owned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_poset: usize,
    pub max_elem: usize,
}

impl Bounds {
    pub fn new(max_poset: usize, max_elem: usize) -> Self {
        Bounds { max_poset, max_elem }
    }

    fn pairs(&self) -> [(&'static str, u64); 2] {
        [
            ("maxPosetSize", self.max_poset as u64),
            ("maxElemSize", self.max_elem as u64),
        ]
    }
}

/// `W(X)` cut down to the element bound, with its order tabulated.
struct Slice {
    poset: Arc<FinitePoset>,
    elems: Vec<DilatorElement>,
    index: HashMap<DilatorElement, usize>,
    leq: Vec<bool>,
    supp: Vec<Vec<usize>>,
    mu: Vec<Option<usize>>,
}

impl Slice {
    fn build(spec: &DilatorSpec, poset: Arc<FinitePoset>, max_elem: usize) -> Result<Slice> {
        let elems = spec.elements(&poset, max_elem)?;
        let n = elems.len();
        let index: HashMap<DilatorElement, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = spec.leq_points(&poset, &elems[i], &elems[j]);
            }
        }
        let supp = elems.iter().map(|e| spec.support(e)).collect();
        let mu = (0..poset.len())
            .map(|x| {
                if spec.has_mu() {
                    index.get(&spec.mu_point(x)).copied()
                } else {
                    None
                }
            })
            .collect();
        Ok(Slice {
            poset,
            elems,
            index,
            leq,
            supp,
            mu,
        })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elems.len() + j]
    }

    fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// Indices of `W(f)(σ)` for every `σ` of this slice.
    fn rename_into(&self, target: &Slice, graph: &[usize]) -> Vec<usize> {
        self.elems
            .iter()
            .map(|e| {
                let image = e.map_points(&|i| graph[i]);
                *target.index.get(&image).expect("renaming preserves element size")
            })
            .collect()
    }
}

#[derive(Default)]
struct Acc {
    checked: u64,
    best: Option<((usize, usize, String), DilatorWitness)>,
}

impl Acc {
    fn offer(&mut self, elem_size: usize, witness: impl FnOnce() -> DilatorWitness) {
        if let Some(((_, e, _), _)) = &self.best {
            if elem_size > *e {
                return;
            }
        }
        let w = witness();
        let rank = w.rank();
        if self.best.as_ref().is_none_or(|(r, _)| rank < *r) {
            self.best = Some((rank, w));
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.checked += other.checked;
        if let Some((rank, w)) = other.best {
            if self.best.as_ref().is_none_or(|(r, _)| rank < *r) {
                self.best = Some((rank, w));
            }
        }
        self
    }
}

fn single_witness(clause: &'static str, s: &Slice, elems: &[usize], points: &[usize]) -> DilatorWitness {
    DilatorWitness {
        clause,
        posets: vec![(*s.poset).clone()],
        maps: Vec::new(),
        elements: elems.iter().map(|&i| (0, s.elems[i].clone())).collect(),
        points: points.iter().map(|&p| (0, p)).collect(),
    }
}

fn pair_witness(
    clause: &'static str,
    x: &Slice,
    y: &Slice,
    graph: &[usize],
    kind: MapKind,
    elements: Vec<(usize, DilatorElement)>,
    points: Vec<(usize, usize)>,
) -> DilatorWitness {
    let map = OrderMap::new(x.poset.clone(), y.poset.clone(), graph.to_vec(), kind).expect("enumerated map is valid");
    DilatorWitness {
        clause,
        posets: vec![(*x.poset).clone(), (*y.poset).clone()],
        maps: vec![map],
        elements,
        points,
    }
}

fn elem_sizes(s: &Slice, idx: &[usize]) -> usize {
    idx.iter().map(|&i| s.elems[i].size()).sum()
}

/// Clauses quantifying over a single poset.
fn eval_single(property: Property, s: &Slice) -> Acc {
    let mut acc = Acc::default();
    let n = s.len();
    let x = &s.poset;
    match property {
        Property::Axioms => {
            for i in 0..n {
                acc.checked += 1;
                if !s.le(i, i) {
                    acc.offer(elem_sizes(s, &[i]), || single_witness("po-reflexivity", s, &[i], &[]));
                }
                if s.elems[i].map_points(&|p| p) != s.elems[i] {
                    acc.offer(elem_sizes(s, &[i]), || single_witness("functor-identity", s, &[i], &[]));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    acc.checked += 1;
                    if i != j && s.le(i, j) && s.le(j, i) {
                        acc.offer(elem_sizes(s, &[i, j]), || single_witness("po-antisymmetry", s, &[i, j], &[]));
                    }
                    if !s.le(i, j) {
                        continue;
                    }
                    for k in 0..n {
                        acc.checked += 1;
                        if s.le(j, k) && !s.le(i, k) {
                            acc.offer(elem_sizes(s, &[i, j, k]), || {
                                single_witness("po-transitivity", s, &[i, j, k], &[])
                            });
                        }
                    }
                }
            }
        }
        Property::Normal => {
            for i in 0..n {
                for j in 0..n {
                    acc.checked += 1;
                    if !s.le(i, j) {
                        continue;
                    }
                    if let Some(&p) = s.supp[i].iter().find(|&&p| !s.supp[j].iter().any(|&q| x.leq(p, q))) {
                        acc.offer(elem_sizes(s, &[i, j]), || single_witness("normal", s, &[i, j], &[p]));
                    }
                }
            }
        }
        Property::AczelNormal | Property::StronglyNormal | Property::StronglyNormalLinear => {
            for p in 0..x.len() {
                let Some(mp) = s.mu[p] else { continue };
                for q in 0..x.len() {
                    let Some(mq) = s.mu[q] else { continue };
                    acc.checked += 1;
                    if s.le(mp, mq) && !x.leq(p, q) {
                        acc.offer(0, || single_witness("mu-reflection", s, &[], &[p, q]));
                    }
                }
                for i in 0..n {
                    acc.checked += 1;
                    let below = s.le(mp, i);
                    let dominated = s.supp[i].iter().any(|&q| x.leq(p, q));
                    if below != dominated {
                        acc.offer(elem_sizes(s, &[i]), || single_witness("mu-below", s, &[i], &[p]));
                    }
                }
            }
            if property != Property::AczelNormal {
                for y in 0..x.len() {
                    let Some(my) = s.mu[y] else { continue };
                    for i in 0..n {
                        if !s.supp[i].iter().all(|&p| x.lt(p, y)) {
                            continue;
                        }
                        acc.checked += 1;
                        if !s.lt(i, my) {
                            acc.offer(elem_sizes(s, &[i]), || single_witness("strongly-normal", s, &[i], &[y]));
                        }
                    }
                }
            }
        }
        Property::Flat | Property::GraphLike | Property::RemarkCondition => {}
    }
    acc
}

/// Clauses quantifying over one map `f: X → Y`.
fn eval_pair(property: Property, x: &Slice, y: &Slice, graph: &[usize], kind: MapKind) -> Acc {
    let mut acc = Acc::default();
    let fx = x.rename_into(y, graph);
    let n = x.len();
    let px = &x.poset;
    let py = &y.poset;
    let premise = |a: &[usize], b: &[usize]| {
        a.iter()
            .all(|&p| b.iter().all(|&q| !px.leq(p, q) || py.leq(graph[p], graph[q])))
    };
    match property {
        Property::Axioms | Property::Flat => {
            if property == Property::Axioms {
                for i in 0..n {
                    acc.checked += 1;
                    let mut image: Vec<usize> = x.supp[i].iter().map(|&p| graph[p]).collect();
                    image.sort_unstable();
                    if image != y.supp[fx[i]] {
                        acc.offer(elem_sizes(x, &[i]), || {
                            pair_witness("support-naturality", x, y, graph, kind, vec![(0, x.elems[i].clone())], vec![])
                        });
                    }
                    for j in 0..n {
                        acc.checked += 1;
                        if x.le(i, j) != y.le(fx[i], fx[j]) {
                            acc.offer(elem_sizes(x, &[i, j]), || {
                                pair_witness(
                                    "embedding-preservation",
                                    x,
                                    y,
                                    graph,
                                    kind,
                                    vec![(0, x.elems[i].clone()), (0, x.elems[j].clone())],
                                    vec![],
                                )
                            });
                        }
                    }
                }
            }
            let range: HashSet<usize> = graph.iter().copied().collect();
            let hit: HashSet<usize> = fx.iter().copied().collect();
            let clause = if property == Property::Axioms { "support-condition" } else { "flat-support" };
            for t in 0..y.len() {
                if !y.supp[t].iter().all(|q| range.contains(q)) {
                    continue;
                }
                acc.checked += 1;
                if !hit.contains(&t) {
                    acc.offer(y.elems[t].size(), || {
                        pair_witness(clause, x, y, graph, kind, vec![(1, y.elems[t].clone())], vec![])
                    });
                }
            }
        }
        Property::AczelNormal | Property::StronglyNormal | Property::StronglyNormalLinear => {
            for p in 0..px.len() {
                let (Some(mp), Some(mq)) = (x.mu[p], y.mu[graph[p]]) else { continue };
                acc.checked += 1;
                if fx[mp] != mq {
                    acc.offer(0, || pair_witness("mu-naturality", x, y, graph, kind, vec![], vec![(0, p)]));
                }
            }
        }
        Property::GraphLike => {
            for i in 0..n {
                for j in 0..n {
                    if !x.le(i, j) || !premise(&x.supp[i], &x.supp[j]) {
                        continue;
                    }
                    acc.checked += 1;
                    if !y.le(fx[i], fx[j]) {
                        acc.offer(elem_sizes(x, &[i, j]), || {
                            pair_witness(
                                "graph-like",
                                x,
                                y,
                                graph,
                                kind,
                                vec![(0, x.elems[i].clone()), (0, x.elems[j].clone())],
                                vec![],
                            )
                        });
                    }
                }
            }
        }
        Property::RemarkCondition => {
            for p in 0..px.len() {
                let (Some(mp), Some(mq)) = (x.mu[p], y.mu[graph[p]]) else { continue };
                for i in 0..n {
                    if !x.lt(i, mp) || !premise(&x.supp[i], &[p]) {
                        continue;
                    }
                    acc.checked += 1;
                    if !y.lt(fx[i], mq) {
                        acc.offer(elem_sizes(x, &[i]), || {
                            pair_witness("remark-condition", x, y, graph, kind, vec![(0, x.elems[i].clone())], vec![(0, p)])
                        });
                    }
                }
            }
        }
        Property::Normal => {}
    }
    acc
}

/// `W(g∘f) = W(g)∘W(f)` on one composable pair of embeddings.
fn eval_triple(x: &Slice, y: &Slice, z: &Slice, f: &[usize], g: &[usize]) -> Acc {
    let mut acc = Acc::default();
    let fx = x.rename_into(y, f);
    let gy = y.rename_into(z, g);
    let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
    let direct = x.rename_into(z, &gf);
    for i in 0..x.len() {
        acc.checked += 1;
        if gy[fx[i]] != direct[i] {
            acc.offer(x.elems[i].size(), || {
                let fm = OrderMap::new(x.poset.clone(), y.poset.clone(), f.to_vec(), MapKind::Embedding).expect("valid");
                let gm = OrderMap::new(y.poset.clone(), z.poset.clone(), g.to_vec(), MapKind::Embedding).expect("valid");
                DilatorWitness {
                    clause: "functor-composition",
                    posets: vec![(*x.poset).clone(), (*y.poset).clone(), (*z.poset).clone()],
                    maps: vec![fm, gm],
                    elements: vec![(0, x.elems[i].clone())],
                    points: vec![],
                }
            });
        }
    }
    acc
}

fn tested_posets(max: usize, linear_only: bool) -> Result<Vec<Arc<FinitePoset>>> {
    let mut out = Vec::new();
    for n in 0..=max {
        for p in enumerate_posets(n, false)? {
            if !linear_only || p.is_total() {
                out.push(Arc::new(p));
            }
        }
    }
    Ok(out)
}

/// Exhaustively checks `property` for `spec` within `bounds`.
pub fn check_property(spec: &DilatorSpec, property: Property, bounds: Bounds) -> Result<Verdict> {
    if property.needs_mu() && !spec.has_mu() {
        return Err(Error::NoMu(spec.to_string()));
    }
    let posets = tested_posets(bounds.max_poset, property == Property::StronglyNormalLinear)?;
    let mut verdict = Verdict::new(property.name(), spec.to_string(), &bounds.pairs());
    let size = |i: usize| posets[i].len();
    let singles: Vec<usize> = (0..posets.len()).collect();
    let pairs: Vec<(usize, usize)> = match property.map_kind() {
        Some(_) => singles
            .iter()
            .flat_map(|&i| singles.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| size(i) <= size(j))
            .collect(),
        None => Vec::new(),
    };
    let small: Vec<usize> = singles
        .iter()
        .copied()
        .filter(|&i| size(i) <= COMPOSITION_POSET_LIMIT)
        .collect();
    let max_level = 3 * bounds.max_poset;
    let mut built: Vec<Option<Slice>> = posets.iter().map(|_| None).collect();
    let mut total = Acc::default();
    for level in 0..=max_level {
        let missing: Vec<usize> = singles
            .iter()
            .copied()
            .filter(|&i| size(i) <= level && built[i].is_none())
            .collect();
        let fresh: Vec<(usize, Slice)> = missing
            .par_iter()
            .map(|&i| Slice::build(spec, posets[i].clone(), bounds.max_elem).map(|s| (i, s)))
            .collect::<Result<_>>()?;
        for (i, slice) in fresh {
            built[i] = Some(slice);
        }
        let at = |i: usize| built[i].as_ref().expect("slice built for this level");
        let mut acc = singles
            .par_iter()
            .filter(|&&i| size(i) == level)
            .map(|&i| eval_single(property, at(i)))
            .reduce(Acc::default, Acc::merge);
        if let Some(kind) = property.map_kind() {
            let level_pairs = pairs
                .par_iter()
                .filter(|&&(i, j)| size(i) + size(j) == level)
                .map(|&(i, j)| {
                    let (x, y) = (at(i), at(j));
                    map_graphs(&x.poset, &y.poset, kind)
                        .iter()
                        .map(|g| eval_pair(property, x, y, g, kind))
                        .fold(Acc::default(), Acc::merge)
                })
                .reduce(Acc::default, Acc::merge);
            acc = acc.merge(level_pairs);
        }
        if property == Property::Axioms {
            let triples: Vec<(usize, usize, usize)> = small
                .iter()
                .flat_map(|&i| small.iter().map(move |&j| (i, j)))
                .filter(|&(i, j)| size(i) <= size(j))
                .flat_map(|(i, j)| small.iter().map(move |&k| (i, j, k)))
                .filter(|&(i, j, k)| size(j) <= size(k) && size(i) + size(j) + size(k) == level)
                .collect();
            let level_triples = triples
                .par_iter()
                .map(|&(i, j, k)| {
                    let (x, y, z) = (at(i), at(j), at(k));
                    let mut acc = Acc::default();
                    let gs = map_graphs(&y.poset, &z.poset, MapKind::Embedding);
                    for f in map_graphs(&x.poset, &y.poset, MapKind::Embedding) {
                        for g in &gs {
                            acc = acc.merge(eval_triple(x, y, z, &f, g));
                        }
                    }
                    acc
                })
                .reduce(Acc::default, Acc::merge);
            acc = acc.merge(level_triples);
        }
        total = total.merge(acc);
        if total.best.is_some() {
            break;
        }
    }

    if property.needs_mu() && built.iter().flatten().any(|s| s.mu.iter().any(Option::is_none)) {
        verdict
            .notes
            .push("unit elements exceed the element bound; clauses mentioning them were skipped".into());
    }
    verdict.instances_checked = total.checked;
    Ok(match total.best {
        Some((_, w)) => verdict.fail_with(Counterexample::Dilator(w)),
        None => verdict,
    })
}

/// Re-evaluates a witness with the public dilator operations; true when the
/// recorded failure is reproduced.
pub fn replay(spec: &DilatorSpec, w: &DilatorWitness) -> Result<bool> {
    let el = |k: usize| &w.elements[k].1;
    let pt = |k: usize| w.points[k].1;
    let x = || &w.posets[0];
    let leq = |s: &DilatorElement, t: &DilatorElement| spec.leq(x(), s, t);
    let premise = |f: &OrderMap, a: &[usize], b: &[usize]| {
        a.iter()
            .all(|&p| b.iter().all(|&q| !x().leq(p, q) || f.target().leq(f.apply(p), f.apply(q))))
    };
    Ok(match w.clause {
        "po-reflexivity" => !leq(el(0), el(0))?,
        "po-antisymmetry" => el(0) != el(1) && leq(el(0), el(1))? && leq(el(1), el(0))?,
        "po-transitivity" => leq(el(0), el(1))? && leq(el(1), el(2))? && !leq(el(0), el(2))?,
        "functor-identity" => spec.rename(&OrderMap::identity(Arc::new(x().clone())), el(0))? != *el(0),
        "functor-composition" => {
            let (f, g) = (&w.maps[0], &w.maps[1]);
            spec.rename(g, &spec.rename(f, el(0))?)? != spec.rename(&f.then(g)?, el(0))?
        }
        "embedding-preservation" => {
            let f = &w.maps[0];
            leq(el(0), el(1))? != spec.leq(f.target(), &spec.rename(f, el(0))?, &spec.rename(f, el(1))?)?
        }
        "support-naturality" => {
            let f = &w.maps[0];
            let mut image: Vec<usize> = spec.support(el(0)).into_iter().map(|p| f.apply(p)).collect();
            image.sort_unstable();
            image != spec.support(&spec.rename(f, el(0))?)
        }
        "support-condition" | "flat-support" => {
            let f = &w.maps[0];
            let t = el(0);
            let range: HashSet<usize> = f.graph().iter().copied().collect();
            spec.support(t).iter().all(|q| range.contains(q)) && {
                let mut hit = false;
                for s in spec.elements(x(), t.size())? {
                    hit |= spec.rename(f, &s)? == *t;
                }
                !hit
            }
        }
        "normal" => {
            let p = pt(0);
            leq(el(0), el(1))?
                && spec.support(el(0)).contains(&p)
                && !spec.support(el(1)).iter().any(|&q| x().leq(p, q))
        }
        "mu-reflection" => {
            let (p, q) = (pt(0), pt(1));
            leq(&spec.mu(x(), x().id(p))?, &spec.mu(x(), x().id(q))?)? && !x().leq(p, q)
        }
        "mu-below" => {
            let p = pt(0);
            let below = leq(&spec.mu(x(), x().id(p))?, el(0))?;
            below != spec.support(el(0)).iter().any(|&q| x().leq(p, q))
        }
        "mu-naturality" => {
            let f = &w.maps[0];
            let p = pt(0);
            spec.rename(f, &spec.mu(x(), x().id(p))?)? != spec.mu(f.target(), f.target().id(f.apply(p)))?
        }
        "strongly-normal" => {
            let y = pt(0);
            spec.support(el(0)).iter().all(|&p| x().lt(p, y)) && !spec.lt(x(), el(0), &spec.mu(x(), x().id(y))?)?
        }
        "graph-like" => {
            let f = &w.maps[0];
            leq(el(0), el(1))?
                && premise(f, &spec.support(el(0)), &spec.support(el(1)))
                && !spec.leq(f.target(), &spec.rename(f, el(0))?, &spec.rename(f, el(1))?)?
        }
        "remark-condition" => {
            let f = &w.maps[0];
            let y = pt(0);
            let fy = f.target().id(f.apply(y));
            spec.lt(x(), el(0), &spec.mu(x(), x().id(y))?)?
                && premise(f, &spec.support(el(0)), &[y])
                && !spec.lt(f.target(), &spec.rename(f, el(0))?, &spec.mu(f.target(), fy)?)?
        }
        other => return Err(Error::UnknownIdentifier(other.to_owned())),
    })
}

/// `W ↦ W*`.
pub fn star_completion(spec: &DilatorSpec) -> Result<DilatorSpec> {
    if !spec.has_mu() {
        return Err(Error::NoMu(spec.to_string()));
    }
    Ok(DilatorSpec::star(spec.clone()))
}

/// Registered natural transformations between dilators on linear orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transformation {
    /// Lists a multiset in increasing order along the first linear
    /// extension of the ambient poset.
    MsetToSeq,
    /// The identity between two specs sharing carriers.
    IdentityCarrier,
}

impl Transformation {
    pub fn name(&self) -> &'static str {
        match self {
            Transformation::MsetToSeq => "mset-to-seq",
            Transformation::IdentityCarrier => "identity-carrier",
        }
    }

    fn applies(&self, from: &DilatorSpec, to: &DilatorSpec) -> bool {
        match self {
            Transformation::MsetToSeq => {
                from.carrier_spec() == DilatorSpec::Multiset && to.carrier_spec() == DilatorSpec::Seq
            }
            Transformation::IdentityCarrier => from.carrier_spec() == to.carrier_spec(),
        }
    }

    fn component(&self, x: &Arc<FinitePoset>, s: &DilatorElement) -> Result<DilatorElement> {
        match self {
            Transformation::MsetToSeq => {
                let ext = linear_extensions(x).into_iter().next().expect("every finite poset has an extension");
                mset_to_seq(x, &ext, s)
            }
            Transformation::IdentityCarrier => Ok(s.clone()),
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mset-to-seq" | "msetToSeq" => Ok(Transformation::MsetToSeq),
            "identity-carrier" => Ok(Transformation::IdentityCarrier),
            other => Err(Error::UnknownTransformation(other.to_owned())),
        }
    }
}

/// Checks that `nu: D ⇒ W` is a quasi embedding of dilators on finite
/// linear orders: componentwise order reflection, naturality along
/// embeddings, and preservation of supports.
pub fn check_dilator_quasi_embedding(
    nu: Transformation,
    d: &DilatorSpec,
    w: &DilatorSpec,
    bounds: Bounds,
) -> Result<Verdict> {
    if !nu.applies(d, w) {
        return Err(Error::TransformationMismatch {
            name: nu.name().into(),
            from: d.to_string(),
            to: w.to_string(),
        });
    }
    let orders = tested_posets(bounds.max_poset, true)?;
    let mut verdict = Verdict::new(format!("quasi-embedding({nu})"), format!("{d} => {w}"), &bounds.pairs());
    let mut images: Vec<Vec<(DilatorElement, DilatorElement)>> = Vec::new();
    for x in &orders {
        let mut row = Vec::new();
        for s in d.elements(x, bounds.max_elem)? {
            let image = nu.component(x, &s)?;
            row.push((s, image));
        }
        images.push(row);
    }
    for level in 0..=2 * bounds.max_poset {
        let mut found: Option<((usize, usize, String), DilatorWitness)> = None;
        let mut offer = |wit: DilatorWitness| {
            let rank = wit.rank();
            if found.as_ref().is_none_or(|(r, _)| rank < *r) {
                found = Some((rank, wit));
            }
        };
        for (xi, x) in orders.iter().enumerate() {
            if x.len() == level {
                for (s, ns) in &images[xi] {
                    verdict.instances_checked += 1;
                    if w.support(ns) != d.support(s) {
                        offer(solo("support", x, vec![s.clone()]));
                    }
                    for (t, nt) in &images[xi] {
                        verdict.instances_checked += 1;
                        if w.leq(x, ns, nt)? && !d.leq(x, s, t)? {
                            offer(solo("reflection", x, vec![s.clone(), t.clone()]));
                        }
                    }
                }
            }
            for y in &orders {
                if x.len() + y.len() != level || x.len() > y.len() {
                    continue;
                }
                for f in enumerate_maps(x, y, MapKind::Embedding) {
                    for (s, ns) in &images[xi] {
                        verdict.instances_checked += 1;
                        let left = nu.component(y, &d.rename(&f, s)?)?;
                        if left != w.rename(&f, ns)? {
                            offer(DilatorWitness {
                                clause: "naturality",
                                posets: vec![(**x).clone(), (**y).clone()],
                                maps: vec![f.clone()],
                                elements: vec![(0, s.clone())],
                                points: vec![],
                            });
                        }
                    }
                }
            }
        }
        if let Some((_, wit)) = found {
            return Ok(verdict.fail_with(Counterexample::Dilator(wit)));
        }
    }
    Ok(verdict)
}

fn solo(clause: &'static str, x: &FinitePoset, elems: Vec<DilatorElement>) -> DilatorWitness {
    DilatorWitness {
        clause,
        posets: vec![x.clone()],
        maps: Vec::new(),
        elements: elems.into_iter().map(|e| (0, e)).collect(),
        points: Vec::new(),
    }
}

/// Order reflection of the multiset-to-sequence candidate on arbitrary
/// (not necessarily linear) posets, listing along the first linear
/// extension.
pub fn mset_to_seq_partial_report(bounds: Bounds) -> Result<Verdict> {
    let posets = tested_posets(bounds.max_poset, false)?;
    let mut verdict = Verdict::new("mset-to-seq-reflection", "multiset => seq", &bounds.pairs());
    let results: Vec<Result<(u64, Option<DilatorWitness>)>> = posets
        .par_iter()
        .map(|x| {
            let mut checked = 0;
            let elems = DilatorSpec::Multiset.elements(x, bounds.max_elem)?;
            let images: Vec<DilatorElement> = elems
                .iter()
                .map(|s| Transformation::MsetToSeq.component(x, s))
                .collect::<Result<_>>()?;
            let mut best: Option<DilatorWitness> = None;
            for (i, s) in elems.iter().enumerate() {
                for (j, t) in elems.iter().enumerate() {
                    checked += 1;
                    if DilatorSpec::Seq.leq_points(x, &images[i], &images[j])
                        && !DilatorSpec::Multiset.leq_points(x, s, t)
                    {
                        let wit = solo("reflection", x, vec![s.clone(), t.clone()]);
                        if best.as_ref().is_none_or(|b| wit.rank() < b.rank()) {
                            best = Some(wit);
                        }
                    }
                }
            }
            Ok((checked, best))
        })
        .collect();
    let mut best: Option<DilatorWitness> = None;
    for r in results {
        let (checked, wit) = r?;
        verdict.instances_checked += checked;
        if let Some(wit) = wit {
            if best.as_ref().is_none_or(|b| wit.rank() < b.rank()) {
                best = Some(wit);
            }
        }
    }
    Ok(match best {
        Some(wit) => verdict.fail_with(Counterexample::Dilator(wit)),
        None => verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::format_element;

    #[test]
    fn seq_strong_normality_counterexample() {
        let v = check_property(&DilatorSpec::Seq, Property::StronglyNormal, Bounds::new(3, 3)).unwrap();
        assert!(!v.passed());
        let Some(Counterexample::Dilator(w)) = &v.counterexample else { panic!() };
        assert_eq!(w.clause, "strongly-normal");
        assert_eq!(w.posets[0], FinitePoset::chain(2));
        assert_eq!(w.posets[0].to_text(), "elements: 0 1\nle: 0 1");
        assert_eq!(format_element(&w.posets[0], &w.elements[0].1), "seq⟨0 0⟩");
        assert_eq!(w.posets[0].id(w.points[0].1), "1");
        assert!(replay(&DilatorSpec::Seq, w).unwrap());
    }

    #[test]
    fn multiset_is_strongly_normal_small() {
        let v = check_property(&DilatorSpec::Multiset, Property::StronglyNormal, Bounds::new(3, 3)).unwrap();
        assert!(v.passed(), "{}", v.to_text());
        assert!(v.instances_checked > 0);
    }

    #[test]
    fn star_needs_mu_and_orders() {
        assert_eq!(star_completion(&DilatorSpec::Seq).unwrap(), DilatorSpec::star(DilatorSpec::Seq));
        let v = check_property(&DilatorSpec::star(DilatorSpec::Seq), Property::StronglyNormal, Bounds::new(3, 3)).unwrap();
        assert!(v.passed(), "{}", v.to_text());
    }

    #[test]
    fn transformation_names() {
        assert_eq!("mset-to-seq".parse::<Transformation>().unwrap(), Transformation::MsetToSeq);
        assert!(matches!("sort".parse::<Transformation>(), Err(Error::UnknownTransformation(_))));
        assert!(matches!(
            check_dilator_quasi_embedding(Transformation::MsetToSeq, &DilatorSpec::Seq, &DilatorSpec::Seq, Bounds::new(2, 2)),
            Err(Error::TransformationMismatch { .. })
        ));
        assert_eq!("graph-like".parse::<Property>().unwrap(), Property::GraphLike);
    }
}
