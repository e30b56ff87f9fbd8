//! Finite partial orders, order maps between them, and the small-instance
//! enumerators every checker quantifies over.
//!
//! A [`FinitePoset`] keeps the full `≤` relation as a dense boolean matrix
//! over carrier positions, so membership is a constant-time lookup. Element
//! identifiers are opaque strings; positions follow first occurrence.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Axiom, Error, Result};

/// Largest carrier size accepted by [`enumerate_posets`].
pub const MAX_ENUM_POSET: usize = 5;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    carrier: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Validates `leq` as a partial order on `carrier`. The relation must
    /// already be reflexive and transitive; nothing is closed up.
    pub fn new<I, S, P, A, B>(carrier: I, leq: P) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let (carrier, index) = dedup_carrier(carrier);
        let n = carrier.len();
        let mut matrix = vec![false; n * n];
        for (a, b) in leq {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            matrix[i * n + j] = true;
        }
        Self::from_matrix_parts(carrier, index, matrix)
    }

    /// Like [`FinitePoset::new`] but first takes the reflexive-transitive
    /// closure of `leq`, so only antisymmetry can fail.
    pub fn with_closure<I, S, P, A, B>(carrier: I, leq: P) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let (carrier, index) = dedup_carrier(carrier);
        let n = carrier.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for (a, b) in leq {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            m[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix_parts(carrier, index, m)
    }

    /// Builds a poset from identifiers and a row-major `≤` matrix.
    pub fn from_matrix(carrier: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let (carrier, index) = dedup_carrier(carrier.clone());
        if leq.len() != carrier.len() * carrier.len() {
            return Err(Error::AmbientMismatch(format!(
                "matrix of size {} for {} elements",
                leq.len(),
                carrier.len()
            )));
        }
        Self::from_matrix_parts(carrier, index, leq)
    }

    fn from_matrix_parts(
        carrier: Vec<String>,
        index: HashMap<String, usize>,
        leq: Vec<bool>,
    ) -> Result<Self> {
        let poset = FinitePoset {
            carrier,
            index,
            leq,
        };
        if let Some((kind, witness)) = poset.axiom_failure() {
            return Err(Error::AxiomViolation {
                kind,
                witness: witness.into_iter().map(|i| poset.id(i).to_owned()).collect(),
            });
        }
        Ok(poset)
    }

    /// Poset on `"0"…"n-1"` whose order is given by `leq(i, j)`. Panics if
    /// the predicate is not a partial order; meant for internal construction
    /// from relations that are partial orders by construction.
    pub(crate) fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let carrier: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut m = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = leq(i, j);
            }
        }
        FinitePoset::from_matrix(carrier, m).expect("relation is a partial order")
    }

    pub fn empty() -> Self {
        FinitePoset::from_fn(0, |_, _| true)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        FinitePoset::from_fn(n, |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset::from_fn(n, |i, j| i == j)
    }

    fn axiom_failure(&self) -> Option<(Axiom, Vec<usize>)> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Some((Axiom::Reflexivity, vec![i, i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Some((Axiom::Antisymmetry, vec![i.min(j), i.max(j)]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Some((Axiom::Transitivity, vec![i, j, k]));
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Identifiers in carrier order.
    pub fn ids(&self) -> &[String] {
        &self.carrier
    }

    pub fn id(&self, i: usize) -> &str {
        &self.carrier[i]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        lookup(&self.index, id)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.carrier.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn leq_ids(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.leq(self.require(a)?, self.require(b)?))
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    /// The suborder on the given carrier positions, in the given order.
    pub fn suborder(&self, positions: &[usize]) -> FinitePoset {
        let carrier: Vec<String> = positions.iter().map(|&i| self.carrier[i].clone()).collect();
        let k = positions.len();
        let mut m = vec![false; k * k];
        for (a, &i) in positions.iter().enumerate() {
            for (b, &j) in positions.iter().enumerate() {
                m[a * k + b] = self.leq(i, j);
            }
        }
        FinitePoset::from_matrix(carrier, m).expect("suborder of a partial order")
    }

    /// All pairs `(x, y)` with `x ≤ y`, as identifiers.
    pub fn relation(&self) -> BTreeSet<(String, String)> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) {
                    out.insert((self.carrier[i].clone(), self.carrier[j].clone()));
                }
            }
        }
        out
    }

    /// Covering pairs `x < y` with nothing strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Text form: `elements:` with identifiers sorted lexicographically,
    /// then one `le:` line per covering pair, also sorted.
    pub fn to_text(&self) -> String {
        let mut ids: Vec<&str> = self.carrier.iter().map(String::as_str).collect();
        ids.sort_unstable();
        let mut out = String::from("elements:");
        for id in &ids {
            out.push(' ');
            out.push_str(id);
        }
        let mut covers: Vec<(&str, &str)> = self
            .covers()
            .into_iter()
            .map(|(i, j)| (self.id(i), self.id(j)))
            .collect();
        covers.sort_unstable();
        for (a, b) in covers {
            out.push_str("\nle: ");
            out.push_str(a);
            out.push(' ');
            out.push_str(b);
        }
        out
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.carrier.iter().all(|id| other.index.contains_key(id))
            && self.relation() == other.relation()
    }
}

impl Eq for FinitePoset {}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn dedup_carrier<I, S>(carrier: I) -> (Vec<String>, HashMap<String, usize>)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut ids = Vec::new();
    let mut index = HashMap::new();
    for id in carrier {
        let id = id.into();
        if !index.contains_key(&id) {
            index.insert(id.clone(), ids.len());
            ids.push(id);
        }
    }
    (ids, index)
}

fn lookup(index: &HashMap<String, usize>, id: &str) -> Result<usize> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| Error::UnknownIdentifier(id.to_owned()))
}

/// All labeled partial orders on `{0,…,n-1}`, sorted by text form. With
/// `collapse_isomorphic`, keeps the first representative of each
/// isomorphism class.
pub fn enumerate_posets(n: usize, collapse_isomorphic: bool) -> Result<Vec<FinitePoset>> {
    if n > MAX_ENUM_POSET {
        return Err(Error::BoundExceeded {
            what: "poset size",
            given: n,
            max: MAX_ENUM_POSET,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut matrix = vec![false; n * n];
    for i in 0..n {
        matrix[i * n + i] = true;
    }
    let mut found = Vec::new();
    extend_relations(n, &pairs, 0, &mut matrix, &mut found);
    let mut posets: Vec<FinitePoset> = found
        .into_iter()
        .map(|m| FinitePoset::from_fn(n, |i, j| m[i * n + j]))
        .collect();
    posets.sort_by_cached_key(FinitePoset::to_text);
    if collapse_isomorphic {
        let mut seen = HashSet::new();
        posets.retain(|p| seen.insert(canonical_code(p)));
    }
    Ok(posets)
}

// Each unordered pair is unrelated, `i < j` or `j < i`; transitivity is
// checked once all pairs are fixed.
fn extend_relations(
    n: usize,
    pairs: &[(usize, usize)],
    k: usize,
    matrix: &mut Vec<bool>,
    out: &mut Vec<Vec<bool>>,
) {
    if k == pairs.len() {
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !matrix[i * n + j] || (0..n).all(|l| !matrix[j * n + l] || matrix[i * n + l]))
        });
        if transitive {
            out.push(matrix.clone());
        }
        return;
    }
    let (i, j) = pairs[k];
    extend_relations(n, pairs, k + 1, matrix, out);
    matrix[i * n + j] = true;
    extend_relations(n, pairs, k + 1, matrix, out);
    matrix[i * n + j] = false;
    matrix[j * n + i] = true;
    extend_relations(n, pairs, k + 1, matrix, out);
    matrix[j * n + i] = false;
}

/// Lexicographically least relation matrix over all relabelings.
fn canonical_code(p: &FinitePoset) -> Vec<bool> {
    let n = p.len();
    let mut best: Option<Vec<bool>> = None;
    for perm in permutations(n) {
        let code: Vec<bool> = (0..n * n)
            .map(|k| p.leq(perm[k / n], perm[k % n]))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    /// Order reflecting: `f(x) ≤ f(y)` implies `x ≤ y`.
    Quasi,
    /// Order reflecting and order preserving.
    Embedding,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Quasi => "quasi embedding",
            MapKind::Embedding => "embedding",
        })
    }
}

/// A total function between finite posets, validated as a quasi embedding
/// (and as an embedding when tagged so).
#[derive(Clone, Debug)]
pub struct OrderMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    graph: Vec<usize>,
    kind: MapKind,
}

impl OrderMap {
    pub fn new(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        graph: Vec<usize>,
        kind: MapKind,
    ) -> Result<Self> {
        if graph.len() != source.len() || graph.iter().any(|&y| y >= target.len()) {
            return Err(Error::NotAMap("total function on the source".into()));
        }
        if !is_kind(&source, &target, &graph, MapKind::Quasi) {
            return Err(Error::NotAMap(MapKind::Quasi.to_string()));
        }
        if kind == MapKind::Embedding && !is_kind(&source, &target, &graph, kind) {
            return Err(Error::NotAMap(kind.to_string()));
        }
        Ok(OrderMap {
            source,
            target,
            graph,
            kind,
        })
    }

    /// Builds a map from identifier pairs.
    pub fn from_ids<A: AsRef<str>, B: AsRef<str>>(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        pairs: impl IntoIterator<Item = (A, B)>,
        kind: MapKind,
    ) -> Result<Self> {
        let mut graph = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            graph[source.require(a.as_ref())?] = target.require(b.as_ref())?;
        }
        OrderMap::new(source, target, graph, kind)
    }

    pub fn identity(poset: Arc<FinitePoset>) -> Self {
        let graph = (0..poset.len()).collect();
        OrderMap {
            source: poset.clone(),
            target: poset,
            graph,
            kind: MapKind::Embedding,
        }
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Target position of each source position.
    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.graph[i]
    }

    pub fn apply_id(&self, id: &str) -> Result<&str> {
        Ok(self.target.id(self.graph[self.source.require(id)?]))
    }

    pub fn is_embedding(&self) -> bool {
        is_kind(&self.source, &self.target, &self.graph, MapKind::Embedding)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.graph.iter().all(|y| seen.insert(*y))
    }

    pub fn is_surjective(&self) -> bool {
        let image: HashSet<usize> = self.graph.iter().copied().collect();
        image.len() == self.target.len()
    }

    /// `next ∘ self`; the result is an embedding iff both factors are.
    pub fn then(&self, next: &OrderMap) -> Result<OrderMap> {
        if *self.target != *next.source {
            return Err(Error::AmbientMismatch("composition of non-matching maps".into()));
        }
        let graph = self
            .graph
            .iter()
            .map(|&y| next.apply(next.source.require(self.target.id(y)).expect("same carrier")))
            .collect();
        let kind = self.kind.min(next.kind);
        Ok(OrderMap {
            source: self.source.clone(),
            target: next.target.clone(),
            graph,
            kind,
        })
    }

    /// Graph as `x->y` pairs ordered by source identifier.
    pub fn to_text(&self) -> String {
        let mut pairs: Vec<(&str, &str)> = (0..self.source.len())
            .map(|i| (self.source.id(i), self.target.id(self.graph[i])))
            .collect();
        pairs.sort_unstable();
        pairs
            .iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for OrderMap {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.to_text() == other.to_text()
    }
}

fn is_kind(source: &FinitePoset, target: &FinitePoset, graph: &[usize], kind: MapKind) -> bool {
    let n = source.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let image = target.leq(graph[i], graph[j]);
            let pre = source.leq(i, j);
            match kind {
                MapKind::Quasi => !image || pre,
                MapKind::Embedding => image == pre,
            }
        })
    })
}

/// Graphs of every map `x → y` of the requested kind, in lexicographic order
/// of the position vector.
pub(crate) fn map_graphs(x: &FinitePoset, y: &FinitePoset, kind: MapKind) -> Vec<Vec<usize>> {
    fn go(
        x: &FinitePoset,
        y: &FinitePoset,
        kind: MapKind,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i == x.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..y.len() {
            if used[v] {
                continue;
            }
            let compatible = (0..i).all(|j| {
                let u = cur[j];
                let ok_fwd = !y.leq(u, v) || x.leq(j, i);
                let ok_bwd = !y.leq(v, u) || x.leq(i, j);
                let ok = ok_fwd && ok_bwd;
                match kind {
                    MapKind::Quasi => ok,
                    MapKind::Embedding => ok && y.leq(u, v) == x.leq(j, i) && y.leq(v, u) == x.leq(i, j),
                }
            });
            if compatible {
                used[v] = true;
                cur.push(v);
                go(x, y, kind, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    // a quasi embedding is injective, so larger sources admit no maps
    if x.len() <= y.len() {
        go(x, y, kind, &mut Vec::new(), &mut vec![false; y.len()], &mut out);
    }
    out
}

/// Every map `x → y` of the requested kind, sorted by graph text.
pub fn enumerate_maps(x: &Arc<FinitePoset>, y: &Arc<FinitePoset>, kind: MapKind) -> Vec<OrderMap> {
    let mut maps: Vec<OrderMap> = map_graphs(x, y, kind)
        .into_iter()
        .map(|graph| OrderMap {
            source: x.clone(),
            target: y.clone(),
            graph,
            kind,
        })
        .collect();
    maps.sort_by_cached_key(OrderMap::to_text);
    maps
}

/// All linear extensions of `x`, each as a surjective quasi embedding from
/// the chain `0 < … < n-1` onto `x`. Position `i` of the chain is sent to the
/// `i`-th element of the extension.
pub fn linear_extensions(x: &Arc<FinitePoset>) -> Vec<OrderMap> {
    fn go(x: &FinitePoset, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == x.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..x.len() {
            let minimal = !used[v] && (0..x.len()).all(|u| used[u] || u == v || !x.leq(u, v));
            if minimal {
                used[v] = true;
                cur.push(v);
                go(x, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let chain = Arc::new(FinitePoset::chain(x.len()));
    let mut graphs = Vec::new();
    go(x, &mut Vec::new(), &mut vec![false; x.len()], &mut graphs);
    graphs
        .into_iter()
        .map(|graph| OrderMap {
            source: chain.clone(),
            target: x.clone(),
            graph,
            kind: MapKind::Quasi,
        })
        .collect()
}

/// `L_X(x)`: the suborder on all `y` with `x ≰ y`.
pub fn lower_set(x: &FinitePoset, id: &str) -> Result<FinitePoset> {
    let i = x.require(id)?;
    let keep: Vec<usize> = (0..x.len()).filter(|&y| !x.leq(i, y)).collect();
    Ok(x.suborder(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(p: FinitePoset) -> Arc<FinitePoset> {
        Arc::new(p)
    }

    #[test]
    fn mk_poset_examples() {
        let one = FinitePoset::new(["a"], [("a", "a")]).unwrap();
        assert_eq!(one.len(), 1);

        let two = FinitePoset::new(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")]).unwrap();
        assert!(two.leq_ids("a", "b").unwrap());
        assert!(!two.leq_ids("b", "a").unwrap());

        let err = FinitePoset::new(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(
            err,
            Error::AxiomViolation {
                kind: Axiom::Antisymmetry,
                witness: vec!["a".into(), "b".into()]
            }
        );
    }

    #[test]
    fn mk_poset_errors() {
        assert_eq!(
            FinitePoset::new(["a"], [("a", "b")]).unwrap_err(),
            Error::UnknownIdentifier("b".into())
        );
        assert!(matches!(
            FinitePoset::new(["a"], Vec::<(&str, &str)>::new()).unwrap_err(),
            Error::AxiomViolation { kind: Axiom::Reflexivity, .. }
        ));
        let t = FinitePoset::new(
            ["a", "b", "c"],
            [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")],
        );
        assert!(matches!(t.unwrap_err(), Error::AxiomViolation { kind: Axiom::Transitivity, .. }));
    }

    #[test]
    fn dedup_preserves_first_occurrence() {
        let p = FinitePoset::new(["b", "a", "b"], [("a", "a"), ("b", "b")]).unwrap();
        assert_eq!(p.ids(), ["b", "a"]);
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_posets(n, false).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 19, 219]);
        let iso: Vec<usize> = (0..=4).map(|n| enumerate_posets(n, true).unwrap().len()).collect();
        assert_eq!(iso, [1, 1, 2, 5, 16]);
        assert!(matches!(enumerate_posets(6, false), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn map_examples() {
        let c2 = arc(FinitePoset::chain(2));
        let a2 = arc(FinitePoset::antichain(2));
        let p1 = arc(FinitePoset::chain(1));
        let maps = enumerate_maps(&c2, &c2, MapKind::Quasi);
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].graph(), [0, 1]);
        assert!(enumerate_maps(&a2, &c2, MapKind::Quasi).is_empty());
        assert_eq!(enumerate_maps(&p1, &c2, MapKind::Embedding).len(), 2);
    }

    #[test]
    fn quasi_but_not_embedding() {
        // unrelated images reflect nothing, so every injection works
        let c2 = arc(FinitePoset::chain(2));
        let maps = enumerate_maps(&c2, &arc(FinitePoset::antichain(3)), MapKind::Quasi);
        assert_eq!(maps.len(), 6);
        assert!(maps.iter().all(|m| !m.is_embedding()));
        assert!(enumerate_maps(&c2, &arc(FinitePoset::antichain(3)), MapKind::Embedding).is_empty());
    }

    #[test]
    fn linear_extension_examples() {
        assert_eq!(linear_extensions(&arc(FinitePoset::chain(3))).len(), 1);
        assert_eq!(linear_extensions(&arc(FinitePoset::antichain(2))).len(), 2);
        let v = arc(FinitePoset::with_closure(["a", "b", "c"], [("a", "c"), ("b", "c")]).unwrap());
        let exts = linear_extensions(&v);
        assert_eq!(exts.len(), 2);
        assert!(exts.iter().all(|e| e.is_surjective()));
    }

    #[test]
    fn lower_set_examples() {
        let c3 = FinitePoset::chain(3);
        assert_eq!(lower_set(&c3, "2").unwrap().ids(), ["0", "1"]);
        assert!(lower_set(&c3, "0").unwrap().is_empty());
        let a2 = FinitePoset::new(["a", "b"], [("a", "a"), ("b", "b")]).unwrap();
        assert_eq!(lower_set(&a2, "a").unwrap().ids(), ["b"]);
        assert_eq!(lower_set(&a2, "z").unwrap_err(), Error::UnknownIdentifier("z".into()));
    }

    #[test]
    fn text_form_is_sorted() {
        let p = FinitePoset::with_closure(["c", "a", "b"], [("b", "c"), ("a", "b")]).unwrap();
        assert_eq!(p.to_text(), "elements: a b c\nle: a b\nle: b c");
    }

    #[test]
    fn composition_of_maps() {
        let c1 = arc(FinitePoset::chain(1));
        let c2 = arc(FinitePoset::chain(2));
        let c3 = arc(FinitePoset::chain(3));
        let f = OrderMap::new(c1, c2.clone(), vec![1], MapKind::Embedding).unwrap();
        let g = OrderMap::new(c2, c3, vec![0, 2], MapKind::Embedding).unwrap();
        let h = f.then(&g).unwrap();
        assert_eq!(h.graph(), [2]);
        assert!(h.is_embedding());
    }
}
