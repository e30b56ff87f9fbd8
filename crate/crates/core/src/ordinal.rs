//! Veblen normal forms below Γ₀.
//!
//! An [`Ordinal`] is a strictly descending sum of atoms `φ(a, b)`, each with
//! a positive natural coefficient. `ω^γ` is `φ(0, γ)` and `ε_β` is `φ(1, β)`.
//! Constructors normalize, so structural equality is ordinal equality.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::verdict::{ContinuityGap, ContinuityWitness, Counterexample, MonotonicityWitness, Verdict};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ordinal {
    terms: Vec<(Atom, u64)>,
}

/// `φ(index, arg)` with `arg < φ(index, arg)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    index: Ordinal,
    arg: Ordinal,
}

impl Atom {
    pub fn index(&self) -> &Ordinal {
        &self.index
    }

    pub fn arg(&self) -> &Ordinal {
        &self.arg
    }

    fn one() -> Atom {
        Atom {
            index: Ordinal::zero(),
            arg: Ordinal::zero(),
        }
    }

    fn is_one(&self) -> bool {
        self.index.is_zero() && self.arg.is_zero()
    }

    /// Fixed points of `γ ↦ ω^γ` are exactly the atoms with positive index.
    pub fn is_epsilon(&self) -> bool {
        !self.index.is_zero()
    }

    /// The exponent `e` with `ω^e` equal to this atom.
    fn exponent(&self) -> Ordinal {
        if self.index.is_zero() {
            self.arg.clone()
        } else {
            Ordinal::from_atom(self.clone())
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.index.cmp(&other.index) {
            // φ(a₁,b₁) with a₁ < a₂ sits below φ(a₂,b₂) unless b₁ reaches it
            Ordering::Less => self.arg.cmp_atom(other),
            Ordering::Equal => self.arg.cmp(&other.arg),
            Ordering::Greater => match other.arg.cmp_atom(self) {
                Ordering::Less => Ordering::Greater,
                _ => Ordering::Less,
            },
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Atom::one(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(&Ordinal::one())
    }

    fn from_atom(atom: Atom) -> Self {
        Ordinal {
            terms: vec![(atom, 1)],
        }
    }

    /// `φ(a, b)`, collapsing to `b` when `b` is already a fixed point of
    /// `φ(a, ·)`.
    pub fn veblen(a: &Ordinal, b: &Ordinal) -> Self {
        if let Some(atom) = b.as_atom() {
            if atom.index > *a {
                return b.clone();
            }
        }
        Ordinal::from_atom(Atom {
            index: a.clone(),
            arg: b.clone(),
        })
    }

    pub fn omega_pow(a: &Ordinal) -> Self {
        Ordinal::veblen(&Ordinal::zero(), a)
    }

    pub fn epsilon(b: &Ordinal) -> Self {
        Ordinal::veblen(&Ordinal::one(), b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Atom, u64)] {
        &self.terms
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(a, c)] if a.is_one() => Some(*c),
            _ => None,
        }
    }

    /// The single atom with coefficient 1, if that is the whole term.
    pub fn as_atom(&self) -> Option<&Atom> {
        match self.terms.as_slice() {
            [(a, 1)] => Some(a),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(a, _)| a.is_one())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Compares this ordinal with the single atom `atom`.
    fn cmp_atom(&self, atom: &Atom) -> Ordering {
        match self.terms.first() {
            None => Ordering::Less,
            Some((lead, c)) => lead
                .cmp(atom)
                .then_with(|| if *c > 1 || self.terms.len() > 1 { Ordering::Greater } else { Ordering::Equal }),
        }
    }

    /// Ordinary (non-commutative) addition.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Atom, u64)> = self.terms.iter().take_while(|(a, _)| a > lead).cloned().collect();
        let mut rest = other.terms.clone();
        if let Some((a, d)) = self.terms.get(terms.len()) {
            if a == lead {
                rest[0].1 = c + d;
            }
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// `self · n` for a natural `n`.
    pub fn mul_nat(&self, n: u64) -> Ordinal {
        if n == 0 || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].1 = terms[0].1.checked_mul(n).expect("coefficient overflow");
        Ordinal { terms }
    }

    /// Hessenberg natural sum.
    pub fn natural_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, c) = &self.terms[i];
            let (b, d) = &other.terms[j];
            match a.cmp(b) {
                Ordering::Greater => {
                    terms.push((a.clone(), *c));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((b.clone(), *d));
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push((a.clone(), c.checked_add(*d).expect("coefficient overflow")));
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ordinal { terms }
    }

    /// Hessenberg natural product: distribute, adding ω-exponents naturally.
    pub fn natural_product(&self, other: &Ordinal) -> Ordinal {
        let mut acc = Ordinal::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let exp = a.exponent().natural_sum(&b.exponent());
                let coef = c.checked_mul(*d).expect("coefficient overflow");
                acc = acc.natural_sum(&Ordinal::omega_pow(&exp).mul_nat(coef));
            }
        }
        acc
    }

    /// `φ(1, β) + n`: a leading ε-number atom followed by a finite part.
    pub fn is_epsilon_plus_finite(&self) -> bool {
        match self.terms.split_first() {
            Some(((lead, 1), rest)) => lead.is_epsilon() && rest.iter().all(|(a, _)| a.is_one()),
            _ => false,
        }
    }

    /// The `n`-th element of the fixed fundamental sequence of a limit.
    pub fn fundamental_sequence(&self, n: u64) -> Result<Ordinal> {
        if !self.is_limit() {
            return Err(Error::NotALimit(self.to_string()));
        }
        let mut prefix = self.terms.clone();
        let (atom, c) = prefix.pop().expect("limit is nonzero");
        if c > 1 {
            prefix.push((atom.clone(), c - 1));
        }
        Ok(Ordinal { terms: prefix }.add(&atom.fundamental(n)))
    }
}

impl Atom {
    fn fundamental(&self, n: u64) -> Ordinal {
        let (a, b) = (&self.index, &self.arg);
        if a.is_zero() {
            return match b.predecessor() {
                // ω^(β+1)[n] = ω^β·n
                Some(beta) => Ordinal::omega_pow(&beta).mul_nat(n),
                None => Ordinal::omega_pow(&b.fundamental_sequence(n).expect("arg of a limit power")),
            };
        }
        if b.is_limit() {
            return Ordinal::veblen(a, &b.fundamental_sequence(n).expect("limit arg"));
        }
        match (a.predecessor(), b.predecessor()) {
            (Some(a0), None) => {
                // φ(a₀+1, 0): iterate φ(a₀, ·) from φ(a₀, 0)
                let mut x = Ordinal::veblen(&a0, &Ordinal::zero());
                for _ in 0..n {
                    x = Ordinal::veblen(&a0, &x);
                }
                x
            }
            (Some(a0), Some(b0)) => {
                let mut x = Ordinal::veblen(a, &b0).succ();
                for _ in 0..n {
                    x = Ordinal::veblen(&a0, &x);
                }
                x
            }
            (None, None) => Ordinal::veblen(&a.fundamental_sequence(n).expect("limit index"), &Ordinal::zero()),
            (None, Some(b0)) => Ordinal::veblen(
                &a.fundamental_sequence(n).expect("limit index"),
                &Ordinal::veblen(a, &b0).succ(),
            ),
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((a, c), (b, d)) in self.terms.iter().zip(&other.terms) {
            match a.cmp(b).then(c.cmp(d)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (atom, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if atom.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{atom}")?;
                if *c > 1 {
                    write!(f, "*{c}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.index.is_zero() {
            return write!(f, "phi({},{})", self.index, self.arg);
        }
        let e = &self.arg;
        if e.is_zero() {
            f.write_str("1")
        } else if *e == Ordinal::one() {
            f.write_str("w")
        } else if e.as_nat().is_some() || e.as_atom().is_some_and(Atom::is_epsilon) {
            write!(f, "w^{e}")
        } else if e.as_atom() == Ordinal::omega().as_atom() {
            f.write_str("w^w")
        } else {
            write!(f, "w^({e})")
        }
    }
}

/// Closed-form maximal order types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OtypeQuery {
    Seq(Ordinal),
    Multiset(Ordinal),
    Sum(Ordinal, Ordinal),
    Product(Ordinal, Ordinal),
}

pub fn otype_of(query: &OtypeQuery) -> Ordinal {
    match query {
        OtypeQuery::Seq(a) => otype_seq(a),
        OtypeQuery::Multiset(a) => Ordinal::omega_pow(a),
        OtypeQuery::Sum(a, b) => a.natural_sum(b),
        OtypeQuery::Product(a, b) => a.natural_product(b),
    }
}

/// `o(Seq(X))` as a function of `o(X)`: `ω^(ω^(α−1))` for finite `α` (with
/// `ω^(−1) = 0`), `ω^(ω^(α+1))` when `α = φ(1,β) + n`, else `ω^(ω^α)`.
pub fn otype_seq(a: &Ordinal) -> Ordinal {
    let inner = match a.as_nat() {
        Some(0) => return Ordinal::one(),
        Some(n) => Ordinal::nat(n - 1),
        None if a.is_epsilon_plus_finite() => a.succ(),
        None => a.clone(),
    };
    Ordinal::omega_pow(&Ordinal::omega_pow(&inner))
}

/// Maps registered with the normal-function analyzer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdinalMap {
    SeqOtype,
    MultisetOtype,
    OmegaPow,
}

impl OrdinalMap {
    pub fn apply(&self, a: &Ordinal) -> Ordinal {
        match self {
            OrdinalMap::SeqOtype => otype_seq(a),
            OrdinalMap::MultisetOtype | OrdinalMap::OmegaPow => Ordinal::omega_pow(a),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrdinalMap::SeqOtype => "seq-otype",
            OrdinalMap::MultisetOtype => "multiset-otype",
            OrdinalMap::OmegaPow => "omega-pow",
        }
    }
}

impl std::str::FromStr for OrdinalMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq-otype" | "seq" => Ok(OrdinalMap::SeqOtype),
            "multiset-otype" | "multiset" | "mset" => Ok(OrdinalMap::MultisetOtype),
            "omega-pow" | "wpow" => Ok(OrdinalMap::OmegaPow),
            other => Err(Error::UnknownTransformation(other.to_owned())),
        }
    }
}

/// A random normal form of bounded nesting depth.
pub fn random_ordinal<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Ordinal {
    if depth == 0 {
        return Ordinal::nat(rng.random_range(0..6));
    }
    match rng.random_range(0..7) {
        0 => Ordinal::nat(rng.random_range(0..20)),
        1 => Ordinal::omega_pow(&random_ordinal(rng, depth - 1)),
        2 => {
            let index = Ordinal::nat(rng.random_range(1..3));
            Ordinal::veblen(&index, &random_ordinal(rng, depth - 1))
        }
        3 => random_ordinal(rng, depth - 1).add(&random_ordinal(rng, depth - 1)),
        4 => random_ordinal(rng, depth - 1).natural_sum(&random_ordinal(rng, depth - 1)),
        5 => Ordinal::veblen(&random_ordinal(rng, depth - 1), &random_ordinal(rng, depth - 1)),
        _ => random_ordinal(rng, depth - 1).mul_nat(rng.random_range(1..4)),
    }
}

/// Fundamental-sequence steps tested for cofinality at each probe.
pub const CONTINUITY_STEPS: u64 = 8;

/// How far past a step the matching image is searched for.
const SEARCH_SPAN: u64 = 8;

/// Checks that `f` is strictly increasing on seeded random pairs and on the
/// neighbourhood of every probe, and continuous at every probe.
///
/// Continuity at `λ` means mutual cofinality: each `f(λ)[k]` is reached by
/// some `f(λ[n])`, and every `f(λ[n])` stays below `f(λ)`.
pub fn check_normal_function(f: OrdinalMap, probes: &[Ordinal], pair_samples: usize, seed: u64) -> Result<Verdict> {
    if let Some(p) = probes.iter().find(|p| !p.is_limit()) {
        return Err(Error::NotALimit(p.to_string()));
    }
    let bounds = [
        ("probes", probes.len() as u64),
        ("pairSamples", pair_samples as u64),
        ("seed", seed),
        ("continuitySteps", CONTINUITY_STEPS),
    ];
    let mut verdict = Verdict::new("normal-function", f.name(), &bounds);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(pair_samples + probes.len() * 12);
    while pairs.len() < pair_samples {
        let a = random_ordinal(&mut rng, 3);
        let b = random_ordinal(&mut rng, 3);
        match a.cmp(&b) {
            Ordering::Less => pairs.push((a, b)),
            Ordering::Greater => pairs.push((b, a)),
            Ordering::Equal => {}
        }
    }
    for lambda in probes {
        for n in 0..CONTINUITY_STEPS {
            let here = lambda.fundamental_sequence(n)?;
            pairs.push((here.clone(), lambda.fundamental_sequence(n + 1)?));
            pairs.push((here, lambda.clone()));
        }
        pairs.push((lambda.clone(), lambda.succ()));
        pairs.push((lambda.clone(), lambda.add(lambda)));
    }
    let mut broken = None;
    for (a, b) in &pairs {
        verdict.instances_checked += 1;
        let (fa, fb) = (f.apply(a), f.apply(b));
        if fa >= fb && broken.is_none() {
            broken = Some(MonotonicityWitness {
                below: a.clone(),
                above: b.clone(),
                image_below: fa,
                image_above: fb,
            });
        }
    }

    let mut gaps = Vec::new();
    for lambda in probes {
        verdict.instances_checked += 1;
        let value = f.apply(lambda);
        let images: Vec<Ordinal> = (0..=CONTINUITY_STEPS + SEARCH_SPAN)
            .map(|n| lambda.fundamental_sequence(n).map(|x| f.apply(&x)))
            .collect::<Result<_>>()?;
        let reaches = |target: &Ordinal| images.iter().any(|img| target <= img);
        let below = images.iter().all(|img| *img < value);
        let unreached = if value.is_limit() {
            (0..CONTINUITY_STEPS)
                .map(|k| value.fundamental_sequence(k))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|step| !reaches(step))
        } else {
            Some(value.clone())
        };
        if below && unreached.is_none() {
            verdict.notes.push(format!("continuity at {lambda}: holds"));
            continue;
        }
        verdict.notes.push(format!("continuity at {lambda}: fails"));
        let cofinal_in_lambda = images.iter().all(|img| img < lambda)
            && (0..CONTINUITY_STEPS).all(|k| lambda.fundamental_sequence(k).is_ok_and(|x| reaches(&x)));
        let sup = if cofinal_in_lambda {
            lambda.clone()
        } else {
            unreached.unwrap_or_else(|| images.iter().max().cloned().unwrap_or_else(Ordinal::zero))
        };
        gaps.push(ContinuityGap {
            limit: lambda.clone(),
            sup,
            value,
        });
    }

    Ok(if let Some(w) = broken {
        verdict.fail_with(Counterexample::Monotonicity(w))
    } else if !gaps.is_empty() {
        verdict.fail_with(Counterexample::Continuity(ContinuityWitness { gaps }))
    } else {
        verdict
    })
}
