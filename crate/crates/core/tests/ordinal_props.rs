use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wpo_core::ordinal::{otype_of, otype_seq, random_ordinal, Ordinal, OtypeQuery};
use wpo_core::syntax::parse_ordinal;
use wpo_core::Error;

fn ord(text: &str) -> Ordinal {
    parse_ordinal(text).unwrap()
}

fn pool() -> Vec<Ordinal> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out: Vec<Ordinal> = (0..520).map(|_| random_ordinal(&mut rng, 3)).collect();
    for text in ["0", "1", "2", "w", "w+1", "w*2", "w^2", "w^w", "e0", "e0+1", "phi(1,1)", "phi(2,0)", "phi(w,0)"] {
        out.push(ord(text));
    }
    out
}

/// Cantor normal form below ε₀ as nested exponent lists, compared
/// lexicographically with no reference to the Veblen machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cantor(Vec<(Cantor, u64)>);

impl Cantor {
    fn of(a: &Ordinal) -> Option<Cantor> {
        a.terms()
            .iter()
            .map(|(atom, c)| {
                if atom.index().is_zero() {
                    Some((Cantor::of(atom.arg())?, *c))
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Cantor)
    }

    fn cmp(&self, other: &Cantor) -> Ordering {
        for (x, y) in self.0.iter().zip(&other.0) {
            let o = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

/// Coefficients of `ω^k` for ordinals below `ω^ω`.
fn polynomial(a: &Ordinal) -> Option<Vec<u64>> {
    let mut coeffs = vec![0; 8];
    for (atom, c) in a.terms() {
        let k = if atom.index().is_zero() { atom.arg().as_nat()? } else { return None };
        *coeffs.get_mut(k as usize)? += c;
    }
    Some(coeffs)
}

#[test]
fn comparison_is_a_total_order() {
    let mut p = pool();
    p.sort();
    for i in 0..p.len() {
        for j in i..p.len() {
            let o = p[i].cmp(&p[j]);
            assert_ne!(o, Ordering::Greater);
            assert_eq!(p[j].cmp(&p[i]), o.reverse());
            assert_eq!(o == Ordering::Equal, p[i] == p[j]);
        }
    }
}

#[test]
fn comparison_agrees_with_cantor_forms_below_epsilon_zero() {
    let small: Vec<(Ordinal, Cantor)> = pool().into_iter().filter_map(|a| Cantor::of(&a).map(|c| (a, c))).collect();
    assert!(small.len() > 100);
    for (a, ca) in &small {
        for (b, cb) in &small {
            assert_eq!(a.cmp(b), ca.cmp(cb), "{a} vs {b}");
        }
    }
}

#[test]
fn comparison_examples() {
    assert!(ord("w") < ord("w+1"));
    assert!(ord("phi(1,0)") > ord("w^w"));
    assert!(ord("phi(1,0)") > ord("w^(w^(w^w))"));
    assert!(ord("phi(2,0)") > ord("phi(1,phi(1,0))"));
    assert_eq!(ord("phi(1,1)").cmp(&ord("phi(1,1)")), Ordering::Equal);
}

#[test]
fn natural_sum_laws() {
    let p = pool();
    for a in &p {
        assert_eq!(Ordinal::zero().natural_sum(a), *a);
        for b in p.iter().step_by(5) {
            assert_eq!(a.natural_sum(b), b.natural_sum(a));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3000 {
        let [a, b, c] = [0; 3].map(|_| &p[rng.random_range(0..p.len())]);
        assert_eq!(a.natural_sum(b).natural_sum(c), a.natural_sum(&b.natural_sum(c)));
        if a < b {
            assert!(a.natural_sum(c) < b.natural_sum(c));
            assert!(c.natural_sum(a) < c.natural_sum(b));
        }
    }
    for x in 0..50 {
        for y in 0..50 {
            assert_eq!(Ordinal::nat(x).natural_sum(&Ordinal::nat(y)), Ordinal::nat(x + y));
        }
    }
    assert_eq!(ord("w+1").natural_sum(&ord("w")), ord("w*2+1"));
}

#[test]
fn natural_product_laws() {
    let p = pool();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..2000 {
        let [a, b, c] = [0; 3].map(|_| &p[rng.random_range(0..p.len())]);
        assert_eq!(a.natural_product(&b.natural_sum(c)), a.natural_product(b).natural_sum(&a.natural_product(c)));
        assert_eq!(a.natural_product(b), b.natural_product(a));
    }
    for x in 0..30 {
        for y in 0..30 {
            assert_eq!(Ordinal::nat(x).natural_product(&Ordinal::nat(y)), Ordinal::nat(x * y));
        }
    }
    assert_eq!(ord("w+1").natural_product(&ord("w+1")), ord("w^2+w*2+1"));
}

#[test]
fn natural_operations_match_polynomials_below_omega_to_the_omega() {
    let small: Vec<(Ordinal, Vec<u64>)> = pool()
        .into_iter()
        .filter_map(|a| polynomial(&a).map(|c| (a, c)))
        .filter(|(_, c)| c[4..].iter().all(|&x| x == 0))
        .collect();
    assert!(small.len() > 50);
    for (a, pa) in &small {
        for (b, pb) in &small {
            let sum: Vec<u64> = pa.iter().zip(pb).map(|(x, y)| x + y).collect();
            assert_eq!(polynomial(&a.natural_sum(b)).unwrap(), sum);
            let mut prod = vec![0; 8];
            for i in 0..4 {
                for j in 0..4 {
                    prod[i + j] += pa[i] * pb[j];
                }
            }
            assert_eq!(polynomial(&a.natural_product(b)).unwrap(), prod, "{a} (*) {b}");
        }
    }
}

#[test]
fn omega_pow_and_veblen_examples() {
    assert_eq!(Ordinal::omega_pow(&Ordinal::zero()), Ordinal::one());
    assert_eq!(Ordinal::omega_pow(&Ordinal::nat(2)), ord("w^2"));
    assert_eq!(Ordinal::omega_pow(&ord("phi(1,0)")), ord("phi(1,0)"));
    let g = ord("w^w+3");
    assert_eq!(Ordinal::veblen(&Ordinal::zero(), &g), Ordinal::omega_pow(&g));
    assert_eq!(Ordinal::veblen(&Ordinal::one(), &ord("phi(2,0)")), ord("phi(2,0)"));
    assert_eq!(ord("e0"), Ordinal::epsilon(&Ordinal::zero()));
    assert_eq!(ord("1 + w"), ord("w"));
    assert_eq!(ord("w^w+1").to_string(), "w^w + 1");
}

#[test]
fn order_type_maps_are_strictly_monotone() {
    let mut p = pool();
    p.sort();
    p.dedup();
    for w in p.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        assert!(Ordinal::omega_pow(a) < Ordinal::omega_pow(b), "{a} {b}");
        assert!(otype_seq(a) < otype_seq(b), "{a} {b}");
        assert!(otype_of(&OtypeQuery::Multiset(a.clone())) < otype_of(&OtypeQuery::Multiset(b.clone())));
    }
}

#[test]
fn order_type_examples() {
    let cases = [
        ("3", "w^(w^2)"),
        ("w", "w^(w^w)"),
        ("e0", "w^(w^(e0+1))"),
        ("0", "1"),
    ];
    for (arg, expected) in cases {
        assert_eq!(otype_seq(&ord(arg)), ord(expected), "seq {arg}");
    }
    assert_eq!(otype_of(&OtypeQuery::Multiset(ord("w"))), ord("w^w"));
    assert_eq!(otype_of(&OtypeQuery::Sum(ord("w"), ord("1"))), ord("w+1"));
    assert_eq!(otype_of(&OtypeQuery::Product(ord("w+1"), ord("2"))), ord("w*2+2"));
}

#[test]
fn fundamental_sequences_climb_below_their_limit() {
    let limits: Vec<Ordinal> = pool().into_iter().filter(Ordinal::is_limit).collect();
    assert!(limits.len() > 100);
    for l in &limits {
        for n in 0..6 {
            let a = l.fundamental_sequence(n).unwrap();
            let b = l.fundamental_sequence(n + 1).unwrap();
            assert!(a < b && b < *l, "{l}[{n}] = {a}, [{}] = {b}", n + 1);
        }
    }
    assert_eq!(ord("w").fundamental_sequence(4).unwrap(), ord("4"));
    assert_eq!(ord("w^w").fundamental_sequence(3).unwrap(), ord("w^3"));
    assert_eq!(ord("e0").fundamental_sequence(2).unwrap(), ord("w^w"));
    assert!(matches!(ord("w+1").fundamental_sequence(0), Err(Error::NotALimit(_))));
    assert!(matches!(ord("0").fundamental_sequence(0), Err(Error::NotALimit(_))));
}

#[test]
fn normal_forms_are_stable_under_rebuilding() {
    for a in pool() {
        let rebuilt = a.terms().iter().fold(Ordinal::zero(), |acc, (atom, c)| {
            acc.add(&Ordinal::veblen(atom.index(), atom.arg()).mul_nat(*c))
        });
        assert_eq!(rebuilt, a);
        for w in a.terms().windows(2) {
            assert!(w[0].0 > w[1].0);
        }
        for (atom, _) in a.terms() {
            assert!(*atom.arg() < Ordinal::veblen(atom.index(), atom.arg()));
        }
    }
}

#[test]
fn printed_ordinals_parse_back() {
    for a in pool() {
        assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a, "{a}");
    }
    assert!(matches!(parse_ordinal("w^"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_ordinal("phi(1)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_ordinal("3^w"), Err(Error::Syntax { .. })));
}
