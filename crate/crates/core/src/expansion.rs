//! Products of sums expanded term by term on the integer lattice.
//!
//! The term of `(x₁ + … + x_k)ⁿ` that takes summand `x_{i+1}` from the
//! `ℓ`-th factor sits at lattice address `(…, i, …)` (entry `ℓ`). Addresses
//! that are permutations of each other give the same monomial, and terms
//! whose addresses have the same coordinate sum (level) lie on one affine
//! hyperplane; cancellation only ever happens inside such a class.
//!
//! Note: the full multinomial theorem includes the `6·x₁x₂x₃` class of
//! `(x₁+x₂+x₃)³`, which printed tables of the other nine classes omit.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::poly::MonomialPolynomial;
use crate::scalar::QuadScalar;

pub const MAX_TERMS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("k^n = {k}^{n} exceeds the limit of {MAX_TERMS} terms")]
    TooLarge { k: usize, n: usize },
    #[error("k and n must be at least 1")]
    Empty,
    #[error("side length {0} is not positive")]
    NonPositive(String),
}

/// All addresses of one monomial of a multinomial expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddressClass {
    /// `exponents[i]` counts the factors contributing `x_{i+1}`.
    pub exponents: Vec<u32>,
    pub level: usize,
    pub coefficient: BigUint,
    /// In increasing lexicographic order.
    pub addresses: Vec<Vec<u8>>,
}

impl AddressClass {
    /// Monomial such as `x1^2*x2`.
    pub fn monomial(&self) -> String {
        let names: Vec<String> = (1..=self.exponents.len()).map(|i| format!("x{}", i)).collect();
        MonomialPolynomial::monomial_label(&names, &self.exponents)
    }
}

#[derive(Clone, Debug)]
pub struct Multinomial {
    pub k: usize,
    pub n: usize,
    /// By level, then by exponent vector in decreasing order.
    pub classes: Vec<AddressClass>,
}

impl Multinomial {
    pub fn address_count(&self) -> usize {
        self.classes.iter().map(|c| c.addresses.len()).sum()
    }

    pub fn coefficient_sum(&self) -> BigUint {
        self.classes.iter().map(|c| &c.coefficient).sum()
    }

    pub fn class_of(&self, exponents: &[u32]) -> Option<&AddressClass> {
        self.classes.iter().find(|c| c.exponents == exponents)
    }
}

fn all_addresses(k: usize, n: usize) -> Vec<Vec<u8>> {
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut addr = vec![0u8; n];
            for slot in addr.iter_mut().rev() {
                *slot = (idx % k) as u8;
                idx /= k;
            }
            addr
        })
        .collect()
}

fn exponents_of(addr: &[u8], k: usize) -> Vec<u32> {
    let mut e = vec![0u32; k];
    for &i in addr {
        e[i as usize] += 1;
    }
    e
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `n! / ∏ eᵢ!`
pub fn multinomial_coefficient(exponents: &[u32]) -> BigUint {
    let n: u32 = exponents.iter().sum();
    let denom: BigUint = exponents.iter().map(|&e| factorial(e)).product();
    factorial(n) / denom
}

pub fn multinomial_expand(k: usize, n: usize) -> Result<Multinomial, ExpansionError> {
    if k == 0 || n == 0 {
        return Err(ExpansionError::Empty);
    }
    let fits = (k as u64).checked_pow(n as u32).is_some_and(|t| t <= MAX_TERMS);
    if !fits || k > 256 {
        return Err(ExpansionError::TooLarge { k, n });
    }
    let mut by_exp: BTreeMap<Vec<u32>, Vec<Vec<u8>>> = BTreeMap::new();
    for addr in all_addresses(k, n) {
        by_exp.entry(exponents_of(&addr, k)).or_default().push(addr);
    }
    let mut classes: Vec<AddressClass> = by_exp
        .into_iter()
        .map(|(exponents, addresses)| AddressClass {
            level: exponents.iter().enumerate().map(|(i, &e)| i * e as usize).sum(),
            coefficient: multinomial_coefficient(&exponents),
            exponents,
            addresses,
        })
        .collect();
    classes.sort_by(|a, b| a.level.cmp(&b.level).then(b.exponents.cmp(&a.exponents)));
    Ok(Multinomial { k, n, classes })
}

pub const HERON_SYMBOLS: [&str; 3] = ["a", "b", "c"];

/// Signs of `a, b, c` in the four factors `(a+b+c)(a+b−c)(a−b+c)(−a+b+c)`.
pub const HERON_FACTOR_SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]];

/// One hyper-rectangle of an expanded product, with its sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedBox {
    pub sign: i8,
    pub address: Vec<u8>,
    /// Selected summand per factor, as an index into the alphabet.
    pub symbols: Vec<usize>,
    pub volume: QuadScalar,
}

impl SignedBox {
    pub fn level(&self) -> usize {
        self.address.iter().map(|&i| i as usize).sum()
    }

    pub fn exponents(&self, alphabet: usize) -> Vec<u32> {
        let mut e = vec![0u32; alphabet];
        for &s in &self.symbols {
            e[s] += 1;
        }
        e
    }

    pub fn signed_volume(&self) -> QuadScalar {
        if self.sign < 0 {
            -&self.volume
        } else {
            self.volume.clone()
        }
    }
}

/// The 81 boxes of `(a+b+c)(a+b−c)(a−b+c)(−a+b+c)`, address order.
pub fn heron_signed_expansion(
    a: &QuadScalar,
    b: &QuadScalar,
    c: &QuadScalar,
) -> Result<Vec<SignedBox>, ExpansionError> {
    let lengths = [a, b, c];
    for l in lengths {
        if !l.is_positive() {
            return Err(ExpansionError::NonPositive(l.to_string()));
        }
    }
    Ok(all_addresses(3, 4)
        .into_iter()
        .map(|address| {
            let symbols: Vec<usize> = address.iter().map(|&i| i as usize).collect();
            let sign = symbols
                .iter()
                .enumerate()
                .map(|(f, &s)| HERON_FACTOR_SIGNS[f][s])
                .product();
            let volume = symbols.iter().map(|&s| lengths[s].clone()).product();
            SignedBox {
                sign,
                address,
                symbols,
                volume,
            }
        })
        .collect())
}

pub fn group_by_level(terms: &[SignedBox]) -> BTreeMap<usize, Vec<SignedBox>> {
    let mut out: BTreeMap<usize, Vec<SignedBox>> = BTreeMap::new();
    for t in terms {
        out.entry(t.level()).or_default().push(t.clone());
    }
    out
}

pub fn signed_sum(terms: &[SignedBox]) -> QuadScalar {
    terms.iter().map(SignedBox::signed_volume).sum()
}

#[derive(Clone, Debug)]
pub struct Cancellation {
    pub net: MonomialPolynomial,
    /// `(positive, negative)` pairs of equal monomial and level.
    pub pairs: Vec<(SignedBox, SignedBox)>,
    pub leftovers: Vec<SignedBox>,
}

impl Cancellation {
    /// Each pair cancels exactly and lies on one level.
    pub fn pairs_sound(&self) -> bool {
        self.pairs.iter().all(|(p, n)| {
            p.sign > 0 && n.sign < 0 && p.level() == n.level() && (&p.signed_volume() + &n.signed_volume()).is_zero()
        })
    }
}

/// Pairs opposite signs inside each (level, monomial) bucket, first positive
/// with first negative in address order; the rest forms the net polynomial.
pub fn cancel(terms: &[SignedBox], alphabet: &[&str]) -> Cancellation {
    let mut buckets: BTreeMap<(usize, Vec<u32>), Vec<&SignedBox>> = BTreeMap::new();
    for t in terms {
        buckets
            .entry((t.level(), t.exponents(alphabet.len())))
            .or_default()
            .push(t);
    }
    let mut net = MonomialPolynomial::zero(alphabet);
    let mut pairs = Vec::new();
    let mut leftovers = Vec::new();
    for ((_, exponents), mut bucket) in buckets {
        bucket.sort_by(|x, y| x.address.cmp(&y.address));
        let (pos, neg): (Vec<&SignedBox>, Vec<&SignedBox>) = bucket.into_iter().partition(|t| t.sign > 0);
        let matched = pos.len().min(neg.len());
        for i in 0..matched {
            pairs.push((pos[i].clone(), neg[i].clone()));
        }
        for t in pos[matched..].iter().chain(&neg[matched..]) {
            net.add_term(exponents.clone(), BigInt::from(t.sign));
            leftovers.push((*t).clone());
        }
    }
    Cancellation { net, pairs, leftovers }
}

/// `2a²b² + 2a²c² + 2b²c² − a⁴ − b⁴ − c⁴` over `a, b, c`.
pub fn heron_target() -> MonomialPolynomial {
    let mut p = MonomialPolynomial::zero(&HERON_SYMBOLS);
    for (e, c) in [
        ([2, 2, 0], 2),
        ([2, 0, 2], 2),
        ([0, 2, 2], 2),
        ([4, 0, 0], -1),
        ([0, 4, 0], -1),
        ([0, 0, 4], -1),
    ] {
        p.add_term(e.to_vec(), BigInt::from(c));
    }
    p
}

/// A signed term of an identity certified by exact evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedTerm {
    pub label: String,
    pub sign: i8,
    pub value: QuadScalar,
}

/// `Σ sign·value` checked against an independently computed value.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedCertificate {
    pub name: String,
    pub terms: Vec<SignedTerm>,
    pub net: QuadScalar,
    pub expected: QuadScalar,
    pub verdict: bool,
}

impl SignedCertificate {
    pub fn new(name: &str, terms: Vec<SignedTerm>, expected: QuadScalar) -> Self {
        let net: QuadScalar = terms
            .iter()
            .map(|t| if t.sign < 0 { -&t.value } else { t.value.clone() })
            .sum();
        SignedCertificate {
            name: name.to_string(),
            verdict: net == expected,
            terms,
            net,
            expected,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn q(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    #[test]
    fn trinomial_cube_classes() {
        let m = multinomial_expand(3, 3).unwrap();
        assert_eq!(m.address_count(), 27);
        assert_eq!(m.classes.len(), 10);
        assert_eq!(m.coefficient_sum(), BigUint::from(27u32));
        let c = m.class_of(&[2, 1, 0]).unwrap();
        assert_eq!(c.coefficient, BigUint::from(3u32));
        assert_eq!(c.addresses, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(c.monomial(), "x1^2*x2");
        assert_eq!(m.class_of(&[1, 1, 1]).unwrap().coefficient, BigUint::from(6u32));
        for c in &m.classes {
            assert_eq!(BigUint::from(c.addresses.len()), c.coefficient);
        }
    }

    #[test]
    fn binomial_square_and_limits() {
        let m = multinomial_expand(2, 2).unwrap();
        let coeffs: Vec<BigUint> = m.classes.iter().map(|c| c.coefficient.clone()).collect();
        assert_eq!(
            coeffs,
            vec![1u32, 2, 1].into_iter().map(BigUint::from).collect::<Vec<_>>()
        );
        assert!(multinomial_expand(10, 7).is_err());
        assert!(multinomial_expand(10, 6).is_ok());
        assert!(multinomial_expand(0, 3).is_err());
    }

    #[test]
    fn heron_expansion_shape() {
        let t = heron_signed_expansion(&q(3), &q(4), &q(5)).unwrap();
        assert_eq!(t.len(), 81);
        assert_eq!(t[0].address, vec![0, 0, 0, 0]);
        assert_eq!(t[0].sign, -1);
        assert_eq!(t[80].sign, -1);
        assert_eq!(t[80].volume, q(625));
        let levels = group_by_level(&t);
        let sizes: Vec<usize> = levels.values().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 4, 10, 16, 19, 16, 10, 4, 1]);
        assert!(heron_signed_expansion(&q(0), &q(4), &q(5)).is_err());
    }

    #[test]
    fn heron_cancellation() {
        let a = QuadScalar::sqrt_of(&rat_int(5)).unwrap();
        let b = QuadScalar::sqrt_of(&rat_int(13)).unwrap();
        let t = heron_signed_expansion(&a, &b, &q(4)).unwrap();
        let c = cancel(&t, &HERON_SYMBOLS);
        assert_eq!(c.net, heron_target());
        assert!(c.pairs_sound());
        assert_eq!(c.pairs.len() * 2 + c.leftovers.len(), 81);
        // The a³b class: four addresses, two of each sign.
        let a3b: Vec<&SignedBox> = t.iter().filter(|s| s.exponents(3) == [3, 1, 0]).collect();
        assert_eq!(a3b.len(), 4);
        assert_eq!(a3b.iter().map(|s| s.sign as i32).sum::<i32>(), 0);
        assert_eq!(
            c.net.to_string(),
            "-a^4 + 2*a^2*b^2 + 2*a^2*c^2 - b^4 + 2*b^2*c^2 - c^4"
        );
    }

    #[test]
    fn net_evaluates_to_sixteen_area_squared() {
        let vals = [q(3), q(4), q(5)];
        assert_eq!(heron_target().eval(&vals), q(576));
        let t = heron_signed_expansion(&vals[0], &vals[1], &vals[2]).unwrap();
        assert_eq!(signed_sum(&t), q(576));
    }

    #[test]
    fn signed_certificate() {
        let terms = vec![
            SignedTerm {
                label: "x^4".into(),
                sign: 1,
                value: q(16),
            },
            SignedTerm {
                label: "2x^2y^2".into(),
                sign: -1,
                value: q(8),
            },
            SignedTerm {
                label: "y^4".into(),
                sign: 1,
                value: q(1),
            },
        ];
        let c = SignedCertificate::new("diff", terms, q(9));
        assert!(c.verdict);
        let bad = SignedCertificate::new("diff", vec![], QuadScalar::from_rational(rat(1, 2)));
        assert!(!bad.verdict);
    }
}
