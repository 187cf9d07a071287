//! Strategies, oracles and a CLI runner shared by the integration tests.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use heron4d::scalar::{QuadScalar, Rational};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q(x: &Rational) -> QuadScalar {
    QuadScalar::from_rational(x.clone())
}

pub fn qi(n: i64) -> QuadScalar {
    QuadScalar::from_int(n)
}

/// `(p, r, h)` whose base is the longest side: `0 < h ≤ min(r, p − r)`.
pub fn triangle() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (1i64..=24, 1i64..=4, 1i64..=7, 1i64..=4)
        .prop_flat_map(|(pn, pd, t, kd)| (Just((pn, pd, t, kd)), 1i64..=kd))
        .prop_map(|((pn, pd, t, kd), kn)| {
            let p = r(pn, pd);
            let foot = &p * r(t, 8);
            let short = std::cmp::min(foot.clone(), &p - &foot);
            let h = short * r(kn, kd);
            (p, foot, h)
        })
}

/// `16·s(s−a)(s−b)(s−c)` from the raw vertex coordinates.
pub fn semiperimeter_oracle(p: &Rational, foot: &Rational, h: &Rational) -> QuadScalar {
    let back = p - foot;
    let a = QuadScalar::sqrt_of(&(foot * foot + h * h)).unwrap();
    let b = QuadScalar::sqrt_of(&(&back * &back + h * h)).unwrap();
    let c = q(p);
    let s = (&a + &b + &c) / qi(2);
    qi(16) * &s * (&s - &a) * (&s - &b) * (&s - &c)
}

/// Raw input for `q0 + q1·√d1 + q2·√d2 + q3·√(d1·d2)`.
#[derive(Clone, Debug)]
pub struct RawQuad {
    pub coords: [Rational; 4],
    pub d1: Rational,
    pub d2: Rational,
}

impl RawQuad {
    pub fn build(&self) -> QuadScalar {
        let [a, b, c, d] = self.coords.clone();
        QuadScalar::new(a, b, c, d, self.d1.clone(), self.d2.clone()).unwrap()
    }

    fn terms(&self) -> [(Rational, Rational); 4] {
        [
            (self.coords[0].clone(), r(1, 1)),
            (self.coords[1].clone(), self.d1.clone()),
            (self.coords[2].clone(), self.d2.clone()),
            (self.coords[3].clone(), &self.d1 * &self.d2),
        ]
    }

    /// Sign from a 100-digit fixed-point evaluation; `None` when the value is
    /// within the evaluation error of zero.
    pub fn decimal_sign(&self) -> Option<i8> {
        let scale = BigUint::from(10u32).pow(200);
        let mut total = BigInt::zero();
        for (c, m) in self.terms() {
            if c.is_zero() || m.is_zero() {
                continue;
            }
            // |c|·√m·10^100 = √(c²·m·10^200), truncated twice: error below 2
            let num = c.numer().magnitude().pow(2) * m.numer().magnitude() * &scale;
            let den = c.denom().magnitude().pow(2) * m.denom().magnitude();
            let root = BigInt::from_biguint(Sign::Plus, (num / den).sqrt());
            if c.is_negative() {
                total -= root;
            } else {
                total += root;
            }
        }
        let slack = BigInt::from(8);
        if total > slack {
            Some(1)
        } else if total < -slack {
            Some(-1)
        } else {
            None
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| r(n, d))
}

/// Radicands: non-squares, rational ones, squares, and pairs whose ratio is a square.
pub fn radicand() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![
        r(2, 1),
        r(3, 1),
        r(5, 1),
        r(6, 1),
        r(7, 1),
        r(8, 1),
        r(13, 1),
        r(18, 1),
        r(2, 3),
        r(5, 7),
        r(4, 1),
        r(9, 4),
        r(1, 1),
    ])
}

/// Generic elements plus near-cancelling ones whose value is far below f64 resolution.
pub fn raw_quad() -> impl Strategy<Value = RawQuad> {
    let generic = (
        small_rational(),
        small_rational(),
        small_rational(),
        small_rational(),
        radicand(),
        radicand(),
    )
        .prop_map(|(a, b, c, d, d1, d2)| RawQuad {
            coords: [a, b, c, d],
            d1,
            d2,
        });
    let near_zero = (
        small_rational(),
        small_rational(),
        small_rational(),
        radicand(),
        radicand(),
        0u32..3,
    )
        .prop_map(|(b, c, d, d1, d2, wiggle)| {
            let f = |x: &Rational| x.to_f64().unwrap();
            let approx = f(&b) * f(&d1).sqrt() + f(&c) * f(&d2).sqrt() + f(&d) * (f(&d1) * f(&d2)).sqrt();
            let scale = 1_000_000_000_000i64;
            let a = -Rational::new(
                BigInt::from((approx * scale as f64).round() as i64 + wiggle as i64 - 1),
                BigInt::from(scale),
            );
            RawQuad {
                coords: [a, b, c, d],
                d1,
                d2,
            }
        });
    prop_oneof![3 => generic, 1 => near_zero]
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heron4d"))
}

pub fn run_cli(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn run_cli_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

/// Relative paths of every file under `dir` with their bytes, sorted.
pub fn snapshot_dir(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}
