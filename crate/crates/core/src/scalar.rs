//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate runs over one of two kinds of field,
//! selected at runtime: the rationals (characteristic 0, backed by
//! `num_rational::BigRational`, always gcd-reduced with normalized sign) or a
//! prime field F_p with elements stored as canonical residues `0..p-1`.
//! A [`FieldSpec`] bundles the characteristic with the distinguished loop
//! parameter `delta` used by the diagram algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("invalid scalar `{text}` at column {col}: {msg}")]
    Parse {
        text: String,
        col: usize,
        msg: String,
    },
    #[error("characteristic {0} is neither 0 nor prime")]
    BadCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact field element. `Mod` values carry their modulus so that
/// arithmetic is self-describing; mixing moduli is a programming error.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { p: u64, val: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, val: a }, Scalar::Mod { p: q, val: b }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Mod {
                    p: *p,
                    val: (a + b) % p,
                }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, val } => Scalar::Mod {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, val: a }, Scalar::Mod { p: q, val: b }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Mod {
                    p: *p,
                    val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { p, val } => Scalar::Mod {
                p: *p,
                val: mod_pow(*val, p - 2, *p),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn pow(&self, exp: i64) -> Result<Scalar, ScalarError> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let mut acc = match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Mod { p, .. } => Scalar::Mod { p: *p, val: 1 % p },
        };
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The scalar field a computation runs over: characteristic (0 or a prime)
/// plus the distinguished element `delta` of the diagram algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    characteristic: u64,
    delta: Scalar,
}

impl FieldSpec {
    pub fn new(characteristic: u64, delta: Scalar) -> Result<FieldSpec, ScalarError> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(ScalarError::BadCharacteristic(characteristic));
        }
        match (&delta, characteristic) {
            (Scalar::Rat(_), 0) => {}
            (Scalar::Mod { p, .. }, c) if *p == c => {}
            _ => {
                return Err(ScalarError::Parse {
                    text: delta.to_string(),
                    col: 0,
                    msg: "delta does not lie in the requested field".into(),
                })
            }
        }
        Ok(FieldSpec {
            characteristic,
            delta,
        })
    }

    /// Rationals with the given delta.
    pub fn rational(delta: Scalar) -> FieldSpec {
        FieldSpec::new(0, delta).expect("rational delta")
    }

    /// Rationals with an integer delta.
    pub fn rational_delta(delta: i64) -> FieldSpec {
        let f = FieldSpec {
            characteristic: 0,
            delta: Scalar::Rat(BigRational::zero()),
        };
        let d = f.from_int(delta);
        FieldSpec::rational(d)
    }

    /// Prime field F_p with integer delta reduced mod p.
    pub fn prime(p: u64, delta: i64) -> Result<FieldSpec, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::BadCharacteristic(p));
        }
        let f = FieldSpec {
            characteristic: p,
            delta: Scalar::Mod { p, val: 0 },
        };
        let d = f.from_int(delta);
        FieldSpec::new(p, d)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::zero()),
            p => Scalar::Mod { p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::one()),
            p => Scalar::Mod { p, val: 1 },
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            p => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { p, val: r }
            }
        }
    }

    /// Sign scalar: +1 or -1.
    pub fn sign(&self, s: i64) -> Scalar {
        self.from_int(if s >= 0 { 1 } else { -1 })
    }

    /// Parse scalar text: integers `-3`, rationals `7/2`, residues `4`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let t = text.trim();
        let err = |col: usize, msg: &str| ScalarError::Parse {
            text: text.to_string(),
            col,
            msg: msg.to_string(),
        };
        if t.is_empty() {
            return Err(err(0, "empty scalar"));
        }
        match self.characteristic {
            0 => {
                if let Some(slash) = t.find('/') {
                    let (n, d) = (&t[..slash], &t[slash + 1..]);
                    let num: BigInt = n.parse().map_err(|_| err(0, "bad numerator"))?;
                    let den: BigInt = d.parse().map_err(|_| err(slash + 1, "bad denominator"))?;
                    if den.is_zero() {
                        return Err(err(slash + 1, "zero denominator"));
                    }
                    Ok(Scalar::Rat(BigRational::new(num, den)))
                } else {
                    let num: BigInt = t.parse().map_err(|_| err(0, "bad integer"))?;
                    Ok(Scalar::Rat(BigRational::from_integer(num)))
                }
            }
            _p => {
                let n: i64 = t.parse().map_err(|_| err(0, "bad residue"))?;
                Ok(self.from_int(n))
            }
        }
    }
}

/// Deterministic splitmix64 generator. All randomness in the crate flows
/// from one explicit 64-bit seed so reports are byte-identical across runs.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }

    /// A scalar suitable for random linear combinations: any residue mod p,
    /// or a small integer over the rationals.
    pub fn scalar(&mut self, field: &FieldSpec) -> Scalar {
        match field.characteristic() {
            0 => field.from_int(self.below(19) as i64 - 9),
            p => Scalar::Mod {
                p,
                val: self.below(p),
            },
        }
    }
}

impl Scalar {
    /// True iff `self` is a signed integer equal to `n` (char 0) or congruent
    /// to it (char p).
    pub fn is_int(&self, n: i64) -> bool {
        match self {
            Scalar::Rat(r) => r == &BigRational::from_integer(BigInt::from(n)),
            Scalar::Mod { p, val } => *val == n.rem_euclid(*p as i64) as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let q = FieldSpec::rational_delta(3);
        assert_eq!(q.parse_scalar("-3").unwrap().to_string(), "-3");
        assert_eq!(q.parse_scalar("7/2").unwrap().to_string(), "7/2");
        assert_eq!(q.parse_scalar("14/4").unwrap().to_string(), "7/2");
        let f5 = FieldSpec::prime(5, 1).unwrap();
        assert_eq!(f5.parse_scalar("4").unwrap().to_string(), "4");
        assert_eq!(f5.parse_scalar("-1").unwrap().to_string(), "4");
        assert!(q.parse_scalar("1/0").is_err());
    }

    #[test]
    fn characteristic_must_be_prime() {
        assert!(FieldSpec::prime(6, 1).is_err());
        assert!(FieldSpec::prime(5, 0).is_ok());
        assert!(FieldSpec::new(1, Scalar::Mod { p: 1, val: 0 }).is_err());
    }

    #[test]
    fn fermat_identity_all_residues() {
        for p in [2u64, 3, 5, 7, 11] {
            let f = FieldSpec::prime(p, 1).unwrap();
            for x in 0..p {
                let s = f.from_int(x as i64);
                assert_eq!(s.pow(p as i64).unwrap(), s, "x^p = x in F_{p}");
            }
        }
    }

    proptest! {
        #[test]
        fn rational_inverse_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
            prop_assume!(n != 0);
            let q = FieldSpec::rational_delta(1);
            let a = q.parse_scalar(&format!("{n}/{d}")).unwrap();
            let b = a.inv().unwrap();
            prop_assert!(a.mul(&b).is_one());
        }

        #[test]
        fn mod_field_axioms(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
            let p = 7u64;
            let (x, y, z) = (
                Scalar::Mod { p, val: a },
                Scalar::Mod { p, val: b },
                Scalar::Mod { p, val: c },
            );
            prop_assert_eq!(x.add(&y).mul(&z.clone()), x.mul(&z).add(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.add(&x.neg()), Scalar::Mod { p, val: 0 });
        }
    }
}
