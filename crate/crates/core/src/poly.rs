//! Univariate polynomial arithmetic over an exact field, plus the
//! factorization routines the module-splitting machinery needs: distinct- and
//! equal-degree splitting over F_p, squarefree decomposition and rational-root
//! extraction over the rationals.

use crate::matrix::{kernel_basis, Matrix};
use crate::scalar::{FieldSpec, Rng, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial; coefficient of x^i at index i, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Scalar>,
    pub field: FieldSpec,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>, field: &FieldSpec) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            field: field.clone(),
        }
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly {
            coeffs: vec![],
            field: field.clone(),
        }
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::new(vec![field.one()], field)
    }

    pub fn x(field: &FieldSpec) -> Poly {
        Poly::new(vec![field.zero(), field.one()], field)
    }

    /// x - c
    pub fn linear(c: &Scalar, field: &FieldSpec) -> Poly {
        Poly::new(vec![c.neg(), field.one()], field)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        Poly::new(out, &self.field)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.one().neg()))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.field)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(out, &self.field)
    }

    pub fn divmod(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < div.coeffs.len() {
            return (Poly::zero(&self.field), self.clone());
        }
        let dlead_inv = div.lead().inv().expect("unit leading coefficient");
        let dq = rem.len() - div.coeffs.len();
        let mut quot = vec![self.field.zero(); dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + div.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&dlead_inv);
            quot[k] = q.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(dc));
            }
        }
        (Poly::new(quot, &self.field), Poly::new(rem, &self.field))
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divmod(div).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv().expect("unit lead"))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_int(i as i64)))
            .collect();
        Poly::new(out, &self.field)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self^e mod m
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Squarefree part of a monic polynomial (product of distinct irreducible
/// factors). Over F_p the perfect-power case x = y^p is handled by recursion.
pub fn squarefree_part(f: &Poly) -> Poly {
    let f = f.monic();
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p) over F_p; take p-th "root" by exponent division.
        let p = f.field.characteristic() as usize;
        assert!(
            p > 0,
            "nonconstant rational polynomial has nonzero derivative"
        );
        let mut root = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i % p == 0 {
                root.push(c.clone());
            } else {
                assert!(c.is_zero());
            }
        }
        return squarefree_part(&Poly::new(root, &f.field));
    }
    let g = f.gcd(&d);
    f.divmod(&g).0.monic()
}

/// One monic factor with multiplicity.
pub type Factor = (Poly, usize);

/// Full factorization into monic irreducibles over F_p via squarefree,
/// distinct-degree and equal-degree (Cantor-Zassenhaus) splitting.
pub fn factor_mod_p(f: &Poly, rng: &mut Rng) -> Vec<Factor> {
    let p = f.field.characteristic();
    assert!(p > 0, "factor_mod_p requires a prime field");
    let mut out: Vec<Factor> = Vec::new();
    let mut work = f.monic();
    while work.degree() > 0 {
        let sqf = squarefree_part(&work);
        for irr in factor_squarefree_mod_p(&sqf, rng) {
            let mut mult = 0;
            loop {
                let (q, r) = work.divmod(&irr);
                if r.is_zero() {
                    work = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            out.push((irr, mult));
        }
    }
    out.sort_by_key(|f| (f.0.degree(), format_key(&f.0)));
    out
}

fn format_key(f: &Poly) -> Vec<String> {
    f.coeffs.iter().map(|c| c.to_string()).collect()
}

fn factor_squarefree_mod_p(f: &Poly, rng: &mut Rng) -> Vec<Poly> {
    let p = f.field.characteristic();
    let mut out = Vec::new();
    let mut work = f.monic();
    // distinct-degree: peel off the product of all irreducibles of degree d
    let mut d = 1u64;
    let x = Poly::x(&f.field);
    let mut xq = x.clone();
    while work.degree() >= 1 {
        if 2 * (d as usize) > work.degree() {
            out.push(work.monic());
            break;
        }
        xq = xq.powmod(p, &work);
        let g = work.gcd(&xq.sub(&x));
        if g.degree() > 0 {
            equal_degree_split(&g, d as usize, rng, &mut out);
            work = work.divmod(&g).0;
            xq = xq.rem(&work);
        }
        d += 1;
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is squarefree, all
/// irreducible factors of degree `d`.
fn equal_degree_split(f: &Poly, d: usize, rng: &mut Rng, out: &mut Vec<Poly>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let p = f.field.characteristic();
    loop {
        let mut coeffs = Vec::new();
        for _ in 0..f.degree() {
            coeffs.push(rng.scalar(&f.field));
        }
        let a = Poly::new(coeffs, &f.field);
        if a.degree() == 0 || a.is_zero() {
            continue;
        }
        let g = f.gcd(&a);
        let h = if g.degree() > 0 && g.degree() < f.degree() {
            g
        } else if p == 2 {
            // trace map T(a) = a + a^2 + ... + a^{2^{d-1}} splits in char 2
            let mut t = a.rem(f);
            let mut pw = a.rem(f);
            for _ in 1..d {
                pw = pw.mul(&pw).rem(f);
                t = t.add(&pw);
            }
            f.gcd(&t)
        } else {
            let e = (pow_u128(p as u128, d as u32) - 1) / 2;
            let b = powmod_u128(&a, e, f);
            f.gcd(&b.sub(&Poly::one(&f.field)))
        };
        if h.degree() > 0 && h.degree() < f.degree() {
            equal_degree_split(&h, d, rng, out);
            equal_degree_split(&f.divmod(&h).0, d, rng, out);
            return;
        }
    }
}

fn pow_u128(base: u128, exp: u32) -> u128 {
    base.pow(exp)
}

fn powmod_u128(a: &Poly, mut e: u128, m: &Poly) -> Poly {
    let mut acc = Poly::one(&a.field);
    let mut base = a.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(m);
        }
        base = base.mul(&base).rem(m);
        e >>= 1;
    }
    acc
}

/// Rational roots of a polynomial over the rationals, by the rational-root
/// theorem applied to a cleared-denominator integer polynomial.
pub fn rational_roots(f: &Poly) -> Vec<Scalar> {
    assert_eq!(f.field.characteristic(), 0);
    if f.is_zero() {
        return vec![];
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &f.coeffs {
        if let Scalar::Rat(r) = c {
            lcm = lcm.lcm(r.denom());
        }
    }
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.numer() * (&lcm / r.denom()),
            _ => unreachable!(),
        })
        .collect();
    // strip powers of x
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(f.field.zero());
    }
    let a0 = ints[low].abs();
    let an = ints.last().unwrap().abs();
    let p_divs = small_divisors(&a0);
    let q_divs = small_divisors(&an);
    let mut seen = std::collections::BTreeSet::new();
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                let cand = Scalar::Rat(BigRational::new(p * BigInt::from(sign), q.clone()));
                if seen.insert(cand.to_string()) && f.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    // exhaustive trial division; desk-scale coefficients only
    let mut out = Vec::new();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Coprime factorization of a monic polynomial suitable for generalized
/// eigenspace splitting. Over F_p this is the full irreducible factorization;
/// over the rationals, linear factors from rational roots plus one residual
/// blob (which may hide irrational eigenvalues — flagged by the caller).
pub fn split_factors(f: &Poly, rng: &mut Rng) -> Vec<Factor> {
    if f.field.characteristic() > 0 {
        return factor_mod_p(f, rng);
    }
    let f = f.monic();
    let mut out: Vec<Factor> = Vec::new();
    let mut work = f;
    for root in rational_roots(&work) {
        let lin = Poly::linear(&root, &work.field);
        let mut mult = 0;
        loop {
            let (q, r) = work.divmod(&lin);
            if r.is_zero() {
                work = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult > 0 {
            out.push((lin, mult));
        }
    }
    if work.degree() > 0 {
        out.push((work, 1));
    }
    out
}

/// Minimal polynomial of a square matrix, by finding the first linear
/// dependence among the vectorized powers I, A, A^2, ...
pub fn min_poly(a: &Matrix) -> Poly {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let field = &a.field;
    let mut powers: Vec<Matrix> = vec![Matrix::identity(n, field)];
    loop {
        // stack vectorized powers as columns and look for a kernel vector
        let k = powers.len();
        let mut stacked = Matrix::zero(n * n, k, field);
        for (j, m) in powers.iter().enumerate() {
            for i in 0..n {
                for c in 0..n {
                    stacked.set(i * n + c, j, m.get(i, c).clone());
                }
            }
        }
        let ker = kernel_basis(&stacked);
        if ker.rows > 0 {
            // kernel vectors with nonzero last coordinate give the relation of
            // minimal length; rref order guarantees one exists
            for i in 0..ker.rows {
                if !ker.get(i, k - 1).is_zero() {
                    let v = ker.row(i).to_vec();
                    return Poly::new(v, field).monic();
                }
            }
            unreachable!("kernel appeared without a top-degree relation");
        }
        let next = powers.last().unwrap().mul(a);
        powers.push(next);
        assert!(
            powers.len() <= n + 1,
            "minimal polynomial search overran dimension"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational_delta(1)
    }

    fn poly(cs: &[i64], f: &FieldSpec) -> Poly {
        Poly::new(cs.iter().map(|&c| f.from_int(c)).collect(), f)
    }

    #[test]
    fn divmod_roundtrip() {
        let f = q();
        let a = poly(&[2, 0, -3, 1], &f);
        let b = poly(&[1, 1], &f);
        let (quot, rem) = a.divmod(&b);
        assert_eq!(quot.mul(&b).add(&rem), a);
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = FieldSpec::prime(5, 1).unwrap();
        let a = poly(&[4, 0, 1], &f); // x^2 + 4 = (x-1)(x-4) mod 5
        let b = poly(&[-1, 1], &f); // x - 1
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn factor_mod_p_splits_fully() {
        let f = FieldSpec::prime(5, 1).unwrap();
        let mut rng = Rng::new(0);
        // (x-1)^2 (x-2) (x^2+2) where x^2+2 is irreducible mod 5
        let p = poly(&[-1, 1], &f);
        let target = p
            .mul(&p)
            .mul(&poly(&[-2, 1], &f))
            .mul(&poly(&[2, 0, 1], &f));
        let facs = factor_mod_p(&target, &mut rng);
        let mut rebuilt = Poly::one(&f);
        for (g, m) in &facs {
            for _ in 0..*m {
                rebuilt = rebuilt.mul(g);
            }
        }
        assert_eq!(rebuilt, target.monic());
        assert_eq!(
            facs.iter().map(|(g, m)| g.degree() * m).sum::<usize>(),
            target.degree()
        );
        assert_eq!(facs.len(), 3);
    }

    #[test]
    fn factor_char_two() {
        let f = FieldSpec::prime(2, 1).unwrap();
        let mut rng = Rng::new(1);
        // x^2 + x = x(x+1)
        let target = poly(&[0, 1, 1], &f);
        let facs = factor_mod_p(&target, &mut rng);
        assert_eq!(facs.len(), 2);
    }

    #[test]
    fn rational_roots_found() {
        let f = q();
        // (x - 1/2)(x + 3) * (x^2 + 1)
        let target = poly(&[-1, 2], &f)
            .mul(&poly(&[3, 1], &f))
            .mul(&poly(&[1, 0, 1], &f));
        let roots = rational_roots(&target);
        let strs: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert!(strs.contains(&"1/2".to_string()));
        assert!(strs.contains(&"-3".to_string()));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn min_poly_of_projection() {
        let f = q();
        let mut m = Matrix::zero(2, 2, &f);
        m.set(0, 0, f.one());
        // projection: minimal polynomial x^2 - x
        let p = min_poly(&m);
        assert_eq!(p, poly(&[0, -1, 1], &f));
        let id = Matrix::identity(3, &f);
        assert_eq!(min_poly(&id), poly(&[-1, 1], &f));
    }
}
