//! Splitting modules into indecomposable summands and deciding isomorphism.
//!
//! The splitting algorithm samples endomorphisms (the computed End basis
//! first, then seeded random combinations), factors their minimal
//! polynomials, and splits into generalized eigenspaces whenever the minimal
//! polynomial has two coprime factors. Over a prime field the factorization
//! is complete; over the rationals it extracts rational roots and keeps one
//! residual factor, which still splits whenever it is not the whole story.
//! A module is declared indecomposable when no sampled endomorphism splits
//! it; over the rationals, a sample whose minimal polynomial is a power of
//! an irreducible of degree > 1 is reported as undecided rather than
//! silently classified.

use crate::matrix::{kernel_basis, Matrix};
use crate::module::{end_space, hom_space, submodule, HomBasis, Module, ModuleError};
use crate::poly::{min_poly, split_factors, Poly};
use crate::scalar::{Rng, Scalar};

const TRIALS: usize = 64;

fn poly_at_matrix(p: &Poly, m: &Matrix) -> Matrix {
    let field = &m.field;
    let mut acc = Matrix::zero(m.rows, m.cols, field);
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(m);
        for i in 0..m.rows {
            acc.set(i, i, acc.get(i, i).add(c));
        }
    }
    acc
}

fn matrix_power(m: &Matrix, mut e: usize) -> Matrix {
    let mut acc = Matrix::identity(m.rows, &m.field);
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// Left kernel rows of `m`: vectors v with v·m = 0.
fn left_kernel(m: &Matrix) -> Matrix {
    kernel_basis(&m.transpose())
}

/// Split into indecomposable summands with their inclusion matrices
/// (rows = summand basis in the coordinates of `m`). Deterministic for a
/// fixed seed.
pub fn split_indecomposables(m: &Module, seed: u64) -> Result<Vec<(Module, Matrix)>, ModuleError> {
    let mut rng = Rng::new(seed);
    split_rec(m, &mut rng, 0)
}

fn split_rec(
    m: &Module,
    rng: &mut Rng,
    depth: usize,
) -> Result<Vec<(Module, Matrix)>, ModuleError> {
    assert!(depth < 64, "splitting recursion runaway");
    let field = &m.alg.field;
    if m.dim == 0 {
        return Ok(vec![]);
    }
    let ends = end_space(m)?;
    if ends.dim() <= 1 {
        return Ok(vec![(m.clone(), Matrix::identity(m.dim, field))]);
    }
    let mut saw_irrational_blob = false;
    for trial in 0..(ends.dim() + TRIALS) {
        let phi = if trial < ends.dim() {
            ends.mats[trial].clone()
        } else {
            let coeffs: Vec<Scalar> = (0..ends.dim()).map(|_| rng.scalar(field)).collect();
            ends.combine(&coeffs)
        };
        let p = min_poly(&phi);
        let factors = split_factors(&p, rng);
        if factors.len() < 2 {
            if field.characteristic() == 0 {
                if let Some((f, _)) = factors.first() {
                    if f.degree() > 1 {
                        saw_irrational_blob = true;
                    }
                }
            }
            continue;
        }
        // generalized eigenspace decomposition
        let mut out = Vec::new();
        let mut total = 0;
        for (fac, mult) in &factors {
            let block = matrix_power(&poly_at_matrix(fac, &phi), *mult);
            let ker = left_kernel(&block);
            if ker.rows == 0 {
                continue;
            }
            let (sub, incl) = submodule(m, &ker);
            assert_eq!(sub.dim, ker.rows, "generalized eigenspace is action-closed");
            total += sub.dim;
            for (part, part_incl) in split_rec(&sub, rng, depth + 1)? {
                out.push((part, part_incl.mul(&incl)));
            }
        }
        assert_eq!(total, m.dim, "eigenspaces must fill the module");
        return Ok(out);
    }
    if saw_irrational_blob {
        // endomorphisms with irrational spectra block the rational split
        return Err(ModuleError::Undecided);
    }
    Ok(vec![(m.clone(), Matrix::identity(m.dim, field))])
}

/// True when every endomorphism in the computed End basis is invertible or
/// nilpotent — the local-ring certificate for indecomposability.
pub fn local_end_certificate(m: &Module) -> Result<bool, ModuleError> {
    let ends = end_space(m)?;
    for f in &ends.mats {
        if f.is_invertible() {
            continue;
        }
        if !matrix_power(f, m.dim.max(1)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact isomorphism test: dimension checks, Hom-dimension symmetry, then a
/// search for an invertible intertwiner (basis elements, seeded random
/// combinations, and an exhaustive sweep over small prime-field Hom spaces).
/// Equal nonzero Hom dimensions with an inconclusive search raise
/// [`ModuleError::Undecided`].
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64) -> Result<bool, ModuleError> {
    if !m.alg.same_as(&n.alg) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(false);
    }
    if m.dim == 0 {
        return Ok(true);
    }
    let h_mn = hom_space(m, n)?;
    let h_nm = hom_space(n, m)?;
    if h_mn.dim() != h_nm.dim() || h_mn.dim() == 0 {
        return Ok(false);
    }
    match find_invertible(&h_mn, seed) {
        Some(_) => Ok(true),
        None => {
            let p = m.alg.field.characteristic();
            if p > 0 && p <= 11 && h_mn.dim() <= 2 {
                // the search above already enumerated every combination
                Ok(false)
            } else {
                Err(ModuleError::Undecided)
            }
        }
    }
}

/// Search the Hom space for an invertible element; basis first, then seeded
/// random combinations, then (over small prime fields with dim <= 2) every
/// combination.
pub fn find_invertible(h: &HomBasis, seed: u64) -> Option<Matrix> {
    find_with_rank(h, h.source_dim.min(h.target_dim), seed, true)
}

/// Search the Hom space for an element of full target rank (a surjection).
pub fn find_surjection(h: &HomBasis, seed: u64) -> Option<Matrix> {
    find_with_rank(h, h.target_dim, seed, false)
}

/// Search the Hom space for an element of full source rank (an injection).
pub fn find_injection(h: &HomBasis, seed: u64) -> Option<Matrix> {
    find_with_rank(h, h.source_dim, seed, false)
}

fn find_with_rank(h: &HomBasis, want: usize, seed: u64, square_only: bool) -> Option<Matrix> {
    if h.dim() == 0 {
        return None;
    }
    let field = &h.mats[0].field;
    if square_only && h.source_dim != h.target_dim {
        return None;
    }
    let good = |f: &Matrix| f.rank() == want;
    for f in &h.mats {
        if good(f) {
            return Some(f.clone());
        }
    }
    let mut rng = Rng::new(seed);
    for _ in 0..TRIALS {
        let coeffs: Vec<Scalar> = (0..h.dim()).map(|_| rng.scalar(field)).collect();
        let f = h.combine(&coeffs);
        if good(&f) {
            return Some(f);
        }
    }
    let p = field.characteristic();
    if p > 0 && p <= 11 && h.dim() <= 2 {
        // exhaustive over all coefficient tuples
        let mut tuple = vec![0u64; h.dim()];
        loop {
            let coeffs: Vec<Scalar> = tuple.iter().map(|&v| field.from_int(v as i64)).collect();
            let f = h.combine(&coeffs);
            if good(&f) {
                return Some(f);
            }
            let mut k = 0;
            loop {
                if k == tuple.len() {
                    return None;
                }
                tuple[k] += 1;
                if tuple[k] < p {
                    break;
                }
                tuple[k] = 0;
                k += 1;
            }
        }
    }
    None
}

/// Group a list of modules into isomorphism classes; returns for each class
/// a representative index and the member indices.
pub fn iso_classes(parts: &[Module], seed: u64) -> Result<Vec<Vec<usize>>, ModuleError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if is_isomorphic(p, &parts[class[0]], seed)? {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasedAlgebra;
    use crate::scalar::FieldSpec;

    #[test]
    fn split_regular_char_zero_rank_one() {
        // Q[W_1] = Q[Z/2] splits into trivial and sign
        let alg = BasedAlgebra::hyperoctahedral(1, &FieldSpec::rational_delta(1));
        let reg = Module::regular(&alg);
        let parts = split_indecomposables(&reg, 0).unwrap();
        assert_eq!(parts.len(), 2);
        for (p, incl) in &parts {
            assert_eq!(p.dim, 1);
            assert_eq!(incl.rows, 1);
            assert!(local_end_certificate(p).unwrap());
        }
    }

    #[test]
    fn split_regular_char_two_is_local() {
        // F_2[Z/2] is local: the regular module is indecomposable
        let alg = BasedAlgebra::hyperoctahedral(1, &FieldSpec::prime(2, 1).unwrap());
        let reg = Module::regular(&alg);
        let parts = split_indecomposables(&reg, 0).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0.dim, 2);
        assert!(local_end_certificate(&parts[0].0).unwrap());
    }

    #[test]
    fn split_handles_repeated_summands() {
        // trivial ⊕ trivial has End = M_2: must still split
        for field in [
            FieldSpec::rational_delta(1),
            FieldSpec::prime(5, 1).unwrap(),
        ] {
            let alg = BasedAlgebra::hyperoctahedral(2, &field);
            let t = Module::trivial(&alg);
            let m = t.direct_sum(&t).direct_sum(&t);
            let parts = split_indecomposables(&m, 1).unwrap();
            assert_eq!(parts.len(), 3);
        }
    }

    #[test]
    fn seed_independence_of_class_multiset() {
        let alg = BasedAlgebra::hyperoctahedral(2, &FieldSpec::prime(5, 1).unwrap());
        let reg = Module::regular(&alg);
        let mut dims_by_seed = Vec::new();
        for seed in [0u64, 1, 42] {
            let mut dims: Vec<usize> = split_indecomposables(&reg, seed)
                .unwrap()
                .iter()
                .map(|(p, _)| p.dim)
                .collect();
            dims.sort();
            dims_by_seed.push(dims);
        }
        assert_eq!(dims_by_seed[0], dims_by_seed[1]);
        assert_eq!(dims_by_seed[1], dims_by_seed[2]);
        // W_2 over F_5 is semisimple with irreducibles 1,1,1,1,2
        assert_eq!(dims_by_seed[0], vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn iso_test_examples() {
        let alg = BasedAlgebra::hyperoctahedral(2, &FieldSpec::rational_delta(1));
        let triv = Module::trivial(&alg);
        let sgn = Module::one_dimensional(&alg, vec![alg.field.from_int(-1); 2]);
        assert!(is_isomorphic(&triv, &triv, 0).unwrap());
        assert!(!is_isomorphic(&triv, &sgn, 0).unwrap());
        let reg = Module::regular(&alg);
        assert!(!is_isomorphic(&reg, &triv, 0).unwrap());
        assert!(is_isomorphic(&reg, &Module::regular(&alg), 0).unwrap());
    }

    #[test]
    fn inclusions_compose_to_ambient() {
        let alg = BasedAlgebra::hyperoctahedral(2, &FieldSpec::prime(5, 1).unwrap());
        let reg = Module::regular(&alg);
        let parts = split_indecomposables(&reg, 7).unwrap();
        let total: usize = parts.iter().map(|(p, _)| p.dim).sum();
        assert_eq!(total, reg.dim);
        // stacked inclusions span the whole space
        let mut stacked = Matrix::zero(0, reg.dim, &alg.field);
        for (_, incl) in &parts {
            for i in 0..incl.rows {
                stacked.push_row(incl.row(i));
            }
        }
        assert_eq!(stacked.rank(), reg.dim);
        // each inclusion intertwines the actions
        for (p, incl) in &parts {
            for g in 0..reg.gen_action.len() {
                assert_eq!(incl.mul(&reg.gen_action[g]), p.gen_action[g].mul(incl));
            }
        }
    }
}
