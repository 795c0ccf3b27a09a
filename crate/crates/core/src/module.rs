//! Finite-dimensional right modules over a based algebra, given by the
//! action matrices of the algebra's generators. Vectors are rows; a
//! generator g acts by `v -> v · action(g)`. Everything downstream — Hom
//! spaces, submodules and quotients, duals, tensor products over a
//! subalgebra — reduces to exact linear algebra on these matrices.

use crate::algebra::{AlgElem, AlgebraError, BasedAlgebra};
use crate::matrix::{kernel_basis, Matrix, RowSpace};
use crate::scalar::Scalar;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("isomorphism test undecided: equal Hom dimensions but no invertible map found")]
    Undecided,
    #[error("expected a unique summand, found {0}")]
    NotUnique(usize),
    #[error("no summand with the required property")]
    NotFound,
    #[error("delta = 0 forbids layer-{0} constructions")]
    DeltaZero(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone)]
pub struct Module {
    pub alg: Arc<BasedAlgebra>,
    pub dim: usize,
    pub gen_action: Vec<Matrix>,
}

impl Module {
    pub fn new(alg: Arc<BasedAlgebra>, dim: usize, gen_action: Vec<Matrix>) -> Module {
        assert_eq!(gen_action.len(), alg.gen_count());
        for m in &gen_action {
            assert_eq!((m.rows, m.cols), (dim, dim));
        }
        Module {
            alg,
            dim,
            gen_action,
        }
    }

    /// The right regular module.
    pub fn regular(alg: &Arc<BasedAlgebra>) -> Module {
        let gen_action = (0..alg.gen_count())
            .map(|g| alg.right_mult_matrix(alg.gen_index(g)))
            .collect();
        Module {
            alg: alg.clone(),
            dim: alg.dim(),
            gen_action,
        }
    }

    /// The one-dimensional module where every generator acts by the given
    /// scalars.
    pub fn one_dimensional(alg: &Arc<BasedAlgebra>, values: Vec<Scalar>) -> Module {
        assert_eq!(values.len(), alg.gen_count());
        let gen_action = values
            .into_iter()
            .map(|v| {
                let mut m = Matrix::zero(1, 1, &alg.field);
                m.set(0, 0, v);
                m
            })
            .collect();
        Module {
            alg: alg.clone(),
            dim: 1,
            gen_action,
        }
    }

    /// Trivial module: every generator acts as the identity.
    pub fn trivial(alg: &Arc<BasedAlgebra>) -> Module {
        Module::one_dimensional(alg, vec![alg.field.one(); alg.gen_count()])
    }

    /// Action matrix of a basis element, via its generator word.
    pub fn action_of_basis(&self, i: usize) -> Result<Matrix, ModuleError> {
        let (word, scalar) = self.alg.word_for(i)?;
        let mut m = Matrix::identity(self.dim, &self.alg.field);
        for g in word {
            m = m.mul(&self.gen_action[g]);
        }
        Ok(m.scale(&scalar.inv().expect("invertible word scalar")))
    }

    pub fn action_of_elem(&self, x: &AlgElem) -> Result<Matrix, ModuleError> {
        let mut m = Matrix::zero(self.dim, self.dim, &self.alg.field);
        for (&i, c) in &x.terms {
            m = m.add(&self.action_of_basis(i)?.scale(c));
        }
        Ok(m)
    }

    /// Apply a row vector to a generator.
    pub fn act_gen(&self, v: &[Scalar], g: usize) -> Vec<Scalar> {
        self.gen_action[g].apply_row(v)
    }

    /// Dual module along the algebra involution: since the involution fixes
    /// every generator of both algebra families, the dual action matrices are
    /// the transposes.
    pub fn dual(&self) -> Module {
        let gen_action = self.gen_action.iter().map(|m| m.transpose()).collect();
        Module {
            alg: self.alg.clone(),
            dim: self.dim,
            gen_action,
        }
    }

    /// Twist by a character: generator g acts by chi[g] times the original.
    pub fn twist(&self, chi: &[Scalar]) -> Module {
        assert_eq!(chi.len(), self.gen_action.len());
        let gen_action = self
            .gen_action
            .iter()
            .zip(chi.iter())
            .map(|(m, c)| m.scale(c))
            .collect();
        Module {
            alg: self.alg.clone(),
            dim: self.dim,
            gen_action,
        }
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        assert!(self.alg.same_as(&other.alg));
        let dim = self.dim + other.dim;
        let gen_action = self
            .gen_action
            .iter()
            .zip(other.gen_action.iter())
            .map(|(a, b)| {
                let mut m = Matrix::zero(dim, dim, &self.alg.field);
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        Module {
            alg: self.alg.clone(),
            dim,
            gen_action,
        }
    }

    /// Check the generator action against products of algebra basis
    /// elements: rho(b_i) rho(b_j) must equal the action of b_i b_j.
    /// Exhaustive, for tests on small algebras.
    pub fn validate(&self) -> Result<(), ModuleError> {
        for i in 0..self.alg.dim() {
            let mi = self.action_of_basis(i)?;
            for j in 0..self.alg.dim() {
                let mj = self.action_of_basis(j)?;
                let (c, k) = self.alg.mul_basis(i, j);
                let mk = self.action_of_basis(k)?.scale(&c);
                if mi.mul(&mj) != mk {
                    return Err(ModuleError::Dimension(format!(
                        "action violates structure constants at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Basis of the space of module homomorphisms m -> n, each given as a
/// dim(m) x dim(n) matrix intertwining all generator actions.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub source_dim: usize,
    pub target_dim: usize,
    pub mats: Vec<Matrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Linear combination of the basis maps.
    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.mats.len());
        let field = &self.mats.first().expect("nonempty basis").field;
        let mut out = Matrix::zero(self.source_dim, self.target_dim, field);
        for (c, m) in coeffs.iter().zip(self.mats.iter()) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }
}

/// Solve the intertwiner equations rho_m(g) F = F rho_n(g) for all
/// generators g.
pub fn hom_space(m: &Module, n: &Module) -> Result<HomBasis, ModuleError> {
    if !m.alg.same_as(&n.alg) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let field = &m.alg.field;
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(HomBasis {
            source_dim: dm,
            target_dim: dn,
            mats: vec![],
        });
    }
    let gens = m.gen_action.len();
    let mut sys = Matrix::zero(gens * unknowns, unknowns, field);
    for g in 0..gens {
        let a = &m.gen_action[g];
        let b = &n.gen_action[g];
        // equation (row a0, col c): sum_b a[a0][b] F[b][c] - sum_d F[a0][d] b[d][c] = 0
        for a0 in 0..dm {
            for c in 0..dn {
                let row = g * unknowns + a0 * dn + c;
                for bb in 0..dm {
                    let coef = a.get(a0, bb);
                    if !coef.is_zero() {
                        let col = bb * dn + c;
                        let v = sys.get(row, col).add(coef);
                        sys.set(row, col, v);
                    }
                }
                for d in 0..dn {
                    let coef = b.get(d, c);
                    if !coef.is_zero() {
                        let col = a0 * dn + d;
                        let v = sys.get(row, col).sub(coef);
                        sys.set(row, col, v);
                    }
                }
            }
        }
    }
    let ker = kernel_basis(&sys);
    let mut mats = Vec::new();
    for i in 0..ker.rows {
        let mut f = Matrix::zero(dm, dn, field);
        for b in 0..dm {
            for c in 0..dn {
                f.set(b, c, ker.get(i, b * dn + c).clone());
            }
        }
        mats.push(f);
    }
    Ok(HomBasis {
        source_dim: dm,
        target_dim: dn,
        mats,
    })
}

pub fn end_space(m: &Module) -> Result<HomBasis, ModuleError> {
    hom_space(m, m)
}

/// Smallest action-closed subspace containing the given row vectors,
/// returned as a module plus its inclusion matrix (rows = submodule basis in
/// ambient coordinates).
pub fn submodule(m: &Module, vectors: &Matrix) -> (Module, Matrix) {
    assert_eq!(vectors.cols, m.dim);
    let mut space = RowSpace::from_rows(vectors);
    loop {
        let mut grew = false;
        let mut new_rows = space.basis.clone();
        for g in 0..m.gen_action.len() {
            for i in 0..space.basis.rows {
                let img = m.act_gen(space.basis.row(i), g);
                if !space.contains(&img) {
                    new_rows.push_row(&img);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
        space = RowSpace::from_rows(&new_rows);
    }
    let incl = space.basis.clone();
    let dim = incl.rows;
    let gen_action = m
        .gen_action
        .iter()
        .map(|a| {
            let mut act = Matrix::zero(dim, dim, &m.alg.field);
            for i in 0..dim {
                let img = a.apply_row(incl.row(i));
                let coords = space.coords(&img).expect("submodule closed under action");
                for (j, c) in coords.into_iter().enumerate() {
                    act.set(i, j, c);
                }
            }
            act
        })
        .collect();
    (
        Module {
            alg: m.alg.clone(),
            dim,
            gen_action,
        },
        incl,
    )
}

/// Quotient of `m` by the row space of `sub` (assumed action-closed).
/// Returns the quotient module and the projection matrix P (dim m x dim q):
/// the class of a row vector v is v · P.
pub fn quotient(m: &Module, sub: &Matrix) -> (Module, Matrix) {
    let space = RowSpace::from_rows(sub);
    let field = &m.alg.field;
    let pivots: std::collections::BTreeSet<usize> = space.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.dim).filter(|c| !pivots.contains(c)).collect();
    let qdim = free.len();
    // projection: reduce v by the canonical basis rows, then read free coords
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let mut rem = v.to_vec();
        for (i, &pc) in space.pivots.iter().enumerate() {
            let c = rem[pc].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..m.dim {
                rem[j] = rem[j].sub(&c.mul(space.basis.get(i, j)));
            }
        }
        free.iter().map(|&c| rem[c].clone()).collect()
    };
    let mut proj = Matrix::zero(m.dim, qdim, field);
    for i in 0..m.dim {
        let mut unit = vec![field.zero(); m.dim];
        unit[i] = field.one();
        let row = project(&unit);
        for (j, c) in row.into_iter().enumerate() {
            proj.set(i, j, c);
        }
    }
    let gen_action = m
        .gen_action
        .iter()
        .map(|a| {
            let mut act = Matrix::zero(qdim, qdim, field);
            for (i, &fc) in free.iter().enumerate() {
                // lift the i-th quotient basis vector to the unit vector at fc
                let img = a.row(fc).to_vec();
                let row = project(&img);
                for (j, c) in row.into_iter().enumerate() {
                    act.set(i, j, c);
                }
            }
            act
        })
        .collect();
    (
        Module {
            alg: m.alg.clone(),
            dim: qdim,
            gen_action,
        },
        proj,
    )
}

/// A (left S, right B)-bimodule given by generator actions on both sides.
/// `left_action[g]` has row i = coordinates of g · b_i.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub left: Arc<BasedAlgebra>,
    pub right: Arc<BasedAlgebra>,
    pub dim: usize,
    pub left_action: Vec<Matrix>,
    pub right_action: Vec<Matrix>,
}

/// The regular bimodule of an algebra over itself.
pub fn regular_bimodule(alg: &Arc<BasedAlgebra>) -> Bimodule {
    Bimodule {
        left: alg.clone(),
        right: alg.clone(),
        dim: alg.dim(),
        left_action: (0..alg.gen_count())
            .map(|g| alg.left_mult_matrix(alg.gen_index(g)))
            .collect(),
        right_action: (0..alg.gen_count())
            .map(|g| alg.right_mult_matrix(alg.gen_index(g)))
            .collect(),
    }
}

/// x ⊗_S y for a right S-module x and an (S, B)-bimodule y: the full tensor
/// space modulo the relations x·s ⊗ v - x ⊗ s·v over the generators of S.
/// Returns the right B-module and the projection from the full tensor space
/// (dim x · dim y rows) onto it.
pub fn tensor_over(x: &Module, y: &Bimodule) -> Result<(Module, Matrix), ModuleError> {
    if !x.alg.same_as(&y.left) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let field = &x.alg.field;
    let (dx, dy) = (x.dim, y.dim);
    let full = dx * dy;
    let flat = |i: usize, j: usize| i * dy + j;
    let mut rels = Matrix::zero(0, full, field);
    for g in 0..x.gen_action.len() {
        let xg = &x.gen_action[g];
        let lg = &y.left_action[g];
        for i in 0..dx {
            for j in 0..dy {
                let mut row = vec![field.zero(); full];
                for k in 0..dx {
                    let c = xg.get(i, k);
                    if !c.is_zero() {
                        row[flat(k, j)] = row[flat(k, j)].add(c);
                    }
                }
                for l in 0..dy {
                    let c = lg.get(j, l);
                    if !c.is_zero() {
                        row[flat(i, l)] = row[flat(i, l)].sub(c);
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rels.push_row(&row);
                }
            }
        }
    }
    // quotient of the full space by the relation span, with the right action
    // of B induced from 1 ⊗ right_action
    let carrier = Module {
        alg: y.right.clone(),
        dim: full,
        gen_action: y
            .right_action
            .iter()
            .map(|rg| {
                // action of g on e_{(i,j)} = e_i ⊗ (b_j · g)
                let mut m = Matrix::zero(full, full, field);
                for i in 0..dx {
                    for j in 0..dy {
                        for l in 0..dy {
                            let c = rg.get(j, l);
                            if !c.is_zero() {
                                m.set(flat(i, j), flat(i, l), c.clone());
                            }
                        }
                    }
                }
                m
            })
            .collect(),
    };
    let (q, proj) = quotient(&carrier, &rels);
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasedAlgebra;
    use crate::scalar::FieldSpec;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5, 1).unwrap()
    }

    #[test]
    fn regular_module_validates() {
        let alg = BasedAlgebra::brauer_c(1, &FieldSpec::rational_delta(3));
        let reg = Module::regular(&alg);
        reg.validate().unwrap();
        let w = BasedAlgebra::hyperoctahedral(2, &f5());
        Module::regular(&w).validate().unwrap();
    }

    #[test]
    fn hom_from_regular_has_target_dimension() {
        let alg = BasedAlgebra::hyperoctahedral(2, &f5());
        let reg = Module::regular(&alg);
        let triv = Module::trivial(&alg);
        assert_eq!(hom_space(&reg, &triv).unwrap().dim(), 1);
        assert_eq!(hom_space(&reg, &reg).unwrap().dim(), reg.dim);
        // Schur: End of the trivial module is one-dimensional
        assert_eq!(end_space(&triv).unwrap().dim(), 1);
    }

    #[test]
    fn submodule_and_quotient_dimensions() {
        let alg = BasedAlgebra::hyperoctahedral(2, &f5());
        let reg = Module::regular(&alg);
        // the all-ones vector spans a trivial submodule
        let mut v = Matrix::zero(1, reg.dim, &alg.field);
        for j in 0..reg.dim {
            v.set(0, j, alg.field.one());
        }
        let (sub, incl) = submodule(&reg, &v);
        assert_eq!(sub.dim, 1);
        assert_eq!(incl.rows, 1);
        let (q, proj) = quotient(&reg, &incl);
        assert_eq!(q.dim, reg.dim - 1);
        assert_eq!(proj.rows, reg.dim);
        // full-basis submodule is everything
        let (full, _) = submodule(&reg, &Matrix::identity(reg.dim, &alg.field));
        assert_eq!(full.dim, reg.dim);
    }

    #[test]
    fn dual_of_trivial_is_trivial_and_double_dual() {
        let alg = BasedAlgebra::hyperoctahedral(2, &f5());
        let triv = Module::trivial(&alg);
        let d = triv.dual();
        assert_eq!(d.gen_action, triv.gen_action);
        let reg = Module::regular(&alg);
        let dd = reg.dual().dual();
        assert_eq!(dd.gen_action, reg.gen_action);
    }

    #[test]
    fn hom_additive_over_direct_sums() {
        let alg = BasedAlgebra::hyperoctahedral(2, &f5());
        let reg = Module::regular(&alg);
        let triv = Module::trivial(&alg);
        let sum = reg.direct_sum(&triv);
        for other in [&reg, &triv] {
            assert_eq!(
                hom_space(&sum, other).unwrap().dim(),
                hom_space(&reg, other).unwrap().dim() + hom_space(&triv, other).unwrap().dim()
            );
            assert_eq!(
                hom_space(other, &sum).unwrap().dim(),
                hom_space(other, &reg).unwrap().dim() + hom_space(other, &triv).unwrap().dim()
            );
        }
    }

    #[test]
    fn tensor_unit_law() {
        // x ⊗_S S ≅ x for the regular bimodule
        let alg = BasedAlgebra::hyperoctahedral(2, &f5());
        let x = Module::trivial(&alg);
        let y = regular_bimodule(&alg);
        let (t, _) = tensor_over(&x, &y).unwrap();
        assert_eq!(t.dim, 1);
        t.validate().unwrap();
        let reg = Module::regular(&alg);
        let (t2, _) = tensor_over(&reg, &y).unwrap();
        assert_eq!(t2.dim, reg.dim);
    }
}
