//! First extension groups and composition series bookkeeping.
//!
//! Ext^1(m, n) is computed from a free presentation 0 -> Omega -> F -> m -> 0
//! with F a direct sum of copies of the regular module, as
//! dim Hom(Omega, n) minus the rank of the restriction Hom(F, n) ->
//! Hom(Omega, n). Any projective surjection works for degree one, so no
//! minimality is attempted. The simple-module catalogue splits the regular
//! module into projective indecomposables, takes their heads, and drives
//! composition-multiplicity counts.

use crate::matrix::{kernel_basis, Matrix, RowSpace};
use crate::module::{end_space, hom_space, quotient, submodule, Module, ModuleError};
use crate::poly::{min_poly, split_factors};
use crate::scalar::{Rng, Scalar};

/// Greedy generating vectors of a module: basis vectors not already in the
/// closure of the previously chosen ones.
pub fn module_generators(m: &Module) -> Vec<Vec<Scalar>> {
    let field = &m.alg.field;
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Matrix::zero(0, m.dim, field);
    let mut space = RowSpace::from_rows(&span);
    for i in 0..m.dim {
        let mut unit = vec![field.zero(); m.dim];
        unit[i] = field.one();
        if space.contains(&unit) {
            continue;
        }
        gens.push(unit.clone());
        span.push_row(&unit);
        let (_, incl) = submodule(m, &span);
        span = incl;
        space = RowSpace::from_rows(&span);
        if space.dim() == m.dim {
            break;
        }
    }
    gens
}

/// Action matrices of every algebra basis element on `m`.
pub fn all_basis_actions(m: &Module) -> Result<Vec<Matrix>, ModuleError> {
    (0..m.alg.dim()).map(|i| m.action_of_basis(i)).collect()
}

/// A free presentation 0 -> Omega -> F -> m -> 0 with F = regular^k.
pub struct Presentation {
    pub free: Module,
    /// surjection F -> m as a (dim F x dim m) matrix acting on row vectors
    pub proj: Matrix,
    /// Omega with its inclusion rows into F
    pub omega: Module,
    pub omega_incl: Matrix,
}

pub fn free_presentation(m: &Module) -> Result<Presentation, ModuleError> {
    let field = &m.alg.field;
    let gens = module_generators(m);
    let k = gens.len();
    let reg = Module::regular(&m.alg);
    let mut free = reg.clone();
    for _ in 1..k {
        free = free.direct_sum(&reg);
    }
    if k == 0 {
        // zero module: empty presentation
        let zero = Module::new(
            m.alg.clone(),
            0,
            vec![Matrix::zero(0, 0, field); m.alg.gen_count()],
        );
        return Ok(Presentation {
            free: zero.clone(),
            proj: Matrix::zero(0, m.dim, field),
            omega: zero,
            omega_incl: Matrix::zero(0, 0, field),
        });
    }
    let actions = all_basis_actions(m)?;
    let adim = m.alg.dim();
    let mut proj = Matrix::zero(k * adim, m.dim, field);
    for (c, v) in gens.iter().enumerate() {
        for b in 0..adim {
            let img = actions[b].apply_row(v);
            for (j, x) in img.into_iter().enumerate() {
                proj.set(c * adim + b, j, x);
            }
        }
    }
    // Omega = left kernel of proj
    let ker = kernel_basis(&proj.transpose());
    let (omega, omega_incl) = submodule(&free, &ker);
    assert_eq!(
        omega.dim,
        free.dim - m.dim,
        "presentation must be surjective"
    );
    Ok(Presentation {
        free,
        proj,
        omega,
        omega_incl,
    })
}

/// dim Ext^1(m, n) from a free presentation of m.
pub fn ext1_dim(m: &Module, n: &Module) -> Result<usize, ModuleError> {
    if !m.alg.same_as(&n.alg) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let pres = free_presentation(m)?;
    ext1_dim_with(&pres, n)
}

/// dim Ext^1 against `n`, reusing an already-built presentation of the
/// source.
pub fn ext1_dim_with(pres: &Presentation, n: &Module) -> Result<usize, ModuleError> {
    let field = &n.alg.field;
    if pres.omega.dim == 0 {
        return Ok(0);
    }
    let homs = hom_space(&pres.omega, n)?;
    if homs.dim() == 0 {
        return Ok(0);
    }
    // restriction image: free homs are determined by the images of the k unit
    // elements; Phi_{c,j} sends (copy c', basis b) to delta_{cc'} e_j rho_n(b)
    let n_actions = all_basis_actions(n)?;
    let adim = n.alg.dim();
    let k = pres.free.dim / adim;
    let mut restricted = Matrix::zero(0, pres.omega.dim * n.dim, field);
    for c in 0..k {
        for j in 0..n.dim {
            let mut phi = Matrix::zero(pres.free.dim, n.dim, field);
            for b in 0..adim {
                for t in 0..n.dim {
                    phi.set(c * adim + b, t, n_actions[b].get(j, t).clone());
                }
            }
            let restr = pres.omega_incl.mul(&phi);
            let mut flat = vec![field.zero(); pres.omega.dim * n.dim];
            for i in 0..restr.rows {
                for t in 0..restr.cols {
                    flat[i * n.dim + t] = restr.get(i, t).clone();
                }
            }
            restricted.push_row(&flat);
        }
    }
    let image_rank = restricted.rank();
    Ok(homs.dim() - image_rank)
}

/// Projective indecomposables of the algebra with their simple heads.
pub struct SimpleCatalogue {
    /// distinct projective indecomposables
    pub projectives: Vec<Module>,
    /// multiplicity of each in the regular module
    pub multiplicities: Vec<usize>,
    /// simple head of each projective
    pub simples: Vec<Module>,
    /// dim End of each simple
    pub end_dims: Vec<usize>,
}

impl SimpleCatalogue {
    pub fn build(
        alg: &std::sync::Arc<crate::algebra::BasedAlgebra>,
        seed: u64,
    ) -> Result<SimpleCatalogue, ModuleError> {
        let reg = Module::regular(alg);
        let parts = crate::fitting::split_indecomposables(&reg, seed)?;
        let modules: Vec<Module> = parts.iter().map(|(p, _)| p.clone()).collect();
        let classes = crate::fitting::iso_classes(&modules, seed)?;
        let mut projectives = Vec::new();
        let mut multiplicities = Vec::new();
        for class in &classes {
            projectives.push(modules[class[0]].clone());
            multiplicities.push(class.len());
        }
        let mut simples = Vec::new();
        let mut end_dims = Vec::new();
        let mut rng = Rng::new(seed ^ 0x5eed);
        for (i, p) in projectives.iter().enumerate() {
            let mut rad_rows = Matrix::zero(0, p.dim, &alg.field);
            for (j, q) in projectives.iter().enumerate() {
                let homs = hom_space(q, p)?;
                for f in &homs.mats {
                    if j == i {
                        // inside the local End ring, subtract the unique
                        // eigenvalue to land in the radical
                        let mp = min_poly(f);
                        let facs = split_factors(&mp, &mut rng);
                        if facs.len() != 1 {
                            return Err(ModuleError::Dimension(
                                "projective summand has non-local endomorphism ring".into(),
                            ));
                        }
                        let (fac, _) = &facs[0];
                        if fac.degree() != 1 {
                            return Err(ModuleError::Undecided);
                        }
                        let c = fac.coeffs[0].neg();
                        let mut shifted = f.clone();
                        for d in 0..p.dim {
                            shifted.set(d, d, shifted.get(d, d).sub(&c));
                        }
                        for row in 0..shifted.rows {
                            rad_rows.push_row(shifted.row(row));
                        }
                    } else {
                        for row in 0..f.rows {
                            rad_rows.push_row(f.row(row));
                        }
                    }
                }
            }
            let rad = RowSpace::from_rows(&rad_rows);
            let (head, _) = quotient(p, &rad.basis);
            let e = end_space(&head)?.dim();
            assert!(e >= 1, "head of a projective is nonzero");
            end_dims.push(e);
            simples.push(head);
            let _ = i;
        }
        Ok(SimpleCatalogue {
            projectives,
            multiplicities,
            simples,
            end_dims,
        })
    }

    pub fn len(&self) -> usize {
        self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectives.is_empty()
    }
}

/// Composition multiplicities [m : D_i] = dim Hom(P_i, m) / dim End(D_i).
pub fn composition_multiplicities(
    m: &Module,
    cat: &SimpleCatalogue,
) -> Result<Vec<usize>, ModuleError> {
    let mut counts = Vec::new();
    for (p, e) in cat.projectives.iter().zip(cat.end_dims.iter()) {
        let h = hom_space(p, m)?.dim();
        if h % e != 0 {
            return Err(ModuleError::Dimension(format!(
                "hom dimension {h} not divisible by End dimension {e}"
            )));
        }
        counts.push(h / e);
    }
    let total: usize = counts
        .iter()
        .zip(cat.simples.iter())
        .map(|(c, d)| c * d.dim)
        .sum();
    if total != m.dim {
        return Err(ModuleError::Dimension(format!(
            "composition factors cover {total} of {} dimensions",
            m.dim
        )));
    }
    Ok(counts)
}

/// Solve `target = sum coeff_i * rows[i]` by elimination along `order`,
/// where each entry names a row and its pivot column; the pivot must have
/// coefficient 1 in its row and must not appear in rows processed later.
/// Returns None on non-integral leftovers or negative coefficients.
pub fn solve_by_elimination(
    target: &[i64],
    rows: &[Vec<i64>],
    order: &[(usize, usize)],
) -> Option<Vec<i64>> {
    let mut rem = target.to_vec();
    let mut coeffs = vec![0i64; rows.len()];
    for &(ri, pivot) in order {
        let row = &rows[ri];
        debug_assert_eq!(row[pivot], 1, "pivot coefficient must be one");
        let c = rem[pivot];
        if c < 0 {
            return None;
        }
        coeffs[ri] = c;
        if c != 0 {
            for (j, v) in row.iter().enumerate() {
                rem[j] -= c * v;
            }
        }
    }
    if rem.iter().all(|&v| v == 0) {
        Some(coeffs)
    } else {
        None
    }
}
