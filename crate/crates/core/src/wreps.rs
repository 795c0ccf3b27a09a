//! Concrete modules over the hyperoctahedral group algebra: permutation
//! modules on bi-tabloids, Specht modules spanned by polytabloids, the
//! invariant bilinear form and its simple quotients, dual Specht modules,
//! Young modules, and induction products.
//!
//! The one genuinely convention-sensitive choice — which tableau component's
//! rows absorb sign changes — is resolved by [`convention_oracle`]: at rank 2
//! over the rationals exactly one [`SignPlacement`] makes every permutation
//! module decompose unitriangularly with non-principal summands strictly
//! dominating the shape. All theorem-level verification runs under the
//! oracle-selected placement.

use crate::algebra::{AlgebraKind, BasedAlgebra};
use crate::bipartition::{enumerate_bipartitions, strictly_dominates, BiPartition};
use crate::ext::{composition_multiplicities, solve_by_elimination, SimpleCatalogue};
use crate::fitting::{is_isomorphic, split_indecomposables};
use crate::matrix::{intersect_spans, kernel_basis, Matrix};
use crate::module::{
    hom_space, quotient, regular_bimodule, submodule, Bimodule, Module, ModuleError,
};
use crate::scalar::{FieldSpec, Scalar};
use crate::signed_perm::SignPlacement;
use crate::tableau::{column_group, enumerate_tabloids, BiTableau, BiTabloid};
use std::collections::BTreeMap;
use std::sync::Arc;

fn group_rank(alg: &BasedAlgebra) -> usize {
    match alg.kind {
        AlgebraKind::Hyperoctahedral { rank } => rank,
        _ => panic!("expected a hyperoctahedral group algebra"),
    }
}

/// A permutation module together with its tabloid basis.
#[derive(Debug, Clone)]
pub struct PermModuleW {
    pub shape: BiPartition,
    pub placement: SignPlacement,
    pub module: Module,
    pub tabloids: Vec<BiTabloid>,
    index: BTreeMap<BiTabloid, usize>,
}

impl PermModuleW {
    pub fn tabloid_index(&self, t: &BiTabloid) -> usize {
        self.index[t]
    }
}

/// The permutation module M(lam): canonical bi-tabloids permuted by the
/// group action.
pub fn perm_module_w(
    alg: &Arc<BasedAlgebra>,
    lam: &BiPartition,
    placement: SignPlacement,
) -> PermModuleW {
    let r = group_rank(alg);
    assert_eq!(lam.size(), r, "bi-partition size must match the rank");
    let tabloids = enumerate_tabloids(lam, placement);
    let index: BTreeMap<BiTabloid, usize> = tabloids
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let dim = tabloids.len();
    let field = &alg.field;
    let gen_action = (0..alg.gen_count())
        .map(|g| {
            let w = match alg.elem(alg.gen_index(g)) {
                crate::algebra::BasisElem::Perm(w) => w.clone(),
                _ => unreachable!(),
            };
            let mut m = Matrix::zero(dim, dim, field);
            for (i, t) in tabloids.iter().enumerate() {
                let img = t.act(&w, placement);
                m.set(i, index[&img], field.one());
            }
            m
        })
        .collect();
    PermModuleW {
        shape: lam.clone(),
        placement,
        module: Module::new(alg.clone(), dim, gen_action),
        tabloids,
        index,
    }
}

/// The polytabloid of a tableau: the signed column-group average of its
/// tabloid, as a vector in the ambient permutation module.
pub fn polytabloid(pm: &PermModuleW, t: &BiTableau) -> Vec<Scalar> {
    let field = &pm.module.alg.field;
    let mut v = vec![field.zero(); pm.module.dim];
    for sigma in column_group(t, pm.placement) {
        let sign = field.from_int(sigma.sgn());
        let idx = pm.tabloid_index(&t.act(&sigma).tabloid(pm.placement));
        v[idx] = v[idx].add(&sign);
    }
    v
}

/// All 2^r r! tableaux of a shape, as group translates of the initial one.
pub fn all_tableaux(lam: &BiPartition) -> Vec<BiTableau> {
    let init = BiTableau::initial(lam);
    crate::signed_perm::enumerate_group(lam.size())
        .iter()
        .map(|w| init.act(w))
        .collect()
}

/// The Specht module: the span of all polytabloids inside M(lam).
/// Returns the module and its inclusion rows.
pub fn specht_module(pm: &PermModuleW) -> (Module, Matrix) {
    let field = &pm.module.alg.field;
    let mut rows = Matrix::zero(0, pm.module.dim, field);
    for t in all_tableaux(&pm.shape) {
        rows.push_row(&polytabloid(pm, &t));
    }
    submodule(&pm.module, &rows)
}

/// Gram matrix of the tabloid-orthonormal bilinear form restricted to the
/// rows of `incl` (a Specht basis in tabloid coordinates).
pub fn gram_matrix(incl: &Matrix) -> Matrix {
    incl.mul(&incl.transpose())
}

/// The simple head D(lam) = S(lam) / radical of the bilinear form; zero
/// dimensional exactly when the form vanishes on the Specht module.
pub fn simple_d(specht: &Module, incl: &Matrix) -> Module {
    let gram = gram_matrix(incl);
    let radical = kernel_basis(&gram.transpose());
    let (head, _) = quotient(specht, &radical);
    head
}

/// Dual Specht module S'(lam).
pub fn dual_specht(pm: &PermModuleW) -> Module {
    specht_module(pm).0.dual()
}

/// The sign character value (-1) on every Coxeter generator.
pub fn sign_character(alg: &BasedAlgebra) -> Vec<Scalar> {
    vec![alg.field.from_int(-1); alg.gen_count()]
}

/// Twist a module by the sign character.
pub fn sign_twist(m: &Module) -> Module {
    m.twist(&sign_character(&m.alg))
}

/// The Young module Y(lam): the unique indecomposable direct summand of
/// M(lam) meeting the Specht module nontrivially.
pub fn young_module_w(
    alg: &Arc<BasedAlgebra>,
    lam: &BiPartition,
    placement: SignPlacement,
    seed: u64,
) -> Result<Module, ModuleError> {
    let pm = perm_module_w(alg, lam, placement);
    let (_, s_incl) = specht_module(&pm);
    let parts = split_indecomposables(&pm.module, seed)?;
    let mut hits = Vec::new();
    for (part, incl) in parts {
        if intersect_spans(&incl, &s_incl).rows > 0 {
            hits.push(part);
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(ModuleError::NotFound),
        k => Err(ModuleError::NotUnique(k)),
    }
}

/// Outer tensor product x ⊠ y as a module over W_a x W_b: the first block of
/// generators acts through x, the second through y.
pub fn outer_tensor(x: &Module, y: &Module, product: &Arc<BasedAlgebra>) -> Module {
    let (a, b) = match product.kind {
        AlgebraKind::ProductGroup { left, right } => (left, right),
        _ => panic!("expected a product group algebra"),
    };
    assert_eq!(x.gen_action.len(), a);
    assert_eq!(y.gen_action.len(), b);
    let field = &product.field;
    let (dx, dy) = (x.dim, y.dim);
    let dim = dx * dy;
    let flat = |i: usize, j: usize| i * dy + j;
    let mut gen_action = Vec::new();
    for g in 0..a {
        let xg = &x.gen_action[g];
        let mut m = Matrix::zero(dim, dim, field);
        for i in 0..dx {
            for k in 0..dx {
                let c = xg.get(i, k);
                if c.is_zero() {
                    continue;
                }
                for j in 0..dy {
                    m.set(flat(i, j), flat(k, j), c.clone());
                }
            }
        }
        gen_action.push(m);
    }
    for g in 0..b {
        let yg = &y.gen_action[g];
        let mut m = Matrix::zero(dim, dim, field);
        for j in 0..dy {
            for l in 0..dy {
                let c = yg.get(j, l);
                if c.is_zero() {
                    continue;
                }
                for i in 0..dx {
                    m.set(flat(i, j), flat(i, l), c.clone());
                }
            }
        }
        gen_action.push(m);
    }
    Module::new(product.clone(), dim, gen_action)
}

/// The (W_a x W_b, W_r)-bimodule K[W_r]: left multiplication by the embedded
/// subgroup, right multiplication by the full group.
pub fn group_bimodule_over_product(
    product: &Arc<BasedAlgebra>,
    whole: &Arc<BasedAlgebra>,
) -> Bimodule {
    let reg = regular_bimodule(whole);
    let left_action = (0..product.gen_count())
        .map(|g| {
            let w = match product.elem(product.gen_index(g)) {
                crate::algebra::BasisElem::Perm(w) => w.clone(),
                _ => unreachable!(),
            };
            let idx = whole
                .index_of(&crate::algebra::BasisElem::Perm(w))
                .expect("embedded generator lies in the group");
            whole.left_mult_matrix(idx)
        })
        .collect();
    Bimodule {
        left: product.clone(),
        right: whole.clone(),
        dim: whole.dim(),
        left_action,
        right_action: reg.right_action,
    }
}

/// Induce x ⊠ y from W_a x W_b to W_{a+b}.
pub fn induce_product(
    x: &Module,
    y: &Module,
    whole: &Arc<BasedAlgebra>,
) -> Result<Module, ModuleError> {
    let a = group_rank(&x.alg);
    let b = group_rank(&y.alg);
    let r = group_rank(whole);
    if a + b != r {
        return Err(ModuleError::Dimension(format!("ranks {a} + {b} != {r}")));
    }
    let product = BasedAlgebra::product_group(a, b, &whole.field);
    let xy = outer_tensor(x, y, &product);
    let bim = group_bimodule_over_product(&product, whole);
    let (ind, _) = crate::module::tensor_over(&xy, &bim)?;
    Ok(ind)
}

/// Decide the sign placement: at rank 2 over the rationals, exactly one
/// placement makes every M(lam) split with one copy of S(lam) and all other
/// summands isomorphic to S(mu) for mu strictly dominating lam.
pub fn convention_oracle() -> Result<SignPlacement, ModuleError> {
    let field = FieldSpec::rational_delta(1);
    let alg = BasedAlgebra::hyperoctahedral(2, &field);
    let mut winners = Vec::new();
    for placement in [SignPlacement::First, SignPlacement::Second] {
        if placement_is_unitriangular(&alg, placement)? {
            winners.push(placement);
        }
    }
    match winners.as_slice() {
        [one] => Ok(*one),
        _ => Err(ModuleError::Dimension(format!(
            "{} placements pass the unitriangularity oracle",
            winners.len()
        ))),
    }
}

/// Check the decomposition shape of every permutation module at the given
/// placement (char 0): principal Specht summand once, all others strictly
/// dominating.
pub fn placement_is_unitriangular(
    alg: &Arc<BasedAlgebra>,
    placement: SignPlacement,
) -> Result<bool, ModuleError> {
    let r = group_rank(alg);
    let shapes = enumerate_bipartitions(r);
    let spechts: Vec<(BiPartition, Module)> = shapes
        .iter()
        .map(|lam| {
            let pm = perm_module_w(alg, lam, placement);
            (lam.clone(), specht_module(&pm).0)
        })
        .collect();
    for lam in &shapes {
        let pm = perm_module_w(alg, lam, placement);
        let parts = split_indecomposables(&pm.module, 0)?;
        let mut principal = 0usize;
        for (part, _) in &parts {
            let mut label = None;
            for (mu, s) in &spechts {
                if is_isomorphic(part, s, 0)? {
                    label = Some(mu.clone());
                    break;
                }
            }
            let Some(mu) = label else { return Ok(false) };
            if &mu == lam {
                principal += 1;
            } else if !strictly_dominates(&mu, lam).unwrap_or(false) {
                return Ok(false);
            }
        }
        if principal != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual-Specht class data over one hyperoctahedral group algebra: the simple
/// catalogue, the composition vector of each dual Specht module, and the
/// assignment of catalogue simples to bi-partitions, validated against the
/// unitriangular direction (factors of S'(lam) sit at dominance >= lam).
pub struct DualSpechtClasses {
    pub shapes: Vec<BiPartition>,
    pub catalogue: SimpleCatalogue,
    /// composition vector of S'(lam), indexed like the catalogue
    pub rows: Vec<Vec<usize>>,
    /// catalogue index of the head of S'(lam), when lam is p-regular
    pub head: Vec<Option<usize>>,
    pub dims: Vec<usize>,
}

pub fn dual_specht_classes(
    alg: &Arc<BasedAlgebra>,
    placement: SignPlacement,
    seed: u64,
) -> Result<DualSpechtClasses, ModuleError> {
    let r = group_rank(alg);
    let mut shapes = enumerate_bipartitions(r);
    // descending dominance key: dominance-maximal first
    shapes.sort_by_key(|lam| std::cmp::Reverse(lam.dominance_key()));
    let catalogue = SimpleCatalogue::build(alg, seed)?;
    let mut rows = Vec::new();
    let mut head = Vec::new();
    let mut dims = Vec::new();
    let mut assigned = vec![false; catalogue.len()];
    for lam in &shapes {
        let pm = perm_module_w(alg, lam, placement);
        let sp = dual_specht(&pm);
        dims.push(sp.dim);
        let counts = composition_multiplicities(&sp, &catalogue)?;
        // the head must be the unique not-yet-assigned simple, multiplicity 1
        let fresh: Vec<usize> = (0..catalogue.len())
            .filter(|&i| counts[i] > 0 && !assigned[i])
            .collect();
        match fresh.as_slice() {
            [] => head.push(None),
            [i] if counts[*i] == 1 => {
                assigned[*i] = true;
                head.push(Some(*i));
            }
            _ => {
                return Err(ModuleError::Dimension(format!(
                    "dual Specht module {lam} violates unitriangularity"
                )))
            }
        }
        rows.push(counts);
    }
    Ok(DualSpechtClasses {
        shapes: shapes.clone(),
        catalogue,
        rows,
        head,
        dims,
    })
}

impl DualSpechtClasses {
    /// Multiplicities of each dual Specht module in a filtration of `m`,
    /// solved in the Grothendieck group by unitriangular elimination
    /// (dominance-minimal shapes first). None when the composition vector is
    /// not a nonnegative integral combination.
    pub fn filtration_multiplicities(
        &self,
        m: &Module,
    ) -> Result<Option<Vec<(BiPartition, i64)>>, ModuleError> {
        let counts = composition_multiplicities(m, &self.catalogue)?;
        let target: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&c| c as i64).collect())
            .collect();
        // shapes are stored dominance-descending; eliminate in reverse
        let mut order = Vec::new();
        for i in (0..self.shapes.len()).rev() {
            match self.head[i] {
                Some(p) => order.push((i, p)),
                None => {
                    return Err(ModuleError::Dimension(format!(
                        "no simple head for shape {} (p-singular case unsupported)",
                        self.shapes[i]
                    )))
                }
            }
        }
        let solution = solve_by_elimination(&target, &rows, &order);
        Ok(solution.map(|coeffs| {
            self.shapes
                .iter()
                .cloned()
                .zip(coeffs)
                .filter(|(_, c)| *c != 0)
                .collect()
        }))
    }
}

/// Young-module catalogue for the group algebra, built from dominance-maximal
/// shapes downward.
pub fn w_young_catalogue(
    alg: &Arc<BasedAlgebra>,
    placement: SignPlacement,
    seed: u64,
) -> Result<Vec<(BiPartition, Module)>, ModuleError> {
    let r = group_rank(alg);
    let mut shapes = enumerate_bipartitions(r);
    shapes.sort_by_key(|lam| std::cmp::Reverse(lam.dominance_key()));
    let mut out = Vec::new();
    for lam in shapes {
        let y = young_module_w(alg, &lam, placement, seed)?;
        out.push((lam, y));
    }
    Ok(out)
}

/// Multiplicity of each irreducible in a semisimple module, counted by Hom
/// dimensions against a supplied list (valid over char-0 fields here).
pub fn semisimple_multiplicity(m: &Module, simple: &Module) -> Result<usize, ModuleError> {
    let h = hom_space(simple, m)?.dim();
    let e = hom_space(simple, simple)?.dim();
    assert!(e >= 1);
    assert_eq!(h % e, 0);
    Ok(h / e)
}
