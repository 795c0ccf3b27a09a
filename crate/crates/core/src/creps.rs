//! Modules over the type-C Brauer algebra: the exact split-pair functors
//! between layers, cell modules, permutation modules, Young modules, and the
//! two independent cell-filtration multiplicity computations.
//!
//! The layer functors realize the inflation structure concretely. A basis
//! element of the l-th layer of e_l·B is a diagram whose top carries the
//! nested arc configuration of the layer idempotent; it factors as a bottom
//! dangle plus a signed permutation on the through strands, so `ind_l x` has
//! basis (x-basis) x (dangles) and the action of a diagram is computed by
//! stacking, discarding products that gain arcs, and routing the through
//! permutation into x.

use crate::algebra::{AlgElem, AlgebraKind, BasedAlgebra, BasisElem};
use crate::bipartition::{cell_indices, CellIndex};
use crate::diagram::{
    enumerate_dangles, idempotent_diagram, layer_decompose, multiply, recompose, CDiagram, Dangle,
};
use crate::ext::{composition_multiplicities, solve_by_elimination, SimpleCatalogue};
use crate::fitting::{find_surjection, is_isomorphic, split_indecomposables};
use crate::matrix::{Matrix, RowSpace};
use crate::module::{hom_space, quotient, tensor_over, Bimodule, Module, ModuleError};
use crate::signed_perm::{SignPlacement, SignedPerm};
use crate::wreps::{dual_specht, perm_module_w, young_module_w};
use std::collections::HashMap;
use std::sync::Arc;

pub fn brauer_rank(balg: &BasedAlgebra) -> usize {
    match balg.kind {
        AlgebraKind::BrauerC { rank } => rank,
        _ => panic!("expected a type-C Brauer algebra"),
    }
}

/// The input group algebra W_{r-l} of the l-th layer.
pub fn layer_group_algebra(balg: &BasedAlgebra, l: usize) -> Arc<BasedAlgebra> {
    let r = brauer_rank(balg);
    assert!(l <= r);
    BasedAlgebra::hyperoctahedral(r - l, &balg.field)
}

fn check_layer_delta(balg: &BasedAlgebra, l: usize) -> Result<(), ModuleError> {
    if l >= 1 && balg.field.delta().is_zero() {
        return Err(ModuleError::DeltaZero(l));
    }
    Ok(())
}

/// Embed an element of W_{r-l} as the symmetric diagram acting on the
/// through positions of the l-th layer.
pub fn through_diagram(w: &SignedPerm, l: usize, r: usize) -> CDiagram {
    CDiagram::from_signed_perm(&w.embed(l, r))
}

/// The exact layer induction: basis = (x-basis) x (symmetric l-dangles), a
/// diagram acts by stacking under the layer coset representative; products
/// that gain arcs die in the layer quotient.
pub fn ind_l(x: &Module, balg: &Arc<BasedAlgebra>, l: usize) -> Result<Module, ModuleError> {
    let r = brauer_rank(balg);
    check_layer_delta(balg, l)?;
    let walg = layer_group_algebra(balg, l);
    if !x.alg.same_as(&walg) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let field = &balg.field;
    let dangles = enumerate_dangles(r, l);
    let nd = dangles.len();
    let dim = x.dim * nd;
    let flat = |i: usize, j: usize| i * nd + j;
    let top = Dangle::nested(r, l);
    let mut sigma_cache: HashMap<SignedPerm, Matrix> = HashMap::new();
    let mut gen_action = Vec::new();
    for g in 0..balg.gen_count() {
        let gd = match balg.elem(balg.gen_index(g)) {
            BasisElem::Diag(d) => d.clone(),
            _ => unreachable!(),
        };
        let mut m = Matrix::zero(dim, dim, field);
        for (j, d) in dangles.iter().enumerate() {
            let rep = recompose(&top, d, &SignedPerm::identity(r - l));
            let (loops, prod) = multiply(&rep, &gd).expect("equal ranks");
            if prod.top_arcs() > l {
                continue;
            }
            let (ptop, pbot, sigma, pl) = layer_decompose(&prod);
            debug_assert_eq!(pl, l);
            debug_assert_eq!(ptop, top);
            let coeff = field.delta().pow(loops as i64).unwrap();
            let jp = dangles
                .iter()
                .position(|e| e == &pbot)
                .expect("dangle closure");
            let act = sigma_cache.entry(sigma.clone()).or_insert_with(|| {
                let idx = x
                    .alg
                    .index_of(&BasisElem::Perm(sigma.clone()))
                    .expect("through permutation lies in the layer group");
                x.action_of_basis(idx).expect("group words always exist")
            });
            for i in 0..x.dim {
                for k in 0..x.dim {
                    let c = act.get(i, k).mul(&coeff);
                    if !c.is_zero() {
                        let v = m.get(flat(i, j), flat(k, jp)).add(&c);
                        m.set(flat(i, j), flat(k, jp), v);
                    }
                }
            }
        }
        gen_action.push(m);
    }
    Ok(Module::new(balg.clone(), dim, gen_action))
}

/// The (W_{r-l}, B)-bimodule e_l·B: all diagrams whose top contains the
/// nested arcs of the layer idempotent. The left group action never creates
/// loops; the right action multiplies diagrams.
pub fn e_l_bimodule(balg: &Arc<BasedAlgebra>, l: usize) -> Result<Bimodule, ModuleError> {
    let r = brauer_rank(balg);
    check_layer_delta(balg, l)?;
    let walg = layer_group_algebra(balg, l);
    let field = &balg.field;
    let nested: Vec<(i64, i64)> = Dangle::nested(r, l).edges().to_vec();
    let basis: Vec<CDiagram> = (0..balg.dim())
        .filter_map(|i| match balg.elem(i) {
            BasisElem::Diag(d) => {
                let (dt, _, _, _) = layer_decompose(d);
                let set: std::collections::BTreeSet<(i64, i64)> =
                    dt.edges().iter().copied().collect();
                if nested.iter().all(|e| set.contains(e)) {
                    Some(d.clone())
                } else {
                    None
                }
            }
            _ => unreachable!(),
        })
        .collect();
    let dim = basis.len();
    let index: HashMap<CDiagram, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, d)| (d.clone(), i))
        .collect();
    let mut left_action = Vec::new();
    for g in 0..walg.gen_count() {
        let w = match walg.elem(walg.gen_index(g)) {
            BasisElem::Perm(w) => w.clone(),
            _ => unreachable!(),
        };
        let wd = through_diagram(&w, l, r);
        let mut m = Matrix::zero(dim, dim, field);
        for (i, d) in basis.iter().enumerate() {
            let (loops, prod) = multiply(&wd, d).expect("equal ranks");
            debug_assert_eq!(loops, 0, "vertical diagrams close no loops");
            let j = index[&prod];
            m.set(i, j, field.one());
        }
        left_action.push(m);
    }
    let mut right_action = Vec::new();
    for g in 0..balg.gen_count() {
        let gd = match balg.elem(balg.gen_index(g)) {
            BasisElem::Diag(d) => d.clone(),
            _ => unreachable!(),
        };
        let mut m = Matrix::zero(dim, dim, field);
        for (i, d) in basis.iter().enumerate() {
            let (loops, prod) = multiply(d, &gd).expect("equal ranks");
            let coeff = field.delta().pow(loops as i64).unwrap();
            let j = index[&prod];
            m.set(i, j, m.get(i, j).add(&coeff));
        }
        right_action.push(m);
    }
    Ok(Bimodule {
        left: walg,
        right: balg.clone(),
        dim,
        left_action,
        right_action,
    })
}

/// The full induction Ind_l: x ⊗ over the layer group of e_l·B, keeping all
/// deeper layers.
pub fn ind_l_full(x: &Module, balg: &Arc<BasedAlgebra>, l: usize) -> Result<Module, ModuleError> {
    let bim = e_l_bimodule(balg, l)?;
    if !x.alg.same_as(&bim.left) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let (m, _) = tensor_over(x, &bim)?;
    Ok(m)
}

/// Restriction Res_l: the image of the layer idempotent with the group
/// acting through symmetric through-strand diagrams.
pub fn res_l(n: &Module, l: usize) -> Result<Module, ModuleError> {
    let balg = &n.alg;
    let r = brauer_rank(balg);
    check_layer_delta(balg, l)?;
    let walg = layer_group_algebra(balg, l);
    let field = &balg.field;
    let e_diag = idempotent_diagram(l, r);
    let e_idx = balg
        .index_of(&BasisElem::Diag(e_diag))
        .expect("idempotent diagram in basis");
    let scale = if l == 0 {
        field.one()
    } else {
        field
            .delta()
            .inv()
            .expect("delta nonzero checked")
            .pow(l as i64)
            .unwrap()
    };
    let e_mat = n.action_of_elem(&AlgElem::scaled_basis(e_idx, scale))?;
    let image = RowSpace::from_rows(&e_mat);
    let dim = image.dim();
    let mut gen_action = Vec::new();
    for g in 0..walg.gen_count() {
        let w = match walg.elem(walg.gen_index(g)) {
            BasisElem::Perm(w) => w.clone(),
            _ => unreachable!(),
        };
        let wd = through_diagram(&w, l, r);
        let widx = balg
            .index_of(&BasisElem::Diag(wd))
            .expect("through diagram in basis");
        let act = n.action_of_basis(widx)?;
        let mut m = Matrix::zero(dim, dim, field);
        for i in 0..dim {
            let img = act.apply_row(image.basis.row(i));
            let coords = image
                .coords(&img)
                .expect("image invariant under the layer group");
            for (j, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        gen_action.push(m);
    }
    Ok(Module::new(walg, dim, gen_action))
}

/// The cell module Theta(l, lam) = ind_l S'(lam).
pub fn cell_module(
    balg: &Arc<BasedAlgebra>,
    idx: &CellIndex,
    placement: SignPlacement,
) -> Result<Module, ModuleError> {
    let walg = layer_group_algebra(balg, idx.layer);
    let pm = perm_module_w(&walg, &idx.lam, placement);
    let sp = dual_specht(&pm);
    ind_l(&sp, balg, idx.layer)
}

/// The permutation module M(l, lam) = Ind_l M(lam).
pub fn perm_module_b(
    balg: &Arc<BasedAlgebra>,
    idx: &CellIndex,
    placement: SignPlacement,
) -> Result<Module, ModuleError> {
    let walg = layer_group_algebra(balg, idx.layer);
    let pm = perm_module_w(&walg, &idx.lam, placement);
    ind_l_full(&pm.module, balg, idx.layer)
}

/// The Young module Y(l, lam): the unique direct summand of M(l, lam)
/// admitting a surjection onto ind_l Y(lam).
pub fn young_module_b(
    balg: &Arc<BasedAlgebra>,
    idx: &CellIndex,
    placement: SignPlacement,
    seed: u64,
) -> Result<Module, ModuleError> {
    let walg = layer_group_algebra(balg, idx.layer);
    let yw = young_module_w(&walg, &idx.lam, placement, seed)?;
    let target = ind_l(&yw, balg, idx.layer)?;
    let m = perm_module_b(balg, idx, placement)?;
    let parts = split_indecomposables(&m, seed)?;
    let mut hits = Vec::new();
    for (part, _) in parts {
        let homs = hom_space(&part, &target)?;
        if find_surjection(&homs, seed).is_some() {
            hits.push(part);
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(ModuleError::NotFound),
        k => Err(ModuleError::NotUnique(k)),
    }
}

/// All Young modules of the algebra, labelled by cell indices.
pub fn b_young_catalogue(
    balg: &Arc<BasedAlgebra>,
    placement: SignPlacement,
    seed: u64,
) -> Result<Vec<(CellIndex, Module)>, ModuleError> {
    let r = brauer_rank(balg);
    let mut out = Vec::new();
    for idx in cell_indices(r) {
        let y = young_module_b(balg, &idx, placement, seed)?;
        out.push((idx, y));
    }
    Ok(out)
}

/// Split M(idx) and identify every summand against the Young-module
/// catalogue. Returns (label, multiplicity) pairs, labels in catalogue
/// order.
pub fn decompose_perm_b(
    balg: &Arc<BasedAlgebra>,
    idx: &CellIndex,
    placement: SignPlacement,
    seed: u64,
    catalogue: &[(CellIndex, Module)],
) -> Result<Vec<(CellIndex, usize)>, ModuleError> {
    let m = perm_module_b(balg, idx, placement)?;
    let parts = split_indecomposables(&m, seed)?;
    let mut counts: Vec<(CellIndex, usize)> = Vec::new();
    for (part, _) in parts {
        let mut label = None;
        for (jdx, y) in catalogue {
            if is_isomorphic(&part, y, seed)? {
                label = Some(jdx.clone());
                break;
            }
        }
        let Some(jdx) = label else {
            return Err(ModuleError::NotFound);
        };
        match counts.iter_mut().find(|(k, _)| k == &jdx) {
            Some((_, c)) => *c += 1,
            None => counts.push((jdx, 1)),
        }
    }
    counts.sort_by_key(|(k, _)| (k.layer, k.lam.dominance_key(), k.lam.to_string()));
    Ok(counts)
}

/// Cell-module class data over the whole algebra: composition vectors of
/// each Theta(idx) and the head assignment, validated against the layered
/// unitriangular direction (factors of Theta(l, lam) live at layers <= l,
/// and at layer l only at shapes dominating lam).
pub struct CellClasses {
    /// identification order: layers ascending, dominance-maximal shapes first
    pub indices: Vec<CellIndex>,
    pub modules: Vec<Module>,
    pub catalogue: SimpleCatalogue,
    pub rows: Vec<Vec<usize>>,
    pub head: Vec<Option<usize>>,
    pub dims: Vec<usize>,
}

pub fn cell_classes(
    balg: &Arc<BasedAlgebra>,
    placement: SignPlacement,
    seed: u64,
) -> Result<CellClasses, ModuleError> {
    let r = brauer_rank(balg);
    let mut indices = cell_indices(r);
    // identification order: (layer asc, dominance key desc)
    indices.sort_by(|a, b| {
        (a.layer, std::cmp::Reverse(a.lam.dominance_key()))
            .cmp(&(b.layer, std::cmp::Reverse(b.lam.dominance_key())))
    });
    let catalogue = SimpleCatalogue::build(balg, seed)?;
    let mut modules = Vec::new();
    let mut rows = Vec::new();
    let mut head = Vec::new();
    let mut dims = Vec::new();
    let mut assigned = vec![false; catalogue.len()];
    for idx in &indices {
        let theta = cell_module(balg, idx, placement)?;
        dims.push(theta.dim);
        let counts = composition_multiplicities(&theta, &catalogue)?;
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
                    "cell module {idx} violates the unitriangular direction"
                )))
            }
        }
        rows.push(counts);
        modules.push(theta);
    }
    Ok(CellClasses {
        indices,
        modules,
        catalogue,
        rows,
        head,
        dims,
    })
}

impl CellClasses {
    pub fn position(&self, idx: &CellIndex) -> usize {
        self.indices
            .iter()
            .position(|i| i == idx)
            .expect("cell index present")
    }

    /// Cell multiplicities of a filtered module, solved in the Grothendieck
    /// group by elimination from the deepest layer upward. None when the
    /// composition vector is not a nonnegative integral combination.
    pub fn filtration_multiplicities(
        &self,
        m: &Module,
    ) -> Result<Option<Vec<(CellIndex, i64)>>, ModuleError> {
        let counts = composition_multiplicities(m, &self.catalogue)?;
        let target: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&c| c as i64).collect())
            .collect();
        // solve order: reverse of the identification order
        let mut order = Vec::new();
        for i in (0..self.indices.len()).rev() {
            match self.head[i] {
                Some(p) => order.push((i, p)),
                None => {
                    return Err(ModuleError::Dimension(format!(
                        "no simple head for cell index {} (p-singular case unsupported)",
                        self.indices[i]
                    )))
                }
            }
        }
        let solution = solve_by_elimination(&target, &rows, &order);
        Ok(solution.map(|coeffs| {
            self.indices
                .iter()
                .cloned()
                .zip(coeffs)
                .filter(|(_, c)| *c != 0)
                .collect()
        }))
    }
}

/// The ideal-chain submodules N_k = M·J_k of a module over the diagram
/// algebra, with inclusion rows. N_0 = M; the chain weakly decreases.
pub fn ideal_chain(m: &Module) -> Result<Vec<(Module, Matrix)>, ModuleError> {
    let balg = &m.alg;
    let r = brauer_rank(balg);
    let field = &balg.field;
    let mut chain = Vec::new();
    for k in 0..=r {
        let mut rows = Matrix::zero(0, m.dim, field);
        for d in crate::diagram::ideal_basis(r, k) {
            let di = balg.index_of(&BasisElem::Diag(d)).unwrap();
            let act = m.action_of_basis(di)?;
            for i in 0..act.rows {
                rows.push_row(act.row(i));
            }
        }
        chain.push(crate::module::submodule(m, &rows));
    }
    Ok(chain)
}

/// The layer subquotients N_m / N_{m+1} of the ideal chain (the last layer
/// is N_r itself).
pub fn ideal_layer_subquotients(m: &Module) -> Result<Vec<Module>, ModuleError> {
    let chain = ideal_chain(m)?;
    let field = &m.alg.field;
    let mut out = Vec::new();
    for k in 0..chain.len() {
        let (mid, mid_incl) = &chain[k];
        if k + 1 == chain.len() {
            out.push(mid.clone());
            continue;
        }
        let (_, sub_incl) = &chain[k + 1];
        let space = RowSpace::from_rows(mid_incl);
        let mut sub_rows = Matrix::zero(0, mid.dim, field);
        for i in 0..sub_incl.rows {
            sub_rows.push_row(&space.coords(sub_incl.row(i)).expect("nested ideal chain"));
        }
        let (quot, _) = quotient(mid, &sub_rows);
        out.push(quot);
    }
    Ok(out)
}

/// Independent cell-filtration multiplicities by the explicit layer chain:
/// m ⊇ m·J_1 ⊇ ... with each subquotient restricted through the layer
/// idempotent to a W_{r-m}-module whose dual-Specht content is counted by
/// the group-level unitriangular solve. Entirely avoids the diagram
/// algebra's own composition-factor bookkeeping.
pub fn cell_filtration_explicit_of(
    m: &Module,
    placement: SignPlacement,
    seed: u64,
) -> Result<Option<Vec<(CellIndex, i64)>>, ModuleError> {
    let balg = &m.alg;
    let r = brauer_rank(balg);
    let layers = ideal_layer_subquotients(m)?;
    let mut out: Vec<(CellIndex, i64)> = Vec::new();
    for (layer, q) in layers.into_iter().enumerate() {
        if q.dim == 0 {
            continue;
        }
        let x = res_l(&q, layer)?;
        let v = enumerate_dangles(r, layer).len();
        if x.dim * v != q.dim {
            // the subquotient is not a clean layer induction
            return Ok(None);
        }
        let walg = layer_group_algebra(balg, layer);
        let classes = crate::wreps::dual_specht_classes(&walg, placement, seed)?;
        let Some(mults) = classes.filtration_multiplicities(&x)? else {
            return Ok(None);
        };
        for (nu, c) in mults {
            out.push((CellIndex::new(layer, nu), c));
        }
    }
    out.sort_by_key(|(k, _)| (k.layer, k.lam.dominance_key(), k.lam.to_string()));
    Ok(Some(out))
}

/// Explicit filtration of the permutation module at a cell index.
pub fn cell_filtration_explicit(
    balg: &Arc<BasedAlgebra>,
    idx: &CellIndex,
    placement: SignPlacement,
    seed: u64,
) -> Result<Option<Vec<(CellIndex, i64)>>, ModuleError> {
    let m = perm_module_b(balg, idx, placement)?;
    cell_filtration_explicit_of(&m, placement, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationMethod {
    Grothendieck,
    Explicit,
}

/// Cell multiplicities of a filtered module by either method, with the
/// dimension identity checked. `None` entries mean the module is not cell
/// filtered (non-integral or negative solution).
#[derive(Debug, Clone)]
pub struct FiltrationReport {
    pub method: FiltrationMethod,
    pub entries: Vec<(CellIndex, i64)>,
}

pub fn cell_filtration(
    m: &Module,
    method: FiltrationMethod,
    placement: SignPlacement,
    seed: u64,
) -> Result<Option<FiltrationReport>, ModuleError> {
    let entries = match method {
        FiltrationMethod::Grothendieck => {
            let classes = cell_classes(&m.alg.clone(), placement, seed)?;
            let Some(mut entries) = classes.filtration_multiplicities(m)? else {
                return Ok(None);
            };
            entries.sort_by_key(|(k, _)| (k.layer, k.lam.dominance_key(), k.lam.to_string()));
            entries
        }
        FiltrationMethod::Explicit => match cell_filtration_explicit_of(m, placement, seed)? {
            Some(entries) => entries,
            None => return Ok(None),
        },
    };
    // multiplicities must account for every dimension
    let mut total = 0i64;
    for (idx, c) in &entries {
        let theta = cell_module(&m.alg.clone(), idx, placement)?;
        total += c * theta.dim as i64;
    }
    if total != m.dim as i64 {
        return Ok(None);
    }
    Ok(Some(FiltrationReport { method, entries }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartition::BiPartition;
    use crate::module::end_space;
    use crate::scalar::FieldSpec;

    fn bp(f: &[usize], s: &[usize]) -> BiPartition {
        BiPartition::new(f.to_vec(), s.to_vec())
    }

    fn q3() -> FieldSpec {
        FieldSpec::rational_delta(3)
    }

    #[test]
    fn ind_zero_preserves_dimension() {
        let balg = BasedAlgebra::brauer_c(2, &q3());
        let walg = layer_group_algebra(&balg, 0);
        let reg = Module::regular(&walg);
        let ind = ind_l(&reg, &balg, 0).unwrap();
        assert_eq!(ind.dim, reg.dim);
        ind.validate().unwrap();
    }

    #[test]
    fn ind_one_dimensions() {
        let balg = BasedAlgebra::brauer_c(2, &q3());
        let walg = layer_group_algebra(&balg, 1);
        let triv = Module::trivial(&walg);
        let ind = ind_l(&triv, &balg, 1).unwrap();
        assert_eq!(ind.dim, 2, "dim V_1 at rank 2");
        ind.validate().unwrap();
        // delta = 0 is rejected for positive layers
        let zero = BasedAlgebra::brauer_c(2, &FieldSpec::rational_delta(0));
        let wz = layer_group_algebra(&zero, 1);
        assert!(matches!(
            ind_l(&Module::trivial(&wz), &zero, 1),
            Err(ModuleError::DeltaZero(1))
        ));
    }

    #[test]
    fn ind_full_rank_one_example() {
        // r=1, l=1: only one diagram carries the axis-arc top
        let balg = BasedAlgebra::brauer_c(1, &q3());
        let w0 = layer_group_algebra(&balg, 1);
        let ind = ind_l_full(&Module::trivial(&w0), &balg, 1).unwrap();
        assert_eq!(ind.dim, 1);
        ind.validate().unwrap();
    }

    #[test]
    fn res_of_regular_at_layer_zero() {
        let balg = BasedAlgebra::brauer_c(1, &q3());
        let reg = Module::regular(&balg);
        let res = res_l(&reg, 0).unwrap();
        assert_eq!(res.dim, reg.dim, "e_0 is the identity");
        res.validate().unwrap();
    }

    #[test]
    fn res_inverts_ind_on_iso_classes() {
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(5, 1).unwrap());
        for l in 0..=2usize {
            let walg = layer_group_algebra(&balg, l);
            for x in [Module::trivial(&walg), Module::regular(&walg)] {
                let ind = ind_l(&x, &balg, l).unwrap();
                let back = res_l(&ind, l).unwrap();
                assert_eq!(back.dim, x.dim, "layer {l}");
                assert!(is_isomorphic(&back, &x, 0).unwrap(), "layer {l}");
            }
        }
    }

    #[test]
    fn cell_module_dimensions() {
        let balg = BasedAlgebra::brauer_c(2, &q3());
        // sum of squared cell dimensions is the algebra dimension (char 0)
        let mut total = 0usize;
        for idx in cell_indices(2) {
            let theta = cell_module(&balg, &idx, SignPlacement::First).unwrap();
            let v = enumerate_dangles(2, idx.layer).len();
            assert_eq!(theta.dim % v, 0);
            total += theta.dim * theta.dim;
        }
        assert_eq!(total, balg.dim());
    }

    #[test]
    fn perm_module_b_dimension_invariance() {
        let fields = [
            FieldSpec::rational_delta(3),
            FieldSpec::rational(
                crate::scalar::FieldSpec::rational_delta(0)
                    .parse_scalar("5/2")
                    .unwrap(),
            ),
            FieldSpec::prime(5, 1).unwrap(),
            FieldSpec::prime(7, 2).unwrap(),
        ];
        for idx in cell_indices(1) {
            let mut dims = Vec::new();
            for f in &fields {
                let balg = BasedAlgebra::brauer_c(1, f);
                dims.push(
                    perm_module_b(&balg, &idx, SignPlacement::First)
                        .unwrap()
                        .dim,
                );
            }
            assert!(dims.windows(2).all(|w| w[0] == w[1]), "{idx}: {dims:?}");
        }
    }

    #[test]
    fn tensor_dimension_matches_orbit_count() {
        // dim(M(lam) ⊗ e_l B) = number of (tabloid, diagram) orbits under
        // the layer group acting on both sides
        let balg = BasedAlgebra::brauer_c(2, &q3());
        let placement = SignPlacement::First;
        for idx in cell_indices(2) {
            let l = idx.layer;
            let walg = layer_group_algebra(&balg, l);
            let pm = perm_module_w(&walg, &idx.lam, placement);
            let m = perm_module_b(&balg, &idx, placement).unwrap();
            // orbit count oracle
            let bim = e_l_bimodule(&balg, l).unwrap();
            let nt = pm.module.dim;
            let nd = bim.dim;
            let mut uf: Vec<usize> = (0..nt * nd).collect();
            fn find(uf: &mut Vec<usize>, x: usize) -> usize {
                if uf[x] != x {
                    let r = find(uf, uf[x]);
                    uf[x] = r;
                }
                uf[x]
            }
            for g in 0..walg.gen_count() {
                // tabloid moves by w while the diagram moves by w^{-1}:
                // permutation matrices make both directions available
                let tw = &pm.module.gen_action[g];
                let dw = &bim.left_action[g];
                for i in 0..nt {
                    let ti = (0..nt).find(|&k| !tw.get(i, k).is_zero()).unwrap();
                    for j in 0..nd {
                        let dj = (0..nd).find(|&k| !dw.get(j, k).is_zero()).unwrap();
                        // (t_i · w) ⊗ d_j ~ t_i ⊗ (w · d_j)
                        let a = find(&mut uf, ti * nd + j);
                        let b = find(&mut uf, i * nd + dj);
                        uf[a] = b;
                    }
                }
            }
            let mut roots = std::collections::BTreeSet::new();
            for x in 0..nt * nd {
                let r = find(&mut uf, x);
                roots.insert(r);
            }
            assert_eq!(m.dim, roots.len(), "{idx}");
        }
    }

    #[test]
    fn adjunction_dimension_identity() {
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(5, 1).unwrap());
        for l in 0..=2usize {
            let walg = layer_group_algebra(&balg, l);
            let x = Module::regular(&walg);
            let n = cell_module(
                &balg,
                &CellIndex::new(0, bp(&[1], &[1])),
                SignPlacement::First,
            )
            .unwrap();
            let ind = ind_l_full(&x, &balg, l).unwrap();
            let res = res_l(&n, l).unwrap();
            assert_eq!(
                hom_space(&ind, &n).unwrap().dim(),
                hom_space(&x, &res).unwrap().dim(),
                "layer {l}"
            );
        }
    }

    #[test]
    fn cell_modules_indecomposable_over_f5() {
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(5, 1).unwrap());
        for idx in cell_indices(2) {
            let theta = cell_module(&balg, &idx, SignPlacement::First).unwrap();
            let parts = split_indecomposables(&theta, 0).unwrap();
            assert_eq!(parts.len(), 1, "{idx}");
            let _ = end_space(&theta).unwrap();
        }
    }

    #[test]
    fn unified_filtration_entry_point() {
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(5, 1).unwrap());
        let placement = SignPlacement::First;
        let idx = CellIndex::new(0, bp(&[2], &[]));
        let m = perm_module_b(&balg, &idx, placement).unwrap();
        let gro = cell_filtration(&m, FiltrationMethod::Grothendieck, placement, 0)
            .unwrap()
            .unwrap();
        let exp = cell_filtration(&m, FiltrationMethod::Explicit, placement, 0)
            .unwrap()
            .unwrap();
        assert_eq!(gro.entries, exp.entries);
        assert_eq!(gro.method, FiltrationMethod::Grothendieck);
        // a cell module filters as itself under both methods
        let theta = cell_module(&balg, &idx, placement).unwrap();
        let t = cell_filtration(&theta, FiltrationMethod::Grothendieck, placement, 0)
            .unwrap()
            .unwrap();
        assert_eq!(t.entries, vec![(idx.clone(), 1)]);
    }

    #[test]
    fn cell_modules_validate_with_nontrivial_delta() {
        // delta = 2 over F_7 exercises the loop scalar bookkeeping
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(7, 2).unwrap());
        for idx in cell_indices(2) {
            let theta = cell_module(&balg, &idx, SignPlacement::First).unwrap();
            theta.validate().unwrap_or_else(|e| panic!("{idx}: {e}"));
        }
        let m = perm_module_b(&balg, &cell_indices(2)[0], SignPlacement::First).unwrap();
        m.validate().unwrap();
    }

    #[test]
    fn filtration_of_cell_module_is_itself() {
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(5, 1).unwrap());
        let classes = cell_classes(&balg, SignPlacement::First, 0).unwrap();
        for (i, idx) in classes.indices.iter().enumerate() {
            let mults = classes
                .filtration_multiplicities(&classes.modules[i])
                .unwrap()
                .unwrap();
            assert_eq!(mults, vec![(idx.clone(), 1)], "{idx}");
        }
    }

    #[test]
    fn explicit_filtration_matches_grothendieck() {
        let balg = BasedAlgebra::brauer_c(2, &FieldSpec::prime(5, 1).unwrap());
        let placement = SignPlacement::First;
        let classes = cell_classes(&balg, placement, 0).unwrap();
        for idx in cell_indices(2) {
            let m = perm_module_b(&balg, &idx, placement).unwrap();
            let mut gro = classes.filtration_multiplicities(&m).unwrap().unwrap();
            gro.sort_by_key(|(k, _)| (k.layer, k.lam.dominance_key(), k.lam.to_string()));
            let exp = cell_filtration_explicit(&balg, &idx, placement, 0)
                .unwrap()
                .unwrap();
            assert_eq!(gro, exp, "{idx}");
            // principal cell appears exactly once
            assert!(exp.contains(&(idx.clone(), 1)), "{idx}");
            // dimension bookkeeping
            let total: i64 = exp
                .iter()
                .map(|(k, c)| c * classes.dims[classes.position(k)] as i64)
                .sum();
            assert_eq!(total, m.dim as i64, "{idx}");
        }
    }
}
