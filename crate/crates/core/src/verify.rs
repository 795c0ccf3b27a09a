//! Theorem-level verification suites. Each suite checks one structural
//! statement about the hyperoctahedral group algebra or the type-C Brauer
//! algebra instance by instance and returns machine-readable reports.
//!
//! Suites gate on their hypotheses (characteristic not 2 or 3 where stated,
//! nonzero loop parameter for positive layers). Out-of-hypothesis runs must
//! be requested explicitly and mark every instance instead of passing or
//! failing it.

use crate::algebra::BasedAlgebra;
use crate::bipartition::{
    cell_index_ge, cell_index_gt, cell_indices, dominates, enumerate_bipartitions, CellIndex,
};
use crate::creps::{
    b_young_catalogue, cell_classes, cell_filtration_explicit, cell_module, decompose_perm_b,
    perm_module_b,
};
use crate::ext::ext1_dim;
use crate::fitting::{is_isomorphic, split_indecomposables};
use crate::matrix::Matrix;
use crate::module::{hom_space, Module, ModuleError};
use crate::report::{Hypothesis, Instance, Report};
use crate::scalar::FieldSpec;
use crate::signed_perm::SignPlacement;
use crate::wreps::{
    convention_oracle, dual_specht, perm_module_w, sign_twist, specht_module, w_young_catalogue,
};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub r: usize,
    pub field: FieldSpec,
    pub placement: Option<SignPlacement>,
    pub seed: u64,
    pub allow_out_of_hypothesis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    WDecomp,
    Duality,
    HomExtW,
    Stratify,
    Filtration,
    Young,
    Main,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "w-decomp" => Suite::WDecomp,
            "duality" => Suite::Duality,
            "hom-ext-w" => Suite::HomExtW,
            "stratify" => Suite::Stratify,
            "filtration" => Suite::Filtration,
            "young" => Suite::Young,
            "main" => Suite::Main,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::WDecomp => "w-decomp",
            Suite::Duality => "duality",
            Suite::HomExtW => "hom-ext-w",
            Suite::Stratify => "stratify",
            Suite::Filtration => "filtration",
            Suite::Young => "young",
            Suite::Main => "main",
        }
    }

    /// Characteristics the suite's statement excludes, and whether it needs
    /// a nonzero loop parameter.
    pub fn hypothesis(&self) -> (&'static [u64], bool) {
        match self {
            Suite::WDecomp => (&[2], false),
            Suite::Duality => (&[], false),
            Suite::HomExtW => (&[2, 3], false),
            Suite::Stratify | Suite::Filtration | Suite::Young | Suite::Main => (&[2, 3], true),
        }
    }

    pub fn hypothesis_met(&self, field: &FieldSpec) -> bool {
        let (bad_chars, needs_delta) = self.hypothesis();
        !bad_chars.contains(&field.characteristic()) && (!needs_delta || !field.delta().is_zero())
    }
}

fn hypothesis_of(cfg: &SuiteConfig) -> Hypothesis {
    Hypothesis {
        characteristic: cfg.field.characteristic(),
        delta: cfg.field.delta().to_string(),
        r: cfg.r,
    }
}

pub fn resolve_placement(cfg: &SuiteConfig) -> Result<SignPlacement, ModuleError> {
    match cfg.placement {
        Some(p) => Ok(p),
        None => convention_oracle(),
    }
}

/// Run one suite. `Err` means the computation itself could not proceed;
/// failing instances are reported, not raised.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    if !suite.hypothesis_met(&cfg.field) && !cfg.allow_out_of_hypothesis {
        return Err(ModuleError::Dimension(format!(
            "suite `{}` hypotheses exclude char {} / delta {}; pass --allow-out-of-hypothesis to run anyway",
            suite.name(),
            cfg.field.characteristic(),
            cfg.field.delta()
        )));
    }
    let reports = match suite {
        Suite::WDecomp => w_decomp_suite(cfg)?,
        Suite::Duality => duality_suite(cfg)?,
        Suite::HomExtW => hom_ext_w_suite(cfg)?,
        Suite::Stratify => stratify_suite(cfg)?,
        Suite::Filtration => filtration_suite(cfg)?,
        Suite::Young => young_suite(cfg)?,
        Suite::Main => main_suite(cfg)?,
    };
    if !suite.hypothesis_met(&cfg.field) {
        // demote every verdict to an out-of-hypothesis marker
        return Ok(reports
            .into_iter()
            .map(|mut r| {
                for i in &mut r.instances {
                    i.pass = None;
                }
                r
            })
            .collect());
    }
    Ok(reports)
}

/// Permutation modules of the group algebra decompose into Young modules:
/// the principal one exactly once, all others strictly dominating. Also
/// records the oracle-resolved placement and one-dimensional labels.
fn w_decomp_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let hyp = hypothesis_of(cfg);
    let alg = BasedAlgebra::hyperoctahedral(cfg.r, &cfg.field);
    let mut convention = Report::new(
        "sign placement convention: exactly one placement is unitriangular at rank 2 over the rationals",
        hyp.clone(),
    );
    let oracle = convention_oracle()?;
    convention.push(Instance::checked(
        "placement",
        "unique unitriangular placement",
        format!("{oracle:?}"),
        cfg.placement.is_none() || cfg.placement == Some(oracle),
    ));
    // resolved labels of the trivial and sign modules
    let triv = Module::trivial(&alg);
    let sgn = sign_twist(&triv);
    for (name, target) in [("trivial module label", &triv), ("sign module label", &sgn)] {
        let mut found = Vec::new();
        for lam in enumerate_bipartitions(cfg.r) {
            let pm = perm_module_w(&alg, &lam, placement);
            let (s, _) = specht_module(&pm);
            if s.dim == 1 && is_isomorphic(&s, target, cfg.seed)? {
                found.push(lam.to_string());
            }
        }
        convention.push(Instance::checked(
            name,
            "exactly one bi-partition",
            found.join(" "),
            found.len() == 1,
        ));
    }

    let mut decomp = Report::new(
        "permutation modules of the group algebra split into Young modules, principal once, others strictly dominating",
        hyp,
    );
    let catalogue = w_young_catalogue(&alg, placement, cfg.seed)?;
    for lam in enumerate_bipartitions(cfg.r) {
        let pm = perm_module_w(&alg, &lam, placement);
        let parts = split_indecomposables(&pm.module, cfg.seed)?;
        let mut principal = 0usize;
        let mut labels = Vec::new();
        let mut ok = true;
        for (part, _) in &parts {
            let mut label = None;
            for (mu, y) in &catalogue {
                if is_isomorphic(part, y, cfg.seed)? {
                    label = Some(mu.clone());
                    break;
                }
            }
            match label {
                Some(mu) => {
                    if mu == lam {
                        principal += 1;
                    } else if !(dominates(&mu, &lam).unwrap_or(false) && mu != lam) {
                        ok = false;
                    }
                    labels.push(mu.to_string());
                }
                None => {
                    ok = false;
                    labels.push("?".into());
                }
            }
        }
        ok &= principal == 1;
        labels.sort();
        decomp.push(Instance::checked(
            lam.to_string(),
            "principal Young module once, others strictly dominating",
            labels.join(" + "),
            ok,
        ));
    }
    Ok(vec![convention, decomp])
}

/// Duality: S'(lam') is isomorphic to S(lam) twisted by the sign character.
fn duality_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let alg = BasedAlgebra::hyperoctahedral(cfg.r, &cfg.field);
    let mut report = Report::new(
        "the dual Specht module of the conjugate shape is the Specht module twisted by sign",
        hypothesis_of(cfg),
    );
    for lam in enumerate_bipartitions(cfg.r) {
        let conj = lam.conjugate();
        let pm_conj = perm_module_w(&alg, &conj, placement);
        let lhs = dual_specht(&pm_conj);
        let pm = perm_module_w(&alg, &lam, placement);
        let (s, _) = specht_module(&pm);
        let rhs = sign_twist(&s);
        let pass = is_isomorphic(&lhs, &rhs, cfg.seed)?;
        report.push(Instance::checked(
            format!("{lam} (conjugate {conj})"),
            "isomorphic",
            if pass {
                "isomorphic".into()
            } else {
                format!("dims {} vs {}", lhs.dim, rhs.dim)
            },
            pass,
        ));
    }
    Ok(vec![report])
}

/// Cohomology over the group algebra: Ext^1(k, S'(lam)) = 0; Hom and Ext^1
/// between Specht modules vanish against the dominance order.
fn hom_ext_w_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let alg = BasedAlgebra::hyperoctahedral(cfg.r, &cfg.field);
    let hyp = hypothesis_of(cfg);
    let shapes = enumerate_bipartitions(cfg.r);
    let spechts: Vec<(usize, Module)> = shapes
        .iter()
        .enumerate()
        .map(|(i, lam)| (i, specht_module(&perm_module_w(&alg, lam, placement)).0))
        .collect();
    let triv = Module::trivial(&alg);

    let mut ext_triv = Report::new(
        "first extensions of the trivial module by dual Specht modules vanish",
        hyp.clone(),
    );
    for (i, lam) in shapes.iter().enumerate() {
        let sp = dual_specht(&perm_module_w(&alg, lam, placement));
        let d = ext1_dim(&triv, &sp)?;
        ext_triv.push(Instance::checked(
            lam.to_string(),
            "0",
            d.to_string(),
            d == 0,
        ));
        let _ = i;
    }

    let mut hom_specht = Report::new(
        "homomorphisms between Specht modules vanish unless the source dominates the target",
        hyp.clone(),
    );
    let mut ext_specht = Report::new(
        "first extensions between Specht modules vanish unless the source strictly dominates the target",
        hyp,
    );
    for (i, lam) in shapes.iter().enumerate() {
        for (j, mu) in shapes.iter().enumerate() {
            if !dominates(lam, mu).unwrap() {
                let d = hom_space(&spechts[i].1, &spechts[j].1)?.dim();
                hom_specht.push(Instance::checked(
                    format!("{lam} -> {mu}"),
                    "0",
                    d.to_string(),
                    d == 0,
                ));
            }
            if !(dominates(lam, mu).unwrap() && lam != mu) {
                let d = ext1_dim(&spechts[i].1, &spechts[j].1)?;
                ext_specht.push(Instance::checked(
                    format!("{lam} -> {mu}"),
                    "0",
                    d.to_string(),
                    d == 0,
                ));
            }
        }
    }
    Ok(vec![ext_triv, hom_specht, ext_specht])
}

/// The stratifying-system conditions: Hom vanishing above, Ext vanishing at
/// or above, indecomposable cell modules.
fn stratify_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let balg = BasedAlgebra::brauer_c(cfg.r, &cfg.field);
    let hyp = hypothesis_of(cfg);
    let indices = cell_indices(cfg.r);
    let thetas: Vec<(CellIndex, Module)> = indices
        .iter()
        .map(|idx| Ok((idx.clone(), cell_module(&balg, idx, placement)?)))
        .collect::<Result<_, ModuleError>>()?;

    let mut indec = Report::new("every cell module is indecomposable", hyp.clone());
    for (idx, theta) in &thetas {
        let n = split_indecomposables(theta, cfg.seed)?.len();
        indec.push(Instance::checked(
            idx.to_string(),
            "1 summand",
            format!("{n} summands"),
            n == 1,
        ));
    }

    let mut hom = Report::new(
        "homomorphisms between cell modules vanish when the target index is strictly greater",
        hyp.clone(),
    );
    let mut ext = Report::new(
        "first extensions between cell modules vanish when the target index is greater or equal",
        hyp,
    );
    for (idx, theta) in &thetas {
        for (jdx, eta) in &thetas {
            if cell_index_gt(jdx, idx) {
                let d = hom_space(theta, eta)?.dim();
                hom.push(Instance::checked(
                    format!("{idx} -> {jdx}"),
                    "0",
                    d.to_string(),
                    d == 0,
                ));
            }
            if cell_index_ge(jdx, idx) {
                let d = ext1_dim(theta, eta)?;
                ext.push(Instance::checked(
                    format!("{idx} -> {jdx}"),
                    "0",
                    d.to_string(),
                    d == 0,
                ));
            }
        }
    }
    Ok(vec![indec, hom, ext])
}

/// Cell filtrations of permutation modules: the Grothendieck solve yields
/// nonnegative integers, agrees with the explicit layer chain, and the
/// dimensions add up.
fn filtration_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let balg = BasedAlgebra::brauer_c(cfg.r, &cfg.field);
    let hyp = hypothesis_of(cfg);
    let classes = cell_classes(&balg, placement, cfg.seed)?;
    let mut gro = Report::new(
        "permutation modules have nonnegative integral cell multiplicities with exact dimension bookkeeping",
        hyp.clone(),
    );
    let mut agree = Report::new(
        "the Grothendieck solve and the explicit layer filtration give identical multisets",
        hyp,
    );
    for idx in cell_indices(cfg.r) {
        let m = perm_module_b(&balg, &idx, placement)?;
        let solved = classes.filtration_multiplicities(&m)?;
        let (ok, text, dims_ok) = match &solved {
            Some(mults) => {
                let total: i64 = mults
                    .iter()
                    .map(|(jdx, c)| c * classes.dims[classes.position(jdx)] as i64)
                    .sum();
                (true, format_mults(mults), total == m.dim as i64)
            }
            None => (false, "not cell-filtered".to_string(), false),
        };
        gro.push(Instance::checked(
            idx.to_string(),
            format!("nonnegative integers summing to dim {}", m.dim),
            text.clone(),
            ok && dims_ok,
        ));
        let explicit = cell_filtration_explicit(&balg, &idx, placement, cfg.seed)?;
        let same = match (&solved, &explicit) {
            (Some(s), Some(e)) => {
                let mut a = s.clone();
                a.sort_by_key(|(k, _)| (k.layer, k.lam.dominance_key(), k.lam.to_string()));
                &a == e
            }
            _ => false,
        };
        agree.push(Instance::checked(
            idx.to_string(),
            text,
            explicit
                .as_ref()
                .map_or("not cell-filtered".to_string(), |e| format_mults(e)),
            same,
        ));
    }
    Ok(vec![gro, agree])
}

fn format_mults(mults: &[(CellIndex, i64)]) -> String {
    if mults.is_empty() {
        return "0".into();
    }
    mults
        .iter()
        .map(|(k, c)| {
            if *c == 1 {
                format!("[{k}]")
            } else {
                format!("{c}[{k}]")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Young modules: unique summand surjecting onto the layer induction of the
/// group Young module, and pairwise non-isomorphic across indices.
fn young_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let balg = BasedAlgebra::brauer_c(cfg.r, &cfg.field);
    let hyp = hypothesis_of(cfg);
    let mut unique = Report::new(
        "each permutation module has exactly one summand surjecting onto the induced Young module",
        hyp.clone(),
    );
    let mut catalogue = Vec::new();
    for idx in cell_indices(cfg.r) {
        match crate::creps::young_module_b(&balg, &idx, placement, cfg.seed) {
            Ok(y) => {
                unique.push(Instance::checked(
                    idx.to_string(),
                    "unique summand",
                    format!("dim {}", y.dim),
                    true,
                ));
                catalogue.push((idx, y));
            }
            Err(ModuleError::NotUnique(k)) => {
                unique.push(Instance::checked(
                    idx.to_string(),
                    "unique summand",
                    format!("{k} summands"),
                    false,
                ));
            }
            Err(ModuleError::NotFound) => {
                unique.push(Instance::checked(
                    idx.to_string(),
                    "unique summand",
                    "none",
                    false,
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let mut distinct = Report::new(
        "Young modules at different cell indices are non-isomorphic",
        hyp,
    );
    for i in 0..catalogue.len() {
        for j in (i + 1)..catalogue.len() {
            let pass = !is_isomorphic(&catalogue[i].1, &catalogue[j].1, cfg.seed)?;
            distinct.push(Instance::checked(
                format!("{} vs {}", catalogue[i].0, catalogue[j].0),
                "non-isomorphic",
                if pass { "non-isomorphic" } else { "isomorphic" },
                pass,
            ));
        }
    }
    Ok(vec![unique, distinct])
}

/// The decomposition of every permutation module into Young modules:
/// principal multiplicity one, every other label strictly below in the cell
/// order, and in particular never at a shallower layer.
fn main_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let balg = BasedAlgebra::brauer_c(cfg.r, &cfg.field);
    let hyp = hypothesis_of(cfg);
    let catalogue = b_young_catalogue(&balg, placement, cfg.seed)?;
    let mut decomp = Report::new(
        "permutation modules decompose into Young modules with principal multiplicity one and lower labels",
        hyp.clone(),
    );
    let mut layers = Report::new(
        "no Young module from a shallower layer appears in a permutation module",
        hyp,
    );
    for idx in cell_indices(cfg.r) {
        match decompose_perm_b(&balg, &idx, placement, cfg.seed, &catalogue) {
            Ok(counts) => {
                let principal = counts
                    .iter()
                    .find(|(k, _)| k == &idx)
                    .map(|(_, c)| *c)
                    .unwrap_or(0);
                let others_below = counts
                    .iter()
                    .filter(|(k, _)| k != &idx)
                    .all(|(k, _)| cell_index_ge(&idx, k));
                let text = counts
                    .iter()
                    .map(|(k, c)| {
                        if *c == 1 {
                            format!("Y[{k}]")
                        } else {
                            format!("{c}Y[{k}]")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
                decomp.push(Instance::checked(
                    idx.to_string(),
                    "principal once, all other labels <= index",
                    text,
                    principal == 1 && others_below,
                ));
                let no_shallower = counts.iter().all(|(k, _)| k.layer >= idx.layer);
                layers.push(Instance::checked(
                    idx.to_string(),
                    format!("all labels at layer >= {}", idx.layer),
                    counts
                        .iter()
                        .map(|(k, _)| k.layer.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    no_shallower,
                ));
            }
            Err(ModuleError::NotFound) => {
                decomp.push(Instance::checked(
                    idx.to_string(),
                    "all summands identified",
                    "unidentified summand",
                    false,
                ));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(vec![decomp, layers])
}

/// Short exact sequences 0 -> N_{k+1} -> N_k -> N_k/N_{k+1} -> 0 from the
/// ideal-chain filtration of M(idx), used by the Hom-exactness checks.
pub fn ideal_chain_sequences(
    balg: &std::sync::Arc<BasedAlgebra>,
    idx: &CellIndex,
    placement: SignPlacement,
) -> Result<Vec<(Module, Module, Module)>, ModuleError> {
    let m = perm_module_b(balg, idx, placement)?;
    let field = &balg.field;
    let chain = crate::creps::ideal_chain(&m)?;
    let mut out = Vec::new();
    for k in 0..chain.len() - 1 {
        let (mid, mid_incl) = &chain[k];
        let (sub, sub_incl) = &chain[k + 1];
        let space = crate::matrix::RowSpace::from_rows(mid_incl);
        let mut sub_rows = Matrix::zero(0, mid.dim, field);
        for i in 0..sub_incl.rows {
            sub_rows.push_row(&space.coords(sub_incl.row(i)).expect("nested ideal chain"));
        }
        let (quot, _) = crate::module::quotient(mid, &sub_rows);
        out.push((sub.clone(), mid.clone(), quot));
    }
    Ok(out)
}

/// Hom-exactness of Hom(M(idx), -) over the ideal-chain sequences, plus
/// relative projectivity: Ext^1(M(idx), Theta(jdx)) = 0.
pub fn hom_exactness_suite(cfg: &SuiteConfig) -> Result<Vec<Report>, ModuleError> {
    let placement = resolve_placement(cfg)?;
    let balg = BasedAlgebra::brauer_c(cfg.r, &cfg.field);
    let hyp = hypothesis_of(cfg);
    let indices = cell_indices(cfg.r);
    let mut additive = Report::new(
        "Hom from a permutation module is additive over ideal-chain short exact sequences",
        hyp.clone(),
    );
    let mut relproj = Report::new(
        "permutation modules are relatively projective: extensions by cell modules vanish",
        hyp,
    );
    for idx in &indices {
        let m = perm_module_b(&balg, idx, placement)?;
        // short exact sequences from the ideal chain of M(idx) itself
        let seq = ideal_chain_sequences(&balg, idx, placement)?;
        for (k, (sub, mid, quot)) in seq.iter().enumerate() {
            let hm = hom_space(&m, mid)?.dim();
            let hs = hom_space(&m, sub)?.dim();
            let hq = hom_space(&m, quot)?.dim();
            additive.push(Instance::checked(
                format!("Hom({idx}, chain step {k})"),
                format!("{hm}"),
                format!("{} + {}", hs, hq),
                hm == hs + hq,
            ));
        }
        let pres = crate::ext::free_presentation(&m)?;
        for jdx in &indices {
            let theta = cell_module(&balg, jdx, placement)?;
            let d = crate::ext::ext1_dim_with(&pres, &theta)?;
            relproj.push(Instance::checked(
                format!("Ext1({idx}, {jdx})"),
                "0",
                d.to_string(),
                d == 0,
            ));
        }
    }
    Ok(vec![additive, relproj])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in [
            Suite::WDecomp,
            Suite::Duality,
            Suite::HomExtW,
            Suite::Stratify,
            Suite::Filtration,
            Suite::Young,
            Suite::Main,
        ] {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn hypothesis_gate() {
        let cfg = SuiteConfig {
            r: 2,
            field: FieldSpec::prime(2, 1).unwrap(),
            placement: Some(SignPlacement::First),
            seed: 0,
            allow_out_of_hypothesis: false,
        };
        assert!(run_suite(Suite::Stratify, &cfg).is_err());
        assert!(!Suite::Stratify.hypothesis_met(&cfg.field));
        assert!(Suite::Stratify.hypothesis_met(&FieldSpec::prime(5, 1).unwrap()));
        assert!(!Suite::Main.hypothesis_met(&FieldSpec::rational_delta(0)));
    }

    #[test]
    fn duality_suite_char_zero_rank_two() {
        let cfg = SuiteConfig {
            r: 2,
            field: FieldSpec::rational_delta(1),
            placement: None,
            seed: 0,
            allow_out_of_hypothesis: false,
        };
        let reports = run_suite(Suite::Duality, &cfg).unwrap();
        assert!(crate::report::all_pass(&reports));
    }
}
