//! Based algebras: a fixed basis of group elements or diagrams, a generator
//! list, and multiplication of basis elements up to a scalar. Two families
//! live here — group algebras of (products of) hyperoctahedral groups, and
//! the type-C Brauer algebra — behind one interface so the module machinery
//! can stay generic.

use crate::diagram::{enumerate_basis, multiply, CDiagram};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::signed_perm::{enumerate_group, SignedPerm};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis element {0} is not reachable from the generators with an invertible scalar")]
    Unreachable(usize),
    #[error("element does not belong to this algebra")]
    NotInAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElem {
    Perm(SignedPerm),
    Diag(CDiagram),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraKind {
    /// Group algebra of W_r.
    Hyperoctahedral { rank: usize },
    /// Group algebra of W_a x W_b embedded in W_{a+b} on consecutive letters.
    ProductGroup { left: usize, right: usize },
    /// The diagram algebra B(C_r, delta).
    BrauerC { rank: usize },
}

/// Generator word and accumulated scalar for one basis element.
type Word = Option<(Vec<usize>, Scalar)>;

pub struct BasedAlgebra {
    pub field: FieldSpec,
    pub kind: AlgebraKind,
    elems: Vec<BasisElem>,
    index: HashMap<BasisElem, usize>,
    gens: Vec<usize>,
    unit: usize,
    words: OnceLock<Vec<Word>>,
}

impl std::fmt::Debug for BasedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BasedAlgebra({:?}, dim {})", self.kind, self.elems.len())
    }
}

fn build(
    field: &FieldSpec,
    kind: AlgebraKind,
    elems: Vec<BasisElem>,
    gen_elems: Vec<BasisElem>,
) -> Arc<BasedAlgebra> {
    let index: HashMap<BasisElem, usize> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let unit_elem = match &kind {
        AlgebraKind::Hyperoctahedral { rank } => BasisElem::Perm(SignedPerm::identity(*rank)),
        AlgebraKind::ProductGroup { left, right } => {
            BasisElem::Perm(SignedPerm::identity(left + right))
        }
        AlgebraKind::BrauerC { rank } => BasisElem::Diag(CDiagram::identity(*rank)),
    };
    let unit = index[&unit_elem];
    let gens = gen_elems.iter().map(|g| index[g]).collect();
    Arc::new(BasedAlgebra {
        field: field.clone(),
        kind,
        elems,
        index,
        gens,
        unit,
        words: OnceLock::new(),
    })
}

impl BasedAlgebra {
    pub fn hyperoctahedral(rank: usize, field: &FieldSpec) -> Arc<BasedAlgebra> {
        let elems: Vec<BasisElem> = enumerate_group(rank)
            .into_iter()
            .map(BasisElem::Perm)
            .collect();
        let gens: Vec<BasisElem> = (0..rank)
            .map(|i| BasisElem::Perm(SignedPerm::gen(rank, i)))
            .collect();
        build(field, AlgebraKind::Hyperoctahedral { rank }, elems, gens)
    }

    /// W_left x W_right inside W_{left+right}: the left factor acts on
    /// letters 1..=left, the right factor on the rest. Generators list the
    /// left factor's generators first, then the right factor's.
    pub fn product_group(left: usize, right: usize, field: &FieldSpec) -> Arc<BasedAlgebra> {
        let r = left + right;
        let mut elems = Vec::new();
        for u in enumerate_group(left) {
            for v in enumerate_group(right) {
                let e = u.embed(0, r).compose(&v.embed(left, r)).unwrap();
                elems.push(BasisElem::Perm(e));
            }
        }
        elems.sort();
        let mut gens = Vec::new();
        for i in 0..left {
            gens.push(BasisElem::Perm(SignedPerm::gen(left, i).embed(0, r)));
        }
        for i in 0..right {
            gens.push(BasisElem::Perm(SignedPerm::gen(right, i).embed(left, r)));
        }
        build(
            field,
            AlgebraKind::ProductGroup { left, right },
            elems,
            gens,
        )
    }

    pub fn brauer_c(rank: usize, field: &FieldSpec) -> Arc<BasedAlgebra> {
        let elems: Vec<BasisElem> = enumerate_basis(rank)
            .into_iter()
            .map(BasisElem::Diag)
            .collect();
        let mut gens = Vec::new();
        for i in 0..rank {
            gens.push(BasisElem::Diag(CDiagram::gen_s(rank, i)));
        }
        for i in 0..rank {
            gens.push(BasisElem::Diag(CDiagram::gen_e(rank, i)));
        }
        build(field, AlgebraKind::BrauerC { rank }, elems, gens)
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, g: usize) -> usize {
        self.gens[g]
    }

    pub fn elem(&self, i: usize) -> &BasisElem {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &BasisElem) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Same algebra in the mathematical sense: kind and field agree.
    pub fn same_as(&self, other: &BasedAlgebra) -> bool {
        self.kind == other.kind && self.field == other.field
    }

    /// Product of basis elements i·j as (scalar, basis index).
    pub fn mul_basis(&self, i: usize, j: usize) -> (Scalar, usize) {
        match (&self.elems[i], &self.elems[j]) {
            (BasisElem::Perm(a), BasisElem::Perm(b)) => {
                let c = a.compose(b).expect("equal ranks");
                (self.field.one(), self.index[&BasisElem::Perm(c)])
            }
            (BasisElem::Diag(a), BasisElem::Diag(b)) => {
                let (loops, d) = multiply(a, b).expect("equal ranks");
                let scalar = self.field.delta().pow(loops as i64).unwrap();
                (scalar, self.index[&BasisElem::Diag(d)])
            }
            _ => panic!("mixed basis elements"),
        }
    }

    /// The involution on basis elements: inversion for groups, horizontal
    /// reflection for diagrams. Maps basis to basis with scalar one, and
    /// fixes every generator.
    pub fn invol_basis(&self, i: usize) -> usize {
        match &self.elems[i] {
            BasisElem::Perm(a) => self.index[&BasisElem::Perm(a.inverse())],
            BasisElem::Diag(a) => self.index[&BasisElem::Diag(a.involution())],
        }
    }

    /// Matrix of right multiplication by basis element `j` on the algebra.
    pub fn right_mult_matrix(&self, j: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(n, n, &self.field);
        for i in 0..n {
            let (c, k) = self.mul_basis(i, j);
            m.set(i, k, m.get(i, k).add(&c));
        }
        m
    }

    /// Matrix of left multiplication by basis element `j`: row i holds the
    /// coordinates of j·b_i.
    pub fn left_mult_matrix(&self, j: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(n, n, &self.field);
        for i in 0..n {
            let (c, k) = self.mul_basis(j, i);
            m.set(i, k, m.get(i, k).add(&c));
        }
        m
    }

    /// Generator word for each basis element: `basis[i] = scalar^{-1} · word`
    /// where `word` multiplies the listed generators in order. Found by
    /// breadth-first search from the unit; elements only reachable with a
    /// non-invertible scalar (possible when delta = 0) get `None`.
    pub fn word_for(&self, i: usize) -> Result<(Vec<usize>, Scalar), AlgebraError> {
        let words = self.words.get_or_init(|| {
            let mut table: Vec<Word> = vec![None; self.dim()];
            table[self.unit] = Some((vec![], self.field.one()));
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(self.unit);
            while let Some(cur) = queue.pop_front() {
                let (word, scalar) = table[cur].clone().unwrap();
                for g in 0..self.gen_count() {
                    let (c, next) = self.mul_basis(cur, self.gens[g]);
                    let s = scalar.mul(&c);
                    if s.is_zero() || table[next].is_some() {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(g);
                    table[next] = Some((w, s));
                    queue.push_back(next);
                }
            }
            table
        });
        words[i].clone().ok_or(AlgebraError::Unreachable(i))
    }
}

/// A sparse element of a based algebra: map from basis index to coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElem {
    pub terms: BTreeMap<usize, Scalar>,
}

impl AlgElem {
    pub fn zero() -> AlgElem {
        AlgElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(i: usize, field: &FieldSpec) -> AlgElem {
        let mut terms = BTreeMap::new();
        terms.insert(i, field.one());
        AlgElem { terms }
    }

    pub fn scaled_basis(i: usize, c: Scalar) -> AlgElem {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(i, c);
        }
        AlgElem { terms }
    }
}
