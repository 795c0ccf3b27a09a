//! Symmetric Brauer diagrams of type C.
//!
//! A diagram of rank r is a perfect matching on two rows of 2r vertices
//! labelled `-r..-1, 1..r`, invariant under simultaneous negation of all
//! labels (the mirror through the vertical axis). Multiplication stacks one
//! diagram over another, traces strands, and multiplies by the loop
//! parameter delta once per closed component. The algebra decomposes layer
//! by layer: a diagram with l mirrored arcs per row factors through a pair
//! of dangles and a signed permutation on the 2(r-l) through strands.

use crate::scalar::{FieldSpec, Scalar};
use crate::signed_perm::SignedPerm;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("diagram parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("matching is not symmetric under the vertical mirror")]
    Asymmetric,
    #[error("not a perfect matching: {0}")]
    NotPerfect(String),
    #[error("layer idempotent undefined: delta = 0 with {l} arcs")]
    DeltaZero { l: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Top,
    Bottom,
}

/// A vertex: row plus signed position label (never zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub row: Row,
    pub pos: i64,
}

impl Vertex {
    pub fn top(pos: i64) -> Vertex {
        Vertex { row: Row::Top, pos }
    }

    pub fn bottom(pos: i64) -> Vertex {
        Vertex {
            row: Row::Bottom,
            pos,
        }
    }

    fn mirrored(self) -> Vertex {
        Vertex {
            row: self.row,
            pos: -self.pos,
        }
    }

    fn flipped(self) -> Vertex {
        Vertex {
            row: if self.row == Row::Top {
                Row::Bottom
            } else {
                Row::Top
            },
            pos: self.pos,
        }
    }
}

/// Canonical edge: endpoints sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    fn mirrored(self) -> Edge {
        Edge::new(self.0.mirrored(), self.1.mirrored())
    }

    fn is_horizontal(&self) -> bool {
        self.0.row == self.1.row
    }
}

/// A Brauer diagram of type C in canonical form: edges sorted, matching
/// perfect and mirror-symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CDiagram {
    rank: usize,
    edges: Vec<Edge>,
}

fn positions(r: usize) -> impl Iterator<Item = i64> {
    (-(r as i64)..=r as i64).filter(|&p| p != 0)
}

impl CDiagram {
    pub fn from_edges(rank: usize, mut edges: Vec<Edge>) -> Result<CDiagram, DiagramError> {
        edges = edges.into_iter().map(|e| Edge::new(e.0, e.1)).collect();
        edges.sort();
        edges.dedup();
        let mut seen = BTreeSet::new();
        for e in &edges {
            for v in [e.0, e.1] {
                if v.pos == 0 || v.pos.unsigned_abs() as usize > rank {
                    return Err(DiagramError::NotPerfect(format!(
                        "vertex {v:?} out of range"
                    )));
                }
                if !seen.insert(v) {
                    return Err(DiagramError::NotPerfect(format!("vertex {v:?} repeated")));
                }
            }
        }
        if seen.len() != 4 * rank {
            return Err(DiagramError::NotPerfect(format!(
                "{} vertices matched, expected {}",
                seen.len(),
                4 * rank
            )));
        }
        let set: BTreeSet<Edge> = edges.iter().copied().collect();
        if !edges.iter().all(|e| set.contains(&e.mirrored())) {
            return Err(DiagramError::Asymmetric);
        }
        Ok(CDiagram { rank, edges })
    }

    pub fn identity(rank: usize) -> CDiagram {
        let edges = positions(rank)
            .map(|p| Edge::new(Vertex::top(p), Vertex::bottom(p)))
            .collect();
        CDiagram { rank, edges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Partner of a vertex in the matching.
    pub fn partner(&self, v: Vertex) -> Vertex {
        for e in &self.edges {
            if e.0 == v {
                return e.1;
            }
            if e.1 == v {
                return e.0;
            }
        }
        panic!("vertex not in diagram")
    }

    pub fn top_arcs(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.is_horizontal() && e.0.row == Row::Top)
            .count()
    }

    pub fn bottom_arcs(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.is_horizontal() && e.0.row == Row::Bottom)
            .count()
    }

    /// Reflect across the horizontal axis: swap top and bottom.
    pub fn involution(&self) -> CDiagram {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.0.flipped(), e.1.flipped()))
            .collect();
        CDiagram::from_edges(self.rank, edges).expect("involution preserves validity")
    }

    /// The vertical-strand diagram of a signed permutation: top x joins
    /// bottom sigma(x).
    pub fn from_signed_perm(w: &SignedPerm) -> CDiagram {
        let r = w.rank();
        let edges = positions(r)
            .map(|p| Edge::new(Vertex::top(p), Vertex::bottom(w.apply(p))))
            .collect();
        CDiagram {
            rank: r,
            edges: sorted(edges),
        }
    }

    /// Generator s_i: crossing of strands i, i+1 and the mirror; s_0 crosses
    /// the axis.
    pub fn gen_s(rank: usize, i: usize) -> CDiagram {
        CDiagram::from_signed_perm(&SignedPerm::gen(rank, i))
    }

    /// Generator e_i: horizontal arcs {i, i+1} and mirror on both rows; e_0
    /// has the single axis arc {-1, 1} on both rows.
    pub fn gen_e(rank: usize, i: usize) -> CDiagram {
        assert!(i < rank);
        let mut edges = Vec::new();
        let arc_pairs: Vec<(i64, i64)> = if i == 0 {
            vec![(-1, 1)]
        } else {
            vec![(i as i64, i as i64 + 1), (-(i as i64 + 1), -(i as i64))]
        };
        let covered: BTreeSet<i64> = arc_pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        for &(a, b) in &arc_pairs {
            edges.push(Edge::new(Vertex::top(a), Vertex::top(b)));
            edges.push(Edge::new(Vertex::bottom(a), Vertex::bottom(b)));
        }
        for p in positions(rank) {
            if !covered.contains(&p) {
                edges.push(Edge::new(Vertex::top(p), Vertex::bottom(p)));
            }
        }
        CDiagram {
            rank,
            edges: sorted(edges),
        }
    }

    /// Text form `[t-1:t1,b-1:b1]`.
    pub fn parse(text: &str, rank: usize) -> Result<CDiagram, DiagramError> {
        let t = text.trim();
        let base = text.len() - text.trim_start().len();
        if !t.starts_with('[') || !t.ends_with(']') {
            return Err(DiagramError::Parse {
                col: base,
                msg: "expected [..]".into(),
            });
        }
        let inner = &t[1..t.len() - 1];
        let mut edges = Vec::new();
        let mut offset = base + 1;
        for part in inner.split(',') {
            let piece = part.trim();
            if piece.is_empty() {
                offset += part.len() + 1;
                continue;
            }
            let col = offset + (part.len() - part.trim_start().len());
            let colon = piece.find(':').ok_or(DiagramError::Parse {
                col,
                msg: format!("edge `{piece}` missing `:`"),
            })?;
            let a = parse_vertex(&piece[..colon], col)?;
            let b = parse_vertex(&piece[colon + 1..], col + colon + 1)?;
            edges.push(Edge::new(a, b));
            offset += part.len() + 1;
        }
        CDiagram::from_edges(rank, edges)
    }
}

fn parse_vertex(text: &str, col: usize) -> Result<Vertex, DiagramError> {
    let t = text.trim();
    let row = match t.chars().next() {
        Some('t') => Row::Top,
        Some('b') => Row::Bottom,
        _ => {
            return Err(DiagramError::Parse {
                col,
                msg: format!("vertex `{t}` must start with t or b"),
            })
        }
    };
    let pos: i64 = t[1..].parse().map_err(|_| DiagramError::Parse {
        col: col + 1,
        msg: format!("bad position in `{t}`"),
    })?;
    if pos == 0 {
        return Err(DiagramError::Parse {
            col: col + 1,
            msg: "position 0 is not a vertex".into(),
        });
    }
    Ok(Vertex { row, pos })
}

impl std::fmt::Display for CDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_v = |v: &Vertex| format!("{}{}", if v.row == Row::Top { "t" } else { "b" }, v.pos);
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}:{}", fmt_v(&e.0), fmt_v(&e.1)))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn sorted(mut edges: Vec<Edge>) -> Vec<Edge> {
    edges.sort();
    edges
}

/// Stack `a` over `b`, trace strands, count closed loops. The scalar
/// contribution is delta^loops.
pub fn multiply(a: &CDiagram, b: &CDiagram) -> Result<(usize, CDiagram), DiagramError> {
    if a.rank != b.rank {
        return Err(DiagramError::RankMismatch(a.rank, b.rank));
    }
    let r = a.rank;
    // Three levels: final top = a's top, interface = a's bottom glued to b's
    // top, final bottom = b's bottom. Paths from an outer vertex cross the
    // interface until they exit; interface positions they touch cannot lie on
    // a closed loop.
    let mut edges = Vec::new();
    let mut visited_outer: BTreeSet<Vertex> = BTreeSet::new();
    let mut interface_used: BTreeSet<i64> = BTreeSet::new();

    let outer: Vec<(bool, Vertex)> = positions(r)
        .map(|p| (true, Vertex::top(p)))
        .chain(positions(r).map(|p| (false, Vertex::bottom(p))))
        .collect();

    for &(start_in_a, start) in &outer {
        if visited_outer.contains(&start) {
            continue;
        }
        let mut in_a = start_in_a;
        let mut v = start;
        let end;
        loop {
            let w = if in_a { a.partner(v) } else { b.partner(v) };
            match (in_a, w.row) {
                (true, Row::Top) => {
                    end = w;
                    break;
                }
                (false, Row::Bottom) => {
                    end = w;
                    break;
                }
                (true, Row::Bottom) => {
                    // crossed into the interface; continue in b from its top
                    interface_used.insert(w.pos);
                    in_a = false;
                    v = Vertex::top(w.pos);
                }
                (false, Row::Top) => {
                    interface_used.insert(w.pos);
                    in_a = true;
                    v = Vertex::bottom(w.pos);
                }
            }
        }
        visited_outer.insert(start);
        visited_outer.insert(end);
        edges.push(Edge::new(start, end));
    }

    // Remaining interface positions form closed alternating cycles: each
    // position carries one a-bottom arc and one b-top arc. One cycle = one
    // deleted component = one factor of delta.
    let mut loops = 0;
    let mut seen: BTreeSet<i64> = BTreeSet::new();
    for p0 in positions(r) {
        if interface_used.contains(&p0) || seen.contains(&p0) {
            continue;
        }
        let mut cur = p0;
        let mut in_a = true;
        loop {
            seen.insert(cur);
            let w = if in_a {
                a.partner(Vertex::bottom(cur))
            } else {
                b.partner(Vertex::top(cur))
            };
            debug_assert_eq!(w.row, if in_a { Row::Bottom } else { Row::Top });
            seen.insert(w.pos);
            cur = w.pos;
            in_a = !in_a;
            if cur == p0 && in_a {
                break;
            }
        }
        loops += 1;
    }

    let result = CDiagram::from_edges(r, edges)?;
    Ok((loops, result))
}

/// A symmetric partial matching with `l` edges on one row of 2r vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dangle {
    rank: usize,
    edges: Vec<(i64, i64)>,
}

impl Dangle {
    pub fn new(rank: usize, mut edges: Vec<(i64, i64)>) -> Result<Dangle, DiagramError> {
        edges = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        edges.sort();
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            for v in [a, b] {
                if v == 0 || v.unsigned_abs() as usize > rank || !seen.insert(v) {
                    return Err(DiagramError::NotPerfect(format!("dangle vertex {v}")));
                }
            }
        }
        let set: BTreeSet<(i64, i64)> = edges.iter().copied().collect();
        for &(a, b) in &edges {
            let m = if -b <= -a { (-b, -a) } else { (-a, -b) };
            if !set.contains(&m) {
                return Err(DiagramError::Asymmetric);
            }
        }
        Ok(Dangle { rank, edges })
    }

    pub fn empty(rank: usize) -> Dangle {
        Dangle {
            rank,
            edges: vec![],
        }
    }

    /// Nested axis arcs {-i, i} for i = 1..=l: the dangle of the layer
    /// idempotent.
    pub fn nested(rank: usize, l: usize) -> Dangle {
        assert!(l <= rank);
        Dangle::new(rank, (1..=l as i64).map(|i| (-i, i)).collect()).expect("nested arcs")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arc_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    /// Positions not covered by an arc, ascending.
    pub fn free_positions(&self) -> Vec<i64> {
        let covered: BTreeSet<i64> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        positions(self.rank)
            .filter(|p| !covered.contains(p))
            .collect()
    }
}

/// All symmetric dangles with exactly l edges.
pub fn enumerate_dangles(r: usize, l: usize) -> Vec<Dangle> {
    assert!(l <= r);
    let mut out = Vec::new();
    // recursive: repeatedly match the smallest free positive letter or leave
    // it free, adding mirrors as we go
    fn rec(
        r: usize,
        l: usize,
        free: &mut BTreeSet<i64>,
        edges: &mut Vec<(i64, i64)>,
        out: &mut Vec<Dangle>,
    ) {
        if edges.len() == l {
            out.push(Dangle::new(r, edges.clone()).expect("constructed symmetric"));
            return;
        }
        if edges.len() > l {
            return;
        }
        let Some(&v) = free.iter().next_back() else {
            return;
        };
        // v is the largest free letter (positive side processed first)
        if v <= 0 {
            return;
        }
        // option 1: leave v (and -v) unmatched
        free.remove(&v);
        free.remove(&-v);
        rec(r, l, free, edges, out);
        free.insert(v);
        free.insert(-v);
        // option 2: axis arc {-v, v}
        free.remove(&v);
        free.remove(&-v);
        edges.push((-v, v));
        rec(r, l, free, edges, out);
        edges.pop();
        free.insert(v);
        free.insert(-v);
        // option 3: pair v with another free letter w (|w| < v), plus mirror
        let candidates: Vec<i64> = free.iter().copied().filter(|&w| w.abs() < v).collect();
        for w in candidates {
            if !free.contains(&w) || !free.contains(&-w) {
                continue;
            }
            free.remove(&v);
            free.remove(&-v);
            free.remove(&w);
            free.remove(&-w);
            edges.push(if w < v { (w, v) } else { (v, w) });
            edges.push(if -v < -w { (-v, -w) } else { (-w, -v) });
            rec(r, l, free, edges, out);
            edges.pop();
            edges.pop();
            free.insert(v);
            free.insert(-v);
            free.insert(w);
            free.insert(-w);
        }
    }
    let mut free: BTreeSet<i64> = positions(r).collect();
    rec(r, l, &mut free, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// All symmetric diagrams of rank r, the basis of B(C_r, delta).
pub fn enumerate_basis(r: usize) -> Vec<CDiagram> {
    // enumerate by layer: top dangle, bottom dangle with the same arc count,
    // and a signed permutation on the through strands
    let mut out = Vec::new();
    for l in 0..=r {
        let dangles = enumerate_dangles(r, l);
        let group = crate::signed_perm::enumerate_group(r - l);
        for top in &dangles {
            for bottom in &dangles {
                for w in &group {
                    out.push(recompose(top, bottom, w));
                }
            }
        }
    }
    out.sort();
    out
}

/// Direct enumeration of all mirror-symmetric perfect matchings on the 4r
/// vertices, independent of the layer decomposition. Used as the defining
/// cross-check for the basis count.
pub fn enumerate_basis_direct(r: usize) -> Vec<CDiagram> {
    let mut verts: Vec<Vertex> = Vec::new();
    for p in positions(r) {
        verts.push(Vertex::top(p));
        verts.push(Vertex::bottom(p));
    }
    verts.sort();
    let mut out = Vec::new();
    fn rec(free: &mut BTreeSet<Vertex>, edges: &mut Vec<Edge>, out: &mut Vec<CDiagram>, r: usize) {
        let Some(&v) = free.iter().next() else {
            out.push(CDiagram::from_edges(r, edges.clone()).expect("symmetric matching"));
            return;
        };
        let partners: Vec<Vertex> = free.iter().copied().filter(|&w| w != v).collect();
        for w in partners {
            let e = Edge::new(v, w);
            let m = e.mirrored();
            if m == e {
                // self-mirrored: axis arc or vertical strand through the axis
                free.remove(&v);
                free.remove(&w);
                edges.push(e);
                rec(free, edges, out, r);
                edges.pop();
                free.insert(v);
                free.insert(w);
            } else {
                let (m0, m1) = (m.0, m.1);
                if m0 == v || m0 == w || m1 == v || m1 == w {
                    continue;
                }
                if !(free.contains(&m0) && free.contains(&m1)) {
                    continue;
                }
                for x in [v, w, m0, m1] {
                    free.remove(&x);
                }
                edges.push(e);
                edges.push(m);
                rec(free, edges, out, r);
                edges.pop();
                edges.pop();
                for x in [v, w, m0, m1] {
                    free.insert(x);
                }
            }
        }
    }
    let mut free: BTreeSet<Vertex> = verts.into_iter().collect();
    rec(&mut free, &mut Vec::new(), &mut out, r);
    out.sort();
    out.dedup();
    out
}

/// The unscaled diagram of the layer idempotent: nested axis arcs on both
/// rows, vertical strands beyond them.
pub fn idempotent_diagram(l: usize, r: usize) -> CDiagram {
    recompose(
        &Dangle::nested(r, l),
        &Dangle::nested(r, l),
        &SignedPerm::identity(r - l),
    )
}

/// The scaled idempotent e_l = delta^{-l} * (nested-arc diagram).
/// Fails when delta = 0 and l >= 1.
pub fn idempotent_e_l(
    l: usize,
    r: usize,
    field: &FieldSpec,
) -> Result<(Scalar, CDiagram), DiagramError> {
    assert!(l <= r);
    if l >= 1 && field.delta().is_zero() {
        return Err(DiagramError::DeltaZero { l });
    }
    let coeff = if l == 0 {
        field.one()
    } else {
        field.delta().inv().unwrap().pow(l as i64).unwrap()
    };
    Ok((coeff, idempotent_diagram(l, r)))
}

/// Basis of the two-sided ideal J_l: diagrams with at least l arcs per row.
pub fn ideal_basis(r: usize, l: usize) -> Vec<CDiagram> {
    enumerate_basis(r)
        .into_iter()
        .filter(|d| d.top_arcs() >= l)
        .collect()
}

/// Layer decomposition of a diagram: top dangle, bottom dangle, and the
/// signed permutation induced on the through strands after the
/// order-preserving symmetric relabelling.
pub fn layer_decompose(d: &CDiagram) -> (Dangle, Dangle, SignedPerm, usize) {
    let r = d.rank();
    let mut top_edges = Vec::new();
    let mut bottom_edges = Vec::new();
    for e in d.edges() {
        if e.is_horizontal() {
            if e.0.row == Row::Top {
                top_edges.push((e.0.pos, e.1.pos));
            } else {
                bottom_edges.push((e.0.pos, e.1.pos));
            }
        }
    }
    let l = top_edges.len();
    let top = Dangle::new(r, top_edges).expect("top arcs symmetric");
    let bottom = Dangle::new(r, bottom_edges).expect("bottom arcs symmetric");
    let top_free = top.free_positions();
    let bottom_free = bottom.free_positions();
    // relabel: k-th positive free position <-> letter k of W_{r-l}
    let top_pos: Vec<i64> = top_free.iter().copied().filter(|&p| p > 0).collect();
    let bottom_pos: Vec<i64> = bottom_free.iter().copied().filter(|&p| p > 0).collect();
    let bottom_letter = |p: i64| -> i64 {
        let idx = bottom_pos
            .iter()
            .position(|&q| q == p.abs())
            .expect("free position") as i64
            + 1;
        if p > 0 {
            idx
        } else {
            -idx
        }
    };
    let mut images = vec![0i64; r - l];
    for (k, &p) in top_pos.iter().enumerate() {
        let q = d.partner(Vertex::top(p));
        debug_assert_eq!(q.row, Row::Bottom);
        images[k] = bottom_letter(q.pos);
    }
    let through =
        SignedPerm::from_images(images).expect("through strands form a signed permutation");
    (top, bottom, through, l)
}

/// Rebuild a diagram from its layer data.
pub fn recompose(top: &Dangle, bottom: &Dangle, through: &SignedPerm) -> CDiagram {
    assert_eq!(top.rank(), bottom.rank());
    let r = top.rank();
    assert_eq!(top.arc_count(), bottom.arc_count());
    assert_eq!(through.rank(), r - top.arc_count());
    let mut edges = Vec::new();
    for &(a, b) in top.edges() {
        edges.push(Edge::new(Vertex::top(a), Vertex::top(b)));
    }
    for &(a, b) in bottom.edges() {
        edges.push(Edge::new(Vertex::bottom(a), Vertex::bottom(b)));
    }
    let top_pos: Vec<i64> = top
        .free_positions()
        .into_iter()
        .filter(|&p| p > 0)
        .collect();
    let bottom_pos: Vec<i64> = bottom
        .free_positions()
        .into_iter()
        .filter(|&p| p > 0)
        .collect();
    for (k, &p) in top_pos.iter().enumerate() {
        let img = through.apply(k as i64 + 1);
        let q = bottom_pos[img.unsigned_abs() as usize - 1] * img.signum();
        edges.push(Edge::new(Vertex::top(p), Vertex::bottom(q)));
        edges.push(Edge::new(Vertex::top(-p), Vertex::bottom(-q)));
    }
    CDiagram::from_edges(r, edges).expect("recomposition is a symmetric matching")
}

/// Sparse element of the diagram algebra: scalar combination of canonical
/// diagrams with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub field: FieldSpec,
    pub rank: usize,
    pub terms: BTreeMap<CDiagram, Scalar>,
}

impl AlgebraElement {
    pub fn zero(rank: usize, field: &FieldSpec) -> AlgebraElement {
        AlgebraElement {
            field: field.clone(),
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: CDiagram, field: &FieldSpec) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        let rank = d.rank();
        terms.insert(d, field.one());
        AlgebraElement {
            field: field.clone(),
            rank,
            terms,
        }
    }

    pub fn add_term(&mut self, d: CDiagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.rank, &self.field);
        for (d, a) in &self.terms {
            out.add_term(d.clone(), a.mul(c));
        }
        out
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, DiagramError> {
        let mut out = AlgebraElement::zero(self.rank, &self.field);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let (loops, prod) = multiply(d1, d2)?;
                let coeff = c1
                    .mul(c2)
                    .mul(&self.field.delta().pow(loops as i64).unwrap());
                out.add_term(prod, coeff);
            }
        }
        Ok(out)
    }

    pub fn involution(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.rank, &self.field);
        for (d, c) in &self.terms {
            out.add_term(d.involution(), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                if c.is_one() {
                    format!("{d}")
                } else {
                    format!("{c} · {d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rng;
    use crate::signed_perm::enumerate_group;

    #[test]
    fn basis_counts_match_inflation() {
        // direct symmetric-matching enumeration vs layered construction
        for r in 0..=3 {
            let layered = enumerate_basis(r);
            let direct = enumerate_basis_direct(r);
            assert_eq!(layered, direct, "rank {r}");
        }
        assert_eq!(enumerate_basis(1).len(), 3);
        assert_eq!(enumerate_basis(2).len(), 25);
        assert_eq!(enumerate_basis(3).len(), 331);
    }

    #[test]
    fn dangle_counts() {
        assert_eq!(enumerate_dangles(1, 1).len(), 1);
        assert_eq!(enumerate_dangles(2, 1).len(), 2);
        assert_eq!(enumerate_dangles(2, 2).len(), 3);
        let v3: Vec<usize> = (0..=3).map(|l| enumerate_dangles(3, l).len()).collect();
        assert_eq!(v3, vec![1, 3, 9, 7]);
    }

    #[test]
    fn multiply_examples() {
        let q = FieldSpec::rational_delta(2);
        // s_i squared is the identity with no loops
        for r in 1..=3usize {
            for i in 0..r {
                let s = CDiagram::gen_s(r, i);
                let (loops, prod) = multiply(&s, &s).unwrap();
                assert_eq!(loops, 0);
                assert_eq!(prod, CDiagram::identity(r));
            }
        }
        // the axis arc diagram squares with one loop
        let e = idempotent_diagram(1, 1);
        let (loops, prod) = multiply(&e, &e).unwrap();
        assert_eq!((loops, &prod), (1, &e));
        // the mirrored-pair generator squares with two loops
        let e1 = CDiagram::gen_e(2, 1);
        let (loops, prod) = multiply(&e1, &e1).unwrap();
        assert_eq!((loops, &prod), (2, &e1));
        let _ = q;
    }

    #[test]
    fn involution_properties() {
        assert_eq!(CDiagram::identity(2).involution(), CDiagram::identity(2));
        for w in enumerate_group(3) {
            assert_eq!(
                CDiagram::from_signed_perm(&w).involution(),
                CDiagram::from_signed_perm(&w.inverse())
            );
        }
        for r in 1..=3usize {
            for i in 0..r {
                let e = CDiagram::gen_e(r, i);
                assert_eq!(e.involution(), e, "e generators are reflection-fixed");
            }
        }
    }

    #[test]
    fn involution_antiautomorphism_rank_two() {
        let basis = enumerate_basis(2);
        for a in &basis {
            for b in &basis {
                let (l1, p1) = multiply(a, b).unwrap();
                let (l2, p2) = multiply(&b.involution(), &a.involution()).unwrap();
                assert_eq!(l1, l2);
                assert_eq!(p1.involution(), p2);
            }
        }
    }

    #[test]
    fn perm_diagram_monoid_map() {
        // exhaustive monoid-map check at rank 2
        for a in enumerate_group(2) {
            for b in enumerate_group(2) {
                let (loops, prod) = multiply(
                    &CDiagram::from_signed_perm(&a),
                    &CDiagram::from_signed_perm(&b),
                )
                .unwrap();
                assert_eq!(loops, 0);
                assert_eq!(prod, CDiagram::from_signed_perm(&a.compose(&b).unwrap()));
            }
        }
        // random spot checks at rank 3
        let mut rng = Rng::new(3);
        let group = enumerate_group(3);
        for _ in 0..30 {
            let a = &group[rng.below(group.len() as u64) as usize];
            let b = &group[rng.below(group.len() as u64) as usize];
            let (loops, prod) = multiply(
                &CDiagram::from_signed_perm(a),
                &CDiagram::from_signed_perm(b),
            )
            .unwrap();
            assert_eq!(loops, 0);
            assert_eq!(prod, CDiagram::from_signed_perm(&a.compose(b).unwrap()));
        }
        // injective on rank 2
        let imgs: std::collections::BTreeSet<CDiagram> = enumerate_group(2)
            .iter()
            .map(CDiagram::from_signed_perm)
            .collect();
        assert_eq!(imgs.len(), 8);
    }

    #[test]
    fn idempotents_square() {
        for (field, tag) in [
            (FieldSpec::rational_delta(3), "Q delta=3"),
            (FieldSpec::prime(5, 1).unwrap(), "F5 delta=1"),
        ] {
            for r in 0..=3usize {
                for l in 0..=r {
                    let (c, d) = idempotent_e_l(l, r, &field).unwrap();
                    let e = AlgebraElement::from_diagram(d, &field).scale(&c);
                    let sq = e.mul(&e).unwrap();
                    assert_eq!(sq, e, "e_{l} idempotent at rank {r} over {tag}");
                }
            }
        }
        let zero_delta = FieldSpec::rational_delta(0);
        assert!(matches!(
            idempotent_e_l(1, 2, &zero_delta),
            Err(DiagramError::DeltaZero { l: 1 })
        ));
        assert!(idempotent_e_l(0, 2, &zero_delta).is_ok());
    }

    #[test]
    fn layer_roundtrip() {
        let mut rng = Rng::new(5);
        let basis = enumerate_basis(3);
        for _ in 0..60 {
            let d = &basis[rng.below(basis.len() as u64) as usize];
            let (top, bottom, through, l) = layer_decompose(d);
            assert_eq!(l, d.top_arcs());
            assert_eq!(&recompose(&top, &bottom, &through), d);
        }
        // a group diagram decomposes with empty dangles
        let w = SignedPerm::gen(3, 1);
        let (top, bottom, through, l) = layer_decompose(&CDiagram::from_signed_perm(&w));
        assert_eq!(l, 0);
        assert_eq!(top, Dangle::empty(3));
        assert_eq!(bottom, Dangle::empty(3));
        assert_eq!(through, w);
        // the idempotent diagram decomposes onto nested arcs and identity
        let (top, bottom, through, l) = layer_decompose(&idempotent_diagram(2, 3));
        assert_eq!(l, 2);
        assert_eq!(top, Dangle::nested(3, 2));
        assert_eq!(bottom, Dangle::nested(3, 2));
        assert!(through.is_identity());
    }

    #[test]
    fn ideals_nested_and_two_sided() {
        let full = enumerate_basis(2);
        assert_eq!(ideal_basis(2, 0).len(), full.len());
        assert_eq!(ideal_basis(1, 1).len(), 1);
        assert_eq!(ideal_basis(2, 2).len(), 9);
        // containment chain
        for l in 0..2 {
            let a: BTreeSet<_> = ideal_basis(2, l + 1).into_iter().collect();
            let b: BTreeSet<_> = ideal_basis(2, l).into_iter().collect();
            assert!(a.is_subset(&b));
        }
        // two-sided: arcs never decrease under one-sided multiplication
        for d in ideal_basis(2, 1) {
            for x in &full {
                let (_, left) = multiply(x, &d).unwrap();
                let (_, right) = multiply(&d, x).unwrap();
                assert!(left.top_arcs() >= 1 || left.bottom_arcs() >= 1);
                assert!(left.bottom_arcs() >= d.bottom_arcs());
                assert!(right.top_arcs() >= d.top_arcs());
            }
        }
    }

    #[test]
    fn associativity_random_triples() {
        for field in [
            FieldSpec::rational_delta(3),
            FieldSpec::prime(5, 1).unwrap(),
        ] {
            let mut rng = Rng::new(9);
            let basis = enumerate_basis(2);
            for _ in 0..40 {
                let pick = |rng: &mut Rng| {
                    AlgebraElement::from_diagram(
                        basis[rng.below(basis.len() as u64) as usize].clone(),
                        &field,
                    )
                };
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let d = CDiagram::parse("[t-1:t1, b-1:b1]", 1).unwrap();
        assert_eq!(d, idempotent_diagram(1, 1));
        assert_eq!(CDiagram::parse(&d.to_string(), 1).unwrap(), d);
        // asymmetric matchings are rejected
        let bad = CDiagram::parse("[t-1:b1, t1:b-1, t-2:b-2, t2:b2]", 2);
        assert!(bad.is_ok(), "s_0-like diagram is symmetric");
        let really_bad = CDiagram::parse("[t1:b2, t-1:b-1, t2:b1, t-2:b-2]", 2);
        assert!(
            matches!(really_bad, Err(DiagramError::Asymmetric)),
            "unmirrored strands rejected"
        );
        let incomplete = CDiagram::parse("[t-1:t1]", 1);
        assert!(incomplete.is_err());
    }

    #[test]
    fn sandwich_dimension_counts() {
        // diagrams with exactly l arcs whose top and bottom both carry the
        // nested configuration number 2^{r-l} (r-l)!
        for r in 1..=3usize {
            for l in 0..=r {
                let nested = Dangle::nested(r, l);
                let count = enumerate_basis(r)
                    .into_iter()
                    .filter(|d| {
                        let (top, bottom, _, arcs) = layer_decompose(d);
                        arcs == l && top == nested && bottom == nested
                    })
                    .count();
                let expect = (1usize << (r - l)) * (1..=(r - l)).product::<usize>().max(1);
                assert_eq!(count, expect, "r={r} l={l}");
            }
        }
    }
}
