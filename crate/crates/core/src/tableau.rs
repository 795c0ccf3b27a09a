//! Bi-tableaux and bi-tabloids for the hyperoctahedral group.
//!
//! A bi-tableau of shape (lam1, lam2) fills the boxes of both Young diagrams
//! with signed entries whose absolute values are exactly 1..r. The row group
//! permutes entries within rows and may flip signs in one distinguished
//! component — which one is governed by [`SignPlacement`] — and a bi-tabloid
//! is a row-equivalence class, stored here by a canonical representative:
//! rows sorted by absolute value, signs forced positive in the sign-carrying
//! component and kept in the other.

use crate::bipartition::BiPartition;
use crate::signed_perm::{enumerate_group, SignPlacement, SignedPerm};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiTableau {
    pub shape: BiPartition,
    pub fill: [Vec<Vec<i64>>; 2],
}

impl BiTableau {
    pub fn new(shape: BiPartition, fill: [Vec<Vec<i64>>; 2]) -> BiTableau {
        let r = shape.size();
        let mut seen = vec![false; r];
        for (c, comp) in fill.iter().enumerate() {
            let rows = shape.component(c);
            assert_eq!(comp.len(), rows.len(), "row count mismatch");
            for (i, row) in comp.iter().enumerate() {
                assert_eq!(row.len(), rows[i], "row length mismatch");
                for &e in row {
                    let a = e.unsigned_abs() as usize;
                    assert!(
                        e != 0 && a <= r && !seen[a - 1],
                        "entries must have distinct absolute values 1..r"
                    );
                    seen[a - 1] = true;
                }
            }
        }
        BiTableau { shape, fill }
    }

    /// Row-reading filling with 1..r in order, first component first.
    pub fn initial(shape: &BiPartition) -> BiTableau {
        let mut next = 1i64;
        let mut fill = [Vec::new(), Vec::new()];
        for c in 0..2 {
            for &len in shape.component(c) {
                let row: Vec<i64> = (0..len).map(|k| next + k as i64).collect();
                next += len as i64;
                fill[c].push(row);
            }
        }
        BiTableau {
            shape: shape.clone(),
            fill,
        }
    }

    pub fn rank(&self) -> usize {
        self.shape.size()
    }

    /// Right action: apply the signed permutation to every entry.
    pub fn act(&self, w: &SignedPerm) -> BiTableau {
        let fill = [
            self.fill[0]
                .iter()
                .map(|row| row.iter().map(|&e| w.apply(e)).collect())
                .collect(),
            self.fill[1]
                .iter()
                .map(|row| row.iter().map(|&e| w.apply(e)).collect())
                .collect(),
        ];
        BiTableau {
            shape: self.shape.clone(),
            fill,
        }
    }

    /// Swap components and transpose each.
    pub fn conjugate(&self) -> BiTableau {
        let transpose = |rows: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            let cols = rows.first().map_or(0, |r| r.len());
            (0..cols)
                .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
                .collect()
        };
        BiTableau {
            shape: self.shape.conjugate(),
            fill: [transpose(&self.fill[1]), transpose(&self.fill[0])],
        }
    }

    pub fn tabloid(&self, placement: SignPlacement) -> BiTabloid {
        BiTabloid::from_tableau(self, placement)
    }
}

/// Canonical representative of a row-equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiTabloid {
    pub shape: BiPartition,
    pub rows: [Vec<Vec<i64>>; 2],
}

fn carrying_component(placement: SignPlacement) -> usize {
    match placement {
        SignPlacement::First => 0,
        SignPlacement::Second => 1,
    }
}

impl BiTabloid {
    pub fn from_tableau(t: &BiTableau, placement: SignPlacement) -> BiTabloid {
        let carry = carrying_component(placement);
        let mut rows = t.fill.clone();
        for (c, comp) in rows.iter_mut().enumerate() {
            for row in comp.iter_mut() {
                if c == carry {
                    for e in row.iter_mut() {
                        *e = e.abs();
                    }
                }
                row.sort_by_key(|e| e.abs());
            }
        }
        BiTabloid {
            shape: t.shape.clone(),
            rows,
        }
    }

    /// Right action by a signed permutation: act entrywise and recanonicalize.
    pub fn act(&self, w: &SignedPerm, placement: SignPlacement) -> BiTabloid {
        let carry = carrying_component(placement);
        let mut rows = self.rows.clone();
        for (c, comp) in rows.iter_mut().enumerate() {
            for row in comp.iter_mut() {
                for e in row.iter_mut() {
                    *e = w.apply(*e);
                    if c == carry {
                        *e = e.abs();
                    }
                }
                row.sort_by_key(|e| e.abs());
            }
        }
        BiTabloid {
            shape: self.shape.clone(),
            rows,
        }
    }

    /// Canonical form is a fixed point of canonicalization.
    pub fn is_canonical(&self, placement: SignPlacement) -> bool {
        let carry = carrying_component(placement);
        self.rows.iter().enumerate().all(|(c, comp)| {
            comp.iter().all(|row| {
                row.windows(2).all(|w| w[0].abs() < w[1].abs())
                    && (c != carry || row.iter().all(|&e| e > 0))
            })
        })
    }
}

/// All canonical tabloids of the given shape: ordered set partitions of the
/// absolute values into rows, with free signs on the non-carrying component.
pub fn enumerate_tabloids(shape: &BiPartition, placement: SignPlacement) -> Vec<BiTabloid> {
    let r = shape.size();
    let carry = carrying_component(placement);
    // row slots: (component, size)
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for c in 0..2 {
        for &len in shape.component(c) {
            slots.push((c, len));
        }
    }
    let mut out = Vec::new();
    let mut assignment: Vec<Vec<i64>> = vec![Vec::new(); slots.len()];

    fn rec(
        v: usize,
        r: usize,
        slots: &[(usize, usize)],
        carry: usize,
        assignment: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if v > r {
            out.push(assignment.clone());
            return;
        }
        for s in 0..slots.len() {
            if assignment[s].len() == slots[s].1 {
                continue;
            }
            let signs: &[i64] = if slots[s].0 == carry { &[1] } else { &[1, -1] };
            for &sg in signs {
                assignment[s].push(sg * v as i64);
                rec(v + 1, r, slots, carry, assignment, out);
                assignment[s].pop();
            }
        }
    }

    let mut raw = Vec::new();
    rec(1, r, &slots, carry, &mut assignment, &mut raw);
    for rows_flat in raw {
        let mut rows = [Vec::new(), Vec::new()];
        for (s, row) in rows_flat.into_iter().enumerate() {
            rows[slots[s].0].push(row);
        }
        out.push(BiTabloid {
            shape: shape.clone(),
            rows,
        });
    }
    out.sort();
    out.dedup();
    out
}

/// The group of row permutations of `t`: elements permuting each row's
/// entries, with sign changes allowed only in the carrying component.
pub fn row_group(t: &BiTableau, placement: SignPlacement) -> Vec<SignedPerm> {
    let carry = carrying_component(placement);
    enumerate_group(t.rank())
        .into_iter()
        .filter(|w| {
            t.fill.iter().enumerate().all(|(c, comp)| {
                comp.iter().all(|row| {
                    let abs_set: std::collections::BTreeSet<i64> =
                        row.iter().map(|e| e.abs()).collect();
                    let exact_set: std::collections::BTreeSet<i64> = row.iter().copied().collect();
                    row.iter().all(|&e| {
                        let img = w.apply(e);
                        if c == carry {
                            abs_set.contains(&img.abs())
                        } else {
                            exact_set.contains(&img)
                        }
                    })
                })
            })
        })
        .collect()
}

/// The group of column permutations of `t`: permutes within columns, sign
/// changes allowed in the component opposite the row-carrying one. Equals the
/// row group of the conjugate tableau.
pub fn column_group(t: &BiTableau, placement: SignPlacement) -> Vec<SignedPerm> {
    row_group(&t.conjugate(), placement)
}
