//! Littlewood-Richardson coefficients by direct enumeration of lattice-word
//! skew fillings. Desk scale only: total size of the outer shape stays small.

use crate::bipartition::Partition;

/// Number of LR skew tableaux of shape `gamma/alpha` and content `beta`:
/// semistandard fillings whose reverse reading word is a lattice word.
/// Returns 0 on any size or containment mismatch.
pub fn lr_coefficient(alpha: &Partition, beta: &Partition, gamma: &Partition) -> usize {
    let size_a: usize = alpha.iter().sum();
    let size_b: usize = beta.iter().sum();
    let size_g: usize = gamma.iter().sum();
    if size_a + size_b != size_g {
        return 0;
    }
    // alpha must fit inside gamma
    if alpha.len() > gamma.len() || alpha.iter().zip(gamma.iter()).any(|(a, g)| a > g) {
        return 0;
    }
    if size_b == 0 {
        return if alpha == gamma { 1 } else { 0 };
    }
    let rows = gamma.len();
    let inner: Vec<usize> = (0..rows)
        .map(|i| alpha.get(i).copied().unwrap_or(0))
        .collect();
    // cells in row-reading order, right to left within each row from the top:
    // filling in this order makes the lattice condition checkable prefix-wise.
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..rows {
        for j in (inner[i]..gamma[i]).rev() {
            cells.push((i, j));
        }
    }
    let mut filling = vec![vec![0usize; 0]; rows];
    for i in 0..rows {
        filling[i] = vec![0; gamma[i]];
    }
    let mut counts = vec![0usize; beta.len()];
    let mut found = 0usize;

    fn rec(
        pos: usize,
        cells: &[(usize, usize)],
        inner: &[usize],
        beta: &[usize],
        filling: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
        found: &mut usize,
    ) {
        if pos == cells.len() {
            *found += 1;
            return;
        }
        let (i, j) = cells[pos];
        for v in 1..=beta.len() {
            if counts[v - 1] == beta[v - 1] {
                continue;
            }
            // lattice word: after placing, every prefix has #v <= #(v-1)
            if v > 1 && counts[v - 1] + 1 > counts[v - 2] {
                continue;
            }
            // semistandard: weakly increasing along rows (left neighbor <= v);
            // we fill right to left, so the constraint is v <= right neighbor
            if j + 1 < filling[i].len() && filling[i][j + 1] != 0 && v > filling[i][j + 1] {
                continue;
            }
            // strictly increasing down columns
            if i > 0 && j < filling[i - 1].len() && j >= inner[i - 1] {
                let above = filling[i - 1][j];
                if above == 0 || v <= above {
                    continue;
                }
            }
            // the cell above within the inner shape counts as filled with 0
            filling[i][j] = v;
            counts[v - 1] += 1;
            rec(pos + 1, cells, inner, beta, filling, counts, found);
            counts[v - 1] -= 1;
            filling[i][j] = 0;
        }
    }

    rec(
        0,
        &cells,
        &inner,
        beta,
        &mut filling,
        &mut counts,
        &mut found,
    );
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartition::enumerate_partitions;
    use crate::scalar::Rng;

    #[test]
    fn pieri_and_small_cases() {
        assert_eq!(lr_coefficient(&vec![2], &vec![1], &vec![3]), 1);
        assert_eq!(lr_coefficient(&vec![2], &vec![1], &vec![2, 1]), 1);
        assert_eq!(lr_coefficient(&vec![2], &vec![1], &vec![1, 1, 1]), 0);
        assert_eq!(lr_coefficient(&vec![], &vec![2, 1], &vec![2, 1]), 1);
        assert_eq!(
            lr_coefficient(&vec![1], &vec![1], &vec![3]),
            0,
            "size mismatch"
        );
        assert_eq!(lr_coefficient(&vec![2, 2], &vec![], &vec![2, 2]), 1);
    }

    #[test]
    fn pieri_rule_row() {
        // multiplying by a single row: gamma/alpha must be a horizontal strip
        assert_eq!(lr_coefficient(&vec![2, 1], &vec![2], &vec![4, 1]), 1);
        assert_eq!(lr_coefficient(&vec![2, 1], &vec![2], &vec![3, 2]), 1);
        assert_eq!(lr_coefficient(&vec![2, 1], &vec![2], &vec![2, 1, 1, 1]), 0);
    }

    #[test]
    fn symmetric_in_alpha_beta() {
        let mut rng = Rng::new(11);
        for total in 2..=6usize {
            for ga in enumerate_partitions(total) {
                for a in 0..=total {
                    let alphas = enumerate_partitions(a);
                    let betas = enumerate_partitions(total - a);
                    for _ in 0..3 {
                        let alpha = &alphas[rng.below(alphas.len() as u64) as usize];
                        let beta = &betas[rng.below(betas.len() as u64) as usize];
                        assert_eq!(
                            lr_coefficient(alpha, beta, &ga),
                            lr_coefficient(beta, alpha, &ga),
                            "alpha={alpha:?} beta={beta:?} gamma={ga:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kostka_row_contents_sum() {
        // sum over gamma of c^gamma_{(1),(1)...} type checks: (1)*(1) = (2) + (1,1)
        assert_eq!(lr_coefficient(&vec![1], &vec![1], &vec![2]), 1);
        assert_eq!(lr_coefficient(&vec![1], &vec![1], &vec![1, 1]), 1);
    }
}
