//! The hyperoctahedral group W_r of signed permutations: arithmetic,
//! generators, the sign character, enumeration and Young subgroups.
//!
//! Elements are stored in one-line signed image form: `images[i-1]` is the
//! image of `i`, a nonzero signed value whose absolute values form a
//! permutation of `1..=r`. Composition reads left to right (`a` then `b`),
//! matching the top-to-bottom flow of the diagram calculus.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid signed permutation `{text}`: {msg}")]
    Parse { text: String, msg: String },
    #[error("invalid bi-composition: {0}")]
    BadComposition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<i64>,
}

/// Which tableau component's rows admit sign changes; see the convention
/// oracle in the W-representations module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SignPlacement {
    First,
    Second,
}

impl SignedPerm {
    pub fn identity(r: usize) -> SignedPerm {
        SignedPerm {
            images: (1..=r as i64).collect(),
        }
    }

    pub fn from_images(images: Vec<i64>) -> Result<SignedPerm, PermError> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a == 0 || a > r || seen[a - 1] {
                return Err(PermError::Parse {
                    text: format!("{images:?}"),
                    msg: "images must be nonzero with distinct absolute values 1..r".into(),
                });
            }
            seen[a - 1] = true;
        }
        Ok(SignedPerm { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Image of a signed letter, extending by sigma(-i) = -sigma(i).
    pub fn apply(&self, v: i64) -> i64 {
        let a = v.unsigned_abs() as usize;
        let img = self.images[a - 1];
        if v > 0 {
            img
        } else {
            -img
        }
    }

    /// `a` then `b`: (a·b)(x) = b(a(x)).
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm, PermError> {
        if self.rank() != other.rank() {
            return Err(PermError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(SignedPerm {
            images: (1..=self.rank() as i64)
                .map(|i| other.apply(self.apply(i)))
                .collect(),
        })
    }

    pub fn inverse(&self) -> SignedPerm {
        let r = self.rank();
        let mut images = vec![0i64; r];
        for i in 1..=r as i64 {
            let v = self.apply(i);
            let a = v.unsigned_abs() as usize;
            images[a - 1] = if v > 0 { i } else { -i };
        }
        SignedPerm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i64 + 1)
    }

    /// Number of sign flips: letters with negative image.
    pub fn flips(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    /// Sign of the underlying unsigned permutation times (-1)^flips.
    /// Multiplicative, and -1 on every Coxeter generator.
    pub fn sgn(&self) -> i64 {
        let r = self.rank();
        let mut perm: Vec<usize> = self
            .images
            .iter()
            .map(|v| v.unsigned_abs() as usize - 1)
            .collect();
        let mut sign = 1i64;
        // count transpositions by cycle decomposition
        let mut seen = vec![false; r];
        for i in 0..r {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        perm.clear();
        if self.flips() % 2 == 1 {
            sign = -sign;
        }
        sign
    }

    /// Coxeter generator: `s(0)` flips the sign of letter 1; `s(i)` for
    /// `i >= 1` swaps letters i and i+1.
    pub fn gen(r: usize, i: usize) -> SignedPerm {
        assert!(i < r, "generator index out of range");
        let mut images: Vec<i64> = (1..=r as i64).collect();
        if i == 0 {
            images[0] = -1;
        } else {
            images.swap(i - 1, i);
        }
        SignedPerm { images }
    }

    /// Sign flip of a single letter (1-based).
    pub fn flip(r: usize, letter: usize) -> SignedPerm {
        let mut images: Vec<i64> = (1..=r as i64).collect();
        images[letter - 1] = -(letter as i64);
        SignedPerm { images }
    }

    /// Embed an element of W_k into W_r acting on letters `offset+1 ..= offset+k`.
    pub fn embed(&self, offset: usize, r: usize) -> SignedPerm {
        assert!(offset + self.rank() <= r);
        let mut images: Vec<i64> = (1..=r as i64).collect();
        for i in 1..=self.rank() as i64 {
            let v = self.apply(i);
            let tgt = if v > 0 {
                v + offset as i64
            } else {
                v - offset as i64
            };
            images[offset + i as usize - 1] = tgt;
        }
        SignedPerm { images }
    }

    pub fn images(&self) -> &[i64] {
        &self.images
    }

    /// Text form `[-2,1]`: 1 -> -2, 2 -> 1.
    pub fn parse(text: &str) -> Result<SignedPerm, PermError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| PermError::Parse {
                text: text.into(),
                msg: "expected [..]".into(),
            })?;
        if inner.trim().is_empty() {
            return Ok(SignedPerm::identity(0));
        }
        let images = inner
            .split(',')
            .map(|s| {
                s.trim().parse::<i64>().map_err(|_| PermError::Parse {
                    text: text.into(),
                    msg: format!("bad image `{s}`"),
                })
            })
            .collect::<Result<Vec<i64>, _>>()?;
        SignedPerm::from_images(images)
    }
}

impl std::fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All 2^r·r! elements, in a fixed deterministic order.
pub fn enumerate_group(r: usize) -> Vec<SignedPerm> {
    let mut perms: Vec<Vec<i64>> = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    let mut used = vec![false; r];
    fn rec(r: usize, cur: &mut Vec<i64>, used: &mut Vec<bool>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in 1..=r as i64 {
            if used[v as usize - 1] {
                continue;
            }
            used[v as usize - 1] = true;
            for s in [1i64, -1] {
                cur.push(s * v);
                rec(r, cur, used, out);
                cur.pop();
            }
            used[v as usize - 1] = false;
        }
    }
    rec(r, &mut cur, &mut used, &mut perms);
    let mut out: Vec<SignedPerm> = perms
        .into_iter()
        .map(|images| SignedPerm { images })
        .collect();
    out.sort();
    out
}

/// A bi-composition: two sequences of nonnegative parts.
pub type BiComposition = (Vec<usize>, Vec<usize>);

/// The Young subgroup of W_r for a bi-composition of r. Letters are assigned
/// to blocks left to right: first-component rows, then second-component
/// rows. Blocks of the sign-carrying component (chosen by `placement`)
/// contribute hyperoctahedral factors; the others contribute symmetric
/// groups.
pub fn young_subgroup(
    shape: &BiComposition,
    r: usize,
    placement: SignPlacement,
) -> Result<Vec<SignedPerm>, PermError> {
    let total: usize = shape.0.iter().sum::<usize>() + shape.1.iter().sum::<usize>();
    if total != r {
        return Err(PermError::BadComposition(format!(
            "parts sum to {total}, expected {r}"
        )));
    }
    // block index and sign-allowance per letter
    let mut block = vec![0usize; r];
    let mut signed_block = vec![false; r];
    let mut next = 0usize;
    let mut b = 0usize;
    for (comp_idx, comp) in [&shape.0, &shape.1].into_iter().enumerate() {
        let carries = match placement {
            SignPlacement::First => comp_idx == 0,
            SignPlacement::Second => comp_idx == 1,
        };
        for &part in comp {
            for _ in 0..part {
                block[next] = b;
                signed_block[next] = carries;
                next += 1;
            }
            b += 1;
        }
    }
    let members = enumerate_group(r)
        .into_iter()
        .filter(|w| {
            (1..=r).all(|i| {
                let v = w.apply(i as i64);
                let a = v.unsigned_abs() as usize;
                block[a - 1] == block[i - 1] && (signed_block[i - 1] || v > 0)
            })
        })
        .collect();
    Ok(members)
}
