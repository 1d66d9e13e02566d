//! Injections `[m] -> [n]` and their factorization through adjacent
//! transpositions and the standard inclusion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An injection `[source] -> [target]`, stored by its (1-based) images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Injection {
    target: usize,
    images: Vec<usize>,
}

impl Injection {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() > target {
            return Err(Error::Invalid(format!(
                "injection from [{}] cannot land in [{target}]",
                images.len()
            )));
        }
        let mut seen = vec![false; target + 1];
        for &v in &images {
            if v == 0 || v > target {
                return Err(Error::Invalid(format!("image {v} outside [1, {target}]")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Invalid(format!("image {v} repeated")));
            }
        }
        Ok(Injection { target, images })
    }

    pub fn identity(n: usize) -> Self {
        Self::standard(n, n)
    }

    /// The inclusion `[m] ⊂ [n]`, `i ↦ i`.
    pub fn standard(m: usize, n: usize) -> Self {
        assert!(m <= n);
        Injection {
            target: n,
            images: (1..=m).collect(),
        }
    }

    /// The order-preserving injection `[m] -> [m+1]` whose image misses `p`.
    pub fn face(m: usize, p: usize) -> Self {
        assert!((1..=m + 1).contains(&p), "face position {p} outside [1, {}]", m + 1);
        Injection {
            target: m + 1,
            images: (1..=m).map(|i| if i < p { i } else { i + 1 }).collect(),
        }
    }

    /// The order-preserving injection with the given (sorted) image.
    pub fn order_preserving(target: usize, image: &[usize]) -> Self {
        debug_assert!(image.windows(2).all(|w| w[0] < w[1]));
        Injection {
            target,
            images: image.to_vec(),
        }
    }

    /// The adjacent transposition `(i i+1)` of `[n]`.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Injection { target: n, images }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `f(i)` for `i` in `1..=source`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Injection) -> Injection {
        assert_eq!(self.target, g.source(), "composition mismatch");
        Injection {
            target: g.target,
            images: self.images.iter().map(|&i| g.apply(i)).collect(),
        }
    }

    /// Sorted image.
    pub fn image_set(&self) -> Vec<usize> {
        let mut s = self.images.clone();
        s.sort_unstable();
        s
    }

    /// A permutation `σ` of `[target]` with `self = σ ∘ ι`, where `ι` is the
    /// standard inclusion; points outside the image are filled in increasing
    /// order.
    pub fn permutation_part(&self) -> Vec<usize> {
        let mut used = vec![false; self.target + 1];
        for &v in &self.images {
            used[v] = true;
        }
        let mut out = self.images.clone();
        out.extend((1..=self.target).filter(|&v| !used[v]));
        out
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]->[{}]", parts.join(","), self.target)
    }
}

/// Adjacent transpositions whose matrices, multiplied on the right of a row
/// vector in the returned order, realize the permutation with one-line
/// notation `one_line` (1-based values).
///
/// A descent at position `i` means `σ = σ' ∘ t_i` with one inversion fewer,
/// and `t_i` acts first.
pub fn transposition_word(one_line: &[usize]) -> Vec<usize> {
    let mut w = one_line.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            break;
        };
        word.push(i + 1);
        w.swap(i, i + 1);
    }
    word
}

/// A different reduced-or-not word for the same permutation, scanning
/// descents from the right; used to test factorization independence.
pub fn transposition_word_from_right(one_line: &[usize]) -> Vec<usize> {
    let mut w = one_line.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]) else {
            break;
        };
        word.push(i + 1);
        w.swap(i, i + 1);
    }
    word
}

/// All injections `[m] -> [n]` in lexicographic order of their image lists.
pub fn all_injections(m: usize, n: usize) -> Vec<Injection> {
    fn rec(m: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
        if cur.len() == m {
            out.push(Injection {
                target: n,
                images: cur.clone(),
            });
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(m, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if m <= n {
        rec(m, n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    }
    out
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=n).combinations(k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compose_word(n: usize, word: &[usize]) -> Vec<usize> {
        // apply t_{w0} first, then t_{w1}, ...: the permutation t_{wr} ∘ ... ∘ t_{w0}
        let mut perm = Injection::identity(n);
        for &i in word {
            perm = perm.then(&Injection::transposition(n, i));
        }
        perm.images().to_vec()
    }

    #[test]
    fn words_realize_permutations() {
        for f in all_injections(4, 4) {
            let w = f.images();
            assert_eq!(compose_word(4, &transposition_word(w)), w);
            assert_eq!(compose_word(4, &transposition_word_from_right(w)), w);
        }
    }

    #[test]
    fn factorization_through_standard_inclusion() {
        let f = Injection::new(5, vec![4, 2]).unwrap();
        let sigma = Injection::new(5, f.permutation_part()).unwrap();
        assert_eq!(Injection::standard(2, 5).then(&sigma), f);
    }

    #[test]
    fn faces_and_counts() {
        assert_eq!(Injection::face(3, 2).images(), &[1, 3, 4]);
        assert_eq!(all_injections(2, 4).len(), 12);
        assert_eq!(subsets(4, 2).len(), 6);
        assert!(Injection::new(3, vec![1, 1]).is_err());
        assert!(Injection::new(2, vec![3]).is_err());
    }
}
