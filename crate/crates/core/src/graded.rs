//! Graded spaces, suspension bookkeeping and the Koszul sign engine.
//!
//! Every sign in the crate is computed from suspended degrees: a basis
//! vector `a` of internal degree `|a|` sits in degree `|a| + 1` of `A[1]`,
//! and its dual `a*` in degree `-|a| + 1` of `A*[1]`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{structural, Result};
use crate::scalars::Field;

pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    field: Field,
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(field: Field, basis: Vec<(String, i64)>) -> Result<Arc<GradedSpace>> {
        let mut seen = BTreeSet::new();
        for (n, _) in &basis {
            if n.is_empty() || !seen.insert(n.clone()) {
                return structural(format!("basis names must be unique and nonempty (`{n}`)"));
            }
        }
        if basis.is_empty() {
            return structural("a graded space needs at least one basis vector");
        }
        let (names, degrees) = basis.into_iter().unzip();
        Ok(Arc::new(GradedSpace { field, names, degrees }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn suspended_degree(&self, i: usize) -> i64 {
        self.degrees[i] + 1
    }

    /// Suspended degree of the dual basis vector `e_i*` in `A*[1]`.
    pub fn dual_suspended_degree(&self, i: usize) -> i64 {
        1 - self.degrees[i]
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.suspended_degree(i)).sum()
    }

    /// Basis `e_i*` with `(A*)^{-j} = (A^j)*`.
    pub fn dual(&self) -> Arc<GradedSpace> {
        Arc::new(GradedSpace {
            field: self.field,
            names: self.names.iter().map(|n| format!("{n}*")).collect(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
        })
    }

    pub fn graded_piece(&self, j: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == j).collect()
    }

    /// All words of length `len`, lexicographic in basis indices.
    pub fn words(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Vec::with_capacity(len)];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..self.dim()).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Words of length 1..=max, ordered by length then lexicographically.
    pub fn words_up_to(&self, max: usize) -> Vec<Word> {
        (1..=max).flat_map(|l| self.words(l)).collect()
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&i| self.name(i)).collect();
        parts.join(",")
    }
}

/// (-1)^e as +1 / -1.
pub fn sign_of(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of moving the blocks `moved` (in order) past the blocks `passed`.
pub fn koszul_sign(moved_degrees: &[i64], passed_degrees: &[i64]) -> i64 {
    let m: i64 = moved_degrees.iter().sum();
    let p: i64 = passed_degrees.iter().sum();
    sign_of(m * p)
}

/// Koszul sign of the permutation sending position `j` of the output to
/// input `perm[j]`, for inputs of the given degrees.
pub fn permutation_sign(degrees: &[i64], perm: &[usize]) -> i64 {
    let mut e = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                e += degrees[perm[i]] * degrees[perm[j]];
            }
        }
    }
    sign_of(e)
}

/// A word in `A[1]` with its cached total suspended degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord {
    letters: Word,
    degree: i64,
}

impl TensorWord {
    pub fn new(space: &GradedSpace, letters: Word) -> TensorWord {
        let degree = space.word_degree(&letters);
        TensorWord { letters, degree }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Ordering for basis words: lexicographic in indices, then by length.
pub fn word_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.cmp(b).then(a.len().cmp(&b.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn elementary_signs() {
        assert_eq!(koszul_sign(&[1], &[1]), -1);
        assert_eq!(koszul_sign(&[2], &[3]), 1);
        // (a,b,c) -> (c,a,b), all odd: c jumps over a and b
        assert_eq!(permutation_sign(&[1, 1, 1], &[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[1, 1, 1], &[0, 1, 2]), 1);
    }

    #[test]
    fn suspension_shifts_by_one() {
        let a = GradedSpace::new(Field::Rationals, vec![("x".into(), 0), ("y".into(), -2)]).unwrap();
        assert_eq!(a.suspended_degree(0), 1);
        assert_eq!(a.suspended_degree(1), -1);
        let d = a.dual();
        assert_eq!(d.degree(1), 2);
        assert_eq!(a.dual_suspended_degree(1), d.suspended_degree(1));
        assert_eq!(*d.dual(), GradedSpace { field: a.field, names: vec!["x**".into(), "y**".into()], degrees: a.degrees.clone() });
        assert!(GradedSpace::new(Field::Rationals, vec![("x".into(), 0), ("x".into(), 1)]).is_err());
    }

    fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        // output j of (p after q) takes input q[p[j]]
        p.iter().map(|&j| q[j]).collect()
    }

    fn inverse(p: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; p.len()];
        for (j, &i) in p.iter().enumerate() {
            inv[i] = j;
        }
        inv
    }

    proptest! {
        #[test]
        fn permutation_sign_is_multiplicative(
            degs in proptest::collection::vec(-3i64..4, 1..6),
            seed in any::<u64>(),
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let n = degs.len();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut q: Vec<usize> = (0..n).collect();
            q.shuffle(&mut rng);
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            // apply q first, then p acting on the permuted degrees
            let permuted: Vec<i64> = q.iter().map(|&i| degs[i]).collect();
            let total = compose(&p, &q);
            prop_assert_eq!(
                permutation_sign(&degs, &total),
                permutation_sign(&degs, &q) * permutation_sign(&permuted, &p)
            );
            prop_assert_eq!(permutation_sign(&degs, &q) * permutation_sign(&permuted, &inverse(&q)), 1);
        }
    }
}
