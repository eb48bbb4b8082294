use std::collections::BTreeMap;

use super::coder::add_into;
use super::Frame;
use crate::error::{structural, Result};
use crate::graded::Word;
use crate::scalars::{RingElement, Scalar};

/// `(k, word)`: the word is `a_1..a_k, m, b_1..b_l, x` with the module
/// slot at index `k` and the evaluation letter last.
pub type FormKey = (usize, Word);

/// A map of bicomodules `T(A[1]) ⊗ A[1] ⊗ T(A[1]) -> T(A[1]) ⊗ A*[1] ⊗ T(A[1])`,
/// stored through its lowest components written as forms
/// `⟨a_1..a_k, m, b_1..b_l, x⟩_{k,l}` with `k + l + 2 <= weight`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComapForms {
    frame: Frame,
    degree: i64,
    table: BTreeMap<FormKey, RingElement>,
}

impl ComapForms {
    pub fn zero(frame: &Frame, degree: i64) -> ComapForms {
        ComapForms { frame: frame.clone(), degree, table: BTreeMap::new() }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Ring degree a coefficient on `word` must have.
    pub fn required_ring_degree(&self, word: &[usize]) -> i64 {
        self.frame.space.word_degree(word) + self.degree - 2
    }

    pub fn set(&mut self, k: usize, word: Word, c: RingElement) -> Result<()> {
        if word.len() < 2 || k + 1 >= word.len() {
            return structural(format!("form slot {k} invalid for word of length {}", word.len()));
        }
        if word.len() > self.frame.weight {
            return structural(format!("form weight {} exceeds truncation weight {}", word.len(), self.frame.weight));
        }
        self.check_entry(k, &word, &c)?;
        if c.is_zero() {
            self.table.remove(&(k, word));
        } else {
            self.table.insert((k, word), c);
        }
        Ok(())
    }

    fn check_entry(&self, k: usize, word: &[usize], c: &RingElement) -> Result<()> {
        if !c.is_homogeneous_of(self.required_ring_degree(word)) {
            return structural(format!(
                "form {} violates degree {} (coefficient {c})",
                self.render_key(k, word),
                self.degree
            ));
        }
        Ok(())
    }

    pub fn render_key(&self, k: usize, word: &[usize]) -> String {
        let l = word.len() - k - 2;
        format!("⟨{}⟩_{{{k},{l}}}", self.frame.space.render_word(word))
    }

    pub(crate) fn add_entry(&mut self, k: usize, word: Word, c: RingElement) {
        if word.len() > self.frame.weight {
            return;
        }
        add_into(&mut self.table, (k, word), c);
    }

    pub fn entry(&self, k: usize, word: &[usize]) -> RingElement {
        self.table.get(&(k, word.to_vec())).cloned().unwrap_or_else(|| self.frame.ring.zero())
    }

    pub fn get(&self, k: usize, word: &[usize]) -> Option<&RingElement> {
        self.table.get(&(k, word.to_vec()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&FormKey, &RingElement)> {
        self.table.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn check_degrees(&self) -> Result<()> {
        for ((k, w), c) in &self.table {
            self.check_entry(*k, w, c)?;
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ComapForms) -> Result<ComapForms> {
        self.frame.check_same(&other.frame)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            let mut o = other.clone();
            o.degree = self.degree;
            o.check_degrees()?;
            return Ok(o);
        }
        if self.degree != other.degree {
            return structural(format!("degree mismatch: {} vs {}", self.degree, other.degree));
        }
        let mut out = self.clone();
        for ((k, w), c) in &other.table {
            out.add_entry(*k, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComapForms) -> ComapForms {
        self.try_add(other).expect("incompatible comaps")
    }

    pub fn sub(&self, other: &ComapForms) -> ComapForms {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ComapForms {
        self.scale(&-&self.frame.space.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> ComapForms {
        self.map_coeffs(|x| x.scale(c))
    }

    pub fn scale_ring(&self, r: &RingElement, shift: i64) -> ComapForms {
        let mut out = self.map_coeffs(|x| x * r);
        out.degree += shift;
        out
    }

    fn map_coeffs(&self, mut f: impl FnMut(&RingElement) -> RingElement) -> ComapForms {
        let mut out = ComapForms::zero(&self.frame, self.degree);
        for ((k, w), c) in &self.table {
            out.add_entry(*k, w.clone(), f(c));
        }
        out
    }

    pub fn transport(&self, frame: &Frame) -> ComapForms {
        let mut out = ComapForms::zero(frame, self.degree);
        for ((k, w), c) in &self.table {
            out.add_entry(*k, w.clone(), c.transport(&frame.ring));
        }
        out
    }

    pub fn with_weight(&self, weight: usize) -> ComapForms {
        self.transport(&self.frame.with_weight(weight))
    }

    /// Restriction to the forms with `k` left and `l` right letters.
    pub fn slot(&self, k: usize, l: usize) -> ComapForms {
        let mut out = ComapForms::zero(&self.frame, self.degree);
        for ((kk, w), c) in &self.table {
            if *kk == k && w.len() == k + l + 2 {
                out.table.insert((*kk, w.clone()), c.clone());
            }
        }
        out
    }

    /// All slots `(k, l)` allowed by the truncation weight, by weight then `k`.
    pub fn slots(weight: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in 2..=weight {
            for k in 0..=n - 2 {
                out.push((k, n - 2 - k));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::scalars::{Field, RingSpec};

    #[test]
    fn pairing_degree_rule() {
        let sp = GradedSpace::new(Field::Rationals, vec![("e".into(), 0), ("x".into(), 1)]).unwrap();
        let frame = Frame::new(sp, RingSpec::field(Field::Rationals), 3);
        let mut i = ComapForms::zero(&frame, 0);
        assert!(i.set(0, vec![0, 0], frame.ring.one()).is_ok());
        assert!(i.set(0, vec![0, 1], frame.ring.one()).is_err());
        assert!(i.set(1, vec![0, 0], frame.ring.one()).is_err());
        assert_eq!(ComapForms::slots(3), vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(i.render_key(0, &[0, 0]), "⟨e,e⟩_{0,0}");
    }
}
