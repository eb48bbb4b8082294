use std::collections::BTreeMap;

use super::Frame;
use crate::error::{structural, Result};
use crate::graded::{sign_of, Word};
use crate::scalars::{RingElement, Scalar};

/// A linear combination of words in `T(A[1]) ⊗ R`.
pub type WordComb = BTreeMap<Word, RingElement>;

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, RingElement>, key: K, c: RingElement) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Components `f_k: A[1]^{⊗k} -> A[1]` of a coderivation of `T(A[1]) ⊗ R`,
/// all of one suspended degree, for arities `1..=weight`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoderComponents {
    frame: Frame,
    degree: i64,
    table: BTreeMap<Word, BTreeMap<usize, RingElement>>,
}

impl CoderComponents {
    pub fn zero(frame: &Frame, degree: i64) -> CoderComponents {
        CoderComponents { frame: frame.clone(), degree, table: BTreeMap::new() }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Sets `f(word)` to have coefficient `c` on basis vector `out`, checking degrees.
    pub fn set(&mut self, word: Word, out: usize, c: RingElement) -> Result<()> {
        if word.is_empty() {
            return structural("curved components (arity 0) are not supported");
        }
        if word.len() > self.frame.weight {
            return structural(format!("arity {} exceeds truncation weight {}", word.len(), self.frame.weight));
        }
        self.check_entry(&word, out, &c)?;
        let row = self.table.entry(word.clone()).or_default();
        row.remove(&out);
        if !c.is_zero() {
            row.insert(out, c);
        }
        if row.is_empty() {
            self.table.remove(&word);
        }
        Ok(())
    }

    fn check_entry(&self, word: &[usize], out: usize, c: &RingElement) -> Result<()> {
        let sp = &self.frame.space;
        let need = sp.word_degree(word) + self.degree - sp.suspended_degree(out);
        if !c.is_homogeneous_of(need) {
            return structural(format!(
                "component f({}) -> {} violates degree {} (coefficient {c})",
                sp.render_word(word),
                sp.name(out),
                self.degree
            ));
        }
        Ok(())
    }

    /// Adds to an entry, silently dropping arities above the truncation weight.
    pub(crate) fn add_entry(&mut self, word: Word, out: usize, c: RingElement) {
        if word.len() > self.frame.weight || c.is_zero() {
            return;
        }
        let row = self.table.entry(word.clone()).or_default();
        add_into(row, out, c);
        if row.is_empty() {
            self.table.remove(&word);
        }
    }

    pub fn entry(&self, word: &[usize], out: usize) -> RingElement {
        self.table
            .get(word)
            .and_then(|r| r.get(&out))
            .cloned()
            .unwrap_or_else(|| self.frame.ring.zero())
    }

    pub fn output(&self, word: &[usize]) -> Option<&BTreeMap<usize, RingElement>> {
        self.table.get(word)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, usize, &RingElement)> {
        self.table.iter().flat_map(|(w, row)| row.iter().map(move |(o, c)| (w, *o, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.table.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn arity_component(&self, k: usize) -> CoderComponents {
        let mut out = CoderComponents::zero(&self.frame, self.degree);
        out.table = self.table.iter().filter(|(w, _)| w.len() == k).map(|(w, r)| (w.clone(), r.clone())).collect();
        out
    }

    /// Lowest arity with a nonzero component.
    pub fn first_nonzero_arity(&self) -> Option<usize> {
        self.table.keys().map(Vec::len).min()
    }

    pub fn check_degrees(&self) -> Result<()> {
        for (w, o, c) in self.entries() {
            self.check_entry(w, o, c)?;
        }
        Ok(())
    }

    fn check_compatible(&self, other: &CoderComponents) -> Result<()> {
        self.frame.check_same(&other.frame)?;
        if self.degree != other.degree {
            return structural(format!("degree mismatch: {} vs {}", self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CoderComponents) -> Result<CoderComponents> {
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
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, o, c) in other.entries() {
            out.add_entry(w.clone(), o, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &CoderComponents) -> CoderComponents {
        self.try_add(other).expect("incompatible coderivations")
    }

    pub fn sub(&self, other: &CoderComponents) -> CoderComponents {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CoderComponents {
        self.scale(&-&self.frame.space.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> CoderComponents {
        self.map_coeffs(|x| x.scale(c))
    }

    /// Multiplies every coefficient by a ring element of degree `shift`.
    pub fn scale_ring(&self, r: &RingElement, shift: i64) -> CoderComponents {
        let mut out = self.map_coeffs(|x| x * r);
        out.degree += shift;
        out
    }

    fn map_coeffs(&self, mut f: impl FnMut(&RingElement) -> RingElement) -> CoderComponents {
        let mut out = CoderComponents::zero(&self.frame, self.degree);
        for (w, o, c) in self.entries() {
            out.add_entry(w.clone(), o, f(c));
        }
        out
    }

    /// Same components over another frame (ring change and/or truncation).
    pub fn transport(&self, frame: &Frame) -> CoderComponents {
        let mut out = CoderComponents::zero(frame, self.degree);
        for (w, o, c) in self.entries() {
            out.add_entry(w.clone(), o, c.transport(&frame.ring));
        }
        out
    }

    pub fn with_weight(&self, weight: usize) -> CoderComponents {
        self.transport(&self.frame.with_weight(weight))
    }

    /// Lowest component of `outer ∘ inner`: insert `inner` into one slot of `outer`.
    pub fn compose_components(outer: &CoderComponents, inner: &CoderComponents) -> Result<CoderComponents> {
        outer.frame.check_same(&inner.frame)?;
        let sp = &outer.frame.space;
        let w = outer.frame.weight;
        let mut by_output: BTreeMap<usize, Vec<(&Word, &RingElement)>> = BTreeMap::new();
        for (iw, o, c) in inner.entries() {
            by_output.entry(o).or_default().push((iw, c));
        }
        let mut out = CoderComponents::zero(&outer.frame, outer.degree + inner.degree);
        for (fw, fo, fc) in outer.entries() {
            for p in 0..fw.len() {
                let Some(list) = by_output.get(&fw[p]) else { continue };
                let prefix_deg = sp.word_degree(&fw[..p]);
                let sign = sign_of(inner.degree * prefix_deg);
                for (gw, gc) in list {
                    if fw.len() - 1 + gw.len() > w {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(fw.len() - 1 + gw.len());
                    nw.extend_from_slice(&fw[..p]);
                    nw.extend_from_slice(gw);
                    nw.extend_from_slice(&fw[p + 1..]);
                    let mut c = fc * gc;
                    if sign < 0 {
                        c = -&c;
                    }
                    out.add_entry(nw, fo, c);
                }
            }
        }
        Ok(out)
    }

    /// The coderivation extension of `f` applied to a combination of words.
    pub fn extend_to_words(&self, input: &WordComb) -> WordComb {
        let sp = &self.frame.space;
        let mut out = WordComb::new();
        for (word, coeff) in input {
            for start in 0..word.len() {
                let sign = sign_of(self.degree * sp.word_degree(&word[..start]));
                for end in start + 1..=word.len() {
                    let Some(row) = self.table.get(&word[start..end]) else { continue };
                    for (o, c) in row {
                        let mut nw = word[..start].to_vec();
                        nw.push(*o);
                        nw.extend_from_slice(&word[end..]);
                        let mut v = c * coeff;
                        if sign < 0 {
                            v = -&v;
                        }
                        add_into(&mut out, nw, v);
                    }
                }
            }
        }
        out
    }
}

/// Components of `f∘g − (−1)^{|f||g|} g∘f`, exact through the truncation weight.
pub fn coder_bracket(f: &CoderComponents, g: &CoderComponents) -> Result<CoderComponents> {
    let fg = CoderComponents::compose_components(f, g)?;
    let gf = CoderComponents::compose_components(g, f)?;
    let sign = sign_of(f.degree * g.degree);
    let gf = if sign < 0 { gf } else { gf.neg() };
    fg.try_add(&gf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::scalars::{Field, RingSpec};

    fn one_dim(weight: usize) -> (Frame, CoderComponents) {
        let sp = GradedSpace::new(Field::Rationals, vec![("e".into(), 0)]).unwrap();
        let frame = Frame::new(sp, RingSpec::field(Field::Rationals), weight);
        let mut m = CoderComponents::zero(&frame, -1);
        m.set(vec![0, 0], 0, frame.ring.one()).unwrap();
        (frame, m)
    }

    #[test]
    fn bracket_with_zero_is_zero() {
        let (frame, m) = one_dim(3);
        let z = CoderComponents::zero(&frame, 0);
        assert!(coder_bracket(&m, &z).unwrap().is_zero());
    }

    #[test]
    fn associative_product_squares_to_zero() {
        let (_, m) = one_dim(4);
        let b = coder_bracket(&m, &m).unwrap();
        assert!(b.is_zero());
        // the two insertion orders separately give ±e on (e,e,e)
        let comp = CoderComponents::compose_components(&m, &m).unwrap();
        assert_eq!(comp.entry(&[0, 0, 0], 0).constant_term().to_string(), "0");
    }

    #[test]
    fn degree_violations_rejected() {
        let (frame, _) = one_dim(3);
        let mut f = CoderComponents::zero(&frame, 0);
        assert!(f.set(vec![0, 0], 0, frame.ring.one()).is_err());
        assert!(f.set(vec![0], 0, frame.ring.one()).is_ok());
        assert!(f.set(vec![], 0, frame.ring.one()).is_err());
    }

    #[test]
    fn leibniz_on_words() {
        let (frame, _) = one_dim(3);
        let mut f = CoderComponents::zero(&frame, 0);
        f.set(vec![0], 0, frame.ring.from_int(2)).unwrap();
        let mut w = WordComb::new();
        w.insert(vec![0, 0, 0], frame.ring.one());
        let out = f.extend_to_words(&w);
        // three slots, each contributing 2
        assert_eq!(out[&vec![0, 0, 0]], frame.ring.from_int(6));
    }
}
