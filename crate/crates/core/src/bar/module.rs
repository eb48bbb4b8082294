//! Bicomodules `T^M A = T(A[1]) ⊗ M[1] ⊗ T(A[1])` for `M = A` and `M = A*`,
//! the induced coderivations `f^A`, `f^{A*}` and comaps evaluated on words.
//!
//! The dual slot carries the basis `e_j*` with suspended degree `1 − |e_j|`.
//! The induced action on it is the transpose
//! `(f^{A*}(v, e_j*, w))(x) = −(−1)^{ε} e_j*(f(w, x, v))` with `ε` the Koszul
//! sign of rotating `v` to the back plus `|f||e_j*|`.

use std::collections::BTreeMap;

use super::coder::{add_into, CoderComponents};
use super::comap::ComapForms;
use super::Frame;
use crate::error::{structural, Result};
use crate::graded::{sign_of, GradedSpace, Word};
use crate::scalars::RingElement;

/// `(k, word)` with the module letter at index `k`.
pub type BiWord = (usize, Word);
pub type BiComb = BTreeMap<BiWord, RingElement>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Algebra,
    Dual,
}

pub(crate) fn biword_degree(sp: &GradedSpace, side: Side, k: usize, w: &[usize]) -> i64 {
    let mid = match side {
        Side::Algebra => sp.suspended_degree(w[k]),
        Side::Dual => sp.dual_suspended_degree(w[k]),
    };
    sp.word_degree(&w[..k]) + mid + sp.word_degree(&w[k + 1..])
}

fn prefix_degree(sp: &GradedSpace, side: Side, k: usize, w: &[usize], end: usize) -> i64 {
    if end <= k {
        sp.word_degree(&w[..end])
    } else {
        biword_degree(sp, side, k, &w[..end])
    }
}

/// Lowest component on the dual side: `(v, e_j*, w) ↦ Σ_x c_x e_x*`, where
/// `c_x = ± e_j*(f(w, x, v))`; `action` adds the transpose sign.
pub(crate) fn dual_lowest(f: &CoderComponents, k: usize, w: &[usize], action: bool) -> BTreeMap<usize, RingElement> {
    let sp = &f.frame().space;
    let (v, psi, rest) = (&w[..k], w[k], &w[k + 1..]);
    let dv = sp.word_degree(v);
    let dpsi = sp.dual_suspended_degree(psi);
    let drest = sp.word_degree(rest);
    let mut out = BTreeMap::new();
    for x in 0..sp.dim() {
        let mut input = rest.to_vec();
        input.push(x);
        input.extend_from_slice(v);
        let Some(row) = f.output(&input) else { continue };
        let Some(c) = row.get(&psi) else { continue };
        let mut e = dv * (dpsi + drest + sp.suspended_degree(x));
        if action {
            e += 1 + f.degree() * dpsi;
        }
        let c = if sign_of(e) > 0 { c.clone() } else { -c };
        add_into(&mut out, x, c);
    }
    out
}

/// The induced coderivation `f^A` or `f^{A*}` applied to a combination of biwords.
pub fn induced_action(f: &CoderComponents, side: Side, input: &BiComb) -> BiComb {
    let sp = &f.frame().space;
    let mut out = BiComb::new();
    for ((k, w), coeff) in input {
        let (k, n) = (*k, w.len());
        for s in 0..n {
            let sign = sign_of(f.degree() * prefix_degree(sp, side, k, w, s));
            for e in s + 1..=n {
                let block = &w[s..e];
                let has_mid = s <= k && k < e;
                let row = if has_mid && side == Side::Dual {
                    dual_lowest(f, k - s, block, true)
                } else {
                    match f.output(block) {
                        Some(r) => r.clone(),
                        None => continue,
                    }
                };
                let new_k = if has_mid {
                    s
                } else if e <= k {
                    k + 1 + s - e
                } else {
                    k
                };
                for (o, c) in row {
                    let mut nw = w[..s].to_vec();
                    nw.push(o);
                    nw.extend_from_slice(&w[e..]);
                    let v = &c * coeff;
                    add_into(&mut out, (new_k, nw), if sign > 0 { v } else { -&v });
                }
            }
        }
    }
    out
}

/// A comap `T^A A -> T^{A*} A` applied to biwords through the coaction:
/// `I(v v'' m w'' w') = Σ ± v ⊗ I_low(v'' m w'') ⊗ w'`.
pub fn apply_comap(form: &ComapForms, input: &BiComb) -> BiComb {
    let sp = &form.frame().space;
    let mut out = BiComb::new();
    for ((k, w), coeff) in input {
        let k = *k;
        for a in 0..=k {
            let sign = sign_of(form.degree() * sp.word_degree(&w[..a]));
            for b in k + 1..=w.len() {
                let inner = &w[a..b];
                for x in 0..sp.dim() {
                    let mut key = inner.to_vec();
                    key.push(x);
                    let Some(c) = form.get(k - a, &key) else { continue };
                    let mut nw = w[..a].to_vec();
                    nw.push(x);
                    nw.extend_from_slice(&w[b..]);
                    let v = c * coeff;
                    add_into(&mut out, (a, nw), if sign > 0 { v } else { -&v });
                }
            }
        }
    }
    out
}

/// Lowest components `T^M A -> M` of a bimodule structure or bimodule map,
/// on biwords of length at most the truncation weight.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleComponents {
    frame: Frame,
    side: Side,
    degree: i64,
    table: BTreeMap<BiWord, BTreeMap<usize, RingElement>>,
}

impl BimoduleComponents {
    pub fn zero(frame: &Frame, side: Side, degree: i64) -> BimoduleComponents {
        BimoduleComponents { frame: frame.clone(), side, degree, table: BTreeMap::new() }
    }

    /// The structure `D^A` or `D^{A*}` induced by a coderivation.
    pub fn from_coder(f: &CoderComponents, side: Side) -> BimoduleComponents {
        let frame = f.frame();
        let mut out = BimoduleComponents::zero(frame, side, f.degree());
        for w in frame.space.words_up_to(frame.weight) {
            for k in 0..w.len() {
                let row = match side {
                    Side::Algebra => f.output(&w).cloned().unwrap_or_default(),
                    Side::Dual => dual_lowest(f, k, &w, true),
                };
                for (o, c) in row {
                    out.add_entry(k, w.clone(), o, c);
                }
            }
        }
        out
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub(crate) fn add_entry(&mut self, k: usize, w: Word, out: usize, c: RingElement) {
        if w.len() > self.frame.weight || c.is_zero() {
            return;
        }
        let key = (k, w);
        let row = self.table.entry(key.clone()).or_default();
        add_into(row, out, c);
        if row.is_empty() {
            self.table.remove(&key);
        }
    }

    pub fn output(&self, k: usize, w: &[usize]) -> Option<&BTreeMap<usize, RingElement>> {
        self.table.get(&(k, w.to_vec()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BiWord, usize, &RingElement)> {
        self.table.iter().flat_map(|(bw, row)| row.iter().map(move |(o, c)| (bw, *o, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn try_sub(&self, other: &BimoduleComponents) -> Result<BimoduleComponents> {
        self.frame.check_same(&other.frame)?;
        if self.side != other.side {
            return structural("bimodule components over different modules");
        }
        let mut out = self.clone();
        for ((k, w), o, c) in other.entries() {
            out.add_entry(*k, w.clone(), o, -c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::scalars::{Field, RingSpec};

    #[test]
    fn linear_part_acts_on_every_slot() {
        let sp = GradedSpace::new(Field::Rationals, vec![("e".into(), 0)]).unwrap();
        let frame = Frame::new(sp, RingSpec::field(Field::Rationals), 3);
        let mut f = CoderComponents::zero(&frame, 0);
        f.set(vec![0], 0, frame.ring.one()).unwrap();
        let mut input = BiComb::new();
        input.insert((1, vec![0, 0, 0]), frame.ring.one());
        let out = induced_action(&f, Side::Algebra, &input);
        assert_eq!(out[&(1, vec![0, 0, 0])], frame.ring.from_int(3));
        assert!(induced_action(&CoderComponents::zero(&frame, 0), Side::Dual, &input).is_empty());
    }
}
