//! A-infinity morphisms `λ: T(A[1]) -> T(A[1])` of degree 0 and the structures
//! they induce on bimodules and comaps. Since `λ` has degree 0, no Koszul
//! signs arise from moving it past letters.

use std::collections::BTreeMap;

use super::coder::{add_into, CoderComponents, WordComb};
use super::comap::ComapForms;
use super::module::{dual_lowest, BimoduleComponents, Side};
use super::Frame;
use crate::error::{structural, Error, Result};
use crate::graded::{sign_of, Word};
use crate::scalars::RingElement;

#[derive(Clone, Debug, PartialEq)]
pub struct AInfMorphism {
    comps: CoderComponents,
}

impl AInfMorphism {
    pub fn from_components(comps: CoderComponents) -> Result<AInfMorphism> {
        if comps.degree() != 0 {
            return structural(format!("A-infinity morphisms have degree 0, got {}", comps.degree()));
        }
        Ok(AInfMorphism { comps })
    }

    pub fn identity(frame: &Frame) -> AInfMorphism {
        AInfMorphism::scalar(frame, frame.ring.one())
    }

    /// `λ_1 = c·id`, higher components zero.
    pub fn scalar(frame: &Frame, c: RingElement) -> AInfMorphism {
        let mut comps = CoderComponents::zero(frame, 0);
        for j in 0..frame.space.dim() {
            comps.add_entry(vec![j], j, c.clone());
        }
        AInfMorphism { comps }
    }

    pub fn components(&self) -> &CoderComponents {
        &self.comps
    }

    pub fn frame(&self) -> &Frame {
        self.comps.frame()
    }

    /// `e^{t f}` for a degree-0 coderivation `f` with nilpotent action.
    pub fn exp_coder(f: &CoderComponents, t: i64) -> Result<AInfMorphism> {
        if f.degree() != 0 {
            return structural("only degree-0 coderivations exponentiate to morphisms");
        }
        let frame = f.frame();
        let field = frame.space.field();
        let bound = frame.weight + frame.ring.nilpotency_index() + 1;
        let mut comps = CoderComponents::zero(frame, 0);
        for u in frame.space.words_up_to(frame.weight) {
            let mut term = WordComb::new();
            term.insert(u.clone(), frame.ring.one());
            if u.len() == 1 {
                comps.add_entry(u.clone(), u[0], frame.ring.one());
            }
            let mut n = 1;
            while !term.is_empty() {
                if n > bound {
                    return Err(Error::Precondition("exponential does not terminate (generator is not nilpotent)".into()));
                }
                let c = field.ratio(t, n as i64)?;
                term = f.extend_to_words(&term).into_iter().map(|(w, v)| (w, v.scale(&c))).filter(|(_, v)| !v.is_zero()).collect();
                for (w, v) in &term {
                    if w.len() == 1 {
                        comps.add_entry(u.clone(), w[0], v.clone());
                    }
                }
                n += 1;
            }
        }
        Ok(AInfMorphism { comps })
    }

    /// `Σ λ(B_1) ⊗ ... ⊗ λ(B_r)` over all splittings of `seg` into consecutive blocks.
    pub fn image(&self, seg: &[usize]) -> WordComb {
        let one = self.frame().ring.one();
        // img[i] = image of seg[i..]
        let mut img: Vec<WordComb> = vec![WordComb::new(); seg.len() + 1];
        img[seg.len()].insert(Vec::new(), one);
        for i in (0..seg.len()).rev() {
            let mut acc = WordComb::new();
            for j in i + 1..=seg.len() {
                let Some(row) = self.comps.output(&seg[i..j]) else { continue };
                for (o, c) in row {
                    for (tail, tc) in &img[j] {
                        let mut w = Vec::with_capacity(tail.len() + 1);
                        w.push(*o);
                        w.extend_from_slice(tail);
                        add_into(&mut acc, w, c * tc);
                    }
                }
            }
            img[i] = acc;
        }
        std::mem::take(&mut img[0])
    }

    /// Lowest components of `self ∘ other`.
    pub fn compose(&self, other: &AInfMorphism) -> Result<AInfMorphism> {
        self.frame().check_same(other.frame())?;
        let frame = self.frame();
        let mut comps = CoderComponents::zero(frame, 0);
        for u in frame.space.words_up_to(frame.weight) {
            for (y, c) in other.image(&u) {
                if let Some(row) = self.comps.output(&y) {
                    for (o, v) in row {
                        comps.add_entry(u.clone(), *o, v * &c);
                    }
                }
            }
        }
        Ok(AInfMorphism { comps })
    }

    pub fn is_identity(&self) -> bool {
        *self == AInfMorphism::identity(self.frame())
    }

    /// Lowest components of `λ ∘ D'`.
    pub fn after_coder(&self, d: &CoderComponents) -> Result<CoderComponents> {
        CoderComponents::compose_components(&self.comps, d)
    }

    /// Lowest components of `D ∘ λ`.
    pub fn before_coder(&self, d: &CoderComponents) -> Result<CoderComponents> {
        self.frame().check_same(d.frame())?;
        let frame = self.frame();
        let mut out = CoderComponents::zero(frame, d.degree());
        for u in frame.space.words_up_to(frame.weight) {
            for (y, c) in self.image(&u) {
                if let Some(row) = d.output(&y) {
                    for (o, v) in row {
                        out.add_entry(u.clone(), *o, v * &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Images of the letters left and right of the module slot.
    fn split_images(&self, k: usize, w: &[usize], end: usize) -> Vec<(Word, usize, Word, RingElement)> {
        let left = self.image(&w[..k]);
        let right = self.image(&w[k + 1..end]);
        let mut out = Vec::new();
        for (yl, cl) in &left {
            for (yr, cr) in &right {
                out.push((yl.clone(), yl.len(), yr.clone(), cl * cr));
            }
        }
        out
    }

    /// `(D^M)^λ`: the bimodule structure pulled back along `λ`.
    pub fn induce_structure(&self, dm: &BimoduleComponents) -> Result<BimoduleComponents> {
        self.frame().check_same(dm.frame())?;
        let frame = self.frame();
        let mut out = BimoduleComponents::zero(frame, dm.side(), dm.degree());
        for w in frame.space.words_up_to(frame.weight) {
            for k in 0..w.len() {
                for (yl, nk, yr, c) in self.split_images(k, &w, w.len()) {
                    let mut y = yl;
                    y.push(w[k]);
                    y.extend(yr);
                    if let Some(row) = dm.output(nk, &y) {
                        for (o, v) in row {
                            out.add_entry(k, w.clone(), *o, v * &c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `F^λ` for a comap `F`.
    pub fn induce_comap(&self, form: &ComapForms) -> Result<ComapForms> {
        self.frame().check_same(form.frame())?;
        let frame = self.frame();
        let mut out = ComapForms::zero(frame, form.degree());
        for n in 2..=frame.weight {
            for u in frame.space.words(n) {
                for k in 0..n - 1 {
                    let mut acc = frame.ring.zero();
                    for (yl, nk, yr, c) in self.split_images(k, &u, n - 1) {
                        let mut y = yl;
                        y.push(u[k]);
                        y.extend(yr);
                        y.push(u[n - 1]);
                        if let Some(v) = form.get(nk, &y) {
                            acc = &acc + &(v * &c);
                        }
                    }
                    out.add_entry(k, u.clone(), acc);
                }
            }
        }
        Ok(out)
    }

    /// `λ̄`: lowest components `(a'_1..m..a'_n) ↦ λ(a'_1..a'_n)` on `T^A A`.
    pub fn bar(&self) -> BimoduleComponents {
        let frame = self.frame();
        let mut out = BimoduleComponents::zero(frame, Side::Algebra, 0);
        for w in frame.space.words_up_to(frame.weight) {
            if let Some(row) = self.comps.output(&w) {
                for k in 0..w.len() {
                    for (o, c) in row {
                        out.add_entry(k, w.clone(), *o, c.clone());
                    }
                }
            }
        }
        out
    }

    /// `λ̃`: `(v, a*, w)(x) = ± a*(λ(w, x, v))` on `T^{A*} A`.
    pub fn tilde(&self) -> BimoduleComponents {
        let frame = self.frame();
        let mut out = BimoduleComponents::zero(frame, Side::Dual, 0);
        for w in frame.space.words_up_to(frame.weight) {
            for k in 0..w.len() {
                for (o, c) in dual_lowest(&self.comps, k, &w, false) {
                    out.add_entry(k, w.clone(), o, c);
                }
            }
        }
        out
    }

    /// Lowest components of `λ̃ ∘ F ∘ λ̄` as forms.
    pub fn sandwich(&self, form: &ComapForms) -> Result<ComapForms> {
        self.frame().check_same(form.frame())?;
        let frame = self.frame();
        let sp = &frame.space;
        let bar = self.bar();
        let tilde = self.tilde();
        let mut out = ComapForms::zero(frame, form.degree());
        for n in 2..=frame.weight {
            for u in sp.words(n) {
                let x = u[n - 1];
                let body = &u[..n - 1];
                for k in 0..n - 1 {
                    let mut acc = frame.ring.zero();
                    // body = a b c m c' b' a'
                    for ia in 0..=k {
                        let sign = sign_of(form.degree() * sp.word_degree(&body[..ia]));
                        for ib in ia..=k {
                            for jb in k + 1..=n - 1 {
                                for ja in jb..=n - 1 {
                                    let inner = &body[ib..jb];
                                    let Some(lrow) = bar.output(k - ib, inner) else { continue };
                                    for (y, cy) in lrow {
                                        let mut fkey = body[ia..ib].to_vec();
                                        fkey.push(*y);
                                        fkey.extend_from_slice(&body[jb..ja]);
                                        let fk = ib - ia;
                                        for z in 0..sp.dim() {
                                            fkey.push(z);
                                            let fv = form.get(fk, &fkey).cloned();
                                            fkey.pop();
                                            let Some(fv) = fv else { continue };
                                            let mut tkey = body[..ia].to_vec();
                                            tkey.push(z);
                                            tkey.extend_from_slice(&body[ja..]);
                                            let Some(trow) = tilde.output(ia, &tkey) else { continue };
                                            let Some(tv) = trow.get(&x) else { continue };
                                            let t = &(cy * &fv) * tv;
                                            acc = if sign > 0 { &acc + &t } else { &acc - &t };
                                        }
                                    }
                                }
                            }
                        }
                    }
                    out.add_entry(k, u.clone(), acc);
                }
            }
        }
        Ok(out)
    }
}

/// Lowest components of a family of morphisms as a table keyed by input word.
pub fn morphism_table(l: &AInfMorphism) -> BTreeMap<Word, BTreeMap<usize, RingElement>> {
    let mut out = BTreeMap::new();
    for (w, o, c) in l.components().entries() {
        out.entry(w.clone()).or_insert_with(BTreeMap::new).insert(o, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::scalars::{Field, RingSpec};

    fn frame(w: usize) -> Frame {
        let sp = GradedSpace::new(Field::Rationals, vec![("e".into(), 0), ("u".into(), -1)]).unwrap();
        Frame::new(sp, RingSpec::field(Field::Rationals), w)
    }

    #[test]
    fn identity_acts_trivially() {
        let fr = frame(3);
        let id = AInfMorphism::identity(&fr);
        let mut i = ComapForms::zero(&fr, 0);
        i.set(0, vec![0, 0], fr.ring.one()).unwrap();
        i.set(1, vec![1, 0, 0], fr.ring.from_int(5)).unwrap();
        assert_eq!(id.induce_comap(&i).unwrap(), i);
        assert_eq!(id.sandwich(&i).unwrap(), i);
        assert!(id.compose(&id).unwrap().is_identity());
    }

    #[test]
    fn scalar_morphism_scales_algebra_inputs() {
        let fr = frame(3);
        let l = AInfMorphism::scalar(&fr, fr.ring.from_int(2));
        let mut d = CoderComponents::zero(&fr, -1);
        d.set(vec![0, 0], 0, fr.ring.one()).unwrap();
        let dm = BimoduleComponents::from_coder(&d, Side::Algebra);
        let ind = l.induce_structure(&dm).unwrap();
        // one algebra input besides the module slot: factor 2
        assert_eq!(ind.output(0, &[0, 0]).unwrap()[&0], fr.ring.from_int(2));
        let mut i = ComapForms::zero(&fr, 0);
        i.set(0, vec![0, 0], fr.ring.one()).unwrap();
        i.set(1, vec![1, 0, 0], fr.ring.one()).unwrap();
        let il = l.induce_comap(&i).unwrap();
        assert_eq!(il.entry(0, &[0, 0]), fr.ring.one());
        assert_eq!(il.entry(1, &[1, 0, 0]), fr.ring.from_int(2));
        assert_eq!(l.tilde().output(0, &[0]).unwrap()[&0], fr.ring.from_int(2));
    }

    #[test]
    fn quadratic_component_induces_ternary() {
        let sp = GradedSpace::new(Field::Rationals, vec![("u".into(), -1), ("e".into(), 0)]).unwrap();
        let fr = Frame::new(sp, RingSpec::field(Field::Rationals), 3);
        let mut c = CoderComponents::zero(&fr, 0);
        c.set(vec![0], 0, fr.ring.one()).unwrap();
        c.set(vec![1], 1, fr.ring.one()).unwrap();
        c.set(vec![0, 1], 1, fr.ring.one()).unwrap();
        let l = AInfMorphism::from_components(c).unwrap();
        let mut d = CoderComponents::zero(&fr, -1);
        d.set(vec![1, 1], 1, fr.ring.one()).unwrap();
        let dm = BimoduleComponents::from_coder(&d, Side::Algebra);
        assert!(dm.output(2, &[0, 1, 1]).is_none());
        let ind = l.induce_structure(&dm).unwrap();
        assert_eq!(ind.output(2, &[0, 1, 1]).unwrap()[&1], fr.ring.one());
    }

    #[test]
    fn exponential_inverts() {
        let fr = frame(3);
        let mut f = CoderComponents::zero(&fr, 0);
        f.set(vec![0], 0, fr.ring.from_int(0)).unwrap();
        let e = AInfMorphism::exp_coder(&f, 1).unwrap();
        assert!(e.is_identity());
    }
}
