//! Truncated bicomodules as explicit based spaces, with the induced maps
//! assembled column by column from the coLeibniz and coaction rules.

use std::collections::{BTreeMap, HashMap};

use crate::bar::coder::add_into;
use crate::bar::module::{apply_comap, induced_action, BiComb, BiWord, Side};
use crate::bar::{CoderComponents, ComapForms, Frame, WordComb};
use crate::error::{structural, Result};
use crate::graded::{sign_of, Word};
use crate::linalg::{LinearMapMatrix, Matrix};
use crate::scalars::{RingElement, RingKind};

/// All biwords `A[1]^{⊗k} ⊗ M[1] ⊗ A[1]^{⊗l}` with `k + l + 1 <= max_len`.
#[derive(Clone, Debug)]
pub struct TruncatedBicomodule {
    pub frame: Frame,
    pub side: Side,
    pub max_len: usize,
    basis: Vec<BiWord>,
    index: HashMap<BiWord, usize>,
}

impl TruncatedBicomodule {
    pub fn new(frame: &Frame, side: Side, max_len: usize) -> TruncatedBicomodule {
        let mut basis = Vec::new();
        for w in frame.space.words_up_to(max_len) {
            for k in 0..w.len() {
                basis.push((k, w.clone()));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        TruncatedBicomodule { frame: frame.clone(), side, max_len, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BiWord] {
        &self.basis
    }

    pub fn position(&self, b: &BiWord) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Internal degree of each basis biword in the suspended convention.
    pub fn degrees(&self) -> Vec<i64> {
        self.basis.iter().map(|(k, w)| crate::bar::module::biword_degree(&self.frame.space, self.side, *k, w)).collect()
    }
}

/// A map between truncated bicomodules, one image combination per basis vector.
#[derive(Clone, Debug)]
pub struct AssembledMap {
    pub domain: TruncatedBicomodule,
    pub codomain: TruncatedBicomodule,
    pub degree: i64,
    columns: Vec<BiComb>,
}

impl AssembledMap {
    fn from_fn(domain: &TruncatedBicomodule, codomain: &TruncatedBicomodule, degree: i64, f: impl Fn(&BiComb) -> BiComb) -> AssembledMap {
        let one = domain.frame.ring.one();
        let columns = domain
            .basis
            .iter()
            .map(|b| {
                let mut input = BiComb::new();
                input.insert(b.clone(), one.clone());
                f(&input).into_iter().filter(|(k, _)| codomain.position(k).is_some()).collect()
            })
            .collect();
        AssembledMap { domain: domain.clone(), codomain: codomain.clone(), degree, columns }
    }

    pub fn column(&self, j: usize) -> &BiComb {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    pub fn apply(&self, v: &BiComb) -> BiComb {
        let mut out = BiComb::new();
        for (b, c) in v {
            let Some(j) = self.domain.position(b) else { continue };
            for (o, x) in &self.columns[j] {
                add_into(&mut out, o.clone(), x * c);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AssembledMap) -> AssembledMap {
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        AssembledMap { domain: other.domain.clone(), codomain: self.codomain.clone(), degree: self.degree + other.degree, columns }
    }

    pub fn combine(&self, other: &AssembledMap, sign: i64) -> AssembledMap {
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut out = a.clone();
                for (k, v) in b {
                    add_into(&mut out, k.clone(), if sign > 0 { v.clone() } else { -v });
                }
                out
            })
            .collect();
        AssembledMap { domain: self.domain.clone(), codomain: self.codomain.clone(), degree: self.degree, columns }
    }

    /// The matrix over the ground field; only for coefficients in the field itself.
    pub fn to_linear_map_matrix(&self) -> Result<LinearMapMatrix> {
        if *self.domain.frame.ring.kind() != RingKind::Field {
            return structural("matrix form needs coefficients in the ground field");
        }
        let field = self.domain.frame.space.field();
        let mut m = Matrix::zeros(field, self.codomain.dim(), self.domain.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for (b, c) in col {
                m.set(self.codomain.position(b).expect("filtered"), j, c.constant_term().clone());
            }
        }
        Ok(LinearMapMatrix {
            domain_degrees: self.domain.degrees(),
            codomain_degrees: self.codomain.degrees(),
            shift: self.degree,
            matrix: m,
        })
    }
}

/// `f^A` or `f^{A*}` on biwords of length at most `max_len`.
pub fn assemble_coder(f: &CoderComponents, side: Side, max_len: usize) -> AssembledMap {
    let b = TruncatedBicomodule::new(f.frame(), side, max_len);
    AssembledMap::from_fn(&b, &b, f.degree(), |v| induced_action(f, side, v))
}

/// The comap `F: T^A A -> T^{A*} A` on biwords of length at most `max_len`.
pub fn assemble_comap(form: &ComapForms, max_len: usize) -> AssembledMap {
    let dom = TruncatedBicomodule::new(form.frame(), Side::Algebra, max_len);
    let cod = TruncatedBicomodule::new(form.frame(), Side::Dual, max_len);
    AssembledMap::from_fn(&dom, &cod, form.degree(), |v| apply_comap(form, v))
}

/// `δ_f(i)` read off from `f^{A*} ∘ i − (−1)^{|f||i|} i ∘ f^A` on explicit words.
pub fn compose_delta_oracle(f: &CoderComponents, i: &ComapForms) -> Result<ComapForms> {
    f.frame().check_same(i.frame())?;
    let frame = i.frame();
    let len = frame.weight.saturating_sub(1);
    let fa = assemble_coder(f, Side::Algebra, len);
    let fd = assemble_coder(f, Side::Dual, len);
    let im = assemble_comap(i, len);
    let total = fd.compose(&im).combine(&im.compose(&fa), -sign_of(f.degree() * i.degree()));
    let mut out = ComapForms::zero(frame, f.degree() + i.degree());
    for (j, (k, w)) in total.domain.basis().iter().enumerate() {
        for ((a, nw), c) in total.column(j) {
            if nw.len() == 1 && *a == 0 {
                let mut key = w.clone();
                key.push(nw[0]);
                out.add_entry(*k, key, c.clone());
            }
        }
    }
    Ok(out)
}

/// `[f, g]` from composing the word-level extensions.
pub fn oracle_coder_bracket(f: &CoderComponents, g: &CoderComponents) -> Result<CoderComponents> {
    f.frame().check_same(g.frame())?;
    let frame = f.frame();
    let sign = sign_of(f.degree() * g.degree());
    let mut out = CoderComponents::zero(frame, f.degree() + g.degree());
    for u in frame.space.words_up_to(frame.weight) {
        let mut input = WordComb::new();
        input.insert(u.clone(), frame.ring.one());
        let fg = f.extend_to_words(&g.extend_to_words(&input));
        let gf = g.extend_to_words(&f.extend_to_words(&input));
        for (w, c) in fg {
            if w.len() == 1 {
                out.add_entry(u.clone(), w[0], c);
            }
        }
        for (w, c) in gf {
            if w.len() == 1 {
                out.add_entry(u.clone(), w[0], if sign > 0 { -&c } else { c });
            }
        }
    }
    Ok(out)
}

type TensorPair = BTreeMap<(Word, Word), RingElement>;

fn deconcatenate(input: &WordComb) -> TensorPair {
    let mut out = TensorPair::new();
    for (w, c) in input {
        for j in 0..=w.len() {
            add_into(&mut out, (w[..j].to_vec(), w[j..].to_vec()), c.clone());
        }
    }
    out
}

/// `Δ ∘ f = (f ⊗ 1 + 1 ⊗ f) ∘ Δ` on all words of length at most the weight.
pub fn coleibniz_holds(f: &CoderComponents) -> bool {
    let frame = f.frame();
    let sp = &frame.space;
    for u in sp.words_up_to(frame.weight) {
        let mut input = WordComb::new();
        input.insert(u.clone(), frame.ring.one());
        let lhs = deconcatenate(&f.extend_to_words(&input));
        let mut rhs = TensorPair::new();
        for ((a, b), c) in deconcatenate(&input) {
            let single = |w: &Word| {
                let mut m = WordComb::new();
                m.insert(w.clone(), c.clone());
                m
            };
            for (fa, v) in f.extend_to_words(&single(&a)) {
                add_into(&mut rhs, (fa, b.clone()), v);
            }
            let s = sign_of(f.degree() * sp.word_degree(&a));
            for (fb, v) in f.extend_to_words(&single(&b)) {
                add_into(&mut rhs, (a.clone(), fb), if s > 0 { v } else { -&v });
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
