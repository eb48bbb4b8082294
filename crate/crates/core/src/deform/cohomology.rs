//! Cohomology of the weight-truncated complex `(𝔥_{≤W}, [P, −])` and the
//! cyclic subcomplex `{f : δ_f(I) = 0}`.

use std::fmt;

use super::{HDgla, HElement, Polarization};
use crate::bar::{delta, CoderComponents, ComapForms, Frame};
use crate::dgla::DgLa;
use crate::error::{structural, Result};
use crate::graded::Word;
use crate::linalg::{complement_basis, quotient_dimension, rank_kernel_image, Matrix};
use crate::scalars::{RingKind, Scalar};

/// A basis vector of `𝔥^n` over the residue field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HBasis {
    Coder(Word, usize),
    Form(usize, Word),
}

/// Basis of the coderivation part of `𝔥^n`, i.e. entries of degree `−n`.
pub fn coder_basis(frame: &Frame, n: i64) -> Vec<HBasis> {
    let sp = &frame.space;
    let mut out = Vec::new();
    for w in sp.words_up_to(frame.weight) {
        for o in 0..sp.dim() {
            if sp.suspended_degree(o) == sp.word_degree(&w) - n {
                out.push(HBasis::Coder(w.clone(), o));
            }
        }
    }
    out
}

/// Basis of `𝔥^n`: coderivation entries, then forms of degree `1 − n`.
pub fn h_basis(frame: &Frame, n: i64) -> Vec<HBasis> {
    let sp = &frame.space;
    let mut out = coder_basis(frame, n);
    for len in 2..=frame.weight {
        for k in 0..len - 1 {
            for w in sp.words(len) {
                if sp.word_degree(&w) + (1 - n) - 2 == 0 {
                    out.push(HBasis::Form(k, w));
                }
            }
        }
    }
    out
}

/// `Σ_j v_j b_j` with `v_j` placed on ring monomial `m`.
pub fn from_coordinates(frame: &Frame, n: i64, basis: &[HBasis], v: &[Scalar], m: usize) -> HElement {
    let mut f = CoderComponents::zero(frame, -n);
    let mut i = ComapForms::zero(frame, 1 - n);
    for (b, c) in basis.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let c = frame.ring.monomial(m, c.clone());
        match b {
            HBasis::Coder(w, o) => f.add_entry(w.clone(), *o, c),
            HBasis::Form(k, w) => i.add_entry(*k, w.clone(), c),
        }
    }
    HElement::new(f, i, n).expect("basis respects degrees")
}

/// Coefficients of ring monomial `m` of `x` along `basis`.
pub fn coordinates(x: &HElement, basis: &[HBasis], m: usize) -> Vec<Scalar> {
    basis
        .iter()
        .map(|b| match b {
            HBasis::Coder(w, o) => x.f.entry(w, *o).coeff(m).clone(),
            HBasis::Form(k, w) => x.i.entry(*k, w).coeff(m).clone(),
        })
        .collect()
}

/// Matrix of `d: 𝔥^n → 𝔥^{n+1}` on the truncated bases.
pub fn differential_matrix(g: &HDgla, n: i64) -> Result<Matrix> {
    let frame = g.frame();
    let field = frame.space.field();
    let src = h_basis(frame, n);
    let dst = h_basis(frame, n + 1);
    let mut m = Matrix::zeros(field, dst.len(), src.len());
    for j in 0..src.len() {
        let mut e = vec![field.zero(); src.len()];
        e[j] = field.one();
        let dx = g.differential(&from_coordinates(frame, n, &src, &e, 0))?;
        for (r, c) in coordinates(&dx, &dst, 0).into_iter().enumerate() {
            m.set(r, j, c);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentDegree {
    pub degree: i64,
    pub dim: usize,
    pub cochains: usize,
    pub representatives: Vec<HElement>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentReport {
    pub weight: usize,
    pub degrees: Vec<TangentDegree>,
}

impl fmt::Display for TangentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.degrees {
            writeln!(f, "H^{} (weight ≤ {}): dim {} ({} cochains)", d.degree, self.weight, d.dim, d.cochains)?;
        }
        Ok(())
    }
}

/// `dim H^n` of `(𝔥_{≤W}, [P, −])` for each requested `n`, with cocycle representatives.
pub fn tangent_space(p: &Polarization, degrees: &[i64]) -> Result<TangentReport> {
    if !matches!(p.frame().ring.kind(), RingKind::Field) {
        return structural("tangent space is computed over the residue field");
    }
    let g = HDgla::new(p)?;
    let frame = g.frame().clone();
    let field = frame.space.field();
    let mut out = Vec::new();
    for &n in degrees {
        let basis = h_basis(&frame, n);
        let d_out = rank_kernel_image(&differential_matrix(&g, n)?);
        let d_in = rank_kernel_image(&differential_matrix(&g, n - 1)?);
        let dim = quotient_dimension(&d_out.kernel, &d_in.image, basis.len(), field)?;
        let reps = complement_basis(&d_out.kernel, &d_in.image, basis.len(), field)
            .iter()
            .map(|v| from_coordinates(&frame, n, &basis, v, 0))
            .collect();
        out.push(TangentDegree { degree: n, dim, cochains: basis.len(), representatives: reps });
    }
    Ok(TangentReport { weight: frame.weight, degrees: out })
}

/// `δ_f(I) = 0` up to the truncation weight.
pub fn cyclic_check(f: &CoderComponents, i: &ComapForms) -> Result<bool> {
    Ok(delta(f, i)?.is_zero())
}

/// A basis of the cyclic coderivations of degree `degree`.
pub fn cyclic_subspace(i: &ComapForms, degree: i64) -> Result<Vec<CoderComponents>> {
    let frame = i.frame();
    let field = frame.space.field();
    let n = -degree;
    let src = coder_basis(frame, n);
    let dst = h_basis(frame, n + 1);
    let mut m = Matrix::zeros(field, dst.len(), src.len());
    for j in 0..src.len() {
        let mut e = vec![field.zero(); src.len()];
        e[j] = field.one();
        let x = from_coordinates(frame, n, &src, &e, 0);
        let y = HElement::new(CoderComponents::zero(frame, -n - 1), delta(&x.f, i)?, n + 1)?;
        for (r, c) in coordinates(&y, &dst, 0).into_iter().enumerate() {
            m.set(r, j, c);
        }
    }
    Ok(rank_kernel_image(&m).kernel.iter().map(|v| from_coordinates(frame, n, &src, v, 0).f).collect())
}

/// `f ↦ (f, 0)`, defined on cyclic `f`.
pub fn include_cyclic(f: &CoderComponents, i: &ComapForms) -> Result<HElement> {
    if !cyclic_check(f, i)? {
        return structural("coderivation is not cyclic for the given inner product");
    }
    HElement::new(f.clone(), ComapForms::zero(f.frame(), 1 + f.degree()), -f.degree())
}

/// `(f, i) ↦ f`.
pub fn project_coder(x: &HElement) -> CoderComponents {
    x.f.clone()
}
