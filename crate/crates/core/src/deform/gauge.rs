//! Gauge action of `(𝔥 ⊗ m)^0` on the trivial extension and the explicit
//! trivialization `λ^{-1} = e^f`, `ρ = −Σ_l (δ_f)^l(i)/(l+1)!`.

use std::fmt;
use std::sync::Arc;

use super::{coder_failure, comap_failure, require_even_ring, DeformationDatum, Failure, HElement, Polarization};
use crate::bar::morphism::AInfMorphism;
use crate::bar::{coder_bracket, delta, CoderComponents, ComapForms};
use crate::error::{structural, Error, Result};
use crate::linalg::Matrix;
use crate::scalars::RingSpec;

/// An automorphism `λ` of `T(A ⊗ R)` and a homotopy `ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivializationWitness {
    pub lambda: AInfMorphism,
    pub rho: ComapForms,
}

/// `ad(f)^k(x)` for `k = 0, 1, ...` until it vanishes.
fn ad_powers(f: &CoderComponents, x: &CoderComponents, bound: usize) -> Result<Vec<CoderComponents>> {
    let mut out = vec![x.clone()];
    loop {
        let next = coder_bracket(f, out.last().expect("nonempty"))?;
        if next.is_zero() {
            return Ok(out);
        }
        if out.len() > bound {
            return Err(Error::Precondition("ad(f) is not nilpotent".into()));
        }
        out.push(next);
    }
}

/// `(δ_f)^l(x)` for `l = 0, 1, ...` until it vanishes.
fn delta_powers(f: &CoderComponents, x: &ComapForms, bound: usize) -> Result<Vec<ComapForms>> {
    let mut out = vec![x.clone()];
    loop {
        let next = delta(f, out.last().expect("nonempty"))?;
        if next.is_zero() {
            return Ok(out);
        }
        if out.len() > bound {
            return Err(Error::Precondition("δ_f is not nilpotent".into()));
        }
        out.push(next);
    }
}

/// `e^{ad(f,i)}·(D_R, I_R)` by the closed formula
/// `ad(f,i)^n(D_R,I_R) = (ad(f)^n D_R, δ_f^n I_R − Σ_{k+l=n−1} n!/(k!(l+1)!) δ_{ad(f)^k D_R} δ_f^l(i))`,
/// together with the witness of its triviality.
pub fn gauge_act_h(p: &Polarization, ring: &Arc<RingSpec>, beta: &HElement) -> Result<(DeformationDatum, TrivializationWitness)> {
    require_even_ring(ring)?;
    if beta.degree() != 0 {
        return structural(format!("gauge generator must lie in h-degree 0, got {}", beta.degree()));
    }
    if !beta.in_maximal_ideal() {
        return Err(Error::Precondition("gauge generator has coefficients outside the maximal ideal".into()));
    }
    let base = p.extend(ring);
    base.frame().check_same(beta.frame())?;
    let field = ring.base_field();
    let bound = ring.nilpotency_index() + base.frame().weight + 1;
    let (f, i) = (&beta.f, &beta.i);

    let ad = ad_powers(f, &base.d, bound)?;
    let di_big = delta_powers(f, &base.i, bound)?;
    let di = delta_powers(f, i, bound)?;

    let mut d_new = CoderComponents::zero(base.frame(), -1);
    for (n, x) in ad.iter().enumerate() {
        d_new = d_new.try_add(&x.scale(&field.inv_factorial(n)?))?;
    }
    let mut i_new = ComapForms::zero(base.frame(), 0);
    for (n, x) in di_big.iter().enumerate() {
        i_new = i_new.try_add(&x.scale(&field.inv_factorial(n)?))?;
    }
    // Σ_n 1/n! Σ_{k+l=n−1} n!/(k!(l+1)!) δ_{ad^k}(δ^l i) = Σ_{k,l} δ_{ad^k}(δ^l i)/(k!(l+1)!)
    for (k, adk) in ad.iter().enumerate() {
        for (l, dil) in di.iter().enumerate() {
            let c = &field.inv_factorial(k)? * &field.inv_factorial(l + 1)?;
            i_new = i_new.try_add(&delta(adk, dil)?.scale(&-&c))?;
        }
    }

    let lambda = AInfMorphism::exp_coder(f, -1)?;
    let mut rho = ComapForms::zero(base.frame(), 1);
    for (l, dil) in di.iter().enumerate() {
        rho = rho.try_add(&dil.scale(&-&field.inv_factorial(l + 1)?))?;
    }
    let perturbation = HElement::new(d_new.try_add(&base.d.neg())?, i_new.try_add(&base.i.neg())?, 1)?;
    let datum = DeformationDatum::new(p.clone(), ring.clone(), perturbation)?;
    Ok((datum, TrivializationWitness { lambda, rho }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub condition_i: bool,
    pub condition_ii: bool,
    pub defect_i: Option<Failure>,
    pub defect_ii: Option<Failure>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |ok: bool, d: &Option<Failure>| match (ok, d) {
            (true, _) => "holds".to_string(),
            (false, Some(x)) => format!("fails at {} ({})", x.location, x.detail),
            (false, None) => "fails".to_string(),
        };
        write!(
            f,
            "(i) λ∘D' = D_R∘λ: {}; (ii) I' − λ̃(I_R)^λ λ̄ = δ_D'(ρ): {}",
            show(self.condition_i, &self.defect_i),
            show(self.condition_ii, &self.defect_ii)
        )
    }
}

fn require_invertible(lambda: &AInfMorphism) -> Result<()> {
    let frame = lambda.frame();
    let n = frame.space.dim();
    let field = frame.space.field();
    let mut m = Matrix::zeros(field, n, n);
    for (w, o, c) in lambda.components().entries() {
        if w.len() == 1 {
            m.set(o, w[0], c.constant_term().clone());
        }
    }
    if m.rank() != n {
        return Err(Error::Precondition("λ_1 is not invertible".into()));
    }
    Ok(())
}

/// Checks `λ∘D' = D_R∘λ` and `I' − λ̃ (I_R)^λ λ̄ = D'^{A*}∘ρ + ρ∘D'^{A}` up to the weight.
pub fn check_trivial_equivalence(datum: &DeformationDatum, w: &TrivializationWitness) -> Result<EquivalenceReport> {
    require_invertible(&w.lambda)?;
    let base = datum.extended_base();
    let new = datum.deformed()?;
    let lhs = w.lambda.after_coder(&new.d)?;
    let rhs = w.lambda.before_coder(&base.d)?;
    let defect_i = coder_failure(&lhs.try_add(&rhs.neg())?);
    let pulled = w.lambda.sandwich(&w.lambda.induce_comap(&base.i)?)?;
    let homotopy = delta(&new.d, &w.rho)?;
    let defect_ii = comap_failure(&new.i.try_add(&pulled.neg())?.try_add(&homotopy.neg())?);
    Ok(EquivalenceReport { condition_i: defect_i.is_none(), condition_ii: defect_ii.is_none(), defect_i, defect_ii })
}
