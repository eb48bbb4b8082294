//! The dgLa `𝔥 = Coder(TA) ⊕ Comap(T^A A, T^{A*} A)` with
//! `𝔥^n = Coder^{−n} ⊕ Comap^{1−n}`, its bracket and the differential `[P, −]`.

use std::fmt;
use std::sync::Arc;

use crate::bar::{coder_bracket, delta, CoderComponents, ComapForms, Frame};
use crate::dgla::{mc_residual, DgLa};
use crate::error::{structural, Error, Result};
use crate::graded::sign_of;
use crate::scalars::{Field, RingSpec, Scalar};

pub mod cohomology;
pub mod gauge;

pub use cohomology::{cyclic_check, cyclic_subspace, include_cyclic, project_coder, tangent_space, TangentReport};
pub use gauge::{check_trivial_equivalence, gauge_act_h, EquivalenceReport, TrivializationWitness};

/// `(f, i)` of h-degree `n`: `f` of degree `−n`, `i` of degree `1 − n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HElement {
    pub f: CoderComponents,
    pub i: ComapForms,
    degree: i64,
}

impl HElement {
    pub fn new(f: CoderComponents, i: ComapForms, degree: i64) -> Result<HElement> {
        f.frame().check_same(i.frame())?;
        if !f.is_zero() && f.degree() != -degree {
            return structural(format!("coderivation of degree {} in h-degree {degree}", f.degree()));
        }
        if !i.is_zero() && i.degree() != 1 - degree {
            return structural(format!("comap of degree {} in h-degree {degree}", i.degree()));
        }
        let f = if f.is_zero() { CoderComponents::zero(f.frame(), -degree) } else { f };
        let i = if i.is_zero() { ComapForms::zero(i.frame(), 1 - degree) } else { i };
        Ok(HElement { f, i, degree })
    }

    pub fn zero(frame: &Frame, degree: i64) -> HElement {
        HElement { f: CoderComponents::zero(frame, -degree), i: ComapForms::zero(frame, 1 - degree), degree }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn frame(&self) -> &Frame {
        self.f.frame()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.i.is_zero()
    }

    pub fn try_add(&self, o: &HElement) -> Result<HElement> {
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return structural(format!("adding h-degrees {} and {}", self.degree, o.degree));
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        HElement::new(self.f.try_add(&o.f)?, self.i.try_add(&o.i)?, degree)
    }

    pub fn add(&self, o: &HElement) -> HElement {
        self.try_add(o).expect("incompatible h-elements")
    }

    pub fn sub(&self, o: &HElement) -> HElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HElement {
        HElement { f: self.f.neg(), i: self.i.neg(), degree: self.degree }
    }

    pub fn scale(&self, c: &Scalar) -> HElement {
        HElement { f: self.f.scale(c), i: self.i.scale(c), degree: self.degree }
    }

    pub fn in_maximal_ideal(&self) -> bool {
        self.f.entries().all(|(_, _, c)| c.in_maximal_ideal()) && self.i.entries().all(|(_, c)| c.in_maximal_ideal())
    }

    pub fn transport(&self, frame: &Frame) -> HElement {
        HElement { f: self.f.transport(frame), i: self.i.transport(frame), degree: self.degree }
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = &self.frame().space;
        writeln!(out, "h-degree {}", self.degree)?;
        for (w, o, c) in self.f.entries() {
            writeln!(out, "  f({}) -> {}: {c}", sp.render_word(w), sp.name(o))?;
        }
        for ((k, w), c) in self.i.entries() {
            writeln!(out, "  i{}: {c}", self.i.render_key(*k, w))?;
        }
        Ok(())
    }
}

/// `[(f,i),(g,j)] = ([f,g], δ_f(j) − (−1)^{|f||g|} δ_g(i))`.
pub fn h_bracket(x: &HElement, y: &HElement) -> Result<HElement> {
    let f = coder_bracket(&x.f, &y.f)?;
    let a = delta(&x.f, &y.i)?;
    let b = delta(&y.f, &x.i)?;
    let i = if sign_of(x.f.degree() * y.f.degree()) > 0 { a.try_add(&b.neg())? } else { a.try_add(&b)? };
    HElement::new(f, i, x.degree + y.degree)
}

pub(crate) fn require_even_ring(ring: &RingSpec) -> Result<()> {
    if !ring.is_evenly_graded() {
        return structural(format!(
            "coefficient ring {} has odd-degree generators; only evenly graded rings are supported here",
            ring.spec_string()
        ));
    }
    Ok(())
}

/// An A-infinity structure `D` (degree −1) with an inner product `I` (degree 0).
#[derive(Clone, Debug, PartialEq)]
pub struct Polarization {
    pub d: CoderComponents,
    pub i: ComapForms,
}

impl Polarization {
    pub fn new(d: CoderComponents, i: ComapForms) -> Result<Polarization> {
        let p = HElement::new(d, i, 1)?;
        Ok(Polarization { d: p.f, i: p.i })
    }

    pub fn frame(&self) -> &Frame {
        self.d.frame()
    }

    pub fn as_element(&self) -> HElement {
        HElement { f: self.d.clone(), i: self.i.clone(), degree: 1 }
    }

    pub fn check(&self) -> Result<PolarizationReport> {
        check_polarization(&self.d, Some(&self.i))
    }

    /// `(D_R, I_R)`: the same tables with coefficients in `R`.
    pub fn extend(&self, ring: &Arc<RingSpec>) -> Polarization {
        let frame = self.frame().with_ring(ring);
        Polarization { d: self.d.transport(&frame), i: self.i.transport(&frame) }
    }
}

/// The first nonzero component of a defect, for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub location: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationReport {
    pub is_ainf: bool,
    /// `None` when no inner product was supplied.
    pub is_inner: Option<bool>,
    pub ainf_failure: Option<Failure>,
    pub inner_failure: Option<Failure>,
}

impl PolarizationReport {
    pub fn holds(&self) -> bool {
        self.is_ainf && self.is_inner != Some(false)
    }
}

impl fmt::Display for PolarizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ainf_failure {
            None => write!(f, "A∞: ok")?,
            Some(x) => write!(f, "A∞: fails at {} ({})", x.location, x.detail)?,
        }
        match (&self.is_inner, &self.inner_failure) {
            (None, _) => write!(f, "; inner product: absent, skipped"),
            (Some(true), _) => write!(f, "; inner product: ok"),
            (Some(false), Some(x)) => write!(f, "; inner product: fails at {} ({})", x.location, x.detail),
            (Some(false), None) => write!(f, "; inner product: fails"),
        }
    }
}

pub(crate) fn coder_failure(c: &CoderComponents) -> Option<Failure> {
    let k = c.first_nonzero_arity()?;
    let sp = &c.frame().space;
    let (w, o, v) = c.entries().find(|(w, _, _)| w.len() == k)?;
    Some(Failure { location: format!("arity {k}"), detail: format!("({}) -> {}: {v}", sp.render_word(w), sp.name(o)) })
}

pub(crate) fn comap_failure(i: &ComapForms) -> Option<Failure> {
    let ((k, w), v) = i.entries().min_by_key(|((k, w), _)| (w.len(), *k))?;
    let l = w.len() - k - 2;
    Some(Failure { location: format!("(k,l)=({k},{l})"), detail: format!("{} = {v}", i.render_key(*k, w)) })
}

/// `[D, D] = 0` and, when `I` is given, `δ_D(I) = 0`, each up to the truncation weight.
pub fn check_polarization(d: &CoderComponents, i: Option<&ComapForms>) -> Result<PolarizationReport> {
    if d.degree() != -1 {
        return structural(format!("A-infinity structure must have degree -1, got {}", d.degree()));
    }
    let sq = coder_bracket(d, d)?;
    let ainf_failure = coder_failure(&sq);
    let (is_inner, inner_failure) = match i {
        None => (None, None),
        Some(i) => {
            if i.degree() != 0 {
                return structural(format!("inner product must have degree 0, got {}", i.degree()));
            }
            let fail = comap_failure(&delta(d, i)?);
            (Some(fail.is_none()), fail)
        }
    };
    Ok(PolarizationReport { is_ainf: ainf_failure.is_none(), is_inner, ainf_failure, inner_failure })
}

/// `𝔥 ⊗ R` with differential `[P_R, −]`.
#[derive(Clone, Debug)]
pub struct HDgla {
    pub p: HElement,
}

impl HDgla {
    /// Checks `[P, P] = 0`.
    pub fn new(p: &Polarization) -> Result<HDgla> {
        require_even_ring(&p.frame().ring)?;
        if !p.check()?.holds() {
            return Err(Error::Precondition(format!("not a polarization: {}", p.check()?)));
        }
        Ok(HDgla { p: p.as_element() })
    }

    pub fn frame(&self) -> &Frame {
        self.p.frame()
    }
}

impl DgLa for HDgla {
    type Elem = HElement;

    fn field(&self) -> Field {
        self.frame().space.field()
    }

    fn zero(&self, degree: i64) -> HElement {
        HElement::zero(self.frame(), degree)
    }

    fn degree(&self, x: &HElement) -> i64 {
        x.degree
    }

    fn add(&self, x: &HElement, y: &HElement) -> Result<HElement> {
        x.try_add(y)
    }

    fn scale(&self, x: &HElement, c: &Scalar) -> HElement {
        x.scale(c)
    }

    fn bracket(&self, x: &HElement, y: &HElement) -> Result<HElement> {
        h_bracket(x, y)
    }

    fn differential(&self, x: &HElement) -> Result<HElement> {
        h_bracket(&self.p, x)
    }

    fn is_zero(&self, x: &HElement) -> bool {
        x.is_zero()
    }

    fn in_maximal_ideal(&self, x: &HElement) -> bool {
        x.in_maximal_ideal()
    }

    fn nilpotency(&self) -> usize {
        self.frame().ring.nilpotency_index()
    }
}

/// `d(x) = [P, x]` for a polarization `P` over the ring of `x`.
pub fn h_differential(p: &Polarization, x: &HElement) -> Result<HElement> {
    HDgla::new(p)?.differential(x)
}

/// A base pair over the residue field, a ring `R` and a perturbation in `(𝔥 ⊗ m)^1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationDatum {
    pub base: Polarization,
    pub ring: Arc<RingSpec>,
    pub perturbation: HElement,
}

impl DeformationDatum {
    pub fn new(base: Polarization, ring: Arc<RingSpec>, perturbation: HElement) -> Result<DeformationDatum> {
        require_even_ring(&ring)?;
        base.frame().check_same(&perturbation.frame().with_ring(&base.frame().ring))?;
        if *perturbation.frame().ring != *ring {
            return structural("perturbation is not over the declared ring");
        }
        if perturbation.degree() != 1 {
            return structural(format!("perturbation must lie in h-degree 1, got {}", perturbation.degree()));
        }
        if !perturbation.in_maximal_ideal() {
            return Err(Error::Precondition("perturbation has coefficients outside the maximal ideal".into()));
        }
        Ok(DeformationDatum { base, ring, perturbation })
    }

    pub fn frame(&self) -> Frame {
        self.base.frame().with_ring(&self.ring)
    }

    /// `(D_R, I_R)`.
    pub fn extended_base(&self) -> Polarization {
        self.base.extend(&self.ring)
    }

    /// `(D_R + f, I_R + i)`.
    pub fn deformed(&self) -> Result<Polarization> {
        let b = self.extended_base();
        Polarization::new(b.d.try_add(&self.perturbation.f)?, b.i.try_add(&self.perturbation.i)?)
    }
}

/// `(D_R, I_R)` with zero perturbation.
pub fn extend_trivially(p: &Polarization, ring: &Arc<RingSpec>) -> Result<DeformationDatum> {
    let frame = p.frame().with_ring(ring);
    DeformationDatum::new(p.clone(), ring.clone(), HElement::zero(&frame, 1))
}

/// `dα + ½[α, α]` for the perturbation `α`.
pub fn mc_check(datum: &DeformationDatum) -> Result<HElement> {
    let g = HDgla::new(&datum.extended_base())?;
    mc_residual(&g, &datum.perturbation)
}
