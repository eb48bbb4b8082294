//! The generic deformation contract of a dg Lie algebra over an Artin ring:
//! Maurer–Cartan residual and gauge action, written once for every instance.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

pub mod triangular;

pub use triangular::{matrix_exp_triangular, matrix_gauge_conjugate, GMatrix, TriangularDgla, TriangularElement};

/// A dg Lie algebra tensored with an Artin ring.
pub trait DgLa {
    type Elem: Clone + PartialEq + Debug;

    fn field(&self) -> Field;
    fn zero(&self, degree: i64) -> Self::Elem;
    fn degree(&self, x: &Self::Elem) -> i64;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn differential(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// All coefficients lie in the maximal ideal.
    fn in_maximal_ideal(&self, x: &Self::Elem) -> bool;
    /// Products of this many maximal-ideal elements vanish.
    fn nilpotency(&self) -> usize;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        let m = self.scale(y, &-&self.field().one());
        self.add(x, &m)
    }
}

fn expect_degree<G: DgLa>(g: &G, x: &G::Elem, d: i64, what: &str) -> Result<()> {
    if g.degree(x) != d {
        return Err(Error::Structural(format!("{what} must have degree {d}, got {}", g.degree(x))));
    }
    Ok(())
}

/// `dα + ½[α, α]`.
pub fn mc_residual<G: DgLa>(g: &G, alpha: &G::Elem) -> Result<G::Elem> {
    expect_degree(g, alpha, 1, "Maurer-Cartan element")?;
    if !g.in_maximal_ideal(alpha) {
        return Err(Error::Precondition("Maurer-Cartan element has coefficients outside the maximal ideal".into()));
    }
    let half = g.field().ratio(1, 2)?;
    let sq = g.bracket(alpha, alpha)?;
    g.add(&g.differential(alpha)?, &g.scale(&sq, &half))
}

/// `β·α = [β, α] − dβ`.
pub fn gauge_infinitesimal<G: DgLa>(g: &G, beta: &G::Elem, alpha: &G::Elem) -> Result<G::Elem> {
    expect_degree(g, beta, 0, "gauge generator")?;
    expect_degree(g, alpha, 1, "gauged element")?;
    g.sub(&g.bracket(beta, alpha)?, &g.differential(beta)?)
}

/// `e^β·α = α + Σ_{n≥1} ad(β)^{n−1}(β·α)/n!`, a finite sum by nilpotency.
pub fn gauge_exponential<G: DgLa>(g: &G, beta: &G::Elem, alpha: &G::Elem) -> Result<G::Elem> {
    if !g.in_maximal_ideal(beta) {
        return Err(Error::Structural("gauge generator has coefficients outside the maximal ideal".into()));
    }
    let mut term = gauge_infinitesimal(g, beta, alpha)?;
    let mut acc = alpha.clone();
    let mut n = 1usize;
    while !g.is_zero(&term) {
        if n > g.nilpotency() + 1 {
            return Err(Error::Structural("gauge series does not terminate".into()));
        }
        acc = g.add(&acc, &g.scale(&term, &g.field().inv_factorial(n)?))?;
        term = g.bracket(beta, &term)?;
        n += 1;
    }
    Ok(acc)
}
