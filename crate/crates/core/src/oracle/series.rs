//! Term-by-term gauge series and a brute-force count of first-order
//! deformations modulo gauge.

use std::collections::HashMap;

use crate::deform::cohomology::{coordinates, from_coordinates, h_basis};
use crate::deform::{h_bracket, mc_check, DeformationDatum, HDgla, HElement, Polarization};
use crate::dgla::gauge_exponential;
use crate::error::{Error, Result};
use crate::linalg::{rank_kernel_image, Matrix};
use crate::scalars::{Field, RingSpec, Scalar};

/// `Σ_{n≥0} ad(β)^n(x)/n!`, iterating the bracket until it vanishes.
pub fn iterate_ad(x: &HElement, beta: &HElement, bound: usize) -> Result<HElement> {
    let field = x.frame().space.field();
    let mut term = x.clone();
    let mut acc = x.clone();
    for n in 1.. {
        term = h_bracket(beta, &term)?;
        if term.is_zero() {
            return Ok(acc);
        }
        if n > bound {
            return Err(Error::Precondition("ad(β) is not nilpotent".into()));
        }
        acc = acc.try_add(&term.scale(&field.inv_factorial(n)?))?;
    }
    unreachable!()
}

fn dual_datum(p: &Polarization, ring: &std::sync::Arc<RingSpec>, v: &[Scalar]) -> Result<DeformationDatum> {
    let frame = p.frame().with_ring(ring);
    let alpha = from_coordinates(&frame, 1, &h_basis(&frame, 1), v, 1);
    DeformationDatum::new(p.clone(), ring.clone(), alpha)
}

/// `dim` of {MC solutions in `t·𝔥^1`} / gauge over `k[t]/t²`, by linear algebra on
/// residuals from `mc_check` and gauge images from the generic exponential.
pub fn mc_modulo_gauge_dim(p: &Polarization) -> Result<usize> {
    let field = p.frame().space.field();
    let ring = RingSpec::t_adic(field, 1, 0)?;
    let frame = p.frame().with_ring(&ring);
    let b1 = h_basis(&frame, 1);
    let b0 = h_basis(&frame, 0);
    let b2 = h_basis(&frame, 2);
    let unit = |n: usize, j: usize| {
        let mut e = vec![field.zero(); n];
        e[j] = field.one();
        e
    };
    let mut mc = Matrix::zeros(field, b2.len(), b1.len());
    for j in 0..b1.len() {
        let r = mc_check(&dual_datum(p, &ring, &unit(b1.len(), j))?)?;
        if !coordinates(&r, &b2, 0).iter().all(Scalar::is_zero) {
            return Err(Error::Consistency("residual outside the maximal ideal".into()));
        }
        for (i, c) in coordinates(&r, &b2, 1).into_iter().enumerate() {
            mc.set(i, j, c);
        }
    }
    let solutions = rank_kernel_image(&mc).kernel;
    let g = HDgla::new(&p.extend(&ring))?;
    let zero = HElement::zero(&frame, 1);
    let mut orbit = Vec::new();
    for j in 0..b0.len() {
        let beta = from_coordinates(&frame, 0, &b0, &unit(b0.len(), j), 1);
        orbit.push(coordinates(&gauge_exponential(&g, &beta, &zero)?, &b1, 1));
    }
    crate::linalg::quotient_dimension(&solutions, &orbit, b1.len(), field)
}

fn all_vectors(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    let p = field.characteristic() as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(field.from_int(c));
                    w
                })
            })
            .collect();
    }
    out
}

/// Number of gauge orbits of MC solutions in `t·𝔥^1` over `F_p[t]/t²`, by
/// enumerating every perturbation and every basis gauge move.
pub fn mc_orbit_count(p: &Polarization, max_dim: usize) -> Result<usize> {
    let field = p.frame().space.field();
    if field.characteristic() == 0 {
        return Err(Error::Precondition("exhaustive orbit count needs a finite field".into()));
    }
    let ring = RingSpec::t_adic(field, 1, 0)?;
    let frame = p.frame().with_ring(&ring);
    let b1 = h_basis(&frame, 1);
    let b0 = h_basis(&frame, 0);
    if b1.len() > max_dim {
        return Err(Error::Precondition(format!("{} perturbation coordinates exceed the limit {max_dim}", b1.len())));
    }
    let key = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>();
    let mut solutions = Vec::new();
    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    for v in all_vectors(field, b1.len()) {
        if mc_check(&dual_datum(p, &ring, &v)?)?.is_zero() {
            index.insert(key(&v), solutions.len());
            solutions.push(v);
        }
    }
    let g = HDgla::new(&p.extend(&ring))?;
    let mut parent: Vec<usize> = (0..solutions.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for j in 0..b0.len() {
        let mut e = vec![field.zero(); b0.len()];
        e[j] = field.one();
        let beta = from_coordinates(&frame, 0, &b0, &e, 1);
        for (idx, v) in solutions.iter().enumerate() {
            let alpha = dual_datum(p, &ring, v)?.perturbation;
            let moved = coordinates(&gauge_exponential(&g, &beta, &alpha)?, &b1, 1);
            let target = *index
                .get(&key(&moved))
                .ok_or_else(|| Error::Consistency("gauge moved an MC solution off the solution set".into()))?;
            let (a, b) = (find(&mut parent, idx), find(&mut parent, target));
            parent[a] = b;
        }
    }
    Ok((0..parent.len()).filter(|&x| find(&mut parent, x) == x).count())
}
