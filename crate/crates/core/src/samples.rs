//! Small Frobenius algebras concentrated in degree 0, built in code.

use std::sync::Arc;

use crate::bar::{CoderComponents, ComapForms, Frame};
use crate::deform::{HElement, Polarization};
use crate::error::Result;
use crate::graded::GradedSpace;
use crate::scalars::{Field, RingSpec};

/// `D_2(a, b) = ab` and `I_{0,0}(a, b) = ⟨a, b⟩` from structure constants.
pub fn frobenius(
    field: Field,
    names: &[&str],
    weight: usize,
    product: &[((usize, usize), usize, i64)],
    pairing: &[((usize, usize), i64)],
) -> Result<Polarization> {
    let space = GradedSpace::new(field, names.iter().map(|n| (n.to_string(), 0)).collect())?;
    let ring = RingSpec::field(field);
    let frame = Frame::new(space, ring.clone(), weight);
    let mut d = CoderComponents::zero(&frame, -1);
    for &((a, b), o, c) in product {
        d.set(vec![a, b], o, ring.from_int(c))?;
    }
    let mut i = ComapForms::zero(&frame, 0);
    for &((a, b), c) in pairing {
        i.set(0, vec![a, b], ring.from_int(c))?;
    }
    Polarization::new(d, i)
}

/// `span{e}` with `e·e = e` and `⟨e, e⟩ = 1`.
pub fn unit_algebra(field: Field, weight: usize) -> Polarization {
    frobenius(field, &["e"], weight, &[((0, 0), 0, 1)], &[((0, 0), 1)]).expect("valid")
}

/// `k[x]/x²` on `{1, x}` with `ε(1) = 0`, `ε(x) = 1`.
pub fn dual_numbers(field: Field, weight: usize) -> Polarization {
    frobenius(
        field,
        &["1", "x"],
        weight,
        &[((0, 0), 0, 1), ((0, 1), 1, 1), ((1, 0), 1, 1)],
        &[((0, 1), 1), ((1, 0), 1)],
    )
    .expect("valid")
}

/// 2×2 matrices on `{e11, e12, e21, e22}` with `⟨a, b⟩ = tr(ab)`.
pub fn matrices(field: Field, weight: usize) -> Polarization {
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut product = Vec::new();
    let mut pairing = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                product.push(((idx(i, j), idx(j, k)), idx(i, k), 1));
            }
            pairing.push(((idx(i, j), idx(j, i)), 1));
        }
    }
    frobenius(field, &["e11", "e12", "e21", "e22"], weight, &product, &pairing).expect("valid")
}

/// The perturbation `f_2(x, x) = t·1` of `k[x]/x²` over `ring`.
pub fn fix_def_perturbation(p: &Polarization, ring: &Arc<RingSpec>) -> Result<HElement> {
    let frame = p.frame().with_ring(ring);
    let mut f = CoderComponents::zero(&frame, -1);
    f.set(vec![1, 1], 0, ring.parse_element("t")?)?;
    HElement::new(f, ComapForms::zero(&frame, 0), 1)
}

/// `span{e, u}` with `e` a unit in degree 0, `u` in degree −1, `u·u = 0` and `⟨e, e⟩ = 1`.
/// The suspension puts a sign on `D_2(u, e)`.
pub fn graded_unit(field: Field, weight: usize) -> Polarization {
    let space = GradedSpace::new(field, vec![("e".into(), 0), ("u".into(), -1)]).expect("valid");
    let ring = RingSpec::field(field);
    let frame = Frame::new(space, ring.clone(), weight);
    let mut d = CoderComponents::zero(&frame, -1);
    d.set(vec![0, 0], 0, ring.one()).expect("valid");
    d.set(vec![0, 1], 1, ring.one()).expect("valid");
    d.set(vec![1, 0], 1, ring.from_int(-1)).expect("valid");
    let mut i = ComapForms::zero(&frame, 0);
    i.set(0, vec![0, 0], ring.one()).expect("valid");
    Polarization::new(d, i).expect("valid")
}
