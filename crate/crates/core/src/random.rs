//! Seeded random homogeneous elements for property tests and `selftest`.

use rand::Rng;

use crate::bar::{CoderComponents, ComapForms, Frame};
use crate::scalars::{RingElement, RingSpec};
use std::sync::Arc;

#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    /// Probability of a nonzero entry where one is allowed.
    pub density: f64,
    /// Coefficients are drawn from `-range..=range`.
    pub range: i64,
    /// Only monomials in the maximal ideal.
    pub nilpotent: bool,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { density: 0.5, range: 3, nilpotent: false }
    }
}

/// A random ring element homogeneous of `degree`, or zero if none exists.
pub fn random_ring_element<R: Rng>(ring: &Arc<RingSpec>, degree: i64, s: &Sampling, rng: &mut R) -> RingElement {
    let field = ring.base_field();
    let mut out = ring.zero();
    for m in 0..ring.monomial_count() {
        if ring.monomial_degree(m) != degree || (s.nilpotent && m == 0) {
            continue;
        }
        if rng.gen_bool(s.density) {
            let c = rng.gen_range(-s.range..=s.range);
            out = &out + &ring.monomial(m, field.from_int(c));
        }
    }
    out
}

pub fn random_coder<R: Rng>(frame: &Frame, degree: i64, s: &Sampling, rng: &mut R) -> CoderComponents {
    let sp = &frame.space;
    let mut f = CoderComponents::zero(frame, degree);
    for w in sp.words_up_to(frame.weight) {
        for o in 0..sp.dim() {
            let need = sp.word_degree(&w) + degree - sp.suspended_degree(o);
            let c = random_ring_element(&frame.ring, need, s, rng);
            f.add_entry(w.clone(), o, c);
        }
    }
    f
}

pub fn random_comap<R: Rng>(frame: &Frame, degree: i64, s: &Sampling, rng: &mut R) -> ComapForms {
    let sp = &frame.space;
    let mut i = ComapForms::zero(frame, degree);
    for n in 2..=frame.weight {
        for w in sp.words(n) {
            let need = i.required_ring_degree(&w);
            for k in 0..n - 1 {
                let c = random_ring_element(&frame.ring, need, s, rng);
                i.add_entry(k, w.clone(), c);
            }
        }
    }
    i
}
