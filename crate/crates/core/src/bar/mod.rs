//! Coderivations of the bar construction and maps into the dual bicomodule,
//! both stored through their lowest components up to a truncation weight.

use std::sync::Arc;

use crate::error::{structural, Result};
use crate::graded::GradedSpace;
use crate::scalars::{same_ring, RingSpec};

pub mod coder;
pub mod comap;
pub mod insertion;
pub mod module;
pub mod morphism;

pub use coder::{coder_bracket, CoderComponents, WordComb};
pub use comap::{ComapForms, FormKey};
pub use insertion::{comap_differential, delta, enumerate_insertion_terms, InsertionTerm};

/// The common setting of every component table: the graded space `A`,
/// the coefficient ring `R` and the truncation weight `W`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub space: Arc<GradedSpace>,
    pub ring: Arc<RingSpec>,
    pub weight: usize,
}

impl PartialEq for Frame {
    fn eq(&self, o: &Frame) -> bool {
        (Arc::ptr_eq(&self.space, &o.space) || *self.space == *o.space)
            && same_ring(&self.ring, &o.ring)
            && self.weight == o.weight
    }
}

impl Frame {
    pub fn new(space: Arc<GradedSpace>, ring: Arc<RingSpec>, weight: usize) -> Frame {
        Frame { space, ring, weight }
    }

    pub fn with_ring(&self, ring: &Arc<RingSpec>) -> Frame {
        Frame { space: self.space.clone(), ring: ring.clone(), weight: self.weight }
    }

    pub fn with_weight(&self, weight: usize) -> Frame {
        Frame { space: self.space.clone(), ring: self.ring.clone(), weight }
    }

    pub fn check_same(&self, o: &Frame) -> Result<()> {
        if !(Arc::ptr_eq(&self.space, &o.space) || *self.space == *o.space) {
            return structural("operands live on different graded spaces");
        }
        if !same_ring(&self.ring, &o.ring) {
            return structural(format!(
                "operands use different coefficient rings ({} vs {})",
                self.ring.spec_string(),
                o.ring.spec_string()
            ));
        }
        if self.weight != o.weight {
            return structural(format!("truncation weights differ ({} vs {})", self.weight, o.weight));
        }
        Ok(())
    }
}
