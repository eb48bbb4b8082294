//! Formula-free evaluators used to cross-check the engines.

pub mod bicomodule;
pub mod series;

pub use bicomodule::{
    assemble_coder, assemble_comap, coleibniz_holds, compose_delta_oracle, oracle_coder_bracket, AssembledMap,
    TruncatedBicomodule,
};
pub use series::{iterate_ad, mc_modulo_gauge_dim, mc_orbit_count};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::module::Side;
    use crate::bar::{coder_bracket, delta, Frame};
    use crate::graded::GradedSpace;
    use crate::random::{random_coder, random_comap, Sampling};
    use crate::scalars::{Field, RingSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frames() -> Vec<Frame> {
        let q = Field::Rationals;
        let spaces = [
            vec![("1".to_string(), 0), ("x".to_string(), 0)],
            vec![("a".to_string(), 0), ("b".to_string(), 1)],
            vec![("a".to_string(), 0), ("b".to_string(), -1)],
        ];
        spaces
            .into_iter()
            .map(|b| Frame::new(GradedSpace::new(q, b).unwrap(), RingSpec::field(q), 4))
            .collect()
    }

    #[test]
    fn word_count_formula() {
        let sp = GradedSpace::new(Field::Rationals, vec![("e".into(), 0)]).unwrap();
        let fr = Frame::new(sp, RingSpec::field(Field::Rationals), 3);
        assert_eq!(TruncatedBicomodule::new(&fr, Side::Algebra, 3).dim(), 1 + 2 + 3);
        let f = crate::bar::CoderComponents::zero(&fr, 0);
        assert!(assemble_coder(&f, Side::Dual, 3).is_zero());
    }

    #[test]
    fn delta_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = Sampling::default();
        let mut nonzero = 0;
        for fr in frames() {
            for fd in -2..=1 {
                for id in -1..=1 {
                    let f = random_coder(&fr, fd, &s, &mut rng);
                    let i = random_comap(&fr, id, &s, &mut rng);
                    let d = delta(&f, &i).unwrap();
                    nonzero += usize::from(!d.is_zero());
                    assert_eq!(d, compose_delta_oracle(&f, &i).unwrap(), "degrees {fd} {id}");
                }
            }
        }
        assert!(nonzero > 12, "only {nonzero} nonzero");
    }

    #[test]
    fn delta_is_a_lie_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = Sampling::default();
        for fr in frames() {
            for (a, b, c) in [(-1, -1, 0), (0, -1, 1), (1, 0, 0), (-2, 1, -1), (0, 0, 0)] {
                let f = random_coder(&fr, a, &s, &mut rng);
                let g = random_coder(&fr, b, &s, &mut rng);
                let i = random_comap(&fr, c, &s, &mut rng);
                let lhs = delta(&f, &delta(&g, &i).unwrap()).unwrap();
                let rhs = delta(&g, &delta(&f, &i).unwrap()).unwrap();
                let sign = crate::graded::sign_of(a * b);
                let lhs = if sign > 0 { lhs.sub(&rhs) } else { lhs.add(&rhs) };
                assert_eq!(lhs, delta(&coder_bracket(&f, &g).unwrap(), &i).unwrap(), "degrees {a} {b} {c}");
            }
        }
    }

    #[test]
    fn bracket_matches_oracle_and_coleibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = Sampling::default();
        for fr in frames() {
            for (a, b) in [(-1, -1), (0, -1), (1, 0), (-2, 1)] {
                let f = random_coder(&fr, a, &s, &mut rng);
                let g = random_coder(&fr, b, &s, &mut rng);
                assert_eq!(coder_bracket(&f, &g).unwrap(), oracle_coder_bracket(&f, &g).unwrap());
                assert!(coleibniz_holds(&f));
            }
        }
    }

    #[test]
    fn tangent_dimension_matches_orbit_counts() {
        use crate::deform::tangent_space;
        use crate::samples::{dual_numbers, unit_algebra};
        let f3 = Field::prime(3).unwrap();
        for w in [2, 3] {
            for (p, p3) in [(unit_algebra(Field::Rationals, w), unit_algebra(f3, w)), (dual_numbers(Field::Rationals, w), dual_numbers(f3, w))] {
                let h1 = tangent_space(&p, &[1]).unwrap().degrees[0].dim;
                assert_eq!(mc_modulo_gauge_dim(&p).unwrap(), h1);
                if let Ok(count) = mc_orbit_count(&p3, 8) {
                    assert_eq!(count, 3usize.pow(h1 as u32));
                }
            }
        }
    }

    #[test]
    fn iterated_ad_matches_closed_formula() {
        use crate::deform::{gauge_act_h, HElement};
        use crate::samples::dual_numbers;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = Sampling { nilpotent: true, ..Sampling::default() };
        let ring = RingSpec::t_adic(Field::Rationals, 3, 0).unwrap();
        let p = dual_numbers(Field::Rationals, 3);
        let frame = p.frame().with_ring(&ring);
        for _ in 0..3 {
            let beta = HElement::new(random_coder(&frame, 0, &s, &mut rng), random_comap(&frame, 1, &s, &mut rng), 0).unwrap();
            let (datum, _) = gauge_act_h(&p, &ring, &beta).unwrap();
            let it = iterate_ad(&p.extend(&ring).as_element(), &beta, 8).unwrap();
            assert_eq!(datum.deformed().unwrap().as_element(), it);
        }
    }
}
