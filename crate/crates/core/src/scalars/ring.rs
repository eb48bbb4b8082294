use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Scalar};
use crate::error::{structural, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// The residue field itself; the maximal ideal is zero.
    Field,
    /// k[t]/t^{order+1}, with `t` in degree `degree`.
    TAdic { generator: String, order: usize, degree: i64 },
    /// k[t_1..t_r]/(t_i t_j).
    SquareZero { generators: Vec<(String, i64)> },
}

/// A graded Artin local ring with residue field `field`.
///
/// Monomials are numbered densely: index 0 is the unit, then `t^a` at index
/// `a` for the t-adic ring, or `t_j` at index `j + 1` for the square-zero ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    field: Field,
    kind: RingKind,
}

impl RingSpec {
    pub fn field(field: Field) -> Arc<RingSpec> {
        Arc::new(RingSpec { field, kind: RingKind::Field })
    }

    pub fn t_adic(field: Field, order: usize, degree: i64) -> Result<Arc<RingSpec>> {
        Self::t_adic_named(field, "t", order, degree)
    }

    pub fn t_adic_named(field: Field, generator: &str, order: usize, degree: i64) -> Result<Arc<RingSpec>> {
        if order == 0 {
            return structural("t-adic ring needs order >= 1");
        }
        if degree % 2 != 0 && order >= 2 {
            // graded commutativity forces t^2 = -t^2, i.e. t^2 = 0 in char != 2
            return structural("an odd-degree generator must square to zero; use order 1");
        }
        Ok(Arc::new(RingSpec {
            field,
            kind: RingKind::TAdic { generator: generator.to_string(), order, degree },
        }))
    }

    pub fn square_zero(field: Field, generators: Vec<(String, i64)>) -> Result<Arc<RingSpec>> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, _) in &generators {
            if !seen.insert(name.clone()) || !valid_generator_name(name) {
                return structural(format!("bad or duplicate ring generator `{name}`"));
            }
        }
        Ok(Arc::new(RingSpec { field, kind: RingKind::SquareZero { generators } }))
    }

    /// The ring of dual numbers with generators t_{-m}..t_m, deg t_i = i - 1.
    pub fn graded_dual_numbers(field: Field, m: i64) -> Result<Arc<RingSpec>> {
        let gens = (-m..=m).map(|i| (format!("t{}", gen_suffix(i)), i - 1)).collect();
        Self::square_zero(field, gens)
    }

    pub fn base_field(&self) -> Field {
        self.field
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn residue_ring(&self) -> Arc<RingSpec> {
        RingSpec::field(self.field)
    }

    pub fn monomial_count(&self) -> usize {
        match &self.kind {
            RingKind::Field => 1,
            RingKind::TAdic { order, .. } => order + 1,
            RingKind::SquareZero { generators } => generators.len() + 1,
        }
    }

    pub fn monomial_degree(&self, m: usize) -> i64 {
        match &self.kind {
            RingKind::Field => 0,
            RingKind::TAdic { degree, .. } => degree * m as i64,
            RingKind::SquareZero { generators } => {
                if m == 0 {
                    0
                } else {
                    generators[m - 1].1
                }
            }
        }
    }

    /// m-adic order of a monomial.
    pub fn monomial_order(&self, m: usize) -> usize {
        match &self.kind {
            RingKind::TAdic { .. } => m,
            _ => usize::from(m != 0),
        }
    }

    pub fn monomial_mul(&self, a: usize, b: usize) -> Option<usize> {
        match &self.kind {
            RingKind::Field => Some(0),
            RingKind::TAdic { order, .. } => (a + b <= *order).then_some(a + b),
            RingKind::SquareZero { .. } => match (a, b) {
                (0, x) | (x, 0) => Some(x),
                _ => None,
            },
        }
    }

    pub fn monomial_name(&self, m: usize) -> String {
        match &self.kind {
            _ if m == 0 => "1".to_string(),
            RingKind::Field => unreachable!(),
            RingKind::TAdic { generator, .. } if m == 1 => generator.clone(),
            RingKind::TAdic { generator, .. } => format!("{generator}^{m}"),
            RingKind::SquareZero { generators } => generators[m - 1].0.clone(),
        }
    }

    /// Smallest n with m^n = 0.
    pub fn nilpotency_index(&self) -> usize {
        match &self.kind {
            RingKind::Field => 1,
            RingKind::TAdic { order, .. } => order + 1,
            RingKind::SquareZero { generators } => {
                if generators.is_empty() {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// True when every monomial has even degree, so that coefficients commute
    /// freely with everything.
    pub fn is_evenly_graded(&self) -> bool {
        (0..self.monomial_count()).all(|m| self.monomial_degree(m) % 2 == 0)
    }

    pub fn zero(self: &Arc<Self>) -> RingElement {
        RingElement { ring: self.clone(), coeffs: vec![self.field.zero(); self.monomial_count()] }
    }

    pub fn one(self: &Arc<Self>) -> RingElement {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> RingElement {
        self.monomial(0, c)
    }

    pub fn monomial(self: &Arc<Self>, m: usize, c: Scalar) -> RingElement {
        let mut r = self.zero();
        r.coeffs[m] = c;
        r
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> RingElement {
        self.constant(self.field.from_int(n))
    }

    /// Spec string: `field`, `k[t]/t^N`, `t:N`, `t:N:g`, or `sq:g1,g2,...` (generator degrees).
    pub fn parse_spec(field: Field, s: &str) -> Result<Arc<RingSpec>> {
        let t = s.trim();
        if t == "field" || t == "k" {
            return Ok(RingSpec::field(field));
        }
        let bad = || Error::Structural(format!("cannot parse ring spec `{s}`"));
        // k[t]/t^N
        if let Some((g, rest)) = t.strip_prefix("k[").and_then(|r| r.split_once("]/")) {
            let n: usize = rest.strip_prefix(g).and_then(|r| r.strip_prefix('^')).and_then(|n| n.parse().ok()).ok_or_else(bad)?;
            if n < 2 {
                return Err(bad());
            }
            return RingSpec::t_adic_named(field, g, n - 1, 0);
        }
        if let Some(rest) = t.strip_prefix("t:") {
            let mut parts = rest.split(':');
            let order = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            let degree = match parts.next() {
                Some(d) => d.parse().map_err(|_| bad())?,
                None => 0,
            };
            return RingSpec::t_adic(field, order, degree);
        }
        if let Some(rest) = t.strip_prefix("sq:") {
            let degrees: Vec<i64> = rest
                .split(',')
                .map(|d| d.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let gens = degrees.into_iter().enumerate().map(|(j, d)| (format!("t{}", j + 1), d)).collect();
            return RingSpec::square_zero(field, gens);
        }
        Err(bad())
    }

    pub fn spec_string(&self) -> String {
        match &self.kind {
            RingKind::Field => "field".to_string(),
            RingKind::TAdic { generator, order, degree: 0 } => format!("k[{generator}]/{generator}^{}", order + 1),
            RingKind::TAdic { order, degree, .. } => format!("t:{order}:{degree}"),
            RingKind::SquareZero { generators } => {
                let ds: Vec<String> = generators.iter().map(|g| g.1.to_string()).collect();
                format!("sq:{}", ds.join(","))
            }
        }
    }

    fn generator_index(&self, name: &str) -> Option<usize> {
        match &self.kind {
            RingKind::Field => None,
            RingKind::TAdic { generator, .. } => (generator == name).then_some(1),
            RingKind::SquareZero { generators } => generators.iter().position(|g| g.0 == name).map(|j| j + 1),
        }
    }

    /// Parses a truncated polynomial such as `1 + 2t - 1/2*t^2` or `t1 - 3*t_2`.
    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<RingElement> {
        let bad = |msg: &str| Error::Structural(format!("cannot parse ring element `{s}`: {msg}"));
        let mut acc = self.zero();
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad("empty"));
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in src.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && idx == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad("dangling sign"));
            }
            let split = term.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(term.len());
            let (coef_txt, mono_txt) = term.split_at(split);
            let coef_txt = coef_txt.strip_suffix('*').unwrap_or(coef_txt);
            let coef = if coef_txt.is_empty() {
                self.field.one()
            } else {
                self.field.parse_scalar(coef_txt).map_err(|_| bad("coefficient"))?
            };
            let coef = if neg { -coef } else { coef };
            let mono = if mono_txt.is_empty() {
                Some(0)
            } else {
                let (name, pow) = match mono_txt.split_once('^') {
                    Some((n, p)) => (n, p.parse::<usize>().map_err(|_| bad("exponent"))?),
                    None => (mono_txt, 1),
                };
                let name = name.replace('_', "");
                let g = self
                    .generator_index(&name)
                    .or_else(|| self.generator_index(mono_txt.split('^').next().unwrap()))
                    .ok_or_else(|| bad(&format!("unknown generator `{name}`")))?;
                let mut m = Some(0);
                for _ in 0..pow {
                    m = m.and_then(|x| self.monomial_mul(x, g));
                }
                m
            };
            if let Some(m) = mono {
                acc.coeffs[m] = &acc.coeffs[m] + &coef;
            }
        }
        Ok(acc)
    }
}

fn gen_suffix(i: i64) -> String {
    if i < 0 {
        format!("m{}", -i)
    } else {
        i.to_string()
    }
}

fn valid_generator_name(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric())
}

/// An element of an Artin ring in normal form: one coefficient per surviving monomial.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<RingSpec>,
    coeffs: Vec<Scalar>,
}

pub(crate) fn same_ring(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Truncated product; fails on mismatched ring specs.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    if !same_ring(&a.ring, &b.ring) {
        return structural("ring elements over different Artin rings");
    }
    Ok(a.mul_unchecked(b))
}

impl RingElement {
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn coeff(&self, m: usize) -> &Scalar {
        &self.coeffs[m]
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn in_maximal_ideal(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Monomials with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Lowest m-adic order among the nonzero terms (None for zero).
    pub fn order(&self) -> Option<usize> {
        self.support().map(|(m, _)| self.ring.monomial_order(m)).min()
    }

    pub fn scale(&self, c: &Scalar) -> RingElement {
        RingElement { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Re-express this element in another ring, matching monomials by position
    /// (used for k -> R and for truncating k[t]/t^a -> k[t]/t^b).
    pub fn transport(&self, target: &Arc<RingSpec>) -> RingElement {
        let mut r = target.zero();
        for (m, c) in self.support() {
            if m < r.coeffs.len() {
                r.coeffs[m] = c.clone();
            }
        }
        r
    }

    pub fn inv(&self) -> Option<RingElement> {
        // u = c(1 - n) with n nilpotent; u^{-1} = c^{-1} sum n^j
        let c_inv = self.coeffs[0].inv()?;
        let one = self.ring.one();
        let n = &one - &self.scale(&c_inv);
        let mut acc = one.clone();
        let mut pow = one;
        for _ in 1..self.ring.nilpotency_index() {
            pow = pow.mul_unchecked(&n);
            acc = &acc + &pow;
        }
        Some(acc.scale(&c_inv))
    }

    fn mul_unchecked(&self, b: &RingElement) -> RingElement {
        let mut out = self.ring.zero();
        for (i, x) in self.support() {
            for (j, y) in b.support() {
                if let Some(m) = self.ring.monomial_mul(i, j) {
                    out.coeffs[m] = &out.coeffs[m] + &(x * y);
                }
            }
        }
        out
    }

    /// Each nonzero monomial carries this degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.support().all(|(m, _)| self.ring.monomial_degree(m) == degree)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl Eq for RingElement {}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn add(self, o: &RingElement) -> RingElement {
        assert!(same_ring(&self.ring, &o.ring), "adding elements of different rings");
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, o: &RingElement) -> RingElement {
        assert!(same_ring(&self.ring, &o.ring), "subtracting elements of different rings");
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn mul(self, o: &RingElement) -> RingElement {
        ring_mul(self, o).expect("multiplying elements of different rings")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.support() {
            let neg = c.is_negative_literal();
            let mag = if neg { -c } else { c.clone() };
            let body = match (m, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => self.ring.monomial_name(m),
                _ => format!("{}*{}", mag, self.ring.monomial_name(m)),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn truncated_products() {
        let r = RingSpec::t_adic(q(), 1, 0).unwrap();
        let a = r.parse_element("1 + t").unwrap();
        assert_eq!((&a * &a).to_string(), "1 + 2*t");

        let r3 = RingSpec::t_adic(q(), 2, 0).unwrap();
        let a = r3.parse_element("1 + t + t^2").unwrap();
        let b = r3.parse_element("1 - t").unwrap();
        assert_eq!(&a * &b, r3.one());
    }

    #[test]
    fn square_zero_kills_products() {
        let r = RingSpec::graded_dual_numbers(q(), 1).unwrap();
        let t0 = r.parse_element("t0").unwrap();
        let t1 = r.parse_element("t1").unwrap();
        assert!((&t0 * &t1).is_zero());
        assert_eq!(r.monomial_degree(2), -1);
    }

    #[test]
    fn nilpotency_indices() {
        assert_eq!(RingSpec::t_adic(q(), 1, 0).unwrap().nilpotency_index(), 2);
        assert_eq!(RingSpec::t_adic(q(), 4, 0).unwrap().nilpotency_index(), 5);
        let sq = RingSpec::square_zero(q(), vec![("a".into(), 0), ("b".into(), 1), ("c".into(), 2)]).unwrap();
        assert_eq!(sq.nilpotency_index(), 2);
    }

    #[test]
    fn mismatched_rings_are_structural() {
        let a = RingSpec::t_adic(q(), 1, 0).unwrap().one();
        let b = RingSpec::t_adic(q(), 2, 0).unwrap().one();
        assert!(matches!(ring_mul(&a, &b), Err(Error::Structural(_))));
    }

    #[test]
    fn odd_generator_with_square_rejected() {
        assert!(RingSpec::t_adic(q(), 2, 1).is_err());
        assert!(RingSpec::t_adic(q(), 1, 1).is_ok());
    }

    #[test]
    fn parse_display_roundtrip() {
        let r = RingSpec::t_adic(q(), 3, 0).unwrap();
        for s in ["0", "1", "-t", "3/2*t^2 - 1", "t + t^3", "2 - 1/3*t"] {
            let e = r.parse_element(s).unwrap();
            assert_eq!(r.parse_element(&e.to_string()).unwrap(), e, "{s}");
        }
        let inv = r.parse_element("2 + t").unwrap().inv().unwrap();
        assert_eq!(&inv * &r.parse_element("2 + t").unwrap(), r.one());
    }

    #[test]
    fn nilpotent_power_vanishes() {
        let r = RingSpec::t_adic(q(), 3, 0).unwrap();
        let x = r.parse_element("t - 5*t^2 + t^3").unwrap();
        let mut p = r.one();
        for _ in 0..r.nilpotency_index() {
            p = &p * &x;
        }
        assert!(p.is_zero());
    }
}
