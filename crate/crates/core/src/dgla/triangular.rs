//! Lower-triangular 2×2 matrices `[[a, 0], [b, a]]` over a graded matrix
//! algebra `S = End(V) ⊗ R`, with differential `ad(P)` for a polarization `P`.
//! Structurally the same as the deformation dgLa of a pair, and small enough
//! to check by direct matrix algebra.

use std::sync::Arc;

use super::DgLa;
use crate::error::{structural, Error, Result};
use crate::graded::sign_of;
use crate::scalars::{Field, RingElement, RingSpec, Scalar};

/// A homogeneous endomorphism of a graded space `V`, with coefficients in `R`.
/// Entry `(i, j)` is the coefficient of `v_i` in the image of `v_j`.
#[derive(Clone, Debug)]
pub struct GMatrix {
    ring: Arc<RingSpec>,
    degrees: Arc<Vec<i64>>,
    degree: i64,
    entries: Vec<RingElement>,
}

/// Zero matrices of different degrees compare equal.
impl PartialEq for GMatrix {
    fn eq(&self, o: &GMatrix) -> bool {
        self.degrees == o.degrees
            && *self.ring == *o.ring
            && self.entries == o.entries
            && (self.degree == o.degree || self.is_zero())
    }
}

impl GMatrix {
    pub fn zero(ring: &Arc<RingSpec>, degrees: &Arc<Vec<i64>>, degree: i64) -> GMatrix {
        let n = degrees.len();
        GMatrix { ring: ring.clone(), degrees: degrees.clone(), degree, entries: vec![ring.zero(); n * n] }
    }

    pub fn identity(ring: &Arc<RingSpec>, degrees: &Arc<Vec<i64>>) -> GMatrix {
        let mut m = GMatrix::zero(ring, degrees, 0);
        let n = m.n();
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn degrees(&self) -> &Arc<Vec<i64>> {
        &self.degrees
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.n() + j]
    }

    /// Ring degree an entry at `(i, j)` must carry.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.degree - (self.degrees[i] - self.degrees[j])
    }

    pub fn set(&mut self, i: usize, j: usize, c: RingElement) -> Result<()> {
        if !c.is_homogeneous_of(self.entry_degree(i, j)) {
            return structural(format!("entry ({i},{j}) = {c} breaks homogeneity of degree {}", self.degree));
        }
        let n = self.n();
        self.entries[i * n + j] = c;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    pub fn in_maximal_ideal(&self) -> bool {
        self.entries.iter().all(RingElement::in_maximal_ideal)
    }

    fn check_shape(&self, o: &GMatrix) -> Result<()> {
        if self.degrees != o.degrees || *self.ring != *o.ring {
            return structural("matrices over different spaces or rings");
        }
        Ok(())
    }

    pub fn add(&self, o: &GMatrix) -> Result<GMatrix> {
        self.check_shape(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if self.degree != o.degree {
            return structural(format!("adding matrices of degrees {} and {}", self.degree, o.degree));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect();
        Ok(GMatrix { entries, ..self.clone() })
    }

    pub fn sub(&self, o: &GMatrix) -> Result<GMatrix> {
        self.add(&o.scale(&-&self.ring.base_field().one()))
    }

    pub fn scale(&self, c: &Scalar) -> GMatrix {
        GMatrix { entries: self.entries.iter().map(|x| x.scale(c)).collect(), ..self.clone() }
    }

    pub fn mul(&self, o: &GMatrix) -> Result<GMatrix> {
        self.check_shape(o)?;
        let n = self.n();
        let mut out = GMatrix::zero(&self.ring, &self.degrees, self.degree + o.degree);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[a, c] = ac − (−1)^{|a||c|} ca`.
    pub fn commutator(&self, o: &GMatrix) -> Result<GMatrix> {
        let ac = self.mul(o)?;
        let ca = o.mul(self)?;
        if sign_of(self.degree * o.degree) > 0 {
            ac.sub(&ca)
        } else {
            ac.add(&ca)
        }
    }

    /// `e^M` for nilpotent `M` of degree 0.
    pub fn exp(&self) -> Result<GMatrix> {
        if self.degree != 0 {
            return structural("only degree-0 matrices exponentiate");
        }
        let field = self.ring.base_field();
        let bound = self.n() * self.ring.nilpotency_index() + 1;
        let mut acc = GMatrix::identity(&self.ring, &self.degrees);
        let mut pow = acc.clone();
        let mut k = 1;
        loop {
            pow = pow.mul(self)?;
            if pow.is_zero() {
                return Ok(acc);
            }
            if k > bound {
                return Err(Error::Structural("matrix exponential does not terminate".into()));
            }
            acc = acc.add(&pow.scale(&field.inv_factorial(k)?))?;
            k += 1;
        }
    }

    /// The block matrix `[[self, 0], [lower, self]]` on `V ⊕ V`.
    pub fn block(&self, lower: &GMatrix) -> Result<GMatrix> {
        self.check_shape(lower)?;
        let n = self.n();
        let mut degs = self.degrees.as_ref().clone();
        degs.extend_from_slice(&self.degrees);
        let degs = Arc::new(degs);
        let mut out = GMatrix::zero(&self.ring, &degs, self.degree);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * 2 * n + j] = self.get(i, j).clone();
                out.entries[(i + n) * 2 * n + j + n] = self.get(i, j).clone();
                out.entries[(i + n) * 2 * n + j] = lower.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Splits a `2n × 2n` matrix into its four `n × n` blocks, row-major.
    fn quarters(&self, degrees: &Arc<Vec<i64>>) -> [GMatrix; 4] {
        let n = degrees.len();
        let q = |r0: usize, c0: usize| {
            let mut m = GMatrix::zero(&self.ring, degrees, self.degree);
            for i in 0..n {
                for j in 0..n {
                    m.entries[i * n + j] = self.get(r0 + i, c0 + j).clone();
                }
            }
            m
        };
        [q(0, 0), q(0, n), q(n, 0), q(n, n)]
    }
}

/// `[[a, 0], [b, a]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularElement {
    pub a: GMatrix,
    pub b: GMatrix,
}

impl TriangularElement {
    pub fn new(a: GMatrix, b: GMatrix) -> Result<TriangularElement> {
        a.check_shape(&b)?;
        if a.degree != b.degree && !a.is_zero() && !b.is_zero() {
            return structural("diagonal and lower entries of different degrees");
        }
        let d = if a.is_zero() { b.degree } else { a.degree };
        Ok(TriangularElement { a: GMatrix { degree: d, ..a }, b: GMatrix { degree: d, ..b } })
    }

    pub fn degree(&self) -> i64 {
        self.a.degree
    }

    pub fn to_block(&self) -> Result<GMatrix> {
        self.a.block(&self.b)
    }

    fn from_block(m: &GMatrix, degrees: &Arc<Vec<i64>>) -> Result<TriangularElement> {
        let [tl, tr, bl, br] = m.quarters(degrees);
        if !tr.is_zero() || tl != br {
            return Err(Error::Consistency("matrix is not lower triangular with equal diagonal blocks".into()));
        }
        TriangularElement::new(tl, bl)
    }

    /// `[[a,0],[b,a]], [[c,0],[d,c]]] = [[[a,c], 0], [[b,c] + [a,d], [a,c]]]`.
    pub fn bracket(&self, o: &TriangularElement) -> Result<TriangularElement> {
        TriangularElement::new(self.a.commutator(&o.a)?, self.b.commutator(&o.a)?.add(&self.a.commutator(&o.b)?)?)
    }
}

/// The triangular dgLa with differential `[P, −]`.
#[derive(Clone, Debug)]
pub struct TriangularDgla {
    pub p: TriangularElement,
}

impl TriangularDgla {
    pub fn new(p: TriangularElement) -> Result<TriangularDgla> {
        check_polarization(&p)?;
        Ok(TriangularDgla { p })
    }

    pub fn element(&self, a: GMatrix, b: GMatrix) -> Result<TriangularElement> {
        TriangularElement::new(a, b)
    }
}

fn check_polarization(p: &TriangularElement) -> Result<()> {
    if p.degree() != 1 {
        return Err(Error::Precondition(format!("polarization must have degree 1, got {}", p.degree())));
    }
    if !p.bracket(p)?.a.is_zero() || !p.bracket(p)?.b.is_zero() {
        return Err(Error::Precondition("[P, P] != 0: not a polarization".into()));
    }
    Ok(())
}

impl DgLa for TriangularDgla {
    type Elem = TriangularElement;

    fn field(&self) -> Field {
        self.p.a.ring.base_field()
    }

    fn zero(&self, degree: i64) -> TriangularElement {
        let z = GMatrix::zero(&self.p.a.ring, &self.p.a.degrees, degree);
        TriangularElement { a: z.clone(), b: z }
    }

    fn degree(&self, x: &TriangularElement) -> i64 {
        x.degree()
    }

    fn add(&self, x: &TriangularElement, y: &TriangularElement) -> Result<TriangularElement> {
        TriangularElement::new(x.a.add(&y.a)?, x.b.add(&y.b)?)
    }

    fn scale(&self, x: &TriangularElement, c: &Scalar) -> TriangularElement {
        TriangularElement { a: x.a.scale(c), b: x.b.scale(c) }
    }

    fn bracket(&self, x: &TriangularElement, y: &TriangularElement) -> Result<TriangularElement> {
        x.bracket(y)
    }

    fn differential(&self, x: &TriangularElement) -> Result<TriangularElement> {
        self.p.bracket(x)
    }

    fn is_zero(&self, x: &TriangularElement) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }

    fn in_maximal_ideal(&self, x: &TriangularElement) -> bool {
        x.a.in_maximal_ideal() && x.b.in_maximal_ideal()
    }

    fn nilpotency(&self) -> usize {
        self.p.a.ring.nilpotency_index()
    }
}

/// `exp [[f,0],[i,f]] = [[e^f, 0], [x, e^f]]` with `x = Σ_{n≥1} 1/n! Σ_{k+l=n−1} f^k i f^l`.
pub fn matrix_exp_triangular(f: &GMatrix, i: &GMatrix) -> Result<TriangularElement> {
    let ef = f.exp()?;
    let field = f.ring.base_field();
    let bound = f.n() * f.ring.nilpotency_index() + 2;
    // pows[k] = f^k
    let mut pows = vec![GMatrix::identity(&f.ring, &f.degrees)];
    let mut x = GMatrix::zero(&f.ring, &f.degrees, i.degree);
    for n in 1..=bound {
        let mut inner = GMatrix::zero(&f.ring, &f.degrees, i.degree);
        for k in 0..n {
            let l = n - 1 - k;
            while pows.len() <= k.max(l) {
                let next = pows.last().expect("nonempty").mul(f)?;
                pows.push(next);
            }
            inner = inner.add(&pows[k].mul(i)?.mul(&pows[l])?)?;
        }
        x = x.add(&inner.scale(&field.inv_factorial(n)?))?;
    }
    TriangularElement::new(ef, x)
}

/// `e^A P e^{−A}`, computed by multiplying the block matrices directly.
pub fn matrix_gauge_conjugate(p: &TriangularElement, a: &TriangularElement) -> Result<TriangularElement> {
    check_polarization(p)?;
    let e = a.to_block()?.exp()?;
    let minus = a.to_block()?.scale(&-&a.a.ring.base_field().one());
    let einv = minus.exp()?;
    let conj = e.mul(&p.to_block()?)?.mul(&einv)?;
    TriangularElement::from_block(&conj, &p.a.degrees)
}

/// The same conjugate from the closed form
/// `(e^f D e^{−f}, e^f I e^{−f} − [e^f D e^{−f}, x e^{−f}])`.
pub fn matrix_gauge_closed_form(p: &TriangularElement, a: &TriangularElement) -> Result<TriangularElement> {
    check_polarization(p)?;
    let ex = matrix_exp_triangular(&a.a, &a.b)?;
    let einv = a.a.scale(&-&a.a.ring.base_field().one()).exp()?;
    let d2 = ex.a.mul(&p.a)?.mul(&einv)?;
    let y = ex.b.mul(&einv)?;
    let i2 = ex.a.mul(&p.b)?.mul(&einv)?.sub(&d2.commutator(&y)?)?;
    TriangularElement::new(d2, i2)
}
