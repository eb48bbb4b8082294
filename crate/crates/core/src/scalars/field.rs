use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{structural, Error, Result};

/// The ground field. Characteristic 2 is never representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return structural("characteristic 2 is not supported (1/2 must exist)");
        }
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return structural(format!("{p} is not an odd prime below 2^31"));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Accepts `rationals`, `Q`, `F_p`, `Fp`, `prime:p` and `GF(p)`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("rationals") || t == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("F_")
            .or_else(|| t.strip_prefix("prime:"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => Field::prime(p),
            None => structural(format!("unknown field `{s}`")),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".to_string(),
            Field::Prime(p) => format!("F_{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rat(q.clone())),
            Field::Prime(p) => reduce_mod(q, *p).ok_or_else(|| {
                Error::Structural(format!("{q} has no image in F_{p} (denominator divisible by {p})"))
            }),
        }
    }

    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// 1/n!, failing when n! vanishes in the field.
    pub fn inv_factorial(&self, n: usize) -> Result<Scalar> {
        let mut f = BigInt::one();
        for k in 2..=n {
            f *= BigInt::from(k);
        }
        self.from_rational(&BigRational::new(BigInt::one(), f))
    }

    /// Parses `a`, `-a`, `a/b` exactly.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Structural(format!("cannot parse scalar `{s}`"));
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_mod(q: &BigRational, p: u64) -> Option<Scalar> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64()?;
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(Scalar::Mod {
        v: mul_mod(n, inv_mod(d, p), p),
        p,
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// An exact field element. Rational constants meeting a prime-field element
/// are mapped along the canonical map Q -> F_p.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: inv_mod(*v, *p),
                p: *p,
            },
        })
    }

    pub fn is_negative_literal(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_negative())
    }

    fn coerce_pair<'a>(a: &'a Scalar, b: &'a Scalar) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        match (a, b) {
            (Scalar::Rat(q), Scalar::Mod { p, .. }) => (
                Cow::Owned(reduce_mod(q, *p).expect("rational constant not representable in prime field")),
                Cow::Borrowed(b),
            ),
            (Scalar::Mod { p, .. }, Scalar::Rat(q)) => (
                Cow::Borrowed(a),
                Cow::Owned(reduce_mod(q, *p).expect("rational constant not representable in prime field")),
            ),
            (Scalar::Mod { p: p1, .. }, Scalar::Mod { p: p2, .. }) if p1 != p2 => {
                panic!("mixing F_{p1} and F_{p2}")
            }
            _ => (Cow::Borrowed(a), Cow::Borrowed(b)),
        }
    }

    fn combine(&self, other: &Scalar, qop: fn(&BigRational, &BigRational) -> BigRational, mop: fn(u64, u64, u64) -> u64) -> Scalar {
        let (a, b) = Scalar::coerce_pair(self, other);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(qop(x, y)),
            (Scalar::Mod { v: x, p }, Scalar::Mod { v: y, .. }) => Scalar::Mod { v: mop(*x, *y, *p), p: *p },
            _ => unreachable!(),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.combine(o, |x, y| x + y, |x, y, p| (x + y) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.combine(o, |x, y| x - y, |x, y, p| (x + p - y) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.combine(o, |x, y| x * y, mul_mod)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Mod { v, p } => Scalar::Mod { v: (p - v) % p, p: *p },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Integers print bare, fractions as `p/q`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}
