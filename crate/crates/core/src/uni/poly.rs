use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Dense univariate polynomial over ℚ, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and has degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `y`.
    pub fn y() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c·y^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn monic(&self) -> Result<UniPoly> {
        match self.leading_coefficient() {
            None => Err(Error::ZeroPolynomial("monic")),
            Some(lc) => Ok(self.scale(&lc.recip())),
        }
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let lc = divisor.leading_coefficient().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let inv = lc.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] * &inv;
            if !c.is_zero() {
                for (j, g) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * g;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd - 1);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<Option<UniPoly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Clears denominators and removes the content, with a positive leading coefficient.
    pub fn primitive_integer_part(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let negative = ints.last().unwrap().is_negative();
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if negative {
                *c = -&*c;
            }
        }
        ints
    }
}

/// The unique polynomial of degree below `points.len()` through the given
/// `(t, value)` pairs (Newton form). The abscissas must be distinct.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPoly> {
    let n = points.len();
    let mut dd: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = &points[i].0 - &points[i - level].0;
            if denom.is_zero() {
                return Err(Error::precondition("interpolation nodes must be distinct"));
            }
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let node = UniPoly::new(vec![-points[i].0.clone(), Rational::one()]);
        acc = &(&acc * &node) + &UniPoly::constant(dd[i].clone());
    }
    Ok(acc)
}

/// Monic greatest common divisor (zero only when both inputs are zero).
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1).expect("nonzero divisor");
        r0 = r1;
        r1 = r;
    }
    if r0.is_zero() {
        r0
    } else {
        r0.monic().expect("nonzero")
    }
}

/// Extended Euclid: `(u, v, g)` with `u·a + v·b = g`, `g` the monic gcd.
pub fn xgcd(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial("xgcd of two zero polynomials"));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.leading_coefficient().expect("nonzero gcd").recip();
    Ok((s0.scale(&inv), t0.scale(&inv), r0.scale(&inv)))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    /// Same conventions as the multivariate text form, in the variable `y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 {
                f.write_str(&format_rational(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            if k == 1 {
                f.write_str("y")?;
            } else {
                write!(f, "y^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_frac, from_int};

    #[test]
    fn xgcd_small() {
        let (u, v, g) = xgcd(&UniPoly::from_ints(&[-1, 1]), &UniPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(u, UniPoly::constant(from_frac(-1, 2)));
        assert_eq!(v, UniPoly::constant(from_frac(1, 2)));
        assert_eq!(g, UniPoly::one());
        let (_, _, g) = xgcd(&UniPoly::from_ints(&[0, 0, 1]), &UniPoly::from_ints(&[0, 1])).unwrap();
        assert_eq!(g, UniPoly::y());
        assert!(xgcd(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn division() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let (q, r) = f.div_rem(&UniPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(q, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(r, UniPoly::constant(from_int(2)));
    }

    #[test]
    fn primitive_part_sign_and_content() {
        let f = UniPoly::new(vec![from_frac(1, 2), from_int(0), from_frac(-3, 4)]);
        assert_eq!(f.primitive_integer_part(), vec![BigInt::from(-2), BigInt::zero(), BigInt::from(3)]);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[1, -2, 3]).to_string(), "3*y^2 - 2*y + 1");
        assert_eq!(UniPoly::from_ints(&[0, -1]).to_string(), "-y");
    }
}
