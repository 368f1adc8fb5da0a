//! Univariate polynomials over ℚ: gcds, square-free parts, factorization, resultants.

pub mod modp;
mod poly;
mod squarefree;
pub mod zassenhaus;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub use poly::{gcd, interpolate, xgcd, UniPoly};
pub use squarefree::squarefree_decompose;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;
use zassenhaus::{primitive, zexact_div, ZPoly};

/// `f = σ · ∏ F_i^{e_i}` with each `F_i` monic and irreducible over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFactorization {
    pub sigma: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl UnivariateFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.sigma.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Evidence that a univariate factor is irreducible over ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// Degree one.
    Linear,
    /// A single irreducible factor modulo this prime (with square-free image
    /// and the prime not dividing the leading coefficient).
    IrreducibleModPrime(u64),
    /// Degree at most four with no rational root and, for degree four, no
    /// quadratic factor found by exhaustive search over integer divisors.
    BruteForce,
    /// The Zassenhaus subset search found no proper factor.
    Recombination,
}

/// Canonical factor order: by degree, then coefficients from the top down.
fn factor_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

fn zpoly_to_monic(z: &ZPoly) -> UniPoly {
    UniPoly::from_bigints(z).monic().expect("nonzero")
}

/// Complete factorization over ℚ into monic irreducibles.
pub fn factor_univariate(f: &UniPoly) -> Result<UnivariateFactorization> {
    factor_with_outcomes(f).map(|(fact, _)| fact)
}

fn factor_with_outcomes(f: &UniPoly) -> Result<(UnivariateFactorization, Vec<zassenhaus::Outcome>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("factor_univariate"));
    }
    let sigma = f.leading_coefficient().unwrap().clone();
    let mut factors: Vec<(UniPoly, u32, zassenhaus::Outcome)> = Vec::new();
    for (part, mult) in squarefree_decompose(f)? {
        let mut z = part.primitive_integer_part();
        // Strip the factor y first; every later factor has a nonzero constant term.
        if z[0].is_zero() {
            factors.push((UniPoly::y(), mult, zassenhaus::Outcome::Recombination));
            z.remove(0);
        }
        if z.len() <= 1 {
            continue;
        }
        for (g, outcome) in zassenhaus::factor_squarefree(&z) {
            factors.push((zpoly_to_monic(&g), mult, outcome));
        }
    }
    factors.sort_by(|a, b| factor_order(&a.0, &b.0));
    let outcomes = factors.iter().map(|f| f.2).collect();
    Ok((
        UnivariateFactorization {
            sigma,
            factors: factors.into_iter().map(|(g, e, _)| (g, e)).collect(),
        },
        outcomes,
    ))
}

/// Factorization together with an irreducibility certificate per factor.
pub fn factor_univariate_certified(
    f: &UniPoly,
) -> Result<(UnivariateFactorization, Vec<IrreducibilityCertificate>)> {
    let (fact, outcomes) = factor_with_outcomes(f)?;
    let mut certs = Vec::with_capacity(fact.factors.len());
    for ((g, _), outcome) in fact.factors.iter().zip(outcomes) {
        let cert = match certify_irreducible(g)? {
            Some(c) => c,
            None if outcome == zassenhaus::Outcome::Recombination => IrreducibilityCertificate::Recombination,
            None => {
                return Err(Error::Internal(format!("no irreducibility certificate for {g}")));
            }
        };
        certs.push(cert);
    }
    Ok((fact, certs))
}

/// Looks for a certificate other than exhausted recombination.
///
/// Returns an error if `g` is found to be reducible, and `None` when no cheap
/// certificate applies.
pub fn certify_irreducible(g: &UniPoly) -> Result<Option<IrreducibilityCertificate>> {
    let deg = g.degree();
    if deg <= 0 {
        return Err(Error::precondition("constants are not irreducible"));
    }
    if deg == 1 {
        return Ok(Some(IrreducibilityCertificate::Linear));
    }
    let z = g.primitive_integer_part();
    if let Some(p) = zassenhaus::irreducible_mod_some_prime(&z, 12) {
        return Ok(Some(IrreducibilityCertificate::IrreducibleModPrime(p)));
    }
    if deg <= 4 {
        return match brute_force_irreducible(&z) {
            Some(true) => Ok(Some(IrreducibilityCertificate::BruteForce)),
            Some(false) => Err(Error::Internal(format!("factor {g} is reducible"))),
            None => Ok(None),
        };
    }
    Ok(None)
}

/// Positive divisors of `|m|` when small enough to enumerate.
fn divisors(m: &BigInt) -> Option<Vec<u64>> {
    let m = m.abs().to_u64()?;
    if m == 0 || m > 1 << 40 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn zeval(z: &ZPoly, t: i64) -> BigInt {
    let t = BigInt::from(t);
    z.iter().rev().fold(BigInt::zero(), |acc, c| acc * &t + c)
}

/// Decides irreducibility of a primitive integer polynomial of degree 2..=4
/// by the rational root test and, for quartics, a divisor search for
/// quadratic factors. `None` when the values involved are too large.
fn brute_force_irreducible(z: &ZPoly) -> Option<bool> {
    let deg = z.len() - 1;
    let lc = z.last().unwrap();
    if z[0].is_zero() {
        return Some(false);
    }
    let ps = divisors(&z[0])?;
    let qs = divisors(lc)?;
    for &p in &ps {
        for &q in &qs {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                // q·y − s·p divides z exactly when s·p/q is a root.
                let lin: ZPoly = vec![BigInt::from(-sign) * BigInt::from(p), BigInt::from(q)];
                if zexact_div(z, &lin).is_some() {
                    return Some(false);
                }
            }
        }
    }
    if deg < 4 {
        return Some(true);
    }
    let v0 = &z[0];
    let v1 = zeval(z, 1);
    let vm = zeval(z, -1);
    let d0 = divisors(v0)?;
    let d1 = divisors(&v1)?;
    let dm = divisors(&vm)?;
    let lcs = divisors(lc)?;
    let two = BigInt::from(2);
    for &c in &d0 {
        let c = BigInt::from(c);
        for &a1 in &d1 {
            for s1 in [1i64, -1] {
                let g1 = BigInt::from(a1) * s1;
                for &am in &dm {
                    for sm in [1i64, -1] {
                        let gm = BigInt::from(am) * sm;
                        // g(1) = a + b + c, g(-1) = a - b + c.
                        let sum = &g1 + &gm;
                        if sum.is_odd() {
                            continue;
                        }
                        let a = &sum / &two - &c;
                        if a.is_zero() {
                            continue;
                        }
                        let Some(au) = a.abs().to_u64() else { continue };
                        if !lcs.contains(&au) {
                            continue;
                        }
                        let b = (&g1 - &gm) / &two;
                        let quad: ZPoly = vec![c.clone(), b, a];
                        if zexact_div(z, &primitive(&quad)).is_some() {
                            return Some(false);
                        }
                    }
                }
            }
        }
    }
    Some(true)
}

/// Sylvester matrix of `g` (degree `d`) and `h` (degree `D`): the first `d`
/// rows hold shifted coefficients of `h`, the last `D` rows shifted
/// coefficients of `g`, lowest degree in the leftmost column.
pub fn sylvester_layout<T: Clone>(g: &[T], h: &[T], zero: T) -> Vec<Vec<T>> {
    let d = g.len() - 1;
    let big_d = h.len() - 1;
    let size = d + big_d;
    let mut rows = Vec::with_capacity(size);
    for i in 0..d {
        let mut row = vec![zero.clone(); size];
        for (j, c) in h.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..big_d {
        let mut row = vec![zero.clone(); size];
        for (j, c) in g.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Sylvester resultant of two nonzero univariate polynomials.
pub fn resultant_univariate(g: &UniPoly, h: &UniPoly) -> Result<Rational> {
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial("resultant_univariate"));
    }
    let m = sylvester_layout(g.coeffs(), h.coeffs(), Rational::zero());
    Ok(linalg::determinant(&m))
}

/// `true` when `g` is irreducible over ℚ (constants are not).
pub fn is_irreducible(g: &UniPoly) -> Result<bool> {
    if g.degree() <= 0 {
        return Ok(false);
    }
    let fact = factor_univariate(g)?;
    Ok(fact.factors.len() == 1 && fact.factors[0].1 == 1)
}
