//! Factorization of square-free primitive integer polynomials.
//!
//! Modular factorization by Berlekamp at the first usable prime, quadratic
//! Hensel lifting of the modular factors past a coefficient bound, and
//! recombination of lifted factors over subsets of growing size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, Fp};
use crate::hitting::combinations;

/// Integer polynomial, lowest degree first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

pub fn ztrim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(&mut out);
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
        .collect();
    ztrim(&mut out);
    out
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
        .collect();
    ztrim(&mut out);
    out
}

/// Residues in `[0, m)`.
fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut out);
    out
}

/// Residues in `(-m/2, m/2]`.
fn zmod_sym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    ztrim(&mut out);
    out
}

/// Division by a monic `g` over `ℤ/m`.
fn zdivrem_monic(a: &ZPoly, g: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(g.last().is_some_and(|c| c.is_one()));
    let a = zmod(a, m);
    let dg = g.len();
    if a.len() < dg {
        return (Vec::new(), a);
    }
    let mut rem = a;
    let mut quot = vec![BigInt::zero(); rem.len() - dg + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dg - 1].mod_floor(m);
        if !c.is_zero() {
            for (j, gj) in g.iter().enumerate() {
                rem[k + j] = (&rem[k + j] - &c * gj).mod_floor(m);
            }
        }
        quot[k] = c;
    }
    rem.truncate(dg - 1);
    ztrim(&mut rem);
    ztrim(&mut quot);
    (quot, rem)
}

fn to_fp(a: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut out: Fp = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    modp::trim(&mut out);
    out
}

fn from_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Exact quotient over ℤ, or `None`.
pub fn zexact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    if !(a.last().unwrap() % lb).is_zero() {
        return None;
    }
    if !b[0].is_zero() && !a[0].is_zero() && !(&a[0] % &b[0]).is_zero() {
        return None;
    }
    let db = b.len();
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - db + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + db - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    ztrim(&mut quot);
    Some(quot)
}

pub fn primitive(a: &ZPoly) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return a.clone();
    }
    let neg = a.last().is_some_and(|c| c.is_negative());
    a.iter().map(|c| if neg { -(c / &g) } else { c / &g }).collect()
}

/// Primes in increasing order (trial division; only small primes are ever needed).
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// First prime not dividing the leading coefficient with a square-free image.
pub fn choose_prime(f: &ZPoly) -> u64 {
    let lc = f.last().expect("nonzero");
    for p in primes() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        if modp::is_squarefree(&to_fp(f, p), p) {
            return p;
        }
    }
    unreachable!("a square-free polynomial has a good prime")
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic and `u·g + v·h ≡ 1` to modulus
/// `p^(2^steps)` by repeated quadratic lifting.
fn lift_pair(f: &ZPoly, g: Fp, h: Fp, u: Fp, v: Fp, p: u64, steps: u32) -> (ZPoly, ZPoly) {
    let (mut g, mut h, mut u, mut v) = (from_fp(&g), from_fp(&h), from_fp(&u), from_fp(&v));
    let mut m = BigInt::from(p);
    for _ in 0..steps {
        m = &m * &m;
        let e = zmod(&zsub(f, &zmul(&g, &h)), &m);
        let (q, r) = zdivrem_monic(&zmul(&v, &e), &g, &m);
        let g1 = zmod(&zadd(&g, &r), &m);
        let h1 = zmod(&zadd(&zadd(&h, &zmul(&u, &e)), &zmul(&q, &h)), &m);
        let b = zmod(&zsub(&zadd(&zmul(&u, &g1), &zmul(&v, &h1)), &vec![BigInt::one()]), &m);
        let (c, w) = zdivrem_monic(&zmul(&v, &b), &g1, &m);
        v = zmod(&zsub(&v, &w), &m);
        u = zmod(&zsub(&zsub(&u, &zmul(&u, &b)), &zmul(&c, &h1)), &m);
        g = g1;
        h = h1;
    }
    (g, h)
}

/// Lifts the monic modular factors of `f` to monic factors modulo `p^(2^steps)`.
fn multilift(f: &ZPoly, factors: &[Fp], p: u64, steps: u32, modulus: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), modulus);
        let scaled: ZPoly = f.iter().map(|c| c * &inv).collect();
        return vec![zmod(&scaled, modulus)];
    }
    let (a, b) = factors.split_at(factors.len() / 2);
    let g0 = a.iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let fp = to_fp(f, p);
    let (h0, r) = modp::div_rem(&fp, &g0, p);
    debug_assert!(r.is_empty());
    let (u0, v0, one) = modp::xgcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (g, h) = lift_pair(f, g0, h0, u0, v0, p, steps);
    let mut out = multilift(&g, a, p, steps, modulus);
    out.extend(multilift(&h, b, p, steps, modulus));
    out
}

/// How a factorization concluded that a factor is irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Only one modular factor at prime `p`.
    ModPrime(u64),
    /// Exhausted recombination.
    Recombination,
}

/// Irreducible factors of a square-free primitive `f` with positive leading
/// coefficient and degree ≥ 1, each primitive with positive leading coefficient.
pub fn factor_squarefree(f: &ZPoly) -> Vec<(ZPoly, Outcome)> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![(f.clone(), Outcome::Recombination)];
    }
    let p = choose_prime(f);
    let fp = to_fp(f, p);
    let modular = modp::berlekamp_factor(&fp, p);
    if modular.len() == 1 {
        return vec![(f.clone(), Outcome::ModPrime(p))];
    }
    // Any factor scaled to leading coefficient lc(f) has coefficients below
    // |lc|·2^n·‖f‖₁; the modulus must exceed twice that.
    let lc = f.last().unwrap().abs();
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (lc * norm1) << (n + 1);
    let mut steps = 0u32;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multilift(f, &modular, p, steps, &modulus);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), size) {
            let lc = current.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc];
            for &k in &combo {
                cand = zmod(&zmul(&cand, &lifted[remaining[k]]), &modulus);
            }
            let cand = primitive(&zmod_sym(&cand, &modulus));
            if let Some(q) = zexact_div(&current, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push((cand, Outcome::Recombination));
                current = q;
                for &k in combo.iter().rev() {
                    remaining.remove(k);
                }
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push((primitive(&current), Outcome::Recombination));
    }
    found
}

/// Number of irreducible factors modulo each of the first admissible primes,
/// stopping at the first prime where it is one.
pub fn irreducible_mod_some_prime(f: &ZPoly, tries: usize) -> Option<u64> {
    let lc = f.last()?;
    let mut tried = 0;
    for p in primes() {
        if tried >= tries {
            return None;
        }
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        tried += 1;
        if modp::berlekamp_count(&modp::monic(&fp, p), p) == 1 {
            return Some(p);
        }
    }
    None
}
