use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::sparse::SparsePoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Writes `x^m` as `Σ α_i L_i^D` with homogeneous linear forms `L_i`, `D = deg m`.
///
/// Each variable `x_i` is split into `e_i` copies so the monomial becomes
/// multilinear, where `z_1⋯z_D = (2^D D!)^{-1} Σ_s (∏ s_k) (Σ s_k z_k)^D`
/// over sign vectors `s`. Collapsing the copies back, a sign vector only
/// matters through how many of the `e_i` copies of `x_i` are negated, which
/// leaves at most `∏ (e_i + 1)` distinct forms. `L` and `-L` are merged.
pub fn fischer_decompose(m: &Monomial) -> Result<Vec<(Rational, SparsePoly)>> {
    let d = m.degree();
    if d == 0 {
        return Err(Error::precondition("Fischer decomposition needs a monomial of positive degree"));
    }
    let n = m.arity();
    let exps = m.exps();
    let mut norm = BigInt::one();
    for k in 1..=d {
        norm *= 2u32 * k;
    }
    let odd = d % 2 == 1;

    // Keyed by the integer coefficient vector of the canonical form.
    let mut acc: BTreeMap<Vec<BigInt>, BigInt> = BTreeMap::new();
    let mut js = vec![0u32; n];
    loop {
        let mut weight = BigInt::one();
        let mut negatives = 0u32;
        for i in 0..n {
            weight *= binomial(BigInt::from(exps[i]), BigInt::from(js[i]));
            negatives += js[i];
        }
        if negatives % 2 == 1 {
            weight = -weight;
        }
        let mut form: Vec<BigInt> = (0..n)
            .map(|i| BigInt::from(exps[i] as i64 - 2 * js[i] as i64))
            .collect();
        if let Some(first) = form.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                for c in form.iter_mut() {
                    *c = -&*c;
                }
                if odd {
                    weight = -weight;
                }
            }
            *acc.entry(form).or_insert_with(BigInt::zero) += weight;
        }
        // Next j-vector in mixed radix (e_i + 1).
        let mut i = 0;
        while i < n {
            if js[i] < exps[i] {
                js[i] += 1;
                break;
            }
            js[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }

    let mut out = Vec::new();
    for (form, w) in acc.into_iter().rev() {
        if w.is_zero() {
            continue;
        }
        let terms = form
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(n, i), Rational::from_integer(c)));
        out.push((Rational::new(w, norm.clone()), SparsePoly::from_terms(n, terms)));
    }
    Ok(out)
}

/// `Σ α_i L_i^D`, used to check a decomposition.
pub fn expand_decomposition(parts: &[(Rational, SparsePoly)], degree: u32, arity: usize) -> SparsePoly {
    let mut total = SparsePoly::zero(arity);
    for (a, l) in parts {
        total = &total + &l.pow(degree).scale(a);
    }
    total
}
