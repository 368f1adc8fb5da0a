//! Pseudo-quotients, divisibility through identity testing, and Sylvester resultants.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hitting::HittingSet;
use crate::poly::SparsePoly;
use crate::rational::Rational;
use crate::uni::{resultant_univariate, sylvester_layout, UniPoly};

/// Decides whether an explicitly given polynomial is identically zero.
pub trait Pit {
    fn is_zero(&self, p: &SparsePoly) -> bool;

    /// A point where `p` does not vanish, given a bound on its total degree.
    fn find_nonzero_point(&self, p: &SparsePoly, degree_bound: u32) -> Option<Vec<Rational>>;
}

/// Identity testing by exact expansion; sound and complete.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactPit;

impl Pit for ExactPit {
    fn is_zero(&self, p: &SparsePoly) -> bool {
        p.is_zero()
    }

    /// Fixes the variables one at a time to the first value in `0..=degree_bound`
    /// that keeps the partial substitution nonzero. A nonzero polynomial of
    /// degree at most `D` in one variable has at most `D` roots, so some value
    /// among `D + 1` candidates always works.
    fn find_nonzero_point(&self, p: &SparsePoly, degree_bound: u32) -> Option<Vec<Rational>> {
        if p.is_zero() {
            return None;
        }
        let n = p.arity();
        let mut assignment: Vec<Option<Rational>> = vec![None; n];
        let mut current = p.clone();
        for i in 0..n {
            let mut chosen = None;
            for v in 0..=degree_bound as i64 {
                let mut trial = vec![None; n];
                trial[i] = Some(Rational::from_integer(v.into()));
                let next = current.partial_evaluate(&trial);
                if !next.is_zero() {
                    chosen = Some((v, next));
                    break;
                }
            }
            let (v, next) = chosen?;
            assignment[i] = Some(Rational::from_integer(v.into()));
            current = next;
        }
        Some(assignment.into_iter().map(|a| a.unwrap()).collect())
    }
}

/// Truncated power-series quotient of `f` by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoQuotient {
    pub q: SparsePoly,
    /// `g(0)`.
    pub beta: Rational,
    pub df: u32,
    pub dg: u32,
}

/// `Hom_{≤ df−dg}( (f/β) · Σ_{i ≤ df−dg} (1 − g/β)^i )` with `β = g(0)`.
///
/// Computed degree by degree: if `Q` is the power-series quotient `f/g`, its
/// homogeneous parts satisfy `β Q_t = F_t − Σ_{s≥1} G_s Q_{t−s}`, and the
/// truncated geometric series agrees with `Q` through degree `df − dg`.
/// Nothing above that degree is ever formed.
pub fn pseudo_quotient(f: &SparsePoly, g: &SparsePoly) -> Result<PseudoQuotient> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            left: f.arity(),
            right: g.arity(),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("pseudo_quotient"));
    }
    let beta = g.constant_term();
    if beta.is_zero() {
        return Err(Error::precondition(
            "g(0) = 0: translate f and g to a point where g does not vanish first",
        ));
    }
    let df = f.degree() as u32;
    let dg = g.degree() as u32;
    if df < dg {
        return Err(Error::precondition("deg f < deg g, so g cannot divide f"));
    }
    let k = df - dg;
    let inv = beta.recip();
    let gs: Vec<SparsePoly> = (0..=k.min(dg)).map(|s| g.hom_component(s)).collect();
    let mut qs: Vec<SparsePoly> = Vec::with_capacity(k as usize + 1);
    for t in 0..=k {
        let mut acc = f.hom_component(t);
        for s in 1..=t.min(dg) {
            let gs_s = &gs[s as usize];
            if gs_s.is_zero() {
                continue;
            }
            acc = &acc - &(gs_s * &qs[(t - s) as usize]);
        }
        qs.push(acc.scale(&inv));
    }
    let mut q = SparsePoly::zero(f.arity());
    for part in qs {
        q = &q + &part;
    }
    Ok(PseudoQuotient { q, beta, df, dg })
}

/// `g | f` in `ℚ[x]`, decided by testing `f − g·Q` for zero.
pub fn divides(f: &SparsePoly, g: &SparsePoly, pit: &dyn Pit) -> Result<bool> {
    Ok(divides_with_quotient(f, g, pit)?.is_some())
}

/// The quotient `f / g` when `g | f`.
pub fn divides_with_quotient(f: &SparsePoly, g: &SparsePoly, pit: &dyn Pit) -> Result<Option<SparsePoly>> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            left: f.arity(),
            right: g.arity(),
        });
    }
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.is_zero() {
        return Ok(Some(f.clone()));
    }
    if g.is_constant() {
        return Ok(Some(f.scale(&g.constant_term().recip())));
    }
    if f.degree() < g.degree() {
        return Ok(None);
    }
    let n = f.arity();
    let shift = if g.constant_term().is_zero() {
        let h = HittingSet::new(g.degree() as usize, n);
        let pt = h
            .first_nonvanishing(g)?
            .ok_or_else(|| Error::Internal("hitting set missed a nonzero polynomial".into()))?;
        Some(pt.to_vec())
    } else {
        None
    };
    let (ft, gt) = match &shift {
        Some(b) => (f.translate(b)?, g.translate(b)?),
        None => (f.clone(), g.clone()),
    };
    let pq = pseudo_quotient(&ft, &gt)?;
    let r = &ft - &(&gt * &pq.q);
    if !pit.is_zero(&r) {
        return Ok(None);
    }
    let q = match &shift {
        Some(b) => {
            let neg: Vec<Rational> = b.iter().map(|v| -v).collect();
            pq.q.translate(&neg)?
        }
        None => pq.q,
    };
    Ok(Some(q))
}

fn determinant_minors(m: &[Vec<SparsePoly>], arity: usize) -> SparsePoly {
    let n = m.len();
    let mut memo: HashMap<(usize, u32), SparsePoly> = HashMap::new();
    fn rec(
        m: &[Vec<SparsePoly>],
        row: usize,
        cols: u32,
        arity: usize,
        memo: &mut HashMap<(usize, u32), SparsePoly>,
    ) -> SparsePoly {
        if row == m.len() {
            return SparsePoly::one(arity);
        }
        if let Some(v) = memo.get(&(row, cols)) {
            return v.clone();
        }
        let mut acc = SparsePoly::zero(arity);
        let mut position = 0;
        for j in 0..m.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &m[row][j];
            if !entry.is_zero() {
                let minor = rec(m, row + 1, cols & !(1 << j), arity, memo);
                let term = entry * &minor;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        memo.insert((row, cols), acc.clone());
        acc
    }
    rec(m, 0, (1u32 << n) - 1, arity, &mut memo)
}

fn determinant_bareiss(mut m: Vec<Vec<SparsePoly>>, arity: usize) -> Result<SparsePoly> {
    let n = m.len();
    let mut prev = SparsePoly::one(arity);
    let mut negate = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(SparsePoly::zero(arity));
        };
        if piv != k {
            m.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .lex_divide(&prev)?
                    .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
            }
            m[i][k] = SparsePoly::zero(arity);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Largest Sylvester dimension handled by cofactor expansion.
const MINOR_EXPANSION_LIMIT: usize = 8;

/// Determinant of a square matrix over `ℚ[x]`.
pub fn poly_determinant(m: Vec<Vec<SparsePoly>>, arity: usize) -> Result<SparsePoly> {
    if m.is_empty() {
        return Ok(SparsePoly::one(arity));
    }
    if m.len() <= MINOR_EXPANSION_LIMIT {
        Ok(determinant_minors(&m, arity))
    } else {
        determinant_bareiss(m, arity)
    }
}

/// Sylvester matrix of `g` and `h` with respect to the variable `y`.
pub fn sylvester_matrix(g: &SparsePoly, h: &SparsePoly, y: usize) -> Result<Vec<Vec<SparsePoly>>> {
    if g.arity() != h.arity() {
        return Err(Error::ArityMismatch {
            left: g.arity(),
            right: h.arity(),
        });
    }
    if y >= g.arity() {
        return Err(Error::precondition(format!("variable index {y} out of range")));
    }
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial("sylvester_resultant"));
    }
    if g.degree_in(y) == 0 && h.degree_in(y) == 0 {
        return Err(Error::precondition("both polynomials are free of the resultant variable"));
    }
    let gc = g.coefficients_in(y);
    let hc = h.coefficients_in(y);
    Ok(sylvester_layout(&gc, &hc, SparsePoly::zero(g.arity())))
}

/// `Res_y(g, h)` as a polynomial in the remaining variables (same arity, `y` absent).
pub fn sylvester_resultant(g: &SparsePoly, h: &SparsePoly, y: usize) -> Result<SparsePoly> {
    let m = sylvester_matrix(g, h, y)?;
    poly_determinant(m, g.arity())
}

/// `p(a, y)` as a univariate polynomial in `y`; the `y` coordinate of `a` is ignored.
pub fn restrict_to_y(p: &SparsePoly, y: usize, a: &[Rational]) -> Result<UniPoly> {
    if a.len() != p.arity() {
        return Err(Error::PointLength {
            expected: p.arity(),
            got: a.len(),
        });
    }
    let mut point = a.to_vec();
    point[y] = Rational::zero();
    let coeffs = p
        .coefficients_in(y)
        .iter()
        .map(|c| c.evaluate(&point))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(coeffs))
}

/// `Res_y(g(a, y), h(a, y))`, which equals `Res_y(g, h)(a)` when the leading
/// `y`-coefficients of `g` and `h` do not vanish at `a`.
pub fn resultant_at_point(g: &SparsePoly, h: &SparsePoly, y: usize, a: &[Rational]) -> Result<Rational> {
    if g.arity() != h.arity() {
        return Err(Error::ArityMismatch {
            left: g.arity(),
            right: h.arity(),
        });
    }
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial("resultant_at_point"));
    }
    let gu = restrict_to_y(g, y, a)?;
    let hu = restrict_to_y(h, y, a)?;
    if gu.degree() != g.degree_in(y) || hu.degree() != h.degree_in(y) {
        return Err(Error::precondition(
            "a leading y-coefficient vanishes at the point; the resultant does not specialize",
        ));
    }
    resultant_univariate(&gu, &hu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::from_int;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s, Some(2)).unwrap()
    }

    #[test]
    fn pseudo_quotients() {
        let g = p("x1 + 1");
        assert_eq!(pseudo_quotient(&g, &g).unwrap().q, p("1"));
        let f = p("x1^3 + x1^2 + 3*x1 + 3");
        assert_eq!(pseudo_quotient(&f, &g).unwrap().q, p("x1^2 + 3"));
        let r = pseudo_quotient(&p("x1^2 + 1"), &g).unwrap();
        assert_eq!(r.q, p("-x1 + 1"));
        assert_eq!((r.df, r.dg), (2, 1));
        assert!(pseudo_quotient(&p("x1^2"), &p("x1")).is_err());
    }

    /// `Hom_{≤k}((f/β) Σ_{i≤k} (1 − g/β)^i)` expanded literally.
    fn series_quotient(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        let beta = g.constant_term();
        let k = (f.degree() - g.degree()) as u32;
        let one = SparsePoly::one(f.arity());
        let gt = &one - &g.scale(&beta.recip());
        let mut sum = SparsePoly::zero(f.arity());
        let mut power = one;
        for _ in 0..=k {
            sum = &sum + &power;
            power = &power * &gt;
        }
        (&f.scale(&beta.recip()) * &sum).hom_component_leq(k)
    }

    #[test]
    fn recurrence_matches_literal_series() {
        let cases = [
            ("x1^2 + 1", "x1 + 1"),
            ("3*x1^3*x2 - x2^2 + 7", "2 - x1*x2 + x2"),
            ("x1^4 + x2^4 + x1*x2", "1/2 + x1 + x2^2"),
            ("5*x1^2*x2^3 + x1 - 1", "-3 + x1^2"),
        ];
        for (f, g) in cases {
            let (f, g) = (p(f), p(g));
            assert_eq!(pseudo_quotient(&f, &g).unwrap().q, series_quotient(&f, &g), "{f} / {g}");
        }
    }

    #[test]
    fn divisibility() {
        assert!(divides(&p("x1^2 - x2^2"), &p("x1 - x2"), &ExactPit).unwrap());
        assert!(!divides(&p("x1^2 + 1"), &p("x1 + 1"), &ExactPit).unwrap());
        assert_eq!(
            divides_with_quotient(&p("x1^2 - x2^2"), &p("x1 - x2"), &ExactPit).unwrap(),
            Some(p("x1 + x2"))
        );
        assert!(divides(&p("x1"), &p("0"), &ExactPit).is_err());
    }

    #[test]
    fn resultant_layout() {
        let g = parse_poly("x3 - x1", Some(3)).unwrap();
        let h = parse_poly("x3 - x2", Some(3)).unwrap();
        assert_eq!(sylvester_resultant(&g, &h, 2).unwrap(), parse_poly("x1 - x2", Some(3)).unwrap());
        assert!(sylvester_resultant(&g, &g, 2).unwrap().is_zero());
        let a = [from_int(1), from_int(2), from_int(0)];
        assert_eq!(resultant_at_point(&g, &h, 2, &a).unwrap(), from_int(-1));
    }

    #[test]
    fn nonzero_point_search() {
        let q = p("x1*x2 - 1");
        let pt = ExactPit.find_nonzero_point(&q, 2).unwrap();
        assert!(!q.evaluate(&pt).unwrap().is_zero());
        assert!(ExactPit.find_nonzero_point(&p("0"), 3).is_none());
    }
}
