use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sparse multivariate polynomial over ℚ in a fixed number of variables.
///
/// Terms are kept in strictly decreasing graded-lex order with nonzero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    arity: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        SparsePoly {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(arity);
        }
        SparsePoly {
            arity,
            terms: vec![(Monomial::one(arity), c)],
        }
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        SparsePoly {
            arity,
            terms: vec![(Monomial::var(arity, index), Rational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let arity = m.arity();
        if c.is_zero() {
            return Self::zero(arity);
        }
        SparsePoly {
            arity,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), arity);
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(arity, acc)
    }

    pub(crate) fn from_map(arity: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly { arity, terms }
    }

    /// Trusts the caller that terms are sorted descending and nonzero.
    pub(crate) fn from_sorted_terms(arity: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    /// Number of stored monomials.
    pub fn sparsity(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.first().map_or(-1, |(m, _)| m.degree() as i64)
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(var) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    fn check_arity(&self, other: &SparsePoly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        Ok(self.mul_impl(other, None))
    }

    fn merge(&self, other: &SparsePoly, negate: bool) -> SparsePoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparsePoly {
            arity: self.arity,
            terms: out,
        }
    }

    fn mul_impl(&self, other: &SparsePoly, max_degree: Option<u32>) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if let Some(limit) = max_degree {
                    if da + mb.degree() > limit {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        SparsePoly::from_map(self.arity, acc)
    }

    /// Product with every term of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &SparsePoly, max_degree: u32) -> SparsePoly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        self.mul_impl(other, Some(max_degree))
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        // Multiplication by a monomial preserves graded-lex order.
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut result = SparsePoly::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::PointLength {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|p| vec![Rational::one(), p.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[i];
                    table.push(next);
                }
                v *= &table[e as usize];
                if v.is_zero() {
                    break;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes the given values for the variables marked `Some`, keeping arity.
    pub fn partial_evaluate(&self, assignment: &[Option<Rational>]) -> SparsePoly {
        assert_eq!(assignment.len(), self.arity);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut exps = m.exps().to_vec();
            for (i, a) in assignment.iter().enumerate() {
                if let Some(a) = a {
                    if exps[i] > 0 {
                        v *= num_traits::pow(a.clone(), exps[i] as usize);
                        exps[i] = 0;
                    }
                }
            }
            if v.is_zero() {
                continue;
            }
            let key = Monomial::new(exps);
            match acc.get_mut(&key) {
                Some(x) => *x += v,
                None => {
                    acc.insert(key, v);
                }
            }
        }
        SparsePoly::from_map(self.arity, acc)
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn hom_component(&self, k: u32) -> SparsePoly {
        SparsePoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .cloned()
                .collect(),
        }
    }

    /// Sum of the terms of total degree at most `k`.
    pub fn hom_component_leq(&self, k: u32) -> SparsePoly {
        SparsePoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= k)
                .cloned()
                .collect(),
        }
    }

    /// `∂^order f / ∂x_var^order`.
    pub fn partial_derivative(&self, var: usize, order: u32) -> SparsePoly {
        assert!(var < self.arity, "variable index out of range");
        if order == 0 {
            return self.clone();
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            if e < order {
                return None;
            }
            let mut falling = num_bigint::BigInt::one();
            for k in 0..order {
                falling *= e - k;
            }
            Some((m.with_exp(var, e - order), c * Rational::from_integer(falling)))
        });
        // Lowering one exponent can reorder terms, so go through the map.
        SparsePoly::from_terms(self.arity, terms)
    }

    /// `f(x + c)` in the same variables.
    pub fn translate(&self, c: &[Rational]) -> Result<SparsePoly> {
        if c.len() != self.arity {
            return Err(Error::PointLength {
                expected: self.arity,
                got: c.len(),
            });
        }
        if c.iter().all(|v| v.is_zero()) {
            return Ok(self.clone());
        }
        let n = self.arity;
        let linear: Vec<SparsePoly> = (0..n)
            .map(|i| &SparsePoly::var(n, i) + &SparsePoly::constant(n, c[i].clone()))
            .collect();
        Ok(self.substitute_linear(&linear, n))
    }

    /// `f(x1 + α1 y + β1, …, xn + αn y + βn)` with `y` appended as the last variable.
    pub fn affine_shift(&self, alpha: &[Rational], beta: &[Rational]) -> Result<SparsePoly> {
        let n = self.arity;
        for v in [alpha, beta] {
            if v.len() != n {
                return Err(Error::PointLength {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let m = n + 1;
        let y = SparsePoly::var(m, n);
        let linear: Vec<SparsePoly> = (0..n)
            .map(|i| {
                let mut l = SparsePoly::var(m, i);
                l = &l + &y.scale(&alpha[i]);
                &l + &SparsePoly::constant(m, beta[i].clone())
            })
            .collect();
        Ok(self.substitute_linear(&linear, m))
    }

    /// Replaces variable `i` by `images[i]` (all of arity `target_arity`).
    pub fn substitute_linear(&self, images: &[SparsePoly], target_arity: usize) -> SparsePoly {
        let mut cache: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::one(target_arity), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut prod = SparsePoly::constant(target_arity, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut cache[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &images[i];
                    table.push(next);
                }
                prod = &prod * &table[e as usize];
            }
            for (t, v) in prod.terms {
                match acc.get_mut(&t) {
                    Some(x) => *x += v,
                    None => {
                        acc.insert(t, v);
                    }
                }
            }
        }
        SparsePoly::from_map(target_arity, acc)
    }

    /// Appends `extra` unused variables.
    pub fn extend_arity(&self, extra: usize) -> SparsePoly {
        SparsePoly {
            arity: self.arity + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(extra), c.clone()))
                .collect(),
        }
    }

    /// Pads with unused variables up to `arity`; fewer variables is an error.
    pub fn with_arity(&self, arity: usize) -> Result<SparsePoly> {
        if arity < self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: arity,
            });
        }
        Ok(self.extend_arity(arity - self.arity))
    }

    /// Removes the variable `var`, which must not occur.
    pub fn drop_variable(&self, var: usize) -> SparsePoly {
        assert!(!self.depends_on(var), "dropping a variable that occurs");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.remove(var);
                (Monomial::new(e), c.clone())
            })
            .collect();
        SparsePoly {
            arity: self.arity - 1,
            terms,
        }
    }

    /// Coefficients of `f` viewed as a polynomial in `var`, indexed by power.
    /// Each coefficient keeps the full arity with `var` absent.
    pub fn coefficients_in(&self, var: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(var);
        if deg < 0 {
            return Vec::new();
        }
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| SparsePoly::from_terms(self.arity, ts))
            .collect()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    ///
    /// Single-divisor graded-lex division: the leading term of the running
    /// remainder is cancelled by the leading term of `divisor`; when it is not
    /// divisible no exact quotient exists, because an exact quotient would make
    /// it a product of the divisor's leading term with a monomial.
    pub fn lex_divide(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>> {
        self.check_arity(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = divisor.leading_term().unwrap();
        let (lm, lc) = (lm.clone(), lc.clone());
        let tail = SparsePoly {
            arity: divisor.arity,
            terms: divisor.terms[1..].to_vec(),
        };
        let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
        // Remainder kept as a max-ordered map for cheap leading-term access.
        let mut rem: std::collections::BTreeMap<Monomial, Rational> =
            self.terms.iter().cloned().collect();
        while let Some((m, c)) = rem.pop_last() {
            let q = match lm.quotient_of(&m) {
                Some(q) => q,
                None => return Ok(None),
            };
            let qc = &c / &lc;
            for (t, v) in &tail.terms {
                let key = t.mul(&q);
                let delta = v * &qc;
                match rem.get_mut(&key) {
                    Some(x) => {
                        *x -= delta;
                        if x.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.push((q, qc));
        }
        // Quotient terms come out in decreasing order.
        Ok(Some(SparsePoly::from_sorted_terms(self.arity, quotient)))
    }

    /// Scales so that the graded-lex leading coefficient is 1.
    pub fn canonical_normalize(&self) -> Result<SparsePoly> {
        match self.leading_coefficient() {
            None => Err(Error::ZeroPolynomial("canonical_normalize")),
            Some(lc) => Ok(self.scale(&lc.recip())),
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> SparsePoly {
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
        }
    }

    pub fn map_coefficients<F: Fn(&Rational) -> Rational>(&self, f: F) -> SparsePoly {
        SparsePoly::from_terms(
            self.arity,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("arity mismatch in polynomial addition")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("arity mismatch in polynomial subtraction")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("arity mismatch in polynomial multiplication")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}
