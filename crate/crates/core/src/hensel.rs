//! Quadratic monic Hensel lifting over the ideal `I = ⟨x1, …, xn⟩`.
//!
//! Polynomials here live in `ℚ[x][y]` modulo a power of `I`: a vector of
//! `y`-coefficients, each a dense truncated power series in `x`. The power
//! series use a fixed graded basis of the `x`-monomials of degree below the
//! final truncation order, so truncating to a smaller order keeps a prefix.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};
use crate::rational::Rational;
use crate::uni::{xgcd, UniPoly};

/// The monomial basis of `ℚ[x] / I^order` and its multiplication table.
#[derive(Clone, Debug)]
pub struct TruncRing {
    n: usize,
    order: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u32>, usize>,
    /// `degree_start[k]` = number of basis monomials of degree below `k`.
    degree_start: Vec<usize>,
    degree: Vec<u32>,
    /// For each `i`, the pairs `(j, index of m_i·m_j)` with product degree below `order`.
    table: Vec<Vec<(usize, usize)>>,
}

impl TruncRing {
    pub fn new(n: usize, order: u32) -> Self {
        let mut monomials = Vec::new();
        let mut degree_start = vec![0];
        for deg in 0..order {
            let mut layer = Vec::new();
            homogeneous(n, deg, &mut Vec::new(), &mut layer);
            layer.sort();
            layer.reverse();
            monomials.extend(layer);
            degree_start.push(monomials.len());
        }
        let degree: Vec<u32> = monomials.iter().map(|m| m.degree()).collect();
        let index: HashMap<Vec<u32>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exps().to_vec(), i))
            .collect();
        let table = (0..monomials.len())
            .map(|i| {
                let limit = degree_start[(order - degree[i]) as usize];
                (0..limit)
                    .map(|j| (j, index[monomials[i].mul(&monomials[j]).exps()]))
                    .collect()
            })
            .collect();
        TruncRing {
            n,
            order,
            monomials,
            index,
            degree_start,
            degree,
            table,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    fn limit(&self, m: u32) -> usize {
        self.degree_start[m.min(self.order) as usize]
    }

    fn xmul_into(&self, acc: &mut [Rational], a: &[Rational], b: &[Rational], m: u32) {
        let lim = self.limit(m);
        for i in 0..lim.min(a.len()) {
            if a[i].is_zero() {
                continue;
            }
            let cap = self.limit(m.saturating_sub(self.degree[i]));
            for &(j, k) in &self.table[i][..cap.min(self.table[i].len())] {
                if j >= b.len() || b[j].is_zero() {
                    continue;
                }
                acc[k] += &a[i] * &b[j];
            }
        }
    }
}

fn homogeneous(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == n {
        prefix.push(left);
        out.push(Monomial::new(prefix.clone()));
        prefix.pop();
        return;
    }
    if n == 0 {
        if left == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    for e in 0..=left {
        prefix.push(e);
        homogeneous(n, left - e, prefix, out);
        prefix.pop();
    }
}

/// An element of `(ℚ[x] / I^order)[y]`: `coeffs[k]` is the coefficient of `y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    coeffs: Vec<Vec<Rational>>,
}

impl TruncatedPoly {
    pub fn zero() -> Self {
        TruncatedPoly { coeffs: Vec::new() }
    }

    /// Terms of `p` (arity `n + 1`, `y` last) with `x`-degree below the ring order.
    pub fn from_sparse(ring: &TruncRing, p: &SparsePoly) -> Result<Self> {
        if p.arity() != ring.n + 1 {
            return Err(Error::ArityMismatch {
                left: p.arity(),
                right: ring.n + 1,
            });
        }
        let dim = ring.dimension();
        let mut coeffs: Vec<Vec<Rational>> = Vec::new();
        for (m, c) in p.terms() {
            let exps = m.exps();
            let ydeg = exps[ring.n] as usize;
            if let Some(&i) = ring.index.get(&exps[..ring.n]) {
                if coeffs.len() <= ydeg {
                    coeffs.resize(ydeg + 1, vec![Rational::zero(); dim]);
                }
                coeffs[ydeg][i] = c.clone();
            }
        }
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        Ok(t)
    }

    /// Builds directly from `y`-coefficients given as sparse polynomials in `x` (arity `n`).
    pub fn from_y_coefficients(ring: &TruncRing, ys: &[SparsePoly]) -> Self {
        let dim = ring.dimension();
        let coeffs = ys
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); dim];
                for (m, a) in c.terms() {
                    if let Some(&i) = ring.index.get(m.exps()) {
                        v[i] = a.clone();
                    }
                }
                v
            })
            .collect();
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        t
    }

    pub fn from_uni(ring: &TruncRing, u: &UniPoly) -> Self {
        let dim = ring.dimension();
        let coeffs = u
            .coeffs()
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); dim];
                if dim > 0 {
                    v[0] = c.clone();
                }
                v
            })
            .collect();
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        t
    }

    /// The polynomial in `x1..xn, y` (arity `n + 1`).
    pub fn to_sparse(&self, ring: &TruncRing) -> SparsePoly {
        let n = ring.n;
        let mut terms = Vec::new();
        for (k, row) in self.coeffs.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let mut exps = ring.monomials[i].exps().to_vec();
                    exps.push(k as u32);
                    terms.push((Monomial::new(exps), c.clone()));
                }
            }
        }
        SparsePoly::from_terms(n + 1, terms)
    }

    /// `p(x + a·y + b) mod I^order` for `p` of arity `n`; `y` is the new variable.
    ///
    /// Each term contributes `c·∏ C(e_j, γ_j)·(a_j y + b_j)^{e_j − γ_j}` to the
    /// coefficient of `x^γ`; products of the line coordinates that actually
    /// move with `y` are cached by exponent pattern.
    pub fn from_shifted_sparse(ring: &TruncRing, p: &SparsePoly, a: &[Rational], b: &[Rational]) -> Result<Self> {
        let n = ring.n;
        if p.arity() != n {
            return Err(Error::ArityMismatch { left: p.arity(), right: n });
        }
        if a.len() != n || b.len() != n {
            return Err(Error::PointLength { expected: n, got: a.len().min(b.len()) });
        }
        let moving: Vec<usize> = (0..n).filter(|&j| !a[j].is_zero()).collect();
        let max_exp: Vec<u32> = (0..n).map(|j| p.degree_in(j).max(0) as u32).collect();
        let line_pows: Vec<Vec<UniPoly>> = (0..n)
            .map(|j| {
                let lin = UniPoly::new(vec![b[j].clone(), a[j].clone()]);
                let mut pows = vec![UniPoly::one()];
                if moving.contains(&j) {
                    for k in 1..=max_exp[j] as usize {
                        pows.push(&pows[k - 1] * &lin);
                    }
                }
                pows
            })
            .collect();
        let const_pows: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut pows = vec![Rational::one()];
                if !moving.contains(&j) {
                    for k in 1..=max_exp[j] as usize {
                        pows.push(&pows[k - 1] * &b[j]);
                    }
                }
                pows
            })
            .collect();
        let top = p.degree().max(0) as usize;
        let dim = ring.dimension();
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); top + 1]; dim];
        let mut cache: HashMap<Vec<u32>, UniPoly> = HashMap::new();
        let mut binom_cache: HashMap<(u32, u32), Rational> = HashMap::new();
        let mut binom = |e: u32, k: u32| -> Rational {
            binom_cache
                .entry((e, k))
                .or_insert_with(|| Rational::from_integer(num_integer::binomial(num_bigint::BigInt::from(e), num_bigint::BigInt::from(k))))
                .clone()
        };
        for (mono, c) in p.terms() {
            let e = mono.exps();
            for (idx, gm) in ring.monomials.iter().enumerate() {
                let gamma = gm.exps();
                if (0..n).any(|j| gamma[j] > e[j]) {
                    continue;
                }
                let mut scalar = c.clone();
                for j in 0..n {
                    if gamma[j] > 0 {
                        scalar *= binom(e[j], gamma[j]);
                    }
                    if !moving.contains(&j) {
                        scalar *= &const_pows[j][(e[j] - gamma[j]) as usize];
                    }
                }
                if scalar.is_zero() {
                    continue;
                }
                let key: Vec<u32> = moving.iter().map(|&j| e[j] - gamma[j]).collect();
                let uni = cache.entry(key).or_insert_with_key(|key| {
                    let mut acc = UniPoly::one();
                    for (t, &j) in moving.iter().enumerate() {
                        acc = &acc * &line_pows[j][key[t] as usize];
                    }
                    acc
                });
                let row = &mut rows[idx];
                for (k, u) in uni.coeffs().iter().enumerate() {
                    row[k] += &scalar * u;
                }
            }
        }
        let coeffs = (0..=top)
            .map(|k| (0..dim).map(|i| std::mem::take(&mut rows[i][k])).collect())
            .collect();
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        Ok(t)
    }

    /// The constant `c`.
    pub fn constant(ring: &TruncRing, c: &Rational) -> Self {
        TruncatedPoly::from_uni(ring, &UniPoly::constant(c.clone()))
    }

    /// `x_j + a·y + b`.
    pub fn shifted_variable(ring: &TruncRing, j: usize, a: &Rational, b: &Rational) -> Self {
        let mut t = TruncatedPoly::from_uni(ring, &UniPoly::new(vec![b.clone(), a.clone()]));
        if ring.order > 1 {
            let mut exps = vec![0; ring.n];
            exps[j] = 1;
            let i = ring.index[&exps];
            if t.coeffs.is_empty() {
                t.coeffs.push(vec![Rational::zero(); ring.dimension()]);
            }
            t.coeffs[0][i] = Rational::one();
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> TruncatedPoly {
        if c.is_zero() {
            return TruncatedPoly::zero();
        }
        TruncatedPoly {
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|v| v * c).collect()).collect(),
        }
    }

    /// Substitutes a homogeneous linear form in the variables of `to` for each
    /// variable of `from`; `forms[j]` lists `(variable, coefficient)` pairs.
    pub fn substitute_linear(&self, from: &TruncRing, to: &TruncRing, forms: &[Vec<(usize, Rational)>]) -> Result<Self> {
        if forms.len() != from.n {
            return Err(Error::PointLength { expected: from.n, got: forms.len() });
        }
        if to.order < from.order {
            return Err(Error::precondition("target ring has a smaller truncation order"));
        }
        let to_dim = to.dimension();
        let linear: Vec<Vec<Rational>> = forms
            .iter()
            .map(|form| {
                let mut v = vec![Rational::zero(); to_dim];
                for (var, c) in form {
                    let mut exps = vec![0; to.n];
                    exps[*var] = 1;
                    if let Some(&i) = to.index.get(&exps) {
                        v[i] += c;
                    }
                }
                v
            })
            .collect();
        // images[i] = image of the i-th basis monomial of `from`, built from a lower one.
        let mut images: Vec<Vec<Rational>> = Vec::with_capacity(from.dimension());
        for (i, mono) in from.monomials.iter().enumerate() {
            if i == 0 {
                let mut one = vec![Rational::zero(); to_dim];
                one[0] = Rational::one();
                images.push(one);
                continue;
            }
            let j = mono.exps().iter().position(|&e| e > 0).expect("nonconstant monomial");
            let mut lower = mono.exps().to_vec();
            lower[j] -= 1;
            let prev = &images[from.index[&lower]];
            let mut img = vec![Rational::zero(); to_dim];
            to.xmul_into(&mut img, prev, &linear[j], to.order);
            images.push(img);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                let mut out = vec![Rational::zero(); to_dim];
                for (i, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, v) in images[i].iter().enumerate() {
                        if !v.is_zero() {
                            out[k] += c * v;
                        }
                    }
                }
                out
            })
            .collect();
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        Ok(t)
    }

    /// Value at `x = 0`.
    pub fn at_origin(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|row| row[0].clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn y_degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            self.coeffs.pop();
        }
    }

    /// Drops every monomial of `x`-degree at least `m`.
    pub fn truncate(&self, ring: &TruncRing, m: u32) -> TruncatedPoly {
        let lim = ring.limit(m);
        let mut out = self.clone();
        for row in out.coeffs.iter_mut() {
            for c in row[lim..].iter_mut() {
                *c = Rational::zero();
            }
        }
        out.trim();
        out
    }

    fn combine(&self, other: &TruncatedPoly, ring: &TruncRing, m: u32, sign: bool) -> TruncatedPoly {
        let dim = ring.dimension();
        let lim = ring.limit(m);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![vec![Rational::zero(); dim]; len];
        for (k, row) in coeffs.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate().take(lim) {
                let a = self.coeffs.get(k).map(|r| &r[i]);
                let b = other.coeffs.get(k).map(|r| &r[i]);
                *slot = match (a, b) {
                    (Some(a), Some(b)) => {
                        if sign {
                            a - b
                        } else {
                            a + b
                        }
                    }
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => {
                        if sign {
                            -b
                        } else {
                            b.clone()
                        }
                    }
                    (None, None) => Rational::zero(),
                };
            }
        }
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        t
    }

    pub fn add(&self, other: &TruncatedPoly, ring: &TruncRing, m: u32) -> TruncatedPoly {
        self.combine(other, ring, m, false)
    }

    pub fn sub(&self, other: &TruncatedPoly, ring: &TruncRing, m: u32) -> TruncatedPoly {
        self.combine(other, ring, m, true)
    }

    /// Product modulo `I^m`.
    pub fn mul(&self, other: &TruncatedPoly, ring: &TruncRing, m: u32) -> TruncatedPoly {
        if self.is_zero() || other.is_zero() {
            return TruncatedPoly::zero();
        }
        let dim = ring.dimension();
        let mut coeffs = vec![vec![Rational::zero(); dim]; self.coeffs.len() + other.coeffs.len() - 1];
        for (s, a) in self.coeffs.iter().enumerate() {
            for (t, b) in other.coeffs.iter().enumerate() {
                ring.xmul_into(&mut coeffs[s + t], a, b, m);
            }
        }
        let mut t = TruncatedPoly { coeffs };
        t.trim();
        t
    }

    /// Quotient and remainder by a `g` whose leading `y`-coefficient is exactly 1, modulo `I^m`.
    pub fn div_rem_monic(&self, g: &TruncatedPoly, ring: &TruncRing, m: u32) -> (TruncatedPoly, TruncatedPoly) {
        let dg = g.coeffs.len();
        assert!(dg > 0, "division by zero");
        let dim = ring.dimension();
        if self.coeffs.len() < dg {
            return (TruncatedPoly::zero(), self.truncate(ring, m));
        }
        let mut rem = self.truncate(ring, m).coeffs;
        if rem.len() < dg {
            return (TruncatedPoly::zero(), TruncatedPoly { coeffs: rem });
        }
        let mut quot = vec![vec![Rational::zero(); dim]; rem.len() - dg + 1];
        for k in (0..quot.len()).rev() {
            let lead = std::mem::replace(&mut rem[k + dg - 1], vec![Rational::zero(); dim]);
            if lead.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j in 0..dg - 1 {
                let mut prod = vec![Rational::zero(); dim];
                ring.xmul_into(&mut prod, &lead, &g.coeffs[j], m);
                for (slot, v) in rem[k + j].iter_mut().zip(prod) {
                    if !v.is_zero() {
                        *slot -= v;
                    }
                }
            }
            quot[k] = lead;
        }
        let mut q = TruncatedPoly { coeffs: quot };
        q.trim();
        rem.truncate(dg - 1);
        let mut r = TruncatedPoly { coeffs: rem };
        r.trim();
        (q, r)
    }

    /// True when the leading `y`-coefficient is exactly the constant 1.
    pub fn is_monic(&self) -> bool {
        match self.coeffs.last() {
            None => false,
            Some(row) => row[0].is_one() && row[1..].iter().all(|c| c.is_zero()),
        }
    }
}

/// The Hensel iterate `(g_k, h_k, u_k, v_k)` modulo `I^{2^k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftState {
    pub g: TruncatedPoly,
    pub h: TruncatedPoly,
    pub u: TruncatedPoly,
    pub v: TruncatedPoly,
    pub level: u32,
}

impl LiftState {
    /// Current truncation order `2^level`.
    pub fn modulus_order(&self) -> u32 {
        1 << self.level
    }
}

/// Level-0 state from a factorization `f(0, y) = g0·h0` with `g0` monic and coprime to `h0`.
pub fn initial_state(f: &TruncatedPoly, g0: &UniPoly, h0: &UniPoly) -> Result<LiftState> {
    check_base(f, g0, h0)?;
    let (u, v, gcd) = xgcd(g0, h0)?;
    if gcd.degree() != 0 {
        return Err(Error::precondition("g0 and h0 are not coprime"));
    }
    initial_state_with_bezout(f, g0, h0, &u, &v)
}

/// Level-0 state with a caller-chosen Bézout pair `u0·g0 + v0·h0 = 1`.
pub fn initial_state_with_bezout(
    f: &TruncatedPoly,
    g0: &UniPoly,
    h0: &UniPoly,
    u0: &UniPoly,
    v0: &UniPoly,
) -> Result<LiftState> {
    check_base(f, g0, h0)?;
    if &(&(u0 * g0) + &(v0 * h0)) != &UniPoly::one() {
        return Err(Error::precondition("u0·g0 + v0·h0 differs from 1"));
    }
    Ok(LiftState {
        g: uni_only(g0, f),
        h: uni_only(h0, f),
        u: uni_only(u0, f),
        v: uni_only(v0, f),
        level: 0,
    })
}

fn check_base(f: &TruncatedPoly, g0: &UniPoly, h0: &UniPoly) -> Result<()> {
    if !g0.is_monic() {
        return Err(Error::precondition("g0 must be monic in y"));
    }
    if f.at_origin() != g0 * h0 {
        return Err(Error::precondition("f(0, y) differs from g0·h0"));
    }
    Ok(())
}

/// Embeds a univariate polynomial using the basis width of `like`.
fn uni_only(u: &UniPoly, like: &TruncatedPoly) -> TruncatedPoly {
    let dim = like.coeffs.first().map_or(1, |r| r.len());
    let coeffs = u
        .coeffs()
        .iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); dim];
            v[0] = c.clone();
            v
        })
        .collect();
    let mut t = TruncatedPoly { coeffs };
    t.trim();
    t
}

fn one_poly(ring: &TruncRing) -> TruncatedPoly {
    TruncatedPoly::from_uni(ring, &UniPoly::one())
}

/// One quadratic lifting step from `I^{2^k}` to `I^{2^{k+1}}`, with every
/// defining property of the new iterate checked before it is returned.
///
/// `g'` is the classical update `g + (v·e mod g)`. Since `g'` is monic, the
/// lifted cofactor and the Bézout multiplier are then the unique quotients
/// `f / g'` and `(1 − v'·h') / g'` modulo `I^{2^{k+1}}`, which avoids ever
/// multiplying two polynomials of large `y`-degree.
pub fn lift_step(ring: &TruncRing, s: &LiftState, f: &TruncatedPoly) -> Result<LiftState> {
    let old = s.modulus_order();
    let m = old * 2;
    if m > ring.order() {
        return Err(Error::precondition(format!(
            "lifting to order {m} exceeds the ring order {}",
            ring.order()
        )));
    }
    let one = one_poly(ring);
    let e = f.sub(&s.g.mul(&s.h, ring, m), ring, m);
    let (_, r) = s.v.mul(&e, ring, m).div_rem_monic(&s.g, ring, m);
    let g1 = s.g.add(&r, ring, m);
    let (h1, _) = f.div_rem_monic(&g1, ring, m);
    let b = s.u.mul(&g1, ring, m).add(&s.v.mul(&h1, ring, m), ring, m).sub(&one, ring, m);
    let (_, w) = s.v.mul(&b, ring, m).div_rem_monic(&g1, ring, m);
    let v1 = s.v.sub(&w, ring, m);
    let (u1, _) = one.sub(&v1.mul(&h1, ring, m), ring, m).div_rem_monic(&g1, ring, m);
    check_lift(ring, s, f, &LiftState { g: g1, h: h1, u: u1, v: v1, level: s.level + 1 })
}

/// The four postconditions of a lift step; any failure is an internal bug.
fn check_lift(ring: &TruncRing, s: &LiftState, f: &TruncatedPoly, next: &LiftState) -> Result<LiftState> {
    let old = s.modulus_order();
    let m = next.modulus_order();
    let one = one_poly(ring);
    let fail = |what: &str| Err(Error::Internal(format!("Hensel step to order {m}: {what}")));
    if !f.sub(&next.g.mul(&next.h, ring, m), ring, m).is_zero() {
        return fail("f is not congruent to g'·h'");
    }
    if !next.g.sub(&s.g, ring, old).is_zero() || !next.h.sub(&s.h, ring, old).is_zero() {
        return fail("the new factors do not reduce to the old ones");
    }
    let bezout = next.u.mul(&next.g, ring, m).add(&next.v.mul(&next.h, ring, m), ring, m);
    if !bezout.sub(&one, ring, m).is_zero() {
        return fail("u'·g' + v'·h' is not congruent to 1");
    }
    if !next.g.is_monic() || next.g.y_degree() != s.g.y_degree() {
        return fail("g' is not monic of the same y-degree");
    }
    Ok(next.clone())
}

/// Smallest `ℓ` with `2^ℓ > d`.
pub fn lift_levels(d: u32) -> u32 {
    let mut l = 0;
    while (1u64 << l) <= d as u64 {
        l += 1;
    }
    l
}

/// Lifts to level `ℓ` (the smallest with `2^ℓ > d`) and returns the final state.
pub fn lift_to_level(ring: &TruncRing, f: &TruncatedPoly, g0: &UniPoly, h0: &UniPoly, d: u32) -> Result<LiftState> {
    let levels = lift_levels(d);
    if ring.order() < 1 << levels {
        return Err(Error::precondition("truncation ring too small for the requested degree"));
    }
    lift_from(ring, f, initial_state(f, g0, h0)?, levels)
}

/// Applies `levels` lift steps to `s`.
pub fn lift_from(ring: &TruncRing, f: &TruncatedPoly, mut s: LiftState, levels: u32) -> Result<LiftState> {
    for _ in 0..levels {
        s = lift_step(ring, &s, f)?;
    }
    Ok(s)
}

/// Iterated lift of `f(0, y) = g0·h0`; returns `g_ℓ` cut to total degree `≤ d`
/// (arity `n + 1`, `y` last) together with `h_ℓ`.
pub fn iterate_lift(f: &SparsePoly, g0: &UniPoly, h0: &UniPoly, d: u32) -> Result<(SparsePoly, TruncatedPoly)> {
    if f.arity() == 0 {
        return Err(Error::precondition("f needs the variable y"));
    }
    let n = f.arity() - 1;
    let ring = TruncRing::new(n, 1 << lift_levels(d));
    let ft = TruncatedPoly::from_sparse(&ring, f)?;
    let s = lift_to_level(&ring, &ft, g0, h0, d)?;
    let g = s.g.to_sparse(&ring).hom_component_leq(d);
    Ok((g, s.h))
}
