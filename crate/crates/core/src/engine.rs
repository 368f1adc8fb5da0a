//! Low-degree factors with multiplicities.
//!
//! Candidates come from Hensel lifting along lines: restrict to a line,
//! factor the univariate restriction, lift every small sub-product and
//! read off a polynomial of degree `≤ d`. Candidates are then pruned by
//! exact divisibility and irreducibility, and multiplicities are read off
//! derivatives.
//!
//! A point on a line is *certified* when every irreducible factor of degree
//! `≤ d` of the restriction `U` is simple in `U`, after dividing out the
//! restrictions of factors that are already known. At a certified point every
//! multiplicity-one factor of degree `≤ d` whose leading form does not vanish
//! in the line direction restricts to a product of simple factors of `U`
//! coprime to its cofactor, so lifting the right subset recovers it. The
//! search along a direction stops at the first certified point.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::divres::{divides, ExactPit, Pit};
use crate::error::{Error, Result};
use crate::formula::{Formula, Node, DEFAULT_TERM_BUDGET};
use crate::hensel::{initial_state_with_bezout, lift_from, lift_levels, TruncRing, TruncatedPoly};
use crate::hitting::{combinations, DeltaSequence, HittingSet};
use crate::poly::SparsePoly;
use crate::rational::{from_int, Rational};
use crate::uni::{factor_univariate, interpolate, xgcd, UniPoly};

/// How the search for good shift points is bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PitMode {
    /// Exhaust the grid whose size comes from the degree bound of the
    /// obstruction polynomial, unless a point is certified first.
    Guaranteed,
    /// Stop after `delta_budget` points per direction.
    Budgeted,
}

/// Order in which shift points are proposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaSampler {
    /// The deterministic graded grid order.
    Graded,
    /// Uniform points from a seeded generator. Departs from determinism
    /// across seeds, though certified results are the same.
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Sparse,
    Formula,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Degree bound on the factors sought.
    pub d: u32,
    pub mode: PitMode,
    /// Points per direction in budgeted mode.
    pub delta_budget: u64,
    /// Hard cap on points per direction in guaranteed mode; exceeding it is a resource error.
    pub visit_budget: u64,
    /// Points tried per level on the first pass before moving on.
    pub probe_points: u64,
    /// Term cap when expanding formulas.
    pub term_budget: usize,
    pub sampler: DeltaSampler,
    pub threads: usize,
    /// Re-check every emitted factor by plain long division.
    pub verify: bool,
    pub input_kind: InputKind,
}

impl EngineConfig {
    pub fn guaranteed(d: u32) -> Self {
        EngineConfig {
            d,
            mode: PitMode::Guaranteed,
            delta_budget: 10_000,
            visit_budget: 5_000,
            probe_points: 6,
            term_budget: DEFAULT_TERM_BUDGET,
            sampler: DeltaSampler::Graded,
            threads: 1,
            verify: true,
            input_kind: InputKind::Sparse,
        }
    }

    pub fn budgeted(d: u32, delta_budget: u64) -> Self {
        EngineConfig {
            mode: PitMode::Budgeted,
            delta_budget,
            ..Self::guaranteed(d)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::precondition("the degree bound d must be at least 1"));
        }
        if self.threads == 0 {
            return Err(Error::precondition("threads must be at least 1"));
        }
        if self.delta_budget == 0 || self.visit_budget == 0 {
            return Err(Error::precondition("point budgets must be positive"));
        }
        Ok(())
    }
}

/// Work counters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub directions: u64,
    pub levels: u64,
    pub points: u64,
    pub certified_points: u64,
    pub lifts: u64,
    /// Lift steps whose four postconditions were checked.
    pub hensel_steps: u64,
    pub candidates: u64,
    pub rejected_by_line: u64,
    pub rejected_by_division: u64,
    pub rejected_reducible: u64,
    pub irreducibility_checks: u64,
}

impl Stats {
    fn absorb(&mut self, other: &Stats) {
        self.directions += other.directions;
        self.levels += other.levels;
        self.points += other.points;
        self.certified_points += other.certified_points;
        self.lifts += other.lifts;
        self.hensel_steps += other.hensel_steps;
        self.candidates += other.candidates;
        self.rejected_by_line += other.rejected_by_line;
        self.rejected_by_division += other.rejected_by_division;
        self.rejected_reducible += other.rejected_reducible;
        self.irreducibility_checks += other.irreducibility_checks;
    }
}

/// Normalized, duplicate-free candidate factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateList {
    entries: Vec<SparsePoly>,
    seen: HashSet<SparsePoly>,
    /// Every direction ended at a certified point or an exhausted grid.
    pub complete: bool,
}

impl CandidateList {
    pub fn entries(&self) -> &[SparsePoly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts `g` after normalization; false for constants and repeats.
    pub fn insert(&mut self, g: &SparsePoly) -> Result<bool> {
        if g.degree() < 1 {
            return Ok(false);
        }
        let g = g.canonical_normalize()?;
        if self.seen.contains(&g) {
            return Ok(false);
        }
        self.seen.insert(g.clone());
        self.entries.push(g);
        Ok(true)
    }

    pub fn contains(&self, g: &SparsePoly) -> bool {
        g.canonical_normalize().is_ok_and(|g| self.seen.contains(&g))
    }
}

/// Irreducible factors with multiplicities, sorted by degree and leading monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorList {
    pub entries: Vec<(SparsePoly, u32)>,
}

impl FactorList {
    fn sort(&mut self) {
        self.entries.sort_by(|a, b| factor_order(&a.0, &b.0));
    }
}

fn factor_order(a: &SparsePoly, b: &SparsePoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.leading_term().map(|t| t.0).cmp(&b.leading_term().map(|t| t.0)))
        .then_with(|| {
            let ka = a.terms().iter().rev();
            let kb = b.terms().iter().rev();
            ka.cmp(kb)
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub factors: FactorList,
    /// `f` is a constant times a product of the listed factors.
    pub complete_product: bool,
    /// The search provably found every factor of degree `≤ d`.
    pub complete: bool,
    pub stats: Stats,
}

/// Input to the engine.
#[derive(Clone, Debug)]
pub enum Input {
    Sparse(SparsePoly),
    Formula(Formula),
}

/// A polynomial we can restrict to lines and shift modulo `⟨x⟩^N`.
trait LineSource: Sync {
    fn arity(&self) -> usize;
    fn degree(&self) -> u32;
    /// Whether the leading form is known to be nonzero at `a`.
    fn top_nonzero(&self, a: &[Rational]) -> Result<bool>;
    /// `t ↦ P(a·t + p)`.
    fn restrict(&self, a: &[Rational], p: &[Rational]) -> Result<UniPoly>;
    /// `P(x + a·y + p) mod ⟨x⟩^order`.
    fn shifted(&self, ring: &TruncRing, a: &[Rational], p: &[Rational]) -> Result<TruncatedPoly>;
}

/// `P(a·t + p)` for an explicit polynomial.
pub fn restrict_to_line(poly: &SparsePoly, a: &[Rational], p: &[Rational]) -> Result<UniPoly> {
    let ring = TruncRing::new(poly.arity(), 1);
    Ok(TruncatedPoly::from_shifted_sparse(&ring, poly, a, p)?.at_origin())
}

struct SparseSource<'a> {
    poly: &'a SparsePoly,
    top: SparsePoly,
}

impl<'a> SparseSource<'a> {
    fn new(poly: &'a SparsePoly) -> Self {
        let top = poly.hom_component(poly.degree().max(0) as u32);
        SparseSource { poly, top }
    }
}

impl LineSource for SparseSource<'_> {
    fn arity(&self) -> usize {
        self.poly.arity()
    }

    fn degree(&self) -> u32 {
        self.poly.degree().max(0) as u32
    }

    fn top_nonzero(&self, a: &[Rational]) -> Result<bool> {
        Ok(!self.top.evaluate(a)?.is_zero())
    }

    fn restrict(&self, a: &[Rational], p: &[Rational]) -> Result<UniPoly> {
        restrict_to_line(self.poly, a, p)
    }

    fn shifted(&self, ring: &TruncRing, a: &[Rational], p: &[Rational]) -> Result<TruncatedPoly> {
        TruncatedPoly::from_shifted_sparse(ring, self.poly, a, p)
    }
}

/// `F(x, y) = G(x + α·y)` for an `n`-variate `G`, without expanding `F`.
struct DirectionalSource<'a> {
    g: &'a SparsePoly,
    g_top: SparsePoly,
    alpha: &'a [Rational],
}

impl DirectionalSource<'_> {
    /// The `n`-space line `A·t + P` that `(a, p)` maps to.
    fn line(&self, a: &[Rational], p: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let n = self.g.arity();
        let dir = (0..n).map(|j| &a[j] + &self.alpha[j] * &a[n]).collect();
        let base = (0..n).map(|j| &p[j] + &self.alpha[j] * &p[n]).collect();
        (dir, base)
    }
}

impl LineSource for DirectionalSource<'_> {
    fn arity(&self) -> usize {
        self.g.arity() + 1
    }

    fn degree(&self) -> u32 {
        self.g.degree().max(0) as u32
    }

    fn top_nonzero(&self, a: &[Rational]) -> Result<bool> {
        let (dir, _) = self.line(a, a);
        Ok(!self.g_top.evaluate(&dir)?.is_zero())
    }

    fn restrict(&self, a: &[Rational], p: &[Rational]) -> Result<UniPoly> {
        let (dir, base) = self.line(a, p);
        restrict_to_line(self.g, &dir, &base)
    }

    fn shifted(&self, ring: &TruncRing, a: &[Rational], p: &[Rational]) -> Result<TruncatedPoly> {
        let n = self.g.arity();
        let (dir, base) = self.line(a, p);
        let small = TruncRing::new(n, ring.order());
        let t = TruncatedPoly::from_shifted_sparse(&small, self.g, &dir, &base)?;
        let forms: Vec<Vec<(usize, Rational)>> = (0..n)
            .map(|j| {
                let mut form = vec![(j, Rational::one())];
                if !self.alpha[j].is_zero() {
                    form.push((n, self.alpha[j].clone()));
                }
                form
            })
            .collect();
        t.substitute_linear(&small, ring, &forms)
    }
}

struct FormulaSource<'a> {
    formula: &'a Formula,
    degree: u32,
}

impl LineSource for FormulaSource<'_> {
    fn arity(&self) -> usize {
        self.formula.arity()
    }

    fn degree(&self) -> u32 {
        self.degree
    }

    /// The exact degree of a formula is unknown, so no direction is trusted to cover everything.
    fn top_nonzero(&self, _a: &[Rational]) -> Result<bool> {
        Ok(false)
    }

    /// Univariate interpolation through `degree + 1` evaluations.
    fn restrict(&self, a: &[Rational], p: &[Rational]) -> Result<UniPoly> {
        let pts = (0..=self.degree as i64)
            .map(|t| {
                let t = from_int(t);
                let point: Vec<Rational> = a.iter().zip(p).map(|(ai, pi)| ai * &t + pi).collect();
                Ok((t, self.formula.evaluate(&point)?))
            })
            .collect::<Result<Vec<_>>>()?;
        interpolate(&pts)
    }

    fn shifted(&self, ring: &TruncRing, a: &[Rational], p: &[Rational]) -> Result<TruncatedPoly> {
        Ok(eval_truncated(self.formula.root(), ring, a, p))
    }
}

/// Evaluates a formula over `ℚ[x]/⟨x⟩^order [y]` at `x + a·y + p`.
fn eval_truncated(node: &Node, ring: &TruncRing, a: &[Rational], p: &[Rational]) -> TruncatedPoly {
    let m = ring.order();
    match node {
        Node::Const(c) => TruncatedPoly::constant(ring, c),
        Node::Var(j) => TruncatedPoly::shifted_variable(ring, *j, &a[*j], &p[*j]),
        Node::Sum(edges) => edges.iter().fold(TruncatedPoly::zero(), |acc, e| {
            acc.add(&eval_truncated(&e.node, ring, a, p).scale(&e.scalar), ring, m)
        }),
        Node::Prod(edges) => edges.iter().fold(TruncatedPoly::constant(ring, &Rational::one()), |acc, e| {
            acc.mul(&eval_truncated(&e.node, ring, a, p).scale(&e.scalar), ring, m)
        }),
    }
}

/// Outcome of one point: the restriction, its factorization and the lifted candidates.
struct Visit {
    u: UniPoly,
    factors: Vec<(UniPoly, u32)>,
    /// `g_ℓ(X − p, 0)` in the coordinates of the source.
    lifted: Vec<SparsePoly>,
}

/// Sub-products of at most `d` irreducible factors with total degree `≤ d`,
/// by size and then lexicographically.
fn small_subsets(factors: &[(UniPoly, u32)], d: u32) -> Vec<Vec<usize>> {
    let eligible: Vec<usize> = (0..factors.len())
        .filter(|&j| factors[j].0.degree() as u32 * factors[j].1 <= d)
        .collect();
    let mut out = Vec::new();
    for size in 1..=(d as usize).min(eligible.len()) {
        for comb in combinations(eligible.len(), size) {
            let deg: u32 = comb
                .iter()
                .map(|&k| factors[eligible[k]].0.degree() as u32 * factors[eligible[k]].1)
                .sum();
            if deg <= d {
                out.push(comb.iter().map(|&k| eligible[k]).collect());
            }
        }
    }
    out
}

fn visit_point<S: LineSource>(src: &S, a: &[Rational], p: &[Rational], cfg: &EngineConfig, stats: &mut Stats) -> Result<Visit> {
    stats.points += 1;
    let u = src.restrict(a, p)?;
    if u.degree() < 1 {
        return Ok(Visit {
            u,
            factors: Vec::new(),
            lifted: Vec::new(),
        });
    }
    let factors = factor_univariate(&u)?.factors;
    let subsets = small_subsets(&factors, cfg.d);
    if subsets.is_empty() {
        return Ok(Visit {
            u,
            factors,
            lifted: Vec::new(),
        });
    }
    let m = src.arity();
    let levels = lift_levels(cfg.d);
    let ring = TruncRing::new(m, 1 << levels);
    let shifted = src.shifted(&ring, a, p)?;
    if shifted.at_origin() != u {
        return Err(Error::Internal("shifted source disagrees with its line restriction".into()));
    }
    let lift_one = |subset: &Vec<usize>| -> Result<Option<SparsePoly>> {
        let g0 = subset
            .iter()
            .fold(UniPoly::one(), |acc, &j| &acc * &factors[j].0.pow(factors[j].1));
        let (h0, rem) = u.div_rem(&g0)?;
        if !rem.is_zero() {
            return Err(Error::Internal("sub-product does not divide the restriction".into()));
        }
        let (u0, v0, gcd) = xgcd(&g0, &h0)?;
        if gcd.degree() != 0 {
            return Ok(None);
        }
        let state = initial_state_with_bezout(&shifted, &g0, &h0, &u0, &v0)?;
        let lifted = lift_from(&ring, &shifted, state, levels)?;
        let g = lifted.g.to_sparse(&ring).hom_component_leq(cfg.d);
        let mut at_zero = vec![None; m + 1];
        at_zero[m] = Some(Rational::zero());
        let g = g.partial_evaluate(&at_zero).drop_variable(m);
        let back: Vec<Rational> = p.iter().map(|c| -c).collect();
        Ok(Some(g.translate(&back)?))
    };
    let results: Vec<Result<Option<SparsePoly>>> = if cfg.threads > 1 && subsets.len() > 1 {
        let chunk = subsets.len().div_ceil(cfg.threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = subsets
                .chunks(chunk)
                .map(|part| scope.spawn(|| part.iter().map(lift_one).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("lift worker panicked")).collect()
        })
    } else {
        subsets.iter().map(lift_one).collect()
    };
    let mut lifted = Vec::new();
    for r in results {
        if let Some(g) = r? {
            stats.lifts += 1;
            stats.hensel_steps += levels as u64;
            lifted.push(g);
        }
    }
    Ok(Visit { u, factors, lifted })
}

/// True when no irreducible factor of degree `≤ d` of `u` can be shared
/// between a multiplicity-one factor and its cofactor.
///
/// `known` lists restrictions of factors known to divide the source, with
/// their exact multiplicities there.
fn certify(u: &UniPoly, factors: &[(UniPoly, u32)], known: &[(UniPoly, u32)], d: u32) -> Result<bool> {
    if u.is_zero() {
        return Ok(false);
    }
    let mut rest = u.clone();
    for (k, mult) in known {
        if k.degree() < 1 {
            continue;
        }
        for _ in 0..*mult {
            rest = rest
                .exact_div(k)?
                .ok_or_else(|| Error::Internal(format!("known factor {k} does not divide the restriction")))?;
        }
    }
    for (phi, mu) in factors {
        if *mu >= 2 && phi.degree() as u32 <= d && rest.exact_div(phi)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

enum DeltaIter {
    Graded(DeltaSequence),
    Random { rng: ChaCha8Rng, m: usize, range: u64, left: u64 },
}

impl Iterator for DeltaIter {
    type Item = Vec<Rational>;
    fn next(&mut self) -> Option<Vec<Rational>> {
        match self {
            DeltaIter::Graded(seq) => seq.next(),
            DeltaIter::Random { rng, m, range, left } => {
                if *left == 0 {
                    return None;
                }
                *left -= 1;
                Some((0..*m).map(|_| from_int(rng.gen_range(0..=*range as i64))).collect())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SearchStatus {
    Certified,
    /// The guaranteed grid was fully visited.
    Exhausted,
    /// The budget ran out first.
    OutOfBudget,
    /// Stopped early; can be resumed.
    Paused,
}

impl SearchStatus {
    fn is_complete(self) -> bool {
        matches!(self, SearchStatus::Certified | SearchStatus::Exhausted)
    }
}

/// Resumable walk over shift points `β + δ` along one direction.
///
/// `β` is the first point of `H(d, m)` (the origin). Exhausting the `δ` grid
/// for one `β` already meets every obstruction polynomial of the bounded
/// degree, so later `β` are never needed.
struct PointSearch {
    deltas: DeltaIter,
    visited: u64,
    limit: u64,
    grid_fits: bool,
    grid: u128,
}

impl PointSearch {
    fn new(m: usize, degree: u32, cfg: &EngineConfig, salt: u64) -> Self {
        let side = degree as u128 * degree as u128 + 1;
        let grid = side.saturating_pow(m as u32);
        let (limit, grid_fits) = match cfg.mode {
            PitMode::Guaranteed if grid <= cfg.visit_budget as u128 => (grid as u64, true),
            PitMode::Guaranteed => (cfg.visit_budget, false),
            PitMode::Budgeted => (cfg.delta_budget, false),
        };
        let deltas = match cfg.sampler {
            DeltaSampler::Random { seed } if cfg.mode == PitMode::Budgeted => DeltaIter::Random {
                rng: ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
                m,
                range: (2 * cfg.d as u64 * degree.max(1) as u64).max(4),
                left: limit,
            },
            _ => DeltaIter::Graded(DeltaSequence::new(m, Some(limit))),
        };
        PointSearch {
            deltas,
            visited: 0,
            limit,
            grid_fits,
            grid,
        }
    }

    /// Visits up to `max_new` more points; `on_visit` returns whether the point is certified.
    fn run<S: LineSource>(
        &mut self,
        src: &S,
        a: &[Rational],
        cfg: &EngineConfig,
        stats: &mut Stats,
        max_new: u64,
        context: &dyn Fn() -> String,
        on_visit: &mut dyn FnMut(&Visit, &[Rational], &mut Stats) -> Result<bool>,
    ) -> Result<SearchStatus> {
        let mut fresh = 0;
        while fresh < max_new {
            let Some(p) = self.deltas.next() else {
                return self.finish(cfg, context);
            };
            self.visited += 1;
            fresh += 1;
            let visit = visit_point(src, a, &p, cfg, stats)?;
            if on_visit(&visit, &p, stats)? {
                stats.certified_points += 1;
                return Ok(SearchStatus::Certified);
            }
        }
        if self.visited >= self.limit {
            return self.finish(cfg, context);
        }
        Ok(SearchStatus::Paused)
    }

    fn finish(&self, cfg: &EngineConfig, context: &dyn Fn() -> String) -> Result<SearchStatus> {
        match cfg.mode {
            PitMode::Guaranteed if self.grid_fits => Ok(SearchStatus::Exhausted),
            PitMode::Guaranteed => Err(Error::Resource(format!(
                "no certified point within the visit budget of {} ({}); the guaranteed grid has {} points",
                self.limit,
                context(),
                self.grid
            ))),
            PitMode::Budgeted => Ok(SearchStatus::OutOfBudget),
        }
    }
}

fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Directions to search for a source: the first point of `H(d, m)` where the
/// leading form survives (it covers every factor), otherwise all of them.
fn directions<S: LineSource>(src: &S, d: u32) -> Result<Vec<Vec<Rational>>> {
    let hs = HittingSet::new(d as usize, src.arity());
    for a in hs.points() {
        if src.top_nonzero(a)? {
            return Ok(vec![a.clone()]);
        }
    }
    Ok(hs.points().to_vec())
}

fn run_candidates<S: LineSource>(src: &S, cfg: &EngineConfig, stats: &mut Stats) -> Result<CandidateList> {
    let mut list = CandidateList {
        complete: true,
        ..Default::default()
    };
    for (k, a) in directions(src, cfg.d)?.into_iter().enumerate() {
        stats.directions += 1;
        let mut search = PointSearch::new(src.arity(), src.degree(), cfg, k as u64);
        let context = || format!("direction {}", format_point(&a));
        let status = search.run(src, &a, cfg, stats, u64::MAX, &context, &mut |visit, _, stats| {
            for g in &visit.lifted {
                if list.insert(g)? {
                    stats.candidates += 1;
                }
            }
            certify(&visit.u, &visit.factors, &[], cfg.d)
        })?;
        list.complete &= status.is_complete();
    }
    Ok(list)
}

/// Candidate factors of degree `≤ d`: every irreducible `g` with `deg g ≤ d`,
/// `g | f` and `g² ∤ f` is among them (up to normalization) whenever the
/// returned list is marked complete.
pub fn candidate_factors_mult_one(f: &SparsePoly, cfg: &EngineConfig) -> Result<CandidateList> {
    cfg.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("candidate_factors_mult_one"));
    }
    if f.degree() < 1 {
        return Ok(CandidateList {
            complete: true,
            ..Default::default()
        });
    }
    run_candidates(&SparseSource::new(f), cfg, &mut Stats::default())
}

/// [`candidate_factors_mult_one`] for a formula, restricting to lines by interpolation.
pub fn candidate_factors_mult_one_formula(f: &Formula, cfg: &EngineConfig) -> Result<CandidateList> {
    cfg.validate()?;
    let degree = f.measures().degree_bound as u32;
    let src = FormulaSource { formula: f, degree };
    run_candidates(&src, cfg, &mut Stats::default())
}

/// A fixed line `A·t + P` with `f_top(A) ≠ 0` and the restriction of `f`.
#[derive(Clone, Debug)]
struct TestLine {
    a: Vec<Rational>,
    p: Vec<Rational>,
    restricted: UniPoly,
}

const TEST_LINES: usize = 3;

fn choose_lines(f: &SparsePoly) -> Result<Vec<TestLine>> {
    let n = f.arity();
    let top = f.hom_component(f.degree() as u32);
    let mut lines = Vec::new();
    for a in DeltaSequence::new(n, None) {
        if lines.len() == TEST_LINES {
            break;
        }
        if top.evaluate(&a)?.is_zero() {
            continue;
        }
        let k = lines.len() as i64;
        let p: Vec<Rational> = (0..n as i64).map(|j| from_int(((j + 1) * (2 * k + 3)) % 11 - 5)).collect();
        let restricted = restrict_to_line(f, &a, &p)?;
        lines.push(TestLine { a, p, restricted });
    }
    Ok(lines)
}

/// Degrees in `1..=d` reachable as degrees of factors of `u`.
fn reachable_degrees(u: &UniPoly, d: u32) -> Result<Vec<bool>> {
    let mut reach = vec![false; d as usize + 1];
    reach[0] = true;
    if u.degree() < 1 {
        return Ok(reach);
    }
    for (phi, mu) in factor_univariate(u)?.factors {
        let step = phi.degree() as usize;
        for _ in 0..mu {
            for k in (step..=d as usize).rev() {
                if reach[k - step] {
                    reach[k] = true;
                }
            }
        }
    }
    Ok(reach)
}

/// Largest multiplicity of an irreducible factor of degree `≤ d` of `u`.
fn low_multiplicity_bound(u: &UniPoly, d: u32) -> Result<u32> {
    if u.degree() < 1 {
        return Ok(0);
    }
    Ok(factor_univariate(u)?
        .factors
        .iter()
        .filter(|(phi, _)| phi.degree() as u32 <= d)
        .map(|(_, mu)| *mu)
        .max()
        .unwrap_or(0))
}

/// Directional derivative `Σ α_j ∂_j p`.
fn directional_derivative(p: &SparsePoly, alpha: &[Rational]) -> SparsePoly {
    let mut acc = SparsePoly::zero(p.arity());
    for (j, c) in alpha.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &p.partial_derivative(j, 1).scale(c);
        }
    }
    acc
}

struct Factorizer<'a> {
    f: &'a SparsePoly,
    cfg: &'a EngineConfig,
    stats: Stats,
    lines: Vec<TestLine>,
    found: Vec<(SparsePoly, u32)>,
    seen: HashSet<SparsePoly>,
    /// `f` divided by every found factor power.
    cofactor: SparsePoly,
    irreducible: HashMap<SparsePoly, bool>,
}

/// One multiplicity level along one direction.
struct LevelTask {
    alpha: Vec<Rational>,
    level: u32,
    g: SparsePoly,
    search: PointSearch,
    status: SearchStatus,
}

impl<'a> Factorizer<'a> {
    fn new(f: &'a SparsePoly, cfg: &'a EngineConfig) -> Result<Self> {
        Ok(Factorizer {
            f,
            cfg,
            stats: Stats::default(),
            lines: choose_lines(f)?,
            found: Vec::new(),
            seen: HashSet::new(),
            cofactor: f.clone(),
            irreducible: HashMap::new(),
        })
    }

    /// The cofactor provably has no factor of degree `1..=d`: on every test
    /// line its restriction has no sub-product of a common degree in range.
    fn cofactor_free_of_low_factors(&self) -> Result<bool> {
        if self.cofactor.degree() < 1 {
            return Ok(true);
        }
        let d = self.cofactor.degree().min(self.cfg.d as i64) as u32;
        let mut common = vec![true; d as usize + 1];
        for line in &self.lines {
            let u = restrict_to_line(&self.cofactor, &line.a, &line.p)?;
            let reach = reachable_degrees(&u, d)?;
            for k in 1..=d as usize {
                common[k] &= reach[k];
            }
        }
        Ok(!common[1..].iter().any(|&r| r))
    }

    fn line_rejects(&self, numerator: impl Fn(&TestLine) -> Result<UniPoly>, g: &SparsePoly) -> Result<bool> {
        for line in &self.lines {
            let gl = restrict_to_line(g, &line.a, &line.p)?;
            if gl.degree() < 1 {
                continue;
            }
            if numerator(line)?.exact_div(&gl)?.is_none() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn is_irreducible(&mut self, g: &SparsePoly) -> Result<bool> {
        if let Some(&r) = self.irreducible.get(g) {
            return Ok(r);
        }
        self.stats.irreducibility_checks += 1;
        let r = is_irreducible_with(g, self.cfg)?;
        self.irreducible.insert(g.clone(), r);
        Ok(r)
    }

    /// Smallest `a ≥ 1` with `g ∤ ∂^a f/∂x^a`, given `g | f`.
    fn multiplicity(&self, g: &SparsePoly) -> Result<u32> {
        let var = (0..g.arity())
            .find(|&j| g.depends_on(j))
            .ok_or_else(|| Error::precondition("g is constant"))?;
        let mut fa = self.f.clone();
        let mut a = 0;
        loop {
            a += 1;
            fa = fa.partial_derivative(var, 1);
            if fa.is_zero() {
                return Err(Error::Internal(format!("derivative vanished before {g} stopped dividing")));
            }
            if self.line_rejects(|l| restrict_to_line(&fa, &l.a, &l.p), g)? {
                return Ok(a);
            }
            if !divides(&fa, g, &ExactPit)? {
                return Ok(a);
            }
        }
    }

    /// Prunes one candidate and records it if it is an irreducible factor.
    fn consider(&mut self, candidate: &SparsePoly) -> Result<()> {
        let n = self.f.arity();
        if candidate.degree() < 1 || candidate.degree() > self.cfg.d as i64 {
            return Ok(());
        }
        let g = candidate.canonical_normalize()?;
        debug_assert_eq!(g.arity(), n);
        if !self.seen.insert(g.clone()) {
            return Ok(());
        }
        self.stats.candidates += 1;
        if self.line_rejects(|l| Ok(l.restricted.clone()), &g)? {
            self.stats.rejected_by_line += 1;
            return Ok(());
        }
        if !divides(self.f, &g, &ExactPit)? {
            self.stats.rejected_by_division += 1;
            return Ok(());
        }
        if !self.is_irreducible(&g)? {
            self.stats.rejected_reducible += 1;
            return Ok(());
        }
        let e = self.multiplicity(&g)?;
        let power = g.pow(e);
        self.cofactor = self
            .cofactor
            .lex_divide(&power)?
            .ok_or_else(|| Error::Internal(format!("found factor ({g})^{e} does not divide the cofactor")))?;
        self.found.push((g, e));
        Ok(())
    }

    /// Restrictions of the found factors to the line of a level task, with
    /// their multiplicities in `∂^i F/∂y^i` where `F(x, y) = f(x + α·y)`.
    fn known_on_line(&self, task_alpha: &[Rational], level: u32, a: &[Rational], p: &[Rational]) -> Result<Vec<(UniPoly, u32)>> {
        let n = self.f.arity();
        let dir: Vec<Rational> = (0..n).map(|j| &a[j] + &task_alpha[j] * &a[n]).collect();
        let base: Vec<Rational> = (0..n).map(|j| &p[j] + &task_alpha[j] * &p[n]).collect();
        let mut out = Vec::new();
        for (k, e) in &self.found {
            let moves = !directional_derivative(k, task_alpha).is_zero();
            let mult = if moves { e.saturating_sub(level) } else { *e };
            if mult == 0 {
                continue;
            }
            out.push((restrict_to_line(k, &dir, &base)?, mult));
        }
        Ok(out)
    }

    fn run_task(&mut self, task: &mut LevelTask, max_new: u64) -> Result<()> {
        let n = self.f.arity();
        let mut e_y = vec![Rational::zero(); n + 1];
        e_y[n] = Rational::one();
        let g = task.g.clone();
        let alpha = task.alpha.clone();
        let src = DirectionalSource {
            g: &g,
            g_top: g.hom_component(g.degree().max(0) as u32),
            alpha: &alpha,
        };
        let level = task.level;
        let context = || format!("direction {}, level {}", format_point(&alpha), level);
        let mut search = std::mem::replace(&mut task.search, PointSearch::new(0, 0, self.cfg, 0));
        let mut stats = std::mem::take(&mut self.stats);
        let status = search.run(&src, &e_y, self.cfg, &mut stats, max_new, &context, &mut |visit, p, _| {
            for lifted in &visit.lifted {
                let mut at_zero = vec![None; n + 1];
                at_zero[n] = Some(Rational::zero());
                let candidate = lifted.partial_evaluate(&at_zero).drop_variable(n);
                self.consider(&candidate)?;
            }
            let known = self.known_on_line(&alpha, level, &e_y, p)?;
            certify(&visit.u, &visit.factors, &known, self.cfg.d)
        });
        stats.absorb(&self.stats);
        self.stats = stats;
        task.search = search;
        task.status = status?;
        Ok(())
    }

    fn stop(&self, complete_directions: &[Vec<Rational>]) -> Result<bool> {
        if self.cofactor_free_of_low_factors()? {
            return Ok(true);
        }
        let top = self.cofactor.hom_component(self.cofactor.degree() as u32);
        for a in complete_directions {
            if !top.evaluate(a)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn run(&mut self) -> Result<bool> {
        if self.stop(&[])? {
            return Ok(true);
        }
        let n = self.f.arity();
        let d = self.cfg.d;
        let hs = HittingSet::new(d as usize, n);
        let top = self.f.hom_component(self.f.degree() as u32);
        let mut order: Vec<Vec<Rational>> = Vec::new();
        for a in hs.points() {
            if !top.evaluate(a)?.is_zero() {
                order.push(a.clone());
                break;
            }
        }
        if order.is_empty() {
            order = hs.points().to_vec();
            order.sort_by_key(|a| std::cmp::Reverse(a.iter().filter(|c| !c.is_zero()).count()));
        }
        let mut complete_dirs: Vec<Vec<Rational>> = Vec::new();
        let mut pending: Vec<LevelTask> = Vec::new();
        let mut all_complete = true;
        for (k, alpha) in order.iter().enumerate() {
            self.stats.directions += 1;
            let first_line = self.lines[0].clone();
            let bound = low_multiplicity_bound(&restrict_to_line(&self.cofactor, &first_line.a, &first_line.p)?, d)?;
            let mut gs = vec![self.f.clone()];
            for i in 1..bound {
                let next = directional_derivative(&gs[i as usize - 1], alpha);
                gs.push(next);
            }
            let mut direction_complete = true;
            for level in (0..bound).rev() {
                let g = gs[level as usize].clone();
                if g.is_zero() {
                    continue;
                }
                self.stats.levels += 1;
                let salt = (k as u64) << 8 | level as u64;
                let search = PointSearch::new(n + 1, g.degree().max(0) as u32, self.cfg, salt);
                let mut task = LevelTask {
                    alpha: alpha.clone(),
                    level,
                    g,
                    search,
                    status: SearchStatus::Paused,
                };
                self.run_task(&mut task, self.cfg.probe_points)?;
                match task.status {
                    SearchStatus::Paused => {
                        direction_complete = false;
                        pending.push(task);
                    }
                    s => {
                        direction_complete &= s.is_complete();
                        all_complete &= s.is_complete();
                    }
                }
            }
            if direction_complete {
                complete_dirs.push(alpha.clone());
            }
            if self.stop(&complete_dirs)? {
                return Ok(true);
            }
        }
        for mut task in pending {
            self.run_task(&mut task, u64::MAX)?;
            all_complete &= task.status.is_complete();
            if self.stop(&complete_dirs)? {
                return Ok(true);
            }
        }
        Ok(all_complete)
    }
}

/// All irreducible factors of degree `≤ d` of `f`, with multiplicities.
pub fn all_low_degree_factors(f: &SparsePoly, cfg: &EngineConfig) -> Result<FactorReport> {
    cfg.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("all_low_degree_factors"));
    }
    if f.degree() < 1 {
        return Ok(FactorReport {
            factors: FactorList::default(),
            complete_product: true,
            complete: true,
            stats: Stats::default(),
        });
    }
    let mut run = Factorizer::new(f, cfg)?;
    let complete = run.run()?;
    let mut factors = FactorList { entries: run.found };
    factors.sort();
    if cfg.verify {
        for (g, e) in &factors.entries {
            if !verify_factor(f, g, *e)? {
                return Err(Error::Internal(format!("({g})^{e} failed the long-division check")));
            }
        }
    }
    let complete_product = degree_accounts_for(f, &factors);
    Ok(FactorReport {
        factors,
        complete_product,
        complete,
        stats: run.stats,
    })
}

/// Expands the formula within the term budget and factors the result.
pub fn all_low_degree_factors_formula(f: &Formula, cfg: &EngineConfig) -> Result<FactorReport> {
    let expanded = f.expand_with_budget(cfg.term_budget)?;
    all_low_degree_factors(&expanded, cfg)
}

pub fn factor(input: &Input, cfg: &EngineConfig) -> Result<FactorReport> {
    match input {
        Input::Sparse(p) => all_low_degree_factors(p, cfg),
        Input::Formula(f) => all_low_degree_factors_formula(f, cfg),
    }
}

/// `Σ e·deg g = deg f`: `f` is a constant times the product of the listed powers.
pub fn degree_accounts_for(f: &SparsePoly, factors: &FactorList) -> bool {
    let total: i64 = factors.entries.iter().map(|(g, e)| g.degree() * *e as i64).sum();
    total == f.degree().max(0)
}

/// `g^e | f` and `g^{e+1} ∤ f`, by long division.
pub fn verify_factor(f: &SparsePoly, g: &SparsePoly, e: u32) -> Result<bool> {
    if g.degree() < 1 {
        return Ok(false);
    }
    match f.lex_divide(&g.pow(e))? {
        None => Ok(false),
        Some(q) => Ok(q.lex_divide(g)?.is_none()),
    }
}

/// The smallest `a ≥ 0` with `g ∤ ∂^a f/∂x^a`, where `x` is variable `var`.
///
/// For irreducible `g` depending on `x` this is the multiplicity of `g` in `f`.
pub fn multiplicity(f: &SparsePoly, g: &SparsePoly, var: usize, pit: &dyn Pit) -> Result<u32> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            left: f.arity(),
            right: g.arity(),
        });
    }
    if var >= g.arity() || !g.depends_on(var) {
        return Err(Error::precondition(format!("g does not depend on x{}", var + 1)));
    }
    let mut fa = f.clone();
    let mut a = 0;
    loop {
        if fa.is_zero() {
            return Err(Error::Internal("derivative vanished while g still divides".into()));
        }
        if !divides(&fa, g, pit)? {
            return Ok(a);
        }
        a += 1;
        fa = fa.partial_derivative(var, 1);
    }
}

/// Irreducibility over ℚ of a polynomial of low degree.
///
/// Degree one is irreducible; otherwise `g` is irreducible exactly when it
/// has no irreducible factor of degree `≤ deg g − 1`.
pub fn is_irreducible_low_degree(g: &SparsePoly) -> Result<bool> {
    is_irreducible_with(g, &EngineConfig::guaranteed(1))
}

fn is_irreducible_with(g: &SparsePoly, cfg: &EngineConfig) -> Result<bool> {
    let deg = g.degree();
    if deg < 1 {
        return Err(Error::precondition("constants are neither irreducible nor reducible"));
    }
    if deg == 1 {
        return Ok(true);
    }
    let sub = EngineConfig {
        d: deg as u32 - 1,
        mode: PitMode::Guaranteed,
        sampler: DeltaSampler::Graded,
        verify: false,
        ..cfg.clone()
    };
    Ok(all_low_degree_factors(g, &sub)?.factors.entries.is_empty())
}
