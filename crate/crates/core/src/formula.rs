//! Arithmetic formulas with rational edge scalars.

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hitting::HittingSet;
use crate::linalg;
use crate::poly::{Monomial, SparsePoly};
use crate::rational::{bit, format_rational, parse_rational, Rational};

/// A weighted edge from a gate to one of its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub scalar: Rational,
    pub node: Node,
}

impl Edge {
    pub fn new(node: Node) -> Self {
        Edge {
            scalar: Rational::one(),
            node,
        }
    }

    pub fn scaled(scalar: Rational, node: Node) -> Self {
        Edge { scalar, node }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Const(Rational),
    /// Zero-based variable index.
    Var(usize),
    Sum(Vec<Edge>),
    Prod(Vec<Edge>),
}

/// A formula (tree-shaped arithmetic circuit) over `arity` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    arity: usize,
    root: Node,
}

/// Structural measures of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormulaMeasures {
    /// Number of nodes.
    pub size: u64,
    /// Gate layers on the longest root-to-leaf path.
    pub depth: u64,
    /// Product gates on the root-to-leaf path with the most of them.
    pub product_depth: u64,
    /// Size plus the bit-complexities of every edge scalar and constant leaf.
    pub bit: u64,
    /// Syntactic degree bound: sums take the maximum, products the sum.
    pub degree_bound: u64,
}

/// Default cap on the number of terms in any intermediate of [`Formula::expand`].
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;

impl Formula {
    pub fn new(arity: usize, root: Node) -> Result<Self> {
        let max = max_var(&root);
        if let Some(m) = max {
            if m >= arity {
                return Err(Error::Formula {
                    path: "$".into(),
                    message: format!("variable index {} exceeds arity {}", m + 1, arity),
                });
            }
        }
        Ok(Formula { arity, root })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Depth-two formula listing the monomials of `p`.
    pub fn from_sparse(p: &SparsePoly) -> Self {
        let children = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                for (i, &e) in m.exps().iter().enumerate() {
                    for _ in 0..e {
                        factors.push(Edge::new(Node::Var(i)));
                    }
                }
                let node = if factors.is_empty() {
                    Node::Const(Rational::one())
                } else {
                    Node::Prod(factors)
                };
                Edge::scaled(c.clone(), node)
            })
            .collect();
        Formula {
            arity: p.arity(),
            root: Node::Sum(children),
        }
    }

    pub fn measures(&self) -> FormulaMeasures {
        fn walk(node: &Node) -> FormulaMeasures {
            match node {
                Node::Const(c) => FormulaMeasures {
                    size: 1,
                    depth: 0,
                    product_depth: 0,
                    bit: 1 + bit(c),
                    degree_bound: 0,
                },
                Node::Var(_) => FormulaMeasures {
                    size: 1,
                    depth: 0,
                    product_depth: 0,
                    bit: 1,
                    degree_bound: 1,
                },
                Node::Sum(edges) | Node::Prod(edges) => {
                    let is_prod = matches!(node, Node::Prod(_));
                    let mut m = FormulaMeasures {
                        size: 1,
                        depth: 0,
                        product_depth: 0,
                        bit: 1,
                        degree_bound: 0,
                    };
                    for e in edges {
                        let c = walk(&e.node);
                        m.size += c.size;
                        m.depth = m.depth.max(c.depth);
                        m.product_depth = m.product_depth.max(c.product_depth);
                        m.bit += c.bit + bit(&e.scalar);
                        m.degree_bound = if is_prod {
                            m.degree_bound + c.degree_bound
                        } else {
                            m.degree_bound.max(c.degree_bound)
                        };
                    }
                    m.depth += 1;
                    if is_prod {
                        m.product_depth += 1;
                    }
                    m
                }
            }
        }
        walk(&self.root)
    }

    /// Exact value at `a`.
    pub fn evaluate(&self, a: &[Rational]) -> Result<Rational> {
        if a.len() != self.arity {
            return Err(Error::PointLength {
                expected: self.arity,
                got: a.len(),
            });
        }
        fn walk(node: &Node, a: &[Rational]) -> Rational {
            match node {
                Node::Const(c) => c.clone(),
                Node::Var(i) => a[*i].clone(),
                Node::Sum(edges) => {
                    let mut acc = Rational::zero();
                    for e in edges {
                        if !e.scalar.is_zero() {
                            acc += &e.scalar * walk(&e.node, a);
                        }
                    }
                    acc
                }
                Node::Prod(edges) => {
                    let mut acc = Rational::one();
                    for e in edges {
                        acc *= &e.scalar;
                        if acc.is_zero() {
                            return acc;
                        }
                        acc *= walk(&e.node, a);
                    }
                    acc
                }
            }
        }
        Ok(walk(&self.root, a))
    }

    /// Expands to a sparse polynomial, failing once an intermediate exceeds `term_budget` terms.
    pub fn expand_with_budget(&self, term_budget: usize) -> Result<SparsePoly> {
        let n = self.arity;
        fn walk(node: &Node, n: usize, budget: usize) -> Result<SparsePoly> {
            let p = match node {
                Node::Const(c) => SparsePoly::constant(n, c.clone()),
                Node::Var(i) => SparsePoly::var(n, *i),
                Node::Sum(edges) => {
                    let mut acc = SparsePoly::zero(n);
                    for e in edges {
                        if e.scalar.is_zero() {
                            continue;
                        }
                        acc = &acc + &walk(&e.node, n, budget)?.scale(&e.scalar);
                    }
                    acc
                }
                Node::Prod(edges) => {
                    let mut acc = SparsePoly::one(n);
                    for e in edges {
                        acc = acc.scale(&e.scalar);
                        if acc.is_zero() {
                            break;
                        }
                        let child = walk(&e.node, n, budget)?;
                        if acc.sparsity().saturating_mul(child.sparsity()) > budget.saturating_mul(64) {
                            return Err(Error::Resource(format!(
                                "formula expansion would multiply {} by {} terms",
                                acc.sparsity(),
                                child.sparsity()
                            )));
                        }
                        acc = &acc * &child;
                        if acc.sparsity() > budget {
                            return Err(Error::Resource(format!(
                                "formula expansion exceeded {budget} terms"
                            )));
                        }
                    }
                    acc
                }
            };
            if p.sparsity() > budget {
                return Err(Error::Resource(format!(
                    "formula expansion exceeded {budget} terms"
                )));
            }
            Ok(p)
        }
        walk(&self.root, n, term_budget)
    }

    pub fn expand(&self) -> Result<SparsePoly> {
        self.expand_with_budget(DEFAULT_TERM_BUDGET)
    }

    /// Formula over `x1..xn, y` computing `C(x + α y + β)`.
    ///
    /// Each variable leaf `x_i` becomes the sum `x_i + α_i y + β_i`, with zero
    /// parts left out; `y` is the last variable.
    pub fn substitute_affine(&self, alpha: &[Rational], beta: &[Rational]) -> Result<Formula> {
        for v in [alpha, beta] {
            if v.len() != self.arity {
                return Err(Error::PointLength {
                    expected: self.arity,
                    got: v.len(),
                });
            }
        }
        let y = self.arity;
        fn walk(node: &Node, alpha: &[Rational], beta: &[Rational], y: usize) -> Node {
            match node {
                Node::Const(c) => Node::Const(c.clone()),
                Node::Var(i) => {
                    if alpha[*i].is_zero() && beta[*i].is_zero() {
                        return Node::Var(*i);
                    }
                    let mut parts = vec![Edge::new(Node::Var(*i))];
                    if !alpha[*i].is_zero() {
                        parts.push(Edge::scaled(alpha[*i].clone(), Node::Var(y)));
                    }
                    if !beta[*i].is_zero() {
                        parts.push(Edge::new(Node::Const(beta[*i].clone())));
                    }
                    Node::Sum(parts)
                }
                Node::Sum(edges) => Node::Sum(
                    edges
                        .iter()
                        .map(|e| Edge::scaled(e.scalar.clone(), walk(&e.node, alpha, beta, y)))
                        .collect(),
                ),
                Node::Prod(edges) => Node::Prod(
                    edges
                        .iter()
                        .map(|e| Edge::scaled(e.scalar.clone(), walk(&e.node, alpha, beta, y)))
                        .collect(),
                ),
            }
        }
        Ok(Formula {
            arity: self.arity + 1,
            root: walk(&self.root, alpha, beta, y),
        })
    }

    /// Recovers the polynomial computed by the formula from its values on
    /// `H(d, n)` with `T_d = {0, …, d}`, assuming it has total degree ≤ `d`.
    ///
    /// The unknowns are the coefficients of all monomials of degree ≤ `d`;
    /// the system is solved exactly, and an inconsistent system reports that
    /// the degree assumption was wrong.
    pub fn interpolate_low_degree(&self, d: usize) -> Result<SparsePoly> {
        let n = self.arity;
        let monomials = monomials_up_to(n, d as u32);
        let points = HittingSet::new(d, n);
        let mut rows = Vec::with_capacity(points.len());
        let mut rhs = Vec::with_capacity(points.len());
        for pt in points.points() {
            let row: Vec<Rational> = monomials
                .iter()
                .map(|m| {
                    let mut v = Rational::one();
                    for (i, &e) in m.exps().iter().enumerate() {
                        if e > 0 {
                            v *= num_traits::pow(pt[i].clone(), e as usize);
                        }
                    }
                    v
                })
                .collect();
            rows.push(row);
            rhs.push(self.evaluate(pt)?);
        }
        let coeffs = linalg::solve(&rows, &rhs).map_err(|f| match f {
            linalg::SolveFailure::Inconsistent => Error::precondition(format!(
                "formula values are not those of a polynomial of degree at most {d}"
            )),
            linalg::SolveFailure::Singular => {
                Error::Internal("interpolation points do not determine the coefficients".into())
            }
        })?;
        Ok(SparsePoly::from_terms(n, monomials.into_iter().zip(coeffs)))
    }

    /// The JSON document form.
    pub fn to_json(&self) -> Value {
        fn node_json(node: &Node) -> Value {
            match node {
                Node::Const(c) => json!({"op": "const", "value": format_rational(c)}),
                Node::Var(i) => json!({"op": "var", "index": i + 1}),
                Node::Sum(edges) | Node::Prod(edges) => {
                    let op = if matches!(node, Node::Sum(_)) { "sum" } else { "prod" };
                    let children: Vec<Value> = edges
                        .iter()
                        .map(|e| {
                            let mut m = Map::new();
                            if !e.scalar.is_one() {
                                m.insert("scalar".into(), Value::String(format_rational(&e.scalar)));
                            }
                            m.insert("node".into(), node_json(&e.node));
                            Value::Object(m)
                        })
                        .collect();
                    json!({"op": op, "children": children})
                }
            }
        }
        node_json(&self.root)
    }

    /// Parses the JSON form. Variable indices in the document are 1-based.
    /// `arity` defaults to the largest index used (at least 1).
    pub fn from_json(doc: &Value, arity: Option<usize>) -> Result<Formula> {
        let root = parse_node(doc, "$")?;
        let max = max_var(&root).map_or(1, |m| m + 1);
        let n = arity.unwrap_or(max);
        Formula::new(n, root)
    }

    pub fn from_json_str(text: &str, arity: Option<usize>) -> Result<Formula> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Formula {
            path: "$".into(),
            message: format!("invalid JSON: {e}"),
        })?;
        Formula::from_json(&doc, arity)
    }
}

fn max_var(node: &Node) -> Option<usize> {
    match node {
        Node::Const(_) => None,
        Node::Var(i) => Some(*i),
        Node::Sum(edges) | Node::Prod(edges) => edges.iter().filter_map(|e| max_var(&e.node)).max(),
    }
}

fn schema_err(path: &str, message: impl Into<String>) -> Error {
    Error::Formula {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_scalar(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| schema_err(path, format!("bad rational {s:?}: {e}"))),
        Value::Number(num) if num.is_i64() => Ok(Rational::from_integer(num.as_i64().unwrap().into())),
        _ => Err(schema_err(path, "expected a rational written as a string \"p/q\" or an integer")),
    }
}

fn parse_node(v: &Value, path: &str) -> Result<Node> {
    let obj = v.as_object().ok_or_else(|| schema_err(path, "node must be an object"))?;
    let op = obj
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| schema_err(path, "missing string field \"op\""))?;
    let allowed: &[&str] = match op {
        "const" => &["op", "value"],
        "var" => &["op", "index"],
        "sum" | "prod" => &["op", "children"],
        other => return Err(schema_err(path, format!("unknown op {other:?}"))),
    };
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(schema_err(path, format!("unexpected field {k:?} for op {op:?}")));
    }
    match op {
        "const" => {
            let value = obj
                .get("value")
                .ok_or_else(|| schema_err(path, "const node needs \"value\""))?;
            Ok(Node::Const(parse_scalar(value, &format!("{path}.value"))?))
        }
        "var" => {
            let idx = obj
                .get("index")
                .and_then(Value::as_u64)
                .ok_or_else(|| schema_err(path, "var node needs a positive integer \"index\""))?;
            if idx == 0 {
                return Err(schema_err(&format!("{path}.index"), "variable indices start at 1"));
            }
            Ok(Node::Var(idx as usize - 1))
        }
        _ => {
            let children = obj
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| schema_err(path, "gate needs an array \"children\""))?;
            if children.is_empty() {
                return Err(schema_err(path, "gate needs at least one child"));
            }
            let mut edges = Vec::with_capacity(children.len());
            for (k, c) in children.iter().enumerate() {
                let cpath = format!("{path}.children[{k}]");
                let cobj = c
                    .as_object()
                    .ok_or_else(|| schema_err(&cpath, "child must be an object"))?;
                if let Some(key) = cobj.keys().find(|k| *k != "scalar" && *k != "node") {
                    return Err(schema_err(&cpath, format!("unexpected field {key:?}")));
                }
                let scalar = match cobj.get("scalar") {
                    Some(s) => parse_scalar(s, &format!("{cpath}.scalar"))?,
                    None => Rational::one(),
                };
                let node = cobj
                    .get("node")
                    .ok_or_else(|| schema_err(&cpath, "child needs \"node\""))?;
                edges.push(Edge::scaled(scalar, parse_node(node, &format!("{cpath}.node"))?));
            }
            if op == "sum" {
                Ok(Node::Sum(edges))
            } else {
                Ok(Node::Prod(edges))
            }
        }
    }
}

/// All monomials in `n` variables of total degree ≤ `d`, ascending in graded-lex order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}
