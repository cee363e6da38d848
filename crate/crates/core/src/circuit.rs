//! Arithmetic circuits with fan-in two, stored in topological order.
//!
//! Size is the number of vertices, inputs and constants included. Node ids
//! are positions in the node list, so every edge points backwards and the
//! graph is acyclic by construction.
//!
//! Text format:
//!
//! ```text
//! hpfc v1
//! 0 input x
//! 1 const 1
//! 2 add 0 1
//! output 2
//! ```
//!
//! Ids in a file may be any distinct non-negative integers as long as each
//! one is defined before it is used. Blank lines and lines starting with
//! `#` are ignored.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::kernel::{Coeff, Permutation, Scalar};
use crate::poly::{Monomial, Polynomial};
use crate::projection::variable;
use crate::tensor::small_rational;

pub type NodeId = usize;

/// Largest `n` accepted by [`build_permanent_circuit`].
pub const MAX_PERMANENT_CIRCUIT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Input(String),
    Const(Scalar),
    Add(NodeId, NodeId),
    Mul(NodeId, NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    nodes: Vec<Node>,
    output: NodeId,
}

impl Circuit {
    pub fn new(nodes: Vec<Node>, output: NodeId) -> Result<Self> {
        for (id, node) in nodes.iter().enumerate() {
            if let Node::Add(l, r) | Node::Mul(l, r) = node {
                if *l >= id || *r >= id {
                    return Err(Error::Validation(format!(
                        "node {id} refers to a node that is not defined before it"
                    )));
                }
            }
        }
        if output >= nodes.len() {
            return Err(Error::Validation(format!("output {output} is not a node")));
        }
        Ok(Circuit { nodes, output })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Distinct input names, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Input(x) => Some(x.clone()),
                _ => None,
            })
            .collect();
        names.sort();
        names.dedup();
        names
    }

    /// Evaluates every node in order. `leaf` supplies input values.
    pub fn evaluate_with<C: Coeff>(
        &self,
        mut leaf: impl FnMut(&str) -> Result<C>,
        mut mul: impl FnMut(&C, &C) -> Result<C>,
    ) -> Result<C> {
        let mut values: Vec<C> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(x) => leaf(x)?,
                Node::Const(c) => C::from_scalar(c.clone()),
                Node::Add(l, r) => values[*l].clone() + values[*r].clone(),
                Node::Mul(l, r) => mul(&values[*l], &values[*r])?,
            };
            values.push(v);
        }
        Ok(values.swap_remove(self.output))
    }

    pub fn evaluate(&self, assignment: &HashMap<String, Scalar>) -> Result<Scalar> {
        self.evaluate_with(
            |x| {
                assignment
                    .get(x)
                    .cloned()
                    .ok_or_else(|| Error::UnassignedVariable(x.to_string()))
            },
            |a, b| Ok(a * b),
        )
    }

    /// Expands the output to a canonical polynomial. Fails once any
    /// intermediate product exceeds `budget` terms.
    pub fn to_polynomial(&self, budget: u64) -> Result<Polynomial> {
        self.evaluate_with(|x| Ok(Polynomial::var(x)), |a, b| a.checked_mul(b, budget))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_circuit(self))
    }
}

/// Append-only construction with shared inputs.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    nodes: Vec<Node>,
    inputs: HashMap<String, NodeId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Returns the existing input node for `name` if there is one.
    pub fn input(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.inputs.get(name) {
            return id;
        }
        let id = self.push(Node::Input(name.to_string()));
        self.inputs.insert(name.to_string(), id);
        id
    }

    /// Always creates a new input node.
    pub fn fresh_input(&mut self, name: &str) -> NodeId {
        self.push(Node::Input(name.to_string()))
    }

    pub fn constant(&mut self, c: Scalar) -> NodeId {
        self.push(Node::Const(c))
    }

    pub fn add(&mut self, l: NodeId, r: NodeId) -> NodeId {
        assert!(
            l < self.nodes.len() && r < self.nodes.len(),
            "operand not yet defined"
        );
        self.push(Node::Add(l, r))
    }

    pub fn mul(&mut self, l: NodeId, r: NodeId) -> NodeId {
        assert!(
            l < self.nodes.len() && r < self.nodes.len(),
            "operand not yet defined"
        );
        self.push(Node::Mul(l, r))
    }

    /// Balanced sum; an empty sum is a new constant 0.
    pub fn sum(&mut self, terms: &[NodeId]) -> NodeId {
        self.balanced(terms, Scalar::zero(), Self::add)
    }

    /// Balanced product; an empty product is a new constant 1.
    pub fn product(&mut self, factors: &[NodeId]) -> NodeId {
        self.balanced(factors, Scalar::one(), Self::mul)
    }

    fn balanced(
        &mut self,
        ids: &[NodeId],
        empty: Scalar,
        op: fn(&mut Self, NodeId, NodeId) -> NodeId,
    ) -> NodeId {
        match ids {
            [] => self.constant(empty),
            [x] => *x,
            _ => {
                let (a, b) = ids.split_at(ids.len() / 2);
                let l = self.balanced(a, empty.clone(), op);
                let r = self.balanced(b, empty, op);
                op(self, l, r)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn finish(self, output: NodeId) -> Result<Circuit> {
        Circuit::new(self.nodes, output)
    }
}

/// `c + Σ a_x·x` over some variable set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AffineForm {
    constant: Scalar,
    linear: BTreeMap<String, Scalar>,
}

impl AffineForm {
    pub fn constant(c: Scalar) -> Self {
        AffineForm {
            constant: c,
            linear: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        Self::from_terms(Scalar::zero(), [(name, Scalar::one())])
    }

    pub fn from_terms<'a>(constant: Scalar, linear: impl IntoIterator<Item = (&'a str, Scalar)>) -> Self {
        let mut out = AffineForm::constant(constant);
        for (x, a) in linear {
            let slot = out.linear.entry(x.to_string()).or_insert_with(Scalar::zero);
            *slot += a;
            if slot.is_zero() {
                out.linear.remove(x);
            }
        }
        out
    }

    /// Rejects polynomials of degree above one.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let mut out = AffineForm::default();
        for (m, c) in p.terms() {
            match m.powers() {
                [] => out.constant = c.clone(),
                [(x, 1)] => {
                    out.linear.insert(x.clone(), c.clone());
                }
                _ => {
                    return Err(Error::Validation(format!(
                        "substituted polynomial `{p}` is not affine (term {m})"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (&str, &Scalar)> {
        self.linear.iter().map(|(x, a)| (x.as_str(), a))
    }

    pub fn num_linear_terms(&self) -> usize {
        self.linear.len()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::constant(self.constant.clone());
        for (x, a) in &self.linear {
            p.add_term(Monomial::var(x.clone()), a.clone());
        }
        p
    }

    pub fn evaluate(&self, assignment: &HashMap<String, Scalar>) -> Result<Scalar> {
        let mut acc = self.constant.clone();
        for (x, a) in &self.linear {
            let v = assignment
                .get(x)
                .ok_or_else(|| Error::UnassignedVariable(x.clone()))?;
            acc += a * v;
        }
        Ok(acc)
    }

    /// Appends the form to `b`: one node per term, a constant-times-input
    /// pair where the coefficient is not 1, and a balanced sum on top. At
    /// most `4·L + 1` nodes for `L` linear terms.
    fn emit(&self, b: &mut CircuitBuilder) -> NodeId {
        let mut terms = Vec::with_capacity(self.linear.len() + 1);
        if !self.constant.is_zero() {
            terms.push(b.constant(self.constant.clone()));
        }
        for (x, a) in &self.linear {
            let input = b.fresh_input(x);
            if a.is_one() {
                terms.push(input);
            } else {
                let c = b.constant(a.clone());
                terms.push(b.mul(c, input));
            }
        }
        b.sum(&terms)
    }
}

fn is_variable_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || "_{},".contains(c))
}

/// Parses sums of terms `c`, `x` and `c*x` such as `2*x - 1/3*y + 4`.
impl std::str::FromStr for AffineForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Validation(format!("`{s}` is not an affine form: {why}"));
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = true;
            } else if ch != '+' {
                current.push(ch);
            }
        }
        terms.push((negative, current));

        let mut constant = Scalar::zero();
        let mut linear = Vec::new();
        for (negative, term) in &terms {
            let (coef, var) = match term.split_once('*') {
                Some((c, x)) => (c.parse::<Scalar>().map_err(|_| bad("bad coefficient"))?, Some(x)),
                None if term.starts_with(|c: char| c.is_ascii_digit()) => {
                    (term.parse::<Scalar>().map_err(|_| bad("bad constant"))?, None)
                }
                None => (Scalar::one(), Some(term.as_str())),
            };
            let coef = if *negative { -coef } else { coef };
            match var {
                None => constant += coef,
                Some(x) if is_variable_name(x) => linear.push((x, coef)),
                Some(x) => return Err(bad(&format!("`{x}` is not a variable"))),
            }
        }
        Ok(AffineForm::from_terms(constant, linear))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Maps circuit variables to affine forms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AffineSubstitution {
    forms: BTreeMap<String, AffineForm>,
}

impl AffineSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(vars: &[String]) -> Self {
        let mut s = Self::new();
        for x in vars {
            s.insert(x, AffineForm::var(x));
        }
        s
    }

    pub fn from_polynomials<'a>(map: impl IntoIterator<Item = (&'a str, Polynomial)>) -> Result<Self> {
        let mut s = Self::new();
        for (x, p) in map {
            s.insert(x, AffineForm::from_polynomial(&p)?);
        }
        Ok(s)
    }

    pub fn insert(&mut self, var: &str, form: AffineForm) {
        self.forms.insert(var.to_string(), form);
    }

    pub fn get(&self, var: &str) -> Option<&AffineForm> {
        self.forms.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &AffineForm)> {
        self.forms.iter().map(|(x, f)| (x.as_str(), f))
    }

    /// Values of the old variables at a point in the new ones.
    pub fn apply_to_point(&self, point: &HashMap<String, Scalar>) -> Result<HashMap<String, Scalar>> {
        self.forms
            .iter()
            .map(|(x, f)| Ok((x.clone(), f.evaluate(point)?)))
            .collect()
    }
}

/// Replaces every input leaf of `c` by its own copy of the affine form
/// assigned to it. Nothing is shared across occurrences, so
///
/// ```text
/// size(project(c, s)) <= size(c) + 4 · Σ_{input nodes x} (linear terms of s(x))
/// ```
pub fn project(c: &Circuit, s: &AffineSubstitution) -> Result<Circuit> {
    let mut b = CircuitBuilder::new();
    let mut map = Vec::with_capacity(c.size());
    for node in c.nodes() {
        let id = match node {
            Node::Input(x) => s
                .get(x)
                .ok_or_else(|| Error::Validation(format!("substitution does not cover variable `{x}`")))?
                .emit(&mut b),
            Node::Const(v) => b.constant(v.clone()),
            Node::Add(l, r) => b.add(map[*l], map[*r]),
            Node::Mul(l, r) => b.mul(map[*l], map[*r]),
        };
        map.push(id);
    }
    b.finish(map[c.output()])
}

/// The size bound documented on [`project`].
pub fn projection_size_bound(c: &Circuit, s: &AffineSubstitution) -> usize {
    let occurrences: usize = c
        .nodes()
        .iter()
        .filter_map(|n| match n {
            Node::Input(x) => s.get(x).map(AffineForm::num_linear_terms),
            _ => None,
        })
        .sum();
    c.size() + 4 * occurrences
}

/// `Σ_π Π_i x_{i,π(i)}` as a sum of `n!` balanced products over the `n²`
/// shared inputs `x_{i,j}`.
pub fn build_permanent_circuit(n: usize) -> Result<Circuit> {
    if n == 0 || n > MAX_PERMANENT_CIRCUIT {
        return Err(Error::Validation(format!(
            "permanent circuit needs 1 <= n <= {MAX_PERMANENT_CIRCUIT}, got {n}"
        )));
    }
    let mut b = CircuitBuilder::new();
    for i in 1..=n {
        for j in 1..=n {
            b.input(&variable(i, j));
        }
    }
    let mut products = Vec::new();
    for p in Permutation::all(n) {
        let factors: Vec<NodeId> = (1..=n).map(|i| b.input(&variable(i, p.apply(i)))).collect();
        products.push(b.product(&factors));
    }
    let out = b.sum(&products);
    b.finish(out)
}

/// Random circuit over `vars` with `gates` add/mul gates. Every variable
/// gets an input node; roughly one leaf in five is a small constant.
pub fn random_circuit_with<R: Rng>(rng: &mut R, vars: &[String], gates: usize) -> Circuit {
    let mut b = CircuitBuilder::new();
    for x in vars {
        b.input(x);
    }
    for _ in 0..(vars.len() / 4).max(1) {
        b.constant(small_rational(rng));
    }
    for _ in 0..gates {
        let l = rng.gen_range(0..b.len());
        let r = rng.gen_range(0..b.len());
        if rng.gen_bool(0.5) {
            b.add(l, r);
        } else {
            b.mul(l, r);
        }
    }
    let out = b.len() - 1;
    b.finish(out).expect("builder output is in range")
}

/// Each variable of `from` mapped to a random affine form over `to`.
pub fn random_substitution_with<R: Rng>(rng: &mut R, from: &[String], to: &[String]) -> AffineSubstitution {
    let mut s = AffineSubstitution::new();
    for x in from {
        let constant = if rng.gen_bool(0.5) {
            small_rational(rng)
        } else {
            Scalar::zero()
        };
        let mut linear: Vec<(&str, Scalar)> = Vec::new();
        for y in to {
            if rng.gen_bool(0.5) {
                linear.push((y.as_str(), small_rational(rng)));
            }
        }
        s.insert(x, AffineForm::from_terms(constant, linear));
    }
    s
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, "hpfc v1")) => {}
        Some((no, other)) => return Err(Error::parse(no, format!("expected `hpfc v1`, found `{other}`"))),
        None => return Err(Error::parse(1, "empty input")),
    }

    let mut ids: HashMap<u64, NodeId> = HashMap::new();
    let mut nodes = Vec::new();
    let mut output = None;
    for (no, line) in lines {
        if output.is_some() {
            return Err(Error::parse(no, "content after `output` line"));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let lookup = |f: &str| -> Result<NodeId> {
            f.parse::<u64>()
                .ok()
                .and_then(|id| ids.get(&id).copied())
                .ok_or_else(|| Error::parse(no, format!("node `{f}` is not defined above")))
        };
        if let ["output", id] = fields.as_slice() {
            output = Some(lookup(id)?);
            continue;
        }
        let node = match fields.as_slice() {
            [_, "input", name] => Node::Input(name.to_string()),
            [_, "const", c] => Node::Const(c.parse().map_err(|e: Error| Error::parse(no, e.to_string()))?),
            [_, "add", l, r] => Node::Add(lookup(l)?, lookup(r)?),
            [_, "mul", l, r] => Node::Mul(lookup(l)?, lookup(r)?),
            _ => return Err(Error::parse(no, format!("unrecognised line `{line}`"))),
        };
        let id: u64 = fields[0]
            .parse()
            .map_err(|_| Error::parse(no, format!("bad node id `{}`", fields[0])))?;
        if ids.insert(id, nodes.len()).is_some() {
            return Err(Error::parse(no, format!("node {id} defined twice")));
        }
        nodes.push(node);
    }
    let output = output.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `output` line"))?;
    Circuit::new(nodes, output)
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::from("hpfc v1\n");
    for (id, node) in c.nodes().iter().enumerate() {
        let _ = match node {
            Node::Input(x) => writeln!(out, "{id} input {x}"),
            Node::Const(v) => writeln!(out, "{id} const {v}"),
            Node::Add(l, r) => writeln!(out, "{id} add {l} {r}"),
            Node::Mul(l, r) => writeln!(out, "{id} mul {l} {r}"),
        };
    }
    let _ = writeln!(out, "output {}", c.output());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::permanent;
    use crate::tensor::SquareMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const BUDGET: u64 = 100_000;

    fn point(pairs: &[(&str, i64)]) -> HashMap<String, Scalar> {
        pairs
            .iter()
            .map(|(x, v)| (x.to_string(), Scalar::from(*v)))
            .collect()
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    fn per2_substitution() -> AffineSubstitution {
        let one = || Polynomial::constant(Scalar::one());
        AffineSubstitution::from_polynomials([
            ("x_{1,1}", Polynomial::var("x")),
            ("x_{1,2}", Polynomial::var("y") + one()),
            ("x_{2,1}", Polynomial::var("x") + one()),
            ("x_{2,2}", Polynomial::var("z")),
        ])
        .unwrap()
    }

    #[test]
    fn small_circuits() {
        let mut b = CircuitBuilder::new();
        let five = b.constant(Scalar::from(5));
        let c = b.finish(five).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.evaluate(&HashMap::new()).unwrap(), Scalar::from(5));

        let mut b = CircuitBuilder::new();
        let (x, y) = (b.input("x"), b.input("y"));
        let s = b.add(x, y);
        let c = b.finish(s).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(
            c.evaluate(&point(&[("x", 1)])),
            Err(Error::UnassignedVariable("y".into()))
        );
    }

    #[test]
    fn worked_expression() {
        // x·z + (x+1)(y+1)
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.input("x"), b.input("y"), b.input("z"));
        let one = b.constant(Scalar::one());
        let xz = b.mul(x, z);
        let x1 = b.add(x, one);
        let y1 = b.add(y, one);
        let p = b.mul(x1, y1);
        let out = b.add(xz, p);
        let c = b.finish(out).unwrap();
        assert_eq!(
            c.evaluate(&point(&[("x", 1), ("y", 1), ("z", 1)])).unwrap(),
            Scalar::from(5)
        );
        assert_eq!(
            c.to_polynomial(BUDGET).unwrap().to_string(),
            "x*y + x*z + x + y + 1"
        );
    }

    #[test]
    fn to_polynomial_square() {
        let mut b = CircuitBuilder::new();
        let x = b.input("x");
        let two = b.constant(Scalar::from(2));
        let xx = b.mul(x, x);
        let tx = b.mul(two, x);
        let out = b.add(xx, tx);
        let c = b.finish(out).unwrap();
        assert_eq!(c.to_polynomial(BUDGET).unwrap().to_string(), "x^2 + 2*x");
    }

    #[test]
    fn to_polynomial_budget() {
        let mut b = CircuitBuilder::new();
        let vars: Vec<NodeId> = (0..6).map(|i| b.input(&format!("v{i}"))).collect();
        let s = b.sum(&vars);
        let sq = b.mul(s, s);
        let cube = b.mul(sq, s);
        let c = b.finish(cube).unwrap();
        assert!(matches!(c.to_polynomial(10), Err(Error::Budget { .. })));
        assert_eq!(c.to_polynomial(BUDGET).unwrap().len(), 56);
    }

    #[test]
    fn permanent_circuit() {
        let c1 = build_permanent_circuit(1).unwrap();
        assert_eq!(c1.nodes(), &[Node::Input("x_{1,1}".into())]);

        let c2 = build_permanent_circuit(2).unwrap();
        assert_eq!(c2.size(), 7);
        assert_eq!(build_permanent_circuit(2).unwrap(), c2);
        let a = point(&[("x_{1,1}", 1), ("x_{1,2}", 2), ("x_{2,1}", 2), ("x_{2,2}", 1)]);
        assert_eq!(c2.evaluate(&a).unwrap(), Scalar::from(5));

        let c3 = build_permanent_circuit(3).unwrap();
        assert_eq!(c3.size(), 9 + 6 * 2 + 5);
        let ones: HashMap<String, Scalar> = c3.variables().into_iter().map(|x| (x, Scalar::one())).collect();
        assert_eq!(c3.evaluate(&ones).unwrap(), Scalar::from(6));
        let p3 = c3.to_polynomial(BUDGET).unwrap();
        assert_eq!(p3.len(), 6);
        assert!(p3.terms().all(|(m, c)| m.degree() == 3 && c.is_one()));

        assert!(build_permanent_circuit(0).is_err());
        assert!(build_permanent_circuit(7).is_err());
    }

    #[test]
    fn permanent_circuit_matches_ryser() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            let c = build_permanent_circuit(n).unwrap();
            for _ in 0..5 {
                let a = crate::tensor::random_matrix_with(&mut rng, n);
                let mut values = HashMap::new();
                for i in 1..=n {
                    for j in 1..=n {
                        values.insert(variable(i, j), a.get(i, j).clone());
                    }
                }
                assert_eq!(c.evaluate(&values).unwrap(), permanent(&a));
            }
        }
        let a = SquareMatrix::from_i64(&[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(permanent(&a), Scalar::from(5));
    }

    #[test]
    fn per2_projection() {
        let c = build_permanent_circuit(2).unwrap();
        let s = per2_substitution();
        let projected = project(&c, &s).unwrap();
        let p = projected.to_polynomial(BUDGET).unwrap();
        assert_eq!(p.to_string(), "x*y + x*z + x + y + 1");
        assert_eq!(p.len(), 5);
        assert!(projected.size() <= projection_size_bound(&c, &s));
    }

    #[test]
    fn non_affine_rejected() {
        let x = Polynomial::var("x");
        assert!(AffineSubstitution::from_polynomials([("a", x.clone() * x)]).is_err());
        assert!(AffineForm::from_polynomial(&(Polynomial::var("x") * Polynomial::var("y"))).is_err());
        let c = build_permanent_circuit(1).unwrap();
        assert!(project(&c, &AffineSubstitution::new()).is_err());
    }

    #[test]
    fn identity_and_constant_substitutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vars = names(&["a", "b", "c"]);
        for _ in 0..20 {
            let c = random_circuit_with(&mut rng, &vars, 8);
            let id = project(&c, &AffineSubstitution::identity(&vars)).unwrap();
            assert_eq!(
                id.to_polynomial(BUDGET).unwrap(),
                c.to_polynomial(BUDGET).unwrap()
            );

            let consts = random_substitution_with(&mut rng, &vars, &[]);
            let folded = project(&c, &consts).unwrap();
            assert!(folded.variables().is_empty());
            let value = folded.evaluate(&HashMap::new()).unwrap();
            assert_eq!(
                value,
                c.evaluate(&consts.apply_to_point(&HashMap::new()).unwrap())
                    .unwrap()
            );
        }
    }

    #[test]
    fn projection_commutes_with_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let from = names(&["a", "b", "c", "d"]);
        let to = names(&["u", "v", "w"]);
        for _ in 0..50 {
            let c = random_circuit_with(&mut rng, &from, 10);
            let s = random_substitution_with(&mut rng, &from, &to);
            let projected = project(&c, &s).unwrap();
            assert!(projected.size() <= projection_size_bound(&c, &s));
            let pt: HashMap<String, Scalar> =
                to.iter().map(|x| (x.clone(), small_rational(&mut rng))).collect();
            assert_eq!(
                projected.evaluate(&pt).unwrap(),
                c.evaluate(&s.apply_to_point(&pt).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn polynomial_agrees_with_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let vars = names(&["a", "b", "c"]);
        for _ in 0..10 {
            let c = random_circuit_with(&mut rng, &vars, 7);
            let p = c.to_polynomial(BUDGET).unwrap();
            for _ in 0..50 {
                let pt: HashMap<String, Scalar> = vars
                    .iter()
                    .map(|x| (x.clone(), small_rational(&mut rng)))
                    .collect();
                assert_eq!(p.evaluate(&pt).unwrap(), c.evaluate(&pt).unwrap());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let c = project(&build_permanent_circuit(2).unwrap(), &per2_substitution()).unwrap();
        let text = write_circuit(&c);
        assert!(text.starts_with("hpfc v1\n"));
        assert_eq!(parse_circuit(&text).unwrap(), c);
    }

    #[test]
    fn parse_sparse_ids() {
        let c =
            parse_circuit("hpfc v1\n# scaled input\n10 input x\n\n20 const -1/2\n7 mul 10 20\noutput 7\n")
                .unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.to_polynomial(BUDGET).unwrap().to_string(), "-1/2*x");
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("", 1),
            ("hpfc v2\n", 1),
            ("hpfc v1\n0 input x\n", 2),
            ("hpfc v1\n0 add 1 2\noutput 0\n", 2),
            ("hpfc v1\n0 input x\n0 input y\noutput 0\n", 3),
            ("hpfc v1\n0 const 1/0\noutput 0\n", 2),
            ("hpfc v1\n0 input x\noutput 0\n1 input y\n", 4),
            ("hpfc v1\n0 sub 1 2\n", 2),
            ("hpfc v1\n0 input x\noutput 3\n", 3),
        ];
        for (text, line) in cases {
            match parse_circuit(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn affine_text() {
        let f: AffineForm = "2*x - 1/3*y + 4 + x".parse().unwrap();
        assert_eq!(f.constant_term(), &Scalar::from(4));
        assert_eq!(
            f.linear_terms().collect::<Vec<_>>(),
            vec![("x", &Scalar::from(3)), ("y", &Scalar::new(-1, 3))]
        );
        let g: AffineForm = "-x_{1,2} + 1".parse().unwrap();
        assert_eq!(g.to_string(), "-x_{1,2} + 1");
        assert_eq!("0".parse::<AffineForm>().unwrap(), AffineForm::default());
        for bad in ["", "x*y", "x^2", "2*", "1/0", "3x", "x+"] {
            assert!(bad.parse::<AffineForm>().is_err(), "{bad}");
        }
    }

    #[test]
    fn validation() {
        assert!(Circuit::new(vec![Node::Add(0, 0)], 0).is_err());
        assert!(Circuit::new(vec![Node::Input("x".into())], 1).is_err());
    }
}
