//! Multivariate polynomials in recursive dense form.
//!
//! A polynomial in `x1..xs` is either a constant or a dense coefficient list
//! in its highest variable, whose entries recurse over strictly smaller
//! variables.  Canonical form is enforced by construction:
//!
//! * a `Dense` node has at least two coefficients and a nonzero last one
//!   (anything shorter is representable one level down);
//! * children mention only strictly smaller variables.
//!
//! Variables are numbered from 1.

use crate::degree::ExtendedDegree;
use crate::field::Field;
use crate::poly::{BiPoly, PolyError, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Node<F: Field> {
    Constant(F::Elem),
    Dense { var: u32, coeffs: Vec<Node<F>> },
}

/// A multivariate polynomial over `F` in canonical recursive dense form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<F: Field> {
    field: F,
    node: Node<F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn constant(field: F, c: F::Elem) -> Self {
        MultiPoly { field, node: Node::Constant(c) }
    }

    pub fn zero(field: F) -> Self {
        let z = field.zero();
        MultiPoly::constant(field, z)
    }

    pub fn one(field: F) -> Self {
        let o = field.one();
        MultiPoly::constant(field, o)
    }

    pub fn from_int(field: F, n: i64) -> Self {
        let c = field.from_int(n);
        MultiPoly::constant(field, c)
    }

    /// The variable `x_var`; indices start at 1.
    pub fn variable(field: F, var: u32) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        let node = Node::Dense {
            var,
            coeffs: vec![Node::Constant(field.zero()), Node::Constant(field.one())],
        };
        MultiPoly { field, node }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.node, Node::Constant(c) if self.field.is_zero(c))
    }

    pub fn as_constant(&self) -> Option<&F::Elem> {
        match &self.node {
            Node::Constant(c) => Some(c),
            Node::Dense { .. } => None,
        }
    }

    /// Highest variable index used, or 0 for constants.
    pub fn highest_var(&self) -> u32 {
        match &self.node {
            Node::Constant(_) => 0,
            Node::Dense { var, .. } => *var,
        }
    }

    /// Degree in `x_var`.  Zero has degree `-inf`; a nonzero polynomial free
    /// of `x_var` has degree 0.
    pub fn degree_in(&self, var: u32) -> ExtendedDegree {
        assert!(var >= 1, "variable indices start at 1");
        deg_in(&self.field, &self.node, var)
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed coefficient fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        MultiPoly {
            field: self.field.clone(),
            node: add_nodes(&self.field, &self.node, &other.node),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly { field: self.field.clone(), node: neg_node(&self.field, &self.node) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        MultiPoly {
            field: self.field.clone(),
            node: mul_nodes(&self.field, &self.node, &other.node),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.field.clone());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients of `x_var^0, x_var^1, ...`; a polynomial free of `x_var`
    /// returns itself as the single entry.
    pub fn coefficients_in(&self, var: u32) -> Vec<MultiPoly<F>> {
        assert!(var >= 1, "variable indices start at 1");
        assert!(
            self.highest_var() <= var,
            "coefficients_in({var}) on a polynomial whose highest variable is {}",
            self.highest_var()
        );
        coeffs_of(&self.node, var)
            .into_iter()
            .map(|node| MultiPoly { field: self.field.clone(), node })
            .collect()
    }

    /// Rebuilds `sum coeffs[i] * x_var^i`.  Coefficients must not mention
    /// `x_var` or anything higher.
    pub fn from_coefficients(field: F, var: u32, coeffs: Vec<MultiPoly<F>>) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        let nodes = coeffs
            .into_iter()
            .map(|c| {
                assert!(c.field == field, "mixed coefficient fields");
                assert!(c.highest_var() < var, "coefficient mentions x{var} or higher");
                c.node
            })
            .collect();
        MultiPoly { field: field.clone(), node: dense(&field, var, nodes) }
    }

    /// Substitutes a field element for `x_var`.
    pub fn substitute(&self, var: u32, value: &F::Elem) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        MultiPoly {
            field: self.field.clone(),
            node: subst(&self.field, &self.node, var, value),
        }
    }

    /// Sorted list of variable indices that actually occur.
    pub fn vars_used(&self) -> Vec<u32> {
        let mut vars = Vec::new();
        collect_vars(&self.node, &mut vars);
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn from_unipoly(p: &UniPoly<F>, var: u32) -> Self {
        let field = p.field().clone();
        let nodes = p.coeffs().iter().map(|c| Node::Constant(c.clone())).collect();
        MultiPoly { field: field.clone(), node: dense(&field, var, nodes) }
    }

    pub fn from_bipoly(b: &BiPoly<F>, var_x: u32, var_y: u32) -> Self {
        assert!(var_x != var_y, "distinct variables required");
        let field = b.field().clone();
        let coeffs = b
            .y_coeffs()
            .iter()
            .map(|c| MultiPoly::from_unipoly(c, var_x))
            .collect::<Vec<_>>();
        // When var_x > var_y the coefficient/main roles swap; rebuild by addition.
        if var_x < var_y {
            let nodes = coeffs.into_iter().map(|c| c.node).collect();
            MultiPoly { field: field.clone(), node: dense(&field, var_y, nodes) }
        } else {
            let y = MultiPoly::variable(field.clone(), var_y);
            let mut acc = MultiPoly::zero(field.clone());
            let mut ypow = MultiPoly::one(field);
            for (i, c) in coeffs.into_iter().enumerate() {
                if i > 0 {
                    ypow = ypow.mul(&y);
                }
                acc = acc.add(&c.mul(&ypow));
            }
            acc
        }
    }

    /// Interprets the polynomial as univariate in `x_var`; fails when any
    /// other variable occurs.
    pub fn to_unipoly(&self, var: u32) -> Result<UniPoly<F>, PolyError> {
        let used = self.vars_used();
        if let Some(&bad) = used.iter().find(|&&v| v != var) {
            return Err(PolyError::UnknownVariable(bad));
        }
        let coeffs = self
            .coefficients_in(var)
            .into_iter()
            .map(|c| c.as_constant().cloned().expect("coefficients are constants"))
            .collect();
        Ok(UniPoly::new(self.field.clone(), coeffs))
    }

    /// Coefficient of `x_var^k`, free of `x_var`.  Unlike
    /// [`coefficients_in`](Self::coefficients_in), `x_var` need not be the
    /// highest variable.
    pub fn coefficient_of_power(&self, var: u32, k: usize) -> MultiPoly<F> {
        assert!(var >= 1, "variable indices start at 1");
        MultiPoly {
            field: self.field.clone(),
            node: coeff_of_power(&self.field, &self.node, var, k),
        }
    }

    /// Interprets the polynomial as bivariate in `(x_vx, x_vy)` with `x_vy`
    /// as the main variable; fails when any other variable occurs.
    pub fn to_bipoly(&self, vx: u32, vy: u32) -> Result<BiPoly<F>, PolyError> {
        assert!(vx != vy, "distinct variables required");
        let used = self.vars_used();
        if let Some(&bad) = used.iter().find(|&&v| v != vx && v != vy) {
            return Err(PolyError::UnknownVariable(bad));
        }
        let dy = self.degree_in(vy).finite().unwrap_or(0);
        let coeffs = (0..=dy as usize)
            .map(|k| self.coefficient_of_power(vy, k).to_unipoly(vx))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BiPoly::new(self.field.clone(), coeffs))
    }
}

fn is_zero_node<F: Field>(f: &F, node: &Node<F>) -> bool {
    matches!(node, Node::Constant(c) if f.is_zero(c))
}

/// Canonicalizing `Dense` constructor: trims trailing zeros and collapses
/// lists of length < 2.
fn dense<F: Field>(f: &F, var: u32, mut coeffs: Vec<Node<F>>) -> Node<F> {
    while coeffs.last().is_some_and(|c| is_zero_node(f, c)) {
        coeffs.pop();
    }
    match coeffs.len() {
        0 => Node::Constant(f.zero()),
        1 => coeffs.pop().unwrap(),
        _ => Node::Dense { var, coeffs },
    }
}

/// Views `node` as a coefficient list in `x_var`; requires the main variable
/// of `node` to be `<= var`.
fn coeffs_of<F: Field>(node: &Node<F>, var: u32) -> Vec<Node<F>> {
    match node {
        Node::Dense { var: v, coeffs } if *v == var => coeffs.clone(),
        _ => vec![node.clone()],
    }
}

fn main_var<F: Field>(node: &Node<F>) -> u32 {
    match node {
        Node::Constant(_) => 0,
        Node::Dense { var, .. } => *var,
    }
}

fn add_nodes<F: Field>(f: &F, a: &Node<F>, b: &Node<F>) -> Node<F> {
    match (a, b) {
        (Node::Constant(x), Node::Constant(y)) => Node::Constant(f.add(x, y)),
        _ => {
            let var = main_var(a).max(main_var(b));
            let ca = coeffs_of(a, var);
            let cb = coeffs_of(b, var);
            let zero = Node::Constant(f.zero());
            let n = ca.len().max(cb.len());
            let coeffs = (0..n)
                .map(|i| add_nodes(f, ca.get(i).unwrap_or(&zero), cb.get(i).unwrap_or(&zero)))
                .collect();
            dense(f, var, coeffs)
        }
    }
}

fn neg_node<F: Field>(f: &F, node: &Node<F>) -> Node<F> {
    match node {
        Node::Constant(c) => Node::Constant(f.neg(c)),
        Node::Dense { var, coeffs } => Node::Dense {
            var: *var,
            coeffs: coeffs.iter().map(|c| neg_node(f, c)).collect(),
        },
    }
}

fn scale_node<F: Field>(f: &F, node: &Node<F>, c: &F::Elem) -> Node<F> {
    if f.is_zero(c) {
        return Node::Constant(f.zero());
    }
    match node {
        Node::Constant(x) => Node::Constant(f.mul(x, c)),
        Node::Dense { var, coeffs } => {
            // scaling by a nonzero field element never kills a coefficient
            Node::Dense { var: *var, coeffs: coeffs.iter().map(|x| scale_node(f, x, c)).collect() }
        }
    }
}

fn mul_nodes<F: Field>(f: &F, a: &Node<F>, b: &Node<F>) -> Node<F> {
    match (a, b) {
        (Node::Constant(x), _) => scale_node(f, b, x),
        (_, Node::Constant(y)) => scale_node(f, a, y),
        _ => {
            let var = main_var(a).max(main_var(b));
            let ca = coeffs_of(a, var);
            let cb = coeffs_of(b, var);
            let mut acc = vec![Node::Constant(f.zero()); ca.len() + cb.len() - 1];
            for (i, x) in ca.iter().enumerate() {
                if is_zero_node(f, x) {
                    continue;
                }
                for (j, y) in cb.iter().enumerate() {
                    let prod = mul_nodes(f, x, y);
                    acc[i + j] = add_nodes(f, &acc[i + j], &prod);
                }
            }
            dense(f, var, acc)
        }
    }
}

fn deg_in<F: Field>(f: &F, node: &Node<F>, var: u32) -> ExtendedDegree {
    match node {
        Node::Constant(c) => {
            if f.is_zero(c) {
                ExtendedDegree::NegInf
            } else {
                ExtendedDegree::Finite(0)
            }
        }
        Node::Dense { var: v, coeffs } => {
            if *v == var {
                ExtendedDegree::Finite(coeffs.len() as i64 - 1)
            } else if *v < var {
                // nonzero by invariant, free of x_var
                ExtendedDegree::Finite(0)
            } else {
                ExtendedDegree::max_of(coeffs.iter().map(|c| deg_in(f, c, var)))
            }
        }
    }
}

fn subst<F: Field>(f: &F, node: &Node<F>, var: u32, value: &F::Elem) -> Node<F> {
    match node {
        Node::Constant(_) => node.clone(),
        Node::Dense { var: v, coeffs } => {
            if *v == var {
                // children are free of x_var; Horner in the value
                let mut acc = Node::Constant(f.zero());
                for c in coeffs.iter().rev() {
                    acc = add_nodes(f, &scale_node(f, &acc, value), c);
                }
                acc
            } else if *v < var {
                node.clone()
            } else {
                let coeffs = coeffs.iter().map(|c| subst(f, c, var, value)).collect();
                dense(f, *v, coeffs)
            }
        }
    }
}

fn coeff_of_power<F: Field>(f: &F, node: &Node<F>, var: u32, k: usize) -> Node<F> {
    match node {
        Node::Constant(_) => {
            if k == 0 {
                node.clone()
            } else {
                Node::Constant(f.zero())
            }
        }
        Node::Dense { var: v, coeffs } => {
            if *v == var {
                coeffs.get(k).cloned().unwrap_or(Node::Constant(f.zero()))
            } else if *v < var {
                if k == 0 {
                    node.clone()
                } else {
                    Node::Constant(f.zero())
                }
            } else {
                let coeffs = coeffs.iter().map(|c| coeff_of_power(f, c, var, k)).collect();
                dense(f, *v, coeffs)
            }
        }
    }
}

fn collect_vars<F: Field>(node: &Node<F>, out: &mut Vec<u32>) {
    if let Node::Dense { var, coeffs } = node {
        out.push(*var);
        for c in coeffs {
            collect_vars(c, out);
        }
    }
}
