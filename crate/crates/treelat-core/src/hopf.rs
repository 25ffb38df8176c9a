//! Coproduct, primitive elements and the integer shadow of the tree algebra.
//!
//! The coproduct splits a tree along its root children: each child
//! contributes a left and a right Sweedler leg, the left legs multiply by
//! the interval product and the right legs graft back into a tree. Adding
//! the tree-times-unit term makes the result counital and connected. The
//! unit behaves as a group-like element, a leaf child only contributes the
//! unit pair, and the interval product of the left legs is folded from the
//! left (the fold order matters from total degree 4 onward, where the
//! interval product stops being associative).
//!
//! Tensor pairs carry the three operations by acting with the interval
//! product on left factors and the chosen operation on right factors,
//! except when both right factors are the unit, where the operation acts
//! on the left factors directly.
//!
//! The integer layer mirrors the corolla span: [p] adds like corollas
//! multiply under the middle operation, the integer coproduct is
//! primitive on every [n], and [p] maps to the degree-p corolla.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::rational::Rational64;
use num::Zero;
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::name::{encode, graft_names, involute_name, parse_name, Name};
use crate::tree::{corolla, graft_on_leaf};
use crate::trialgebra::{children_names, star_sum, tri_op_names, FormalSum, TriOpKind};

/// Finite rational combination of names of any degrees, with the unit name
/// (0) playing the role of the scalar basis vector. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Name, Rational64>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    /// The unit name (0) with coefficient one.
    pub fn one() -> Self {
        LinComb::from_name(Name::leaf())
    }

    pub fn from_name(v: Name) -> Self {
        let mut s = LinComb::zero();
        s.add_term(v, Rational64::from_integer(1));
        s
    }

    pub fn from_formal_sum(x: &FormalSum) -> Self {
        let mut s = LinComb::zero();
        for (v, c) in x.terms() {
            s.add_term(v.clone(), *c);
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Name, &Rational64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, v: &Name) -> Rational64 {
        self.terms.get(v).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn add_term(&mut self, v: Name, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(v).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), *c);
        }
        out
    }

    pub fn scale(&self, r: Rational64) -> LinComb {
        let mut out = LinComb::zero();
        for (v, c) in &self.terms {
            out.add_term(v.clone(), *c * r);
        }
        out
    }

    /// The terms of one degree, as a homogeneous sum.
    pub fn graded_component(&self, degree: usize) -> FormalSum {
        let mut out = FormalSum::zero();
        for (v, c) in &self.terms {
            if v.degree() == degree {
                out.add_term(v.clone(), *c);
            }
        }
        out
    }

    /// Apply the involution to every basis name.
    pub fn involute(&self) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (v, c) in &self.terms {
            out.add_term(involute_name(v)?, *c);
        }
        Ok(out)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (v, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c == Rational64::from_integer(1) {
                write!(f, "{v}")?;
            } else {
                write!(f, "{c}*{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coefficient: String,
    name: String,
}

impl Serialize for LinComb {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(n, c)| TermJson {
                coefficient: c.to_string(),
                name: n.to_string(),
            })
            .collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinComb {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = LinComb::zero();
        for t in v {
            let name = parse_name(&t.name).map_err(D::Error::custom)?;
            let coeff: Rational64 = t.coefficient.parse().map_err(D::Error::custom)?;
            out.add_term(name, coeff);
        }
        Ok(out)
    }
}

/// Finite rational combination of ordered pairs of names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorComb {
    terms: BTreeMap<(Name, Name), Rational64>,
}

impl TensorComb {
    pub fn zero() -> Self {
        TensorComb::default()
    }

    /// The pair of unit names with coefficient one.
    pub fn unit_pair() -> Self {
        TensorComb::from_pair(Name::leaf(), Name::leaf())
    }

    pub fn from_pair(left: Name, right: Name) -> Self {
        let mut s = TensorComb::zero();
        s.add_term(left, right, Rational64::from_integer(1));
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Name, Name), &Rational64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &Name, right: &Name) -> Rational64 {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or_else(Rational64::zero)
    }

    pub fn add_term(&mut self, left: Name, right: Name, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((left, right))
            .or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &TensorComb) -> TensorComb {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), *c);
        }
        out
    }

    pub fn scale(&self, r: Rational64) -> TensorComb {
        let mut out = TensorComb::zero();
        for ((l, rt), c) in &self.terms {
            out.add_term(l.clone(), rt.clone(), *c * r);
        }
        out
    }

    /// Apply the involution to both legs of every pair.
    pub fn involute(&self) -> Result<TensorComb> {
        let mut out = TensorComb::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(involute_name(l)?, involute_name(r)?, *c);
        }
        Ok(out)
    }

    /// Exchange the two legs of every pair.
    pub fn swap(&self) -> TensorComb {
        let mut out = TensorComb::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), *c);
        }
        out
    }
}

impl fmt::Display for TensorComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != Rational64::from_integer(1) {
                write!(f, "{c}*")?;
            }
            write!(f, "{l} ⊗ {r}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    coefficient: String,
    left: String,
    right: String,
}

impl Serialize for TensorComb {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TensorTermJson> = self
            .terms
            .iter()
            .map(|((l, r), c)| TensorTermJson {
                coefficient: c.to_string(),
                left: l.to_string(),
                right: r.to_string(),
            })
            .collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TensorComb {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TensorTermJson>::deserialize(deserializer)?;
        let mut out = TensorComb::zero();
        for t in v {
            let left = parse_name(&t.left).map_err(D::Error::custom)?;
            let right = parse_name(&t.right).map_err(D::Error::custom)?;
            let coeff: Rational64 = t.coefficient.parse().map_err(D::Error::custom)?;
            out.add_term(left, right, coeff);
        }
        Ok(out)
    }
}

// Coproducts of basis names, computed once.
static COPRODUCTS: Lazy<Mutex<HashMap<Name, Arc<TensorComb>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The coproduct of a single basis name. Cached per name.
///
/// The unit name is group-like. A tree name v with root children v1..vm
/// yields v ⊗ (0) plus, for every choice of a Sweedler term from each
/// child (a leaf child offers only the unit pair), the left-fold interval
/// product of the chosen left legs tensored with the graft of the chosen
/// right legs.
pub fn coproduct_name(v: &Name) -> Result<Arc<TensorComb>> {
    if let Some(hit) = COPRODUCTS.lock().unwrap().get(v) {
        return Ok(hit.clone());
    }
    let out = if v.is_leaf() {
        TensorComb::unit_pair()
    } else {
        let children = children_names(v)?;
        // Sweedler term lists per child: ((left leg, right leg), coefficient).
        let mut legs: Vec<Vec<((Name, Name), Rational64)>> = Vec::with_capacity(children.len());
        for child in &children {
            if child.is_leaf() {
                legs.push(vec![(
                    (Name::leaf(), Name::leaf()),
                    Rational64::from_integer(1),
                )]);
            } else {
                let inner = coproduct_name(child)?;
                legs.push(
                    inner
                        .terms()
                        .map(|((l, r), c)| ((l.clone(), r.clone()), *c))
                        .collect(),
                );
            }
        }
        let mut out = TensorComb::zero();
        out.add_term(v.clone(), Name::leaf(), Rational64::from_integer(1));
        let mut choice = vec![0usize; legs.len()];
        loop {
            let mut coeff = Rational64::from_integer(1);
            let mut left = FormalSum::unit();
            let mut right_parts = Vec::with_capacity(legs.len());
            for (child, pick) in legs.iter().zip(&choice) {
                let ((l, r), c) = &child[*pick];
                coeff *= *c;
                left = star_sum(&left, &FormalSum::from_name(l.clone()))?;
                right_parts.push(r.clone());
            }
            let right = graft_names(&right_parts)?;
            for (u, cu) in left.terms() {
                out.add_term(u.clone(), right.clone(), coeff * *cu);
            }
            // advance the mixed-radix choice vector
            let mut pos = 0;
            loop {
                if pos == legs.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < legs[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == legs.len() {
                break;
            }
        }
        out
    };
    let arc = Arc::new(out);
    COPRODUCTS
        .lock()
        .unwrap()
        .entry(v.clone())
        .or_insert(arc.clone());
    Ok(arc)
}

/// The coproduct, extended linearly.
pub fn coproduct(x: &LinComb) -> Result<TensorComb> {
    let mut out = TensorComb::zero();
    for (v, c) in x.terms() {
        for ((l, r), d) in coproduct_name(v)?.terms() {
            out.add_term(l.clone(), r.clone(), *c * *d);
        }
    }
    Ok(out)
}

/// The counit: the coefficient of the unit name.
pub fn counit(x: &LinComb) -> Rational64 {
    x.coefficient(&Name::leaf())
}

/// One of the three operations on tensor pairs: the interval product acts
/// on left factors and the operation on right factors, except when both
/// right factors are the unit, where the operation acts on the left
/// factors and the unit leg is kept. Bilinear; the undefined unit-on-unit
/// case propagates as an error.
pub fn tensor_op(kind: TriOpKind, x: &TensorComb, y: &TensorComb) -> Result<TensorComb> {
    let mut out = TensorComb::zero();
    for ((a, b), c) in x.terms() {
        for ((a2, b2), d) in y.terms() {
            let coeff = *c * *d;
            if b.is_leaf() && b2.is_leaf() {
                let left = tri_op_names(kind, a, a2)?;
                for (u, cu) in left.terms() {
                    out.add_term(u.clone(), Name::leaf(), coeff * *cu);
                }
            } else {
                let left = star_sum(
                    &FormalSum::from_name(a.clone()),
                    &FormalSum::from_name(a2.clone()),
                )?;
                let right = tri_op_names(kind, b, b2)?;
                for (u, cu) in left.terms() {
                    for (w, cw) in right.terms() {
                        out.add_term(u.clone(), w.clone(), coeff * *cu * *cw);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether the coproduct of x is exactly x ⊗ 1 + 1 ⊗ x.
pub fn is_primitive(x: &LinComb) -> Result<bool> {
    let mut expect = TensorComb::zero();
    for (v, c) in x.terms() {
        expect.add_term(v.clone(), Name::leaf(), *c);
        expect.add_term(Name::leaf(), v.clone(), *c);
    }
    Ok(coproduct(x)? == expect)
}

/// The signed sum of a primitive name grafted on every leaf of the even
/// corolla: sum of lambda_i X^(v placed on leaf i of the degree 2p-1
/// corolla), i = 1..2p. Requires p > 0, exactly 2p coefficients summing to
/// zero, and a primitive X^v; the result is then primitive (the middle of
/// each summand's coproduct is X^v ⊗ corolla, which the signs cancel).
pub fn primitive_combination(v: &Name, p: usize, lambda: &[Rational64]) -> Result<LinComb> {
    if p == 0 {
        return Err(Error::Precondition("p must be positive".into()));
    }
    if lambda.len() != 2 * p {
        return Err(Error::Precondition(format!(
            "need {} coefficients, got {}",
            2 * p,
            lambda.len()
        )));
    }
    let total: Rational64 = lambda.iter().sum();
    if !total.is_zero() {
        return Err(Error::Precondition(
            "coefficients must sum to zero".into(),
        ));
    }
    if !is_primitive(&LinComb::from_name(v.clone()))? {
        return Err(Error::Precondition(format!("{v} is not primitive")));
    }
    let host = corolla(2 * p - 1);
    let tree = crate::name::decode(v)?;
    let mut out = LinComb::zero();
    for (i, c) in lambda.iter().enumerate() {
        let grafted = graft_on_leaf(&tree, i + 1, &host)?;
        out.add_term(encode(&grafted), *c);
    }
    Ok(out)
}

/// Finite rational combination of natural numbers [n].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntComb {
    terms: BTreeMap<usize, Rational64>,
}

impl IntComb {
    pub fn zero() -> Self {
        IntComb::default()
    }

    /// The basis vector [n].
    pub fn from_natural(n: usize) -> Self {
        let mut s = IntComb::zero();
        s.add_term(n, Rational64::from_integer(1));
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Rational64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: usize) -> Rational64 {
        self.terms.get(&n).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn add_term(&mut self, n: usize, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &IntComb) -> IntComb {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(*n, *c);
        }
        out
    }
}

impl fmt::Display for IntComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c == Rational64::from_integer(1) {
                write!(f, "[{n}]")?;
            } else {
                write!(f, "{c}*[{n}]")?;
            }
        }
        Ok(())
    }
}

/// Finite rational combination of ordered pairs of naturals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntTensorComb {
    terms: BTreeMap<(usize, usize), Rational64>,
}

impl IntTensorComb {
    pub fn zero() -> Self {
        IntTensorComb::default()
    }

    pub fn from_pair(n: usize, m: usize) -> Self {
        let mut s = IntTensorComb::zero();
        s.add_term(n, m, Rational64::from_integer(1));
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: usize, m: usize) -> Rational64 {
        self.terms
            .get(&(n, m))
            .copied()
            .unwrap_or_else(Rational64::zero)
    }

    pub fn add_term(&mut self, n: usize, m: usize, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((n, m)).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &IntTensorComb) -> IntTensorComb {
        let mut out = self.clone();
        for ((n, m), c) in &other.terms {
            out.add_term(*n, *m, *c);
        }
        out
    }
}

impl fmt::Display for IntTensorComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((n, m), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != Rational64::from_integer(1) {
                write!(f, "{c}*")?;
            }
            write!(f, "[{n}] ⊗ [{m}]")?;
        }
        Ok(())
    }
}

/// Linearized addition of naturals: [n] + [m] = [n + m], unit [0].
pub fn int_add(a: &IntComb, b: &IntComb) -> IntComb {
    let mut out = IntComb::zero();
    for (n, c) in a.terms() {
        for (m, d) in b.terms() {
            out.add_term(n + m, *c * *d);
        }
    }
    out
}

/// The integer coproduct: [0] is group-like, every [n] with n > 0 is
/// primitive.
pub fn int_coproduct(x: &IntComb) -> IntTensorComb {
    let mut out = IntTensorComb::zero();
    for (n, c) in x.terms() {
        if *n == 0 {
            out.add_term(0, 0, *c);
        } else {
            out.add_term(*n, 0, *c);
            out.add_term(0, *n, *c);
        }
    }
    out
}

/// The scaling morphism [p] -> [p * r].
pub fn int_times(x: &IntComb, r: usize) -> IntComb {
    let mut out = IntComb::zero();
    for (p, c) in x.terms() {
        out.add_term(p * r, *c);
    }
    out
}

/// Addition on integer tensor pairs: componentwise except that a pair with
/// a nonzero right leg annihilates a [p] ⊗ [0] shape with p nonzero (and
/// symmetrically a nonzero left leg against a [0]-left shape).
pub fn int_tensor_add(a: &IntTensorComb, b: &IntTensorComb) -> IntTensorComb {
    let mut out = IntTensorComb::zero();
    for ((n, m), c) in a.terms() {
        for ((p, q), d) in b.terms() {
            if *m != 0 && *q == 0 && *p != 0 {
                continue;
            }
            if *m == 0 && *n != 0 && *q != 0 {
                continue;
            }
            out.add_term(n + p, m + q, *c * *d);
        }
    }
    out
}

/// The corolla realization of naturals: [p] maps to the degree-p corolla
/// name and [0] to the unit name; additive combinations map termwise.
pub fn ext_map(x: &IntComb) -> LinComb {
    let mut out = LinComb::zero();
    for (p, c) in x.terms() {
        out.add_term(encode(&corolla(*p)), *c);
    }
    out
}
