//! The product as an order interval and its three summands.
//!
//! For names v, w the product v ★ w is the sum of every name in the closed
//! interval from v over w (v grafted on the leftmost leaf of w) up to
//! v under w (w grafted on the rightmost leaf of v). Three finer operations,
//! written here Prec (≺), Succ (≻) and Bullet (•), carve pieces out of that
//! interval: with t = t1 ∨ .. ∨ tn and z = z1 ∨ .. ∨ zm running over child
//! decompositions,
//!
//! * t ≻ z sums (t ★ z1) ∨ z2 ∨ .. ∨ zm,
//! * t ≺ z sums t1 ∨ .. ∨ t(n-1) ∨ (tn ★ z),
//! * t • z sums t1 ∨ .. ∨ t(n-1) ∨ (tn ★ z1) ∨ z2 ∨ .. ∨ zm.
//!
//! The three supports are pairwise disjoint and lie inside the interval.
//! Through total degree 3 (and for the (2, 2) split) they cover it exactly;
//! from total degree 4 onward the interval contains trees none of the three
//! operations produces, so ★ strictly dominates ≺ + ≻ + • there.
//!
//! The unit name (0) is a two-sided ★ unit; under the finer operations it
//! follows fixed conventions ((0) ≺ v = 0 = v ≻ (0), v ≺ (0) = v = (0) ≻ v,
//! • with (0) vanishes) and the pair (0) ∘ (0) is undefined. Every tree is
//! reachable from the one-vertex tree by the three operations in exactly one
//! way; that expression is its universal expression.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::rational::Rational64;
use num::Zero;
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::name::{encode, involute_name, leq_name, name_table, over, parse_name, under, Name};
use crate::tree::PlanarTree;

/// Finite rational combination of names, all of one degree. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Name, Rational64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    /// The unit name (0) with coefficient one.
    pub fn unit() -> Self {
        FormalSum::from_name(Name::leaf())
    }

    pub fn from_name(v: Name) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(v, Rational64::from_integer(1));
        s
    }

    pub fn from_names<I: IntoIterator<Item = Name>>(names: I) -> Self {
        let mut s = FormalSum::zero();
        for v in names {
            s.add_term(v, Rational64::from_integer(1));
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

    pub fn support(&self) -> impl Iterator<Item = &Name> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, v: Name, c: Rational64) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            self.terms
                .keys()
                .next()
                .is_none_or(|k| k.coords().len() == v.coords().len()),
            "formal sums are homogeneous"
        );
        let entry = self.terms.entry(v).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            let dead: Vec<Name> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), *c);
        }
        out
    }

    pub fn scale(&self, r: Rational64) -> FormalSum {
        let mut out = FormalSum::zero();
        for (v, c) in &self.terms {
            out.add_term(v.clone(), *c * r);
        }
        out
    }

    /// Apply the involution to every basis name.
    pub fn involute(&self) -> Result<FormalSum> {
        let mut out = FormalSum::zero();
        for (v, c) in &self.terms {
            out.add_term(involute_name(v)?, *c);
        }
        Ok(out)
    }
}

impl fmt::Display for FormalSum {
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

impl Serialize for FormalSum {
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

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = FormalSum::zero();
        for t in v {
            let name = parse_name(&t.name).map_err(D::Error::custom)?;
            let coeff: Rational64 = t.coefficient.parse().map_err(D::Error::custom)?;
            out.add_term(name, coeff);
        }
        Ok(out)
    }
}

/// Names in the closed interval [v over w, v under w]: the support of v ★ w.
/// Cached per argument pair.
pub fn star_names(v: &Name, w: &Name) -> Result<Arc<Vec<Name>>> {
    static CACHE: Lazy<Mutex<HashMap<(Name, Name), Arc<Vec<Name>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if v.is_leaf() {
        return Ok(Arc::new(vec![w.clone()]));
    }
    if w.is_leaf() {
        return Ok(Arc::new(vec![v.clone()]));
    }
    let key = (v.clone(), w.clone());
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let lo = over(v, w);
    let hi = under(v, w);
    let mut out = Vec::new();
    for u in name_table(v.degree() + w.degree())?.iter() {
        if leq_name(&lo, u)? && leq_name(u, &hi)? {
            out.push(u.clone());
        }
    }
    assert!(out.first() == Some(&lo) && out.last() == Some(&hi));
    let arc = Arc::new(out);
    CACHE
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

/// The interval product of two names, every coefficient one.
pub fn star(v: &Name, w: &Name) -> Result<FormalSum> {
    Ok(FormalSum::from_names(star_names(v, w)?.iter().cloned()))
}

/// Bilinear extension of [`star`]. Total: the unit name multiplies as one.
pub fn star_sum(a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (v, cv) in a.terms() {
        for (w, cw) in b.terms() {
            for u in star_names(v, w)?.iter() {
                out.add_term(u.clone(), cv * cw);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriOpKind {
    Prec,
    Succ,
    Bullet,
}

impl TriOpKind {
    pub fn symbol(self) -> &'static str {
        match self {
            TriOpKind::Prec => "<",
            TriOpKind::Succ => ">",
            TriOpKind::Bullet => ".",
        }
    }
}

pub(crate) fn children_names(v: &Name) -> Result<Vec<Name>> {
    match crate::name::decode(v)? {
        PlanarTree::Leaf => Err(Error::Precondition(
            "the unit name has no child decomposition".into(),
        )),
        PlanarTree::Node(cs) => Ok(cs.iter().map(encode).collect()),
    }
}

/// One of the three operations on a pair of names. The pair of unit names is
/// undefined; a single unit follows the unit conventions.
pub fn tri_op_names(kind: TriOpKind, v: &Name, w: &Name) -> Result<FormalSum> {
    use crate::name::graft_names;
    match (v.is_leaf(), w.is_leaf()) {
        (true, true) => return Err(Error::UndefinedUnitPair),
        (true, false) => {
            return Ok(match kind {
                TriOpKind::Succ => FormalSum::from_name(w.clone()),
                TriOpKind::Prec | TriOpKind::Bullet => FormalSum::zero(),
            })
        }
        (false, true) => {
            return Ok(match kind {
                TriOpKind::Prec => FormalSum::from_name(v.clone()),
                TriOpKind::Succ | TriOpKind::Bullet => FormalSum::zero(),
            })
        }
        (false, false) => {}
    }
    let mut out = FormalSum::zero();
    match kind {
        TriOpKind::Succ => {
            let ws = children_names(w)?;
            for u in star_names(v, &ws[0])?.iter() {
                let mut parts = vec![u.clone()];
                parts.extend_from_slice(&ws[1..]);
                out.add_term(graft_names(&parts)?, Rational64::from_integer(1));
            }
        }
        TriOpKind::Prec => {
            let vs = children_names(v)?;
            let (last, init) = vs.split_last().unwrap();
            for u in star_names(last, w)?.iter() {
                let mut parts = init.to_vec();
                parts.push(u.clone());
                out.add_term(graft_names(&parts)?, Rational64::from_integer(1));
            }
        }
        TriOpKind::Bullet => {
            let vs = children_names(v)?;
            let ws = children_names(w)?;
            let (last, init) = vs.split_last().unwrap();
            for u in star_names(last, &ws[0])?.iter() {
                let mut parts = init.to_vec();
                parts.push(u.clone());
                parts.extend_from_slice(&ws[1..]);
                out.add_term(graft_names(&parts)?, Rational64::from_integer(1));
            }
        }
    }
    Ok(out)
}

/// Bilinear extension of [`tri_op_names`] to formal sums.
pub fn tri_op(kind: TriOpKind, a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (v, cv) in a.terms() {
        for (w, cw) in b.terms() {
            let prod = tri_op_names(kind, v, w)?;
            for (u, cu) in prod.terms() {
                out.add_term(u.clone(), cv * cw * cu);
            }
        }
    }
    Ok(out)
}

/// Expression over a single generator and the three operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalExpr {
    Gen,
    Node(TriOpKind, Box<UniversalExpr>, Box<UniversalExpr>),
}

impl UniversalExpr {
    pub fn gen_count(&self) -> usize {
        match self {
            UniversalExpr::Gen => 1,
            UniversalExpr::Node(_, a, b) => a.gen_count() + b.gen_count(),
        }
    }
}

impl fmt::Display for UniversalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(e: &UniversalExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                UniversalExpr::Gen => f.write_str("g"),
                node => write!(f, "({node})"),
            }
        }
        match self {
            UniversalExpr::Gen => f.write_str("g"),
            UniversalExpr::Node(kind, a, b) => {
                child(a, f)?;
                write!(f, " {} ", kind.symbol())?;
                child(b, f)
            }
        }
    }
}

/// The unique expression writing t in terms of the one-vertex tree: for
/// t = t1 ∨ .. ∨ tm, a left-associated •-chain of m-1 generators, one per
/// junction between consecutive children, where the generator right of an
/// interior non-leaf child carries that child's expression as a ≻-prefix;
/// a non-leaf first child prefixes the whole chain with ≻ and a non-leaf
/// last child suffixes it with ≺. Leaf children contribute nothing. The
/// generator count equals the degree.
///
/// A bare •-factor would not do for the interior children: • is associative,
/// so any •-chain of generators alone collapses to a corolla.
pub fn universal_expression(t: &PlanarTree) -> Result<UniversalExpr> {
    let PlanarTree::Node(cs) = t else {
        return Err(Error::Precondition(
            "the one-leaf tree has no universal expression".into(),
        ));
    };
    let m = cs.len();
    let mut chain: Option<UniversalExpr> = None;
    for j in 1..m {
        let mut item = UniversalExpr::Gen;
        if !cs[j - 1].is_leaf() && j > 1 {
            item = UniversalExpr::Node(
                TriOpKind::Succ,
                Box::new(universal_expression(&cs[j - 1])?),
                Box::new(item),
            );
        }
        chain = Some(match chain.take() {
            None => item,
            Some(acc) => UniversalExpr::Node(TriOpKind::Bullet, Box::new(acc), Box::new(item)),
        });
    }
    let mut expr = chain.unwrap();
    if !cs[0].is_leaf() {
        expr = UniversalExpr::Node(
            TriOpKind::Succ,
            Box::new(universal_expression(&cs[0])?),
            Box::new(expr),
        );
    }
    if !cs[m - 1].is_leaf() {
        expr = UniversalExpr::Node(
            TriOpKind::Prec,
            Box::new(expr),
            Box::new(universal_expression(&cs[m - 1])?),
        );
    }
    Ok(expr)
}

/// A carrier the three operations act on; lets one expression drive both the
/// formal-sum operations and the grove operations.
pub trait TriOps: Clone {
    fn apply(kind: TriOpKind, a: &Self, b: &Self) -> Result<Self>;
}

impl TriOps for FormalSum {
    fn apply(kind: TriOpKind, a: &Self, b: &Self) -> Result<Self> {
        tri_op(kind, a, b)
    }
}

/// Structural fold of an expression with the generator bound to g.
pub fn eval_universal<C: TriOps>(e: &UniversalExpr, g: &C) -> Result<C> {
    match e {
        UniversalExpr::Gen => Ok(g.clone()),
        UniversalExpr::Node(kind, a, b) => {
            let a = eval_universal(a, g)?;
            let b = eval_universal(b, g)?;
            C::apply(*kind, &a, &b)
        }
    }
}
