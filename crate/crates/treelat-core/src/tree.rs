//! Planar rooted trees whose internal vertices all have arity at least two,
//! together with enumeration and the counting sequences attached to them.
//!
//! Degree n means n + 1 leaves; the number of such trees is the super-Catalan
//! number 1, 1, 3, 11, 45, 197, ... The canonical literal writes a leaf as
//! `o` and an internal vertex as the parenthesized run of its children, so
//! the three trees of degree 2 print as `((oo)o)`, `(o(oo))`, `(ooo)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Largest degree `enumerate_trees` accepts by default (518 859 trees).
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarTree {
    Leaf,
    /// Invariant: at least two children. Build through [`graft`] or the
    /// literal parser, both of which enforce the arity.
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree::Leaf
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PlanarTree::Leaf)
    }

    /// Children of the root; empty slice for a leaf.
    pub fn children(&self) -> &[PlanarTree] {
        match self {
            PlanarTree::Leaf => &[],
            PlanarTree::Node(cs) => cs,
        }
    }

    /// Degree = number of leaves minus one; grafting m trees adds m - 1.
    pub fn degree(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(cs) => {
                cs.iter().map(PlanarTree::degree).sum::<usize>() + cs.len() - 1
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.degree() + 1
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => f.write_str("o"),
            PlanarTree::Node(cs) => {
                f.write_str("(")?;
                for c in cs {
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for PlanarTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

/// Graft: new root whose children are `parts`, left to right.
pub fn graft(parts: Vec<PlanarTree>) -> Result<PlanarTree> {
    if parts.len() < 2 {
        return Err(Error::GraftArity);
    }
    Ok(PlanarTree::Node(parts))
}

/// The corolla of degree n: a root with n + 1 leaf children. Degree 0 is the
/// bare leaf (a root with a single child would be a unary vertex).
pub fn corolla(n: usize) -> PlanarTree {
    if n == 0 {
        PlanarTree::Leaf
    } else {
        PlanarTree::Node(vec![PlanarTree::Leaf; n + 1])
    }
}

/// The dendriform involution: reverse the children of every vertex.
pub fn involution(t: &PlanarTree) -> PlanarTree {
    match t {
        PlanarTree::Leaf => PlanarTree::Leaf,
        PlanarTree::Node(cs) => {
            PlanarTree::Node(cs.iter().rev().map(involution).collect())
        }
    }
}

/// Substitute `t` for the i-th leaf of `host` (1-indexed, left to right).
///
/// A leaf host only accepts a leaf: gluing a proper tree onto a bare leaf is
/// the caller's unit case, not a substitution.
pub fn graft_on_leaf(t: &PlanarTree, i: usize, host: &PlanarTree) -> Result<PlanarTree> {
    let leaves = host.leaf_count();
    if i == 0 || i > leaves {
        return Err(Error::LeafIndex { index: i, leaves });
    }
    if host.is_leaf() {
        return if t.is_leaf() {
            Ok(PlanarTree::Leaf)
        } else {
            Err(Error::LeafHost)
        };
    }
    fn subst(t: &PlanarTree, i: usize, host: &PlanarTree) -> PlanarTree {
        match host {
            PlanarTree::Leaf => t.clone(),
            PlanarTree::Node(cs) => {
                let mut skipped = 0;
                let mut out = Vec::with_capacity(cs.len());
                let mut done = false;
                for c in cs {
                    let k = c.leaf_count();
                    if !done && i <= skipped + k {
                        out.push(subst(t, i - skipped, c));
                        done = true;
                    } else {
                        out.push(c.clone());
                    }
                    skipped += k;
                }
                PlanarTree::Node(out)
            }
        }
    }
    Ok(subst(t, i, host))
}

/// All degree-n trees, sorted by canonical literal, behind a per-degree cache.
pub fn enumerate_trees(n: usize) -> Result<Arc<Vec<PlanarTree>>> {
    enumerate_trees_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<Arc<Vec<PlanarTree>>> {
    if n > cap {
        return Err(Error::EnumerationCap { degree: n, cap });
    }
    static CACHE: Lazy<Mutex<HashMap<usize, Arc<Vec<PlanarTree>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = CACHE.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let built = Arc::new(build_trees(n, cap)?);
    CACHE.lock().unwrap().insert(n, built.clone());
    Ok(built)
}

fn build_trees(n: usize, cap: usize) -> Result<Vec<PlanarTree>> {
    if n == 0 {
        return Ok(vec![PlanarTree::Leaf]);
    }
    let mut out = Vec::new();
    // Root arity m needs m - 1 of the degree; the rest splits over children.
    for m in 2..=n + 1 {
        let extra = n - (m - 1);
        for comp in compositions(extra, m) {
            let pools: Vec<Arc<Vec<PlanarTree>>> = comp
                .iter()
                .map(|&d| enumerate_trees_capped(d, cap))
                .collect::<Result<_>>()?;
            let mut stack = vec![Vec::with_capacity(m)];
            for pool in &pools {
                let mut next = Vec::new();
                for partial in &stack {
                    for t in pool.iter() {
                        let mut p = partial.clone();
                        p.push(t.clone());
                        next.push(p);
                    }
                }
                stack = next;
            }
            out.extend(stack.into_iter().map(PlanarTree::Node));
        }
    }
    out.sort_by_cached_key(|t| t.to_string());
    Ok(out)
}

/// All ways to write `total` as an ordered sum of `parts` non-negative terms.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Super-Catalan count of degree-n trees, by the root-arity recursion
/// (independent of the enumerator, which is why the tests compare the two).
pub fn super_catalan(n: usize) -> u64 {
    let mut c = vec![1u64]; // c[0] = 1
    for d in 1..=n {
        let mut total = 0u64;
        for m in 2..=d + 1 {
            total += composition_count(&c, d - (m - 1), m);
        }
        c.push(total);
    }
    c[n]
}

/// Sum over compositions of `total` into `parts` terms of the product of
/// counts, i.e. the `parts`-fold convolution of `c` at `total`.
fn composition_count(c: &[u64], total: usize, parts: usize) -> u64 {
    let mut conv = vec![0u64; total + 1];
    conv[0] = 1;
    for _ in 0..parts {
        let mut next = vec![0u64; total + 1];
        for (s, &v) in conv.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for (d, &cd) in c.iter().enumerate().take(total - s + 1) {
                next[s + d] += v * cd;
            }
        }
        conv = next;
    }
    conv[total]
}

/// Check the count identity behind the involution argument: every fixed tree
/// of even degree 2n splits into a strictly increasing left half of j trees,
/// a fixed middle of degree 2k, and the mirrored right half, which counts
///
///   C_n = sum over k < n of C_k * sum over j >= 1 of
///         (compositions i_0 + ... + i_{j-1} = n - k - j of C_{i_0}...C_{i_{j-1}}).
pub fn recurrence_check(n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let c: Vec<u64> = (0..=n).map(super_catalan).collect();
    let mut rhs = 0u64;
    for k in 0..n {
        let mut middle = 0u64;
        for j in 1..=n - k {
            middle += composition_count(&c, n - k - j, j);
        }
        rhs += middle * c[k];
    }
    rhs == c[n]
}

/// Number of degree-n trees fixed by the involution.
pub fn invariant_count(n: usize) -> Result<u64> {
    let trees = enumerate_trees(n)?;
    Ok(trees.iter().filter(|t| involution(t) == **t).count() as u64)
}

/// Parse the canonical literal: `tree := "o" | "(" tree tree tree* ")"`.
pub fn parse_tree(s: &str) -> Result<PlanarTree> {
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let t = parse_tree_at(bytes, &mut pos)?;
    if pos != bytes.len() {
        return Err(Error::Parse {
            pos,
            msg: "trailing input after tree".into(),
        });
    }
    Ok(t)
}

fn parse_tree_at(bytes: &[u8], pos: &mut usize) -> Result<PlanarTree> {
    match bytes.get(*pos) {
        Some(b'o') => {
            *pos += 1;
            Ok(PlanarTree::Leaf)
        }
        Some(b'(') => {
            let open = *pos;
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match bytes.get(*pos) {
                    Some(b')') => {
                        *pos += 1;
                        break;
                    }
                    Some(b'o') | Some(b'(') => children.push(parse_tree_at(bytes, pos)?),
                    Some(&c) => {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: format!("unexpected byte {:?}", c as char),
                        })
                    }
                    None => {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: "unclosed parenthesis".into(),
                        })
                    }
                }
            }
            if children.len() < 2 {
                return Err(Error::Parse {
                    pos: open,
                    msg: "a vertex needs at least two children".into(),
                });
            }
            Ok(PlanarTree::Node(children))
        }
        Some(&c) => Err(Error::Parse {
            pos: *pos,
            msg: format!("unexpected byte {:?}", c as char),
        }),
        None => Err(Error::Parse {
            pos: *pos,
            msg: "empty input".into(),
        }),
    }
}
