//! The partial order on names of a fixed degree as a lattice.
//!
//! Two layers. [`Poset`] enumerates a whole degree and computes everything by
//! brute force (order matrix, join/meet tables, covers, Möbius numbers); it
//! is the oracle. The free functions `join`, `meet`, `moebius_closed` are the
//! closed forms that work on coordinates alone; tests pin them against the
//! oracle. On top sit the cover moves, atoms, left-modular maximal chains and
//! the characteristic-polynomial factorization they induce.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::name::{decode, encode, graft_names, leq_name, Coordinate, Name};
use crate::tree::{enumerate_trees, PlanarTree};

/// Largest degree for which pairwise brute-force tables are built.
pub const PAIRWISE_CAP: usize = 6;

/// Name of the minimum of degree n: the left comb.
pub fn bottom_name(n: usize) -> Name {
    if n == 0 {
        return Name::leaf();
    }
    let mut coords = vec![Coordinate::Open(1)];
    coords.extend(std::iter::repeat_with(|| Coordinate::Close(vec![1])).take(n));
    Name::from_coords(coords)
}

/// Name of the maximum of degree n: the right comb.
pub fn top_name(n: usize) -> Name {
    if n == 0 {
        return Name::leaf();
    }
    let mut coords: Vec<Coordinate> = (1..=n).map(Coordinate::Open).collect();
    coords.push(Coordinate::Close((1..=n).collect()));
    Name::from_coords(coords)
}

/// A whole degree of the order, with every pairwise question precomputed.
pub struct Poset {
    degree: usize,
    names: Vec<Name>,      // ascending in the semantic name order
    literals: Vec<String>, // tree literal per element
    index: HashMap<Name, usize>,
    leq: Vec<bool>,   // row-major n*n order matrix
    joins: Vec<u32>,  // index of the least upper bound per pair
    meets: Vec<u32>,  // index of the greatest lower bound per pair
    covers: Vec<Vec<u32>>, // upward covers per element
    mu0: Vec<i64>,    // Möbius numbers from the bottom
}

impl Poset {
    /// Build (or fetch from the per-degree cache) the poset of degree n.
    pub fn new(degree: usize) -> Result<Arc<Poset>> {
        if degree > PAIRWISE_CAP {
            return Err(Error::EnumerationCap {
                degree,
                cap: PAIRWISE_CAP,
            });
        }
        static CACHE: Lazy<Mutex<HashMap<usize, Arc<Poset>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        if let Some(hit) = CACHE.lock().unwrap().get(&degree) {
            return Ok(hit.clone());
        }
        let built = Arc::new(Poset::build(degree)?);
        CACHE.lock().unwrap().insert(degree, built.clone());
        Ok(built)
    }

    fn build(degree: usize) -> Result<Poset> {
        let trees = enumerate_trees(degree)?;
        let mut elems: Vec<(Name, String)> = trees
            .iter()
            .map(|t| (encode(t), t.to_string()))
            .collect();
        elems.sort_by(|a, b| a.0.cmp(&b.0));
        let n = elems.len();
        let (names, literals): (Vec<Name>, Vec<String>) = elems.into_iter().unzip();
        let index: HashMap<Name, usize> =
            names.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = leq_name(&names[i], &names[j])?;
            }
        }
        // semantic order is a linear extension, so the first common upper
        // bound in index order is a minimal one; being below all the others
        // is exactly the unique-least-upper-bound claim
        let mut joins = vec![0u32; n * n];
        let mut meets = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let lo = i.max(j);
                let jo = (lo..n)
                    .find(|&k| leq[i * n + k] && leq[j * n + k])
                    .expect("the top bounds every pair");
                assert!(
                    (jo..n).all(|k| !(leq[i * n + k] && leq[j * n + k]) || leq[jo * n + k]),
                    "degree {degree}: no least upper bound for pair ({i}, {j})"
                );
                let hi = i.min(j);
                let me = (0..=hi)
                    .rev()
                    .find(|&k| leq[k * n + i] && leq[k * n + j])
                    .expect("the bottom is below every pair");
                assert!(
                    (0..=me).all(|k| !(leq[k * n + i] && leq[k * n + j]) || leq[k * n + me]),
                    "degree {degree}: no greatest lower bound for pair ({i}, {j})"
                );
                joins[i * n + j] = jo as u32;
                joins[j * n + i] = jo as u32;
                meets[i * n + j] = me as u32;
                meets[j * n + i] = me as u32;
            }
        }
        let mut covers = vec![Vec::new(); n];
        for i in 0..n {
            let ups: Vec<usize> = (i + 1..n).filter(|&j| leq[i * n + j]).collect();
            for &j in &ups {
                if !ups.iter().any(|&k| k != j && leq[k * n + j]) {
                    covers[i].push(j as u32);
                }
            }
        }
        let mut mu0 = vec![0i64; n];
        for j in 0..n {
            if j == 0 {
                mu0[0] = 1;
                continue;
            }
            mu0[j] = -(0..j).filter(|&k| leq[k * n + j]).map(|k| mu0[k]).sum::<i64>();
        }
        assert!((0..n).all(|j| leq[j]), "index 0 is not the bottom");
        assert!(
            (0..n).all(|i| leq[i * n + n - 1]),
            "the last index is not the top"
        );
        Ok(Poset {
            degree,
            names,
            literals,
            index,
            leq,
            joins,
            meets,
            covers,
            mu0,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // every degree has at least the comb
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    pub fn bottom(&self) -> &Name {
        &self.names[0]
    }

    pub fn top(&self) -> &Name {
        self.names.last().unwrap()
    }

    pub fn index_of(&self, v: &Name) -> Result<usize> {
        if v.degree() != self.degree && !(v.is_leaf() && self.degree == 0) {
            return Err(Error::DegreeMismatch(v.degree(), self.degree));
        }
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::InvalidName(format!("{v} is not the name of a tree")))
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.names.len() + j]
    }

    pub fn join_idx(&self, i: usize, j: usize) -> usize {
        self.joins[i * self.names.len() + j] as usize
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meets[i * self.names.len() + j] as usize
    }

    pub fn brute_join(&self, v: &Name, w: &Name) -> Result<Name> {
        Ok(self.names[self.join_idx(self.index_of(v)?, self.index_of(w)?)].clone())
    }

    pub fn brute_meet(&self, v: &Name, w: &Name) -> Result<Name> {
        Ok(self.names[self.meet_idx(self.index_of(v)?, self.index_of(w)?)].clone())
    }

    pub fn covers_of(&self, v: &Name) -> Result<Vec<Name>> {
        let i = self.index_of(v)?;
        Ok(self.covers[i]
            .iter()
            .map(|&j| self.names[j as usize].clone())
            .collect())
    }

    pub fn moebius_brute(&self, v: &Name) -> Result<i64> {
        Ok(self.mu0[self.index_of(v)?])
    }

    /// Left-modularity of element x: for every comparable pair y <= z,
    /// y v (x ^ z) = (y v x) ^ z.
    pub fn is_left_modular(&self, x: usize) -> bool {
        let n = self.names.len();
        for y in 0..n {
            for z in 0..n {
                if !self.leq[y * n + z] {
                    continue;
                }
                let lhs = self.join_idx(y, self.meet_idx(x, z));
                let rhs = self.meet_idx(self.join_idx(y, x), z);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Hasse diagram in DOT, nodes named by tree literal, edges upward.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for lit in &self.literals {
            out.push_str(&format!("  \"{lit}\";\n"));
        }
        for (i, ups) in self.covers.iter().enumerate() {
            for &j in ups {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\";\n",
                    self.literals[i], self.literals[j as usize]
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Word state shared by the closed-form bounds: the output's still-open
/// positions (at most one live parenthesis per position; re-closing a
/// position later just raises its multiplicity) and the parenthesis spans
/// already emitted, used to decide whether a position may be re-closed
/// without crossing a finished span.
struct BoundState {
    open: Vec<usize>,          // ascending
    spans: Vec<(usize, usize)>, // (opened at, closed at)
}

impl BoundState {
    fn new() -> Self {
        BoundState {
            open: Vec::new(),
            spans: Vec::new(),
        }
    }

    /// A new parenthesis opened at r may still close at the current position
    /// or later iff it does not cross a span that is already finished.
    fn may_reopen(&self, r: usize) -> bool {
        !self.spans.iter().any(|&(r2, i2)| r2 < r && r <= i2)
    }

    fn close(&mut self, list: &[usize], i: usize) {
        let anchor = list[0];
        self.open.retain(|&s| s < anchor);
        for &r in list {
            self.spans.push((r, i));
        }
    }
}

/// Build the close list at position i: the mandatory part (one parenthesis
/// at the anchor plus everything the output still has open above it), then
/// just enough re-closures of earlier open-kind positions to put the value
/// on the wanted side of the input coordinates (at least as large for the
/// join, no larger for the meet).
fn bound_close(
    anchor: usize,
    i: usize,
    constraints: &[&[usize]],
    raise: bool,
    out: &[Coordinate],
    state: &BoundState,
) -> Vec<usize> {
    let mut chosen: Vec<bool> = vec![false; i]; // chosen[e] for exponent e, e < i
    chosen[anchor] = true;
    for &s in &state.open {
        if s > anchor {
            chosen[s] = true;
        }
    }
    // strict[c]: the output value already left constraint c behind; while a
    // constraint is tied we must follow it exponent by exponent
    let mut strict = vec![false; constraints.len()];
    for (c, list) in constraints.iter().enumerate() {
        debug_assert!(if raise { anchor >= list[0] } else { anchor <= list[0] });
        strict[c] = anchor != list[0];
    }
    for e in anchor + 1..i {
        let wanted: Vec<bool> = constraints.iter().map(|l| l.contains(&e)).collect();
        if chosen[e] {
            for c in 0..constraints.len() {
                if !strict[c] && !wanted[c] {
                    // the mandatory entry overtakes this constraint
                    debug_assert!(raise, "a mandatory re-closure exceeds a meet bound");
                    strict[c] = true;
                }
            }
            continue;
        }
        let reopen_ok =
            matches!(out.get(e - 1), Some(Coordinate::Open(_))) && state.may_reopen(e);
        if raise {
            // need the entry whenever a tied lower constraint has it
            if (0..constraints.len()).any(|c| !strict[c] && wanted[c]) {
                if reopen_ok {
                    chosen[e] = true;
                } else {
                    // fall behind here; overtake at the deepest earlier slot
                    let slot = (anchor + 1..e)
                        .rev()
                        .find(|&r| {
                            !chosen[r]
                                && matches!(out.get(r - 1), Some(Coordinate::Open(_)))
                                && state.may_reopen(r)
                        })
                        .expect("some earlier position can be re-closed");
                    chosen[slot] = true;
                    strict.iter_mut().for_each(|s| *s = true);
                }
            }
        } else {
            // take the entry whenever no tied upper constraint forbids it
            if reopen_ok && (0..constraints.len()).all(|c| strict[c] || wanted[c]) {
                chosen[e] = true;
            }
        }
        for c in 0..constraints.len() {
            if !strict[c] && chosen[e] != wanted[c] {
                strict[c] = true;
            }
        }
    }
    (1..i).filter(|&e| chosen[e]).collect()
}

/// Closed-form least upper bound of two names of equal degree: opens beat
/// bares beat closes coordinatewise; where both inputs close, close back to
/// the higher of their anchors and re-close whatever that strands.
pub fn join(v: &Name, w: &Name) -> Result<Name> {
    bounds(v, w, true)
}

/// Closed-form greatest lower bound of two names of equal degree: dual to
/// [`join`]; where a close is involved, the anchor drops to the deepest
/// position both inputs leave open.
pub fn meet(v: &Name, w: &Name) -> Result<Name> {
    bounds(v, w, false)
}

fn bounds(v: &Name, w: &Name, raise: bool) -> Result<Name> {
    if v.coords().len() != w.coords().len() {
        return Err(Error::DegreeMismatch(v.degree(), w.degree()));
    }
    let mut out: Vec<Coordinate> = Vec::with_capacity(v.coords().len());
    let mut state = BoundState::new();
    for (idx, (a, b)) in v.coords().iter().zip(w.coords()).enumerate() {
        let i = idx + 1;
        let close_lists: Vec<&[usize]> = [a, b]
            .into_iter()
            .filter_map(|c| match c {
                Coordinate::Close(l) => Some(l.as_slice()),
                _ => None,
            })
            .collect();
        let c = if raise {
            match close_lists.len() {
                0 | 1 => {
                    if matches!(a, Coordinate::Open(_)) || matches!(b, Coordinate::Open(_)) {
                        Coordinate::Open(i)
                    } else {
                        Coordinate::Bare(i)
                    }
                }
                _ => {
                    let anchor = close_lists.iter().map(|l| l[0]).max().unwrap();
                    Coordinate::Close(bound_close(anchor, i, &close_lists, true, &out, &state))
                }
            }
        } else {
            match close_lists.len() {
                0 => {
                    if matches!(a, Coordinate::Open(_)) && matches!(b, Coordinate::Open(_)) {
                        Coordinate::Open(i)
                    } else {
                        Coordinate::Bare(i)
                    }
                }
                _ => {
                    let cap = close_lists.iter().map(|l| l[0]).min().unwrap();
                    let anchor = both_open_at_or_below(v, w, cap, &state);
                    Coordinate::Close(bound_close(anchor, i, &close_lists, false, &out, &state))
                }
            }
        };
        match &c {
            Coordinate::Open(_) => state.open.push(i),
            Coordinate::Close(list) => state.close(list, i),
            Coordinate::Bare(_) => {}
        }
        out.push(c);
    }
    Ok(Name::from_coords(out))
}

/// Largest position k <= bound where both inputs have an open coordinate and
/// the output can still close a parenthesis opened at k; position 1 always
/// qualifies on valid names.
fn both_open_at_or_below(v: &Name, w: &Name, bound: usize, state: &BoundState) -> usize {
    (1..=bound)
        .rev()
        .find(|&k| {
            matches!(v.coords()[k - 1], Coordinate::Open(_))
                && matches!(w.coords()[k - 1], Coordinate::Open(_))
                && (state.open.contains(&k) || state.may_reopen(k))
        })
        .expect("position 1 is open in every valid name")
}

/// One application of each of the three cover moves, as names.
///
/// On trees: rewrite one child in place (recursion), splice a non-leaf first
/// child into its parent, or bundle a proper suffix of at least two children
/// under a new vertex. Each result is strictly greater; the reflexive and
/// transitive closure is the whole up-set.
pub fn moves(v: &Name) -> Result<Vec<Name>> {
    let t = decode(v)?;
    let mut out: Vec<Name> = tree_moves(&t).iter().map(encode).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn tree_moves(t: &PlanarTree) -> Vec<PlanarTree> {
    let PlanarTree::Node(cs) = t else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        for moved in tree_moves(c) {
            let mut next = cs.clone();
            next[i] = moved;
            out.push(PlanarTree::Node(next));
        }
    }
    if let PlanarTree::Node(us) = &cs[0] {
        let mut next = us.clone();
        next.extend_from_slice(&cs[1..]);
        out.push(PlanarTree::Node(next));
    }
    let m = cs.len();
    for j in 1..=m.saturating_sub(2) {
        let mut next = cs[..j].to_vec();
        next.push(PlanarTree::Node(cs[j..].to_vec()));
        out.push(PlanarTree::Node(next));
    }
    out
}

/// Upward covers of v, from the brute-force poset of its degree.
pub fn covers(v: &Name) -> Result<Vec<Name>> {
    Poset::new(v.degree())?.covers_of(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoebiusMode {
    Closed,
    Brute,
}

/// Möbius number of the interval from the bottom of the degree up to v.
pub fn moebius(v: &Name, mode: MoebiusMode) -> Result<i64> {
    match mode {
        MoebiusMode::Closed => {
            decode(v)?;
            Ok(moebius_closed(v))
        }
        MoebiusMode::Brute => Poset::new(v.degree())?.moebius_brute(v),
    }
}

/// Closed form: nonzero exactly when every interior coordinate is `Close([1])`
/// or bare and the final coordinate is `Close([1])`; then the sign is minus
/// one to the number of bare coordinates.
pub fn moebius_closed(v: &Name) -> i64 {
    let cs = v.coords();
    if cs.is_empty() {
        return 1;
    }
    let last = cs.len() - 1;
    if cs[last] != Coordinate::Close(vec![1]) {
        return 0;
    }
    let mut bare = 0u32;
    for c in &cs[1..last] {
        match c {
            Coordinate::Close(l) if l.as_slice() == [1] => {}
            Coordinate::Bare(_) => bare += 1,
            _ => return 0,
        }
    }
    if bare % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The n-1 atoms of degree n, in position order: the i-th has its single
/// bare coordinate at position i+1 and closes back to the root everywhere
/// else. They are exactly the covers of the bottom.
pub fn atoms(n: usize) -> Result<Vec<Name>> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "atoms need degree at least 2, got {n}"
        )));
    }
    Ok((1..n)
        .map(|i| {
            let coords = (1..=n + 1)
                .map(|p| {
                    if p == 1 {
                        Coordinate::Open(1)
                    } else if p == i + 1 {
                        Coordinate::Bare(p)
                    } else {
                        Coordinate::Close(vec![1])
                    }
                })
                .collect();
            Name::from_coords(coords)
        })
        .collect())
}

/// A maximal chain from bottom to top, all of whose elements are left-modular.
///
/// Built inductively: the chain one degree down, grafted with a trailing
/// leaf, then the bottom-heavy middle element (0) v top(n-2) v (0), then a
/// depth-first search over left-modular covers (smallest first, backtracking)
/// up to the top. The result has (n-1)^2 + (n-1) + 1 elements.
pub fn left_modular_chain(n: usize) -> Result<Vec<Name>> {
    if n == 0 {
        return Err(Error::Precondition("chains start at degree 1".into()));
    }
    if n == 1 {
        return Ok(vec![top_name(1)]);
    }
    let poset = Poset::new(n)?;
    let target = (n - 1) * (n - 1) + (n - 1) + 1;

    let mut chain: Vec<usize> = Vec::with_capacity(target);
    for u in left_modular_chain(n - 1)? {
        chain.push(poset.index_of(&graft_names(&[u, Name::leaf()])?)?);
    }
    let mid = graft_names(&[Name::leaf(), top_name(n - 2), Name::leaf()])?;
    chain.push(poset.index_of(&mid)?);

    let mut lm_cache: HashMap<usize, bool> = HashMap::new();
    let left_modular = |x: usize, cache: &mut HashMap<usize, bool>| -> bool {
        *cache.entry(x).or_insert_with(|| poset.is_left_modular(x))
    };
    // the prescribed prefix must itself be a saturated left-modular chain
    let prefix_ok = chain[0] == 0
        && chain
            .windows(2)
            .all(|w| poset.covers[w[0]].contains(&(w[1] as u32)))
        && chain.iter().all(|&x| left_modular(x, &mut lm_cache));
    if !prefix_ok {
        return Err(Error::ChainSearch(n));
    }

    fn dfs(
        poset: &Poset,
        chain: &mut Vec<usize>,
        target: usize,
        lm: &mut dyn FnMut(usize) -> bool,
    ) -> bool {
        let last = *chain.last().unwrap();
        if last == poset.len() - 1 {
            return chain.len() == target;
        }
        if chain.len() >= target {
            return false;
        }
        for &c in &poset.covers[last] {
            if lm(c as usize) {
                chain.push(c as usize);
                if dfs(poset, chain, target, lm) {
                    return true;
                }
                chain.pop();
            }
        }
        false
    }
    let mut lm = |x: usize| left_modular(x, &mut lm_cache);
    if !dfs(&poset, &mut chain, target, &mut lm) {
        return Err(Error::ChainSearch(n));
    }
    Ok(chain.into_iter().map(|i| poset.names()[i].clone()).collect())
}

/// Characteristic polynomial in factored form, keyed root -> multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    factors: BTreeMap<u64, usize>,
}

impl CharPoly {
    pub fn factors(&self) -> &BTreeMap<u64, usize> {
        &self.factors
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (root, mult) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *root == 0 {
                write!(f, "x^{mult}")?;
            } else {
                write!(f, "(x-{root})^{mult}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Factor the characteristic polynomial through the atom levels of the
/// left-modular chain, checking the level condition along the way: an atom
/// must not lie below the join of atoms from strictly later levels.
pub fn characteristic_polynomial(n: usize) -> Result<CharPoly> {
    let poset = Poset::new(n)?;
    let chain = left_modular_chain(n)?;
    let chain_idx: Vec<usize> = chain
        .iter()
        .map(|v| poset.index_of(v))
        .collect::<Result<_>>()?;
    let ats = atoms(n)?;
    let atom_idx: Vec<usize> = ats.iter().map(|a| poset.index_of(a)).collect::<Result<_>>()?;
    assert_eq!(
        {
            let mut c = poset.covers[0]
                .iter()
                .map(|&j| j as usize)
                .collect::<Vec<_>>();
            c.sort_unstable();
            c
        },
        {
            let mut a = atom_idx.clone();
            a.sort_unstable();
            a
        },
        "atoms must be the covers of the bottom"
    );

    // level of an atom = first chain step it sits below
    let mut level = vec![0usize; atom_idx.len()];
    for (a, &ai) in atom_idx.iter().enumerate() {
        level[a] = (1..chain_idx.len())
            .find(|&i| poset.leq_idx(ai, chain_idx[i]))
            .expect("every atom is below the top");
    }
    let mut sorted_levels = level.clone();
    sorted_levels.sort_unstable();
    sorted_levels.dedup();
    assert_eq!(
        sorted_levels.len(),
        atom_idx.len(),
        "atom levels must be singletons"
    );

    // level condition over every subset of strictly later atoms
    for (a, &ai) in atom_idx.iter().enumerate() {
        let later: Vec<usize> = (0..atom_idx.len())
            .filter(|&b| level[b] > level[a])
            .map(|b| atom_idx[b])
            .collect();
        for mask in 1u32..(1 << later.len()) {
            let mut bound: Option<usize> = None;
            for (b, &bi) in later.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    bound = Some(match bound {
                        None => bi,
                        Some(x) => poset.join_idx(x, bi),
                    });
                }
            }
            assert!(
                !poset.leq_idx(ai, bound.unwrap()),
                "level condition fails at degree {n}"
            );
        }
    }

    let mut factors: BTreeMap<u64, usize> = BTreeMap::new();
    for i in 1..chain_idx.len() {
        let size = level.iter().filter(|&&l| l == i).count() as u64;
        *factors.entry(size).or_insert(0) += 1;
    }
    Ok(CharPoly { factors })
}
