//! Names: trees encoded as vectors of coordinates.
//!
//! Number the leaves of a degree-n tree 1..=n+1 in planar order. Leaf i
//! contributes one coordinate, read off the parenthesized literal:
//!
//! * one or more `(` directly before leaf i: `Open(i)`, value i;
//! * no parenthesis on either side: `Bare(i)`, value (i-1) + i h^-1;
//! * one or more `)` directly after leaf i: `Close([p1 < .. < pk])` where the
//!   closed parentheses were opened before leaves p1, .., pk, with value
//!   p1 + h^-p1 + .. + h^-pk.
//!
//! A leaf cannot have `(` before and `)` after it at once (that would be a
//! unary vertex), so the three kinds are exhaustive and exclusive. The bare
//! leaf tree has the empty coordinate vector, written `(0)`.
//!
//! Values are compared as polynomials in h^-1 for h large: integer part
//! first, then coefficients of h^-1, h^-2, .. lexicographically. At a fixed
//! position i this puts every close below `Bare(i)` below `Open(i)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{enumerate_trees, involution, parse_tree, PlanarTree};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coordinate {
    Open(usize),
    Bare(usize),
    /// Opening positions of the parentheses closed after this leaf, strictly
    /// ascending (outermost first). Strictness encodes the no-unary rule.
    Close(Vec<usize>),
}

impl Coordinate {
    /// Coefficient of h^-e in the value of this coordinate.
    pub fn coefficient(&self, e: usize) -> usize {
        match self {
            Coordinate::Open(j) => {
                if e == 0 {
                    *j
                } else {
                    0
                }
            }
            Coordinate::Bare(j) => match e {
                0 => j.saturating_sub(1),
                1 => *j,
                _ => 0,
            },
            Coordinate::Close(list) => {
                if e == 0 {
                    list[0]
                } else {
                    usize::from(list.contains(&e))
                }
            }
        }
    }

    fn max_exponent(&self) -> usize {
        match self {
            Coordinate::Open(_) => 0,
            Coordinate::Bare(_) => 1,
            Coordinate::Close(list) => *list.last().unwrap(),
        }
    }

    /// Structural tiebreak for [`compare_value`] ties; distinct well-formed
    /// coordinates never have equal values, so this only matters for raw
    /// hand-built coordinates.
    fn structural_key(&self) -> (u8, usize, &[usize]) {
        match self {
            Coordinate::Open(j) => (0, *j, &[]),
            Coordinate::Bare(j) => (1, *j, &[]),
            Coordinate::Close(list) => (2, 0, list),
        }
    }
}

/// Order of coordinate values with h large: compare coefficient vectors of
/// (h^0, h^-1, h^-2, ..) lexicographically.
pub fn compare_value(a: &Coordinate, b: &Coordinate) -> Ordering {
    let top = a.max_exponent().max(b.max_exponent());
    for e in 0..=top {
        match a.coefficient(e).cmp(&b.coefficient(e)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Open(j) => write!(f, "{j}"),
            Coordinate::Bare(j) => write!(f, "{}+{}h^-1", j - 1, j),
            Coordinate::Close(list) => {
                write!(f, "{}", list[0])?;
                for p in list {
                    write!(f, "+h^-{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// JSON shape: {"kind":"open"|"bare","pos":j} or {"kind":"close","exps":[..]}.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CoordinateJson {
    Open { pos: usize },
    Bare { pos: usize },
    Close { exps: Vec<usize> },
}

impl From<Coordinate> for CoordinateJson {
    fn from(c: Coordinate) -> Self {
        match c {
            Coordinate::Open(pos) => CoordinateJson::Open { pos },
            Coordinate::Bare(pos) => CoordinateJson::Bare { pos },
            Coordinate::Close(exps) => CoordinateJson::Close { exps },
        }
    }
}

impl TryFrom<CoordinateJson> for Coordinate {
    type Error = Error;

    fn try_from(c: CoordinateJson) -> Result<Coordinate> {
        match c {
            CoordinateJson::Open { pos } => {
                if pos == 0 {
                    return Err(Error::InvalidName("open position must be positive".into()));
                }
                Ok(Coordinate::Open(pos))
            }
            CoordinateJson::Bare { pos } => {
                if pos < 2 {
                    return Err(Error::InvalidName("bare position must be at least 2".into()));
                }
                Ok(Coordinate::Bare(pos))
            }
            CoordinateJson::Close { exps } => {
                check_close_list(&exps)?;
                Ok(Coordinate::Close(exps))
            }
        }
    }
}

fn check_close_list(exps: &[usize]) -> Result<()> {
    if exps.is_empty() {
        return Err(Error::InvalidName("close list is empty".into()));
    }
    if exps[0] == 0 {
        return Err(Error::InvalidName("close exponents must be positive".into()));
    }
    if !exps.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidName(format!(
            "close exponents must be strictly ascending, got {exps:?}"
        )));
    }
    Ok(())
}

impl Serialize for Coordinate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoordinateJson::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coordinate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CoordinateJson::deserialize(d)?;
        Coordinate::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// A coordinate vector. Construction does not validate; [`decode`] is the
/// full structural check, so ill-formed vectors are representable but fail
/// there (which is also where position-consistency errors surface).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Name {
    coords: Vec<Coordinate>,
}

impl Name {
    /// The name of the bare leaf, written `(0)`.
    pub fn leaf() -> Name {
        Name { coords: Vec::new() }
    }

    pub fn from_coords(coords: Vec<Coordinate>) -> Name {
        Name { coords }
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn is_leaf(&self) -> bool {
        self.coords.is_empty()
    }

    /// Degree of the tree this names: one less than the coordinate count,
    /// except for the leaf which has no coordinates.
    pub fn degree(&self) -> usize {
        self.coords.len().saturating_sub(1)
    }

    pub fn leaf_count(&self) -> usize {
        self.degree() + 1
    }

    pub fn validate(&self) -> Result<()> {
        decode(self).map(|_| ())
    }
}

impl Ord for Name {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords
            .len()
            .cmp(&other.coords.len())
            .then_with(|| {
                for (a, b) in self.coords.iter().zip(&other.coords) {
                    match compare_value(a, b) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                for (a, b) in self.coords.iter().zip(&other.coords) {
                    match a.structural_key().cmp(&b.structural_key()) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_name(s)
    }
}

/// Encode a tree as its name by reading the literal left to right.
pub fn encode(t: &PlanarTree) -> Name {
    if t.is_leaf() {
        return Name::leaf();
    }
    struct St {
        coords: Vec<Coordinate>,
        stack: Vec<usize>,
        pending: usize,
        leaf: usize,
    }
    fn walk(t: &PlanarTree, s: &mut St) {
        match t {
            PlanarTree::Leaf => {
                s.leaf += 1;
                if s.pending > 0 {
                    for _ in 0..s.pending {
                        s.stack.push(s.leaf);
                    }
                    s.pending = 0;
                    s.coords.push(Coordinate::Open(s.leaf));
                } else {
                    s.coords.push(Coordinate::Bare(s.leaf));
                }
            }
            PlanarTree::Node(cs) => {
                s.pending += 1;
                for c in cs {
                    walk(c, s);
                }
                let p = s.stack.pop().expect("every close matches an open");
                match s.coords.last_mut() {
                    Some(Coordinate::Close(list)) => list.insert(0, p),
                    Some(last) => {
                        // replacing a Bare; an Open here would be a unary vertex
                        debug_assert!(matches!(last, Coordinate::Bare(_)));
                        *last = Coordinate::Close(vec![p]);
                    }
                    None => unreachable!("a vertex encloses at least one leaf"),
                }
            }
        }
    }
    let mut s = St {
        coords: Vec::new(),
        stack: Vec::new(),
        pending: 0,
        leaf: 0,
    };
    walk(t, &mut s);
    Name::from_coords(s.coords)
}

/// Decode a name back to its tree, validating the full structure: positions
/// must be consistent, parentheses balanced, and every vertex at least binary.
pub fn decode(name: &Name) -> Result<PlanarTree> {
    if name.is_leaf() {
        return Ok(PlanarTree::Leaf);
    }
    let len = name.coords.len();
    // parens opened at position p = occurrences of p across all close lists
    let mut mult = vec![0usize; len + 1];
    for c in &name.coords {
        if let Coordinate::Close(list) = c {
            check_close_list(list)?;
            for &p in list {
                if p >= len {
                    return Err(Error::InvalidName(format!(
                        "close exponent {p} out of range for {len} coordinates"
                    )));
                }
                mult[p] += 1;
            }
        }
    }
    let mut word = String::new();
    let mut stack: Vec<usize> = Vec::new();
    for (idx, c) in name.coords.iter().enumerate() {
        let i = idx + 1;
        match c {
            Coordinate::Open(j) => {
                if *j != i {
                    return Err(Error::InvalidName(format!(
                        "open coordinate {j} at position {i}"
                    )));
                }
                if mult[i] == 0 {
                    return Err(Error::InvalidName(format!(
                        "position {i} opens a parenthesis that never closes"
                    )));
                }
                for _ in 0..mult[i] {
                    stack.push(i);
                    word.push('(');
                }
                word.push('o');
            }
            Coordinate::Bare(j) => {
                if *j != i || i == 1 {
                    return Err(Error::InvalidName(format!(
                        "bare coordinate {j} at position {i}"
                    )));
                }
                if mult[i] != 0 {
                    return Err(Error::InvalidName(format!(
                        "a close list opens position {i} but its coordinate is bare"
                    )));
                }
                word.push('o');
            }
            Coordinate::Close(list) => {
                if i == 1 {
                    return Err(Error::InvalidName("the first coordinate must be 1".into()));
                }
                if mult[i] != 0 {
                    return Err(Error::InvalidName(format!(
                        "a close list opens position {i} but its coordinate is a close"
                    )));
                }
                word.push('o');
                for &p in list.iter().rev() {
                    match stack.pop() {
                        Some(q) if q == p => word.push(')'),
                        Some(q) => {
                            return Err(Error::InvalidName(format!(
                                "position {i} closes {p} but the innermost open is {q}"
                            )))
                        }
                        None => {
                            return Err(Error::InvalidName(format!(
                                "position {i} closes {p} with nothing open"
                            )))
                        }
                    }
                }
            }
        }
    }
    if !stack.is_empty() {
        return Err(Error::InvalidName("unclosed parenthesis".into()));
    }
    parse_tree(&word)
        .map_err(|_| Error::InvalidName("the word is not a single at-least-binary tree".into()))
}

/// Sorted names of every degree-n tree, cached per degree. This is the
/// ambient basis for interval sums and grove arithmetic.
pub fn name_table(n: usize) -> Result<Arc<Vec<Name>>> {
    static CACHE: Lazy<Mutex<HashMap<usize, Arc<Vec<Name>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = CACHE.lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let trees = enumerate_trees(n)?;
    let mut names: Vec<Name> = trees.iter().map(encode).collect();
    names.sort();
    let table = Arc::new(names);
    CACHE
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Coordinatewise product order on names of equal degree.
pub fn leq_name(v: &Name, w: &Name) -> Result<bool> {
    if v.coords.len() != w.coords.len() {
        return Err(Error::DegreeMismatch(v.degree(), w.degree()));
    }
    Ok(v.coords
        .iter()
        .zip(&w.coords)
        .all(|(a, b)| compare_value(a, b) != Ordering::Greater))
}

/// Shift every position and exponent up by k.
pub fn box_shift(c: &Coordinate, k: usize) -> Coordinate {
    match c {
        Coordinate::Open(j) => Coordinate::Open(j + k),
        Coordinate::Bare(j) => Coordinate::Bare(j + k),
        Coordinate::Close(list) => Coordinate::Close(list.iter().map(|p| p + k).collect()),
    }
}

/// Like [`box_shift`], except a close led by exponent 1 keeps that 1 (the
/// enclosing root parenthesis stays put) and only the rest shifts.
pub fn tri_shift(c: &Coordinate, k: usize) -> Coordinate {
    match c {
        Coordinate::Close(list) if list[0] == 1 => {
            let mut out = vec![1];
            out.extend(list[1..].iter().map(|p| p + k));
            Coordinate::Close(out)
        }
        other => box_shift(other, k),
    }
}

/// Name-level grafting: the name of the tree whose root children are the
/// trees named by `parts`, computed without building any tree.
pub fn graft_names(parts: &[Name]) -> Result<Name> {
    if parts.len() < 2 {
        return Err(Error::GraftArity);
    }
    let m = parts.len();
    let mut coords = Vec::new();
    let mut offset = 0usize; // leaves consumed by earlier parts
    for (idx, part) in parts.iter().enumerate() {
        let first = idx == 0;
        let last = idx == m - 1;
        if part.is_leaf() {
            coords.push(if first {
                Coordinate::Open(1)
            } else if last {
                Coordinate::Close(vec![1])
            } else {
                Coordinate::Bare(offset + 1)
            });
        } else {
            let n = part.coords.len();
            for c in &part.coords[..n - 1] {
                coords.push(box_shift(c, offset));
            }
            let Coordinate::Close(list) = &part.coords[n - 1] else {
                return Err(Error::InvalidName(format!(
                    "part {} does not end with a close coordinate",
                    idx + 1
                )));
            };
            let mut shifted: Vec<usize> = list.iter().map(|p| p + offset).collect();
            if last {
                // the new root parenthesis closes together with the part's own
                shifted.insert(0, 1);
            }
            coords.push(Coordinate::Close(shifted));
        }
        offset += part.leaf_count();
    }
    Ok(Name::from_coords(coords))
}

/// Name of v grafted onto the leftmost leaf of w. Leaf names are units.
pub fn over(v: &Name, w: &Name) -> Name {
    if v.is_leaf() {
        return w.clone();
    }
    if w.is_leaf() {
        return v.clone();
    }
    let k = v.degree();
    let mut coords = v.coords.clone();
    coords.extend(w.coords[1..].iter().map(|c| tri_shift(c, k)));
    Name::from_coords(coords)
}

/// Name of w grafted onto the rightmost leaf of v. Leaf names are units.
pub fn under(v: &Name, w: &Name) -> Name {
    if v.is_leaf() {
        return w.clone();
    }
    if w.is_leaf() {
        return v.clone();
    }
    let k = v.degree();
    let vn = v.coords.len();
    let wn = w.coords.len();
    let mut coords = v.coords[..vn - 1].to_vec();
    coords.extend(w.coords[..wn - 1].iter().map(|c| box_shift(c, k)));
    let Coordinate::Close(vlast) = &v.coords[vn - 1] else {
        panic!("a non-leaf name ends with a close coordinate");
    };
    let Coordinate::Close(wlast) = &w.coords[wn - 1] else {
        panic!("a non-leaf name ends with a close coordinate");
    };
    // v's entries are at most deg(v) = k, w's shifted entries at least k + 1
    let mut list = vlast.clone();
    list.extend(wlast.iter().map(|p| p + k));
    coords.push(Coordinate::Close(list));
    Name::from_coords(coords)
}

/// Name of the mirrored tree.
pub fn involute_name(name: &Name) -> Result<Name> {
    Ok(encode(&involution(&decode(name)?)))
}

/// Forget down to the binary-tree shadow: integer part of each coordinate,
/// final coordinate dropped. Distinct trees can collide; over degree n the
/// image has Catalan-many elements.
pub fn project_binary(name: &Name) -> Vec<usize> {
    let cs = &name.coords;
    if cs.is_empty() {
        return Vec::new();
    }
    cs[..cs.len() - 1]
        .iter()
        .map(|c| match c {
            Coordinate::Open(j) | Coordinate::Bare(j) => *j,
            Coordinate::Close(list) => list[0],
        })
        .collect()
}

/// Parse a name literal such as `(0)`, `(1,1+2h^-1,1+h^-1)` or
/// `(1,2,1+h^-1+h^-2)`. Each coordinate is checked on its own (bare parts
/// consecutive, close exponents ascending from the integer part); whether the
/// vector as a whole names a tree is [`decode`]'s job.
pub fn parse_name(s: &str) -> Result<Name> {
    let bytes = s.trim().as_bytes();
    let mut pos = 0usize;
    let expect = |bytes: &[u8], pos: &mut usize, b: u8| -> Result<()> {
        if bytes.get(*pos) == Some(&b) {
            *pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                pos: *pos,
                msg: format!("expected {:?}", b as char),
            })
        }
    };
    expect(bytes, &mut pos, b'(')?;
    if bytes.get(pos) == Some(&b'0') && bytes.get(pos + 1) == Some(&b')') {
        if pos + 2 != bytes.len() {
            return Err(Error::Parse {
                pos: pos + 2,
                msg: "trailing input after name".into(),
            });
        }
        return Ok(Name::leaf());
    }
    let mut coords = Vec::new();
    loop {
        coords.push(parse_coordinate(bytes, &mut pos)?);
        match bytes.get(pos) {
            Some(b',') => pos += 1,
            Some(b')') => {
                pos += 1;
                break;
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected ',' or ')'".into(),
                })
            }
        }
    }
    if pos != bytes.len() {
        return Err(Error::Parse {
            pos,
            msg: "trailing input after name".into(),
        });
    }
    Ok(Name::from_coords(coords))
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::Parse {
            pos: start,
            msg: "expected an integer".into(),
        });
    }
    std::str::from_utf8(&bytes[start..*pos])
        .unwrap()
        .parse()
        .map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
}

fn parse_coordinate(bytes: &[u8], pos: &mut usize) -> Result<Coordinate> {
    let start = *pos;
    let a = parse_int(bytes, pos)?;
    if bytes.get(*pos) != Some(&b'+') {
        // plain integer: an open coordinate
        if a == 0 {
            return Err(Error::Parse {
                pos: start,
                msg: "coordinate value 0 only names the leaf".into(),
            });
        }
        return Ok(Coordinate::Open(a));
    }
    if bytes.get(*pos + 1).is_some_and(u8::is_ascii_digit) {
        // INT "+" INT "h^-1": a bare coordinate
        *pos += 1;
        let bstart = *pos;
        let b = parse_int(bytes, pos)?;
        for c in *b"h^-1" {
            if bytes.get(*pos) == Some(&c) {
                *pos += 1;
            } else {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected 'h^-1'".into(),
                });
            }
        }
        if b != a + 1 {
            return Err(Error::Parse {
                pos: bstart,
                msg: format!("bare coordinate must be {a}+{}h^-1", a + 1),
            });
        }
        return Ok(Coordinate::Bare(b));
    }
    // INT ("+h^-" INT)+: a close coordinate
    let mut exps = Vec::new();
    while bytes.get(*pos) == Some(&b'+') {
        *pos += 1;
        for c in *b"h^-" {
            if bytes.get(*pos) == Some(&c) {
                *pos += 1;
            } else {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected 'h^-'".into(),
                });
            }
        }
        exps.push(parse_int(bytes, pos)?);
    }
    if exps.first() != Some(&a) {
        return Err(Error::Parse {
            pos: start,
            msg: "close integer part must equal its first exponent".into(),
        });
    }
    check_close_list(&exps).map_err(|e| Error::Parse {
        pos: start,
        msg: e.to_string(),
    })?;
    Ok(Coordinate::Close(exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_trees, graft_on_leaf};

    fn name_of(lit: &str) -> Name {
        encode(&parse_tree(lit).unwrap())
    }

    #[test]
    fn degree_two_table() {
        assert_eq!(name_of("((oo)o)").to_string(), "(1,1+h^-1,1+h^-1)");
        assert_eq!(name_of("(ooo)").to_string(), "(1,1+2h^-1,1+h^-1)");
        assert_eq!(name_of("(o(oo))").to_string(), "(1,2,1+h^-1+h^-2)");
    }

    #[test]
    fn degree_three_samples() {
        assert_eq!(name_of("(oooo)").to_string(), "(1,1+2h^-1,2+3h^-1,1+h^-1)");
        assert_eq!(name_of("((oo)(oo))").to_string(), "(1,1+h^-1,3,1+h^-1+h^-3)");
        assert_eq!(
            name_of("(o(o(oo)))").to_string(),
            "(1,2,3,1+h^-1+h^-2+h^-3)"
        );
        assert_eq!(name_of("(o((oo)o))").to_string(), "(1,2,2+h^-2,1+h^-1+h^-2)");
    }

    #[test]
    fn leaf_name_round_trip() {
        assert_eq!(encode(&PlanarTree::Leaf).to_string(), "(0)");
        assert_eq!(decode(&parse_name("(0)").unwrap()).unwrap(), PlanarTree::Leaf);
    }

    #[test]
    fn encode_decode_round_trip_small_degrees() {
        for n in 0..=5 {
            for t in enumerate_trees(n).unwrap().iter() {
                let name = encode(t);
                assert_eq!(name.coords().len(), if n == 0 { 0 } else { n + 1 });
                assert_eq!(&decode(&name).unwrap(), t, "{t}");
            }
        }
    }

    #[test]
    fn literal_parse_round_trip() {
        for n in 0..=4 {
            for t in enumerate_trees(n).unwrap().iter() {
                let name = encode(t);
                assert_eq!(parse_name(&name.to_string()).unwrap(), name);
            }
        }
    }

    #[test]
    fn bare_parts_must_be_consecutive() {
        assert!(matches!(parse_name("(1,1+3h^-1)"), Err(Error::Parse { .. })));
        assert!(parse_name("(1,1+2h^-1,1+h^-1)").is_ok());
    }

    #[test]
    fn position_errors_surface_at_decode() {
        // locally fine coordinates, structurally not a tree
        let name = parse_name("(1,2,2)").unwrap();
        assert!(matches!(decode(&name), Err(Error::InvalidName(_))));
        let dangling = parse_name("(1,2,1+h^-1)").unwrap();
        assert!(matches!(decode(&dangling), Err(Error::InvalidName(_))));
    }

    #[test]
    fn close_lists_checked_locally() {
        assert!(matches!(parse_name("(1,2,2+h^-1)"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_name("(1,2,1+h^-2+h^-1)"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn value_order_at_a_position() {
        let close = Coordinate::Close(vec![1]);
        let bare = Coordinate::Bare(2);
        let open = Coordinate::Open(2);
        assert_eq!(compare_value(&close, &bare), Ordering::Less);
        assert_eq!(compare_value(&bare, &open), Ordering::Less);
        assert_eq!(compare_value(&close, &close), Ordering::Equal);
        let deep = Coordinate::Close(vec![1, 3]);
        assert_eq!(compare_value(&close, &deep), Ordering::Less);
    }

    #[test]
    fn chain_at_degree_two() {
        let ab = name_of("((oo)o)");
        let m = name_of("(ooo)");
        let ba = name_of("(o(oo))");
        assert!(leq_name(&ab, &m).unwrap());
        assert!(leq_name(&m, &ba).unwrap());
        assert!(leq_name(&ab, &ba).unwrap());
        assert!(!leq_name(&ba, &ab).unwrap());
        assert!(matches!(
            leq_name(&ab, &name_of("(oo)")),
            Err(Error::DegreeMismatch(2, 1))
        ));
    }

    #[test]
    fn name_order_is_semantic() {
        let mut names = vec![name_of("(o(oo))"), name_of("(ooo)"), name_of("((oo)o)")];
        names.sort();
        let lits: Vec<String> = names
            .iter()
            .map(|n| decode(n).unwrap().to_string())
            .collect();
        assert_eq!(lits, ["((oo)o)", "(ooo)", "(o(oo))"]);
    }

    #[test]
    fn graft_names_matches_tree_grafting() {
        let a = parse_tree("(oo)").unwrap();
        let cases: Vec<Vec<PlanarTree>> = vec![
            vec![PlanarTree::Leaf, PlanarTree::Leaf],
            vec![a.clone(), PlanarTree::Leaf],
            vec![PlanarTree::Leaf, a.clone()],
            vec![a.clone(), a.clone()],
            vec![PlanarTree::Leaf, a.clone(), PlanarTree::Leaf],
            vec![a.clone(), parse_tree("(o(oo))").unwrap(), a.clone()],
        ];
        for parts in cases {
            let names: Vec<Name> = parts.iter().map(encode).collect();
            let direct = encode(&PlanarTree::Node(parts));
            assert_eq!(graft_names(&names).unwrap(), direct);
        }
        assert!(matches!(
            graft_names(&[Name::leaf()]),
            Err(Error::GraftArity)
        ));
    }

    #[test]
    fn over_and_under_match_leaf_grafting() {
        for p in 0..=3usize {
            for q in 0..=3 - p.min(3) {
                for vt in enumerate_trees(p).unwrap().iter() {
                    for wt in enumerate_trees(q).unwrap().iter() {
                        let v = encode(vt);
                        let w = encode(wt);
                        let over_tree = if vt.is_leaf() || wt.is_leaf() {
                            if vt.is_leaf() { wt.clone() } else { vt.clone() }
                        } else {
                            graft_on_leaf(vt, 1, wt).unwrap()
                        };
                        assert_eq!(over(&v, &w), encode(&over_tree), "{vt} over {wt}");
                        let under_tree = if vt.is_leaf() || wt.is_leaf() {
                            if vt.is_leaf() { wt.clone() } else { vt.clone() }
                        } else {
                            graft_on_leaf(wt, vt.leaf_count(), vt).unwrap()
                        };
                        assert_eq!(under(&v, &w), encode(&under_tree), "{vt} under {wt}");
                    }
                }
            }
        }
    }

    #[test]
    fn over_below_under() {
        let a = name_of("(oo)");
        let m = name_of("(ooo)");
        for v in [&a, &m] {
            for w in [&a, &m] {
                let o = over(v, w);
                let u = under(v, w);
                assert!(leq_name(&o, &u).unwrap());
                assert_ne!(o, u);
            }
        }
    }

    #[test]
    fn involute_name_is_an_involution() {
        for n in 0..=4 {
            for t in enumerate_trees(n).unwrap().iter() {
                let name = encode(t);
                let mirrored = involute_name(&name).unwrap();
                assert_eq!(mirrored, encode(&involution(t)));
                assert_eq!(involute_name(&mirrored).unwrap(), name);
            }
        }
    }

    #[test]
    fn binary_projection_image_is_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42];
        for n in 1..=5 {
            let mut image = std::collections::HashSet::new();
            for t in enumerate_trees(n).unwrap().iter() {
                image.insert(project_binary(&encode(t)));
            }
            assert_eq!(image.len(), catalan[n], "degree {n}");
        }
    }

    #[test]
    fn coordinate_json_shape() {
        let name = name_of("(o(oo))");
        let js = serde_json::to_string(&name).unwrap();
        assert_eq!(
            js,
            r#"[{"kind":"open","pos":1},{"kind":"open","pos":2},{"kind":"close","exps":[1,2]}]"#
        );
        let back: Name = serde_json::from_str(&js).unwrap();
        assert_eq!(back, name);
        assert!(serde_json::from_str::<Name>(r#"[{"kind":"close","exps":[2,1]}]"#).is_err());
    }
}
