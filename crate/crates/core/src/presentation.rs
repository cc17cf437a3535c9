//! Defining graphs with cyclic vertex groups.
//!
//! A [`Presentation`] is a finite simplicial graph whose vertices carry an
//! order (infinite, or a finite `k >= 2`). Adjacent vertex groups commute.
//! With every order infinite this is a right-angled Artin group; with every
//! order 2 it is a right-angled Coxeter group; with no edges and infinite
//! orders it is a free group.
//!
//! The declared vertex order is the canonical total order used for every
//! tie-break in the crate.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of vertices a presentation may have (vertex sets are bitmasks).
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Infinite,
    Finite(u32),
}

impl Order {
    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    /// Reduces an exponent into the residue range `(-k/2, k/2]` for finite `k`.
    pub fn reduce(self, exp: i64) -> i64 {
        match self {
            Order::Infinite => exp,
            Order::Finite(k) => {
                let k = i64::from(k);
                let r = exp.rem_euclid(k);
                if 2 * r > k {
                    r - k
                } else {
                    r
                }
            }
        }
    }

    /// Geodesic cost of the syllable `v^exp` in the vertex group.
    pub fn cost(self, exp: i64) -> u64 {
        match self {
            Order::Infinite => exp.unsigned_abs(),
            Order::Finite(k) => {
                let r = exp.rem_euclid(i64::from(k)) as u64;
                r.min(u64::from(k) - r)
            }
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Infinite => f.write_str("inf"),
            Order::Finite(k) => write!(f, "{k}"),
        }
    }
}

/// A set of vertices of one presentation, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in canonical (ascending) order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn display(self, p: &Presentation) -> DisplaySet<'_> {
        DisplaySet { set: self, p }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct DisplaySet<'a> {
    set: VertexSet,
    p: &'a Presentation,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.set.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.p.name(v))?;
        }
        f.write_str("}")
    }
}

/// A graph product of cyclic groups.
#[derive(Clone, Debug)]
pub struct Presentation {
    names: Vec<String>,
    orders: Vec<Order>,
    adjacency: Vec<VertexSet>,
    index: HashMap<String, usize>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.orders == other.orders
            && self.adjacency == other.adjacency
    }
}

impl Eq for Presentation {}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new<S: AsRef<str>>(vertices: &[(S, Order)], edges: &[(S, S)]) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::InvalidPresentation(format!(
                "at most {MAX_VERTICES} vertices are supported"
            )));
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut orders = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for (name, order) in vertices {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::InvalidPresentation(format!(
                    "invalid vertex name `{name}`"
                )));
            }
            if let Order::Finite(k) = order {
                if *k < 2 {
                    return Err(Error::InvalidPresentation(format!(
                        "vertex `{name}` has order {k}; finite orders must be at least 2"
                    )));
                }
            }
            if index.insert(name.to_string(), names.len()).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate vertex `{name}`"
                )));
            }
            names.push(name.to_string());
            orders.push(*order);
        }
        let mut adjacency = vec![VertexSet::EMPTY; names.len()];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index
                .get(u)
                .ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
            if iu == iv {
                return Err(Error::InvalidPresentation(format!("loop at vertex `{u}`")));
            }
            if adjacency[iu].contains(iv) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate edge {u}-{v}"
                )));
            }
            adjacency[iu].insert(iv);
            adjacency[iv].insert(iu);
        }
        Ok(Presentation {
            names,
            orders,
            adjacency,
            index,
        })
    }

    /// Free group on the given generators.
    pub fn free(names: &[&str]) -> Result<Self> {
        let vs: Vec<_> = names.iter().map(|n| (*n, Order::Infinite)).collect();
        Self::new(&vs, &[])
    }

    /// Right-angled Artin group on a graph.
    pub fn raag(names: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let vs: Vec<_> = names.iter().map(|n| (*n, Order::Infinite)).collect();
        Self::new(&vs, edges)
    }

    /// Right-angled Coxeter group on a graph.
    pub fn racg(names: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let vs: Vec<_> = names.iter().map(|n| (*n, Order::Finite(2))).collect();
        Self::new(&vs, edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet((0..self.len()).fold(0u64, |acc, v| acc | 1 << v))
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self, v: usize) -> Order {
        self.orders[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn try_vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    /// Neighbourhood of a vertex.
    pub fn link_of(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn star_of(&self, v: usize) -> VertexSet {
        let mut s = self.adjacency[v];
        s.insert(v);
        s
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Whether distinct vertex groups commute (same vertex does not count).
    pub fn commute(&self, u: usize, v: usize) -> bool {
        u != v && self.adjacency[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in self.adjacency[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_raag(&self) -> bool {
        self.orders.iter().all(|o| o.is_infinite())
    }

    pub fn all_finite(&self) -> bool {
        !self.orders.iter().any(|o| o.is_infinite())
    }

    /// Free group of rank `len()`: no edges, all orders infinite.
    pub fn is_free(&self) -> bool {
        self.is_raag() && self.adjacency.iter().all(|a| a.is_empty())
    }

    /// Every pair of distinct vertices adjacent.
    pub fn is_complete(&self) -> bool {
        (0..self.len()).all(|v| self.star_of(v) == self.all())
    }

    /// Number of infinite-order vertices (free rank of the abelianisation).
    pub fn betti_number(&self) -> usize {
        self.orders.iter().filter(|o| o.is_infinite()).count()
    }

    /// Induced sub-presentation on `set`, keeping the canonical order.
    pub fn induced(&self, set: VertexSet) -> Presentation {
        let vs: Vec<_> = set
            .iter()
            .map(|v| (self.names[v].as_str(), self.orders[v]))
            .collect();
        let es: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|(u, v)| set.contains(*u) && set.contains(*v))
            .map(|(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
            .collect();
        Presentation::new(&vs, &es).expect("induced subgraph of a valid graph is valid")
    }

    /// Parses the graph file format: `vertex <name> <order|inf>` and `edge <u> <v>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Vec<(String, Order)> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            let mut toks = line.split_whitespace();
            let Some(kw) = toks.next() else { continue };
            let rest: Vec<&str> = toks.collect();
            let col = raw.find(kw).unwrap_or(0) + 1;
            match (kw, rest.as_slice()) {
                ("vertex", [name, order]) => {
                    vertices.push((name.to_string(), parse_order(order, lineno + 1, col)?))
                }
                ("vertex", [name]) => vertices.push((name.to_string(), Order::Infinite)),
                ("edge", [u, v]) => edges.push((u.to_string(), v.to_string())),
                _ => {
                    return Err(Error::parse(
                        lineno + 1,
                        col,
                        format!("unrecognised graph line `{}`", line.trim()),
                    ))
                }
            }
        }
        Presentation::new(&vertices, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, order) in self.names.iter().zip(&self.orders) {
            out.push_str(&format!("vertex {name} {order}\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("edge {} {}\n", self.names[u], self.names[v]));
        }
        out
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_order(tok: &str, line: usize, col: usize) -> Result<Order> {
    if tok == "inf" || tok == "∞" {
        return Ok(Order::Infinite);
    }
    match tok.parse::<u32>() {
        Ok(k) => Ok(Order::Finite(k)),
        Err(_) => Err(Error::parse(line, col, format!("bad vertex order `{tok}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_centred() {
        assert_eq!(Order::Finite(2).reduce(1), 1);
        assert_eq!(Order::Finite(2).reduce(-1), 1);
        assert_eq!(Order::Finite(2).reduce(2), 0);
        assert_eq!(Order::Finite(3).reduce(2), -1);
        assert_eq!(Order::Finite(4).reduce(-2), 2);
        assert_eq!(Order::Finite(4).reduce(3), -1);
        assert_eq!(Order::Infinite.reduce(-7), -7);
        for k in 2..9u32 {
            for e in -20..20 {
                let o = Order::Finite(k);
                let r = o.reduce(e);
                assert_eq!(o.cost(e), r.unsigned_abs());
                assert_eq!((e - r).rem_euclid(i64::from(k)), 0);
            }
        }
    }

    #[test]
    fn graph_file_round_trip() {
        let text = "vertex a inf\nvertex b 2\nvertex c inf\nedge a b # comment\nedge b c\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.order(1), Order::Finite(2));
        assert!(p.commute(0, 1) && !p.commute(0, 2) && !p.commute(0, 0));
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(
            Presentation::raag(&["a", "b"], &[("a", "a")]),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(matches!(
            Presentation::raag(&["a", "a"], &[]),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(matches!(
            Presentation::raag(&["a"], &[("a", "z")]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            Presentation::parse("vertex a 1\n"),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(matches!(
            Presentation::parse("vertx a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
