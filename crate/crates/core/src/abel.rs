//! The abelianisation map and exponent-sum homomorphisms.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::presentation::{Order, Presentation, VertexSet};
use crate::word::NormalWord;

/// Image of an element in `G^ab`, one coordinate per vertex. Finite-order
/// coordinates are kept as residues in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelVector {
    orders: Vec<Order>,
    coords: Vec<i64>,
}

impl AbelVector {
    pub fn zero(p: &Presentation) -> Self {
        AbelVector {
            orders: (0..p.len()).map(|v| p.order(v)).collect(),
            coords: vec![0; p.len()],
        }
    }

    /// Builds a vector from raw integer coordinates, reducing torsion coordinates.
    pub fn from_coords(p: &Presentation, coords: &[i64]) -> Self {
        let mut out = AbelVector::zero(p);
        for (v, &c) in coords.iter().enumerate().take(p.len()) {
            out.coords[v] = out.normalise(v, c);
        }
        out
    }

    fn normalise(&self, v: usize, c: i64) -> i64 {
        match self.orders[v] {
            Order::Infinite => c,
            Order::Finite(k) => c.rem_euclid(k as i64),
        }
    }

    pub fn coord(&self, v: usize) -> i64 {
        self.coords[v]
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Coordinates at infinite-order vertices.
    pub fn free_part(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.iter_where(|o| o.is_infinite())
    }

    /// Residues at finite-order vertices.
    pub fn torsion_part(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.iter_where(|o| !o.is_infinite())
    }

    fn iter_where(
        &self,
        keep: impl Fn(Order) -> bool + 'static,
    ) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(move |(v, _)| keep(self.orders[*v]))
            .map(|(v, &c)| (v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `n` times this vector.
    pub fn scale(&self, n: i64) -> Self {
        let mut out = self.clone();
        for v in 0..out.coords.len() {
            out.coords[v] = out.normalise(v, self.coords[v] * n);
        }
        out
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        DisplayAbel { vec: self, p }
    }
}

struct DisplayAbel<'a> {
    vec: &'a AbelVector,
    p: &'a Presentation,
}

impl fmt::Display for DisplayAbel<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (v, c) in self.vec.coords.iter().enumerate() {
            if v > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", self.p.name(v), c)?;
        }
        f.write_str(")")
    }
}

impl Add for &AbelVector {
    type Output = AbelVector;

    fn add(self, rhs: &AbelVector) -> AbelVector {
        let mut out = self.clone();
        for v in 0..out.coords.len() {
            out.coords[v] = out.normalise(v, self.coords[v] + rhs.coords[v]);
        }
        out
    }
}

impl Neg for &AbelVector {
    type Output = AbelVector;

    fn neg(self) -> AbelVector {
        self.scale(-1)
    }
}

impl Sub for &AbelVector {
    type Output = AbelVector;

    fn sub(self, rhs: &AbelVector) -> AbelVector {
        self + &(-rhs)
    }
}

pub fn abelianize(p: &Presentation, a: &NormalWord) -> AbelVector {
    let mut raw = vec![0i64; p.len()];
    for s in a.syllables() {
        raw[s.vertex] += s.exp;
    }
    AbelVector::from_coords(p, &raw)
}

/// Infinite-order vertices are exactly the abelian-primitive ones.
pub fn check_primitive(p: &Presentation, v: usize) -> Result<()> {
    if p.order(v).is_infinite() {
        Ok(())
    } else {
        Err(Error::NotAbelianPrimitive(p.name(v).to_string()))
    }
}

/// `|a|_v`.
pub fn exponent_sum(p: &Presentation, a: &NormalWord, v: usize) -> Result<i64> {
    check_primitive(p, v)?;
    Ok(a.syllables()
        .iter()
        .filter(|s| s.vertex == v)
        .map(|s| s.exp)
        .sum())
}

/// Membership in `K_S`: zero exponent sum at every vertex of `S`.
#[allow(non_snake_case)]
pub fn in_K(p: &Presentation, a: &NormalWord, s: VertexSet) -> Result<bool> {
    for v in s.iter() {
        if exponent_sum(p, a, v)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The exponent-sum relations on `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `|g|_s = |h|_s`
    Same {
        s: usize,
        g: NormalWord,
        h: NormalWord,
    },
    /// `|g|_s = |h|_t`
    Cross {
        s: usize,
        t: usize,
        g: NormalWord,
        h: NormalWord,
    },
    /// `|g|_u = |g|_v` for all `u, v` in the set.
    Diagonal { set: VertexSet, g: NormalWord },
}

pub fn relation_holds(p: &Presentation, rel: &Relation) -> Result<bool> {
    match rel {
        Relation::Same { s, g, h } => Ok(exponent_sum(p, g, *s)? == exponent_sum(p, h, *s)?),
        Relation::Cross { s, t, g, h } => Ok(exponent_sum(p, g, *s)? == exponent_sum(p, h, *t)?),
        Relation::Diagonal { set, g } => {
            let sums = set
                .iter()
                .map(|v| exponent_sum(p, g, v))
                .collect::<Result<Vec<_>>>()?;
            Ok(sums.windows(2).all(|w| w[0] == w[1]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_images() {
        let f = Presentation::free(&["a", "b"]).unwrap();
        assert!(abelianize(&f, &f.parse_word("a b a^-1 b^-1").unwrap()).is_zero());
        assert_eq!(
            abelianize(&f, &f.parse_word("a b a b").unwrap()).coords(),
            [2, 2]
        );
        let r = Presentation::racg(&["a", "b"], &[]).unwrap();
        assert_eq!(
            abelianize(&r, &r.parse_word("a b a").unwrap()).coords(),
            [0, 1]
        );
    }

    #[test]
    fn exponent_sums() {
        let f = Presentation::free(&["x", "y"]).unwrap();
        let w = f.parse_word("x y x^-1 y^2").unwrap();
        assert_eq!(exponent_sum(&f, &w, 0), Ok(0));
        let s = Presentation::free(&["s"]).unwrap();
        assert_eq!(exponent_sum(&s, &s.parse_word("s^3").unwrap(), 0), Ok(3));
        let r = Presentation::racg(&["a"], &[]).unwrap();
        assert!(matches!(
            exponent_sum(&r, &NormalWord::identity(), 0),
            Err(Error::NotAbelianPrimitive(_))
        ));
    }

    #[test]
    fn k_membership() {
        let f = Presentation::free(&["a", "b"]).unwrap();
        let all = f.all();
        let a = f.vertex_set(&["a"]).unwrap();
        assert_eq!(
            in_K(&f, &f.parse_word("a b a^-1 b^-1").unwrap(), all),
            Ok(true)
        );
        assert_eq!(in_K(&f, &f.parse_word("a").unwrap(), a), Ok(false));
        assert_eq!(in_K(&f, &f.parse_word("b").unwrap(), a), Ok(true));
    }

    #[test]
    fn relations() {
        let f = Presentation::free(&["a", "b"]).unwrap();
        let w = |t: &str| f.parse_word(t).unwrap();
        assert_eq!(
            relation_holds(
                &f,
                &Relation::Same {
                    s: 0,
                    g: w("a b"),
                    h: w("a b^2")
                }
            ),
            Ok(true)
        );
        assert_eq!(
            relation_holds(
                &f,
                &Relation::Cross {
                    s: 0,
                    t: 1,
                    g: w("a"),
                    h: w("b")
                }
            ),
            Ok(true)
        );
        let q = Presentation::raag(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")],
        )
        .unwrap();
        let ab = q.vertex_set(&["a", "b"]).unwrap();
        let g = q.parse_word("a b c").unwrap();
        assert_eq!(
            relation_holds(&q, &Relation::Diagonal { set: ab, g }),
            Ok(true)
        );
        let g = q.parse_word("a^2 b").unwrap();
        assert_eq!(
            relation_holds(&q, &Relation::Diagonal { set: ab, g }),
            Ok(false)
        );
    }
}
