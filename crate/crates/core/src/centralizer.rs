//! Centralizers of elements of right-angled Artin groups.
//!
//! For `g` with cyclically reduced conjugate `core = h^-1 g h` and block
//! decomposition `core = b_1^t_1 ... b_l^t_l`, the centralizer is
//!
//! ```text
//! C(g) = h ( <b_1> x ... x <b_l> x <link(b_1, ..., b_l)> ) h^-1
//! ```
//!
//! where the `b_i` are the block roots.

use crate::conjugacy::{block_decomposition, cyclically_reduce, noncommuting_components, Block};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, VertexSet};
use crate::word::NormalWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerDesc {
    /// `h` with `h^-1 g h = core` cyclically reduced.
    pub conjugator: NormalWord,
    pub core: NormalWord,
    /// Block roots of `core`, with their exponents in `core`.
    pub blocks: Vec<Block>,
    /// Link of the union of the block supports.
    pub link_vertices: VertexSet,
}

impl CentralizerDesc {
    /// The roots `b_i`; each generates one cyclic direct factor.
    pub fn cyclic_parts(&self) -> Vec<NormalWord> {
        self.blocks.iter().map(|b| b.root.clone()).collect()
    }

    /// Generators of `C(g)`, conjugated back by the conjugator.
    pub fn generators(&self, p: &Presentation) -> Vec<NormalWord> {
        let h_inv = p.inv(&self.conjugator);
        self.cyclic_parts()
            .into_iter()
            .chain(self.link_vertices.iter().map(|v| p.generator(v)))
            .map(|x| p.mul_all([&self.conjugator, &x, &h_inv]))
            .collect()
    }

    /// `h (∏ b_i^{m_i}) l h^-1`.
    pub fn element(&self, p: &Presentation, powers: &[i64], link_part: &NormalWord) -> NormalWord {
        let mut parts: Vec<NormalWord> = self
            .blocks
            .iter()
            .zip(powers)
            .map(|(b, &m)| p.pow(&b.root, m))
            .collect();
        parts.push(link_part.clone());
        let inner = p.mul_all(&parts);
        p.mul_all([&self.conjugator, &inner, &p.inv(&self.conjugator)])
    }

    /// Whether `x` lies in the described subgroup.
    pub fn contains(&self, p: &Presentation, x: &NormalWord) -> bool {
        let y = p.conjugate(x, &self.conjugator);
        let block_support = p.support(&self.core);
        if !p
            .support(&y)
            .is_subset(block_support.union(self.link_vertices))
        {
            return false;
        }
        // The special subgroups on each block support and on the link are
        // pairwise commuting direct factors; test each projection.
        for (comp, block) in noncommuting_components(p, block_support)
            .into_iter()
            .zip(&self.blocks)
        {
            let part = p.project(&y, comp);
            let root_len = p.geodesic_length(&block.root);
            let part_len = p.geodesic_length(&part);
            if !part_len.is_multiple_of(root_len) {
                return false;
            }
            let m = (part_len / root_len) as i64;
            if p.pow(&block.root, m) != part && p.pow(&block.root, -m) != part {
                return false;
            }
        }
        true
    }
}

/// Centralizer of a nontrivial element whose support has infinite-order vertices only.
pub fn centralizer_generators(p: &Presentation, g: &NormalWord) -> Result<CentralizerDesc> {
    p.check(g)?;
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    for v in p.support(g).iter() {
        if !p.order(v).is_infinite() {
            return Err(Error::FiniteOrderVertexInSupport(p.name(v).to_string()));
        }
    }
    let (core, conjugator) = cyclically_reduce(p, g);
    let blocks = block_decomposition(p, &core)?.blocks;
    let support = p.support(&core);
    let link_vertices = support
        .iter()
        .fold(p.all(), |acc, v| acc.intersection(p.link_of(v)));
    Ok(CentralizerDesc {
        conjugator,
        core,
        blocks,
        link_vertices,
    })
}
