//! Stars, links, weak modules and join decomposition of the defining graph.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::presentation::{Presentation, VertexSet};

/// `(star(S), link(S))` where `link(S)` is the intersection of the links of the members.
pub fn star_link(p: &Presentation, s: VertexSet) -> Result<(VertexSet, VertexSet)> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if !s.is_subset(p.all()) {
        let stray = s.difference(p.all()).first().unwrap_or_default();
        return Err(Error::UnknownVertex(format!("#{stray}")));
    }
    let link = s
        .iter()
        .fold(p.all(), |acc, v| acc.intersection(p.link_of(v)));
    Ok((s.union(link), link))
}

/// `v ≤ u` iff `star(v) ⊆ star(u)`.
pub fn vertex_leq(p: &Presentation, v: usize, u: usize) -> bool {
    p.star_of(v).is_subset(p.star_of(u))
}

pub fn minimal_vertices(p: &Presentation) -> VertexSet {
    (0..p.len())
        .filter(|&v| {
            let sv = p.star_of(v);
            (0..p.len()).all(|u| {
                let su = p.star_of(u);
                u == v || !(su.is_subset(sv) && su != sv)
            })
        })
        .collect()
}

/// Maximal sets of minimal vertices with a common star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakModule {
    pub vertices: VertexSet,
}

impl WeakModule {
    /// The product of the module's vertices in canonical order.
    pub fn element(&self, p: &Presentation) -> crate::word::NormalWord {
        p.product_of(self.vertices)
    }
}

pub fn weak_modules(p: &Presentation) -> Vec<WeakModule> {
    let mut classes: BTreeMap<u64, VertexSet> = BTreeMap::new();
    for v in minimal_vertices(p).iter() {
        classes.entry(p.star_of(v).bits()).or_default().insert(v);
    }
    let mut out: Vec<WeakModule> = classes
        .into_values()
        .map(|vertices| WeakModule { vertices })
        .collect();
    out.sort_by_key(|m| m.vertices.first());
    out
}

/// First pair of distinct weak modules with no edge between them.
pub fn nonadjacent_weak_module_pair(p: &Presentation) -> Option<(WeakModule, WeakModule)> {
    let modules = weak_modules(p);
    for (i, s) in modules.iter().enumerate() {
        for t in &modules[i + 1..] {
            let touching = s
                .vertices
                .iter()
                .any(|v| !p.link_of(v).intersection(t.vertices).is_empty());
            if !touching {
                return Some((*s, *t));
            }
        }
    }
    None
}

/// Connected components of the complement graph, ordered by least vertex.
pub fn direct_product_decomposition(p: &Presentation) -> Vec<VertexSet> {
    let mut remaining = p.all();
    let mut out = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let non_neighbours = remaining.difference(comp).difference(p.link_of(v));
            for u in non_neighbours.iter() {
                comp.insert(u);
                stack.push(u);
            }
        }
        remaining = remaining.difference(comp);
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma1() -> Presentation {
        Presentation::raag(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
    }

    fn gamma2() -> Presentation {
        Presentation::raag(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")],
        )
        .unwrap()
    }

    fn shown(p: &Presentation, mods: &[WeakModule]) -> Vec<String> {
        mods.iter()
            .map(|m| m.vertices.display(p).to_string())
            .collect()
    }

    #[test]
    fn stars_and_links() {
        let p = gamma1();
        let (star, _) = star_link(&p, p.vertex_set(&["b"]).unwrap()).unwrap();
        assert_eq!(star, p.vertex_set(&["a", "b", "c"]).unwrap());
        let q = gamma2();
        let (star, link) = star_link(&q, q.vertex_set(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(link, q.vertex_set(&["c"]).unwrap());
        assert_eq!(star, q.vertex_set(&["a", "b", "c"]).unwrap());
        assert_eq!(star_link(&p, VertexSet::EMPTY), Err(Error::EmptySet));
    }

    #[test]
    fn preorder_examples() {
        let p = gamma1();
        let (a, b) = (p.vertex("a").unwrap(), p.vertex("b").unwrap());
        assert!(vertex_leq(&p, a, b));
        assert!(!vertex_leq(&p, b, a));
        assert!(vertex_leq(&p, a, a));
        assert_eq!(minimal_vertices(&p), p.vertex_set(&["a", "d"]).unwrap());
    }

    #[test]
    fn modules_of_example_graphs() {
        let p = gamma1();
        assert_eq!(shown(&p, &weak_modules(&p)), ["{a}", "{d}"]);
        let q = gamma2();
        assert_eq!(shown(&q, &weak_modules(&q)), ["{a,b}", "{d}"]);
        let k3 =
            Presentation::raag(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(shown(&k3, &weak_modules(&k3)), ["{a,b,c}"]);
        assert!(nonadjacent_weak_module_pair(&k3).is_none());

        let (s, t) = nonadjacent_weak_module_pair(&p).unwrap();
        assert_eq!(s.vertices.display(&p).to_string(), "{a}");
        assert_eq!(t.vertices.display(&p).to_string(), "{d}");
        let z2 = Presentation::raag(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(nonadjacent_weak_module_pair(&z2).is_none());
    }

    #[test]
    fn join_components() {
        let z2 = Presentation::raag(&["a", "b"], &[("a", "b")]).unwrap();
        let comps: Vec<String> = direct_product_decomposition(&z2)
            .iter()
            .map(|c| c.display(&z2).to_string())
            .collect();
        assert_eq!(comps, ["{a}", "{b}"]);
        assert_eq!(direct_product_decomposition(&gamma1()).len(), 1);
        let f2z = Presentation::raag(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        let comps: Vec<String> = direct_product_decomposition(&f2z)
            .iter()
            .map(|c| c.display(&f2z).to_string())
            .collect();
        assert_eq!(comps, ["{a,b}", "{c}"]);
    }
}
