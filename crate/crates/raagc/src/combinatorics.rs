//! Simplicial complexes on labeled vertices, clique complexes, full
//! subcomplexes, connected components, and the flag and chordality tests.
//!
//! Complexes are stored by their maximal faces; subset closure is implicit.
//! Vertex labels are 1-based everywhere and survive restriction, so the
//! restriction of a complex on `{1..5}` to `{1,3,5}` is a complex whose
//! vertex set really is `{1,3,5}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

/// Simple graph on labeled vertices (no loops, no multiple edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>, // normalized (min, max)
}

impl Graph {
    /// Graph on vertices `1..=m` with the given edge list.
    pub fn new(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::validation("graph needs at least one vertex"));
        }
        Self::on_vertices((1..=m).collect(), edges)
    }

    /// Graph on an explicit vertex set; used for induced subgraphs.
    pub fn on_vertices(vertices: BTreeSet<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        for &(a, b) in edges {
            if a == b {
                return Err(Error::validation(format!("loop edge at vertex {a}")));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::validation(format!(
                    "edge {{{a},{b}}} uses a vertex outside the vertex set"
                )));
            }
        }
        let edges = edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect::<BTreeSet<_>>();
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn induced(&self, vs: &BTreeSet<usize>) -> Graph {
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| vs.contains(a) && vs.contains(b))
            .cloned()
            .collect();
        Graph {
            vertices: vs.intersection(&self.vertices).cloned().collect(),
            edges,
        }
    }

    pub fn is_clique(&self, vs: &BTreeSet<usize>) -> bool {
        let vs: Vec<_> = vs.iter().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.has_edge(*vs[i], *vs[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of connected components and a vertex-to-component labeling.
    /// Components are numbered `0..count` in order of their smallest vertex.
    pub fn components(&self) -> (usize, BTreeMap<usize, usize>) {
        let mut label = BTreeMap::new();
        let mut count = 0;
        for &start in &self.vertices {
            if label.contains_key(&start) {
                continue;
            }
            let mut stack = vec![start];
            label.insert(start, count);
            while let Some(v) = stack.pop() {
                for n in self.neighbors(v) {
                    if let std::collections::btree_map::Entry::Vacant(e) = label.entry(n) {
                        e.insert(count);
                        stack.push(n);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }
}

/// Simplicial complex stored by its maximal faces.
///
/// Invariants: the vertex set contains every vertex of every maximal face;
/// every singleton is a face; the maximal-face list is an inclusion
/// antichain in deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: BTreeSet<usize>,
    maximal_faces: Vec<BTreeSet<usize>>,
}

impl SimplicialComplex {
    /// Build from any face list; faces are closed downward implicitly and
    /// non-maximal entries are dropped. Singletons of `vertices` are always
    /// faces even when listed in no entry.
    pub fn from_faces(vertices: BTreeSet<usize>, faces: &[BTreeSet<usize>]) -> Result<Self> {
        for f in faces {
            for v in f {
                if !vertices.contains(v) {
                    return Err(Error::validation(format!(
                        "face {f:?} uses vertex {v} outside the vertex set"
                    )));
                }
            }
        }
        let mut maximal: Vec<BTreeSet<usize>> = Vec::new();
        let mut candidates: Vec<BTreeSet<usize>> = faces.to_vec();
        for &v in &vertices {
            candidates.push(BTreeSet::from([v]));
        }
        candidates.sort_by(|a, b| b.len().cmp(&a.len()));
        for c in candidates {
            if c.is_empty() {
                continue;
            }
            if !maximal.iter().any(|m| c.is_subset(m)) {
                maximal.push(c);
            }
        }
        maximal.sort_by(|a, b| {
            let av: Vec<_> = a.iter().collect();
            let bv: Vec<_> = b.iter().collect();
            av.cmp(&bv)
        });
        Ok(SimplicialComplex {
            vertices,
            maximal_faces: maximal,
        })
    }

    /// Complex with no faces beyond the singletons.
    pub fn discrete(m: usize) -> Self {
        let vertices: BTreeSet<usize> = (1..=m).collect();
        SimplicialComplex {
            maximal_faces: vertices.iter().map(|&v| BTreeSet::from([v])).collect(),
            vertices,
        }
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn maximal_faces(&self) -> &[BTreeSet<usize>] {
        &self.maximal_faces
    }

    pub fn contains_face(&self, face: &BTreeSet<usize>) -> bool {
        if face.is_empty() {
            return true;
        }
        self.maximal_faces.iter().any(|m| face.is_subset(m))
    }

    /// All faces of the given size, in lexicographic order. Intended for the
    /// small dimensions the homology model needs.
    pub fn faces_of_size(&self, size: usize) -> Vec<BTreeSet<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mf in &self.maximal_faces {
            if mf.len() < size {
                continue;
            }
            let verts: Vec<usize> = mf.iter().cloned().collect();
            for combo in combinations(&verts, size) {
                out.insert(combo);
            }
        }
        out.into_iter()
            .map(|v| v.into_iter().collect())
            .collect()
    }

    pub fn one_skeleton(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .faces_of_size(2)
            .into_iter()
            .map(|f| {
                let v: Vec<_> = f.into_iter().collect();
                (v[0], v[1])
            })
            .collect();
        Graph::on_vertices(self.vertices.clone(), &edges)
            .expect("1-skeleton edges lie inside the vertex set")
    }
}

/// The clique complex of a graph: faces are exactly the cliques.
pub fn clique_complex(g: &Graph) -> SimplicialComplex {
    let maximal = maximal_cliques(g);
    SimplicialComplex {
        vertices: g.vertices().clone(),
        maximal_faces: maximal,
    }
}

/// The full subcomplex on `j`: all faces contained in `j`, labels preserved.
pub fn restriction(k: &SimplicialComplex, j: &BTreeSet<usize>) -> Result<SimplicialComplex> {
    for v in j {
        if !k.vertices.contains(v) {
            return Err(Error::validation(format!(
                "restriction set contains vertex {v} outside the complex"
            )));
        }
    }
    let faces: Vec<BTreeSet<usize>> = k
        .maximal_faces
        .iter()
        .map(|f| f.intersection(j).cloned().collect())
        .collect();
    SimplicialComplex::from_faces(j.clone(), &faces)
}

/// Connected components of the 1-skeleton. The empty complex has zero
/// components; an isolated vertex counts as one.
pub fn connected_components(k: &SimplicialComplex) -> (usize, BTreeMap<usize, usize>) {
    k.one_skeleton().components()
}

/// Flag test. Returns `Ok(())` when every set of pairwise-adjacent vertices
/// is a face, otherwise the lexicographically first minimal non-face (which
/// then has at least three vertices).
pub fn is_flag(k: &SimplicialComplex) -> std::result::Result<(), BTreeSet<usize>> {
    let g = k.one_skeleton();
    let verts: Vec<usize> = g.vertices().iter().cloned().collect();
    for size in 3..=verts.len() {
        for combo in combinations(&verts, size) {
            let set: BTreeSet<usize> = combo.iter().cloned().collect();
            if g.is_clique(&set) && !k.contains_face(&set) {
                // Minimal by construction: all smaller cliques passed already.
                return Err(set);
            }
        }
    }
    Ok(())
}

/// Chordality via lexicographic BFS and a perfect elimination ordering check.
pub fn is_chordal(g: &Graph) -> bool {
    let order = lex_bfs(g);
    is_perfect_elimination(g, &order)
}

/// Visit order of lexicographic BFS; the reverse is a perfect elimination
/// ordering if and only if the graph is chordal. Ties break toward the
/// smallest label so the order is deterministic.
fn lex_bfs(g: &Graph) -> Vec<usize> {
    let verts: Vec<usize> = g.vertices().iter().cloned().collect();
    let mut labels: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    let mut order = Vec::with_capacity(verts.len());
    for step in 0..verts.len() {
        let v = *labels
            .iter()
            .filter(|(v, _)| !visited.contains(v))
            .max_by(|(va, la), (vb, lb)| la.cmp(lb).then(vb.cmp(va)))
            .expect("unvisited vertex remains")
            .0;
        visited.insert(v);
        order.push(v);
        for n in g.neighbors(v) {
            if !visited.contains(&n) {
                // Later visits get lexicographically larger labels.
                labels.get_mut(&n).unwrap().push(verts.len() - step);
            }
        }
    }
    order
}

fn is_perfect_elimination(g: &Graph, visit_order: &[usize]) -> bool {
    // Elimination order is the reverse visit order; position in the visit
    // order tells who comes later in elimination.
    let pos: BTreeMap<usize, usize> = visit_order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &v in visit_order {
        let later: Vec<usize> = g
            .neighbors(v)
            .into_iter()
            .filter(|n| pos[n] < pos[&v])
            .collect();
        for a in 0..later.len() {
            for b in a + 1..later.len() {
                if !g.has_edge(later[a], later[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Brute-force chordality reference: a graph is chordal exactly when no
/// vertex subset induces a cycle of length four or more. Exponential; meant
/// for cross-checking on small graphs only.
pub fn is_chordal_bruteforce(g: &Graph) -> bool {
    chordless_cycle(g).is_none()
}

/// Finds a vertex set inducing a chordless cycle of length >= 4, if any.
pub fn chordless_cycle(g: &Graph) -> Option<BTreeSet<usize>> {
    let verts: Vec<usize> = g.vertices().iter().cloned().collect();
    for size in 4..=verts.len() {
        for combo in combinations(&verts, size) {
            let set: BTreeSet<usize> = combo.iter().cloned().collect();
            let induced = g.induced(&set);
            if induced.edges().len() == size
                && set.iter().all(|&v| induced.neighbors(v).len() == 2)
                && induced.components().0 == 1
            {
                return Some(set);
            }
        }
    }
    None
}

/// All maximal cliques, each sorted, the list in lexicographic order.
fn maximal_cliques(g: &Graph) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    let all: BTreeSet<usize> = g.vertices().clone();
    bron_kerbosch(g, &mut BTreeSet::new(), all, BTreeSet::new(), &mut out);
    if out.is_empty() {
        // No vertices at all.
        return out;
    }
    out.sort_by(|a, b| {
        let av: Vec<_> = a.iter().collect();
        let bv: Vec<_> = b.iter().collect();
        av.cmp(&bv)
    });
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        if !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let candidates: Vec<usize> = p.iter().cloned().collect();
    for v in candidates {
        let nv = g.neighbors(v);
        r.insert(v);
        bron_kerbosch(
            g,
            r,
            p.intersection(&nv).cloned().collect(),
            x.intersection(&nv).cloned().collect(),
            out,
        );
        r.remove(&v);
        p.remove(&v);
        x.insert(v);
    }
}

/// k-subsets of `items` in lexicographic order, assuming `items` sorted.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // Advance the combination indices from the right.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All subsets of `items` with at least `min_size` elements, ordered by size
/// then lexicographically.
pub(crate) fn subsets_at_least(items: &[usize], min_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in min_size..=items.len() {
        out.extend(combinations(items, size));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn five_cycle() -> Graph {
        Graph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap()
    }

    fn chordal_example() -> Graph {
        Graph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 5), (2, 4)]).unwrap()
    }

    #[test]
    fn clique_complex_of_five_cycle_has_no_triangles() {
        let k = clique_complex(&five_cycle());
        assert_eq!(k.faces_of_size(1).len(), 5);
        assert_eq!(k.faces_of_size(2).len(), 5);
        assert_eq!(k.faces_of_size(3).len(), 0);
        assert!(k.maximal_faces().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn clique_complex_of_complete_graph_is_full_simplex() {
        let g = Graph::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let k = clique_complex(&g);
        assert_eq!(k.maximal_faces(), &[BTreeSet::from([1, 2, 3])]);
        // All 2^3 subsets are faces.
        for sub in subsets_at_least(&[1, 2, 3], 0) {
            assert!(k.contains_face(&sub.into_iter().collect()));
        }
    }

    #[test]
    fn clique_complex_of_edgeless_graph_is_discrete() {
        let g = Graph::new(3, &[]).unwrap();
        let k = clique_complex(&g);
        assert_eq!(k, SimplicialComplex::discrete(3));
    }

    #[test]
    fn restriction_of_five_cycle_to_135() {
        let k = clique_complex(&five_cycle());
        let r = restriction(&k, &BTreeSet::from([1, 3, 5])).unwrap();
        assert_eq!(r.vertices(), &BTreeSet::from([1, 3, 5]));
        assert_eq!(r.faces_of_size(2), vec![BTreeSet::from([1, 5])]);
        let (count, labels) = connected_components(&r);
        assert_eq!(count, 2);
        assert_eq!(labels[&1], labels[&5]);
        assert_ne!(labels[&1], labels[&3]);
    }

    #[test]
    fn restriction_edge_cases() {
        let k = clique_complex(&five_cycle());
        let empty = restriction(&k, &BTreeSet::new()).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(connected_components(&empty).0, 0);
        let full = restriction(&k, &(1..=5).collect()).unwrap();
        assert_eq!(full, k);
        assert!(restriction(&k, &BTreeSet::from([6])).is_err());
    }

    #[test]
    fn restriction_commutes_with_clique_complex() {
        let g = chordal_example();
        let j: BTreeSet<usize> = BTreeSet::from([1, 2, 4, 5]);
        let lhs = restriction(&clique_complex(&g), &j).unwrap();
        let rhs = clique_complex(&g.induced(&j));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn component_counts() {
        assert_eq!(connected_components(&SimplicialComplex::discrete(4)).0, 4);
        let g = Graph::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(connected_components(&clique_complex(&g)).0, 1);
    }

    #[test]
    fn flag_test_finds_hollow_triangle() {
        let vertices: BTreeSet<usize> = (1..=3).collect();
        let faces = vec![
            BTreeSet::from([1, 2]),
            BTreeSet::from([2, 3]),
            BTreeSet::from([1, 3]),
        ];
        let k = SimplicialComplex::from_faces(vertices, &faces).unwrap();
        assert_eq!(is_flag(&k), Err(BTreeSet::from([1, 2, 3])));
        assert!(is_flag(&SimplicialComplex::discrete(3)).is_ok());
        assert!(is_flag(&clique_complex(&five_cycle())).is_ok());
    }

    #[test]
    fn chordality_of_the_running_examples() {
        assert!(!is_chordal(&five_cycle()));
        assert!(is_chordal(&chordal_example()));
        let path = Graph::new(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(is_chordal(&path));
        let complete = Graph::new(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(is_chordal(&complete));
    }

    #[test]
    fn chordality_matches_bruteforce_on_all_four_vertex_graphs() {
        let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        for mask in 0u32..64 {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(4, &edges).unwrap();
            assert_eq!(is_chordal(&g), is_chordal_bruteforce(&g), "mask {mask}");
        }
    }

    #[test]
    fn chordless_cycle_witness_is_a_cycle() {
        let w = chordless_cycle(&five_cycle()).unwrap();
        assert_eq!(w.len(), 5);
        assert!(is_chordal_bruteforce(&chordal_example()));
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let c = combinations(&[1, 2, 3, 4], 2);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![1, 2]);
        assert_eq!(c[5], vec![3, 4]);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }
}
