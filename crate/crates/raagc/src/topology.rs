//! Covering-space models over the cube `{0..s}^m`: the grid graph, its
//! canonical spanning tree with loop words, and the cubical complex whose
//! first homology is the minimality oracle for the generator count.
//!
//! Conventions. Lattice coordinates are 0-based (`y_1..y_m` stored as
//! `anchor[0..m]`), directions are 1-based to line up with the free-group
//! generators: `g_p` steps `+e_p`. Every cell enumeration below is in
//! mixed-radix order with coordinate 1 the fastest digit, so matrix layouts
//! are reproducible byte for byte.

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::SimplicialComplex;
use crate::freegroup::{self, Word};
use crate::matrix::SparseIntMatrix;
use crate::{Error, Result};

/// Axis-parallel unit segment: `anchor` is the lower endpoint, the other
/// endpoint is `anchor + e_direction`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridEdge {
    /// 1-based axis index.
    pub direction: usize,
    pub anchor: Vec<u32>,
}

/// The grid `E_m^(s)`: all axis-parallel integer segments inside `{0..s}^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    m: usize,
    s: u32,
    vertex_count: usize,
    edge_count: usize,
}

pub fn build_grid(m: usize, s: u32) -> Result<GridGraph> {
    if m < 2 {
        return Err(Error::validation("grid needs m >= 2"));
    }
    if s == 0 {
        return Err(Error::validation("grid needs s >= 1"));
    }
    let vertex_count = pow_checked(s as usize + 1, m)?;
    let per_direction = mul_checked(s as usize, pow_checked(s as usize + 1, m - 1)?)?;
    let edge_count = mul_checked(m, per_direction)?;
    Ok(GridGraph {
        m,
        s,
        vertex_count,
        edge_count,
    })
}

impl GridGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `(s+1)^m`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `m * s * (s+1)^(m-1)`.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All edges in id order: direction-major, then anchor rank.
    pub fn edges(&self) -> Vec<GridEdge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for q in 1..=self.m {
            for anchor in all_tuples(&edge_radices(self.m, self.s, q - 1)) {
                out.push(GridEdge {
                    direction: q,
                    anchor,
                });
            }
        }
        out
    }

    pub fn validate_edge(&self, e: &GridEdge) -> Result<()> {
        validate_edge(self.m, self.s, e)
    }

    /// `E - V + cc`, with the component count taken honestly from the edge
    /// set rather than assumed to be 1.
    pub fn cycle_rank(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in self.edges() {
            let a = vertex_index(&e.anchor, self.s);
            let mut upper = e.anchor.clone();
            upper[e.direction - 1] += 1;
            uf.union(a, vertex_index(&upper, self.s));
        }
        self.edge_count + uf.component_count() - self.vertex_count
    }
}

/// `E - V + cc` for an arbitrary graph.
pub fn cycle_rank_graph(g: &crate::combinatorics::Graph) -> usize {
    let (cc, _) = g.components();
    g.edge_count() + cc - g.vertex_count()
}

/// The canonical maximal tree of the grid, built line by line: every
/// direction-`m` segment is a tree edge, and a direction-`p` segment
/// (`p < m`) is a tree edge exactly when `y_1 = ... = y_(p-1) = 0` and
/// `y_m = 0` at its anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    m: usize,
    s: u32,
}

pub fn canonical_spanning_tree(m: usize, s: u32) -> Result<SpanningTree> {
    build_grid(m, s)?;
    Ok(SpanningTree { m, s })
}

impl SpanningTree {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn is_tree_edge(&self, e: &GridEdge) -> Result<bool> {
        validate_edge(self.m, self.s, e)?;
        if e.direction == self.m {
            return Ok(true);
        }
        Ok(e.anchor[self.m - 1] == 0 && e.anchor[..e.direction - 1].iter().all(|&c| c == 0))
    }

    pub fn tree_edges(&self) -> Result<Vec<GridEdge>> {
        self.partition().map(|(t, _)| t)
    }

    pub fn nontree_edges(&self) -> Result<Vec<GridEdge>> {
        self.partition().map(|(_, n)| n)
    }

    fn partition(&self) -> Result<(Vec<GridEdge>, Vec<GridEdge>)> {
        let grid = build_grid(self.m, self.s)?;
        let mut tree = Vec::new();
        let mut nontree = Vec::new();
        for e in grid.edges() {
            if self.is_tree_edge(&e)? {
                tree.push(e);
            } else {
                nontree.push(e);
            }
        }
        Ok((tree, nontree))
    }

    /// The tree geodesic from the origin to `v`, as a word: directions
    /// `m-1, m-2, ..., 2`, then `1`, then `m`. Walking the directions in
    /// this order keeps every prefix on tree edges: when direction `q < m`
    /// is walked, coordinates `1..q-1` have not moved yet and coordinate
    /// `m` moves last.
    pub fn path_word(&self, v: &[u32]) -> Result<Word> {
        if v.len() != self.m {
            return Err(Error::validation(format!(
                "vertex has {} coordinates, expected {}",
                v.len(),
                self.m
            )));
        }
        if v.iter().any(|&c| c > self.s) {
            return Err(Error::validation("vertex outside the cube"));
        }
        let mut order: Vec<usize> = (2..self.m).rev().collect();
        order.push(1);
        order.push(self.m);
        let syllables: Vec<(usize, i64)> =
            order.into_iter().map(|q| (q, v[q - 1] as i64)).collect();
        freegroup::word_from_i64(self.m, &syllables)
    }
}

/// The origin-based loop crossing exactly one non-tree edge: tree geodesic
/// to the anchor, the edge itself, tree geodesic back from the far
/// endpoint.
pub fn nontree_loop_word(m: usize, s: u32, edge: &GridEdge) -> Result<Word> {
    let tree = canonical_spanning_tree(m, s)?;
    if tree.is_tree_edge(edge)? {
        return Err(Error::validation(format!(
            "edge (direction {}, anchor {:?}) is a tree edge and bounds no loop",
            edge.direction, edge.anchor
        )));
    }
    let mut upper = edge.anchor.clone();
    upper[edge.direction - 1] += 1;
    let here = tree.path_word(&edge.anchor)?;
    let step = Word::generator(m, edge.direction, 1)?;
    let back = freegroup::invert(&tree.path_word(&upper)?);
    freegroup::product(m, &[here, step, back])
}

/// Cubical model of the commutator cover, truncated to `{0..s}^m` and to
/// dimension 2: one d-cube for every d-face `I` of the complex and every
/// anchor with `a_i in 0..s-1` for `i in I`, `a_j in 0..s` otherwise.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    m: usize,
    s: u32,
    vertex_count: usize,
    edge_count: usize,
    square_count: usize,
    d1: SparseIntMatrix,
    d2: SparseIntMatrix,
}

pub fn build_cube_complex(k: &SimplicialComplex, s: u32) -> Result<CubeComplex> {
    if s == 0 {
        return Err(Error::validation("cube complex needs s >= 1"));
    }
    let m = k.vertex_count();
    if m == 0 {
        return Err(Error::validation("cube complex needs at least one vertex"));
    }
    let contiguous = k.vertices().iter().cloned().eq(1..=m);
    if !contiguous {
        return Err(Error::validation(
            "cube complex needs vertices labeled 1..=m with no gaps",
        ));
    }
    let sp = s as usize + 1;
    let vertex_count = pow_checked(sp, m)?;
    let per_direction = mul_checked(s as usize, pow_checked(sp, m - 1)?)?;
    let edge_count = mul_checked(m, per_direction)?;
    let two_faces = k.faces_of_size(2);
    let per_square_block = if m >= 2 {
        mul_checked(s as usize * s as usize, pow_checked(sp, m - 2)?)?
    } else {
        0
    };
    let square_count = mul_checked(two_faces.len(), per_square_block)?;

    let mut d1 = SparseIntMatrix::new(vertex_count, edge_count);
    for q0 in 0..m {
        let radices = edge_radices(m, s, q0);
        for (rank, anchor) in all_tuples(&radices).into_iter().enumerate() {
            let eid = q0 * per_direction + rank;
            let mut upper = anchor.clone();
            upper[q0] += 1;
            d1.add_to(vertex_index(&upper, s), eid, BigInt::one())?;
            d1.add_to(vertex_index(&anchor, s), eid, -BigInt::one())?;
        }
    }

    // Square boundary: +bottom, +right, -top, -left for the face pair
    // q < r, matching edge orientation toward increasing coordinates.
    let mut d2 = SparseIntMatrix::new(edge_count, square_count);
    for (f, face) in two_faces.iter().enumerate() {
        let mut it = face.iter();
        let q0 = it.next().expect("2-face has two vertices") - 1;
        let r0 = it.next().expect("2-face has two vertices") - 1;
        let mut radices: Vec<usize> = vec![sp; m];
        radices[q0] = s as usize;
        radices[r0] = s as usize;
        for (rank, anchor) in all_tuples(&radices).into_iter().enumerate() {
            let sid = f * per_square_block + rank;
            let mut shift_q = anchor.clone();
            shift_q[q0] += 1;
            let mut shift_r = anchor.clone();
            shift_r[r0] += 1;
            d2.add_to(edge_index(m, s, q0, &anchor), sid, BigInt::one())?;
            d2.add_to(edge_index(m, s, r0, &shift_q), sid, BigInt::one())?;
            d2.add_to(edge_index(m, s, q0, &shift_r), sid, -BigInt::one())?;
            d2.add_to(edge_index(m, s, r0, &anchor), sid, -BigInt::one())?;
        }
    }

    Ok(CubeComplex {
        m,
        s,
        vertex_count,
        edge_count,
        square_count,
        d1,
        d2,
    })
}

impl CubeComplex {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn square_count(&self) -> usize {
        self.square_count
    }

    /// Vertex-by-edge boundary matrix.
    pub fn boundary_1(&self) -> &SparseIntMatrix {
        &self.d1
    }

    /// Edge-by-square boundary matrix.
    pub fn boundary_2(&self) -> &SparseIntMatrix {
        &self.d2
    }
}

/// Exact first homology: rank `= nullity(d1) - rank(d2)` and the torsion
/// invariants (Smith invariants of `d2` greater than 1). Torsion of
/// `H_1 = ker(d1)/im(d2)` equals torsion of `C_1/im(d2)` because the
/// quotient of the two groups is the free group `C_1/ker(d1)`.
pub fn h1_rank_and_torsion(c: &CubeComplex) -> Result<(usize, Vec<BigInt>)> {
    let product = c.d1.multiply(&c.d2)?;
    if !product.is_zero() {
        let (r, sq, v) = product
            .entries()
            .into_iter()
            .next()
            .expect("nonzero matrix has an entry");
        return Err(Error::internal(format!(
            "boundary of boundary is nonzero: d1*d2 has entry {v} at vertex {r}, square {sq}"
        )));
    }
    let rank1 = c.d1.rank();
    let invariants = c.d2.smith_invariants();
    let rank = c.edge_count - rank1 - invariants.len();
    let torsion: Vec<BigInt> = invariants.into_iter().filter(|d| !d.is_one()).collect();
    Ok((rank, torsion))
}

fn pow_checked(base: usize, exp: usize) -> Result<usize> {
    let mut out = 1usize;
    for _ in 0..exp {
        out = mul_checked(out, base)?;
    }
    Ok(out)
}

fn mul_checked(a: usize, b: usize) -> Result<usize> {
    a.checked_mul(b)
        .ok_or_else(|| Error::validation("lattice too large for this platform"))
}

/// Anchor radices for a direction-`q0` edge: coordinate `q0` runs to `s-1`,
/// the rest to `s`.
fn edge_radices(m: usize, s: u32, q0: usize) -> Vec<usize> {
    let mut radices = vec![s as usize + 1; m];
    radices[q0] = s as usize;
    radices
}

/// All coordinate tuples under the given radices, coordinate 1 fastest;
/// the position of a tuple in this order is its mixed-radix rank.
fn all_tuples(radices: &[usize]) -> Vec<Vec<u32>> {
    let total: usize = radices.iter().product();
    let mut out = Vec::with_capacity(total);
    if radices.iter().any(|&r| r == 0) {
        return out;
    }
    let mut cur = vec![0u32; radices.len()];
    loop {
        out.push(cur.clone());
        let mut pos = 0;
        loop {
            if pos == radices.len() {
                return out;
            }
            cur[pos] += 1;
            if (cur[pos] as usize) < radices[pos] {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
    }
}

fn mixed_radix_rank(a: &[u32], radices: &[usize]) -> usize {
    let mut rank = 0usize;
    let mut weight = 1usize;
    for (t, &c) in a.iter().enumerate() {
        rank += c as usize * weight;
        weight *= radices[t];
    }
    rank
}

fn vertex_index(a: &[u32], s: u32) -> usize {
    mixed_radix_rank(a, &vec![s as usize + 1; a.len()])
}

fn edge_index(m: usize, s: u32, q0: usize, anchor: &[u32]) -> usize {
    let per_direction = s as usize * (s as usize + 1).pow(m as u32 - 1);
    q0 * per_direction + mixed_radix_rank(anchor, &edge_radices(m, s, q0))
}

fn validate_edge(m: usize, s: u32, e: &GridEdge) -> Result<()> {
    if e.direction == 0 || e.direction > m {
        return Err(Error::validation(format!(
            "edge direction {} outside 1..={m}",
            e.direction
        )));
    }
    if e.anchor.len() != m {
        return Err(Error::validation(format!(
            "edge anchor has {} coordinates, expected {m}",
            e.anchor.len()
        )));
    }
    if e.anchor.iter().any(|&c| c > s) {
        return Err(Error::validation("edge anchor outside the cube"));
    }
    if e.anchor[e.direction - 1] >= s {
        return Err(Error::validation(
            "edge anchor at the cube wall in its own direction",
        ));
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&v| self.find(v) == v).count()
    }
}
