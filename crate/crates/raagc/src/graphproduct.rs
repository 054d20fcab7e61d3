//! Graph products of cyclic groups over a flag complex, generalizing the
//! right-angled case: each vertex carries either an infinite cyclic group
//! or a finite cyclic group of order at least 2. The commutator-subgroup
//! generator enumeration keeps the same vertex patterns and swaps the
//! exponent ranges for per-vertex element ranges; whether the kernel is
//! free depends only on the graph, not on the vertex groups.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{is_chordal, SimplicialComplex};
use crate::generators::{vertex_patterns, CommutatorDescriptor};
use crate::{Error, Result};

/// The cyclic group attached to one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum VertexGroup {
    #[serde(rename = "Z")]
    InfiniteCyclic,
    #[serde(rename = "cyclic")]
    Cyclic { order: u64 },
}

/// Vertex groups for `g_1..g_m`, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexGroupSpec {
    groups: Vec<VertexGroup>,
}

impl VertexGroupSpec {
    pub fn new(groups: Vec<VertexGroup>) -> Result<Self> {
        for (pos, g) in groups.iter().enumerate() {
            if let VertexGroup::Cyclic { order } = g {
                if *order < 2 {
                    return Err(Error::validation(format!(
                        "vertex {} has cyclic order {order}, need at least 2",
                        pos + 1
                    )));
                }
            }
        }
        Ok(VertexGroupSpec { groups })
    }

    /// All vertices infinite cyclic: the right-angled Artin case.
    pub fn all_infinite(m: usize) -> Self {
        VertexGroupSpec {
            groups: vec![VertexGroup::InfiniteCyclic; m],
        }
    }

    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[VertexGroup] {
        &self.groups
    }

    pub fn group(&self, v: usize) -> Result<&VertexGroup> {
        self.groups
            .get(v.checked_sub(1).ok_or_else(|| {
                Error::validation("vertex labels are 1-based".to_string())
            })?)
            .ok_or_else(|| {
                Error::validation(format!("vertex {v} outside 1..={}", self.m()))
            })
    }

    /// Size of the nontrivial element range used for vertex `v`: the whole
    /// of the finite group minus the identity, or the cut-off `1..=s` for
    /// an infinite factor.
    fn element_range(&self, v: usize, s: u32) -> Result<u64> {
        Ok(match self.group(v)? {
            VertexGroup::InfiniteCyclic => s as u64,
            VertexGroup::Cyclic { order } => order - 1,
        })
    }
}

/// A nested commutator of vertex-group elements, shaped exactly like the
/// right-angled descriptor but carrying group elements `g_v^{e_v}` with
/// `1 <= e_v < order` on finite vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GpDescriptor {
    ks: Vec<usize>,
    j: usize,
    i: usize,
    elements: Vec<i64>,
}

impl GpDescriptor {
    pub fn new(ks: Vec<usize>, j: usize, i: usize, elements: Vec<i64>) -> Result<Self> {
        let d = GpDescriptor { ks, j, i, elements };
        d.validate_structure()?;
        Ok(d)
    }

    pub fn ks(&self) -> &[usize] {
        &self.ks
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn depth(&self) -> usize {
        self.ks.len() + 2
    }

    /// Vertices in descriptor order `(k_1, .., k_r, j, i)`.
    pub fn vertex_tuple(&self) -> Vec<usize> {
        let mut t = self.ks.clone();
        t.push(self.j);
        t.push(self.i);
        t
    }

    /// Same shape conditions as the right-angled descriptor; element
    /// exponents must be nonzero but ranges are checked against a spec in
    /// `is_valid_for`.
    pub fn validate_structure(&self) -> Result<()> {
        // Reuse the structural rules wholesale.
        CommutatorDescriptor::new(
            self.ks.clone(),
            self.j,
            self.i,
            self.elements.clone(),
        )
        .map(|_| ())
    }

    /// Reads the descriptor as a right-angled one, element for exponent.
    pub fn to_commutator_descriptor(&self) -> Result<CommutatorDescriptor> {
        CommutatorDescriptor::new(
            self.ks.clone(),
            self.j,
            self.i,
            self.elements.clone(),
        )
    }

    /// Structural validity plus the component condition on `k` plus element
    /// ranges against `spec` (with cut-off `s` on infinite vertices).
    pub fn is_valid_for(
        &self,
        k: &SimplicialComplex,
        spec: &VertexGroupSpec,
        s: u32,
    ) -> Result<bool> {
        check_shapes(k, spec)?;
        if s == 0 {
            return Err(Error::validation("element cut-off s must be >= 1"));
        }
        if !self.to_commutator_descriptor()?.is_valid_for(k)? {
            return Ok(false);
        }
        for (pos, v) in self.vertex_tuple().into_iter().enumerate() {
            let range = spec.element_range(v, s)? as i64;
            let e = self.elements[pos];
            if e < 1 || e > range {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for GpDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (pos, k) in self.ks.iter().enumerate() {
            write!(f, "(g{}^{},", k, self.elements[pos])?;
        }
        let r = self.ks.len();
        write!(
            f,
            "(g{}^{},g{}^{})",
            self.j, self.elements[r], self.i, self.elements[r + 1]
        )?;
        for _ in 0..r {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn check_shapes(k: &SimplicialComplex, spec: &VertexGroupSpec) -> Result<()> {
    if spec.m() != k.vertex_count() {
        return Err(Error::validation(format!(
            "spec lists {} vertex groups but the complex has {} vertices",
            spec.m(),
            k.vertex_count()
        )));
    }
    Ok(())
}

/// Generators of the kernel of `G^K -> Z^K` (every vertex group mapped onto
/// its abelianization), enumerated like the right-angled basis with the
/// per-vertex element ranges, ordered by (depth, vertex tuple, element
/// tuple).
pub fn enumerate_gp_descriptors(
    k: &SimplicialComplex,
    spec: &VertexGroupSpec,
    s: u32,
) -> Result<Vec<GpDescriptor>> {
    check_shapes(k, spec)?;
    if s == 0 {
        return Err(Error::validation("element cut-off s must be >= 1"));
    }
    let mut out = Vec::new();
    for (ks, j, i) in vertex_patterns(k)? {
        let mut vertices = ks.clone();
        vertices.push(j);
        vertices.push(i);
        let ranges: Vec<u64> = vertices
            .iter()
            .map(|&v| spec.element_range(v, s))
            .collect::<Result<_>>()?;
        for elements in element_tuples(&ranges) {
            out.push(GpDescriptor {
                ks: ks.clone(),
                j,
                i,
                elements,
            });
        }
    }
    Ok(out)
}

/// Element tuples with `1 <= e_pos <= ranges[pos]`, lexicographically
/// ascending. Any zero range kills the whole pattern.
fn element_tuples(ranges: &[u64]) -> Vec<Vec<i64>> {
    if ranges.iter().any(|&r| r == 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![1i64; ranges.len()];
    loop {
        out.push(cur.clone());
        let mut pos = ranges.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (cur[pos] as u64) < ranges[pos] {
                cur[pos] += 1;
                for later in cur.iter_mut().skip(pos + 1) {
                    *later = 1;
                }
                break;
            }
        }
    }
}

/// Generator count without enumeration: over subsets `J` with `|J| >= 2`,
/// sum `(cc(K_J) - 1) * prod_{v in J} c_v` with `c_v` the element range of
/// vertex `v`.
pub fn count_gp(k: &SimplicialComplex, spec: &VertexGroupSpec, s: u32) -> Result<BigInt> {
    check_shapes(k, spec)?;
    if s == 0 {
        return Err(Error::validation("element cut-off s must be >= 1"));
    }
    let verts: Vec<usize> = k.vertices().iter().cloned().collect();
    let mut total = BigInt::zero();
    for subset in crate::combinatorics::subsets_at_least(&verts, 2) {
        let vs: BTreeSet<usize> = subset.iter().cloned().collect();
        let sub = crate::combinatorics::restriction(k, &vs)?;
        let (cc, _) = crate::combinatorics::connected_components(&sub);
        if cc <= 1 {
            continue;
        }
        let mut product = BigInt::one();
        for &v in &subset {
            product *= BigInt::from(spec.element_range(v, s)?);
        }
        total += BigInt::from(cc as u64 - 1) * product;
    }
    Ok(total)
}

/// Whether the kernel of `G^K -> Z^K` is free: decided by chordality of the
/// one-skeleton alone, for every choice of vertex groups.
pub fn gp_is_free_kernel(k: &SimplicialComplex, spec: &VertexGroupSpec) -> Result<bool> {
    check_shapes(k, spec)?;
    Ok(is_chordal(&k.one_skeleton()))
}
