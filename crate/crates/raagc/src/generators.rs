//! The minimal generating set of the commutator subgroup `RA'_K`, presented
//! as iterated-commutator descriptors, together with the counting
//! polynomials J, W and P.
//!
//! A descriptor stands for the nested commutator
//! `(g_{k_1}^{n_1}, (g_{k_2}^{n_2}, ..., (g_j^{n_j}, g_i^{n_i}) ... ))`
//! subject to: `k_1 < k_2 < ... < j`, `i < j`, every `k_s != i`, and, against
//! a fixed complex `K`, the vertex `i` is the smallest vertex of its
//! connected component of the full subcomplex on the descriptor's vertex
//! set, and that component does not contain `j`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    connected_components, restriction, subsets_at_least, SimplicialComplex,
};
use crate::{Error, Result};

/// Iterated-commutator descriptor. `exponents` aligns with `ks`, then `j`,
/// then `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CommutatorDescriptor {
    ks: Vec<usize>,
    j: usize,
    i: usize,
    exponents: Vec<i64>,
}

impl CommutatorDescriptor {
    pub fn new(ks: Vec<usize>, j: usize, i: usize, exponents: Vec<i64>) -> Result<Self> {
        let d = CommutatorDescriptor { ks, j, i, exponents };
        d.validate_structure()?;
        Ok(d)
    }

    /// Depth-2 descriptor `(g_j^{n_j}, g_i^{n_i})`.
    pub fn pair(j: usize, i: usize, nj: i64, ni: i64) -> Result<Self> {
        Self::new(vec![], j, i, vec![nj, ni])
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

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Total number of vertices (`ks` plus `j` plus `i`).
    pub fn depth(&self) -> usize {
        self.ks.len() + 2
    }

    /// Vertex tuple `(k_1, ..., k_{l-2}, j, i)` defining the enumeration
    /// order.
    pub fn vertex_tuple(&self) -> Vec<usize> {
        let mut t = self.ks.clone();
        t.push(self.j);
        t.push(self.i);
        t
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertex_tuple().into_iter().collect()
    }

    /// Structural validity: ordering, distinctness, nonzero exponents.
    /// Complex-dependent validity is [`is_valid_for`](Self::is_valid_for).
    pub fn validate_structure(&self) -> Result<()> {
        if self.exponents.len() != self.ks.len() + 2 {
            return Err(Error::validation(format!(
                "descriptor needs {} exponents, got {}",
                self.ks.len() + 2,
                self.exponents.len()
            )));
        }
        if self.exponents.iter().any(|&e| e == 0) {
            return Err(Error::validation("descriptor exponents must be nonzero"));
        }
        if self.i == 0 || self.j == 0 || self.ks.iter().any(|&k| k == 0) {
            return Err(Error::validation("descriptor vertices are 1-based"));
        }
        if !self.ks.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::validation(
                "descriptor ks must be strictly increasing",
            ));
        }
        if self.ks.iter().any(|&k| k >= self.j) {
            return Err(Error::validation("every k must be smaller than j"));
        }
        if self.i >= self.j {
            return Err(Error::validation("i must be smaller than j"));
        }
        if self.ks.contains(&self.i) {
            return Err(Error::validation("no k may equal i"));
        }
        Ok(())
    }

    /// Component condition against `k`: in the full subcomplex on the
    /// descriptor's vertices, `i` is the smallest vertex of its component
    /// and `j` lies in a different component.
    pub fn is_valid_for(&self, k: &SimplicialComplex) -> Result<bool> {
        self.validate_structure()?;
        let vs = self.vertex_set();
        for v in &vs {
            if !k.vertices().contains(v) {
                return Err(Error::validation(format!(
                    "descriptor vertex {v} is not a vertex of the complex"
                )));
            }
        }
        let sub = restriction(k, &vs)?;
        let (_, labels) = connected_components(&sub);
        let ci = labels[&self.i];
        if labels[&self.j] == ci {
            return Ok(false);
        }
        let smallest_in_ci = labels
            .iter()
            .filter(|(_, &c)| c == ci)
            .map(|(&v, _)| v)
            .min()
            .expect("component of i is nonempty");
        Ok(smallest_in_ci == self.i)
    }
}

impl fmt::Display for CommutatorDescriptor {
    /// Nested commutator notation, e.g. `(g1^2,(g3^1,g2^-1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, k) in self.ks.iter().enumerate() {
            write!(f, "(g{}^{},", k, self.exponents[pos])?;
        }
        write!(
            f,
            "(g{}^{},g{}^{})",
            self.j,
            self.exponents[self.ks.len()],
            self.i,
            self.exponents[self.ks.len() + 1]
        )?;
        for _ in &self.ks {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All descriptors valid for `k` with exponents in `1..=s`, in the
/// deterministic order (depth, vertex tuple, exponent tuple).
pub fn enumerate_descriptors(
    k: &SimplicialComplex,
    s: u32,
) -> Result<Vec<CommutatorDescriptor>> {
    if s == 0 {
        return Err(Error::validation("exponent bound s must be at least 1"));
    }
    let mut out = Vec::new();
    for (ks, j, i) in vertex_patterns(k)? {
        let depth = ks.len() + 2;
        for exps in exponent_tuples(depth, s) {
            out.push(CommutatorDescriptor {
                ks: ks.clone(),
                j,
                i,
                exponents: exps,
            });
        }
    }
    Ok(out)
}

/// The vertex patterns `(ks, j, i)` valid for `k`, sorted by (depth, vertex
/// tuple). One pattern per pair (subset `V`, component of `K_V` avoiding
/// `max V`): `j = max V` and `i` = the component's smallest vertex. This is
/// exactly the descriptor condition: `j` beats every other vertex, and `i`
/// enumerates smallest vertices of the components not containing `j`.
pub(crate) fn vertex_patterns(k: &SimplicialComplex) -> Result<Vec<(Vec<usize>, usize, usize)>> {
    let verts: Vec<usize> = k.vertices().iter().cloned().collect();
    let mut patterns: Vec<(Vec<usize>, usize, usize)> = Vec::new();
    for subset in subsets_at_least(&verts, 2) {
        let vs: BTreeSet<usize> = subset.iter().cloned().collect();
        let j = *vs.iter().next_back().expect("subset is nonempty");
        let sub = restriction(k, &vs)?;
        let (_, labels) = connected_components(&sub);
        let cj = labels[&j];
        let mut smallest: std::collections::BTreeMap<usize, usize> = Default::default();
        for (&v, &c) in &labels {
            smallest.entry(c).or_insert(v);
        }
        for (&c, &i) in &smallest {
            if c == cj {
                continue;
            }
            let ks: Vec<usize> = subset
                .iter()
                .cloned()
                .filter(|&v| v != i && v != j)
                .collect();
            patterns.push((ks, j, i));
        }
    }
    patterns.sort_by(|a, b| {
        let ta = tuple_of(a);
        let tb = tuple_of(b);
        (ta.len(), ta).cmp(&(tb.len(), tb))
    });
    Ok(patterns)
}

fn tuple_of((ks, j, i): &(Vec<usize>, usize, usize)) -> Vec<usize> {
    let mut t = ks.clone();
    t.push(*j);
    t.push(*i);
    t
}

/// Exponent tuples over `1..=s`, lexicographically ascending.
fn exponent_tuples(len: usize, s: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![1i64; len];
    loop {
        out.push(cur.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < s as i64 {
                cur[pos] += 1;
                for e in cur.iter_mut().skip(pos + 1) {
                    *e = 1;
                }
                break;
            }
        }
    }
}

/// Lazy enumeration of the full generating set over all nonzero integer
/// exponents: level `s` yields the descriptors whose largest absolute
/// exponent is exactly `s`, so the concatenation over `s = 1, 2, ...`
/// enumerates every descriptor once. Within a level the order is (depth,
/// vertex tuple, exponent tuple), exponents compared by absolute value then
/// sign (positive first).
pub fn descriptor_stream(
    k: &SimplicialComplex,
) -> Result<impl Iterator<Item = CommutatorDescriptor>> {
    let patterns = vertex_patterns(k)?;
    let mut level: u32 = 0;
    let mut queue: Vec<CommutatorDescriptor> = Vec::new();
    Ok(std::iter::from_fn(move || loop {
        if let Some(d) = queue.pop() {
            return Some(d);
        }
        level += 1;
        let mut batch = Vec::new();
        for (ks, j, i) in &patterns {
            for exps in signed_tuples_with_max(ks.len() + 2, level) {
                batch.push(CommutatorDescriptor {
                    ks: ks.clone(),
                    j: *j,
                    i: *i,
                    exponents: exps,
                });
            }
        }
        batch.reverse();
        queue = batch;
    }))
}

/// Tuples over `{-s..-1, 1..s}` whose maximum absolute value is exactly `s`,
/// ordered lexicographically by (abs, sign-with-positive-first) per entry.
fn signed_tuples_with_max(len: usize, s: u32) -> Vec<Vec<i64>> {
    // Value domain in enumeration order: 1, -1, 2, -2, ..., s, -s.
    let domain: Vec<i64> = (1..=s as i64).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    loop {
        if idx.iter().any(|&p| p >= 2 * (s as usize - 1)) {
            // At least one entry has absolute value s.
            out.push(idx.iter().map(|&p| domain[p]).collect());
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < domain.len() {
                idx[pos] += 1;
                for p in idx.iter_mut().skip(pos + 1) {
                    *p = 0;
                }
                break;
            }
        }
    }
}

/// Per-subset contribution to P.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetEntry {
    pub vertices: Vec<usize>,
    pub cc: usize,
    #[serde(with = "crate::input::serde_bigint")]
    pub contribution: BigInt,
}

/// Counting report: P for the complex, and the free-case counts J and W for
/// the same number of vertices (zero when fewer than two vertices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub m: usize,
    pub s: u32,
    #[serde(rename = "J", with = "crate::input::serde_bigint")]
    pub j_free: BigInt,
    #[serde(rename = "W_closed", with = "crate::input::serde_bigint")]
    pub w_closed: BigInt,
    #[serde(rename = "W_recursive", with = "crate::input::serde_bigint")]
    pub w_recursive: BigInt,
    #[serde(rename = "P", with = "crate::input::serde_bigint")]
    pub p: BigInt,
    pub subsets: Vec<SubsetEntry>,
}

/// `P = sum over subsets J with |J| >= 2 of (cc(K_J) - 1) * s^|J|`.
pub fn count_p(k: &SimplicialComplex, s: u32) -> Result<CountReport> {
    if s == 0 {
        return Err(Error::validation("exponent bound s must be at least 1"));
    }
    let verts: Vec<usize> = k.vertices().iter().cloned().collect();
    let m = verts.len();
    let sb = BigInt::from(s);
    let mut p = BigInt::zero();
    let mut subsets = Vec::new();
    for subset in subsets_at_least(&verts, 2) {
        let vs: BTreeSet<usize> = subset.iter().cloned().collect();
        let (cc, _) = connected_components(&restriction(k, &vs)?);
        let contribution = BigInt::from(cc as u64 - 1) * sb.pow(subset.len() as u32);
        p += &contribution;
        subsets.push(SubsetEntry {
            vertices: subset,
            cc,
            contribution,
        });
    }
    let (j_free, w_closed, w_recursive) = if m >= 2 {
        (count_j(m, s)?, count_w_closed(m, s)?, count_w_recursive(m, s)?)
    } else {
        (BigInt::zero(), BigInt::zero(), BigInt::zero())
    };
    Ok(CountReport {
        m,
        s,
        j_free,
        w_closed,
        w_recursive,
        p,
        subsets,
    })
}

fn check_ms(m: usize, s: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::validation("counting formulas need m >= 2"));
    }
    if s == 0 {
        return Err(Error::validation("exponent bound s must be at least 1"));
    }
    Ok(())
}

/// `J(m, s) = sum_{i=2}^{m} C(m, i) (i - 1) s^i`.
pub fn count_j(m: usize, s: u32) -> Result<BigInt> {
    check_ms(m, s)?;
    let sb = BigInt::from(s);
    let mut total = BigInt::zero();
    for i in 2..=m {
        total += binomial(BigInt::from(m as u64), BigInt::from(i as u64))
            * BigInt::from(i as u64 - 1)
            * sb.pow(i as u32);
    }
    Ok(total)
}

/// Closed form `W(m, s) = s^2 (s+1)^{m-2} + (m-2)(s+1)^{m-1} s
/// - s * sum_{i=0}^{m-3} (s+1)^i`.
pub fn count_w_closed(m: usize, s: u32) -> Result<BigInt> {
    check_ms(m, s)?;
    let sb = BigInt::from(s);
    let sp = BigInt::from(s + 1);
    let mut total = &sb * &sb * sp.pow(m as u32 - 2)
        + BigInt::from(m as u64 - 2) * sp.pow(m as u32 - 1) * &sb;
    let mut geo = BigInt::zero();
    for i in 0..m.saturating_sub(2) {
        geo += sp.pow(i as u32);
    }
    total -= &sb * geo;
    Ok(total)
}

/// Recursion `W_m = W_{m-1} (s+1) + (s+1)^{m-1} s - s`, seeded with
/// `W_2 = s^2`.
pub fn count_w_recursive(m: usize, s: u32) -> Result<BigInt> {
    check_ms(m, s)?;
    let sb = BigInt::from(s);
    let sp = BigInt::from(s + 1);
    let mut w = &sb * &sb;
    for t in 3..=m {
        w = w * &sp + sp.pow(t as u32 - 1) * &sb - &sb;
    }
    Ok(w)
}

/// The coefficient of `s^k` in `J(m, s)` (equivalently in the expanded W):
/// `(k - 1) C(m, k)`.
pub fn coefficient_of(m: usize, k: usize) -> Result<BigInt> {
    if !(2..=m).contains(&k) {
        return Err(Error::validation(format!(
            "coefficient index k={k} outside 2..=m={m}"
        )));
    }
    Ok(binomial(BigInt::from(m as u64), BigInt::from(k as u64)) * BigInt::from(k as u64 - 1))
}

/// Coefficients of the closed-form W as a polynomial in s, extracted by
/// exact symbolic expansion of the defining terms. Index `t` holds the
/// coefficient of `s^t`; the list has length `m + 1`.
pub fn w_closed_coefficients(m: usize) -> Result<Vec<BigInt>> {
    if m < 2 {
        return Err(Error::validation("counting formulas need m >= 2"));
    }
    // Polynomials as coefficient vectors in s. (s+1)^e expands by binomials.
    let binom_pow = |e: usize| -> Vec<BigInt> {
        (0..=e)
            .map(|t| binomial(BigInt::from(e as u64), BigInt::from(t as u64)))
            .collect()
    };
    let mut acc = vec![BigInt::zero(); m + 1];
    let add_shifted = |acc: &mut Vec<BigInt>, poly: &[BigInt], shift: usize, scale: &BigInt| {
        for (t, c) in poly.iter().enumerate() {
            acc[t + shift] += c * scale;
        }
    };
    // s^2 (s+1)^{m-2}
    add_shifted(&mut acc, &binom_pow(m - 2), 2, &BigInt::one());
    // (m-2) s (s+1)^{m-1}
    add_shifted(&mut acc, &binom_pow(m - 1), 1, &BigInt::from(m as u64 - 2));
    // -s * sum_{i=0}^{m-3} (s+1)^i
    for i in 0..m.saturating_sub(2) {
        add_shifted(&mut acc, &binom_pow(i), 1, &BigInt::from(-1));
    }
    Ok(acc)
}
