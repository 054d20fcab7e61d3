//! Constructive expression of commutator-subgroup elements in the
//! generator basis: the two-generator split-off loop, path lifting to the
//! grid, loop decomposition against the canonical spanning tree, and basis
//! expression with the three-generator loop tables as verified fixtures.
//!
//! Everything here self-verifies: factorizations are checked by free
//! reduction against the input before they are returned, so a wrong answer
//! surfaces as an internal error, never as silent output.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::freegroup::{self, exponent_to_i64, Word};
use crate::generators::CommutatorDescriptor;
use crate::input;
use crate::topology::{self, canonical_spanning_tree, GridEdge};
use crate::{Error, Result};

/// One basis factor with its sign: `sign = -1` means the realized
/// commutator enters the product inverted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedFactor {
    pub sign: i8,
    #[serde(flatten)]
    pub descriptor: CommutatorDescriptor,
}

/// Ordered product of signed basis commutators over the alphabet
/// `g_1..g_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizedWord {
    m: usize,
    factors: Vec<SignedFactor>,
}

impl FactorizedWord {
    pub fn new(m: usize, factors: Vec<(CommutatorDescriptor, i8)>) -> Result<Self> {
        let mut out = Vec::with_capacity(factors.len());
        for (descriptor, sign) in factors {
            if sign != 1 && sign != -1 {
                return Err(Error::validation(format!("factor sign {sign} is not +-1")));
            }
            descriptor.validate_structure()?;
            if descriptor.j() > m {
                return Err(Error::validation(format!(
                    "factor vertex {} outside alphabet 1..={m}",
                    descriptor.j()
                )));
            }
            out.push(SignedFactor { sign, descriptor });
        }
        Ok(FactorizedWord { m, factors: out })
    }

    pub fn empty(m: usize) -> Self {
        FactorizedWord {
            m,
            factors: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn factors(&self) -> &[SignedFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the realized factors in order and reduces.
    pub fn realize(&self) -> Result<Word> {
        let mut words = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let w = freegroup::realize_nested(&f.descriptor, self.m)?;
            words.push(if f.sign < 0 { freegroup::invert(&w) } else { w });
        }
        freegroup::product(self.m, &words)
    }
}

/// Splits a word of `F_2'` into depth-2 commutators from the left.
///
/// With the word in syllable form `g_a^i g_b^j g_a^k psi`, one split-off
/// step peels
/// `g_1^i g_2^j g_a^k psi = (g_2^-j, g_1^-i)^-1 (g_2^j g_1^(i+k) psi)` and
/// `g_2^i g_1^j g_a^k psi = (g_2^-i, g_1^-j) (g_1^j g_2^(i+k) psi)`,
/// each dropping at least one syllable, so the alternation count strictly
/// decreases and the residue with at most two syllables must be the
/// identity.
pub fn rewrite_f2(w: &Word) -> Result<FactorizedWord> {
    if w.m() != 2 {
        return Err(Error::validation(format!(
            "split-off rewriting works over exactly 2 generators, got alphabet size {}",
            w.m()
        )));
    }
    if !freegroup::in_commutator_subgroup(w) {
        return Err(Error::validation(
            "word has nonzero exponent sums and lies outside the commutator subgroup",
        ));
    }
    let mut factors: Vec<(CommutatorDescriptor, i8)> = Vec::new();
    let mut cur = w.clone();
    let mut prev_syllables = usize::MAX;
    while cur.syllables().len() >= 3 {
        let n = cur.syllables().len();
        if n >= prev_syllables {
            return Err(Error::internal(
                "alternation count failed to decrease during split-off",
            ));
        }
        prev_syllables = n;
        let (a, i) = cur.syllables()[0].clone();
        let (b, j) = cur.syllables()[1].clone();
        let (_, k) = cur.syllables()[2].clone();
        let ni = exponent_to_i64(&i)?;
        let nj = exponent_to_i64(&j)?;
        if a == 1 {
            factors.push((CommutatorDescriptor::pair(2, 1, -nj, -ni)?, -1));
        } else {
            factors.push((CommutatorDescriptor::pair(2, 1, -ni, -nj)?, 1));
        }
        let mut rest: Vec<freegroup::Syllable> = vec![(b, j), (a, i + k)];
        rest.extend_from_slice(&cur.syllables()[3..]);
        cur = freegroup::reduce(2, &rest)?;
    }
    if !cur.is_identity() {
        return Err(Error::internal(
            "balanced two-syllable residue did not reduce to the identity",
        ));
    }
    let fw = FactorizedWord::new(2, factors)?;
    if fw.realize()? != *w {
        return Err(Error::internal(
            "split-off factor product does not reduce to the input word",
        ));
    }
    Ok(fw)
}

/// Per-letter trace of the lift: `(start vertex, direction, step sign)`.
/// A syllable only ever needs `s + 1` of its letters walked before the
/// walk either finishes it or provably leaves the cube.
fn trace(w: &Word, m: usize, s: u32) -> Result<Vec<(Vec<u32>, usize, i8)>> {
    if w.m() != m {
        return Err(Error::validation(format!(
            "word alphabet {} does not match m = {m}",
            w.m()
        )));
    }
    if m == 0 {
        return Err(Error::validation("lifting needs m >= 1"));
    }
    if s == 0 {
        return Err(Error::validation("lifting needs s >= 1"));
    }
    let mut at = vec![0u32; m];
    let mut steps = Vec::new();
    let mut prefix: Vec<(usize, i64)> = Vec::new();
    for (g, e) in w.syllables() {
        let sign: i8 = if e.is_negative() { -1 } else { 1 };
        let total = e.abs();
        let cap = BigInt::from(s as u64 + 1);
        let bounded: u64 = if total > cap {
            s as u64 + 1
        } else {
            exponent_to_i64(&total)? as u64
        };
        for done in 0..bounded {
            let next = at[g - 1] as i64 + sign as i64;
            if next < 0 || next > s as i64 {
                let mut offending = prefix.clone();
                offending.push((*g, sign as i64 * (done as i64 + 1)));
                return Err(Error::validation(format!(
                    "path leaves the cube 0..{s} at prefix {}",
                    input::format_syllables_i64(&offending)
                )));
            }
            steps.push((at.clone(), *g, sign));
            at[g - 1] = next as u32;
        }
        if BigInt::from(bounded) < total {
            return Err(Error::internal(
                "a bounded walk longer than the cube side stayed inside it",
            ));
        }
        // Completed syllables moved within 0..s, so their exponents fit.
        prefix.push((*g, exponent_to_i64(e)?));
    }
    Ok(steps)
}

/// Vertex sequence of the lift of `w` starting at the origin. The path is
/// closed exactly when all exponent sums vanish; open words are allowed.
pub fn lift_path(w: &Word, m: usize, s: u32) -> Result<Vec<Vec<u32>>> {
    let steps = trace(w, m, s)?;
    let mut vertices = Vec::with_capacity(steps.len() + 1);
    vertices.push(vec![0u32; m]);
    for (from, g, sign) in &steps {
        let mut v = from.clone();
        v[g - 1] = (v[g - 1] as i64 + *sign as i64) as u32;
        vertices.push(v);
    }
    Ok(vertices)
}

/// Non-tree edges crossed by a closed lifted path, in traversal order with
/// crossing directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopDecomposition {
    m: usize,
    s: u32,
    traversals: Vec<(GridEdge, i8)>,
}

impl LoopDecomposition {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn traversals(&self) -> &[(GridEdge, i8)] {
        &self.traversals
    }

    pub fn len(&self) -> usize {
        self.traversals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traversals.is_empty()
    }

    /// The loop word of each traversal, inverted for reverse crossings.
    pub fn loop_words(&self) -> Result<Vec<Word>> {
        self.traversals
            .iter()
            .map(|(edge, sign)| {
                let chi = topology::nontree_loop_word(self.m, self.s, edge)?;
                Ok(if *sign < 0 { freegroup::invert(&chi) } else { chi })
            })
            .collect()
    }

    /// Product of the signed loop words; freely reduces to the decomposed
    /// word.
    pub fn product(&self) -> Result<Word> {
        freegroup::product(self.m, &self.loop_words()?)
    }
}

/// Standard spanning-tree decomposition of a closed path: conjugating every
/// step by the tree geodesics to its endpoints telescopes to the original
/// word, tree steps contribute freely trivial loops, and each non-tree
/// crossing contributes its basis loop word with the crossing sign.
pub fn decompose_loop(w: &Word, m: usize, s: u32) -> Result<LoopDecomposition> {
    if !freegroup::in_commutator_subgroup(w) {
        return Err(Error::validation(
            "only closed paths decompose: the word has nonzero exponent sums",
        ));
    }
    let tree = canonical_spanning_tree(m, s)?;
    let steps = trace(w, m, s)?;
    let mut traversals = Vec::new();
    for (from, g, sign) in steps {
        let anchor = if sign > 0 {
            from
        } else {
            let mut lower = from;
            lower[g - 1] -= 1;
            lower
        };
        let edge = GridEdge {
            direction: g,
            anchor,
        };
        if !tree.is_tree_edge(&edge)? {
            traversals.push((edge, sign));
        }
    }
    Ok(LoopDecomposition { m, s, traversals })
}

/// Expresses a commutator-subgroup word as a signed product of valid basis
/// descriptors, verified by free reduction before returning.
///
/// Complete for alphabets of two or three generators. For larger alphabets
/// the word (or failing that, each basis loop of its decomposition) is
/// relabeled down to its support when that support has at most three
/// generators; anything needing a genuine reordering across four or more
/// generators is reported as unsupported rather than answered wrongly.
pub fn express_in_basis(w: &Word, m: usize, s: u32) -> Result<FactorizedWord> {
    if w.m() != m {
        return Err(Error::validation(format!(
            "word alphabet {} does not match m = {m}",
            w.m()
        )));
    }
    if m < 2 {
        return Err(Error::validation("basis expression needs m >= 2"));
    }
    if !freegroup::in_commutator_subgroup(w) {
        return Err(Error::validation(
            "word has nonzero exponent sums and lies outside the commutator subgroup",
        ));
    }
    lift_path(w, m, s)?;
    let factors = match m {
        2 => rewrite_f2(w)?
            .factors()
            .iter()
            .map(|f| (f.descriptor.clone(), f.sign))
            .collect(),
        3 => express_m3(w, s)?,
        _ => express_general(w, m, s)?,
    };
    let fw = FactorizedWord::new(m, factors)?;
    let realized = fw.realize()?;
    if realized != *w {
        return Err(Error::internal(format!(
            "factorization check failed: factors realize to `{}`, input is `{}`",
            input::format_word(&realized),
            input::format_word(w)
        )));
    }
    Ok(fw)
}

fn express_m3(w: &Word, s: u32) -> Result<Vec<(CommutatorDescriptor, i8)>> {
    let dec = decompose_loop(w, 3, s)?;
    let mut out = Vec::new();
    for (edge, sign) in dec.traversals() {
        let c = [
            edge.anchor[0] as i64,
            edge.anchor[1] as i64,
            edge.anchor[2] as i64,
        ];
        append_signed(&mut out, m3_loop_factors(edge.direction, c)?, *sign);
    }
    Ok(out)
}

fn express_general(w: &Word, m: usize, s: u32) -> Result<Vec<(CommutatorDescriptor, i8)>> {
    if w.support().len() <= 3 {
        return express_small_support(w, s);
    }
    let dec = decompose_loop(w, m, s)?;
    let mut out = Vec::new();
    for (edge, sign) in dec.traversals() {
        let chi = topology::nontree_loop_word(m, s, edge)?;
        if chi.support().len() > 3 {
            return Err(Error::validation(format!(
                "unsupported over {m} generators: the basis loop for direction {} at {:?} \
                 touches {} generators, and reordering across more than 3 generators is \
                 not implemented; words whose basis loops each touch at most 3 generators \
                 are supported",
                edge.direction,
                edge.anchor,
                chi.support().len()
            )));
        }
        append_signed(&mut out, express_small_support(&chi, s)?, *sign);
    }
    Ok(out)
}

fn append_signed(
    out: &mut Vec<(CommutatorDescriptor, i8)>,
    factors: Vec<(CommutatorDescriptor, i8)>,
    sign: i8,
) {
    if sign > 0 {
        out.extend(factors);
    } else {
        for (d, sg) in factors.into_iter().rev() {
            out.push((d, -sg));
        }
    }
}

/// Relabels a word with at most three distinct generators down to a small
/// alphabet, expresses it there, and relabels the factors back. The label
/// map is monotone, so descriptor ordering conditions survive in both
/// directions, and relabeling commutes with realization.
fn express_small_support(w: &Word, s: u32) -> Result<Vec<(CommutatorDescriptor, i8)>> {
    if w.is_identity() {
        return Ok(Vec::new());
    }
    let supp = w.support();
    if supp.len() > 3 {
        return Err(Error::internal(
            "small-support expression called with support larger than 3",
        ));
    }
    if supp.len() < 2 {
        // A zero-sum word on one generator is the identity, handled above.
        return Err(Error::internal(
            "zero-sum word on one generator failed to reduce to the identity",
        ));
    }
    let target_m = supp.len();
    let down: BTreeMap<usize, usize> = supp
        .iter()
        .enumerate()
        .map(|(pos, &g)| (g, pos + 1))
        .collect();
    let small_word = w.relabel(target_m, &|g| down[&g])?;
    let small = express_in_basis(&small_word, target_m, s)?;
    let mut out = Vec::with_capacity(small.len());
    for f in small.factors() {
        let d = &f.descriptor;
        let ks: Vec<usize> = d.ks().iter().map(|&k| supp[k - 1]).collect();
        let lifted = CommutatorDescriptor::new(
            ks,
            supp[d.j() - 1],
            supp[d.i() - 1],
            d.exponents().to_vec(),
        )?;
        out.push((lifted, f.sign));
    }
    Ok(out)
}

/// The displayed loop word through a direction-`p` edge at anchor `c` for
/// three generators, as a pattern over arbitrary (possibly negative) `c`.
pub(crate) fn m3_pattern_word(p: usize, c: [i64; 3]) -> Result<Word> {
    let [c1, c2, c3] = c;
    let syllables: Vec<(usize, i64)> = match p {
        1 => vec![
            (2, c2),
            (1, c1),
            (3, c3),
            (1, 1),
            (3, -c3),
            (1, -c1 - 1),
            (2, -c2),
        ],
        2 => vec![
            (2, c2),
            (1, c1),
            (3, c3),
            (2, 1),
            (3, -c3),
            (1, -c1),
            (2, -c2 - 1),
        ],
        _ => {
            return Err(Error::validation(format!(
                "three-generator loop patterns exist for directions 1 and 2, not {p}"
            )))
        }
    };
    freegroup::word_from_i64(3, &syllables)
}

/// Basis factors of the direction-`p` loop word at anchor `c`, three
/// generators. Factors whose exponent vanishes realize to the identity and
/// are dropped. The two tables hold verbatim under free reduction for all
/// integer anchors; the verification suite checks the box `{-2..2}^3`.
pub(crate) fn m3_loop_factors(
    p: usize,
    c: [i64; 3],
) -> Result<Vec<(CommutatorDescriptor, i8)>> {
    let [c1, c2, c3] = c;
    let table: Vec<(Vec<usize>, usize, usize, Vec<i64>, i8)> = match p {
        1 => vec![
            (vec![2], 3, 1, vec![-c2, -c3, -c1], 1),
            (vec![], 3, 1, vec![-c3, -c1], -1),
            (vec![], 3, 1, vec![-c3, -c1 - 1], 1),
            (vec![2], 3, 1, vec![-c2, -c3, -c1 - 1], -1),
        ],
        2 => vec![
            (vec![], 2, 1, vec![-c2, -c1], 1),
            (vec![1], 3, 2, vec![-c1, -c3, -c2], 1),
            (vec![], 3, 2, vec![-c3, -c2], -1),
            (vec![], 3, 2, vec![-c3, -c2 - 1], 1),
            (vec![1], 3, 2, vec![-c1, -c3, -c2 - 1], -1),
            (vec![], 2, 1, vec![-c2 - 1, -c1], -1),
        ],
        _ => {
            return Err(Error::validation(format!(
                "three-generator loop tables exist for directions 1 and 2, not {p}"
            )))
        }
    };
    let mut out = Vec::new();
    for (ks, j, i, exps, sign) in table {
        if exps.iter().any(|&e| e == 0) {
            continue;
        }
        out.push((CommutatorDescriptor::new(ks, j, i, exps)?, sign));
    }
    Ok(out)
}
