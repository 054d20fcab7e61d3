//! Exact words in the free group `F_m`.
//!
//! Words are kept in freely reduced canonical form with run-length
//! (syllable) encoding: a list of `(generator, exponent)` pairs where
//! adjacent syllables use distinct generators and no exponent is zero.
//! Exponents are arbitrary-precision integers.
//!
//! The commutator convention is `(g, h) = g^-1 h^-1 g h` throughout.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::generators::CommutatorDescriptor;
use crate::{Error, Result};

pub type Syllable = (usize, BigInt);

/// Freely reduced word over the alphabet `g_1..g_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    m: usize,
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity(m: usize) -> Self {
        Word {
            m,
            syllables: Vec::new(),
        }
    }

    /// Single generator power `g^e`; reduces to the identity when `e = 0`.
    pub fn generator(m: usize, gen: usize, exp: impl Into<BigInt>) -> Result<Self> {
        reduce(m, &[(gen, exp.into())])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters: the sum of absolute exponents.
    pub fn length(&self) -> BigInt {
        self.syllables.iter().map(|(_, e)| e.abs()).sum()
    }

    /// Generators that occur in the word, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.syllables.iter().map(|&(g, _)| g).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Per-generator exponent totals; the word lies in the commutator
    /// subgroup exactly when all entries vanish.
    pub fn exponent_sums(&self) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); self.m];
        for (g, e) in &self.syllables {
            sums[g - 1] += e;
        }
        sums
    }

    /// Rename generators through `map` (1-based, strictly increasing images
    /// preserve reducedness; any injective map is accepted).
    pub fn relabel(&self, target_m: usize, map: &dyn Fn(usize) -> usize) -> Result<Word> {
        let raw: Vec<Syllable> = self
            .syllables
            .iter()
            .map(|(g, e)| (map(*g), e.clone()))
            .collect();
        reduce(target_m, &raw)
    }
}

/// Canonicalize a raw syllable list: drop zero exponents, merge adjacent
/// powers of the same generator, cancel recursively.
pub fn reduce(m: usize, raw: &[Syllable]) -> Result<Word> {
    let mut out: Vec<Syllable> = Vec::with_capacity(raw.len());
    for (g, e) in raw {
        if *g == 0 || *g > m {
            return Err(Error::validation(format!(
                "generator index {g} outside 1..={m}"
            )));
        }
        if e.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((lg, le)) if lg == g => {
                *le += e;
                if le.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((*g, e.clone())),
        }
    }
    Ok(Word { m, syllables: out })
}

pub fn multiply(a: &Word, b: &Word) -> Result<Word> {
    if a.m != b.m {
        return Err(Error::validation(format!(
            "alphabet mismatch: {} vs {}",
            a.m, b.m
        )));
    }
    let mut raw = a.syllables.clone();
    raw.extend(b.syllables.iter().cloned());
    reduce(a.m, &raw)
}

pub fn invert(a: &Word) -> Word {
    Word {
        m: a.m,
        syllables: a
            .syllables
            .iter()
            .rev()
            .map(|(g, e)| (*g, -e))
            .collect(),
    }
}

/// Product of several words left to right.
pub fn product(m: usize, words: &[Word]) -> Result<Word> {
    let mut acc = Word::identity(m);
    for w in words {
        acc = multiply(&acc, w)?;
    }
    Ok(acc)
}

/// `(a, b) = a^-1 b^-1 a b`, reduced.
pub fn commutator(a: &Word, b: &Word) -> Result<Word> {
    product(a.m, &[invert(a), invert(b), a.clone(), b.clone()])
}

/// Expand a descriptor to its word: innermost pair `(g_j^{n_j}, g_i^{n_i})`,
/// wrapped by `g_k^{n_k}` factors right to left so that `ks[0]` ends up
/// outermost.
pub fn realize_nested(d: &CommutatorDescriptor, m: usize) -> Result<Word> {
    d.validate_structure()?;
    if d.j() > m {
        return Err(Error::validation(format!(
            "descriptor vertex {} outside 1..={m}",
            d.j()
        )));
    }
    let exps = d.exponents();
    let nj = exps[d.ks().len()];
    let ni = exps[d.ks().len() + 1];
    let mut w = commutator(
        &Word::generator(m, d.j(), nj)?,
        &Word::generator(m, d.i(), ni)?,
    )?;
    for (pos, &k) in d.ks().iter().enumerate().rev() {
        w = commutator(&Word::generator(m, k, exps[pos])?, &w)?;
    }
    Ok(w)
}

/// Right-hand side of the eight-factor swap identity
/// `(q,(p,x)) = (q,x)(x,(p,q))(q,p)(x,p)(p,(q,x))(x,q)(p,q)(p,x)`,
/// reduced. The factor order is exactly the displayed one; the identity
/// itself is exercised by the verification suite.
pub fn swap_expand(q: &Word, p: &Word, x: &Word) -> Result<Word> {
    if q.m != p.m || q.m != x.m {
        return Err(Error::validation("alphabet mismatch in swap_expand"));
    }
    let factors = [
        commutator(q, x)?,
        commutator(x, &commutator(p, q)?)?,
        commutator(q, p)?,
        commutator(x, p)?,
        commutator(p, &commutator(q, x)?)?,
        commutator(x, q)?,
        commutator(p, q)?,
        commutator(p, x)?,
    ];
    product(q.m, &factors)
}

/// Left-hand side of the swap identity, for checks.
pub fn swap_lhs(q: &Word, p: &Word, x: &Word) -> Result<Word> {
    commutator(q, &commutator(p, x)?)
}

/// Convenience constructor from small integers, mostly for tests.
pub fn word_from_i64(m: usize, syllables: &[(usize, i64)]) -> Result<Word> {
    let raw: Vec<Syllable> = syllables
        .iter()
        .map(|&(g, e)| (g, BigInt::from(e)))
        .collect();
    reduce(m, &raw)
}

/// Exponent as `i64` when it fits; validation error otherwise. Descriptor
/// exponents live in machine range by design.
pub fn exponent_to_i64(e: &BigInt) -> Result<i64> {
    i64::try_from(e).map_err(|_| {
        Error::validation(format!("exponent {e} does not fit into 64 bits"))
    })
}

/// True when every exponent sum vanishes.
pub fn in_commutator_subgroup(w: &Word) -> bool {
    w.exponent_sums().iter().all(|s| s.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::CommutatorDescriptor;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn reduce_examples() {
        let w = word_from_i64(2, &[(1, 2), (1, -2)]).unwrap();
        assert!(w.is_identity());
        let w = word_from_i64(2, &[(1, 1), (2, 1), (2, -1), (1, 1)]).unwrap();
        assert_eq!(w.syllables(), &[(1, big(2))]);
        let w = word_from_i64(2, &[(1, 1), (2, 3)]).unwrap();
        assert_eq!(w.syllables(), &[(1, big(1)), (2, big(3))]);
        assert!(reduce(2, &[(3, big(1))]).is_err());
    }

    #[test]
    fn reduce_is_idempotent() {
        let w = word_from_i64(3, &[(1, 2), (2, -1), (1, 0), (2, 1), (3, 4)]).unwrap();
        let again = reduce(3, w.syllables()).unwrap();
        assert_eq!(w, again);
    }

    #[test]
    fn multiply_and_invert() {
        let a = word_from_i64(2, &[(1, 1)]).unwrap();
        let b = word_from_i64(2, &[(1, -1)]).unwrap();
        assert!(multiply(&a, &b).unwrap().is_identity());
        let w = word_from_i64(2, &[(1, 2), (2, -1)]).unwrap();
        assert_eq!(
            invert(&w).syllables(),
            &[(2, big(1)), (1, big(-2))]
        );
        assert!(multiply(&w, &invert(&w)).unwrap().is_identity());
        let id = Word::identity(2);
        assert_eq!(multiply(&id, &w).unwrap(), w);
        let c = word_from_i64(3, &[(3, 1)]).unwrap();
        assert!(multiply(&w, &c).is_err());
    }

    #[test]
    fn commutator_examples() {
        let a = word_from_i64(2, &[(1, 1)]).unwrap();
        let b = word_from_i64(2, &[(2, 1)]).unwrap();
        let c = commutator(&a, &b).unwrap();
        assert_eq!(
            c.syllables(),
            &[(1, big(-1)), (2, big(-1)), (1, big(1)), (2, big(1))]
        );
        assert!(commutator(&a, &a).unwrap().is_identity());
        assert!(commutator(&a, &Word::identity(2)).unwrap().is_identity());
    }

    #[test]
    fn realize_nested_examples() {
        let d = CommutatorDescriptor::new(vec![], 2, 1, vec![1, 1]).unwrap();
        let w = realize_nested(&d, 2).unwrap();
        assert_eq!(
            w.syllables(),
            &[(2, big(-1)), (1, big(-1)), (2, big(1)), (1, big(1))]
        );

        let d = CommutatorDescriptor::new(vec![1], 3, 2, vec![1, 1, 1]).unwrap();
        let w = realize_nested(&d, 3).unwrap();
        let g1 = word_from_i64(3, &[(1, 1)]).unwrap();
        let inner = commutator(
            &word_from_i64(3, &[(3, 1)]).unwrap(),
            &word_from_i64(3, &[(2, 1)]).unwrap(),
        )
        .unwrap();
        assert_eq!(w, commutator(&g1, &inner).unwrap());
        assert!(in_commutator_subgroup(&w));
    }

    #[test]
    fn exponent_sums_examples() {
        let w = word_from_i64(2, &[(1, 2), (2, -1), (1, -2), (2, 1)]).unwrap();
        assert_eq!(w.exponent_sums(), vec![big(0), big(0)]);
        let w = word_from_i64(3, &[(1, 3)]).unwrap();
        assert_eq!(w.exponent_sums(), vec![big(3), big(0), big(0)]);
    }

    #[test]
    fn exponent_sums_is_a_homomorphism() {
        let a = word_from_i64(2, &[(1, 2), (2, 3)]).unwrap();
        let b = word_from_i64(2, &[(2, -3), (1, 5)]).unwrap();
        let ab = multiply(&a, &b).unwrap();
        let sum: Vec<BigInt> = a
            .exponent_sums()
            .iter()
            .zip(b.exponent_sums())
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(ab.exponent_sums(), sum);
    }

    #[test]
    fn swap_identity_on_formal_letters() {
        let q = word_from_i64(3, &[(1, 1)]).unwrap();
        let p = word_from_i64(3, &[(2, 1)]).unwrap();
        let x = word_from_i64(3, &[(3, 1)]).unwrap();
        let lhs = swap_lhs(&q, &p, &x).unwrap();
        let rhs = swap_expand(&q, &p, &x).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_identity_degenerate_cases() {
        let q = word_from_i64(3, &[(1, 2)]).unwrap();
        let x = word_from_i64(3, &[(3, -1)]).unwrap();
        // q = p.
        let lhs = swap_lhs(&q, &q, &x).unwrap();
        let rhs = swap_expand(&q, &q, &x).unwrap();
        assert_eq!(lhs, rhs);
        // x = identity: both sides collapse.
        let id = Word::identity(3);
        assert!(swap_lhs(&q, &q, &id).unwrap().is_identity());
        assert!(swap_expand(&q, &q, &id).unwrap().is_identity());
    }

    #[test]
    fn relabel_preserves_structure() {
        let w = word_from_i64(2, &[(1, 2), (2, -1)]).unwrap();
        let r = w.relabel(5, &|g| g + 3).unwrap();
        assert_eq!(r.syllables(), &[(4, big(2)), (5, big(-1))]);
    }
}
