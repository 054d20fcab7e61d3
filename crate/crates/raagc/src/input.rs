//! Untrusted input: JSON decoding for complexes, descriptors, factors and
//! vertex-group specs, plus the compact word syntax. Every parser returns a
//! validation error with a location or offending token, never a panic, and
//! each has a matching formatter so printed output parses back.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::combinatorics::{clique_complex, Graph, SimplicialComplex};
use crate::freegroup::{self, Syllable, Word};
use crate::generators::CommutatorDescriptor;
use crate::graphproduct::{VertexGroup, VertexGroupSpec};
use crate::rewriting::{FactorizedWord, SignedFactor};
use crate::{Error, Result};

/// Serialize `BigInt` as a decimal string so arbitrary precision survives
/// JSON consumers; accept both strings and plain integers on input.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    struct BigIntVisitor;

    impl de::Visitor<'_> for BigIntVisitor {
        type Value = BigInt;

        fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            f.write_str("a decimal string or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigInt, E> {
            v.parse::<BigInt>()
                .map_err(|_| E::custom(format!("`{v}` is not a decimal integer")))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BigInt, E> {
            Ok(BigInt::from(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigInt, E> {
            Ok(BigInt::from(v))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigInt, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }
}

fn json_error(what: &str, err: &serde_json::Error) -> Error {
    Error::validation(format!("{what}: {err}"))
}

/// Vertex cap at the untrusted boundary only (the library itself has no
/// cap). Every downstream operation is infeasible well below it, and it
/// keeps a small hostile input from allocating a huge vertex set or a
/// worst-case clique enumeration (3^(m/3) maximal cliques).
pub const MAX_INPUT_VERTICES: usize = 32;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexInput {
    m: usize,
    edges: Option<Vec<(usize, usize)>>,
    maximal_faces: Option<Vec<Vec<usize>>>,
}

/// Decodes a complex given either as a graph (`edges`, taken to its clique
/// complex) or directly by `maximal_faces` on vertices `1..=m`. Supplying
/// both forms, or neither, is an error.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let input: ComplexInput =
        serde_json::from_str(text).map_err(|e| json_error("bad complex input", &e))?;
    if input.m > MAX_INPUT_VERTICES {
        return Err(Error::validation(format!(
            "complex has {} vertices, beyond the input cap {MAX_INPUT_VERTICES}",
            input.m
        )));
    }
    match (input.edges, input.maximal_faces) {
        (Some(_), Some(_)) => Err(Error::validation(
            "supply either `edges` or `maximal_faces`, not both",
        )),
        (None, None) => Err(Error::validation(
            "supply `edges` (clique complex of the graph) or `maximal_faces`",
        )),
        (Some(edges), None) => Ok(clique_complex(&Graph::new(input.m, &edges)?)),
        (None, Some(faces)) => {
            let vertices: BTreeSet<usize> = (1..=input.m).collect();
            let face_sets: Vec<BTreeSet<usize>> = faces
                .into_iter()
                .map(|f| f.into_iter().collect())
                .collect();
            SimplicialComplex::from_faces(vertices, &face_sets)
        }
    }
}

/// Decodes `index^exponent` tokens separated by commas; the exponent
/// defaults to 1 when the caret is omitted. Whitespace around tokens and
/// caret halves is ignored. The empty string is the identity.
pub fn parse_word_syllables(text: &str) -> Result<Vec<Syllable>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in trimmed.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(Error::validation(format!(
                "empty token in word `{trimmed}`"
            )));
        }
        let parts: Vec<&str> = token.split('^').collect();
        let (gen_text, exp_text) = match parts.as_slice() {
            [g] => (*g, "1"),
            [g, e] => (*g, *e),
            _ => {
                return Err(Error::validation(format!(
                    "token `{token}` has more than one `^`"
                )))
            }
        };
        let gen: usize = gen_text.trim().parse().map_err(|_| {
            Error::validation(format!("`{}` is not a generator index", gen_text.trim()))
        })?;
        let exp: BigInt = exp_text.trim().parse().map_err(|_| {
            Error::validation(format!("`{}` is not an integer exponent", exp_text.trim()))
        })?;
        out.push((gen, exp));
    }
    Ok(out)
}

/// Decodes a word and reduces it over the alphabet `g_1..g_m`.
pub fn parse_word(text: &str, m: usize) -> Result<Word> {
    freegroup::reduce(m, &parse_word_syllables(text)?)
}

/// Smallest alphabet the word fits in, with the two-generator floor used by
/// the rewriting commands.
pub fn infer_alphabet(syllables: &[Syllable]) -> usize {
    syllables.iter().map(|(g, _)| *g).max().unwrap_or(0).max(2)
}

/// Canonical text form of a word; inverse of `parse_word`. The identity
/// prints as the empty string.
pub fn format_word(w: &Word) -> String {
    w.syllables()
        .iter()
        .map(|(g, e)| format!("{g}^{e}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn format_syllables_i64(syllables: &[(usize, i64)]) -> String {
    syllables
        .iter()
        .map(|(g, e)| format!("{g}^{e}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Decodes a descriptor object `{"ks":..,"j":..,"i":..,"exponents":..}` and
/// checks its shape.
pub fn parse_descriptor(text: &str) -> Result<CommutatorDescriptor> {
    let d: CommutatorDescriptor =
        serde_json::from_str(text).map_err(|e| json_error("bad descriptor", &e))?;
    d.validate_structure()?;
    Ok(d)
}

pub fn format_descriptor(d: &CommutatorDescriptor) -> Result<String> {
    serde_json::to_string(d).map_err(|e| Error::internal(format!("descriptor encoding: {e}")))
}

/// Decodes one signed factor line `{"sign":..,"ks":..,..}`.
pub fn parse_factor(text: &str) -> Result<SignedFactor> {
    let f: SignedFactor =
        serde_json::from_str(text).map_err(|e| json_error("bad factor", &e))?;
    if f.sign != 1 && f.sign != -1 {
        return Err(Error::validation(format!(
            "factor sign {} is not +-1",
            f.sign
        )));
    }
    f.descriptor.validate_structure()?;
    Ok(f)
}

pub fn format_factor(f: &SignedFactor) -> Result<String> {
    serde_json::to_string(f).map_err(|e| Error::internal(format!("factor encoding: {e}")))
}

/// One factor per line, in product order.
pub fn format_factorization(fw: &FactorizedWord) -> Result<String> {
    let mut lines = Vec::with_capacity(fw.len());
    for f in fw.factors() {
        lines.push(format_factor(f)?);
    }
    Ok(lines.join("\n"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupsInput {
    groups: Vec<VertexGroup>,
}

/// Decodes `{"groups":[{"type":"Z"},{"type":"cyclic","order":n},..]}`.
pub fn parse_groups(text: &str) -> Result<VertexGroupSpec> {
    let input: GroupsInput =
        serde_json::from_str(text).map_err(|e| json_error("bad groups input", &e))?;
    VertexGroupSpec::new(input.groups)
}
