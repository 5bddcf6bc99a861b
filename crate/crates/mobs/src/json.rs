//! File formats: the transcript document and the attack report.
//!
//! Matrices are row-major arrays of hex-encoded bitstrings (see
//! [`Bitstring::to_hex`]); exponents and seeds are decimal strings so that
//! arbitrary-precision values survive JSON number limits.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::attack::{AttackResult, CongruenceSystem};
use crate::perm::Permutation;
use crate::protocol::{Params, Transcript};
use crate::semiring::{BitMatrix, Bitstring};
use crate::Error;

/// The transcript document. `A`, `B`, `a`, `b` and `K` are null in a
/// parameter skeleton and filled in by a completed exchange.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptJson {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub phi: Vec<usize>,
    pub g: Vec<Vec<String>>,
    #[serde(rename = "A")]
    pub alice_public: Option<Vec<Vec<String>>>,
    #[serde(rename = "B")]
    pub bob_public: Option<Vec<Vec<String>>>,
    pub a: Option<String>,
    pub b: Option<String>,
    #[serde(rename = "K")]
    pub shared_key: Option<Vec<Vec<String>>>,
    pub seed: String,
    pub exponent_bits: u32,
}

/// The attack report. On failure `success` is false and the value fields
/// are null.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReportJson {
    pub alpha: Option<String>,
    pub modulus: Option<String>,
    pub residues: Vec<(u64, u64)>,
    pub products_evaluated: usize,
    pub success: bool,
    #[serde(rename = "recovered_K")]
    pub recovered_key: Option<Vec<Vec<String>>>,
}

pub fn matrix_to_hex(m: &BitMatrix) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.entry(i, j).to_hex()).collect())
        .collect()
}

pub fn matrix_from_hex(rows: &[Vec<String>], dim: usize, width: usize) -> Result<BitMatrix, Error> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::BadMatrixShape { expected: dim });
    }
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| Bitstring::from_hex(s, width))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    BitMatrix::from_rows(parsed)
}

fn parse_biguint(s: &str, field: &str) -> Result<BigUint, Error> {
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| Error::BadDecimalField {
        field: field.to_string(),
        value: s.to_string(),
    })
}

impl TranscriptJson {
    /// A parameter-and-exponents skeleton: no public values or key yet.
    pub fn skeleton(
        params: &Params,
        a: Option<&BigUint>,
        b: Option<&BigUint>,
        seed: u64,
        exponent_bits: u32,
    ) -> Self {
        Self {
            k: params.k(),
            n: params.n(),
            t: params.t(),
            phi: params.phi().images().to_vec(),
            g: matrix_to_hex(params.g()),
            alice_public: None,
            bob_public: None,
            a: a.map(|x| x.to_string()),
            b: b.map(|x| x.to_string()),
            shared_key: None,
            seed: seed.to_string(),
            exponent_bits,
        }
    }

    pub fn from_transcript(t: &Transcript) -> Self {
        Self {
            k: t.params.k(),
            n: t.params.n(),
            t: t.params.t(),
            phi: t.params.phi().images().to_vec(),
            g: matrix_to_hex(t.params.g()),
            alice_public: Some(matrix_to_hex(&t.alice_public)),
            bob_public: Some(matrix_to_hex(&t.bob_public)),
            a: t.alice_exponent.as_ref().map(|x| x.to_string()),
            b: t.bob_exponent.as_ref().map(|x| x.to_string()),
            shared_key: t.shared_key.as_ref().map(matrix_to_hex),
            seed: t.seed.to_string(),
            exponent_bits: t.exponent_bits,
        }
    }

    /// Rebuilds and validates the public parameters.
    pub fn params(&self) -> Result<Params, Error> {
        let phi = Permutation::from_images(self.phi.clone())?;
        if phi.degree() != self.k {
            return Err(Error::DegreeWidthMismatch {
                degree: phi.degree(),
                width: self.k,
            });
        }
        let g = matrix_from_hex(&self.g, self.n, self.k)?;
        let cycle_lengths = phi.cycle_decomposition().cycle_lengths();
        if cycle_lengths.len() != self.t {
            return Err(Error::CycleCountMismatch {
                declared: self.t,
                actual: cycle_lengths.len(),
            });
        }
        Params::new(g, phi, cycle_lengths)
    }

    pub fn exponents(&self) -> Result<(Option<BigUint>, Option<BigUint>), Error> {
        let parse = |field: &Option<String>, name| -> Result<Option<BigUint>, Error> {
            match field {
                None => Ok(None),
                Some(s) => {
                    let value = parse_biguint(s, name)?;
                    if value.is_zero() {
                        return Err(Error::BadDecimalField {
                            field: name.to_string(),
                            value: s.clone(),
                        });
                    }
                    Ok(Some(value))
                }
            }
        };
        Ok((parse(&self.a, "a")?, parse(&self.b, "b")?))
    }

    pub fn seed(&self) -> Result<u64, Error> {
        self.seed.parse().map_err(|_| Error::BadDecimalField {
            field: "seed".to_string(),
            value: self.seed.clone(),
        })
    }

    /// Converts a completed document back into a [`Transcript`]. `A` and
    /// `B` must be present; `a`, `b`, `K` stay optional.
    pub fn to_transcript(&self) -> Result<Transcript, Error> {
        let params = self.params()?;
        let alice_public = self
            .alice_public
            .as_ref()
            .ok_or(Error::IncompleteTranscript { field: "A" })
            .and_then(|m| matrix_from_hex(m, self.n, self.k))?;
        let bob_public = self
            .bob_public
            .as_ref()
            .ok_or(Error::IncompleteTranscript { field: "B" })
            .and_then(|m| matrix_from_hex(m, self.n, self.k))?;
        let shared_key = self
            .shared_key
            .as_ref()
            .map(|m| matrix_from_hex(m, self.n, self.k))
            .transpose()?;
        let (alice_exponent, bob_exponent) = self.exponents()?;
        Ok(Transcript {
            params,
            alice_public,
            bob_public,
            alice_exponent,
            bob_exponent,
            shared_key,
            seed: self.seed()?,
            exponent_bits: self.exponent_bits,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript document always serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(s)?)
    }
}

impl AttackReportJson {
    pub fn from_result(result: &AttackResult) -> Self {
        Self {
            alpha: Some(result.alpha.to_string()),
            modulus: Some(result.modulus().to_string()),
            residues: congruences_to_pairs(&result.residues),
            products_evaluated: result.products_evaluated,
            success: true,
            recovered_key: Some(matrix_to_hex(&result.recovered_key)),
        }
    }

    pub fn failure(products_evaluated: usize) -> Self {
        Self {
            alpha: None,
            modulus: None,
            residues: Vec::new(),
            products_evaluated,
            success: false,
            recovered_key: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("attack report always serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(s)?)
    }
}

fn congruences_to_pairs(system: &CongruenceSystem) -> Vec<(u64, u64)> {
    system
        .entries()
        .iter()
        .map(|c| (c.residue, c.modulus))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attack::recover_key;
    use crate::protocol::simulate_exchange;

    #[test]
    fn transcript_round_trips_bit_exactly() {
        let t = simulate_exchange(3, 2, 32, 11).unwrap();
        let doc = TranscriptJson::from_transcript(&t);
        let json = doc.to_json_string();
        let reparsed = TranscriptJson::from_json_str(&json).unwrap();
        assert_eq!(doc, reparsed);
        assert_eq!(json, reparsed.to_json_string());
        assert_eq!(reparsed.to_transcript().unwrap(), t);
    }

    #[test]
    fn skeleton_has_null_publics() {
        let t = simulate_exchange(2, 1, 8, 3).unwrap();
        let doc = TranscriptJson::skeleton(
            &t.params,
            t.alice_exponent.as_ref(),
            t.bob_exponent.as_ref(),
            3,
            8,
        );
        assert!(doc.alice_public.is_none());
        assert!(doc.a.is_some());
        let err = doc.to_transcript();
        assert!(matches!(err, Err(Error::IncompleteTranscript { field: "A" })));
        assert!(doc.params().is_ok());
    }

    #[test]
    fn attack_report_round_trips_bit_exactly() {
        let t = simulate_exchange(3, 2, 32, 13).unwrap();
        let result = recover_key(
            t.params.g(),
            t.params.phi(),
            &t.alice_public,
            &t.bob_public,
        )
        .unwrap();
        let report = AttackReportJson::from_result(&result);
        let json = report.to_json_string();
        let reparsed = AttackReportJson::from_json_str(&json).unwrap();
        assert_eq!(report, reparsed);
        assert_eq!(json, reparsed.to_json_string());
        assert!(reparsed.success);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let t = simulate_exchange(2, 2, 8, 5).unwrap();
        let mut doc = TranscriptJson::from_transcript(&t);
        doc.phi[0] = doc.phi[1];
        assert!(doc.params().is_err());

        let mut doc = TranscriptJson::from_transcript(&t);
        doc.t = 7;
        assert!(matches!(
            doc.params(),
            Err(Error::CycleCountMismatch { .. })
        ));

        let mut doc = TranscriptJson::from_transcript(&t);
        doc.a = Some("not-a-number".to_string());
        assert!(doc.exponents().is_err());

        let mut doc = TranscriptJson::from_transcript(&t);
        doc.g[0][0] = "ff".to_string();
        assert!(doc.params().is_err());
    }

    #[test]
    fn transcript_field_order_is_stable() {
        let t = simulate_exchange(1, 1, 4, 0).unwrap();
        let json = TranscriptJson::from_transcript(&t).to_json_string();
        let keys: Vec<usize> = ["\"k\"", "\"n\"", "\"t\"", "\"phi\"", "\"g\"", "\"A\"", "\"B\"", "\"a\"", "\"b\"", "\"K\"", "\"seed\"", "\"exponent_bits\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "schema order: {json}");
    }
}
