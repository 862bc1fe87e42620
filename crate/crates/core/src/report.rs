//! Serializable records for results, in reduced-word form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::piece_maps::{DualSequence, EpsilonCertificate};
use crate::pieces::{BedardSequence, ClassifyTrace, PieceDescriptor};
use crate::rootsys::{RootAutomorphism, RootSystem};
use crate::subset::{IndexSubset, Word};
use crate::twisted::TwistedSolution;
use crate::weyl::WeylElement;

pub const FORMAT_VERSION: &str = "weylpieces/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    #[serde(rename = "J")]
    pub j: IndexSubset,
    pub w: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    #[serde(rename = "J")]
    pub j: IndexSubset,
    pub w: Word,
    #[serde(rename = "K")]
    pub k: IndexSubset,
    pub sequence: Vec<StepRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonRecord {
    pub w: Word,
    pub v: Word,
    /// `x ∈ W_J` with `v = δ(x)^{-1} w^{-1} x`.
    pub witness: Word,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual_sequence: Option<Vec<StepRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyStepRecord {
    #[serde(rename = "J")]
    pub j: IndexSubset,
    pub w: Word,
    pub u: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub x: Word,
    pub w: Word,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<ClassifyStepRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub w: Word,
    #[serde(rename = "K")]
    pub k: IndexSubset,
    pub solutions: Vec<Word>,
    pub u: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpRecord {
    pub w: Word,
    pub image: Word,
}

/// Header shared by every JSON document the CLI writes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document<T> {
    pub version: String,
    pub command: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    #[serde(rename = "J")]
    pub j: IndexSubset,
    /// Columns are the images of the simple roots.
    pub delta: Vec<Vec<i32>>,
    pub records: Vec<T>,
}

impl<T> Document<T> {
    pub fn new(command: &str, rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, records: Vec<T>) -> Self {
        Document {
            version: FORMAT_VERSION.to_string(),
            command: command.to_string(),
            cartan_type: rs.label().to_string(),
            j,
            delta: delta.matrix().to_vec(),
            records,
        }
    }

    pub fn check_version(&self) -> Result<()> {
        if self.version == FORMAT_VERSION {
            Ok(())
        } else {
            Err(Error::Parse(format!("unsupported format version {:?}", self.version)))
        }
    }
}

fn steps(rs: &RootSystem, s: &[(IndexSubset, WeylElement)]) -> Vec<StepRecord> {
    s.iter().map(|(j, w)| StepRecord { j: *j, w: rs.reduced_word(w) }).collect()
}

pub fn sequence_record(rs: &RootSystem, seq: &BedardSequence) -> Vec<StepRecord> {
    steps(rs, &seq.steps)
}

pub fn piece_record(rs: &RootSystem, p: &PieceDescriptor) -> PieceRecord {
    PieceRecord { j: p.j, w: rs.reduced_word(&p.w), k: p.k, sequence: sequence_record(rs, &p.sequence) }
}

pub fn epsilon_record(rs: &RootSystem, cert: &EpsilonCertificate, dual: Option<&DualSequence>) -> EpsilonRecord {
    EpsilonRecord {
        w: rs.reduced_word(&cert.w),
        v: rs.reduced_word(&cert.v),
        witness: rs.reduced_word(&cert.x),
        dual_sequence: dual.map(|d| steps(rs, &d.steps)),
    }
}

pub fn classify_record(rs: &RootSystem, x: &WeylElement, trace: &ClassifyTrace, verbose: bool) -> ClassifyRecord {
    ClassifyRecord {
        x: rs.reduced_word(x),
        w: rs.reduced_word(trace.result()),
        trace: verbose.then(|| {
            trace
                .steps
                .iter()
                .map(|s| ClassifyStepRecord { j: s.j, w: rs.reduced_word(&s.w), u: rs.reduced_word(&s.u) })
                .collect()
        }),
    }
}

pub fn solution_record(rs: &RootSystem, s: &TwistedSolution) -> SolutionRecord {
    SolutionRecord {
        w: rs.reduced_word(&s.w),
        k: s.k,
        solutions: s.solutions.iter().map(|a| rs.reduced_word(a)).collect(),
        u: rs.reduced_word(&s.u),
    }
}

/// Rebuilds a sequence from its record.
pub fn sequence_from_record(rs: &RootSystem, rec: &[StepRecord]) -> Result<BedardSequence> {
    if rec.is_empty() {
        return Err(Error::Parse("empty sequence".into()));
    }
    let steps = rec
        .iter()
        .map(|s| Ok((s.j, rs.from_word(&s.w)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BedardSequence { stable_index: steps.len() - 1, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::enumerate_pieces;
    use crate::rootsys::build_root_system;

    #[test]
    fn piece_record_json_shape() {
        let a2 = build_root_system(&"A2".parse().unwrap()).unwrap();
        let id = RootAutomorphism::identity(&a2);
        let j = IndexSubset::from_indices([0]);
        let pieces = enumerate_pieces(&a2, j, &id).unwrap();
        let recs: Vec<_> = pieces.iter().map(|p| piece_record(&a2, p)).collect();
        let doc = Document::new("enumerate", &a2, j, &id, recs);
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["version"], "weylpieces/1");
        assert_eq!(v["records"][2]["w"], serde_json::json!([1, 2]));
        assert_eq!(v["records"][0]["K"], serde_json::json!([1]));
        assert_eq!(v["records"][0]["sequence"][0]["J"], serde_json::json!([1]));
        let back: Document<PieceRecord> = serde_json::from_value(v).unwrap();
        assert_eq!(back, doc);
        let seq = sequence_from_record(&a2, &back.records[1].sequence).unwrap();
        assert_eq!(seq, pieces[1].sequence);
    }
}
