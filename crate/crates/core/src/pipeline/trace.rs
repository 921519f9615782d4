//! Append-only, stage-by-stage record of a pipeline run.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Parameters,
    RedPath,
    CycleExtraction,
    ErdosGallai,
    HeavyRedPruning,
    BlueMultipartite,
    CommonNeighborhood,
    PartitionPlan,
    Embedding,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: Stage,
    /// SHA-256 (hex) of the stage's serialized inputs.
    pub input_hash: String,
    pub certified: bool,
    pub sizes: BTreeMap<String, Value>,
    pub outcome: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Trace {
    pub records: Vec<StageRecord>,
}

pub(crate) fn hash_of<T: Serialize + ?Sized>(input: &T) -> String {
    let bytes = serde_json::to_vec(input).expect("stage inputs serialize");
    hex::encode(Sha256::digest(bytes))
}

impl Trace {
    pub(crate) fn push<I: Serialize + ?Sized>(
        &mut self,
        stage: Stage,
        input: &I,
        certified: bool,
        sizes: impl IntoIterator<Item = (&'static str, Value)>,
        outcome: impl Into<String>,
    ) {
        self.records.push(StageRecord {
            stage,
            input_hash: hash_of(input),
            certified,
            sizes: sizes.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            outcome: outcome.into(),
        });
    }

    pub fn last(&self) -> Option<&StageRecord> {
        self.records.last()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hashes_are_stable_hex() {
        let h = hash_of(&[1, 2, 3]);
        assert_eq!(h.len(), 64);
        assert_eq!(h, hash_of(&vec![1, 2, 3]));
        assert_ne!(h, hash_of(&[1, 2]));
    }
}
