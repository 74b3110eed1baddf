//! Three-valued, machine-checkable verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
}

/// Evidence attached to a certificate. Refutations always carry one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A vertex partition, as arrays of vertices.
    Partition { parts: Vec<Vec<usize>> },
    /// Two blocks from distinct families whose intersection is too large.
    BlockPair {
        first_family: String,
        first: Vec<usize>,
        second_family: String,
        second: Vec<usize>,
        intersection: usize,
    },
    /// Sub-collections of two families whose unions are disjoint.
    Subcollections {
        first_family: String,
        first: Vec<Vec<usize>>,
        second_family: String,
        second: Vec<Vec<usize>>,
    },
    /// A vertex subset, optionally tied to a line and outside vertices.
    Subset {
        set: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        line: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        outside: Vec<usize>,
    },
    /// A parameter value at which a family of sub-claims fails.
    Parameter { name: String, value: i64 },
    /// The whole search space was explored without finding the object.
    Exhausted { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub budget_spent: u64,
    pub parameters: BTreeMap<String, Value>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>, status: Status, witness: Option<Witness>, budget_spent: u64) -> Self {
        Certificate {
            claim: claim.into(),
            status,
            witness,
            budget_spent,
            parameters: BTreeMap::new(),
        }
    }

    pub fn verified(claim: impl Into<String>, witness: Option<Witness>, spent: u64) -> Self {
        Self::new(claim, Status::Verified, witness, spent)
    }

    pub fn refuted(claim: impl Into<String>, witness: Witness, spent: u64) -> Self {
        Self::new(claim, Status::Refuted, Some(witness), spent)
    }

    pub fn unknown(claim: impl Into<String>, budget: u64) -> Self {
        Self::new(claim, Status::Unknown, None, budget)
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Aggregate status of a bundle read as a conjunction: any refuted claim
/// refutes the bundle, otherwise any unknown claim makes it unknown.
pub fn bundle_status(bundle: &[Certificate]) -> Status {
    if bundle.iter().any(|c| c.status == Status::Refuted) {
        Status::Refuted
    } else if bundle.iter().any(|c| c.status == Status::Unknown) {
        Status::Unknown
    } else {
        Status::Verified
    }
}
