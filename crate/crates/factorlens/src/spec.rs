//! Input files.
//!
//! A spec is either a monoid, tagged by `kind`, or a directed family given by
//! generator sets:
//!
//! ```json
//! {"kind": "lattice", "dim": 1, "atoms": [[2], [3]]}
//! {"kind": "zero_sum", "group": [2, 2]}
//! {"kind": "realize", "lengths": [2, 3, 5]}
//! {"kind": "power", "n": 2}
//! {"kind": "power", "generators": [[0, 1], [0, 1, 2, 4]], "bound": 40}
//! {"kind": "counterexample", "d": 2, "horizon": 4}
//! {"generators": [[1], [2, 3]], "depth": 12}
//! ```

use std::fs;

use factorlens_core::family::FamilySpec;
use factorlens_core::power::FinSet;
use factorlens_core::LengthSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::AppError;

/// Default store bound for power monoids given by generators.
pub const DEFAULT_STORE_BOUND: u64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MonoidSpec {
    /// Atoms in `Z^dim`; the grading is found when omitted.
    Lattice {
        dim: usize,
        atoms: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<Vec<i64>>,
    },
    /// Zero-sum sequences over `Z_{n_1} ⊕ ... ⊕ Z_{n_r}`, optionally
    /// restricted to a subset of the group.
    ZeroSum {
        group: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<Vec<Vec<u64>>>,
    },
    /// The Krull monoid realizing a length set.
    Realize { lengths: LengthSet },
    /// A submonoid of the power monoid of `N_0`: either the worked example
    /// with parameter `n`, or the one generated by `generators`.
    Power {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<FinSet>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<u64>,
    },
    /// The smallest admissible coproduct counterexample up to `horizon`.
    Counterexample { d: u64, horizon: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Monoid(MonoidSpec),
    Family(FamilySpec),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    generators: Vec<LengthSet>,
    depth: u64,
}

impl Input {
    pub fn parse(text: &str) -> Result<Input, AppError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| AppError::Input(format!("bad JSON: {e}")))?;
        if value.get("kind").is_some() {
            let spec: MonoidSpec = serde_json::from_value(value)
                .map_err(|e| AppError::Input(format!("bad monoid spec: {e}")))?;
            Ok(Input::Monoid(spec))
        } else {
            let raw: RawFamily = serde_json::from_value(value)
                .map_err(|e| AppError::Input(format!("bad family spec: {e}")))?;
            let family = FamilySpec::new(raw.generators, raw.depth)
                .map_err(|e| AppError::Input(e.to_string()))?;
            Ok(Input::Family(family))
        }
    }

    /// Reads `arg` as a path, or as inline JSON when it starts with `{`.
    pub fn load(arg: &str) -> Result<Input, AppError> {
        if arg.trim_start().starts_with('{') {
            return Input::parse(arg);
        }
        let text = fs::read_to_string(arg)
            .map_err(|e| AppError::Input(format!("cannot read {arg}: {e}")))?;
        Input::parse(&text)
    }
}

/// Parses a comma list such as `2,3,5`.
pub fn parse_length_list(s: &str) -> Result<LengthSet, AppError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| AppError::Input(format!("'{t}' is not a non-negative integer")))
        })
        .collect()
}
