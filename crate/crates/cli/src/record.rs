use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Warning,
    /// A golden value or a checked condition was missed.
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Warning => 0,
            Status::Fail | Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: Vec<String>,
    /// Canonical forms of the input polynomials.
    pub inputs: Vec<String>,
    pub results: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub messages: Vec<String>,
}

/// What a command produces: the record plus its text and, for tabular
/// commands, CSV renderings.
pub struct Outcome {
    pub record: OutputRecord,
    pub text: String,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(command: Vec<String>, inputs: Vec<String>, results: Value, text: String) -> Self {
        Outcome {
            record: OutputRecord {
                command,
                inputs,
                results,
                status: Status::Ok,
                messages: Vec::new(),
            },
            text,
            csv: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let r = OutputRecord {
            command: vec!["measure".into(), "u1-2".into()],
            inputs: vec!["u1 - 2".into()],
            results: serde_json::json!({ "value": 2.0, "error": 0.1 + 0.2 }),
            status: Status::Warning,
            messages: vec!["note".into()],
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<OutputRecord>(&s).unwrap(), r);
        assert_eq!(Status::Warning.exit_code(), 0);
        assert_eq!(Status::Fail.exit_code(), 1);
    }
}
