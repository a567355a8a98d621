//! Machine-readable report envelope emitted by the command-line interface.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Invalid,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Invalid => 1,
            Outcome::Error => 2,
        }
    }
}

/// One report per invocation: the echoed command, the outcome, the payload
/// (solution, design, map, or list), and diagnostics. A verification failure
/// always names the first failing power sum in the diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub payload: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<serde_json::Value>,
}

impl Report {
    pub fn ok(command: impl Into<String>, payload: serde_json::Value) -> Self {
        Report {
            command: command.into(),
            outcome: Outcome::Ok,
            payload,
            diagnostics: None,
        }
    }

    pub fn invalid(
        command: impl Into<String>,
        payload: serde_json::Value,
        diagnostics: serde_json::Value,
    ) -> Self {
        Report {
            command: command.into(),
            outcome: Outcome::Invalid,
            payload,
            diagnostics: Some(diagnostics),
        }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            outcome: Outcome::Error,
            payload: serde_json::Value::Null,
            diagnostics: Some(serde_json::json!({ "message": message.into() })),
        }
    }
}
