use std::collections::BTreeSet;

use nielsen_core::Citation;
use serde::Serialize;
use serde_json::{Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

/// Invalid input, pointing at the flag that caused it.
#[derive(Debug)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl ToString) -> Self {
        InputError { field: field.into(), message: message.to_string() }
    }
}

pub type CmdResult = Result<Verdict, InputError>;

/// The document printed for every successful computation.
#[derive(Debug, Default, Serialize)]
pub struct Verdict {
    pub query: Map<String, Value>,
    #[serde(flatten)]
    pub results: Map<String, Value>,
    pub applied: BTreeSet<Citation>,
    pub caveats: Vec<String>,
    #[serde(skip)]
    pub unknown: bool,
    #[serde(skip)]
    pub failed: bool,
}

impl Verdict {
    pub fn new(command: &str) -> Self {
        let mut v = Verdict::default();
        v.query.insert("command".into(), command.into());
        v
    }

    pub fn echo(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.query.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn cite(&mut self, tags: impl IntoIterator<Item = Citation>) -> &mut Self {
        self.applied.extend(tags);
        self
    }

    pub fn caveat(&mut self, text: impl Into<String>) -> &mut Self {
        let text = text.into();
        if !self.caveats.contains(&text) {
            self.caveats.push(text);
        }
        self
    }

    /// Marks the verdict as undecided; a caveat must explain why.
    pub fn undecided(&mut self, why: impl Into<String>) -> &mut Self {
        self.unknown = true;
        self.caveat(why)
    }

    /// Marks a cross-check whose two sides disagreed.
    pub fn fail(&mut self, why: impl Into<String>) -> &mut Self {
        self.failed = true;
        self.caveat(why)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed {
            EXIT_INVALID
        } else if self.unknown {
            EXIT_UNKNOWN
        } else {
            EXIT_OK
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize"),
        Format::Text => {
            let Value::Object(map) = value else { return value.to_string() };
            map.iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}"),
                    other => format!("{k}: {other}"),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

pub fn error_document(e: &InputError) -> Value {
    serde_json::json!({
        "error": e.message,
        "field": e.field,
        "exit_code": EXIT_INVALID,
    })
}
