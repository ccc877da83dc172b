use mogami_core::builders::BuildError;
use mogami_core::census::CensusError;
use mogami_core::format::FormatError;
use mogami_core::matching::MatchingError;
use mogami_core::script::ScriptError;
use mogami_core::ComplexError;
use serde_json::{Map, Value};
use std::fmt::Display;

/// Ordered key/value output.
#[derive(Default)]
pub struct Report {
    items: Vec<(String, Value, bool)>,
}

impl Report {
    pub fn put(&mut self, key: &str, v: impl Into<Field>) {
        self.items.push((key.to_string(), v.into().0, false));
    }

    /// A value that may span lines.
    pub fn put_block(&mut self, key: &str, text: String) {
        self.items.push((key.to_string(), Value::String(text), true));
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let m: Map<String, Value> = self.items.iter().map(|(k, v, _)| (k.clone(), v.clone())).collect();
            return serde_json::to_string_pretty(&Value::Object(m)).expect("plain values") + "\n";
        }
        let mut s = String::new();
        for (k, v, block) in &self.items {
            let text = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            if *block {
                s.push_str(&format!("{k}<<END\n"));
                if !text.is_empty() {
                    s.push_str(&text);
                    s.push('\n');
                }
                s.push_str("END\n");
            } else {
                s.push_str(&format!("{k}={text}\n"));
            }
        }
        s
    }
}

pub struct Field(Value);

macro_rules! field_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Field {
            fn from(x: $t) -> Self {
                Field(Value::from(x))
            }
        }
    )*};
}
field_from!(usize, i64, bool, &str, String);

impl From<&String> for Field {
    fn from(x: &String) -> Self {
        Field(Value::from(x.as_str()))
    }
}

impl From<mogami_core::Signature> for Field {
    fn from(s: mogami_core::Signature) -> Self {
        Field(Value::from(s.into_string()))
    }
}

impl From<std::path::Display<'_>> for Field {
    fn from(d: std::path::Display<'_>) -> Self {
        Field(Value::from(d.to_string()))
    }
}

#[derive(Debug)]
pub struct CliError {
    pub token: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(token: &'static str, message: impl Display) -> Self {
        CliError {
            token,
            message: message.to_string(),
        }
    }
}

macro_rules! tokened {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new(e.token(), &e)
            }
        }
    )*};
}
tokened!(BuildError, CensusError, FormatError, MatchingError, ScriptError);

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::new("InvalidComplex", &e)
    }
}
