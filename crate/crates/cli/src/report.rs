use serde_json::{Map, Value};

/// Outcome of one command: text lines, a JSON body, and whether the checked
/// statement held.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub verified: bool,
    pub lines: Vec<String>,
    pub body: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            verified: true,
            lines: Vec::new(),
            body: Map::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.body.insert(key.to_string(), value.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let mut body = self.body.clone();
        body.insert("command".into(), self.command.into());
        body.insert("verified".into(), self.verified.into());
        Value::Object(body)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize")
        } else {
            self.lines.join("\n")
        }
    }
}
