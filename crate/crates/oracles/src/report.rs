use serde::Serialize;
use serde_json::Value;

/// One oracle-vs-subject comparison, emitted as a JSON line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub instance: String,
    pub quantity: String,
    pub oracle: Value,
    pub subject: Value,
    pub matches: bool,
}

impl OracleReport {
    /// `matches` is derived from value equality; `null` stands for
    /// "none"/"unreachable" on either side.
    pub fn new(
        instance: impl Into<String>,
        quantity: impl Into<String>,
        oracle: impl Serialize,
        subject: impl Serialize,
    ) -> Self {
        let oracle = serde_json::to_value(oracle).unwrap_or(Value::Null);
        let subject = serde_json::to_value(subject).unwrap_or(Value::Null);
        Self {
            instance: instance.into(),
            quantity: quantity.into(),
            matches: oracle == subject,
            oracle,
            subject,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
