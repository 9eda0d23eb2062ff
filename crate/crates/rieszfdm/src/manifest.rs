//! Run manifest embedded in every JSON output: the command, its resolved
//! parameters, the files written, tool version, and a UTC timestamp.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub timestamp: String,
    pub parameters: Map<String, Value>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        let epoch = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: utc_timestamp(epoch),
            parameters: Map::new(),
            outputs: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, path: impl Into<String>) -> &mut Self {
        self.outputs.push(path.into());
        self
    }
}

/// Seconds since the epoch rendered as an ISO-8601 UTC instant. Uses the
/// standard civil-from-days conversion so no clock or zone library is needed.
fn utc_timestamp(epoch_secs: u64) -> String {
    let days = (epoch_secs / 86_400) as i64;
    let secs_of_day = epoch_secs % 86_400;

    let z = days + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1_460 + doe / 36_524 - doe / 146_096) / 365;
    let year = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = doy - (153 * mp + 2) / 5 + 1;
    let month = if mp < 10 { mp + 3 } else { mp - 9 };
    let year = if month <= 2 { year + 1 } else { year };

    format!(
        "{year:04}-{month:02}-{day:02}T{:02}:{:02}:{:02}Z",
        secs_of_day / 3600,
        (secs_of_day / 60) % 60,
        secs_of_day % 60
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timestamp_conversion_is_correct() {
        assert_eq!(utc_timestamp(0), "1970-01-01T00:00:00Z");
        assert_eq!(utc_timestamp(86_399), "1970-01-01T23:59:59Z");
        // 2000-03-01 00:00:00 UTC, the day after a century leap day.
        assert_eq!(utc_timestamp(951_868_800), "2000-03-01T00:00:00Z");
        // 2024-02-29 12:00:00 UTC, a leap day.
        assert_eq!(utc_timestamp(1_709_208_000), "2024-02-29T12:00:00Z");
    }

    #[test]
    fn manifest_serializes_with_expected_keys() {
        let mut m = RunManifest::new("solve");
        m.parameter("alpha", 1.5).parameter("N", 200).output("solution.csv");
        let json = serde_json::to_value(&m).unwrap();
        assert_eq!(json["command"], "solve");
        assert_eq!(json["parameters"]["alpha"], 1.5);
        assert_eq!(json["outputs"][0], "solution.csv");
        assert!(json["timestamp"].as_str().unwrap().ends_with('Z'));
        assert!(!json["version"].as_str().unwrap().is_empty());
    }
}
