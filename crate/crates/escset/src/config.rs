//! Plain-text run configuration: `key = value` lines, `#` starts a comment.

use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("config line {line}: {message}")]
pub struct ConfigFileError {
    pub line: usize,
    pub message: String,
}

/// Parses config text into a key→value map. Keys are normalised to the
/// command-line spelling (`max_iter` and `max-iter` are the same key); a
/// repeated key keeps its last value.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ConfigFileError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| ConfigFileError {
            line: n + 1,
            message: message.to_string(),
        };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected 'key = value'"))?;
        let key = normalize_key(key.trim());
        if key.is_empty() {
            return Err(err("empty key"));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn normalize_key(key: &str) -> String {
    key.replace('_', "-")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_spacing() {
        let text = "# run\nmap = F(-1, 1)   # family F\n\n max_iter=250\nwindow = -3,3,-3,3\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg["map"], "F(-1, 1)");
        assert_eq!(cfg["max-iter"], "250");
        assert_eq!(cfg["window"], "-3,3,-3,3");
        assert_eq!(cfg.len(), 3);
    }

    #[test]
    fn missing_equals_is_reported() {
        let err = parse_config("map = exp(1)\nseed 7\n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
