use serde_json::Value;

use crate::Format;

/// A command's result in every output format, plus its exit code.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub tsv: String,
    /// Overrides all formats when set (`search --csv`).
    pub raw: Option<String>,
    pub code: u8,
    pub diagnostic: Option<String>,
}

impl Report {
    pub fn new(json: Value, text: String, tsv: String) -> Self {
        Self {
            json,
            text,
            tsv,
            raw: None,
            code: 0,
            diagnostic: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        if let Some(raw) = &self.raw {
            return raw.trim_end().to_string();
        }
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values are finite"),
            Format::Text => self.text.trim_end().to_string(),
            Format::Tsv => self.tsv.trim_end().to_string(),
        }
    }
}

/// Six significant digits, trailing zeros dropped.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `key\tvalue` lines.
pub fn tsv_pairs(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
}

/// Aligned `key: value` lines.
pub fn text_pairs(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
