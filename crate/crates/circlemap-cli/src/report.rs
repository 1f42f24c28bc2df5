//! Report assembly: every float prints with 17 significant digits so
//! identical runs produce byte-identical, fully auditable output.

/// 17 significant digits in scientific notation (round-trips any f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A flat JSON object with the fields in insertion order. Values are
/// pre-rendered JSON fragments.
pub struct JsonReport {
    fields: Vec<(String, String)>,
}

impl JsonReport {
    pub fn new(command: &str) -> Self {
        let mut report = Self { fields: Vec::new() };
        report.push_raw("schema_version", "1");
        report.push_str("command", command);
        report
    }

    pub fn push_raw(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn push_str(&mut self, key: &str, value: &str) {
        self.push_raw(key, format!("\"{value}\""));
    }

    pub fn push_int(&mut self, key: &str, value: i64) {
        self.push_raw(key, value.to_string());
    }

    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.push_raw(key, fmt_f64(value));
    }

    pub fn push_f64_array(&mut self, key: &str, values: &[f64]) {
        let body: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
        self.push_raw(key, format!("[{}]", body.join(",")));
    }

    pub fn finish(self) -> String {
        let body: Vec<String> = self
            .fields
            .into_iter()
            .map(|(k, v)| format!("\"{k}\":{v}"))
            .collect();
        format!("{{{}}}\n", body.join(","))
    }
}

/// A CSV table with a fixed header row.
pub struct CsvReport {
    lines: Vec<String>,
}

impl CsvReport {
    pub fn new(header: &str) -> Self {
        Self {
            lines: vec![header.to_string()],
        }
    }

    pub fn push_row(&mut self, cells: &[String]) {
        self.lines.push(cells.join(","));
    }

    pub fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}
