use std::fmt::Display;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

/// What a command prints. Records must depend only on the arguments, so
/// anything run-dependent such as wall time goes to `diagnostics`, which
/// record mode sends to stderr.
#[derive(Default)]
pub struct Report {
    pub text: String,
    pub records: Vec<(String, String)>,
    pub diagnostics: Vec<String>,
    /// False when a verification ran but did not hold.
    pub success: bool,
}

impl Report {
    pub fn new() -> Self {
        Report {
            success: true,
            ..Default::default()
        }
    }

    pub fn record(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.records.push((key.to_string(), value.to_string()));
        self
    }

    pub fn line(&mut self, line: impl Display) -> &mut Self {
        self.text.push_str(&line.to_string());
        self.text.push('\n');
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Records => {
                for d in &self.diagnostics {
                    eprintln!("{d}");
                }
                self.records.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
            }
        }
    }
}
