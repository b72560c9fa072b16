//! Finding emission.
//!
//! Human format prints one finding per line plus a colored summary;
//! `json-lines` prints one JSON object per finding on stdout and keeps
//! prose on stderr, so the stream stays machine-readable.  Output is
//! capped at `max_findings`; the cap never affects the exit code.

use std::io::IsTerminal;

use sesq_core::report::{Finding, ValidationReport};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    JsonLines,
}

pub struct Output {
    format: Format,
    max: usize,
    shown: usize,
    suppressed: usize,
    color: bool,
}

fn color_enabled() -> bool {
    match std::env::var("SESQ_COLOR").as_deref() {
        Ok("never") => false,
        Ok("auto") | Err(_) => std::io::stdout().is_terminal(),
        Ok(_) => false,
    }
}

impl Output {
    pub fn new(format: Format, max_findings: usize) -> Self {
        Output {
            format,
            max: max_findings,
            shown: 0,
            suppressed: 0,
            color: color_enabled(),
        }
    }

    pub fn finding(&mut self, f: &Finding) {
        if self.shown >= self.max {
            self.suppressed += 1;
            return;
        }
        self.shown += 1;
        match self.format {
            Format::Human => println!("{f}"),
            Format::JsonLines => {
                println!("{}", serde_json::to_string(f).expect("findings serialize"))
            }
        }
    }

    pub fn report(&mut self, r: &ValidationReport) {
        for f in &r.findings {
            self.finding(f);
        }
    }

    /// A prose line, kept off stdout in machine-readable mode.
    pub fn note(&self, text: &str) {
        match self.format {
            Format::Human => println!("{text}"),
            Format::JsonLines => eprintln!("{text}"),
        }
    }

    /// Final verdict line; `total` counts findings before the cap.
    pub fn summary(&self, total: usize) {
        if self.suppressed > 0 {
            self.note(&format!("... {} more findings not shown", self.suppressed));
        }
        let text = if total == 0 {
            self.paint("ok", "\x1b[32m")
        } else if total == 1 {
            self.paint("1 finding", "\x1b[31m")
        } else {
            self.paint(&format!("{total} findings"), "\x1b[31m")
        };
        self.note(&text);
    }

    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("{code}{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}
