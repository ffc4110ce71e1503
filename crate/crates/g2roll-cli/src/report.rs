//! Report rendering in the three output formats.

use crate::checks::CheckResult;
use crate::config::{Format, RunConfig};
use serde::Serialize;

#[derive(Serialize)]
struct JsonCheck<'a> {
    suite: &'a str,
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<&'a str>,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    selector: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<String>,
    checks: Vec<JsonCheck<'a>>,
    passed: usize,
    failed: usize,
}

pub fn render(selector: &str, config: &RunConfig, results: &[CheckResult]) -> String {
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    match config.format {
        Format::Text => {
            let mut out = String::new();
            for r in results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let params = r
                    .params
                    .as_deref()
                    .map(|p| format!(" [{p}]"))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "[{status}] {}::{}{}: {}\n",
                    r.suite, r.name, params, r.detail
                ));
            }
            out.push_str(&format!("{passed} passed, {failed} failed\n"));
            out
        }
        Format::Csv => {
            let mut out = String::from("suite,name,params,passed,detail\n");
            for r in results {
                let esc = |s: &str| s.replace('"', "\"\"");
                out.push_str(&format!(
                    "\"{}\",\"{}\",\"{}\",{},\"{}\"\n",
                    r.suite,
                    esc(&r.name),
                    r.params.as_deref().unwrap_or(""),
                    r.passed,
                    esc(&r.detail)
                ));
            }
            out
        }
        Format::Json => {
            let report = JsonReport {
                selector,
                seed: config.seed,
                generated_at: if config.reproducible {
                    None
                } else {
                    Some(now_utc())
                },
                checks: results
                    .iter()
                    .map(|r| JsonCheck {
                        suite: r.suite,
                        name: &r.name,
                        params: r.params.as_deref(),
                        passed: r.passed,
                        detail: &r.detail,
                    })
                    .collect(),
                passed,
                failed,
            };
            let mut text = serde_json::to_string_pretty(&report).expect("serializable report");
            text.push('\n');
            text
        }
    }
}

pub fn file_name(format: Format) -> &'static str {
    match format {
        Format::Json => "report.json",
        Format::Csv => "report.csv",
        Format::Text => "report.txt",
    }
}

fn now_utc() -> String {
    // Seconds since the epoch; avoids a clock-formatting dependency and is
    // suppressed entirely under --reproducible.
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}
