use std::fmt::Write as _;

use qcskit::report::{CheckReport, SCHEMA};
use qcskit::Answer;
use serde_json::{json, Map, Value};

use crate::args::{Format, Global};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unresolved,
}

impl Status {
    pub fn from_pass(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn from_answer(a: Answer) -> Status {
        match a {
            Answer::In => Status::Pass,
            Answer::Out => Status::Fail,
            Answer::Unresolved => Status::Unresolved,
        }
    }

    pub fn from_reports(reports: &[CheckReport]) -> Status {
        Status::from_pass(qcskit::report::all_pass(reports))
    }

    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unresolved => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unresolved => "unresolved",
        }
    }
}

pub const INPUT_ERROR: u8 = 2;

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub result: Value,
}

impl Outcome {
    pub fn new(status: Status, result: Value) -> Self {
        Outcome { status, result }
    }

    /// A computation with nothing to pass or fail.
    pub fn done(result: Value) -> Self {
        Outcome::new(Status::Pass, result)
    }
}

/// Serialises anything the core crate can serialise. The core types only
/// contain plain data, so this cannot fail.
pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable report data")
}

fn config(g: &Global) -> Value {
    json!({ "tol": g.tol, "seed": g.seed, "samples": g.samples })
}

/// Prints the outcome and returns the exit code.
pub fn emit(command: &str, g: &Global, outcome: Result<Outcome, CliError>) -> u8 {
    match outcome {
        Ok(o) => {
            let env = json!({
                "schema": SCHEMA,
                "command": command,
                "status": o.status.label(),
                "pass": o.status == Status::Pass,
                "config": config(g),
                "result": o.result,
            });
            match g.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&env).expect("json value")),
                Format::Text => {
                    let mut out = format!("{command}: {}\n", o.status.label().to_uppercase());
                    render(&o.result, 0, &mut out);
                    print!("{out}");
                }
            }
            o.status.code()
        }
        Err(e) => {
            if g.format == Format::Json {
                let env = json!({
                    "schema": SCHEMA,
                    "command": command,
                    "status": "error",
                    "pass": false,
                    "error": e.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&env).expect("json value"));
            }
            eprintln!("error: {e}");
            INPUT_ERROR
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re} - {}i", -im)
    } else {
        format!("{re} + {im}i")
    }
}

fn as_complex(m: &Map<String, Value>) -> Option<(f64, f64)> {
    if m.len() == 2 {
        Some((m.get("re")?.as_f64()?, m.get("im")?.as_f64()?))
    } else {
        None
    }
}

/// Rows of `[re, im]` pairs, from either a Hermitian or a general matrix.
fn as_matrix(m: &Map<String, Value>) -> Option<Vec<Vec<(f64, f64)>>> {
    let expected = if m.contains_key("n") { 2 } else { 1 };
    if m.len() != expected {
        return None;
    }
    m.get("entries")?
        .as_array()?
        .iter()
        .map(|row| {
            row.as_array()?
                .iter()
                .map(|p| Some((p.get(0)?.as_f64()?, p.get(1)?.as_f64()?)))
                .collect()
        })
        .collect()
}

fn render_matrix(rows: &[Vec<(f64, f64)>], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let real = rows.iter().flatten().all(|&(_, im)| im == 0.0);
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|&(re, im)| {
                if real {
                    format!("{re:>10.6}")
                } else {
                    format!("{re:>10.6}{im:+.6}i")
                }
            })
            .collect();
        let _ = writeln!(out, "{pad}[{} ]", cells.join(" "));
    }
}

/// Indented plain-text rendering of a JSON tree.
fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            if let Some(rows) = as_matrix(m) {
                render_matrix(&rows, indent, out);
                return;
            }
            if let Some((re, im)) = as_complex(m) {
                let _ = writeln!(out, "{pad}{}", complex(re, im));
                return;
            }
            for (k, x) in m {
                match x {
                    Value::Object(inner) if as_complex(inner).is_some() => {
                        let (re, im) = as_complex(inner).expect("checked");
                        let _ = writeln!(out, "{pad}{k}: {}", complex(re, im));
                    }
                    Value::Array(items) if items.iter().all(is_scalar) => {
                        let parts: Vec<String> = items.iter().map(scalar).collect();
                        let _ = writeln!(out, "{pad}{k}: [{}]", parts.join(", "));
                    }
                    x if is_scalar(x) => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                    x => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render(x, indent + 2, out);
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", scalar(x));
        }
    }
}
