//! Scenario runner behind the `defdyn` binary.
//!
//! A scenario is a JSON object:
//!
//! ```json
//! {
//!   "version": 1,
//!   "group": "integers",
//!   "level": 4,
//!   "levels": [1, 2, 4],
//!   "tasks": ["minimal-subflows", {"op": "pestov-check", "moduli": 4}]
//! }
//! ```
//!
//! Every task is validated before the first one runs. Validation failures
//! are schema errors; failures while running are task errors and leave a
//! partial report.

use std::time::Instant;

use defdyn::defsets::DEFAULT_MODULUS_GUARD;
use defdyn::group::GroupContext;
use defdyn::json::{group_to_json, parse_group};
use defdyn::typespace::Level;
use serde::Serialize;
use serde_json::{json, Value};

pub mod catalog;
pub mod check;
pub mod task;
pub mod text;

use task::{Defaults, Task};

pub const SCHEMA_VERSION: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_TASK: i32 = 3;

/// Run settings. `level_guard` bounds the levels a scenario may name; the
/// process-wide modulus guard is set separately by the binary.
#[derive(Clone, Debug)]
pub struct Options {
    pub with_oracle: bool,
    pub level_guard: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { with_oracle: false, level_guard: DEFAULT_MODULUS_GUARD }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error,
    /// The task ran but its brute-force counterpart disagreed.
    OracleMismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub op: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    pub tasks_ms: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u64,
    pub group: Value,
    pub input: Value,
    pub results: Vec<TaskReport>,
    pub partial: bool,
    pub timings: Timings,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.partial {
            EXIT_TASK
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// The report without its timing field, for byte comparisons.
    pub fn stable_json(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().expect("object").remove("timings");
        v
    }
}

/// A scenario that failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError(pub String);

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "schema error: {}", self.0)
    }
}

impl std::error::Error for SchemaError {}

struct Scenario {
    ctx: GroupContext,
    tasks: Vec<(&'static str, Task)>,
    input: Value,
}

fn parse_levels(v: &Value, guard: u64) -> Result<Vec<Level>, String> {
    let items = v.as_array().ok_or("\"levels\" must be a list")?;
    items.iter().map(|x| parse_level(x, guard)).collect()
}

fn parse_level(v: &Value, guard: u64) -> Result<Level, String> {
    let n = v.as_u64().ok_or("a level must be a positive integer")?;
    if n > guard {
        return Err(format!("level {n} exceeds the level guard {guard}"));
    }
    Level::new(n).map_err(|e| e.to_string())
}

fn parse_scenario(input: Value, opts: &Options) -> Result<Scenario, String> {
    let obj = input.as_object().ok_or("a scenario is a JSON object")?;
    const KEYS: [&str; 6] = ["version", "group", "level", "levels", "tasks", "output"];
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(format!("unknown scenario field \"{k}\""));
    }
    if let Some(v) = obj.get("version") {
        if v.as_u64() != Some(SCHEMA_VERSION) {
            return Err(format!("unsupported scenario version {v}"));
        }
    }
    let ctx = parse_group(obj.get("group").ok_or("missing \"group\"")?).map_err(|e| e.to_string())?;
    let level = obj.get("level").map(|v| parse_level(v, opts.level_guard)).transpose()?;
    let levels = obj.get("levels").map(|v| parse_levels(v, opts.level_guard)).transpose()?;
    let defaults = Defaults { ctx: ctx.clone(), level, levels, level_guard: opts.level_guard };
    let items = obj.get("tasks").and_then(Value::as_array).ok_or("missing \"tasks\" list")?;
    let tasks = items
        .iter()
        .enumerate()
        .map(|(i, t)| task::parse_task(t, &defaults).map_err(|e| format!("task {i}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Scenario { ctx, tasks, input })
}

/// Validates and runs a scenario given as JSON text.
pub fn run_scenario_str(src: &str, opts: &Options) -> Result<Report, SchemaError> {
    let input: Value = serde_json::from_str(src).map_err(|e| SchemaError(format!("malformed JSON: {e}")))?;
    run_scenario_value(input, opts)
}

pub fn run_scenario_value(input: Value, opts: &Options) -> Result<Report, SchemaError> {
    if opts.level_guard == 0 {
        return Err(SchemaError("the level guard must be positive".into()));
    }
    let scenario = parse_scenario(input, opts).map_err(SchemaError)?;
    let started = Instant::now();
    let mut results = Vec::new();
    let mut tasks_ms = Vec::new();
    let mut partial = false;
    for (index, (op, task)) in scenario.tasks.iter().enumerate() {
        let t0 = Instant::now();
        let mut report =
            TaskReport { index, op: op.to_string(), status: Status::Ok, result: None, error: None, oracle: None };
        match task::execute(&scenario.ctx, task) {
            Ok(v) => report.result = Some(v),
            Err(e) => {
                report.status = Status::Error;
                report.error = Some(e.to_string());
                partial = true;
            }
        }
        if opts.with_oracle && report.result.is_some() {
            match check::cross_check(&scenario.ctx, task) {
                Some(Ok(v)) => {
                    if v.get("agrees") == Some(&Value::Bool(false)) {
                        report.status = Status::OracleMismatch;
                        partial = true;
                    }
                    report.oracle = Some(v);
                }
                Some(Err(e)) => report.oracle = Some(json!({ "checked": false, "reason": e.to_string() })),
                None => {}
            }
        }
        tasks_ms.push(t0.elapsed().as_secs_f64() * 1e3);
        results.push(report);
    }
    Ok(Report {
        tool: "defdyn",
        version: env!("CARGO_PKG_VERSION"),
        schema: SCHEMA_VERSION,
        group: group_to_json(&scenario.ctx),
        input: scenario.input,
        results,
        partial,
        timings: Timings { total_ms: started.elapsed().as_secs_f64() * 1e3, tasks_ms },
    })
}

pub fn run_scenario(path: &std::path::Path, opts: &Options) -> Result<Report, SchemaError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| SchemaError(format!("cannot read {}: {e}", path.display())))?;
    run_scenario_str(&src, opts)
}
