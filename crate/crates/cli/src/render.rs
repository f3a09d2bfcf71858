//! Text, JSON, and CSV renderers for scenario results and CTC solutions.
//!
//! JSON embeds every state output as a full matrix document, so anything the
//! tool prints can be fed back in. CSV renders the first table output as
//! plain rows (curves, sweeps); results without tables render as key,value
//! lines with state outputs omitted.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use ctcsim_core::ctc::CtcSolution;
use ctcsim_core::scenarios::{OutputValue, ParamValue, ScenarioResult, StateValue, Table};
use ctcsim_core::ComplexMatrix;

use crate::document::MatrixDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn state_to_json(state: &StateValue) -> Value {
    let doc = match state {
        StateValue::Pure(psi) => MatrixDocument::from_pure(psi),
        StateValue::Density(rho) => MatrixDocument::from_density(rho),
    };
    serde_json::to_value(doc).expect("matrix documents serialize")
}

fn table_to_json(table: &Table) -> Value {
    json!({
        "columns": table.columns,
        "rows": table
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|&x| json_number(x)).collect()))
            .collect::<Vec<_>>(),
    })
}

fn output_to_json(value: &OutputValue) -> Value {
    match value {
        OutputValue::Real(x) => json_number(*x),
        OutputValue::Int(n) => json!(n),
        OutputValue::Bool(b) => json!(b),
        OutputValue::Text(s) => json!(s),
        OutputValue::State(s) => state_to_json(s),
        OutputValue::Table(t) => table_to_json(t),
    }
}

fn matrix_lines(m: &ComplexMatrix, indent: &str) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        out.push_str(indent);
        out.push('[');
        for j in 0..m.cols() {
            let z = m.at(i, j);
            out.push_str(&format!(" {:>12.9}{:+.9}i", z.re, z.im));
        }
        out.push_str(" ]\n");
    }
    out
}

fn state_lines(state: &StateValue, indent: &str) -> String {
    match state {
        StateValue::Pure(psi) => {
            let mut out = String::new();
            out.push_str(indent);
            out.push('(');
            for z in psi.amplitudes() {
                out.push_str(&format!(" {:.9}{:+.9}i", z.re, z.im));
            }
            out.push_str(" )\n");
            out
        }
        StateValue::Density(rho) => matrix_lines(rho.matrix(), indent),
    }
}

pub fn render_scenario(result: &ScenarioResult, format: Format) -> String {
    match format {
        Format::Json => scenario_json(result),
        Format::Csv => scenario_csv(result),
        Format::Text => scenario_text(result),
    }
}

fn scenario_json(result: &ScenarioResult) -> String {
    let mut params = Map::new();
    for (key, value) in &result.params {
        let v = match value {
            ParamValue::Real(x) => json_number(*x),
            ParamValue::Text(s) => json!(s),
        };
        params.insert(key.clone(), v);
    }
    let mut outputs = Map::new();
    for (key, value) in &result.outputs {
        outputs.insert(key.clone(), output_to_json(value));
    }
    let value = json!({
        "name": result.name,
        "params": Value::Object(params),
        "outputs": Value::Object(outputs),
        "notes": result.notes,
    });
    serde_json::to_string_pretty(&value).expect("scenario results serialize")
}

fn scenario_csv(result: &ScenarioResult) -> String {
    if let Some(table) = result.outputs.values().find_map(|v| match v {
        OutputValue::Table(t) => Some(t),
        _ => None,
    }) {
        return table_csv(table);
    }
    let mut out = String::from("key,value\n");
    for (key, value) in &result.outputs {
        match value {
            OutputValue::Real(x) => out.push_str(&format!("{key},{x}\n")),
            OutputValue::Int(n) => out.push_str(&format!("{key},{n}\n")),
            OutputValue::Bool(b) => out.push_str(&format!("{key},{b}\n")),
            OutputValue::Text(s) => out.push_str(&format!("{key},{s}\n")),
            OutputValue::State(_) | OutputValue::Table(_) => {}
        }
    }
    out
}

fn table_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn scenario_text(result: &ScenarioResult) -> String {
    let mut out = format!("scenario: {}\n", result.name);
    if !result.params.is_empty() {
        out.push_str("params:\n");
        for (key, value) in &result.params {
            out.push_str(&format!("  {key} = {value}\n"));
        }
    }
    out.push_str("outputs:\n");
    for (key, value) in &result.outputs {
        match value {
            OutputValue::Real(x) => out.push_str(&format!("  {key} = {x}\n")),
            OutputValue::Int(n) => out.push_str(&format!("  {key} = {n}\n")),
            OutputValue::Bool(b) => out.push_str(&format!("  {key} = {b}\n")),
            OutputValue::Text(s) => out.push_str(&format!("  {key} = {s}\n")),
            OutputValue::State(state) => {
                out.push_str(&format!("  {key}:\n"));
                out.push_str(&state_lines(state, "    "));
            }
            OutputValue::Table(table) => {
                out.push_str(&format!("  {key} ({}):\n", table.columns.join(", ")));
                for row in &table.rows {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
                    out.push_str(&format!("    {}\n", cells.join("  ")));
                }
            }
        }
    }
    if !result.notes.is_empty() {
        out.push_str("notes:\n");
        for note in &result.notes {
            out.push_str(&format!("  - {note}\n"));
        }
    }
    out
}

pub fn render_solution(solution: &CtcSolution, format: Format) -> String {
    match format {
        Format::Json => solution_json(solution),
        Format::Csv => solution_csv(solution),
        Format::Text => solution_text(solution),
    }
}

fn solution_json(solution: &CtcSolution) -> String {
    let mut map = Map::new();
    map.insert("method".into(), json!(solution.method.to_string()));
    map.insert("iterations".into(), json!(solution.iterations));
    map.insert("residual".into(), json_number(solution.residual));
    map.insert("strategy".into(), json!(solution.strategy.to_string()));
    map.insert(
        "fixed_point".into(),
        serde_json::to_value(MatrixDocument::from_density(&solution.fixed_point)).unwrap(),
    );
    map.insert(
        "output".into(),
        serde_json::to_value(MatrixDocument::from_density(&solution.output)).unwrap(),
    );
    if let Some(weight) = solution.weight {
        map.insert("weight".into(), json_number(weight));
    }
    if let Some(dim) = solution.fixed_point_set_dimension {
        map.insert("fixed_point_set_dimension".into(), json!(dim));
    }
    serde_json::to_string_pretty(&Value::Object(map)).expect("solutions serialize")
}

fn solution_csv(solution: &CtcSolution) -> String {
    let mut out = String::from("key,value\n");
    out.push_str(&format!("method,{}\n", solution.method));
    out.push_str(&format!("iterations,{}\n", solution.iterations));
    out.push_str(&format!("residual,{}\n", solution.residual));
    out.push_str(&format!("strategy,{}\n", solution.strategy));
    if let Some(weight) = solution.weight {
        out.push_str(&format!("weight,{weight}\n"));
    }
    if let Some(dim) = solution.fixed_point_set_dimension {
        out.push_str(&format!("fixed_point_set_dimension,{dim}\n"));
    }
    out
}

fn solution_text(solution: &CtcSolution) -> String {
    let mut out = format!("method: {}\n", solution.method);
    out.push_str(&format!("iterations: {}\n", solution.iterations));
    out.push_str(&format!("residual: {:.3e}\n", solution.residual));
    out.push_str(&format!("strategy: {}\n", solution.strategy));
    if let Some(dim) = solution.fixed_point_set_dimension {
        out.push_str(&format!("fixed-point set dimension: {dim}\n"));
    }
    out.push_str("fixed point:\n");
    out.push_str(&matrix_lines(solution.fixed_point.matrix(), "  "));
    out.push_str("output:\n");
    out.push_str(&matrix_lines(solution.output.matrix(), "  "));
    if let Some(weight) = solution.weight {
        out.push_str(&format!("consistency weight: {weight}\n"));
    }
    out
}
