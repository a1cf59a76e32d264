use std::fmt::Write;

use lbm_scheme::SchemeDef;
use serde_json::{json, Value};

use crate::{Entry, SchemeMatrices};

const DIRS: [&str; 3] = ["x", "y", "z"];

/// Long-form CSV of every nonzero entry of M, M^-1 and Lambda.
pub fn matrices_csv(s: &SchemeDef, mats: &SchemeMatrices) -> String {
    let q = s.q();
    let names: Vec<&str> = s.moments().iter().map(|m| m.name.as_str()).collect();
    let mut out = String::from("matrix,dir,row,col,coeff,lambda_exp\n");
    let mut line = |m: &str, dir: &str, r: &str, c: &str, e: Option<Entry>| {
        if let Some(e) = e {
            let _ = writeln!(out, "{m},{dir},{r},{c},{},{}", e.coeff, e.exp);
        }
    };
    for i in 0..q {
        for j in 0..q {
            line("M", "", names[i], &j.to_string(), mats.moments.entry(i, j));
        }
    }
    for j in 0..q {
        for k in 0..q {
            line("Minv", "", &j.to_string(), names[k], mats.moments.inverse_entry(j, k));
        }
    }
    for (a, dir) in DIRS.iter().enumerate().take(s.dim()) {
        for i in 0..q {
            for k in 0..q {
                line("Lambda", dir, names[i], names[k], mats.lambda().entry(a, i, k));
            }
        }
    }
    out
}

fn cell(e: Option<Entry>) -> Value {
    match e {
        Some(e) => json!({ "coeff": e.coeff.to_string(), "lambda_exp": e.exp }),
        None => Value::Null,
    }
}

pub fn matrices_json(s: &SchemeDef, mats: &SchemeMatrices) -> Value {
    let q = s.q();
    let grid = |f: &dyn Fn(usize, usize) -> Option<Entry>| -> Value {
        Value::Array((0..q).map(|i| Value::Array((0..q).map(|j| cell(f(i, j))).collect())).collect())
    };
    let mut lambda = serde_json::Map::new();
    for (a, dir) in DIRS.iter().enumerate().take(s.dim()) {
        lambda.insert(dir.to_string(), grid(&|i, k| mats.lambda().entry(a, i, k)));
    }
    json!({
        "schema": "1",
        "scheme": s.name(),
        "variant": s.variant(),
        "conserved": s.n_conserved(),
        "moments": s.moments().iter().map(|m| json!({ "name": m.name, "degree": m.degree })).collect::<Vec<_>>(),
        "velocities": s.velocities().iter().map(|c| c[..s.dim()].to_vec()).collect::<Vec<_>>(),
        "M": grid(&|i, j| mats.moments.entry(i, j)),
        "Minv": grid(&|j, k| mats.moments.inverse_entry(j, k)),
        "Lambda": Value::Object(lambda),
    })
}
