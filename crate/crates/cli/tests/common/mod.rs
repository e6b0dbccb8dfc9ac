#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use fdq::deform::ModuleDeformation;
use fdq::ring::{Monomial, Poly};
use fdq::{Cochain, DiffOp};
use fdq_cli::format::{deserialize, parse_op_json, serialize, Document};
use serde_json::Value;

pub fn fdq(dir: &Path, args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_fdq"))
        .args(args)
        .current_dir(dir)
        .env_remove(fdq_cli::OUTPUT_DIR_ENV)
        .output()
        .expect("binary runs");
    out.status.code().expect("exit code")
}

pub const CONFIG: &str = "fdq/1\nkind config\nvars x:2 y:1\nlambda 3\nmoyal [[\"0\",\"1\"],[\"-1\",\"0\"]]\nseed 0\ndegree-bound 3\n";

/// `moyal → build → normalize → verify` in `dir`; returns the exit codes.
pub fn pipeline(dir: &Path) -> Vec<i32> {
    std::fs::write(dir.join("cfg.fdq"), CONFIG).unwrap();
    vec![
        fdq(dir, &["moyal", "--n", "2", "--pi", "0 1; -1 0", "--order", "3", "-o", "star.fdq", "--json", "moyal.json"]),
        fdq(dir, &["build", "--config", "cfg.fdq", "-o", "rho.fdq", "--json", "build.json"]),
        fdq(dir, &["normalize", "rho.fdq", "-o", "norm.fdq", "--equivalence", "t.fdq", "--star", "star.fdq", "--json", "normalize.json"]),
        fdq(dir, &["verify", "norm.fdq", "star.fdq", "--json", "verify.json"]),
    ]
}

pub const ARTIFACTS: [&str; 8] =
    ["star.fdq", "rho.fdq", "norm.fdq", "t.fdq", "moyal.json", "build.json", "normalize.json", "verify.json"];

pub fn read_module(path: &Path) -> ModuleDeformation {
    match deserialize(&std::fs::read_to_string(path).unwrap()).unwrap() {
        Document::Module(m) => m,
        other => panic!("expected a module, got {}", other.kind()),
    }
}

/// Adds `a ↦ L_{∂₁²a}` to `ρ₁`, which breaks the module axiom at order 1.
pub fn write_corrupted(src: &Path, dst: &Path) {
    let rho = read_module(src);
    let space = rho.space().clone();
    let mut bad = Cochain::zero(&space, 1);
    bad.add_term(vec![Monomial::from_vec(vec![2, 0])], DiffOp::identity(&space));
    let corrupted = rho.with_coeff(1, rho.coeff(1).add(&bad));
    std::fs::write(dst, serialize(&Document::Module(corrupted))).unwrap();
}

/// Re-evaluates the first failing module check of a JSON report through the
/// library and compares it with the reported defect.
pub fn replay_module_witness(report: &Value, module: &ModuleDeformation, star: &fdq::deform::StarProduct) -> Result<usize, String> {
    let failing = report["checks"]
        .as_array()
        .and_then(|c| c.iter().find(|c| c["passed"] == Value::Bool(false)))
        .ok_or("no failing check in report")?;
    if failing["name"] != "module" {
        return Err(format!("first failure is {}", failing["name"]));
    }
    let order = failing["order"].as_u64().ok_or("missing order")? as usize;
    let space = module.space();
    let args: Vec<Poly> = failing["witness"]["args"]
        .as_array()
        .ok_or("missing witness")?
        .iter()
        .map(|a| {
            let e: Vec<u32> = a.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect();
            Poly::monomial(space.base(), Monomial::from_vec(e), fdq::ring::int(1))
        })
        .collect();
    let reported = parse_op_json(space, &failing["witness"]["value"]["op"]).map_err(|e| e.to_string())?;
    let replayed = module.module_defect(star, order).eval(&args).map_err(|e| e.to_string())?;
    if reported.is_zero() || replayed != reported {
        return Err(format!("replayed {replayed} but report says {reported}"));
    }
    Ok(order)
}
