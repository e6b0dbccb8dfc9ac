//! The `fdq/1` text format: a line-oriented header followed by one body line
//! per λ-order holding a JSON list with rationals written as `"p/q"`.
//!
//! ```text
//! fdq/1
//! kind star
//! vars x:2 y:1
//! lambda 1
//! C 0 [[[[0,0],[0,0]],[["1",[0,0]]]]]
//! C 1 [[[[0,1],[1,0]],[["-1/2",[0,0]]]],[[[1,0],[0,1]],[["1/2",[0,0]]]]]
//! ```

use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

use fdq::deform::{Equivalence, ModuleDeformation, StarProduct};
use fdq::hochschild::MultiDiff;
use fdq::ring::{Monomial, Poly, Rational, Series, VarContext};
use fdq::{BaseCochain, Cochain, DiffOp, OpIndex, Space};

use crate::CliError;

pub const VERSION: &str = "fdq/1";

/// Where the star product of a configuration comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum StarSource {
    Moyal(Vec<Vec<Rational>>),
    File(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub n: usize,
    pub k: usize,
    pub order: usize,
    pub star: StarSource,
    pub seed: u64,
    pub degree_bound: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Star(StarProduct),
    Module(ModuleDeformation),
    Equivalence(Equivalence),
    /// A λ-series of operators, e.g. a commutant element or a `⋆′` product.
    Series(Arc<Space>, Series<DiffOp>),
    Config(Config),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Star(_) => "star",
            Document::Module(_) => "module",
            Document::Equivalence(_) => "equivalence",
            Document::Series(..) => "series",
            Document::Config(_) => "config",
        }
    }
}

fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn exps(m: &Monomial) -> Value {
    json!(m.exps())
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!([rational(c), exps(m)])).collect())
}

pub fn op_json(d: &DiffOp) -> Value {
    Value::Array(d.terms().map(|(i, c)| json!([poly_json(c), exps(&i.x), exps(&i.y)])).collect())
}

fn cochain_json<V>(c: &MultiDiff<V>, value: impl Fn(&V) -> Value) -> Value
where
    V: fdq::hochschild::CochainValue,
{
    Value::Array(
        c.terms().map(|(alphas, v)| json!([Value::Array(alphas.iter().map(exps).collect()), value(v)])).collect(),
    )
}

fn header(out: &mut String, kind: &str, n: usize, k: usize, order: usize) {
    out.push_str(&format!("{VERSION}\nkind {kind}\nvars x:{n} y:{k}\nlambda {order}\n"));
}

fn body(out: &mut String, tag: &str, r: usize, v: &Value) {
    out.push_str(&format!("{tag} {r} {v}\n"));
}

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Star(star) => {
            let s = star.space();
            header(&mut out, "star", s.n(), s.k(), star.order());
            for (r, c) in star.coeffs().iter().enumerate() {
                body(&mut out, "C", r, &cochain_json(c, poly_json));
            }
        }
        Document::Module(rho) => {
            let s = rho.space();
            header(&mut out, "module", s.n(), s.k(), rho.order());
            for (r, c) in rho.coeffs().iter().enumerate() {
                body(&mut out, "rho", r, &cochain_json(c, op_json));
            }
        }
        Document::Equivalence(t) => {
            let s = t.space();
            header(&mut out, "equivalence", s.n(), s.k(), t.order());
            for (r, d) in t.coeffs().iter().enumerate() {
                body(&mut out, "T", r, &op_json(d));
            }
        }
        Document::Series(s, series) => {
            header(&mut out, "series", s.n(), s.k(), series.order());
            for (r, d) in series.coeffs().iter().enumerate() {
                body(&mut out, "D", r, &op_json(d));
            }
        }
        Document::Config(cfg) => {
            header(&mut out, "config", cfg.n, cfg.k, cfg.order);
            match &cfg.star {
                StarSource::Moyal(pi) => {
                    let rows: Vec<Value> = pi.iter().map(|row| Value::Array(row.iter().map(rational).collect())).collect();
                    out.push_str(&format!("moyal {}\n", Value::Array(rows)));
                }
                StarSource::File(path) => out.push_str(&format!("star-file {path}\n")),
            }
            out.push_str(&format!("seed {}\ndegree-bound {}\n", cfg.seed, cfg.degree_bound));
        }
    }
    out
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_rational(v: &Value) -> Result<Rational, CliError> {
    let s = v.as_str().ok_or_else(|| bad(format!("expected a rational string, got {v}")))?;
    Rational::from_str(s).map_err(|_| bad(format!("malformed rational {s:?}")))
}

fn parse_exps(v: &Value, len: usize) -> Result<Monomial, CliError> {
    let arr = v.as_array().ok_or_else(|| bad(format!("expected a multi-index, got {v}")))?;
    if arr.len() != len {
        return Err(bad(format!("multi-index {v} should have {len} entries")));
    }
    let e: Option<Vec<u32>> = arr.iter().map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok())).collect();
    Ok(Monomial::from_vec(e.ok_or_else(|| bad(format!("malformed multi-index {v}")))?))
}

fn list(v: &Value) -> Result<&Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| bad(format!("expected a list, got {v}")))
}

fn pair(v: &Value, len: usize) -> Result<&[Value], CliError> {
    let arr = list(v)?;
    if arr.len() != len {
        return Err(bad(format!("expected {len} entries in {v}")));
    }
    Ok(arr)
}

pub fn parse_poly_json(ctx: &Arc<VarContext>, v: &Value) -> Result<Poly, CliError> {
    let mut terms = Vec::new();
    for t in list(v)? {
        let t = pair(t, 2)?;
        terms.push((parse_exps(&t[1], ctx.nvars())?, parse_rational(&t[0])?));
    }
    Ok(Poly::from_terms(ctx, terms))
}

pub fn parse_op_json(space: &Arc<Space>, v: &Value) -> Result<DiffOp, CliError> {
    let mut d = DiffOp::zero(space);
    for t in list(v)? {
        let t = pair(t, 3)?;
        let idx = OpIndex::new(parse_exps(&t[1], space.n())?, parse_exps(&t[2], space.k())?);
        d.add_term(idx, parse_poly_json(space.total(), &t[0])?);
    }
    Ok(d)
}

fn parse_cochain<V: fdq::hochschild::CochainValue>(
    space: &Arc<Space>,
    arity: usize,
    v: &Value,
    value: impl Fn(&Value) -> Result<V, CliError>,
) -> Result<MultiDiff<V>, CliError> {
    let mut c = MultiDiff::zero(space, arity);
    for t in list(v)? {
        let t = pair(t, 2)?;
        let alphas: Vec<Monomial> = list(&t[0])?.iter().map(|a| parse_exps(a, space.n())).collect::<Result<_, _>>()?;
        if alphas.len() != arity {
            return Err(bad(format!("expected {arity} argument multi-indices in {}", t[0])));
        }
        c.add_term(alphas, value(&t[1])?);
    }
    Ok(c)
}

struct Header {
    kind: String,
    n: usize,
    k: usize,
    order: usize,
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Header, CliError> {
    let mut next = |what: &str| lines.next().map(|(_, l)| l).ok_or_else(|| bad(format!("missing {what} line")));
    let version = next("version")?;
    if version != VERSION {
        return Err(bad(format!("unsupported format version {version:?}, expected {VERSION}")));
    }
    let kind = next("kind")?.strip_prefix("kind ").ok_or_else(|| bad("expected `kind <name>`"))?.to_string();
    let vars = next("vars")?;
    let (n, k) = vars
        .strip_prefix("vars x:")
        .and_then(|rest| rest.split_once(" y:"))
        .and_then(|(n, k)| Some((n.parse().ok()?, k.parse().ok()?)))
        .ok_or_else(|| bad(format!("expected `vars x:<n> y:<k>`, got {vars:?}")))?;
    let order = next("lambda")?
        .strip_prefix("lambda ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad("expected `lambda <N>`"))?;
    Ok(Header { kind, n, k, order })
}

fn parse_body_line(line: &str, lineno: usize, tag: &str, r: usize) -> Result<Value, CliError> {
    let mut parts = line.splitn(3, ' ');
    let (t, idx, rest) = (parts.next(), parts.next(), parts.next());
    if t != Some(tag) || idx.and_then(|i| i.parse::<usize>().ok()) != Some(r) {
        return Err(bad(format!("line {lineno}: expected `{tag} {r} ...`")));
    }
    serde_json::from_str(rest.unwrap_or("")).map_err(|e| bad(format!("line {lineno}: {e}")))
}

pub fn deserialize(text: &str) -> Result<Document, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let h = parse_header(&mut lines)?;
    let space = Space::new(h.n, h.k).map_err(|e| bad(e.to_string()))?;
    let mut values = Vec::new();
    let tag = match h.kind.as_str() {
        "star" => "C",
        "module" => "rho",
        "equivalence" => "T",
        "series" => "D",
        "config" => return parse_config(&h, lines).map(Document::Config),
        other => return Err(bad(format!("unknown object kind {other:?}"))),
    };
    for (r, (lineno, line)) in lines.enumerate() {
        values.push(parse_body_line(line, lineno, tag, r)?);
    }
    if values.len() != h.order + 1 {
        return Err(bad(format!("expected {} body lines for lambda {}, found {}", h.order + 1, h.order, values.len())));
    }
    let lib = |e: fdq::Error| bad(e.to_string());
    Ok(match tag {
        "C" => {
            let cs: Vec<BaseCochain> = values
                .iter()
                .map(|v| parse_cochain(&space, 2, v, |p| parse_poly_json(space.base(), p)))
                .collect::<Result<_, _>>()?;
            Document::Star(StarProduct::new(&space, cs).map_err(lib)?)
        }
        "rho" => {
            let rhos: Vec<Cochain> =
                values.iter().map(|v| parse_cochain(&space, 1, v, |d| parse_op_json(&space, d))).collect::<Result<_, _>>()?;
            Document::Module(ModuleDeformation::new(&space, rhos).map_err(lib)?)
        }
        "T" => {
            let ts: Vec<DiffOp> = values.iter().map(|v| parse_op_json(&space, v)).collect::<Result<_, _>>()?;
            Document::Equivalence(Equivalence::new(&space, ts).map_err(lib)?)
        }
        _ => {
            let ds: Vec<DiffOp> = values.iter().map(|v| parse_op_json(&space, v)).collect::<Result<_, _>>()?;
            Document::Series(space, Series::new(ds))
        }
    })
}

fn parse_config<'a>(h: &Header, lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Config, CliError> {
    if h.order < 1 {
        return Err(bad("configuration needs lambda >= 1"));
    }
    let mut cfg = Config { n: h.n, k: h.k, order: h.order, star: StarSource::Moyal(Vec::new()), seed: 0, degree_bound: 3 };
    let mut star = None;
    for (lineno, line) in lines {
        let (key, rest) = line.split_once(' ').ok_or_else(|| bad(format!("line {lineno}: expected `key value`")))?;
        match key {
            "moyal" => {
                let v: Value = serde_json::from_str(rest).map_err(|e| bad(format!("line {lineno}: {e}")))?;
                let rows = list(&v)?
                    .iter()
                    .map(|row| list(row)?.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                star = Some(StarSource::Moyal(rows));
            }
            "star-file" => star = Some(StarSource::File(rest.to_string())),
            "seed" => cfg.seed = rest.parse().map_err(|_| bad(format!("line {lineno}: bad seed")))?,
            "degree-bound" => {
                cfg.degree_bound = rest.parse().map_err(|_| bad(format!("line {lineno}: bad degree bound")))?
            }
            other => return Err(bad(format!("line {lineno}: unknown configuration key {other:?}"))),
        }
    }
    cfg.star = star.ok_or_else(|| bad("configuration names no star product (`moyal` or `star-file`)"))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fdq::deform::moyal;
    use fdq::ring::int;

    fn pi() -> Vec<Vec<Rational>> {
        vec![vec![int(0), int(1)], vec![int(-1), int(0)]]
    }

    #[test]
    fn star_round_trip() {
        let s = Space::new(2, 1).unwrap();
        let doc = Document::Star(moyal(&s, &pi(), 2).unwrap());
        let text = serialize(&doc);
        assert!(text.starts_with("fdq/1\nkind star\nvars x:2 y:1\nlambda 2\n"));
        assert!(text.contains(r#"[[[1,0],[0,1]],[["1/2",[0,0]]]]"#));
        assert_eq!(deserialize(&text).unwrap(), doc);
        assert_eq!(serialize(&deserialize(&text).unwrap()), text);
    }

    #[test]
    fn single_term_poly() {
        let s = Space::new(1, 1).unwrap();
        let p = &Poly::var(s.total(), 0) * &Poly::var(s.total(), 1);
        assert_eq!(poly_json(&p).to_string(), r#"[["1",[1,1]]]"#);
        assert_eq!(parse_poly_json(s.total(), &poly_json(&p)).unwrap(), p);
    }

    #[test]
    fn term_order_does_not_matter() {
        let s = Space::new(2, 1).unwrap();
        let a = DiffOp::dy(&s, 0).left_mul(&s.y(0));
        let b = DiffOp::dx(&s, 1).left_mul(&s.x(0));
        let m = |x: u32| Monomial::from_vec(vec![x, 0]);
        let c1 = Cochain::from_terms(&s, 1, [(vec![m(1)], a.clone()), (vec![m(0)], b.clone())]);
        let mut c2 = Cochain::zero(&s, 1);
        c2.add_term(vec![m(0)], b.add(&a));
        c2.add_term(vec![m(1)], a.clone());
        c2.add_term(vec![m(0)], a.neg());
        let rho = |c: Cochain| {
            Document::Module(ModuleDeformation::new(&s, vec![Cochain::multiplication(&s), c]).unwrap())
        };
        assert_eq!(serialize(&rho(c1)), serialize(&rho(c2)));
    }

    #[test]
    fn config_round_trip_and_errors() {
        let cfg = Config { n: 2, k: 1, order: 3, star: StarSource::Moyal(pi()), seed: 7, degree_bound: 3 };
        let text = serialize(&Document::Config(cfg.clone()));
        assert_eq!(deserialize(&text).unwrap(), Document::Config(cfg));
        assert!(deserialize("fdq/2\nkind star\n").is_err());
        assert!(deserialize("fdq/1\nkind nonsense\nvars x:1 y:0\nlambda 0\n").is_err());
        assert!(deserialize("fdq/1\nkind series\nvars x:1 y:0\nlambda 0\nD 0 [[\n").is_err());
    }
}
