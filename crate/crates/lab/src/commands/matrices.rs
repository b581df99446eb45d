//! Conjugacy of integer matrices over rings between ℤ and ℚ.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use solenoid_core::conjugacy::{
    conjugate_over_ring, determinant_form, intertwiner_lattice, poset_build, rationally_conjugate,
    ConjugacyDecision,
};
use solenoid_core::{IntegerMatrix, PrimeSet};

use super::{LabError, Outcome};
use crate::emit::{int, text, Format, Report};
use crate::parse;

fn mat(m: &IntegerMatrix) -> Value {
    text(parse::matrix_to_string(m))
}

pub fn conjugacy(a: &str, b: &str, invert: &str, bound: u64) -> Outcome {
    let a = parse::matrix(a)?;
    let b = parse::matrix(b)?;
    let primes: Vec<u64> = parse::list(invert, "prime")?;
    let ring = PrimeSet::finite(primes.iter().copied())?;
    let decision = conjugate_over_ring(&a, &b, &ring, bound)?;
    let lat = intertwiner_lattice(&a, &b)?;
    let mut m = Map::new();
    m.insert("a".into(), mat(&a));
    m.insert("b".into(), mat(&b));
    m.insert("invert".into(), json!(primes));
    m.insert("rank".into(), json!(lat.rank()));
    m.insert("lattice".into(), Value::Array(lat.basis.iter().map(mat).collect()));
    let form = if a.rows() == 2 && lat.rank() == 2 {
        text(determinant_form(&lat)?)
    } else {
        Value::Null
    };
    m.insert("form".into(), form);
    let d = match &decision {
        ConjugacyDecision::Conjugate {
            witness,
            det,
            coords,
        } => json!({
            "kind": "conjugate",
            "witness": mat(witness),
            "det": int(det),
            "coords": coords.as_ref().map(|c| c.iter().map(int).collect::<Vec<_>>()),
        }),
        ConjugacyDecision::Obstructed {
            prime,
            modulus,
            reason,
        } => json!({"kind": "obstructed", "prime": prime, "modulus": modulus, "reason": reason}),
        ConjugacyDecision::Unknown { bound } => json!({"kind": "unknown", "bound": bound}),
    };
    m.insert("decision".into(), d);
    m.insert("rational".into(), json!(rationally_conjugate(&a, &b)?));
    Ok(Report::json(m))
}

pub fn poset(matrices: &str, primes: &str, bound: u64) -> Outcome {
    let ms: Vec<IntegerMatrix> = matrices
        .split('|')
        .map(|s| parse::matrix(s.trim()))
        .collect::<Result<_, _>>()?;
    if ms.is_empty() {
        return Err(LabError::Usage("--matrices is empty".into()));
    }
    let primes: Vec<u64> = parse::list(primes, "prime")?;
    let p = poset_build(&ms, &primes, bound)?;

    let mut dot = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for (li, level) in p.levels.iter().enumerate() {
        dot.push_str("  { rank=same;");
        for (ci, class) in level.classes.iter().enumerate() {
            let members: Vec<String> = class.iter().map(|i| i.to_string()).collect();
            let _ = write!(
                dot,
                " L{li}C{ci} [label=\"{}: {{{}}}\"];",
                level.label,
                members.join(",")
            );
        }
        dot.push_str(" }\n");
    }
    for e in &p.edges {
        let _ = writeln!(
            dot,
            "  L{}C{} -> L{}C{};",
            e.from_level,
            e.from_class,
            e.from_level + 1,
            e.to_class
        );
    }
    dot.push_str("}\n");

    let levels: Vec<Value> = p
        .levels
        .iter()
        .map(|l| {
            json!({
                "label": l.label,
                "inverted": l.inverted,
                "classes": l.classes,
                "unknown": l.unknown,
                "obstructed": l.obstructed,
            })
        })
        .collect();
    let edges: Vec<Value> = p
        .edges
        .iter()
        .map(|e| json!({"from_level": e.from_level, "from_class": e.from_class, "to_class": e.to_class}))
        .collect();
    let mut m = Map::new();
    m.insert("matrices".into(), Value::Array(ms.iter().map(mat).collect()));
    m.insert("levels".into(), Value::Array(levels));
    m.insert("edges".into(), Value::Array(edges));
    let mut r = Report::json(m);
    r.dot = Some(dot);
    r.default_format = Format::Dot;
    Ok(r)
}
