//! Commands built on periodic-point counts of a single system.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use solenoid_core::dirichlet::{
    dirichlet_partial, dirichlet_reference_3_5, growth_construction, pi_polylog_fit,
    square_exponent_targets,
};
use solenoid_core::orbits::{
    self, fixed_point_sequence, growth_estimate, mertens_terms, orbit_counts,
    orbit_profile, FixedPointCounter,
};
use solenoid_core::zeta::boundary_profile;
use solenoid_core::{PrimeSetKind, ReducedRational, SolenoidSystem};

use super::{build_system, describe, LabError, Outcome};
use crate::cli::SystemArgs;
use crate::emit::{float, text, uint, Report, Table};
use crate::parse;

fn header(sys: &SolenoidSystem) -> Result<Map<String, Value>, LabError> {
    let mut m = Map::new();
    m.insert("system".into(), describe(sys));
    m.insert("h".into(), float(FixedPointCounter::new(sys)?.entropy()));
    Ok(m)
}

/// Powers of ten below `upto`, then `upto` itself.
fn checkpoints(upto: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |x| x.checked_mul(10))
        .take_while(|&x| x < upto)
        .collect();
    out.push(upto);
    out
}

pub fn fixed_points(args: &SystemArgs, n: Option<u64>, upto: u64) -> Outcome {
    let sys = build_system(args)?;
    let summary = header(&sys)?;
    let mut t = Table::new(&["n", "F"]);
    match n {
        Some(n) => t.push(vec![json!(n), uint(&orbits::fixed_points(&sys, n)?)]),
        None => {
            for (i, f) in fixed_point_sequence(&sys, upto)?.iter().enumerate() {
                t.push(vec![json!(i + 1), uint(f)]);
            }
        }
    }
    Ok(Report::table(summary, t))
}

pub fn orbits(args: &SystemArgs, upto: u64) -> Outcome {
    let sys = build_system(args)?;
    let mut summary = header(&sys)?;
    let p = orbit_profile(&sys, upto)?;
    let mut t = Table::new(&["n", "F", "O", "M", "pi"]);
    for i in 0..p.f.len() {
        t.push(vec![json!(i + 1), uint(&p.f[i]), uint(&p.o[i]), float(p.m[i]), uint(&p.pi[i])]);
    }
    if upto >= 10 {
        let g = growth_estimate(&sys, upto)?;
        summary.insert(
            "growth".into(),
            json!({"at_N": float(g.at_n), "sup_window": float(g.sup_window), "inf_window": float(g.inf_window)}),
        );
    }
    Ok(Report::table(summary, t))
}

pub fn mertens(args: &SystemArgs, upto: usize) -> Outcome {
    let sys = build_system(args)?;
    let mut summary = header(&sys)?;
    if upto == 0 {
        return Err(LabError::Usage("--upto must be positive".into()));
    }
    let terms = mertens_terms(&sys, upto)?;
    let mut prefix = Vec::with_capacity(upto + 1);
    prefix.push(0.0);
    for t in &terms {
        prefix.push(prefix.last().copied().unwrap_or(0.0) + t);
    }
    let finite = sys.infinite_height_set().is_finite();
    let slope_at = |n: usize| -> Value {
        if finite && n >= 1000 {
            let tail: f64 = terms[n / 10..n].iter().sum();
            float(tail / std::f64::consts::LN_10)
        } else {
            Value::Null
        }
    };
    let mut t = Table::new(&["N", "M", "slope"]);
    for n in checkpoints(upto) {
        t.push(vec![json!(n), float(prefix[n]), slope_at(n)]);
    }
    summary.insert("slope".into(), slope_at(upto));
    Ok(Report::table(summary, t))
}

pub fn pi(args: &SystemArgs, upto: u64) -> Outcome {
    let sys = build_system(args)?;
    let mut summary = header(&sys)?;
    let o = orbit_counts(&sys, upto)?;
    let mut t = Table::new(&["N", "pi"]);
    let marks = checkpoints(upto as usize);
    let mut acc = BigUint::default();
    let mut next = 0;
    for (i, x) in o.iter().enumerate() {
        acc += x;
        if marks.get(next) == Some(&(i + 1)) {
            t.push(vec![json!(i + 1), uint(&acc)]);
            next += 1;
        }
    }
    if sys.infinite_height_set().kind() == PrimeSetKind::Cofinite && upto >= 10_000 {
        let fit = pi_polylog_fit(&sys, upto as usize)?;
        summary.insert(
            "polylog_fit".into(),
            json!({"K_hat": float(fit.k_hat), "C_hat": float(fit.c_hat), "K": fit.k_hat.round()}),
        );
    }
    Ok(Report::table(summary, t))
}

/// Whether the system is `x ↦ 2x` with only 3 and 5 left uninverted, the
/// case with a closed-form reference.
fn is_reference_system(sys: &SolenoidSystem) -> bool {
    let s = sys.infinite_height_set();
    s.kind() == PrimeSetKind::Cofinite
        && s.listed() == [3, 5]
        && sys.r() == &ReducedRational::from_integer(2)
}

pub fn dirichlet(args: &SystemArgs, s: &str, upto: usize) -> Outcome {
    let sys = build_system(args)?;
    let summary = header(&sys)?;
    let reference = is_reference_system(&sys);
    let mut t = Table::new(&["s", "partial", "reference", "tail_bound"]);
    for s in parse::list::<f64>(s, "exponent")? {
        let d = dirichlet_partial(&sys, s, upto)?;
        let r = if reference {
            float(dirichlet_reference_3_5(s)?)
        } else {
            Value::Null
        };
        t.push(vec![float(s), float(d.partial), r, float(d.tail_bound)]);
    }
    Ok(Report::table(summary, t))
}

pub fn growth(theta: Option<&str>, square_exponent: Option<u32>) -> Outcome {
    let targets: Vec<BigUint> = match (theta, square_exponent) {
        (Some(t), _) => parse::list(t, "target")?,
        (None, Some(n)) => square_exponent_targets(n),
        (None, None) => {
            return Err(LabError::Usage(
                "give --theta or --square-exponent".into(),
            ))
        }
    };
    let g = growth_construction(&targets)?;
    let mut m = Map::new();
    m.insert("multiplicities".into(), json!(g.multiplicities));
    m.insert(
        "components".into(),
        Value::Array(g.component_systems.iter().map(|s| text(s.infinite_height_set())).collect()),
    );
    m.insert("F".into(), Value::Array(g.f_product.iter().map(uint).collect()));
    m.insert("theta".into(), Value::Array(targets.iter().map(uint).collect()));
    m.insert("flags".into(), json!(g.sandwich));
    m.insert("all_sandwiched".into(), json!(g.all_sandwiched()));
    Ok(Report::json(m))
}

pub fn boundary_scan(args: &SystemArgs, radii: &str, angles: usize, truncation: u64) -> Outcome {
    let sys = build_system(args)?;
    let summary = header(&sys)?;
    let radii: Vec<f64> = parse::list(radii, "radius")?;
    let angles: Vec<f64> = (0..angles).map(|k| k as f64 / angles as f64).collect();
    let per_radius: Vec<_> = radii
        .par_iter()
        .map(|&r| boundary_profile(&sys, &[r], &angles, truncation))
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(&["radius", "angle", "re", "im", "magnitude"]);
    for p in per_radius.into_iter().flatten() {
        t.push(vec![
            float(p.radius),
            float(p.angle),
            float(p.re),
            float(p.im),
            float(p.magnitude),
        ]);
    }
    Ok(Report::table(summary, t))
}
