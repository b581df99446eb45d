//! Zeta functions, realizability, entropy and Mahler measure.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use solenoid_core::mahler::{
    abramov_entropy, is_cyclotomic_product, lehmer_candidates, lehmer_measure, mahler_measure,
    toral_entropy_check,
};
use solenoid_core::orbits::fixed_point_sequence;
use solenoid_core::zeta::{
    england_smyth_check, group_realizable_bruteforce, rational_zeta_integer_map,
    realizable_as_map, s_set_recover, toral_char_poly, toral_fixed_points, zeta_class_enumerate,
    zeta_series, EnglandSmythVerdict, MapVerdict, RationalFunctionOverZ,
};
use solenoid_core::{IntPolynomial, PrimeSetKind};

use super::{build_system, describe, LabError, Outcome};
use crate::cli::SystemArgs;
use crate::emit::{float, int, rational, text, uint, Report, Table};
use crate::parse;

fn poly_coeffs(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

fn closed_form(m: &mut Map<String, Value>, f: &RationalFunctionOverZ) {
    m.insert("zeta".into(), text(f));
    m.insert("num_coeffs".into(), poly_coeffs(f.numerator()));
    m.insert("den_coeffs".into(), poly_coeffs(f.denominator()));
}

pub fn zeta(
    coeffs: Option<&str>,
    system: Option<&SystemArgs>,
    upto: u64,
    class_slack: Option<u64>,
) -> Outcome {
    let mut m = Map::new();
    let mut closed = None;
    let f: Vec<BigInt> = match (coeffs, system) {
        (Some(c), _) => parse::list(c, "count")?,
        (None, Some(args)) => {
            let sys = build_system(args)?;
            m.insert("system".into(), describe(&sys));
            let s = sys.infinite_height_set();
            if s.kind() == PrimeSetKind::Finite && s.listed().is_empty() && sys.r().is_integer() {
                if let Some(a) = sys.r().numer().to_i64() {
                    closed = Some(rational_zeta_integer_map(a)?);
                }
            }
            if let Some(slack) = class_slack {
                let class = zeta_class_enumerate(&sys, upto, slack)?;
                m.insert(
                    "zeta_class".into(),
                    json!({
                        "members": class.members.iter().map(text).collect::<Vec<_>>(),
                        "omega_count": uint(&class.omega_count),
                    }),
                );
            }
            fixed_point_sequence(&sys, upto)?
                .into_iter()
                .map(BigInt::from)
                .collect()
        }
        (None, None) => return Err(LabError::Usage("give --coeffs or a system with --r".into())),
    };
    let series = zeta_series(&f);
    if let Some(z) = &closed {
        if z.expand(series.order()) != series {
            return Err(solenoid_core::Error::Invariant(
                "closed form disagrees with the zeta series".into(),
            )
            .into());
        }
        closed_form(&mut m, z);
    }
    m.insert("F".into(), Value::Array(f.iter().map(int).collect()));
    m.insert("coeffs".into(), Value::Array(series.coeffs().iter().map(rational).collect()));
    Ok(Report::json(m))
}

pub fn toral_zeta(matrix: &str, upto: Option<usize>) -> Outcome {
    let a = parse::matrix(matrix)?;
    let chi = toral_char_poly(&a)?;
    let d = a.rows() as u32;
    let upto = upto.unwrap_or((1usize << (d + 2)) + 8);
    let z = solenoid_core::zeta::toral_zeta(&a, upto)?;
    let mut m = Map::new();
    m.insert("matrix".into(), text(parse::matrix_to_string(&a)));
    m.insert("char_poly".into(), text(&chi));
    closed_form(&mut m, &z);
    let f: Vec<BigUint> = (1..=upto as u64)
        .map(|n| toral_fixed_points(&a, n))
        .collect::<Result<_, _>>()?;
    m.insert("F".into(), Value::Array(f.iter().map(uint).collect()));
    Ok(Report::json(m))
}

pub fn realizable(coeffs: &str, order: Option<u64>, es: Option<&str>, prime_bound: u64) -> Outcome {
    let a: Vec<BigInt> = parse::list(coeffs, "count")?;
    if a.is_empty() {
        return Err(LabError::Usage("--coeffs is empty".into()));
    }
    let mut m = Map::new();
    let mut status = 0;
    match realizable_as_map(&a) {
        MapVerdict::Ok => {
            m.insert("map_realizable".into(), json!(true));
        }
        MapVerdict::Fail { n, sum } => {
            m.insert("map_realizable".into(), json!(false));
            m.insert("fail_at".into(), json!(n));
            m.insert("sum".into(), int(&sum));
            status = 4;
        }
    }
    if let Some(order) = order {
        let pattern: Vec<u64> = a
            .iter()
            .map(|x| x.to_u64())
            .collect::<Option<_>>()
            .ok_or_else(|| LabError::Usage("group patterns need small positive counts".into()))?;
        let witness = group_realizable_bruteforce(&pattern, order)?;
        let w = witness.map(|w| {
            Value::Array(
                w.components
                    .iter()
                    .map(|c| json!({"prime": c.prime, "moduli": c.moduli, "images": c.images}))
                    .collect(),
            )
        });
        m.insert("group".into(), json!({"order": order, "witness": w}));
    }
    if let Some(es) = es {
        let nm: Vec<BigInt> = parse::list(es, "base")?;
        let [n, mm] = <[BigInt; 2]>::try_from(nm)
            .map_err(|_| LabError::Usage("--es takes two integers n,m".into()))?;
        let verdict = england_smyth_check(&a, &n, &mm, a.len())?;
        let v = match &verdict {
            EnglandSmythVerdict::Ok => json!("ok"),
            EnglandSmythVerdict::NotDivisor { k } => json!({"not_divisor": k}),
            EnglandSmythVerdict::SharedFactor { k, l, gcd } => {
                json!({"shared_factor": {"k": k, "l": l, "gcd": int(gcd)}})
            }
        };
        m.insert("england_smyth".into(), v);
        if verdict.is_ok() {
            let s = s_set_recover(&a, &n, &mm, prime_bound, a.len())?;
            m.insert("S".into(), text(&s));
        }
    }
    let mut r = Report::json(m);
    r.status = status;
    Ok(r)
}

pub fn mahler(poly: &str) -> Outcome {
    let f = parse::polynomial(poly)?;
    let measure = mahler_measure(&f)?;
    let mut m = Map::new();
    m.insert("poly".into(), text(&f));
    m.insert("m".into(), float(measure));
    m.insert("M".into(), float(measure.exp()));
    m.insert("cyclotomic_product".into(), json!(is_cyclotomic_product(&f)?));
    Ok(Report::json(m))
}

pub fn entropy(r: Option<&str>, matrix: Option<&str>, upto: u64) -> Outcome {
    let mut m = Map::new();
    match (r, matrix) {
        (Some(r), _) => {
            let e = abramov_entropy(&parse::rational(r)?)?;
            m.insert("h".into(), float(e.value));
            m.insert("exact_arg".into(), uint(&e.exact_arg));
        }
        (None, Some(a)) => {
            let t = toral_entropy_check(&parse::matrix(a)?, upto)?;
            m.insert("mahler".into(), float(t.mahler));
            m.insert("growth".into(), float(t.growth));
            m.insert("gap".into(), float(t.gap));
        }
        (None, None) => return Err(LabError::Usage("give --r or --matrix".into())),
    }
    Ok(Report::json(m))
}

pub fn lehmer_scan(degree: usize, height: u64, threshold: f64) -> Outcome {
    let candidates = lehmer_candidates(degree, height)?;
    let measures: Vec<Option<f64>> = candidates
        .par_iter()
        .map(|f| lehmer_measure(f, threshold))
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(&["polynomial", "measure"]);
    for (f, m) in candidates.iter().zip(measures) {
        if let Some(m) = m {
            t.push(vec![text(f), float(m)]);
        }
    }
    let mut m = Map::new();
    m.insert("degree".into(), json!(degree));
    m.insert("height".into(), json!(height));
    m.insert("threshold".into(), float(threshold));
    m.insert("candidates".into(), json!(candidates.len()));
    Ok(Report::table(m, t))
}

pub fn classify_type(chi: &str, other: Option<&str>, contains: Option<&str>) -> Outcome {
    let c = parse::chi(chi)?;
    let mut m = Map::new();
    m.insert("canonical".into(), text(&c));
    let s = c.infinite_height_set();
    let kind = match s.kind() {
        PrimeSetKind::Finite => "finite",
        PrimeSetKind::Cofinite => "cofinite",
    };
    m.insert("infinite_height_set".into(), text(&s));
    m.insert("kind".into(), text(kind));
    if let Some(o) = other {
        let o = parse::chi(o)?;
        m.insert("other".into(), text(&o));
        m.insert("same_type".into(), json!(c.same_type(&o)));
    }
    if let Some(q) = contains {
        let q = parse::rational(q)?;
        m.insert("contains".into(), json!(c.contains(&q.to_big_rational())));
    }
    Ok(Report::json(m))
}
