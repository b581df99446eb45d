mod algebra;
mod matrices;
mod series;

use serde_json::{Map, Value};
use solenoid_core::baer::validate_system;
use solenoid_core::{CharacteristicSequence, ErrorKind, MapMode, PrimeSet, SolenoidSystem};

use crate::cli::{Command, ModeArg, SystemArgs};
use crate::emit::{text, Report};
use crate::parse::{self, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] solenoid_core::Error),
}

impl From<ParseError> for LabError {
    fn from(e: ParseError) -> Self {
        LabError::Usage(e.0)
    }
}

impl LabError {
    pub fn status(&self) -> i32 {
        match self {
            LabError::Usage(_) => 2,
            LabError::Core(e) => match e.kind() {
                ErrorKind::Domain => 2,
                ErrorKind::Capability => 3,
                ErrorKind::Invariant => 4,
            },
        }
    }
}

pub type Outcome = Result<Report, LabError>;

pub fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::FixedPoints { system, n, upto, .. } => series::fixed_points(system, *n, *upto),
        Command::Orbits { system, upto, .. } => series::orbits(system, *upto),
        Command::Mertens { system, upto, .. } => series::mertens(system, *upto),
        Command::Pi { system, upto, .. } => series::pi(system, *upto),
        Command::Zeta {
            coeffs,
            r,
            s_set,
            s_cofinite,
            chi,
            mode,
            upto,
            class_slack,
            ..
        } => {
            let system = r.as_ref().map(|r| SystemArgs {
                r: r.clone(),
                s_set: s_set.clone(),
                s_cofinite: s_cofinite.clone(),
                chi: chi.clone(),
                mode: *mode,
            });
            algebra::zeta(coeffs.as_deref(), system.as_ref(), *upto, *class_slack)
        }
        Command::ToralZeta { matrix, upto, .. } => algebra::toral_zeta(matrix, *upto),
        Command::Realizable {
            coeffs,
            order,
            es,
            prime_bound,
            ..
        } => algebra::realizable(coeffs, *order, es.as_deref(), *prime_bound),
        Command::Mahler { poly, .. } => algebra::mahler(poly),
        Command::Entropy { r, matrix, upto, .. } => {
            algebra::entropy(r.as_deref(), matrix.as_deref(), *upto)
        }
        Command::LehmerScan {
            degree,
            height,
            threshold,
            ..
        } => algebra::lehmer_scan(*degree, *height, *threshold),
        Command::Conjugacy {
            a, b, invert, bound, ..
        } => matrices::conjugacy(a, b, invert, *bound),
        Command::Poset {
            matrices: m,
            primes,
            bound,
            ..
        } => matrices::poset(m, primes, *bound),
        Command::Dirichlet { system, s, upto, .. } => series::dirichlet(system, s, *upto),
        Command::GrowthConstruct {
            theta,
            square_exponent,
            ..
        } => series::growth(theta.as_deref(), *square_exponent),
        Command::BoundaryScan {
            system,
            radii,
            angles,
            truncation,
            ..
        } => series::boundary_scan(system, radii, *angles, *truncation),
        Command::ClassifyType {
            chi, other, contains, ..
        } => algebra::classify_type(chi, other.as_deref(), contains.as_deref()),
    }
}

pub fn build_system(args: &SystemArgs) -> Result<SolenoidSystem, LabError> {
    let r = parse::rational(&args.r)?;
    let chi = if let Some(c) = &args.chi {
        parse::chi(c)?
    } else if let Some(e) = &args.s_cofinite {
        CharacteristicSequence::ring_of(&PrimeSet::cofinite(parse::list::<u64>(e, "prime")?)?)
    } else {
        let s = args.s_set.as_deref().unwrap_or("");
        CharacteristicSequence::ring_of(&PrimeSet::finite(parse::list::<u64>(s, "prime")?)?)
    };
    let mode = match args.mode {
        ModeArg::Auto => MapMode::Automorphism,
        ModeArg::Endo => MapMode::Endomorphism,
    };
    Ok(validate_system(chi, r, mode)?)
}

pub fn describe(sys: &SolenoidSystem) -> Value {
    let mut m = Map::new();
    m.insert("r".into(), text(sys.r()));
    m.insert("chi".into(), text(sys.chi()));
    m.insert("S".into(), text(sys.infinite_height_set()));
    let mode = match sys.mode() {
        MapMode::Automorphism => "auto",
        MapMode::Endomorphism => "endo",
    };
    m.insert("mode".into(), text(mode));
    Value::Object(m)
}
