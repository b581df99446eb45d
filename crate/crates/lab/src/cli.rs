use clap::{Args, Parser, Subcommand};

use crate::emit::Format;

#[derive(Debug, Parser)]
#[command(
    name = "solenoid-lab",
    version,
    about = "Periodic points, zeta functions, entropy and conjugacy for solenoid and toral automorphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `x ↦ r·x` on a subgroup of ℚ given by its characteristic or by the
/// primes it inverts.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Multiplier `a/b`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    /// Finite set of inverted primes, e.g. "2,3".
    #[arg(long, conflicts_with_all = ["s_cofinite", "chi"])]
    pub s_set: Option<String>,
    /// Invert every prime except these, e.g. "3,5" (empty for ℚ).
    #[arg(long, conflicts_with = "chi")]
    pub s_cofinite: Option<String>,
    /// Characteristic sequence, e.g. "default=0; 2:inf, 3:1".
    #[arg(long)]
    pub chi: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Auto,
    Endo,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// F(n) for n = 1..N (or a single n).
    FixedPoints {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, conflicts_with = "upto")]
        n: Option<u64>,
        #[arg(long, default_value_t = 10)]
        upto: u64,
        #[command(flatten)]
        out: Output,
    },
    /// F, O, Mertens and π columns up to N.
    Orbits {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 20)]
        upto: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Mertens sums at decades up to N with slope estimates.
    Mertens {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 100_000)]
        upto: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Orbit totals π(N) at decades up to N, with a polylog fit for cofinite sets.
    Pi {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Zeta series coefficients from a system or from fixed-point counts.
    Zeta {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "r")]
        coeffs: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long)]
        s_set: Option<String>,
        #[arg(long)]
        s_cofinite: Option<String>,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        #[arg(long, default_value_t = 10)]
        upto: u64,
        /// Also list multipliers with the same zeta function, with this
        /// much extra height.
        #[arg(long)]
        class_slack: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Rational zeta function of a toral automorphism.
    ToralZeta {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        upto: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Whether a sequence can count periodic points of a map or group automorphism.
    Realizable {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Also search automorphisms of abelian groups of this order for the
        /// sequence as a repeating pattern.
        #[arg(long)]
        order: Option<u64>,
        /// Check the sequence against |nᵏ − mᵏ| for "n,m" and recover S.
        #[arg(long, allow_hyphen_values = true)]
        es: Option<String>,
        #[arg(long, default_value_t = 1000)]
        prime_bound: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Logarithmic Mahler measure of an integer polynomial.
    Mahler {
        /// Coefficients from the highest degree down.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        out: Output,
    },
    /// Entropy of x ↦ r·x, or of a toral automorphism against its growth.
    Entropy {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "matrix")]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "r")]
        matrix: Option<String>,
        #[arg(long, default_value_t = 40)]
        upto: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Polynomials of small degree and height with small positive measure.
    LehmerScan {
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        height: u64,
        #[arg(long, default_value_t = 0.25)]
        threshold: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Conjugacy of two integer matrices over ℤ[1/p : p inverted].
    Conjugacy {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "")]
        invert: String,
        #[arg(long, default_value_t = 30)]
        bound: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Conjugacy classes over ℤ ⊂ ℤ[1/p₁] ⊂ ... ⊂ ℚ.
    Poset {
        /// Matrices separated by `|`.
        #[arg(long, allow_hyphen_values = true)]
        matrices: String,
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        #[arg(long, default_value_t = 20)]
        bound: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Partial sums of the orbit Dirichlet series of a cofinite system.
    Dirichlet {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value = "3")]
        s: String,
        #[arg(long, default_value_t = 100_000)]
        upto: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Product of solenoid maps whose fixed points track targets θ₂, θ₃, ...
    GrowthConstruct {
        /// Targets θ₂, θ₃, ... as integers.
        #[arg(long, conflicts_with = "square_exponent")]
        theta: Option<String>,
        /// Use θₙ = 2^{n²} for n = 2..=N.
        #[arg(long)]
        square_exponent: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Truncated log-zeta on circles approaching the radius of convergence.
    BoundaryScan {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value = "0.45,0.49")]
        radii: String,
        /// Number of equally spaced angles.
        #[arg(long, default_value_t = 16)]
        angles: usize,
        #[arg(long, default_value_t = 200)]
        truncation: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Canonical form, infinite-height primes and type comparison.
    ClassifyType {
        #[arg(long)]
        chi: String,
        /// Second sequence to compare types with.
        #[arg(long)]
        other: Option<String>,
        /// Rational to test for membership.
        #[arg(long, allow_hyphen_values = true)]
        contains: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}
