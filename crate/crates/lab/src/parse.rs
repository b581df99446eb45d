//! Text forms of the library's inputs.
//!
//! * rationals: `a/b` or `a`
//! * prime lists: `2,3,7` (empty string for none)
//! * characteristic sequences: `default=<int|inf>; p:k, ...`
//! * matrices: rows separated by `;`, entries by `,` (`2,1;1,1`)
//! * polynomials: coefficients from the highest degree down (`1,0,-1` is `x² − 1`)

use std::str::FromStr;

use num_bigint::BigInt;
use solenoid_core::{CharacteristicSequence, Height, IntPolynomial, IntegerMatrix, ReducedRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

type Result<T> = std::result::Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ParseError(msg.into()))
}

fn number<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| ParseError(format!("bad {what} `{}`", s.trim())))
}

pub fn rational(s: &str) -> Result<ReducedRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (number::<BigInt>(n, "numerator")?, number::<BigInt>(d, "denominator")?),
        None => (number::<BigInt>(s, "rational")?, BigInt::from(1)),
    };
    ReducedRational::new(n, d).map_err(|e| ParseError(e.to_string()))
}

/// Comma-separated values; blank entries are skipped.
pub fn list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| number(t, what))
        .collect()
}

pub fn height(s: &str) -> Result<Height> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(Height::Infinite),
        t => Ok(Height::Finite(number(t, "height")?)),
    }
}

pub fn chi(s: &str) -> Result<CharacteristicSequence> {
    let mut default = None;
    let mut exceptions = Vec::new();
    for token in s.split([';', ',']).map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(v) = token.strip_prefix("default=") {
            default = Some(height(v)?);
        } else if let Some((p, k)) = token.split_once(':') {
            exceptions.push((number::<u64>(p, "prime")?, height(k)?));
        } else {
            return err(format!("bad characteristic entry `{token}`"));
        }
    }
    let default = default.ok_or_else(|| ParseError("characteristic needs `default=`".into()))?;
    CharacteristicSequence::new(default, exceptions).map_err(|e| ParseError(e.to_string()))
}

pub fn matrix(s: &str) -> Result<IntegerMatrix> {
    let rows: Vec<Vec<BigInt>> = s
        .split(';')
        .map(|row| list::<BigInt>(row, "matrix entry"))
        .collect::<Result<_>>()?;
    IntegerMatrix::from_rows(rows).map_err(|e| ParseError(e.to_string()))
}

pub fn matrix_to_string(m: &IntegerMatrix) -> String {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn polynomial(s: &str) -> Result<IntPolynomial> {
    let mut c: Vec<BigInt> = list(s, "coefficient")?;
    if c.is_empty() {
        return err("polynomial needs at least one coefficient");
    }
    c.reverse();
    Ok(IntPolynomial::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(rational("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(rational(" 2 ").unwrap().to_string(), "2");
        assert!(rational("1/0").is_err());
        assert!(rational("x").is_err());
    }

    #[test]
    fn characteristic_sequences() {
        let c = chi("default=1;2:0").unwrap();
        assert_eq!(c.height(2), Height::Finite(0));
        assert_eq!(c.height(5), Height::Finite(1));
        let c = chi("default=inf; 3:0, 5:2").unwrap();
        assert_eq!(c.to_string(), "default=inf; 3:0, 5:2");
        assert!(chi("2:0").is_err());
        assert!(chi("default=0; 4:1").is_err());
    }

    #[test]
    fn matrices_and_polys() {
        let m = matrix("3,10;1,3").unwrap();
        assert_eq!(matrix_to_string(&m), "3,10;1,3");
        assert!(matrix("1,2;3").is_err());
        assert_eq!(polynomial("1,0,-1").unwrap(), IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(list::<u64>("", "prime").unwrap(), Vec::<u64>::new());
    }
}
