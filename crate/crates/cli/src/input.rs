//! Parsing of `n` arguments and range specifications.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use powerconn::FactoredInteger;

use crate::CliError;

/// Largest number of values a single range may expand to.
pub const MAX_RANGE_LEN: u64 = 10_000_000;

/// A decimal or a product literal such as `2^3*3*5^2`; `n >= 2`.
pub fn parse_n(s: &str) -> Result<FactoredInteger, CliError> {
    let f: FactoredInteger = s.parse().map_err(|e: powerconn::Error| CliError::Usage(e.to_string()))?;
    if f.value() <= BigUint::one() {
        return Err(CliError::Usage(format!("n must be at least 2, got `{s}`")));
    }
    Ok(f)
}

/// Comma-separated items, each `a..b` (inclusive), `a..=b` or a single `n`.
pub fn parse_spec(spec: &str) -> Result<Vec<FactoredInteger>, CliError> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let lo = bound(lo)?;
                let hi = bound(hi)?;
                if lo < 2 || hi < lo {
                    return Err(CliError::Usage(format!("bad range `{item}`: need 2 <= a <= b")));
                }
                if hi - lo >= MAX_RANGE_LEN {
                    return Err(CliError::Limit(format!("range `{item}` has more than {MAX_RANGE_LEN} values")));
                }
                for n in lo..=hi {
                    out.push(parse_n(&n.to_string())?);
                }
            }
            None => out.push(parse_n(item)?),
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("empty specification `{spec}`")));
    }
    Ok(out)
}

fn bound(s: &str) -> Result<u64, CliError> {
    let f = parse_n(s.trim())?;
    f.value()
        .to_u64()
        .ok_or_else(|| CliError::Usage(format!("range bound `{s}` does not fit in 64 bits")))
}
