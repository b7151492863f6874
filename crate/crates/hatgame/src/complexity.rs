//! Search-space sizes of the competing solution methods, in exact
//! arbitrary-precision integers.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::integer::binomial;
use num::traits::{One, ToPrimitive};

/// Candidate counts for solving an N-player Q-color game by brute force
/// over all strategy tables, by the reduced strategy scan, and by the
/// adequate-set method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityReport {
    pub players: u64,
    pub colors: u64,
    pub das: u64,
    /// `(Q+1)^(N * Q^(N-1))`: every player picks pass-or-color per score.
    pub brute_force: BigInt,
    /// `(Q+1)^(N * (Q^(N-1) - 1))`: one observable score per player is
    /// forced, shrinking each player's table by one column.
    pub reduced: BigInt,
    /// `C(Q^N, das)`: subsets the adequate-set scan examines.
    pub adequate: BigInt,
}

/// Computes the report. Unlike game shapes, a single player is allowed
/// here; the counting formulas degrade gracefully.
pub fn complexity_report(players: u64, colors: u64, das: u64) -> Result<ComplexityReport> {
    if players < 1 {
        return Err(Error::InvalidShape {
            reason: "need at least 1 player".into(),
        });
    }
    if colors < 2 {
        return Err(Error::InvalidShape {
            reason: format!("need at least 2 colors, got {colors}"),
        });
    }
    let universe =
        BigInt::from(colors).pow(u32::try_from(players).map_err(|_| Error::InvalidShape {
            reason: "player count too large".into(),
        })?);
    if das < 1 || BigInt::from(das) > universe {
        return Err(Error::DasOutOfRange {
            das: das as usize,
            max: universe.to_usize().unwrap_or(usize::MAX),
        });
    }
    let scores_per_player = BigInt::from(colors).pow(players as u32 - 1);
    let brute_exp = (BigInt::from(players) * &scores_per_player)
        .to_u32()
        .ok_or_else(|| Error::Capacity("brute-force exponent exceeds u32".into()))?;
    let reduced_exp = (BigInt::from(players) * (&scores_per_player - BigInt::one()))
        .to_u32()
        .ok_or_else(|| Error::Capacity("reduced exponent exceeds u32".into()))?;
    let base = BigInt::from(colors + 1);
    Ok(ComplexityReport {
        players,
        colors,
        das,
        brute_force: base.pow(brute_exp),
        reduced: base.pow(reduced_exp),
        adequate: binomial(universe, BigInt::from(das)),
    })
}

/// Scientific notation with six significant figures, e.g. `1.80144E+16`.
/// Values below 10 are returned as-is.
pub fn format_scientific_6(value: &BigInt) -> String {
    let digits = value.to_string();
    if digits.starts_with('-') {
        return format!("-{}", format_scientific_6(&-value.clone()));
    }
    let exponent = digits.len() - 1;
    if exponent == 0 {
        return digits;
    }
    // round the leading six digits
    let mut mantissa: u64 = digits
        .chars()
        .take(7)
        .collect::<String>()
        .parse()
        .expect("leading digits");
    let mut exp = exponent;
    if digits.len() > 6 {
        mantissa = (mantissa + 5) / 10;
        if mantissa >= 1_000_000 {
            mantissa /= 10;
            exp += 1;
        }
    } else {
        mantissa *= 10u64.pow(6 - digits.len() as u32);
    }
    let m = mantissa.to_string();
    format!("{}.{}E+{}", &m[..1], &m[1..], exp)
}
