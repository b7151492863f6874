//! Game shape, configuration coding, scores, and observation lines.
//!
//! A configuration assigns one of Q colors to each of N players and is
//! stored both as a digit sequence and as its base-Q value (first player's
//! digit most significant). Player i's *score* is the base-Q reading of the
//! other players' digits; the Q configurations sharing a score at player i
//! form that player's observation *line* through the configuration.

use crate::error::{Error, Result};

/// A configuration code: the base-Q value of the digit sequence.
pub type Code = u32;

/// Number of players and colors of one game instance.
///
/// Shapes are validated on construction: at least two players, at least two
/// colors, and `Q^N` small enough for codes to stay in native integers
/// (`Q^N <= 2^30`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameShape {
    players: usize,
    colors: usize,
    num_codes: u32,
}

/// Largest universe a shape may span.
pub const MAX_CODES: u64 = 1 << 30;

impl GameShape {
    pub fn new(players: usize, colors: usize) -> Result<Self> {
        if players < 2 {
            return Err(Error::InvalidShape {
                reason: format!("need at least 2 players, got {players}"),
            });
        }
        if colors < 2 {
            return Err(Error::InvalidShape {
                reason: format!("need at least 2 colors, got {colors}"),
            });
        }
        let mut num_codes: u64 = 1;
        for _ in 0..players {
            num_codes = num_codes.saturating_mul(colors as u64);
            if num_codes > MAX_CODES {
                return Err(Error::InvalidShape {
                    reason: format!("{colors}^{players} configurations exceed the 2^30 code limit"),
                });
            }
        }
        Ok(GameShape {
            players,
            colors,
            num_codes: num_codes as u32,
        })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    /// `Q^N`, the number of configurations.
    pub fn num_codes(&self) -> u32 {
        self.num_codes
    }

    /// `Q^(N-1)`, the number of distinct scores per player.
    pub fn num_scores(&self) -> u32 {
        self.num_codes / self.colors as u32
    }

    /// Place value of player `i`'s digit (0-based player index).
    pub(crate) fn stride(&self, player: usize) -> u32 {
        (self.colors as u32).pow((self.players - 1 - player) as u32)
    }

    pub(crate) fn check_code(&self, code: Code) -> Result<()> {
        if code >= self.num_codes {
            return Err(Error::CodeOutOfRange {
                code: code as u64,
                limit: self.num_codes as u64,
            });
        }
        Ok(())
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.players {
            return Err(Error::PlayerOutOfRange {
                player: player + 1,
                players: self.players,
            });
        }
        Ok(())
    }
}

/// One hat assignment, dual-represented as digits and code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatConfig {
    digits: Vec<u8>,
    code: Code,
}

impl HatConfig {
    pub fn from_digits(shape: &GameShape, digits: &[u8]) -> Result<Self> {
        let code = encode_config(shape, digits)?;
        Ok(HatConfig {
            digits: digits.to_vec(),
            code,
        })
    }

    pub fn from_code(shape: &GameShape, code: Code) -> Result<Self> {
        let digits = decode_config(shape, code)?;
        Ok(HatConfig { digits, code })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn code(&self) -> Code {
        self.code
    }

    /// Digit of player `i` (0-based).
    pub fn digit(&self, player: usize) -> u8 {
        self.digits[player]
    }
}

/// Base-Q value of a digit sequence, first digit most significant.
pub fn encode_config(shape: &GameShape, digits: &[u8]) -> Result<Code> {
    if digits.len() != shape.players {
        return Err(Error::InvalidShape {
            reason: format!("expected {} digits, got {}", shape.players, digits.len()),
        });
    }
    let mut code: u32 = 0;
    for (pos, &d) in digits.iter().enumerate() {
        if d as usize >= shape.colors {
            return Err(Error::DigitOutOfRange {
                position: pos + 1,
                digit: d as u64,
                colors: shape.colors,
            });
        }
        code = code * shape.colors as u32 + d as u32;
    }
    Ok(code)
}

/// Inverse of [`encode_config`].
pub fn decode_config(shape: &GameShape, code: Code) -> Result<Vec<u8>> {
    shape.check_code(code)?;
    let q = shape.colors as u32;
    let mut digits = vec![0u8; shape.players];
    let mut rest = code;
    for pos in (0..shape.players).rev() {
        digits[pos] = (rest % q) as u8;
        rest /= q;
    }
    Ok(digits)
}

/// What player `i` (0-based) observes in `code`: the base-Q value of the
/// digit sequence with position `i` deleted.
pub fn score(shape: &GameShape, player: usize, code: Code) -> Result<u32> {
    shape.check_player(player)?;
    shape.check_code(code)?;
    let stride = shape.stride(player);
    let q = shape.colors as u32;
    let high = code / (stride * q);
    let low = code % stride;
    Ok(high * stride + low)
}

/// The Q configurations agreeing with `code` everywhere except possibly at
/// player `i`'s digit, in increasing code order.
pub fn line(shape: &GameShape, player: usize, code: Code) -> Result<Vec<Code>> {
    shape.check_player(player)?;
    shape.check_code(code)?;
    let stride = shape.stride(player);
    let q = shape.colors as u32;
    let digit = (code / stride) % q;
    let base = code - digit * stride;
    Ok((0..q).map(|c| base + c * stride).collect())
}

/// Relabel the colors of `code` digit-wise: digit `d` becomes `perm[d]`.
pub fn permute_colors(shape: &GameShape, code: Code, perm: &[u8]) -> Result<Code> {
    if perm.len() != shape.colors {
        return Err(Error::InvalidShape {
            reason: format!("color permutation must have {} entries", shape.colors),
        });
    }
    let digits = decode_config(shape, code)?;
    let mapped: Vec<u8> = digits.iter().map(|&d| perm[d as usize]).collect();
    encode_config(shape, &mapped)
}

/// Reorder the players of `code`: new position `i` takes the digit of old
/// position `perm[i]`.
pub fn permute_players(shape: &GameShape, code: Code, perm: &[usize]) -> Result<Code> {
    if perm.len() != shape.players {
        return Err(Error::InvalidShape {
            reason: format!("player permutation must have {} entries", shape.players),
        });
    }
    let digits = decode_config(shape, code)?;
    let mapped: Vec<u8> = perm.iter().map(|&p| digits[p]).collect();
    encode_config(shape, &mapped)
}

/// Precomputed scores and line bitmasks for every (player, code) pair.
///
/// The enumeration engine does on the order of 10^9 line-membership tests;
/// lines are therefore frozen once per shape as `u64` masks, which limits
/// the table to universes of at most 64 configurations. Larger shapes use
/// the arithmetic [`score()`] and [`line()`] directly.
pub struct ScoreLineTable {
    shape: GameShape,
    scores: Vec<u32>,
    masks: Vec<u64>,
    members: Vec<Code>,
}

impl ScoreLineTable {
    pub fn new(shape: &GameShape) -> Result<Self> {
        let m = shape.num_codes as usize;
        if m > 64 {
            return Err(Error::Capacity(format!(
                "line table holds masks for at most 64 configurations, shape has {m}"
            )));
        }
        let n = shape.players;
        let q = shape.colors;
        let mut scores = vec![0u32; n * m];
        let mut masks = vec![0u64; n * m];
        let mut members = vec![0 as Code; n * m * q];
        for player in 0..n {
            for code in 0..m as u32 {
                let idx = player * m + code as usize;
                scores[idx] = score(shape, player, code).expect("checked shape");
                let codes = line(shape, player, code).expect("checked shape");
                let mut mask = 0u64;
                for (j, &c) in codes.iter().enumerate() {
                    mask |= 1 << c;
                    members[idx * q + j] = c;
                }
                masks[idx] = mask;
            }
        }
        Ok(ScoreLineTable {
            shape: *shape,
            scores,
            masks,
            members,
        })
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn score(&self, player: usize, code: Code) -> u32 {
        self.scores[player * self.shape.num_codes as usize + code as usize]
    }

    pub fn line_mask(&self, player: usize, code: Code) -> u64 {
        self.masks[player * self.shape.num_codes as usize + code as usize]
    }

    pub fn line_codes(&self, player: usize, code: Code) -> &[Code] {
        let q = self.shape.colors;
        let idx = player * self.shape.num_codes as usize + code as usize;
        &self.members[idx * q..(idx + 1) * q]
    }
}
