//! Linear deterministic Z interference channel.
//!
//! Signals are bit vectors over levels, level 1 being the weakest (just above
//! the noise floor). The direct links carry `m` levels, the cross link from
//! transmitter 2 to receiver 1 carries `n` levels, and `q = max(m, n)`.
//! Receiver-side alignment:
//!
//! ```text
//! y1[l] = x1[l] ^ x2[l + (q - n)]   for l in 1..=q   (x1[l] = 0 for l > m)
//! y2[l] = x2[l + (q - m)]           for l in 1..=m
//! ```
//!
//! Receiver 2 never hears transmitter 1.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, ZicError};

/// Hard ceiling imposed by the one-word representation.
pub const MAX_LEVELS: u32 = 64;

/// Default bound on `q` for configs built with [`make_config`].
pub const DEFAULT_LEVEL_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DetConfig {
    m: u32,
    n: u32,
    c: u32,
}

/// Builds a config, rejecting negative inputs and `q` above [`DEFAULT_LEVEL_CAP`].
pub fn make_config(m: i64, n: i64, c: i64) -> Result<DetConfig> {
    DetConfig::with_level_cap(m, n, c, DEFAULT_LEVEL_CAP)
}

impl DetConfig {
    pub fn with_level_cap(m: i64, n: i64, c: i64, cap: u32) -> Result<Self> {
        if m < 0 || n < 0 || c < 0 {
            return Err(invalid(format!(
                "m, n, C must be nonnegative (got {m}, {n}, {c})"
            )));
        }
        let cap = cap.min(MAX_LEVELS);
        let q = m.max(n);
        if q > i64::from(cap) {
            return Err(invalid(format!("q = {q} exceeds the level cap {cap}")));
        }
        let c = u32::try_from(c).map_err(|_| invalid("C does not fit in 32 bits"))?;
        Ok(Self {
            m: m as u32,
            n: n as u32,
            c,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Cooperative-link bits per channel use.
    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn q(&self) -> u32 {
        self.m.max(self.n)
    }

    /// `n / m`, defined only for `m > 0`.
    pub fn alpha(&self) -> Option<Ratio<i64>> {
        (self.m > 0).then(|| Ratio::new(i64::from(self.n), i64::from(self.m)))
    }

    pub fn with_c(&self, c: u32) -> Self {
        Self { c, ..*self }
    }
}

impl fmt::Display for DetConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, C={})", self.m, self.n, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    WeakModerate,
    High,
    VeryHigh,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::WeakModerate => "Weak",
            Regime::High => "High",
            Regime::VeryHigh => "VeryHigh",
        })
    }
}

pub fn regime(cfg: &DetConfig) -> Result<Regime> {
    classify(cfg.m, cfg.n)
}

/// Regime of raw level counts, without the level cap of [`DetConfig`].
pub fn classify(m: u32, n: u32) -> Result<Regime> {
    let (m, n) = (u64::from(m), u64::from(n));
    if m == 0 {
        return Err(ZicError::UndefinedAlpha);
    }
    Ok(if n <= m {
        Regime::WeakModerate
    } else if n < 2 * m {
        Regime::High
    } else {
        Regime::VeryHigh
    })
}

/// Fixed-length bit vector, levels numbered from 1 at the bottom.
///
/// Also used for message, cooperative, and random bit strings, where "level"
/// is just the bit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LevelVector {
    len: u32,
    bits: u64,
}

fn mask(len: u32) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl LevelVector {
    pub fn zeros(len: u32) -> Result<Self> {
        Self::from_word(len, 0)
    }

    /// Wraps a word whose bit `i` is level `i + 1`.
    pub fn from_word(len: u32, bits: u64) -> Result<Self> {
        if len > MAX_LEVELS {
            return Err(invalid(format!("length {len} exceeds {MAX_LEVELS}")));
        }
        if bits & !mask(len) != 0 {
            return Err(invalid(format!("bits set above declared length {len}")));
        }
        Ok(Self { len, bits })
    }

    /// Parses a string written top level first, e.g. `"10100"` has level 5 and
    /// level 3 set.
    pub fn parse_top_first(s: &str) -> Result<Self> {
        let len = u32::try_from(s.len()).map_err(|_| invalid("string too long"))?;
        let mut bits = 0u64;
        for (i, ch) in s.chars().rev().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(invalid(format!("'{other}' is not a bit"))),
            }
        }
        Self::from_word(len, bits)
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, level: u32) -> Result<bool> {
        self.check_level(level)?;
        Ok(self.bits >> (level - 1) & 1 == 1)
    }

    pub fn set(&mut self, level: u32, value: bool) -> Result<()> {
        self.check_level(level)?;
        if value {
            self.bits |= 1 << (level - 1);
        } else {
            self.bits &= !(1 << (level - 1));
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(invalid(format!(
                "length mismatch: {} vs {}",
                self.len, other.len
            )));
        }
        Ok(Self {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    fn check_level(&self, level: u32) -> Result<()> {
        if level == 0 || level > self.len {
            return Err(invalid(format!(
                "level {level} outside [1:{}]",
                self.len
            )));
        }
        Ok(())
    }
}

impl fmt::Display for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for level in (1..=self.len).rev() {
            f.write_str(if self.bits >> (level - 1) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Output level `l` takes input level `l + k`; zeros enter at the top.
pub fn downshift(v: &LevelVector, k: u32) -> Result<LevelVector> {
    if k > v.len {
        return Err(invalid(format!("shift {k} exceeds length {}", v.len)));
    }
    let bits = if k >= 64 { 0 } else { v.bits >> k };
    Ok(LevelVector { len: v.len, bits })
}

/// Applies the channel law; returns `(y1, y2)` with lengths `q` and `m`.
pub fn transmit(
    cfg: &DetConfig,
    x1: &LevelVector,
    x2: &LevelVector,
) -> Result<(LevelVector, LevelVector)> {
    let (m, n, q) = (cfg.m, cfg.n, cfg.q());
    if x1.len != m {
        return Err(invalid(format!("x1 has length {}, expected m = {m}", x1.len)));
    }
    if x2.len != q {
        return Err(invalid(format!("x2 has length {}, expected q = {q}", x2.len)));
    }
    let cross = downshift(x2, q - n)?.bits;
    let y1 = LevelVector {
        len: q,
        bits: x1.bits ^ cross,
    };
    let y2 = LevelVector {
        len: m,
        bits: downshift(x2, q - m)?.bits & mask(m),
    };
    Ok((y1, y2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(s: &str) -> LevelVector {
        LevelVector::parse_top_first(s).unwrap()
    }

    #[test]
    fn config_examples() {
        assert_eq!(make_config(5, 3, 1).unwrap().q(), 5);
        assert_eq!(make_config(4, 5, 1).unwrap().q(), 5);
        assert_eq!(make_config(0, 0, 0).unwrap().q(), 0);
        assert!(make_config(-1, 3, 1).is_err());
        assert!(make_config(5, 3, -2).is_err());
        assert!(make_config(17, 3, 0).is_err());
        assert!(DetConfig::with_level_cap(40, 3, 0, 64).is_ok());
    }

    #[test]
    fn alpha_needs_m() {
        assert_eq!(make_config(0, 2, 0).unwrap().alpha(), None);
        assert_eq!(
            make_config(4, 6, 0).unwrap().alpha(),
            Some(Ratio::new(3, 2))
        );
    }

    #[test]
    fn regime_examples() {
        let r = |m, n| regime(&make_config(m, n, 0).unwrap());
        assert_eq!(r(5, 3).unwrap(), Regime::WeakModerate);
        assert_eq!(r(4, 5).unwrap(), Regime::High);
        assert_eq!(r(2, 4).unwrap(), Regime::VeryHigh);
        assert_eq!(r(3, 0).unwrap(), Regime::WeakModerate);
        assert_eq!(r(3, 3).unwrap(), Regime::WeakModerate);
        assert_eq!(r(3, 5).unwrap(), Regime::High);
        assert!(matches!(r(0, 3), Err(ZicError::UndefinedAlpha)));
    }

    #[test]
    fn level_indexing() {
        let mut v = LevelVector::zeros(4).unwrap();
        v.set(4, true).unwrap();
        assert_eq!(v.to_string(), "1000");
        assert!(v.get(4).unwrap());
        assert!(v.get(0).is_err());
        assert!(v.get(5).is_err());
        assert!(v.set(5, true).is_err());
        assert!(LevelVector::from_word(3, 0b1000).is_err());
        assert!(LevelVector::parse_top_first("10a").is_err());
    }

    #[test]
    fn downshift_examples() {
        let v = lv("10100");
        assert_eq!(downshift(&v, 0).unwrap(), v);
        assert!(downshift(&v, 5).unwrap().is_zero());
        assert_eq!(downshift(&v, 2).unwrap(), lv("00101"));
        assert!(downshift(&v, 6).is_err());
    }

    #[test]
    fn transmit_zero_shift() {
        let cfg = make_config(4, 4, 0).unwrap();
        let (x1, x2) = (lv("1100"), lv("1010"));
        let (y1, y2) = transmit(&cfg, &x1, &x2).unwrap();
        assert_eq!(y1, lv("0110"));
        assert_eq!(y2, x2);
    }

    #[test]
    fn transmit_no_cross_link() {
        let cfg = make_config(4, 0, 0).unwrap();
        let (x1, x2) = (lv("1011"), lv("1111"));
        let (y1, _) = transmit(&cfg, &x1, &x2).unwrap();
        assert_eq!(y1, x1);
    }

    #[test]
    fn transmit_weak_top_level() {
        // x2 level 5 lands on y1 level 3 (shift q - n = 2) and y2 level 5.
        let cfg = make_config(5, 3, 1).unwrap();
        let (y1, y2) = transmit(&cfg, &lv("00000"), &lv("10000")).unwrap();
        assert_eq!(y1, lv("00100"));
        assert_eq!(y2, lv("10000"));
    }

    #[test]
    fn transmit_high_bottom_levels_invisible_at_rx2() {
        // m = 4, n = 5: x2 level 1 reaches y1 level 1 but not receiver 2.
        let cfg = make_config(4, 5, 1).unwrap();
        let (y1, y2) = transmit(&cfg, &lv("0000"), &lv("00001")).unwrap();
        assert_eq!(y1, lv("00001"));
        assert!(y2.is_zero());
        let (y1, y2) = transmit(&cfg, &lv("0000"), &lv("10000")).unwrap();
        assert_eq!(y1, lv("10000"));
        assert_eq!(y2, lv("1000"));
    }

    #[test]
    fn transmit_rejects_lengths() {
        let cfg = make_config(5, 3, 1).unwrap();
        assert!(transmit(&cfg, &lv("0000"), &lv("00000")).is_err());
        assert!(transmit(&cfg, &lv("00000"), &lv("000")).is_err());
    }
}
