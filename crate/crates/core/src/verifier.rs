//! Exact verification of decodability, perfect secrecy, and the cooperation
//! budget of a [`LinearScheme`].
//!
//! Two independent routes are provided. The algebraic route writes each
//! receiver output as a GF(2) linear map of `(w1, w2, rand)` and decides
//! everything from ranks. The exhaustive route enumerates every input
//! realization, builds exact histograms, and computes `I(W2; y1)` as a dyadic
//! rational. [`verify`] runs both and refuses to report if they disagree.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::detmodel::{transmit, DetConfig, LevelVector};
use crate::error::{invalid, Result, ZicError};
use crate::gf2::{rank, span_contains};
use crate::schemes::{encode, LinearScheme};

pub type Rational = Ratio<i64>;

pub const DEFAULT_ENUM_CAP: u32 = 24;
/// Beyond this the dyadic denominators stop fitting comfortably in `i64`.
pub const MAX_ENUM_CAP: u32 = 40;

// Receiver outputs up to this many levels are tallied in flat arrays.
const DENSE_LEVELS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifierConfig {
    /// Largest `k1 + k2 + r` that is enumerated exhaustively.
    pub enum_cap: u32,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        Self {
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

impl VerifierConfig {
    pub fn with_cap(enum_cap: u32) -> Result<Self> {
        if enum_cap > MAX_ENUM_CAP {
            return Err(invalid(format!(
                "enumeration cap {enum_cap} exceeds {MAX_ENUM_CAP}"
            )));
        }
        Ok(Self { enum_cap })
    }
}

/// Columns of the receivers' linear maps, one word per input bit.
#[derive(Debug, Clone)]
struct ReceiverMaps {
    q: u32,
    m: u32,
    y1_w1: Vec<u64>,
    y1_w2: Vec<u64>,
    y1_rand: Vec<u64>,
    y2_w1: Vec<u64>,
    y2_w2: Vec<u64>,
    y2_rand: Vec<u64>,
}

#[derive(Clone, Copy)]
enum Input {
    W1,
    W2,
    Rand,
}

fn receiver_maps(cfg: &DetConfig, s: &LinearScheme) -> Result<ReceiverMaps> {
    s.check_dims(cfg)?;
    let zero = |len: usize| LevelVector::zeros(len as u32);
    let unit = |len: usize, j: usize| LevelVector::from_word(len as u32, 1 << j);
    let column = |which: Input, j: usize| -> Result<(u64, u64)> {
        let (w1, w2, r) = match which {
            Input::W1 => (unit(s.k1(), j)?, zero(s.k2())?, zero(s.r())?),
            Input::W2 => (zero(s.k1())?, unit(s.k2(), j)?, zero(s.r())?),
            Input::Rand => (zero(s.k1())?, zero(s.k2())?, unit(s.r(), j)?),
        };
        let enc = encode(s, &w1, &w2, &r)?;
        let (y1, y2) = transmit(cfg, &enc.x1, &enc.x2)?;
        Ok((y1.word(), y2.word()))
    };
    let split = |which: Input, count: usize| -> Result<(Vec<u64>, Vec<u64>)> {
        let cols = (0..count)
            .map(|j| column(which, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(cols.into_iter().unzip())
    };
    let (y1_w1, y2_w1) = split(Input::W1, s.k1())?;
    let (y1_w2, y2_w2) = split(Input::W2, s.k2())?;
    let (y1_rand, y2_rand) = split(Input::Rand, s.r())?;
    Ok(ReceiverMaps {
        q: cfg.q(),
        m: cfg.m(),
        y1_w1,
        y1_w2,
        y1_rand,
        y2_w1,
        y2_w2,
        y2_rand,
    })
}

/// `target` is recoverable from `target * a + nuisance * b` for every `b` iff
/// the target columns are independent and meet the nuisance span only at 0.
fn separates(target: &[u64], nuisance: &[u64]) -> bool {
    let mut all = target.to_vec();
    all.extend_from_slice(nuisance);
    rank(&all) - rank(nuisance) == target.len()
}

/// Algebraic decodability of `w1` at receiver 1 and `w2` at receiver 2.
pub fn verify_decodable(cfg: &DetConfig, s: &LinearScheme) -> Result<(bool, bool)> {
    let maps = receiver_maps(cfg, s)?;
    let nuisance1: Vec<u64> = [&maps.y1_w2[..], &maps.y1_rand[..]].concat();
    let nuisance2: Vec<u64> = [&maps.y2_w1[..], &maps.y2_rand[..]].concat();
    Ok((
        separates(&maps.y1_w1, &nuisance1),
        separates(&maps.y2_w2, &nuisance2),
    ))
}

/// `colspace(M2) ⊆ colspace([M1 | M_rand])` for the map into `y1`.
pub fn verify_secrecy_algebraic(cfg: &DetConfig, s: &LinearScheme) -> Result<bool> {
    let maps = receiver_maps(cfg, s)?;
    let cover: Vec<u64> = [&maps.y1_w1[..], &maps.y1_rand[..]].concat();
    Ok(span_contains(&cover, &maps.y1_w2))
}

pub fn verify_coop_budget(cfg: &DetConfig, s: &LinearScheme) -> bool {
    s.coop_bits() <= cfg.c() as usize
}

pub fn rate(s: &LinearScheme) -> (usize, usize) {
    (s.k1(), s.k2())
}

/// `I(W2; y1)` in bits by exhaustive enumeration.
pub fn verify_secrecy_exhaustive(
    cfg: &DetConfig,
    s: &LinearScheme,
    vcfg: VerifierConfig,
) -> Result<Rational> {
    Ok(exhaustive_scan(cfg, s, vcfg)?.mutual_info)
}

/// Decodability decided by enumeration: no two realizations that differ in
/// `w_i` may produce the same `y_i`.
pub fn verify_decodable_exhaustive(
    cfg: &DetConfig,
    s: &LinearScheme,
    vcfg: VerifierConfig,
) -> Result<(bool, bool)> {
    let scan = exhaustive_scan(cfg, s, vcfg)?;
    Ok((scan.decodable1, scan.decodable2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveScan {
    pub mutual_info: Rational,
    pub decodable1: bool,
    pub decodable2: bool,
}

/// Counts per receiver output, remembering which keys were touched.
enum Tally {
    Dense { counts: Vec<u64>, touched: Vec<u64> },
    Sparse(HashMap<u64, u64>),
}

impl Tally {
    fn new(levels: u32) -> Self {
        if levels <= DENSE_LEVELS {
            Tally::Dense {
                counts: vec![0; 1 << levels],
                touched: Vec::new(),
            }
        } else {
            Tally::Sparse(HashMap::new())
        }
    }

    fn add(&mut self, key: u64, count: u64) {
        match self {
            Tally::Dense { counts, touched } => {
                let slot = &mut counts[key as usize];
                if *slot == 0 {
                    touched.push(key);
                }
                *slot += count;
            }
            Tally::Sparse(h) => *h.entry(key).or_default() += count,
        }
    }

    /// Empties the tally, returning `(key, count)` pairs.
    fn drain(&mut self) -> Vec<(u64, u64)> {
        match self {
            Tally::Dense { counts, touched } => touched
                .drain(..)
                .map(|k| (k, std::mem::take(&mut counts[k as usize])))
                .collect(),
            Tally::Sparse(h) => h.drain().collect(),
        }
    }
}

/// First message value seen for each receiver output.
enum Owners {
    Dense(Vec<u64>),
    Sparse(HashMap<u64, u64>),
}

impl Owners {
    fn new(levels: u32) -> Self {
        if levels <= DENSE_LEVELS {
            Owners::Dense(vec![0; 1 << levels])
        } else {
            Owners::Sparse(HashMap::new())
        }
    }

    /// Records `owner` for `key`; false on a clash with a different owner.
    fn claim(&mut self, key: u64, owner: u64) -> bool {
        let tag = owner + 1;
        let slot = match self {
            Owners::Dense(v) => &mut v[key as usize],
            Owners::Sparse(h) => h.entry(key).or_insert(0),
        };
        if *slot == 0 {
            *slot = tag;
            true
        } else {
            *slot == tag
        }
    }

    fn merge(&mut self, other: Owners) -> bool {
        let pairs: Vec<(u64, u64)> = match other {
            Owners::Dense(v) => v
                .into_iter()
                .enumerate()
                .filter(|&(_, t)| t > 0)
                .map(|(k, t)| (k as u64, t))
                .collect(),
            Owners::Sparse(h) => h.into_iter().collect(),
        };
        pairs
            .into_iter()
            .fold(true, |ok, (k, tag)| self.claim(k, tag - 1) && ok)
    }
}

struct Accumulator {
    joint: Tally,
    scratch: Tally,
    // sum over w2 and y1 of c * (log2 N - log2 c), N = 2^(k1 + r)
    conditional: u128,
    owners1: Owners,
    owners2: Owners,
    ok1: bool,
    ok2: bool,
    non_dyadic: Option<u64>,
}

impl Accumulator {
    fn new(q: u32, m: u32) -> Self {
        Self {
            joint: Tally::new(q),
            scratch: Tally::new(q),
            conditional: 0,
            owners1: Owners::new(q),
            owners2: Owners::new(m),
            ok1: true,
            ok2: true,
            non_dyadic: None,
        }
    }

    fn merge(mut self, mut other: Accumulator) -> Accumulator {
        for (k, c) in other.joint.drain() {
            self.joint.add(k, c);
        }
        self.conditional += other.conditional;
        let ok1 = self.owners1.merge(other.owners1);
        let ok2 = self.owners2.merge(other.owners2);
        self.ok1 = self.ok1 && other.ok1 && ok1;
        self.ok2 = self.ok2 && other.ok2 && ok2;
        self.non_dyadic = self.non_dyadic.or(other.non_dyadic);
        self
    }
}

fn exact_log2(count: u64) -> Result<u32> {
    if count.is_power_of_two() {
        Ok(count.trailing_zeros())
    } else {
        Err(ZicError::NonDyadic(count))
    }
}

/// Enumerates all `2^(k1 + k2 + r)` input realizations.
///
/// Work is split over values of `w2`; each worker keeps its own tallies and
/// they are merged at the end.
pub fn exhaustive_scan(
    cfg: &DetConfig,
    s: &LinearScheme,
    vcfg: VerifierConfig,
) -> Result<ExhaustiveScan> {
    let bits = s.input_bits() as u32;
    if bits > vcfg.enum_cap.min(MAX_ENUM_CAP) {
        return Err(ZicError::EnumerationCap {
            bits,
            cap: vcfg.enum_cap,
        });
    }
    let maps = receiver_maps(cfg, s)?;
    let inner_bits = (s.k1() + s.r()) as u32;
    // Inner loop walks (w1, rand) in Gray-code order, w1 in the low bits.
    let inner1: Vec<u64> = [&maps.y1_w1[..], &maps.y1_rand[..]].concat();
    let inner2: Vec<u64> = [&maps.y2_w1[..], &maps.y2_rand[..]].concat();
    let w1_mask = (1u64 << s.k1()) - 1;
    let combine = |cols: &[u64], w: u64| {
        cols.iter()
            .enumerate()
            .filter(|(j, _)| w >> j & 1 == 1)
            .fold(0u64, |a, (_, c)| a ^ c)
    };

    let acc = (0..1u64 << s.k2())
        .into_par_iter()
        .fold(
            || Accumulator::new(maps.q, maps.m),
            |mut acc, w2| {
                let mut y1 = combine(&maps.y1_w2, w2);
                let mut y2 = combine(&maps.y2_w2, w2);
                let mut gray = 0u64;
                for step in 0..1u64 << inner_bits {
                    if step > 0 {
                        let j = step.trailing_zeros() as usize;
                        gray ^= 1 << j;
                        y1 ^= inner1[j];
                        y2 ^= inner2[j];
                    }
                    acc.scratch.add(y1, 1);
                    acc.joint.add(y1, 1);
                    acc.ok1 &= acc.owners1.claim(y1, gray & w1_mask);
                    acc.ok2 &= acc.owners2.claim(y2, w2);
                }
                for (_, c) in acc.scratch.drain() {
                    match exact_log2(c) {
                        Ok(lc) => acc.conditional += u128::from(c) * u128::from(inner_bits - lc),
                        Err(_) => acc.non_dyadic = Some(c),
                    }
                }
                acc
            },
        )
        .reduce(|| Accumulator::new(maps.q, maps.m), Accumulator::merge);

    if let Some(c) = acc.non_dyadic {
        return Err(ZicError::NonDyadic(c));
    }
    let mut joint = acc.joint;
    let mut unconditional: u128 = 0;
    for (_, c) in joint.drain() {
        unconditional += u128::from(c) * u128::from(bits - exact_log2(c)?);
    }
    let numer = i64::try_from(unconditional as i128 - acc.conditional as i128)
        .map_err(|_| invalid("mutual information numerator overflow"))?;
    Ok(ExhaustiveScan {
        mutual_info: Rational::new(numer, 1i64 << bits),
        decodable1: acc.ok1,
        decodable2: acc.ok2,
    })
}

/// Outcome of all checks for one scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub decodable1: bool,
    pub decodable2: bool,
    /// `I(W2; y1)` in bits; `None` when the scheme exceeds the enumeration cap.
    pub mutual_info_bits: Option<Rational>,
    pub secrecy_algebraic: bool,
    pub coop_budget_ok: bool,
    pub rate_pair: (usize, usize),
    pub warning: Option<String>,
}

impl VerificationReport {
    pub fn is_green(&self) -> bool {
        self.decodable1
            && self.decodable2
            && self.secrecy_algebraic
            && self.coop_budget_ok
            && self.mutual_info_bits.is_none_or(|mi| mi == Rational::from(0))
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Mi {
            exact: String,
            bits: f64,
        }
        let mi = self.mutual_info_bits.map(|r| Mi {
            exact: format!("{}/{}", r.numer(), r.denom()),
            bits: *r.numer() as f64 / *r.denom() as f64,
        });
        let mut st = serializer.serialize_struct("VerificationReport", 7)?;
        st.serialize_field("decodable1", &self.decodable1)?;
        st.serialize_field("decodable2", &self.decodable2)?;
        st.serialize_field("mutualInfoBits", &mi)?;
        st.serialize_field("secrecyAlgebraic", &self.secrecy_algebraic)?;
        st.serialize_field("coopBudgetOk", &self.coop_budget_ok)?;
        st.serialize_field("ratePair", &[self.rate_pair.0, self.rate_pair.1])?;
        st.serialize_field("warning", &self.warning)?;
        st.end()
    }
}

/// Runs every check. Exhaustive results, when available, must agree with the
/// algebraic ones or an [`ZicError::OracleMismatch`] is returned.
pub fn verify(
    cfg: &DetConfig,
    s: &LinearScheme,
    vcfg: VerifierConfig,
) -> Result<VerificationReport> {
    let (decodable1, decodable2) = verify_decodable(cfg, s)?;
    let secrecy_algebraic = verify_secrecy_algebraic(cfg, s)?;
    let mut report = VerificationReport {
        decodable1,
        decodable2,
        mutual_info_bits: None,
        secrecy_algebraic,
        coop_budget_ok: verify_coop_budget(cfg, s),
        rate_pair: rate(s),
        warning: None,
    };
    match exhaustive_scan(cfg, s, vcfg) {
        Ok(scan) => {
            if (scan.decodable1, scan.decodable2) != (decodable1, decodable2) {
                return Err(ZicError::OracleMismatch(format!(
                    "decodability: rank test ({decodable1}, {decodable2}) vs enumeration ({}, {})",
                    scan.decodable1, scan.decodable2
                )));
            }
            if (scan.mutual_info == Rational::from(0)) != secrecy_algebraic {
                return Err(ZicError::OracleMismatch(format!(
                    "secrecy: rank test {secrecy_algebraic} vs I(W2;y1) = {}",
                    scan.mutual_info
                )));
            }
            report.mutual_info_bits = Some(scan.mutual_info);
        }
        Err(ZicError::EnumerationCap { bits, cap }) => {
            report.warning = Some(format!(
                "{bits} input bits exceed the enumeration cap {cap}; algebraic checks only"
            ));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::detmodel::make_config;
    use crate::gf2::BitMatrix;

    fn matrix(rows: usize, cols: usize, bits: &[&[u8]]) -> BitMatrix {
        let owned: Vec<Vec<u8>> = bits.iter().map(|r| r.to_vec()).collect();
        BitMatrix::from_rows(rows, cols, &owned).unwrap()
    }

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows, cols).unwrap();
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(0.4) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Tx2 puts one data bit on level 2 of a (2, 1) channel, where it lands on
    /// receiver 1's level 1 with nothing to mask it.
    fn leaking_scheme() -> (DetConfig, LinearScheme) {
        let cfg = make_config(2, 1, 0).unwrap();
        let s = LinearScheme::new(
            BitMatrix::zeros(0, 1).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            matrix(2, 1, &[&[0], &[1]]),
        )
        .unwrap();
        (cfg, s)
    }

    /// `I(W2; y1)` from plain floating-point entropies over every input.
    fn naive_mutual_info(cfg: &DetConfig, s: &LinearScheme) -> f64 {
        let word = |len: usize, v: u64| LevelVector::from_word(len as u32, v).unwrap();
        let mut joint: HashMap<(u64, u64), f64> = HashMap::new();
        let mut marginal: HashMap<u64, f64> = HashMap::new();
        let total = (1u64 << s.input_bits()) as f64;
        for w1 in 0..1u64 << s.k1() {
            for w2 in 0..1u64 << s.k2() {
                for r in 0..1u64 << s.r() {
                    let e = encode(s, &word(s.k1(), w1), &word(s.k2(), w2), &word(s.r(), r)).unwrap();
                    let (y1, _) = transmit(cfg, &e.x1, &e.x2).unwrap();
                    *joint.entry((w2, y1.word())).or_default() += 1.0 / total;
                    *marginal.entry(y1.word()).or_default() += 1.0 / total;
                }
            }
        }
        let p_w2 = 1.0 / (1u64 << s.k2()) as f64;
        joint
            .iter()
            .map(|(&(_, y), &p)| p * (p / (p_w2 * marginal[&y])).log2())
            .sum()
    }

    #[test]
    fn leaking_scheme_is_caught() {
        let (cfg, s) = leaking_scheme();
        let vcfg = VerifierConfig::default();
        assert_eq!(verify_secrecy_exhaustive(&cfg, &s, vcfg).unwrap(), Rational::from(1));
        assert!(!verify_secrecy_algebraic(&cfg, &s).unwrap());
        let report = verify(&cfg, &s, vcfg).unwrap();
        assert!(!report.is_green());
        assert_eq!(report.mutual_info_bits, Some(Rational::from(1)));
    }

    #[test]
    fn jamming_closes_the_leak() {
        let cfg = make_config(2, 1, 0).unwrap();
        let s = LinearScheme::new(
            BitMatrix::zeros(0, 1).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            matrix(2, 1, &[&[1], &[0]]),
            matrix(2, 1, &[&[0], &[1]]),
        )
        .unwrap();
        let report = verify(&cfg, &s, VerifierConfig::default()).unwrap();
        assert!(report.is_green(), "{report:?}");
    }

    #[test]
    fn silent_second_user_leaks_nothing() {
        let cfg = make_config(3, 2, 0).unwrap();
        let s = LinearScheme::new(
            BitMatrix::zeros(0, 0).unwrap(),
            matrix(3, 2, &[&[1, 0], &[0, 1], &[0, 0]]),
            BitMatrix::zeros(3, 0).unwrap(),
            BitMatrix::zeros(3, 0).unwrap(),
            BitMatrix::zeros(3, 0).unwrap(),
        )
        .unwrap();
        let vcfg = VerifierConfig::default();
        assert_eq!(verify_secrecy_exhaustive(&cfg, &s, vcfg).unwrap(), Rational::from(0));
        assert!(verify_secrecy_algebraic(&cfg, &s).unwrap());
    }

    #[test]
    fn colliding_data_bits_are_not_decodable() {
        let cfg = make_config(2, 1, 0).unwrap();
        let s = LinearScheme::new(
            BitMatrix::zeros(0, 0).unwrap(),
            matrix(2, 2, &[&[1, 1], &[0, 0]]),
            BitMatrix::zeros(2, 0).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
        )
        .unwrap();
        assert_eq!(verify_decodable(&cfg, &s).unwrap(), (false, true));
        let vcfg = VerifierConfig::default();
        assert_eq!(verify_decodable_exhaustive(&cfg, &s, vcfg).unwrap(), (false, true));
    }

    #[test]
    fn selector_over_budget_fails() {
        let cfg = make_config(2, 1, 1).unwrap();
        let s = LinearScheme::new(
            matrix(2, 2, &[&[1, 0], &[0, 1]]),
            BitMatrix::zeros(2, 0).unwrap(),
            BitMatrix::zeros(2, 2).unwrap(),
            BitMatrix::zeros(2, 0).unwrap(),
            matrix(2, 2, &[&[1, 0], &[0, 1]]),
        )
        .unwrap();
        assert!(!verify_coop_budget(&cfg, &s));
        assert!(verify_coop_budget(&cfg.with_c(2), &s));
    }

    #[test]
    fn enumeration_cap() {
        assert!(VerifierConfig::with_cap(MAX_ENUM_CAP + 1).is_err());
        let (cfg, s) = leaking_scheme();
        let tight = VerifierConfig::with_cap(0).unwrap();
        assert!(matches!(
            exhaustive_scan(&cfg, &s, tight),
            Err(ZicError::EnumerationCap { bits: 1, cap: 0 })
        ));
        let report = verify(&cfg, &s, tight).unwrap();
        assert!(report.warning.is_some());
        assert_eq!(report.mutual_info_bits, None);
        assert!(!report.is_green());
    }

    #[test]
    fn report_json_shape() {
        let (cfg, s) = leaking_scheme();
        let report = verify(&cfg, &s, VerifierConfig::default()).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["mutualInfoBits"]["exact"], "1/1");
        assert_eq!(v["mutualInfoBits"]["bits"], 1.0);
        assert_eq!(v["ratePair"], serde_json::json!([0, 1]));
        assert_eq!(v["secrecyAlgebraic"], false);
    }

    #[test]
    fn exact_mutual_information_matches_float_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..=4usize);
            let n = rng.gen_range(0..=5usize);
            let cfg = make_config(m as i64, n as i64, 2).unwrap();
            let q = cfg.q() as usize;
            let (k1, k2, r) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
            let shared = rng.gen_range(0..=2);
            let s = LinearScheme::new(
                random_matrix(&mut rng, shared, k2),
                random_matrix(&mut rng, m, k1),
                random_matrix(&mut rng, m, shared),
                random_matrix(&mut rng, m, r),
                random_matrix(&mut rng, q, k2),
            )
            .unwrap();
            let scan = exhaustive_scan(&cfg, &s, VerifierConfig::default()).unwrap();
            let exact = *scan.mutual_info.numer() as f64 / *scan.mutual_info.denom() as f64;
            assert!((exact - naive_mutual_info(&cfg, &s)).abs() < 1e-9);
            assert_eq!(verify_decodable(&cfg, &s).unwrap(), (scan.decodable1, scan.decodable2));
            assert_eq!(verify_secrecy_algebraic(&cfg, &s).unwrap(), scan.mutual_info == Rational::from(0));
        }
    }
}
