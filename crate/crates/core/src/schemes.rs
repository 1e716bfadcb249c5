//! Corner-point achievable schemes as GF(2) linear encoders.
//!
//! Transmitter 1 sends `x1 = E_data w1 ^ E_coop (S w2) ^ E_rand rand` where
//! `S` selects the cooperative bits `v21` that cross the rate-limited link,
//! and transmitter 2 sends `x2 = E2 w2`. Every corner of every regime's
//! capacity region has a construction here built from three ingredients:
//! uncovered data levels, cooperative XOR precoding, and jamming bits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::detmodel::{regime, DetConfig, LevelVector, Regime};
use crate::error::{invalid, Result, ZicError};
use crate::gf2::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawScheme", into = "RawScheme")]
pub struct LinearScheme {
    m: usize,
    q: usize,
    k1: usize,
    k2: usize,
    r: usize,
    coop_selector: BitMatrix,
    enc1_data: BitMatrix,
    enc1_coop: BitMatrix,
    enc1_rand: BitMatrix,
    enc2: BitMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawScheme {
    k1: usize,
    k2: usize,
    r: usize,
    coop_selector: BitMatrix,
    enc1_data: BitMatrix,
    enc1_coop: BitMatrix,
    enc1_rand: BitMatrix,
    enc2: BitMatrix,
}

impl LinearScheme {
    /// Assembles a scheme from its five matrices.
    ///
    /// Shapes: selector `C' x k2`, the three transmitter-1 blocks `m x k1`,
    /// `m x C'`, `m x r`, and transmitter 2's map `q x k2`.
    pub fn new(
        coop_selector: BitMatrix,
        enc1_data: BitMatrix,
        enc1_coop: BitMatrix,
        enc1_rand: BitMatrix,
        enc2: BitMatrix,
    ) -> Result<Self> {
        let m = enc1_data.rows();
        let q = enc2.rows();
        let k1 = enc1_data.cols();
        let k2 = enc2.cols();
        let r = enc1_rand.cols();
        let shared = coop_selector.rows();
        coop_selector.ensure_shape(shared, k2, "coopSelector")?;
        enc1_coop.ensure_shape(m, shared, "enc1Coop")?;
        enc1_rand.ensure_shape(m, r, "enc1Rand")?;
        if q < m {
            return Err(invalid(format!(
                "enc2 has {q} rows, fewer than the {m} rows of enc1"
            )));
        }
        if shared > 64 {
            return Err(invalid("more than 64 cooperative bits"));
        }
        Ok(Self {
            m,
            q,
            k1,
            k2,
            r,
            coop_selector,
            enc1_data,
            enc1_coop,
            enc1_rand,
            enc2,
        })
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// Number of uniform random (jamming) bits at transmitter 1.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Rows of the cooperative selector, i.e. bits sent over the link.
    pub fn coop_bits(&self) -> usize {
        self.coop_selector.rows()
    }

    pub fn coop_selector(&self) -> &BitMatrix {
        &self.coop_selector
    }

    pub fn enc1_data(&self) -> &BitMatrix {
        &self.enc1_data
    }

    pub fn enc1_coop(&self) -> &BitMatrix {
        &self.enc1_coop
    }

    pub fn enc1_rand(&self) -> &BitMatrix {
        &self.enc1_rand
    }

    pub fn enc2(&self) -> &BitMatrix {
        &self.enc2
    }

    pub fn input_bits(&self) -> usize {
        self.k1 + self.k2 + self.r
    }

    /// Checks that the scheme's signal lengths match `cfg`.
    pub fn check_dims(&self, cfg: &DetConfig) -> Result<()> {
        if self.m != cfg.m() as usize || self.q != cfg.q() as usize {
            return Err(invalid(format!(
                "scheme is built for m = {}, q = {} but config has m = {}, q = {}",
                self.m,
                self.q,
                cfg.m(),
                cfg.q()
            )));
        }
        Ok(())
    }
}

impl TryFrom<RawScheme> for LinearScheme {
    type Error = ZicError;

    fn try_from(raw: RawScheme) -> Result<Self> {
        let s = LinearScheme::new(
            raw.coop_selector,
            raw.enc1_data,
            raw.enc1_coop,
            raw.enc1_rand,
            raw.enc2,
        )?;
        if (s.k1, s.k2, s.r) != (raw.k1, raw.k2, raw.r) {
            return Err(invalid(format!(
                "declared (k1, k2, r) = ({}, {}, {}) disagree with matrix shapes ({}, {}, {})",
                raw.k1, raw.k2, raw.r, s.k1, s.k2, s.r
            )));
        }
        Ok(s)
    }
}

impl From<LinearScheme> for RawScheme {
    fn from(s: LinearScheme) -> Self {
        RawScheme {
            k1: s.k1,
            k2: s.k2,
            r: s.r,
            coop_selector: s.coop_selector,
            enc1_data: s.enc1_data,
            enc1_coop: s.enc1_coop,
            enc1_rand: s.enc1_rand,
            enc2: s.enc2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Encoded {
    pub x1: LevelVector,
    pub x2: LevelVector,
    pub v21: LevelVector,
}

pub fn encode(
    scheme: &LinearScheme,
    w1: &LevelVector,
    w2: &LevelVector,
    rand: &LevelVector,
) -> Result<Encoded> {
    let expect = |v: &LevelVector, len: usize, name: &str| {
        if v.len() as usize != len {
            Err(invalid(format!("{name} has {} bits, expected {len}", v.len())))
        } else {
            Ok(())
        }
    };
    expect(w1, scheme.k1, "w1")?;
    expect(w2, scheme.k2, "w2")?;
    expect(rand, scheme.r, "rand")?;

    let v21 = scheme.coop_selector.mul_vec(w2.word());
    let x1 = scheme.enc1_data.mul_vec(w1.word())
        ^ scheme.enc1_coop.mul_vec(v21)
        ^ scheme.enc1_rand.mul_vec(rand.word());
    let x2 = scheme.enc2.mul_vec(w2.word());
    Ok(Encoded {
        x1: LevelVector::from_word(scheme.m as u32, x1)?,
        x2: LevelVector::from_word(scheme.q as u32, x2)?,
        v21: LevelVector::from_word(scheme.coop_selector.rows() as u32, v21)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    R1Max,
    R2Max,
    R1MaxR2Coop,
    R1CoopR2Max,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::R1Max,
        Corner::R2Max,
        Corner::R1MaxR2Coop,
        Corner::R1CoopR2Max,
    ];
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Corner::R1Max => "R1max",
            Corner::R2Max => "R2max",
            Corner::R1MaxR2Coop => "R1maxR2coop",
            Corner::R1CoopR2Max => "R1coopR2max",
        })
    }
}

/// A corner point named together with the regime it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CornerId {
    pub regime: Regime,
    pub corner: Corner,
}

impl CornerId {
    pub fn new(regime: Regime, corner: Corner) -> Result<Self> {
        if regime == Regime::VeryHigh && corner != Corner::R1Max {
            return Err(ZicError::InvalidCorner {
                corner: corner.to_string(),
                regime: regime.to_string(),
            });
        }
        Ok(Self { regime, corner })
    }
}

impl fmt::Display for CornerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.regime, self.corner)
    }
}

/// Every corner defined for the config's regime.
pub fn corners(cfg: &DetConfig) -> Result<Vec<CornerId>> {
    let regime = regime(cfg)?;
    Ok(match regime {
        Regime::VeryHigh => vec![CornerId {
            regime,
            corner: Corner::R1Max,
        }],
        _ => Corner::ALL
            .iter()
            .map(|&corner| CornerId { regime, corner })
            .collect(),
    })
}

/// Cooperative bits actually used: `min(C, n)` in the weak regime,
/// `min(C, 2m - n)` in the high regime, none otherwise.
pub fn effective_coop(cfg: &DetConfig) -> Result<u32> {
    let (m, n, c) = (cfg.m(), cfg.n(), cfg.c());
    Ok(match regime(cfg)? {
        Regime::WeakModerate => c.min(n),
        Regime::High => c.min(2 * m - n),
        Regime::VeryHigh => 0,
    })
}

/// Incremental construction of a corner scheme, level by level.
struct Builder {
    m: usize,
    q: usize,
    tx1_data: Vec<usize>,
    tx1_rand: Vec<usize>,
    tx2_data: Vec<usize>,
    // (w2 bit index, tx1 level the shared bit is XORed onto)
    shared: Vec<(usize, usize)>,
}

impl Builder {
    fn new(cfg: &DetConfig) -> Self {
        Self {
            m: cfg.m() as usize,
            q: cfg.q() as usize,
            tx1_data: Vec::new(),
            tx1_rand: Vec::new(),
            tx2_data: Vec::new(),
            shared: Vec::new(),
        }
    }

    fn data1(&mut self, level: u32) {
        self.tx1_data.push(level as usize);
    }

    fn rand1(&mut self, level: u32) {
        self.tx1_rand.push(level as usize);
    }

    /// Returns the index of the new w2 bit.
    fn data2(&mut self, level: u32) -> usize {
        self.tx2_data.push(level as usize);
        self.tx2_data.len() - 1
    }

    /// Ships w2 bit `bit` over the link and XORs it onto tx1 `level`.
    fn precode(&mut self, bit: usize, level: u32) {
        self.shared.push((bit, level as usize));
    }

    fn build(self) -> Result<LinearScheme> {
        let (k1, k2, r, c) = (
            self.tx1_data.len(),
            self.tx2_data.len(),
            self.tx1_rand.len(),
            self.shared.len(),
        );
        let mut selector = BitMatrix::zeros(c, k2)?;
        let mut data = BitMatrix::zeros(self.m, k1)?;
        let mut coop = BitMatrix::zeros(self.m, c)?;
        let mut rand = BitMatrix::zeros(self.m, r)?;
        let mut enc2 = BitMatrix::zeros(self.q, k2)?;
        for (j, &level) in self.tx1_data.iter().enumerate() {
            data.toggle(level - 1, j);
        }
        for (j, &level) in self.tx1_rand.iter().enumerate() {
            rand.toggle(level - 1, j);
        }
        for (j, &level) in self.tx2_data.iter().enumerate() {
            enc2.toggle(level - 1, j);
        }
        for (i, &(bit, level)) in self.shared.iter().enumerate() {
            selector.set(i, bit, true);
            coop.toggle(level - 1, i);
        }
        LinearScheme::new(selector, data, coop, rand, enc2)
    }
}

/// Builds the scheme achieving `corner` for `cfg`.
///
/// Bits of `w1`, `w2`, and `rand` are numbered in the order their levels are
/// assigned, bottom level first.
pub fn corner_scheme(cfg: &DetConfig, corner: CornerId) -> Result<LinearScheme> {
    let regime = regime(cfg)?;
    if corner.regime != regime {
        return Err(ZicError::InvalidCorner {
            corner: corner.to_string(),
            regime: regime.to_string(),
        });
    }
    let (m, n) = (cfg.m(), cfg.n());
    let shared = effective_coop(cfg)?;
    let mut b = Builder::new(cfg);

    match (regime, corner.corner) {
        (_, Corner::R1Max) => (1..=m).for_each(|l| b.data1(l)),

        (Regime::WeakModerate, Corner::R2Max) => {
            (1..=m).for_each(|l| {
                b.data2(l);
            });
            (1..=n).for_each(|l| b.rand1(l));
        }
        (Regime::WeakModerate, Corner::R1MaxR2Coop) => {
            (1..=m).for_each(|l| b.data1(l));
            // tx2 level l reaches receiver 1 at level l - (m - n).
            for l in 1..=m - n + shared {
                let bit = b.data2(l);
                if l > m - n {
                    b.precode(bit, l - (m - n));
                }
            }
        }
        (Regime::WeakModerate, Corner::R1CoopR2Max) => {
            for l in 1..=m {
                let bit = b.data2(l);
                if l > m - n && l <= m - n + shared {
                    b.precode(bit, l - (m - n));
                }
            }
            (1..=shared).for_each(|l| b.data1(l));
            (shared + 1..=n).for_each(|l| b.rand1(l));
            (n + 1..=m).for_each(|l| b.data1(l));
        }

        (Regime::High, Corner::R2Max) => {
            for l in n - m + 1..=m {
                b.data2(l);
                b.rand1(l);
            }
        }
        (Regime::High, Corner::R1MaxR2Coop) => {
            (1..=m).for_each(|l| b.data1(l));
            for l in n - m + 1..=n - m + shared {
                let bit = b.data2(l);
                b.precode(bit, l);
            }
        }
        (Regime::High, Corner::R1CoopR2Max) => {
            (1..=n - m).for_each(|l| b.data1(l));
            for l in n - m + 1..=m {
                let bit = b.data2(l);
                if l <= n - m + shared {
                    b.data1(l);
                    b.precode(bit, l);
                } else {
                    b.rand1(l);
                }
            }
        }

        (Regime::VeryHigh, _) => {
            return Err(ZicError::InvalidCorner {
                corner: corner.to_string(),
                regime: regime.to_string(),
            })
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detmodel::make_config;

    fn rates(m: i64, n: i64, c: i64, corner: Corner) -> (usize, usize) {
        let cfg = make_config(m, n, c).unwrap();
        let id = CornerId::new(regime(&cfg).unwrap(), corner).unwrap();
        let s = corner_scheme(&cfg, id).unwrap();
        (s.k1(), s.k2())
    }

    #[test]
    fn figure_corners() {
        assert_eq!(rates(5, 3, 1, Corner::R1MaxR2Coop), (5, 3));
        assert_eq!(rates(5, 3, 1, Corner::R1CoopR2Max), (3, 5));
        assert_eq!(rates(4, 5, 1, Corner::R1CoopR2Max), (2, 3));
        assert_eq!(rates(4, 5, 1, Corner::R1MaxR2Coop), (4, 1));
    }

    #[test]
    fn no_cooperation_reduces_to_plain_schemes() {
        assert_eq!(rates(5, 3, 0, Corner::R1MaxR2Coop), (5, 2));
        assert_eq!(rates(5, 3, 0, Corner::R1CoopR2Max), (2, 5));
        assert_eq!(rates(4, 5, 0, Corner::R1MaxR2Coop), (4, 0));
    }

    #[test]
    fn cooperation_is_clamped() {
        assert_eq!(rates(5, 3, 9, Corner::R1MaxR2Coop), (5, 5));
        assert_eq!(rates(4, 5, 9, Corner::R1CoopR2Max), (4, 3));
        let cfg = make_config(5, 3, 9).unwrap();
        let s = corner_scheme(
            &cfg,
            CornerId::new(Regime::WeakModerate, Corner::R1CoopR2Max).unwrap(),
        )
        .unwrap();
        assert_eq!(s.coop_bits(), 3);
        assert_eq!(s.r(), 0);
    }

    #[test]
    fn invalid_corners() {
        let cfg = make_config(5, 3, 1).unwrap();
        let high = CornerId::new(Regime::High, Corner::R1Max).unwrap();
        assert!(matches!(
            corner_scheme(&cfg, high),
            Err(ZicError::InvalidCorner { .. })
        ));
        assert!(CornerId::new(Regime::VeryHigh, Corner::R2Max).is_err());
        let cfg0 = make_config(0, 0, 0).unwrap();
        let weak = CornerId::new(Regime::WeakModerate, Corner::R1Max).unwrap();
        assert!(matches!(
            corner_scheme(&cfg0, weak),
            Err(ZicError::UndefinedAlpha)
        ));
    }

    #[test]
    fn very_high_single_corner() {
        let cfg = make_config(2, 5, 3).unwrap();
        let cs = corners(&cfg).unwrap();
        assert_eq!(cs.len(), 1);
        let s = corner_scheme(&cfg, cs[0]).unwrap();
        assert_eq!((s.k1(), s.k2()), (2, 0));
    }

    #[test]
    fn encode_zero_and_shared_bit() {
        let cfg = make_config(5, 3, 1).unwrap();
        let s = corner_scheme(
            &cfg,
            CornerId::new(Regime::WeakModerate, Corner::R1CoopR2Max).unwrap(),
        )
        .unwrap();
        let z = |len: usize| LevelVector::zeros(len as u32).unwrap();
        let out = encode(&s, &z(s.k1()), &z(s.k2()), &z(s.r())).unwrap();
        assert!(out.x1.is_zero() && out.x2.is_zero() && out.v21.is_zero());

        // w2 bit b3 (level 3) is the shared one.
        let w2 = LevelVector::from_word(5, 0b00100).unwrap();
        let out = encode(&s, &z(s.k1()), &w2, &z(s.r())).unwrap();
        assert_eq!(out.x1.to_string(), "00001");
        assert_eq!(out.x2.to_string(), "00100");
        assert_eq!(out.v21.word(), 1);
    }

    #[test]
    fn encode_without_w2_keeps_tx2_silent() {
        let cfg = make_config(4, 5, 2).unwrap();
        for id in corners(&cfg).unwrap() {
            let s = corner_scheme(&cfg, id).unwrap();
            let w1 = LevelVector::from_word(s.k1() as u32, (1 << s.k1()) - 1).unwrap();
            let r = LevelVector::from_word(s.r() as u32, (1 << s.r()) - 1).unwrap();
            let out = encode(&s, &w1, &LevelVector::zeros(s.k2() as u32).unwrap(), &r).unwrap();
            assert!(out.x2.is_zero(), "{id}");
        }
    }

    #[test]
    fn encode_rejects_dimension_mismatch() {
        let cfg = make_config(5, 3, 1).unwrap();
        let s = corner_scheme(
            &cfg,
            CornerId::new(Regime::WeakModerate, Corner::R1Max).unwrap(),
        )
        .unwrap();
        let z = |len| LevelVector::zeros(len).unwrap();
        assert!(encode(&s, &z(4), &z(0), &z(0)).is_err());
        assert!(encode(&s, &z(5), &z(1), &z(0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cfg = make_config(4, 5, 1).unwrap();
        let s = corner_scheme(
            &cfg,
            CornerId::new(Regime::High, Corner::R1CoopR2Max).unwrap(),
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"coopSelector\""));
        let back: LinearScheme = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_inconsistent_shapes() {
        let json = r#"{"k1":1,"k2":1,"r":0,
            "coopSelector":{"rows":1,"cols":2,"bits":[[1,0]]},
            "enc1Data":{"rows":2,"cols":1,"bits":[[1],[0]]},
            "enc1Coop":{"rows":2,"cols":1,"bits":[[1],[0]]},
            "enc1Rand":{"rows":2,"cols":0,"bits":[[],[]]},
            "enc2":{"rows":2,"cols":1,"bits":[[1],[0]]}}"#;
        assert!(serde_json::from_str::<LinearScheme>(json).is_err());
    }
}
