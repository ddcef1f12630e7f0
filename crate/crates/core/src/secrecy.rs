//! Two-codebook stochastic encoding over the binary additive channel, with
//! exact secrecy and reliability figures obtained by enumeration.
//!
//! User k owns a secret book of `m_k` words and a randomization book of
//! `mx_k` words. To send `w_k` it picks `r_k` uniformly and transmits
//! `secret_k[w_k] ^ rand_k[r_k]`. The eavesdropper sees
//! `Z = X_1 ^ X_2 ^ E_W` with `E_W` i.i.d. Bernoulli(`eps_w`), so everything
//! it learns about the messages passes through `X_sum = X_1 ^ X_2`.
//!
//! Enumeration order is fixed (messages, then randomization indices, then
//! eavesdropper outputs in increasing integer order), so results are
//! reproducible bit for bit.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{bin_entropy, pos_part, xlog2x};

/// Default cap on `m_1 * mx_1 * m_2 * mx_2 * 2^n`.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Largest supported block length; codewords are packed into a `u64`.
pub const MAX_BLOCK_LENGTH: u32 = 32;

/// A binary word of the configured block length; symbol `i` is bit `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Codeword(pub u64);

impl Codeword {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_BLOCK_LENGTH as usize {
            return Err(Error::Codebook(
                "codeword longer than the maximum block length",
            ));
        }
        let mut word = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => word |= 1 << i,
                _ => return Err(Error::Codebook("symbols must be 0 or 1")),
            }
        }
        Ok(Codeword(word))
    }

    pub fn bit(&self, i: u32) -> u8 {
        ((self.0 >> i) & 1) as u8
    }

    pub fn to_bits(&self, n: u32) -> Vec<u8> {
        (0..n).map(|i| self.bit(i)).collect()
    }

    pub fn distance(&self, other: &Codeword) -> u32 {
        (self.0 ^ other.0).count_ones()
    }
}

impl core::ops::BitXor for Codeword {
    type Output = Codeword;

    fn bitxor(self, rhs: Codeword) -> Codeword {
        Codeword(self.0 ^ rhs.0)
    }
}

#[cfg(feature = "serde")]
fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SchemeConfig {
    pub n: u32,
    pub m_1: usize,
    pub m_2: usize,
    pub mx_1: usize,
    pub mx_2: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub seed: u64,
    #[cfg_attr(feature = "serde", serde(default = "default_budget"))]
    pub budget: u64,
}

impl SchemeConfig {
    pub fn new(n: u32, m: (usize, usize), mx: (usize, usize), seed: u64) -> Self {
        SchemeConfig {
            n,
            m_1: m.0,
            m_2: m.1,
            mx_1: mx.0,
            mx_2: mx.1,
            seed,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// `m_1 * mx_1 * m_2 * mx_2 * 2^n`.
    pub fn enumeration_states(&self) -> u128 {
        [self.m_1, self.mx_1, self.m_2, self.mx_2]
            .iter()
            .fold(1u128 << self.n.min(127), |acc, &c| {
                acc.saturating_mul(c as u128)
            })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_BLOCK_LENGTH {
            return Err(Error::InvalidParameter {
                field: "n",
                value: self.n as f64,
                reason: "block length must lie in 1..=32",
            });
        }
        for (field, count) in [
            ("m_1", self.m_1),
            ("m_2", self.m_2),
            ("mx_1", self.mx_1),
            ("mx_2", self.mx_2),
        ] {
            if count == 0 {
                return Err(Error::InvalidParameter {
                    field,
                    value: 0.0,
                    reason: "codebooks need at least one word",
                });
            }
        }
        let states = self.enumeration_states();
        if states > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                states,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn rate(&self, count: usize) -> f64 {
        libm::log2(count as f64) / self.n as f64
    }

    /// Secret rates `(R_1, R_2)`.
    pub fn secret_rates(&self) -> (f64, f64) {
        (self.rate(self.m_1), self.rate(self.m_2))
    }

    /// Randomization rates `(R~_1, R~_2)`. These are also the extra
    /// non-secret rates each user can carry in the randomization index.
    pub fn randomization_rates(&self) -> (f64, f64) {
        (self.rate(self.mx_1), self.rate(self.mx_2))
    }

    /// `R~_1 + R~_2 - C_W`. The design target is zero; a nonzero gap is a
    /// warning, not an error.
    pub fn rate_target_gap(&self, eps_w: f64) -> Result<f64> {
        let (rx_1, rx_2) = self.randomization_rates();
        Ok(rx_1 + rx_2 - (1.0 - bin_entropy(eps_w)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryScheme {
    config: SchemeConfig,
    secret_books: [Vec<Codeword>; 2],
    rand_books: [Vec<Codeword>; 2],
}

impl BinaryScheme {
    /// A scheme with caller-supplied codebooks.
    pub fn from_books(
        config: SchemeConfig,
        secret_books: [Vec<Codeword>; 2],
        rand_books: [Vec<Codeword>; 2],
    ) -> Result<Self> {
        config.validate()?;
        if secret_books[0].len() != config.m_1
            || secret_books[1].len() != config.m_2
            || rand_books[0].len() != config.mx_1
            || rand_books[1].len() != config.mx_2
        {
            return Err(Error::Codebook("book sizes differ from the configuration"));
        }
        let limit = 1u64 << config.n;
        let fits = secret_books
            .iter()
            .chain(rand_books.iter())
            .flatten()
            .all(|w| w.0 < limit);
        if !fits {
            return Err(Error::Codebook("codeword longer than the block length"));
        }
        Ok(BinaryScheme {
            config,
            secret_books,
            rand_books,
        })
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.config
    }

    pub fn secret_book(&self, user: usize) -> &[Codeword] {
        &self.secret_books[user]
    }

    pub fn rand_book(&self, user: usize) -> &[Codeword] {
        &self.rand_books[user]
    }

    /// All `m_k * mx_k` transmittable words of user `k` (0-based), indexed
    /// `w * mx_k + r`.
    pub fn combined_book(&self, user: usize) -> Vec<Codeword> {
        let mut out =
            Vec::with_capacity(self.secret_books[user].len() * self.rand_books[user].len());
        for &s in &self.secret_books[user] {
            for &r in &self.rand_books[user] {
                out.push(s ^ r);
            }
        }
        out
    }
}

/// Draws the four books from a ChaCha8 stream seeded with
/// `seed_from_u64(config.seed)`: books in the order secret 1, randomization
/// 1, secret 2, randomization 2; each symbol is the low bit of one
/// `next_u32()`.
pub fn build_scheme(config: SchemeConfig) -> Result<BinaryScheme> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut draw = |count: usize| -> Vec<Codeword> {
        (0..count)
            .map(|_| {
                let mut w = 0u64;
                for i in 0..config.n {
                    w |= u64::from(rng.next_u32() & 1) << i;
                }
                Codeword(w)
            })
            .collect()
    };
    let s_1 = draw(config.m_1);
    let r_1 = draw(config.mx_1);
    let s_2 = draw(config.m_2);
    let r_2 = draw(config.mx_2);
    BinaryScheme::from_books(config, [s_1, s_2], [r_1, r_2])
}

fn lookup(book: &[Codeword], index: usize, what: &'static str) -> Result<Codeword> {
    book.get(index).copied().ok_or(Error::IndexOutOfRange {
        what,
        index,
        len: book.len(),
    })
}

/// The two channel inputs for messages `(w_1, w_2)` and randomization
/// indices `(r_1, r_2)`.
pub fn encode(
    scheme: &BinaryScheme,
    w_1: usize,
    w_2: usize,
    r_1: usize,
    r_2: usize,
) -> Result<(Codeword, Codeword)> {
    let x_1 = lookup(&scheme.secret_books[0], w_1, "message 1")?
        ^ lookup(&scheme.rand_books[0], r_1, "randomization 1")?;
    let x_2 = lookup(&scheme.secret_books[1], w_2, "message 2")?
        ^ lookup(&scheme.rand_books[1], r_2, "randomization 2")?;
    Ok((x_1, x_2))
}

/// Exact secrecy figures for one scheme, all in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SecrecyReport {
    pub eps_w: f64,
    /// `H(W) = log2(m_1 m_2)`.
    pub h_w: f64,
    /// Equivocation `H(W|Z)`.
    pub h_w_given_z: f64,
    /// `H(W|Z) / H(W)`, or 1 when `H(W) = 0`.
    pub ratio: f64,
    pub i_w_z: f64,
    pub i_xsum_z: f64,
    pub h_xsum_given_w: f64,
    /// What the eavesdropper still cannot resolve about `X_sum` once it
    /// knows the messages; zero only in the long-block limit.
    pub h_xsum_given_w_z: f64,
    /// `H(W_k|Z) / H(W_k)` for each user, 1 when `m_k = 1`.
    pub per_user_ratios: [f64; 2],
}

fn crossover_weights(n: u32, eps: f64) -> Vec<f64> {
    // P(e) for an error pattern of weight d; pow(0, 0) is 1.
    (0..=n as i32)
        .map(|d| libm::pow(eps, d as f64) * libm::pow(1.0 - eps, (n as i32 - d) as f64))
        .collect()
}

fn check_probability(field: &'static str, eps: f64) -> Result<()> {
    if (0.0..=0.5).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value: eps,
            reason: "crossover probability must lie in [0, 0.5]",
        })
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        1.0
    }
}

/// Computes the joint law of `(W_1, W_2, Z)` by enumerating every message
/// pair, randomization pair and eavesdropper output, then sums entropies.
pub fn exact_equivocation(scheme: &BinaryScheme, eps_w: f64) -> Result<SecrecyReport> {
    let cfg = scheme.config;
    cfg.validate()?;
    check_probability("eps_w", eps_w)?;

    let (m_1, m_2) = (cfg.m_1, cfg.m_2);
    let messages = m_1 * m_2;
    let keys = (cfg.mx_1 * cfg.mx_2) as f64;
    let p_w = 1.0 / messages as f64;

    // Conditional law of X_sum given each message pair, as (word, mass).
    let mut support: Vec<Vec<(u64, f64)>> = Vec::with_capacity(messages);
    let mut h_w_xsum = 0.0;
    for w_1 in 0..m_1 {
        for w_2 in 0..m_2 {
            let base = scheme.secret_books[0][w_1] ^ scheme.secret_books[1][w_2];
            let mut words: Vec<u64> = Vec::with_capacity(cfg.mx_1 * cfg.mx_2);
            for &r_1 in &scheme.rand_books[0] {
                for &r_2 in &scheme.rand_books[1] {
                    words.push((base ^ r_1 ^ r_2).0);
                }
            }
            words.sort_unstable();
            let mut law: Vec<(u64, f64)> = Vec::new();
            for x in words {
                match law.last_mut() {
                    Some((last, mass)) if *last == x => *mass += 1.0,
                    _ => law.push((x, 1.0)),
                }
            }
            for entry in &mut law {
                entry.1 /= keys;
                h_w_xsum += xlog2x(entry.1 * p_w);
            }
            support.push(law);
        }
    }

    let weights = crossover_weights(cfg.n, eps_w);
    let mut joint = alloc::vec![0.0; messages];
    let mut marginal_1 = alloc::vec![0.0; m_1];
    let mut marginal_2 = alloc::vec![0.0; m_2];
    let (mut h_wz, mut h_z, mut h_w1z, mut h_w2z) = (0.0, 0.0, 0.0, 0.0);
    for z in 0..(1u64 << cfg.n) {
        marginal_1.iter_mut().for_each(|v| *v = 0.0);
        marginal_2.iter_mut().for_each(|v| *v = 0.0);
        let mut p_z = 0.0;
        for (idx, law) in support.iter().enumerate() {
            let p: f64 = law
                .iter()
                .map(|&(x, mass)| mass * weights[(x ^ z).count_ones() as usize])
                .sum::<f64>()
                * p_w;
            joint[idx] = p;
            marginal_1[idx / m_2] += p;
            marginal_2[idx % m_2] += p;
            p_z += p;
        }
        h_wz += joint.iter().map(|&p| xlog2x(p)).sum::<f64>();
        h_w1z += marginal_1.iter().map(|&p| xlog2x(p)).sum::<f64>();
        h_w2z += marginal_2.iter().map(|&p| xlog2x(p)).sum::<f64>();
        h_z += xlog2x(p_z);
    }

    let h_z_given_xsum = cfg.n as f64 * bin_entropy(eps_w)?;
    let h_w = libm::log2(messages as f64);
    let h_w1 = libm::log2(m_1 as f64);
    let h_w2 = libm::log2(m_2 as f64);
    let h_w_given_z = h_wz - h_z;
    Ok(SecrecyReport {
        eps_w,
        h_w,
        h_w_given_z,
        ratio: ratio(h_w_given_z, h_w),
        i_w_z: h_w - h_w_given_z,
        i_xsum_z: h_z - h_z_given_xsum,
        h_xsum_given_w: h_w_xsum - h_w,
        h_xsum_given_w_z: h_w_xsum + h_z_given_xsum - h_wz,
        per_user_ratios: [ratio(h_w1z - h_z, h_w1), ratio(h_w2z - h_z, h_w2)],
    })
}

/// Average probability that a receiver, after removing its own codeword,
/// misidentifies the other user's transmitted word.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DecodeErrors {
    /// Receiver 2 decoding user 1.
    pub user_1: f64,
    /// Receiver 1 decoding user 2.
    pub user_2: f64,
}

/// Maximum-likelihood decoding error over the combined book of each user,
/// exact over all error patterns. For `eps_self < 0.5` ML is minimum
/// Hamming distance; at `0.5` every word ties. Ties go to the lowest
/// combined index.
pub fn decode_error(scheme: &BinaryScheme, eps_self: f64) -> Result<DecodeErrors> {
    let cfg = scheme.config;
    cfg.validate()?;
    check_probability("eps_self", eps_self)?;
    let weights = crossover_weights(cfg.n, eps_self);
    let one_user = |user: usize| -> f64 {
        let book = scheme.combined_book(user);
        let mut success = 0.0;
        for y in 0..(1u64 << cfg.n) {
            let y = Codeword(y);
            let decoded = if eps_self < 0.5 {
                book.iter()
                    .enumerate()
                    .min_by_key(|(i, w)| (w.distance(&y), *i))
                    .map(|(_, w)| *w)
                    .unwrap_or_default()
            } else {
                book[0]
            };
            success += weights[decoded.distance(&y) as usize];
        }
        pos_part(1.0 - success / book.len() as f64)
    };
    Ok(DecodeErrors {
        user_1: one_user(0),
        user_2: one_user(1),
    })
}
