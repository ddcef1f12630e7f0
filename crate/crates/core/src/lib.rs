//! Achievable secrecy rates for two-way wire-tap channels.
//!
//! Two users exchange messages while an eavesdropper listens through a
//! multiple-access channel. Because each receiver knows its own transmitted
//! codeword, it can strip that codeword from what it hears, while the
//! eavesdropper cannot. The crate covers two channel families:
//!
//! * the Gaussian two-way wire-tap channel, in standard form
//!   ([`StandardGtwChannel`]), with rate regions per power allocation, their
//!   convex closure, the secrecy sum-rate optimal power allocation and the
//!   cooperative-jamming allocation;
//! * the binary additive two-way wire-tap channel ([`BatwChannel`]), with
//!   its rate region, the random-bit jamming rate, and an exact equivocation
//!   calculator for the two-codebook stochastic encoder at small block
//!   lengths.
//!
//! All rates are in bits per channel use. The crate is `no_std` and only
//! needs `alloc`.

#![no_std]

extern crate alloc;

pub mod channel;
pub mod error;
pub mod hull;
pub mod measures;
pub mod power;
pub mod region;
pub mod secrecy;

pub use channel::{standardize, validate_batw, BatwChannel, RawGtwChannel, StandardGtwChannel};
pub use error::{Error, Result};
pub use measures::{bin_entropy, gauss_cap, pos_part};
pub use power::{
    batw_jamming, jamming_advice, jamming_oracle_gap_bound, jamming_rate, optimal_jamming,
    optimal_jamming_oracle, optimal_power, optimal_power_oracle, oracle_gap_bound, phi, phi2,
    rho_dot, theorem_allocation, BatwJamming, CaseLabel, JammingAdvice, PowerAllocation, User,
};
pub use region::{
    batw_region, contains, gtw_region_at_power, gtw_region_closure, rho, sum_rate, PowerPoint,
    RatePair, RegionPolytope, RegionShape,
};
pub use secrecy::{
    build_scheme, decode_error, encode, exact_equivocation, BinaryScheme, Codeword, DecodeErrors,
    SchemeConfig, SecrecyReport, DEFAULT_BUDGET, MAX_BLOCK_LENGTH,
};
