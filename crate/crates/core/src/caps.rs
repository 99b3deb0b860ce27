//! Safety caps for the exponential-time operations.
//!
//! Exact independence numbers, independent-set enumeration and the
//! permutation-distribution oracle all have exponential worst cases, so every
//! entry point that can blow up takes a [`Caps`] value and refuses inputs
//! over the configured limit with [`Error::Capacity`](crate::Error::Capacity)
//! instead of silently hanging. The defaults are deliberately conservative;
//! callers who know what they are doing can raise them.

use crate::error::{Error, Result};

/// Limits for the enumeration-based operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum vertex count for exact independence-number computation.
    pub alpha_n: usize,
    /// Maximum vertex count for full independent-set enumeration.
    pub enum_n: usize,
    /// Maximum t*d for the star-permutation distribution oracle
    /// (the oracle walks all (t*d + 1)! orderings).
    pub star_td: usize,
    /// Maximum clique order for hypothesis checks on graph families.
    pub clique_r: usize,
}

pub const DEFAULT_ALPHA_CAP: usize = 30;
pub const DEFAULT_ENUM_CAP: usize = 30;
pub const DEFAULT_STAR_TD_CAP: usize = 10;
pub const DEFAULT_CLIQUE_CAP: usize = 6;

impl Default for Caps {
    fn default() -> Self {
        Caps {
            alpha_n: DEFAULT_ALPHA_CAP,
            enum_n: DEFAULT_ENUM_CAP,
            star_td: DEFAULT_STAR_TD_CAP,
            clique_r: DEFAULT_CLIQUE_CAP,
        }
    }
}

impl Caps {
    /// Parses a comma-separated override list such as `alpha=32,enum=24,td=11,r=5`.
    ///
    /// Unknown keys are rejected so a typo cannot silently leave a cap at its
    /// default. Missing keys keep their defaults.
    pub fn parse_overrides(spec: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("cap override `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("cap value in `{part}` is not a number")))?;
            match key.trim() {
                "alpha" => caps.alpha_n = value,
                "enum" => caps.enum_n = value,
                "td" => caps.star_td = value,
                "r" => caps.clique_r = value,
                other => {
                    return Err(Error::invalid(format!("unknown cap key `{other}`")));
                }
            }
        }
        Ok(caps)
    }

    pub(crate) fn check(what: &'static str, got: usize, cap: usize) -> Result<()> {
        if got > cap {
            Err(Error::Capacity { what, got, cap })
        } else {
            Ok(())
        }
    }
}
