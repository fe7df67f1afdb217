//! Size caps for the exponential constructions.
//!
//! Defaults can be overridden with the `POLARITY_CAP` environment variable,
//! either a bare integer (applied to the closed-set cap) or a comma separated
//! list of `key=value` pairs with keys `closed`, `hom`, `standardize`,
//! `reduce`, `tensor`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "POLARITY_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest carrier on which closed sets are enumerated.
    pub closed_sets: usize,
    /// Largest `lower(A) * upper(B)` for hom-set enumeration.
    pub hom_bits: usize,
    /// Largest lower carrier for standardization (upper carrier is its powerset).
    pub standardize: usize,
    /// Largest carrier for reducedness checks.
    pub reduction: usize,
    /// Largest `lower(A) * lower(B)` for the tensor product.
    pub tensor: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            closed_sets: 24,
            hom_bits: 16,
            standardize: 12,
            reduction: 10,
            tensor: 9,
        }
    }
}

impl Caps {
    /// Caps read once from the environment, falling back to defaults.
    pub fn current() -> &'static Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        CAPS.get_or_init(|| match std::env::var(ENV_VAR) {
            Ok(spec) => Caps::parse(&spec).unwrap_or_default(),
            Err(_) => Caps::default(),
        })
    }

    pub fn parse(spec: &str) -> std::result::Result<Caps, String> {
        let mut caps = Caps::default();
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(caps);
        }
        if let Ok(n) = spec.parse::<usize>() {
            caps.closed_sets = n;
            return Ok(caps);
        }
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("bad cap value in {part:?}"))?;
            match key.trim() {
                "closed" => caps.closed_sets = value,
                "hom" => caps.hom_bits = value,
                "standardize" => caps.standardize = value,
                "reduce" => caps.reduction = value,
                "tensor" => caps.tensor = value,
                other => return Err(format!("unknown cap {other:?}")),
            }
        }
        Ok(caps)
    }

    pub(crate) fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }
}
