use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Environment variable that overrides [`Caps::enumeration_bits`].
pub const CAP_BITS_ENV: &str = "FREDKIN_CAP_BITS";

/// Size limits applied before any exponential-size allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest basis (enumeration or Hilbert space) allowed, as a power of two.
    pub enumeration_bits: u32,
    /// Largest operator dimension handed to the dense eigensolver.
    pub dense_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration_bits: 28,
            dense_dim: 1 << 12,
        }
    }
}

impl Caps {
    /// Process-wide caps: defaults, with `FREDKIN_CAP_BITS` applied once on
    /// first use.
    pub fn global() -> &'static Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        CAPS.get_or_init(|| {
            let mut caps = Caps::default();
            if let Some(bits) = std::env::var(CAP_BITS_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<u32>().ok())
            {
                caps.enumeration_bits = bits.min(40);
            }
            caps
        })
    }

    /// Fails when a basis of `size` states exceeds the enumeration cap.
    pub fn check_states(&self, size: f64) -> Result<()> {
        let required = size.log2().ceil().max(0.0) as u32;
        if size > (1u64 << self.enumeration_bits) as f64 {
            return Err(Error::CapExceeded {
                required_bits: required,
                cap_bits: self.enumeration_bits,
            });
        }
        Ok(())
    }

    /// Fails when a dense factorization of dimension `dim` exceeds the dense cap.
    pub fn check_dense(&self, dim: usize) -> Result<()> {
        if dim > self.dense_dim {
            return Err(Error::CapExceeded {
                required_bits: (dim as f64).log2().ceil() as u32,
                cap_bits: self.dense_dim.trailing_zeros(),
            });
        }
        Ok(())
    }
}
