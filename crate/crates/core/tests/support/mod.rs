//! Oracles and experiment drivers shared by the integration tests and the
//! acceptance target. Each experiment returns `Ok(detail)` or `Err(reason)`.
#![allow(dead_code)]

pub mod experiments;
pub mod oracle;

pub type Check = Result<String, String>;

/// Largest prime below 2^31; big enough that hashed test identities do not
/// collide.
pub const WIDE_MOCK_Q: u64 = 2_147_483_647;

#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}
