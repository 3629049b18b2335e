use alloc::string::String;

use crate::smarandache::SurfaceKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter {value} outside [{min}, {max}]")]
    Domain { value: f64, min: f64, max: f64 },
    #[error("derivative order {0} is not supported (at most 3)")]
    UnsupportedOrder(u8),
    #[error("curve is not regular: speed {speed:e} at t = {t}")]
    Regularity { t: f64, speed: f64 },
    #[error("adaptive quadrature did not converge to tolerance {tol:e}")]
    Tolerance { tol: f64 },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("Frenet frame undefined: curvature below floor on {degenerate} of {total} samples")]
    FrameUndefined { degenerate: usize, total: usize },
    #[error("slant-helix test indeterminate: k1 and k2 both vanish near s = {s}")]
    Indeterminate { s: f64 },
    #[error("singular surface point at (s, v) = ({s}, {v})")]
    SingularPoint { s: f64, v: f64 },
    #[error("closed-form denominator {value:e} below floor")]
    SingularDenominator { value: f64 },
    #[error("operation not supported for {0} surfaces")]
    Unsupported(SurfaceKind),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
