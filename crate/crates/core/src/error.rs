use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("x = {x} lies outside the box (-{half_width}, {half_width})")]
    OutsideBox { x: f64, half_width: f64 },
    #[error("x = {x} is a matching point of the potential")]
    AtMatchingPoint { x: f64 },
    #[error("secular residual needs t >= s > 0, got s = {s}, t = {t}")]
    SecularDomain { s: f64, t: f64 },
    #[error("scan window t_max = {t_max} does not exceed sqrt(g/2) = {t_min}")]
    EmptyScanWindow { t_max: f64, t_min: f64 },
    #[error(
        "value at the origin is negligible ({magnitude:e} relative) for the state with E = {energy}; B cannot be fixed"
    )]
    DegenerateMatching { magnitude: f64, energy: f64 },
    #[error("superpotential pole at x = {x}")]
    Pole { x: f64 },
    #[error("no level merge found for l = {barrier_half_width} below g = {g_upper}; raise the upper coupling bound (g_c grows faster than 1/l)")]
    NoMerge { barrier_half_width: f64, g_upper: f64 },
    #[error("lowest two levels are not both real at g = {coupling}; the configuration is beyond g_c")]
    BrokenAtLowerBound { coupling: f64 },
    #[error("shared denominator D of the x_R1 split system vanishes ({value:e})")]
    VanishingDenominator { value: f64 },
    #[error("no artanh branch satisfies the x_R1 split equations; best residual {residual:e}")]
    NoBranch { residual: f64 },
    #[error("eigensolver failed to converge for index {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },
    #[error("level {index} could not be paired between the coarse and refined grids")]
    LevelPairing { index: usize },
    #[error("grid of {n} interior points is too small (need at least {min})")]
    GridTooSmall { n: usize, min: usize },
}
