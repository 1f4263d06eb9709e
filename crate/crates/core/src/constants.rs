//! Constants fixed by one-time calibration runs (`cargo run --release
//! --example calibrate`). Each is the measured extreme widened by 10 to 50%
//! and rounded outward; tests use them as they are and never re-fit.

/// u-channel envelope constant for t ≤ 1.
pub const ENV_U_SMALL_T: f64 = 11.0;
/// t-channel envelope constant for t ≤ 1.
pub const ENV_T_SMALL_T: f64 = 3.4;
/// u-channel envelope constant for 1 < t < T log²T.
pub const ENV_U_TRIVIAL: f64 = 0.29;
/// u-channel envelope constant for t ≥ T log²T.
pub const ENV_U_DECAY: f64 = 0.31;
/// (amplitude, rate) of the t-channel envelope for t > 1.
pub const ENV_T_LARGE_T: (f64, f64) = (0.31, 1.0);

/// Lower bound for the decay rate of log|H̃_t| in t at z = 1/T real, T = 200.
pub const T_DECAY_RATE: f64 = 2.7;

/// Largest |W − W_asym| allowed on the integer grid t ∈ [2, 115] at
/// k = 1, T = 75, ε = 1/10. Measured maximum 2.995e−3 at t = 58.
pub const TOL_IU: f64 = 0.0045;

/// Bracket for W̌(1)/(T·H) at k = 1, ε = 1/10, T ∈ {200, 500, 1000}.
/// Measured 1.4416, 1.4449, 1.4461.
pub const WCHECK_ONE_BRACKET: (f64, f64) = (1.2, 1.6);

/// |W| ≤ K·T^{−4k+5/2}·H^{−1/2} for t ≤ 1.
pub const TRIVIAL_W: f64 = 0.37;
/// |W̌| ≤ K·T·H for t ≤ 1.
pub const TRIVIAL_WCHECK: f64 = 0.8;

/// |z^p H̃_t − t^{4k−5/2} y^{p+1} ρ(y) e^{−2it log y}| ≤ K·t^{4k−7/2}·y^{p+1}.
pub const RHO_RECONSTRUCTION: f64 = 0.04;

/// (K, c) in |H̃_s(1 − T²)| ≤ K·T^{−2(1−σ)}·log T·e^{−c·t}. The log is
/// needed at t = 0, where the block is of size log T / T.
pub const CONVEXITY_T: (f64, f64) = (0.93, 1.0);
