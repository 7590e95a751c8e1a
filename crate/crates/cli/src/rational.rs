/// Largest denominator tried when naming a probability as a fraction.
pub const MAX_DENOMINATOR: u32 = 64;
pub const RATIONAL_TOLERANCE: f64 = 1e-9;

/// `p/q` in lowest terms with `q ≤ 64`, if one lies within `1e-9` of `x`.
pub fn nearest_rational(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    (1..=MAX_DENOMINATOR).find_map(|q| {
        let q = f64::from(q);
        let p = (x * q).round();
        ((x - p / q).abs() <= RATIONAL_TOLERANCE).then(|| format!("{}/{}", p + 0.0, q))
    })
}
