//! Small fixed-size vector helpers shared by the flux kernels.

#[inline]
pub(crate) fn sub<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i] - b[i])
}

#[inline]
pub(crate) fn scale<const N: usize>(s: f64, a: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| s * a[i])
}

/// `a + s * b`
#[inline]
pub(crate) fn axpy<const N: usize>(a: &[f64; N], s: f64, b: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i] + s * b[i])
}

/// HLL average state `(F_R - F_L + s_l U_L - s_r U_R) / (s_l - s_r)`.
#[inline]
pub(crate) fn hll_average<const N: usize>(
    ul: &[f64; N],
    ur: &[f64; N],
    fl: &[f64; N],
    fr: &[f64; N],
    s_l: f64,
    s_r: f64,
) -> [f64; N] {
    let inv = 1.0 / (s_l - s_r);
    std::array::from_fn(|i| (fr[i] - fl[i] + s_l * ul[i] - s_r * ur[i]) * inv)
}

/// HLL intermediate flux `(s_r F_L - s_l F_R + s_l s_r (U_R - U_L)) / (s_r - s_l)`.
#[inline]
pub(crate) fn hll_flux<const N: usize>(
    ul: &[f64; N],
    ur: &[f64; N],
    fl: &[f64; N],
    fr: &[f64; N],
    s_l: f64,
    s_r: f64,
) -> [f64; N] {
    let inv = 1.0 / (s_r - s_l);
    std::array::from_fn(|i| (s_r * fl[i] - s_l * fr[i] + s_l * s_r * (ur[i] - ul[i])) * inv)
}

#[cfg(test)]
pub(crate) fn max_rel_diff<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}
