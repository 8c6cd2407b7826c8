//! Closed-form reference for the pre-tensioned strip in in-plane bending:
//! wrinkle-band height and the axial stress profile over the height.

use anyhow::{ensure, Result};

/// Band height h/H of the wrinkled zone at load ratio m = M/(P*H).
///
/// Defined on [0, 1/2]; m = 1/2 is the limiting case where the band spans
/// the full height and the axial stress concentrates at the top edge.
pub fn band_height(m_over_ph: f64) -> Result<f64> {
    ensure!(
        (0.0..=0.5).contains(&m_over_ph),
        "M/(P*H) = {m_over_ph} lies outside [0, 1/2]; the strip theory does not apply"
    );
    Ok(if m_over_ph < 1.0 / 6.0 { 0.0 } else { 3.0 * m_over_ph - 0.5 })
}

/// Normalized axial stress sigma_x/sigma_0 at height fraction y/H, given the
/// band height fraction h/H. Zero inside the band, linear above it.
pub fn sigma_profile(y_over_h: f64, band: f64) -> f64 {
    if y_over_h <= band || band >= 1.0 {
        0.0
    } else {
        2.0 * (y_over_h - band) / (1.0 - band) / (1.0 - band)
    }
}

/// (y/H, sigma_x/sigma_0) table with `n` evenly spaced rows, for printing.
pub fn profile_table(m_over_ph: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    let band = band_height(m_over_ph)?;
    Ok((0..n)
        .map(|i| {
            let y = i as f64 / (n - 1) as f64;
            (y, sigma_profile(y, band))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_height_branches() {
        assert!(band_height(0.0).unwrap() == 0.0);
        assert!(band_height(0.1).unwrap() == 0.0);
        assert!((band_height(0.25).unwrap() - 0.25).abs() < 1e-15);
        assert!((band_height(1.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((band_height(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(band_height(0.51).is_err());
        assert!(band_height(-0.01).is_err());
    }

    #[test]
    fn band_height_is_continuous_at_onset() {
        let eps = 1e-12;
        let below = band_height(1.0 / 6.0 - eps).unwrap();
        let above = band_height(1.0 / 6.0 + eps).unwrap();
        assert!((above - below).abs() < 1e-11);
    }

    #[test]
    fn profile_is_continuous_at_band_edge() {
        let band = 0.25;
        let below = sigma_profile(band, band);
        let above = sigma_profile(band + 1e-15, band);
        assert!(below == 0.0);
        assert!(above.abs() < 1e-14);
    }

    #[test]
    fn profile_values() {
        // No band: linear from 0 at the bottom to 2 at the top.
        assert!((sigma_profile(1.0, 0.0) - 2.0).abs() < 1e-15);
        assert!((sigma_profile(0.5, 0.0) - 1.0).abs() < 1e-15);
        assert!(sigma_profile(0.2, 0.4) == 0.0);
        // Full band: stress vanishes everywhere below the top edge.
        assert!(sigma_profile(0.999, 1.0) == 0.0);
    }

    #[test]
    fn profile_integral_recovers_unit_mean() {
        // The resultant of the profile equals the applied mean stress, so the
        // integral over y/H is 1 for any band height.
        for &m in &[0.0, 0.2, 0.3, 0.45] {
            let band = band_height(m).unwrap();
            let n = 200_000;
            let dy = 1.0 / n as f64;
            let sum: f64 = (0..n)
                .map(|i| sigma_profile((i as f64 + 0.5) * dy, band) * dy)
                .sum();
            assert!((sum - 1.0).abs() < 1e-9, "m={m} integral={sum}");
        }
    }
}
