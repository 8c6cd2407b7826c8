//! Gauss-Legendre quadrature rules on [-1, 1].

use crate::error::CoreError;

/// Nodes and weights for an n-point Gauss-Legendre rule, exact for
/// polynomials of degree 2n - 1. Supported orders: 1..=5.
pub fn gauss_legendre(n: usize) -> Result<&'static [(f64, f64)], CoreError> {
    // Values to full f64 precision.
    const N1: [(f64, f64); 1] = [(0.0, 2.0)];
    const N2: [(f64, f64); 2] = [
        (-0.5773502691896257, 1.0),
        (0.5773502691896257, 1.0),
    ];
    const N3: [(f64, f64); 3] = [
        (-0.7745966692414834, 0.5555555555555556),
        (0.0, 0.8888888888888888),
        (0.7745966692414834, 0.5555555555555556),
    ];
    const N4: [(f64, f64); 4] = [
        (-0.8611363115940526, 0.3478548451374538),
        (-0.3399810435848563, 0.6521451548625461),
        (0.3399810435848563, 0.6521451548625461),
        (0.8611363115940526, 0.3478548451374538),
    ];
    const N5: [(f64, f64); 5] = [
        (-0.9061798459386640, 0.2369268850561891),
        (-0.5384693101056831, 0.4786286704993665),
        (0.0, 0.5688888888888889),
        (0.5384693101056831, 0.4786286704993665),
        (0.9061798459386640, 0.2369268850561891),
    ];
    match n {
        1 => Ok(&N1),
        2 => Ok(&N2),
        3 => Ok(&N3),
        4 => Ok(&N4),
        5 => Ok(&N5),
        _ => Err(CoreError::UnsupportedQuadrature(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(n: usize, f: impl Fn(f64) -> f64) -> f64 {
        gauss_legendre(n).unwrap().iter().map(|&(x, w)| w * f(x)).sum()
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in 1..=5 {
            let s: f64 = gauss_legendre(n).unwrap().iter().map(|&(_, w)| w).sum();
            assert!((s - 2.0).abs() <= 1e-15, "order {n}: {s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        // Integral of x^k over [-1, 1] is 0 for odd k, 2/(k+1) for even k.
        for n in 1..=5usize {
            for k in 0..=(2 * n - 1) {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                let got = integrate(n, |x| x.powi(k as i32));
                assert!(
                    (got - exact).abs() <= 1e-14,
                    "order {n}, degree {k}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn unsupported_order_is_rejected() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(6).is_err());
    }
}
