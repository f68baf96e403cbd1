//! Complex Γ via the Lanczos approximation (g = 7, 9 terms) with reflection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOLERANCE: f64 = 1e-12;

/// `sin(πx)` with exact zeros at the integers.
fn sin_pi_real(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor(); // r ∈ [0, 2)
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

fn cos_pi_real(x: f64) -> f64 {
    sin_pi_real(x + 0.5)
}

/// `sin(πz)`.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sin_pi_real(z.re) * y.cosh(), cos_pi_real(z.re) * y.sinh())
}

/// Lanczos sum for `Re z ≥ ½`.
fn gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(COEFFS[0], 0.0);
    for (k, c) in COEFFS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

fn near_pole(z: Complex64) -> bool {
    z.re <= POLE_TOLERANCE && z.im.abs() < POLE_TOLERANCE && (z.re - z.re.round()).abs() < POLE_TOLERANCE
}

/// `Γ(z)`; errors within `1e−12` of a pole.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if near_pole(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re < 0.5 {
        Ok(PI / (sin_pi(z) * gamma_right(1.0 - z)))
    } else {
        Ok(gamma_right(z))
    }
}

/// `1/Γ(z)`, entire; exactly zero at the non-positive integers.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        sin_pi(z) * gamma_right(1.0 - z) / PI
    } else {
        1.0 / gamma_right(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn known_values() {
        assert!(rel(gamma_complex(Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0)) < 1e-14);
        let half = gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
        assert!(rel(half, Complex64::new(PI.sqrt(), 0.0)) < 1e-10);
        let five = gamma_complex(Complex64::new(5.0, 0.0)).unwrap();
        assert!(rel(five, Complex64::new(24.0, 0.0)) < 1e-12);
        let neg_half = gamma_complex(Complex64::new(-0.5, 0.0)).unwrap();
        assert!(rel(neg_half, Complex64::new(-2.0 * PI.sqrt(), 0.0)) < 1e-12);
        // |Γ(i)|² = π / sinh π
        let gi = gamma_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert!((gi.norm_sqr() - PI / PI.sinh()).abs() < 1e-12);
    }

    #[test]
    fn poles() {
        for k in 0..5 {
            let z = Complex64::new(-(k as f64), 0.0);
            assert!(matches!(gamma_complex(z), Err(Error::GammaPole(_))));
            assert_eq!(recip_gamma(z), Complex64::new(0.0, 0.0));
        }
        assert!(gamma_complex(Complex64::new(-2.0, 1e-3)).is_ok());
    }

    #[test]
    fn recurrence_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = Complex64::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            if near_pole(z) || near_pole(z + 1.0) {
                continue;
            }
            let lhs = gamma_complex(z + 1.0).unwrap();
            let rhs = z * gamma_complex(z).unwrap();
            assert!(rel(lhs, rhs) < 1e-9, "{z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn large_arguments() {
        // Γ(50) = 49!
        let fact: f64 = (1..50).map(|k| k as f64).product();
        assert!(rel(gamma_complex(Complex64::new(50.0, 0.0)).unwrap(), Complex64::new(fact, 0.0)) < 1e-10);
        let g = gamma_complex(Complex64::new(-30.5, 10.0)).unwrap();
        let r = recip_gamma(Complex64::new(-30.5, 10.0));
        assert!(rel(g * r, Complex64::new(1.0, 0.0)) < 1e-10);
    }
}
