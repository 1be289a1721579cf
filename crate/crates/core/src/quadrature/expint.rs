use num_complex::Complex64;

use crate::error::{domain, Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_TERMS: usize = 100_000;

/// Generalised exponential integral `E_n(z) = int_1^inf e^{-zt} t^{-n} dt`
/// for `n >= 1` and `Re z >= 0`, `z != 0` (principal branch).
///
/// Uses the continued fraction for `|z| >= 2` and the power series below.
pub fn expint_complex(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return domain("expint order must be >= 1");
    }
    if z.re < 0.0 || !z.is_finite() {
        return domain(format!("expint argument {z} outside the right half-plane"));
    }
    if z.norm() == 0.0 {
        if n == 1 {
            return domain("E_1 diverges at the origin");
        }
        return Ok(Complex64::new(1.0 / (n - 1) as f64, 0.0));
    }
    if z.norm() >= 2.0 {
        continued_fraction(n, z)
    } else {
        series(n, z)
    }
}

fn continued_fraction(n: u32, z: Complex64) -> Result<Complex64> {
    let tiny = Complex64::new(1e-300, 0.0);
    let nf = n as f64;
    let mut b = z + nf;
    let mut c = Complex64::new(1e300, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -(i as f64) * (nf - 1.0 + i as f64);
        b += 2.0;
        d = an * d + b;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = b + an / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 4.0 * f64::EPSILON {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::NonConvergence(format!("E_{n}({z}) continued fraction")))
}

fn series(n: u32, z: Complex64) -> Result<Complex64> {
    let nm1 = n as usize - 1;
    let mut ans = if nm1 == 0 {
        -z.ln() - EULER_GAMMA
    } else {
        Complex64::new(1.0 / nm1 as f64, 0.0)
    };
    let mut fact = Complex64::new(1.0, 0.0);
    for i in 1..MAX_TERMS {
        fact *= -z / i as f64;
        let del = if i != nm1 {
            -fact / (i as f64 - nm1 as f64)
        } else {
            let psi = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-z.ln() + psi)
        };
        ans += del;
        if i >= nm1 && del.norm() < f64::EPSILON * ans.norm() {
            return Ok(ans);
        }
    }
    Err(Error::NonConvergence(format!("E_{n}({z}) series")))
}
