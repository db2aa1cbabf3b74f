//! Welch's unequal-variance t-test.

use core::fmt;

use crate::{Error, Result};

/// Two-group comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroupComparison {
    pub mean_a: f64,
    pub sd_a: f64,
    pub n_a: usize,
    pub mean_b: f64,
    pub sd_b: f64,
    pub n_b: usize,
    pub t: f64,
    /// Welch–Satterthwaite degrees of freedom.
    pub df: f64,
    /// Two-sided p-value.
    pub p: f64,
}

/// Test family recorded with every comparison.
pub const TEST_NAME: &str = "welch-two-sample-t (two-sided)";

impl fmt::Display for GroupComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({:.2}) = {:.2}; ", self.df, self.t)?;
        if self.p >= 1e-4 {
            write!(f, "p = {:.4}", self.p)
        } else {
            write!(f, "p = {:.2e}", self.p)
        }
    }
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, ss / (n - 1.0))
}

pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<GroupComparison> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::input("each sample needs at least two values"));
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(Error::input("samples contain non-finite values"));
    }
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (sa, sb) = (va / na, vb / nb);
    let se2 = sa + sb;

    let (t, df, p) = if se2 == 0.0 {
        if ma != mb {
            return Err(Error::undefined(
                "both samples are constant with different means",
            ));
        }
        (0.0, na + nb - 2.0, 1.0)
    } else {
        let t = (ma - mb) / libm::sqrt(se2);
        let df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
        (t, df, student_t_two_sided(t, df))
    };
    Ok(GroupComparison {
        mean_a: ma,
        sd_a: libm::sqrt(va),
        n_a: a.len(),
        mean_b: mb,
        sd_b: libm::sqrt(vb),
        n_b: b.len(),
        t,
        df,
        p,
    })
}

/// P(|T| ≥ |t|) for Student's t with `df` degrees of freedom:
/// I_{df/(df+t²)}(df/2, 1/2).
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    let x = df / (df + t * t);
    regularized_incomplete_beta(x, df / 2.0, 0.5).clamp(0.0, 1.0)
}

fn ln_beta(a: f64, b: f64) -> f64 {
    libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b)
}

/// Regularized incomplete beta I_x(a, b), via the continued fraction
/// evaluated with the modified Lentz method.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let front = libm::exp(a * libm::log(x) + b * libm::log1p(-x) - ln_beta(a, b));
    // The fraction converges fast for x < (a+1)/(a+b+2); use symmetry otherwise.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_fraction(x, a, b) / a
    } else {
        1.0 - front * beta_fraction(1.0 - x, b, a) / b
    }
}

fn beta_fraction(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let tiny_guard = |v: f64| if v.abs() < TINY { TINY } else { v };

    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 / tiny_guard(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=1000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / tiny_guard(1.0 + aa * d);
        c = tiny_guard(1.0 + aa / c);
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / tiny_guard(1.0 + aa * d);
        c = tiny_guard(1.0 + aa / c);
        let step = d * c;
        h *= step;
        if (step - 1.0).abs() < EPS {
            break;
        }
    }
    h
}
