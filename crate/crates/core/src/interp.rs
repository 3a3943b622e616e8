//! Monotone piecewise-cubic interpolation (Fritsch-Carlson).
//!
//! Used for sampled material models and for the tabulated cohesive laws,
//! where interpolation must not overshoot: the tables carry monotonicity
//! and Lipschitz invariants that a plain cubic spline would violate.

/// Monotone cubic Hermite interpolant on strictly increasing abscissae.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    /// Build the interpolant. Panics if `x` is not strictly increasing
    /// or the lengths differ.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len());
        assert!(x.len() >= 2);
        assert!(x.windows(2).all(|w| w[1] > w[0]), "x must be increasing");
        let n = x.len();
        let mut delta = vec![0.0; n - 1];
        for i in 0..n - 1 {
            delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        }
        let mut d = vec![0.0; n];
        d[0] = delta[0];
        d[n - 1] = delta[n - 2];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                // harmonic mean weighted by interval lengths
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // Fritsch-Carlson limiter
        for i in 0..n - 1 {
            if delta[i] == 0.0 {
                d[i] = 0.0;
                d[i + 1] = 0.0;
            } else {
                let a = d[i] / delta[i];
                let b = d[i + 1] / delta[i];
                let r = a * a + b * b;
                if r > 9.0 {
                    let t = 3.0 / r.sqrt();
                    d[i] = t * a * delta[i];
                    d[i + 1] = t * b * delta[i];
                }
            }
        }
        Self { x, y, d }
    }

    fn segment(&self, x: f64) -> usize {
        match self
            .x
            .binary_search_by(|v| v.partial_cmp(&x).expect("NaN abscissa"))
        {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.x.len() - 2),
        }
    }

    /// Evaluate at `x`; clamps to the table range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.x.len();
        if x <= self.x[0] {
            return self.y[0];
        }
        if x >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self.segment(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }

    /// Derivative of the interpolant at `x` (one-sided at the ends).
    pub fn eval_deriv(&self, x: f64) -> f64 {
        let n = self.x.len();
        let xc = x.clamp(self.x[0], self.x[n - 1]);
        let i = self.segment(xc);
        let h = self.x[i + 1] - self.x[i];
        let t = (xc - self.x[i]) / h;
        let dh00 = 6.0 * t * t - 6.0 * t;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh01 = -6.0 * t * t + 6.0 * t;
        let dh11 = 3.0 * t * t - 2.0 * t;
        (dh00 * self.y[i] + dh01 * self.y[i + 1]) / h + dh10 * self.d[i] + dh11 * self.d[i + 1]
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }
}

/// Piecewise-linear interpolation with clamped extrapolation.
pub fn lerp_table(x: &[f64], y: &[f64], at: f64) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let n = x.len();
    if at <= x[0] {
        return y[0];
    }
    if at >= x[n - 1] {
        return y[n - 1];
    }
    let i = match x.binary_search_by(|v| v.partial_cmp(&at).unwrap()) {
        Ok(i) => return y[i],
        Err(i) => i - 1,
    };
    let t = (at - x[i]) / (x[i + 1] - x[i]);
    y[i] + t * (y[i + 1] - y[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn reproduces_nodes() {
        let x = vec![0.0, 0.5, 1.0, 2.0];
        let y = vec![0.0, 0.4, 0.5, 0.9];
        let m = MonotoneCubic::new(x.clone(), y.clone());
        for (xi, yi) in x.iter().zip(y.iter()) {
            assert_abs_diff_eq!(m.eval(*xi), *yi, epsilon = 1e-15);
        }
    }

    proptest! {
        #[test]
        fn monotone_data_stays_monotone(raw in proptest::collection::vec(0.0f64..1.0, 4..12)) {
            let mut y = vec![0.0];
            for r in &raw {
                y.push(y.last().unwrap() + r);
            }
            let x: Vec<f64> = (0..y.len()).map(|i| i as f64).collect();
            let m = MonotoneCubic::new(x.clone(), y);
            let mut prev = f64::NEG_INFINITY;
            for k in 0..=400 {
                let v = m.eval(x[0] + (x[x.len()-1] - x[0]) * k as f64 / 400.0);
                prop_assert!(v >= prev - 1e-12);
                prev = v;
            }
        }

        #[test]
        fn interpolant_within_data_range(vals in proptest::collection::vec(-5.0f64..5.0, 4..10)) {
            let x: Vec<f64> = (0..vals.len()).map(|i| i as f64).collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let m = MonotoneCubic::new(x.clone(), vals.clone());
            for k in 0..=200 {
                let v = m.eval(x[0] + (x[x.len()-1] - x[0]) * k as f64 / 200.0);
                // monotone-limited cubics cannot overshoot the data hull
                prop_assert!(v >= lo - 1e-9 && v <= hi + 1e-9);
            }
        }
    }
}
