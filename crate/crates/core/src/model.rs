//! Material models: the generating function `f`, its decreasing companion
//! `f1(s) = s f(1-s)`, and the elastic / phase-field densities derived
//! from them.

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;

/// Which function of the model to evaluate in [`MaterialModel::eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFn {
    /// The generating function f(t).
    F,
    /// f1(t) = t f(1 - t).
    F1,
    /// d f1 / dt.
    F1Prime,
    /// f1(sqrt(t))^2, the quantity under the profile integrals.
    F1SqOfSqrt,
}

/// Cap applied to sampled generating functions near their pole at t = 1.
const SAMPLED_F_CAP: f64 = 1e12;

#[derive(Debug, Clone)]
enum Family {
    /// f(t) = ell t / (1 - t), f1(s) = ell (1 - s).
    A,
    /// f1(s) = (ell + b s)(1 - s)^2 with b in (-ell, 2 ell).
    B { b: f64 },
    /// Monotone-cubic interpolation of sampled f on [0, t_last], with the
    /// tail t > t_last continued through a linear continuation of f1
    /// near the origin (f1(s) = ell - ell1 s matched at s = 1 - t_last).
    Sampled {
        f_interp: MonotoneCubic,
        /// f1 sampled on [1 - t_last, 1], monotone-cubic.
        f1_interp: MonotoneCubic,
        /// continuation f1(s) = a + b s on [0, 1 - t_last)
        cont_a: f64,
        cont_b: f64,
        s_first: f64,
    },
}

/// An immutable material model; all evaluations are pure.
#[derive(Debug, Clone)]
pub struct MaterialModel {
    family: Family,
    ell: f64,
    ell1: f64,
}

impl MaterialModel {
    /// The prototype family f(t) = ell t/(1-t) (ell1 = ell).
    pub fn family_a(ell: f64) -> Result<Self> {
        if ell <= 0.0 {
            return Err(Error::Domain(format!("ell must be positive, got {ell}")));
        }
        Ok(Self {
            family: Family::A,
            ell,
            ell1: ell,
        })
    }

    /// The prototype family f1(s) = (ell + b s)(1-s)^2 (ell1 = 2 ell - b).
    pub fn family_b(ell: f64, b: f64) -> Result<Self> {
        if ell <= 0.0 {
            return Err(Error::Domain(format!("ell must be positive, got {ell}")));
        }
        if b <= -ell || b >= 2.0 * ell {
            return Err(Error::Domain(format!(
                "family-b parameter b = {b} outside (-ell, 2 ell) = ({}, {})",
                -ell,
                2.0 * ell
            )));
        }
        Ok(Self {
            family: Family::B { b },
            ell,
            ell1: 2.0 * ell - b,
        })
    }

    /// A model interpolated from samples (t_i, f(t_i)) with t in [0, 1).
    ///
    /// The declared `ell`, `ell1` describe the linear continuation of f1
    /// near s = 0 once the samples run out; `validate` re-extracts both
    /// numerically and reports disagreement.
    pub fn sampled(samples: &[(f64, f64)], ell: f64, ell1: f64) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::Domain(
                "sampled model needs at least 4 samples".into(),
            ));
        }
        let mut t: Vec<f64> = samples.iter().map(|p| p.0).collect();
        let fv: Vec<f64> = samples.iter().map(|p| p.1).collect();
        if t[0] != 0.0 {
            return Err(Error::Domain("samples must start at t = 0".into()));
        }
        if t.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("sample abscissae must be increasing".into()));
        }
        let t_last = *t.last().unwrap();
        if t_last >= 1.0 {
            return Err(Error::Domain("samples must satisfy t < 1".into()));
        }
        let f_interp = MonotoneCubic::new(t.clone(), fv.clone());
        // f1 on [1 - t_last, 1], sampled at the mirrored abscissae
        t.reverse();
        let s_nodes: Vec<f64> = t.iter().map(|ti| 1.0 - ti).collect();
        let f1_nodes: Vec<f64> = s_nodes.iter().map(|s| s * f_interp.eval(1.0 - s)).collect();
        let f1_interp = MonotoneCubic::new(s_nodes.clone(), f1_nodes);
        let s_first = s_nodes[0];
        // Continuation f1 = a + b s on [0, s_first), matched in value and
        // slope; falls back to the declared (ell, ell1) when s_first = 0.
        let (cont_a, cont_b) = if s_first > 0.0 {
            let v = f1_interp.eval(s_first);
            let d = f1_interp.eval_deriv(s_first);
            (v - s_first * d, d)
        } else {
            (ell, -ell1)
        };
        Ok(Self {
            family: Family::Sampled {
                f_interp,
                f1_interp,
                cont_a,
                cont_b,
                s_first,
            },
            ell,
            ell1,
        })
    }

    /// ell = f1(0), the slope of g0 at the origin.
    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// ell1 = -f1'(0).
    pub fn ell1(&self) -> f64 {
        self.ell1
    }

    pub fn family_label(&self) -> String {
        match &self.family {
            Family::A => format!("a(ell={})", self.ell),
            Family::B { b } => format!("b(ell={},b={})", self.ell, b),
            Family::Sampled { .. } => format!("sampled(ell={},ell1={})", self.ell, self.ell1),
        }
    }

    /// f1(s) = s f(1 - s); total on [0, 1].
    pub fn f1(&self, s: f64) -> f64 {
        debug_assert!((-1e-12..=1.0 + 1e-12).contains(&s));
        let s = s.clamp(0.0, 1.0);
        match &self.family {
            Family::A => self.ell * (1.0 - s),
            Family::B { b } => (self.ell + b * s) * (1.0 - s) * (1.0 - s),
            Family::Sampled {
                f1_interp,
                cont_a,
                cont_b,
                s_first,
                ..
            } => {
                if s < *s_first {
                    (cont_a + cont_b * s).max(0.0)
                } else {
                    f1_interp.eval(s).max(0.0)
                }
            }
        }
    }

    /// d f1 / ds.
    pub fn f1_prime(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, 1.0);
        match &self.family {
            Family::A => -self.ell,
            Family::B { b } => {
                b * (1.0 - s) * (1.0 - s) - 2.0 * (self.ell + b * s) * (1.0 - s)
            }
            Family::Sampled {
                f1_interp,
                cont_b,
                s_first,
                ..
            } => {
                if s < *s_first {
                    *cont_b
                } else {
                    f1_interp.eval_deriv(s)
                }
            }
        }
    }

    /// The generating function f itself. Errors at the t = 1 pole for the
    /// analytic families; sampled models return a capped continuation.
    pub fn f(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("f argument {t} outside [0, 1]")));
        }
        match &self.family {
            Family::A => {
                if t >= 1.0 {
                    Err(Error::Pole)
                } else {
                    Ok(self.ell * t / (1.0 - t))
                }
            }
            Family::B { b } => {
                if t >= 1.0 {
                    Err(Error::Pole)
                } else {
                    Ok((self.ell + b * (1.0 - t)) * t * t / (1.0 - t))
                }
            }
            Family::Sampled { f_interp, .. } => {
                if t <= f_interp.x_max() {
                    Ok(f_interp.eval(t))
                } else {
                    // continue through f1: f(t) = f1(1-t)/(1-t), capped
                    let s = 1.0 - t;
                    if s <= 0.0 {
                        Ok(SAMPLED_F_CAP)
                    } else {
                        Ok((self.f1(s) / s).min(SAMPLED_F_CAP))
                    }
                }
            }
        }
    }

    /// Dispatch by [`ModelFn`]; the uniform entry point used by the CLI.
    pub fn eval(&self, which: ModelFn, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("argument {t} outside [0, 1]")));
        }
        match which {
            ModelFn::F => self.f(t),
            ModelFn::F1 => Ok(self.f1(t)),
            ModelFn::F1Prime => Ok(self.f1_prime(t)),
            ModelFn::F1SqOfSqrt => {
                let v = self.f1(t.sqrt());
                Ok(v * v)
            }
        }
    }

    /// The relaxed elastic density h: quadratic up to ell/2, linear after.
    pub fn h(&self, xi: f64) -> f64 {
        let a = xi.abs();
        if a <= 0.5 * self.ell {
            xi * xi
        } else {
            self.ell * a - 0.25 * self.ell * self.ell
        }
    }

    /// h'(xi), continuous with |h'| <= ell.
    pub fn h_prime(&self, xi: f64) -> f64 {
        let a = xi.abs();
        if a <= 0.5 * self.ell {
            2.0 * xi
        } else {
            self.ell * xi.signum()
        }
    }

    /// The capped phase-field coefficient f_eps(v) = min(1, sqrt(eps) f(v)),
    /// with f_eps(1) = 1 by convention.
    pub fn f_eps(&self, v: f64, eps: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!("f_eps argument {v} outside [0, 1]")));
        }
        if eps <= 0.0 {
            return Err(Error::Domain(format!("eps must be positive, got {eps}")));
        }
        if v >= 1.0 {
            return Ok(1.0);
        }
        // below the cap the pole never gets evaluated: f(v) < 1/sqrt(eps)
        let fv = match self.f(v) {
            Ok(x) => x,
            Err(Error::Pole) => return Ok(1.0),
            Err(e) => return Err(e),
        };
        Ok((eps.sqrt() * fv).min(1.0))
    }

    /// d/dv of f_eps(v)^2; zero on the capped branch, used by the
    /// phase-field descent (subgradient selection at the kink).
    pub fn f_eps_sq_prime(&self, v: f64, eps: f64) -> f64 {
        if v >= 1.0 {
            return 0.0;
        }
        let fv = match self.f(v) {
            Ok(x) => x,
            Err(_) => return 0.0,
        };
        let root_eps = eps.sqrt();
        if root_eps * fv >= 1.0 {
            return 0.0;
        }
        let fpv = match &self.family {
            Family::A => self.ell / ((1.0 - v) * (1.0 - v)),
            Family::B { b } => {
                // f = ell v^2/q + b v^2 with q = 1 - v
                let q = 1.0 - v;
                self.ell * v * (2.0 * q + v) / (q * q) + 2.0 * b * v
            }
            Family::Sampled { f_interp, .. } => {
                if v <= f_interp.x_max() {
                    f_interp.eval_deriv(v)
                } else {
                    let h = 1e-7;
                    let a = self.f((v - h).max(0.0)).unwrap_or(fv);
                    let b = self.f((v + h).min(1.0 - 1e-12)).unwrap_or(fv);
                    (b - a) / (2.0 * h)
                }
            }
        };
        2.0 * eps * fv * fpv
    }
}

/// One line of a model validation report.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub worst_violation: f64,
}

/// Numerical validation of the structural assumptions on f.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub ell_extracted: f64,
    pub ell1_extracted: f64,
    pub all_pass: bool,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Check the model assumptions on a sample grid: positivity and
/// monotonicity of f, strict decrease of f1 with the endpoint values
/// f1(0) = ell and f1(1) = 0, and convexity of t -> f1(sqrt t).
/// Never fails on violating sampled models; the report carries the verdicts.
pub fn validate_model(model: &MaterialModel, grid_size: usize) -> Result<ValidationReport> {
    if grid_size < 16 {
        return Err(Error::Domain(format!(
            "grid_size must be at least 16, got {grid_size}"
        )));
    }
    let n = grid_size;
    let mut checks = Vec::new();
    let mut push = |name: &str, worst: f64, tol: f64| {
        checks.push(CheckResult {
            name: name.to_string(),
            pass: worst <= tol,
            worst_violation: worst,
        });
    };

    // f(0) = 0, f > 0 on (0, 1), f nondecreasing; stay below the pole
    let t_hi = 1.0 - 1.0 / n as f64;
    let mut worst_zero = model.f(0.0).map(|v| v.abs()).unwrap_or(f64::INFINITY);
    let mut worst_pos = 0.0f64;
    let mut worst_mono = 0.0f64;
    let mut prev = 0.0;
    for k in 0..=n {
        let t = t_hi * k as f64 / n as f64;
        let v = match model.f(t) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if k == 0 {
            worst_zero = worst_zero.min(v.abs());
        } else {
            worst_pos = worst_pos.max(-v);
            worst_mono = worst_mono.max(prev - v);
        }
        prev = v;
    }
    push("f(0) = 0", worst_zero, 1e-10);
    push("f > 0 on (0, 1)", worst_pos, 0.0);
    push("f nondecreasing", worst_mono, 1e-10);

    // f1 strictly decreasing on [0, 1], f1(0) = ell, f1(1) = 0
    let mut worst_dec = f64::NEG_INFINITY;
    let mut prev = model.f1(0.0);
    for k in 1..=n {
        let s = k as f64 / n as f64;
        let v = model.f1(s);
        worst_dec = worst_dec.max(v - prev);
        prev = v;
    }
    push("f1 strictly decreasing", worst_dec, -1e-12);
    let ell_extracted = model.f1(0.0);
    push(
        "f1(0) = ell",
        (ell_extracted - model.ell()).abs(),
        1e-10 * model.ell().max(1.0),
    );
    push("f1(1) = 0", model.f1(1.0).abs(), 1e-10);

    // convexity of t -> f1(sqrt t) by second differences on a 1024 grid
    let cn = 1024usize;
    let dt = 1.0 / cn as f64;
    let mut worst_convex = 0.0f64;
    for k in 1..cn {
        let tm = (k - 1) as f64 * dt;
        let t0 = k as f64 * dt;
        let tp = (k + 1) as f64 * dt;
        let second =
            model.f1(tp.sqrt()) - 2.0 * model.f1(t0.sqrt()) + model.f1(tm.sqrt());
        worst_convex = worst_convex.max(-second);
    }
    push("f1(sqrt .) convex", worst_convex, 1e-8);

    // ell1 by one-sided difference, step 1e-6
    let h = 1e-6;
    let ell1_extracted = -(model.f1(h) - model.f1(0.0)) / h;
    push(
        "-f1'(0) = ell1",
        (ell1_extracted - model.ell1()).abs(),
        1e-4 * model.ell1().max(1.0),
    );

    if let Family::B { b } = &model.family {
        let ok = *b > -model.ell() && *b < 2.0 * model.ell();
        checks.push(CheckResult {
            name: "b in (-ell, 2 ell)".to_string(),
            pass: ok,
            worst_violation: if ok { 0.0 } else { f64::INFINITY },
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(ValidationReport {
        checks,
        ell_extracted,
        ell1_extracted,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn family_a_f1_quarter() {
        let m = MaterialModel::family_a(1.0).unwrap();
        assert_abs_diff_eq!(m.eval(ModelFn::F1, 0.25).unwrap(), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn f1_vanishes_at_one() {
        for m in [
            MaterialModel::family_a(0.7).unwrap(),
            MaterialModel::family_b(1.5, 2.8).unwrap(),
        ] {
            assert_abs_diff_eq!(m.eval(ModelFn::F1, 1.0).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn family_b_f1_at_zero_is_ell() {
        let m = MaterialModel::family_b(1.5, 2.8).unwrap();
        assert_abs_diff_eq!(m.eval(ModelFn::F1, 0.0).unwrap(), 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m.ell1(), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn family_b_rejects_bad_b() {
        assert!(MaterialModel::family_b(1.0, 2.0).is_err());
        assert!(MaterialModel::family_b(1.0, -1.0).is_err());
        assert!(MaterialModel::family_b(1.0, 1.99).is_ok());
    }

    #[test]
    fn h_branch_values() {
        let m = MaterialModel::family_a(1.0).unwrap();
        assert_eq!(m.h(0.0), 0.0);
        assert_abs_diff_eq!(m.h(0.5), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m.h(2.0), 1.75, epsilon = 1e-15);
    }

    #[test]
    fn h_prime_is_continuous_and_bounded() {
        for ell in [0.5, 1.0, 1.5] {
            let m = MaterialModel::family_a(ell).unwrap();
            for k in -400..=400 {
                let xi = k as f64 * 0.01;
                assert!(m.h_prime(xi).abs() <= ell + 1e-12);
                if (xi.abs() - 0.5 * ell).abs() > 1e-3 {
                    let h = 1e-7;
                    let fd = (m.h(xi + h) - m.h(xi - h)) / (2.0 * h);
                    assert_abs_diff_eq!(fd, m.h_prime(xi), epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn f_eps_conventions() {
        let a = MaterialModel::family_a(1.0).unwrap();
        let b = MaterialModel::family_b(1.5, 2.8).unwrap();
        for m in [&a, &b] {
            assert_eq!(m.f_eps(1.0, 0.01).unwrap(), 1.0);
            assert_eq!(m.f_eps(0.0, 0.01).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(a.f_eps(0.5, 0.01).unwrap(), 0.1, epsilon = 1e-15);
    }

    #[test]
    fn f_pole_and_domain_errors() {
        let m = MaterialModel::family_a(1.0).unwrap();
        assert!(matches!(m.f(1.0), Err(Error::Pole)));
        assert!(matches!(m.eval(ModelFn::F1, 1.5), Err(Error::Domain(_))));
        assert!(matches!(m.eval(ModelFn::F1, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn validation_passes_for_families() {
        for ell in [0.5, 1.0, 1.5] {
            let m = MaterialModel::family_a(ell).unwrap();
            let r = validate_model(&m, 256).unwrap();
            assert!(r.all_pass, "family a ell={ell}: {:?}", r.checks);
            assert_abs_diff_eq!(r.ell_extracted, ell, epsilon = 1e-10);
            assert_abs_diff_eq!(r.ell1_extracted, ell, epsilon = 1e-4);
            for b in [-0.4, 0.0, 1.0, 2.8] {
                if b <= -ell || b >= 2.0 * ell {
                    continue;
                }
                let m = MaterialModel::family_b(ell, b).unwrap();
                let r = validate_model(&m, 256).unwrap();
                assert!(r.all_pass, "family b ell={ell} b={b}: {:?}", r.checks);
                assert_abs_diff_eq!(r.ell1_extracted, 2.0 * ell - b, epsilon = 1e-4);
            }
        }
    }

    #[test]
    fn validation_flags_decreasing_sample() {
        // f decreasing on a subinterval: monotonicity check must fail
        let samples: Vec<(f64, f64)> = (0..20)
            .map(|i| {
                let t = i as f64 * 0.045;
                let v = if (6..9).contains(&i) { 0.5 - 0.1 * (i - 6) as f64 } else { t };
                (t, v)
            })
            .collect();
        let m = MaterialModel::sampled(&samples, 1.0, 1.0).unwrap();
        let r = validate_model(&m, 256).unwrap();
        assert!(!r.check("f nondecreasing").unwrap().pass);
        assert!(!r.all_pass);
    }

    #[test]
    fn sampled_tracks_family_a() {
        let exact = MaterialModel::family_a(1.0).unwrap();
        let samples: Vec<(f64, f64)> = (0..=160)
            .map(|i| {
                let t = 0.95 * i as f64 / 160.0;
                (t, exact.f(t).unwrap())
            })
            .collect();
        let m = MaterialModel::sampled(&samples, 1.0, 1.0).unwrap();
        for k in 0..=50 {
            let s = k as f64 / 50.0;
            assert_abs_diff_eq!(m.f1(s), exact.f1(s), epsilon = 2e-3);
        }
        let r = validate_model(&m, 128).unwrap();
        assert!(
            r.check("f1 strictly decreasing").unwrap().pass,
            "{:?}",
            r.checks
        );
    }

    proptest! {
        #[test]
        fn f_eps_monotone_in_v_and_eps(
            ell in 0.5f64..2.0,
            v1 in 0.0f64..1.0,
            dv in 0.0f64..0.5,
            e1 in 1e-4f64..0.1,
            de in 0.0f64..0.1,
        ) {
            let m = MaterialModel::family_a(ell).unwrap();
            let v2 = (v1 + dv).min(1.0);
            let e2 = e1 + de;
            prop_assert!(m.f_eps(v2, e1).unwrap() >= m.f_eps(v1, e1).unwrap() - 1e-12);
            prop_assert!(m.f_eps(v1, e2).unwrap() >= m.f_eps(v1, e1).unwrap() - 1e-12);
        }

        #[test]
        fn h_is_even_and_convex(ell in 0.5f64..2.0, x in -3.0f64..3.0, y in -3.0f64..3.0) {
            let m = MaterialModel::family_a(ell).unwrap();
            prop_assert!((m.h(x) - m.h(-x)).abs() < 1e-14);
            let mid = m.h(0.5 * (x + y));
            prop_assert!(mid <= 0.5 * m.h(x) + 0.5 * m.h(y) + 1e-12);
        }
    }
}
