use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::quadrature::{Estimate, Quadrature};

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;
/// `|f| < 1e-12` beyond this many standard deviations of a unit-height Gaussian.
const GAUSS_CUTOFF: f64 = 7.433_918_589_451_529; // sqrt(2 ln 1e12)

/// Piecewise-linear tabulated function on a uniform grid, written as a sum
/// of hat functions `f(x) = Σ fₖ Λ((x − xₖ)/h)`. Beyond the first and last
/// node it decays linearly to zero over one grid step.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub x0: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl Table {
    pub fn new(xs: &[f64], values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() || xs.len() < 2 {
            return param("tabulated function needs at least two (x, f(x)) rows");
        }
        let step = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        if !(step > 0.0) {
            return param("tabulated x values must be increasing");
        }
        for (k, &x) in xs.iter().enumerate() {
            let expected = xs[0] + k as f64 * step;
            if (x - expected).abs() > 1e-6 * step {
                return param(format!("tabulated x grid is not uniform at row {k} (x = {x})"));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return param("tabulated values must be finite");
        }
        Ok(Table { x0: xs[0], step, values })
    }

    /// Parses two whitespace- or comma-separated numeric columns; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut fs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> =
                line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
            if cols.len() != 2 {
                return param(format!("line {}: expected two columns, found {}", lineno + 1, cols.len()));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| Error::Parameter(format!("line {}: bad number {s:?}", lineno + 1)))
            };
            xs.push(parse(cols[0])?);
            fs.push(parse(cols[1])?);
        }
        Table::new(&xs, fs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
        Table::parse(&text)
    }

    fn node(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.step
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = (x - self.x0) / self.step;
        let k = r.floor();
        let w = r - k;
        let get = |i: f64| -> f64 {
            if i < 0.0 || i >= self.values.len() as f64 {
                0.0
            } else {
                self.values[i as usize]
            }
        };
        (1.0 - w) * get(k) + w * get(k + 1.0)
    }

    pub fn fourier(&self, u: f64) -> Complex64 {
        let half = 0.5 * u * self.step;
        let sinc = if half.abs() < 1e-4 { 1.0 - half * half / 6.0 } else { half.sin() / half };
        // Horner in z = e^{iuh}, then one phase for the first node.
        let z = Complex64::from_polar(1.0, u * self.step);
        let sum = self.values.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &v| acc * z + v);
        sum * Complex64::from_polar(self.step * sinc * sinc, u * self.x0)
    }

    pub fn integral(&self) -> f64 {
        self.step * self.values.iter().sum::<f64>()
    }

    pub fn radius(&self) -> f64 {
        self.x0.abs().max(self.node(self.values.len() - 1).abs()) + self.step
    }
}

type CustomFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Shape {
    Zero,
    /// `e^{−x²/(2σ²)}`
    Gaussian {
        sigma: f64,
    },
    /// `x e^{−x²/2}`
    GaussDeriv,
    /// `Λ(x + 1) − Λ(x − 1)` with `Λ(x) = max(0, 1 − |x|)`
    HatPair,
    /// `sin(x)/(πx)`, whose transform is the indicator of `[−1, 1]`
    LowPass,
    Tabulated(Arc<Table>),
    Custom(CustomFn),
    Scaled(f64, Box<Shape>),
    Shifted(f64, Box<Shape>),
    Sum(Box<Shape>, Box<Shape>),
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Zero => write!(f, "Zero"),
            Shape::Gaussian { sigma } => write!(f, "Gaussian({sigma})"),
            Shape::GaussDeriv => write!(f, "GaussDeriv"),
            Shape::HatPair => write!(f, "HatPair"),
            Shape::LowPass => write!(f, "LowPass"),
            Shape::Tabulated(t) => write!(f, "Tabulated({} nodes)", t.values.len()),
            Shape::Custom(_) => write!(f, "Custom"),
            Shape::Scaled(c, s) => write!(f, "{c}·{s:?}"),
            Shape::Shifted(a, s) => write!(f, "{s:?}(· − {a})"),
            Shape::Sum(a, b) => write!(f, "({a:?} + {b:?})"),
        }
    }
}

fn hat(x: f64) -> f64 {
    (1.0 - x.abs()).max(0.0)
}

impl Shape {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Shape::Zero => 0.0,
            Shape::Gaussian { sigma } => (-0.5 * (x / sigma).powi(2)).exp(),
            Shape::GaussDeriv => x * (-0.5 * x * x).exp(),
            Shape::HatPair => hat(x + 1.0) - hat(x - 1.0),
            Shape::LowPass => {
                if x.abs() < 1e-8 {
                    1.0 / PI
                } else {
                    x.sin() / (PI * x)
                }
            }
            Shape::Tabulated(t) => t.eval(x),
            Shape::Custom(f) => f(x),
            Shape::Scaled(c, s) => c * s.eval(x),
            Shape::Shifted(a, s) => s.eval(x - a),
            Shape::Sum(a, b) => a.eval(x) + b.eval(x),
        }
    }

    fn fourier(&self, u: f64) -> Option<Complex64> {
        Some(match self {
            Shape::Zero => Complex64::new(0.0, 0.0),
            Shape::Gaussian { sigma } => Complex64::new(sigma * SQRT_2PI * (-0.5 * (sigma * u).powi(2)).exp(), 0.0),
            Shape::GaussDeriv => Complex64::new(0.0, u * SQRT_2PI * (-0.5 * u * u).exp()),
            Shape::HatPair => {
                // −2i sin(u) · (sin(u/2)/(u/2))²
                let h = 0.5 * u;
                let sinc = if h.abs() < 1e-4 { 1.0 - h * h / 6.0 } else { h.sin() / h };
                Complex64::new(0.0, -2.0 * u.sin() * sinc * sinc)
            }
            Shape::LowPass => {
                let a = u.abs();
                let v = if a < 1.0 {
                    1.0
                } else if a == 1.0 {
                    0.5
                } else {
                    0.0
                };
                Complex64::new(v, 0.0)
            }
            Shape::Tabulated(t) => t.fourier(u),
            Shape::Custom(_) => return None,
            Shape::Scaled(c, s) => s.fourier(u)? * *c,
            Shape::Shifted(a, s) => s.fourier(u)? * Complex64::from_polar(1.0, u * a),
            Shape::Sum(a, b) => a.fourier(u)? + b.fourier(u)?,
        })
    }

    fn radius(&self) -> f64 {
        match self {
            Shape::Zero => 0.0,
            Shape::Gaussian { sigma } => sigma * GAUSS_CUTOFF,
            Shape::GaussDeriv => 7.71,
            Shape::HatPair => 2.0,
            Shape::LowPass | Shape::Custom(_) => f64::INFINITY,
            Shape::Tabulated(t) => t.radius(),
            Shape::Scaled(c, s) => {
                if let Shape::Gaussian { sigma } = **s {
                    sigma * (2.0 * (1e12 * c.abs().max(1.0)).ln()).sqrt()
                } else {
                    s.radius()
                }
            }
            Shape::Shifted(a, s) => s.radius() + a.abs(),
            Shape::Sum(a, b) => a.radius().max(b.radius()),
        }
    }

    fn compact(&self) -> bool {
        match self {
            Shape::Zero | Shape::HatPair | Shape::Tabulated(_) => true,
            Shape::Gaussian { .. } | Shape::GaussDeriv | Shape::LowPass | Shape::Custom(_) => false,
            Shape::Scaled(_, s) | Shape::Shifted(_, s) => s.compact(),
            Shape::Sum(a, b) => a.compact() && b.compact(),
        }
    }

    /// Points where the function has kinks, for quadrature breakpoints.
    fn kinks(&self, out: &mut Vec<f64>) {
        match self {
            Shape::HatPair => out.extend([-2.0, -1.0, 0.0, 1.0, 2.0]),
            Shape::Scaled(_, s) => s.kinks(out),
            Shape::Shifted(a, s) => {
                let start = out.len();
                s.kinks(out);
                out[start..].iter_mut().for_each(|k| *k += a);
            }
            Shape::Sum(a, b) => {
                a.kinks(out);
                b.kinks(out);
            }
            _ => {}
        }
    }
}

/// A bounded test function `f` with metadata used to check the
/// hypotheses of the limit theorems.
#[derive(Debug, Clone)]
pub struct TestFunction {
    id: String,
    shape: Shape,
    integral: f64,
    abs_first_moment: Option<f64>,
    support_radius: f64,
    compact_support: bool,
}

/// Serializable summary of a [`TestFunction`].
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TestFunctionInfo {
    pub id: String,
    pub integral_f: f64,
    pub abs_first_moment: Option<f64>,
    pub support_radius: f64,
    pub mean_zero: bool,
    pub compact_support: bool,
}

/// Tolerance for `|∫f| ≈ 0` in the mean-zero flag.
pub const MEAN_ZERO_TOL: f64 = 1e-10;

impl TestFunction {
    fn from_shape(id: impl Into<String>, shape: Shape, abs_first_moment: Option<f64>) -> Self {
        let support_radius = shape.radius();
        let compact_support = shape.compact();
        let mut f =
            TestFunction { id: id.into(), shape, integral: 0.0, abs_first_moment, support_radius, compact_support };
        f.integral = match f.shape.fourier(0.0) {
            Some(z) => z.re,
            None => {
                f.integrate_over_support(|x, v| {
                    let _ = x;
                    v
                })
                .value
            }
        };
        f
    }

    /// `f ≡ 0`.
    pub fn zero() -> Self {
        Self::from_shape("zero", Shape::Zero, Some(0.0))
    }

    /// `e^{−x²/2}`.
    pub fn gauss() -> Self {
        Self::gaussian(1.0)
    }

    /// `e^{−x²/(2σ²)}`; `∫ |x f| = 2σ²`.
    pub fn gaussian(sigma: f64) -> Self {
        let id = if sigma == 1.0 { "gauss".to_string() } else { format!("gaussian({sigma})") };
        Self::from_shape(id, Shape::Gaussian { sigma }, Some(2.0 * sigma * sigma))
    }

    /// `e^{−x²/2}` convolved with a centred normal density of standard
    /// deviation `width`. Same integral as [`TestFunction::gauss`], with the
    /// transform damped by `e^{−width² u²/2}`.
    pub fn gauss_mollified(width: f64) -> Self {
        let s = (1.0 + width * width).sqrt();
        let shape = Shape::Scaled(1.0 / s, Box::new(Shape::Gaussian { sigma: s }));
        Self::from_shape(format!("gauss_mollified({width})"), shape, Some(2.0 * s))
    }

    /// `x e^{−x²/2}`, mean zero.
    pub fn gauss_deriv() -> Self {
        Self::from_shape("gauss_deriv", Shape::GaussDeriv, Some(SQRT_2PI))
    }

    /// `e^{−x²/2} − ½e^{−x²/8}`, mean zero.
    pub fn dog() -> Self {
        let shape = Shape::Sum(
            Box::new(Shape::Gaussian { sigma: 1.0 }),
            Box::new(Shape::Scaled(-0.5, Box::new(Shape::Gaussian { sigma: 2.0 }))),
        );
        let mut f = Self::from_shape("dog", shape, None);
        f.abs_first_moment = Some(f.numeric_abs_first_moment());
        f
    }

    /// `Λ(x + 1) − Λ(x − 1)`: compactly supported on `[−2, 2]`, mean zero.
    pub fn hat() -> Self {
        Self::from_shape("hat", Shape::HatPair, Some(2.0))
    }

    /// `f̂(0)·sin(x)/(πx)`: the function whose transform is `f̂(0)·1_{[−1,1]}`.
    /// Bounded but without a finite first absolute moment.
    pub fn low_pass(level: f64) -> Self {
        Self::from_shape(format!("low_pass({level})"), Shape::Scaled(level, Box::new(Shape::LowPass)), None)
    }

    /// A function backed by a data table.
    pub fn tabulated(id: impl Into<String>, table: Table) -> Self {
        let mut f = Self::from_shape(id, Shape::Tabulated(Arc::new(table)), None);
        f.abs_first_moment = Some(f.numeric_abs_first_moment());
        f
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let table = Table::load(path)?;
        Ok(Self::tabulated(format!("file:{}", path.display()), table))
    }

    /// A user-supplied function with no analytic transform. Its first absolute
    /// moment is undeclared until [`TestFunction::declare_abs_first_moment`].
    pub fn custom(id: impl Into<String>, support_radius: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let mut tf = TestFunction {
            id: id.into(),
            shape: Shape::Custom(Arc::new(f)),
            integral: 0.0,
            abs_first_moment: None,
            support_radius,
            compact_support: false,
        };
        tf.integral = tf.integrate_over_support(|_, v| v).value;
        tf
    }

    pub fn declare_abs_first_moment(mut self) -> Self {
        self.abs_first_moment = Some(self.numeric_abs_first_moment());
        self
    }

    /// Resolves a built-in name (`zero`, `gauss`, `gauss_deriv`, `dog`, `hat`)
    /// or `file:<path>`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "zero" => Ok(Self::zero()),
            "gauss" => Ok(Self::gauss()),
            "gauss_deriv" => Ok(Self::gauss_deriv()),
            "dog" => Ok(Self::dog()),
            "hat" => Ok(Self::hat()),
            other => match other.strip_prefix("file:") {
                Some(path) => Self::from_file(Path::new(path)),
                None => param(format!("unknown test function {other:?}")),
            },
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut f = self.clone();
        f.id = format!("{c}*{}", self.id);
        f.shape = Shape::Scaled(c, Box::new(self.shape.clone()));
        f.integral = c * self.integral;
        f.abs_first_moment = self.abs_first_moment.map(|m| m * c.abs());
        f.support_radius = f.shape.radius();
        f
    }

    /// `x ↦ f(x − a)`.
    pub fn shifted(&self, a: f64) -> Self {
        let shape = Shape::Shifted(a, Box::new(self.shape.clone()));
        let mut f = Self::from_shape(format!("{}(x-{a})", self.id), shape, None);
        f.integral = self.integral;
        if self.abs_first_moment.is_some() {
            f.abs_first_moment = Some(f.numeric_abs_first_moment());
        }
        f
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &TestFunction, b: f64) -> Self {
        let shape = Shape::Sum(
            Box::new(Shape::Scaled(a, Box::new(self.shape.clone()))),
            Box::new(Shape::Scaled(b, Box::new(other.shape.clone()))),
        );
        let declared = self.abs_first_moment.is_some() && other.abs_first_moment.is_some();
        let mut f = Self::from_shape(format!("{a}*{}+{b}*{}", self.id, other.id), shape, None);
        f.integral = a * self.integral + b * other.integral;
        if declared {
            f.abs_first_moment = Some(f.numeric_abs_first_moment());
        }
        f
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.shape.eval(x)
    }

    /// `∫ f`.
    pub fn integral_f(&self) -> f64 {
        self.integral
    }

    /// `∫ |x f(x)| dx`, if declared.
    pub fn abs_first_moment(&self) -> Option<f64> {
        self.abs_first_moment
    }

    /// Radius beyond which `|f| < 1e-12` (per unit amplitude).
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn mean_zero(&self) -> bool {
        self.integral.abs() <= MEAN_ZERO_TOL
    }

    pub fn compact_support(&self) -> bool {
        self.compact_support
    }

    pub fn is_identically_zero(&self) -> bool {
        matches!(self.shape, Shape::Zero)
    }

    pub fn has_analytic_fourier(&self) -> bool {
        self.shape.fourier(0.0).is_some()
    }

    pub fn info(&self) -> TestFunctionInfo {
        TestFunctionInfo {
            id: self.id.clone(),
            integral_f: self.integral,
            abs_first_moment: self.abs_first_moment,
            support_radius: self.support_radius,
            mean_zero: self.mean_zero(),
            compact_support: self.compact_support,
        }
    }

    /// `f̂(u) = ∫ e^{iux} f(x) dx`, analytic when known, otherwise by quadrature.
    pub fn fourier(&self, u: f64) -> Complex64 {
        match self.shape.fourier(u) {
            Some(z) => z,
            None => self.fourier_quadrature(u).map(|(z, _)| z).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
        }
    }

    /// `f̂(u)` by direct quadrature over `[−R, R]`, with the error estimate.
    pub fn fourier_quadrature(&self, u: f64) -> Result<(Complex64, f64)> {
        if !self.support_radius.is_finite() {
            return Err(Error::Numerical {
                message: format!("{}: no finite support radius for Fourier quadrature", self.id),
                achieved: f64::INFINITY,
            });
        }
        let q = Quadrature::new(1e-13, 1e-12).with_max_intervals(4000);
        let pts = self.breakpoints(u.abs());
        let re = q.integrate_with_breaks(|x| self.eval(x) * (u * x).cos(), &pts).require("Fourier transform (re)")?;
        let im = q.integrate_with_breaks(|x| self.eval(x) * (u * x).sin(), &pts).require("Fourier transform (im)")?;
        Ok((Complex64::new(re.value, im.value), re.error + im.error))
    }

    /// Breakpoints over `[−R, R]` resolving kinks and oscillation at frequency `u`.
    pub(crate) fn breakpoints(&self, u: f64) -> Vec<f64> {
        let r = self.support_radius;
        let panels = ((2.0 * r * u / PI).ceil() as usize).clamp(8, 100_000);
        let mut pts: Vec<f64> = (0..=panels).map(|k| -r + 2.0 * r * k as f64 / panels as f64).collect();
        let mut kinks = Vec::new();
        self.shape.kinks(&mut kinks);
        if let Shape::Tabulated(t) = &self.shape {
            if t.values.len() <= 4096 {
                kinks.extend((0..t.values.len()).map(|k| t.node(k)));
            }
        }
        pts.extend(kinks.into_iter().filter(|k| k.abs() < r));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// `∫_{−R}^{R} g(x, f(x)) dx`.
    pub(crate) fn integrate_over_support(&self, g: impl Fn(f64, f64) -> f64) -> Estimate {
        if !self.support_radius.is_finite() {
            return Estimate { value: f64::NAN, error: f64::INFINITY, evaluations: 0, converged: false };
        }
        if self.support_radius == 0.0 {
            return Estimate::zero();
        }
        let q = Quadrature::new(1e-13, 1e-11).with_max_intervals(4000);
        q.integrate_with_breaks(|x| g(x, self.eval(x)), &self.breakpoints(0.0))
    }

    fn numeric_abs_first_moment(&self) -> f64 {
        self.integrate_over_support(|x, v| (x * v).abs()).value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_integrals() {
        assert!((TestFunction::gauss().integral_f() - SQRT_2PI).abs() < 1e-15);
        assert_eq!(TestFunction::gauss_deriv().integral_f(), 0.0);
        assert!(TestFunction::dog().mean_zero());
        assert!(TestFunction::hat().mean_zero());
        assert!(TestFunction::hat().compact_support());
        assert!(!TestFunction::gauss().mean_zero());
    }

    #[test]
    fn analytic_transforms_match_quadrature() {
        for f in [TestFunction::gauss(), TestFunction::gauss_deriv(), TestFunction::dog(), TestFunction::hat()] {
            for u in [0.0, 0.3, 1.0, 2.5, 7.0] {
                let (z, err) = f.fourier_quadrature(u).unwrap();
                let a = f.fourier(u);
                assert!((z - a).norm() < 1e-9, "{} u={u}: {z} vs {a} (err {err})", f.id());
            }
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for f in [TestFunction::gauss_deriv(), TestFunction::hat(), TestFunction::gauss().shifted(0.7)] {
            for u in [0.2, 1.3, 4.0] {
                assert!((f.fourier(-u) - f.fourier(u).conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn tabulated_hat_basis_matches_builtin_hat() {
        // The hat pair is exactly piecewise linear on the integer grid.
        let xs: Vec<f64> = (-3..=3).map(|k| k as f64).collect();
        let vs: Vec<f64> = xs.iter().map(|&x| TestFunction::hat().eval(x)).collect();
        let t = TestFunction::tabulated("tab_hat", Table::new(&xs, vs).unwrap());
        for x in [-2.5, -1.3, -0.2, 0.0, 0.7, 1.9] {
            assert!((t.eval(x) - TestFunction::hat().eval(x)).abs() < 1e-15);
        }
        for u in [0.0, 0.5, 3.0] {
            assert!((t.fourier(u) - TestFunction::hat().fourier(u)).norm() < 1e-13);
        }
        assert!(t.mean_zero());
    }

    #[test]
    fn table_parsing() {
        let t = Table::parse("# x f\n0 0\n0.5, 1\n1.0 0 # tail\n\n").unwrap();
        assert_eq!(t.values, vec![0.0, 1.0, 0.0]);
        assert!(Table::parse("0 0\n0.5 1\n1.7 0\n").is_err());
        assert!(Table::parse("0 0 0\n").is_err());
        assert!(Table::parse("0 x\n1 0\n").is_err());
    }

    #[test]
    fn custom_needs_declared_moment() {
        let f = TestFunction::custom("bump", 8.0, |x: f64| (-x * x).exp());
        assert!(f.abs_first_moment().is_none());
        let f = f.declare_abs_first_moment();
        assert!((f.abs_first_moment().unwrap() - 1.0).abs() < 1e-9);
        assert!((f.integral_f() - PI.sqrt()).abs() < 1e-10);
        assert!((f.fourier(1.0).re - PI.sqrt() * (-0.25f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn names_resolve() {
        for n in ["zero", "gauss", "gauss_deriv", "dog", "hat"] {
            assert_eq!(TestFunction::by_name(n).unwrap().id(), n);
        }
        assert!(TestFunction::by_name("nope").is_err());
    }

    #[test]
    fn moments_of_builtins() {
        let g = TestFunction::gauss();
        assert!((g.numeric_abs_first_moment() - 2.0).abs() < 1e-10);
        let d = TestFunction::gauss_deriv();
        assert!((d.numeric_abs_first_moment() - SQRT_2PI).abs() < 1e-10);
        let h = TestFunction::hat();
        assert!((h.numeric_abs_first_moment() - 2.0).abs() < 1e-12);
    }
}
