//! Graphex parameters: the isolated-edge rate `I`, the star intensity `S` and
//! the graphon `W`, all on the latent space `R+` with Lebesgue measure.
//!
//! Every shipped family publishes its L1 norm analytically together with a
//! support truncation: `truncation(eps)` returns a level `V` such that the
//! expected number of edges lost by discarding latent points above `V` is at
//! most `eps` per unit of squared size.

use alloc::format;
use alloc::vec::Vec;

use libm::{exp, floor, log, pow, sqrt};

use crate::error::{invalid, Error, Result};

/// Step-function graphon on `[0, n * cell_width)^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PixelGraphon {
    n: usize,
    cell_width: f64,
    values: Vec<f64>,
}

impl PixelGraphon {
    /// `values` is row-major `n x n`, symmetric, with entries in `[0, 1]`.
    pub fn new(n: usize, cell_width: f64, values: Vec<f64>) -> Result<Self> {
        if !(cell_width > 0.0 && cell_width.is_finite()) {
            return Err(invalid(format!("cell width must be positive, got {cell_width}")));
        }
        if values.len() != n * n {
            return Err(invalid(format!("expected {} pixel values, got {}", n * n, values.len())));
        }
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if !(0.0..=1.0).contains(&v) {
                    return Err(invalid(format!("pixel ({i}, {j}) = {v} is outside [0, 1]")));
                }
                if v != values[j * n + i] {
                    return Err(invalid(format!("pixel matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { n, cell_width, values })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn cell_width(&self) -> f64 {
        self.cell_width
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Right edge of the support, `n * cell_width`.
    pub fn support_edge(&self) -> f64 {
        self.n as f64 * self.cell_width
    }

    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match (self.cell(x), self.cell(y)) {
            (Some(i), Some(j)) => self.get(i, j),
            _ => 0.0,
        }
    }

    pub(crate) fn cell(&self, x: f64) -> Option<usize> {
        if x < 0.0 {
            return None;
        }
        let i = floor(x / self.cell_width);
        (i < self.n as f64).then_some(i as usize)
    }

    pub fn l1_norm(&self) -> f64 {
        let total: f64 = self.values.iter().sum();
        self.cell_width * self.cell_width * total
    }

    pub fn with_cell_width(&self, cell_width: f64) -> Result<Self> {
        if !(cell_width > 0.0 && cell_width.is_finite()) {
            return Err(invalid(format!("cell width must be positive, got {cell_width}")));
        }
        Ok(Self { n: self.n, cell_width, values: self.values.clone() })
    }
}

/// Closed-form graphon families. All are of product form `f(x) f(y)` with
/// `f` non-increasing, which the simulator exploits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphonFamily {
    /// `exp(-(x + y) / scale)`.
    ExpProduct { scale: f64 },
    /// `(x / scale + 1)^-a (y / scale + 1)^-a`.
    InversePower { exponent: f64, scale: f64 },
    /// `p * 1[x <= cutoff] * 1[y <= cutoff]`; dense regime.
    CompactUniform { p: f64, cutoff: f64 },
}

impl GraphonFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphonFamily::ExpProduct { .. } => "exp-product",
            GraphonFamily::InversePower { .. } => "inverse-power",
            GraphonFamily::CompactUniform { .. } => "compact-uniform",
        }
    }

    /// Factor `f` of `W(x, y) = f(x) f(y)`.
    pub fn factor(&self, x: f64) -> f64 {
        match *self {
            GraphonFamily::ExpProduct { scale } => exp(-x / scale),
            GraphonFamily::InversePower { exponent, scale } => pow(x / scale + 1.0, -exponent),
            GraphonFamily::CompactUniform { p, cutoff } => {
                if x <= cutoff {
                    sqrt(p)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match *self {
            GraphonFamily::CompactUniform { p, cutoff } => {
                if x <= cutoff && y <= cutoff {
                    p
                } else {
                    0.0
                }
            }
            _ => self.factor(x) * self.factor(y),
        }
    }

    /// `integral of f`, so that `|W|_1 = factor_mass^2`.
    fn factor_mass(&self) -> Result<f64> {
        match *self {
            GraphonFamily::ExpProduct { scale } => Ok(scale),
            GraphonFamily::InversePower { exponent, scale } => {
                if exponent > 1.0 {
                    Ok(scale / (exponent - 1.0))
                } else {
                    Err(Error::NonIntegrable("inverse-power graphon with exponent <= 1"))
                }
            }
            GraphonFamily::CompactUniform { p, cutoff } => Ok(sqrt(p) * cutoff),
        }
    }

    pub fn l1_norm(&self) -> Result<f64> {
        match *self {
            GraphonFamily::CompactUniform { p, cutoff } => Ok(p * cutoff * cutoff),
            _ => {
                let m = self.factor_mass()?;
                Ok(m * m)
            }
        }
    }

    /// `mu_W(x) = integral of W(x, y) dy`.
    pub fn marginal(&self, x: f64) -> Result<f64> {
        Ok(self.factor(x) * self.factor_mass()?)
    }

    /// The lost mass above `V` is `(F^2 - F_V^2) / 2 <= F * T(V)` where `F` is the
    /// factor mass and `T(V)` its tail beyond `V`; solve `F * T(V) = eps`.
    pub fn truncation(&self, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        let v = match *self {
            GraphonFamily::ExpProduct { scale } => scale * log(scale * scale / eps),
            GraphonFamily::InversePower { exponent, scale } => {
                if exponent <= 1.0 {
                    return Err(Error::TruncationUnavailable("inverse-power graphon with exponent <= 1"));
                }
                let a1 = exponent - 1.0;
                scale * (pow(eps * a1 * a1 / (scale * scale), -1.0 / a1) - 1.0)
            }
            GraphonFamily::CompactUniform { cutoff, .. } => cutoff,
        };
        Ok(v.max(0.0))
    }

    pub fn dilate(&self, c: f64) -> GraphonFamily {
        match *self {
            GraphonFamily::ExpProduct { scale } => GraphonFamily::ExpProduct { scale: scale * c },
            GraphonFamily::InversePower { exponent, scale } => {
                GraphonFamily::InversePower { exponent, scale: scale * c }
            }
            GraphonFamily::CompactUniform { p, cutoff } => {
                GraphonFamily::CompactUniform { p, cutoff: cutoff * c }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            GraphonFamily::ExpProduct { scale } => check_positive("scale", scale),
            GraphonFamily::InversePower { exponent, scale } => {
                check_positive("exponent", exponent)?;
                check_positive("scale", scale)
            }
            GraphonFamily::CompactUniform { p, cutoff } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid(format!("compact-uniform p must be in [0, 1], got {p}")));
                }
                if !(cutoff >= 0.0 && cutoff.is_finite()) {
                    return Err(invalid(format!("compact-uniform cutoff must be >= 0, got {cutoff}")));
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphonSpec {
    Builtin(GraphonFamily),
    Pixel(PixelGraphon),
    Zero,
}

impl GraphonSpec {
    /// Builtin family by name: `exp-product []`, `inverse-power [a]` or
    /// `[a, b]` with `a == b`, `compact-uniform [p, c]`.
    pub fn builtin(name: &str, params: &[f64]) -> Result<Self> {
        let family = match (name, params) {
            ("exp-product", []) => GraphonFamily::ExpProduct { scale: 1.0 },
            ("inverse-power", [a]) => GraphonFamily::InversePower { exponent: *a, scale: 1.0 },
            ("inverse-power", [a, b]) => {
                if a != b {
                    return Err(invalid(format!(
                        "inverse-power needs equal exponents for symmetry, got {a} and {b}"
                    )));
                }
                GraphonFamily::InversePower { exponent: *a, scale: 1.0 }
            }
            ("compact-uniform", [p, c]) => GraphonFamily::CompactUniform { p: *p, cutoff: *c },
            ("exp-product" | "inverse-power" | "compact-uniform", _) => {
                return Err(invalid(format!("wrong number of parameters for {name}: {}", params.len())))
            }
            _ => return Err(Error::UnknownFamily(name.into())),
        };
        Self::from_family(family)
    }

    pub fn from_family(family: GraphonFamily) -> Result<Self> {
        family.validate()?;
        Ok(GraphonSpec::Builtin(family))
    }

    pub fn exp_product() -> Self {
        GraphonSpec::Builtin(GraphonFamily::ExpProduct { scale: 1.0 })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            GraphonSpec::Builtin(f) => f.eval(x, y),
            GraphonSpec::Pixel(p) => p.eval(x, y),
            GraphonSpec::Zero => 0.0,
        }
    }

    pub fn l1_norm(&self) -> Result<f64> {
        match self {
            GraphonSpec::Builtin(f) => f.l1_norm(),
            GraphonSpec::Pixel(p) => Ok(p.l1_norm()),
            GraphonSpec::Zero => Ok(0.0),
        }
    }

    pub fn marginal(&self, x: f64) -> Result<f64> {
        match self {
            GraphonSpec::Builtin(f) => f.marginal(x),
            GraphonSpec::Pixel(p) => Ok(match p.cell(x) {
                Some(i) => (0..p.n).map(|j| p.get(i, j)).sum::<f64>() * p.cell_width,
                None => 0.0,
            }),
            GraphonSpec::Zero => Ok(0.0),
        }
    }

    /// Level `V` above which latent points lose at most `eps` expected edges
    /// per unit of squared size.
    pub fn truncation(&self, eps: f64) -> Result<f64> {
        match self {
            GraphonSpec::Builtin(f) => f.truncation(eps),
            GraphonSpec::Pixel(p) => Ok(p.support_edge()),
            GraphonSpec::Zero => Ok(0.0),
        }
    }

    /// `(x, y) -> W(x / c, y / c)`.
    pub fn dilate(&self, c: f64) -> Result<Self> {
        check_positive("dilation", c)?;
        Ok(match self {
            GraphonSpec::Builtin(f) => GraphonSpec::Builtin(f.dilate(c)),
            GraphonSpec::Pixel(p) => GraphonSpec::Pixel(p.with_cell_width(p.cell_width * c)?),
            GraphonSpec::Zero => GraphonSpec::Zero,
        })
    }
}

/// Star intensity `S: R+ -> R+`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StarSpec {
    /// `amplitude * exp(-(x / scale + shift))`.
    Exp { amplitude: f64, shift: f64, scale: f64 },
    Zero,
}

impl StarSpec {
    /// `exp [amplitude, shift]` is `amplitude * exp(-(x + shift))`.
    pub fn builtin(name: &str, params: &[f64]) -> Result<Self> {
        let star = match (name, params) {
            ("exp", [amplitude, shift]) => StarSpec::Exp { amplitude: *amplitude, shift: *shift, scale: 1.0 },
            ("exp", _) => {
                return Err(invalid(format!("wrong number of parameters for exp star: {}", params.len())))
            }
            _ => return Err(Error::UnknownFamily(name.into())),
        };
        star.validate()?;
        Ok(star)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            StarSpec::Exp { amplitude, shift, scale } => {
                if !(amplitude >= 0.0 && amplitude.is_finite()) {
                    return Err(invalid(format!("star amplitude must be >= 0, got {amplitude}")));
                }
                if !shift.is_finite() {
                    return Err(invalid("star shift must be finite"));
                }
                check_positive("scale", scale)
            }
            StarSpec::Zero => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StarSpec::Exp { .. } => "exp",
            StarSpec::Zero => "zero",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            StarSpec::Exp { amplitude, shift, scale } => amplitude * exp(-(x / scale + shift)),
            StarSpec::Zero => 0.0,
        }
    }

    pub fn l1_norm(&self) -> f64 {
        match *self {
            StarSpec::Exp { amplitude, shift, scale } => amplitude * scale * exp(-shift),
            StarSpec::Zero => 0.0,
        }
    }

    /// Level `V` with `integral_V^inf S <= eps`.
    pub fn truncation(&self, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        Ok(match *self {
            StarSpec::Exp { amplitude, shift, scale } => {
                if amplitude == 0.0 {
                    0.0
                } else {
                    (scale * (log(amplitude * scale / eps) - shift)).max(0.0)
                }
            }
            StarSpec::Zero => 0.0,
        })
    }

    /// `x -> c S(x / c)`.
    pub fn dilate(&self, c: f64) -> Result<Self> {
        check_positive("dilation", c)?;
        Ok(match *self {
            StarSpec::Exp { amplitude, shift, scale } => {
                StarSpec::Exp { amplitude: amplitude * c, shift, scale: scale * c }
            }
            StarSpec::Zero => StarSpec::Zero,
        })
    }
}

/// The triple `(I, S, W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graphex {
    isolated: f64,
    star: StarSpec,
    graphon: GraphonSpec,
}

impl Graphex {
    pub fn new(isolated: f64, star: StarSpec, graphon: GraphonSpec) -> Result<Self> {
        if !(isolated >= 0.0 && isolated.is_finite()) {
            return Err(invalid(format!("isolated-edge rate must be >= 0, got {isolated}")));
        }
        star.validate()?;
        if let GraphonSpec::Builtin(f) = &graphon {
            f.validate()?;
        }
        Ok(Self { isolated, star, graphon })
    }

    /// `(0, 0, W)`.
    pub fn graphon_only(graphon: GraphonSpec) -> Self {
        Self { isolated: 0.0, star: StarSpec::Zero, graphon }
    }

    pub fn isolated(&self) -> f64 {
        self.isolated
    }

    pub fn star(&self) -> &StarSpec {
        &self.star
    }

    pub fn graphon(&self) -> &GraphonSpec {
        &self.graphon
    }

    /// `I + |S|_1 + |W|_1 > 0`.
    pub fn is_nontrivial(&self) -> Result<bool> {
        Ok(self.isolated + self.star.l1_norm() + self.graphon.l1_norm()? > 0.0)
    }

    /// `(c^2 I, c S(. / c), W(. / c, . / c))`.
    pub fn dilate(&self, c: f64) -> Result<Self> {
        check_positive("dilation", c)?;
        Ok(Self {
            isolated: c * c * self.isolated,
            star: self.star.dilate(c)?,
            graphon: self.graphon.dilate(c)?,
        })
    }
}

fn check_positive(what: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{what} must be positive and finite, got {x}")))
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("truncation budget must be positive, got {eps}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + k as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn point_values() {
        assert_eq!(GraphonSpec::exp_product().eval(0.0, 0.0), 1.0);
        let inv = GraphonSpec::builtin("inverse-power", &[2.0, 2.0]).unwrap();
        // (1 + 1)^-2 (1 + 1)^-2 = 1/16.
        assert_eq!(inv.eval(1.0, 1.0), 0.0625);
    }

    #[test]
    fn analytic_norms() {
        assert_eq!(GraphonSpec::exp_product().l1_norm().unwrap(), 1.0);
        assert_eq!(GraphonSpec::builtin("inverse-power", &[2.0]).unwrap().l1_norm().unwrap(), 1.0);
        let px = PixelGraphon::new(2, 0.5, vec![1.0; 4]).unwrap();
        assert_eq!(GraphonSpec::Pixel(px).l1_norm().unwrap(), 1.0);
        let star = StarSpec::builtin("exp", &[0.5, 1.0]).unwrap();
        assert!((star.l1_norm() - 0.5 / core::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn norms_match_quadrature() {
        // Factor masses by Simpson's rule on a long interval.
        let exp_mass = simpson(|x| exp(-x), 0.0, 60.0, 20_000);
        assert!((exp_mass * exp_mass - 1.0).abs() < 1e-9);
        let inv3 = GraphonSpec::builtin("inverse-power", &[3.0]).unwrap();
        // integral of (x+1)^-3 over [0, inf) is 1/2; finite tail beyond 1e4 is ~5e-9.
        let f = |x: f64| pow(x + 1.0, -3.0);
        let mass = simpson(f, 0.0, 10.0, 100_000) + simpson(f, 10.0, 1.0e4, 400_000);
        assert!((mass * mass - inv3.l1_norm().unwrap()).abs() < 1e-7);
    }

    #[test]
    fn non_integrable_inverse_power() {
        let w = GraphonSpec::builtin("inverse-power", &[1.0]).unwrap();
        assert!(matches!(w.l1_norm(), Err(Error::NonIntegrable(_))));
        assert!(matches!(w.truncation(1e-3), Err(Error::TruncationUnavailable(_))));
    }

    #[test]
    fn asymmetric_inverse_power_rejected() {
        assert!(GraphonSpec::builtin("inverse-power", &[2.0, 3.0]).is_err());
        assert!(matches!(GraphonSpec::builtin("nope", &[]), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn truncation_bounds_lost_mass() {
        // Lost mass per unit area above V is (F^2 - F_V^2) / 2, computed exactly.
        for eps in [1e-2, 1e-4, 1e-7] {
            for fam in [
                GraphonFamily::ExpProduct { scale: 1.0 },
                GraphonFamily::ExpProduct { scale: 2.5 },
                GraphonFamily::InversePower { exponent: 2.0, scale: 1.0 },
                GraphonFamily::InversePower { exponent: 3.5, scale: 0.7 },
            ] {
                let v = fam.truncation(eps).unwrap();
                let total = fam.factor_mass().unwrap();
                let kept = match fam {
                    GraphonFamily::ExpProduct { scale } => scale * (1.0 - exp(-v / scale)),
                    GraphonFamily::InversePower { exponent, scale } => {
                        scale * (1.0 - pow(v / scale + 1.0, 1.0 - exponent)) / (exponent - 1.0)
                    }
                    _ => unreachable!(),
                };
                let lost = 0.5 * (total * total - kept * kept);
                assert!(lost <= eps * (1.0 + 1e-9), "{fam:?} eps={eps} lost={lost}");
                assert!(lost >= 0.25 * eps, "{fam:?} truncation is needlessly loose");
            }
        }
        let star = StarSpec::builtin("exp", &[0.5, 1.0]).unwrap();
        let v = star.truncation(1e-5).unwrap();
        let tail = 0.5 * exp(-(v + 1.0));
        assert!((tail - 1e-5).abs() < 1e-12);
    }

    #[test]
    fn dilation_scales_norms() {
        let gx = Graphex::new(0.1, StarSpec::builtin("exp", &[0.5, 1.0]).unwrap(), GraphonSpec::exp_product())
            .unwrap();
        for c in [0.5, 2.0, 7.0] {
            let d = gx.dilate(c).unwrap();
            assert!((d.graphon().l1_norm().unwrap() - c * c).abs() < 1e-12);
            assert!((d.star().l1_norm() - c * c * gx.star().l1_norm()).abs() < 1e-12);
            assert!((d.isolated() - c * c * 0.1).abs() < 1e-15);
            assert!((d.graphon().eval(1.3 * c, 0.4 * c) - gx.graphon().eval(1.3, 0.4)).abs() < 1e-15);
            assert!((d.star().eval(0.9 * c) - c * gx.star().eval(0.9)).abs() < 1e-15);
        }
        assert_eq!(gx.dilate(1.0).unwrap(), gx);
        assert!(gx.dilate(0.0).is_err());
    }

    #[test]
    fn pixel_validation_and_eval() {
        assert!(PixelGraphon::new(2, 1.0, vec![0.0, 1.0, 0.0, 0.0]).is_err());
        assert!(PixelGraphon::new(1, 1.0, vec![1.5]).is_err());
        assert!(PixelGraphon::new(1, 0.0, vec![1.0]).is_err());
        let p = PixelGraphon::new(2, 0.5, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(p.eval(0.2, 0.7), 1.0);
        assert_eq!(p.eval(0.2, 0.3), 0.0);
        assert_eq!(p.eval(1.0, 0.3), 0.0);
        assert_eq!(GraphonSpec::Pixel(p.clone()).truncation(1e-3).unwrap(), 1.0);
        assert_eq!(GraphonSpec::Pixel(p).marginal(0.1).unwrap(), 0.5);
    }

    #[test]
    fn trivial_graphex() {
        let gx = Graphex::new(0.0, StarSpec::Zero, GraphonSpec::Zero).unwrap();
        assert!(!gx.is_nontrivial().unwrap());
        assert!(Graphex::new(-1.0, StarSpec::Zero, GraphonSpec::Zero).is_err());
    }
}
