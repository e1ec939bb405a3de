//! Numerical integration: adaptive Gauss–Kronrod (7/15) and composite
//! Gauss–Legendre.

#![allow(clippy::excessive_precision)]

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("tolerance {tol:e} not reached after {intervals} subintervals (estimate {estimate:e})")]
    ToleranceNotMet { tol: f64, intervals: usize, estimate: f64 },
    #[error("integrand returned a non-finite value at x = {0}")]
    NonFinite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

// Kronrod abscissae on [0, 1); odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 2000;

/// One 15-point Kronrod estimate and its difference to the embedded
/// 7-point Gauss estimate.
fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Integral, QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite(x))
        }
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Integral { value: kronrod * half, error: ((kronrod - gauss) * half).abs() })
}

/// Globally adaptive Gauss–Kronrod: the subinterval with the largest error
/// estimate is bisected until the summed estimate drops below `abs_tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<Integral, QuadError> {
    let first = gauss_kronrod_15(&f, a, b)?;
    let mut parts = vec![(a, b, first)];
    loop {
        let value: f64 = parts.iter().map(|p| p.2.value).sum();
        let error: f64 = parts.iter().map(|p| p.2.error).sum();
        if error <= abs_tol {
            return Ok(Integral { value, error });
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(QuadError::ToleranceNotMet { tol: abs_tol, intervals: parts.len(), estimate: error });
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .map(|(i, _)| i)
            .expect("non-empty");
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, gauss_kronrod_15(&f, lo, mid)?));
        parts.push((mid, hi, gauss_kronrod_15(&f, mid, hi)?));
    }
}

/// [`adaptive`] after the change of variables `x = a + (b - a) u²(3 - 2u)`.
///
/// The Jacobian `6u(1 - u)(b - a)` vanishes at both ends, which turns
/// square-root endpoint behaviour of `f` into a smooth integrand.
pub fn adaptive_endpoint_smoothed<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<Integral, QuadError> {
    let width = b - a;
    adaptive(
        |u| {
            let jac = 6.0 * u * (1.0 - u) * width;
            if jac == 0.0 {
                return 0.0;
            }
            f(a + width * u * u * (3.0 - 2.0 * u)) * jac
        },
        0.0,
        1.0,
        abs_tol,
    )
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(points: usize) -> (Vec<f64>, Vec<f64>) {
    let n = points;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre on `panels` equal subintervals.
pub fn composite_gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let c = lo + 0.5 * h;
        let s: f64 = rule.0.iter().zip(&rule.1).map(|(x, w)| w * f(c + 0.5 * h * x)).sum();
        total += 0.5 * h * s;
    }
    total
}

/// Doubles the panel count of a 10-point composite rule until two
/// successive values agree within `abs_tol`.
pub fn composite_gauss_converged<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<Integral, QuadError> {
    let rule = gauss_legendre(10);
    let mut panels = 2;
    let mut prev = composite_gauss(&f, a, b, panels, &rule);
    while panels < 1 << 14 {
        panels *= 2;
        let next = composite_gauss(&f, a, b, panels, &rule);
        if !next.is_finite() {
            return Err(QuadError::NonFinite(f64::NAN));
        }
        let diff = (next - prev).abs();
        if diff <= abs_tol {
            return Ok(Integral { value: next, error: diff });
        }
        prev = next;
    }
    Err(QuadError::ToleranceNotMet { tol: abs_tol, intervals: panels, estimate: f64::NAN })
}
