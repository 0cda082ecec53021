//! Distributional tests on integer-valued and continuous statistics.

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, DiscreteCDF, Normal, Poisson};

use super::VerifyError;

/// Minimum expected count per cell.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Upper `alpha` quantile of the reference distribution.
    pub critical: f64,
}

impl ChiSquareOutcome {
    fn new(statistic: f64, df: usize, alpha: f64) -> Self {
        let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
        Self { statistic, df, p_value: dist.sf(statistic), critical: dist.inverse_cdf(1.0 - alpha) }
    }

    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

/// Two-sample chi-square homogeneity test.
///
/// Pooled values are binned in sorted order; adjacent values merge until each
/// bin has at least [`MIN_EXPECTED`] expected observations in both samples,
/// and a short final bin joins its predecessor.
pub fn chi_square_two_sample<T: Ord + Clone>(a: &[T], b: &[T], alpha: f64) -> Result<ChiSquareOutcome, VerifyError> {
    if a.is_empty() || b.is_empty() {
        return Err(VerifyError::EmptyEnsemble);
    }
    let mut pooled: BTreeMap<T, (f64, f64)> = BTreeMap::new();
    for x in a {
        pooled.entry(x.clone()).or_default().0 += 1.0;
    }
    for x in b {
        pooled.entry(x.clone()).or_default().1 += 1.0;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let total = na + nb;
    let need = MIN_EXPECTED * total / na.min(nb);
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut open = (0.0, 0.0);
    for &(ca, cb) in pooled.values() {
        open.0 += ca;
        open.1 += cb;
        if open.0 + open.1 >= need {
            bins.push(open);
            open = (0.0, 0.0);
        }
    }
    if open.0 + open.1 > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += open.0;
                last.1 += open.1;
            }
            None => bins.push(open),
        }
    }
    if bins.len() < 2 {
        return Err(VerifyError::DegenerateBins);
    }
    let statistic = bins
        .iter()
        .map(|&(ca, cb)| {
            let ea = na * (ca + cb) / total;
            let eb = nb * (ca + cb) / total;
            (ca - ea).powi(2) / ea + (cb - eb).powi(2) / eb
        })
        .sum();
    Ok(ChiSquareOutcome::new(statistic, bins.len() - 1, alpha))
}

/// Chi-square goodness of fit for `(observed, expected)` cells listed in a
/// meaningful order. Adjacent cells merge until each expects at least
/// [`MIN_EXPECTED`] observations; a short final cell joins its predecessor.
/// `fitted` parameters are subtracted from the degrees of freedom.
pub fn chi_square_gof(cells: &[(f64, f64)], fitted: usize, alpha: f64) -> Result<ChiSquareOutcome, VerifyError> {
    let mut merged: Vec<(f64, f64)> = Vec::new();
    let mut open = (0.0, 0.0);
    for &(o, e) in cells {
        open.0 += o;
        open.1 += e;
        if open.1 >= MIN_EXPECTED {
            merged.push(open);
            open = (0.0, 0.0);
        }
    }
    if open.0 > 0.0 || open.1 > 0.0 {
        match merged.last_mut() {
            Some(last) => {
                last.0 += open.0;
                last.1 += open.1;
            }
            None => merged.push(open),
        }
    }
    if merged.len() < fitted + 2 {
        return Err(VerifyError::DegenerateBins);
    }
    let statistic = merged.iter().map(|&(o, e)| (o - e).powi(2) / e).sum();
    Ok(ChiSquareOutcome::new(statistic, merged.len() - 1 - fitted, alpha))
}

/// Chi-square goodness of fit of counts to `Poisson(lambda)`; the last cell
/// holds the whole upper tail.
pub fn chi_square_poisson(counts: &[u64], lambda: f64, alpha: f64) -> Result<ChiSquareOutcome, VerifyError> {
    if counts.is_empty() {
        return Err(VerifyError::EmptyEnsemble);
    }
    let dist = Poisson::new(lambda).map_err(|e| VerifyError::InvalidInput(e.to_string()))?;
    let n = counts.len() as f64;
    let top = counts.iter().copied().max().unwrap_or(0).max(lambda.ceil() as u64);
    let mut observed = vec![0.0; top as usize + 1];
    for &c in counts {
        observed[c as usize] += 1.0;
    }
    let mut cells: Vec<(f64, f64)> = (0..top).map(|k| (observed[k as usize], n * dist.pmf(k))).collect();
    let tail = if top == 0 { 1.0 } else { dist.sf(top - 1) };
    cells.push((observed[top as usize], n * tail));
    chi_square_gof(&cells, 0, alpha)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
pub fn ks_one_sample(xs: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsOutcome, VerifyError> {
    if xs.is_empty() {
        return Err(VerifyError::EmptyEnsemble);
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max);
    let sqrt_n = n.sqrt();
    // Stephens' small-sample correction of the limiting law.
    let p_value = kolmogorov_sf((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
    Ok(KsOutcome { statistic: d, p_value })
}

/// `P(K > x)` for the Kolmogorov distribution.
pub fn kolmogorov_sf(x: f64) -> f64 {
    // Below 0.2 the survival function exceeds 1 - 1e-12.
    if x < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = (-2.0 * k * k * x * x).exp();
        sum += if k as u64 % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanCheck {
    pub mean: f64,
    pub se: f64,
    pub z: f64,
    /// Two-sided normal p-value of `z`.
    pub p_value: f64,
}

/// Sample mean against a reference value, in units of its standard error.
pub fn mean_check(xs: &[f64], reference: f64) -> Result<MeanCheck, VerifyError> {
    if xs.len() < 2 {
        return Err(VerifyError::EmptyEnsemble);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    let z = if se > 0.0 { (mean - reference) / se } else if mean == reference { 0.0 } else { f64::INFINITY };
    let normal = Normal::standard();
    Ok(MeanCheck { mean, se, z, p_value: 2.0 * normal.sf(z.abs()) })
}

/// Upper threshold for an empirical frequency whose true probability is at
/// most `bound`: the bound plus `slack` binomial standard errors at the bound.
pub fn frequency_threshold(bound: f64, n: usize, slack: f64) -> f64 {
    let b = bound.clamp(0.0, 1.0);
    bound + slack * (b * (1.0 - b) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_give_zero() {
        let a: Vec<u64> = (0..500).map(|i| i % 17).collect();
        let out = chi_square_two_sample(&a, &a, 0.01).unwrap();
        assert_eq!(out.statistic, 0.0);
        assert!(out.passes(0.01));
    }

    #[test]
    fn separated_samples_fail() {
        let a: Vec<u64> = (0..500).map(|i| 50 + i % 7).collect();
        let b: Vec<u64> = (0..500).map(|i| 200 + i % 7).collect();
        assert!(!chi_square_two_sample(&a, &b, 0.01).unwrap().passes(0.01));
    }

    #[test]
    fn single_value_is_degenerate() {
        let a = vec![3u64; 100];
        assert!(matches!(chi_square_two_sample(&a, &a, 0.01), Err(VerifyError::DegenerateBins)));
    }

    #[test]
    fn hand_computed_statistic() {
        // Two cells of 10 and 10 vs 15 and 5: expected 12.5 / 7.5 each side.
        let a: Vec<u64> = [vec![0; 10], vec![1; 10]].concat();
        let b: Vec<u64> = [vec![0; 15], vec![1; 5]].concat();
        let out = chi_square_two_sample(&a, &b, 0.05).unwrap();
        let want = 2.0 * (2.5f64.powi(2) / 12.5 + 2.5f64.powi(2) / 7.5);
        assert!((out.statistic - want).abs() < 1e-12);
        assert_eq!(out.df, 1);
        assert!((out.critical - 3.841458820694124).abs() < 1e-6);
    }

    #[test]
    fn poisson_cells_cover_support() {
        let counts: Vec<u64> = (0..1000).map(|i| (i % 45) as u64).collect();
        let out = chi_square_poisson(&counts, 22.5, 0.01).unwrap();
        assert!(out.df > 5);
        assert!(!out.passes(0.01));
    }

    #[test]
    fn kolmogorov_values() {
        // Reference values of the limiting distribution.
        assert!((kolmogorov_sf(1.0) - 0.26999967167735456).abs() < 1e-9);
        assert!((kolmogorov_sf(1.36) - 0.04949).abs() < 1e-4);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
    }

    #[test]
    fn ks_uniform_grid_passes() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let out = ks_one_sample(&xs, |x| x).unwrap();
        assert!(out.statistic <= 0.0005 + 1e-12);
        assert!(out.p_value > 0.99);
    }

    #[test]
    fn mean_check_z() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let m = mean_check(&xs, 2.5).unwrap();
        assert_eq!(m.z, 0.0);
        assert!((m.p_value - 1.0).abs() < 1e-12);
    }
}
