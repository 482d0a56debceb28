use crate::error::{domain, Result};

/// Gini coefficient `Σ_i Σ_j w_i w_j |x_i - x_j| / (2 Σ_i w_i x_i)` with
/// weights normalized to sum to one (uniform when `weights` is `None`).
///
/// Computed in `O(n log n)` from the sorted values. All-zero input is
/// defined as perfect equality.
pub fn gini(values: &[f64], weights: Option<&[f64]>) -> Result<f64> {
    if values.is_empty() {
        return Err(domain("gini of an empty sample"));
    }
    if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(domain("gini needs non-negative finite values"));
    }
    let w: Vec<f64> = match weights {
        Some(w) => {
            if w.len() != values.len() {
                return Err(domain("gini weights and values differ in length"));
            }
            if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(domain("gini weights must be non-negative"));
            }
            let total: f64 = w.iter().sum();
            if total <= 0.0 {
                return Err(domain("gini weights sum to zero"));
            }
            w.iter().map(|x| x / total).collect()
        }
        None => vec![1.0 / values.len() as f64; values.len()],
    };

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mean: f64 = values.iter().zip(&w).map(|(x, wi)| x * wi).sum();
    if mean == 0.0 {
        return Ok(0.0);
    }
    // For sorted x: Σ_i Σ_j w_i w_j |x_i - x_j| = 2 Σ_i w_i (x_i W_<i - (wx)_<i).
    let (mut w_below, mut wx_below, mut acc) = (0.0, 0.0, 0.0);
    for &i in &order {
        acc += w[i] * (values[i] * w_below - wx_below);
        w_below += w[i];
        wx_below += w[i] * values[i];
    }
    Ok((2.0 * acc / (2.0 * mean)).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pairwise(values: &[f64], weights: &[f64]) -> f64 {
        let total: f64 = weights.iter().sum();
        let w: Vec<f64> = weights.iter().map(|x| x / total).collect();
        let mut num = 0.0;
        for i in 0..values.len() {
            for j in 0..values.len() {
                num += w[i] * w[j] * (values[i] - values[j]).abs();
            }
        }
        let mean: f64 = values.iter().zip(&w).map(|(x, wi)| x * wi).sum();
        num / (2.0 * mean)
    }

    #[test]
    fn textbook_cases() {
        assert_eq!(gini(&[3.0, 3.0, 3.0], None).unwrap(), 0.0);
        assert_relative_eq!(gini(&[0.0, 1.0], None).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(
            gini(&[1.0, 3.0], Some(&[0.5, 0.5])).unwrap(),
            0.25,
            max_relative = 1e-14
        );
        assert_eq!(gini(&[0.0, 0.0], None).unwrap(), 0.0);
        assert!(gini(&[-1.0, 2.0], None).is_err());
        assert!(gini(&[], None).is_err());
    }

    proptest! {
        #[test]
        fn matches_pairwise_formula(
            pairs in prop::collection::vec((0.0f64..100.0, 0.01f64..5.0), 1..40)
        ) {
            let (v, w): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            prop_assume!(v.iter().any(|x| *x > 1e-9));
            let g = gini(&v, Some(&w)).unwrap();
            prop_assert!((g - pairwise(&v, &w)).abs() < 1e-10);
            prop_assert!((0.0..=1.0).contains(&g));
        }

        #[test]
        fn scale_invariant(v in prop::collection::vec(0.0f64..50.0, 2..50), c in 0.01f64..1e3) {
            prop_assume!(v.iter().any(|x| *x > 1e-6));
            let scaled: Vec<f64> = v.iter().map(|x| x * c).collect();
            prop_assert!((gini(&v, None).unwrap() - gini(&scaled, None).unwrap()).abs() < 1e-12);
        }
    }
}
