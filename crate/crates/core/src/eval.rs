//! Correlation statistics, pooled k-fold cross-validation, transfer
//! evaluation, and report rendering.
//!
//! The three statistics follow the usual definitions: sample Pearson r,
//! Spearman ρ as Pearson over average ranks, and tie-corrected Kendall
//! τ-b (computed in O(n log n) by sorting plus inversion counting). A
//! statistic whose value is undefined — either input constant — comes back
//! as `None` rather than a silent zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{ComplexityExample, FoldAssignment};
use crate::error::{Error, Result};
use crate::qemodel::{Prediction, TrainExample};
use crate::util::derive_seed;

/// Pooled cross-validation output: quality → (prediction, gold) pairs in
/// fold-concatenation order.
pub type PooledPairs = BTreeMap<String, Vec<(f64, f64)>>;

/// The three rank/linear correlations of one (model, quality) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleStat {
    /// Spearman ρ, `None` when undefined.
    pub rho: Option<f64>,
    /// Kendall τ-b, `None` when undefined.
    pub tau: Option<f64>,
    /// Pearson r, `None` when undefined.
    pub r: Option<f64>,
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::validation(format!(
            "correlation inputs differ in length: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::validation(format!(
            "correlation needs at least 2 observations, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::validation("non-finite correlation input"));
    }
    Ok(())
}

fn is_constant(values: &[f64]) -> bool {
    values.iter().all(|&v| v == values[0])
}

/// Sample Pearson correlation; `None` when either input is constant.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y)?;
    if is_constant(x) || is_constant(y) {
        return Ok(None);
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let denominator = (sxx * syy).sqrt();
    if denominator == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / denominator).clamp(-1.0, 1.0)))
}

/// 1-based ranks with ties averaged (the "mid-rank" convention).
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let mid_rank = (i + j) as f64 / 2.0 + 1.0;
        for &original in &order[i..=j] {
            ranks[original] = mid_rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman ρ: Pearson over average ranks; `None` when undefined.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Kendall τ-b (tie-corrected); `None` when either input is constant.
///
/// Sort by (x, y), count tie groups, then count discordant pairs as merge
/// sort inversions of the y sequence — O(n log n) overall. Equals
/// (concordant − discordant) / C(n,2) on tie-free data.
pub fn kendall(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y)?;
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Inputs are finite (checked above), so partial_cmp is total here; it
    // also agrees with `==` on -0.0 vs 0.0, which total_cmp would split
    // across the secondary sort and miscount as discordant.
    order.sort_by(|&a, &b| {
        x[a].partial_cmp(&x[b])
            .unwrap()
            .then(y[a].partial_cmp(&y[b]).unwrap())
    });
    let xs: Vec<f64> = order.iter().map(|&i| x[i]).collect();
    let mut ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();

    // Tie-pair counts: n1 over x groups, n3 over joint (x, y) groups.
    let (mut n1, mut n3) = (0u64, 0u64);
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && xs[j + 1] == xs[i] {
            j += 1;
        }
        n1 += pairs(j - i + 1);
        let mut a = i;
        while a <= j {
            let mut b = a;
            while b < j && ys[b + 1] == ys[a] {
                b += 1;
            }
            n3 += pairs(b - a + 1);
            a = b + 1;
        }
        i = j + 1;
    }

    // Tie-pair count n2 over y groups, from an independent sort of y.
    let mut y_sorted = ys.clone();
    y_sorted.sort_by(f64::total_cmp);
    let mut n2 = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && y_sorted[j + 1] == y_sorted[i] {
            j += 1;
        }
        n2 += pairs(j - i + 1);
        i = j + 1;
    }

    // Discordant pairs = inversions of y in (x, y)-sorted order.
    let mut scratch = Vec::with_capacity(n);
    let swaps = count_inversions(&mut ys, &mut scratch);

    let n0 = pairs(n);
    if n0 == n1 || n0 == n2 {
        return Ok(None);
    }
    let s = n0 as i128 - n1 as i128 - n2 as i128 + n3 as i128 - 2 * swaps as i128;
    let denominator = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    Ok(Some((s as f64 / denominator).clamp(-1.0, 1.0)))
}

/// Number of unordered pairs among `n` items.
fn pairs(n: usize) -> u64 {
    let n = n as u64;
    n * (n - 1) / 2
}

/// Merge sort that counts strict inversions; equal elements take the left
/// side and count nothing.
fn count_inversions(values: &mut [f64], scratch: &mut Vec<f64>) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = count_inversions(&mut values[..mid], scratch)
        + count_inversions(&mut values[mid..], scratch);

    scratch.clear();
    let (mut left, mut right) = (0, mid);
    while left < mid && right < n {
        if values[right] < values[left] {
            swaps += (mid - left) as u64;
            scratch.push(values[right]);
            right += 1;
        } else {
            scratch.push(values[left]);
            left += 1;
        }
    }
    while left < mid {
        scratch.push(values[left]);
        left += 1;
    }
    while right < n {
        scratch.push(values[right]);
        right += 1;
    }
    values.copy_from_slice(scratch);
    swaps
}

/// All three statistics for one prediction/gold pairing.
pub fn triple(predictions: &[f64], gold: &[f64]) -> Result<TripleStat> {
    Ok(TripleStat {
        rho: spearman(predictions, gold)?,
        tau: kendall(predictions, gold)?,
        r: pearson(predictions, gold)?,
    })
}

/// Pooled k-fold cross-validation.
///
/// For every fold: fit on the other k−1 folds (seeded by
/// `derive_seed(base_seed, fold)`), predict the held-out examples, and
/// concatenate the (prediction, gold) pairs across folds in fold order —
/// correlations are then computed once over the pooled pairs, not averaged
/// per fold. Returns the pooled pairs per quality so callers can both
/// correlate and inspect.
///
/// Every example's group must appear in `folds`; a fold whose training
/// side is empty is an error. `jobs > 1` runs folds on that many threads;
/// the merged result is identical to the sequential one.
pub fn cross_validate<M>(
    examples: &[TrainExample],
    folds: &FoldAssignment,
    base_seed: u64,
    jobs: usize,
    fit: impl Fn(&[TrainExample], u64) -> Result<M> + Sync,
    predict: impl Fn(&M, &TrainExample) -> Result<Prediction> + Sync,
) -> Result<PooledPairs> {
    if examples.is_empty() {
        return Err(Error::validation("cross-validation over no examples"));
    }
    let fold_of_example: Vec<usize> = examples
        .iter()
        .map(|example| {
            folds.fold_of(&example.group_id).ok_or_else(|| {
                Error::validation(format!(
                    "group {:?} is not covered by the fold assignment",
                    example.group_id
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let run_fold = |fold: usize| -> Result<PooledPairs> {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (example, &assigned) in examples.iter().zip(&fold_of_example) {
            if assigned == fold {
                test.push(example);
            } else {
                train.push(example.clone());
            }
        }
        if train.is_empty() {
            return Err(Error::validation(format!(
                "fold {fold} has an empty training split"
            )));
        }
        let model = fit(&train, derive_seed(base_seed, fold as u64))?;

        let mut pooled = PooledPairs::new();
        for example in test {
            let prediction = predict(&model, example)?;
            for (quality, &value) in &prediction.values {
                let gold = example.labels.get(quality).copied().ok_or_else(|| {
                    Error::validation(format!(
                        "example in group {:?} has no {quality:?} label to score against",
                        example.group_id
                    ))
                })?;
                pooled
                    .entry(quality.clone())
                    .or_default()
                    .push((value, gold));
            }
        }
        Ok(pooled)
    };

    let k = folds.k();
    let per_fold: Vec<Result<PooledPairs>> = if jobs <= 1 {
        (0..k).map(run_fold).collect()
    } else {
        std::thread::scope(|scope| {
            let run_fold = &run_fold;
            let workers: Vec<_> = (0..jobs.min(k))
                .map(|worker| {
                    scope.spawn(move || {
                        (worker..k)
                            .step_by(jobs)
                            .map(|fold| (fold, run_fold(fold)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            let mut slots: Vec<Option<Result<_>>> = (0..k).map(|_| None).collect();
            for worker in workers {
                for (fold, result) in worker.join().expect("fold worker panicked") {
                    slots[fold] = Some(result);
                }
            }
            slots
                .into_iter()
                .map(|s| s.expect("every fold ran"))
                .collect()
        })
    };

    // Merge in fold order so the pooled sequence is deterministic.
    let mut pooled = PooledPairs::new();
    for fold_result in per_fold {
        for (quality, pairs) in fold_result? {
            pooled.entry(quality).or_default().extend(pairs);
        }
    }
    Ok(pooled)
}

/// Evaluates an already-trained predictor on a held-out corpus: no
/// retraining, just the three correlations between its scores and the
/// labels. The caller supplies the prediction rule (sentence forward pass,
/// chunked document scoring, a baseline, ...).
pub fn transfer_evaluate(
    data: &[ComplexityExample],
    mut predict: impl FnMut(&ComplexityExample) -> Result<f64>,
) -> Result<TripleStat> {
    if data.len() < 2 {
        return Err(Error::validation(format!(
            "transfer evaluation needs at least 2 examples, got {}",
            data.len()
        )));
    }
    let mut predictions = Vec::with_capacity(data.len());
    let mut gold = Vec::with_capacity(data.len());
    for example in data {
        predictions.push(predict(example)?);
        gold.push(example.label);
    }
    triple(&predictions, &gold)
}

/// Which columns a rendered report shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportLayout {
    /// Pearson r only.
    PearsonOnly,
    /// Spearman ρ, Kendall τ, and Pearson r.
    ThreeStat,
}

/// Correlation results per model and quality, renderable as a text table
/// or a JSON mirror.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorrelationReport {
    rows: BTreeMap<String, BTreeMap<String, TripleStat>>,
}

impl CorrelationReport {
    /// An empty report.
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets one (model, quality) cell.
    pub fn insert(
        &mut self,
        model: impl Into<String>,
        quality: impl Into<String>,
        stats: TripleStat,
    ) {
        self.rows
            .entry(model.into())
            .or_default()
            .insert(quality.into(), stats);
    }

    /// Cells in deterministic (model, quality) order.
    pub fn cells(&self) -> impl Iterator<Item = (&str, &str, &TripleStat)> {
        self.rows.iter().flat_map(|(model, qualities)| {
            qualities
                .iter()
                .map(move |(quality, stats)| (model.as_str(), quality.as_str(), stats))
        })
    }

    /// Renders a fixed-precision text table, one row per (model, quality).
    ///
    /// Numbers use three decimals; undefined statistics render as "n/a".
    /// An empty report, or a model with no qualities, is an error.
    pub fn render(&self, layout: ReportLayout) -> Result<String> {
        if self.rows.is_empty() {
            return Err(Error::validation("cannot render an empty report"));
        }
        for (model, qualities) in &self.rows {
            if qualities.is_empty() {
                return Err(Error::validation(format!(
                    "model {model:?} has no quality results"
                )));
            }
        }

        let stat_headers: &[&str] = match layout {
            ReportLayout::PearsonOnly => &["r"],
            ReportLayout::ThreeStat => &["rho", "tau", "r"],
        };
        let mut table: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["model".to_owned(), "quality".to_owned()];
        header.extend(stat_headers.iter().map(|s| (*s).to_owned()));
        table.push(header);

        for (model, quality, stats) in self.cells() {
            let mut row = vec![model.to_owned(), quality.to_owned()];
            let values = match layout {
                ReportLayout::PearsonOnly => vec![stats.r],
                ReportLayout::ThreeStat => vec![stats.rho, stats.tau, stats.r],
            };
            row.extend(
                values
                    .into_iter()
                    .map(|v| v.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.3}"))),
            );
            table.push(row);
        }

        let columns = table[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| table.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &table {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                if c < 2 {
                    line.push_str(&format!("{cell:<width$}", width = widths[c]));
                } else {
                    line.push_str(&format!("{cell:>width$}", width = widths[c]));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        Ok(out)
    }

    /// JSON mirror: `{model: {quality: {rho, tau, r}}}` with `null` for
    /// undefined statistics.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    // ---- definitional oracles, independent of the implementations ----

    fn oracle_pearson(x: &[f64], y: &[f64]) -> Option<f64> {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
        if sxx == 0.0 || syy == 0.0 {
            return None;
        }
        Some(sxy / (sxx.sqrt() * syy.sqrt()))
    }

    fn oracle_ranks(values: &[f64]) -> Vec<f64> {
        values
            .iter()
            .map(|&v| {
                let below = values.iter().filter(|&&o| o < v).count() as f64;
                let equal = values.iter().filter(|&&o| o == v).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    }

    fn oracle_spearman(x: &[f64], y: &[f64]) -> Option<f64> {
        oracle_pearson(&oracle_ranks(x), &oracle_ranks(y))
    }

    fn oracle_kendall(x: &[f64], y: &[f64]) -> Option<f64> {
        let n = x.len();
        let (mut concordant, mut discordant) = (0i64, 0i64);
        let (mut ties_x, mut ties_y) = (0u64, 0u64);
        let mut n0 = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                n0 += 1;
                let dx = x[i] - x[j];
                let dy = y[i] - y[j];
                if dx == 0.0 {
                    ties_x += 1;
                }
                if dy == 0.0 {
                    ties_y += 1;
                }
                if dx * dy > 0.0 {
                    concordant += 1;
                } else if dx * dy < 0.0 {
                    discordant += 1;
                }
            }
        }
        if n0 == ties_x || n0 == ties_y {
            return None;
        }
        let denominator = ((n0 - ties_x) as f64 * (n0 - ties_y) as f64).sqrt();
        Some((concordant - discordant) as f64 / denominator)
    }

    // ---- correlation behavior ----

    #[test]
    fn pearson_on_perfect_lines() {
        let x = [1.0, 2.0, 3.0];
        assert_eq!(pearson(&x, &[2.0, 4.0, 6.0]).unwrap(), Some(1.0));
        assert_eq!(pearson(&x, &[6.0, 4.0, 2.0]).unwrap(), Some(-1.0));
    }

    #[test]
    fn constant_inputs_are_undefined_not_zero() {
        let x = [1.0, 2.0, 3.0];
        let flat = [5.0, 5.0, 5.0];
        assert_eq!(pearson(&x, &flat).unwrap(), None);
        assert_eq!(spearman(&flat, &x).unwrap(), None);
        assert_eq!(kendall(&x, &flat).unwrap(), None);
    }

    #[test]
    fn bad_inputs_are_validation_errors() {
        assert!(pearson(&[1.0, 2.0], &[1.0]).is_err());
        assert!(pearson(&[1.0], &[1.0]).is_err());
        assert!(spearman(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
        assert!(kendall(&[], &[]).is_err());
    }

    #[test]
    fn spearman_hand_example_and_monotone_invariance() {
        // Ranks [1,2,3] vs [3,1,2] → Pearson −0.5.
        let got = spearman(&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0])
            .unwrap()
            .unwrap();
        assert!((got - (-0.5)).abs() < 1e-12);

        let x: [f64; 5] = [0.3, 1.7, 2.2, 4.0, 5.5];
        let expx: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        assert_eq!(spearman(&x, &expx).unwrap(), Some(1.0));
    }

    #[test]
    fn average_ranks_handle_ties() {
        assert_eq!(average_ranks(&[10.0, 10.0, 20.0]), vec![1.5, 1.5, 3.0]);
        assert_eq!(
            average_ranks(&[3.0, 1.0, 3.0, 2.0, 3.0]),
            vec![4.0, 1.0, 4.0, 2.0, 4.0]
        );
    }

    #[test]
    fn kendall_hand_examples() {
        // 3 pairs: 2 concordant, 1 discordant → exactly 1/3.
        assert_eq!(
            kendall(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap(),
            Some(1.0 / 3.0)
        );
        assert_eq!(
            kendall(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(),
            Some(1.0)
        );
        assert_eq!(
            kendall(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.0, 1.0]).unwrap(),
            Some(-1.0)
        );
        // Tied x: 2 comparable pairs, both concordant → 2/√6.
        let got = kendall(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0])
            .unwrap()
            .unwrap();
        assert!((got - 2.0 / 6.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn statistics_are_symmetric_in_their_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x: Vec<f64> = (0..40).map(|_| rng.gen_range(0.0..10.0)).collect();
        let y: Vec<f64> = (0..40)
            .map(|_| (rng.gen_range(0.0..5.0f64)).round())
            .collect();
        assert_eq!(pearson(&x, &y).unwrap(), pearson(&y, &x).unwrap());
        assert_eq!(spearman(&x, &y).unwrap(), spearman(&y, &x).unwrap());
        assert_eq!(kendall(&x, &y).unwrap(), kendall(&y, &x).unwrap());
    }

    #[test]
    fn rank_statistics_ignore_monotone_transforms_and_pearson_affine() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x: Vec<f64> = (0..50).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let y: Vec<f64> = (0..50).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let cubed: Vec<f64> = x.iter().map(|v| v.powi(3) + v).collect();
        let scaled: Vec<f64> = x.iter().map(|v| 3.5 * v - 2.0).collect();

        let close = |a: Option<f64>, b: Option<f64>| (a.unwrap() - b.unwrap()).abs() < 1e-12;
        assert!(close(
            spearman(&x, &y).unwrap(),
            spearman(&cubed, &y).unwrap()
        ));
        assert!(close(
            kendall(&x, &y).unwrap(),
            kendall(&cubed, &y).unwrap()
        ));
        assert!(close(
            pearson(&x, &y).unwrap(),
            pearson(&scaled, &y).unwrap()
        ));
    }

    #[test]
    fn implementations_match_definitional_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in 0..40 {
            let n = 50;
            // Half the cases quantize to force heavy ties.
            let quantize = case % 2 == 0;
            let draw = |rng: &mut ChaCha8Rng| {
                let v: f64 = rng.gen_range(-5.0..5.0);
                if quantize {
                    v.round()
                } else {
                    v
                }
            };
            let x: Vec<f64> = (0..n).map(|_| draw(&mut rng)).collect();
            let y: Vec<f64> = (0..n).map(|_| draw(&mut rng)).collect();

            let close = |got: Option<f64>, want: Option<f64>| match (got, want) {
                (Some(a), Some(b)) => (a - b).abs() < 1e-9,
                (None, None) => true,
                _ => false,
            };
            assert!(close(pearson(&x, &y).unwrap(), oracle_pearson(&x, &y)));
            assert!(close(spearman(&x, &y).unwrap(), oracle_spearman(&x, &y)));
            assert!(close(kendall(&x, &y).unwrap(), oracle_kendall(&x, &y)));
        }
    }

    // ---- cross-validation protocol ----

    fn labeled_examples(n: usize, groups: usize) -> Vec<TrainExample> {
        (0..n)
            .map(|i| {
                let mut labels = BTreeMap::new();
                labels.insert("complexity".to_owned(), (i % 7) as f64 + 0.25);
                TrainExample {
                    group_id: format!("g{}", i % groups),
                    original: None,
                    output: format!("example text {i}"),
                    features_orig: None,
                    features_out: None,
                    labels,
                }
            })
            .collect()
    }

    fn gold_prediction(example: &TrainExample) -> Prediction {
        Prediction {
            values: example
                .labels
                .iter()
                .map(|(q, &v)| (q.clone(), v))
                .collect(),
        }
    }

    #[test]
    fn oracle_predictor_pools_every_example_and_correlates_perfectly() {
        let examples = labeled_examples(60, 12);
        let groups: Vec<String> = examples.iter().map(|e| e.group_id.clone()).collect();
        let folds = crate::corpus::make_folds(&groups, 4, 9).unwrap();

        let pooled = cross_validate(
            &examples,
            &folds,
            7,
            1,
            |train, _seed| {
                assert!(!train.is_empty());
                Ok(())
            },
            |_model, example| Ok(gold_prediction(example)),
        )
        .unwrap();

        let pairs = &pooled["complexity"];
        assert_eq!(pairs.len(), examples.len());
        let (p, g): (Vec<f64>, Vec<f64>) = pairs.iter().cloned().unzip();
        let stats = triple(&p, &g).unwrap();
        assert_eq!(stats.rho, Some(1.0));
        assert_eq!(stats.tau, Some(1.0));
        assert_eq!(stats.r, Some(1.0));
    }

    #[test]
    fn held_out_groups_never_appear_in_training() {
        let examples = labeled_examples(40, 8);
        let groups: Vec<String> = examples.iter().map(|e| e.group_id.clone()).collect();
        let folds = crate::corpus::make_folds(&groups, 4, 3).unwrap();

        cross_validate(
            &examples,
            &folds,
            0,
            1,
            |train, _| {
                Ok(train
                    .iter()
                    .map(|e| e.group_id.clone())
                    .collect::<BTreeSet<String>>())
            },
            |train_groups, example| {
                assert!(
                    !train_groups.contains(&example.group_id),
                    "group {} leaked into its own training fold",
                    example.group_id
                );
                Ok(gold_prediction(example))
            },
        )
        .unwrap();
    }

    #[test]
    fn parallel_folds_match_the_sequential_result() {
        let examples = labeled_examples(50, 10);
        let groups: Vec<String> = examples.iter().map(|e| e.group_id.clone()).collect();
        let folds = crate::corpus::make_folds(&groups, 5, 1).unwrap();

        // A fit that actually depends on the seed and training data, so a
        // merge mistake would show.
        let fit = |train: &[TrainExample], seed: u64| {
            Ok(train.iter().map(|e| e.labels["complexity"]).sum::<f64>() + seed as f64)
        };
        let predict = |model: &f64, example: &TrainExample| {
            let mut values = BTreeMap::new();
            values.insert("complexity".to_owned(), model + example.output.len() as f64);
            Ok(Prediction { values })
        };
        let sequential = cross_validate(&examples, &folds, 5, 1, fit, predict).unwrap();
        let parallel = cross_validate(&examples, &folds, 5, 4, fit, predict).unwrap();
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn uncovered_groups_and_empty_training_splits_are_errors() {
        let examples = labeled_examples(10, 2);
        let groups: Vec<String> = examples.iter().map(|e| e.group_id.clone()).collect();
        let folds = crate::corpus::make_folds(&groups, 2, 0).unwrap();

        // An example whose group the assignment has never seen.
        let mut stray = labeled_examples(1, 1);
        stray[0].group_id = "unseen".to_owned();
        let mut with_stray = examples.clone();
        with_stray.extend(stray);
        assert!(cross_validate(
            &with_stray,
            &folds,
            0,
            1,
            |_, _| Ok(()),
            |_, e| Ok(gold_prediction(e)),
        )
        .is_err());

        // Folds built over groups {g0, g1}, but every example sits in g0:
        // the fold holding g0 out has nothing left to train on.
        let only_g0: Vec<TrainExample> = examples
            .iter()
            .filter(|e| e.group_id == "g0")
            .cloned()
            .collect();
        assert!(cross_validate(
            &only_g0,
            &folds,
            0,
            1,
            |_, _| Ok(()),
            |_, e| Ok(gold_prediction(e)),
        )
        .is_err());
    }

    // ---- transfer evaluation ----

    #[test]
    fn transfer_scores_without_retraining() {
        use crate::corpus::Granularity;
        let data: Vec<ComplexityExample> = (0..10)
            .map(|i| ComplexityExample {
                unit_id: format!("u{i}"),
                text: format!("text {i}"),
                label: (i % 5) as f64,
                granularity: Granularity::Sentence,
            })
            .collect();

        let perfect = transfer_evaluate(&data, |e| Ok(e.label * 2.0 + 1.0)).unwrap();
        assert_eq!(perfect.rho, Some(1.0));
        assert_eq!(perfect.r, Some(1.0));

        let constant = transfer_evaluate(&data, |_| Ok(3.0)).unwrap();
        assert_eq!(constant.rho, None);
        assert_eq!(constant.tau, None);
        assert_eq!(constant.r, None);

        assert!(transfer_evaluate(&data[..1], |e| Ok(e.label)).is_err());
    }

    // ---- reports ----

    fn sample_report() -> CorrelationReport {
        let mut report = CorrelationReport::new();
        report.insert(
            "linreg",
            "complexity",
            TripleStat {
                rho: Some(0.7255),
                tau: Some(0.61),
                r: Some(0.68),
            },
        );
        report.insert(
            "linreg",
            "fluency",
            TripleStat {
                rho: None,
                tau: None,
                r: Some(-0.125),
            },
        );
        report.insert(
            "stub-s1",
            "complexity",
            TripleStat {
                rho: Some(0.9),
                tau: Some(0.8),
                r: Some(0.85),
            },
        );
        report
    }

    #[test]
    fn three_stat_table_rounds_and_marks_undefined() {
        let text = sample_report().render(ReportLayout::ThreeStat).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4, "header + three rows:\n{text}");
        assert!(lines[0].starts_with("model"));
        assert!(lines[0].contains("rho") && lines[0].contains("tau"));
        // 0.7255 renders as 0.726.
        assert!(lines[1].contains("0.726"), "{text}");
        assert!(lines[2].contains("n/a"), "{text}");
        assert!(lines[2].contains("-0.125"), "{text}");
        // Deterministic: render twice, same bytes.
        assert_eq!(
            text,
            sample_report().render(ReportLayout::ThreeStat).unwrap()
        );
    }

    #[test]
    fn pearson_only_layout_drops_the_rank_columns() {
        let text = sample_report().render(ReportLayout::PearsonOnly).unwrap();
        assert!(!text.contains("rho"));
        assert!(!text.contains("tau"));
        assert!(text.contains("0.680"));
    }

    #[test]
    fn empty_reports_are_errors() {
        assert!(CorrelationReport::new()
            .render(ReportLayout::ThreeStat)
            .is_err());
    }

    #[test]
    fn json_mirror_uses_null_for_undefined() {
        let json = sample_report().to_json();
        assert_eq!(json["linreg"]["complexity"]["rho"], 0.7255);
        assert_eq!(json["linreg"]["fluency"]["rho"], serde_json::Value::Null);
        assert_eq!(json["stub-s1"]["complexity"]["r"], 0.85);
    }
}
