use crate::error::{Error, Result};

/// Joint counts of two columns binned into `bin_count` equal-width bins
/// over [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedJointHistogram {
    pub bin_count: usize,
    /// `joint_counts[a_bin][b_bin]`.
    pub joint_counts: Vec<Vec<u64>>,
    pub marginals: (Vec<u64>, Vec<u64>),
}

pub(crate) fn bin_of(v: f64, bins: usize) -> usize {
    ((v * bins as f64).floor().max(0.0) as usize).min(bins - 1)
}

fn check_column(col: &[f64]) -> Result<()> {
    if col.is_empty() {
        return Err(Error::InvalidInput("cannot bin an empty column".into()));
    }
    if let Some(v) = col.iter().find(|v| !(-1e-12..=1.0 + 1e-12).contains(*v)) {
        return Err(Error::InvalidInput(format!(
            "binned estimators expect values in [0, 1], found {v}"
        )));
    }
    Ok(())
}

impl BinnedJointHistogram {
    pub fn new(a: &[f64], b: &[f64], bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidInput("need at least 2 bins".into()));
        }
        check_column(a)?;
        check_column(b)?;
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                actual: b.len(),
            });
        }
        let mut joint = vec![vec![0u64; bins]; bins];
        let mut ma = vec![0u64; bins];
        let mut mb = vec![0u64; bins];
        for (&x, &y) in a.iter().zip(b) {
            let (i, j) = (bin_of(x, bins), bin_of(y, bins));
            joint[i][j] += 1;
            ma[i] += 1;
            mb[j] += 1;
        }
        Ok(Self {
            bin_count: bins,
            joint_counts: joint,
            marginals: (ma, mb),
        })
    }

    pub fn total(&self) -> u64 {
        self.marginals.0.iter().sum()
    }
}

/// Plug-in entropy in nats. Counts are summed in sorted order so the result
/// depends only on the multiset of counts.
fn entropy_of_counts(counts: impl IntoIterator<Item = u64>) -> f64 {
    let mut counts: Vec<u64> = counts.into_iter().filter(|&c| c > 0).collect();
    counts.sort_unstable();
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    counts
        .iter()
        .map(|&c| {
            let p = c as f64 / t;
            -p * p.ln()
        })
        .sum()
}

/// Entropy (nats) of a column binned into equal-width bins.
pub fn entropy_binned(a: &[f64], bins: usize) -> Result<f64> {
    if bins < 2 {
        return Err(Error::InvalidInput("need at least 2 bins".into()));
    }
    check_column(a)?;
    let mut counts = vec![0u64; bins];
    for &x in a {
        counts[bin_of(x, bins)] += 1;
    }
    Ok(entropy_of_counts(counts))
}

/// Plug-in mutual information (nats) from the binned joint histogram.
pub fn mutual_information_binned(a: &[f64], b: &[f64], bins: usize) -> Result<f64> {
    let h = BinnedJointHistogram::new(a, b, bins)?;
    let ha = entropy_of_counts(h.marginals.0.iter().copied());
    let hb = entropy_of_counts(h.marginals.1.iter().copied());
    let hab = entropy_of_counts(h.joint_counts.iter().flatten().copied());
    Ok((ha + hb - hab).max(0.0))
}
