/// Priority vector in both log form (sum zero) and normalized positive form.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingVector {
    logvalues: Vec<f64>,
    weights: Vec<f64>,
}

impl RankingVector {
    /// Centers `logvalues` to sum zero and normalizes their exponentials.
    pub fn from_logvalues(logvalues: &[f64]) -> Self {
        let n = logvalues.len() as f64;
        let mean = logvalues.iter().sum::<f64>() / n;
        let logvalues: Vec<f64> = logvalues.iter().map(|v| v - mean).collect();
        let peak = logvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = logvalues.iter().map(|v| (v - peak).exp()).collect();
        let total: f64 = exps.iter().sum();
        let weights = exps.into_iter().map(|e| e / total).collect();
        RankingVector { logvalues, weights }
    }

    pub fn order(&self) -> usize {
        self.logvalues.len()
    }

    pub fn logvalues(&self) -> &[f64] {
        &self.logvalues
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}
