use super::{require_positive, AnalysisError};
use crate::model::OpdInstance;

/// `n = x·k + y` with `0 ≤ y < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub x: usize,
    pub y: usize,
}

impl ExtremalParams {
    pub fn new(n: usize, k: usize, m: usize) -> Result<Self, AnalysisError> {
        require_positive(n, "n")?;
        require_positive(k, "k")?;
        require_positive(m, "m")?;
        Ok(Self { n, k, m, x: n / k, y: n % k })
    }
}

/// Category sizes of a balanced split: the first `y` parts get `x + 1`.
pub fn balanced_partition(n: usize, k: usize) -> Vec<usize> {
    let (x, y) = (n / k, n % k);
    (0..k).map(|c| if c < y { x + 1 } else { x }).collect()
}

/// Most crossings two tests can force when the first one has part sizes `parts`.
///
/// Every pair in different categories at the first test can be made to
/// overtake, and no other pair can cross: `½ Σ a_i (n − a_i)`.
pub fn ecr_two_tests(parts: &[i64]) -> Result<u64, AnalysisError> {
    if let Some((index, &value)) = parts.iter().enumerate().find(|(_, &a)| a < 0) {
        return Err(AnalysisError::NegativePart { index, value });
    }
    let n: i128 = parts.iter().map(|&a| a as i128).sum();
    let twice: i128 = parts.iter().map(|&a| a as i128 * (n - a as i128)).sum();
    assert!(twice % 2 == 0, "Σ a(n−a) is always even");
    Ok((twice / 2) as u64)
}

/// Maximum panel crossing number over all instances with `n` subjects,
/// `k` categories and `m` intervals: `m/2 · (k·x·(n−x) + y·(n−2x−1))`.
pub fn ecr_general(n: usize, k: usize, m: usize) -> Result<u64, AnalysisError> {
    let p = ExtremalParams::new(n, k, m)?;
    let (n, k, m, x, y) = (p.n as i128, p.k as i128, p.m as i128, p.x as i128, p.y as i128);
    let twice = m * (k * x * (n - x) + y * (n - 2 * x - 1));
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok((twice / 2) as u64)
}

/// An instance attaining [`ecr_general`]: balanced first test, then every
/// test mirrors the category order of the previous one.
pub fn extremal_instance_general(n: usize, k: usize, m: usize) -> Result<OpdInstance, AnalysisError> {
    ExtremalParams::new(n, k, m)?;
    let first: Vec<usize> =
        balanced_partition(n, k).into_iter().enumerate().flat_map(|(c, size)| std::iter::repeat_n(c, size)).collect();
    let mirrored: Vec<usize> = first.iter().map(|&c| k - 1 - c).collect();
    let tests = (0..=m).map(|i| if i % 2 == 0 { first.clone() } else { mirrored.clone() }).collect();
    Ok(OpdInstance::from_matrix(k, tests).expect("generated instance is well-formed"))
}
