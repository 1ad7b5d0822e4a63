use super::{DescendError, TargetProfile};

/// Graded dimensions, indexed by degree `0..=bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargePhaseDims {
    /// Primitives: one odd power sum `p_j` for each class `z_i`, in degree `j + |z_i|`.
    pub primitive: Vec<u128>,
    /// The free commutative Hopf algebra on those primitives.
    pub hopf: Vec<u128>,
}

/// Graded dimensions of the primitives and of the Hopf algebra they generate, up to `bound`.
pub fn large_phase_dims(profile: &TargetProfile, bound: u32) -> Result<LargePhaseDims, DescendError> {
    if let Some(d) = profile.degrees.iter().find(|&&d| d < 0) {
        return Err(DescendError::Profile(format!(
            "class degree {d} is negative; graded dimensions need nonnegative degrees"
        )));
    }
    let b = bound as usize;
    let mut primitive = vec![0u128; b + 1];
    for &d in &profile.degrees {
        for j in (1..=b).step_by(2) {
            let deg = j + d as usize;
            if deg <= b {
                primitive[deg] += 1;
            }
        }
    }
    // prod_d (1 - x^d)^{-dim_d}, one geometric factor per primitive
    let mut hopf = vec![0u128; b + 1];
    hopf[0] = 1;
    for (d, &count) in primitive.iter().enumerate().skip(1) {
        for _ in 0..count {
            for n in d..=b {
                hopf[n] += hopf[n - d];
            }
        }
    }
    Ok(LargePhaseDims { primitive, hopf })
}
