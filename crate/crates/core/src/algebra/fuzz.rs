//! Seeded random checks of the bracket identities.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{identity_check, Identity, NcPoly};
use crate::scalar::{Bicharacter, Scalar};
use crate::words::{words_of_constitution, Constitution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTally {
    pub identity: Identity,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzSummary {
    pub rank: usize,
    pub seed: u64,
    pub tallies: Vec<IdentityTally>,
}

impl FuzzSummary {
    pub fn failures(&self) -> usize {
        self.tallies.iter().map(|t| t.failures).sum()
    }

    pub fn to_json(&self) -> Value {
        let t: Vec<Value> = self
            .tallies
            .iter()
            .map(|t| json!({ "identity": t.identity.name(), "trials": t.trials, "failures": t.failures }))
            .collect();
        json!({ "rank": self.rank, "seed": self.seed, "identities": t, "failures": self.failures() })
    }
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::Jacobi1 => "jacobi1",
            Identity::Jacobi2 => "jacobi2",
            Identity::DiffLeft => "diff_left",
            Identity::DiffRight => "diff_right",
            Identity::Restricted => "restricted",
        }
    }
}

/// A random homogeneous polynomial: one to three words of a random
/// constitution of total degree one to `max_len`, small nonzero integer coefficients.
pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, max_len: u32) -> NcPoly {
    let total = rng.gen_range(1..=max_len);
    let mut counts = vec![0u32; n];
    for _ in 0..total {
        counts[rng.gen_range(0..n)] += 1;
    }
    let ws = words_of_constitution(&Constitution::new(counts));
    let k = rng.gen_range(1..=3.min(ws.len()));
    let mut f = NcPoly::zero();
    for w in ws.choose_multiple(rng, k) {
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        f.add_term(w.clone(), Scalar::int(c));
    }
    f
}

/// `trials` checks of each of the four general identities under the fully
/// generic bicharacter of rank `rank`, then (with `restricted`) `trials`
/// checks of the exponent-two identity with `p_kk = -1` and `v` a multiple of `x_k`.
pub fn fuzz_identities(rank: usize, trials: usize, seed: u64, restricted: bool) -> FuzzSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Bicharacter::fully_generic(rank);
    let mut tallies = Vec::new();
    for id in [
        Identity::Jacobi1,
        Identity::Jacobi2,
        Identity::DiffLeft,
        Identity::DiffRight,
    ] {
        let mut failures = 0;
        for _ in 0..trials {
            let u = random_homogeneous(&mut rng, rank, 3);
            let v = random_homogeneous(&mut rng, rank, 3);
            let w = random_homogeneous(&mut rng, rank, 3);
            if !identity_check(&p, id, &u, &v, &w).unwrap_or(false) {
                failures += 1;
            }
        }
        tallies.push(IdentityTally {
            identity: id,
            trials,
            failures,
        });
    }
    if restricted {
        let minus = p
            .map_entries(p.params().clone(), |i, j, e| {
                Ok(if i == j { Scalar::int(-1) } else { e.clone() })
            })
            .expect("nonzero entries");
        let mut failures = 0;
        for _ in 0..trials {
            let u = random_homogeneous(&mut rng, rank, 4);
            let k = rng.gen_range(1..=rank) as u8;
            let c = rng.gen_range(1i64..=3);
            let v = NcPoly::letter(k).scale(&Scalar::int(c));
            if !identity_check(&minus, Identity::Restricted, &u, &v, &NcPoly::zero()).unwrap_or(false) {
                failures += 1;
            }
        }
        tallies.push(IdentityTally {
            identity: Identity::Restricted,
            trials,
            failures,
        });
    }
    FuzzSummary { rank, seed, tallies }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_have_no_failures() {
        assert_eq!(fuzz_identities(2, 20, 7, true).failures(), 0);
        assert_eq!(fuzz_identities(1, 10, 0, true).failures(), 0);
    }

    #[test]
    fn deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_homogeneous(&mut a, 3, 3), random_homogeneous(&mut b, 3, 3));
    }
}
