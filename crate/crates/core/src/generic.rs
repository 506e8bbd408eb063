//! Seeded pseudo-random "sufficiently general" choices and the certification
//! protocol that stands in for Zariski genericity: a value is accepted only
//! when independent seeds agree, with escalating coefficient height on
//! disagreement.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::poly::{Coeff, Polynomial, RingContext};

pub const DEFAULT_SEEDS: [u64; 3] = [17, 101, 9001];
pub const DEFAULT_HEIGHT: u64 = 50;
pub const DEFAULT_ESCALATIONS: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPolicy {
    pub seeds: Vec<u64>,
    pub height: u64,
    pub max_escalations: u32,
}

impl Default for GenericPolicy {
    fn default() -> Self {
        GenericPolicy {
            seeds: DEFAULT_SEEDS.to_vec(),
            height: DEFAULT_HEIGHT,
            max_escalations: DEFAULT_ESCALATIONS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityRecord {
    pub seeds: Vec<u64>,
    /// Coefficient bound of the accepted round.
    pub height: u64,
    pub agreed: bool,
    pub retries: u32,
}

impl GenericityRecord {
    /// Record for a value that needed no generic choice.
    pub fn exact() -> Self {
        GenericityRecord {
            seeds: Vec::new(),
            height: 0,
            agreed: true,
            retries: 0,
        }
    }
}

/// Source of generic integers for one seed, one coefficient height and one
/// named purpose.
pub struct Draw {
    rng: ChaCha8Rng,
    height: u64,
}

impl Draw {
    pub fn new(seed: u64, stream: u64, height: u64) -> Draw {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Draw {
            rng,
            height: height.max(1),
        }
    }

    /// Uniform integer in `[-height, height]`.
    pub fn int(&mut self) -> i64 {
        let h = self.height as i64;
        self.rng.gen_range(-h..=h)
    }

    pub fn nonzero(&mut self) -> i64 {
        loop {
            let v = self.int();
            if v != 0 {
                return v;
            }
        }
    }

    pub fn coeff(&mut self) -> Coeff {
        Coeff::from_integer(self.int().into())
    }

    pub fn nonzero_coeff(&mut self) -> Coeff {
        Coeff::from_integer(self.nonzero().into())
    }

    /// `rows x cols` integer matrix of full rank `min(rows, cols)`.
    pub fn full_rank_matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Coeff>> {
        loop {
            let m: Vec<Vec<Coeff>> = (0..rows).map(|_| (0..cols).map(|_| self.coeff()).collect()).collect();
            if rank(&m) == rows.min(cols) {
                return m;
            }
        }
    }

    /// Linear forms in the listed variables with independent coefficient rows.
    pub fn linear_forms(&mut self, ring: &Arc<RingContext>, vars: &[usize], count: usize) -> Result<Vec<Polynomial>> {
        if count > vars.len() {
            return Err(Error::Input(format!(
                "cannot draw {count} independent linear forms in {} variables",
                vars.len()
            )));
        }
        let m = self.full_rank_matrix(count, vars.len());
        Ok(m.into_iter()
            .map(|row| {
                let mut f = Polynomial::zero(ring);
                for (c, &v) in row.iter().zip(vars) {
                    f = &f + &Polynomial::var(ring, v).scale(c);
                }
                f
            })
            .collect())
    }
}

/// `count` independent linear forms in all variables of `ring`, a
/// deterministic function of the arguments.
pub fn draw_linear_forms(seed: u64, count: usize, ring: &Arc<RingContext>, height: u64) -> Result<Vec<Polynomial>> {
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    Draw::new(seed, 0, height).linear_forms(ring, &vars, count)
}

/// Run `compute(seed, height)` for every seed and accept the common value.
/// On disagreement the height is multiplied by ten and all seeds are rerun,
/// at most `max_escalations` times.
pub fn certify<T, F>(policy: &GenericPolicy, mut compute: F) -> Result<(T, GenericityRecord)>
where
    T: PartialEq + Clone + std::fmt::Debug,
    F: FnMut(u64, u64) -> Result<T>,
{
    if policy.seeds.len() < 2 {
        return Err(Error::Input("certification needs at least two seeds".into()));
    }
    let mut height = policy.height.max(1);
    let mut last: Vec<T> = Vec::new();
    for retries in 0..=policy.max_escalations {
        let values = policy
            .seeds
            .iter()
            .map(|&s| compute(s, height))
            .collect::<Result<Vec<T>>>()?;
        if values.iter().all(|v| *v == values[0]) {
            return Ok((
                values[0].clone(),
                GenericityRecord {
                    seeds: policy.seeds.clone(),
                    height,
                    agreed: true,
                    retries,
                },
            ));
        }
        last = values;
        height = height.saturating_mul(10);
    }
    Err(Error::Genericity(format!(
        "seeds {:?} still disagree after {} escalations: {:?}",
        policy.seeds, policy.max_escalations, last
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Locus;

    #[test]
    fn draws_are_deterministic_and_independent() {
        let r = RingContext::new(&["x", "y", "z"], Locus::Local).unwrap();
        let a = draw_linear_forms(7, 3, &r, 50).unwrap();
        let b = draw_linear_forms(7, 3, &r, 50).unwrap();
        assert_eq!(a, b);
        assert!(draw_linear_forms(7, 4, &r, 50).is_err());
        let s = RingContext::new(&["x", "y"], Locus::Local).unwrap();
        let pair = draw_linear_forms(3, 2, &s, 1).unwrap();
        let m: Vec<Vec<Coeff>> = pair
            .iter()
            .map(|f| (0..2).map(|i| f.coefficient(&crate::poly::Monomial::var(2, i, 1))).collect())
            .collect();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn certification() {
        let p = GenericPolicy::default();
        let (v, rec) = certify(&p, |_, _| Ok(5)).unwrap();
        assert_eq!(v, 5);
        assert!(rec.agreed && rec.retries == 0);
        assert!(matches!(certify(&p, |s, _| Ok(s)), Err(Error::Genericity(_))));
        let single = GenericPolicy {
            seeds: vec![1],
            ..GenericPolicy::default()
        };
        assert!(certify(&single, |_, _| Ok(0)).is_err());
    }
}
